//! Name resolution: turn a syntax document into core entities. Every
//! reference must resolve inside the document (imports are flattened in
//! first); errors carry the source position of the offending name.

use crate::ast::*;
use crate::{Located, ResolveError};
use rbhom_core::deform::DeformationMap;
use rbhom_core::extending::ExtendingDatum;
use rbhom_core::flag::FlagGrid;
use rbhom_core::linalg::{Matrix, Tensor3};
use rbhom_core::matched::MatchedPair;
use rbhom_core::scalar::Scalar;
use rbhom_core::semigroup::FiniteSemigroup;
use rbhom_core::HomAlgebra;
use std::collections::BTreeMap;

/// Which checker a resolved block feeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntityKind {
    Semigroup,
    Algebra,
    Datum,
    Pair,
    Deformation,
    FlagRow,
    Grid,
}

#[derive(Clone, Debug, Default)]
pub struct Resolved {
    pub semigroups: BTreeMap<String, FiniteSemigroup>,
    pub algebras: BTreeMap<String, HomAlgebra>,
    pub datums: BTreeMap<String, ExtendingDatum>,
    pub pairs: BTreeMap<String, MatchedPair>,
    pub deformations: BTreeMap<String, DeformationMap>,
    /// name -> (row id, base algebra)
    pub flagrows: BTreeMap<String, (String, HomAlgebra)>,
    pub grids: BTreeMap<String, (HomAlgebra, FlagGrid)>,
    /// Document order of checkable entities.
    pub order: Vec<(EntityKind, String)>,
}

fn located<T>(sp: &Spanned<T>, message: String) -> ResolveError {
    ResolveError(Located { line: sp.line, col: sp.col, message })
}

fn index_of(names: &[String], sp: &Spanned<String>, what: &str) -> Result<usize, ResolveError> {
    names
        .iter()
        .position(|n| n == &sp.value)
        .ok_or_else(|| located(sp, format!("unknown {what} `{}`", sp.value)))
}

pub fn resolve(doc: &Document) -> Result<Resolved, ResolveError> {
    let mut out = Resolved::default();
    let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
    for block in &doc.blocks {
        let name = block.name();
        if seen.insert(name.value.as_str(), ()).is_some() {
            return Err(located(name, format!("duplicate block name `{}`", name.value)));
        }
    }
    for block in &doc.blocks {
        match block {
            Block::Semigroup(b) => resolve_semigroup(b, &mut out)?,
            Block::Algebra(b) => resolve_algebra(b, &mut out)?,
            Block::Datum(b) => resolve_datum(b, &mut out)?,
            Block::Pair(b) => resolve_pair(b, &mut out)?,
            Block::Deformation(b) => resolve_deformation(b, &mut out)?,
            Block::FlagRow(b) => resolve_flagrow(b, &mut out)?,
            Block::Grid(b) => resolve_grid(b, &mut out)?,
        }
    }
    Ok(out)
}

fn resolve_semigroup(b: &SemigroupBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let names: Vec<String> = b.elements.iter().map(|e| e.value.clone()).collect();
    let n = names.len();
    if n == 0 {
        return Err(located(&b.name, "semigroup needs at least one element".into()));
    }
    let mut table = vec![None; n * n];
    for (a, bb, c) in &b.table {
        let i = index_of(&names, a, "element")?;
        let j = index_of(&names, bb, "element")?;
        let k = index_of(&names, c, "element")?;
        if table[i * n + j].is_some() {
            return Err(located(a, format!("duplicate table entry for `{}*{}`", a.value, bb.value)));
        }
        table[i * n + j] = Some(k);
    }
    let mut flat = Vec::with_capacity(n * n);
    for (idx, slot) in table.into_iter().enumerate() {
        match slot {
            Some(k) => flat.push(k),
            None => {
                return Err(located(
                    &b.name,
                    format!(
                        "table is missing the product `{} * {}`",
                        names[idx / n],
                        names[idx % n]
                    ),
                ))
            }
        }
    }
    let sg = FiniteSemigroup::new(names, flat)
        .map_err(|e| located(&b.name, e.to_string()))?;
    out.order.push((EntityKind::Semigroup, b.name.value.clone()));
    out.semigroups.insert(b.name.value.clone(), sg);
    Ok(())
}

fn collect_vector(
    items: &[Item],
    names: &[String],
    what: &str,
) -> Result<Vec<Scalar>, ResolveError> {
    let mut v = vec![Scalar::zero(); names.len()];
    for (coeff, name) in items {
        let k = index_of(names, name, what)?;
        v[k] = &v[k] + coeff;
    }
    Ok(v)
}

fn resolve_algebra(b: &AlgebraBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let sg = out
        .semigroups
        .get(&b.semigroup.value)
        .ok_or_else(|| located(&b.semigroup, format!("unknown semigroup `{}`", b.semigroup.value)))?
        .clone();
    let names: Vec<String> = b.basis.iter().map(|x| x.value.clone()).collect();
    if names.len() != b.dim.value {
        return Err(located(
            &b.dim_span(),
            format!("dim is {} but {} basis names are listed", b.dim.value, names.len()),
        ));
    }
    let n = names.len();
    let mut mu = Tensor3::zeros(n, n, n);
    for (a, bb, items) in &b.mul {
        let i = index_of(&names, a, "basis name")?;
        let j = index_of(&names, bb, "basis name")?;
        for (k, c) in collect_vector(items, &names, "basis name")?.into_iter().enumerate() {
            mu.set(i, j, k, &(mu.at(i, j, k).clone()) + &c);
        }
    }
    let mut theta = Matrix::zeros(n, n);
    for (a, items) in &b.theta {
        let j = index_of(&names, a, "basis name")?;
        for (i, c) in collect_vector(items, &names, "basis name")?.into_iter().enumerate() {
            theta.set(i, j, &(theta.at(i, j).clone()) + &c);
        }
    }
    let mut p = vec![Matrix::zeros(n, n); sg.len()];
    for (op, a, items) in &b.ops {
        let w = sg
            .index_of(&op.value)
            .ok_or_else(|| located(op, format!("unknown semigroup element `{}`", op.value)))?;
        let j = index_of(&names, a, "basis name")?;
        for (i, c) in collect_vector(items, &names, "basis name")?.into_iter().enumerate() {
            let v = p[w].at(i, j) + &c;
            p[w].set(i, j, v);
        }
    }
    let alg = HomAlgebra::new(sg, b.weight.clone(), names, mu, theta, p)
        .map_err(|e| located(&b.name, e.to_string()))?;
    out.order.push((EntityKind::Algebra, b.name.value.clone()));
    out.algebras.insert(b.name.value.clone(), alg);
    Ok(())
}

impl AlgebraBlock {
    fn dim_span(&self) -> Spanned<String> {
        Spanned { value: String::new(), line: self.dim.line, col: self.dim.col }
    }
}

struct DatumTensors {
    tri_l: Tensor3,
    tri_r: Tensor3,
    harp_r: Tensor3,
    harp_l: Tensor3,
    f: Tensor3,
    mul_v: Tensor3,
    q: Vec<Matrix>,
    p_v: Vec<Matrix>,
    eta: Matrix,
    theta_v: Matrix,
}

fn resolve_tensor_entries(
    entries: &[TensorEntry],
    base: &HomAlgebra,
    vnames: &[String],
) -> Result<DatumTensors, ResolveError> {
    let n = base.dim();
    let m = vnames.len();
    let sg = base.semigroup.len();
    let rnames = &base.basis;
    let mut t = DatumTensors {
        tri_l: Tensor3::zeros(n, m, m),
        tri_r: Tensor3::zeros(m, n, m),
        harp_r: Tensor3::zeros(m, n, n),
        harp_l: Tensor3::zeros(n, m, n),
        f: Tensor3::zeros(m, m, n),
        mul_v: Tensor3::zeros(m, m, m),
        q: vec![Matrix::zeros(n, m); sg],
        p_v: vec![Matrix::zeros(m, m); sg],
        eta: Matrix::zeros(n, m),
        theta_v: Matrix::zeros(m, m),
    };
    for e in entries {
        let op_index = |op: &Option<Spanned<String>>| -> Result<usize, ResolveError> {
            let op = op
                .as_ref()
                .ok_or_else(|| located(&e.key, format!("`{}` needs an operator tag", e.key.value)))?;
            base.semigroup
                .index_of(&op.value)
                .ok_or_else(|| located(op, format!("unknown semigroup element `{}`", op.value)))
        };
        let no_op = || -> Result<(), ResolveError> {
            if let Some(op) = &e.op {
                return Err(located(op, format!("`{}` takes no operator tag", e.key.value)));
            }
            Ok(())
        };
        match e.key.value.as_str() {
            "tri_l" => {
                no_op()?;
                let i = index_of(rnames, &e.args[0], "base basis name")?;
                let p = index_of(vnames, &e.args[1], "complement basis name")?;
                for (k, c) in collect_vector(&e.items, vnames, "complement basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.tri_l.set(i, p, k, &(t.tri_l.at(i, p, k).clone()) + &c);
                }
            }
            "tri_r" => {
                no_op()?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                let i = index_of(rnames, &e.args[1], "base basis name")?;
                for (k, c) in collect_vector(&e.items, vnames, "complement basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.tri_r.set(p, i, k, &(t.tri_r.at(p, i, k).clone()) + &c);
                }
            }
            "harp_r" => {
                no_op()?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                let i = index_of(rnames, &e.args[1], "base basis name")?;
                for (k, c) in collect_vector(&e.items, rnames, "base basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.harp_r.set(p, i, k, &(t.harp_r.at(p, i, k).clone()) + &c);
                }
            }
            "harp_l" => {
                no_op()?;
                let i = index_of(rnames, &e.args[0], "base basis name")?;
                let p = index_of(vnames, &e.args[1], "complement basis name")?;
                for (k, c) in collect_vector(&e.items, rnames, "base basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.harp_l.set(i, p, k, &(t.harp_l.at(i, p, k).clone()) + &c);
                }
            }
            "f" => {
                no_op()?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                let q = index_of(vnames, &e.args[1], "complement basis name")?;
                for (k, c) in collect_vector(&e.items, rnames, "base basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.f.set(p, q, k, &(t.f.at(p, q, k).clone()) + &c);
                }
            }
            "mul_V" => {
                no_op()?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                let q = index_of(vnames, &e.args[1], "complement basis name")?;
                for (k, c) in collect_vector(&e.items, vnames, "complement basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.mul_v.set(p, q, k, &(t.mul_v.at(p, q, k).clone()) + &c);
                }
            }
            "Q" => {
                let w = op_index(&e.op)?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                for (i, c) in collect_vector(&e.items, rnames, "base basis name")?
                    .into_iter()
                    .enumerate()
                {
                    let v = t.q[w].at(i, p) + &c;
                    t.q[w].set(i, p, v);
                }
            }
            "P_V" => {
                let w = op_index(&e.op)?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                for (k, c) in collect_vector(&e.items, vnames, "complement basis name")?
                    .into_iter()
                    .enumerate()
                {
                    let v = t.p_v[w].at(k, p) + &c;
                    t.p_v[w].set(k, p, v);
                }
            }
            "eta" => {
                no_op()?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                for (i, c) in collect_vector(&e.items, rnames, "base basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.eta.set(i, p, &(t.eta.at(i, p).clone()) + &c);
                }
            }
            "theta_V" => {
                no_op()?;
                let p = index_of(vnames, &e.args[0], "complement basis name")?;
                for (k, c) in collect_vector(&e.items, vnames, "complement basis name")?
                    .into_iter()
                    .enumerate()
                {
                    t.theta_v.set(k, p, &(t.theta_v.at(k, p).clone()) + &c);
                }
            }
            other => {
                return Err(located(&e.key, format!("unknown tensor keyword `{other}`")));
            }
        }
    }
    Ok(t)
}

fn resolve_datum(b: &DatumBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let base = out
        .algebras
        .get(&b.base.value)
        .ok_or_else(|| located(&b.base, format!("unknown algebra `{}`", b.base.value)))?
        .clone();
    let vnames: Vec<String> = b.vbasis.iter().map(|x| x.value.clone()).collect();
    if vnames.len() != b.vdim.value {
        return Err(located(
            &b.name,
            format!("vdim is {} but {} names are listed", b.vdim.value, vnames.len()),
        ));
    }
    let t = resolve_tensor_entries(&b.entries, &base, &vnames)?;
    let datum = ExtendingDatum::new(
        base, vnames, t.tri_l, t.tri_r, t.harp_r, t.harp_l, t.f, t.mul_v, t.q, t.p_v, t.eta,
        t.theta_v,
    )
    .map_err(|e| located(&b.name, e.to_string()))?;
    out.order.push((EntityKind::Datum, b.name.value.clone()));
    out.datums.insert(b.name.value.clone(), datum);
    Ok(())
}

fn resolve_pair(b: &PairBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let base = out
        .algebras
        .get(&b.base.value)
        .ok_or_else(|| located(&b.base, format!("unknown algebra `{}`", b.base.value)))?
        .clone();
    let second = out
        .algebras
        .get(&b.second.value)
        .ok_or_else(|| located(&b.second, format!("unknown algebra `{}`", b.second.value)))?
        .clone();
    let vnames = second.basis.clone();
    let t = resolve_tensor_entries(&b.entries, &base, &vnames)?;
    let pair = MatchedPair::new(base, second, t.tri_l, t.tri_r, t.harp_r, t.harp_l)
        .map_err(|e| located(&b.name, e.to_string()))?;
    out.order.push((EntityKind::Pair, b.name.value.clone()));
    out.pairs.insert(b.name.value.clone(), pair);
    Ok(())
}

fn resolve_deformation(b: &DeformationBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let datum = out
        .datums
        .get(&b.datum.value)
        .ok_or_else(|| located(&b.datum, format!("unknown datum `{}`", b.datum.value)))?
        .clone();
    let n = datum.base.dim();
    let m = datum.vdim();
    let mut d = Matrix::zeros(n, m);
    for (arg, items) in &b.entries {
        let p = index_of(&datum.vbasis, arg, "complement basis name")?;
        for (i, c) in collect_vector(items, &datum.base.basis, "base basis name")?
            .into_iter()
            .enumerate()
        {
            d.set(i, p, &(d.at(i, p).clone()) + &c);
        }
    }
    let dm = DeformationMap::new(datum, d).map_err(|e| located(&b.name, e.to_string()))?;
    out.order.push((EntityKind::Deformation, b.name.value.clone()));
    out.deformations.insert(b.name.value.clone(), dm);
    Ok(())
}

fn resolve_flagrow(b: &FlagRowBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let base = out
        .algebras
        .get(&b.base.value)
        .ok_or_else(|| located(&b.base, format!("unknown algebra `{}`", b.base.value)))?
        .clone();
    rbhom_core::table2::row_by_id(&b.row.value)
        .map_err(|e| located(&b.row, e.to_string()))?;
    out.order.push((EntityKind::FlagRow, b.name.value.clone()));
    out.flagrows
        .insert(b.name.value.clone(), (b.row.value.clone(), base));
    Ok(())
}

fn resolve_grid(b: &GridBlock, out: &mut Resolved) -> Result<(), ResolveError> {
    let base = out
        .algebras
        .get(&b.base.value)
        .ok_or_else(|| located(&b.base, format!("unknown algebra `{}`", b.base.value)))?
        .clone();
    let sg = base.semigroup.clone();
    let mut grid = FlagGrid {
        l: vec![Scalar::zero()],
        r: vec![Scalar::zero()],
        t_r: vec![Scalar::zero()],
        t_l: vec![Scalar::zero()],
        a1: vec![Scalar::zero()],
        k1: vec![Scalar::zero()],
        b: vec![vec![Scalar::zero()]; sg.len()],
        kfam: vec![vec![Scalar::zero()]; sg.len()],
        a2: vec![Scalar::zero()],
        k2: vec![Scalar::zero()],
    };
    for (key, op, values) in &b.fields {
        let op_index = |op: &Option<Spanned<String>>| -> Result<usize, ResolveError> {
            let op = op
                .as_ref()
                .ok_or_else(|| located(key, format!("grid field `{}` needs an operator tag", key.value)))?;
            sg.index_of(&op.value)
                .ok_or_else(|| located(op, format!("unknown semigroup element `{}`", op.value)))
        };
        let no_op = || -> Result<(), ResolveError> {
            if let Some(op) = op {
                return Err(located(op, format!("grid field `{}` takes no operator tag", key.value)));
            }
            Ok(())
        };
        match key.value.as_str() {
            "l" => {
                no_op()?;
                grid.l = values.clone();
            }
            "r" => {
                no_op()?;
                grid.r = values.clone();
            }
            "t_r" => {
                no_op()?;
                grid.t_r = values.clone();
            }
            "t_l" => {
                no_op()?;
                grid.t_l = values.clone();
            }
            "a1" => {
                no_op()?;
                grid.a1 = values.clone();
            }
            "k1" => {
                no_op()?;
                grid.k1 = values.clone();
            }
            "a2" => {
                no_op()?;
                grid.a2 = values.clone();
            }
            "k2" => {
                no_op()?;
                grid.k2 = values.clone();
            }
            "b" => {
                let w = op_index(op)?;
                grid.b[w] = values.clone();
            }
            "k" => {
                let w = op_index(op)?;
                grid.kfam[w] = values.clone();
            }
            other => {
                return Err(located(key, format!("unknown grid field `{other}`")));
            }
        }
    }
    out.order.push((EntityKind::Grid, b.name.value.clone()));
    out.grids.insert(b.name.value.clone(), (base, grid));
    Ok(())
}
