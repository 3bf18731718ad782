//! Canonical text emission. Entries are sorted by basis position,
//! zero items and empty entries are dropped, and scalars print in their
//! reduced form, so serializing a parsed canonical document reproduces it
//! byte for byte.

use crate::ast::*;
use rbhom_core::deform::DeformationMap;
use rbhom_core::extending::ExtendingDatum;
use rbhom_core::matched::MatchedPair;
use rbhom_core::scalar::Scalar;
use rbhom_core::semigroup::FiniteSemigroup;
use rbhom_core::HomAlgebra;

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for import in &doc.imports {
        out.push_str(&format!("import \"{}\" ;\n", import.value));
    }
    if !doc.imports.is_empty() {
        out.push('\n');
    }
    let mut first = true;
    for block in &doc.blocks {
        if !first {
            out.push('\n');
        }
        first = false;
        match block {
            Block::Semigroup(b) => write_semigroup(&mut out, b),
            Block::Algebra(b) => write_algebra(&mut out, b),
            Block::Datum(b) => write_datum(&mut out, b),
            Block::Pair(b) => write_pair(&mut out, b),
            Block::Deformation(b) => write_deformation(&mut out, b),
            Block::FlagRow(b) => write_flagrow(&mut out, b),
            Block::Grid(b) => write_grid(&mut out, b),
        }
    }
    out
}

fn position(names: &[&str], name: &str) -> usize {
    names.iter().position(|n| *n == name).unwrap_or(names.len())
}

/// Render a sorted, zero-free sum of coefficient-name items.
fn render_items(items: &[Item], order: &[&str]) -> Option<String> {
    let mut merged: Vec<(usize, String, Scalar)> = Vec::new();
    for (coeff, name) in items {
        let idx = position(order, &name.value);
        match merged.iter_mut().find(|(i, n, _)| *i == idx && n == &name.value) {
            Some((_, _, acc)) => *acc = &*acc + coeff,
            None => merged.push((idx, name.value.clone(), coeff.clone())),
        }
    }
    merged.retain(|(_, _, c)| !c.is_zero());
    if merged.is_empty() {
        return None;
    }
    merged.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let mut out = String::new();
    for (pos, (_, name, coeff)) in merged.into_iter().enumerate() {
        if pos == 0 {
            out.push_str(&format!("{coeff} {name}"));
        } else if coeff.is_leading_negative() {
            out.push_str(&format!(" - {} {name}", -&coeff));
        } else {
            out.push_str(&format!(" + {coeff} {name}"));
        }
    }
    Some(out)
}

fn write_semigroup(out: &mut String, b: &SemigroupBlock) {
    out.push_str(&format!("semigroup {} {{\n", b.name.value));
    let names: Vec<&str> = b.elements.iter().map(|e| e.value.as_str()).collect();
    let list: Vec<&str> = names.clone();
    out.push_str(&format!("  elements: {} ;\n", list.join(", ")));
    let mut table: Vec<(usize, usize, &str, &str, &str)> = b
        .table
        .iter()
        .map(|(a, bb, c)| {
            (
                position(&names, &a.value),
                position(&names, &bb.value),
                a.value.as_str(),
                bb.value.as_str(),
                c.value.as_str(),
            )
        })
        .collect();
    table.sort_by_key(|(i, j, _, _, _)| (*i, *j));
    for (_, _, a, bb, c) in table {
        out.push_str(&format!("  table: {a}*{bb} = {c} ;\n"));
    }
    out.push_str("}\n");
}

fn write_algebra(out: &mut String, b: &AlgebraBlock) {
    out.push_str(&format!(
        "algebra {} over QL weight {} uses {} {{\n",
        b.name.value, b.weight, b.semigroup.value
    ));
    let names: Vec<&str> = b.basis.iter().map(|x| x.value.as_str()).collect();
    out.push_str(&format!("  dim: {} ;\n", b.dim.value));
    out.push_str(&format!("  basis: {} ;\n", names.join(", ")));
    let mut mul: Vec<(usize, usize, String)> = b
        .mul
        .iter()
        .filter_map(|(x, y, items)| {
            render_items(items, &names).map(|s| {
                (
                    position(&names, &x.value),
                    position(&names, &y.value),
                    format!("  mul: {}*{} = {s} ;\n", x.value, y.value),
                )
            })
        })
        .collect();
    mul.sort_by_key(|(i, j, _)| (*i, *j));
    for (_, _, line) in mul {
        out.push_str(&line);
    }
    let mut theta: Vec<(usize, String)> = b
        .theta
        .iter()
        .filter_map(|(x, items)| {
            render_items(items, &names)
                .map(|s| (position(&names, &x.value), format!("  theta: {} -> {s} ;\n", x.value)))
        })
        .collect();
    theta.sort_by_key(|(i, _)| *i);
    for (_, line) in theta {
        out.push_str(&line);
    }
    // Operator entries grouped by tag in the order tags first appear.
    let mut tags: Vec<&str> = Vec::new();
    for (op, _, _) in &b.ops {
        if !tags.contains(&op.value.as_str()) {
            tags.push(&op.value);
        }
    }
    for tag in tags {
        let mut lines: Vec<(usize, String)> = b
            .ops
            .iter()
            .filter(|(op, _, _)| op.value == tag)
            .filter_map(|(_, x, items)| {
                render_items(items, &names).map(|s| {
                    (position(&names, &x.value), format!("  P[{tag}]: {} -> {s} ;\n", x.value))
                })
            })
            .collect();
        lines.sort_by_key(|(i, _)| *i);
        for (_, line) in lines {
            out.push_str(&line);
        }
    }
    out.push_str("}\n");
}

/// Canonical order of datum tensor keywords.
const TENSOR_ORDER: [&str; 10] =
    ["tri_l", "tri_r", "harp_r", "harp_l", "f", "mul_V", "Q", "P_V", "eta", "theta_V"];

fn write_entries(
    out: &mut String,
    entries: &[TensorEntry],
    rnames: &[&str],
    vnames: &[&str],
    op_order: &[&str],
) {
    let arg_order = |key: &str| -> (Vec<&str>, Vec<&str>) {
        // (first-argument order, second-argument order); empty when absent.
        match key {
            "tri_l" | "harp_l" => (rnames.to_vec(), vnames.to_vec()),
            "tri_r" | "harp_r" => (vnames.to_vec(), rnames.to_vec()),
            "f" | "mul_V" => (vnames.to_vec(), vnames.to_vec()),
            _ => (vnames.to_vec(), Vec::new()),
        }
    };
    let value_order = |key: &str| -> Vec<&str> {
        match key {
            "tri_l" | "tri_r" | "mul_V" | "P_V" | "theta_V" => vnames.to_vec(),
            _ => rnames.to_vec(),
        }
    };
    let mut lines: Vec<(usize, usize, usize, usize, String)> = Vec::new();
    for e in entries {
        let key_pos = TENSOR_ORDER
            .iter()
            .position(|k| *k == e.key.value)
            .unwrap_or(TENSOR_ORDER.len());
        let op_pos = e
            .op
            .as_ref()
            .map(|op| position(op_order, &op.value))
            .unwrap_or(0);
        let (ord1, ord2) = arg_order(&e.key.value);
        let a1 = position(&ord1, &e.args[0].value);
        let a2 = e.args.get(1).map(|a| position(&ord2, &a.value)).unwrap_or(0);
        let Some(rendered) = render_items(&e.items, &value_order(&e.key.value)) else {
            continue;
        };
        let head = match (&e.op, e.args.len()) {
            (Some(op), 1) => format!("  {}[{}]: {} -> {rendered} ;\n", e.key.value, op.value, e.args[0].value),
            (None, 2) => format!(
                "  {}: {}|{} -> {rendered} ;\n",
                e.key.value, e.args[0].value, e.args[1].value
            ),
            (None, 1) => format!("  {}: {} -> {rendered} ;\n", e.key.value, e.args[0].value),
            _ => continue,
        };
        lines.push((key_pos, op_pos, a1, a2, head));
    }
    lines.sort_by_key(|a| (a.0, a.1, a.2, a.3));
    for (_, _, _, _, line) in lines {
        out.push_str(&line);
    }
}

fn write_datum(out: &mut String, b: &DatumBlock) {
    out.push_str(&format!("datum {} base {} {{\n", b.name.value, b.base.value));
    let vnames: Vec<&str> = b.vbasis.iter().map(|x| x.value.as_str()).collect();
    out.push_str(&format!("  vdim: {} ;\n", b.vdim.value));
    out.push_str(&format!("  vbasis: {} ;\n", vnames.join(", ")));
    // The base basis order is not in this block; collect names in first-
    // seen order from entry arguments, which matches builder output.
    let mut rnames: Vec<&str> = Vec::new();
    for e in &b.entries {
        for arg in &e.args {
            if !vnames.contains(&arg.value.as_str()) && !rnames.contains(&arg.value.as_str()) {
                rnames.push(&arg.value);
            }
        }
        for (_, n) in &e.items {
            if !vnames.contains(&n.value.as_str()) && !rnames.contains(&n.value.as_str()) {
                rnames.push(&n.value);
            }
        }
    }
    rnames.sort_unstable();
    let mut ops: Vec<&str> = Vec::new();
    for e in &b.entries {
        if let Some(op) = &e.op {
            if !ops.contains(&op.value.as_str()) {
                ops.push(&op.value);
            }
        }
    }
    write_entries(out, &b.entries, &rnames, &vnames, &ops);
    out.push_str("}\n");
}

fn write_pair(out: &mut String, b: &PairBlock) {
    out.push_str(&format!(
        "pair {} base {} second {} {{\n",
        b.name.value, b.base.value, b.second.value
    ));
    let mut rnames: Vec<&str> = Vec::new();
    let mut vnames: Vec<&str> = Vec::new();
    for e in &b.entries {
        let (r_arg, v_arg) = match e.key.value.as_str() {
            "tri_l" | "harp_l" => (0, 1),
            _ => (1, 0),
        };
        if let Some(arg) = e.args.get(r_arg) {
            if !rnames.contains(&arg.value.as_str()) {
                rnames.push(&arg.value);
            }
        }
        if let Some(arg) = e.args.get(v_arg) {
            if !vnames.contains(&arg.value.as_str()) {
                vnames.push(&arg.value);
            }
        }
    }
    rnames.sort_unstable();
    vnames.sort_unstable();
    write_entries(out, &b.entries, &rnames, &vnames, &[]);
    out.push_str("}\n");
}

fn write_deformation(out: &mut String, b: &DeformationBlock) {
    out.push_str(&format!("deformation {} datum {} {{\n", b.name.value, b.datum.value));
    let mut names: Vec<&str> = Vec::new();
    for (_, items) in &b.entries {
        for (_, n) in items {
            if !names.contains(&n.value.as_str()) {
                names.push(&n.value);
            }
        }
    }
    names.sort_unstable();
    let mut lines: Vec<(String, String)> = Vec::new();
    for (arg, items) in &b.entries {
        if let Some(rendered) = render_items(items, &names) {
            lines.push((arg.value.clone(), format!("  d: {} -> {rendered} ;\n", arg.value)));
        }
    }
    lines.sort();
    for (_, line) in lines {
        out.push_str(&line);
    }
    out.push_str("}\n");
}

fn write_flagrow(out: &mut String, b: &FlagRowBlock) {
    out.push_str(&format!("flagrow {} base {} {{\n", b.name.value, b.base.value));
    out.push_str(&format!("  row: {} ;\n", b.row.value));
    out.push_str("}\n");
}

fn write_grid(out: &mut String, b: &GridBlock) {
    out.push_str(&format!("grid {} base {} {{\n", b.name.value, b.base.value));
    for (key, op, values) in &b.fields {
        let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        match op {
            Some(op) => out.push_str(&format!("  {}[{}]: {} ;\n", key.value, op.value, vals.join(", "))),
            None => out.push_str(&format!("  {}: {} ;\n", key.value, vals.join(", "))),
        }
    }
    out.push_str("}\n");
}

fn sp(name: &str) -> Spanned<String> {
    Spanned::new(name.to_string())
}

/// Semigroup block from an entity.
pub fn semigroup_block(name: &str, sg: &FiniteSemigroup) -> SemigroupBlock {
    let elements: Vec<Spanned<String>> = sg.elements().iter().map(|e| sp(e)).collect();
    let mut table = Vec::new();
    for i in 0..sg.len() {
        for j in 0..sg.len() {
            table.push((
                sp(sg.element(i)),
                sp(sg.element(j)),
                sp(sg.element(sg.mul(i, j))),
            ));
        }
    }
    SemigroupBlock { name: sp(name), elements, table }
}

/// Algebra block from an entity.
pub fn algebra_block(name: &str, alg: &HomAlgebra, sg_name: &str) -> AlgebraBlock {
    let n = alg.dim();
    let items_of = |v: Vec<Scalar>| -> Vec<Item> {
        v.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, sp(&alg.basis[k])))
            .collect()
    };
    let mut mul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let items = items_of(alg.mu.on_basis(i, j));
            if !items.is_empty() {
                mul.push((sp(&alg.basis[i]), sp(&alg.basis[j]), items));
            }
        }
    }
    let mut theta = Vec::new();
    for j in 0..n {
        let items = items_of(alg.theta.col(j));
        if !items.is_empty() {
            theta.push((sp(&alg.basis[j]), items));
        }
    }
    let mut ops = Vec::new();
    for w in 0..alg.semigroup.len() {
        for j in 0..n {
            let items = items_of(alg.p[w].col(j));
            if !items.is_empty() {
                ops.push((sp(alg.semigroup.element(w)), sp(&alg.basis[j]), items));
            }
        }
    }
    AlgebraBlock {
        name: sp(name),
        weight: alg.weight.clone(),
        semigroup: sp(sg_name),
        dim: Spanned::new(n),
        basis: alg.basis.iter().map(|b| sp(b)).collect(),
        mul,
        theta,
        ops,
    }
}

/// Datum block from an entity.
pub fn datum_block(name: &str, datum: &ExtendingDatum, base_name: &str) -> DatumBlock {
    let n = datum.base.dim();
    let m = datum.vdim();
    let rb = &datum.base.basis;
    let vb = &datum.vbasis;
    let sg = &datum.base.semigroup;
    let mut entries = Vec::new();
    let items_of = |v: Vec<Scalar>, names: &[String]| -> Vec<Item> {
        v.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, sp(&names[k])))
            .collect()
    };
    let mut push = |key: &str, op: Option<&str>, args: Vec<&str>, items: Vec<Item>| {
        if items.is_empty() {
            return;
        }
        entries.push(TensorEntry {
            key: sp(key),
            op: op.map(sp),
            args: args.into_iter().map(sp).collect(),
            items,
        });
    };
    for i in 0..n {
        for p in 0..m {
            push("tri_l", None, vec![&rb[i], &vb[p]], items_of(datum.tri_l.on_basis(i, p), vb));
            push("harp_l", None, vec![&rb[i], &vb[p]], items_of(datum.harp_l.on_basis(i, p), rb));
            push("tri_r", None, vec![&vb[p], &rb[i]], items_of(datum.tri_r.on_basis(p, i), vb));
            push("harp_r", None, vec![&vb[p], &rb[i]], items_of(datum.harp_r.on_basis(p, i), rb));
        }
    }
    for p in 0..m {
        for q in 0..m {
            push("f", None, vec![&vb[p], &vb[q]], items_of(datum.f.on_basis(p, q), rb));
            push("mul_V", None, vec![&vb[p], &vb[q]], items_of(datum.mul_v.on_basis(p, q), vb));
        }
    }
    for w in 0..sg.len() {
        for p in 0..m {
            push("Q", Some(sg.element(w)), vec![&vb[p]], items_of(datum.q[w].col(p), rb));
            push("P_V", Some(sg.element(w)), vec![&vb[p]], items_of(datum.p_v[w].col(p), vb));
        }
    }
    for p in 0..m {
        push("eta", None, vec![&vb[p]], items_of(datum.eta.col(p), rb));
        push("theta_V", None, vec![&vb[p]], items_of(datum.theta_v.col(p), vb));
    }
    DatumBlock {
        name: sp(name),
        base: sp(base_name),
        vdim: Spanned::new(m),
        vbasis: vb.iter().map(|v| sp(v)).collect(),
        entries,
    }
}

/// Pair block from an entity.
pub fn pair_block(name: &str, pair: &MatchedPair, base_name: &str, second_name: &str) -> PairBlock {
    let n = pair.r.dim();
    let m = pair.v.dim();
    let rb = &pair.r.basis;
    let vb = &pair.v.basis;
    let mut entries = Vec::new();
    let items_of = |v: Vec<Scalar>, names: &[String]| -> Vec<Item> {
        v.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c, sp(&names[k])))
            .collect()
    };
    let mut push = |key: &str, args: Vec<&str>, items: Vec<Item>| {
        if items.is_empty() {
            return;
        }
        entries.push(TensorEntry { key: sp(key), op: None, args: args.into_iter().map(sp).collect(), items });
    };
    for i in 0..n {
        for p in 0..m {
            push("tri_l", vec![&rb[i], &vb[p]], items_of(pair.tri_l.on_basis(i, p), vb));
            push("harp_l", vec![&rb[i], &vb[p]], items_of(pair.harp_l.on_basis(i, p), rb));
            push("tri_r", vec![&vb[p], &rb[i]], items_of(pair.tri_r.on_basis(p, i), vb));
            push("harp_r", vec![&vb[p], &rb[i]], items_of(pair.harp_r.on_basis(p, i), rb));
        }
    }
    PairBlock { name: sp(name), base: sp(base_name), second: sp(second_name), entries }
}

/// Deformation block from an entity.
pub fn deformation_block(name: &str, dm: &DeformationMap, datum_name: &str) -> DeformationBlock {
    let mut entries = Vec::new();
    for p in 0..dm.datum.vdim() {
        let items: Vec<Item> = dm
            .d
            .col(p)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c, sp(&dm.datum.base.basis[i])))
            .collect();
        if !items.is_empty() {
            entries.push((sp(&dm.datum.vbasis[p]), items));
        }
    }
    DeformationBlock { name: sp(name), datum: sp(datum_name), entries }
}
