//! Deformation maps on an extending structure, deformed algebras on the
//! complement, the correspondence with complements of the base block, and
//! exact solving plus index computation in the one-dimensional case.

use crate::algebra::{check_morphism, AlgebraError, HomAlgebra};
use crate::extending::{ExtendError, ExtendingDatum, UnifiedProduct};
use crate::linalg::{std_basis, vec_add, Matrix, Tensor3, Vector};
use crate::report::{collect_violations, Report, Violation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DeformError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("datum fails the structure conditions")]
    InvalidDatum,
    #[error("map fails the deformation conditions")]
    InvalidDeformation,
    #[error("span is not a complement of the base block")]
    InvalidComplement,
    #[error("complement span is not a subalgebra")]
    ComplementNotClosed,
    #[error("deformation maps live over different datums")]
    DatumMismatch,
    #[error("witness map delta is not invertible")]
    NonInvertibleDelta,
    #[error("solving needs complement dimension 1, got {0}")]
    VdimNotOne(usize),
    #[error("solving supports base dimension 1, got {0}")]
    UnsupportedBaseDim(usize),
    #[error("constraint degree {0} exceeds the supported quadratic case")]
    UnsupportedDegree(usize),
    #[error("solution set is not finite or all-of-k: {0}")]
    Unsolved(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A linear map from the complement into the base attached to a datum.
#[derive(Clone, PartialEq, Debug)]
pub struct DeformationMap {
    pub datum: ExtendingDatum,
    /// n x m matrix: column p is the image of the p-th complement vector.
    pub d: Matrix,
}

impl DeformationMap {
    pub fn new(datum: ExtendingDatum, d: Matrix) -> Result<DeformationMap, DeformError> {
        if d.rows() != datum.base.dim() || d.cols() != datum.vdim() {
            return Err(DeformError::Shape(format!(
                "deformation map must be {} x {}",
                datum.base.dim(),
                datum.vdim()
            )));
        }
        Ok(DeformationMap { datum, d })
    }

    /// The three defining conditions on all basis tuples; the datum must
    /// pass the structure conditions first.
    pub fn check_deformation(&self) -> Result<Report, DeformError> {
        if !self.datum.check_extending_structure()?.is_empty() {
            return Err(DeformError::InvalidDatum);
        }
        Ok(self.deformation_conditions())
    }

    /// Raw condition evaluation without the datum precondition.
    pub fn deformation_conditions(&self) -> Report {
        let d = &self.datum;
        let base = &d.base;
        let m = d.vdim();
        let dm = &self.d;
        let mut report = Report::new();
        let pairs: Vec<(usize, usize)> =
            (0..m).flat_map(|p| (0..m).map(move |q| (p, q))).collect();
        report.merge(collect_violations(pairs, |&(p, q)| {
            let dx = dm.col(p);
            let dy = dm.col(q);
            let e_q = std_basis(m, q);
            let e_p = std_basis(m, p);
            let lhs = crate::linalg::vec_sub(
                &base.mul_vec(&dx, &dy),
                &dm.mul_vec(&d.mul_v.on_basis(p, q)),
            );
            let inner = vec_add(&d.tri_l.apply(&dx, &e_q), &d.tri_r.apply(&e_p, &dy));
            let rhs = crate::linalg::vec_sub(
                &crate::linalg::vec_sub(
                    &crate::linalg::vec_sub(&dm.mul_vec(&inner), &d.harp_l.apply(&dx, &e_q)),
                    &d.harp_r.apply(&e_p, &dy),
                ),
                &d.f.on_basis(p, q),
            );
            violation("def(4.1)", vec![p + 1, q + 1], lhs, rhs)
        }));
        let ops: Vec<(usize, usize)> = (0..base.semigroup.len())
            .flat_map(|w| (0..m).map(move |p| (w, p)))
            .collect();
        report.merge(collect_violations(ops, |&(w, p)| {
            let lhs = dm.mul_vec(&d.p_v[w].col(p));
            let rhs = vec_add(&d.q[w].col(p), &base.p_vec(w, &dm.col(p)));
            violation("def(4.2)", vec![w + 1, p + 1], lhs, rhs)
        }));
        let cols: Vec<usize> = (0..m).collect();
        report.merge(collect_violations(cols, |&p| {
            let lhs = dm.mul_vec(&d.theta_v.col(p));
            let rhs = vec_add(&d.eta.col(p), &base.theta_vec(&dm.col(p)));
            violation("def(4.3)", vec![p + 1], lhs, rhs)
        }));
        report
    }

    /// The deformed algebra on the complement, with product twisted by
    /// the map through the two actions. Requires a valid deformation map.
    pub fn build_deformed(&self) -> Result<HomAlgebra, DeformError> {
        if !self.check_deformation()?.is_empty() {
            return Err(DeformError::InvalidDeformation);
        }
        Ok(self.deformed_algebra_unchecked())
    }

    /// The deformed product assembled without any validity gate; used by
    /// the equivalence cross-check, which must stay computable on
    /// arbitrary inputs.
    pub fn deformed_algebra_unchecked(&self) -> HomAlgebra {
        let d = &self.datum;
        let m = d.vdim();
        let mut mu = Tensor3::zeros(m, m, m);
        for p in 0..m {
            for q in 0..m {
                let e_p = std_basis(m, p);
                let e_q = std_basis(m, q);
                let row = vec_add(
                    &vec_add(
                        &d.mul_v.on_basis(p, q),
                        &d.tri_l.apply(&self.d.col(p), &e_q),
                    ),
                    &d.tri_r.apply(&e_p, &self.d.col(q)),
                );
                for (k, v) in row.into_iter().enumerate() {
                    mu.set(p, q, k, v);
                }
            }
        }
        HomAlgebra::new(
            d.base.semigroup.clone(),
            d.base.weight.clone(),
            d.vbasis.clone(),
            mu,
            d.theta_v.clone(),
            d.p_v.clone(),
        )
        .expect("datum shapes")
    }
}

/// A complement of the base block inside a unified product, given by its
/// spanning vectors in product coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct Complement {
    pub span: Vec<Vector>,
}

/// Read the deformation map off a complement: project the complement
/// block along the span and negate. The resulting map must satisfy the
/// deformation conditions, and translation by the map must be an
/// isomorphism from the deformed complement onto the span; both facts are
/// checked and any failure is an internal error.
pub fn complement_to_deformation(
    host: &UnifiedProduct,
    b: &Complement,
) -> Result<DeformationMap, DeformError> {
    let n = host.split;
    let big = host.algebra.dim();
    let m = big - n;
    if b.span.len() != m || b.span.iter().any(|v| v.len() != big) {
        return Err(DeformError::InvalidComplement);
    }
    let mut cols: Vec<Vector> = (0..n).map(|i| std_basis(big, i)).collect();
    cols.extend(b.span.clone());
    let mat = Matrix::from_cols(&cols);
    let Some(inv) = mat.inverse() else {
        return Err(DeformError::InvalidComplement);
    };
    if !host.algebra.check_subalgebra(&b.span)?.is_empty() {
        return Err(DeformError::ComplementNotClosed);
    }
    // Retraction associated to the span, restricted to the complement
    // block and negated.
    let d = Matrix::from_fn(n, m, |i, p| -inv.at(i, n + p));
    let datum = host.read_datum();
    let dm = DeformationMap::new(datum, d)?;
    let cond = dm.deformation_conditions();
    if !cond.is_empty() {
        return Err(DeformError::Internal(format!(
            "complement is a subalgebra but the induced map fails {} conditions",
            cond.len()
        )));
    }
    // x -> x + d(x) must be an isomorphism onto the span.
    let deformed = dm.deformed_algebra_unchecked();
    let span_alg = host
        .algebra
        .subalgebra_structure(&b.span, (1..=m).map(|p| format!("b{p}")).collect())?;
    let span_mat = Matrix::from_cols(&b.span);
    let mut phi = Matrix::zeros(m, m);
    for p in 0..m {
        let mut img = vec![Scalar::zero(); big];
        for (i, c) in dm.d.col(p).into_iter().enumerate() {
            img[i] = c;
        }
        img[n + p] = Scalar::one();
        let coords = span_mat
            .solve(&img)
            .ok_or_else(|| DeformError::Internal("translated vector leaves the span".into()))?;
        for (i, c) in coords.into_iter().enumerate() {
            phi.set(i, p, c);
        }
    }
    let morph = check_morphism(&phi, &deformed, &span_alg)?;
    if !morph.is_empty() || phi.inverse().is_none() {
        return Err(DeformError::Internal(
            "translation by the map is not an isomorphism onto the complement".into(),
        ));
    }
    Ok(dm)
}

/// The complement attached to a deformation map: the graph of the map
/// over the complement block.
pub fn deformation_to_complement(dm: &DeformationMap) -> Result<Complement, DeformError> {
    if !dm.check_deformation()?.is_empty() {
        return Err(DeformError::InvalidDeformation);
    }
    let n = dm.datum.base.dim();
    let m = dm.datum.vdim();
    let span = (0..m)
        .map(|p| {
            let mut v = vec![Scalar::zero(); n + m];
            for (i, c) in dm.d.col(p).into_iter().enumerate() {
                v[i] = c;
            }
            v[n + p] = Scalar::one();
            v
        })
        .collect();
    Ok(Complement { span })
}

/// Row-reduced span comparison: equal subspaces regardless of basis.
pub fn same_subspace(a: &[Vector], b: &[Vector]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ra = Matrix::from_rows(a.to_vec()).rref().0;
    let rb = Matrix::from_rows(b.to_vec()).rref().0;
    ra == rb
}

/// Witness for equivalence of two deformation maps over one datum: an
/// automorphism of the complement.
#[derive(Clone, PartialEq, Debug)]
pub struct DeformEquivWitness {
    pub delta: Matrix,
}

/// The three equivalence conditions for `d1 ~ d2` under `delta`, plus the
/// always-on cross-check that `delta` is an isomorphism between the two
/// deformed algebras; disagreement is an internal error.
pub fn check_deformation_equiv(
    d1: &DeformationMap,
    d2: &DeformationMap,
    w: &DeformEquivWitness,
) -> Result<Report, DeformError> {
    if d1.datum != d2.datum {
        return Err(DeformError::DatumMismatch);
    }
    let datum = &d1.datum;
    let m = datum.vdim();
    if w.delta.rows() != m || w.delta.cols() != m {
        return Err(DeformError::Shape(format!("delta must be {m} x {m}")));
    }
    if w.delta.inverse().is_none() {
        return Err(DeformError::NonInvertibleDelta);
    }
    let mut report = Report::new();
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|p| (0..m).map(move |q| (p, q))).collect();
    report.merge(collect_violations(pairs, |&(p, q)| {
        let dl_p = w.delta.col(p);
        let dl_q = w.delta.col(q);
        let lhs = crate::linalg::vec_sub(
            &w.delta.mul_vec(&datum.mul_v.on_basis(p, q)),
            &datum.mul_v.apply(&dl_p, &dl_q),
        );
        let e_p = std_basis(m, p);
        let e_q = std_basis(m, q);
        let rhs = crate::linalg::vec_sub(
            &crate::linalg::vec_sub(
                &vec_add(
                    &datum.tri_l.apply(&d2.d.mul_vec(&dl_p), &dl_q),
                    &datum.tri_r.apply(&dl_p, &d2.d.mul_vec(&dl_q)),
                ),
                &w.delta.mul_vec(&datum.tri_l.apply(&d1.d.col(p), &e_q)),
            ),
            &w.delta.mul_vec(&datum.tri_r.apply(&e_p, &d1.d.col(q))),
        );
        violation("equiv(4.6)", vec![p + 1, q + 1], lhs, rhs)
    }));
    let ops: Vec<(usize, usize)> = (0..datum.base.semigroup.len())
        .flat_map(|ww| (0..m).map(move |p| (ww, p)))
        .collect();
    report.merge(collect_violations(ops, |&(ww, p)| {
        let lhs = w.delta.mul_vec(&datum.p_v[ww].col(p));
        let rhs = datum.p_v[ww].mul_vec(&w.delta.col(p));
        violation("equiv(4.7)", vec![ww + 1, p + 1], lhs, rhs)
    }));
    let cols: Vec<usize> = (0..m).collect();
    report.merge(collect_violations(cols, |&p| {
        let lhs = w.delta.mul_vec(&datum.theta_v.col(p));
        let rhs = datum.theta_v.mul_vec(&w.delta.col(p));
        violation("equiv(4.8)", vec![p + 1], lhs, rhs)
    }));
    let a1 = d1.deformed_algebra_unchecked();
    let a2 = d2.deformed_algebra_unchecked();
    let morph = check_morphism(&w.delta, &a1, &a2)?;
    if morph.is_empty() != report.is_empty() {
        return Err(DeformError::Internal(format!(
            "equivalence conditions and deformed-algebra morphism disagree: {} vs {} violations",
            report.len(),
            morph.len()
        )));
    }
    Ok(report)
}

/// One polynomial constraint in the unknown scalar, stored as
/// coefficients `[c0, c1, c2]` of 1, d, d^2.
#[derive(Clone, PartialEq, Debug)]
pub struct DeformConstraint {
    pub label: String,
    pub coeffs: [Scalar; 3],
}

impl DeformConstraint {
    fn eval(&self, d: &Scalar) -> Scalar {
        &(&self.coeffs[0] + &(&self.coeffs[1] * d)) + &(&self.coeffs[2] * &(d * d))
    }
}

/// What the exact solver found for the single unknown.
#[derive(Clone, PartialEq, Debug)]
pub enum SolutionSet {
    /// Every scalar satisfies the constraints.
    All,
    /// Exactly these values, possibly none.
    Finite(Vec<Scalar>),
    /// A quadratic constraint has roots outside the rational function
    /// field; they are not representable here.
    IrrationalRoots,
}

#[derive(Clone, PartialEq, Debug)]
pub struct DeformationSolve {
    pub constraints: Vec<DeformConstraint>,
    pub set: SolutionSet,
}

/// Assemble the three deformation conditions as polynomial constraints in
/// the single unknown and solve exactly over the rational function field.
/// Supports one-dimensional complements over a one-dimensional base.
pub fn solve_deformation_1dim(datum: &ExtendingDatum) -> Result<DeformationSolve, DeformError> {
    if datum.vdim() != 1 {
        return Err(DeformError::VdimNotOne(datum.vdim()));
    }
    if datum.base.dim() != 1 {
        return Err(DeformError::UnsupportedBaseDim(datum.base.dim()));
    }
    if !datum.check_extending_structure()?.is_empty() {
        return Err(DeformError::InvalidDatum);
    }
    let mu = datum.base.mu.at(0, 0, 0);
    let l = datum.tri_l.at(0, 0, 0);
    let r = datum.tri_r.at(0, 0, 0);
    let t_l = datum.harp_l.at(0, 0, 0);
    let t_r = datum.harp_r.at(0, 0, 0);
    let k1 = datum.mul_v.at(0, 0, 0);
    let a1 = datum.f.at(0, 0, 0);
    let mut constraints = vec![DeformConstraint {
        label: "def(4.1)".into(),
        coeffs: [
            a1.clone(),
            &(t_l + t_r) - k1,
            &(mu - l) - r,
        ],
    }];
    for w in 0..datum.base.semigroup.len() {
        constraints.push(DeformConstraint {
            label: format!("def(4.2)[{}]", datum.base.semigroup.element(w)),
            coeffs: [
                -datum.q[w].at(0, 0),
                datum.p_v[w].at(0, 0) - datum.base.p[w].at(0, 0),
                Scalar::zero(),
            ],
        });
    }
    constraints.push(DeformConstraint {
        label: "def(4.3)".into(),
        coeffs: [
            -datum.eta.at(0, 0),
            datum.theta_v.at(0, 0) - datum.base.theta.at(0, 0),
            Scalar::zero(),
        ],
    });
    let mut solved: Vec<ConstraintSolutions> = Vec::new();
    for c in &constraints {
        solved.push(solve_constraint(c)?);
    }
    let mut set = SolutionSet::All;
    for s in &solved {
        set = intersect(set, s, &constraints);
    }
    Ok(DeformationSolve { constraints, set })
}

enum ConstraintSolutions {
    All,
    Empty,
    Roots(Vec<Scalar>),
    Irrational,
}

fn solve_constraint(c: &DeformConstraint) -> Result<ConstraintSolutions, DeformError> {
    let [c0, c1, c2] = &c.coeffs;
    if c2.is_zero() {
        if c1.is_zero() {
            return Ok(if c0.is_zero() {
                ConstraintSolutions::All
            } else {
                ConstraintSolutions::Empty
            });
        }
        let root = (-c0).div(c1, "linear constraint").expect("c1 nonzero");
        return Ok(ConstraintSolutions::Roots(vec![root]));
    }
    let disc = &(c1 * c1) - &(&(&Scalar::from_int(4) * c2) * c0);
    let Some(s) = disc.sqrt() else {
        return Ok(ConstraintSolutions::Irrational);
    };
    let two_a = &Scalar::from_int(2) * c2;
    let r1 = (&(-c1) - &s).div(&two_a, "quadratic").expect("c2 nonzero");
    let r2 = (&(-c1) + &s).div(&two_a, "quadratic").expect("c2 nonzero");
    let mut roots = vec![r1.clone()];
    if r2 != r1 {
        roots.push(r2);
    }
    Ok(ConstraintSolutions::Roots(roots))
}

fn satisfies_all(d: &Scalar, constraints: &[DeformConstraint]) -> bool {
    constraints.iter().all(|c| c.eval(d).is_zero())
}

fn intersect(
    acc: SolutionSet,
    next: &ConstraintSolutions,
    constraints: &[DeformConstraint],
) -> SolutionSet {
    match (acc, next) {
        (SolutionSet::Finite(v), _) if v.is_empty() => SolutionSet::Finite(v),
        (acc, ConstraintSolutions::All) => acc,
        (_, ConstraintSolutions::Empty) => SolutionSet::Finite(vec![]),
        (SolutionSet::All, ConstraintSolutions::Roots(roots)) => SolutionSet::Finite(
            roots
                .iter()
                .filter(|r| satisfies_all(r, constraints))
                .cloned()
                .collect(),
        ),
        (SolutionSet::All, ConstraintSolutions::Irrational) => SolutionSet::IrrationalRoots,
        (SolutionSet::Finite(v), ConstraintSolutions::Roots(_) | ConstraintSolutions::Irrational) => {
            // Candidates were already filtered against every constraint.
            SolutionSet::Finite(v)
        }
        (SolutionSet::IrrationalRoots, ConstraintSolutions::Roots(roots)) => SolutionSet::Finite(
            roots
                .iter()
                .filter(|r| satisfies_all(r, constraints))
                .cloned()
                .collect(),
        ),
        (SolutionSet::IrrationalRoots, ConstraintSolutions::Irrational) => {
            SolutionSet::IrrationalRoots
        }
    }
}

/// Decide equivalence of two one-dimensional deformation values and
/// produce the witness scale when one exists. The equivalence equation is
/// linear after removing the nonzero-witness factor; the returned witness
/// is verified through the full checker.
pub fn deform_equiv_1dim(
    datum: &ExtendingDatum,
    d1: &Scalar,
    d2: &Scalar,
) -> Result<Option<Scalar>, DeformError> {
    if datum.vdim() != 1 || datum.base.dim() != 1 {
        return Err(DeformError::VdimNotOne(datum.vdim()));
    }
    let s = datum.tri_l.at(0, 0, 0) + datum.tri_r.at(0, 0, 0);
    let k1 = datum.mul_v.at(0, 0, 0);
    let m1 = k1 + &(&s * d1);
    let m2 = k1 + &(&s * d2);
    let delta = match (m1.is_zero(), m2.is_zero()) {
        (true, true) => Scalar::one(),
        (false, false) => m1.div(&m2, "equivalence witness").expect("m2 nonzero"),
        _ => return Ok(None),
    };
    let dm1 = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![d1.clone()]]))?;
    let dm2 = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![d2.clone()]]))?;
    let w = DeformEquivWitness { delta: Matrix::from_cols(&[vec![delta.clone()]]) };
    let rep = check_deformation_equiv(&dm1, &dm2, &w)?;
    if !rep.is_empty() {
        return Err(DeformError::Internal(
            "derived witness fails the equivalence conditions".into(),
        ));
    }
    Ok(Some(delta))
}

/// Equivalence classes of the solved deformation values.
#[derive(Clone, PartialEq, Debug)]
pub struct IndexReport {
    pub set: SolutionSet,
    pub index: usize,
    pub representatives: Vec<Scalar>,
    /// One description per class, over the solution set.
    pub classes: Vec<String>,
}

/// Count equivalence classes of deformation maps in the one-dimensional
/// case. Finite sets are partitioned pairwise through the witness
/// equation; the all-of-k case splits on the single value annihilating
/// the action marker, when the marker depends on the value at all.
pub fn count_index_1dim(datum: &ExtendingDatum) -> Result<IndexReport, DeformError> {
    let solve = solve_deformation_1dim(datum)?;
    match &solve.set {
        SolutionSet::IrrationalRoots => Err(DeformError::Unsolved(
            "irrational root, not representable".into(),
        )),
        SolutionSet::Finite(values) => {
            let mut classes: Vec<Vec<Scalar>> = Vec::new();
            for v in values {
                let mut placed = false;
                for class in classes.iter_mut() {
                    if deform_equiv_1dim(datum, &class[0], v)?.is_some() {
                        class.push(v.clone());
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    classes.push(vec![v.clone()]);
                }
            }
            let representatives: Vec<Scalar> = classes.iter().map(|c| c[0].clone()).collect();
            let descriptions = classes
                .iter()
                .map(|c| {
                    let vals: Vec<String> = c.iter().map(|v| format!("d = {v}")).collect();
                    vals.join(" or ")
                })
                .collect();
            Ok(IndexReport {
                set: solve.set.clone(),
                index: classes.len(),
                representatives,
                classes: descriptions,
            })
        }
        SolutionSet::All => {
            let s = datum.tri_l.at(0, 0, 0) + datum.tri_r.at(0, 0, 0);
            let k1 = datum.mul_v.at(0, 0, 0);
            if s.is_zero() {
                // The deformed product does not depend on the value; all
                // maps are equivalent.
                let rep = Scalar::zero();
                if deform_equiv_1dim(datum, &rep, &Scalar::one())?.is_none() {
                    return Err(DeformError::Internal(
                        "marker is constant but probe values are inequivalent".into(),
                    ));
                }
                Ok(IndexReport {
                    set: solve.set.clone(),
                    index: 1,
                    representatives: vec![rep],
                    classes: vec!["all of k".into()],
                })
            } else {
                let special = (-k1).div(&s, "index special value").expect("s nonzero");
                let other = &special + &Scalar::one();
                if deform_equiv_1dim(datum, &special, &other)?.is_some() {
                    return Err(DeformError::Internal(
                        "special value unexpectedly equivalent to its neighbor".into(),
                    ));
                }
                if deform_equiv_1dim(datum, &other, &(&other + &Scalar::one()))?.is_none() {
                    return Err(DeformError::Internal(
                        "generic values unexpectedly inequivalent".into(),
                    ));
                }
                Ok(IndexReport {
                    set: solve.set.clone(),
                    index: 2,
                    representatives: vec![special.clone(), other],
                    classes: vec![format!("d = {special}"), format!("d != {special}")],
                })
            }
        }
    }
}

fn violation(label: &str, indices: Vec<usize>, lhs: Vector, rhs: Vector) -> Option<Violation> {
    (lhs != rhs).then(|| Violation { label: label.to_string(), indices, lhs, rhs })
}
