//! Matched pairs of two algebras acting on each other, bicrossed
//! products, and the factorization criterion: a decomposition into two
//! subalgebra spans recovers the pair that built it.

use crate::algebra::{check_morphism, AlgebraError, Bimodule, HomAlgebra};
use crate::extending::{extension_to_datum_with_complement, ExtendError, ExtendingDatum, UnifiedProduct};
use crate::linalg::{std_basis, vec_add, Matrix, Tensor3, Vector};
use crate::report::{collect_violations, Report, Violation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatchedError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the two algebras live over different semigroups")]
    SemigroupMismatch,
    #[error("the two algebras have different weights")]
    WeightMismatch,
    #[error("an algebra of the pair fails its axioms")]
    InvalidAlgebra,
    #[error("pair fails the matched-pair conditions")]
    InvalidPair,
    #[error("the two spans do not decompose the space as a direct sum")]
    NotADirectSum,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Two algebras with four cross actions, shaped like the action blocks of
/// an extending datum.
#[derive(Clone, PartialEq, Debug)]
pub struct MatchedPair {
    pub r: HomAlgebra,
    pub v: HomAlgebra,
    /// r x v -> v
    pub tri_l: Tensor3,
    /// v x r -> v
    pub tri_r: Tensor3,
    /// v x r -> r
    pub harp_r: Tensor3,
    /// r x v -> r
    pub harp_l: Tensor3,
}

impl MatchedPair {
    pub fn new(
        r: HomAlgebra,
        v: HomAlgebra,
        tri_l: Tensor3,
        tri_r: Tensor3,
        harp_r: Tensor3,
        harp_l: Tensor3,
    ) -> Result<MatchedPair, MatchedError> {
        if r.semigroup != v.semigroup {
            return Err(MatchedError::SemigroupMismatch);
        }
        if r.weight != v.weight {
            return Err(MatchedError::WeightMismatch);
        }
        let (n, m) = (r.dim(), v.dim());
        let want = |cond: bool, what: &str| {
            if cond {
                Ok(())
            } else {
                Err(MatchedError::Shape(what.to_string()))
            }
        };
        want(tri_l.dims() == (n, m, m), "tri_l must be n x m x m")?;
        want(tri_r.dims() == (m, n, m), "tri_r must be m x n x m")?;
        want(harp_r.dims() == (m, n, n), "harp_r must be m x n x n")?;
        want(harp_l.dims() == (n, m, n), "harp_l must be n x m x n")?;
        Ok(MatchedPair { r, v, tri_l, tri_r, harp_r, harp_l })
    }

    /// Both algebras with all four actions zero.
    pub fn zero_actions(r: HomAlgebra, v: HomAlgebra) -> Result<MatchedPair, MatchedError> {
        let (n, m) = (r.dim(), v.dim());
        MatchedPair::new(
            r,
            v,
            Tensor3::zeros(n, m, m),
            Tensor3::zeros(m, n, m),
            Tensor3::zeros(m, n, n),
            Tensor3::zeros(n, m, n),
        )
    }

    /// The zero-extension of the pair: cocycle, operator cross maps, and
    /// twist cross map all vanish, and the complement block carries the
    /// second algebra's own structure.
    pub fn to_datum(&self) -> ExtendingDatum {
        let (n, m) = (self.r.dim(), self.v.dim());
        let sg = self.r.semigroup.len();
        ExtendingDatum::new(
            self.r.clone(),
            self.v.basis.clone(),
            self.tri_l.clone(),
            self.tri_r.clone(),
            self.harp_r.clone(),
            self.harp_l.clone(),
            Tensor3::zeros(m, m, n),
            self.v.mu.clone(),
            vec![Matrix::zeros(n, m); sg],
            self.v.p.clone(),
            Matrix::zeros(n, m),
            self.v.theta.clone(),
        )
        .expect("pair shapes")
    }

    /// The eight matched-pair conditions, on all basis tuples. The first
    /// two delegate to the bimodule checker in both directions; both
    /// algebras must pass their own axioms first.
    pub fn check_matched_pair(&self) -> Result<Report, MatchedError> {
        if !self.r.check_algebra().is_empty() || !self.v.check_algebra().is_empty() {
            return Err(MatchedError::InvalidAlgebra);
        }
        Ok(self.matched_conditions())
    }

    /// The raw condition evaluation without the algebra preconditions.
    pub fn matched_conditions(&self) -> Report {
        let mut report = Report::new();
        // (M1) the complement is a bimodule over the base.
        let m1 = Bimodule::new(
            self.r.clone(),
            self.v.dim(),
            self.v.theta.clone(),
            self.v.p.clone(),
            self.tri_l.clone(),
            self.tri_r.clone(),
        )
        .expect("pair shapes")
        .check_bimodule();
        report.merge_relabel(m1, |lbl| format!("M1[{lbl}]"));
        // (M2) the base is a bimodule over the complement, acting through
        // the harpoon maps.
        let m2 = Bimodule::new(
            self.v.clone(),
            self.r.dim(),
            self.r.theta.clone(),
            self.r.p.clone(),
            self.harp_r.clone(),
            self.harp_l.clone(),
        )
        .expect("pair shapes")
        .check_bimodule();
        report.merge_relabel(m2, |lbl| format!("M2[{lbl}]"));

        let (n, m) = (self.r.dim(), self.v.dim());
        let rr = |u: &[Scalar], v: &[Scalar]| self.r.mul_vec(u, v);
        let vv = |u: &[Scalar], v: &[Scalar]| self.v.mul_vec(u, v);
        let th = |i: usize| self.r.theta.col(i);
        let thv = |p: usize| self.v.theta.col(p);

        let rrv: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..m).map(move |p| (i, j, p))))
            .collect();
        report.merge(collect_violations(rrv.clone(), |&(i, j, p)| {
            let ab = self.r.mu.on_basis(i, j);
            let lhs = self.harp_l.apply(&ab, &thv(p));
            let rhs = vec_add(
                &rr(&th(i), &self.harp_l.on_basis(j, p)),
                &self.harp_l.apply(&th(i), &self.tri_l.on_basis(j, p)),
            );
            violation("M3", vec![i + 1, j + 1, p + 1], lhs, rhs)
        }));
        let vrr: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|p| (0..n).flat_map(move |i| (0..n).map(move |j| (p, i, j))))
            .collect();
        report.merge(collect_violations(vrr, |&(p, i, j)| {
            let lhs = vec_add(
                &rr(&self.harp_r.on_basis(p, i), &th(j)),
                &self.harp_r.apply(&self.tri_r.on_basis(p, i), &th(j)),
            );
            let rhs = self.harp_r.apply(&thv(p), &self.r.mu.on_basis(i, j));
            violation("M4", vec![p + 1, i + 1, j + 1], lhs, rhs)
        }));
        let rvr: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..m).flat_map(move |p| (0..n).map(move |j| (i, p, j))))
            .collect();
        report.merge(collect_violations(rvr, |&(i, p, j)| {
            let lhs = vec_add(
                &rr(&self.harp_l.on_basis(i, p), &th(j)),
                &self.harp_r.apply(&self.tri_l.on_basis(i, p), &th(j)),
            );
            let rhs = vec_add(
                &rr(&th(i), &self.harp_r.on_basis(p, j)),
                &self.harp_l.apply(&th(i), &self.tri_r.on_basis(p, j)),
            );
            violation("M5", vec![i + 1, p + 1, j + 1], lhs, rhs)
        }));
        let vvr: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|p| (0..m).flat_map(move |q| (0..n).map(move |i| (p, q, i))))
            .collect();
        report.merge(collect_violations(vvr.clone(), |&(p, q, i)| {
            let lhs = self.tri_r.apply(&self.v.mu.on_basis(p, q), &th(i));
            let rhs = vec_add(
                &self.tri_r.apply(&thv(p), &self.harp_r.on_basis(q, i)),
                &vv(&thv(p), &self.tri_r.on_basis(q, i)),
            );
            violation("M6", vec![p + 1, q + 1, i + 1], lhs, rhs)
        }));
        let rvv: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..m).flat_map(move |p| (0..m).map(move |q| (i, p, q))))
            .collect();
        report.merge(collect_violations(rvv, |&(i, p, q)| {
            let lhs = vec_add(
                &self.tri_l.apply(&self.harp_l.on_basis(i, p), &thv(q)),
                &vv(&self.tri_l.on_basis(i, p), &thv(q)),
            );
            let rhs = self.tri_l.apply(&th(i), &self.v.mu.on_basis(p, q));
            violation("M7", vec![i + 1, p + 1, q + 1], lhs, rhs)
        }));
        let vrv: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|p| (0..n).flat_map(move |i| (0..m).map(move |q| (p, i, q))))
            .collect();
        report.merge(collect_violations(vrv, |&(p, i, q)| {
            let lhs = vec_add(
                &self.tri_l.apply(&self.harp_r.on_basis(p, i), &thv(q)),
                &vv(&self.tri_r.on_basis(p, i), &thv(q)),
            );
            let rhs = vec_add(
                &self.tri_r.apply(&thv(p), &self.harp_l.on_basis(i, q)),
                &vv(&thv(p), &self.tri_l.on_basis(i, q)),
            );
            violation("M8", vec![p + 1, i + 1, q + 1], lhs, rhs)
        }));
        report
    }

    /// The unified product of the zero-extension; defined exactly when
    /// the pair passes the matched-pair conditions.
    pub fn build_bicrossed(&self) -> Result<UnifiedProduct, MatchedError> {
        if !self.check_matched_pair()?.is_empty() {
            return Err(MatchedError::InvalidPair);
        }
        Ok(self.to_datum().build_unified_product())
    }
}

/// Outcome of a factorization check: violations, and on full success the
/// matched pair induced by the decomposition.
#[derive(Clone, Debug)]
pub struct FactorizationOutcome {
    pub report: Report,
    pub pair: Option<MatchedPair>,
}

/// Check that the two spans decompose the algebra as a direct sum of
/// subalgebras, and recover the induced matched pair. The cocycle and
/// operator/twist cross blocks of the induced datum must vanish when both
/// spans close; a nonzero block is an internal error.
pub fn check_factorization(
    e: &HomAlgebra,
    r_span: &[Vector],
    v_span: &[Vector],
) -> Result<FactorizationOutcome, MatchedError> {
    let big = e.dim();
    if r_span.len() + v_span.len() != big {
        return Err(MatchedError::NotADirectSum);
    }
    let mut cols: Vec<Vector> = r_span.to_vec();
    cols.extend(v_span.to_vec());
    let m = Matrix::from_cols(&cols);
    if m.inverse().is_none() {
        return Err(MatchedError::NotADirectSum);
    }
    let mut report = Report::new();
    report.merge_relabel(e.check_subalgebra(r_span)?, |lbl| format!("r-span:{lbl}"));
    report.merge_relabel(e.check_subalgebra(v_span)?, |lbl| format!("v-span:{lbl}"));
    if !report.is_empty() {
        return Ok(FactorizationOutcome { report, pair: None });
    }
    let datum = extension_to_datum_with_complement(e, r_span, v_span)?;
    if !datum.f.is_zero() || datum.q.iter().any(|q| !q.is_zero()) || !datum.eta.is_zero() {
        return Err(MatchedError::Internal(
            "both spans close but the induced cocycle or cross maps are nonzero".into(),
        ));
    }
    let v_names = datum.vbasis.iter().cloned().collect::<Vec<_>>();
    let v_alg = HomAlgebra::new(
        e.semigroup.clone(),
        e.weight.clone(),
        v_names,
        datum.mul_v.clone(),
        datum.theta_v.clone(),
        datum.p_v.clone(),
    )?;
    let pair = MatchedPair::new(
        datum.base.clone(),
        v_alg,
        datum.tri_l.clone(),
        datum.tri_r.clone(),
        datum.harp_r.clone(),
        datum.harp_l.clone(),
    )?;
    Ok(FactorizationOutcome { report, pair: Some(pair) })
}

/// Isomorphism witness used in tests: a bicrossed product restricted to
/// its complement block equals the second algebra of the pair.
pub fn complement_block_matches(product: &UnifiedProduct, pair: &MatchedPair) -> Result<bool, MatchedError> {
    let n = product.split;
    let m = pair.v.dim();
    let span: Vec<Vector> = (0..m).map(|p| std_basis(n + m, n + p)).collect();
    let block = product
        .algebra
        .subalgebra_structure(&span, pair.v.basis.clone())?;
    let phi = Matrix::identity(m);
    Ok(check_morphism(&phi, &block, &pair.v)?.is_empty())
}

fn violation(label: &str, indices: Vec<usize>, lhs: Vector, rhs: Vector) -> Option<Violation> {
    (lhs != rhs).then(|| Violation { label: label.to_string(), indices, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    #[test]
    fn zero_actions_pass() {
        let mp = MatchedPair::zero_actions(sample::base_r(), sample::base_b()).unwrap();
        assert!(mp.check_matched_pair().unwrap().is_empty());
        let product = mp.build_bicrossed().unwrap();
        assert!(product.algebra.check_algebra().is_empty());
        // Direct product: both blocks are subalgebras.
        let n = product.split;
        let dim = product.algebra.dim();
        let r_span: Vec<Vector> = (0..n).map(|i| std_basis(dim, i)).collect();
        let v_span: Vec<Vector> = (n..dim).map(|i| std_basis(dim, i)).collect();
        let out = check_factorization(&product.algebra, &r_span, &v_span).unwrap();
        assert!(out.report.is_empty());
        let rec = out.pair.unwrap();
        assert_eq!(rec, mp);
    }

    #[test]
    fn mismatched_weights_are_rejected() {
        let mut v = sample::base_b();
        v.weight = Scalar::one();
        assert!(matches!(
            MatchedPair::zero_actions(sample::base_r(), v),
            Err(MatchedError::WeightMismatch)
        ));
    }

    #[test]
    fn spans_that_do_not_close_fail_factorization() {
        // In the two-dimensional example, the second coordinate does not
        // span a subalgebra: its square leaves the line.
        let e = sample::algebra_e();
        let r_span = vec![std_basis(2, 0)];
        let v_span = vec![std_basis(2, 1)];
        let out = check_factorization(&e, &r_span, &v_span).unwrap();
        assert!(!out.report.is_empty());
        assert!(out.pair.is_none());
        assert!(out.report.has_label("v-span:sub-mul"));
    }
}
