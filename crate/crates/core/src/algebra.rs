//! Structure-constant algebras with a twisting map and an operator family,
//! their morphisms and modules, and the axiom checkers.
//!
//! Conventions, fixed once for the whole crate: products are stored as
//! `mu[i][j][k]`, the coefficient of basis vector k in `x_i * x_j`; linear
//! maps are matrices acting on coordinate columns, so column j of `theta`
//! is the image of `x_j`. All identities are multilinear, so the checkers
//! evaluate them on basis tuples only.

use crate::linalg::{std_basis, vec_is_zero, vec_sub, Matrix, Tensor3, Vector};
use crate::report::{collect_violations, Report, Violation};
use crate::scalar::Scalar;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operands live over different semigroups")]
    SemigroupMismatch,
    #[error("operands have different weights")]
    WeightMismatch,
    #[error("span is rank deficient")]
    RankDeficient,
    #[error("span is not closed under the operations")]
    NotClosed,
}

/// A finite-dimensional algebra over Q(lambda) with multiplication tensor
/// `mu`, twisting map `theta`, and one operator matrix per semigroup
/// element. Validity of the defining identities is a separate check
/// ([`HomAlgebra::check_algebra`]), not a constructor invariant.
#[derive(Clone, PartialEq, Eq)]
pub struct HomAlgebra {
    pub semigroup: FiniteSemigroup,
    pub weight: Scalar,
    pub basis: Vec<String>,
    pub mu: Tensor3,
    pub theta: Matrix,
    pub p: Vec<Matrix>,
}

impl HomAlgebra {
    pub fn new(
        semigroup: FiniteSemigroup,
        weight: Scalar,
        basis: Vec<String>,
        mu: Tensor3,
        theta: Matrix,
        p: Vec<Matrix>,
    ) -> Result<HomAlgebra, AlgebraError> {
        let n = basis.len();
        if n == 0 {
            return Err(AlgebraError::Shape("algebra dimension must be positive".into()));
        }
        if mu.dims() != (n, n, n) {
            return Err(AlgebraError::Shape(format!("mu must be {n}x{n}x{n}")));
        }
        if theta.rows() != n || theta.cols() != n {
            return Err(AlgebraError::Shape(format!("theta must be {n}x{n}")));
        }
        if p.len() != semigroup.len() {
            return Err(AlgebraError::Shape("one operator per semigroup element".into()));
        }
        if p.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(AlgebraError::Shape(format!("operators must be {n}x{n}")));
        }
        Ok(HomAlgebra { semigroup, weight, basis, mu, theta, p })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mul_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.mu.apply(u, v)
    }

    pub fn theta_vec(&self, v: &[Scalar]) -> Vector {
        self.theta.mul_vec(v)
    }

    pub fn p_vec(&self, w: usize, v: &[Scalar]) -> Vector {
        self.p[w].mul_vec(v)
    }

    /// theta(x_i) * (x_j * x_k) = (x_i * x_j) * theta(x_k) on all triples.
    pub fn check_hom_assoc(&self) -> Report {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        collect_violations(triples, |&(i, j, k)| {
            let lhs = self.mul_vec(&self.theta.col(i), &self.mu.on_basis(j, k));
            let rhs = self.mul_vec(&self.mu.on_basis(i, j), &self.theta.col(k));
            (lhs != rhs).then(|| Violation {
                label: "hom-assoc".into(),
                indices: vec![i + 1, j + 1, k + 1],
                lhs,
                rhs,
            })
        })
    }

    /// P_a(x) P_b(y) = P_ab( P_a(x) y + x P_b(y) + weight * x y ) on all
    /// basis pairs and all (a, b) in S x S.
    pub fn check_rb_family(&self) -> Report {
        let n = self.dim();
        let mut tasks = Vec::new();
        for (a, b) in self.semigroup.pairs() {
            for i in 0..n {
                for j in 0..n {
                    tasks.push((a, b, i, j));
                }
            }
        }
        collect_violations(tasks, |&(a, b, i, j)| {
            let pax = self.p[a].col(i);
            let pby = self.p[b].col(j);
            let lhs = self.mul_vec(&pax, &pby);
            let mut inner = self.mul_vec(&pax, &std_basis(n, j));
            let t2 = self.mul_vec(&std_basis(n, i), &pby);
            let t3 = self.mu.on_basis(i, j);
            for k in 0..n {
                inner[k] = &(&inner[k] + &t2[k]) + &(&self.weight * &t3[k]);
            }
            let rhs = self.p_vec(self.semigroup.mul(a, b), &inner);
            (lhs != rhs).then(|| Violation {
                label: "rb-family".into(),
                indices: vec![a + 1, b + 1, i + 1, j + 1],
                lhs,
                rhs,
            })
        })
    }

    /// P_w(theta(x)) = theta(P_w(x)) for each operator, column by column.
    pub fn check_theta_p_commute(&self) -> Report {
        let n = self.dim();
        let tasks: Vec<(usize, usize)> = (0..self.semigroup.len())
            .flat_map(|w| (0..n).map(move |j| (w, j)))
            .collect();
        collect_violations(tasks, |&(w, j)| {
            let lhs = self.p_vec(w, &self.theta.col(j));
            let rhs = self.theta_vec(&self.p[w].col(j));
            (lhs != rhs).then(|| Violation {
                label: "theta-P".into(),
                indices: vec![w + 1, j + 1],
                lhs,
                rhs,
            })
        })
    }

    /// All defining identities plus associativity of the index semigroup.
    pub fn check_algebra(&self) -> Report {
        let mut report = self.semigroup.validate();
        report.merge(self.check_hom_assoc());
        report.merge(self.check_rb_family());
        report.merge(self.check_theta_p_commute());
        report
    }

    /// Empty report iff the span is closed under multiplication, every
    /// operator, and theta. The span must be linearly independent.
    pub fn check_subalgebra(&self, span: &[Vector]) -> Result<Report, AlgebraError> {
        let m = self.span_matrix(span)?;
        let k = span.len();
        let mut report = Report::new();
        let in_span = |v: &Vector| m.solve(v).is_some();
        for i in 0..k {
            for j in 0..k {
                let prod = self.mul_vec(&span[i], &span[j]);
                if !in_span(&prod) {
                    report.push(Violation {
                        label: "sub-mul".into(),
                        indices: vec![i + 1, j + 1],
                        lhs: prod,
                        rhs: crate::linalg::vec_zero(self.dim()),
                    });
                }
            }
        }
        for w in 0..self.semigroup.len() {
            for (i, v) in span.iter().enumerate() {
                let img = self.p_vec(w, v);
                if !in_span(&img) {
                    report.push(Violation {
                        label: "sub-P".into(),
                        indices: vec![w + 1, i + 1],
                        lhs: img,
                        rhs: crate::linalg::vec_zero(self.dim()),
                    });
                }
            }
        }
        for (i, v) in span.iter().enumerate() {
            let img = self.theta_vec(v);
            if !in_span(&img) {
                report.push(Violation {
                    label: "sub-theta".into(),
                    indices: vec![i + 1],
                    lhs: img,
                    rhs: crate::linalg::vec_zero(self.dim()),
                });
            }
        }
        Ok(report)
    }

    fn span_matrix(&self, span: &[Vector]) -> Result<Matrix, AlgebraError> {
        if span.iter().any(|v| v.len() != self.dim()) {
            return Err(AlgebraError::Shape("span vectors must match the dimension".into()));
        }
        let m = Matrix::from_cols(span);
        if m.rank() != span.len() {
            return Err(AlgebraError::RankDeficient);
        }
        Ok(m)
    }

    /// The induced algebra on a closed span, with coordinates in the span
    /// basis and fresh basis names.
    pub fn subalgebra_structure(
        &self,
        span: &[Vector],
        names: Vec<String>,
    ) -> Result<HomAlgebra, AlgebraError> {
        let m = self.span_matrix(span)?;
        if !self.check_subalgebra(span)?.is_empty() {
            return Err(AlgebraError::NotClosed);
        }
        let k = span.len();
        let mut mu = Tensor3::zeros(k, k, k);
        for i in 0..k {
            for j in 0..k {
                let c = m.solve(&self.mul_vec(&span[i], &span[j])).expect("closed span");
                for (t, v) in c.into_iter().enumerate() {
                    mu.set(i, j, t, v);
                }
            }
        }
        let theta = Matrix::from_fn(k, k, |_, _| Scalar::zero());
        let mut theta = theta;
        for j in 0..k {
            let c = m.solve(&self.theta_vec(&span[j])).expect("closed span");
            for (i, v) in c.into_iter().enumerate() {
                theta.set(i, j, v);
            }
        }
        let mut p = Vec::new();
        for w in 0..self.semigroup.len() {
            let mut pm = Matrix::zeros(k, k);
            for j in 0..k {
                let c = m.solve(&self.p_vec(w, &span[j])).expect("closed span");
                for (i, v) in c.into_iter().enumerate() {
                    pm.set(i, j, v);
                }
            }
            p.push(pm);
        }
        HomAlgebra::new(self.semigroup.clone(), self.weight.clone(), names, mu, theta, p)
    }

    /// Block-diagonal product of two algebras over the same semigroup and
    /// weight.
    pub fn direct_product(a: &HomAlgebra, b: &HomAlgebra) -> Result<HomAlgebra, AlgebraError> {
        if a.semigroup != b.semigroup {
            return Err(AlgebraError::SemigroupMismatch);
        }
        if a.weight != b.weight {
            return Err(AlgebraError::WeightMismatch);
        }
        let (n, m) = (a.dim(), b.dim());
        let mut mu = Tensor3::zeros(n + m, n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mu.set(i, j, k, a.mu.at(i, j, k).clone());
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    mu.set(n + i, n + j, n + k, b.mu.at(i, j, k).clone());
                }
            }
        }
        let zeros_nm = Matrix::zeros(n, m);
        let zeros_mn = Matrix::zeros(m, n);
        let theta = Matrix::block(&a.theta, &zeros_nm, &zeros_mn, &b.theta);
        let p = (0..a.semigroup.len())
            .map(|w| Matrix::block(&a.p[w], &zeros_nm, &zeros_mn, &b.p[w]))
            .collect();
        let mut basis = a.basis.clone();
        basis.extend(b.basis.iter().cloned());
        HomAlgebra::new(a.semigroup.clone(), a.weight.clone(), basis, mu, theta, p)
    }
}

impl std::fmt::Debug for HomAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HomAlgebra(dim {}, basis {:?})", self.dim(), self.basis)
    }
}

/// phi respects products, the operator family, and the twisting maps.
/// `phi` is a dim(B) x dim(A) matrix.
pub fn check_morphism(phi: &Matrix, a: &HomAlgebra, b: &HomAlgebra) -> Result<Report, AlgebraError> {
    if a.semigroup != b.semigroup {
        return Err(AlgebraError::SemigroupMismatch);
    }
    if a.weight != b.weight {
        return Err(AlgebraError::WeightMismatch);
    }
    if phi.rows() != b.dim() || phi.cols() != a.dim() {
        return Err(AlgebraError::Shape(format!(
            "morphism matrix must be {}x{}",
            b.dim(),
            a.dim()
        )));
    }
    let n = a.dim();
    let mut report = Report::new();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    report.merge(collect_violations(pairs, |&(i, j)| {
        let lhs = phi.mul_vec(&a.mu.on_basis(i, j));
        let rhs = b.mul_vec(&phi.col(i), &phi.col(j));
        (lhs != rhs).then(|| Violation {
            label: "morph-mul".into(),
            indices: vec![i + 1, j + 1],
            lhs,
            rhs,
        })
    }));
    let ops: Vec<(usize, usize)> = (0..a.semigroup.len())
        .flat_map(|w| (0..n).map(move |j| (w, j)))
        .collect();
    report.merge(collect_violations(ops, |&(w, j)| {
        let lhs = phi.mul_vec(&a.p[w].col(j));
        let rhs = b.p_vec(w, &phi.col(j));
        (lhs != rhs).then(|| Violation {
            label: "morph-P".into(),
            indices: vec![w + 1, j + 1],
            lhs,
            rhs,
        })
    }));
    let cols: Vec<usize> = (0..n).collect();
    report.merge(collect_violations(cols, |&j| {
        let lhs = phi.mul_vec(&a.theta.col(j));
        let rhs = b.theta_vec(&phi.col(j));
        (lhs != rhs).then(|| Violation {
            label: "morph-theta".into(),
            indices: vec![j + 1],
            lhs,
            rhs,
        })
    }));
    Ok(report)
}

/// Two-sided module data over a base algebra: actions `left[i][p][q]`
/// (basis a_i acting on v_p) and `right[p][i][q]`, with the module's own
/// twisting map and operator family.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub base: HomAlgebra,
    pub dim: usize,
    pub theta_v: Matrix,
    pub p_v: Vec<Matrix>,
    pub left: Tensor3,
    pub right: Tensor3,
}

impl Bimodule {
    pub fn new(
        base: HomAlgebra,
        dim: usize,
        theta_v: Matrix,
        p_v: Vec<Matrix>,
        left: Tensor3,
        right: Tensor3,
    ) -> Result<Bimodule, AlgebraError> {
        let n = base.dim();
        if theta_v.rows() != dim || theta_v.cols() != dim {
            return Err(AlgebraError::Shape(format!("theta_V must be {dim}x{dim}")));
        }
        if p_v.len() != base.semigroup.len() || p_v.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::Shape("P_V must be square and total on S".into()));
        }
        if left.dims() != (n, dim, dim) {
            return Err(AlgebraError::Shape(format!("left action must be {n}x{dim}x{dim}")));
        }
        if right.dims() != (dim, n, dim) {
            return Err(AlgebraError::Shape(format!("right action must be {dim}x{n}x{dim}")));
        }
        Ok(Bimodule { base, dim, theta_v, p_v, left, right })
    }

    /// The base algebra acting on itself by its own multiplication.
    pub fn regular(base: &HomAlgebra) -> Bimodule {
        Bimodule {
            base: base.clone(),
            dim: base.dim(),
            theta_v: base.theta.clone(),
            p_v: base.p.clone(),
            left: base.mu.clone(),
            right: base.mu.clone(),
        }
    }

    fn theta_v_col(&self, p: usize) -> Vector {
        self.theta_v.col(p)
    }

    /// (2.1): (ab) acting on theta_V(x) equals theta(a) acting on (b on x).
    /// (2.2): the operator family relation for the left action.
    /// (2.3): theta_V commutes with each P_V.
    pub fn check_left_module(&self) -> Report {
        let mut report = self.axiom_2_1();
        report.merge(self.axiom_2_2());
        report.merge(self.axiom_2_3());
        report
    }

    /// (2.3)-(2.5), mirrored for the right action.
    pub fn check_right_module(&self) -> Report {
        let mut report = self.axiom_2_3();
        report.merge(self.axiom_2_4());
        report.merge(self.axiom_2_5());
        report
    }

    /// Left and right module axioms plus the compatibility (2.6).
    pub fn check_bimodule(&self) -> Report {
        let mut report = self.axiom_2_1();
        report.merge(self.axiom_2_2());
        report.merge(self.axiom_2_3());
        report.merge(self.axiom_2_4());
        report.merge(self.axiom_2_5());
        report.merge(self.axiom_2_6());
        report
    }

    fn axiom_2_1(&self) -> Report {
        let (n, m) = (self.base.dim(), self.dim);
        let tasks: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..m).map(move |p| (i, j, p))))
            .collect();
        collect_violations(tasks, |&(i, j, p)| {
            let lhs = self.left.apply(&self.base.mu.on_basis(i, j), &self.theta_v_col(p));
            let inner = self.left.on_basis(j, p);
            let rhs = self.left.apply(&self.base.theta.col(i), &inner);
            (lhs != rhs).then(|| Violation {
                label: "left-module(2.1)".into(),
                indices: vec![i + 1, j + 1, p + 1],
                lhs,
                rhs,
            })
        })
    }

    fn axiom_2_2(&self) -> Report {
        let (n, m) = (self.base.dim(), self.dim);
        let lam = &self.base.weight;
        let mut tasks = Vec::new();
        for (a, b) in self.base.semigroup.pairs() {
            for i in 0..n {
                for p in 0..m {
                    tasks.push((a, b, i, p));
                }
            }
        }
        collect_violations(tasks, |&(a, b, i, p)| {
            let pa_i = self.base.p[a].col(i);
            let pb_p = self.p_v[b].col(p);
            let lhs = self.left.apply(&pa_i, &pb_p);
            let t1 = self.left.apply(&pa_i, &std_basis(m, p));
            let t2 = self.left.apply(&std_basis(n, i), &pb_p);
            let t3 = self.left.on_basis(i, p);
            let inner: Vector = (0..m)
                .map(|q| &(&t1[q] + &t2[q]) + &(lam * &t3[q]))
                .collect();
            let rhs = self.p_v[self.base.semigroup.mul(a, b)].mul_vec(&inner);
            (lhs != rhs).then(|| Violation {
                label: "left-module(2.2)".into(),
                indices: vec![a + 1, b + 1, i + 1, p + 1],
                lhs,
                rhs,
            })
        })
    }

    fn axiom_2_3(&self) -> Report {
        let m = self.dim;
        let tasks: Vec<(usize, usize)> = (0..self.p_v.len())
            .flat_map(|w| (0..m).map(move |p| (w, p)))
            .collect();
        collect_violations(tasks, |&(w, p)| {
            let lhs = self.theta_v.mul_vec(&self.p_v[w].col(p));
            let rhs = self.p_v[w].mul_vec(&self.theta_v_col(p));
            (lhs != rhs).then(|| Violation {
                label: "module(2.3)".into(),
                indices: vec![w + 1, p + 1],
                lhs,
                rhs,
            })
        })
    }

    fn axiom_2_4(&self) -> Report {
        let (n, m) = (self.base.dim(), self.dim);
        let tasks: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|p| (0..n).flat_map(move |i| (0..n).map(move |j| (p, i, j))))
            .collect();
        collect_violations(tasks, |&(p, i, j)| {
            let lhs = self.right.apply(&self.theta_v_col(p), &self.base.mu.on_basis(i, j));
            let inner = self.right.on_basis(p, i);
            let rhs = self.right.apply(&inner, &self.base.theta.col(j));
            (lhs != rhs).then(|| Violation {
                label: "right-module(2.4)".into(),
                indices: vec![p + 1, i + 1, j + 1],
                lhs,
                rhs,
            })
        })
    }

    fn axiom_2_5(&self) -> Report {
        let (n, m) = (self.base.dim(), self.dim);
        let lam = &self.base.weight;
        let mut tasks = Vec::new();
        for (a, b) in self.base.semigroup.pairs() {
            for p in 0..m {
                for i in 0..n {
                    tasks.push((a, b, p, i));
                }
            }
        }
        collect_violations(tasks, |&(a, b, p, i)| {
            let pa_p = self.p_v[a].col(p);
            let pb_i = self.base.p[b].col(i);
            let lhs = self.right.apply(&pa_p, &pb_i);
            let t1 = self.right.apply(&pa_p, &std_basis(n, i));
            let t2 = self.right.apply(&std_basis(m, p), &pb_i);
            let t3 = self.right.on_basis(p, i);
            let inner: Vector = (0..m)
                .map(|q| &(&t1[q] + &t2[q]) + &(lam * &t3[q]))
                .collect();
            let rhs = self.p_v[self.base.semigroup.mul(a, b)].mul_vec(&inner);
            (lhs != rhs).then(|| Violation {
                label: "right-module(2.5)".into(),
                indices: vec![a + 1, b + 1, p + 1, i + 1],
                lhs,
                rhs,
            })
        })
    }

    fn axiom_2_6(&self) -> Report {
        let (n, m) = (self.base.dim(), self.dim);
        let tasks: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..m).flat_map(move |p| (0..n).map(move |j| (i, p, j))))
            .collect();
        collect_violations(tasks, |&(i, p, j)| {
            let lhs = self.right.apply(&self.left.on_basis(i, p), &self.base.theta.col(j));
            let rhs = self.left.apply(&self.base.theta.col(i), &self.right.on_basis(p, j));
            (lhs != rhs).then(|| Violation {
                label: "bimodule(2.6)".into(),
                indices: vec![i + 1, p + 1, j + 1],
                lhs,
                rhs,
            })
        })
    }
}

/// Difference of two coordinate vectors, for callers composing their own
/// identities out of the primitives above.
pub fn residual(lhs: &[Scalar], rhs: &[Scalar]) -> Option<Vector> {
    let d = vec_sub(lhs, rhs);
    if vec_is_zero(&d) {
        None
    } else {
        Some(d)
    }
}
