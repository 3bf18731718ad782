//! Flag datums: the scalar data describing one-dimensional extensions of
//! a base algebra, the twenty-one defining conditions, the bijection with
//! one-dimensional extending datums, and finite-grid enumeration.

use crate::extending::ExtendingDatum;
use crate::linalg::{vec_add, vec_scale, Matrix, Tensor3, Vector};
use crate::report::{collect_violations, map_ordered, Report, Violation};
use crate::scalar::Scalar;
use crate::HomAlgebra;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlagError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("base algebra fails its axioms")]
    InvalidBase,
    #[error("datum has complement dimension {0}, expected 1")]
    VdimNotOne(usize),
    #[error("grid enumeration needs a one-dimensional base")]
    GridBaseDim,
    #[error("grid has {0} points, over the enumeration cap {1}")]
    GridTooLarge(usize, usize),
    #[error("grid field {0} has no values")]
    GridEmptyField(&'static str),
}

/// The 10-tuple specializing an extending datum to a one-dimensional
/// complement: two functionals, two operators on the base, three base
/// elements (one per operator index for `b`), and three constants.
#[derive(Clone, PartialEq, Debug)]
pub struct FlagDatum {
    pub base: HomAlgebra,
    /// Functional: coefficient row for the left action.
    pub l: Vector,
    /// Functional: coefficient row for the right action.
    pub r: Vector,
    pub t_r: Matrix,
    pub t_l: Matrix,
    pub a1: Vector,
    pub k1: Scalar,
    /// One base element per semigroup element.
    pub b: Vec<Vector>,
    /// One constant per semigroup element.
    pub kfam: Vec<Scalar>,
    pub a2: Vector,
    pub k2: Scalar,
}

impl FlagDatum {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        base: HomAlgebra,
        l: Vector,
        r: Vector,
        t_r: Matrix,
        t_l: Matrix,
        a1: Vector,
        k1: Scalar,
        b: Vec<Vector>,
        kfam: Vec<Scalar>,
        a2: Vector,
        k2: Scalar,
    ) -> Result<FlagDatum, FlagError> {
        let n = base.dim();
        let sg = base.semigroup.len();
        let want = |cond: bool, what: &str| {
            if cond {
                Ok(())
            } else {
                Err(FlagError::Shape(what.to_string()))
            }
        };
        want(l.len() == n && r.len() == n, "functionals must have base length")?;
        want(t_r.rows() == n && t_r.cols() == n, "t_r must be n x n")?;
        want(t_l.rows() == n && t_l.cols() == n, "t_l must be n x n")?;
        want(a1.len() == n && a2.len() == n, "a1, a2 must have base length")?;
        want(b.len() == sg && b.iter().all(|v| v.len() == n), "b must be total on S")?;
        want(kfam.len() == sg, "k family must be total on S")?;
        Ok(FlagDatum { base, l, r, t_r, t_l, a1, k1, b, kfam, a2, k2 })
    }

    /// All-zero flag datum over a base.
    pub fn zero(base: HomAlgebra) -> FlagDatum {
        let n = base.dim();
        let sg = base.semigroup.len();
        FlagDatum {
            l: vec![Scalar::zero(); n],
            r: vec![Scalar::zero(); n],
            t_r: Matrix::zeros(n, n),
            t_l: Matrix::zeros(n, n),
            a1: vec![Scalar::zero(); n],
            k1: Scalar::zero(),
            b: vec![vec![Scalar::zero(); n]; sg],
            kfam: vec![Scalar::zero(); sg],
            a2: vec![Scalar::zero(); n],
            k2: Scalar::zero(),
            base,
        }
    }

    fn dot(row: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in row.iter().zip(v) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    fn lv(&self, v: &[Scalar]) -> Scalar {
        Self::dot(&self.l, v)
    }

    fn rv(&self, v: &[Scalar]) -> Scalar {
        Self::dot(&self.r, v)
    }

    /// Evaluate the twenty-one conditions on all basis tuples and operator
    /// index pairs. The base must pass its own axioms.
    pub fn check_flag(&self) -> Result<Report, FlagError> {
        if !self.base.check_algebra().is_empty() {
            return Err(FlagError::InvalidBase);
        }
        Ok(self.flag_conditions())
    }

    /// The raw condition evaluation without the base precondition.
    pub fn flag_conditions(&self) -> Report {
        let n = self.base.dim();
        let lam = &self.base.weight;
        let base = &self.base;
        let th = |i: usize| base.theta.col(i);
        let mut report = Report::new();

        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        report.merge(collect_violations(pairs.clone(), |&(i, j)| {
            let ab = base.mu.on_basis(i, j);
            let lhs = &self.lv(&ab) * &self.k2;
            let rhs = &self.lv(&th(i)) * &self.l[j];
            scalar_violation("F1", vec![i + 1, j + 1], lhs, rhs)
        }));
        report.merge(collect_violations(pairs.clone(), |&(i, j)| {
            let lhs = &self.r[i] * &self.rv(&th(j));
            let rhs = &self.rv(&base.mu.on_basis(i, j)) * &self.k2;
            scalar_violation("F2", vec![i + 1, j + 1], lhs, rhs)
        }));
        report.merge(collect_violations(pairs.clone(), |&(i, j)| {
            let lhs = &self.l[i] * &self.rv(&th(j));
            let rhs = &self.lv(&th(i)) * &self.r[j];
            scalar_violation("F3", vec![i + 1, j + 1], lhs, rhs)
        }));

        let op_single: Vec<(usize, usize, usize)> = base
            .semigroup
            .pairs()
            .into_iter()
            .flat_map(|(a, b)| (0..n).map(move |i| (a, b, i)))
            .collect();
        report.merge(collect_violations(op_single.clone(), |&(a, b, i)| {
            let lpa = self.lv(&base.p[a].col(i));
            let lhs = &lpa * &self.kfam[b];
            let inner = &(&lpa + &(&self.l[i] * &self.kfam[b])) + &(lam * &self.l[i]);
            let rhs = &self.kfam[base.semigroup.mul(a, b)] * &inner;
            scalar_violation("F4", vec![a + 1, b + 1, i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(op_single.clone(), |&(a, b, i)| {
            let rpb = self.rv(&base.p[b].col(i));
            let lhs = &self.kfam[a] * &rpb;
            let inner = &(&(&self.kfam[a] * &self.r[i]) + &rpb) + &(lam * &self.r[i]);
            let rhs = &self.kfam[base.semigroup.mul(a, b)] * &inner;
            scalar_violation("F5", vec![a + 1, b + 1, i + 1], lhs, rhs)
        }));

        report.merge(collect_violations(pairs.clone(), |&(i, j)| {
            let ab = base.mu.on_basis(i, j);
            let lhs = vec_add(
                &base.mul_vec(&ab, &self.a2),
                &vec_scale(&self.k2, &self.t_l.mul_vec(&ab)),
            );
            let rhs = vec_add(
                &base.mul_vec(&th(i), &self.t_l.col(j)),
                &vec_scale(&self.l[j], &self.t_l.mul_vec(&th(i))),
            );
            vec_violation("F6", vec![i + 1, j + 1], lhs, rhs)
        }));
        report.merge(collect_violations(pairs.clone(), |&(i, j)| {
            let ab = base.mu.on_basis(i, j);
            let lhs = vec_add(
                &base.mul_vec(&self.t_r.col(i), &th(j)),
                &vec_scale(&self.r[i], &self.t_r.mul_vec(&th(j))),
            );
            let rhs = vec_add(
                &base.mul_vec(&self.a2, &ab),
                &vec_scale(&self.k2, &self.t_r.mul_vec(&ab)),
            );
            vec_violation("F7", vec![i + 1, j + 1], lhs, rhs)
        }));
        report.merge(collect_violations(pairs, |&(i, j)| {
            let lhs = vec_add(
                &base.mul_vec(&self.t_l.col(i), &th(j)),
                &vec_scale(&self.l[i], &self.t_r.mul_vec(&th(j))),
            );
            let rhs = vec_add(
                &base.mul_vec(&th(i), &self.t_r.col(j)),
                &vec_scale(&self.r[j], &self.t_l.mul_vec(&th(i))),
            );
            vec_violation("F8", vec![i + 1, j + 1], lhs, rhs)
        }));

        let singles: Vec<usize> = (0..n).collect();
        report.merge(collect_violations(singles.clone(), |&i| {
            let lhs = vec_add(
                &base.mul_vec(&self.a1, &th(i)),
                &vec_scale(&self.k1, &self.t_r.mul_vec(&th(i))),
            );
            let rhs = sum4(
                base.mul_vec(&self.a2, &self.t_r.col(i)),
                vec_scale(&self.r[i], &self.t_l.mul_vec(&self.a2)),
                vec_scale(&self.k2, &self.t_r.mul_vec(&self.t_r.col(i))),
                vec_scale(&(&self.k2 * &self.r[i]), &self.a1),
            );
            vec_violation("F9", vec![i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(singles.clone(), |&i| {
            let lhs = &self.k1 * &self.rv(&th(i));
            let rhs = &(&(&self.lv(&self.a2) * &self.r[i])
                + &(&self.k2 * &self.rv(&self.t_r.col(i))))
                + &(&(&self.k1 * &self.k2) * &self.r[i]);
            scalar_violation("F10", vec![i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(singles.clone(), |&i| {
            let lhs = sum4(
                base.mul_vec(&self.t_l.col(i), &self.a2),
                vec_scale(&self.k2, &self.t_l.mul_vec(&self.t_l.col(i))),
                vec_scale(&self.l[i], &self.t_r.mul_vec(&self.a2)),
                vec_scale(&(&self.l[i] * &self.k2), &self.a1),
            );
            let rhs = vec_add(
                &base.mul_vec(&th(i), &self.a1),
                &vec_scale(&self.k1, &self.t_l.mul_vec(&th(i))),
            );
            vec_violation("F11", vec![i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(singles.clone(), |&i| {
            let lhs = &(&(&self.lv(&self.t_l.col(i)) * &self.k2)
                + &(&self.l[i] * &self.rv(&self.a2)))
                + &(&(&self.l[i] * &self.k1) * &self.k2);
            let rhs = &self.lv(&th(i)) * &self.k1;
            scalar_violation("F12", vec![i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(singles.clone(), |&i| {
            let lhs = sum4(
                base.mul_vec(&self.t_r.col(i), &self.a2),
                vec_scale(&self.k2, &self.t_l.mul_vec(&self.t_r.col(i))),
                vec_scale(&self.r[i], &self.t_r.mul_vec(&self.a2)),
                vec_scale(&(&self.r[i] * &self.k2), &self.a1),
            );
            let rhs = sum4(
                base.mul_vec(&self.a2, &self.t_l.col(i)),
                vec_scale(&self.l[i], &self.t_l.mul_vec(&self.a2)),
                vec_scale(&self.k2, &self.t_r.mul_vec(&self.t_l.col(i))),
                vec_scale(&(&self.k2 * &self.l[i]), &self.a1),
            );
            vec_violation("F13", vec![i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(singles, |&i| {
            let lhs = &(&(&self.lv(&self.t_r.col(i)) * &self.k2)
                + &(&self.r[i] * &self.rv(&self.a2)))
                + &(&(&self.r[i] * &self.k1) * &self.k2);
            let rhs = &(&(&self.lv(&self.a2) * &self.l[i])
                + &(&self.k2 * &self.rv(&self.t_l.col(i))))
                + &(&(&self.k2 * &self.k1) * &self.l[i]);
            scalar_violation("F14", vec![i + 1], lhs, rhs)
        }));

        {
            let lhs = sum3(
                base.mul_vec(&self.a1, &self.a2),
                vec_scale(&self.k2, &self.t_l.mul_vec(&self.a1)),
                vec_scale(&self.k1, &self.t_r.mul_vec(&self.a2)),
            );
            let rhs = sum3(
                base.mul_vec(&self.a2, &self.a1),
                vec_scale(&self.k1, &self.t_l.mul_vec(&self.a2)),
                vec_scale(&self.k2, &self.t_r.mul_vec(&self.a1)),
            );
            if lhs != rhs {
                report.push(Violation { label: "F15".into(), indices: vec![], lhs, rhs });
            }
        }
        {
            let lhs = &(&self.lv(&self.a1) * &self.k2) + &(&self.k1 * &self.rv(&self.a2));
            let rhs = &(&self.lv(&self.a2) * &self.k1) + &(&self.k2 * &self.rv(&self.a1));
            if lhs != rhs {
                report.push(Violation {
                    label: "F16".into(),
                    indices: vec![],
                    lhs: vec![lhs],
                    rhs: vec![rhs],
                });
            }
        }

        report.merge(collect_violations(op_single.clone(), |&(a, b, i)| {
            let pa_i = base.p[a].col(i);
            let lhs = vec_add(
                &base.mul_vec(&pa_i, &self.b[b]),
                &vec_scale(&self.kfam[b], &self.t_l.mul_vec(&pa_i)),
            );
            let e_i = crate::linalg::std_basis(n, i);
            let inner = sum3(
                self.t_l.mul_vec(&pa_i),
                base.mul_vec(&e_i, &self.b[b]),
                vec_scale(&(&self.kfam[b] + lam), &self.t_l.col(i)),
            );
            let coeff = &(&self.lv(&pa_i) + &(&self.l[i] * &self.kfam[b])) + &(lam * &self.l[i]);
            let ab = base.semigroup.mul(a, b);
            let rhs = vec_add(&base.p_vec(ab, &inner), &vec_scale(&coeff, &self.b[ab]));
            vec_violation("F17", vec![a + 1, b + 1, i + 1], lhs, rhs)
        }));
        report.merge(collect_violations(op_single, |&(a, b, i)| {
            let pb_i = base.p[b].col(i);
            let lhs = vec_add(
                &base.mul_vec(&self.b[a], &pb_i),
                &vec_scale(&self.kfam[a], &self.t_r.mul_vec(&pb_i)),
            );
            let e_i = crate::linalg::std_basis(n, i);
            let inner = sum3(
                base.mul_vec(&self.b[a], &e_i),
                vec_scale(&(&self.kfam[a] + lam), &self.t_r.col(i)),
                self.t_r.mul_vec(&pb_i),
            );
            let coeff = &(&(&self.kfam[a] * &self.r[i]) + &self.rv(&pb_i)) + &(lam * &self.r[i]);
            let ab = base.semigroup.mul(a, b);
            let rhs = vec_add(&base.p_vec(ab, &inner), &vec_scale(&coeff, &self.b[ab]));
            vec_violation("F18", vec![a + 1, b + 1, i + 1], lhs, rhs)
        }));

        let op_pairs = base.semigroup.pairs();
        report.merge(collect_violations(op_pairs.clone(), |&(a, b)| {
            let lhs = sum4(
                base.mul_vec(&self.b[a], &self.b[b]),
                vec_scale(&self.kfam[b], &self.t_l.mul_vec(&self.b[a])),
                vec_scale(&self.kfam[a], &self.t_r.mul_vec(&self.b[b])),
                vec_scale(&(&self.kfam[a] * &self.kfam[b]), &self.a1),
            );
            let inner = sum3(
                self.t_l.mul_vec(&self.b[a]),
                self.t_r.mul_vec(&self.b[b]),
                vec_scale(&(&(&self.kfam[a] + &self.kfam[b]) + lam), &self.a1),
            );
            let coeff = &(&self.lv(&self.b[a]) + &self.rv(&self.b[b]))
                + &(&self.k1 * &(&(&self.kfam[a] + &self.kfam[b]) + lam));
            let ab = base.semigroup.mul(a, b);
            let rhs = vec_add(&base.p_vec(ab, &inner), &vec_scale(&coeff, &self.b[ab]));
            vec_violation("F19", vec![a + 1, b + 1], lhs, rhs)
        }));
        report.merge(collect_violations(op_pairs, |&(a, b)| {
            let lhs = &(&(&self.lv(&self.b[a]) * &self.kfam[b])
                + &(&self.kfam[a] * &self.rv(&self.b[b])))
                + &(&(&self.k1 * &self.kfam[a]) * &self.kfam[b]);
            let inner = &(&self.lv(&self.b[a]) + &self.rv(&self.b[b]))
                + &(&self.k1 * &(&(&self.kfam[a] + &self.kfam[b]) + lam));
            let rhs = &self.kfam[base.semigroup.mul(a, b)] * &inner;
            scalar_violation("F20", vec![a + 1, b + 1], lhs, rhs)
        }));

        let ops: Vec<usize> = (0..base.semigroup.len()).collect();
        report.merge(collect_violations(ops, |&a| {
            let lhs = vec_add(
                &base.theta_vec(&self.b[a]),
                &vec_scale(&self.kfam[a], &self.a2),
            );
            let rhs = vec_add(
                &base.p_vec(a, &self.a2),
                &vec_scale(&self.k2, &self.b[a]),
            );
            vec_violation("F21", vec![a + 1], lhs, rhs)
        }));
        report
    }

    /// The one-dimensional extending datum carried by this flag datum.
    pub fn to_datum(&self, vname: &str) -> ExtendingDatum {
        let n = self.base.dim();
        let sg = self.base.semigroup.len();
        let mut tri_l = Tensor3::zeros(n, 1, 1);
        let mut tri_r = Tensor3::zeros(1, n, 1);
        let mut harp_r = Tensor3::zeros(1, n, n);
        let mut harp_l = Tensor3::zeros(n, 1, n);
        let mut f = Tensor3::zeros(1, 1, n);
        let mut mul_v = Tensor3::zeros(1, 1, 1);
        for i in 0..n {
            tri_l.set(i, 0, 0, self.l[i].clone());
            tri_r.set(0, i, 0, self.r[i].clone());
            for k in 0..n {
                harp_r.set(0, i, k, self.t_r.at(k, i).clone());
                harp_l.set(i, 0, k, self.t_l.at(k, i).clone());
            }
        }
        for k in 0..n {
            f.set(0, 0, k, self.a1[k].clone());
        }
        mul_v.set(0, 0, 0, self.k1.clone());
        let q = (0..sg)
            .map(|w| Matrix::from_fn(n, 1, |i, _| self.b[w][i].clone()))
            .collect();
        let p_v = (0..sg)
            .map(|w| Matrix::from_fn(1, 1, |_, _| self.kfam[w].clone()))
            .collect();
        let eta = Matrix::from_fn(n, 1, |i, _| self.a2[i].clone());
        let theta_v = Matrix::from_fn(1, 1, |_, _| self.k2.clone());
        ExtendingDatum::new(
            self.base.clone(),
            vec![vname.to_string()],
            tri_l,
            tri_r,
            harp_r,
            harp_l,
            f,
            mul_v,
            q,
            p_v,
            eta,
            theta_v,
        )
        .expect("flag datum shapes")
    }

    /// Read a flag datum off a one-dimensional extending datum.
    pub fn from_datum(d: &ExtendingDatum) -> Result<FlagDatum, FlagError> {
        if d.vdim() != 1 {
            return Err(FlagError::VdimNotOne(d.vdim()));
        }
        let n = d.base.dim();
        let sg = d.base.semigroup.len();
        let l: Vector = (0..n).map(|i| d.tri_l.at(i, 0, 0).clone()).collect();
        let r: Vector = (0..n).map(|i| d.tri_r.at(0, i, 0).clone()).collect();
        let t_r = Matrix::from_fn(n, n, |k, i| d.harp_r.at(0, i, k).clone());
        let t_l = Matrix::from_fn(n, n, |k, i| d.harp_l.at(i, 0, k).clone());
        let a1: Vector = (0..n).map(|k| d.f.at(0, 0, k).clone()).collect();
        let k1 = d.mul_v.at(0, 0, 0).clone();
        let b: Vec<Vector> = (0..sg).map(|w| d.q[w].col(0)).collect();
        let kfam: Vec<Scalar> = (0..sg).map(|w| d.p_v[w].at(0, 0).clone()).collect();
        let a2: Vector = d.eta.col(0);
        let k2 = d.theta_v.at(0, 0).clone();
        FlagDatum::new(d.base.clone(), l, r, t_r, t_l, a1, k1, b, kfam, a2, k2)
    }
}

fn scalar_violation(label: &str, indices: Vec<usize>, lhs: Scalar, rhs: Scalar) -> Option<Violation> {
    (lhs != rhs).then(|| Violation {
        label: label.to_string(),
        indices,
        lhs: vec![lhs],
        rhs: vec![rhs],
    })
}

fn vec_violation(label: &str, indices: Vec<usize>, lhs: Vector, rhs: Vector) -> Option<Violation> {
    (lhs != rhs).then(|| Violation { label: label.to_string(), indices, lhs, rhs })
}

fn sum3(a: Vector, b: Vector, c: Vector) -> Vector {
    vec_add(&vec_add(&a, &b), &c)
}

fn sum4(a: Vector, b: Vector, c: Vector, d: Vector) -> Vector {
    vec_add(&vec_add(&a, &b), &vec_add(&c, &d))
}

/// How each flag condition specializes a structure condition when the
/// complement is one-dimensional. Used to cross-reference violation labels
/// between the two checkers.
pub const FLAG_TO_STRUCTURE_LABEL: [(&str, &str); 21] = [
    ("F1", "R1(2.1)"),
    ("F2", "R1(2.4)"),
    ("F3", "R1(2.6)"),
    ("F4", "R1(2.2)"),
    ("F5", "R1(2.5)"),
    ("F6", "R2"),
    ("F7", "R3"),
    ("F8", "R4"),
    ("F9", "R5"),
    ("F10", "R6"),
    ("F11", "R7"),
    ("F12", "R8"),
    ("F13", "R9"),
    ("F14", "R10"),
    ("F15", "R11"),
    ("F16", "R12"),
    ("F17", "R13"),
    ("F18", "R14"),
    ("F19", "R15"),
    ("F20", "R16"),
    ("F21", "R17"),
];

/// Per-field value sets for enumerating flag datums over a one-
/// dimensional base. `b` and `kfam` hold one value list per semigroup
/// element.
#[derive(Clone, Debug)]
pub struct FlagGrid {
    pub l: Vec<Scalar>,
    pub r: Vec<Scalar>,
    pub t_r: Vec<Scalar>,
    pub t_l: Vec<Scalar>,
    pub a1: Vec<Scalar>,
    pub k1: Vec<Scalar>,
    pub b: Vec<Vec<Scalar>>,
    pub kfam: Vec<Vec<Scalar>>,
    pub a2: Vec<Scalar>,
    pub k2: Vec<Scalar>,
}

pub const GRID_CAP: usize = 1_000_000;

/// All grid points whose flag datum passes the twenty-one conditions, in
/// lexicographic grid order (fields ordered l, r, t_r, t_l, a1, k1, b per
/// element, kfam per element, a2, k2). The order is independent of any
/// internal parallelism.
pub fn enumerate_flags(base: &HomAlgebra, grid: &FlagGrid) -> Result<Vec<FlagDatum>, FlagError> {
    if base.dim() != 1 {
        return Err(FlagError::GridBaseDim);
    }
    if !base.check_algebra().is_empty() {
        return Err(FlagError::InvalidBase);
    }
    let sg = base.semigroup.len();
    if grid.b.len() != sg || grid.kfam.len() != sg {
        return Err(FlagError::Shape("grid b/k families must be total on S".into()));
    }
    let mut fields: Vec<(&'static str, &Vec<Scalar>)> = vec![
        ("l", &grid.l),
        ("r", &grid.r),
        ("t_r", &grid.t_r),
        ("t_l", &grid.t_l),
        ("a1", &grid.a1),
        ("k1", &grid.k1),
    ];
    for bw in &grid.b {
        fields.push(("b", bw));
    }
    for kw in &grid.kfam {
        fields.push(("k", kw));
    }
    fields.push(("a2", &grid.a2));
    fields.push(("k2", &grid.k2));
    let mut total: usize = 1;
    for (name, vals) in &fields {
        if vals.is_empty() {
            return Err(FlagError::GridEmptyField(name));
        }
        total = total
            .checked_mul(vals.len())
            .filter(|&t| t <= GRID_CAP)
            .ok_or(FlagError::GridTooLarge(usize::MAX, GRID_CAP))?;
    }
    let indices: Vec<usize> = (0..total).collect();
    let candidates = map_ordered(indices, |&flat| {
        let mut rem = flat;
        let mut picks = Vec::with_capacity(fields.len());
        for (_, vals) in fields.iter().rev() {
            picks.push(vals[rem % vals.len()].clone());
            rem /= vals.len();
        }
        picks.reverse();
        let mut it = picks.into_iter();
        let l = vec![it.next().unwrap()];
        let r = vec![it.next().unwrap()];
        let t_r = Matrix::from_cols(&[vec![it.next().unwrap()]]);
        let t_l = Matrix::from_cols(&[vec![it.next().unwrap()]]);
        let a1 = vec![it.next().unwrap()];
        let k1 = it.next().unwrap();
        let b: Vec<Vector> = (0..sg).map(|_| vec![it.next().unwrap()]).collect();
        let kfam: Vec<Scalar> = (0..sg).map(|_| it.next().unwrap()).collect();
        let a2 = vec![it.next().unwrap()];
        let k2 = it.next().unwrap();
        let fd = FlagDatum::new(base.clone(), l, r, t_r, t_l, a1, k1, b, kfam, a2, k2)
            .expect("grid shapes");
        let pass = fd.flag_conditions().is_empty();
        (fd, pass)
    });
    Ok(candidates
        .into_iter()
        .filter_map(|(fd, pass)| pass.then_some(fd))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn random_flag(rng: &mut rand_chacha::ChaCha8Rng, base: &HomAlgebra) -> FlagDatum {
        let n = base.dim();
        let sg = base.semigroup.len();
        let mut draw = || sample::sparse_scalar(rng);
        FlagDatum::new(
            base.clone(),
            (0..n).map(|_| draw()).collect(),
            (0..n).map(|_| draw()).collect(),
            Matrix::from_fn(n, n, |_, _| draw()),
            Matrix::from_fn(n, n, |_, _| draw()),
            (0..n).map(|_| draw()).collect(),
            draw(),
            (0..sg).map(|_| (0..n).map(|_| draw()).collect()).collect(),
            (0..sg).map(|_| draw()).collect(),
            (0..n).map(|_| draw()).collect(),
            draw(),
        )
        .unwrap()
    }

    #[test]
    fn zero_flag_datum_passes() {
        let fd = FlagDatum::zero(sample::base_r());
        assert!(fd.check_flag().unwrap().is_empty());
    }

    #[test]
    fn round_trips_are_exact() {
        let mut rng = sample::rng(0xf1a6);
        let base = sample::base_r();
        for _ in 0..200 {
            let fd = random_flag(&mut rng, &base);
            let d = fd.to_datum("x");
            assert_eq!(FlagDatum::from_datum(&d).unwrap(), fd);
            assert_eq!(FlagDatum::from_datum(&d).unwrap().to_datum("x"), d);
        }
    }

    #[test]
    fn validity_transports_through_the_bijection() {
        // Most random draws fail; the two checkers must agree pointwise,
        // with labels matching the published correspondence.
        let mut rng = sample::rng(0xb13c);
        let base = sample::base_r();
        let mut checked_nonempty = 0;
        for _ in 0..200 {
            let fd = random_flag(&mut rng, &base);
            let flag_report = fd.check_flag().unwrap();
            let structure_report = fd.to_datum("x").check_extending_structure().unwrap();
            assert_eq!(flag_report.is_empty(), structure_report.is_empty());
            if !flag_report.is_empty() {
                checked_nonempty += 1;
            }
            for (f_label, r_label) in FLAG_TO_STRUCTURE_LABEL {
                assert_eq!(
                    flag_report.has_label(f_label),
                    structure_report.has_label(r_label),
                    "label mismatch {f_label} vs {r_label}"
                );
            }
        }
        assert!(checked_nonempty > 100, "sample should mostly fail");
    }

    #[test]
    fn grid_enumeration_is_capped_and_ordered() {
        let base = sample::base_r();
        let zero = vec![Scalar::zero()];
        let grid = FlagGrid {
            l: zero.clone(),
            r: zero.clone(),
            t_r: zero.clone(),
            t_l: zero.clone(),
            a1: zero.clone(),
            k1: zero.clone(),
            b: vec![zero.clone(), zero.clone()],
            kfam: vec![zero.clone(), zero.clone()],
            a2: zero.clone(),
            k2: vec![Scalar::zero(), Scalar::one()],
        };
        let hits = enumerate_flags(&base, &grid).unwrap();
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].k2, Scalar::zero());
        assert_eq!(hits[1].k2, Scalar::one());

        let mut big = grid.clone();
        big.l = vec![Scalar::zero(); 101];
        big.r = vec![Scalar::zero(); 101];
        big.t_r = vec![Scalar::zero(); 101];
        assert!(matches!(
            enumerate_flags(&base, &big),
            Err(FlagError::GridTooLarge(_, _))
        ));
    }
}
