//! Ready-made small algebras and seeded random generators. These back the
//! test suites and benchmarks; the CLI row fixtures also build on the
//! one-dimensional base algebra here.

use crate::algebra::HomAlgebra;
use crate::extending::ExtendingDatum;
use crate::linalg::{Matrix, Tensor3};
use crate::scalar::{rat, rint, Scalar};
use crate::semigroup::FiniteSemigroup;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn lam() -> Scalar {
    Scalar::lambda()
}

/// One-dimensional algebra: e1*e1 = e1, theta = Id, both operators zero,
/// over the order-two semigroup with symbolic weight.
pub fn base_r() -> HomAlgebra {
    let sg = FiniteSemigroup::order_two();
    let mut mu = Tensor3::zeros(1, 1, 1);
    mu.set(0, 0, 0, s(1));
    HomAlgebra::new(
        sg,
        lam(),
        vec!["e1".into()],
        mu,
        Matrix::identity(1),
        vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)],
    )
    .unwrap()
}

/// One-dimensional algebra: e2*e2 = e2, theta = Id, both operators act by
/// minus the weight.
pub fn base_b() -> HomAlgebra {
    let sg = FiniteSemigroup::order_two();
    let mut mu = Tensor3::zeros(1, 1, 1);
    mu.set(0, 0, 0, s(1));
    let p = Matrix::from_rows(vec![vec![-&lam()]]);
    HomAlgebra::new(
        sg,
        lam(),
        vec!["e2".into()],
        mu,
        Matrix::identity(1),
        vec![p.clone(), p],
    )
    .unwrap()
}

/// The two-dimensional algebra E with
/// e1e1 = e1, e1e2 = -3e1+2e2, e2e1 = 3e1, e2e2 = -9e1+6e2,
/// P(e1) = 0, P(e2) = 3*weight*e1 - weight*e2 for both operators,
/// theta(e1) = e1, theta(e2) = -3e1+2e2.
pub fn algebra_e() -> HomAlgebra {
    let sg = FiniteSemigroup::order_two();
    let mut mu = Tensor3::zeros(2, 2, 2);
    mu.set(0, 0, 0, s(1));
    mu.set(0, 1, 0, s(-3));
    mu.set(0, 1, 1, s(2));
    mu.set(1, 0, 0, s(3));
    mu.set(1, 1, 0, s(-9));
    mu.set(1, 1, 1, s(6));
    let theta = Matrix::from_rows(vec![vec![s(1), s(-3)], vec![s(0), s(2)]]);
    let p = Matrix::from_rows(vec![
        vec![s(0), &s(3) * &lam()],
        vec![s(0), -&lam()],
    ]);
    HomAlgebra::new(
        sg,
        lam(),
        vec!["e1".into(), "e2".into()],
        mu,
        theta,
        vec![p.clone(), p],
    )
    .unwrap()
}

/// Zero multiplication, zero operators, zero twisting map.
pub fn zero_algebra(dim: usize, sg: FiniteSemigroup) -> HomAlgebra {
    let basis = (1..=dim).map(|i| format!("z{i}")).collect();
    let p = vec![Matrix::zeros(dim, dim); sg.len()];
    HomAlgebra::new(
        sg,
        lam(),
        basis,
        Tensor3::zeros(dim, dim, dim),
        Matrix::zeros(dim, dim),
        p,
    )
    .unwrap()
}

/// Pool of algebras that pass `check_algebra`, used as extension bases.
pub fn valid_base_pool() -> Vec<HomAlgebra> {
    let sg = FiniteSemigroup::order_two();
    vec![
        base_r(),
        base_b(),
        algebra_e(),
        zero_algebra(1, sg.clone()),
        zero_algebra(2, sg),
        HomAlgebra::direct_product(&base_r(), &base_b()).unwrap(),
    ]
}

/// Sparse draw from {0, +-1, +-2, weight, -weight}, biased toward zero.
pub fn sparse_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    match rng.random_range(0..12u32) {
        0 => s(1),
        1 => s(-1),
        2 => s(2),
        3 => s(-2),
        4 => lam(),
        5 => -&lam(),
        _ => Scalar::zero(),
    }
}

/// Small nonzero rationals for row instantiation: {+-1, +-2, +-3, +-5,
/// 1/2, 1/3}.
pub fn instantiation_pool() -> Vec<Scalar> {
    vec![
        s(1),
        s(-1),
        s(2),
        s(-2),
        s(3),
        s(-3),
        s(5),
        s(-5),
        Scalar::from_rat(rat(1, 2)),
        Scalar::from_rat(rat(1, 3)),
    ]
}

pub fn draw_from_pool(rng: &mut ChaCha8Rng) -> Scalar {
    let pool = instantiation_pool();
    pool[rng.random_range(0..pool.len())].clone()
}

/// Random extending datum with sparse entries over a valid base from the
/// pool; most draws fail the structure conditions, which is the point for
/// oracle-equivalence sweeps.
pub fn random_datum(rng: &mut ChaCha8Rng) -> ExtendingDatum {
    let pool = valid_base_pool();
    let base = pool[rng.random_range(0..pool.len())].clone();
    let base = if base.dim() > 2 { pool[0].clone() } else { base };
    let m = rng.random_range(1..=2usize);
    random_datum_over(rng, base, m)
}

/// Random sparse datum with the given base and complement dimension.
pub fn random_datum_over(rng: &mut ChaCha8Rng, base: HomAlgebra, m: usize) -> ExtendingDatum {
    let n = base.dim();
    let sg_len = base.semigroup.len();
    let fill3 = |d0: usize, d1: usize, d2: usize, rng: &mut ChaCha8Rng| {
        let mut t = Tensor3::zeros(d0, d1, d2);
        for i in 0..d0 {
            for j in 0..d1 {
                for k in 0..d2 {
                    t.set(i, j, k, sparse_scalar(rng));
                }
            }
        }
        t
    };
    let fill2 = |r: usize, c: usize, rng: &mut ChaCha8Rng| {
        Matrix::from_fn(r, c, |_, _| sparse_scalar(rng))
    };
    let tri_l = fill3(n, m, m, rng);
    let tri_r = fill3(m, n, m, rng);
    let harp_r = fill3(m, n, n, rng);
    let harp_l = fill3(n, m, n, rng);
    let f = fill3(m, m, n, rng);
    let mul_v = fill3(m, m, m, rng);
    let q = (0..sg_len).map(|_| fill2(n, m, rng)).collect();
    let p_v = (0..sg_len).map(|_| fill2(m, m, rng)).collect();
    let eta = fill2(n, m, rng);
    let theta_v = fill2(m, m, rng);
    let vbasis = (1..=m).map(|p| format!("v{p}")).collect();
    ExtendingDatum::new(base, vbasis, tri_l, tri_r, harp_r, harp_l, f, mul_v, q, p_v, eta, theta_v)
        .unwrap()
}

/// Datum with zero cross maps whose complement block carries its own
/// algebra structure; valid exactly when that algebra is valid.
pub fn direct_sum_datum(base: &HomAlgebra, v: &HomAlgebra) -> ExtendingDatum {
    let (n, m) = (base.dim(), v.dim());
    let sg_len = base.semigroup.len();
    ExtendingDatum::new(
        base.clone(),
        v.basis.clone(),
        Tensor3::zeros(n, m, m),
        Tensor3::zeros(m, n, m),
        Tensor3::zeros(m, n, n),
        Tensor3::zeros(n, m, n),
        Tensor3::zeros(m, m, n),
        v.mu.clone(),
        vec![Matrix::zeros(n, m); sg_len],
        v.p.clone(),
        Matrix::zeros(n, m),
        v.theta.clone(),
    )
    .unwrap()
}

/// One-dimensional algebra with chosen structure scalars; the caller is
/// responsible for validity.
pub fn algebra_1dim(name: &str, mu: Scalar, theta: Scalar, p_e: Scalar, p_s: Scalar) -> HomAlgebra {
    let sg = FiniteSemigroup::order_two();
    let mut t = Tensor3::zeros(1, 1, 1);
    t.set(0, 0, 0, mu);
    HomAlgebra::new(
        sg,
        lam(),
        vec![name.into()],
        t,
        Matrix::from_cols(&[vec![theta]]),
        vec![Matrix::from_cols(&[vec![p_e]]), Matrix::from_cols(&[vec![p_s]])],
    )
    .unwrap()
}

/// The five action patterns (left, right, harp_r entry, harp_l entry)
/// pairing the two one-dimensional reference algebras, in published row
/// order.
pub const TABLE3_ACTION_PATTERNS: [(i64, i64, i64, i64); 5] =
    [(0, 0, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0), (0, 1, 0, 1), (1, 1, 0, 0)];

/// The same five patterns in grid-lexicographic order, as enumeration
/// returns them.
pub const TABLE3_PATTERNS_LEX: [(i64, i64, i64, i64); 5] =
    [(0, 0, 0, 0), (0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 1, 0), (1, 1, 0, 0)];

/// Matched pair of the two reference algebras with a scalar action
/// pattern.
pub fn pattern_pair(pattern: (i64, i64, i64, i64)) -> crate::matched::MatchedPair {
    let (lbar, rbar, trbar, tlbar) = pattern;
    let mut tri_l = Tensor3::zeros(1, 1, 1);
    tri_l.set(0, 0, 0, s(lbar));
    let mut tri_r = Tensor3::zeros(1, 1, 1);
    tri_r.set(0, 0, 0, s(rbar));
    let mut harp_r = Tensor3::zeros(1, 1, 1);
    harp_r.set(0, 0, 0, s(trbar));
    let mut harp_l = Tensor3::zeros(1, 1, 1);
    harp_l.set(0, 0, 0, s(tlbar));
    crate::matched::MatchedPair::new(base_r(), base_b(), tri_l, tri_r, harp_r, harp_l).unwrap()
}

/// Valid matched pair drawn from the structured families: zero actions
/// over random valid algebra pairs, the five reference action patterns,
/// and scalar one-dimensional complements.
pub fn valid_matched_pair(rng: &mut ChaCha8Rng) -> crate::matched::MatchedPair {
    match rng.random_range(0..3u32) {
        0 => {
            let pool = valid_base_pool();
            let r = pool[rng.random_range(0..pool.len())].clone();
            let v = pool[rng.random_range(0..pool.len())].clone();
            crate::matched::MatchedPair::zero_actions(r, v).unwrap()
        }
        1 => {
            let idx = rng.random_range(0..TABLE3_ACTION_PATTERNS.len());
            pattern_pair(TABLE3_ACTION_PATTERNS[idx])
        }
        _ => {
            // x.x = k1 x, twist by k2, operators zero: always an algebra.
            let k1 = draw_from_pool(rng);
            let k2 = draw_from_pool(rng);
            let v = algebra_1dim("x", k1, k2, Scalar::zero(), Scalar::zero());
            crate::matched::MatchedPair::zero_actions(base_r(), v).unwrap()
        }
    }
}

/// Valid extending datum drawn from the structured families: direct sums,
/// matched pairs, and classification-row instantiations.
pub fn valid_datum(rng: &mut ChaCha8Rng) -> ExtendingDatum {
    match rng.random_range(0..3u32) {
        0 => {
            let pool = valid_base_pool();
            let r = pool[rng.random_range(0..pool.len())].clone();
            let v = pool[rng.random_range(0..pool.len())].clone();
            direct_sum_datum(&r, &v)
        }
        1 => valid_matched_pair(rng).to_datum(),
        _ => {
            let specs = crate::table2::rows();
            let spec = &specs[rng.random_range(0..specs.len())];
            let params = crate::table2::random_instantiation(spec, rng);
            crate::table2::instantiate_tuple(&base_r(), &spec.tuple, &params)
                .expect("row tuples instantiate")
                .to_datum("x")
        }
    }
}

/// Valid deformation map drawn from the structured families: the zero
/// map on a matched-pair datum, exact one-dimensional solutions on
/// classification rows, and arbitrary maps over the zero algebra.
pub fn valid_deformation_map(rng: &mut ChaCha8Rng) -> crate::deform::DeformationMap {
    use crate::deform::{solve_deformation_1dim, DeformationMap, SolutionSet};
    match rng.random_range(0..3u32) {
        0 => {
            let datum = valid_matched_pair(rng).to_datum();
            let zeros = Matrix::zeros(datum.base.dim(), datum.vdim());
            DeformationMap::new(datum, zeros).unwrap()
        }
        1 => {
            // Any map over the zero algebra with the zero datum works.
            let m = rng.random_range(1..=2usize);
            let r = zero_algebra(1, FiniteSemigroup::order_two());
            let v = zero_algebra(m, FiniteSemigroup::order_two());
            let datum = direct_sum_datum(&r, &v);
            let d = Matrix::from_fn(1, m, |_, _| sparse_scalar(rng));
            DeformationMap::new(datum, d).unwrap()
        }
        _ => loop {
            let specs = crate::table2::rows();
            let spec = &specs[rng.random_range(0..specs.len())];
            let params = crate::table2::random_instantiation(spec, rng);
            let datum = crate::table2::instantiate_tuple(&base_r(), &spec.tuple, &params)
                .expect("row tuples instantiate")
                .to_datum("x");
            let solve = solve_deformation_1dim(&datum).expect("rows are valid one-dim datums");
            let value = match solve.set {
                SolutionSet::All => draw_from_pool(rng),
                SolutionSet::Finite(ref roots) if !roots.is_empty() => {
                    roots[rng.random_range(0..roots.len())].clone()
                }
                _ => continue,
            };
            return DeformationMap::new(datum, Matrix::from_cols(&[vec![value]])).unwrap();
        },
    }
}

/// Deterministic rng for a named test site.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Convenience: small integers as scalars.
pub fn int(n: i64) -> Scalar {
    s(n)
}

/// Convenience: the symbolic weight.
pub fn lambda() -> Scalar {
    lam()
}

/// Convenience: rational scalar.
pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_rat(rat(n, d))
}

/// Convenience: rational number.
pub fn qr(n: i64, d: i64) -> crate::scalar::Rat {
    rat(n, d)
}

/// Convenience: integer rational.
pub fn ir(n: i64) -> crate::scalar::Rat {
    rint(n)
}
