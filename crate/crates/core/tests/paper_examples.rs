//! The worked examples: the three reference algebras, their subalgebra
//! and morphism behavior, and the module structures they carry.

use rbhom_core::algebra::{check_morphism, AlgebraError, Bimodule};
use rbhom_core::linalg::{std_basis, Matrix, Tensor3};
use rbhom_core::sample;
use rbhom_core::scalar::Scalar;
use rbhom_core::semigroup::FiniteSemigroup;
use rbhom_core::HomAlgebra;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn reference_algebras_pass_all_axioms() {
    for alg in [sample::base_r(), sample::base_b(), sample::algebra_e()] {
        let report = alg.check_algebra();
        assert!(report.is_empty(), "unexpected violations:\n{report}");
    }
}

#[test]
fn zero_algebra_passes() {
    let z = sample::zero_algebra(2, FiniteSemigroup::order_two());
    assert!(z.check_algebra().is_empty());
}

#[test]
fn hom_assoc_fails_on_a_twisted_square() {
    // dim 2 with e1e1 = e2, e1e2 = e1, theta = Id: the (1,1,1) triple
    // gives e1(e1e1) = e1e2 = e1 but (e1e1)e1 = e2e1 = 0.
    let sg = FiniteSemigroup::order_two();
    let mut mu = Tensor3::zeros(2, 2, 2);
    mu.set(0, 0, 1, s(1));
    mu.set(0, 1, 0, s(1));
    let alg = HomAlgebra::new(
        sg,
        Scalar::lambda(),
        vec!["e1".into(), "e2".into()],
        mu,
        Matrix::identity(2),
        vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)],
    )
    .unwrap();
    let report = alg.check_hom_assoc();
    assert!(report.has_label("hom-assoc"));
    assert!(report.violations().iter().any(|v| v.indices == vec![1, 1, 1]));
}

#[test]
fn rb_family_accepts_zero_operators_with_any_product() {
    let mut alg = sample::algebra_e();
    alg.p = vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)];
    assert!(alg.check_rb_family().is_empty());
}

#[test]
fn theta_p_commutation_detects_a_swap() {
    let sg = FiniteSemigroup::order_two();
    let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
    let diag = Matrix::from_rows(vec![vec![s(1), s(0)], vec![s(0), s(0)]]);
    let alg = HomAlgebra::new(
        sg,
        Scalar::lambda(),
        vec!["e1".into(), "e2".into()],
        Tensor3::zeros(2, 2, 2),
        swap,
        vec![diag, Matrix::zeros(2, 2)],
    )
    .unwrap();
    let report = alg.check_theta_p_commute();
    assert!(report.has_label("theta-P"));
    assert!(report.violations().iter().all(|v| v.indices[0] == 1));
}

#[test]
fn perturbing_any_structure_constant_of_e_is_caught() {
    let e = sample::algebra_e();
    // Bump one multiplication entry.
    let mut bad = e.clone();
    let old = bad.mu.at(1, 1, 0).clone();
    bad.mu.set(1, 1, 0, &old + &s(1));
    assert!(!bad.check_algebra().is_empty());
    // Bump one operator entry.
    let mut bad = e.clone();
    let old = bad.p[0].at(0, 1).clone();
    bad.p[0].set(0, 1, &old + &s(1));
    assert!(!bad.check_algebra().is_empty());
    // Bump one twist entry.
    let mut bad = e;
    let old = bad.theta.at(1, 1).clone();
    bad.theta.set(1, 1, &old + &s(1));
    assert!(!bad.check_algebra().is_empty());
}

#[test]
fn random_dense_structure_constants_violate_something() {
    let mut rng = sample::rng(0xdeadbeef);
    let sg = FiniteSemigroup::order_two();
    let mut mu = Tensor3::zeros(2, 2, 2);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                mu.set(i, j, k, sample::draw_from_pool(&mut rng));
            }
        }
    }
    let alg = HomAlgebra::new(
        sg,
        Scalar::lambda(),
        vec!["e1".into(), "e2".into()],
        mu,
        Matrix::identity(2),
        vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)],
    )
    .unwrap();
    assert!(!alg.check_algebra().is_empty());
}

#[test]
fn subalgebra_spans_of_e() {
    let e = sample::algebra_e();
    // The first coordinate line closes.
    assert!(e.check_subalgebra(&[std_basis(2, 0)]).unwrap().is_empty());
    // The full space closes trivially.
    assert!(e
        .check_subalgebra(&[std_basis(2, 0), std_basis(2, 1)])
        .unwrap()
        .is_empty());
    // The second coordinate line does not: its square leaves the line.
    let report = e.check_subalgebra(&[std_basis(2, 1)]).unwrap();
    assert!(report.has_label("sub-mul"));
    // Dependent spans are an error, not a violation.
    assert!(matches!(
        e.check_subalgebra(&[std_basis(2, 0), std_basis(2, 0)]),
        Err(AlgebraError::RankDeficient)
    ));
}

#[test]
fn identity_is_a_morphism_and_doubling_is_not() {
    let r = sample::base_r();
    assert!(check_morphism(&Matrix::identity(1), &r, &r).unwrap().is_empty());
    let double = Matrix::from_rows(vec![vec![s(2)]]);
    let report = check_morphism(&double, &r, &r).unwrap();
    assert!(report.has_label("morph-mul"));
}

#[test]
fn morphism_shape_and_weight_mismatches_error() {
    let r = sample::base_r();
    let e = sample::algebra_e();
    assert!(matches!(
        check_morphism(&Matrix::identity(2), &r, &e),
        Err(AlgebraError::Shape(_))
    ));
    let mut off_weight = r.clone();
    off_weight.weight = Scalar::one();
    assert!(matches!(
        check_morphism(&Matrix::identity(1), &r, &off_weight),
        Err(AlgebraError::WeightMismatch)
    ));
}

#[test]
fn trivial_and_regular_bimodules_pass() {
    let r = sample::base_r();
    let trivial = Bimodule::new(
        r.clone(),
        2,
        Matrix::identity(2),
        vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)],
        Tensor3::zeros(1, 2, 2),
        Tensor3::zeros(2, 1, 2),
    )
    .unwrap();
    assert!(trivial.check_bimodule().is_empty());

    for alg in [sample::base_r(), sample::base_b(), sample::algebra_e()] {
        let regular = Bimodule::regular(&alg);
        let report = regular.check_bimodule();
        assert!(report.is_empty(), "regular module violations:\n{report}");
    }
}

#[test]
fn left_module_failure_carries_the_equation_label() {
    let r = sample::base_r();
    // Left action by 2 with theta_V = Id: (2.1) reads 2 = 4 on the only
    // triple.
    let mut left = Tensor3::zeros(1, 1, 1);
    left.set(0, 0, 0, s(2));
    let m = Bimodule::new(
        r,
        1,
        Matrix::identity(1),
        vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)],
        left,
        Tensor3::zeros(1, 1, 1),
    )
    .unwrap();
    let report = m.check_left_module();
    assert!(report.has_label("left-module(2.1)"));
    assert!(m.check_right_module().is_empty());
}

#[test]
fn direct_product_of_references_is_valid() {
    let prod = HomAlgebra::direct_product(&sample::base_r(), &sample::base_b()).unwrap();
    assert!(prod.check_algebra().is_empty());
    assert_eq!(prod.dim(), 2);
    // Both blocks are subalgebras of the product.
    assert!(prod.check_subalgebra(&[std_basis(2, 0)]).unwrap().is_empty());
    assert!(prod.check_subalgebra(&[std_basis(2, 1)]).unwrap().is_empty());
}
