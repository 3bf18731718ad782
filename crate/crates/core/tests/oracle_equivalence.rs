//! The structure conditions against the product oracle: a datum passes
//! the direct condition checker exactly when its assembled product passes
//! the algebra checker. The two routes share no evaluation code, so
//! agreement on a large seeded sweep pins both transcriptions.

use rbhom_core::extending::ExtendingDatum;
use rbhom_core::sample;

fn both_routes_agree(datum: &ExtendingDatum) -> (bool, bool) {
    let conditions = datum
        .check_extending_structure()
        .expect("bases in the pool are valid");
    let product = datum.build_unified_product();
    let product_report = product.algebra.check_algebra();
    (conditions.is_empty(), product_report.is_empty())
}

#[test]
fn five_hundred_random_datums_zero_disagreements() {
    let mut rng = sample::rng(0x07ac1e);
    let mut passes = 0usize;
    for trial in 0..500 {
        let datum = sample::random_datum(&mut rng);
        let (direct, via_product) = both_routes_agree(&datum);
        assert_eq!(
            direct, via_product,
            "trial {trial}: conditions say {direct}, product oracle says {via_product}"
        );
        if direct {
            passes += 1;
        }
    }
    // Sparse draws should produce at least a few valid structures
    // (all-zero tensors among them), but mostly failures.
    assert!(passes > 0, "sweep never produced a valid datum");
    assert!(passes < 250, "sweep is suspiciously permissive: {passes}/500");
}

#[test]
fn structured_datums_pass_both_routes() {
    // Direct sums of valid algebras are valid structures.
    for (r, v) in [
        (sample::base_r(), sample::base_b()),
        (sample::base_r(), sample::zero_algebra(2, sample::base_r().semigroup.clone())),
        (sample::algebra_e(), sample::base_b()),
    ] {
        let datum = sample::direct_sum_datum(&r, &v);
        let (direct, via_product) = both_routes_agree(&datum);
        assert!(direct && via_product);
        // The product of a zero-cross-map datum is the block product.
        let product = datum.build_unified_product();
        assert_eq!(product.algebra, rbhom_core::HomAlgebra::direct_product(&r, &v).unwrap());
    }
}

#[test]
fn single_entry_perturbations_flip_both_routes_together() {
    // Start from valid direct-sum datums and bump one tensor entry at a
    // time; the two routes must keep agreeing, and the cocycle bumps must
    // be caught.
    let r = sample::base_r();
    let v = sample::base_b();
    let base_datum = sample::direct_sum_datum(&r, &v);
    let one = rbhom_core::Scalar::one();

    let mut bumped = base_datum.clone();
    let old = bumped.f.at(0, 0, 0).clone();
    bumped.f.set(0, 0, 0, &old + &one);
    let (direct, via_product) = both_routes_agree(&bumped);
    assert_eq!(direct, via_product);
    assert!(!direct, "cocycle bump must violate the conditions");
    let labels = bumped.check_extending_structure().unwrap();
    let expected = ["R5", "R7", "R9", "R11", "R12", "R15"];
    assert!(
        labels.labels().iter().any(|l| expected.contains(l)),
        "cocycle bump should land among the cocycle-bearing conditions, got {:?}",
        labels.labels()
    );

    let mut bumped = base_datum.clone();
    let old = bumped.eta.at(0, 0).clone();
    bumped.eta.set(0, 0, &old + &one);
    let (direct, via_product) = both_routes_agree(&bumped);
    assert_eq!(direct, via_product);
    assert!(!direct);

    let mut bumped = base_datum;
    let old = bumped.q[1].at(0, 0).clone();
    bumped.q[1].set(0, 0, &old + &one);
    let (direct, via_product) = both_routes_agree(&bumped);
    assert_eq!(direct, via_product);
    assert!(!direct);
}

#[test]
fn empty_complement_returns_the_base() {
    let r = sample::algebra_e();
    let datum = ExtendingDatum::new(
        r.clone(),
        vec![],
        rbhom_core::linalg::Tensor3::zeros(2, 0, 0),
        rbhom_core::linalg::Tensor3::zeros(0, 2, 0),
        rbhom_core::linalg::Tensor3::zeros(0, 2, 2),
        rbhom_core::linalg::Tensor3::zeros(2, 0, 2),
        rbhom_core::linalg::Tensor3::zeros(0, 0, 2),
        rbhom_core::linalg::Tensor3::zeros(0, 0, 0),
        vec![rbhom_core::linalg::Matrix::zeros(2, 0); 2],
        vec![rbhom_core::linalg::Matrix::zeros(0, 0); 2],
        rbhom_core::linalg::Matrix::zeros(2, 0),
        rbhom_core::linalg::Matrix::zeros(0, 0),
    )
    .unwrap();
    let product = datum.build_unified_product();
    assert_eq!(product.algebra, r);
}
