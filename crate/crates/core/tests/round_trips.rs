//! Round trips for the three correspondences: extension <-> datum,
//! flag <-> one-dimensional datum, complement <-> deformation map.
//! Each direction runs over 200 seeded structured inputs.

use rbhom_core::deform::{
    complement_to_deformation, deformation_to_complement, same_subspace,
};
use rbhom_core::extending::{extension_to_datum, extension_to_datum_canonical};
use rbhom_core::flag::FlagDatum;
use rbhom_core::linalg::{std_basis, Matrix};
use rbhom_core::sample;
use rbhom_core::{check_morphism, Scalar};

#[test]
fn datum_to_extension_and_back_is_identity() {
    let mut rng = sample::rng(0x1b1d);
    for trial in 0..200 {
        let datum = sample::valid_datum(&mut rng);
        let product = datum.build_unified_product();
        let recovered = extension_to_datum_canonical(&product.algebra, product.split)
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        assert_eq!(recovered, datum, "trial {trial}");
        // Reading the blocks directly agrees with the linear-algebra route.
        assert_eq!(product.read_datum(), datum, "trial {trial}");
    }
}

#[test]
fn extension_to_datum_and_back_is_identity() {
    let mut rng = sample::rng(0x2b1d);
    for trial in 0..200 {
        let datum = sample::valid_datum(&mut rng);
        let e = datum.build_unified_product().algebra;
        let split = datum.base.dim();
        let recovered = extension_to_datum_canonical(&e, split).unwrap();
        let rebuilt = recovered.build_unified_product().algebra;
        assert_eq!(rebuilt, e, "trial {trial}");
    }
}

#[test]
fn oblique_retraction_gives_an_isomorphic_product() {
    // Retraction sending the second basis vector to -3 e1 on the
    // two-dimensional example; the recovered datum rebuilds the algebra
    // up to the change of complement, witnessed by the sum map.
    let e = sample::algebra_e();
    let r_basis = vec![std_basis(2, 0)];
    let rho = Matrix::from_rows(vec![vec![Scalar::from_int(1), Scalar::from_int(-3)]]);
    let datum = extension_to_datum(&e, &r_basis, &rho).unwrap();
    assert!(datum.check_extending_structure().unwrap().is_empty());
    // Kernel of [1 -3] is spanned by (3, 1).
    assert_eq!(datum.vbasis.len(), 1);
    let product = datum.build_unified_product();
    // (a, x) -> a * e1 + x * (3 e1 + e2).
    let phi = Matrix::from_rows(vec![
        vec![Scalar::from_int(1), Scalar::from_int(3)],
        vec![Scalar::from_int(0), Scalar::from_int(1)],
    ]);
    assert!(check_morphism(&phi, &product.algebra, &e).unwrap().is_empty());
    assert!(phi.inverse().is_some());
}

#[test]
fn flag_bijection_round_trips() {
    use rand::Rng;
    let mut rng = sample::rng(0x3b1d);
    let base = sample::base_r();
    for _ in 0..200 {
        let spec_pool = rbhom_core::table2::rows();
        let spec = &spec_pool[rng.random_range(0..spec_pool.len())];
        let params = rbhom_core::table2::random_instantiation(spec, &mut rng);
        let fd = rbhom_core::table2::instantiate_tuple(&base, &spec.tuple, &params).unwrap();
        let datum = fd.to_datum("x");
        assert_eq!(FlagDatum::from_datum(&datum).unwrap(), fd);
        assert_eq!(FlagDatum::from_datum(&datum).unwrap().to_datum("x"), datum);
    }
}

#[test]
fn complement_deformation_round_trips() {
    let mut rng = sample::rng(0x4b1d);
    for trial in 0..200 {
        let dm = sample::valid_deformation_map(&mut rng);
        let host = dm.datum.build_unified_product();
        let complement = deformation_to_complement(&dm).unwrap();
        let back = complement_to_deformation(&host, &complement)
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        assert_eq!(back.d, dm.d, "trial {trial}");
        assert_eq!(back.datum, dm.datum, "trial {trial}");
        let complement_again = deformation_to_complement(&back).unwrap();
        assert!(
            same_subspace(&complement.span, &complement_again.span),
            "trial {trial}"
        );
    }
}

#[test]
fn zero_map_complement_is_the_complement_block() {
    let mut rng = sample::rng(0x5b1d);
    let datum = sample::valid_matched_pair(&mut rng).to_datum();
    let n = datum.base.dim();
    let m = datum.vdim();
    let dm = rbhom_core::deform::DeformationMap::new(datum, Matrix::zeros(n, m)).unwrap();
    let complement = deformation_to_complement(&dm).unwrap();
    let expected: Vec<Vec<Scalar>> = (0..m).map(|p| std_basis(n + m, n + p)).collect();
    assert!(same_subspace(&complement.span, &expected));
}

