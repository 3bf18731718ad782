//! Executable statements of the structure theorems: classification rows
//! with their witnesses, matched pairs against their bicrossed products,
//! deformation maps against their deformed algebras, the action-pattern
//! enumeration, and the one-dimensional index computations.

use rand::Rng;
use rbhom_core::deform::{
    check_deformation_equiv, count_index_1dim, deform_equiv_1dim, solve_deformation_1dim,
    DeformEquivWitness, DeformationMap, SolutionSet,
};
use rbhom_core::extending::{check_datum_equivalence, EquivWitness};
use rbhom_core::flag::{enumerate_flags, FlagGrid};
use rbhom_core::linalg::{std_basis, Matrix, Vector};
use rbhom_core::matched::check_factorization;
use rbhom_core::sample;
use rbhom_core::table2::{self, Params};
use rbhom_core::Scalar;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn params(pairs: &[(&str, Scalar)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[test]
fn every_classification_row_verifies_on_three_seeded_instantiations() {
    let mut rng = sample::rng(0x7ab1e2);
    let mut checked = 0;
    for id in table2::cli_row_ids() {
        let spec = table2::row_by_id(&id).unwrap();
        for _ in 0..3 {
            let inst = table2::random_instantiation(spec, &mut rng);
            let outcome = table2::verify_table2_row(spec, &inst)
                .unwrap_or_else(|e| panic!("row {}: {e}", spec.id));
            assert!(
                outcome.report.is_empty(),
                "row {} with {:?} fails:\n{}",
                spec.id,
                inst,
                outcome.report
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 72);
}

#[test]
fn pinned_row_instantiations_from_worked_examples() {
    // Row 1 with explicit small values.
    let spec = table2::row_by_id("1").unwrap();
    let inst = params(&[("tr", s(5)), ("ke", s(2)), ("ks", s(3)), ("k2", s(7))]);
    assert!(table2::verify_table2_row(spec, &inst).unwrap().report.is_empty());

    // Row 14: the witness shifts by minus half the complement square.
    let spec = table2::row_by_id("14").unwrap();
    let inst = params(&[("k1", s(4))]);
    assert!(table2::verify_table2_row(spec, &inst).unwrap().report.is_empty());

    // Row 15 with a square cocycle entry; scale witness 1/3.
    let spec = table2::row_by_id("15").unwrap();
    let inst = params(&[("a1", s(9)), ("k1", s(2))]);
    assert!(table2::verify_table2_row(spec, &inst).unwrap().report.is_empty());
    // A non-square entry violates the constraint.
    let bad = params(&[("a1", s(3)), ("k1", s(2))]);
    assert!(table2::verify_table2_row(spec, &bad).is_err());

    // Row 2: broken derived entry must fail the flag conditions.
    let spec = table2::row_by_id("2").unwrap();
    let inst = params(&[("tr", s(5)), ("k1", s(2)), ("k2", s(3))]);
    let base = table2::reference_base();
    let mut fd = table2::instantiate_tuple(&base, &spec.tuple, &inst).unwrap();
    fd.a1 = vec![&fd.a1[0] + &s(1)];
    let report = fd.check_flag().unwrap();
    assert!(report.has_label("F9") || report.has_label("F11"), "{report}");
}

#[test]
fn witness_direction_and_perturbation() {
    // Row 2's equivalence witness carries the class representative onto
    // the row datum; breaking the shift by one must fail E2 or E4.
    let spec = table2::row_by_id("2").unwrap();
    let inst = params(&[("tr", s(1)), ("k1", s(2)), ("k2", s(3))]);
    let base = table2::reference_base();
    let row = table2::instantiate_tuple(&base, &spec.tuple, &inst).unwrap().to_datum("x");
    let class = table2::instantiate_tuple(&base, &spec.witnesses[0].class, &inst)
        .unwrap()
        .to_datum("x");
    let good = EquivWitness {
        g: Matrix::from_cols(&[vec![Scalar::from_rat(sample::qr(-1, 2))]]),
        h: Matrix::from_cols(&[vec![Scalar::from_rat(sample::qr(1, 2))]]),
    };
    let outcome = check_datum_equivalence(&class, &row, &good).unwrap();
    assert!(outcome.report.is_empty());
    assert!(!outcome.cohomologous);

    let bad = EquivWitness {
        g: Matrix::from_cols(&[vec![Scalar::from_rat(sample::qr(1, 2))]]),
        h: good.h.clone(),
    };
    let outcome = check_datum_equivalence(&class, &row, &bad).unwrap();
    assert!(outcome.report.has_label("E2") || outcome.report.has_label("E4"));

    // The witness is directional: the same pair read row-to-class fails.
    let outcome = check_datum_equivalence(&row, &class, &good).unwrap();
    assert!(!outcome.report.is_empty());
}

#[test]
fn reflexivity_and_witness_composition() {
    let mut rng = sample::rng(0xc0);
    for _ in 0..50 {
        let d = sample::valid_datum(&mut rng);
        let id = EquivWitness::identity(d.base.dim(), d.vdim());
        let outcome = check_datum_equivalence(&d, &d, &id).unwrap();
        assert!(outcome.report.is_empty());
        assert!(outcome.cohomologous);
    }

    // Compose the two witness lines of a two-witness row: class1 -> row
    // and row -> ... is not available directly, but class2 -> row and
    // row-inverse give class2 -> class1 through composition. Instead use
    // the two class representatives: w1: class1 -> row, and the inverse
    // of w2: row -> class2; their composite must pass class1 -> class2.
    let spec = table2::row_by_id("17").unwrap();
    let inst = params(&[("b0", s(2)), ("k1", s(3))]);
    let base = table2::reference_base();
    let row = table2::instantiate_tuple(&base, &spec.tuple, &inst).unwrap().to_datum("x");
    let class1 = table2::instantiate_tuple(&base, &spec.witnesses[0].class, &inst)
        .unwrap()
        .to_datum("x");
    let class2 = table2::instantiate_tuple(&base, &spec.witnesses[1].class, &inst)
        .unwrap()
        .to_datum("x");
    // w1: class1 -> row with h = 1/k1, g = -b0/k1.
    let w1 = EquivWitness {
        g: Matrix::from_cols(&[vec![Scalar::from_rat(sample::qr(-2, 3))]]),
        h: Matrix::from_cols(&[vec![Scalar::from_rat(sample::qr(1, 3))]]),
    };
    assert!(check_datum_equivalence(&class1, &row, &w1).unwrap().report.is_empty());
    // w2: class2 -> row with h = 1, g = -b0; invert to row -> class2.
    let w2 = EquivWitness {
        g: Matrix::from_cols(&[vec![s(-2)]]),
        h: Matrix::identity(1),
    };
    assert!(check_datum_equivalence(&class2, &row, &w2).unwrap().report.is_empty());
    let h_inv = w2.h.inverse().unwrap();
    let w2_inv = EquivWitness {
        g: w2.g.mul_mat(&h_inv).scale(&s(-1)),
        h: h_inv,
    };
    // For h = Id the inverse witness is just g -> -g.
    assert!(check_datum_equivalence(&row, &class2, &w2_inv).unwrap().report.is_empty());
    let composite = EquivWitness::compose(&w1, &w2_inv);
    assert!(check_datum_equivalence(&class1, &class2, &composite)
        .unwrap()
        .report
        .is_empty());
}

#[test]
fn matched_pairs_build_valid_bicrossed_products_and_factor_back() {
    let mut rng = sample::rng(0x3a7c4);
    for trial in 0..200 {
        let mp = sample::valid_matched_pair(&mut rng);
        assert!(
            mp.check_matched_pair().unwrap().is_empty(),
            "trial {trial}: generator produced an invalid pair"
        );
        // The pair is valid exactly when its zero-extension is.
        assert!(mp.to_datum().check_extending_structure().unwrap().is_empty());
        let product = mp.build_bicrossed().unwrap();
        assert!(product.algebra.check_algebra().is_empty(), "trial {trial}");
        let dim = product.algebra.dim();
        let n = product.split;
        let r_span: Vec<Vector> = (0..n).map(|i| std_basis(dim, i)).collect();
        let v_span: Vec<Vector> = (n..dim).map(|i| std_basis(dim, i)).collect();
        let out = check_factorization(&product.algebra, &r_span, &v_span).unwrap();
        assert!(out.report.is_empty(), "trial {trial}");
        assert_eq!(out.pair.unwrap(), mp, "trial {trial}");
    }
}

#[test]
fn pair_conditions_match_zero_extension_conditions_pointwise() {
    // The matched-pair conditions and the structure conditions of the
    // zero-extension are two transcriptions of one statement; they must
    // agree on arbitrary action tensors, valid or not.
    use rbhom_core::linalg::Tensor3;
    let mut rng = sample::rng(0x3a7c5);
    let r = sample::base_r();
    let v = sample::base_b();
    let mut disagreements = 0;
    let mut passes = 0;
    for _ in 0..200 {
        let mut fill = |d0: usize, d1: usize, d2: usize| {
            let mut t = Tensor3::zeros(d0, d1, d2);
            for i in 0..d0 {
                for j in 0..d1 {
                    for k in 0..d2 {
                        t.set(i, j, k, sample::sparse_scalar(&mut rng));
                    }
                }
            }
            t
        };
        let (n, m) = (r.dim(), v.dim());
        let tri_l = fill(n, m, m);
        let tri_r = fill(m, n, m);
        let harp_r = fill(m, n, n);
        let harp_l = fill(n, m, n);
        let mp = rbhom_core::matched::MatchedPair::new(
            r.clone(),
            v.clone(),
            tri_l,
            tri_r,
            harp_r,
            harp_l,
        )
        .unwrap();
        let direct = mp.matched_conditions().is_empty();
        let via_datum = mp.to_datum().structure_conditions().is_empty();
        if direct != via_datum {
            disagreements += 1;
        }
        if direct {
            passes += 1;
        }
    }
    assert_eq!(disagreements, 0);
    assert!(passes < 100, "random actions should mostly fail: {passes}");
}

#[test]
fn invalid_action_pattern_fails_the_pair_conditions() {
    let mp = sample::pattern_pair((1, 1, 1, 1));
    let report = mp.check_matched_pair().unwrap();
    assert!(!report.is_empty());
    // And the zero-extension fails the structure conditions too.
    assert!(!mp.to_datum().check_extending_structure().unwrap().is_empty());
}

#[test]
fn pattern_enumeration_reproduces_the_five_pairs() {
    let base = sample::base_r();
    let lam = Scalar::lambda();
    let zero = vec![Scalar::zero()];
    let zero_one = vec![Scalar::zero(), Scalar::one()];
    let grid = FlagGrid {
        l: zero_one.clone(),
        r: zero_one.clone(),
        t_r: zero_one.clone(),
        t_l: zero_one,
        a1: zero.clone(),
        k1: vec![Scalar::one()],
        b: vec![zero.clone(), zero.clone()],
        kfam: vec![vec![-&lam], vec![-&lam]],
        a2: zero,
        k2: vec![Scalar::one()],
    };
    let hits = enumerate_flags(&base, &grid).unwrap();
    let got: Vec<(i64, i64, i64, i64)> = hits
        .iter()
        .map(|fd| {
            let to_int = |v: &Scalar| if v.is_zero() { 0 } else { 1 };
            (
                to_int(&fd.l[0]),
                to_int(&fd.r[0]),
                to_int(fd.t_r.at(0, 0)),
                to_int(fd.t_l.at(0, 0)),
            )
        })
        .collect();
    // Enumeration returns grid order; the published table lists the same
    // five patterns in its own order.
    assert_eq!(got, sample::TABLE3_PATTERNS_LEX.to_vec());
    let mut sorted_published = sample::TABLE3_ACTION_PATTERNS.to_vec();
    sorted_published.sort_unstable();
    assert_eq!(got, sorted_published);
    // Each pattern defines a matched pair with the second reference
    // algebra.
    for pattern in sample::TABLE3_ACTION_PATTERNS {
        let mp = sample::pattern_pair(pattern);
        assert!(mp.check_matched_pair().unwrap().is_empty());
    }
}

#[test]
fn row10_product_has_the_published_structure_constants() {
    // Flag data through the bijection, then the product: with parameters
    // (k2, tr) the assembled algebra must read e2*e1 = tr e1,
    // e1*e2 = (1-k2) tr e1 + k2 e2, theta(e2) = (1-k2) tr e1 + k2 e2.
    let k2 = Scalar::from_rat(sample::qr(1, 2));
    let tr = s(3);
    let datum = row10_datum(k2.clone(), tr.clone());
    let product = datum.build_unified_product().algebra;
    let one_minus_k2_tr = &(&s(1) - &k2) * &tr;
    assert_eq!(product.mu.on_basis(1, 0), vec![tr.clone(), Scalar::zero()]);
    assert_eq!(product.mu.on_basis(0, 1), vec![one_minus_k2_tr.clone(), k2.clone()]);
    assert_eq!(product.theta.col(1), vec![one_minus_k2_tr, k2]);
    // Valid through both routes, and the base block is a subalgebra.
    assert!(product.check_algebra().is_empty());
    assert!(product.check_subalgebra(&[std_basis(2, 0)]).unwrap().is_empty());
}

#[test]
fn validated_datum_view_accepts_and_rejects() {
    use rbhom_core::extending::{datum_to_extension, ExtendError};
    let datum = row10_datum(s(2), s(1));
    let algebra = datum_to_extension(&datum).unwrap();
    assert_eq!(algebra, datum.build_unified_product().algebra);
    let mut broken = datum;
    let bumped = broken.f.at(0, 0, 0) + &s(1);
    broken.f.set(0, 0, 0, bumped);
    assert!(matches!(datum_to_extension(&broken), Err(ExtendError::InvalidDatum)));
}

#[test]
fn worked_complement_yields_the_worked_map() {
    use rbhom_core::deform::{complement_to_deformation, Complement};
    let datum = row10_datum(Scalar::from_rat(sample::qr(1, 2)), s(3));
    let host = datum.build_unified_product();
    let complement = Complement { span: vec![vec![s(-3), s(1)]] };
    let dm = complement_to_deformation(&host, &complement).unwrap();
    assert_eq!(dm.d, Matrix::from_cols(&[vec![s(-3)]]));
    // The complement block itself is not closed here, so the zero map is
    // not reachable from any complement.
    let block = Complement { span: vec![vec![s(0), s(1)]] };
    assert!(complement_to_deformation(&host, &block).is_err());
}

#[test]
fn bicrossed_pattern_0011_has_the_published_constants() {
    let mp = sample::pattern_pair((0, 0, 1, 1));
    let product = mp.build_bicrossed().unwrap().algebra;
    let lam = Scalar::lambda();
    assert_eq!(product.mu.on_basis(0, 1), vec![s(1), s(0)]);
    assert_eq!(product.mu.on_basis(1, 0), vec![s(1), s(0)]);
    assert_eq!(product.mu.on_basis(1, 1), vec![s(0), s(1)]);
    assert_eq!(product.p[0].col(1), vec![s(0), -&lam]);
    assert_eq!(product.p[1].col(1), vec![s(0), -&lam]);
}

#[test]
fn deformation_maps_deform_into_valid_algebras() {
    let mut rng = sample::rng(0xdef0);
    for trial in 0..200 {
        let dm = sample::valid_deformation_map(&mut rng);
        assert!(
            dm.check_deformation().unwrap().is_empty(),
            "trial {trial}: generator produced an invalid map"
        );
        let deformed = dm.build_deformed().unwrap();
        assert!(deformed.check_algebra().is_empty(), "trial {trial}");
    }
}

#[test]
fn zero_map_leaves_the_complement_algebra_unchanged() {
    let mut rng = sample::rng(0xdef1);
    let mp = sample::valid_matched_pair(&mut rng);
    let datum = mp.to_datum();
    let dm = DeformationMap::new(
        datum.clone(),
        Matrix::zeros(datum.base.dim(), datum.vdim()),
    )
    .unwrap();
    let deformed = dm.build_deformed().unwrap();
    assert_eq!(deformed, mp.v);
}

fn row10_datum(k2: Scalar, tr: Scalar) -> rbhom_core::ExtendingDatum {
    let spec = table2::row_by_id("10").unwrap();
    let inst = params(&[("k2", k2), ("tr", tr)]);
    table2::instantiate_tuple(&table2::reference_base(), &spec.tuple, &inst)
        .unwrap()
        .to_datum("e2")
}

#[test]
fn worked_deformation_case_with_one_solution() {
    let datum = row10_datum(Scalar::from_rat(sample::qr(1, 2)), s(3));
    let solve = solve_deformation_1dim(&datum).unwrap();
    assert_eq!(solve.set, SolutionSet::Finite(vec![s(-3)]));

    // The map itself passes, and zero fails the twist condition.
    let good = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![s(-3)]])).unwrap();
    assert!(good.check_deformation().unwrap().is_empty());
    let zero = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![s(0)]])).unwrap();
    let report = zero.check_deformation().unwrap();
    assert!(report.has_label("def(4.3)"));

    // Complement attached to the solution: span of -3 e1 + e2.
    let complement = rbhom_core::deform::deformation_to_complement(&good).unwrap();
    assert_eq!(complement.span, vec![vec![s(-3), s(1)]]);

    let index = count_index_1dim(&datum).unwrap();
    assert_eq!(index.index, 1);
    assert_eq!(index.representatives, vec![s(-3)]);
}

#[test]
fn worked_deformation_case_with_all_solutions() {
    let datum = row10_datum(s(1), s(3));
    let solve = solve_deformation_1dim(&datum).unwrap();
    assert_eq!(solve.set, SolutionSet::All);

    // Any value passes the three conditions.
    for v in [-5i64, -3, 0, 2, 5] {
        let dm = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![s(v)]])).unwrap();
        assert!(dm.check_deformation().unwrap().is_empty());
    }

    let index = count_index_1dim(&datum).unwrap();
    assert_eq!(index.index, 2);
    assert_eq!(index.representatives, vec![s(-3), s(-2)]);

    // Exhaustive pairwise witness checks over a small value range: the
    // classes are exactly the special value and everything else.
    let values: Vec<Scalar> = (-5..=5).map(s).collect();
    for a in &values {
        for b in &values {
            let equivalent = deform_equiv_1dim(&datum, a, b).unwrap().is_some();
            let same_class = (*a == s(-3)) == (*b == s(-3));
            assert_eq!(equivalent, same_class, "{a} vs {b}");
        }
    }

    // The worked witness: 2 ~ -2 through scale 5.
    let d1 = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![s(2)]])).unwrap();
    let d2 = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![s(-2)]])).unwrap();
    let w = DeformEquivWitness { delta: Matrix::from_cols(&[vec![s(5)]]) };
    assert!(check_deformation_equiv(&d1, &d2, &w).unwrap().is_empty());

    // The special value is not equivalent to the zero map under any
    // nonzero scale.
    let special = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![s(-3)]])).unwrap();
    let zero = DeformationMap::new(datum, Matrix::from_cols(&[vec![s(0)]])).unwrap();
    for scale in [-5i64, -2, -1, 1, 2, 5] {
        let w = DeformEquivWitness { delta: Matrix::from_cols(&[vec![s(scale)]]) };
        assert!(!check_deformation_equiv(&special, &zero, &w).unwrap().is_empty());
    }
    assert!(deform_equiv_1dim(
        &row10_datum(s(1), s(3)),
        &s(-3),
        &s(0)
    )
    .unwrap()
    .is_none());
}

#[test]
fn two_solution_family_collapses_to_one_class() {
    // Square cocycle entry: the quadratic has two rational roots, and
    // both sit in the same equivalence class since neither annihilates
    // the action marker.
    let spec = table2::row_by_id("15").unwrap();
    let inst = params(&[("a1", s(9)), ("k1", s(2))]);
    let datum = table2::instantiate_tuple(&table2::reference_base(), &spec.tuple, &inst)
        .unwrap()
        .to_datum("x");
    let solve = solve_deformation_1dim(&datum).unwrap();
    assert_eq!(solve.set, SolutionSet::Finite(vec![s(2), s(-4)]));
    let delta = deform_equiv_1dim(&datum, &s(2), &s(-4)).unwrap();
    assert_eq!(delta, Some(s(-1)));
    let index = count_index_1dim(&datum).unwrap();
    assert_eq!(index.index, 1);
    assert_eq!(index.representatives, vec![s(2)]);
}

#[test]
fn matched_pair_datum_with_self_product_has_only_the_zero_solution() {
    // Zero actions over the unit-square base: the quadratic condition
    // collapses to d^2 = 0.
    let v = sample::algebra_1dim("x", Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero());
    let datum = sample::direct_sum_datum(&sample::base_r(), &v);
    let solve = solve_deformation_1dim(&datum).unwrap();
    assert_eq!(solve.set, SolutionSet::Finite(vec![Scalar::zero()]));
    let index = count_index_1dim(&datum).unwrap();
    assert_eq!(index.index, 1);
}

#[test]
fn deformation_equivalence_is_an_equivalence_relation_on_solved_families() {
    let datum = row10_datum(s(1), s(2));
    let vals = [s(0), s(1), s(4), s(-1)];
    // Reflexive through the identity scale.
    for v in &vals {
        let dm = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![v.clone()]])).unwrap();
        let w = DeformEquivWitness { delta: Matrix::identity(1) };
        assert!(check_deformation_equiv(&dm, &dm, &w).unwrap().is_empty());
    }
    // Symmetric and transitive through derived witnesses.
    for a in &vals {
        for b in &vals {
            let ab = deform_equiv_1dim(&datum, a, b).unwrap();
            let ba = deform_equiv_1dim(&datum, b, a).unwrap();
            assert_eq!(ab.is_some(), ba.is_some());
            if let (Some(x), Some(y)) = (ab, ba) {
                assert!((&x * &y).is_one());
            }
            for c in &vals {
                let bc = deform_equiv_1dim(&datum, b, c).unwrap();
                let ac = deform_equiv_1dim(&datum, a, c).unwrap();
                if deform_equiv_1dim(&datum, a, b).unwrap().is_some() && bc.is_some() {
                    assert!(ac.is_some());
                }
            }
        }
    }
}

#[test]
fn solver_handles_operator_bearing_bases() {
    // Base with nonzero operators: its own copy as the complement gives
    // the quadratic d(d - 1) = 0 with the operator condition collapsing,
    // so both roots survive and are equivalent (no actions).
    let b = sample::base_b();
    let mut v = sample::base_b();
    v.basis = vec!["x".into()];
    let datum = sample::direct_sum_datum(&b, &v);
    let solve = solve_deformation_1dim(&datum).unwrap();
    assert_eq!(solve.set, SolutionSet::Finite(vec![s(0), s(1)]));
    for root in [s(0), s(1)] {
        let dm = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![root]])).unwrap();
        assert!(dm.check_deformation().unwrap().is_empty());
    }
    let index = count_index_1dim(&datum).unwrap();
    assert_eq!(index.index, 1);

    // Same base against an operator-free complement: the operator
    // condition pins the value to zero.
    let v2 = sample::algebra_1dim("x", Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero());
    let datum = sample::direct_sum_datum(&b, &v2);
    let solve = solve_deformation_1dim(&datum).unwrap();
    assert_eq!(solve.set, SolutionSet::Finite(vec![s(0)]));
}

#[test]
fn irrational_quadratics_are_reported_not_guessed() {
    // Unit-square complement with product 2 x: condition reads
    // d^2 + ... choose mul so the discriminant is 2: mul_V = 0, f = -2?
    // Simplest: complement squares to zero but cocycle feeds d^2 = 2.
    let base = sample::base_r();
    let spec = table2::row_by_id("15").unwrap();
    // a1 = 2 is not a square, so the constraint d^2 = -a1 + ... yields
    // irrational roots; the row constraint blocks instantiation, so build
    // the tuple directly.
    let inst = params(&[("a1", s(2)), ("k1", s(0))]);
    let fd = table2::instantiate_tuple(&base, &spec.tuple, &inst).unwrap();
    assert!(fd.check_flag().unwrap().is_empty());
    let solve = solve_deformation_1dim(&fd.to_datum("x")).unwrap();
    assert_eq!(solve.set, SolutionSet::IrrationalRoots);
    assert!(count_index_1dim(&fd.to_datum("x")).is_err());
}

#[test]
fn random_valid_datums_agree_between_solver_and_checker() {
    // For one-dimensional datums the exact solution set must match the
    // pointwise checker on a probe grid.
    let mut rng = sample::rng(0x50f7);
    for _ in 0..100 {
        let specs = table2::rows();
        let spec = &specs[rng.random_range(0..specs.len())];
        let inst = table2::random_instantiation(spec, &mut rng);
        let datum = table2::instantiate_tuple(&table2::reference_base(), &spec.tuple, &inst)
            .unwrap()
            .to_datum("x");
        let solve = solve_deformation_1dim(&datum).unwrap();
        for probe in (-4..=4).map(s) {
            let dm = DeformationMap::new(datum.clone(), Matrix::from_cols(&[vec![probe.clone()]]))
                .unwrap();
            let passes = dm.check_deformation().unwrap().is_empty();
            let predicted = match &solve.set {
                SolutionSet::All => true,
                SolutionSet::Finite(roots) => roots.contains(&probe),
                SolutionSet::IrrationalRoots => false,
            };
            assert_eq!(passes, predicted, "row {} probe {probe}", spec.id);
        }
    }
}
