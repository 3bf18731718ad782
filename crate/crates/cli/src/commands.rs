//! Command bodies. Every check-style command prints one violation per
//! line and reports the overall outcome through the exit code.

use crate::render::{parse_assignments, parse_matrix, print_report, summary};
use crate::{CmdError, Outcome};
use rbhom_core::deform::{solve_deformation_1dim, DeformError, DeformationMap, SolutionSet};
use rbhom_core::extending::{check_datum_equivalence, EquivWitness, ExtendError, ExtendingDatum};
use rbhom_core::flag::{enumerate_flags, FlagDatum};
use rbhom_core::matched::MatchedError;
use rbhom_core::sample;
use rbhom_core::scalar::Scalar;
use rbhom_core::table2;
use rbhom_core::{FiniteSemigroup, HomAlgebra};
use rbhom_io::{EntityKind, Resolved};
use std::path::Path;

fn load(path: &Path) -> Result<Resolved, CmdError> {
    let (_, resolved) = rbhom_io::load_path(path)?;
    Ok(resolved)
}

fn extend_error(e: ExtendError) -> CmdError {
    match e {
        ExtendError::Internal(msg) => CmdError::Internal(msg),
        other => CmdError::Usage(other.to_string()),
    }
}

fn deform_error(e: DeformError) -> CmdError {
    match e {
        DeformError::Internal(msg) => CmdError::Internal(msg),
        other => CmdError::Usage(other.to_string()),
    }
}

fn matched_error(e: MatchedError) -> CmdError {
    match e {
        MatchedError::Internal(msg) => CmdError::Internal(msg),
        other => CmdError::Usage(other.to_string()),
    }
}

pub fn check(file: &Path) -> Result<Outcome, CmdError> {
    let resolved = load(file)?;
    let mut clean = true;
    for (kind, name) in &resolved.order {
        match kind {
            EntityKind::Semigroup => {
                let report = resolved.semigroups[name].validate();
                clean &= summary(&format!("semigroup {name}"), &report);
            }
            EntityKind::Algebra => {
                let report = resolved.algebras[name].check_algebra();
                clean &= summary(&format!("algebra {name}"), &report);
            }
            EntityKind::Datum => match resolved.datums[name].check_extending_structure() {
                Ok(report) => clean &= summary(&format!("datum {name}"), &report),
                Err(ExtendError::InvalidBase) => {
                    println!("datum {name}: base algebra fails its axioms");
                    clean = false;
                }
                Err(e) => return Err(extend_error(e)),
            },
            EntityKind::Pair => match resolved.pairs[name].check_matched_pair() {
                Ok(report) => clean &= summary(&format!("pair {name}"), &report),
                Err(MatchedError::InvalidAlgebra) => {
                    println!("pair {name}: an algebra of the pair fails its axioms");
                    clean = false;
                }
                Err(e) => return Err(matched_error(e)),
            },
            EntityKind::Deformation => match resolved.deformations[name].check_deformation() {
                Ok(report) => clean &= summary(&format!("deformation {name}"), &report),
                Err(DeformError::InvalidDatum) => {
                    println!("deformation {name}: datum fails the structure conditions");
                    clean = false;
                }
                Err(e) => return Err(deform_error(e)),
            },
            EntityKind::FlagRow => {
                let (row, _) = &resolved.flagrows[name];
                println!("flagrow {name}: row {row} (instantiate with `flag verify` or `deform --set`)");
            }
            EntityKind::Grid => {
                println!("grid {name}: enumeration input (run `flag enumerate`)");
            }
        }
    }
    Ok(if clean { Outcome::Clean } else { Outcome::Violations })
}

/// Name the semigroup of an algebra inside a resolved set, for emission.
fn semigroup_name(resolved: &Resolved, sg: &FiniteSemigroup) -> String {
    resolved
        .semigroups
        .iter()
        .find(|(_, s)| *s == sg)
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| "S".to_string())
}

fn write_algebra_file(
    path: &Path,
    resolved: &Resolved,
    name: &str,
    algebra: &HomAlgebra,
) -> Result<(), CmdError> {
    let sg_name = semigroup_name(resolved, &algebra.semigroup);
    let mut doc = rbhom_io::ast::Document::empty();
    doc.blocks.push(rbhom_io::ast::Block::Semigroup(rbhom_io::semigroup_block(
        &sg_name,
        &algebra.semigroup,
    )));
    doc.blocks
        .push(rbhom_io::ast::Block::Algebra(rbhom_io::algebra_block(name, algebra, &sg_name)));
    std::fs::write(path, rbhom_io::serialize(&doc))
        .map_err(|e| CmdError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn unique_datum<'a>(resolved: &'a Resolved, path: &Path) -> Result<(&'a String, &'a ExtendingDatum), CmdError> {
    let mut datums = resolved.datums.iter();
    match (datums.next(), datums.next()) {
        (Some(first), None) => Ok(first),
        (None, _) => Err(CmdError::Usage(format!(
            "{} contains no datum block",
            path.display()
        ))),
        (Some(_), Some(_)) => Err(CmdError::Usage(format!(
            "{} contains more than one datum block",
            path.display()
        ))),
    }
}

pub fn product(datum_path: &Path, output: &Path) -> Result<Outcome, CmdError> {
    let resolved = load(datum_path)?;
    let (name, datum) = unique_datum(&resolved, datum_path)?;
    let report = datum.check_extending_structure().map_err(extend_error)?;
    if !summary(&format!("datum {name}"), &report) {
        return Ok(Outcome::Violations);
    }
    let product = datum.build_unified_product();
    let out_name = format!("{name}_product");
    write_algebra_file(output, &resolved, &out_name, &product.algebra)?;
    println!("wrote {} (dim {})", output.display(), product.algebra.dim());
    Ok(Outcome::Clean)
}

pub fn bicrossed(pair_path: &Path, output: &Path) -> Result<Outcome, CmdError> {
    let resolved = load(pair_path)?;
    let mut pairs = resolved.pairs.iter();
    let (name, pair) = match (pairs.next(), pairs.next()) {
        (Some(first), None) => first,
        _ => {
            return Err(CmdError::Usage(format!(
                "{} must contain exactly one pair block",
                pair_path.display()
            )))
        }
    };
    let report = pair.check_matched_pair().map_err(matched_error)?;
    if !summary(&format!("pair {name}"), &report) {
        return Ok(Outcome::Violations);
    }
    let product = pair.build_bicrossed().map_err(matched_error)?;
    let out_name = format!("{name}_product");
    write_algebra_file(output, &resolved, &out_name, &product.algebra)?;
    println!("wrote {} (dim {})", output.display(), product.algebra.dim());
    Ok(Outcome::Clean)
}

fn show_params(params: &table2::Params) -> String {
    let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(", ")
}

fn verify_row_once(
    spec: &table2::FlagRowSpec,
    params: &table2::Params,
    label: &str,
) -> Result<bool, CmdError> {
    let outcome = table2::verify_table2_row(spec, params).map_err(row_error)?;
    for note in &outcome.notes {
        println!("note: {note}");
    }
    if outcome.report.is_empty() {
        println!("{label}: PASS ({})", show_params(params));
        Ok(true)
    } else {
        println!("{label}: FAIL ({})", show_params(params));
        print_report(&outcome.report);
        Ok(false)
    }
}

fn row_error(e: table2::RowError) -> CmdError {
    match e {
        table2::RowError::Extend(ExtendError::Internal(msg)) => CmdError::Internal(msg),
        other => CmdError::Usage(other.to_string()),
    }
}

pub fn flag_verify(row: &str, set: &[String], seed: u64, trials: u32) -> Result<Outcome, CmdError> {
    let spec = table2::row_by_id(row).map_err(row_error)?;
    if !set.is_empty() {
        let params = parse_assignments(set)?;
        let ok = verify_row_once(spec, &params, &format!("row {}", spec.id))?;
        return Ok(if ok { Outcome::Clean } else { Outcome::Violations });
    }
    println!("# seed = {seed}, trials = {trials}");
    let mut rng = sample::rng(seed);
    let mut clean = true;
    for trial in 1..=trials {
        let params = table2::random_instantiation(spec, &mut rng);
        clean &= verify_row_once(spec, &params, &format!("row {} trial {trial}", spec.id))?;
    }
    Ok(if clean { Outcome::Clean } else { Outcome::Violations })
}

fn flag_tuple(fd: &FlagDatum) -> String {
    let join = |v: &[Scalar]| {
        let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        parts.join(", ")
    };
    let b: Vec<String> = fd.b.iter().map(|v| join(v)).collect();
    let k: Vec<String> = fd.kfam.iter().map(|s| s.to_string()).collect();
    format!(
        "({}, {}, {}, {}, {}, {}, ({}), ({}), {}, {})",
        join(&fd.l),
        join(&fd.r),
        fd.t_r.at(0, 0),
        fd.t_l.at(0, 0),
        join(&fd.a1),
        fd.k1,
        b.join("; "),
        k.join(", "),
        join(&fd.a2),
        fd.k2
    )
}

pub fn flag_enumerate(grid_path: &Path) -> Result<Outcome, CmdError> {
    let resolved = load(grid_path)?;
    let mut grids = resolved.grids.iter();
    let (name, (base, grid)) = match (grids.next(), grids.next()) {
        (Some(first), None) => first,
        _ => {
            return Err(CmdError::Usage(format!(
                "{} must contain exactly one grid block",
                grid_path.display()
            )))
        }
    };
    let hits = enumerate_flags(base, grid).map_err(|e| CmdError::Usage(e.to_string()))?;
    println!("# grid {name}: {} passing point(s)", hits.len());
    for fd in &hits {
        println!("{}", flag_tuple(fd));
    }
    Ok(Outcome::Clean)
}

pub fn table2(seed: u64, trials: u32) -> Result<Outcome, CmdError> {
    println!("# seed = {seed}, trials = {trials}");
    let mut rng = sample::rng(seed);
    let mut clean = true;
    let mut checks = 0u32;
    for id in table2::cli_row_ids() {
        let spec = table2::row_by_id(&id).map_err(row_error)?;
        let mut passed = 0;
        for _ in 0..trials {
            let params = table2::random_instantiation(spec, &mut rng);
            let outcome = table2::verify_table2_row(spec, &params).map_err(row_error)?;
            checks += 1;
            if outcome.report.is_empty() {
                passed += 1;
            } else {
                println!("row {id} FAIL ({})", show_params(&params));
                print_report(&outcome.report);
            }
        }
        if passed == trials {
            println!("row {id}: PASS ({passed}/{trials})");
        } else {
            clean = false;
            println!("row {id}: FAIL ({passed}/{trials})");
        }
    }
    println!("{checks} checks");
    Ok(if clean { Outcome::Clean } else { Outcome::Violations })
}

/// The fixed sixteen-point grid pairing the two reference algebras.
pub fn reference_pattern_grid() -> rbhom_core::flag::FlagGrid {
    let zero = vec![Scalar::zero()];
    let zero_one = vec![Scalar::zero(), Scalar::one()];
    let neg_lambda = vec![-&Scalar::lambda()];
    rbhom_core::flag::FlagGrid {
        l: zero_one.clone(),
        r: zero_one.clone(),
        t_r: zero_one.clone(),
        t_l: zero_one,
        a1: zero.clone(),
        k1: vec![Scalar::one()],
        b: vec![zero.clone(), zero.clone()],
        kfam: vec![neg_lambda.clone(), neg_lambda],
        a2: zero,
        k2: vec![Scalar::one()],
    }
}

pub fn table3() -> Result<Outcome, CmdError> {
    let base = sample::base_r();
    let hits = enumerate_flags(&base, &reference_pattern_grid())
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let got: Vec<(i64, i64, i64, i64)> = hits
        .iter()
        .map(|fd| {
            let b = |v: &Scalar| i64::from(!v.is_zero());
            (b(&fd.l[0]), b(&fd.r[0]), b(fd.t_r.at(0, 0)), b(fd.t_l.at(0, 0)))
        })
        .collect();
    let mut expected = sample::TABLE3_ACTION_PATTERNS.to_vec();
    expected.sort_unstable();
    let matches = got == expected;
    println!("# matched-pair action patterns (l, r, t_r, t_l); k = -l, k1 = k2 = 1");
    for (l, r, tr, tl) in sample::TABLE3_ACTION_PATTERNS {
        println!("{l} {r} {tr} {tl}");
    }
    println!("{} rows", sample::TABLE3_ACTION_PATTERNS.len());
    if !matches {
        println!("enumeration disagrees with the published patterns: {got:?}");
        return Ok(Outcome::Violations);
    }
    // Each pattern is a matched pair whose product passes every axiom.
    for pattern in sample::TABLE3_ACTION_PATTERNS {
        let mp = sample::pattern_pair(pattern);
        let product = mp.build_bicrossed().map_err(matched_error)?;
        if !product.algebra.check_algebra().is_empty() {
            return Err(CmdError::Internal(format!(
                "bicrossed product of pattern {pattern:?} fails the algebra axioms"
            )));
        }
    }
    Ok(Outcome::Clean)
}

/// Datum designated by a file: either its unique datum block, or its
/// unique flag-row reference instantiated with the given parameters.
fn datum_from_file(
    path: &Path,
    set: &[String],
) -> Result<ExtendingDatum, CmdError> {
    let resolved = load(path)?;
    if !resolved.flagrows.is_empty() {
        let mut rows = resolved.flagrows.iter();
        let (_, (row_id, base)) = match (rows.next(), rows.next()) {
            (Some(first), None) => first,
            _ => {
                return Err(CmdError::Usage(format!(
                    "{} must contain exactly one flagrow block",
                    path.display()
                )))
            }
        };
        table2::ensure_reference_base(base).map_err(row_error)?;
        let spec = table2::row_by_id(row_id).map_err(row_error)?;
        let params = parse_assignments(set)?;
        for p in spec.params {
            if !params.contains_key(*p) {
                return Err(CmdError::Usage(format!(
                    "row {} needs --set {p}=<value>",
                    spec.id
                )));
            }
        }
        table2::verify_row_constraints(spec, &params).map_err(row_error)?;
        let fd = table2::instantiate_tuple(&table2::reference_base(), &spec.tuple, &params)
            .map_err(row_error)?;
        return Ok(fd.to_datum("e2"));
    }
    if !set.is_empty() {
        return Err(CmdError::Usage(
            "--set applies only to flagrow files; this file has a concrete datum".into(),
        ));
    }
    let (_, datum) = unique_datum(&resolved, path)?;
    Ok(datum.clone())
}

pub fn deform_check(path: &Path, d: Option<&str>, set: &[String]) -> Result<Outcome, CmdError> {
    let resolved = load(path)?;
    let dm = if let Some((name, dm)) = resolved.deformations.iter().next() {
        if d.is_some() {
            return Err(CmdError::Usage(format!(
                "{} already contains deformation block `{name}`; --d does not apply",
                path.display()
            )));
        }
        dm.clone()
    } else {
        let datum = datum_from_file(path, set)?;
        let Some(d) = d else {
            return Err(CmdError::Usage("--d <scalars> is required without a deformation block".into()));
        };
        let mat = parse_matrix(d, datum.base.dim(), datum.vdim(), "--d")?;
        DeformationMap::new(datum, mat).map_err(deform_error)?
    };
    match dm.check_deformation() {
        Ok(report) => {
            let ok = summary("deformation map", &report);
            Ok(if ok { Outcome::Clean } else { Outcome::Violations })
        }
        Err(DeformError::InvalidDatum) => {
            println!("deformation map: datum fails the structure conditions");
            Ok(Outcome::Violations)
        }
        Err(e) => Err(deform_error(e)),
    }
}

fn constraint_line(c: &rbhom_core::deform::DeformConstraint) -> String {
    format!(
        "{}: ({}) d^2 + ({}) d + ({}) = 0",
        c.label, c.coeffs[2], c.coeffs[1], c.coeffs[0]
    )
}

fn show_solutions(set: &SolutionSet) -> String {
    match set {
        SolutionSet::All => "ALL".to_string(),
        SolutionSet::IrrationalRoots => "irrational root, not representable".to_string(),
        SolutionSet::Finite(roots) => {
            let parts: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            format!("{{ {} }}", parts.join(", "))
        }
    }
}

pub fn deform_solve(path: &Path, set: &[String]) -> Result<Outcome, CmdError> {
    let datum = datum_from_file(path, set)?;
    let solve = solve_deformation_1dim(&datum).map_err(deform_error)?;
    for c in &solve.constraints {
        println!("{}", constraint_line(c));
    }
    println!("solutions: {}", show_solutions(&solve.set));
    Ok(Outcome::Clean)
}

pub fn deform_index(path: &Path, set: &[String]) -> Result<Outcome, CmdError> {
    let datum = datum_from_file(path, set)?;
    let report = rbhom_core::deform::count_index_1dim(&datum).map_err(deform_error)?;
    println!("solutions: {}", show_solutions(&report.set));
    println!("index = {}", report.index);
    for (class, rep) in report.classes.iter().zip(&report.representatives) {
        println!("class: {class} (representative {rep})");
    }
    Ok(Outcome::Clean)
}

pub fn equiv(left: &Path, right: &Path, g: &str, h: &str) -> Result<Outcome, CmdError> {
    let left_resolved = load(left)?;
    let right_resolved = load(right)?;
    let (_, d1) = unique_datum(&left_resolved, left)?;
    let (_, d2) = unique_datum(&right_resolved, right)?;
    let n = d1.base.dim();
    let m = d1.vdim();
    let witness = EquivWitness {
        g: parse_matrix(g, n, m, "--g")?,
        h: parse_matrix(h, m, m, "--h")?,
    };
    let outcome = check_datum_equivalence(d1, d2, &witness).map_err(extend_error)?;
    if outcome.report.is_empty() {
        if outcome.cohomologous {
            println!("equivalent (cohomologous)");
        } else {
            println!("equivalent");
        }
        Ok(Outcome::Clean)
    } else {
        print_report(&outcome.report);
        Ok(Outcome::Violations)
    }
}
