//! The classification table for one-dimensional extensions of the
//! one-dimensional base: twenty rows (twenty-four counting sign
//! variants), each a parameterized flag datum family with its witness
//! pair and canonical class representative. Rows are shipped as string
//! expressions over the row parameters and evaluated exactly.

use crate::deform::DeformError;
use crate::extending::{check_datum_equivalence, EquivWitness, ExtendError};
use crate::flag::{FlagDatum, FlagError};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::sample;
use crate::scalar::Scalar;
use crate::HomAlgebra;

use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RowError {
    #[error("unknown row id {0}")]
    UnknownRow(String),
    #[error("row parameter {0} is missing")]
    MissingParam(String),
    #[error("instantiation violates row constraint: {0}")]
    ConstraintViolation(String),
    #[error("expression error in '{src}': {what}")]
    Expr { src: String, what: String },
    #[error("row base must be the one-dimensional reference algebra")]
    WrongBase,
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Deform(#[from] DeformError),
}

pub type Params = BTreeMap<String, Scalar>;

/// Constraint on a row parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RowConstraint {
    NonZero(&'static str),
    /// Parameter must differ from the given integer.
    NotEqualInt(&'static str, i64),
    /// Parameter must be a nonzero square of a rational, so the witness
    /// stays inside the field.
    NonZeroSquare(&'static str),
}

impl RowConstraint {
    fn check(&self, params: &Params) -> Result<(), RowError> {
        let get = |name: &str| {
            params
                .get(name)
                .cloned()
                .ok_or_else(|| RowError::MissingParam(name.to_string()))
        };
        match self {
            RowConstraint::NonZero(name) => {
                if get(name)?.is_zero() {
                    return Err(RowError::ConstraintViolation(format!("{name} must be nonzero")));
                }
            }
            RowConstraint::NotEqualInt(name, v) => {
                if get(name)? == Scalar::from_int(*v) {
                    return Err(RowError::ConstraintViolation(format!("{name} must differ from {v}")));
                }
            }
            RowConstraint::NonZeroSquare(name) => {
                let val = get(name)?;
                if val.is_zero() || val.sqrt().is_none() {
                    return Err(RowError::ConstraintViolation(format!(
                        "{name} must be a nonzero square in the field"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Witness line: the scale pair and the class representative it reaches.
#[derive(Clone, Copy, Debug)]
pub struct WitnessSpec {
    pub h: &'static str,
    pub g: &'static str,
    /// Class tuple in field order (l, r, tr, tl, a1, k1, be, bs, ke, ks,
    /// a2, k2).
    pub class: [&'static str; 12],
}

/// One row of the classification: parameterized datum tuple, parameter
/// constraints, and the witness lines (first the general equivalence,
/// then the scale-one cohomologous line when the row has one).
#[derive(Clone, Copy, Debug)]
pub struct FlagRowSpec {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub constraints: &'static [RowConstraint],
    pub tuple: [&'static str; 12],
    pub witnesses: &'static [WitnessSpec],
    pub note: Option<&'static str>,
}

const ROW18_NOTE: &str = "the auxiliary parameter a0 defines the cocycle entry as \
3*a2^2/4 + a0^2 and scales the witness; this fixture treats a0 as an independent \
parameter of the family";

/// All rows, sign variants split into their own entries.
pub fn rows() -> &'static [FlagRowSpec] {
    const Z: &str = "0";
    &[
        FlagRowSpec {
            id: "1",
            params: &["tr", "ke", "ks", "k2"],
            constraints: &[],
            tuple: ["0", "0", "tr", "tr", "tr*tr", "0", "-tr*ke", "-tr*ks", "ke", "ks", "(1-k2)*tr", "k2"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-tr",
                class: [Z, Z, Z, Z, Z, Z, Z, Z, "ke", "ks", Z, "k2"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "2",
            params: &["tr", "k1", "k2"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["0", "0", "tr", "tr", "(tr-k1)*tr", "k1", Z, Z, Z, Z, "(1-k2)*tr", "k2"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-tr/k1", class: [Z, Z, Z, Z, Z, "1", Z, Z, Z, Z, Z, "k2"] },
                WitnessSpec { h: "1", g: "-tr", class: [Z, Z, Z, Z, Z, "k1", Z, Z, Z, Z, Z, "k2"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "3a",
            params: &["tr", "k1"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["0", "0", "tr", "tr", "(tr-k1)*tr", "k1", "l*k1", "l*k1", Z, Z, Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-tr/k1", class: [Z, Z, Z, Z, Z, "1", "l", "l", Z, Z, Z, "1"] },
                WitnessSpec { h: "1", g: "-tr", class: [Z, Z, Z, Z, Z, "k1", "l*k1", "l*k1", Z, Z, Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "3b",
            params: &["tr", "k1"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["0", "0", "tr", "tr", "(tr-k1)*tr", "k1", "l*k1", "-l*k1", Z, Z, Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-tr/k1", class: [Z, Z, Z, Z, Z, "1", "l", "-l", Z, Z, Z, "1"] },
                WitnessSpec { h: "1", g: "-tr", class: [Z, Z, Z, Z, Z, "k1", "l*k1", "-l*k1", Z, Z, Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "4",
            params: &["tr", "k1", "k2"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["0", "0", "tr", "tr", "(tr-k1)*tr", "k1", "l*tr", "l*tr", "-l", "-l", "(1-k2)*tr", "k2"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-tr/k1", class: [Z, Z, Z, Z, Z, "1", Z, Z, "-l", "-l", Z, "k2"] },
                WitnessSpec { h: "1", g: "-tr", class: [Z, Z, Z, Z, Z, "k1", Z, Z, "-l", "-l", Z, "k2"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "5a",
            params: &["tr", "k1"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["0", "0", "tr", "tr", "(tr-k1)*tr", "k1", "l*tr-k1*l", "l*tr+k1*l", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-tr/k1", class: [Z, Z, Z, Z, Z, "1", "-l", "l", "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-tr", class: [Z, Z, Z, Z, Z, "k1", "-l*k1", "l*k1", "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "5b",
            params: &["tr", "k1"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["0", "0", "tr", "tr", "(tr-k1)*tr", "k1", "l*tr-k1*l", "l*tr-k1*l", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-tr/k1", class: [Z, Z, Z, Z, Z, "1", "-l", "-l", "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-tr", class: [Z, Z, Z, Z, Z, "k1", "-l*k1", "-l*k1", "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "6",
            params: &["tl", "k2"],
            constraints: &[RowConstraint::NonZero("k2")],
            tuple: ["0", "k2", "(1-k2)*tl", "tl", "(1-k2)*tl*tl", "k2*tl", Z, Z, Z, Z, "(1-k2)*tl", "k2"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-tl",
                class: [Z, "k2", Z, Z, Z, Z, Z, Z, Z, Z, Z, "k2"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "7",
            params: &["tl", "k2"],
            constraints: &[RowConstraint::NonZero("k2"), RowConstraint::NotEqualInt("k2", 1)],
            tuple: ["0", "k2", "(1-k2)*tl", "tl", "(1-k2)*tl*tl", "k2*tl", "l*tl", "l*tl", "-l", "-l", "(1-k2)*tl", "k2"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-tl",
                class: [Z, "k2", Z, Z, Z, Z, Z, Z, "-l", "-l", Z, "k2"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "8",
            params: &["tl", "b0"],
            constraints: &[RowConstraint::NonZero("b0")],
            tuple: ["0", "1", "0", "tl", "0", "tl", "l*tl+b0", "l*tl+b0", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/b0", g: "-tl/b0", class: [Z, "1", Z, Z, Z, Z, "1", "1", "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-tl", class: [Z, "1", Z, Z, Z, Z, "b0", "b0", "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "9",
            params: &["tl", "b0"],
            constraints: &[RowConstraint::NonZero("b0")],
            tuple: ["0", "1", "0", "tl", "0", "tl", "l*tl+b0", "l*tl", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/b0", g: "-tl/b0", class: [Z, "1", Z, Z, Z, Z, "1", "0", "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-tl", class: [Z, "1", Z, Z, Z, Z, "b0", "0", "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "10",
            params: &["tr", "k2"],
            constraints: &[RowConstraint::NonZero("k2")],
            tuple: ["k2", "0", "tr", "(1-k2)*tr", "(1-k2)*tr*tr", "k2*tr", Z, Z, Z, Z, "(1-k2)*tr", "k2"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-tr",
                class: ["k2", Z, Z, Z, Z, Z, Z, Z, Z, Z, Z, "k2"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "11",
            params: &["tr", "k2"],
            constraints: &[RowConstraint::NonZero("k2"), RowConstraint::NotEqualInt("k2", 1)],
            tuple: ["k2", "0", "tr", "(1-k2)*tr", "(1-k2)*tr*tr", "k2*tr", "l*tr", "l*tr", "-l", "-l", "(1-k2)*tr", "k2"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-tr",
                class: ["k2", Z, Z, Z, Z, Z, Z, Z, "-l", "-l", Z, "k2"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "12",
            params: &["tr", "b0"],
            constraints: &[RowConstraint::NonZero("b0")],
            tuple: ["1", "0", "tr", "0", "0", "tr", "l*tr+b0", "l*tr", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/b0", g: "-tr/b0", class: ["1", Z, Z, Z, Z, Z, "1", "0", "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-tr", class: ["1", Z, Z, Z, Z, Z, "b0", "0", "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "13",
            params: &["tr", "b0"],
            constraints: &[RowConstraint::NonZero("b0")],
            tuple: ["1", "0", "tr", "0", "0", "tr", "l*tr+b0", "l*tr+b0", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/b0", g: "-tr/b0", class: ["1", Z, Z, Z, Z, Z, "1", "1", "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-tr", class: ["1", Z, Z, Z, Z, Z, "b0", "b0", "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "14",
            params: &["k1"],
            constraints: &[],
            tuple: ["1", "1", "0", "0", "-k1*k1/4", "k1", Z, Z, Z, Z, Z, "1"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-k1/2",
                class: ["1", "1", Z, Z, Z, Z, Z, Z, Z, Z, Z, "1"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "15",
            params: &["a1", "k1"],
            constraints: &[RowConstraint::NonZeroSquare("a1")],
            tuple: ["1", "1", "0", "0", "a1-k1*k1/4", "k1", Z, Z, Z, Z, Z, "1"],
            witnesses: &[
                WitnessSpec {
                    h: "1/sqrt(a1)",
                    g: "-k1/(2*sqrt(a1))",
                    class: ["1", "1", Z, Z, "1", Z, Z, Z, Z, Z, Z, "1"],
                },
                WitnessSpec {
                    h: "1",
                    g: "-k1/2",
                    class: ["1", "1", Z, Z, "a1", Z, Z, Z, Z, Z, Z, "1"],
                },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "16",
            params: &["b0"],
            constraints: &[],
            tuple: ["1", "1", "0", "0", "-b0*b0", "2*b0", "l*b0", "l*b0", "-l", "-l", Z, "1"],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-b0",
                class: ["1", "1", Z, Z, Z, Z, Z, Z, "-l", "-l", Z, "1"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "17",
            params: &["b0", "k1"],
            constraints: &[RowConstraint::NonZero("k1")],
            tuple: ["1", "1", "0", "0", "-b0*(b0+k1)", "k1+2*b0", "l*b0", "l*b0", "-l", "-l", Z, "1"],
            witnesses: &[
                WitnessSpec { h: "1/k1", g: "-b0/k1", class: ["1", "1", Z, Z, Z, "1", Z, Z, "-l", "-l", Z, "1"] },
                WitnessSpec { h: "1", g: "-b0", class: ["1", "1", Z, Z, Z, "k1", Z, Z, "-l", "-l", Z, "1"] },
            ],
            note: None,
        },
        FlagRowSpec {
            id: "18",
            params: &["a2", "a0"],
            constraints: &[RowConstraint::NonZero("a0")],
            tuple: ["-1", "-1", "a2", "a2", "3*a2*a2/4+a0*a0", "-a2", Z, Z, Z, Z, "a2", "-1"],
            witnesses: &[
                WitnessSpec {
                    h: "1/a0",
                    g: "-a2/(2*a0)",
                    class: ["-1", "-1", Z, Z, "1", Z, Z, Z, Z, Z, Z, "-1"],
                },
                WitnessSpec {
                    h: "1",
                    g: "-a2/2",
                    class: ["-1", "-1", Z, Z, "a0*a0", Z, Z, Z, Z, Z, Z, "-1"],
                },
            ],
            note: Some(ROW18_NOTE),
        },
        FlagRowSpec {
            id: "19",
            params: &["a2", "k2"],
            constraints: &[
                RowConstraint::NonZero("k2"),
                RowConstraint::NotEqualInt("k2", 1),
                RowConstraint::NotEqualInt("k2", -1),
            ],
            tuple: [
                "k2", "k2", "a2", "a2",
                "(1-2*k2)*a2*a2/((1-k2)*(1-k2))",
                "2*k2*a2/(1-k2)",
                Z, Z, Z, Z, "a2", "k2",
            ],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-a2/(1-k2)",
                class: ["k2", "k2", Z, Z, Z, Z, Z, Z, Z, Z, Z, "k2"],
            }],
            note: None,
        },
        FlagRowSpec {
            id: "20",
            params: &["a2", "k2"],
            constraints: &[RowConstraint::NonZero("k2"), RowConstraint::NotEqualInt("k2", 1)],
            tuple: [
                "k2", "k2", "a2", "a2",
                "(1-2*k2)*a2*a2/((1-k2)*(1-k2))",
                "2*k2*a2/(1-k2)",
                "l*a2/(1-k2)", "l*a2/(1-k2)", "-l", "-l", "a2", "k2",
            ],
            witnesses: &[WitnessSpec {
                h: "1",
                g: "-a2/(1-k2)",
                class: ["k2", "k2", Z, Z, Z, Z, Z, Z, "-l", "-l", Z, "k2"],
            }],
            note: None,
        },
    ]
}

/// Resolve a row id; the bare ids `3` and `5` are aliases for the plus
/// sign variants.
pub fn row_by_id(id: &str) -> Result<&'static FlagRowSpec, RowError> {
    let id = match id {
        "3" => "3a",
        "5" => "5a",
        other => other,
    };
    rows()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| RowError::UnknownRow(id.to_string()))
}

/// The twenty-four ids the command line accepts: `1`..`20` plus the four
/// explicit sign variants.
pub fn cli_row_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for n in 1..=20 {
        ids.push(n.to_string());
        if n == 3 || n == 5 {
            ids.push(format!("{n}a"));
            ids.push(format!("{n}b"));
        }
    }
    ids
}

// Tiny expression language for row fixtures: identifiers are row
// parameters, `l` is the field indeterminate, `sqrt` demands an exact
// square. Distinct from the scalar literal grammar, which has no names.
fn eval_expr(src: &str, params: &Params) -> Result<Scalar, RowError> {
    let mut p = ExprParser { src, chars: src.char_indices().peekable(), params };
    let v = p.expr()?;
    p.skip_ws();
    if p.chars.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    params: &'a Params,
}

impl<'a> ExprParser<'a> {
    fn err(&self, what: &str) -> RowError {
        RowError::Expr { src: self.src.to_string(), what: what.to_string() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if matches!(self.chars.peek(), Some((_, c)) if *c == want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, RowError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, RowError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let rhs = self.factor()?;
                acc = acc.div(&rhs, self.src).map_err(|e| self.err(&e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, RowError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.number()?;
            let e: u32 = e.parse().map_err(|_| self.err("exponent must be a small integer"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<String, RowError> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap().1);
        }
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        Ok(digits)
    }

    fn atom(&mut self) -> Result<Scalar, RowError> {
        self.skip_ws();
        match self.chars.peek().copied() {
            Some((_, '(')) => {
                self.chars.next();
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let digits = self.number()?;
                let n: i64 = digits.parse().map_err(|_| self.err("number too large"))?;
                Ok(Scalar::from_int(n))
            }
            Some((_, c)) if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_alphanumeric() || *c == '_')
                {
                    name.push(self.chars.next().unwrap().1);
                }
                if name == "l" {
                    return Ok(Scalar::lambda());
                }
                if name == "sqrt" {
                    if !self.eat('(') {
                        return Err(self.err("sqrt needs parentheses"));
                    }
                    let v = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.err("expected ')'"));
                    }
                    return v.sqrt().ok_or_else(|| self.err("argument is not an exact square"));
                }
                self.params
                    .get(&name)
                    .cloned()
                    .ok_or_else(|| RowError::MissingParam(name))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

/// Instantiate a row tuple into a flag datum over the reference base.
pub fn instantiate_tuple(
    base: &HomAlgebra,
    tuple: &[&str; 12],
    params: &Params,
) -> Result<FlagDatum, RowError> {
    let v: Vec<Scalar> = tuple
        .iter()
        .map(|src| eval_expr(src, params))
        .collect::<Result<_, _>>()?;
    let fd = FlagDatum::new(
        base.clone(),
        vec![v[0].clone()],
        vec![v[1].clone()],
        Matrix::from_cols(&[vec![v[2].clone()]]),
        Matrix::from_cols(&[vec![v[3].clone()]]),
        vec![v[4].clone()],
        v[5].clone(),
        vec![vec![v[6].clone()], vec![v[7].clone()]],
        vec![v[8].clone(), v[9].clone()],
        vec![v[10].clone()],
        v[11].clone(),
    )?;
    Ok(fd)
}

/// The base every row lives over: must match the one-dimensional
/// reference algebra exactly.
pub fn reference_base() -> HomAlgebra {
    sample::base_r()
}

pub fn ensure_reference_base(base: &HomAlgebra) -> Result<(), RowError> {
    if *base != reference_base() {
        return Err(RowError::WrongBase);
    }
    Ok(())
}

/// Check every constraint of a row against an instantiation.
pub fn verify_row_constraints(spec: &FlagRowSpec, params: &Params) -> Result<(), RowError> {
    for c in spec.constraints {
        c.check(params)?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub report: Report,
    pub notes: Vec<String>,
}

/// Verify one instantiated row: the flag datum and every class
/// representative pass the twenty-one conditions, and each witness line
/// carries the class representative onto the row datum through the seven
/// equivalence conditions.
pub fn verify_table2_row(spec: &FlagRowSpec, params: &Params) -> Result<RowOutcome, RowError> {
    for c in spec.constraints {
        c.check(params)?;
    }
    for p in spec.params {
        if !params.contains_key(*p) {
            return Err(RowError::MissingParam((*p).to_string()));
        }
    }
    let base = reference_base();
    let mut report = Report::new();
    let mut notes = Vec::new();
    if let Some(note) = spec.note {
        notes.push(note.to_string());
    }
    let row_fd = instantiate_tuple(&base, &spec.tuple, params)?;
    report.merge_relabel(row_fd.check_flag()?, |lbl| format!("row:{lbl}"));
    let row_datum = row_fd.to_datum("x");
    for (i, wspec) in spec.witnesses.iter().enumerate() {
        let class_fd = instantiate_tuple(&base, &wspec.class, params)?;
        report.merge_relabel(class_fd.check_flag()?, |lbl| format!("class{}:{lbl}", i + 1));
        let h = eval_expr(wspec.h, params)?;
        let g = eval_expr(wspec.g, params)?;
        let witness = EquivWitness {
            g: Matrix::from_cols(&[vec![g]]),
            h: Matrix::from_cols(&[vec![h.clone()]]),
        };
        let outcome = check_datum_equivalence(&class_fd.to_datum("x"), &row_datum, &witness)?;
        report.merge_relabel(outcome.report, |lbl| format!("w{}:{lbl}", i + 1));
        if h.is_one() && !outcome.cohomologous {
            notes.push(format!("witness {} expected to be cohomologous", i + 1));
        }
    }
    Ok(RowOutcome { report, notes })
}

/// Draw a constraint-respecting instantiation from the small-value pool.
pub fn random_instantiation(spec: &FlagRowSpec, rng: &mut ChaCha8Rng) -> Params {
    let mut params = Params::new();
    for name in spec.params {
        let needs_square = spec
            .constraints
            .iter()
            .any(|c| matches!(c, RowConstraint::NonZeroSquare(p) if p == name));
        loop {
            let v = if needs_square {
                let q = sample::draw_from_pool(rng);
                &q * &q
            } else {
                sample::draw_from_pool(rng)
            };
            params.insert((*name).to_string(), v);
            let broken_here = spec.constraints.iter().any(|c| {
                let relevant = match c {
                    RowConstraint::NonZero(p)
                    | RowConstraint::NotEqualInt(p, _)
                    | RowConstraint::NonZeroSquare(p) => p == name,
                };
                relevant && c.check(&params).is_err()
            });
            if !broken_here {
                break;
            }
        }
    }
    params
}
