//! Exact arithmetic in the rational function field Q(lambda).
//!
//! Three layers: arbitrary-precision rationals ([`Rat`]), univariate
//! polynomials over Q ([`Poly`], indeterminate written `l` in text form),
//! and reduced rational functions ([`Scalar`]). Every value is kept in a
//! canonical form so that equality is structural: polynomials trim
//! trailing zeros, scalars are fully reduced with a monic denominator and
//! zero represented as 0/1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary-precision rational number; always stored reduced with a
/// positive denominator.
pub type Rat = BigRational;

/// Degree cap for all polynomial arithmetic. Everything in scope stays
/// below degree 6; hitting the cap means a runaway symbolic computation.
pub const MAX_DEGREE: usize = 64;

/// Shorthand for building a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero in {site}")]
    DivisionByZero { site: String },
    #[error("pole at lambda = {at}: denominator vanishes")]
    Pole { at: String },
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(v: &Rat) -> Option<Rat> {
    if v.is_negative() {
        return None;
    }
    let ns = v.numer().sqrt();
    let ds = v.denom().sqrt();
    if &(&ns * &ns) == v.numer() && &(&ds * &ds) == v.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Univariate polynomial over Q with dense coefficients; index i holds the
/// coefficient of lambda^i. Invariant: the top coefficient is nonzero
/// (zero polynomial has an empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The indeterminate lambda.
    pub fn lambda() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// c * lambda^k.
    pub fn monomial(c: Rat, k: usize) -> Poly {
        assert!(k <= MAX_DEGREE, "polynomial degree cap ({MAX_DEGREE}) exceeded");
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    fn scaled(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scaled(&lc.recip()),
        }
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[k + i] -= t;
                }
                quo[k] = c;
            }
            // Top term is eliminated by construction.
            rem.pop();
            while rem.last().is_some_and(Rat::is_zero) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Monic gcd over the polynomial ring via the Euclidean algorithm.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact square root within the polynomial ring, when it exists.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let deg = self.degree().unwrap();
        if deg % 2 != 0 {
            return None;
        }
        let lc = rat_sqrt(self.leading().unwrap())?;
        let half = deg / 2;
        // Solve for the coefficients of the root from the top down; the
        // coefficient of lambda^(half+k) in root^2 is linear in root[k].
        let mut root = vec![Rat::zero(); half + 1];
        root[half] = lc.clone();
        let two_lc = &lc + &lc;
        for k in (0..half).rev() {
            // Known part of the coefficient of lambda^(half+k).
            let mut acc = Rat::zero();
            for i in (k + 1)..=half {
                let j = half + k - i;
                if j > half || j <= k {
                    continue;
                }
                acc += &root[i] * &root[j];
            }
            let target = &self.coeffs[half + k];
            root[k] = (target - acc) / &two_lc;
        }
        let cand = Poly::new(root);
        if &(&cand * &cand) == self {
            Some(cand)
        } else {
            None
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let da = self.coeffs.len() - 1;
        let db = rhs.coeffs.len() - 1;
        assert!(
            da + db <= MAX_DEGREE,
            "polynomial degree cap ({MAX_DEGREE}) exceeded: {da} + {db}"
        );
        let mut out = vec![Rat::zero(); da + db + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", render_poly(self))
    }
}

/// Element of Q(lambda) in canonical form: num/den fully reduced, den
/// monic and nonzero, zero stored as 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn reduce(num: Poly, den: Poly) -> Scalar {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar { num: Poly::zero(), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().unwrap().recip();
        Scalar { num: num.scaled(&lc), den: den.scaled(&lc) }
    }

    /// Build num/den, reducing to canonical form.
    pub fn ratio(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero { site: "scalar construction".into() });
        }
        Ok(Scalar::reduce(num, den))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn from_rat(c: Rat) -> Scalar {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(rint(n))
    }

    pub fn zero() -> Scalar {
        Scalar::from_poly(Poly::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn lambda() -> Scalar {
        Scalar::from_poly(Poly::lambda())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    /// Whether the top coefficient of the numerator is negative; decides
    /// the sign a serializer should hoist out.
    pub fn is_leading_negative(&self) -> bool {
        self.num.leading().is_some_and(Signed::is_negative)
    }

    pub fn div(&self, rhs: &Scalar, site: &str) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero { site: site.to_string() });
        }
        Ok(Scalar::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn inv(&self, site: &str) -> Result<Scalar, ScalarError> {
        Scalar::one().div(self, site)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Specialize lambda to a rational point.
    pub fn eval(&self, v: &Rat) -> Result<Rat, ScalarError> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(ScalarError::Pole { at: v.to_string() });
        }
        Ok(self.num.eval(v) / d)
    }

    /// Exact square root within Q(lambda), when it exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        // num and den are coprime, so both must be squares up to the unit
        // hidden in num's leading coefficient; den is monic already.
        let sn = self.num.sqrt()?;
        let sd = self.den.sqrt()?;
        Some(Scalar::reduce(sn, sd))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        // Polynomial fast path; checker workloads stay denominator-free.
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num + &rhs.num, den: Poly::one() };
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num - &rhs.num, den: Poly::one() };
        }
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        Scalar::reduce(num, &self.den * &rhs.den)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: &self.num * &rhs.num, den: Poly::one() };
        }
        Scalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn render_rat(c: &Rat) -> String {
    c.to_string()
}

/// Render a polynomial in the scalar literal grammar, terms in descending
/// degree, no whitespace. The first term carries its sign inside the
/// rational; later negative terms are joined with `-`.
fn render_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for k in (0..p.coeffs().len()).rev() {
        let c = &p.coeffs()[k];
        if c.is_zero() {
            continue;
        }
        let (sep, shown) = if first {
            (String::new(), c.clone())
        } else if c.is_negative() {
            ("-".to_string(), -c)
        } else {
            ("+".to_string(), c.clone())
        };
        let term = if k == 0 {
            render_rat(&shown)
        } else {
            let mono = if k == 1 { "l".to_string() } else { format!("l^{k}") };
            if shown.is_one() {
                mono
            } else {
                format!("{}*{}", render_rat(&shown), mono)
            }
        };
        out.push_str(&sep);
        out.push_str(&term);
        first = false;
    }
    out
}

impl fmt::Display for Scalar {
    /// Canonical literal form: `poly` or `(poly)/(poly)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_zero() || self.den == Poly::one() {
            write!(f, "{}", render_poly(&self.num))
        } else {
            write!(f, "({})/({})", render_poly(&self.num), render_poly(&self.den))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn lam() -> Scalar {
        Scalar::lambda()
    }

    #[test]
    fn rational_sum() {
        let a = Scalar::from_rat(rat(1, 2));
        let b = Scalar::from_rat(rat(1, 3));
        assert_eq!(&a + &b, Scalar::from_rat(rat(5, 6)));
    }

    #[test]
    fn lambda_cancels() {
        let z = &lam() + &(-&lam());
        assert!(z.is_zero());
        assert_eq!(z, Scalar::zero());
        assert_eq!(z.num(), &Poly::zero());
        assert_eq!(z.den(), &Poly::one());
    }

    #[test]
    fn sum_of_simple_poles() {
        // 1/l + 1/(l+1) = (2l+1)/(l^2+l), cross-checked by evaluation.
        let a = Scalar::one().div(&lam(), "test").unwrap();
        let b = Scalar::one()
            .div(&(&lam() + &s(1)), "test")
            .unwrap();
        let sum = &a + &b;
        let expect = Scalar::ratio(
            Poly::new(vec![rint(1), rint(2)]),
            Poly::new(vec![rint(0), rint(1), rint(1)]),
        )
        .unwrap();
        assert_eq!(sum, expect);
        for v in [rint(2), rint(3), rint(5)] {
            let lhs = sum.eval(&v).unwrap();
            let rhs = a.eval(&v).unwrap() + b.eval(&v).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_and_monomials() {
        assert!((&lam() * &lam().inv("test").unwrap()).is_one());
        let prod = &(&s(3) * &lam()) * &(-&lam());
        assert_eq!(prod, Scalar::from_poly(Poly::monomial(rint(-3), 2)));
    }

    #[test]
    fn gcd_cancellation_on_construction() {
        // (l^2-1)/(l+1) -> l-1
        let num = Poly::new(vec![rint(-1), rint(0), rint(1)]);
        let den = Poly::new(vec![rint(1), rint(1)]);
        let v = Scalar::ratio(num, den).unwrap();
        assert_eq!(v, &lam() - &s(1));
        for p in [rat(3, 1), rat(1, 2), rat(-5, 3)] {
            assert_eq!(v.eval(&p).unwrap(), &p - rint(1));
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!((-&lam()).eval(&rint(2)).unwrap(), rint(-2));
        assert_eq!(Scalar::one().eval(&rat(7, 3)).unwrap(), rint(1));
        let v = Scalar::ratio(
            Poly::new(vec![rint(1), rint(2)]),
            Poly::new(vec![rint(0), rint(1), rint(1)]),
        )
        .unwrap();
        assert_eq!(v.eval(&rint(1)).unwrap(), rat(3, 2));
        assert!(matches!(v.eval(&rint(0)), Err(ScalarError::Pole { .. })));
        assert!(matches!(v.eval(&rint(-1)), Err(ScalarError::Pole { .. })));
    }

    #[test]
    fn division_by_zero_names_site() {
        let err = s(1).div(&Scalar::zero(), "scalar_div").unwrap_err();
        assert_eq!(err.to_string(), "division by zero in scalar_div");
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let a = Scalar::ratio(
            Poly::new(vec![rint(2), rint(1)]),
            Poly::new(vec![rint(-1), rint(1)]),
        )
        .unwrap();
        let b = &lam() + &Scalar::from_rat(rat(1, 2));
        let p = rint(4);
        assert_eq!(
            (&a * &b).eval(&p).unwrap(),
            a.eval(&p).unwrap() * b.eval(&p).unwrap()
        );
    }

    #[test]
    fn canonical_forms_compare_equal() {
        // Same function built from different representatives.
        let a = Scalar::ratio(
            Poly::new(vec![rint(0), rint(2), rint(2)]),
            Poly::new(vec![rint(0), rint(0), rint(2)]),
        )
        .unwrap();
        let b = Scalar::ratio(Poly::new(vec![rint(1), rint(1)]), Poly::lambda()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn poly_sqrt() {
        let p = Poly::new(vec![rint(1), rint(2), rint(1)]); // (l+1)^2
        assert_eq!(p.sqrt().unwrap(), Poly::new(vec![rint(1), rint(1)]));
        let q = Poly::new(vec![rint(2), rint(0), rint(1)]);
        assert!(q.sqrt().is_none());
        let c = Poly::constant(rat(9, 4));
        assert_eq!(c.sqrt().unwrap(), Poly::constant(rat(3, 2)));
        assert!(Poly::constant(rint(-4)).sqrt().is_none());
        let s4 = Scalar::ratio(
            Poly::new(vec![rint(0), rint(0), rint(4)]),
            Poly::new(vec![rint(1), rint(2), rint(1)]),
        )
        .unwrap();
        let r = s4.sqrt().unwrap();
        assert_eq!(&r * &r, s4);
    }

    #[test]
    fn display_matches_literal_grammar() {
        assert_eq!(s(0).to_string(), "0");
        assert_eq!((-&lam()).to_string(), "-1*l");
        assert_eq!((&lam() - &s(1)).to_string(), "l-1");
        assert_eq!(
            Scalar::ratio(
                Poly::new(vec![rint(1), rint(2)]),
                Poly::new(vec![rint(0), rint(1), rint(1)]),
            )
            .unwrap()
            .to_string(),
            "(2*l+1)/(l^2+l)"
        );
        assert_eq!(Scalar::from_rat(rat(-3, 2)).to_string(), "-3/2");
        assert_eq!(
            (&(&s(3) * &lam()) * &(-&lam())).to_string(),
            "-3*l^2"
        );
    }

    #[test]
    #[should_panic(expected = "degree cap")]
    fn degree_cap_is_enforced() {
        let big = Poly::monomial(rint(1), 40);
        let _ = &big * &big;
    }

    #[test]
    fn field_axioms_seeded() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5ca1ab1e);
        let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Scalar {
            let n = Poly::new((0..rng.random_range(0..3)).map(|_| rint(rng.random_range(-4..5))).collect());
            let mut d;
            loop {
                d = Poly::new((0..rng.random_range(1..3)).map(|_| rint(rng.random_range(-4..5))).collect());
                if !d.is_zero() {
                    break;
                }
            }
            Scalar::ratio(n, d).unwrap()
        };
        for _ in 0..200 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let c = sample(&mut rng);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &(-&a), Scalar::zero());
            if !a.is_zero() {
                assert!((&a * &a.inv("axiom").unwrap()).is_one());
            }
        }
    }
}
