//! Exact arithmetic in the cubic field Q(rho), rho the plastic number.
//!
//! Elements are stored on the fixed basis {1, rho, rho^2} of
//! Q[x]/(x^3 - x - 1) with arbitrary-precision rational coefficients, so
//! equality is componentwise and zero-testing is O(1). The real root
//! alpha = -rho of the dual cubic x^3 - x + 1 lives in the same field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; `BigRational` keeps the denominator
/// positive and the fraction reduced on construction.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Element `c0 + c1*rho + c2*rho^2` of Q(rho).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
}

impl FieldElem {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        FieldElem { c0, c1, c2 }
    }

    pub fn zero() -> Self {
        FieldElem::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        FieldElem::new(Rational::one(), Rational::zero(), Rational::zero())
    }

    /// The plastic number rho, root of x^3 - x - 1.
    pub fn rho() -> Self {
        FieldElem::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    /// alpha = -rho, the real root of the dual cubic x^3 - x + 1.
    pub fn alpha() -> Self {
        -&FieldElem::rho()
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_rational(rat(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        FieldElem::new(r, Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero() && self.c2.is_zero()
    }

    /// Some(r) when the element lies in the rational subfield.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c1.is_zero() && self.c2.is_zero() {
            Some(&self.c0)
        } else {
            None
        }
    }

    /// Multiplicative inverse, by solving the 3x3 multiplication matrix
    /// against e1 (Cramer). The determinant is the field norm, nonzero
    /// for every nonzero element since x^3 - x - 1 is irreducible over Q.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a0, a1, a2) = (&self.c0, &self.c1, &self.c2);
        let a0a2 = a0 + a2;
        let det = a0 * (&a0a2 * &a0a2 - a1 * (a1 + a2)) - a2 * (a1 * &a0a2 - a2 * (a1 + a2))
            + a1 * (a1 * a1 - a2 * &a0a2);
        debug_assert!(!det.is_zero(), "norm of a nonzero element must be nonzero");
        let x0 = (&a0a2 * &a0a2 - a1 * (a1 + a2)) / &det;
        let x1 = -(a1 * &a0a2 - a2 * (a1 + a2)) / &det;
        let x2 = (a1 * a1 - a2 * &a0a2) / &det;
        Ok(FieldElem::new(x0, x1, x2))
    }

    pub fn pow(&self, n: u32) -> FieldElem {
        let mut acc = FieldElem::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Real embedding: evaluate at the real root of x^3 - x - 1.
    pub fn embed(&self) -> f64 {
        let r = rho_f64();
        rational_to_f64(&self.c0) + rational_to_f64(&self.c1) * r + rational_to_f64(&self.c2) * r * r
    }

    /// Parse the textual form, e.g. `"1/2 + 3*rho - rho^2"`, `"-rho"`, `"5"`.
    pub fn parse(src: &str) -> Result<FieldElem> {
        crate::parse::parse_field_elem(src)
    }
}

/// Real root of x^3 - x - 1 to full double precision (Newton).
pub fn rho_f64() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let mut x = 1.3_f64;
        for _ in 0..32 {
            let next = x - (x * x * x - x - 1.0) / (3.0 * x * x - 1.0);
            if next == x {
                break;
            }
            x = next;
        }
        x
    })
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on a quotient of approximations for huge operands.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.c0 + &rhs.c0, &self.c1 + &rhs.c1, &self.c2 + &rhs.c2)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::new(&self.c0 - &rhs.c0, &self.c1 - &rhs.c1, &self.c2 - &rhs.c2)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(-&self.c0, -&self.c1, -&self.c2)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    /// Product reduced modulo rho^3 = rho + 1 (and rho^4 = rho^2 + rho).
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let (a0, a1, a2) = (&self.c0, &self.c1, &self.c2);
        let (b0, b1, b2) = (&rhs.c0, &rhs.c1, &rhs.c2);
        let cross = a1 * b2 + a2 * b1; // coefficient of rho^3
        let top = a2 * b2; // coefficient of rho^4
        FieldElem::new(
            a0 * b0 + &cross,
            a0 * b1 + a1 * b0 + &cross + &top,
            a0 * b2 + a1 * b1 + a2 * b0 + &top,
        )
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElem {
    /// Canonical textual form: `c0 + c1*rho + c2*rho^2`, zero terms omitted,
    /// unit coefficients on rho powers contracted (`rho`, `-rho^2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, &str)> = Vec::new();
        if !self.c0.is_zero() {
            parts.push((self.c0.clone(), ""));
        }
        if !self.c1.is_zero() {
            parts.push((self.c1.clone(), "rho"));
        }
        if !self.c2.is_zero() {
            parts.push((self.c2.clone(), "rho^2"));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (coef, sym)) in parts.iter().enumerate() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if sym.is_empty() {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{}*{sym}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_inverse_cancels() {
        let rho = FieldElem::rho();
        assert!((&rho + &-&rho).is_zero());
    }

    #[test]
    fn disjoint_components_add() {
        let a = &FieldElem::one() + &FieldElem::rho();
        let b = FieldElem::new(rat(0), rat(0), rat(1));
        assert_eq!(&a + &b, FieldElem::new(rat(1), rat(1), rat(1)));
    }

    #[test]
    fn rho_squared_doubles() {
        let r2 = FieldElem::new(rat(0), rat(0), rat(1));
        assert_eq!(&r2 + &r2, FieldElem::new(rat(0), rat(0), rat(2)));
    }

    #[test]
    fn defining_relation_reduces() {
        // rho * rho^2 = rho^3 = 1 + rho
        let rho = FieldElem::rho();
        let r2 = &rho * &rho;
        assert_eq!(&rho * &r2, FieldElem::new(rat(1), rat(1), rat(0)));
    }

    #[test]
    fn rho_times_rho_squared_minus_one_is_one() {
        let rho = FieldElem::rho();
        let j_inv = &(&rho * &rho) - &FieldElem::one();
        assert!((&rho * &j_inv).is_one());
    }

    #[test]
    fn alpha_satisfies_dual_cubic() {
        let a = FieldElem::alpha();
        let res = &(&(&a * &a) * &a) - &a;
        assert_eq!(res, FieldElem::from_int(-1)); // a^3 - a = -1
    }

    #[test]
    fn rho_satisfies_plastic_cubic() {
        let r = FieldElem::rho();
        let res = &(&(&(&r * &r) * &r) - &r) - &FieldElem::one();
        assert!(res.is_zero());
    }

    #[test]
    fn inverse_of_rho() {
        let inv = FieldElem::rho().inv().unwrap();
        assert_eq!(inv, FieldElem::new(rat(-1), rat(0), rat(1))); // rho^2 - 1
    }

    #[test]
    fn inverse_of_one() {
        assert!(FieldElem::one().inv().unwrap().is_one());
    }

    #[test]
    fn inverse_round_trip() {
        let x = FieldElem::new(rat(-1), rat(0), rat(1)); // rho^2 - 1
        assert_eq!(x.inv().unwrap(), FieldElem::rho());
    }

    #[test]
    fn inverse_of_zero_rejected() {
        assert_eq!(FieldElem::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embed_rho_matches_radical_formula() {
        // rho = cbrt((9+sqrt(69))/18) + cbrt((9-sqrt(69))/18)
        let s = 69f64.sqrt();
        let radical = ((9.0 + s) / 18.0).cbrt() + ((9.0 - s) / 18.0).cbrt();
        assert!((FieldElem::rho().embed() - radical).abs() < 1e-12);
        assert!((FieldElem::rho().embed() - 1.3247179572447).abs() < 1e-10);
    }

    #[test]
    fn embed_zero_and_reduced_cubic() {
        assert_eq!(FieldElem::zero().embed(), 0.0);
        let r = FieldElem::rho();
        let residual = &(&(&(&r * &r) * &r) - &r) - &FieldElem::one();
        // reduces symbolically, so the embedding is exactly 0.0
        assert_eq!(residual.embed(), 0.0);
    }

    #[test]
    fn display_round_trips_common_forms() {
        for s in ["0", "1", "-rho", "rho", "1 - rho^2", "1/2 + 3*rho"] {
            let v = FieldElem::parse(s).unwrap();
            assert_eq!(FieldElem::parse(&v.to_string()).unwrap(), v);
        }
    }
}
