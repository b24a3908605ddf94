//! Multivariate polynomials and rational functions over Q(rho).
//!
//! These are the component rings for every tensor field on a chart.
//! Polynomials use a sparse exponent-vector representation with no stored
//! zero coefficients, so structural equality is semantic equality.
//! Rational functions are unreduced num/den pairs: no multivariate gcd is
//! attempted, equality is exact cross-multiplication, and a cheap exact
//! division is tried on construction to keep denominators from piling up.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numberfield::FieldElem;

/// Sparse polynomial in `arity` variables with Q(rho) coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Vec<u32>, FieldElem>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Polynomial::constant(arity, FieldElem::one())
    }

    pub fn constant(arity: usize, value: FieldElem) -> Self {
        let mut p = Polynomial::zero(arity);
        if !value.is_zero() {
            p.terms.insert(vec![0; arity], value);
        }
        p
    }

    /// The coordinate monomial x_{index+1} (indices are 0-based).
    pub fn var(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        let mut expo = vec![0u32; arity];
        expo[index] = 1;
        let mut p = Polynomial::zero(arity);
        p.terms.insert(expo, FieldElem::one());
        Ok(p)
    }

    pub fn monomial(arity: usize, expo: Vec<u32>, coef: FieldElem) -> Self {
        debug_assert_eq!(expo.len(), arity);
        let mut p = Polynomial::zero(arity);
        if !coef.is_zero() {
            p.terms.insert(expo, coef);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElem)> {
        self.terms.iter()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero()),
            1 => {
                let (expo, coef) = self.terms.iter().next().unwrap();
                if expo.iter().all(|&e| e == 0) {
                    Some(coef.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, FieldElem>, expo: Vec<u32>, coef: FieldElem) {
        if coef.is_zero() {
            return;
        }
        match terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, k: &FieldElem) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), c * k);
        }
        Polynomial { arity: self.arity, terms }
    }

    /// Formal partial derivative with respect to coordinate `index`.
    pub fn partial(&self, index: usize) -> Result<Polynomial> {
        if index >= self.arity {
            return Err(Error::IndexOutOfRange {
                index,
                arity: self.arity,
            });
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut expo = e.clone();
            expo[index] = k - 1;
            Self::insert_term(&mut terms, expo, c * &FieldElem::from_int(k as i64));
        }
        Ok(Polynomial { arity: self.arity, terms })
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut acc = FieldElem::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                term = &term * &point[i].pow(k);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Numeric evaluation through the real embedding; advisory only.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = c.embed();
            for (i, &k) in e.iter().enumerate() {
                term *= point[i].powi(k as i32);
            }
            acc += term;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Leading (exponent, coefficient) under lex order; None for zero.
    fn leading(&self) -> Option<(&Vec<u32>, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Exact multivariate division: Some(q) iff `self == q * den`.
    pub fn try_div_exact(&self, den: &Polynomial) -> Option<Polynomial> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero(self.arity));
        }
        let (dexp, dcoef) = den.leading().unwrap();
        let dinv = dcoef.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.arity);
        while let Some((rexp, rcoef)) = rem.leading() {
            let mut qexp = Vec::with_capacity(self.arity);
            for (r, d) in rexp.iter().zip(dexp.iter()) {
                if r < d {
                    return None;
                }
                qexp.push(r - d);
            }
            let qcoef = rcoef * &dinv;
            let mono = Polynomial::monomial(self.arity, qexp, qcoef);
            rem = &rem - &(&mono * den);
            quot = &quot + &mono;
        }
        Some(quot)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.arity, rhs.arity);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Polynomial::insert_term(&mut terms, e.clone(), c.clone());
        }
        Polynomial { arity: self.arity, terms }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &-rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), -c);
        }
        Polynomial { arity: self.arity, terms }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.arity, rhs.arity);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let expo: Vec<u32> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                Polynomial::insert_term(&mut terms, expo, ca * cb);
            }
        }
        Polynomial { arity: self.arity, terms }
    }
}

/// Ratio of polynomials; the denominator is a nonzero polynomial.
///
/// Equality (`==`) is semantic: exact cross-multiplication, never sampling.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFn {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFn> {
        if den.is_zero() {
            return Err(Error::ZeroFunctionDivisor);
        }
        debug_assert_eq!(num.arity(), den.arity());
        let mut rf = RationalFn { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_poly(num: Polynomial) -> RationalFn {
        let den = Polynomial::one(num.arity());
        RationalFn { num, den }
    }

    pub fn zero(arity: usize) -> RationalFn {
        RationalFn::from_poly(Polynomial::zero(arity))
    }

    pub fn one(arity: usize) -> RationalFn {
        RationalFn::from_poly(Polynomial::one(arity))
    }

    pub fn constant(arity: usize, value: FieldElem) -> RationalFn {
        RationalFn::from_poly(Polynomial::constant(arity, value))
    }

    pub fn var(arity: usize, index: usize) -> Result<RationalFn> {
        Ok(RationalFn::from_poly(Polynomial::var(arity, index)?))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &RationalFn::one(self.arity())
    }

    pub fn as_constant(&self) -> Option<FieldElem> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n * &d.inv().expect("denominator is nonzero"))
    }

    /// Keeps the representation small without a multivariate gcd: zero
    /// numerators drop the denominator, an exact division is attempted,
    /// and the denominator's lex-leading coefficient is normalized to 1
    /// so identical pipelines produce structurally identical denominators.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.arity());
            return;
        }
        if self.den.as_constant().is_none() {
            if let Some(q) = self.num.try_div_exact(&self.den) {
                self.num = q;
                self.den = Polynomial::one(self.arity());
                return;
            }
        }
        let lc = self
            .den
            .leading()
            .map(|(_, c)| c.clone())
            .expect("denominator is nonzero");
        if !lc.is_one() {
            let inv = lc.inv().expect("leading coefficient is nonzero");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// Exact equality by cross-multiplication.
    pub fn equivalent(&self, other: &RationalFn) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }

    pub fn scale(&self, k: &FieldElem) -> RationalFn {
        RationalFn {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, rhs: &RationalFn) -> Result<RationalFn> {
        if rhs.is_zero() {
            return Err(Error::ZeroFunctionDivisor);
        }
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn recip(&self) -> Result<RationalFn> {
        RationalFn::one(self.arity()).div(self)
    }

    /// Partial derivative by the quotient rule.
    pub fn partial(&self, index: usize) -> Result<RationalFn> {
        let dn = self.num.partial(index)?;
        if self.den.as_constant().is_some() {
            return RationalFn::new(dn, self.den.clone());
        }
        let dd = self.den.partial(index)?;
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RationalFn::new(num, &self.den * &self.den)
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.eval(point)?;
        Ok(&n * &d.inv()?)
    }

    /// Numeric evaluation; None when the denominator is numerically tiny.
    pub fn eval_f64(&self, point: &[f64]) -> Option<f64> {
        let d = self.den.eval_f64(point);
        if d.abs() < 1e-8 {
            return None;
        }
        Some(self.num.eval_f64(point) / d)
    }

    pub fn parse(src: &str, arity: usize) -> Result<RationalFn> {
        crate::parse::parse_rational_fn(src, arity, None)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        // Structurally shared denominators are the common case in tensor
        // pipelines; adding numerators directly avoids squaring them.
        let (num, den) = if self.den == rhs.den {
            (&self.num + &rhs.num, self.den.clone())
        } else {
            (
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            )
        };
        RationalFn::new(num, den).expect("nonzero denominators multiply to nonzero")
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &-rhs
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators multiply to nonzero")
    }
}

fn fmt_monomial(expo: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in expo.iter().enumerate() {
        if k == 1 {
            parts.push(format!("x{}", i + 1));
        } else if k > 1 {
            parts.push(format!("x{}^{}", i + 1, k));
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (expo, coef) in &self.terms {
            let mono = fmt_monomial(expo);
            // Rational coefficients carry their sign into the join; mixed
            // Q(rho) coefficients are parenthesized verbatim.
            let (neg, body) = match coef.as_rational() {
                Some(r) => {
                    use num::traits::Signed;
                    let mag = FieldElem::from_rational(r.abs());
                    let body = if mono.is_empty() {
                        mag.to_string()
                    } else if mag.is_one() {
                        mono.clone()
                    } else {
                        format!("{mag}*{mono}")
                    };
                    (r.is_negative(), body)
                }
                None => {
                    let body = if mono.is_empty() {
                        format!("({coef})")
                    } else {
                        format!("({coef})*{mono}")
                    };
                    (false, body)
                }
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()) == Some(true) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::rat;

    fn p(src: &str, arity: usize) -> Polynomial {
        crate::parse::parse_polynomial(src, arity, None).unwrap()
    }

    fn rf(src: &str, arity: usize) -> RationalFn {
        RationalFn::parse(src, arity).unwrap()
    }

    #[test]
    fn partial_of_product_monomial() {
        // d(x1^2 x2)/dx1 = 2 x1 x2
        assert_eq!(p("x1^2*x2", 2).partial(0).unwrap(), p("2*x1*x2", 2));
    }

    #[test]
    fn partial_of_constant_vanishes() {
        assert!(p("7", 2).partial(0).unwrap().is_zero());
    }

    #[test]
    fn partial_carries_field_coefficient() {
        // d(rho x2^3)/dx2 = 3 rho x2^2
        assert_eq!(p("rho*x2^3", 2).partial(1).unwrap(), p("3*rho*x2^2", 2));
    }

    #[test]
    fn partial_index_out_of_range() {
        assert!(matches!(
            p("x1", 1).partial(1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rf_equal_cancels_common_factor() {
        assert_eq!(rf("(x1^2 - 1)/(x1 - 1)", 1), rf("x1 + 1", 1));
    }

    #[test]
    fn rf_distinct_variables_differ() {
        assert_ne!(rf("x1", 2), rf("x2", 2));
    }

    #[test]
    fn rf_zero_numerators_agree() {
        let a = RationalFn::new(Polynomial::zero(1), p("x1^3 + rho", 1)).unwrap();
        assert_eq!(a, RationalFn::zero(1));
    }

    #[test]
    fn rf_eval_simple() {
        let v = rf("x1 + rho", 1)
            .eval(&[FieldElem::one()])
            .unwrap();
        assert_eq!(v, &FieldElem::one() + &FieldElem::rho());
    }

    #[test]
    fn rf_eval_pole_is_error() {
        assert_eq!(
            rf("1/x1", 1).eval(&[FieldElem::zero()]),
            Err(Error::PoleAtPoint)
        );
    }

    #[test]
    fn rf_eval_cancelled_pole() {
        // x1^2/x1 normalizes to x1 by exact division, so rho is fine
        let v = rf("(x1^2)/(x1)", 1).eval(&[FieldElem::rho()]).unwrap();
        assert_eq!(v, FieldElem::rho());
    }

    #[test]
    fn rf_add_shares_denominator() {
        let out = &rf("1/x1", 1) + &rf("1/x1", 1);
        assert_eq!(out, rf("2/x1", 1));
    }

    #[test]
    fn rf_sub_self_is_zero() {
        let f = rf("(x1 + rho*x2^2)/(x2 + 3)", 2);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn rf_mul_inverse_pair() {
        let out = &rf("x1/x2", 2) * &rf("x2/x1", 2);
        assert!(out.is_one());
    }

    #[test]
    fn rf_div_by_zero_function() {
        assert_eq!(
            rf("x1", 1).div(&RationalFn::zero(1)),
            Err(Error::ZeroFunctionDivisor)
        );
    }

    #[test]
    fn exact_division_strips_denominator() {
        let f = RationalFn::new(p("x1^2*x2 + x1*x2", 2), p("x1", 2)).unwrap();
        assert_eq!(f.den().as_constant(), Some(FieldElem::one()));
        assert_eq!(f, rf("x1*x2 + x2", 2));
    }

    #[test]
    fn quotient_rule_partial() {
        // d(1/x1)/dx1 = -1/x1^2
        let d = rf("1/x1", 1).partial(0).unwrap();
        assert_eq!(d, rf("-1/(x1^2)", 1));
    }

    #[test]
    fn leibniz_on_sample() {
        let a = p("x1^2 + rho*x2", 2);
        let b = p("x2^2 - 3", 2);
        let lhs = (&a * &b).partial(0).unwrap();
        let rhs = &(&a.partial(0).unwrap() * &b) + &(&a * &b.partial(0).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_scale_display_round_trip() {
        let f = rf("(1 - rho^2)*x1 + 1/2", 2);
        let reparsed = RationalFn::parse(&f.to_string(), 2).unwrap();
        assert_eq!(f, reparsed);
        let _ = rat(0); // keep helper linked into tests
    }
}
