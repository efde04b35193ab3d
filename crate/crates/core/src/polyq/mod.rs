//! Exact univariate polynomials in the formal variable `q` over ℚ, and formal
//! zeta sums `Σ m_i(q)·D^{e_i(q)}` built on top of them.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals
//! and integrality is only ever asserted after evaluating at a concrete prime
//! power.

mod parse;
mod render;
mod zeta;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use render::FactoredDisplay;
pub use zeta::{DegreeMultiset, ZetaError, ZetaSum, ZetaTerm};

use crate::error::ParseError;

/// A polynomial in `q` with rational coefficients.
///
/// Stored sparsely as exponent → coefficient; no zero coefficient is ever
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: BTreeMap<u32, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ::default()
    }

    pub fn one() -> Self {
        PolyQ::constant(rat(1))
    }

    /// The variable `q`.
    pub fn q() -> Self {
        PolyQ::monomial(rat(1), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        PolyQ::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        PolyQ::constant(rat(c))
    }

    pub fn monomial(c: BigRational, exp: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        PolyQ { coeffs }
    }

    /// `q^k`.
    pub fn q_pow(k: u32) -> Self {
        PolyQ::monomial(rat(1), k)
    }

    /// Builds from integer coefficients, constant term first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = PolyQ::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as u32, rat(c));
        }
        p
    }

    fn add_term(&mut self, exp: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Largest `k` with `q^k` dividing the polynomial.
    pub fn lowest_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.values().next_back()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> PolyQ {
        let mut acc = PolyQ::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner over the sparse exponents, highest first.
        let mut acc = BigRational::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rat(x, p - e);
            }
            acc += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= pow_rat(x, p);
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    /// Evaluates at `x` and returns the value if it is an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval_int(x);
        v.is_integer().then(|| v.to_integer())
    }

    /// Substitutes `q ↦ g(q)`.
    pub fn compose(&self, g: &PolyQ) -> PolyQ {
        let mut acc = PolyQ::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc = &acc * &g.pow(p - e);
            }
            acc += &PolyQ::constant(c.clone());
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc = &acc * &g.pow(p);
        }
        acc
    }

    /// Substitutes `q ↦ q^d` (base-field extension of degree `d`).
    pub fn subs_q_power(&self, d: u32) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * d, c.clone())).collect(),
        }
    }

    /// Divides by `q^k`; panics if `q^k` does not divide `self`.
    pub fn shift_down(&self, k: u32) -> PolyQ {
        PolyQ {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| {
                    assert!(e >= k, "q^{k} does not divide the polynomial");
                    (e - k, c.clone())
                })
                .collect(),
        }
    }

    /// Removes every factor of `q`, leaving the `q′`-part.
    pub fn strip_q_power(&self) -> PolyQ {
        match self.lowest_exponent() {
            Some(k) => self.shift_down(k),
            None => PolyQ::zero(),
        }
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &PolyQ) -> Option<(PolyQ, PolyQ)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading_coeff()?.clone();
        let mut rem = self.clone();
        let mut quot = PolyQ::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeff(rd) / &lead;
            let shift = rd - dd;
            quot.add_term(shift, c.clone());
            for (e, dc) in divisor.terms() {
                rem.add_term(e + shift, -(dc * &c));
            }
        }
        Some((quot, rem))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &PolyQ) -> Option<PolyQ> {
        let (quot, rem) = self.div_rem(divisor)?;
        rem.is_zero().then_some(quot)
    }

    /// Unique polynomial of degree `< points.len()` through the given
    /// `(x, y)` pairs (Lagrange form). `None` if two `x` coincide.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Option<PolyQ> {
        let mut acc = PolyQ::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = PolyQ::one();
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let diff = xi - xj;
                if diff.is_zero() {
                    return None;
                }
                denom *= diff;
                basis = &basis * &(PolyQ::q() - PolyQ::constant(xj.clone()));
            }
            acc += &basis.scale(&(yi / denom));
        }
        Some(acc)
    }

    /// Total order: by degree, then by coefficients from the top down.
    /// For polynomials with positive leading coefficient this orders by
    /// eventual size as `q → ∞`.
    fn cmp_canonical(&self, other: &PolyQ) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let Some(top) = self.degree() else {
            return Ordering::Equal;
        };
        for e in (0..=top).rev() {
            match self.coeff(e).cmp(&other.coeff(e)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// LaTeX rendering in expanded form, e.g. `\frac{1}{2}q^{2} - \frac{1}{2}q`.
    pub fn to_latex(&self) -> String {
        render::latex(self)
    }

    /// Rendering as a product of small recognisable factors.
    pub fn factored(&self) -> FactoredDisplay<'_> {
        FactoredDisplay(self)
    }

    pub fn parse(s: &str) -> Result<PolyQ, ParseError> {
        parse::parse_poly(s)
    }

    /// Parses LaTeX input such as `\frac{1}{2}q(q-1)^{2}`.
    pub fn parse_latex(s: &str) -> Result<PolyQ, ParseError> {
        parse::parse_poly(&parse::delatex(s))
    }
}

fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    num::pow::pow(x.clone(), k as usize)
}

/// Converts an exact rational to `u128` when it is a nonnegative integer.
pub fn rational_to_u128(v: &BigRational) -> Option<u128> {
    if !v.is_integer() || v.is_negative() {
        return None;
    }
    v.to_integer().to_u128()
}

impl Ord for PolyQ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl PartialOrd for PolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render::canonical(self, f)
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

impl FromStr for PolyQ {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyQ::parse(s)
    }
}

impl Serialize for PolyQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PolyQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PolyQ::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for PolyQ {
    fn from(c: i64) -> Self {
        PolyQ::int(c)
    }
}

impl AddAssign<&PolyQ> for PolyQ {
    fn add_assign(&mut self, rhs: &PolyQ) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&PolyQ> for PolyQ {
    fn sub_assign(&mut self, rhs: &PolyQ) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, -c.clone());
        }
    }
}

impl MulAssign<&PolyQ> for PolyQ {
    fn mul_assign(&mut self, rhs: &PolyQ) {
        *self = &*self * rhs;
    }
}

impl Mul<&PolyQ> for &PolyQ {
    type Output = PolyQ;

    fn mul(self, rhs: &PolyQ) -> PolyQ {
        let mut out = PolyQ::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Add<&PolyQ> for &PolyQ {
    type Output = PolyQ;

    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PolyQ> for &PolyQ {
    type Output = PolyQ;

    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;

    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Neg for PolyQ {
    type Output = PolyQ;

    fn neg(self) -> PolyQ {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PolyQ> for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PolyQ> for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: &PolyQ) -> PolyQ {
                (&self).$m(rhs)
            }
        }
        impl $tr<PolyQ> for &PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for PolyQ {
    fn sum<I: Iterator<Item = PolyQ>>(iter: I) -> Self {
        iter.fold(PolyQ::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for PolyQ {
    fn product<I: Iterator<Item = PolyQ>>(iter: I) -> Self {
        iter.fold(PolyQ::one(), |acc, p| acc * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyQ {
        PolyQ::parse(s).unwrap()
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("q*(q-1)*(q^2-q)/2").to_string(), "1/2*q^4 - q^3 + 1/2*q^2");
        assert_eq!(p("1/2*q^3 - 1/2*q^2").to_string(), "1/2*q^3 - 1/2*q^2");
        assert_eq!(PolyQ::zero().to_string(), "0");
        assert_eq!(p("-q + 1").to_string(), "-q + 1");
        assert_eq!(p("-3/4").to_string(), "-3/4");
    }

    #[test]
    fn gl2_order_expansion() {
        let gl2 = p("(q^2-1)*(q^2-q)");
        assert_eq!(gl2, PolyQ::from_coeffs(&[0, 1, -1, -1, 1]));
        assert_eq!(gl2.eval_integer(2), Some(BigInt::from(6)));
        assert_eq!(gl2.eval_integer(3), Some(BigInt::from(48)));
    }

    #[test]
    fn division_and_interpolation() {
        let a = p("q^3*(q-1)^2*(q+1)");
        let b = p("q*(q-1)");
        assert_eq!(a.div_exact(&b).unwrap(), p("q^2*(q-1)*(q+1)"));
        assert!(p("q^2+1").div_exact(&p("q-1")).is_none());
        assert_eq!(p("q^4 - q").strip_q_power(), p("q^3-1"));

        let target = p("1/3*q^3 - 1/3*q");
        let pts: Vec<_> = [2, 3, 4, 5]
            .iter()
            .map(|&x| (rat(x), target.eval_int(x)))
            .collect();
        assert_eq!(PolyQ::interpolate(&pts).unwrap(), target);
    }

    #[test]
    fn composition() {
        let f = p("q^2 + q");
        assert_eq!(f.compose(&p("q^2")), f.subs_q_power(2));
        assert_eq!(f.compose(&p("q+1")), p("q^2 + 3q + 2"));
    }

    #[test]
    fn ordering_is_by_growth() {
        let mut v = [p("q^2"), p("q+1"), p("1"), p("q-1"), p("q")];
        v.sort();
        let names: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(names, vec!["1", "q - 1", "q", "q + 1", "q^2"]);
    }

    #[test]
    fn serde_round_trip() {
        let x = p("1/6*q*(q-1)*(q-2)");
        let js = serde_json::to_string(&x).unwrap();
        let back: PolyQ = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
