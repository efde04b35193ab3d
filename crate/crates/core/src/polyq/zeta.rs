use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, PolyQ};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("{what} `{poly}` is not an integer at q = {q0}")]
    NonIntegerCount {
        what: &'static str,
        poly: String,
        q0: u64,
    },
    #[error("multiplicity `{poly}` is negative at q = {q0}")]
    NegativeCount { poly: String, q0: u64 },
    #[error("dimension `{poly}` is not positive at q = {q0}")]
    NonPositiveDimension { poly: String, q0: u64 },
    #[error("value of `{poly}` at q = {q0} does not fit in 128 bits")]
    Overflow { poly: String, q0: u64 },
}

/// One term `mult(q) · D^{dim(q)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZetaTerm {
    pub mult: PolyQ,
    pub dim: PolyQ,
}

/// A formal sum `Σ m_i(q) · D^{e_i(q)}` in canonical form: terms sorted by
/// dimension polynomial, distinct dimensions, no zero multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ZetaTerm>", into = "Vec<ZetaTerm>")]
pub struct ZetaSum {
    terms: Vec<ZetaTerm>,
}

impl From<Vec<ZetaTerm>> for ZetaSum {
    fn from(terms: Vec<ZetaTerm>) -> Self {
        ZetaSum::new(terms)
    }
}

impl From<ZetaSum> for Vec<ZetaTerm> {
    fn from(z: ZetaSum) -> Self {
        z.terms
    }
}

impl ZetaSum {
    pub fn new(terms: impl IntoIterator<Item = ZetaTerm>) -> Self {
        let mut map: BTreeMap<PolyQ, PolyQ> = BTreeMap::new();
        for t in terms {
            *map.entry(t.dim).or_default() += &t.mult;
        }
        ZetaSum {
            terms: map
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(dim, mult)| ZetaTerm { mult, dim })
                .collect(),
        }
    }

    pub fn zero() -> Self {
        ZetaSum::default()
    }

    /// `1 · D¹`, the zeta function of the trivial group.
    pub fn trivial() -> Self {
        ZetaSum::term(PolyQ::one(), PolyQ::one())
    }

    pub fn term(mult: PolyQ, dim: PolyQ) -> Self {
        ZetaSum::new([ZetaTerm { mult, dim }])
    }

    /// `m · D¹`: an abelian group of order `m`.
    pub fn linear(m: PolyQ) -> Self {
        ZetaSum::term(m, PolyQ::one())
    }

    pub fn terms(&self) -> &[ZetaTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ZetaSum) -> ZetaSum {
        ZetaSum::new(self.terms.iter().chain(&other.terms).cloned())
    }

    /// `R(D) ↦ R(D^k)`.
    pub fn substitute_power(&self, k: &PolyQ) -> ZetaSum {
        ZetaSum::new(self.terms.iter().map(|t| ZetaTerm {
            mult: t.mult.clone(),
            dim: &t.dim * k,
        }))
    }

    /// Zeta function of a direct product.
    pub fn product(&self, other: &ZetaSum) -> ZetaSum {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                out.push(ZetaTerm {
                    mult: &a.mult * &b.mult,
                    dim: &a.dim * &b.dim,
                });
            }
        }
        ZetaSum::new(out)
    }

    pub fn power(&self, r: u32) -> ZetaSum {
        (0..r).fold(ZetaSum::trivial(), |acc, _| acc.product(self))
    }

    pub fn scale_mults(&self, c: &PolyQ) -> ZetaSum {
        ZetaSum::new(self.terms.iter().map(|t| ZetaTerm {
            mult: &t.mult * c,
            dim: t.dim.clone(),
        }))
    }

    /// Substitutes `q ↦ q^d` in every multiplicity and dimension.
    pub fn subs_q_power(&self, d: u32) -> ZetaSum {
        ZetaSum::new(self.terms.iter().map(|t| ZetaTerm {
            mult: t.mult.subs_q_power(d),
            dim: t.dim.subs_q_power(d),
        }))
    }

    /// `Σ m_i e_i²`, the group order by Burnside.
    pub fn sum_squares(&self) -> PolyQ {
        self.terms
            .iter()
            .map(|t| &t.mult * &(&t.dim * &t.dim))
            .sum()
    }

    /// `R(1) = Σ m_i`, the number of irreducible characters.
    pub fn class_count(&self) -> PolyQ {
        self.terms.iter().map(|t| t.mult.clone()).sum()
    }

    pub fn eval(&self, q0: u64) -> Result<DegreeMultiset, ZetaError> {
        let mut out = DegreeMultiset::default();
        for t in &self.terms {
            let m = eval_integer(&t.mult, q0, "multiplicity")?;
            if m.is_negative() {
                return Err(ZetaError::NegativeCount {
                    poly: t.mult.to_string(),
                    q0,
                });
            }
            if m.is_zero() {
                continue;
            }
            let d = eval_integer(&t.dim, q0, "dimension")?;
            if !d.is_positive() {
                return Err(ZetaError::NonPositiveDimension {
                    poly: t.dim.to_string(),
                    q0,
                });
            }
            let overflow = |p: &PolyQ| ZetaError::Overflow {
                poly: p.to_string(),
                q0,
            };
            let m = m.to_u128().ok_or_else(|| overflow(&t.mult))?;
            let d = d.to_u128().ok_or_else(|| overflow(&t.dim))?;
            out.insert(d, m);
        }
        Ok(out)
    }
}

fn eval_integer(p: &PolyQ, q0: u64, what: &'static str) -> Result<BigInt, ZetaError> {
    let v = p.eval(&rat(q0 as i64));
    if !v.is_integer() {
        return Err(ZetaError::NonIntegerCount {
            what,
            poly: p.to_string(),
            q0,
        });
    }
    Ok(v.to_integer())
}

impl fmt::Display for ZetaSum {
    /// `(q - 1)*D^(1) + (q - 1)*D^(q)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*D^({})", t.mult, t.dim)?;
        }
        Ok(())
    }
}

/// A multiset of character degrees, dimension → multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeMultiset(pub BTreeMap<u128, u128>);

impl DegreeMultiset {
    pub fn from_degrees(degrees: impl IntoIterator<Item = u128>) -> Self {
        let mut out = DegreeMultiset::default();
        for d in degrees {
            out.insert(d, 1);
        }
        out
    }

    pub fn from_pairs(pairs: &[(u128, u128)]) -> Self {
        let mut out = DegreeMultiset::default();
        for &(d, m) in pairs {
            out.insert(d, m);
        }
        out
    }

    pub fn insert(&mut self, dim: u128, mult: u128) {
        if mult > 0 {
            *self.0.entry(dim).or_insert(0) += mult;
        }
    }

    pub fn add(&self, other: &DegreeMultiset) -> DegreeMultiset {
        let mut out = self.clone();
        for (&d, &m) in &other.0 {
            out.insert(d, m);
        }
        out
    }

    pub fn product(&self, other: &DegreeMultiset) -> DegreeMultiset {
        let mut out = DegreeMultiset::default();
        for (&a, &ma) in &self.0 {
            for (&b, &mb) in &other.0 {
                out.insert(a * b, ma * mb);
            }
        }
        out
    }

    pub fn scale_dims(&self, k: u128) -> DegreeMultiset {
        DegreeMultiset(self.0.iter().map(|(&d, &m)| (d * k, m)).collect())
    }

    pub fn scale_mults(&self, k: u128) -> DegreeMultiset {
        let mut out = DegreeMultiset::default();
        for (&d, &m) in &self.0 {
            out.insert(d, m * k);
        }
        out
    }

    /// Number of irreducible characters.
    pub fn total(&self) -> u128 {
        self.0.values().sum()
    }

    pub fn sum_squares(&self) -> u128 {
        self.0.iter().map(|(&d, &m)| d * d * m).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u128, u128)> + '_ {
        self.0.iter().map(|(&d, &m)| (d, m))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DegreeMultiset {
    /// `{1×4, 2×5, 3×4, 6×1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (d, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}×{m}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyQ {
        PolyQ::parse(s).unwrap()
    }

    fn gl2() -> ZetaSum {
        ZetaSum::new([
            ZetaTerm { mult: p("q-1"), dim: p("1") },
            ZetaTerm { mult: p("q-1"), dim: p("q") },
            ZetaTerm { mult: p("(q-1)(q-2)/2"), dim: p("q+1") },
            ZetaTerm { mult: p("q(q-1)/2"), dim: p("q-1") },
        ])
    }

    #[test]
    fn merging() {
        let a = ZetaSum::linear(p("q-1"));
        assert_eq!(a.add(&a), ZetaSum::linear(p("2q-2")));
        assert_eq!(ZetaSum::zero().add(&a), a);
        let cancel = ZetaSum::linear(p("q")).add(&ZetaSum::linear(p("-q")));
        assert!(cancel.is_zero());
    }

    #[test]
    fn gl2_evaluation() {
        let z = gl2();
        assert_eq!(z.sum_squares(), p("(q^2-1)(q^2-q)"));
        assert_eq!(z.eval(2).unwrap(), DegreeMultiset::from_pairs(&[(1, 2), (2, 1)]));
        assert_eq!(z.eval(2).unwrap().to_string(), "{1×2, 2×1}");
        assert_eq!(z.class_count(), p("q^2-1"));
    }

    #[test]
    fn products_and_powers() {
        let a = ZetaSum::linear(p("q-1"));
        let b = ZetaSum::linear(p("q^2-1"));
        assert_eq!(a.product(&b), ZetaSum::linear(p("(q-1)(q^2-1)")));
        assert_eq!(gl2().product(&ZetaSum::trivial()), gl2());
        assert_eq!(a.power(2), ZetaSum::linear(p("(q-1)^2")));
        assert_eq!(
            ZetaSum::term(p("q-1"), p("q")).substitute_power(&p("3")),
            ZetaSum::term(p("q-1"), p("3q"))
        );
    }

    #[test]
    fn eval_errors() {
        let half = ZetaSum::linear(p("q/2"));
        assert!(matches!(half.eval(3), Err(ZetaError::NonIntegerCount { .. })));
        let neg = ZetaSum::linear(p("1-q"));
        assert!(matches!(neg.eval(2), Err(ZetaError::NegativeCount { .. })));
        let zero_dim = ZetaSum::term(p("1"), p("q-2"));
        assert!(matches!(zero_dim.eval(2), Err(ZetaError::NonPositiveDimension { .. })));
    }

    #[test]
    fn serde_round_trip() {
        let z = gl2();
        let js = serde_json::to_string(&z).unwrap();
        assert!(js.contains("\"mult\":\"q - 1\""));
        let back: ZetaSum = serde_json::from_str(&js).unwrap();
        assert_eq!(back, z);
    }
}
