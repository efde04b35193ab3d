//! Zeta polynomials of the groups that occur as centralizers, and their
//! assembly into `R_{GL_n(O_2)}(D) = Σ_A n_A · R_{Z(A)}(D^{index_A})`.
//!
//! Most building blocks are closed formulas in `q`. The one exception is
//! `G_{(3,1)}`, which is computed by the oracle at each `q` and, when a
//! support set is supplied, interpolated to a polynomial that is marked as
//! such wherever it is used.

mod cache;
mod engine;
mod interpolate;
pub mod reference;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::oracle::OracleError;
use crate::partition::Partition;
use crate::polyq::{DegreeMultiset, PolyQ, ZetaError, ZetaSum};
use crate::typegen::{centralizer_order, enumerate_types, gl_order};

pub use cache::{CachedZeta, ZetaCache, ZetaCacheEntry, CACHE_ENV};
pub use engine::{TermText, ZetaEngine, ZetaReport, DEFAULT_SUPPORT};
pub use interpolate::{align_families, interpolate_multisets};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GlzetaError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("no zeta function available for G_{0}")]
    UnsupportedLambda(Partition),
    #[error("{0} has no symbolic zeta without interpolation support")]
    SymbolicUnavailable(String),
    #[error("term families cannot be aligned: {0}")]
    AlignmentFailed(String),
    #[error("sum of squares differs from the group order by {residual}")]
    ValidationFailed { residual: PolyQ },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("cache: {0}")]
    Cache(String),
}

/// The groups with a zeta function here; `d` is the degree of the base
/// field `F_{q^d}` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKey {
    GL { m: u32, d: u32 },
    Units { l: u32, d: u32 },
    Glambda { lambda: Partition, d: u32 },
    GLO2 { n: u32 },
}

impl GroupKey {
    /// `|G|` as a polynomial in `q`.
    pub fn order(&self) -> PolyQ {
        match self {
            GroupKey::GL { m, d } => gl_order(*m).subs_q_power(*d),
            GroupKey::Units { l, d } => units_order(*l).subs_q_power(*d),
            GroupKey::Glambda { lambda, d } => centralizer_order(lambda, &PolyQ::q_pow(*d)),
            GroupKey::GLO2 { n } => PolyQ::q_pow(n * n) * gl_order(*n),
        }
    }
}

impl fmt::Display for GroupKey {
    /// `GL(2)`, `Units(2;q^2)`, `Glambda(2,1)`, `GLO2(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = |d: u32| if d == 1 { String::new() } else { format!(";q^{d}") };
        match self {
            GroupKey::GL { m, d } => write!(f, "GL({m}{})", field(*d)),
            GroupKey::Units { l, d } => write!(f, "Units({l}{})", field(*d)),
            GroupKey::Glambda { lambda, d } => {
                let parts: Vec<String> = lambda.parts().iter().map(u32::to_string).collect();
                write!(f, "Glambda({}{})", parts.join(","), field(*d))
            }
            GroupKey::GLO2 { n } => write!(f, "GLO2({n})"),
        }
    }
}

impl FromStr for GroupKey {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |r: &str| ParseError::new("group key", s, r);
        let (head, body) = t.split_once('(').ok_or_else(|| err("expected NAME(...)"))?;
        let body = body.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
        let (args, d) = match body.split_once(';') {
            Some((a, f)) => {
                let d = f
                    .strip_prefix("q^")
                    .and_then(|e| e.parse::<u32>().ok())
                    .or_else(|| (f == "q").then_some(1))
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| err("field must be q^d"))?;
                (a, d)
            }
            None => (body, 1),
        };
        let nums: Vec<u32> = args
            .split(',')
            .map(|x| x.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| err("expected positive integers"))?;
        if nums.is_empty() || nums.contains(&0) {
            return Err(err("expected positive integers"));
        }
        let one = |name: &str| -> Result<u32, ParseError> {
            match nums.as_slice() {
                [x] => Ok(*x),
                _ => Err(err(&format!("{name} takes one argument"))),
            }
        };
        match head {
            "GL" => Ok(GroupKey::GL { m: one("GL")?, d }),
            "Units" => Ok(GroupKey::Units { l: one("Units")?, d }),
            "Glambda" => Ok(GroupKey::Glambda {
                lambda: Partition::new(nums.clone()).map_err(|e| err(&e.to_string()))?,
                d,
            }),
            "GLO2" if d == 1 => Ok(GroupKey::GLO2 { n: one("GLO2")? }),
            _ => Err(err("expected GL, Units, Glambda or GLO2")),
        }
    }
}

impl Serialize for GroupKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Either the symbolic variable or a prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Q0 {
    Symbolic,
    At(u64),
}

impl fmt::Display for Q0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q0::Symbolic => f.write_str("sym"),
            Q0::At(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for Q0 {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.trim() {
            "sym" | "symbolic" | "q" => Ok(Q0::Symbolic),
            t => {
                let q: u64 = t
                    .parse()
                    .map_err(|_| ParseError::new("q", s, "expected `sym` or an integer"))?;
                if crate::rings::prime_power(q as u32).is_none() || q > u32::MAX as u64 {
                    return Err(ParseError::new("q", s, "not a prime power"));
                }
                Ok(Q0::At(q))
            }
        }
    }
}

impl Serialize for Q0 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Q0::Symbolic => s.serialize_str("sym"),
            Q0::At(q) => s.serialize_u64(*q),
        }
    }
}

impl<'de> Deserialize<'de> for Q0 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(q) => Ok(Q0::At(q)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Where a zeta function (or one of its constituents) comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// A closed formula for a small group.
    ClosedForm,
    Recursion,
    DegreeFormula,
    OracleDerived,
    Interpolated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Recursion => "recursion",
            Provenance::DegreeFormula => "degree-formula",
            Provenance::OracleDerived => "oracle-derived",
            Provenance::Interpolated => "interpolated",
        })
    }
}

/// A zeta function as a polynomial family or at one value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaValue {
    Symbolic(ZetaSum),
    Numeric(DegreeMultiset),
}

impl ZetaValue {
    pub fn at(&self, q0: u64) -> Result<DegreeMultiset, ZetaError> {
        match self {
            ZetaValue::Symbolic(z) => z.eval(q0),
            ZetaValue::Numeric(m) => Ok(m.clone()),
        }
    }

    pub fn symbolic(&self) -> Option<&ZetaSum> {
        match self {
            ZetaValue::Symbolic(z) => Some(z),
            ZetaValue::Numeric(_) => None,
        }
    }
}

/// A value together with the provenance of everything that went into it.
#[derive(Clone, Debug, PartialEq)]
pub struct Zeta {
    pub value: ZetaValue,
    pub provenance: BTreeSet<Provenance>,
}

impl Zeta {
    fn new(value: ZetaValue, p: Provenance) -> Self {
        Zeta {
            value,
            provenance: [p].into(),
        }
    }
}

/// `|O_ℓ^*| = q^{ℓ−1}(q − 1)`.
pub fn units_order(l: u32) -> PolyQ {
    PolyQ::q_pow(l - 1) * (PolyQ::q() - PolyQ::one())
}

/// Unipotent degree by the q-hook formula, in the variable `x = q`.
pub fn udeg(nu: &Partition) -> PolyQ {
    let x = |k: u32| PolyQ::q_pow(k) - PolyQ::one();
    let num: PolyQ = (1..=nu.size()).map(x).product();
    let den: PolyQ = nu.hook_lengths().into_iter().map(x).product();
    PolyQ::q_pow(nu.n_value()) * num.div_exact(&den).expect("hook formula is polynomial")
}

/// `R_{GL_m(F_{q^d})}` from the Jordan decomposition of characters: one
/// term per character type, of multiplicity `n_A` (invertible types) and
/// degree the `q′`-part of `|GL_m| / Π |GL_{|ν_j|}(F_{q^{d_j}})|` times the
/// unipotent degrees `Π udeg(ν_j)(q^{d_j})`.
pub fn gl_fq_zeta(m: u32, d: u32) -> ZetaSum {
    let order = gl_order(m);
    let terms = enumerate_types(m, true).into_iter().map(|rec| {
        let mut levi = PolyQ::one();
        let mut unip = PolyQ::one();
        for s in rec.ty.slots() {
            levi = levi * gl_order(s.nu.size()).subs_q_power(s.d).pow(s.r);
            unip = unip * udeg(&s.nu).subs_q_power(s.d).pow(s.r);
        }
        let index = order.div_exact(&levi).expect("Levi order divides");
        crate::ZetaTerm {
            mult: rec.n_a,
            dim: index.strip_q_power() * unip,
        }
    });
    ZetaSum::new(terms).subs_q_power(d)
}

/// `O_ℓ^*` over `F_{q^d}` is abelian.
pub fn units_zeta(l: u32, d: u32) -> ZetaSum {
    ZetaSum::linear(units_order(l).subs_q_power(d))
}

fn poly(s: &str) -> PolyQ {
    PolyQ::parse(s).expect("static polynomial")
}

/// `(q−1)²D + (q²−1)D^{q−1} + (q−1)³D^q`.
pub fn g21_zeta() -> ZetaSum {
    ZetaSum::new([
        crate::ZetaTerm { mult: poly("(q-1)^2"), dim: PolyQ::one() },
        crate::ZetaTerm { mult: poly("q^2-1"), dim: poly("q-1") },
        crate::ZetaTerm { mult: poly("(q-1)^3"), dim: PolyQ::q() },
    ])
}

/// `(q−1)² R_{GL_2}(D^{q²}) + (q−1)[R_{GL_2}(D) + 2(q−1)D^{q²−1}
/// + (q−1)²D^{(q²−1)q} + (q+2)D^{(q²−1)(q−1)}]`.
pub fn g211_zeta() -> ZetaSum {
    let gl2 = gl_fq_zeta(2, 1);
    let inner = gl2.add(&ZetaSum::new([
        crate::ZetaTerm { mult: poly("2(q-1)"), dim: poly("q^2-1") },
        crate::ZetaTerm { mult: poly("(q-1)^2"), dim: poly("(q^2-1)q") },
        crate::ZetaTerm { mult: poly("q+2"), dim: poly("(q^2-1)(q-1)") },
    ]));
    gl2.substitute_power(&poly("q^2"))
        .scale_mults(&poly("(q-1)^2"))
        .add(&inner.scale_mults(&poly("q-1")))
}

/// Partitions whose `G_λ` has a zeta function here.
pub fn supported_lambda(lambda: &Partition) -> bool {
    let p = lambda.parts();
    (p.iter().all(|&x| x == 1) && p.len() <= 4)
        || (p.len() == 1 && p[0] <= 4)
        || matches!(p, [2, 1] | [2, 2] | [3, 1] | [2, 1, 1])
}

/// `G_λ` over `F_{q^d}` for every supported `λ` except `(3,1)`.
pub fn glambda_closed(lambda: &Partition, d: u32) -> Result<Zeta, GlzetaError> {
    let p = lambda.parts();
    if !supported_lambda(lambda) {
        return Err(GlzetaError::UnsupportedLambda(lambda.clone()));
    }
    Ok(match p {
        [3, 1] => {
            return Err(GlzetaError::SymbolicUnavailable(
                GroupKey::Glambda { lambda: lambda.clone(), d }.to_string(),
            ))
        }
        [2, 1] => Zeta::new(ZetaValue::Symbolic(g21_zeta().subs_q_power(d)), Provenance::ClosedForm),
        [2, 1, 1] => Zeta::new(ZetaValue::Symbolic(g211_zeta().subs_q_power(d)), Provenance::ClosedForm),
        [2, 2] => {
            let mut z = glo2_closed(2)?;
            z.value = ZetaValue::Symbolic(z.value.symbolic().unwrap().subs_q_power(d));
            z
        }
        [l] if *l > 1 => Zeta::new(ZetaValue::Symbolic(units_zeta(*l, d)), Provenance::ClosedForm),
        _ => Zeta::new(
            ZetaValue::Symbolic(gl_fq_zeta(p.len() as u32, d)),
            Provenance::DegreeFormula,
        ),
    })
}

/// `R_{GL_n(O_2)}` for `n ≤ 3`, where no centralizer needs the oracle.
pub fn glo2_closed(n: u32) -> Result<Zeta, GlzetaError> {
    let mut acc = ZetaSum::zero();
    let mut provenance: BTreeSet<Provenance> = [Provenance::Recursion].into();
    for rec in enumerate_types(n, false) {
        let mut z = ZetaSum::trivial();
        for s in rec.ty.slots() {
            let part = glambda_closed(&s.nu, s.d)?;
            provenance.extend(part.provenance);
            z = z.product(&part.value.symbolic().unwrap().power(s.r));
        }
        acc = acc.add(&z.scale_mults(&rec.n_a).substitute_power(&rec.index));
    }
    Ok(Zeta {
        value: ZetaValue::Symbolic(acc),
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyQ {
        PolyQ::parse(s).unwrap()
    }

    #[test]
    fn key_text() {
        for s in ["GL(2)", "GL(3;q^2)", "Units(2)", "Units(3;q^2)", "Glambda(2,1)", "Glambda(3,1;q^2)", "GLO2(4)"] {
            assert_eq!(s.parse::<GroupKey>().unwrap().to_string(), s);
        }
        assert!("Glambda(1,2)".parse::<GroupKey>().is_err());
        assert!("GLO2(2;q^2)".parse::<GroupKey>().is_err());
        assert!("GL(0)".parse::<GroupKey>().is_err());
    }

    #[test]
    fn unipotent_degrees() {
        assert_eq!(udeg(&"(2)".parse().unwrap()), PolyQ::one());
        assert_eq!(udeg(&"(1,1)".parse().unwrap()), PolyQ::q());
        assert_eq!(udeg(&"(2,1)".parse().unwrap()), p("q^2+q"));
        assert_eq!(udeg(&"(1,1,1)".parse().unwrap()), p("q^3"));
    }

    #[test]
    fn small_gl() {
        assert_eq!(gl_fq_zeta(1, 1), ZetaSum::linear(p("q-1")));
        let gl2 = gl_fq_zeta(2, 1);
        assert_eq!(gl2.terms().len(), 4);
        assert_eq!(gl2.eval(2).unwrap(), DegreeMultiset::from_pairs(&[(1, 2), (2, 1)]));
        for m in 1..=4 {
            assert_eq!(gl_fq_zeta(m, 1).sum_squares(), gl_order(m), "m = {m}");
        }
    }

    #[test]
    fn lemma_groups() {
        assert_eq!(g21_zeta().sum_squares(), p("q^3(q-1)^2"));
        assert_eq!(g211_zeta().sum_squares(), p("q^6(q-1)^3(q+1)"));
        assert_eq!(
            g211_zeta().eval(2).unwrap(),
            DegreeMultiset::from_pairs(&[(1, 2), (2, 1), (3, 6), (4, 2), (6, 1), (8, 1)])
        );
    }

    #[test]
    fn glo2_small() {
        let z = glo2_closed(2).unwrap();
        let z = z.value.symbolic().unwrap();
        assert_eq!(
            z.eval(2).unwrap(),
            DegreeMultiset::from_pairs(&[(1, 4), (2, 5), (3, 4), (6, 1)])
        );
        for n in 2..=3 {
            let z = glo2_closed(n).unwrap();
            assert_eq!(
                z.value.symbolic().unwrap().sum_squares(),
                GroupKey::GLO2 { n }.order()
            );
        }
    }

    #[test]
    fn displayed_formulas_reproduced() {
        use reference::*;
        let sym = |z: Zeta| z.value.symbolic().unwrap().clone();
        assert_eq!(expand(&GL2_O1).unwrap(), gl_fq_zeta(2, 1));
        assert_eq!(expand(&GL3_O1).unwrap(), gl_fq_zeta(3, 1));
        assert_eq!(expand(&G21).unwrap(), g21_zeta());
        assert_eq!(expand(&G211).unwrap(), g211_zeta());
        assert_eq!(expand(&GL2_O2).unwrap(), sym(glo2_closed(2).unwrap()));
        assert_eq!(expand(&GL3_O2).unwrap(), sym(glo2_closed(3).unwrap()));
    }
}
