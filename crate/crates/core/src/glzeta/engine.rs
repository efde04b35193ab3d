use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cache::{CachedZeta, ZetaCache, ZetaCacheEntry};
use super::interpolate::interpolate_multisets;
use super::{
    gl_fq_zeta, glambda_closed, units_zeta, GlzetaError, GroupKey, Provenance, Zeta, ZetaValue,
    Q0,
};
use crate::canonical::TypeSymbol;
use crate::oracle::{degrees_of, Budget, GroupSpecifier};
use crate::partition::Partition;
use crate::polyq::{rational_to_u128, rat, DegreeMultiset, ZetaSum};
use crate::rings::{prime_power, Ring};
use crate::typegen::enumerate_types;

/// Support used for `G_{(3,1)}` when none is given: five points at which
/// its three degree families are pairwise distinct.
pub const DEFAULT_SUPPORT: [u64; 5] = [3, 4, 5, 7, 8];

/// Computes zeta functions, calling the oracle where no formula exists.
#[derive(Clone, Debug)]
pub struct ZetaEngine {
    pub budget: Budget,
    /// Interpolation support for `G_{(3,1)}`; symbolic requests that need
    /// it fail unless this is set or the cache already holds the result.
    pub support: Option<Vec<u64>>,
    pub degree_bound: u32,
    pub cache: ZetaCache,
}

impl Default for ZetaEngine {
    fn default() -> Self {
        ZetaEngine {
            budget: Budget::default(),
            support: None,
            degree_bound: 4,
            cache: ZetaCache::in_memory(),
        }
    }
}

fn field_of(q0: u64, d: u32) -> Result<Ring, GlzetaError> {
    let size = q0
        .checked_pow(d)
        .filter(|&s| s <= u32::MAX as u64 && prime_power(s as u32).is_some())
        .ok_or(GlzetaError::NotPrimePower(q0))?;
    Ring::field_of_size(size as u32).map_err(|e| GlzetaError::Oracle(e.into()))
}

impl ZetaEngine {
    pub fn new(budget: Budget) -> Self {
        ZetaEngine {
            budget,
            ..Default::default()
        }
    }

    /// The group `key` over the field with `q0` elements.
    pub fn oracle_spec(key: &GroupKey, q0: u64) -> Result<GroupSpecifier, GlzetaError> {
        let ring_err = |e| GlzetaError::Oracle(crate::oracle::OracleError::Ring(e));
        Ok(match key {
            GroupKey::GL { m, d } => GroupSpecifier::GL {
                n: *m as usize,
                ring: field_of(q0, *d)?,
            },
            GroupKey::Units { l, d } => {
                let f = field_of(q0, *d)?;
                let ring = if *l == 1 {
                    f
                } else {
                    Ring::truncated(f.characteristic_prime(), f.degree(), *l).map_err(ring_err)?
                };
                GroupSpecifier::Units { ring }
            }
            GroupKey::Glambda { lambda, d } => GroupSpecifier::glambda(&field_of(q0, *d)?, lambda),
            GroupKey::GLO2 { n } => {
                let f = field_of(q0, 1)?;
                GroupSpecifier::GL {
                    n: *n as usize,
                    ring: Ring::truncated(f.characteristic_prime(), f.degree(), 2).map_err(ring_err)?,
                }
            }
        })
    }

    /// Character degrees of `key` at `q0` from the oracle, cached.
    pub fn oracle_degrees(&mut self, key: &GroupKey, q0: u64) -> Result<DegreeMultiset, GlzetaError> {
        if let Some(ZetaCacheEntry {
            zeta: CachedZeta::Evaluated(m),
            provenance: Provenance::OracleDerived,
            ..
        }) = self.cache.get(key, Q0::At(q0))
        {
            return Ok(m.clone());
        }
        let spec = Self::oracle_spec(key, q0)?;
        let m = degrees_of(&spec, &self.budget)?;
        self.cache.put(ZetaCacheEntry {
            key: key.clone(),
            q0: Q0::At(q0),
            zeta: CachedZeta::Evaluated(m.clone()),
            provenance: Provenance::OracleDerived,
            support: None,
            degree_bound: None,
        })?;
        Ok(m)
    }

    /// Interpolates oracle data for `key` over `support`, then checks the
    /// sum of squares against the order of the group.
    pub fn interpolate_zeta(
        &mut self,
        key: &GroupKey,
        support: &[u64],
        degree_bound: u32,
    ) -> Result<ZetaSum, GlzetaError> {
        if let Some(ZetaCacheEntry {
            zeta: CachedZeta::Symbolic(z),
            provenance: Provenance::Interpolated,
            support: Some(s),
            degree_bound: Some(b),
            ..
        }) = self.cache.get(key, Q0::Symbolic)
        {
            if s == support && *b == degree_bound {
                return Ok(z.clone());
            }
        }
        let data = support
            .iter()
            .map(|&q| Ok((q, self.oracle_degrees(key, q)?)))
            .collect::<Result<Vec<_>, GlzetaError>>()?;
        let z = interpolate_multisets(&data, degree_bound)?;
        let residual = z.sum_squares() - key.order();
        if !residual.is_zero() {
            return Err(GlzetaError::ValidationFailed { residual });
        }
        self.cache.put(ZetaCacheEntry {
            key: key.clone(),
            q0: Q0::Symbolic,
            zeta: CachedZeta::Symbolic(z.clone()),
            provenance: Provenance::Interpolated,
            support: Some(support.to_vec()),
            degree_bound: Some(degree_bound),
        })?;
        Ok(z)
    }

    fn interpolated(&mut self, key: &GroupKey) -> Result<ZetaSum, GlzetaError> {
        if let Some(support) = self.support.clone() {
            return self.interpolate_zeta(key, &support, self.degree_bound);
        }
        match self.cache.get(key, Q0::Symbolic) {
            Some(ZetaCacheEntry {
                zeta: CachedZeta::Symbolic(z),
                ..
            }) => Ok(z.clone()),
            _ => Err(GlzetaError::SymbolicUnavailable(key.to_string())),
        }
    }

    /// `R_{G_λ}` over `F_{q^d}`.
    pub fn glambda_zeta(&mut self, lambda: &Partition, d: u32, q0: Q0) -> Result<Zeta, GlzetaError> {
        if lambda.parts() != [3, 1] {
            return glambda_closed(lambda, d);
        }
        let key = GroupKey::Glambda {
            lambda: lambda.clone(),
            d,
        };
        Ok(match q0 {
            Q0::Symbolic => Zeta::new(ZetaValue::Symbolic(self.interpolated(&key)?), Provenance::Interpolated),
            Q0::At(x) => Zeta::new(
                ZetaValue::Numeric(self.oracle_degrees(&key, x)?),
                Provenance::OracleDerived,
            ),
        })
    }

    /// `Π_slots R_{G_ν}(F_{q^d})^{⊗r}`, the zeta function of `Z_{GL_n(F_q)}(A)`.
    pub fn centralizer_zeta(&mut self, ty: &TypeSymbol, q0: Q0) -> Result<Zeta, GlzetaError> {
        let mut provenance = BTreeSet::new();
        let mut parts = Vec::new();
        for s in ty.slots() {
            let z = self.glambda_zeta(&s.nu, s.d, q0)?;
            provenance.extend(z.provenance);
            parts.push((z.value, s.r));
        }
        let value = match q0 {
            Q0::Symbolic => ZetaValue::Symbolic(parts.iter().fold(ZetaSum::trivial(), |acc, (v, r)| {
                acc.product(&v.symbolic().expect("symbolic").power(*r))
            })),
            Q0::At(x) => {
                let mut acc = DegreeMultiset::from_pairs(&[(1, 1)]);
                for (v, r) in &parts {
                    let m = v.at(x)?;
                    for _ in 0..*r {
                        acc = acc.product(&m);
                    }
                }
                ZetaValue::Numeric(acc)
            }
        };
        Ok(Zeta { value, provenance })
    }

    /// `Σ_types n_A · R_{Z(A)}(D^{index_A})`.
    pub fn glo2_zeta(&mut self, n: u32, q0: Q0) -> Result<Zeta, GlzetaError> {
        let mut provenance: BTreeSet<Provenance> = [Provenance::Recursion].into();
        let records = enumerate_types(n, false);
        match q0 {
            Q0::Symbolic => {
                let mut acc = ZetaSum::zero();
                for rec in records {
                    let z = self.centralizer_zeta(&rec.ty, q0)?;
                    provenance.extend(z.provenance);
                    let z = z.value.symbolic().expect("symbolic").clone();
                    acc = acc.add(&z.scale_mults(&rec.n_a).substitute_power(&rec.index));
                }
                Ok(Zeta {
                    value: ZetaValue::Symbolic(acc),
                    provenance,
                })
            }
            Q0::At(x) => {
                let int = |p: &crate::PolyQ| {
                    rational_to_u128(&p.eval(&rat(x as i64))).ok_or_else(|| {
                        GlzetaError::Zeta(crate::polyq::ZetaError::NonIntegerCount {
                            what: "type data",
                            poly: p.to_string(),
                            q0: x,
                        })
                    })
                };
                let mut acc = DegreeMultiset::default();
                for rec in records {
                    let n_a = int(&rec.n_a)?;
                    if n_a == 0 {
                        continue;
                    }
                    let z = self.centralizer_zeta(&rec.ty, q0)?;
                    provenance.extend(z.provenance);
                    let m = z.value.at(x)?;
                    acc = acc.add(&m.scale_dims(int(&rec.index)?).scale_mults(n_a));
                }
                Ok(Zeta {
                    value: ZetaValue::Numeric(acc),
                    provenance,
                })
            }
        }
    }

    /// The zeta function of any keyed group, evaluated when `q0` is a number.
    pub fn zeta(&mut self, key: &GroupKey, q0: Q0) -> Result<Zeta, GlzetaError> {
        let z = match key {
            GroupKey::GL { m, d } => {
                Zeta::new(ZetaValue::Symbolic(gl_fq_zeta(*m, *d)), Provenance::DegreeFormula)
            }
            GroupKey::Units { l, d } => Zeta::new(ZetaValue::Symbolic(units_zeta(*l, *d)), Provenance::ClosedForm),
            GroupKey::Glambda { lambda, d } => self.glambda_zeta(lambda, *d, q0)?,
            GroupKey::GLO2 { n } => self.glo2_zeta(*n, q0)?,
        };
        Ok(match (q0, &z.value) {
            (Q0::At(x), ZetaValue::Symbolic(s)) => Zeta {
                value: ZetaValue::Numeric(s.eval(x)?),
                provenance: z.provenance,
            },
            _ => z,
        })
    }

    pub fn report(&mut self, key: &GroupKey, q0: Q0) -> Result<ZetaReport, GlzetaError> {
        let z = self.zeta(key, q0)?;
        Ok(ZetaReport::new(key, q0, &z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermText {
    pub mult: String,
    pub dim: String,
}

/// The printable form of a computed zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub group: String,
    pub q: Q0,
    pub terms: Vec<TermText>,
    pub sum_squares: String,
    pub provenance: Vec<Provenance>,
}

impl ZetaReport {
    pub fn new(key: &GroupKey, q0: Q0, z: &Zeta) -> Self {
        let (terms, sum_squares) = match &z.value {
            ZetaValue::Symbolic(s) => (
                s.terms()
                    .iter()
                    .map(|t| TermText {
                        mult: t.mult.to_string(),
                        dim: t.dim.to_string(),
                    })
                    .collect(),
                s.sum_squares().to_string(),
            ),
            ZetaValue::Numeric(m) => (
                m.iter()
                    .map(|(d, k)| TermText {
                        mult: k.to_string(),
                        dim: d.to_string(),
                    })
                    .collect(),
                m.sum_squares().to_string(),
            ),
        };
        ZetaReport {
            group: key.to_string(),
            q: q0,
            terms,
            sum_squares,
            provenance: z.provenance.iter().copied().collect(),
        }
    }

    /// The zeta function back from its text form.
    pub fn value(&self) -> Result<ZetaValue, crate::ParseError> {
        match self.q {
            Q0::Symbolic => {
                let terms = self
                    .terms
                    .iter()
                    .map(|t| {
                        Ok(crate::ZetaTerm {
                            mult: t.mult.parse()?,
                            dim: t.dim.parse()?,
                        })
                    })
                    .collect::<Result<Vec<_>, crate::ParseError>>()?;
                Ok(ZetaValue::Symbolic(ZetaSum::new(terms)))
            }
            Q0::At(_) => {
                let mut m = DegreeMultiset::default();
                for t in &self.terms {
                    let bad = || crate::ParseError::new("degree", &t.dim, "expected an integer");
                    m.insert(t.dim.parse().map_err(|_| bad())?, t.mult.parse().map_err(|_| bad())?);
                }
                Ok(ZetaValue::Numeric(m))
            }
        }
    }
}
