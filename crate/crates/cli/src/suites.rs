//! Verification suites behind `glo2 verify`.

use serde::{Deserialize, Serialize};

use glo2::glzeta::{gl_fq_zeta, GlzetaError, GroupKey, ZetaEngine, Q0};
use glo2::oracle::{
    diff_multisets, group_report, type_representatives, verify_extension, GroupSpecifier,
};
use glo2::rings::{prime_power, Ring};
use glo2::typegen::{gl_order, mass_residual, verify_tables};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            witness: None,
            note: None,
        }
    }

    /// Passes iff `left == right`; the witness shows both sides.
    pub fn equal<T: PartialEq + std::fmt::Display>(name: impl Into<String>, left: T, right: T) -> Self {
        let pass = left == right;
        Check {
            witness: (!pass).then(|| format!("{left} != {right}")),
            ..Check::new(name, pass)
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Checks that could not run with the current settings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

impl SuiteReport {
    fn new(suite: String, checks: Vec<Check>, skipped: Vec<String>) -> Self {
        SuiteReport {
            suite,
            pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
            checks,
            skipped,
        }
    }
}

fn field(q: u32) -> Result<Ring, CliError> {
    Ring::field_of_size(q).map_err(|e| CliError::Usage(e.to_string()))
}

/// Brute-force census of `M_n(F_q)` against the printed tables.
pub fn tables(n: u32, q: u32, max_elements: u64) -> Result<SuiteReport, CliError> {
    if !(2..=4).contains(&n) {
        return Err(CliError::Usage(format!("tables exist for n = 2, 3, 4, not {n}")));
    }
    field(q)?;
    let v = verify_tables(n, q, max_elements as u128).map_err(|e| CliError::Usage(e.to_string()))?;
    let checks = v
        .cells
        .iter()
        .map(|c| {
            let mut check = Check::new(format!("{} {}", c.ty, c.column), c.pass);
            if !c.pass {
                check.witness = Some(format!("printed {}, observed {}", c.printed, c.observed));
            }
            if c.erratum {
                check = check.with_note(format!(
                    "known misprint: printed value is {}, enumeration gives {}",
                    c.printed, c.observed
                ));
            }
            check
        })
        .collect();
    Ok(SuiteReport::new(format!("tables n={n} q={q}"), checks, Vec::new()))
}

/// `GL_n(Z/p²)` against `GL_n(F_p[t]/t²)` and against the zeta function.
pub fn main_theorem(engine: &mut ZetaEngine, n: u32, p: u32) -> Result<SuiteReport, CliError> {
    if !matches!(prime_power(p), Some((_, 1))) {
        return Err(CliError::Usage(format!("{p} is not a prime")));
    }
    let ring = |r: Result<Ring, _>| r.map_err(|e: glo2::rings::RingError| CliError::Usage(e.to_string()));
    let specs = [
        GroupSpecifier::GL {
            n: n as usize,
            ring: ring(Ring::zp2(p))?,
        },
        GroupSpecifier::GL {
            n: n as usize,
            ring: ring(Ring::truncated(p, 1, 2))?,
        },
    ];
    let [a, b] = [&specs[0], &specs[1]].map(|s| group_report(s, &engine.budget, true));
    let (a, b) = (a?, b?);
    let (da, db) = (a.degrees.clone().unwrap(), b.degrees.clone().unwrap());
    let zeta = engine.glo2_zeta(n, Q0::At(p as u64))?.value.at(p as u64)?;
    let mut checks = Vec::new();
    let diff = diff_multisets(&da, &db);
    let mut c = Check::new(format!("degrees of {} = degrees of {}", a.group, b.group), diff.is_empty());
    if !diff.is_empty() {
        c.witness = Some(format!("{diff:?} as (degree, left, right)"));
    }
    checks.push(c.with_note(da.to_string()));
    for r in [&a, &b] {
        let d = r.degrees.as_ref().unwrap();
        checks.push(Check::equal(format!("degrees of {} = zeta at q={p}", r.group), d.to_string(), zeta.to_string()));
        checks.push(Check::equal(
            format!("classes of {} = zeta(D=1) at q={p}", r.group),
            r.classes as u128,
            zeta.total(),
        ));
    }
    let order: u128 = GroupKey::GLO2 { n }
        .order()
        .eval_integer(p as i64)
        .and_then(|v| v.try_into().ok())
        .unwrap_or(0);
    checks.push(Check::equal(format!("sum of squares at q={p}"), da.sum_squares(), order));
    Ok(SuiteReport::new(format!("main-theorem n={n} p={p}"), checks, Vec::new()))
}

/// The three extension checks for a representative of every type of
/// `M_n(F_q)` realisable over `F_q`, over `Z/p²` (when `q` is prime) and
/// `F_q[t]/t²`. Non-split types are checked through an unramified extension.
pub fn extension(engine: &ZetaEngine, n: u32, q: u32) -> Result<SuiteReport, CliError> {
    let f = field(q)?;
    let p = f.characteristic_prime();
    let usage = |e: glo2::rings::RingError| CliError::Usage(e.to_string());
    let mut targets = vec![Ring::truncated(p, f.degree(), 2).map_err(usage)?];
    if f.degree() == 1 {
        targets.insert(0, Ring::zp2(p).map_err(usage)?);
    }
    let mut checks = Vec::new();
    for target in &targets {
        for (ty, a) in type_representatives(n, &f) {
            let r = verify_extension(&a, target, &engine.budget)?;
            let mut c = Check::new(format!("{ty} over {target}"), r.passed());
            c.witness = r
                .checks
                .iter()
                .find(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
            let mut note = format!("centralizer order {}, {} pairs", r.centralizer_order, r.pairs_checked);
            if let Some(ext) = &r.splitting_ring {
                note += &format!(", via {ext}");
            }
            checks.push(c.with_note(note));
        }
    }
    Ok(SuiteReport::new(format!("extension n={n} q={q}"), checks, Vec::new()))
}

pub const IDENTITY_POINTS: [u64; 4] = [2, 3, 4, 5];

/// Mass identity, Burnside identities symbolically where the zeta function
/// is symbolic, and numerically at [`IDENTITY_POINTS`].
pub fn identities(engine: &mut ZetaEngine, n: u32) -> Result<SuiteReport, CliError> {
    let mut checks = vec![
        Check::equal("mass identity residual", mass_residual(n).to_string(), "0".into()),
        Check::equal(
            format!("sum of squares of GL({n})"),
            gl_fq_zeta(n, 1).sum_squares(),
            gl_order(n),
        ),
    ];
    let order = GroupKey::GLO2 { n }.order();
    let mut skipped = Vec::new();
    match engine.glo2_zeta(n, Q0::Symbolic) {
        Ok(z) => checks.push(Check::equal(
            format!("sum of squares of GLO2({n})"),
            z.value.symbolic().unwrap().sum_squares(),
            order.clone(),
        )),
        Err(GlzetaError::SymbolicUnavailable(what)) => {
            skipped.push(format!("symbolic GLO2({n}): {what} needs --support"))
        }
        Err(e) => return Err(e.into()),
    }
    for q in IDENTITY_POINTS {
        let m = engine.glo2_zeta(n, Q0::At(q))?.value.at(q)?;
        let want = order.eval_integer(q as i64).unwrap().to_string();
        checks.push(Check::equal(
            format!("sum of squares of GLO2({n}) at q={q}"),
            m.sum_squares().to_string(),
            want,
        ));
    }
    Ok(SuiteReport::new(format!("identities n={n}"), checks, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_fails_the_suite() {
        let ok = Check::equal("a", 1, 1);
        let bad = Check::equal("b", 1, 2);
        assert_eq!(bad.witness.as_deref(), Some("1 != 2"));
        assert!(SuiteReport::new("s".into(), vec![ok.clone()], vec![]).pass);
        assert!(!SuiteReport::new("s".into(), vec![ok, bad], vec![]).pass);
        assert!(!SuiteReport::new("s".into(), vec![], vec!["x".into()]).pass);
    }

    #[test]
    fn identities_without_support_skip_the_symbolic_check() {
        let mut e = ZetaEngine::default();
        let r = identities(&mut e, 4).unwrap();
        assert!(r.pass);
        assert_eq!(r.skipped.len(), 1);
        let r = identities(&mut e, 3).unwrap();
        assert!(r.pass && r.skipped.is_empty());
    }
}
