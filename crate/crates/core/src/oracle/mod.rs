//! Ground truth by explicit construction: matrix groups enumerated element
//! by element, their conjugacy classes, character degrees by Dixon's
//! method, and checks of the extension construction.

mod classes;
mod dixon;
mod extension;
mod group;
mod modp;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::canonical::{green_symbol, matrix_from_code, GreenSymbol};
use crate::error::ParseError;
use crate::matrices::MatrixError;
use crate::polyq::DegreeMultiset;
use crate::rings::{Ring, RingError};

pub use classes::{conjugacy_classes, generating_set, ClassData};
pub use dixon::{character_degrees, dixon_prime};
pub use extension::{type_representatives, verify_extension, ExtensionCheck, ExtensionReport};
pub use group::{build_group, centralizer_algebra_basis, centralizer_group, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("group of order {needed} exceeds the element budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("{classes} conjugacy classes exceed the limit {limit}")]
    ClassLimitExceeded { classes: usize, limit: usize },
    #[error("no prime below 2^32 is 1 mod {exponent}")]
    PrimeSearchFailed { exponent: u64 },
    #[error("Dixon's method failed: {0}")]
    DixonFailed(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("check `{check}` failed: {witness}")]
    CheckFailed { check: String, witness: String },
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_elements: u64,
    pub max_classes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 200_000,
            max_classes: 1_000,
        }
    }
}

/// A group the oracle can build.
///
/// Text forms: `GL(2,Z/9)`, `GL(3,F2[t]/t^2)`, `Units(F3[t]/t^3)` and
/// `Zent(4,F2;x^(3,1))`, the last being the centralizer in `GL_n(F_q)` of
/// the canonical matrix of a Green symbol.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpecifier {
    GL { n: usize, ring: Ring },
    Zent { n: usize, field: Ring, symbol: GreenSymbol },
    Units { ring: Ring },
}

impl GroupSpecifier {
    /// `Zent(n, F_q; x^λ)`, the group `G_λ` over `F_q`.
    pub fn glambda(field: &Ring, lambda: &crate::partition::Partition) -> GroupSpecifier {
        let symbol = GreenSymbol {
            parts: [(crate::rings::FieldPoly::x(), lambda.clone())].into(),
        };
        GroupSpecifier::Zent {
            n: lambda.size() as usize,
            field: field.clone(),
            symbol,
        }
    }
}

impl fmt::Display for GroupSpecifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpecifier::GL { n, ring } => write!(f, "GL({n},{ring})"),
            GroupSpecifier::Units { ring } => write!(f, "Units({ring})"),
            GroupSpecifier::Zent { n, field, symbol } => {
                write!(f, "Zent({n},{field};{})", symbol.display(field))
            }
        }
    }
}

impl FromStr for GroupSpecifier {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |r: &str| ParseError::new("group", s, r);
        let (head, body) = t.split_once('(').ok_or_else(|| err("expected NAME(...)"))?;
        let body = body.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
        let size = |x: &str| -> Result<usize, ParseError> {
            match x.parse::<usize>() {
                Ok(n) if (1..=4).contains(&n) => Ok(n),
                _ => Err(err("matrix size must be 1..4")),
            }
        };
        match head {
            "GL" => {
                let (n, ring) = body.split_once(',').ok_or_else(|| err("expected GL(n,R)"))?;
                Ok(GroupSpecifier::GL {
                    n: size(n)?,
                    ring: ring.parse()?,
                })
            }
            "Units" => Ok(GroupSpecifier::Units { ring: body.parse()? }),
            "Zent" => {
                let (n, rest) = body.split_once(',').ok_or_else(|| err("expected Zent(n,F;symbol)"))?;
                let (field, sym) = rest
                    .split_once(';')
                    .ok_or_else(|| err("expected Zent(n,F;symbol)"))?;
                let field: Ring = field.parse()?;
                if !field.is_field() {
                    return Err(err("Zent needs a field"));
                }
                let symbol = GreenSymbol::parse(&field, sym)?;
                let n = size(n)?;
                if symbol.size() as usize != n {
                    return Err(err("symbol size differs from n"));
                }
                Ok(GroupSpecifier::Zent { n, field, symbol })
            }
            _ => Err(err("expected GL, Units or Zent")),
        }
    }
}

/// Order, class count and (when requested) degrees of a built group.
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: usize,
    pub degrees: Option<DegreeMultiset>,
}

pub fn group_report(
    spec: &GroupSpecifier,
    budget: &Budget,
    with_degrees: bool,
) -> Result<GroupReport, OracleError> {
    let g = build_group(spec, budget)?;
    let cls = conjugacy_classes(&g);
    let degrees = if with_degrees {
        Some(character_degrees(&g, &cls, budget.max_classes)?)
    } else {
        None
    };
    Ok(GroupReport {
        group: spec.to_string(),
        order: g.order() as u64,
        exponent: g.exponent(),
        classes: cls.len(),
        degrees,
    })
}

pub fn degrees_of(spec: &GroupSpecifier, budget: &Budget) -> Result<DegreeMultiset, OracleError> {
    let g = build_group(spec, budget)?;
    let cls = conjugacy_classes(&g);
    character_degrees(&g, &cls, budget.max_classes)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeComparison {
    pub left: String,
    pub right: String,
    pub left_degrees: DegreeMultiset,
    pub right_degrees: DegreeMultiset,
    pub equal: bool,
    /// Degrees whose multiplicity differs, as `(degree, left, right)`.
    pub diff: Vec<(u128, u128, u128)>,
}

pub fn diff_multisets(a: &DegreeMultiset, b: &DegreeMultiset) -> Vec<(u128, u128, u128)> {
    let dims: BTreeSet<u128> = a.0.keys().chain(b.0.keys()).copied().collect();
    dims.into_iter()
        .filter_map(|d| {
            let (x, y) = (
                a.0.get(&d).copied().unwrap_or(0),
                b.0.get(&d).copied().unwrap_or(0),
            );
            (x != y).then_some((d, x, y))
        })
        .collect()
}

pub fn compare_degree_multisets(
    left: &GroupSpecifier,
    right: &GroupSpecifier,
    budget: &Budget,
) -> Result<DegreeComparison, OracleError> {
    let a = degrees_of(left, budget)?;
    let b = degrees_of(right, budget)?;
    let diff = diff_multisets(&a, &b);
    Ok(DegreeComparison {
        left: left.to_string(),
        right: right.to_string(),
        equal: diff.is_empty(),
        left_degrees: a,
        right_degrees: b,
        diff,
    })
}

/// `⨆_A {index_A · d : d ∈ Irr(Z_{GL_n(F_q)}(A))}` over similarity-class
/// representatives `A` of `M_n(F_q)`, found by brute force.
pub fn clifford_degrees(n: usize, field: &Ring, budget: &Budget) -> Result<DegreeMultiset, OracleError> {
    let q = field.q() as u64;
    let space = q.pow((n * n) as u32);
    if space > budget.max_elements {
        return Err(OracleError::BudgetExceeded {
            needed: space as u128,
            budget: budget.max_elements,
        });
    }
    let symbols: BTreeSet<String> = (0..space)
        .map(|c| green_symbol(&matrix_from_code(field, n, c)).display(field))
        .collect();
    let gl: u64 = (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product();
    let mut out = DegreeMultiset::default();
    for text in symbols {
        let symbol = GreenSymbol::parse(field, &text)?;
        let a = symbol.canonical_matrix(field)?;
        let z = centralizer_group(&a, budget)?;
        let cls = conjugacy_classes(&z);
        let degs = character_degrees(&z, &cls, budget.max_classes)?;
        out = out.add(&degs.scale_dims((gl / z.order() as u64) as u128));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(s: &str) -> DegreeMultiset {
        degrees_of(&s.parse().unwrap(), &Budget::default()).unwrap()
    }

    #[test]
    fn specifier_text() {
        for s in ["GL(2,Z/9)", "GL(3,F2[t]/t^2)", "Units(F3[t]/t^3)", "Zent(4,F2;x^(3,1))"] {
            let g: GroupSpecifier = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("GL(5,F2)".parse::<GroupSpecifier>().is_err());
        assert!("Zent(3,F2;x^(3,1))".parse::<GroupSpecifier>().is_err());
    }

    #[test]
    fn small_groups() {
        assert_eq!(degrees("GL(2,F2)"), DegreeMultiset::from_pairs(&[(1, 2), (2, 1)]));
        assert_eq!(degrees("GL(1,F2)"), DegreeMultiset::from_pairs(&[(1, 1)]));
        assert_eq!(degrees("Units(Z/9)"), DegreeMultiset::from_pairs(&[(1, 6)]));
        assert_eq!(
            degrees("Zent(3,F2;x^(2,1))"),
            DegreeMultiset::from_pairs(&[(1, 4), (2, 1)])
        );
    }

    #[test]
    fn orders() {
        let b = Budget::default();
        let order = |s: &str| build_group(&s.parse().unwrap(), &b).unwrap().order();
        assert_eq!(order("GL(2,Z/9)"), 3888);
        assert_eq!(order("GL(2,F2[t]/t^2)"), 96);
        assert_eq!(order("Zent(4,F2;x^(3,1))"), 16);
        assert_eq!(order("Units(F3[t]/t^3)"), 18);
    }

    #[test]
    fn length_two_models_agree() {
        let b = Budget::default();
        let cmp = compare_degree_multisets(
            &"GL(2,Z/4)".parse().unwrap(),
            &"GL(2,F2[t]/t^2)".parse().unwrap(),
            &b,
        )
        .unwrap();
        assert!(cmp.equal);
        assert_eq!(
            cmp.left_degrees,
            DegreeMultiset::from_pairs(&[(1, 4), (2, 5), (3, 4), (6, 1)])
        );
        let cmp = compare_degree_multisets(
            &"GL(1,Z/4)".parse().unwrap(),
            &"GL(1,F2[t]/t^2)".parse().unwrap(),
            &b,
        )
        .unwrap();
        assert!(cmp.equal && cmp.diff.is_empty());
    }

    #[test]
    fn clifford_reproduces_gl2() {
        let b = Budget::default();
        for (f, r) in [("F2", "GL(2,Z/4)"), ("F3", "GL(2,F3[t]/t^2)")] {
            let field: Ring = f.parse().unwrap();
            assert_eq!(clifford_degrees(2, &field, &b).unwrap(), degrees(r), "{f}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b = Budget {
            max_elements: 1000,
            max_classes: 5,
        };
        assert!(matches!(
            build_group(&"GL(2,Z/9)".parse().unwrap(), &b),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            degrees_of(&"GL(2,Z/4)".parse().unwrap(), &b),
            Err(OracleError::ClassLimitExceeded { classes: 14, limit: 5 })
        ));
    }
}
