//! Similarity classification over a finite field: characteristic
//! polynomial factorisation, Green symbols, types, and a brute-force census
//! of `M_n(F_q)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::matrices::{jordan_matrix, Matrix, MatrixError, Primary};
use crate::partition::Partition;
use crate::rings::{monic_irreducibles, Elem, FieldPoly, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("enumerating {count} matrices exceeds the budget of {budget}")]
    TooLarge { count: u128, budget: u128 },
    #[error("canonical forms need a field, got {0}")]
    NotAField(String),
}

/// Monic irreducibles over one field up to a degree bound.
pub struct Irreducibles {
    field: Ring,
    by_degree: Vec<FieldPoly>,
}

impl Irreducibles {
    pub fn new(field: &Ring, max_degree: usize) -> Self {
        let by_degree = (1..=max_degree).flat_map(|d| monic_irreducibles(field, d)).collect();
        Irreducibles {
            field: field.clone(),
            by_degree,
        }
    }

    pub fn all(&self) -> &[FieldPoly] {
        &self.by_degree
    }

    /// Factorisation of a monic polynomial by trial division.
    pub fn factor(&self, p: &FieldPoly) -> BTreeMap<FieldPoly, u32> {
        let f = &self.field;
        let mut rest = p.monic(f);
        let mut out = BTreeMap::new();
        for g in &self.by_degree {
            if rest.degree().unwrap_or(0) < g.degree().unwrap() {
                break;
            }
            loop {
                let (quot, rem) = rest.divrem(g, f);
                if !rem.is_zero() {
                    break;
                }
                *out.entry(g.clone()).or_insert(0) += 1;
                rest = quot;
            }
        }
        assert_eq!(rest.degree(), Some(0), "irreducible list too short");
        out
    }
}

pub fn factor_charpoly(a: &Matrix) -> BTreeMap<FieldPoly, u32> {
    Irreducibles::new(a.ring(), a.rows()).factor(&a.charpoly())
}

/// The Green symbol `f ↦ ν(f)` of a similarity class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GreenSymbol {
    pub parts: BTreeMap<FieldPoly, Partition>,
}

impl GreenSymbol {
    pub fn size(&self) -> u32 {
        self.parts
            .iter()
            .map(|(f, nu)| f.degree().unwrap() as u32 * nu.size())
            .sum()
    }

    pub fn display(&self, field: &Ring) -> String {
        self.parts
            .iter()
            .map(|(f, nu)| format!("{}^{}", f.display(field), nu))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses `x^2+x+1^(1,1);x+1^(2)`.
    pub fn parse(field: &Ring, s: &str) -> Result<GreenSymbol, ParseError> {
        let mut parts = BTreeMap::new();
        for item in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let at = item
                .rfind("^(")
                .ok_or_else(|| ParseError::new("Green symbol", s, "expected f^(partition)"))?;
            let f = FieldPoly::parse(field, &item[..at])?.monic(field);
            let nu: Partition = item[at + 1..].parse()?;
            if parts.insert(f, nu).is_some() {
                return Err(ParseError::new("Green symbol", s, "repeated polynomial"));
            }
        }
        if parts.is_empty() {
            return Err(ParseError::new("Green symbol", s, "empty symbol"));
        }
        Ok(GreenSymbol { parts })
    }

    /// The canonical representative `⊕ J_ν(f)`.
    pub fn canonical_matrix(&self, field: &Ring) -> Result<Matrix, MatrixError> {
        let data: Vec<(Primary, Partition)> = self
            .parts
            .iter()
            .map(|(f, nu)| {
                let prim = if f.degree() == Some(1) {
                    Primary::Eigenvalue(field.neg(f.coeff(0)))
                } else {
                    Primary::Irreducible(f.clone())
                };
                (prim, nu.clone())
            })
            .collect();
        jordan_matrix(field, &data)
    }
}

/// Green symbol of `a`, reading the partitions off the kernel dimensions
/// of `f(a)^k`.
pub fn green_symbol(a: &Matrix) -> GreenSymbol {
    green_symbol_with(a, &Irreducibles::new(a.ring(), a.rows()))
}

pub fn green_symbol_with(a: &Matrix, irr: &Irreducibles) -> GreenSymbol {
    let n = a.rows();
    let factors = irr.factor(&a.charpoly());
    let mut parts = BTreeMap::new();
    for (f, e) in factors {
        let d = f.degree().unwrap();
        let b = a.eval_poly(&f);
        let mut power = b.clone();
        let mut prev_kernel = 0;
        let mut conj = Vec::new();
        for _ in 0..e {
            let kernel = n - power.rank();
            if kernel == prev_kernel {
                break;
            }
            conj.push(((kernel - prev_kernel) / d) as u32);
            prev_kernel = kernel;
            if kernel == d * e as usize {
                break;
            }
            power = power.mul(&b);
        }
        let nu = Partition::new(conj).expect("kernel jumps decrease").conjugate();
        parts.insert(f, nu);
    }
    GreenSymbol { parts }
}

/// One slot `(d, ν)` of a type, with multiplicity `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeSlot {
    pub d: u32,
    pub nu: Partition,
    pub r: u32,
}

/// A similarity-class type: a multiset of `(deg f, ν)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TypeSymbol {
    slots: Vec<TypeSlot>,
}

fn slot_key(s: &TypeSlot) -> (u32, u32, Partition) {
    (s.d, s.nu.size(), s.nu.clone())
}

impl Ord for TypeSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |t: &TypeSymbol| {
            t.slots
                .iter()
                .map(|s| (slot_key(s), s.r))
                .collect::<Vec<_>>()
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for TypeSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl TypeSymbol {
    /// Merges equal `(d, ν)` and sorts slots by `d`, then `|ν|`, then `ν`
    /// in lexicographic order.
    pub fn new(slots: impl IntoIterator<Item = TypeSlot>) -> Self {
        let mut merged: Vec<TypeSlot> = Vec::new();
        for s in slots {
            if s.r == 0 {
                continue;
            }
            match merged.iter_mut().find(|t| t.d == s.d && t.nu == s.nu) {
                Some(t) => t.r += s.r,
                None => merged.push(s),
            }
        }
        merged.sort_by_key(slot_key);
        TypeSymbol { slots: merged }
    }

    pub fn slots(&self) -> &[TypeSlot] {
        &self.slots
    }

    pub fn size(&self) -> u32 {
        self.slots.iter().map(|s| s.d * s.nu.size() * s.r).sum()
    }

    /// Whether every slot is a single eigenvalue block, `d = 1`.
    pub fn is_split(&self) -> bool {
        self.slots.iter().all(|s| s.d == 1)
    }
}

impl fmt::Display for TypeSymbol {
    /// `1:(1)^2;2:(1)`: slots `d:ν^r`, the `^r` omitted when `r = 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}:{}", s.d, s.nu)?;
            if s.r != 1 {
                write!(f, "^{}", s.r)?;
            }
        }
        Ok(())
    }
}

impl FromStr for TypeSymbol {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let err = |r: &str| ParseError::new("type symbol", s, r);
        let mut slots = Vec::new();
        for item in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (d, rest) = item.split_once(':').ok_or_else(|| err("expected d:(ν)"))?;
            let d: u32 = d.trim().parse().map_err(|_| err("bad degree"))?;
            let (nu, r) = match rest.rsplit_once(")^") {
                Some((nu, r)) => (format!("{nu})"), r.parse().map_err(|_| err("bad multiplicity"))?),
                None => (rest.to_string(), 1),
            };
            if d == 0 || r == 0 {
                return Err(err("degree and multiplicity must be positive"));
            }
            slots.push(TypeSlot {
                d,
                nu: nu.parse()?,
                r,
            });
        }
        if slots.is_empty() {
            return Err(err("empty type"));
        }
        Ok(TypeSymbol::new(slots))
    }
}

impl TryFrom<String> for TypeSymbol {
    type Error = ParseError;
    fn try_from(s: String) -> Result<Self, ParseError> {
        s.parse()
    }
}

impl From<TypeSymbol> for String {
    fn from(t: TypeSymbol) -> String {
        t.to_string()
    }
}

pub fn type_of(symbol: &GreenSymbol) -> TypeSymbol {
    TypeSymbol::new(symbol.parts.iter().map(|(f, nu)| TypeSlot {
        d: f.degree().unwrap() as u32,
        nu: nu.clone(),
        r: 1,
    }))
}

/// Census of one type in `M_n(F_q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCensus {
    /// Number of similarity classes of this type.
    pub classes: u64,
    /// Distinct class sizes observed (a single value for a genuine type).
    pub class_sizes: BTreeSet<u64>,
    /// Whether the classes consist of invertible matrices.
    pub invertible: bool,
}

pub const DEFAULT_CLASSIFY_BUDGET: u128 = 2_000_000;

/// Brute-force pass over all of `M_n(F_q)`, bucketing matrices by Green
/// symbol and then by type.
pub fn classify_space(
    n: usize,
    field: &Ring,
    budget: u128,
) -> Result<BTreeMap<TypeSymbol, TypeCensus>, CanonicalError> {
    if !field.is_field() {
        return Err(CanonicalError::NotAField(field.to_string()));
    }
    let q = field.q() as u128;
    let count = q.pow((n * n) as u32);
    if count > budget {
        return Err(CanonicalError::TooLarge { count, budget });
    }
    let irr = Irreducibles::new(field, n);
    let chunk = 4096u64;
    let total = count as u64;
    let symbols: HashMap<GreenSymbol, u64> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local: HashMap<GreenSymbol, u64> = HashMap::new();
            for code in c * chunk..((c + 1) * chunk).min(total) {
                let a = matrix_from_code(field, n, code);
                *local.entry(green_symbol_with(&a, &irr)).or_insert(0) += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out: BTreeMap<TypeSymbol, TypeCensus> = BTreeMap::new();
    for (sym, size) in symbols {
        let invertible = !sym.parts.contains_key(&FieldPoly::x());
        let entry = out.entry(type_of(&sym)).or_default();
        entry.classes += 1;
        entry.class_sizes.insert(size);
        entry.invertible = invertible;
    }
    Ok(out)
}

/// The `code`-th matrix of `M_n(F_q)`, entries read as base-`q` digits in
/// row-major order.
pub fn matrix_from_code(field: &Ring, n: usize, mut code: u64) -> Matrix {
    let q = field.q() as u64;
    let data: Vec<Elem> = (0..n * n)
        .map(|_| {
            let d = (code % q) as Elem;
            code /= q;
            d
        })
        .collect();
    Matrix::from_vec(field, n, n, data)
}
