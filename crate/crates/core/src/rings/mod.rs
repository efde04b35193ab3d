//! Finite coefficient rings: fields `F_{p^m}`, Galois rings `GR(p², m)`
//! (with `Z/p²` as the case `m = 1`) and truncated polynomial rings
//! `F_{p^m}[t]/t^ℓ`.
//!
//! Elements are `u32` codes in `0..size`, always reduced. Code `0` is zero
//! and code `1` is one in every ring.
//!
//! * Field: base-`p` digits of the coefficient vector in the generator `z`.
//! * Galois: base-`p²` digits of the coefficient vector in `z`.
//! * Truncated: base-`q` digits `a_0 + a_1 q + …` of `Σ a_j t^j`.

mod character;
mod conway;
mod poly;
mod text;

use std::fmt;
use std::sync::Arc;

pub use character::{count_irreducibles, count_irreducibles_poly, mobius, AdditiveCharacter};
pub use conway::conway_coefficients;
pub use poly::{monic_irreducibles, FieldPoly};

pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("no field modulus recorded for F_{p}^{m}")]
    UnsupportedField { p: u32, m: u32 },
    #[error("modulus for F_{p}^{m} is not primitive")]
    BadModulus { p: u32, m: u32 },
    #[error("ring of size {0} is too large")]
    TooLarge(u64),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operation requires a ring of length 2")]
    NotLengthTwo,
    #[error("length must be at least 1")]
    ZeroLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Field { p: u32, m: u32 },
    /// `GR(p², m)`; `m = 1` is `Z/p²`.
    Galois { p: u32, m: u32 },
    Truncated { p: u32, m: u32, len: u32 },
}

/// Size bound below which full addition and multiplication tables are kept.
const TABLE_LIMIT: u32 = 512;

struct RingData {
    kind: RingKind,
    p: u32,
    m: u32,
    q: u32,
    size: u32,
    len: u32,
    /// Monic modulus over `F_p` without its leading coefficient.
    modulus: Vec<u32>,
    /// `exp[i] = z^i` and `log[a]` for the residue field.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_t: Vec<u32>,
    mul_t: Vec<u32>,
    inv_t: Vec<u32>,
}

/// A concrete finite ring; cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.0.kind == other.0.kind
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.kind.hash(h)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn checked_pow(base: u32, e: u32) -> Result<u32, RingError> {
    let v = (base as u64).pow(e);
    if v > 1 << 24 {
        return Err(RingError::TooLarge(v));
    }
    Ok(v as u32)
}

impl Ring {
    pub fn new(kind: RingKind) -> Result<Ring, RingError> {
        let (p, m, len) = match kind {
            RingKind::Field { p, m } => (p, m, 1),
            RingKind::Galois { p, m } => (p, m, 2),
            RingKind::Truncated { p, m, len } => (p, m, len),
        };
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if len == 0 || m == 0 {
            return Err(RingError::ZeroLength);
        }
        let modulus = conway_coefficients(p, m).ok_or(RingError::UnsupportedField { p, m })?;
        let q = checked_pow(p, m)?;
        let size = checked_pow(q, len)?;
        let (exp, log) = field_tables(p, m, q, &modulus).ok_or(RingError::BadModulus { p, m })?;
        let mut data = RingData {
            kind,
            p,
            m,
            q,
            size,
            len,
            modulus,
            exp,
            log,
            add_t: Vec::new(),
            mul_t: Vec::new(),
            inv_t: Vec::new(),
        };
        if size <= TABLE_LIMIT {
            let r = Ring(Arc::new(data));
            let n = size as usize;
            let mut add_t = vec![0; n * n];
            let mut mul_t = vec![0; n * n];
            let mut inv_t = vec![0; n];
            for a in 0..size {
                for b in 0..size {
                    add_t[a as usize * n + b as usize] = r.add_slow(a, b);
                    mul_t[a as usize * n + b as usize] = r.mul_slow(a, b);
                }
                if r.is_unit(a) {
                    inv_t[a as usize] = r.inv_slow(a);
                }
            }
            data = Arc::try_unwrap(r.0).ok().expect("unique");
            data.add_t = add_t;
            data.mul_t = mul_t;
            data.inv_t = inv_t;
        }
        Ok(Ring(Arc::new(data)))
    }

    /// `F_{p^m}`.
    pub fn field(p: u32, m: u32) -> Result<Ring, RingError> {
        Ring::new(RingKind::Field { p, m })
    }

    /// `F_q` for a prime power `q`.
    pub fn field_of_size(q: u32) -> Result<Ring, RingError> {
        let (p, m) = prime_power(q).ok_or(RingError::NotPrime(q))?;
        Ring::field(p, m)
    }

    /// `Z/p²`.
    pub fn zp2(p: u32) -> Result<Ring, RingError> {
        Ring::new(RingKind::Galois { p, m: 1 })
    }

    pub fn galois(p: u32, m: u32) -> Result<Ring, RingError> {
        Ring::new(RingKind::Galois { p, m })
    }

    /// `F_{p^m}[t]/t^len`.
    pub fn truncated(p: u32, m: u32, len: u32) -> Result<Ring, RingError> {
        Ring::new(RingKind::Truncated { p, m, len })
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }

    pub fn characteristic_prime(&self) -> u32 {
        self.0.p
    }

    /// Degree of the residue field over `F_p`.
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Size of the residue field.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Length as a module over itself: 1 for fields.
    pub fn length(&self) -> u32 {
        self.0.len
    }

    pub fn is_field(&self) -> bool {
        self.0.len == 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.size
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn residue_field(&self) -> Ring {
        if self.is_field() {
            return self.clone();
        }
        Ring::field(self.0.p, self.0.m).expect("residue field of a valid ring")
    }

    // ---- residue field primitives (codes in 0..q) ----

    fn f_add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn f_neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return (p - a) % p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    fn f_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.0;
        let i = (d.log[a as usize] + d.log[b as usize]) % (d.q - 1);
        d.exp[i as usize]
    }

    fn f_inv(&self, a: u32) -> u32 {
        let d = &self.0;
        let i = (d.q - 1 - d.log[a as usize]) % (d.q - 1);
        d.exp[i as usize]
    }

    // ---- ring arithmetic ----

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if !self.0.add_t.is_empty() {
            return self.0.add_t[(a * self.0.size + b) as usize];
        }
        self.add_slow(a, b)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if !self.0.mul_t.is_empty() {
            return self.0.mul_t[(a * self.0.size + b) as usize];
        }
        self.mul_slow(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match self.0.kind {
            RingKind::Field { .. } => self.f_neg(a),
            RingKind::Galois { p, .. } => {
                let pp = p * p;
                let digits = to_digits(a, pp, self.0.m);
                from_digits(digits.iter().map(|&c| (pp - c) % pp), pp)
            }
            RingKind::Truncated { .. } => {
                let digits = to_digits(a, self.0.q, self.0.len);
                from_digits(digits.iter().map(|&c| self.f_neg(c)), self.0.q)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.reduce_mod_pi(a) != 0
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, RingError> {
        if !self.is_unit(a) {
            return Err(RingError::NotAUnit);
        }
        if !self.0.inv_t.is_empty() {
            return Ok(self.0.inv_t[a as usize]);
        }
        Ok(self.inv_slow(a))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer under `Z → R`.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.p as i64;
        match self.0.kind {
            RingKind::Field { .. } | RingKind::Truncated { .. } => n.rem_euclid(p) as u32,
            RingKind::Galois { .. } => n.rem_euclid(p * p) as u32,
        }
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        match self.0.kind {
            RingKind::Field { .. } => self.f_add(a, b),
            RingKind::Galois { p, m } => {
                let pp = p * p;
                let (x, y) = (to_digits(a, pp, m), to_digits(b, pp, m));
                from_digits(x.iter().zip(&y).map(|(&u, &v)| (u + v) % pp), pp)
            }
            RingKind::Truncated { len, .. } => {
                let q = self.0.q;
                let (x, y) = (to_digits(a, q, len), to_digits(b, q, len));
                from_digits(x.iter().zip(&y).map(|(&u, &v)| self.f_add(u, v)), q)
            }
        }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        match self.0.kind {
            RingKind::Field { .. } => self.f_mul(a, b),
            RingKind::Galois { p, m } => {
                let pp = (p * p) as u64;
                let x = to_digits(a, p * p, m);
                let y = to_digits(b, p * p, m);
                let m = m as usize;
                let mut prod = vec![0u64; 2 * m];
                for i in 0..m {
                    for j in 0..m {
                        prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % pp;
                    }
                }
                // z^m = −Σ c_i z^i
                for k in (m..2 * m).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &mc) in self.0.modulus.iter().enumerate() {
                        let sub = c * mc as u64 % pp;
                        prod[k - m + i] = (prod[k - m + i] + pp - sub) % pp;
                    }
                }
                from_digits(prod[..m].iter().map(|&c| c as u32), p * p)
            }
            RingKind::Truncated { len, .. } => {
                let q = self.0.q;
                let x = to_digits(a, q, len);
                let y = to_digits(b, q, len);
                let len = len as usize;
                let mut out = vec![0u32; len];
                for i in 0..len {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..len - i {
                        out[i + j] = self.f_add(out[i + j], self.f_mul(x[i], y[j]));
                    }
                }
                from_digits(out.into_iter(), q)
            }
        }
    }

    fn inv_slow(&self, a: Elem) -> Elem {
        if self.is_field() {
            return self.f_inv(a);
        }
        // Newton iteration b ↦ b(2 − ab) doubles the π-adic precision.
        let mut b = self.lift(self.f_inv(self.reduce_mod_pi(a)));
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.0.len {
            b = self.mul_slow(b, self.sub(two, self.mul_slow(a, b)));
            prec *= 2;
        }
        b
    }

    // ---- local ring structure ----

    /// The uniformiser: `p` in a Galois ring, `t` in a truncated ring, `0`
    /// in a field.
    pub fn pi(&self) -> Elem {
        match self.0.kind {
            RingKind::Field { .. } => 0,
            RingKind::Galois { p, .. } => p,
            RingKind::Truncated { len, .. } => {
                if len > 1 {
                    self.0.q
                } else {
                    0
                }
            }
        }
    }

    /// Reduction `O → O/π`, returning a residue field code.
    pub fn reduce_mod_pi(&self, a: Elem) -> Elem {
        match self.0.kind {
            RingKind::Field { .. } => a,
            RingKind::Galois { p, m } => {
                let digits = to_digits(a, p * p, m);
                from_digits(digits.iter().map(|&c| c % p), p)
            }
            RingKind::Truncated { .. } => a % self.0.q,
        }
    }

    /// Digit-wise lift of a residue code (not multiplicative in general).
    pub fn lift(&self, a: Elem) -> Elem {
        match self.0.kind {
            RingKind::Field { .. } | RingKind::Truncated { .. } => a,
            RingKind::Galois { p, m } => {
                let digits = to_digits(a, p, m);
                from_digits(digits.into_iter(), p * p)
            }
        }
    }

    /// The multiplicative section `s: F_q → O`, with `s(0) = 0` and `s`
    /// multiplicative. Constant lift in `F_q[t]/t^ℓ`, Teichmüller lift
    /// `â^q` in a Galois ring.
    pub fn teichmuller(&self, a: Elem) -> Elem {
        match self.0.kind {
            RingKind::Galois { .. } => self.pow(self.lift(a), self.0.q as u64),
            _ => a,
        }
    }

    /// `π · â` for a residue code `a`; independent of the lift chosen.
    pub fn pi_times(&self, a: Elem) -> Elem {
        self.mul(self.pi(), self.lift(a))
    }

    /// Some `b` with `a = π·b`, for `a ∈ πO` (`None` otherwise). In a field
    /// only `0` qualifies and `b = 0`.
    pub fn div_pi_elem(&self, a: Elem) -> Option<Elem> {
        if self.reduce_mod_pi(a) != 0 {
            return None;
        }
        Some(match self.0.kind {
            RingKind::Field { .. } => 0,
            RingKind::Galois { p, m } => {
                let digits = to_digits(a, p * p, m);
                from_digits(digits.iter().map(|&c| c / p), p * p)
            }
            RingKind::Truncated { .. } => a / self.0.q,
        })
    }

    /// For a length-2 ring and `a ∈ πO`, the residue `b` with `a = π·b̂`.
    pub fn div_pi(&self, a: Elem) -> Result<Elem, RingError> {
        if self.0.len != 2 {
            return Err(RingError::NotLengthTwo);
        }
        if self.reduce_mod_pi(a) != 0 {
            return Err(RingError::NotAUnit);
        }
        Ok(match self.0.kind {
            RingKind::Galois { p, m } => {
                let digits = to_digits(a, p * p, m);
                from_digits(digits.iter().map(|&c| c / p), p)
            }
            _ => a / self.0.q,
        })
    }

    /// `Tr_{F_q/F_p}` of a residue field code, as an integer mod `p`.
    pub fn trace(&self, a: Elem) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.m {
            acc = self.f_add(acc, x);
            x = self.f_pow(x, self.0.p as u64);
        }
        debug_assert!(acc < self.0.p);
        acc
    }

    fn f_pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let d = &self.0;
        let i = (d.log[a as usize] as u64 * e) % (d.q as u64 - 1);
        d.exp[i as usize]
    }

    /// Residue field arithmetic, exposed for code working over `O/π`.
    pub fn residue_mul(&self, a: Elem, b: Elem) -> Elem {
        self.f_mul(a, b)
    }

    pub fn residue_add(&self, a: Elem, b: Elem) -> Elem {
        self.f_add(a, b)
    }

    /// A generator of the multiplicative group of the residue field.
    pub fn primitive_element(&self) -> Elem {
        self.0.exp[1 % (self.0.q as usize - 1).max(1)]
    }
}

/// `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

fn to_digits(mut a: u32, base: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(a % base);
        a /= base;
    }
    out
}

fn from_digits(digits: impl DoubleEndedIterator<Item = u32>, base: u32) -> u32 {
    digits.rev().fold(0, |acc, d| acc * base + d)
}

/// Builds `exp`/`log` tables by powering the class of `z` modulo the given
/// polynomial. Fails unless `z` has order `q − 1`, which certifies that the
/// modulus is irreducible and primitive.
fn field_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let m = m as usize;
    let mut exp = vec![0u32; q as usize];
    let mut log = vec![u32::MAX; q as usize];
    let mut cur = vec![0u32; m];
    cur[0] = 1;
    for i in 0..(q - 1) {
        let code = from_digits(cur.iter().copied(), p);
        if log[code as usize] != u32::MAX {
            return None;
        }
        exp[i as usize] = code;
        log[code as usize] = i;
        // multiply by z
        let top = cur[m - 1];
        for k in (1..m).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        for k in 0..m {
            cur[k] = (cur[k] + p * p - (top * modulus[k]) % p) % p;
        }
    }
    if from_digits(cur.iter().copied(), p) != 1 {
        return None;
    }
    exp[q as usize - 1] = 1;
    log[0] = 0;
    Some((exp, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let z9 = Ring::zp2(3).unwrap();
        assert_eq!(z9.mul(4, 7), 1);
        let f2t = Ring::truncated(2, 1, 2).unwrap();
        let one_plus_t = 1 + 2;
        assert_eq!(f2t.mul(one_plus_t, one_plus_t), 1);
        let f4 = Ring::field(2, 2).unwrap();
        // z·z = z + 1
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(z9.reduce_mod_pi(7), 1);
        assert_eq!(f2t.reduce_mod_pi(one_plus_t), 1);
        assert_eq!(Ring::zp2(5).unwrap().reduce_mod_pi(20), 0);
        assert_eq!(z9.teichmuller(2), 8);
        assert_eq!(z9.teichmuller(1), 1);
    }

    #[test]
    fn inverses() {
        for r in [
            Ring::zp2(3).unwrap(),
            Ring::galois(2, 2).unwrap(),
            Ring::truncated(3, 1, 3).unwrap(),
            Ring::truncated(2, 2, 2).unwrap(),
            Ring::field(5, 2).unwrap(),
            Ring::galois(3, 3).unwrap(),
        ] {
            for a in r.elements() {
                match r.inv(a) {
                    Ok(b) => assert_eq!(r.mul(a, b), 1, "{r} {a}"),
                    Err(_) => assert!(!r.is_unit(a)),
                }
            }
            let expected = r.q().pow(r.length() - 1) * (r.q() - 1);
            assert_eq!(r.units().len() as u32, expected, "{r}");
        }
    }

    #[test]
    fn pi_division() {
        let r = Ring::galois(2, 2).unwrap();
        for a in 0..r.q() {
            let x = r.pi_times(a);
            assert_eq!(r.div_pi(x).unwrap(), a);
        }
        assert!(r.div_pi(1).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
