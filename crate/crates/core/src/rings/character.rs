use crate::polyq::{rat, PolyQ};

use super::{Elem, Ring};

/// `ψ(x) = exp(2πi·Tr(x)/p)` on a finite field, carried as the exponent
/// `Tr(x) mod p`.
#[derive(Clone, Debug)]
pub struct AdditiveCharacter {
    field: Ring,
    index: Vec<u32>,
}

impl AdditiveCharacter {
    /// The canonical character of the residue field of `ring`.
    pub fn new(ring: &Ring) -> Self {
        let field = ring.residue_field();
        let index = (0..field.q()).map(|a| field.trace(a)).collect();
        AdditiveCharacter { field, index }
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    /// Order of the root of unity values, i.e. `p`.
    pub fn modulus(&self) -> u32 {
        self.field.characteristic_prime()
    }

    pub fn index(&self, x: Elem) -> u32 {
        self.index[x as usize]
    }
}

pub fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `N_d(q) = (1/d) Σ_{e|d} μ(e) q^{d/e}`, the number of monic irreducible
/// polynomials of degree `d` over `F_q`, as a polynomial in `q`.
pub fn count_irreducibles_poly(d: u32) -> PolyQ {
    let mut acc = PolyQ::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        acc += &PolyQ::monomial(rat(mobius(e)), d / e);
    }
    acc.scale(&crate::polyq::ratio(1, d as i64))
}

pub fn count_irreducibles(q: u64, d: u32) -> u64 {
    let mut acc: i128 = 0;
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        acc += mobius(e) as i128 * (q as i128).pow(d / e);
    }
    (acc / d as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(count_irreducibles_poly(1), PolyQ::q());
        assert_eq!(count_irreducibles_poly(2), PolyQ::parse("(q^2-q)/2").unwrap());
        assert_eq!(count_irreducibles(2, 2), 1);
        assert_eq!(count_irreducibles(2, 4), 3);
        assert_eq!(count_irreducibles(3, 3), 8);
    }

    #[test]
    fn gauss_identity() {
        for q in 2..=9u64 {
            for d in 1..=4u32 {
                let total: u64 = (1..=d)
                    .filter(|e| d % e == 0)
                    .map(|e| e as u64 * count_irreducibles(q, e))
                    .sum();
                assert_eq!(total, q.pow(d));
            }
        }
    }

    #[test]
    fn character_is_balanced() {
        for ring in [Ring::field(2, 2).unwrap(), Ring::field(3, 2).unwrap(), Ring::zp2(5).unwrap()] {
            let psi = AdditiveCharacter::new(&ring);
            let f = psi.field().clone();
            let p = psi.modulus();
            let mut hist = vec![0u32; p as usize];
            for x in f.elements() {
                hist[psi.index(x) as usize] += 1;
                for y in f.elements() {
                    assert_eq!(psi.index(f.add(x, y)), (psi.index(x) + psi.index(y)) % p);
                }
            }
            assert!(hist.iter().all(|&c| c == f.q() / p));
        }
    }
}
