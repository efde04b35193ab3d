//! Polynomials in `x` over a finite field, used for characteristic
//! polynomials and Green symbols.

use super::{Elem, Ring};

/// Coefficients constant term first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldPoly {
    coeffs: Vec<Elem>,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { coeffs }
    }

    pub fn zero() -> Self {
        FieldPoly::default()
    }

    pub fn one() -> Self {
        FieldPoly::new(vec![1])
    }

    pub fn x() -> Self {
        FieldPoly::new(vec![0, 1])
    }

    pub fn constant(c: Elem) -> Self {
        FieldPoly::new(vec![c])
    }

    /// `x − a`.
    pub fn linear(field: &Ring, a: Elem) -> Self {
        FieldPoly::new(vec![field.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &FieldPoly, f: &Ring) -> FieldPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FieldPoly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Ring) -> FieldPoly {
        FieldPoly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &FieldPoly, f: &Ring) -> FieldPoly {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &FieldPoly, f: &Ring) -> FieldPoly {
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FieldPoly::new(out)
    }

    pub fn scale(&self, c: Elem, f: &Ring) -> FieldPoly {
        FieldPoly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn pow(&self, e: u32, f: &Ring) -> FieldPoly {
        (0..e).fold(FieldPoly::one(), |acc, _| acc.mul(self, f))
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &FieldPoly, f: &Ring) -> (FieldPoly, FieldPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.coeffs[dd]).expect("field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = f.mul(rem[top], lead_inv);
            let shift = top - dd;
            quot[shift] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, dc));
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (FieldPoly::new(quot), FieldPoly::new(rem))
    }

    pub fn rem(&self, d: &FieldPoly, f: &Ring) -> FieldPoly {
        self.divrem(d, f).1
    }

    pub fn monic(&self, f: &Ring) -> FieldPoly {
        match self.coeffs.last() {
            None => FieldPoly::zero(),
            Some(&l) => self.scale(f.inv(l).expect("field"), f),
        }
    }

    pub fn gcd(&self, other: &FieldPoly, f: &Ring) -> FieldPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, a: Elem, f: &Ring) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// The `code`-th monic polynomial of degree `d` (lower coefficients read
    /// as base-`q` digits of `code`).
    pub fn monic_from_code(f: &Ring, d: usize, mut code: u64) -> FieldPoly {
        let q = f.q() as u64;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((code % q) as Elem);
            code /= q;
        }
        coeffs.push(1);
        FieldPoly::new(coeffs)
    }
}

/// All monic irreducible polynomials of degree `d` over the field `f`, in
/// increasing code order.
pub fn monic_irreducibles(f: &Ring, d: usize) -> Vec<FieldPoly> {
    assert!(f.is_field(), "irreducibles are only enumerated over fields");
    let smaller: Vec<FieldPoly> = (1..=d / 2).flat_map(|e| monic_irreducibles(f, e)).collect();
    let total = (f.q() as u64).pow(d as u32);
    (0..total)
        .map(|c| FieldPoly::monic_from_code(f, d, c))
        .filter(|cand| smaller.iter().all(|g| !cand.rem(g, f).is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::count_irreducibles;

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for q in [2u32, 3, 4, 5] {
            let f = Ring::field_of_size(q).unwrap();
            for d in 1..=3 {
                assert_eq!(
                    monic_irreducibles(&f, d).len() as u64,
                    count_irreducibles(q as u64, d as u32),
                    "q={q} d={d}"
                );
            }
        }
        let f2 = Ring::field(2, 1).unwrap();
        assert_eq!(monic_irreducibles(&f2, 2), vec![FieldPoly::new(vec![1, 1, 1])]);
    }

    #[test]
    fn division() {
        let f = Ring::field(3, 1).unwrap();
        let a = FieldPoly::new(vec![1, 0, 2, 1]);
        let b = FieldPoly::new(vec![2, 1]);
        let (qq, r) = a.divrem(&b, &f);
        assert_eq!(qq.mul(&b, &f).add(&r, &f), a);
        let g = a.mul(&b, &f).gcd(&b.mul(&b, &f), &f);
        assert_eq!(g, b.monic(&f));
    }
}
