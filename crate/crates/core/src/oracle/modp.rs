//! Arithmetic in a prime field `F_ℓ` with `ℓ < 2³²`: dense linear algebra,
//! characteristic polynomials and root finding.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub l: u64,
}

impl Fp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.l - a
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.l - 2)
    }

    pub fn from_u64(self, a: u64) -> u64 {
        a % self.l
    }

    /// A generator of `F_ℓ^*`.
    pub fn primitive_root(self) -> u64 {
        let n = self.l - 1;
        let primes = prime_factors(n);
        (2..self.l)
            .find(|&g| primes.iter().all(|&p| self.pow(g, n / p) != 1))
            .expect("prime fields have primitive roots")
    }

    // ---- polynomials, coefficient vectors constant-first, trimmed ----

    fn trim(p: &mut Vec<u64>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn poly_mul(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn poly_rem(self, a: &[u64], m: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = self.inv(m[dm]);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = self.mul(r[top], lead_inv);
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, mi));
            }
            Self::trim(&mut r);
        }
        r
    }

    pub fn poly_div(self, a: &[u64], m: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let dm = m.len() - 1;
        if r.len() <= dm {
            return Vec::new();
        }
        let mut quot = vec![0; r.len() - dm];
        let lead_inv = self.inv(m[dm]);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = self.mul(r[top], lead_inv);
            let shift = top - dm;
            quot[shift] = c;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, mi));
            }
            Self::trim(&mut r);
        }
        quot
    }

    pub fn poly_monic(self, a: &[u64]) -> Vec<u64> {
        let inv = self.inv(*a.last().expect("nonzero polynomial"));
        a.iter().map(|&c| self.mul(c, inv)).collect()
    }

    pub fn poly_gcd(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.poly_monic(&a)
        }
    }

    /// `base^e mod m`.
    pub fn poly_powmod(self, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut acc = vec![1];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots in `F_ℓ` of a nonzero polynomial, sorted.
    pub fn roots(self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<u64> {
        let f = self.poly_monic(f);
        // Split off the part with roots in F_ℓ: gcd(f, x^ℓ − x).
        let xl = self.poly_powmod(&[0, 1], self.l, &f);
        let mut xl_minus_x = xl.clone();
        xl_minus_x.resize(xl_minus_x.len().max(2), 0);
        xl_minus_x[1] = self.sub(xl_minus_x[1], 1);
        let g = self.poly_gcd(&f, &xl_minus_x);
        let g = if g.is_empty() { f } else { g };
        let mut out = Vec::new();
        self.split(&g, rng, &mut out);
        out.sort_unstable();
        out
    }

    fn split(self, g: &[u64], rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.neg(self.mul(g[0], self.inv(g[1])))),
            _ => {
                if g[0] == 0 {
                    // x divides g
                    out.push(0);
                    self.split(&g[1..], rng, out);
                    return;
                }
                loop {
                    let a = rng.gen_range(0..self.l);
                    let h = self.poly_powmod(&[a, 1], (self.l - 1) / 2, g);
                    let mut h1 = h.clone();
                    if h1.is_empty() {
                        h1.push(0);
                    }
                    h1[0] = self.sub(h1[0], 1);
                    let d = self.poly_gcd(g, &h1);
                    if d.len() > 1 && d.len() < g.len() {
                        let rest = self.poly_div(g, &d);
                        self.split(&d, rng, out);
                        self.split(&rest, rng, out);
                        return;
                    }
                }
            }
        }
    }

    // ---- dense matrices as Vec<Vec<u64>> (row-major) ----

    /// Characteristic polynomial `det(xI − M)`, constant-first and monic,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
                continue;
            };
            if piv != k + 1 {
                h.swap(piv, k + 1);
                for row in h.iter_mut() {
                    row.swap(piv, k + 1);
                }
            }
            let inv = self.inv(h[k + 1][k]);
            for i in k + 2..n {
                if h[i][k] == 0 {
                    continue;
                }
                let c = self.mul(h[i][k], inv);
                for j in 0..n {
                    let v = self.mul(c, h[k + 1][j]);
                    h[i][j] = self.sub(h[i][j], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(c, row[i]);
                    row[k + 1] = self.add(row[k + 1], v);
                }
            }
        }
        // p_0 = 1; p_{k+1} = (x − h_kk) p_k − Σ_{i<k} h_ik Π_{j=i+1..k} h_{j,j−1} p_i
        let mut p: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let mut next = self.poly_mul(&p[k], &[self.neg(h[k][k]), 1]);
            let mut prod = 1;
            for i in (0..k).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let c = self.mul(prod, h[i][k]);
                if c == 0 {
                    continue;
                }
                let term: Vec<u64> = p[i].iter().map(|&a| self.mul(a, c)).collect();
                next.resize(next.len().max(term.len()), 0);
                for (t, v) in term.into_iter().enumerate() {
                    next[t] = self.sub(next[t], v);
                }
            }
            Self::trim(&mut next);
            p.push(next);
        }
        p.pop().expect("at least the constant polynomial")
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{v : M v = 0}` for a square `M`.
    pub fn kernel(self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m.first().map_or(0, Vec::len);
        let mut rows = m.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; n];
                v[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = self.neg(row[f]);
                }
                v
            })
            .collect()
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn roots_and_charpoly() {
        let f = Fp { l: 13 };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // (x-2)(x-5)(x^2+1) has roots 2, 5 and the square roots of -1: 5, 8
        let p = f.poly_mul(&f.poly_mul(&[11, 1], &[8, 1]), &[1, 0, 1]);
        assert_eq!(f.roots(&p, &mut rng), vec![2, 5, 8]);
        let m = vec![vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 7]];
        // (x-2)^2 (x-7)
        let expect = f.poly_mul(&f.poly_mul(&[11, 1], &[11, 1]), &[6, 1]);
        assert_eq!(f.charpoly(&m), expect);
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        let cp = f.charpoly(&m);
        // det(M) = -3, trace 16
        assert_eq!(cp[0], f.neg(f.from_u64(13 - 3)));
        assert_eq!(cp[2], f.neg(16 % 13));
    }

    #[test]
    fn kernels() {
        let f = Fp { l: 7 };
        let m = vec![vec![1, 2], vec![2, 4]];
        let k = f.kernel(&m);
        assert_eq!(k, vec![vec![5, 1]]);
    }
}
