//! Dense matrices over the rings of [`crate::rings`], with Jordan and
//! companion block constructors and the block upper Toeplitz spaces that
//! realise centralizers of nilpotent matrices.

use std::fmt;

use crate::error::ParseError;
use crate::partition::Partition;
use crate::rings::{Elem, FieldPoly, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is singular (determinant is not a unit)")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("primary component `{0}` appears more than once")]
    DuplicateEigenvalue(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]({})", self.ring, self)
    }
}

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        Matrix::scalar(ring, n, 1)
    }

    pub fn scalar(ring: &Ring, n: usize, a: Elem) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, a);
        }
        m
    }

    /// Row-major entries; panics unless `data.len() == rows * cols`.
    pub fn from_vec(ring: &Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        assert!(data.iter().all(|&a| a < ring.size()), "unreduced entry");
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ring: &Ring, rows: &[Vec<Elem>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_vec(ring, r, c, rows.concat())
    }

    /// The principal nilpotent `N_n`: ones on the superdiagonal.
    pub fn principal_nilpotent(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 1..n {
            m.set(i - 1, i, 1);
        }
        m
    }

    /// `J_n(a) = aI + N_n`.
    pub fn jordan_block(ring: &Ring, n: usize, a: Elem) -> Matrix {
        Matrix::scalar(ring, n, a).add(&Matrix::principal_nilpotent(ring, n))
    }

    /// Companion matrix of a monic `f`: ones on the superdiagonal and the
    /// negated coefficients of `f` along the last row.
    pub fn companion(ring: &Ring, f: &FieldPoly) -> Matrix {
        let d = f.degree().expect("nonzero polynomial");
        let mut m = Matrix::principal_nilpotent(ring, d);
        for j in 0..d {
            m.set(d - 1, j, ring.neg(f.coeff(j)));
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: Elem) {
        self.data[i * self.cols + j] = a;
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    /// Entry-wise map into another ring.
    pub fn map_into(&self, ring: &Ring, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = &self.ring;
        Matrix {
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| r.add(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|a| self.ring.neg(a))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        self.map(|a| self.ring.mul(a, c))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let r = &self.ring;
        let mut out = Matrix::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(out.data[idx], r.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(&self.ring, self.rows), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> Elem {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| self.ring.add(acc, self.get(i, i)))
    }

    /// Determinant by elimination on unit pivots. A column without a unit
    /// lies in `πO`; its factor of `π` is pulled out and elimination
    /// continues on the quotient column.
    pub fn det(&self) -> Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let r = &self.ring;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut factor: Elem = 1;
        for col in 0..n {
            loop {
                if factor == 0 {
                    return 0;
                }
                if let Some(piv) = (col..n).find(|&i| r.is_unit(m[i * n + col])) {
                    if piv != col {
                        for j in 0..n {
                            m.swap(piv * n + j, col * n + j);
                        }
                        factor = r.neg(factor);
                    }
                    break;
                }
                if r.is_field() {
                    return 0;
                }
                factor = r.mul(factor, r.pi());
                for i in col..n {
                    m[i * n + col] = div_pi_elem(r, m[i * n + col]);
                }
            }
            let pinv = r.inv(m[col * n + col]).expect("unit pivot");
            factor = r.mul(factor, m[col * n + col]);
            for i in col + 1..n {
                let c = r.mul(m[i * n + col], pinv);
                if c == 0 {
                    continue;
                }
                for j in col..n {
                    let v = r.mul(c, m[col * n + j]);
                    m[i * n + j] = r.sub(m[i * n + j], v);
                }
            }
        }
        factor
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.ring.is_unit(self.det())
    }

    /// Gauss–Jordan inversion pivoting on units.
    pub fn inv(&self) -> Result<Matrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape("inverse of a non-square matrix".into()));
        }
        let r = &self.ring;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut b = Matrix::identity(r, n).data;
        for col in 0..n {
            let piv = (col..n)
                .find(|&i| r.is_unit(a[i * n + col]))
                .ok_or(MatrixError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    b.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = r.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = r.mul(a[col * n + j], pinv);
                b[col * n + j] = r.mul(b[col * n + j], pinv);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let c = a[i * n + col];
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = r.sub(a[i * n + j], r.mul(c, a[col * n + j]));
                    b[i * n + j] = r.sub(b[i * n + j], r.mul(c, b[col * n + j]));
                }
            }
        }
        Ok(Matrix::from_vec(r, n, n, b))
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Matrix, MatrixError> {
        Ok(g.mul(self).mul(&g.inv()?))
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Entry-wise reduction modulo `π`, landing in the residue field.
    pub fn reduce_mod_pi(&self) -> Matrix {
        let f = self.ring.residue_field();
        self.map_into(&f, |a| self.ring.reduce_mod_pi(a))
    }

    /// Entry-wise multiplicative section `𝔰` from the residue field.
    pub fn teichmuller_lift(residue: &Matrix, ring: &Ring) -> Matrix {
        residue.map_into(ring, |a| ring.teichmuller(a))
    }

    /// Block diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let ring = blocks.first().expect("at least one block").ring.clone();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(&ring, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Characteristic polynomial `det(xI − A)` over a field, by reduction to
    /// Hessenberg form.
    pub fn charpoly(&self) -> FieldPoly {
        assert!(self.ring.is_field() && self.is_square());
        let f = &self.ring;
        let n = self.rows;
        let mut h = self.data.clone();
        // Similarity transform to upper Hessenberg form.
        for k in 0..n.saturating_sub(2) {
            let Some(piv) = (k + 1..n).find(|&i| h[i * n + k] != 0) else {
                continue;
            };
            if piv != k + 1 {
                for j in 0..n {
                    h.swap(piv * n + j, (k + 1) * n + j);
                }
                for i in 0..n {
                    h.swap(i * n + piv, i * n + k + 1);
                }
            }
            let inv = f.inv(h[(k + 1) * n + k]).expect("nonzero pivot");
            for i in k + 2..n {
                let c = f.mul(h[i * n + k], inv);
                if c == 0 {
                    continue;
                }
                for j in 0..n {
                    h[i * n + j] = f.sub(h[i * n + j], f.mul(c, h[(k + 1) * n + j]));
                }
                for r in 0..n {
                    h[r * n + k + 1] = f.add(h[r * n + k + 1], f.mul(c, h[r * n + i]));
                }
            }
        }
        // p_k = (x − h_kk) p_{k−1} − Σ_i h_ik (Π sub-diagonal) p_{i−1}
        let mut ps: Vec<FieldPoly> = vec![FieldPoly::one()];
        for k in 0..n {
            let mut pk = FieldPoly::linear(f, h[k * n + k]).mul(&ps[k], f);
            let mut prod = 1;
            for i in (0..k).rev() {
                prod = f.mul(prod, h[(i + 1) * n + i]);
                if prod == 0 {
                    break;
                }
                let c = f.mul(prod, h[i * n + k]);
                pk = pk.sub(&ps[i].scale(c, f), f);
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    /// Rank over a field.
    pub fn rank(&self) -> usize {
        assert!(self.ring.is_field());
        let f = &self.ring;
        let (n, m) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..m {
            let Some(piv) = (rank..n).find(|&i| a[i * m + col] != 0) else {
                continue;
            };
            for j in 0..m {
                a.swap(piv * m + j, rank * m + j);
            }
            let inv = f.inv(a[rank * m + col]).unwrap();
            for i in rank + 1..n {
                let c = f.mul(a[i * m + col], inv);
                if c == 0 {
                    continue;
                }
                for j in col..m {
                    a[i * m + j] = f.sub(a[i * m + j], f.mul(c, a[rank * m + j]));
                }
            }
            rank += 1;
        }
        rank
    }

    /// `p(A)` for a polynomial over the matrix's field.
    pub fn eval_poly(&self, p: &FieldPoly) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zero(&self.ring, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::scalar(&self.ring, n, c));
        }
        acc
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Matrix, ParseError> {
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        for row in s.split(';') {
            let entries = row
                .split(',')
                .map(|e| ring.parse_elem(e.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(entries);
        }
        let c = rows[0].len();
        if rows.iter().any(|r| r.len() != c) {
            return Err(ParseError::new("matrix", s, "ragged rows"));
        }
        Ok(Matrix::from_rows(ring, &rows))
    }
}

fn div_pi_elem(r: &Ring, a: Elem) -> Elem {
    r.div_pi_elem(a).expect("entry lies in πO")
}

impl fmt::Display for Matrix {
    /// `a,b;c,d` with entries in the ring's text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                f.write_str(&self.ring.format_elem(self.get(i, j)))?;
            }
        }
        Ok(())
    }
}

/// A primary component of a canonical form: an eigenvalue, or a monic
/// irreducible polynomial for a non-split block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primary {
    Eigenvalue(Elem),
    Irreducible(FieldPoly),
}

impl Primary {
    fn poly(&self, ring: &Ring) -> FieldPoly {
        match self {
            Primary::Eigenvalue(a) => FieldPoly::linear(ring, *a),
            Primary::Irreducible(f) => f.clone(),
        }
    }
}

/// Generalised Jordan form `⊕ J_ν(f)`. A block for `f` of degree `d` and
/// part `k` has the companion matrix of `f` on its `k` diagonal blocks and
/// `I_d` on the block superdiagonal; for `f = x − a` this is `J_k(a)`.
pub fn jordan_matrix(ring: &Ring, data: &[(Primary, Partition)]) -> Result<Matrix, MatrixError> {
    let mut seen: Vec<FieldPoly> = Vec::new();
    let mut blocks = Vec::new();
    for (prim, nu) in data {
        let f = prim.poly(ring);
        if seen.contains(&f) {
            return Err(MatrixError::DuplicateEigenvalue(f.display(ring)));
        }
        seen.push(f.clone());
        let d = f.degree().unwrap_or(0);
        if d == 0 {
            return Err(MatrixError::Shape("constant primary polynomial".into()));
        }
        let c = Matrix::companion(ring, &f);
        for &k in nu.parts() {
            let k = k as usize;
            let mut b = Matrix::zero(ring, d * k, d * k);
            for blk in 0..k {
                for i in 0..d {
                    for j in 0..d {
                        b.set(blk * d + i, blk * d + j, c.get(i, j));
                    }
                    if blk + 1 < k {
                        b.set(blk * d + i, (blk + 1) * d + i, 1);
                    }
                }
            }
            blocks.push(b);
        }
    }
    if blocks.is_empty() {
        return Err(MatrixError::Shape("empty Jordan data".into()));
    }
    Ok(Matrix::direct_sum(&blocks))
}

/// Basis of the block upper Toeplitz matrices of shape `λ`: block `(i, j)`
/// is a rectangular upper Toeplitz `λ_i × λ_j` matrix, i.e. `[0 | T]` when
/// `λ_i ≤ λ_j` and `[T; 0]` otherwise, with `T` square upper Toeplitz.
/// The space has dimension `Σ_{i,j} min(λ_i, λ_j)`.
pub fn block_toeplitz_space(ring: &Ring, shape: &Partition) -> Vec<Matrix> {
    let parts: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let n: usize = parts.iter().sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, &p| {
            let o = *acc;
            *acc += p;
            Some(o)
        })
        .collect();
    let mut basis = Vec::new();
    for (bi, &ni) in parts.iter().enumerate() {
        for (bj, &nj) in parts.iter().enumerate() {
            let s = ni.min(nj);
            for k in 0..s {
                let mut m = Matrix::zero(ring, n, n);
                for r in 0..s - k {
                    // Entry (r, r + k) of T, placed in the block.
                    let (row, col) = if ni <= nj {
                        (r, nj - ni + r + k)
                    } else {
                        (r, r + k)
                    };
                    m.set(offsets[bi] + row, offsets[bj] + col, 1);
                }
                basis.push(m);
            }
        }
    }
    basis
}

/// Every `R`-linear combination of `basis`, by mixed-radix enumeration.
pub fn span_elements(ring: &Ring, basis: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let size = ring.size() as usize;
    let total = size.pow(basis.len() as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut m = Matrix::zero(ring, first.rows, first.cols);
        for b in basis {
            let c = (code % size) as Elem;
            code /= size;
            if c != 0 {
                m = m.add(&b.scale(c));
            }
        }
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        let f3 = Ring::field(3, 1).unwrap();
        assert_eq!(Matrix::jordan_block(&f3, 2, 2).det(), 1);
        let z9 = Ring::zp2(3).unwrap();
        // det [[3,1],[0,3]] = 9 = 0, det [[3,0],[0,1]] = 3
        assert_eq!(Matrix::from_rows(&z9, &[vec![3, 1], vec![0, 3]]).det(), 0);
        assert_eq!(Matrix::from_rows(&z9, &[vec![3, 0], vec![0, 1]]).det(), 3);
        assert_eq!(Matrix::from_rows(&z9, &[vec![3, 3], vec![6, 3]]).det(), 0);
        assert_eq!(Matrix::from_rows(&z9, &[vec![1, 3], vec![6, 2]]).det(), z9.from_int(2 - 18));
    }

    #[test]
    fn trace_of_jordan_times_x() {
        let f = Ring::field(5, 1).unwrap();
        let a = Matrix::jordan_block(&f, 2, 0);
        let x = Matrix::from_rows(&f, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.mul(&x).trace(), 3);
    }

    #[test]
    fn companion_and_jordan_forms() {
        let f2 = Ring::field(2, 1).unwrap();
        let f = FieldPoly::new(vec![1, 1, 1]);
        let m = jordan_matrix(&f2, &[(Primary::Irreducible(f.clone()), Partition::row(1))]).unwrap();
        assert_eq!(m.to_string(), "0,1;1,1");
        let f3 = Ring::field(3, 1).unwrap();
        let d = jordan_matrix(
            &f3,
            &[
                (Primary::Eigenvalue(1), Partition::row(1)),
                (Primary::Eigenvalue(2), Partition::row(1)),
            ],
        )
        .unwrap();
        assert_eq!(d.to_string(), "1,0;0,2");
        let dup = jordan_matrix(
            &f3,
            &[
                (Primary::Eigenvalue(1), Partition::row(1)),
                (Primary::Irreducible(FieldPoly::linear(&f3, 1)), Partition::row(1)),
            ],
        );
        assert!(matches!(dup, Err(MatrixError::DuplicateEigenvalue(_))));
        assert_eq!(m.charpoly(), f);
    }

    #[test]
    fn inverse_of_kernel_elements() {
        let r = Ring::truncated(2, 1, 2).unwrap();
        let f = r.residue_field();
        for code in 0..16u32 {
            let x = Matrix::from_vec(&f, 2, 2, (0..4).map(|i| (code >> i) & 1).collect());
            let g = Matrix::identity(&r, 2).add(&x.map_into(&r, |a| r.pi_times(a)));
            assert_eq!(g.inv().unwrap().mul(&g), Matrix::identity(&r, 2));
        }
    }

    #[test]
    fn toeplitz_dimensions() {
        let f2 = Ring::field(2, 1).unwrap();
        let dim = |s: &str| block_toeplitz_space(&f2, &s.parse().unwrap()).len();
        assert_eq!(dim("(1,1)"), 4);
        assert_eq!(dim("(2)"), 2);
        assert_eq!(dim("(2,1)"), 5);
        let all = span_elements(&f2, &block_toeplitz_space(&f2, &"(2,1)".parse().unwrap()));
        assert_eq!(all.len(), 32);
        assert_eq!(all.iter().filter(|m| m.is_invertible()).count(), 8);
    }

    #[test]
    fn text_round_trip() {
        let r: Ring = "F4[t]/t^2".parse().unwrap();
        let m = Matrix::from_rows(&r, &[vec![1, 5], vec![7, 0]]);
        assert_eq!(Matrix::parse(&r, &m.to_string()).unwrap(), m);
    }
}
