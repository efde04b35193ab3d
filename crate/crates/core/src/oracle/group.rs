//! Explicitly enumerated matrix groups.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Budget, GroupSpecifier, OracleError};
use crate::canonical::matrix_from_code;
use crate::matrices::Matrix;
use crate::rings::{Elem, Ring};

/// A finite group of `n × n` matrices over a ring, every element packed
/// into a `u128` (entries row-major, `bits` bits each). Elements are kept
/// sorted by encoding, so element `0` has the least code.
pub struct FiniteGroup {
    ring: Ring,
    n: usize,
    bits: u32,
    size: usize,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    elements: Vec<u128>,
    index: HashMap<u128, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    identity: u32,
}

impl FiniteGroup {
    /// Closes `elements` into a group structure. The list must be a
    /// subgroup; closure is checked on lookup.
    pub fn from_matrices(ring: &Ring, n: usize, elements: Vec<Matrix>) -> Result<Self, OracleError> {
        let size = ring.size() as usize;
        let bits = (usize::BITS - (size - 1).leading_zeros()).max(1);
        if bits as usize * n * n > 128 || size > u16::MAX as usize {
            return Err(OracleError::Unsupported(format!(
                "{n}x{n} matrices over {ring} do not fit the element encoding"
            )));
        }
        let mut add_t = vec![0u16; size * size];
        let mut mul_t = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                add_t[a * size + b] = ring.add(a as Elem, b as Elem) as u16;
                mul_t[a * size + b] = ring.mul(a as Elem, b as Elem) as u16;
            }
        }
        let mut g = FiniteGroup {
            ring: ring.clone(),
            n,
            bits,
            size,
            add_t,
            mul_t,
            elements: Vec::new(),
            index: HashMap::new(),
            inverse: Vec::new(),
            orders: Vec::new(),
            identity: 0,
        };
        let mut codes: Vec<u128> = elements.iter().map(|m| g.encode(m)).collect();
        codes.par_sort_unstable();
        codes.dedup();
        g.index = codes
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        g.elements = codes;
        g.identity = *g
            .index
            .get(&g.encode(&Matrix::identity(ring, n)))
            .ok_or_else(|| OracleError::NotAGroup("identity missing".into()))?;
        let id = g.identity;
        let powers: Vec<Result<(u32, u32), OracleError>> = (0..g.order() as u32)
            .into_par_iter()
            .map(|i| {
                let mut prev = id;
                let mut cur = i;
                let mut k = 1;
                while cur != id {
                    prev = cur;
                    cur = g.try_mul(cur, i).ok_or_else(|| {
                        OracleError::NotAGroup("not closed under multiplication".into())
                    })?;
                    k += 1;
                    if k > g.order() as u32 + 1 {
                        return Err(OracleError::NotAGroup("element of infinite order".into()));
                    }
                }
                Ok((prev, k))
            })
            .collect();
        for p in powers {
            let (inv, ord) = p?;
            g.inverse.push(inv);
            g.orders.push(ord);
        }
        // the identity has order 1 and is its own inverse
        g.inverse[id as usize] = id;
        g.orders[id as usize] = 1;
        Ok(g)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.orders[i as usize]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| num::integer::lcm(acc, o as u64))
    }

    pub fn code(&self, i: u32) -> u128 {
        self.elements[i as usize]
    }

    pub fn find(&self, m: &Matrix) -> Option<u32> {
        self.index.get(&self.encode(m)).copied()
    }

    pub fn encode(&self, m: &Matrix) -> u128 {
        m.data()
            .iter()
            .enumerate()
            .fold(0u128, |acc, (k, &e)| acc | (e as u128) << (k as u32 * self.bits))
    }

    fn entries(&self, code: u128) -> [u16; 16] {
        let mask = (1u128 << self.bits) - 1;
        let mut out = [0u16; 16];
        for (k, slot) in out.iter_mut().enumerate().take(self.n * self.n) {
            *slot = ((code >> (k as u32 * self.bits)) & mask) as u16;
        }
        out
    }

    pub fn matrix(&self, i: u32) -> Matrix {
        let e = self.entries(self.elements[i as usize]);
        Matrix::from_vec(
            &self.ring,
            self.n,
            self.n,
            e[..self.n * self.n].iter().map(|&x| x as Elem).collect(),
        )
    }

    fn mul_codes(&self, a: u128, b: u128) -> u128 {
        let (x, y) = (self.entries(a), self.entries(b));
        let n = self.n;
        let s = self.size;
        let mut out = 0u128;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0usize;
                for k in 0..n {
                    let p = self.mul_t[x[i * n + k] as usize * s + y[k * n + j] as usize];
                    acc = self.add_t[acc * s + p as usize] as usize;
                }
                out |= (acc as u128) << ((i * n + j) as u32 * self.bits);
            }
        }
        out
    }

    fn try_mul(&self, a: u32, b: u32) -> Option<u32> {
        let c = self.mul_codes(self.elements[a as usize], self.elements[b as usize]);
        self.index.get(&c).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.try_mul(a, b).expect("group is closed")
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(g, a), self.inverse(g))
    }
}

/// Order of the group named by `spec`, when known in advance.
fn predicted_order(spec: &GroupSpecifier) -> Option<u128> {
    match spec {
        GroupSpecifier::GL { n, ring } => {
            let q = ring.q() as u128;
            let fiber = (ring.size() / ring.q()) as u128;
            let gl: u128 = (0..*n as u32).map(|i| q.pow(*n as u32) - q.pow(i)).product();
            Some(gl * fiber.pow((*n * *n) as u32))
        }
        GroupSpecifier::Units { ring } => predicted_order(&GroupSpecifier::GL {
            n: 1,
            ring: ring.clone(),
        }),
        GroupSpecifier::Zent { .. } => None,
    }
}

/// Enumerates every element of the group named by `spec`.
pub fn build_group(spec: &GroupSpecifier, budget: &Budget) -> Result<FiniteGroup, OracleError> {
    if let Some(order) = predicted_order(spec) {
        if order > budget.max_elements as u128 {
            return Err(OracleError::BudgetExceeded {
                needed: order,
                budget: budget.max_elements,
            });
        }
    }
    match spec {
        GroupSpecifier::GL { n, ring } => gl_elements(*n, ring),
        GroupSpecifier::Units { ring } => gl_elements(1, ring),
        GroupSpecifier::Zent { n, field, symbol } => {
            let a = symbol.canonical_matrix(field)?;
            if a.rows() != *n {
                return Err(OracleError::Unsupported(format!(
                    "symbol has size {}, expected {n}",
                    a.rows()
                )));
            }
            centralizer_group(&a, budget)
        }
    }
}

/// `GL_n(R)`: every invertible residue matrix with every lift.
fn gl_elements(n: usize, ring: &Ring) -> Result<FiniteGroup, OracleError> {
    let field = ring.residue_field();
    let q = field.q() as u64;
    let residues: Vec<Matrix> = (0..q.pow((n * n) as u32))
        .into_par_iter()
        .map(|c| matrix_from_code(&field, n, c))
        .filter(|m| m.det() != 0)
        .collect();
    let mut fibers: Vec<Vec<Elem>> = vec![Vec::new(); field.q() as usize];
    for a in ring.elements() {
        fibers[ring.reduce_mod_pi(a) as usize].push(a);
    }
    let fiber = (ring.size() / ring.q()) as usize;
    let lifts_per = fiber.pow((n * n) as u32);
    let fibers = &fibers;
    let elements: Vec<Matrix> = residues
        .par_iter()
        .flat_map_iter(|r| {
            (0..lifts_per).map(move |mut code| {
                let data: Vec<Elem> = r
                    .data()
                    .iter()
                    .map(|&e| {
                        let pick = code % fiber;
                        code /= fiber;
                        fibers[e as usize][pick]
                    })
                    .collect();
                Matrix::from_vec(ring, n, n, data)
            })
        })
        .collect();
    FiniteGroup::from_matrices(ring, n, elements)
}

/// Basis over the field of `{X : XA = AX}`.
pub fn centralizer_algebra_basis(a: &Matrix) -> Vec<Matrix> {
    let f = a.ring();
    let n = a.rows();
    // Unknowns x_{ij}; equation (XA − AX)_{rs} = Σ_k x_{rk} a_{ks} − a_{rk} x_{ks}.
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for r in 0..n {
        for s in 0..n {
            let mut eq = vec![0; n * n];
            for k in 0..n {
                eq[r * n + k] = f.add(eq[r * n + k], a.get(k, s));
                eq[k * n + s] = f.sub(eq[k * n + s], a.get(r, k));
            }
            rows.push(eq);
        }
    }
    field_kernel(f, rows, n * n)
        .into_iter()
        .map(|v| Matrix::from_vec(f, n, n, v))
        .collect()
}

/// Kernel of a linear system over a finite field.
pub(crate) fn field_kernel(f: &Ring, mut rows: Vec<Vec<Elem>>, ncols: usize) -> Vec<Vec<Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).expect("nonzero field element");
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pr) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

/// `Z_{GL_n(F)}(A)` as the invertible members of the centralizer algebra.
pub fn centralizer_group(a: &Matrix, budget: &Budget) -> Result<FiniteGroup, OracleError> {
    let f = a.ring();
    if !f.is_field() {
        return Err(OracleError::Unsupported("centralizers are taken over a field".into()));
    }
    let basis = centralizer_algebra_basis(a);
    let q = f.q() as u128;
    let count = q.pow(basis.len() as u32);
    // The group is a proper fraction of the algebra; the algebra size bounds
    // the work, so both are held to the budget with slack for the latter.
    if count > 4 * budget.max_elements as u128 {
        return Err(OracleError::BudgetExceeded {
            needed: count,
            budget: budget.max_elements,
        });
    }
    let n = a.rows();
    let elements: Vec<Matrix> = (0..count as u64)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut data = vec![0; n * n];
            for b in &basis {
                let c = (code % q as u64) as Elem;
                code /= q as u64;
                if c != 0 {
                    for (d, &e) in data.iter_mut().zip(b.data()) {
                        *d = f.add(*d, f.mul(c, e));
                    }
                }
            }
            let m = Matrix::from_vec(f, n, n, data);
            (m.det() != 0).then_some(m)
        })
        .collect();
    if elements.len() > budget.max_elements as usize {
        return Err(OracleError::BudgetExceeded {
            needed: elements.len() as u128,
            budget: budget.max_elements,
        });
    }
    FiniteGroup::from_matrices(f, n, elements)
}
