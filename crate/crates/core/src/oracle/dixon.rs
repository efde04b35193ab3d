//! Character degrees by Dixon's method.
//!
//! Class-multiplication matrices act on `F_ℓ^r` (`r` classes) with the
//! vectors of central character values `ω_χ(C_k) = |C_k| χ(g_k) / χ(1)` as
//! common eigenvectors. The centre is used first: a central class matrix
//! permutes coordinates, so the common eigenspaces of all central elements
//! have explicit bases, one vector per orbit of the centre on classes.
//! Inside each such space the remaining class matrices are applied through
//! sparse columns and split by eigenvalues until every space is a line.
//! A normalised eigenvector gives `χ(1)² = |G| / Σ_k ω_k ω_{k'} / |C_k|`,
//! with `k'` the class of inverses; `ℓ > 2√|G|` makes `χ(1)` recoverable
//! from its square modulo `ℓ`.

use std::collections::HashMap;

use num::integer::Roots;
use rand::SeedableRng;
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::classes::ClassData;
use super::group::FiniteGroup;
use super::modp::{is_prime, Fp};
use super::OracleError;
use crate::polyq::DegreeMultiset;

/// The least prime `ℓ ≡ 1 (mod e)` with `ℓ² > 4|G|`.
pub fn dixon_prime(order: u64, exponent: u64) -> Result<u64, OracleError> {
    let mut l = exponent + 1;
    while (l as u128) * (l as u128) <= 4 * order as u128 || !is_prime(l) {
        l += exponent;
        if l >= 1 << 32 {
            return Err(OracleError::PrimeSearchFailed { exponent });
        }
    }
    Ok(l)
}

struct Orbit {
    rep: usize,
    /// `(class, central element position)`, one entry per class.
    cells: Vec<(usize, usize)>,
    stabilizer: Vec<usize>,
}

/// Characters of the centre as exponents of a fixed primitive `e`-th root
/// of unity, indexed by position in `central`.
fn central_characters(g: &FiniteGroup, central: &[u32], e: u64) -> Vec<Vec<u64>> {
    let pos: HashMap<u32, usize> = central.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let unset = u64::MAX;
    let id = pos[&g.identity()];
    let mut members = vec![id];
    let mut in_h = vec![false; central.len()];
    in_h[id] = true;
    let mut chars: Vec<Vec<u64>> = vec![{
        let mut v = vec![unset; central.len()];
        v[id] = 0;
        v
    }];
    for (zi, &z) in central.iter().enumerate() {
        if in_h[zi] {
            continue;
        }
        // least m with z^m in the subgroup so far
        let mut powers = vec![g.identity(), z];
        while !in_h[pos[powers.last().unwrap()]] {
            let next = g.mul(*powers.last().unwrap(), z);
            powers.push(next);
        }
        let m = (powers.len() - 1) as u64;
        let zm = pos[&powers[m as usize]];
        let mut new_members = Vec::new();
        for i in 0..m as usize {
            for &h in &members {
                new_members.push((i, h, pos[&g.mul(powers[i], central[h])]));
            }
        }
        let mut next_chars = Vec::new();
        for lam in &chars {
            let a = lam[zm];
            for b in (0..e).filter(|&b| (m * b) % e == a) {
                let mut v = vec![unset; central.len()];
                for &(i, h, target) in &new_members {
                    v[target] = (i as u64 * b + lam[h]) % e;
                }
                next_chars.push(v);
            }
        }
        chars = next_chars;
        members = new_members.iter().map(|&(_, _, t)| t).collect();
        for &t in &members {
            in_h[t] = true;
        }
    }
    chars
}

/// Exact multiset of irreducible character degrees.
pub fn character_degrees(
    g: &FiniteGroup,
    classes: &ClassData,
    max_classes: usize,
) -> Result<DegreeMultiset, OracleError> {
    let r = classes.len();
    if r > max_classes {
        return Err(OracleError::ClassLimitExceeded {
            classes: r,
            limit: max_classes,
        });
    }
    let order = g.order() as u64;
    let e = g.exponent();
    let l = dixon_prime(order, e)?;
    let fp = Fp { l };
    let zeta = fp.pow(fp.primitive_root(), (l - 1) / e);
    let roots: Vec<u64> = (0..e).scan(1u64, |acc, _| {
        let v = *acc;
        *acc = fp.mul(*acc, zeta);
        Some(v)
    }).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1c0);

    // Centre and its orbits on the classes.
    let central: Vec<u32> = (0..r)
        .filter(|&k| classes.sizes[k] == 1)
        .map(|k| classes.reps[k])
        .collect();
    let is_central: Vec<bool> = (0..r).map(|k| classes.sizes[k] == 1).collect();
    let chars = central_characters(g, &central, e);
    let mut orbit_of = vec![usize::MAX; r];
    let mut orbits: Vec<Orbit> = Vec::new();
    for k in 0..r {
        if orbit_of[k] != usize::MAX {
            continue;
        }
        let mut cells = Vec::new();
        let mut stabilizer = Vec::new();
        for (zi, &z) in central.iter().enumerate() {
            let c = classes.class_of[g.mul(z, classes.reps[k]) as usize] as usize;
            if c == k {
                stabilizer.push(zi);
            }
            if orbit_of[c] == usize::MAX {
                orbit_of[c] = orbits.len();
                cells.push((c, zi));
            }
        }
        orbits.push(Orbit {
            rep: k,
            cells,
            stabilizer,
        });
    }

    struct Space {
        lam: usize,
        /// Orbits spanning the common eigenspace of the centre.
        basis: Vec<usize>,
        pending: Vec<Vec<Vec<u64>>>,
        done: Vec<Vec<u64>>,
    }
    let mut spaces: Vec<Space> = chars
        .iter()
        .enumerate()
        .map(|(li, lam)| {
            let basis: Vec<usize> = (0..orbits.len())
                .filter(|&o| orbits[o].stabilizer.iter().all(|&z| lam[z] == 0))
                .collect();
            let k = basis.len();
            let ident: Vec<Vec<u64>> = (0..k)
                .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
                .collect();
            let (pending, done) = if k == 1 {
                (Vec::new(), ident)
            } else {
                (vec![ident], Vec::new())
            };
            Space {
                lam: li,
                basis,
                pending,
                done,
            }
        })
        .collect();

    let mut order_of_use: Vec<usize> = (0..r).filter(|&k| !is_central[k]).collect();
    order_of_use.sort_by_key(|&k| (classes.sizes[k], k));
    let members = classes.members();
    let mut cell_zi = vec![0usize; r];
    for o in &orbits {
        for &(c, zi) in &o.cells {
            cell_zi[c] = zi;
        }
    }
    for j in order_of_use {
        if spaces.iter().all(|s| s.pending.is_empty()) {
            break;
        }
        // Row of the class matrix at each orbit representative z_l, entry k
        // being #{x ∈ C_j : x⁻¹ z_k ∈ C_l} = |C_l| #{x ∈ C_j : x z_l ∈ C_k} / |C_k|,
        // grouped by the orbit of k as (central position, count).
        let rows: Vec<HashMap<usize, Vec<(usize, u64)>>> = orbits
            .par_iter()
            .map(|o| {
                let zl = classes.reps[o.rep];
                let mut counts: HashMap<usize, u64> = HashMap::new();
                for &x in &members[j] {
                    *counts
                        .entry(classes.class_of[g.mul(x, zl) as usize] as usize)
                        .or_insert(0) += 1;
                }
                let mut grouped: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
                for (k, cnt) in counts {
                    let a = classes.sizes[o.rep] * cnt / classes.sizes[k];
                    grouped.entry(orbit_of[k]).or_default().push((cell_zi[k], a));
                }
                grouped
            })
            .collect();
        for sp in spaces.iter_mut().filter(|s| !s.pending.is_empty()) {
            let lam = &chars[sp.lam];
            // Class matrix in the orbit basis of this eigenspace.
            let rmat: Vec<Vec<u64>> = sp
                .basis
                .iter()
                .map(|&o2| {
                    sp.basis
                        .iter()
                        .map(|o| {
                            rows[o2].get(o).map_or(0, |cells| {
                                cells.iter().fold(0, |acc, &(zi, a)| {
                                    fp.add(acc, fp.mul(roots[lam[zi] as usize], fp.from_u64(a)))
                                })
                            })
                        })
                        .collect()
                })
                .collect();
            let k = sp.basis.len();
            let mut next_pending = Vec::new();
            for w in std::mem::take(&mut sp.pending) {
                let pivots: Vec<usize> = w
                    .iter()
                    .map(|row| row.iter().position(|&x| x != 0).unwrap())
                    .collect();
                let kw = w.len();
                // restricted matrix: (R w_i)[pivot_s]
                let mut rw = vec![vec![0u64; kw]; kw];
                for (i, wi) in w.iter().enumerate() {
                    for (s, &p) in pivots.iter().enumerate() {
                        let mut acc = 0;
                        for (t, &x) in wi.iter().enumerate() {
                            if x != 0 {
                                acc = fp.add(acc, fp.mul(rmat[p][t], x));
                            }
                        }
                        rw[s][i] = acc;
                    }
                }
                let eig = fp.roots(&fp.charpoly(&rw), &mut rng);
                if eig.len() == 1 {
                    next_pending.push(w);
                    continue;
                }
                let mut total = 0;
                for mu in eig {
                    let shifted: Vec<Vec<u64>> = rw
                        .iter()
                        .enumerate()
                        .map(|(s, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(i, &x)| if i == s { fp.sub(x, mu) } else { x })
                                .collect()
                        })
                        .collect();
                    let ker = fp.kernel(&shifted);
                    total += ker.len();
                    let mut vecs: Vec<Vec<u64>> = ker
                        .iter()
                        .map(|a| {
                            let mut v = vec![0u64; k];
                            for (ai, wi) in a.iter().zip(&w) {
                                if *ai != 0 {
                                    for (x, &y) in v.iter_mut().zip(wi) {
                                        *x = fp.add(*x, fp.mul(*ai, y));
                                    }
                                }
                            }
                            v
                        })
                        .collect();
                    fp.rref(&mut vecs);
                    if vecs.len() == 1 {
                        sp.done.push(vecs.pop().unwrap());
                    } else {
                        next_pending.push(vecs);
                    }
                }
                if total != kw {
                    return Err(OracleError::DixonFailed(format!(
                        "class matrix {j} is not diagonalisable modulo {l}"
                    )));
                }
            }
            sp.pending = next_pending;
        }
    }
    if spaces.iter().any(|s| !s.pending.is_empty()) {
        return Err(OracleError::DixonFailed(
            "class matrices do not separate the characters".into(),
        ));
    }

    let id_class = classes.class_of[g.identity() as usize] as usize;
    let isqrt = order.sqrt();
    let mut degrees = Vec::new();
    for sp in &spaces {
        let lam = &chars[sp.lam];
        for c in &sp.done {
            let mut w = vec![0u64; r];
            for (t, &o) in sp.basis.iter().enumerate() {
                for &(cls, zi) in &orbits[o].cells {
                    w[cls] = fp.mul(c[t], roots[lam[zi] as usize]);
                }
            }
            if w[id_class] == 0 {
                return Err(OracleError::DixonFailed("eigenvector vanishes at 1".into()));
            }
            let norm = fp.inv(w[id_class]);
            for x in w.iter_mut() {
                *x = fp.mul(*x, norm);
            }
            let mut s = 0;
            for k in 0..r {
                let term = fp.mul(w[k], w[classes.inverse_class[k] as usize]);
                s = fp.add(s, fp.mul(term, fp.inv(fp.from_u64(classes.sizes[k]))));
            }
            if s == 0 {
                return Err(OracleError::DixonFailed("zero norm".into()));
            }
            let sq = fp.mul(fp.from_u64(order), fp.inv(s));
            let d = (1..=isqrt)
                .find(|&d| fp.mul(d % l, d % l) == sq)
                .ok_or_else(|| OracleError::DixonFailed("degree not a square root".into()))?;
            degrees.push(d as u128);
        }
    }
    let ms = DegreeMultiset::from_degrees(degrees);
    if ms.total() != r as u128 || ms.sum_squares() != order as u128 {
        return Err(OracleError::DixonFailed(format!(
            "degrees {ms} fail the count or sum-of-squares check"
        )));
    }
    Ok(ms)
}
