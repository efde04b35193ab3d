//! Lagrange interpolation of degree multisets observed at several `q`.
//!
//! Terms are matched into families by rank: at every point where the
//! number of distinct dimensions is maximal, the `i`-th smallest dimension
//! belongs to family `i`. Points where families collide carry less
//! information and are only used to check the result.

use num::rational::BigRational;

use super::GlzetaError;
use crate::polyq::{rat, DegreeMultiset, PolyQ, ZetaSum, ZetaTerm};

/// The points with the maximal number of distinct dimensions, each with its
/// `(dim, mult)` list in increasing dimension.
pub fn align_families(
    data: &[(u64, DegreeMultiset)],
) -> Result<Vec<(u64, Vec<(u128, u128)>)>, GlzetaError> {
    let r = data.iter().map(|(_, m)| m.0.len()).max().unwrap_or(0);
    if r == 0 {
        return Err(GlzetaError::AlignmentFailed("no data".into()));
    }
    let mut full: Vec<(u64, Vec<(u128, u128)>)> = data
        .iter()
        .filter(|(_, m)| m.0.len() == r)
        .map(|(q, m)| (*q, m.iter().collect()))
        .collect();
    full.sort_by_key(|(q, _)| *q);
    Ok(full)
}

fn lagrange(xs: &[u64], ys: impl Iterator<Item = u128>) -> Option<PolyQ> {
    let pts: Vec<(BigRational, BigRational)> = xs
        .iter()
        .zip(ys)
        .map(|(&x, y)| (rat(x as i64), BigRational::from_integer(y.into())))
        .collect();
    PolyQ::interpolate(&pts)
}

/// A zeta polynomial whose families have multiplicity and dimension of
/// degree at most `degree_bound`, reproducing every data point.
pub fn interpolate_multisets(
    data: &[(u64, DegreeMultiset)],
    degree_bound: u32,
) -> Result<ZetaSum, GlzetaError> {
    let full = align_families(data)?;
    let need = degree_bound as usize + 1;
    if full.len() < need {
        let r = full[0].1.len();
        return Err(GlzetaError::AlignmentFailed(format!(
            "degree {degree_bound} needs {need} points with {r} distinct dimensions, found {} ({})",
            full.len(),
            full.iter().map(|(q, _)| q.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    let used = &full[..need];
    let xs: Vec<u64> = used.iter().map(|(q, _)| *q).collect();
    let mut terms = Vec::new();
    for i in 0..used[0].1.len() {
        let dim = lagrange(&xs, used.iter().map(|(_, t)| t[i].0));
        let mult = lagrange(&xs, used.iter().map(|(_, t)| t[i].1));
        let (Some(dim), Some(mult)) = (dim, mult) else {
            return Err(GlzetaError::AlignmentFailed("repeated support point".into()));
        };
        terms.push(ZetaTerm { mult, dim });
    }
    let z = ZetaSum::new(terms);
    if z.terms().len() != used[0].1.len() {
        return Err(GlzetaError::AlignmentFailed("two families have the same dimension".into()));
    }
    for (q0, observed) in data {
        match z.eval(*q0) {
            Ok(m) if &m == observed => {}
            Ok(m) => {
                return Err(GlzetaError::AlignmentFailed(format!(
                    "interpolant gives {m} at q = {q0}, observed {observed}"
                )))
            }
            Err(e) => {
                return Err(GlzetaError::AlignmentFailed(format!(
                    "interpolant fails at q = {q0}: {e}"
                )))
            }
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glzeta::{gl_fq_zeta, units_zeta};

    fn samples(z: &ZetaSum, qs: &[u64]) -> Vec<(u64, DegreeMultiset)> {
        qs.iter().map(|&q| (q, z.eval(q).unwrap())).collect()
    }

    #[test]
    fn recovers_abelian() {
        let z = units_zeta(1, 1);
        assert_eq!(interpolate_multisets(&samples(&z, &[2, 3]), 1).unwrap(), z);
    }

    #[test]
    fn recovers_gl2_with_a_collision() {
        // at q = 2 the dimensions 1 and q - 1 coincide and q + 1 is absent
        let z = gl_fq_zeta(2, 1);
        let data = samples(&z, &[2, 3, 4, 5]);
        assert_eq!(data[0].1 .0.len(), 2);
        assert_eq!(interpolate_multisets(&data, 2).unwrap(), z);
    }

    #[test]
    fn too_few_points() {
        let z = gl_fq_zeta(2, 1);
        assert!(matches!(
            interpolate_multisets(&samples(&z, &[2, 3, 4]), 2),
            Err(GlzetaError::AlignmentFailed(_))
        ));
    }

    #[test]
    fn low_bound_is_caught() {
        let z = gl_fq_zeta(2, 1);
        assert!(interpolate_multisets(&samples(&z, &[3, 4, 5]), 1).is_err());
    }
}
