//! Primitive field moduli (the Conway polynomials) for `p ≤ 13`, `m ≤ 4`.
//!
//! Each row lists the coefficients below the leading one, constant term
//! first, so `[1, 1, 0]` for `p = 2, m = 3` is `x³ + x + 1`. Primitivity is
//! re-certified whenever a field is constructed.

const TABLE: &[(u32, &[&[u32]])] = &[
    (2, &[&[1], &[1, 1], &[1, 1, 0], &[1, 1, 0, 0]]),
    (3, &[&[1], &[2, 2], &[1, 2, 0], &[2, 0, 0, 2]]),
    (5, &[&[3], &[2, 4], &[3, 3, 0], &[2, 4, 4, 0]]),
    (7, &[&[4], &[3, 6], &[4, 0, 6], &[3, 4, 5, 0]]),
    (11, &[&[9], &[2, 7], &[9, 2, 0], &[2, 10, 8, 0]]),
    (13, &[&[11], &[2, 12], &[11, 2, 0], &[2, 12, 3, 0]]),
];

pub fn conway_coefficients(p: u32, m: u32) -> Option<Vec<u32>> {
    let (_, rows) = TABLE.iter().find(|(pp, _)| *pp == p)?;
    rows.get(m.checked_sub(1)? as usize).map(|r| r.to_vec())
}

#[cfg(test)]
mod tests {
    use crate::rings::Ring;

    #[test]
    fn every_recorded_modulus_is_primitive() {
        for p in [2, 3, 5, 7, 11, 13] {
            for m in 1..=4 {
                Ring::field(p, m).unwrap_or_else(|e| panic!("F_{p}^{m}: {e}"));
            }
        }
    }
}
