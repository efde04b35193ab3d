//! Symbolic enumeration of the similarity-class types of `M_n(F_q)` with
//! their class counts `n_A(q)`, centralizer orders `z_A(q)` and indices
//! `|GL_n(F_q)| / z_A(q)`.

mod emit;
mod tables;

use serde::{Deserialize, Serialize};

use crate::canonical::{TypeSlot, TypeSymbol};
use crate::partition::Partition;
use crate::polyq::{rat, PolyQ};
use crate::rings::count_irreducibles_poly;

pub use emit::{to_csv, to_latex};
pub use tables::{
    discrepancy_report, reference_table, verify_tables, CellCheck, Discrepancy, ReferenceRow,
    TableVerification, KNOWN_ERRATA,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRecord {
    #[serde(rename = "type")]
    pub ty: TypeSymbol,
    pub n_a: PolyQ,
    pub z_a: PolyQ,
    pub index: PolyQ,
    pub invertible_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypegenError {
    #[error("identity failed, residual {0}")]
    IdentityFailed(PolyQ),
}

/// `|GL_n(F_q)| = q^{n(n−1)/2} Π_{i=1..n} (q^i − 1)`.
pub fn gl_order(n: u32) -> PolyQ {
    (1..=n)
        .map(|i| PolyQ::q_pow(i) - PolyQ::one())
        .product::<PolyQ>()
        * PolyQ::q_pow(n * (n.saturating_sub(1)) / 2)
}

/// `a_ν(x) = x^{|ν|+2n(ν)} Π_k Π_{i ≤ m_k} (1 − x^{−i})`, the order of the
/// centralizer of a nilpotent of Jordan type `ν` over a field of size `x`,
/// evaluated at `x = qd`.
pub fn centralizer_order(nu: &Partition, qd: &PolyQ) -> PolyQ {
    let mults = nu.multiplicities();
    let shift: u32 = mults.iter().map(|&(_, m)| m * (m + 1) / 2).sum();
    let exponent = nu.size() + 2 * nu.n_value() - shift;
    let mut acc = PolyQ::q_pow(exponent);
    for &(_, m) in &mults {
        for i in 1..=m {
            acc = acc * (PolyQ::q_pow(i) - PolyQ::one());
        }
    }
    acc.compose(qd)
}

/// `N(N − 1)⋯(N − r + 1)`.
fn falling(n: &PolyQ, r: u32) -> PolyQ {
    (0..r).map(|i| n - &PolyQ::int(i as i64)).product()
}

fn factorial(r: u32) -> i64 {
    (1..=r as i64).product()
}

/// Number of monic irreducibles of degree `d` available to a slot; the
/// polynomial `x` is excluded when only invertible matrices are counted.
pub fn slot_pool(d: u32, invertible_only: bool) -> PolyQ {
    let n = count_irreducibles_poly(d);
    if d == 1 && invertible_only {
        n - PolyQ::one()
    } else {
        n
    }
}

/// `n_A = Π_d (N_d)_{R_d} / Π r!`.
pub fn class_count(ty: &TypeSymbol, invertible_only: bool) -> PolyQ {
    let mut degrees: Vec<u32> = ty.slots().iter().map(|s| s.d).collect();
    degrees.dedup();
    let mut acc = PolyQ::one();
    for d in degrees {
        let r_d: u32 = ty.slots().iter().filter(|s| s.d == d).map(|s| s.r).sum();
        acc = acc * falling(&slot_pool(d, invertible_only), r_d);
    }
    let denom: i64 = ty.slots().iter().map(|s| factorial(s.r)).product();
    acc.scale(&(rat(1) / rat(denom)))
}

/// `z_A = Π a_ν(q^d)^r`.
pub fn type_centralizer_order(ty: &TypeSymbol) -> PolyQ {
    ty.slots()
        .iter()
        .map(|s| centralizer_order(&s.nu, &PolyQ::q_pow(s.d)).pow(s.r))
        .product()
}

/// Every type of weight `n`, sorted.
pub fn all_types(n: u32) -> Vec<TypeSymbol> {
    let mut kinds: Vec<(u32, Partition)> = Vec::new();
    for d in 1..=n {
        for k in 1..=n / d {
            for nu in Partition::all(k) {
                kinds.push((d, nu));
            }
        }
    }
    fn rec(
        kinds: &[(u32, Partition)],
        left: u32,
        chosen: &mut Vec<TypeSlot>,
        out: &mut Vec<TypeSymbol>,
    ) {
        if left == 0 {
            out.push(TypeSymbol::new(chosen.iter().cloned()));
            return;
        }
        let Some(((d, nu), rest)) = kinds.split_first() else {
            return;
        };
        let w = d * nu.size();
        let mut r = 0;
        while r * w <= left {
            if r > 0 {
                chosen.push(TypeSlot {
                    d: *d,
                    nu: nu.clone(),
                    r,
                });
            }
            rec(rest, left - r * w, chosen, out);
            if r > 0 {
                chosen.pop();
            }
            r += 1;
        }
    }
    let mut out = Vec::new();
    rec(&kinds, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn type_record(ty: &TypeSymbol, invertible_only: bool) -> TypeRecord {
    let n = ty.size();
    let z_a = type_centralizer_order(ty);
    let index = gl_order(n)
        .div_exact(&z_a)
        .expect("centralizer order divides the group order");
    TypeRecord {
        ty: ty.clone(),
        n_a: class_count(ty, invertible_only),
        z_a,
        index,
        invertible_only,
    }
}

pub fn enumerate_types(n: u32, invertible_only: bool) -> Vec<TypeRecord> {
    all_types(n)
        .iter()
        .map(|t| type_record(t, invertible_only))
        .collect()
}

/// `Σ_types n_A · index − q^{n²}`, which must vanish.
pub fn mass_residual(n: u32) -> PolyQ {
    let total: PolyQ = enumerate_types(n, false)
        .iter()
        .map(|r| &r.n_a * &r.index)
        .sum();
    total - PolyQ::q_pow(n * n)
}

pub fn mass_check(n: u32) -> Result<(), TypegenError> {
    let r = mass_residual(n);
    if r.is_zero() {
        Ok(())
    } else {
        Err(TypegenError::IdentityFailed(r))
    }
}

/// Descriptor of `Z_{GL_n(F_q)}(A) ≅ Π G_{ν, F_{q^d}}` such as
/// `GL_2(F_q) x O_1^*`.
pub fn centralizer_label(ty: &TypeSymbol) -> String {
    label(ty, false)
}

/// [`centralizer_label`] typeset for LaTeX math mode.
pub fn centralizer_label_latex(ty: &TypeSymbol) -> String {
    label(ty, true)
}

fn label(ty: &TypeSymbol, latex: bool) -> String {
    let mut parts = Vec::new();
    for s in ty.slots() {
        let field = match (s.d, latex) {
            (1, false) => "F_q".to_string(),
            (d, false) => format!("F_q^{d}"),
            (1, true) => r"\mathbf{F}_{q}".to_string(),
            (d, true) => format!(r"\mathbf{{F}}_{{q^{d}}}"),
        };
        let nu = s.nu.parts();
        let name = if nu.iter().all(|&p| p == 1) {
            match (nu.len(), latex) {
                (1, false) => format!("{field}^*"),
                (1, true) => format!("{field}^{{*}}"),
                (m, false) => format!("GL_{m}({field})"),
                (m, true) => format!(r"\mathrm{{GL}}_{{{m}}}({field})"),
            }
        } else if nu.len() == 1 {
            let l = nu[0];
            match (s.d, latex) {
                (1, false) => format!("O_{l}^*"),
                (_, false) => format!("O_{l}^*[{field}]"),
                (1, true) => format!(r"\mathcal{{O}}_{{{l}}}^{{*}}"),
                (_, true) => format!(r"\mathcal{{O}}_{{{l}}}^{{*}}[{field}]"),
            }
        } else {
            match (s.d, latex) {
                (1, false) => format!("G_{}", s.nu),
                (_, false) => format!("G_{}[{field}]", s.nu),
                (1, true) => format!("G_{{{}}}", s.nu),
                (_, true) => format!("G_{{{}}}[{field}]", s.nu),
            }
        };
        for _ in 0..s.r {
            parts.push(name.clone());
        }
    }
    parts.join(if latex { r" \times " } else { " x " })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyQ {
        PolyQ::parse(s).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1), p("q-1"));
        assert_eq!(gl_order(2), p("q^4-q^3-q^2+q"));
        assert_eq!(gl_order(4).eval_integer(2).unwrap(), 20160.into());
    }

    #[test]
    fn type_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| all_types(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 8, 22]);
    }

    #[test]
    fn centralizer_orders() {
        let q = PolyQ::q();
        assert_eq!(centralizer_order(&"(2)".parse().unwrap(), &q), p("q(q-1)"));
        assert_eq!(centralizer_order(&"(2,1)".parse().unwrap(), &q), p("q^3(q-1)^2"));
        assert_eq!(centralizer_order(&"(1,1)".parse().unwrap(), &q), gl_order(2));
    }

    #[test]
    fn gl2_rows() {
        let recs = enumerate_types(2, false);
        let counts: Vec<String> = recs.iter().map(|r| r.n_a.to_string()).collect();
        assert_eq!(
            counts,
            vec!["1/2*q^2 - 1/2*q", "q", "q", "1/2*q^2 - 1/2*q"]
        );
        let three = enumerate_types(3, false)
            .into_iter()
            .find(|r| r.ty.to_string() == "1:(1)^3")
            .unwrap();
        assert_eq!(three.n_a, p("q(q-1)(q-2)/6"));
    }

    #[test]
    fn mass_identities() {
        for n in 1..=4 {
            assert!(mass_check(n).is_ok(), "n = {n}");
        }
    }

    #[test]
    fn labels() {
        let t: TypeSymbol = "1:(1);1:(2,1)".parse().unwrap();
        assert_eq!(centralizer_label(&t), "F_q^* x G_(2,1)");
        let t: TypeSymbol = "2:(2)".parse().unwrap();
        assert_eq!(centralizer_label(&t), "O_2^*[F_q^2]");
        let t: TypeSymbol = "1:(1)^2;2:(1)".parse().unwrap();
        assert_eq!(
            centralizer_label_latex(&t),
            r"\mathbf{F}_{q}^{*} \times \mathbf{F}_{q}^{*} \times \mathbf{F}_{q^2}^{*}"
        );
    }
}
