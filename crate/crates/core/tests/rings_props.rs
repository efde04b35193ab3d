use proptest::prelude::*;

use glo2::rings::{count_irreducibles, AdditiveCharacter, Ring};

/// Every length-two ring with residue field of size at most 9.
fn length_two() -> Vec<Ring> {
    [
        "Z/4", "Z/9", "Z/25", "Z/49", "GR(4,2)", "GR(4,3)", "GR(9,2)", "F2[t]/t^2", "F3[t]/t^2",
        "F4[t]/t^2", "F5[t]/t^2", "F7[t]/t^2", "F8[t]/t^2", "F9[t]/t^2",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

#[test]
fn teichmuller_section_is_multiplicative() {
    for r in length_two() {
        let f = r.residue_field();
        for a in f.elements() {
            assert_eq!(r.reduce_mod_pi(r.teichmuller(a)), a, "{r}");
            for b in f.elements() {
                assert_eq!(
                    r.mul(r.teichmuller(a), r.teichmuller(b)),
                    r.teichmuller(f.mul(a, b)),
                    "{r}: s({a})s({b})"
                );
            }
        }
    }
}

#[test]
fn unit_counts() {
    for (p, m) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let q = p.pow(m);
        for len in 1..=4u32 {
            if q.pow(len) > 10_000 {
                continue;
            }
            let r = Ring::truncated(p, m, len).unwrap();
            assert_eq!(r.units().len() as u32, q.pow(len - 1) * (q - 1), "{r}");
        }
        if m == 1 || p == 2 {
            let g = Ring::galois(p, m).unwrap();
            assert_eq!(g.units().len() as u32, q * (q - 1), "{g}");
        }
    }
}

#[test]
fn additive_characters_are_balanced_and_nontrivial() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = Ring::field_of_size(q).unwrap();
        let psi = AdditiveCharacter::new(&f);
        let p = psi.modulus();
        let mut hist = vec![0u32; p as usize];
        for x in f.elements() {
            hist[psi.index(x) as usize] += 1;
        }
        assert!(hist.iter().all(|&h| h == q / p), "F{q}: {hist:?}");
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(psi.index(f.add(x, y)), (psi.index(x) + psi.index(y)) % p);
            }
        }
    }
}

#[test]
fn gauss_identity() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for d in 1..=4u32 {
            let total: u64 = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| e as u64 * count_irreducibles(q, e))
                .sum();
            assert_eq!(total, q.pow(d), "q = {q}, d = {d}");
        }
    }
}

fn ring_and_elements() -> impl Strategy<Value = (Ring, u32, u32, u32)> {
    (0..length_two().len(), any::<u32>(), any::<u32>(), any::<u32>()).prop_map(|(i, a, b, c)| {
        let r = length_two().swap_remove(i);
        let s = r.size();
        (r, a % s, b % s, c % s)
    })
}

proptest! {
    #[test]
    fn ring_axioms((r, a, b, c) in ring_and_elements()) {
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), 0);
        if r.is_unit(a) {
            prop_assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
        } else {
            prop_assert!(r.inv(a).is_err());
            prop_assert_eq!(r.reduce_mod_pi(a), 0);
        }
        // a = s(ā) + π·b̂ for a unique residue b
        let abar = r.reduce_mod_pi(a);
        let rest = r.div_pi(r.sub(a, r.teichmuller(abar))).unwrap();
        prop_assert_eq!(r.add(r.teichmuller(abar), r.pi_times(rest)), a);
    }
}
