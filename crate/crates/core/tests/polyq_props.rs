use proptest::prelude::*;

use glo2::{PolyQ, ZetaSum, ZetaTerm};

const POINTS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn pool(src: &[&str]) -> Vec<PolyQ> {
    src.iter().map(|s| s.parse().unwrap()).collect()
}

/// Dimensions positive at every prime power, multiplicities integral and
/// nonnegative there.
fn dims() -> Vec<PolyQ> {
    pool(&["1", "q", "q - 1", "q + 1", "q^2 - 1", "q^2", "q(q - 1)", "q^3 - q", "q^2 + q + 1"])
}

fn mults() -> Vec<PolyQ> {
    pool(&["1", "2", "q", "q - 1", "q^2", "(q - 1)^2", "1/2 q(q - 1)", "1/2 (q - 1)(q - 2)", "q^3 - q"])
}

fn zeta_sum() -> impl Strategy<Value = ZetaSum> {
    let (d, m) = (dims(), mults());
    prop::collection::vec((0..m.len(), 0..d.len()), 0..5).prop_map(move |idx| {
        ZetaSum::new(idx.into_iter().map(|(i, j)| ZetaTerm {
            mult: m[i].clone(),
            dim: d[j].clone(),
        }))
    })
}

fn poly() -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(-4i64..=4, 0..5).prop_map(|c| PolyQ::from_coeffs(&c))
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent_and_clean(a in zeta_sum()) {
        prop_assert_eq!(ZetaSum::new(a.terms().to_vec()), a.clone());
        let terms = a.terms();
        for w in terms.windows(2) {
            prop_assert!(w[0].dim < w[1].dim);
        }
        prop_assert!(terms.iter().all(|t| !t.mult.is_zero()));
    }

    #[test]
    fn stored_coefficients_are_nonzero(p in poly()) {
        prop_assert!(p.terms().all(|(_, c)| *c != glo2::polyq::rat(0)));
        prop_assert_eq!(p.degree(), p.terms().map(|(e, _)| e).max());
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn addition_is_associative_and_commutative(a in zeta_sum(), b in zeta_sum(), c in zeta_sum()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn evaluation_commutes_with_operations(a in zeta_sum(), b in zeta_sum(), k in 0..dims().len()) {
        let k = &dims()[k];
        for q in POINTS {
            let (ea, eb) = (a.eval(q).unwrap(), b.eval(q).unwrap());
            prop_assert_eq!(a.add(&b).eval(q).unwrap(), ea.add(&eb));
            prop_assert_eq!(a.product(&b).eval(q).unwrap(), ea.product(&eb));
            let kq: u128 = k.eval_integer(q as i64).unwrap().try_into().unwrap();
            prop_assert_eq!(a.substitute_power(k).eval(q).unwrap(), ea.scale_dims(kq));
        }
    }

    #[test]
    fn sum_of_squares_is_multiplicative(a in zeta_sum(), b in zeta_sum()) {
        prop_assert_eq!(a.product(&b).sum_squares(), &a.sum_squares() * &b.sum_squares());
    }

    #[test]
    fn total_is_the_class_count(a in zeta_sum()) {
        for q in POINTS {
            let total = a.eval(q).unwrap().total();
            prop_assert_eq!(
                a.class_count().eval_integer(q as i64).unwrap(),
                num::BigInt::from(total)
            );
        }
    }

    #[test]
    fn text_and_json_round_trip(p in poly(), a in zeta_sum()) {
        prop_assert_eq!(p.to_string().parse::<PolyQ>().unwrap(), p.clone());
        prop_assert_eq!(p.factored().to_string().parse::<PolyQ>().unwrap(), p);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ZetaSum>(&json).unwrap(), a);
    }
}
