use glo2::glzeta::{gl_fq_zeta, GroupKey, ZetaEngine, ZetaReport, Q0};
use glo2::oracle::{clifford_degrees, degrees_of, group_report, Budget, GroupSpecifier};
use glo2::polyq::rat;
use glo2::rings::Ring;
use glo2::typegen::enumerate_types;
use glo2::PolyQ;

const PRIME_POWERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn divides(order: &PolyQ, q: u64, dim: u128) -> bool {
    let o: u128 = order.eval_integer(q as i64).unwrap().try_into().unwrap();
    o.is_multiple_of(dim)
}

#[test]
fn dimensions_divide_the_group_order() {
    let mut e = ZetaEngine::default();
    for n in [2, 3] {
        let order = GroupKey::GLO2 { n }.order();
        let z = e.glo2_zeta(n, Q0::Symbolic).unwrap();
        for q in PRIME_POWERS {
            for (dim, _) in z.value.at(q).unwrap().iter() {
                assert!(divides(&order, q, dim), "GLO2({n}) at {q}: {dim}");
            }
        }
    }
    let order = GroupKey::GLO2 { n: 4 }.order();
    for q in [2, 3] {
        let m = e.glo2_zeta(4, Q0::At(q)).unwrap().value.at(q).unwrap();
        assert!(m.iter().all(|(dim, _)| divides(&order, q, dim)));
        assert_eq!(rat(m.sum_squares() as i64), order.eval_int(q as i64));
    }
}

#[test]
fn gl_term_count_is_the_invertible_class_mass() {
    for m in 1..=4 {
        let mass: PolyQ = enumerate_types(m, true).iter().map(|r| r.n_a.clone()).sum();
        assert_eq!(gl_fq_zeta(m, 1).class_count(), mass, "GL({m})");
    }
}

#[test]
fn reports_round_trip() {
    let mut e = ZetaEngine::default();
    for (key, q) in [("GLO2(2)", Q0::Symbolic), ("GL(3;q^2)", Q0::Symbolic), ("Glambda(3,1)", Q0::At(3))] {
        let key: GroupKey = key.parse().unwrap();
        let r = e.report(&key, q).unwrap();
        let back: ZetaReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

/// Burnside, the class count and divisibility for every group built here.
#[test]
fn character_degrees_are_consistent() {
    let budget = Budget::default();
    for s in [
        "GL(2,F2)",
        "GL(2,F3)",
        "GL(3,F2)",
        "GL(2,F4)",
        "GL(2,Z/4)",
        "GL(2,F2[t]/t^2)",
        "Units(Z/9)",
        "Units(F2[t]/t^3)",
        "Zent(3,F3;x^(2,1))",
        "Zent(4,F2;x^(2,2))",
    ] {
        let spec: GroupSpecifier = s.parse().unwrap();
        let g = group_report(&spec, &budget, true).unwrap();
        let d = g.degrees.unwrap();
        assert_eq!(d.sum_squares(), g.order as u128, "{s}");
        assert_eq!(d.total(), g.classes as u128, "{s}");
        assert!(d.iter().all(|(k, _)| (g.order as u128).is_multiple_of(k)), "{s}");
    }
}

#[test]
fn clifford_correspondence_for_gl2() {
    let budget = Budget::default();
    for (q, ring) in [(2, "Z/4"), (3, "Z/9")] {
        let f = Ring::field_of_size(q).unwrap();
        let spec: GroupSpecifier = format!("GL(2,{ring})").parse().unwrap();
        assert_eq!(clifford_degrees(2, &f, &budget).unwrap(), degrees_of(&spec, &budget).unwrap());
    }
}
