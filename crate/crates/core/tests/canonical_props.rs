use proptest::prelude::*;

use glo2::canonical::{classify_space, green_symbol, matrix_from_code, GreenSymbol};
use glo2::polyq::rat;
use glo2::rings::Ring;
use glo2::typegen::{all_types, enumerate_types, gl_order, type_record};

fn sample() -> impl Strategy<Value = (u32, usize, u64, u64)> {
    (prop::sample::select(vec![2u32, 3]), 1usize..=4, any::<u64>(), any::<u64>()).prop_map(|(q, n, a, g)| {
        let space = (q as u64).pow((n * n) as u32);
        (q, n, a % space, g % space)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symbols_are_conjugation_invariant((q, n, a, g) in sample()) {
        let f = Ring::field_of_size(q).unwrap();
        let a = matrix_from_code(&f, n, a);
        let space = (q as u64).pow((n * n) as u32);
        let g = (0..space)
            .map(|k| matrix_from_code(&f, n, (g + k) % space))
            .find(|m| m.is_invertible())
            .unwrap();
        let s = green_symbol(&a);
        prop_assert_eq!(green_symbol(&a.conjugate(&g).unwrap()), s.clone());
        let j = s.canonical_matrix(&f).unwrap();
        prop_assert_eq!(green_symbol(&j), s.clone());
        prop_assert_eq!(GreenSymbol::parse(&f, &s.display(&f)).unwrap(), s);
    }
}

/// Every type's census against the symbolic row, and the classes tile
/// `M_n(F_q)` with class size `|GL_n|/z_A`.
#[test]
fn census_matches_typegen() {
    for (n, q) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let f = Ring::field_of_size(q).unwrap();
        let census = classify_space(n as usize, &f, 1 << 20).unwrap();
        let gl = gl_order(n).eval_int(q as i64);
        let mut covered = rat(0);
        for ty in all_types(n) {
            let rec = type_record(&ty, false);
            let got = census.get(&ty);
            let classes = got.map_or(0, |c| c.classes);
            assert_eq!(rat(classes as i64), rec.n_a.eval_int(q as i64), "{ty} at q = {q}");
            if let Some(c) = got {
                let sizes: Vec<u64> = c.class_sizes.iter().copied().collect();
                assert_eq!(sizes.len(), 1, "{ty}");
                let size = rat(sizes[0] as i64);
                assert_eq!(&size * rec.z_a.eval_int(q as i64), gl, "{ty}");
                covered += size * rat(classes as i64);
            }
        }
        assert_eq!(census.len(), census.keys().filter(|t| t.size() == n).count());
        assert_eq!(covered, rat((q as i64).pow(n * n)), "n = {n}, q = {q}");
    }
}

#[test]
fn type_records_factor_the_group_order() {
    let counts = [(1, 1), (2, 4), (3, 8), (4, 22)];
    for (n, t) in counts {
        let recs = enumerate_types(n, false);
        assert_eq!(recs.len(), t);
        for r in &recs {
            assert_eq!(&r.z_a * &r.index, gl_order(n), "{}", r.ty);
            let json = serde_json::to_string(r).unwrap();
            assert_eq!(&serde_json::from_str::<glo2::typegen::TypeRecord>(&json).unwrap(), r);
        }
    }
}
