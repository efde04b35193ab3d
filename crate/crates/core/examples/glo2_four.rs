//! Interpolates the zeta function of `G_(3,1)` from oracle data and
//! assembles the symbolic zeta function of `GL_4(O_2)` with it.
//!
//! `cargo run --release -p glo2 --example glo2_four`

use std::time::Instant;

use glo2::glzeta::{GroupKey, ZetaEngine, DEFAULT_SUPPORT, Q0};
use glo2::oracle::Budget;

fn main() {
    let start = Instant::now();
    let mut engine = ZetaEngine::new(Budget {
        max_elements: 500_000,
        max_classes: 6_000,
    });
    let key: GroupKey = "Glambda(3,1)".parse().unwrap();
    let g31 = engine
        .interpolate_zeta(&key, &DEFAULT_SUPPORT, engine.degree_bound)
        .expect("oracle data at the support points");
    println!("{key}: {g31}");

    engine.support = Some(DEFAULT_SUPPORT.to_vec());
    let z = engine.glo2_zeta(4, Q0::Symbolic).unwrap();
    let z = z.value.symbolic().unwrap();
    println!("GLO2(4): {} terms", z.terms().len());
    println!("sum of squares = |GL_4(O_2)|: {}", z.sum_squares() == GroupKey::GLO2 { n: 4 }.order());
    for q in [2, 3, 4, 5] {
        println!("classes at q = {q}: {}", z.eval(q).unwrap().total());
    }
    println!("{:.1?}", start.elapsed());
}
