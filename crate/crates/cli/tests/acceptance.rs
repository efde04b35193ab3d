//! The eleven acceptance criteria, each printed as one PASS/FAIL line.
//! Run with `cargo test -p glo2-cli --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use clap::Parser;

use glo2::glzeta::{
    g211_zeta, g21_zeta, gl_fq_zeta, reference, GroupKey, ZetaEngine, ZetaReport, DEFAULT_SUPPORT, Q0,
};
use glo2::oracle::{degrees_of, group_report, GroupSpecifier};
use glo2::polyq::rat;
use glo2::rings::Ring;
use glo2::typegen::{gl_order, mass_check};
use glo2::{DegreeMultiset, PolyQ, ZetaSum};
use glo2_cli::{run, suites, Cli, EXTENDED_BUDGET};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli_zeta(group: &str) -> Result<ZetaSum, String> {
    let cli = Cli::try_parse_from(["glo2", "zeta", group, "sym"]).map_err(|e| e.to_string())?;
    let out = run(&cli).map_err(|e| e.to_string())?;
    let report: ZetaReport = serde_json::from_str(&out.output).map_err(|e| e.to_string())?;
    let value = report.value().map_err(|e| e.to_string())?;
    value.symbolic().cloned().ok_or_else(|| "numeric output".into())
}

fn c1_symbolic_reproduction(_: &mut ZetaEngine) -> Outcome {
    let pairs = [
        ("GLO2(2)", reference::GL2_O2),
        ("GLO2(3)", reference::GL3_O2),
        ("GL(2)", reference::GL2_O1),
        ("GL(3)", reference::GL3_O1),
    ];
    for (group, displayed) in pairs {
        let want = reference::expand(&displayed).map_err(|e| e.to_string())?;
        let got = cli_zeta(group)?;
        ensure(got == want, || format!("{group}: {got} != {want}"))?;
    }
    Ok("GLO2(2), GLO2(3), GL(2), GL(3) equal the displayed formulas".into())
}

fn c2_burnside(engine: &mut ZetaEngine) -> Outcome {
    for n in 2..=4 {
        let z = engine.glo2_zeta(n, Q0::Symbolic).map_err(|e| e.to_string())?;
        let s = z.value.symbolic().unwrap().sum_squares();
        let want = GroupKey::GLO2 { n }.order();
        ensure(s == want, || format!("GLO2({n}): {s} != {want}"))?;
        ensure(want == PolyQ::q_pow(n * n) * gl_order(n), || "order".into())?;
    }
    for m in 1..=4 {
        let s = gl_fq_zeta(m, 1).sum_squares();
        ensure(s == gl_order(m), || format!("GL({m}): {s}"))?;
    }
    Ok("GLO2(n) for n = 2, 3, 4 (with interpolated G_(3,1)); GL(m) for m <= 4".into())
}

fn c3_mass(_: &mut ZetaEngine) -> Outcome {
    for n in 1..=4 {
        mass_check(n).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok("n = 1..4".into())
}

fn c4_tables(_: &mut ZetaEngine) -> Outcome {
    let mut notes = Vec::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let r = suites::tables(n, q, 1 << 20).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            return Err(format!("({n},{q}) {}: {:?}", c.name, c.witness));
        }
        for c in r.checks.iter().filter(|c| c.note.is_some()) {
            notes.push(format!("({n},{q}) {}: {}", c.name, c.note.as_ref().unwrap()));
        }
        ensure(r.pass, || format!("({n},{q})"))?;
    }
    let mut msg = "every row at (2,2), (2,3), (3,2), (3,3), (4,2)".to_string();
    for n in notes {
        msg += &format!("; {n}");
    }
    Ok(msg)
}

fn c5_main_theorem(engine: &mut ZetaEngine) -> Outcome {
    for p in [2, 3] {
        let r = suites::main_theorem(engine, 2, p).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            return Err(format!("p = {p}: {} {:?}", c.name, c.witness));
        }
    }
    let spec: GroupSpecifier = "GL(2,Z/4)".parse().unwrap();
    let d = degrees_of(&spec, &engine.budget).map_err(|e| e.to_string())?;
    let want = DegreeMultiset::from_pairs(&[(1, 4), (2, 5), (3, 4), (6, 1)]);
    ensure(d == want && d.sum_squares() == 96, || format!("GL(2,Z/4): {d}"))?;
    Ok(format!("GL(2,Z/4) = GL(2,F2[t]/t^2) = {d}; GL(2,Z/9) = GL(2,F3[t]/t^2)"))
}

fn c6_class_counts(engine: &mut ZetaEngine) -> Outcome {
    let mut seen = Vec::new();
    for (spec, n, q) in [
        ("GL(2,Z/4)", 2, 2),
        ("GL(2,Z/9)", 2, 3),
        ("GL(3,Z/4)", 3, 2),
        ("GL(3,F2[t]/t^2)", 3, 2),
    ] {
        let g = group_report(&spec.parse().unwrap(), &engine.budget, false).map_err(|e| e.to_string())?;
        let z = engine.glo2_zeta(n, Q0::Symbolic).map_err(|e| e.to_string())?;
        let want = z.value.symbolic().unwrap().class_count().eval(&rat(q));
        ensure(rat(g.classes as i64) == want, || format!("{spec}: {} != {want}", g.classes))?;
        seen.push(format!("{spec}: {}", g.classes));
    }
    ensure(seen[0].ends_with(": 14"), || seen[0].clone())?;
    Ok(seen.join(", "))
}

fn c7_lemma_groups(engine: &mut ZetaEngine) -> Outcome {
    let mut g211_at_2 = 0;
    for q in [2u32, 3] {
        let f = Ring::field_of_size(q).unwrap();
        for (lambda, formula) in [("(2,1)", g21_zeta()), ("(2,1,1)", g211_zeta())] {
            let spec = GroupSpecifier::glambda(&f, &lambda.parse().unwrap());
            let got = degrees_of(&spec, &engine.budget).map_err(|e| e.to_string())?;
            let want = formula.eval(q as u64).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{spec}: {got} != {want}"))?;
            if q == 2 && lambda == "(2,1,1)" {
                g211_at_2 = got.sum_squares();
            }
        }
    }
    ensure(g211_at_2 == 192, || format!("G_(2,1,1) at q=2: {g211_at_2}"))?;
    Ok("G_(2,1) and G_(2,1,1) at q = 2, 3; sum of squares 192 at q = 2".into())
}

fn c8_extension(engine: &mut ZetaEngine) -> Outcome {
    let mut count = 0;
    for q in [2, 3] {
        for n in 1..=3 {
            let r = suites::extension(engine, n, q).map_err(|e| e.to_string())?;
            if let Some(c) = r.checks.iter().find(|c| !c.pass) {
                return Err(format!("n={n} q={q} {}: {:?}", c.name, c.witness));
            }
            count += r.checks.len();
        }
    }
    Ok(format!("{count} type representatives over Z/p^2 and F_q[t]/t^2"))
}

fn c9_gl4(engine: &mut ZetaEngine) -> Outcome {
    let spec: GroupSpecifier = "GL(4,F2)".parse().unwrap();
    let g = group_report(&spec, &engine.budget, true).map_err(|e| e.to_string())?;
    ensure(g.order == 20160 && g.classes == 14, || format!("{} {}", g.order, g.classes))?;
    let got = g.degrees.unwrap();
    let want = gl_fq_zeta(4, 1).eval(2).map_err(|e| e.to_string())?;
    ensure(got == want, || format!("{got} != {want}"))?;
    Ok(format!("GL(4,F2) = {got}"))
}

const HELD_OUT: [u64; 2] = [2, 9];

fn c10_interpolated(engine: &mut ZetaEngine) -> Outcome {
    let key: GroupKey = "Glambda(3,1)".parse().unwrap();
    let z = engine
        .interpolate_zeta(&key, &DEFAULT_SUPPORT, engine.degree_bound)
        .map_err(|e| e.to_string())?;
    let want = PolyQ::parse("q^4(q-1)^2").unwrap();
    ensure(key.order() == want, || format!("order {}", key.order()))?;
    ensure(z.sum_squares() == want, || format!("sum of squares {}", z.sum_squares()))?;
    for q in HELD_OUT {
        ensure(!DEFAULT_SUPPORT.contains(&q), || format!("{q} in support"))?;
        let oracle = engine.oracle_degrees(&key, q).map_err(|e| e.to_string())?;
        let eval = z.eval(q).map_err(|e| e.to_string())?;
        ensure(oracle == eval, || format!("q={q}: {oracle} != {eval}"))?;
    }
    Ok(format!("{z}; held out q = 2, 9"))
}

fn c11_polynomiality(engine: &mut ZetaEngine) -> Outcome {
    for n in [3, 4] {
        let z = engine.glo2_zeta(n, Q0::Symbolic).map_err(|e| e.to_string())?;
        for t in z.value.symbolic().unwrap().terms() {
            for q in [2, 3, 4, 5, 7, 8, 9] {
                for p in [&t.mult, &t.dim] {
                    let v = p.eval_int(q);
                    ensure(v.is_integer() && v >= rat(0), || format!("n={n}: {p} at {q} = {v}"))?;
                }
            }
        }
    }
    Ok("GLO2(3), GLO2(4) at q in {2,3,4,5,7,8,9}".into())
}

type Criterion = (u32, &'static str, Duration, fn(&mut ZetaEngine) -> Outcome);

#[test]
fn acceptance() {
    let mut engine = ZetaEngine::new(EXTENDED_BUDGET);
    engine.support = Some(DEFAULT_SUPPORT.to_vec());
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        (1, "symbolic reproduction", secs(5), c1_symbolic_reproduction),
        (2, "Burnside identities", secs(30), c2_burnside),
        (3, "mass identity", secs(5), c3_mass),
        (4, "table verification", secs(120), c4_tables),
        (5, "degree multisets of GL_2(O_2)", secs(120), c5_main_theorem),
        (6, "class counts", secs(600), c6_class_counts),
        (7, "G_(2,1) and G_(2,1,1)", secs(60), c7_lemma_groups),
        (8, "extension suite", secs(300), c8_extension),
        (9, "GL_4(F_q) degrees", secs(300), c9_gl4),
        (10, "interpolated G_(3,1)", secs(600), c10_interpolated),
        (11, "polynomiality", secs(60), c11_polynomiality),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let result = f(&mut engine);
        let took = start.elapsed();
        let result = result.and_then(|msg| {
            if took <= limit {
                Ok(msg)
            } else {
                Err(format!("took {took:.1?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS criterion {id} ({name}, {took:.2?}): {msg}"),
            Err(msg) => {
                println!("FAIL criterion {id} ({name}, {took:.2?}): {msg}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
