use std::fmt::Write as _;

use serde::Serialize;

use glo2::glzeta::{CachedZeta, ZetaCacheEntry, ZetaReport, Q0};
use glo2::oracle::GroupReport;
use glo2::typegen::{centralizer_label, to_csv, to_latex, TypeRecord};
use glo2::PolyQ;

use crate::suites::SuiteReport;
use crate::{CliError, Format};

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn unsupported(what: &str, f: Format) -> CliError {
    CliError::Usage(format!("{what} cannot be rendered as {f:?}").to_lowercase())
}

fn latex_poly(s: &str) -> String {
    s.parse::<PolyQ>().map_or(s.to_string(), |p| p.to_latex())
}

fn latex_terms<'a>(terms: impl Iterator<Item = (&'a str, &'a str)>) -> String {
    let parts: Vec<String> = terms
        .map(|(m, d)| {
            let m = match latex_poly(m) {
                m if m == "1" => String::new(),
                m if m.contains(' ') => format!("({m})"),
                m => m,
            };
            format!("{m}\\mathcal{{D}}^{{{}}}", latex_poly(d))
        })
        .collect();
    parts.join(" + ")
}

pub fn zeta(r: &ZetaReport, f: Format) -> Result<String, CliError> {
    Ok(match f {
        Format::Json => json(r),
        Format::Csv => {
            let mut s = "mult,dim\n".to_string();
            for t in &r.terms {
                writeln!(s, "{},{}", t.mult, t.dim).unwrap();
            }
            s
        }
        Format::Latex => latex_terms(r.terms.iter().map(|t| (t.mult.as_str(), t.dim.as_str()))),
        Format::Text => {
            let q = match r.q {
                Q0::Symbolic => "q".to_string(),
                Q0::At(x) => x.to_string(),
            };
            let mut s = format!("{} at q = {q}\n", r.group);
            for t in &r.terms {
                writeln!(s, "  {} x D^({})", t.mult, t.dim).unwrap();
            }
            let prov: Vec<String> = r.provenance.iter().map(|p| p.to_string()).collect();
            writeln!(s, "sum of squares: {}", r.sum_squares).unwrap();
            writeln!(s, "provenance: {}", prov.join(", ")).unwrap();
            s
        }
    })
}

pub fn types(records: &[TypeRecord], f: Format) -> String {
    match f {
        Format::Json => json(&records),
        Format::Csv => to_csv(records),
        Format::Latex => to_latex(records),
        Format::Text => {
            let rows: Vec<[String; 4]> = records
                .iter()
                .map(|r| {
                    [
                        r.ty.to_string(),
                        r.n_a.factored().to_string(),
                        centralizer_label(&r.ty),
                        r.index.factored().to_string(),
                    ]
                })
                .collect();
            let head = ["type", "n_A", "centralizer", "index"].map(String::from);
            let mut widths = [0; 4];
            for row in std::iter::once(&head).chain(&rows) {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let mut s = String::new();
            for row in std::iter::once(&head).chain(&rows) {
                let cells: Vec<String> = row
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(s, "{}", cells.join("  ").trim_end()).unwrap();
            }
            s
        }
    }
}

pub fn oracle(r: &GroupReport, f: Format) -> Result<String, CliError> {
    Ok(match f {
        Format::Json => json(r),
        Format::Text => {
            let mut s = format!(
                "{}\norder: {}\nexponent: {}\nclasses: {}\n",
                r.group, r.order, r.exponent, r.classes
            );
            if let Some(d) = &r.degrees {
                writeln!(s, "degrees: {d}").unwrap();
            }
            s
        }
        Format::Csv => {
            let d = r.degrees.as_ref().ok_or_else(|| unsupported("group statistics", f))?;
            let mut s = "degree,multiplicity\n".to_string();
            for (k, m) in d.iter() {
                writeln!(s, "{k},{m}").unwrap();
            }
            s
        }
        Format::Latex => {
            let d = r.degrees.as_ref().ok_or_else(|| unsupported("group statistics", f))?;
            let pairs: Vec<(String, String)> = d.iter().map(|(k, m)| (m.to_string(), k.to_string())).collect();
            latex_terms(pairs.iter().map(|(m, k)| (m.as_str(), k.as_str())))
        }
    })
}

pub fn suite(r: &SuiteReport, f: Format) -> Result<String, CliError> {
    Ok(match f {
        Format::Json => json(r),
        Format::Text => {
            let mut s = String::new();
            for c in &r.checks {
                write!(s, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name).unwrap();
                if let Some(w) = &c.witness {
                    write!(s, ": {w}").unwrap();
                }
                if let Some(n) = &c.note {
                    write!(s, " [{n}]").unwrap();
                }
                s.push('\n');
            }
            for k in &r.skipped {
                writeln!(s, "SKIP {k}").unwrap();
            }
            writeln!(s, "{}: {}", r.suite, if r.pass { "pass" } else { "fail" }).unwrap();
            s
        }
        Format::Csv => {
            let mut s = "check,pass,witness\n".to_string();
            for c in &r.checks {
                let w = c.witness.clone().unwrap_or_default().replace('"', "\"\"");
                writeln!(s, "\"{}\",{},\"{w}\"", c.name, c.pass).unwrap();
            }
            s
        }
        Format::Latex => return Err(unsupported("a verification report", f)),
    })
}

pub fn cache(entries: &[ZetaCacheEntry], f: Format) -> Result<String, CliError> {
    Ok(match f {
        Format::Json => json(&entries),
        Format::Text | Format::Csv => {
            let mut s = if f == Format::Csv {
                "group,q,provenance,support\n".to_string()
            } else {
                String::new()
            };
            for e in entries {
                let q = match e.q0 {
                    Q0::Symbolic => "sym".to_string(),
                    Q0::At(x) => x.to_string(),
                };
                let support = e
                    .support
                    .as_ref()
                    .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"))
                    .unwrap_or_default();
                if f == Format::Csv {
                    writeln!(s, "{},{q},{},{support}", e.key, e.provenance).unwrap();
                } else {
                    let value = match &e.zeta {
                        CachedZeta::Symbolic(z) => z.to_string(),
                        CachedZeta::Evaluated(m) => m.to_string(),
                    };
                    writeln!(s, "{} q={q} [{}] {value}", e.key, e.provenance).unwrap();
                }
            }
            s
        }
        Format::Latex => return Err(unsupported("the cache", f)),
    })
}
