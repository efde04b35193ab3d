use std::fmt;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::PolyQ;

fn write_rat(out: &mut String, c: &BigRational) {
    if c.is_integer() {
        out.push_str(&c.to_integer().to_string());
    } else {
        out.push_str(&format!("{}/{}", c.numer(), c.denom()));
    }
}

fn write_rat_latex(out: &mut String, c: &BigRational) {
    if c.is_integer() {
        out.push_str(&c.to_integer().to_string());
    } else {
        out.push_str(&format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()));
    }
}

/// Monomials in strictly descending exponent order: `1/2*q^3 - 1/2*q^2`.
pub(super) fn canonical(p: &PolyQ, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(&expanded(p, false))
}

pub(super) fn latex(p: &PolyQ) -> String {
    expanded(p, true)
}

fn expanded(p: &PolyQ, tex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = abs.is_one();
        if e == 0 || !unit {
            if tex {
                write_rat_latex(&mut out, &abs);
            } else {
                write_rat(&mut out, &abs);
            }
            if e > 0 && !tex {
                out.push('*');
            }
        }
        match (e, tex) {
            (0, _) => {}
            (1, _) => out.push('q'),
            (k, false) => out.push_str(&format!("q^{k}")),
            (k, true) => out.push_str(&format!("q^{{{k}}}")),
        }
    }
    out
}

/// Factors recognised by the factored rendering, tried in this order.
const FACTORS: &[&[i64]] = &[
    &[-1, 1],          // q - 1
    &[1, 1],           // q + 1
    &[-2, 1],          // q - 2
    &[-3, 1],          // q - 3
    &[1, 0, 1],        // q^2 + 1
    &[1, 1, 1],        // q^2 + q + 1
    &[1, -1, 1],       // q^2 - q + 1
    &[1, 1, 1, 1, 1],  // q^4 + q^3 + q^2 + q + 1
];

struct Factorisation {
    content: BigRational,
    q_power: u32,
    factors: Vec<(PolyQ, u32)>,
    rest: Option<PolyQ>,
}

fn factorise(p: &PolyQ) -> Factorisation {
    let q_power = p.lowest_exponent().unwrap_or(0);
    let mut rem = p.strip_q_power();
    let mut factors = Vec::new();
    for coeffs in FACTORS {
        let f = PolyQ::from_coeffs(coeffs);
        let mut e = 0;
        while rem.degree().unwrap_or(0) >= f.degree().unwrap() {
            match rem.div_exact(&f) {
                Some(next) => {
                    rem = next;
                    e += 1;
                }
                None => break,
            }
        }
        if e > 0 {
            factors.push((f, e));
        }
    }
    let content = rem.leading_coeff().cloned().unwrap_or_else(BigRational::zero);
    let rest = match rem.degree() {
        Some(d) if d > 0 => Some(rem.scale(&(BigRational::one() / &content))),
        _ => None,
    };
    Factorisation {
        content,
        q_power,
        factors,
        rest,
    }
}

/// Renders as `content * q^k * (f1)^e1 * …`, using a fixed dictionary of
/// small factors; whatever is left over is printed expanded.
pub struct FactoredDisplay<'a>(pub(super) &'a PolyQ);

impl FactoredDisplay<'_> {
    fn render(&self, tex: bool) -> String {
        let p = self.0;
        if p.is_zero() {
            return "0".to_string();
        }
        let fac = factorise(p);
        let mut parts: Vec<String> = Vec::new();
        let body_empty = fac.q_power == 0 && fac.factors.is_empty() && fac.rest.is_none();
        let mut out = String::new();
        let c = &fac.content;
        if c.is_negative() {
            out.push('-');
        }
        let abs = c.abs();
        if !abs.is_one() || body_empty {
            let mut s = String::new();
            if tex {
                write_rat_latex(&mut s, &abs);
            } else {
                write_rat(&mut s, &abs);
            }
            parts.push(s);
        }
        match fac.q_power {
            0 => {}
            1 => parts.push("q".into()),
            k if tex => parts.push(format!("q^{{{k}}}")),
            k => parts.push(format!("q^{k}")),
        }
        let render_poly = |f: &PolyQ| if tex { f.to_latex() } else { f.to_string() };
        for (f, e) in &fac.factors {
            let base = format!("({})", render_poly(f));
            parts.push(match (*e, tex) {
                (1, _) => base,
                (e, false) => format!("{base}^{e}"),
                (e, true) => format!("{base}^{{{e}}}"),
            });
        }
        if let Some(r) = &fac.rest {
            parts.push(format!("({})", render_poly(r)));
        }
        out.push_str(&parts.join(if tex { "" } else { "*" }));
        out
    }

    pub fn latex(&self) -> String {
        self.render(true)
    }
}

impl fmt::Display for FactoredDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

#[cfg(test)]
mod tests {
    use crate::polyq::PolyQ;

    #[test]
    fn factored_forms_parse_back() {
        for s in [
            "1/2*q*(q-1)",
            "q^3*(q+1)*(q^2+q+1)",
            "1/8*q*(q-1)*(q^2-q-2)",
            "-3",
            "q^2+q+3",
            "1/24*q*(q-1)*(q-2)*(q-3)",
        ] {
            let p = PolyQ::parse(s).unwrap();
            let f = p.factored().to_string();
            assert_eq!(PolyQ::parse(&f).unwrap(), p, "{s} -> {f}");
            let tex = p.factored().latex();
            assert_eq!(PolyQ::parse_latex(&tex).unwrap(), p, "{tex}");
        }
        assert_eq!(PolyQ::parse("1/2*q*(q-1)").unwrap().factored().to_string(), "1/2*q*(q - 1)");
        assert_eq!(
            PolyQ::parse("q^2-q").unwrap().factored().latex(),
            "q(q - 1)"
        );
    }

    #[test]
    fn latex_expanded() {
        let p = PolyQ::parse("1/2*q^2 - 1/2*q").unwrap();
        assert_eq!(p.to_latex(), "\\frac{1}{2}q^{2} - \\frac{1}{2}q");
    }
}
