//! Displayed zeta formulas in their original LaTeX, and an expander that
//! turns them into [`ZetaSum`]s using only each other.
//!
//! Composed terms `c · R_X(D^k)` are resolved against the other displayed
//! formulas, never against this crate's own computations, so comparing an
//! expansion with [`super::glo2_closed`] is a genuine cross-check.
//! Transcription defects are fixed by explicit textual repairs listed with
//! each formula.

use std::collections::HashMap;

use crate::error::ParseError;
use crate::polyq::{PolyQ, ZetaSum, ZetaTerm};

/// One displayed formula `R_X(D) = …`.
#[derive(Clone, Copy, Debug)]
pub struct DisplayedFormula {
    pub id: &'static str,
    pub latex: &'static str,
    /// `(from, to)` replacements applied after whitespace normalisation.
    pub repairs: &'static [(&'static str, &'static str)],
}

pub const GL2_O1: DisplayedFormula = DisplayedFormula {
    id: "GL2(O1)",
    latex: r"R_{\glO{2}{1}}(\mathcal{D}) & = & (q-1) \mathcal{D} + (q-1) \mathcal{D}^{q} + \frac{1}{2}(q-1)(q-2)
\mathcal{D}^{q+1} \nonumber \\
&   &  + \frac{1}{2} q(q-1) \mathcal{D}^{q-1}.",
    repairs: &[],
};

pub const GL3_O1: DisplayedFormula = DisplayedFormula {
    id: "GL3(O1)",
    latex: r"\mathcal{R}_{\glO{3}{1}}(\mathcal{D}) & = & (q-1) \mathcal{D} + (q-1) \mathcal{D}^{q^2 + q} + (q-1)
\mathcal{D}^{q^3}  \nonumber \\
   &  &  (q-1)(q-2) \mathcal{D}^{q^2 + q + 1} + (q-1)(q-2) \mathcal{D}^{q(q^2 + q + 1)}
  \nonumber \\
 &  &  + \frac{1}{6}(q-1)(q-2)(q-3) \mathcal{D}^{(q+1)(q^2 + q + 1)} \nonumber \\ 
&  &  + \frac{1}{2} q(q-1)^2 \mathcal{D}^{(q-1)(q^2 + q + 1)} \nonumber \\
&  & + \frac{1}{3} q(q-1)(q+1) \mathcal{D}^{(q+1)(q-1)^{2}} ",
    // the second line starts without a `+`
    repairs: &[(r"\mathcal{D}^{q^3} (q-1)(q-2)", r"\mathcal{D}^{q^3} + (q-1)(q-2)")],
};

pub const G21: DisplayedFormula = DisplayedFormula {
    id: "G(2,1)",
    latex: r"R_{G_{(2,1)}}(\mathcal{D}) =  (q-1)^2 \mathcal{D} + (q^2 - 1)\mathcal{D}^{q-1}
+ (q - 1)^{3} \mathcal{D}^{q}",
    repairs: &[],
};

pub const G211: DisplayedFormula = DisplayedFormula {
    id: "G(2,1,1)",
    latex: r"\mathcal{R}_{G_{(2,1,1)}}(\mathcal{D})  =  (q-1)^2
\mathcal{R}_{\glO{2}{1}}(\mathcal{D}^{q^2}) + (q-1) \mathcal{R}_{(\mathcal{O}_1^{2} \times
  \mathcal{O}_{1}^{2}) \rtimes \mathrm{G}_{(1,1)}}(\mathcal{D}),",
    repairs: &[],
};

pub const G211_COMPANION: DisplayedFormula = DisplayedFormula {
    id: "(O1^2 x O1^2) x| G(1,1)",
    latex: r"\mathcal{R}_{(\mathcal{O}_1^{2} \times
  \mathcal{O}_1^{2}) \rtimes \mathrm{G}_{(1,1)}}(\mathcal{D}) & =  & 
\mathcal{R}_{(1,1)}(\mathcal{D}) + 2(q-1) \mathcal{D}^{q^2 -1} + (q-1)^2
  \mathcal{D}^(q^2-1)q \nonumber \\
&  &  + (q+2) \mathcal{D}^{(q^2-1)(q-1)}.",
    // R_{(1,1)} is the zeta function of G_{(1,1)} = GL_2(F_q); the last
    // exponent of the first line lost its braces
    repairs: &[
        (r"\mathcal{R}_{(1,1)}", r"\mathcal{R}_{\glO{2}{1}}"),
        (r"\mathcal{D}^(q^2-1)q", r"\mathcal{D}^{(q^2-1)q}"),
    ],
};

pub const GL2_O2: DisplayedFormula = DisplayedFormula {
    id: "GL2(O2)",
    latex: r"R_{\glO{2}{2}}(\mathcal{D}) &  = &  q R_{\glO{2}{1}}(\mathcal{D}) + \frac{1}{2} q(q-1)^3
\mathcal{D}^{q(q+1)} + q^2 (q-1) \mathcal{D}^{q^2-1} \nonumber \\ 
  &   &  + \frac{1}{2}q(q+1)(q-1)^2 \mathcal{D}^{q^2-q} ",
    repairs: &[],
};

pub const GL3_O2: DisplayedFormula = DisplayedFormula {
    id: "GL3(O2)",
    latex: r"\mathcal{R}_{\glO{3}{2}}(\mathcal{D}) & =  & q
\mathcal{R}_{\glO{3}{1}}(\mathcal{D}) + q(q-1)^2
\mathcal{R}_{\glO{2}{1}}(\mathcal{D}^{q^2(q^2+q+1)}) \nonumber \\ 
&  &  + \frac{1}{6}q(q-2)(q-1)^4
\mathcal{D}^{q^3(q+1)(q^2+q+1)} + \nonumber \\ 
&  &  q^2(q-1)^3 \mathcal{D}^{q^2(q^3-1)(q+1)} + q
\mathcal{R}_{\mathrm{G}_{(2,1)}}(\mathcal{D}^{(q^3-1)(q+1)}) \nonumber \\
&  &  + q^3 (q-1) \mathcal{D}^{q(q^3-1)(q^2-1)} \nonumber 
\end{eqnarray}
\begin{eqnarray}
& & + \frac{1}{2}q^2(q-1)^2(q^2-1)\mathcal{D}^{q^3(q^3-1)} \nonumber \\
&  &  + \frac{1}{3}q(q^2-1)(q^3-1)
\mathcal{D}^{q^3(q-1)^2(q+1)} ",
    repairs: &[],
};

pub const ALL: [DisplayedFormula; 7] = [GL2_O1, GL3_O1, G21, G211, G211_COMPANION, GL2_O2, GL3_O2];

/// A term of a displayed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefTerm {
    /// `mult · D^{dim}`.
    Monomial { mult: PolyQ, dim: PolyQ },
    /// `mult · R_{group}(D^{power})`.
    Composed { mult: PolyQ, group: String, power: PolyQ },
}

/// Left-hand group name and right-hand terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFormula {
    pub group: String,
    pub terms: Vec<RefTerm>,
}

fn err(f: &DisplayedFormula, reason: impl Into<String>) -> ParseError {
    ParseError::new("displayed formula", f.id, reason)
}

/// Layout commands removed, whitespace collapsed, repairs applied.
pub fn normalise(f: &DisplayedFormula) -> String {
    let mut s = f.latex.to_string();
    for junk in [
        r"\begin{eqnarray*}",
        r"\end{eqnarray*}",
        r"\begin{eqnarray}",
        r"\end{eqnarray}",
        r"\nonumber",
        r"\\",
        "&",
    ] {
        s = s.replace(junk, " ");
    }
    let mut s = s.split_whitespace().collect::<Vec<_>>().join(" ");
    while s.ends_with('.') || s.ends_with(',') {
        s.pop();
    }
    for (from, to) in f.repairs {
        s = s.replace(from, to);
    }
    s
}

/// Text of the `{…}` or `(…)` group starting at byte `open`, and the index
/// just past it.
fn group(s: &str, open: usize) -> Option<(&str, usize)> {
    let (lo, hi) = match s[open..].chars().next()? {
        '{' => ('{', '}'),
        '(' => ('(', ')'),
        _ => return None,
    };
    let mut depth = 0;
    for (i, c) in s[open..].char_indices() {
        if c == lo {
            depth += 1;
        } else if c == hi {
            depth -= 1;
            if depth == 0 {
                return Some((&s[open + 1..open + i], open + i + 1));
            }
        }
    }
    None
}

/// `\mathcal{D}` followed by an optional exponent; returns the exponent and
/// the index after it.
fn power_of_d(f: &DisplayedFormula, s: &str, at: usize) -> Result<(PolyQ, usize), ParseError> {
    const D: &str = r"\mathcal{D}";
    if !s[at..].starts_with(D) {
        return Err(err(f, format!("expected \\mathcal{{D}} in `{s}`")));
    }
    let mut i = at + D.len();
    if !s[i..].starts_with('^') {
        return Ok((PolyQ::one(), i));
    }
    i += 1;
    if let Some((e, next)) = group(s, i) {
        if s[i..].starts_with('{') {
            return Ok((PolyQ::parse_latex(e)?, next));
        }
    }
    let c = s[i..].chars().next().ok_or_else(|| err(f, "missing exponent"))?;
    Ok((PolyQ::parse_latex(&c.to_string())?, i + c.len_utf8()))
}

fn coefficient(text: &str) -> Result<PolyQ, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        Ok(PolyQ::one())
    } else {
        PolyQ::parse_latex(t)
    }
}

/// Finds `R_{` or `\mathcal{R}_{`, returning the start of the marker and
/// the index of the `{`.
fn find_r(s: &str) -> Option<(usize, usize)> {
    let cal = r"\mathcal{R}_";
    if let Some(i) = s.find(cal) {
        return Some((i, i + cal.len()));
    }
    let plain = s.find("R_{")?;
    Some((plain, plain + 2))
}

fn parse_term(f: &DisplayedFormula, t: &str) -> Result<RefTerm, ParseError> {
    if let Some((start, open)) = find_r(t) {
        let (name, after) = group(t, open).ok_or_else(|| err(f, "unbalanced group name"))?;
        let (arg, end) = group(t, after).ok_or_else(|| err(f, "missing argument"))?;
        if !t[end..].trim().is_empty() {
            return Err(err(f, format!("trailing text in `{t}`")));
        }
        let (power, used) = power_of_d(f, arg.trim(), 0)?;
        if used != arg.trim().len() {
            return Err(err(f, format!("bad argument `{arg}`")));
        }
        return Ok(RefTerm::Composed {
            mult: coefficient(&t[..start])?,
            group: name.to_string(),
            power,
        });
    }
    let at = t
        .find(r"\mathcal{D}")
        .ok_or_else(|| err(f, format!("no \\mathcal{{D}} in `{t}`")))?;
    let (dim, end) = power_of_d(f, t, at)?;
    if !t[end..].trim().is_empty() {
        return Err(err(f, format!("trailing text in `{t}`")));
    }
    Ok(RefTerm::Monomial {
        mult: coefficient(&t[..at])?,
        dim,
    })
}

/// Splits at `+` outside brackets.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|t| !t.is_empty()).collect()
}

pub fn parse(f: &DisplayedFormula) -> Result<ParsedFormula, ParseError> {
    let s = normalise(f);
    let (lhs, rhs) = s.split_once('=').ok_or_else(|| err(f, "no `=`"))?;
    let (_, open) = find_r(lhs).ok_or_else(|| err(f, "left side is not R_{…}"))?;
    let (group_name, _) = group(lhs, open).ok_or_else(|| err(f, "unbalanced left side"))?;
    let terms = split_terms(rhs)
        .into_iter()
        .map(|t| parse_term(f, t))
        .collect::<Result<_, _>>()?;
    Ok(ParsedFormula {
        group: group_name.to_string(),
        terms,
    })
}

/// Group names compared without braces, spaces or `\mathrm`.
fn name_key(name: &str) -> String {
    name.replace(r"\mathrm", "")
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '{' && *c != '}')
        .collect()
}

/// Fully expanded zeta function of `f`, resolving composed terms through
/// the other displayed formulas.
pub fn expand(f: &DisplayedFormula) -> Result<ZetaSum, ParseError> {
    let parsed: Vec<ParsedFormula> = ALL.iter().map(parse).collect::<Result<_, _>>()?;
    let by_name: HashMap<String, &ParsedFormula> =
        parsed.iter().map(|p| (name_key(&p.group), p)).collect();
    fn go(
        p: &ParsedFormula,
        by_name: &HashMap<String, &ParsedFormula>,
        depth: usize,
    ) -> Result<ZetaSum, ParseError> {
        if depth > ALL.len() {
            return Err(ParseError::new("displayed formula", &p.group, "cyclic reference"));
        }
        let mut acc = ZetaSum::zero();
        for t in &p.terms {
            let part = match t {
                RefTerm::Monomial { mult, dim } => ZetaSum::new([ZetaTerm {
                    mult: mult.clone(),
                    dim: dim.clone(),
                }]),
                RefTerm::Composed { mult, group, power } => {
                    let sub = by_name.get(&name_key(group)).ok_or_else(|| {
                        ParseError::new("displayed formula", group, "unknown group")
                    })?;
                    go(sub, by_name, depth + 1)?
                        .substitute_power(power)
                        .scale_mults(mult)
                }
            };
            acc = acc.add(&part);
        }
        Ok(acc)
    }
    go(&parse(f)?, &by_name, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_formulas_parse() {
        for f in ALL {
            parse(&f).unwrap_or_else(|e| panic!("{}: {e}", f.id));
        }
        assert_eq!(parse(&GL3_O1).unwrap().terms.len(), 8);
        assert_eq!(parse(&GL3_O2).unwrap().terms.len(), 8);
    }

    #[test]
    fn missing_plus_is_detected_without_repair() {
        let raw = DisplayedFormula {
            repairs: &[],
            ..GL3_O1
        };
        assert!(parse(&raw).is_err());
    }

    #[test]
    fn expansions_have_the_right_orders() {
        use crate::typegen::gl_order;
        let order = |f: &DisplayedFormula| expand(f).unwrap().sum_squares();
        assert_eq!(order(&GL2_O1), gl_order(2));
        assert_eq!(order(&GL3_O1), gl_order(3));
        assert_eq!(order(&GL2_O2), PolyQ::q_pow(4) * gl_order(2));
        assert_eq!(order(&GL3_O2), PolyQ::q_pow(9) * gl_order(3));
        assert_eq!(order(&G211), PolyQ::parse("q^6(q-1)^3(q+1)").unwrap());
    }
}
