//! Recursive-descent parser for polynomial expressions in `q`.
//!
//! Accepts the canonical rendering (`1/2*q^3 - 1/2*q^2`) as well as
//! factored input such as `1/6*q(q-1)(q-2)` or `q^2(q^3-1)(q+1)`.
//! Juxtaposition means multiplication; division is only allowed by
//! nonzero constants.

use num::rational::BigRational;
use num::{BigInt, Zero};

use super::PolyQ;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Q,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '{' | '}' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            'q' => out.push(Tok::Q),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            other => {
                return Err(ParseError::new(
                    "polynomial",
                    s,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> ParseError {
        ParseError::new("polynomial", self.src, reason)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PolyQ, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyQ, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    let c = d
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
                }
                Some(Tok::Num(_)) | Some(Tok::Q) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyQ, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyQ, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let exp = match self.bump() {
                Some(Tok::Num(n)) => n,
                Some(Tok::LParen) => {
                    let e = self.expr()?;
                    if self.bump() != Some(Tok::RParen) {
                        return Err(self.err("expected `)` after exponent"));
                    }
                    let c = e.as_constant().ok_or_else(|| self.err("non-constant exponent"))?;
                    if !c.is_integer() {
                        return Err(self.err("fractional exponent"));
                    }
                    c.to_integer()
                }
                _ => return Err(self.err("expected exponent after `^`")),
            };
            let exp: u32 = exp.try_into().map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyQ, ParseError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(PolyQ::constant(BigRational::from_integer(n))),
            Some(Tok::Q) => Ok(PolyQ::q()),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("unbalanced parentheses"));
                }
                Ok(e)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Rewrites `\frac{a}{b}` as `((a)/(b))` so LaTeX table cells parse.
pub(super) fn delatex(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(i) = rest.find("\\frac") {
        out.push_str(&rest[..i]);
        rest = &rest[i + 5..];
        let mut groups = Vec::new();
        for _ in 0..2 {
            let Some(open) = rest.find('{') else { break };
            let mut depth = 0;
            let mut end = None;
            for (j, ch) in rest[open..].char_indices() {
                match ch {
                    '{' => depth += 1,
                    '}' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(open + j);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let Some(end) = end else { break };
            groups.push(rest[open + 1..end].to_string());
            rest = &rest[end + 1..];
        }
        if let [a, b] = groups.as_slice() {
            out.push_str(&format!("(({})/({}))", delatex(a), delatex(b)));
        }
    }
    out.push_str(rest);
    out.replace("\\left", "").replace("\\right", "").replace("\\,", "")
}

pub(super) fn parse_poly(s: &str) -> Result<PolyQ, ParseError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseError::new("polynomial", s, "empty input"));
    }
    let mut p = Parser { toks, pos: 0, src: s };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication() {
        assert_eq!(
            parse_poly("q^2(q^3-1)(q+1)").unwrap(),
            parse_poly("q^2*(q^3-1)*(q+1)").unwrap()
        );
        assert_eq!(parse_poly("2q").unwrap(), parse_poly("2*q").unwrap());
        assert_eq!(
            parse_poly("(q^2-1)q").unwrap(),
            parse_poly("q^3 - q").unwrap()
        );
    }

    #[test]
    fn latex_braces_are_ignored() {
        assert_eq!(
            parse_poly("q^{2}(q-1)").unwrap(),
            parse_poly("q^3 - q^2").unwrap()
        );
    }

    #[test]
    fn latex_fractions() {
        assert_eq!(
            parse_poly(&delatex("\\frac{1}{6}q(q-1)(q-2)")).unwrap(),
            parse_poly("q(q-1)(q-2)/6").unwrap()
        );
        assert_eq!(
            parse_poly(&delatex("\\frac{3}{2}q^{2}")).unwrap(),
            parse_poly("3/2*q^2").unwrap()
        );
    }

    #[test]
    fn errors() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("q/(q-1)").is_err());
        assert!(parse_poly("(q").is_err());
        assert!(parse_poly("x+1").is_err());
        assert!(parse_poly("q^").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
