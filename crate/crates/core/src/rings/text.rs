//! Text forms for rings, ring elements and polynomials over fields.
//!
//! Rings: `F4`, `Z/9`, `GR(9,2)`, `F3[t]/t^2`.
//! Elements: integers for prime rings, polynomials in the field generator
//! `z` and the uniformiser `t` otherwise, e.g. `(z+1)t+z` in `F4[t]/t^2`.
//! Polynomials over a field use the variable `x`: `x^2+(z+1)x+z`.

use std::fmt;
use std::str::FromStr;

use super::{prime_power, Elem, FieldPoly, Ring, RingKind};
use crate::error::ParseError;

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Field { .. } => write!(f, "F{}", self.q()),
            RingKind::Galois { p, m: 1 } => write!(f, "Z/{}", p * p),
            RingKind::Galois { p, m } => write!(f, "GR({},{m})", p * p),
            RingKind::Truncated { len, .. } => write!(f, "F{}[t]/t^{len}", self.q()),
        }
    }
}

impl FromStr for Ring {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Ring, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| ParseError::new("ring", s, reason);
        let num = |x: &str| x.parse::<u32>().map_err(|_| err("expected a number"));
        let kind = if let Some(rest) = t.strip_prefix("Z/") {
            let n = num(rest)?;
            match prime_power(n) {
                Some((p, 1)) => RingKind::Field { p, m: 1 },
                Some((p, 2)) => RingKind::Galois { p, m: 1 },
                _ => return Err(err("Z/n needs n = p or p^2")),
            }
        } else if let Some(rest) = t.strip_prefix("GR(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| err("expected GR(p^2,m)"))?;
            let (p, e) = prime_power(num(a)?).ok_or_else(|| err("not a prime power"))?;
            if e != 2 {
                return Err(err("Galois rings here have characteristic p^2"));
            }
            RingKind::Galois { p, m: num(b)? }
        } else if let Some(rest) = t.strip_prefix('F') {
            let (q, len) = match rest.split_once("[t]/t^") {
                Some((q, l)) => (num(q)?, Some(num(l)?)),
                None => match rest.split_once("[t]/t") {
                    Some((q, "")) => (num(q)?, Some(1)),
                    _ => (num(rest)?, None),
                },
            };
            let (p, m) = prime_power(q).ok_or_else(|| err("field size must be a prime power"))?;
            match len {
                None => RingKind::Field { p, m },
                Some(len) => RingKind::Truncated { p, m, len },
            }
        } else {
            return Err(err("expected F{q}, Z/{p^2}, GR(p^2,m) or F{q}[t]/t^{l}"));
        };
        Ring::new(kind).map_err(|e| err(&e.to_string()))
    }
}

/// A commutative ring in which text expressions are evaluated.
trait Algebra {
    type V: Clone;
    fn int(&self, n: i64) -> Self::V;
    fn var(&self, name: char) -> Option<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
}

struct RingAlg<'a>(&'a Ring);

impl Algebra for RingAlg<'_> {
    type V = Elem;
    fn int(&self, n: i64) -> Elem {
        self.0.from_int(n)
    }
    fn var(&self, name: char) -> Option<Elem> {
        let r = self.0;
        match (name, r.kind()) {
            ('z', RingKind::Field { p, m }) if m > 1 => Some(p),
            ('z', RingKind::Galois { p, m }) if m > 1 => Some(p * p),
            ('z', RingKind::Truncated { p, m, .. }) if m > 1 => Some(p),
            ('t', RingKind::Truncated { len, .. }) if len > 1 => Some(r.pi()),
            ('t', RingKind::Truncated { .. }) => Some(0),
            _ => None,
        }
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.add(*a, *b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.mul(*a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.0.neg(*a)
    }
}

struct PolyAlg<'a>(&'a Ring);

impl Algebra for PolyAlg<'_> {
    type V = FieldPoly;
    fn int(&self, n: i64) -> FieldPoly {
        FieldPoly::constant(self.0.from_int(n))
    }
    fn var(&self, name: char) -> Option<FieldPoly> {
        match name {
            'x' => Some(FieldPoly::x()),
            other => RingAlg(self.0).var(other).map(FieldPoly::constant),
        }
    }
    fn add(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        a.add(b, self.0)
    }
    fn mul(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        a.mul(b, self.0)
    }
    fn neg(&self, a: &FieldPoly) -> FieldPoly {
        a.neg(self.0)
    }
}

struct Eval<'s, A: Algebra> {
    alg: A,
    chars: Vec<char>,
    pos: usize,
    src: &'s str,
    what: &'static str,
}

impl<A: Algebra> Eval<'_, A> {
    fn err(&self, reason: &str) -> ParseError {
        ParseError::new(self.what, self.src, reason)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<A::V, ParseError> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            let t = self.term()?;
            self.alg.neg(&t)
        } else {
            self.term()?
        };
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                '-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &self.alg.neg(&t));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<A::V, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.alg.mul(&acc, &f);
                }
                Some(c) if c == '(' || c.is_ascii_alphanumeric() => {
                    let f = self.power()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<A::V, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.number().ok_or_else(|| self.err("expected exponent"))?;
        let mut acc = self.alg.int(1);
        for _ in 0..e {
            acc = self.alg.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Option<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn atom(&mut self) -> Result<A::V, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number().ok_or_else(|| self.err("bad number"))?;
                Ok(self.alg.int(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                self.alg
                    .var(c)
                    .ok_or_else(|| self.err(&format!("unknown symbol `{c}`")))
            }
            _ => Err(self.err("unexpected end of input or character")),
        }
    }
}

fn evaluate<A: Algebra>(alg: A, s: &str, what: &'static str) -> Result<A::V, ParseError> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(ParseError::new(what, s, "empty input"));
    }
    let mut ev = Eval {
        alg,
        chars,
        pos: 0,
        src: s,
        what,
    };
    let v = ev.expr()?;
    if ev.pos != ev.chars.len() {
        return Err(ev.err("trailing input"));
    }
    Ok(v)
}

/// Renders `Σ c_i v^i` from descending `(i, c_i)` pairs, parenthesising
/// compound coefficients.
fn render_sum(terms: &[(usize, String)], var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in terms.iter().enumerate() {
        if k > 0 {
            out.push('+');
        }
        let compound = c.contains('+');
        match *i {
            0 => out.push_str(c),
            _ => {
                if c != "1" {
                    if compound {
                        out.push_str(&format!("({c})"));
                    } else {
                        out.push_str(c);
                    }
                }
                out.push_str(var);
                if *i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    out
}

fn digits(mut a: u32, base: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = a % base;
            a /= base;
            d
        })
        .collect()
}

impl Ring {
    pub fn format_elem(&self, a: Elem) -> String {
        match self.kind() {
            RingKind::Field { p, m } => {
                let ds = digits(a, p, m);
                let terms: Vec<_> = (0..m as usize)
                    .rev()
                    .filter(|&i| ds[i] != 0)
                    .map(|i| (i, ds[i].to_string()))
                    .collect();
                render_sum(&terms, "z")
            }
            RingKind::Galois { p, m } => {
                let ds = digits(a, p * p, m);
                let terms: Vec<_> = (0..m as usize)
                    .rev()
                    .filter(|&i| ds[i] != 0)
                    .map(|i| (i, ds[i].to_string()))
                    .collect();
                render_sum(&terms, "z")
            }
            RingKind::Truncated { len, .. } => {
                let field = self.residue_field();
                let ds = digits(a, self.q(), len);
                let terms: Vec<_> = (0..len as usize)
                    .rev()
                    .filter(|&i| ds[i] != 0)
                    .map(|i| (i, field.format_elem(ds[i])))
                    .collect();
                render_sum(&terms, "t")
            }
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem, ParseError> {
        evaluate(RingAlg(self), s, "ring element")
    }
}

impl FieldPoly {
    /// Text in the variable `x`, e.g. `x^2+x+1`.
    pub fn display(&self, field: &Ring) -> String {
        let terms: Vec<_> = (0..self.coeffs().len())
            .rev()
            .filter(|&i| self.coeff(i) != 0)
            .map(|i| (i, field.format_elem(self.coeff(i))))
            .collect();
        render_sum(&terms, "x")
    }

    pub fn parse(field: &Ring, s: &str) -> Result<FieldPoly, ParseError> {
        evaluate(PolyAlg(field), s, "polynomial over a field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_grammar_round_trips() {
        for s in ["F4", "F2", "Z/9", "Z/4", "GR(9,2)", "F3[t]/t^2", "F4[t]/t^3"] {
            let r: Ring = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("Z/3".parse::<Ring>().unwrap().to_string(), "F3");
        assert!("F6".parse::<Ring>().is_err());
        assert!("Z/8".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
    }

    #[test]
    fn element_text_round_trips() {
        for s in ["F4", "Z/9", "GR(4,2)", "F3[t]/t^2", "F4[t]/t^2", "F9", "F2[t]/t^3"] {
            let r: Ring = s.parse().unwrap();
            for a in r.elements() {
                let txt = r.format_elem(a);
                assert_eq!(r.parse_elem(&txt).unwrap(), a, "{s}: {txt}");
            }
        }
        let r: Ring = "F2[t]/t^2".parse().unwrap();
        assert_eq!(r.format_elem(3), "t+1");
        assert_eq!(r.parse_elem("1+t").unwrap(), 3);
        let z9: Ring = "Z/9".parse().unwrap();
        assert_eq!(z9.parse_elem("-1").unwrap(), 8);
    }

    #[test]
    fn polynomial_text() {
        let f4: Ring = "F4".parse().unwrap();
        let p = FieldPoly::parse(&f4, "x^2+(z+1)x+z").unwrap();
        assert_eq!(p.display(&f4), "x^2+(z+1)x+z");
        let f2: Ring = "F2".parse().unwrap();
        assert_eq!(FieldPoly::parse(&f2, "x^2+x+1").unwrap().coeffs(), &[1, 1, 1]);
    }
}
