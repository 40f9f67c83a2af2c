//! Canonical text form of labels.
//!
//! Classical elements print as a Laurent polynomial, or as
//! `(num)/(den)` when the denominator is nontrivial:
//!
//! ```text
//! element := poly | "(" poly ")" "/" "(" poly ")"
//! poly    := ["-"] term (("+" | "-") term)*
//! term    := coef ["*" mono] | mono
//! coef    := uint ["/" uint]
//! mono    := factor ("*" factor)*
//! factor  := name ["^" ["-"] uint]
//! ```
//!
//! Terms appear in descending graded-lex order, factors in generator order.
//! Tropical elements print as `trop{[1,0],[0,1]}/trop{[0,0]}`, vectors in
//! descending graded-lex order. Whitespace between tokens is ignored when
//! parsing; printing is bit-exact.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{
    AlgebraError, Backend, FieldElement, LaurentPolynomial, Monomial, Rational, SemifieldElement,
    TropicalElement, TropicalTermSet,
};

/// Position-tagged parse failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Generator names `prefix0, prefix1, ...`.
pub fn indexed_names(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|i| format!("{prefix}{i}")).collect()
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.denom().is_one() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

fn write_monomial(out: &mut String, m: &Monomial, names: &[String]) {
    let mut first = true;
    for (i, &e) in m.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&names[i]);
        if e != 1 {
            write!(out, "^{e}").unwrap();
        }
    }
}

pub fn serialize_laurent(p: &LaurentPolynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_desc().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            write_rational(&mut out, &abs);
        } else {
            if !abs.is_one() {
                write_rational(&mut out, &abs);
                out.push('*');
            }
            write_monomial(&mut out, m, names);
        }
    }
    out
}

fn serialize_term_set(s: &TropicalTermSet) -> String {
    let mut out = String::from("trop{");
    for (k, m) in s.terms_desc().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push('[');
        for (i, e) in m.entries().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{e}").unwrap();
        }
        out.push(']');
    }
    out.push('}');
    out
}

pub fn serialize(x: &SemifieldElement, names: &[String]) -> String {
    match x {
        SemifieldElement::Classical(f) => {
            if f.den().is_one() {
                serialize_laurent(f.num(), names)
            } else {
                format!(
                    "({})/({})",
                    serialize_laurent(f.num(), names),
                    serialize_laurent(f.den(), names)
                )
            }
        }
        SemifieldElement::Tropical(t) => {
            format!("{}/{}", serialize_term_set(t.num()), serialize_term_set(t.den()))
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if digits == 0 {
            return self.err("expected an unsigned integer");
        }
        self.pos += digits;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let at = self.pos;
        let v = self.uint()?;
        let v: i64 = i64::try_from(v).map_err(|_| ParseError {
            offset: at,
            message: "integer out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let len = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += len;
        Some(&rest[..len])
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_factor(cur: &mut Cursor<'_>, names: &[String], exps: &mut [i32]) -> Result<(), ParseError> {
    let at = cur.pos;
    let Some(name) = cur.ident() else {
        return cur.err("expected a generator name");
    };
    let Some(index) = names.iter().position(|n| n == name) else {
        return Err(ParseError {
            offset: at,
            message: format!("unknown generator `{name}`"),
        });
    };
    let mut e: i64 = 1;
    if cur.eat('^') {
        e = cur.int()?;
    }
    let total = exps[index] as i64 + e;
    exps[index] = i32::try_from(total).map_err(|_| ParseError {
        offset: at,
        message: "exponent out of range".into(),
    })?;
    Ok(())
}

fn parse_term(cur: &mut Cursor<'_>, names: &[String]) -> Result<(Monomial, Rational), ParseError> {
    let mut exps = vec![0i32; names.len()];
    let coef = match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let n = cur.uint()?;
            let d = if cur.eat('/') {
                let at = cur.pos;
                let d = cur.uint()?;
                if d.is_zero() {
                    return Err(ParseError {
                        offset: at,
                        message: "zero denominator".into(),
                    });
                }
                d
            } else {
                BigInt::one()
            };
            let coef = Rational::new(n, d);
            if !cur.eat('*') {
                return Ok((Monomial::new(exps), coef));
            }
            coef
        }
        Some(_) => Rational::one(),
        None => return cur.err("expected a term"),
    };
    parse_factor(cur, names, &mut exps)?;
    while cur.eat('*') {
        parse_factor(cur, names, &mut exps)?;
    }
    Ok((Monomial::new(exps), coef))
}

fn parse_poly(cur: &mut Cursor<'_>, names: &[String]) -> Result<LaurentPolynomial, ParseError> {
    let mut terms = Vec::new();
    let mut neg = cur.eat('-');
    loop {
        let (m, c) = parse_term(cur, names)?;
        terms.push((m, if neg { -c } else { c }));
        if cur.eat('+') {
            neg = false;
        } else if cur.eat('-') {
            neg = true;
        } else {
            break;
        }
    }
    Ok(LaurentPolynomial::from_terms(names.len(), terms))
}

fn parse_classical(cur: &mut Cursor<'_>, names: &[String]) -> Result<FieldElement, ParseError> {
    if cur.eat('(') {
        let num = parse_poly(cur, names)?;
        cur.expect(')')?;
        cur.expect('/')?;
        cur.expect('(')?;
        let at = cur.pos;
        let den = parse_poly(cur, names)?;
        cur.expect(')')?;
        FieldElement::from_parts(num, den).map_err(|e| ParseError {
            offset: at,
            message: e.to_string(),
        })
    } else {
        Ok(FieldElement::from_laurent(parse_poly(cur, names)?))
    }
}

fn parse_vector(cur: &mut Cursor<'_>, nvars: usize) -> Result<Monomial, ParseError> {
    let at = cur.pos;
    cur.expect('[')?;
    let mut v = Vec::with_capacity(nvars);
    if !cur.eat(']') {
        loop {
            let at = cur.pos;
            let e = cur.int()?;
            v.push(i32::try_from(e).map_err(|_| ParseError {
                offset: at,
                message: "exponent out of range".into(),
            })?);
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    if v.len() != nvars {
        return Err(ParseError {
            offset: at,
            message: format!("expected {nvars} entries, found {}", v.len()),
        });
    }
    Ok(Monomial::new(v))
}

fn parse_term_set(cur: &mut Cursor<'_>, nvars: usize) -> Result<TropicalTermSet, ParseError> {
    cur.expect_str("trop")?;
    cur.expect('{')?;
    let mut terms = vec![parse_vector(cur, nvars)?];
    while cur.eat(',') {
        terms.push(parse_vector(cur, nvars)?);
    }
    cur.expect('}')?;
    Ok(TropicalTermSet::new(nvars, terms).expect("nonempty, arity checked"))
}

fn parse_tropical(cur: &mut Cursor<'_>, nvars: usize) -> Result<TropicalElement, ParseError> {
    let num = parse_term_set(cur, nvars)?;
    cur.expect('/')?;
    let den = parse_term_set(cur, nvars)?;
    Ok(TropicalElement::from_parts(num, den).expect("matching arity"))
}

/// Parses the canonical text form; `names.len()` fixes the generator count.
pub fn parse(text: &str, backend: Backend, names: &[String]) -> Result<SemifieldElement, ParseError> {
    let mut cur = Cursor::new(text);
    let x = match backend {
        Backend::Classical => SemifieldElement::Classical(parse_classical(&mut cur, names)?),
        Backend::Tropical => SemifieldElement::Tropical(parse_tropical(&mut cur, names.len())?),
    };
    if !cur.at_end() {
        return cur.err("trailing input");
    }
    Ok(x)
}

impl From<ParseError> for AlgebraError {
    fn from(e: ParseError) -> Self {
        AlgebraError::Parse(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Semifield;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn prints_sum_of_products() {
        let n = names(&["a", "b", "d", "e"]);
        let g = |i| SemifieldElement::generator(Backend::Classical, 4, i);
        let x = g(0).otimes(&g(2)).unwrap().oplus(&g(1).otimes(&g(3)).unwrap()).unwrap();
        assert_eq!(serialize(&x, &n), "a*d + b*e");
    }

    #[test]
    fn parses_rational_constant() {
        let x = parse("3/2", Backend::Classical, &[]).unwrap();
        let f = x.as_classical().unwrap();
        assert_eq!(
            f.num().as_monomial().unwrap().1,
            &Rational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn dangling_operator_reports_offset() {
        let n = names(&["a"]);
        let err = parse("a + ", Backend::Classical, &n).unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn fraction_and_negative_powers_round_trip() {
        let n = names(&["a", "b", "c"]);
        for text in [
            "(a^2 + 2*a*b + b^2)/(b^2 + a)",
            "a*b*c^-1 + c",
            "7 - 1/3*a^-2*b",
            "0",
        ] {
            let x = parse(text, Backend::Classical, &n).unwrap();
            assert_eq!(serialize(&x, &n), text);
        }
    }

    #[test]
    fn tropical_round_trip() {
        let n = names(&["a", "b"]);
        let text = "trop{[1,0],[0,1]}/trop{[0,0]}";
        let x = parse(text, Backend::Tropical, &n).unwrap();
        assert_eq!(serialize(&x, &n), text);
        let messy = parse("trop{ [0,1], [1,0], [0,1] } / trop{[0,0]}", Backend::Tropical, &n).unwrap();
        assert_eq!(messy, x);
    }

    #[test]
    fn rejects_unknown_names_and_zero_denominators() {
        let n = names(&["a"]);
        assert!(parse("a*z", Backend::Classical, &n).is_err());
        assert!(parse("1/0", Backend::Classical, &n).is_err());
        assert!(parse("(a)/(0)", Backend::Classical, &n).is_err());
    }
}
