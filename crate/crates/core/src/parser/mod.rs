//! Text input: polynomials and JSON task documents.

mod documents;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{Polynomial, Rational, Ring};

pub use documents::{
    parse_divisor, parse_divisor_value, parse_resolution_data, parse_resolution_value,
    parse_task, DivisorDocument, TaskDocument, TaskKind,
};

/// Byte range `[start, end)` into the parsed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end: end.max(start) }
    }

    pub fn point(at: usize) -> Self {
        SourceSpan { start: at, end: at }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: String,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>, expected: impl Into<String>) -> Self {
        ParseError { span, message: message.into(), expected: expected.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}: {}", self.span.start, self.span.end, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                    let mut end = i + 1;
                    while end < bytes.len() && bytes[end].is_ascii_digit() {
                        end += 1;
                    }
                    return Err(ParseError::new(
                        SourceSpan::new(start, end),
                        "decimal literals are not accepted",
                        "an exact rational `p/q`",
                    ));
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((Tok::Int(n), SourceSpan::new(start, i)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), SourceSpan::new(start, i)));
                continue;
            }
            _ => {}
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(
                    SourceSpan::new(i, i + ch.len_utf8()),
                    format!("unexpected character `{ch}`"),
                    "a number, variable, operator or parenthesis",
                ));
            }
        };
        out.push((tok, SourceSpan::new(i, i + 1)));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    ring: &'a Arc<Ring>,
    len: usize,
}

const FACTOR_START: &str = "a number, variable or `(`";

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn span_here(&self) -> SourceSpan {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(SourceSpan::point(self.len))
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.span_here(), format!("unexpected {}", t.describe()), expected),
            None => ParseError::new(self.span_here(), "unexpected end of input", expected),
        }
    }

    // expr := ('+'|'-')? term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*'? factor)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := rational | var ('^' nat)? | '(' expr ')' ('^' nat)?
    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let (tok, span) = self.bump();
                let Tok::Int(n) = tok else { unreachable!() };
                let mut q = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.peek() {
                        Some(Tok::Int(_)) => {
                            let (Tok::Int(d), dspan) = self.bump() else { unreachable!() };
                            if d.is_zero() {
                                return Err(ParseError::new(
                                    SourceSpan::new(span.start, dspan.end),
                                    "malformed rational: zero denominator",
                                    "a positive integer denominator",
                                ));
                            }
                            q /= Rational::from_integer(d);
                        }
                        _ => {
                            return Err(self.unexpected("a positive integer denominator"));
                        }
                    }
                }
                Ok(Polynomial::constant(self.ring, q))
            }
            Some(Tok::Ident(_)) => {
                let (Tok::Ident(name), span) = self.bump() else { unreachable!() };
                let index = self.ring.index_of(&name).ok_or_else(|| {
                    ParseError::new(
                        span,
                        format!("unknown variable `{name}`"),
                        format!("one of {}", self.ring.vars().join(", ")),
                    )
                })?;
                let base = Polynomial::var(self.ring, index);
                self.maybe_power(base)
            }
            Some(Tok::LParen) => {
                let (_, open) = self.bump();
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                    }
                    None => {
                        return Err(ParseError::new(
                            SourceSpan::new(open.start, self.len),
                            "unbalanced parentheses: missing `)`",
                            "`)`",
                        ))
                    }
                    _ => return Err(self.unexpected("`)`, `+`, `-` or a factor")),
                }
                self.maybe_power(inner)
            }
            _ => Err(self.unexpected(FACTOR_START)),
        }
    }

    fn maybe_power(&mut self, base: Polynomial) -> Result<Polynomial, ParseError> {
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let (Tok::Int(e), span) = self.bump() else { unreachable!() };
                    let e = e.to_u32().filter(|&e| e <= 10_000).ok_or_else(|| {
                        ParseError::new(span, "exponent too large", "an exponent at most 10000")
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(self.unexpected("a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(SourceSpan::point(0), "empty input", "a polynomial"));
    }
    let mut p = Parser { toks, pos: 0, ring, len: text.len() };
    let poly = p.expr()?;
    match p.peek() {
        None => Ok(poly),
        Some(Tok::RParen) => Err(ParseError::new(
            p.span_here(),
            "unbalanced parentheses: unexpected `)`",
            "`+`, `-` or end of input",
        )),
        Some(_) => Err(p.unexpected("`+`, `-` or end of input")),
    }
}

/// Parses a rational literal such as `9/10`, `-3` or `2`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let ring = Ring::new(&["x"]).expect("valid");
    let toks = lex(text)?;
    let only_numeric = toks
        .iter()
        .all(|(t, _)| matches!(t, Tok::Int(_) | Tok::Slash | Tok::Minus | Tok::Plus));
    if toks.is_empty() || !only_numeric {
        return Err(ParseError::new(
            SourceSpan::new(0, text.len()),
            format!("`{text}` is not a rational number"),
            "a rational `p/q` or integer",
        ));
    }
    let p = parse_polynomial(text, &ring)?;
    p.constant_value().ok_or_else(|| {
        ParseError::new(SourceSpan::new(0, text.len()), "not a rational", "a rational `p/q`")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn xy() -> Arc<Ring> {
        Ring::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn basic_polynomials() {
        let r = xy();
        assert_eq!(parse_polynomial("x^2 + y^3", &r).unwrap().to_string(), "y^3 + x^2");
        let p = parse_polynomial("y^4 - 5/2 x^2 y", &r).unwrap();
        assert_eq!(p.to_string(), "y^4 - 5/2*x^2*y");
        assert_eq!(parse_polynomial("-(x - y)^2", &r).unwrap().to_string(), "-x^2 + 2*x*y - y^2");
        assert_eq!(parse_polynomial("2x y", &r).unwrap().to_string(), "2*x*y");
        assert_eq!(parse_polynomial("x*y*3/4", &r).unwrap().to_string(), "3/4*x*y");
    }

    #[test]
    fn errors_have_spans() {
        let r = xy();
        let e = parse_polynomial("x^2 + z", &r).unwrap_err();
        assert_eq!(e.span, SourceSpan::new(6, 7));
        assert!(e.message.contains("unknown variable `z`"));

        let e = parse_polynomial("1/0 x", &r).unwrap_err();
        assert!(e.message.contains("zero denominator"));
        assert_eq!(e.span, SourceSpan::new(0, 3));

        let e = parse_polynomial("(x + y", &r).unwrap_err();
        assert!(e.message.contains("unbalanced"));
        let e = parse_polynomial("x + y)", &r).unwrap_err();
        assert!(e.message.contains("unbalanced"));

        let e = parse_polynomial("   ", &r).unwrap_err();
        assert_eq!(e.message, "empty input");

        let e = parse_polynomial("0.5 x", &r).unwrap_err();
        assert!(e.message.contains("decimal"));

        assert!(parse_polynomial("x +", &r).is_err());
        assert!(parse_polynomial("x^y", &r).is_err());
        assert!(parse_polynomial("x $ y", &r).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("9/10").unwrap(), rat(9, 10));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.9").is_err());
    }
}
