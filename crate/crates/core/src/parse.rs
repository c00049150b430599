//! Text frontend for polynomials, 1-forms and divisors.
//!
//! The grammar is recursive descent with the usual precedence
//! (`^` binds tighter than multiplication, multiplication tighter than unary
//! minus, unary minus tighter than `+`/`-`); see `docs/grammar.md` for the
//! normative EBNF. `dx` and `dy` are single tokens, never products.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::poly::{Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(char),
    EmptyForm,
    ZeroCoefficient,
}

/// A parse failure together with the byte offset in the input where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

impl ParseError {
    fn syntax(offset: usize, msg: impl Into<String>) -> Self {
        ParseError { kind: ParseErrorKind::Syntax(msg.into()), offset }
    }

    /// Shifts the offset, used when a sub-expression was cut out of a larger text.
    pub fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at byte {}: {msg}", self.offset),
            ParseErrorKind::UnknownVariable(c) => {
                write!(f, "unknown variable '{c}' at byte {}", self.offset)
            }
            ParseErrorKind::EmptyForm => write!(f, "1-form has both components zero"),
            ParseErrorKind::ZeroCoefficient => {
                write!(f, "zero divisor coefficient at byte {}", self.offset)
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// A parsed 1-form `P dx + Q dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormExpr {
    pub dx_part: Poly,
    pub dy_part: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(u8),
    Dx,
    Dy,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Poly,
    Form,
    /// Univariate in `t`, stored in the `x` slot.
    Series,
}

fn tokenize(text: &str, mode: Mode) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'd' if mode == Mode::Form && matches!(bytes.get(i + 1), Some(b'x' | b'y')) => {
                i += 1;
                if bytes[i] == b'x' {
                    Tok::Dx
                } else {
                    Tok::Dy
                }
            }
            b'x' | b'y' if mode != Mode::Series => Tok::Var(c),
            b't' if mode == Mode::Series => Tok::Var(b'x'),
            c if c.is_ascii_alphabetic() => {
                return Err(ParseError { kind: ParseErrorKind::UnknownVariable(c as char), offset: start })
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(start, alloc::format!("unexpected character '{ch}'")));
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Intermediate value: either a function or a 1-form.
#[derive(Clone)]
enum Val {
    Scalar(Poly),
    Form(Poly, Poly),
}

impl Val {
    fn combine(self, rhs: Val, negate: bool, at: usize) -> Result<Val, ParseError> {
        let sign = |p: Poly| if negate { -p } else { p };
        Ok(match (self, rhs) {
            (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(&a + &sign(b)),
            (Val::Form(a, b), Val::Form(c, d)) => Val::Form(&a + &sign(c), &b + &sign(d)),
            (Val::Scalar(z), Val::Form(c, d)) if z.is_zero() => Val::Form(sign(c), sign(d)),
            (Val::Form(a, b), Val::Scalar(z)) if z.is_zero() => Val::Form(a, b),
            _ => return Err(ParseError::syntax(at, "cannot add a function to a 1-form")),
        })
    }

    fn times(self, rhs: Val, at: usize) -> Result<Val, ParseError> {
        Ok(match (self, rhs) {
            (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(&a * &b),
            (Val::Scalar(a), Val::Form(c, d)) | (Val::Form(c, d), Val::Scalar(a)) => {
                Val::Form(&a * &c, &a * &d)
            }
            (Val::Form(..), Val::Form(..)) => {
                return Err(ParseError::syntax(at, "product of two 1-forms"))
            }
        })
    }

    fn negate(self) -> Val {
        match self {
            Val::Scalar(a) => Val::Scalar(-a),
            Val::Form(a, b) => Val::Form(-a, -b),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.signed()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let (_, at) = self.bump();
            let rhs = self.signed()?;
            acc = acc.combine(rhs, negate, at)?;
        }
    }

    fn signed(&mut self) -> Result<Val, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.signed()?.negate())
            }
            Tok::Plus => {
                self.bump();
                self.signed()
            }
            _ => self.product(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Var(_) | Tok::Dx | Tok::Dy | Tok::LParen)
    }

    fn product(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.power()?;
        loop {
            let at = self.offset();
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_atom() {
                return Ok(acc);
            }
            let rhs = self.power()?;
            acc = acc.times(rhs, at)?;
        }
    }

    fn power(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, caret) = self.bump();
        let (tok, at) = self.bump();
        let e = match tok {
            Tok::Num(n) => n
                .to_u32()
                .ok_or_else(|| ParseError::syntax(at, "exponent too large"))?,
            _ => return Err(ParseError::syntax(at, "exponent must be a bare natural number")),
        };
        match base {
            Val::Scalar(p) => Ok(Val::Scalar(p.pow(e))),
            Val::Form(..) => Err(ParseError::syntax(caret, "cannot raise a 1-form to a power")),
        }
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dat) = self.bump();
                    match den {
                        Tok::Num(d) if d.is_zero() => Err(ParseError::syntax(dat, "zero denominator")),
                        Tok::Num(d) => Ok(Val::Scalar(Poly::constant(Rat::new(n, d)))),
                        _ => Err(ParseError::syntax(dat, "expected a natural denominator")),
                    }
                } else {
                    Ok(Val::Scalar(Poly::constant(Rat::from_integer(n))))
                }
            }
            Tok::Var(b'x') => Ok(Val::Scalar(Poly::x())),
            Tok::Var(_) => Ok(Val::Scalar(Poly::y())),
            Tok::Dx if self.mode == Mode::Form => Ok(Val::Form(Poly::one(), Poly::zero())),
            Tok::Dy if self.mode == Mode::Form => Ok(Val::Form(Poly::zero(), Poly::one())),
            Tok::LParen => {
                let inner = self.sum()?;
                let (close, cat) = self.bump();
                if close != Tok::RParen {
                    return Err(ParseError::syntax(cat, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(ParseError::syntax(at, "unexpected end of input")),
            Tok::Slash => Err(ParseError::syntax(at, "'/' is only allowed inside a rational literal")),
            _ => Err(ParseError::syntax(at, "expected a number, variable or '('")),
        }
    }
}

fn parse_val(text: &str, mode: Mode) -> Result<Val, ParseError> {
    let toks = tokenize(text, mode)?;
    let mut p = Parser { toks, pos: 0, mode };
    let v = p.sum()?;
    if *p.peek() != Tok::End {
        let at = p.offset();
        let msg = if *p.peek() == Tok::Slash {
            "'/' is only allowed inside a rational literal"
        } else {
            "unexpected trailing input"
        };
        return Err(ParseError::syntax(at, msg));
    }
    Ok(v)
}

/// Parses a polynomial in `x` and `y`.
pub fn parse_polynomial(text: &str) -> Result<Poly, ParseError> {
    match parse_val(text, Mode::Poly)? {
        Val::Scalar(p) => Ok(p),
        Val::Form(..) => unreachable!("differentials are not tokenized in polynomial mode"),
    }
}

/// Parses a polynomial in the single variable `t`; exponents of `t` land in the `x` slot.
pub fn parse_univariate(text: &str) -> Result<Poly, ParseError> {
    match parse_val(text, Mode::Series)? {
        Val::Scalar(p) => Ok(p),
        Val::Form(..) => unreachable!("differentials are not tokenized in series mode"),
    }
}

/// Parses `P dx + Q dy`; either summand may be omitted.
pub fn parse_one_form(text: &str) -> Result<FormExpr, ParseError> {
    let (dx_part, dy_part) = match parse_val(text, Mode::Form)? {
        Val::Form(p, q) => (p, q),
        Val::Scalar(s) if s.is_zero() => (Poly::zero(), Poly::zero()),
        Val::Scalar(_) => {
            return Err(ParseError::syntax(0, "expression has no dx or dy part"));
        }
    };
    if dx_part.is_zero() && dy_part.is_zero() {
        return Err(ParseError { kind: ParseErrorKind::EmptyForm, offset: 0 });
    }
    Ok(FormExpr { dx_part, dy_part })
}

/// One summand `a*[f]` of a divisor; `offset` points at the first byte of the curve body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTerm {
    pub coefficient: i64,
    pub curve: String,
    pub offset: usize,
}

/// Parses `a1*[f1] + a2*[f2] - ...`; `0` denotes the empty divisor.
pub fn parse_divisor(text: &str) -> Result<Vec<DivisorTerm>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if text[i..].trim_end() == "0" {
        return Ok(Vec::new());
    }
    if i == bytes.len() {
        return Err(ParseError::syntax(i, "empty divisor text (write 0 for the empty divisor)"));
    }
    let mut terms = Vec::new();
    let mut first = true;
    while i < bytes.len() {
        let mut sign = 1i64;
        let mut seen_sign = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            seen_sign = true;
            i += 1;
            skip_ws(&mut i);
        }
        if !first && !seen_sign {
            return Err(ParseError::syntax(i, "expected '+' or '-' between divisor terms"));
        }
        first = false;
        let coeff_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coefficient = if i > coeff_start {
            let c: i64 = text[coeff_start..i]
                .parse()
                .map_err(|_| ParseError::syntax(coeff_start, "coefficient out of range"))?;
            if c == 0 {
                return Err(ParseError { kind: ParseErrorKind::ZeroCoefficient, offset: coeff_start });
            }
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                skip_ws(&mut i);
            }
            c
        } else {
            1
        };
        if i >= bytes.len() || bytes[i] != b'[' {
            return Err(ParseError::syntax(i, "expected '[' to open a curve"));
        }
        let body_start = i + 1;
        let close = text[body_start..]
            .find(|c| c == ']' || c == '[')
            .map(|k| body_start + k)
            .filter(|&k| bytes[k] == b']')
            .ok_or_else(|| ParseError::syntax(i, "unterminated '['"))?;
        let raw = &text[body_start..close];
        let lead = raw.len() - raw.trim_start().len();
        terms.push(DivisorTerm {
            coefficient: sign * coefficient,
            curve: raw.trim().to_string(),
            offset: body_start + lead,
        });
        i = close + 1;
        skip_ws(&mut i);
    }
    Ok(terms)
}

/// Parses every curve of a divisor, reporting offsets relative to the whole divisor text.
pub fn parse_divisor_curves(text: &str) -> Result<Vec<(i64, Poly)>, ParseError> {
    parse_divisor(text)?
        .into_iter()
        .map(|t| {
            parse_polynomial(&t.curve)
                .map(|p| (t.coefficient, p))
                .map_err(|e| e.shifted(t.offset))
        })
        .collect()
}
