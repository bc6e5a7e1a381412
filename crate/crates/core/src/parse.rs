//! Text syntax for polynomials, multivector fields and structure constants.
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := factor ('*' factor)*
//! factor     := primary ('^' (posint | basis))*
//! primary    := rational | var | basis | '(' expression ')'
//! rational   := integer ['/' integer]
//! var        := 'x' posint          (coordinate function x_K)
//! basis      := 'd' posint          (coordinate field d_K)
//! ```
//!
//! `^` followed by an integer is a power (scalars only); `^` followed by a
//! basis symbol is the wedge product. `*` multiplies, which is the wedge
//! product whenever a field is involved. Example:
//! `1*d1^d2^d3 + (x1*x2)*d2^d3^d4`.
//!
//! Structure constants are entries `c[k; i1,...,in] = rational`, separated
//! by whitespace or newlines; `#` starts a comment.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::filippov::StructureConstants;
use crate::multivector::Multivector;
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Basis(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Var(i) => format!("x{i}"),
            Tok::Basis(i) => format!("d{i}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            col += 1;
            continue;
        }
        let digits_from = |start: usize| {
            let mut end = start;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            end
        };
        if c.is_ascii_digit() {
            let end = digits_from(i);
            let s: String = chars[i..end].iter().collect();
            out.push((Tok::Int(s.parse().expect("ascii digits")), pos));
            col += end - i;
            i = end;
            continue;
        }
        if c == 'x' || c == 'd' {
            let end = digits_from(i + 1);
            if end == i + 1 {
                return Err(err(pos, format!("expected an index after '{c}'")));
            }
            let s: String = chars[i + 1..end].iter().collect();
            let index: usize = s
                .parse()
                .map_err(|_| err(pos, format!("index {s} is too large")))?;
            if index == 0 {
                return Err(err(pos, "coordinate indices start at 1"));
            }
            out.push((
                if c == 'x' {
                    Tok::Var(index)
                } else {
                    Tok::Basis(index)
                },
                pos,
            ));
            col += end - i;
            i = end;
            continue;
        }
        return Err(err(pos, format!("unexpected character '{c}'")));
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

/// A possibly inhomogeneous value during parsing, keyed by degree.
#[derive(Clone, Debug)]
struct Mixed {
    dim: usize,
    parts: BTreeMap<usize, Multivector>,
}

impl Mixed {
    fn from_mv(mv: Multivector) -> Self {
        let dim = mv.dim();
        let mut parts = BTreeMap::new();
        if !mv.is_zero() {
            parts.insert(mv.degree(), mv);
        }
        Mixed { dim, parts }
    }

    fn scalar(dim: usize, c: Rational) -> Self {
        Self::from_mv(Multivector::scalar(Polynomial::constant(dim, c)))
    }

    fn add(mut self, other: Mixed) -> Self {
        for (deg, mv) in other.parts {
            let sum = match self.parts.remove(&deg) {
                Some(existing) => existing
                    .checked_add(&mv)
                    .expect("same degree and dimension"),
                None => mv,
            };
            if !sum.is_zero() {
                self.parts.insert(deg, sum);
            }
        }
        self
    }

    fn neg(self) -> Self {
        Mixed {
            dim: self.dim,
            parts: self
                .parts
                .into_iter()
                .map(|(d, mv)| (d, mv.neg()))
                .collect(),
        }
    }

    fn wedge(&self, other: &Mixed) -> Self {
        let mut out = Mixed {
            dim: self.dim,
            parts: BTreeMap::new(),
        };
        for a in self.parts.values() {
            for b in other.parts.values() {
                out = out.add(Mixed::from_mv(a.wedge(b).expect("same dimension")));
            }
        }
        out
    }

    /// `Some(p)` when the value is a function (degree 0 or zero).
    fn as_scalar(&self) -> Option<Polynomial> {
        match self.parts.len() {
            0 => Some(Polynomial::zero(self.dim)),
            1 => self.parts.get(&0).map(|mv| mv.component(&[])),
            _ => None,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    dim: usize,
}

impl Parser {
    fn new(text: &str, dim: usize) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            dim,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(err(
                self.pos(),
                format!("expected {what}, found {}", self.peek().describe()),
            ))
        }
    }

    fn check_index(&self, index: usize, pos: Pos) -> Result<()> {
        if index > self.dim {
            return Err(err(
                pos,
                format!("index {index} out of range for dimension {}", self.dim),
            ));
        }
        Ok(())
    }

    fn expression(&mut self) -> Result<Mixed> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                self.term()?.neg()
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Mixed> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.wedge(&rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Mixed> {
        let base_pos = self.pos();
        let mut acc = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let (tok, pos) = self.bump();
            match tok {
                Tok::Int(e) => {
                    let Some(p) = acc.as_scalar() else {
                        return Err(err(base_pos, "only functions can be raised to a power"));
                    };
                    let exp: u32 = e
                        .try_into()
                        .map_err(|_| err(pos, "exponent is too large"))?;
                    acc = Mixed::from_mv(Multivector::scalar(p.pow(exp)));
                }
                Tok::Basis(i) => {
                    self.check_index(i, pos)?;
                    let field = Multivector::basis(self.dim, &[i]).expect("checked index");
                    acc = acc.wedge(&Mixed::from_mv(field));
                }
                other => {
                    return Err(err(
                        pos,
                        format!(
                            "expected an exponent or a basis field after '^', found {}",
                            other.describe()
                        ),
                    ))
                }
            }
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Mixed> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dpos) = self.bump();
                    let Tok::Int(d) = den else {
                        return Err(err(
                            dpos,
                            format!("expected a denominator, found {}", den.describe()),
                        ));
                    };
                    if d.is_zero() {
                        return Err(err(dpos, "zero denominator"));
                    }
                    Ok(Mixed::scalar(self.dim, BigRational::new(n, d)))
                } else {
                    Ok(Mixed::scalar(self.dim, BigRational::from_integer(n)))
                }
            }
            Tok::Var(i) => {
                self.check_index(i, pos)?;
                let p = Polynomial::var(self.dim, i).expect("checked index");
                Ok(Mixed::from_mv(Multivector::scalar(p)))
            }
            Tok::Basis(i) => {
                self.check_index(i, pos)?;
                Ok(Mixed::from_mv(
                    Multivector::basis(self.dim, &[i]).expect("checked index"),
                ))
            }
            Tok::LParen => {
                let inner = self.expression()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            other => Err(err(
                pos,
                format!(
                    "expected a number, xK, dK or '(', found {}",
                    other.describe()
                ),
            )),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => Err(err(self.pos(), format!("unexpected {}", t.describe()))),
        }
    }
}

fn homogeneous(value: Mixed, expected_degree: Option<usize>, pos: Pos) -> Result<Multivector> {
    let dim = value.dim;
    match value.parts.len() {
        0 => match expected_degree {
            Some(k) => Ok(Multivector::zero(dim, k)),
            None => Ok(Multivector::zero(dim, 0)),
        },
        1 => {
            let mv = value.parts.into_values().next().expect("one part");
            match expected_degree {
                Some(k) if k != mv.degree() => Err(err(
                    pos,
                    format!(
                        "expected a field of degree {k}, found degree {}",
                        mv.degree()
                    ),
                )),
                _ => Ok(mv),
            }
        }
        _ => {
            let degrees: Vec<String> = value.parts.keys().map(ToString::to_string).collect();
            Err(err(
                pos,
                format!("expression mixes degrees {}", degrees.join(", ")),
            ))
        }
    }
}

/// Parses a homogeneous multivector field on `dim` coordinates. A zero
/// expression takes `expected_degree` (or 0).
pub fn parse_multivector(
    text: &str,
    dim: usize,
    expected_degree: Option<usize>,
) -> Result<Multivector> {
    let mut p = Parser::new(text, dim)?;
    let start = p.pos();
    let v = p.expression()?;
    p.finish()?;
    homogeneous(v, expected_degree, start)
}

pub fn parse_polynomial(text: &str, dim: usize) -> Result<Polynomial> {
    parse_multivector(text, dim, Some(0))?.as_polynomial()
}

/// Comma-separated fields, each homogeneous of its own degree.
pub fn parse_multivector_list(
    text: &str,
    dim: usize,
    expected_degree: Option<usize>,
) -> Result<Vec<Multivector>> {
    let mut p = Parser::new(text, dim)?;
    let mut out = Vec::new();
    if *p.peek() == Tok::Eof {
        return Ok(out);
    }
    loop {
        let start = p.pos();
        let v = p.expression()?;
        out.push(homogeneous(v, expected_degree, start)?);
        match p.peek() {
            Tok::Comma => {
                p.bump();
            }
            _ => break,
        }
    }
    p.finish()?;
    Ok(out)
}

/// Comma-separated functions, e.g. `x1*x4 + x2*x5, x3`.
pub fn parse_polynomial_list(text: &str, dim: usize) -> Result<Vec<Polynomial>> {
    parse_multivector_list(text, dim, Some(0))?
        .into_iter()
        .map(|mv| mv.as_polynomial())
        .collect()
}

/// Parses `c[k; i1,...,in] = value` entries. The arity is taken from the
/// first entry unless given; all entries must agree.
pub fn parse_structure_constants(
    text: &str,
    dim: usize,
    arity: Option<usize>,
) -> Result<StructureConstants> {
    let mut entries: Vec<(usize, Vec<usize>, Rational, Pos)> = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut rest = line;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let pos = Pos {
                line: line_no + 1,
                column: offset + 1,
            };
            let end = trimmed
                .find(']')
                .ok_or_else(|| err(pos, "expected an entry of the form c[k; i1,...,in] = value"))?;
            let after = &trimmed[end + 1..];
            let after_trim = after.trim_start();
            let Some(value_text) = after_trim.strip_prefix('=') else {
                return Err(err(pos, "expected '=' after ']'"));
            };
            let value_text = value_text.trim_start();
            let value_len = value_text
                .find(|ch: char| ch.is_whitespace())
                .unwrap_or(value_text.len());
            let (value_str, tail) = value_text.split_at(value_len);
            let head = trimmed[..end].trim();
            let Some(inside) = head
                .strip_prefix('c')
                .map(str::trim_start)
                .and_then(|h| h.strip_prefix('['))
            else {
                return Err(err(pos, "expected 'c[' at the start of an entry"));
            };
            let (k_text, idx_text) = inside
                .split_once(';')
                .ok_or_else(|| err(pos, "expected ';' between the output index and the inputs"))?;
            let parse_index = |s: &str| -> Result<usize> {
                let i: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| err(pos, format!("invalid index '{}'", s.trim())))?;
                if i == 0 || i > dim {
                    return Err(err(
                        pos,
                        format!("index {i} out of range for dimension {dim}"),
                    ));
                }
                Ok(i)
            };
            let k = parse_index(k_text)?;
            let indices = idx_text
                .split(',')
                .map(parse_index)
                .collect::<Result<Vec<_>>>()?;
            let value = parse_rational(value_str)
                .ok_or_else(|| err(pos, format!("invalid rational '{value_str}'")))?;
            entries.push((k, indices, value, pos));
            offset += trimmed.len() - tail.len();
            rest = tail;
        }
    }
    let arity = match (arity, entries.first()) {
        (Some(a), _) => a,
        (None, Some((_, idx, _, _))) => idx.len(),
        (None, None) => {
            return Err(err(
                Pos { line: 1, column: 1 },
                "no entries; the arity of an empty bracket must be given",
            ))
        }
    };
    let mut s = StructureConstants::new(dim, arity)?;
    for (k, indices, value, pos) in entries {
        if indices.len() != arity {
            return Err(err(
                pos,
                format!("entry has {} inputs, expected {arity}", indices.len()),
            ));
        }
        s.add_constant(k, &indices, value)
            .map_err(|e| err(pos, e.to_string()))?;
    }
    Ok(s)
}

/// `-3`, `1/2`, `-4/6` (reduced).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<BigInt>().ok()?,
            d.trim().parse::<BigInt>().ok()?,
        ),
        None => (body.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if n.sign() == num_bigint::Sign::Minus || d.sign() != num_bigint::Sign::Plus {
        return None;
    }
    let r = BigRational::new(n, d);
    Some(if neg { -r } else { r })
}

/// Any of the three input kinds.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Polynomial(Polynomial),
    Multivector(Multivector),
    StructureConstants(StructureConstants),
}

/// Parses text of any kind: structure-constant entries when it starts with
/// `c[`, otherwise a field (a function when of degree 0).
pub fn parse_expression(text: &str, dim: usize) -> Result<Parsed> {
    let t = text.trim_start();
    if t.starts_with('c') && t[1..].trim_start().starts_with('[') {
        return Ok(Parsed::StructureConstants(parse_structure_constants(
            text, dim, None,
        )?));
    }
    let mv = parse_multivector(text, dim, None)?;
    if mv.degree() == 0 {
        Ok(Parsed::Polynomial(mv.as_polynomial()?))
    } else {
        Ok(Parsed::Multivector(mv))
    }
}
