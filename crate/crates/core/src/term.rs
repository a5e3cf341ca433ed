//! Fracterm syntax: the term tree over `0, 1, +, -, *, /`, its three surface
//! formats, and the syntactic taxonomy (flat, simple, safe, simplified, proper).
//!
//! Decimal numerals are kept as atoms. [`expand_numeral`] rewrites one into the
//! bare `{0, 1, +, -}` signature when that is needed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A decimal integer numeral, kept verbatim (`"007"` and `"7"` are distinct
/// numerals with the same value).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Numeral(String);

impl Numeral {
    pub fn new(text: &str) -> Option<Self> {
        let digits = text.strip_prefix('-').unwrap_or(text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Some(Numeral(text.to_owned()))
    }

    pub fn from_int(value: &BigInt) -> Self {
        Numeral(value.to_str_radix(10))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn value(&self) -> BigInt {
        // validated in `new`
        self.0.parse().expect("numeral text is a decimal integer")
    }

    pub fn is_negative(&self) -> bool {
        self.0.starts_with('-')
    }

    /// No redundant leading zeroes and no `-0`.
    pub fn is_canonical(&self) -> bool {
        self.0 == Numeral::from_int(&self.value()).0
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Numeral {
    type Error = String;

    fn try_from(text: String) -> Result<Self, Self::Error> {
        Numeral::new(&text).ok_or_else(|| format!("not a decimal numeral: {text:?}"))
    }
}

impl From<Numeral> for String {
    fn from(n: Numeral) -> String {
        n.0
    }
}

/// Level decoration on a division sign: `/ft` reads the fracsign as a
/// fracterm, `/fv` as a fracvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoration {
    Ft,
    Fv,
}

impl Decoration {
    pub fn suffix(self) -> &'static str {
        match self {
            Decoration::Ft => "ft",
            Decoration::Fv => "fv",
        }
    }

    pub fn level(self) -> Level {
        match self {
            Decoration::Ft => Level::Fracterm,
            Decoration::Fv => Level::Fracvalue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Lit(Numeral),
    Var(String),
    Neg(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Div(Box<Term>, Box<Term>, Option<Decoration>),
}

impl Term {
    pub fn lit(value: impl Into<BigInt>) -> Term {
        Term::Lit(Numeral::from_int(&value.into()))
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_owned())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Term, b: Term) -> Term {
        Term::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Term, b: Term) -> Term {
        Term::Div(Box::new(a), Box::new(b), None)
    }

    pub fn div_decorated(a: Term, b: Term, decoration: Decoration) -> Term {
        Term::Div(Box::new(a), Box::new(b), Some(decoration))
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Lit(_) | Term::Var(_) => vec![],
            Term::Neg(a) => vec![a],
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b, _) => {
                vec![a, b]
            }
        }
    }

    pub(crate) fn children_mut(&mut self) -> Vec<&mut Term> {
        match self {
            Term::Lit(_) | Term::Var(_) => vec![],
            Term::Neg(a) => vec![a],
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b, _) => {
                vec![a, b]
            }
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn contains_division(&self) -> bool {
        matches!(self, Term::Div(..)) || self.children().iter().any(|c| c.contains_division())
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self, Term::Var(_)) && self.children().iter().all(|c| c.is_closed())
    }

    /// The decoration on the root division, if any.
    pub fn decoration(&self) -> Option<Decoration> {
        match self {
            Term::Div(_, _, d) => *d,
            _ => None,
        }
    }

    pub fn erase_decorations(&self) -> Term {
        match self {
            Term::Lit(_) | Term::Var(_) => self.clone(),
            Term::Neg(a) => Term::neg(a.erase_decorations()),
            Term::Add(a, b) => Term::add(a.erase_decorations(), b.erase_decorations()),
            Term::Sub(a, b) => Term::sub(a.erase_decorations(), b.erase_decorations()),
            Term::Mul(a, b) => Term::mul(a.erase_decorations(), b.erase_decorations()),
            Term::Div(a, b, _) => Term::div(a.erase_decorations(), b.erase_decorations()),
        }
    }

    /// Value of a closed division-free term. `None` for open terms or terms
    /// containing division.
    pub fn integer_value(&self) -> Option<BigInt> {
        Some(match self {
            Term::Lit(n) => n.value(),
            Term::Var(_) | Term::Div(..) => return None,
            Term::Neg(a) => -a.integer_value()?,
            Term::Add(a, b) => a.integer_value()? + b.integer_value()?,
            Term::Sub(a, b) => a.integer_value()? - b.integer_value()?,
            Term::Mul(a, b) => a.integer_value()? * b.integer_value()?,
        })
    }

    pub fn as_numeral(&self) -> Option<&Numeral> {
        match self {
            Term::Lit(n) => Some(n),
            _ => None,
        }
    }

    pub fn to_inline(&self) -> String {
        format(self, Format::Inline)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self, Format::Inline))
    }
}

impl FromStr for Term {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s, Format::Inline)
    }
}

/// Rewrites a numeral into the bare signature: `3` becomes `((1+1)+1)`,
/// `0` becomes `0`, and negative numerals become `-(...)`.
pub fn expand_numeral(n: &Numeral) -> Term {
    let value = n.value();
    let magnitude = value.abs();
    let positive = if magnitude.is_zero() {
        Term::lit(0)
    } else {
        let mut acc = Term::lit(1);
        let mut k = BigInt::one();
        while k < magnitude {
            acc = Term::add(acc, Term::lit(1));
            k += 1;
        }
        acc
    };
    if value.is_negative() {
        Term::neg(positive)
    } else {
        positive
    }
}

/// Surface notation for the division sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// `a/b`
    Inline,
    /// `a:b`
    Colon,
    /// `frac(a, b)`
    Frac,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Inline, Format::Colon, Format::Frac];

    pub fn as_str(self) -> &'static str {
        match self {
            Format::Inline => "inline",
            Format::Colon => "colon",
            Format::Frac => "frac",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inline" => Ok(Format::Inline),
            "colon" => Ok(Format::Colon),
            "frac" | "latex-fraction" => Ok(Format::Frac),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        SyntaxError { position, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash(Option<Decoration>),
    LParen,
    RParen,
    Comma,
    Frac(Option<Decoration>),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    format: Format,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str, format: Format) -> Result<Vec<(usize, Tok)>, SyntaxError> {
        let mut lexer = Lexer { src: text.as_bytes(), pos: 0, format };
        let mut out = Vec::new();
        while let Some(tok) = lexer.next_token()? {
            out.push(tok);
        }
        Ok(out)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn decoration(&mut self) -> Option<Decoration> {
        let rest = &self.src[self.pos..];
        let found = if rest.starts_with(b"ft") {
            Some(Decoration::Ft)
        } else if rest.starts_with(b"fv") {
            Some(Decoration::Fv)
        } else {
            None
        };
        if found.is_some() {
            self.pos += 2;
        }
        found
    }

    fn next_token(&mut self) -> Result<Option<(usize, Tok)>, SyntaxError> {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(b) = self.peek() else { return Ok(None) };
        let tok = match b {
            b'0'..=b'9' => Tok::Num(self.take_while(|b| b.is_ascii_digit())),
            b'a'..=b'z' | b'A'..=b'Z' => {
                let ident = self.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                if self.format == Format::Frac {
                    match ident.as_str() {
                        "frac" => Tok::Frac(None),
                        "frac_ft" => Tok::Frac(Some(Decoration::Ft)),
                        "frac_fv" => Tok::Frac(Some(Decoration::Fv)),
                        _ if ident.contains('_') => {
                            return Err(SyntaxError::new(start, format!("bad identifier {ident:?}")))
                        }
                        _ => Tok::Ident(ident),
                    }
                } else if ident.contains('_') {
                    return Err(SyntaxError::new(start, format!("bad identifier {ident:?}")));
                } else {
                    Tok::Ident(ident)
                }
            }
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b',' if self.format == Format::Frac => {
                self.pos += 1;
                Tok::Comma
            }
            b'/' if self.format == Format::Inline => {
                self.pos += 1;
                Tok::Slash(self.decoration())
            }
            b':' if self.format == Format::Colon => {
                self.pos += 1;
                Tok::Slash(self.decoration())
            }
            other => {
                return Err(SyntaxError::new(
                    start,
                    format!("unexpected character {:?}", other as char),
                ))
            }
        };
        Ok(Some((start, tok)))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    format: Format,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SyntaxError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            Some(t) => Err(SyntaxError::new(pos, format!("expected {what}, found {t:?}"))),
            None => Err(SyntaxError::new(pos, format!("expected {what}, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Term::add(lhs, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Term::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Term::mul(lhs, self.factor()?);
                }
                Some(Tok::Slash(d)) => {
                    let d = *d;
                    self.bump();
                    lhs = Term::Div(Box::new(lhs), Box::new(self.factor()?), d);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Term, SyntaxError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Minus) => {
                // a minus glued to digits is a signed numeral
                if let Some((num_pos, Tok::Num(digits))) = self.toks.get(self.idx).cloned() {
                    if num_pos == pos + 1 {
                        self.idx += 1;
                        let lit = Numeral::new(&format!("-{digits}")).expect("digits");
                        return Ok(Term::Lit(lit));
                    }
                }
                Ok(Term::neg(self.factor()?))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Num(digits)) => Ok(Term::Lit(Numeral::new(&digits).expect("digits"))),
            Some(Tok::Ident(name)) => Ok(Term::Var(name)),
            Some(Tok::Frac(d)) if self.format == Format::Frac => {
                self.expect(Tok::LParen, "'(' after frac")?;
                let num = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let den = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Term::Div(Box::new(num), Box::new(den), d))
            }
            Some(t) => Err(SyntaxError::new(pos, format!("unexpected token {t:?}"))),
            None => Err(SyntaxError::new(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` in the given surface format.
///
/// `*` and `/` bind tighter than `+` and `-`; all binary operators associate
/// to the left. A minus written directly before digits in operand position is
/// part of the numeral, so `-3/7` is `Div(Lit -3, Lit 7)` while `-(3)/7` is
/// `Div(Neg 3, 7)`.
pub fn parse(text: &str, format: Format) -> Result<Term, SyntaxError> {
    let toks = Lexer::tokens(text, format)?;
    let mut parser = Parser { toks, idx: 0, end: text.len(), format };
    let term = parser.expr()?;
    if parser.idx < parser.toks.len() {
        let pos = parser.here();
        return Err(SyntaxError::new(pos, "trailing input"));
    }
    Ok(term)
}

fn precedence(t: &Term) -> u8 {
    match t {
        Term::Add(..) | Term::Sub(..) => 1,
        Term::Mul(..) => 2,
        Term::Div(..) => 2,
        Term::Lit(_) | Term::Var(_) | Term::Neg(_) => 3,
    }
}

fn write_term(out: &mut String, t: &Term, format: Format) {
    match t {
        Term::Lit(n) => out.push_str(n.as_str()),
        Term::Var(v) => out.push_str(v),
        Term::Neg(a) => {
            out.push('-');
            match **a {
                Term::Var(_) => write_term(out, a, format),
                _ => {
                    out.push('(');
                    write_term(out, a, format);
                    out.push(')');
                }
            }
        }
        Term::Div(a, b, d) if format == Format::Frac => {
            out.push_str("frac");
            if let Some(d) = d {
                out.push('_');
                out.push_str(d.suffix());
            }
            out.push('(');
            write_term(out, a, format);
            out.push_str(", ");
            write_term(out, b, format);
            out.push(')');
        }
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b, _) => {
            let prec = precedence(t);
            write_operand(out, a, format, precedence(a) < prec);
            match t {
                Term::Add(..) => out.push('+'),
                Term::Sub(..) => out.push('-'),
                Term::Mul(..) => out.push('*'),
                Term::Div(_, _, d) => {
                    out.push(if format == Format::Colon { ':' } else { '/' });
                    if let Some(d) = d {
                        out.push_str(d.suffix());
                        out.push(' ');
                    }
                }
                _ => unreachable!(),
            }
            write_operand(out, b, format, precedence(b) <= prec);
        }
    }
}

fn write_operand(out: &mut String, t: &Term, format: Format, parens: bool) {
    // a Frac-format division is an atom
    let parens = parens && !(format == Format::Frac && matches!(t, Term::Div(..)));
    if parens {
        out.push('(');
        write_term(out, t, format);
        out.push(')');
    } else {
        write_term(out, t, format);
    }
}

/// Prints `t` so that `parse(&format(t, f), f) == t`.
pub fn format(t: &Term, format: Format) -> String {
    let mut out = String::new();
    write_term(&mut out, t, format);
    out
}

pub fn is_fracterm(t: &Term) -> bool {
    matches!(t, Term::Div(..))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyFlags {
    pub is_fracterm: bool,
    pub closed: bool,
    pub flat: bool,
    pub simple: bool,
    pub safe: bool,
    pub simplified: bool,
    /// Only present for simple fracterms.
    pub proper: Option<bool>,
}

impl TaxonomyFlags {
    pub fn flag(&self, flag: TaxonomyFlag) -> bool {
        match flag {
            TaxonomyFlag::Fracterm => self.is_fracterm,
            TaxonomyFlag::Closed => self.closed,
            TaxonomyFlag::Flat => self.flat,
            TaxonomyFlag::Simple => self.simple,
            TaxonomyFlag::Safe => self.safe,
            TaxonomyFlag::Simplified => self.simplified,
            TaxonomyFlag::Proper => self.proper == Some(true),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaxonomyFlag {
    Fracterm,
    Closed,
    Flat,
    Simple,
    Safe,
    Simplified,
    Proper,
}

impl TaxonomyFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            TaxonomyFlag::Fracterm => "fracterm",
            TaxonomyFlag::Closed => "closed",
            TaxonomyFlag::Flat => "flat",
            TaxonomyFlag::Simple => "simple",
            TaxonomyFlag::Safe => "safe",
            TaxonomyFlag::Simplified => "simplified",
            TaxonomyFlag::Proper => "proper",
        }
    }
}

impl FromStr for TaxonomyFlag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "fracterm" => TaxonomyFlag::Fracterm,
            "closed" => TaxonomyFlag::Closed,
            "flat" => TaxonomyFlag::Flat,
            "simple" => TaxonomyFlag::Simple,
            "safe" => TaxonomyFlag::Safe,
            "simplified" => TaxonomyFlag::Simplified,
            "proper" => TaxonomyFlag::Proper,
            other => return Err(format!("unknown taxonomy flag {other:?}")),
        })
    }
}

/// Numerator and denominator numerals of a simple fracterm.
pub fn simple_parts(t: &Term) -> Option<(&Numeral, &Numeral)> {
    match t {
        Term::Div(a, b, _) => Some((a.as_numeral()?, b.as_numeral()?)),
        _ => None,
    }
}

/// Computes the taxonomy flags. Decorations play no part.
pub fn classify(t: &Term) -> TaxonomyFlags {
    let is_fracterm = is_fracterm(t);
    let flat = match t {
        Term::Div(a, b, _) => !a.contains_division() && !b.contains_division(),
        _ => false,
    };
    let parts = simple_parts(t);
    let simple = parts.is_some();
    let (safe, simplified, proper) = match parts {
        Some((n, d)) => {
            let (num, den) = (n.value(), d.value());
            let safe = !den.is_zero();
            let simplified = safe
                && den.is_positive()
                && n.is_canonical()
                && d.is_canonical()
                && num.abs().gcd(&den).is_one();
            (safe, simplified, Some(num.abs() < den.abs()))
        }
        None => (false, false, None),
    };
    TaxonomyFlags {
        is_fracterm,
        closed: t.is_closed(),
        flat,
        simple,
        safe,
        simplified,
        proper,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a fracterm: {0}")]
pub struct NotAFracterm(pub String);

/// Numerator of a fracterm read as a fracterm (decorations erased).
pub fn num(t: &Term) -> Result<Term, NotAFracterm> {
    match t {
        Term::Div(a, _, _) => Ok(a.erase_decorations()),
        other => Err(NotAFracterm(other.to_inline())),
    }
}

/// Denominator of a fracterm read as a fracterm (decorations erased).
pub fn denom(t: &Term) -> Result<Term, NotAFracterm> {
    match t {
        Term::Div(_, b, _) => Ok(b.erase_decorations()),
        other => Err(NotAFracterm(other.to_inline())),
    }
}

/// Abstraction level of a fracsign occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    FracsignOccurrence,
    Fracsign,
    Fracterm,
    Fracvalue,
    /// Not yet refined: fracvalue, fracterm or fracsign.
    Fraxion,
}

impl Level {
    /// Position in occurrence < sign < fracterm < fracvalue. `None` for fraxion.
    pub fn rank(self) -> Option<u8> {
        match self {
            Level::FracsignOccurrence => Some(0),
            Level::Fracsign => Some(1),
            Level::Fracterm => Some(2),
            Level::Fracvalue => Some(3),
            Level::Fraxion => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Level::FracsignOccurrence => "fso",
            Level::Fracsign => "fs",
            Level::Fracterm => "ft",
            Level::Fracvalue => "fv",
            Level::Fraxion => "fx",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::FracsignOccurrence => "fracsign occurrence",
            Level::Fracsign => "fracsign",
            Level::Fracterm => "fracterm",
            Level::Fracvalue => "fracvalue",
            Level::Fraxion => "fraxion",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Level> {
        Some(match tag {
            "fso" => Level::FracsignOccurrence,
            "fs" => Level::Fracsign,
            "ft" => Level::Fracterm,
            "fv" => Level::Fracvalue,
            "fx" => Level::Fraxion,
            _ => return None,
        })
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse(s, Format::Inline).unwrap()
    }

    #[test]
    fn parses_minimal_division() {
        assert_eq!(p("1/2"), Term::div(Term::lit(1), Term::lit(2)));
    }

    #[test]
    fn parses_nested_operands() {
        assert_eq!(
            p("(1+2/3)/5"),
            Term::div(
                Term::add(Term::lit(1), Term::div(Term::lit(2), Term::lit(3))),
                Term::lit(5)
            )
        );
        assert_eq!(
            p("2/(4/5)"),
            Term::div(Term::lit(2), Term::div(Term::lit(4), Term::lit(5)))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            p("1-2-3"),
            Term::sub(Term::sub(Term::lit(1), Term::lit(2)), Term::lit(3))
        );
        assert_eq!(
            p("1+2*3"),
            Term::add(Term::lit(1), Term::mul(Term::lit(2), Term::lit(3)))
        );
        assert_eq!(
            p("8/4/2"),
            Term::div(Term::div(Term::lit(8), Term::lit(4)), Term::lit(2))
        );
    }

    #[test]
    fn signed_literals_versus_negation() {
        assert_eq!(p("-3/7"), Term::div(Term::lit(-3), Term::lit(7)));
        assert_eq!(p("-3/-9"), Term::div(Term::lit(-3), Term::lit(-9)));
        assert_eq!(p("- 3"), Term::neg(Term::lit(3)));
        assert_eq!(p("-x"), Term::neg(Term::var("x")));
        assert_eq!(p("2-3"), Term::sub(Term::lit(2), Term::lit(3)));
        assert_eq!(p("2--3"), Term::sub(Term::lit(2), Term::lit(-3)));
    }

    #[test]
    fn decorations() {
        assert_eq!(
            p("1/ft 2"),
            Term::div_decorated(Term::lit(1), Term::lit(2), Decoration::Ft)
        );
        assert_eq!(
            p("1/fv2"),
            Term::div_decorated(Term::lit(1), Term::lit(2), Decoration::Fv)
        );
        let t = parse("frac_ft(1, 2)", Format::Frac).unwrap();
        assert_eq!(t.decoration(), Some(Decoration::Ft));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse("1/", Format::Inline).unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse("1 + )", Format::Inline).unwrap_err();
        assert_eq!(err.position, 4);
        assert!(parse("1:2", Format::Inline).is_err());
        assert!(parse("1/2", Format::Colon).is_err());
        assert!(parse("(1", Format::Inline).is_err());
        assert!(parse("1 2", Format::Inline).is_err());
        assert!(parse("", Format::Inline).is_err());
    }

    #[test]
    fn formats() {
        let half = Term::div(Term::lit(1), Term::lit(2));
        assert_eq!(format(&half, Format::Inline), "1/2");
        assert_eq!(format(&half, Format::Colon), "1:2");
        assert_eq!(format(&half, Format::Frac), "frac(1, 2)");
        assert_eq!(format(&Term::div(Term::lit(1), Term::lit(0)), Format::Inline), "1/0");
        assert_eq!(format(&p("(1+2/3)/5"), Format::Inline), "(1+2/3)/5");
        assert_eq!(format(&p("(1+2/3)/5"), Format::Frac), "frac(1+frac(2, 3), 5)");
        assert_eq!(format(&p("1-(2-3)"), Format::Inline), "1-(2-3)");
        assert_eq!(format(&Term::neg(Term::lit(3)), Format::Inline), "-(3)");
    }

    #[test]
    fn format_round_trips_examples() {
        for s in ["1/2", "(1+2/3)/5", "2/(4/5)", "-3/-9", "x/(y/0)", "-(1/2)*-x", "1/ft (2/fv 3)"] {
            let t = p(s);
            for f in Format::ALL {
                assert_eq!(parse(&format(&t, f), f).unwrap(), t, "{s} in {f:?}");
            }
        }
    }

    #[test]
    fn fracterm_predicate() {
        assert!(is_fracterm(&p("1/2")));
        assert!(!is_fracterm(&p("1+2")));
        assert!(is_fracterm(&p("(1/0)/0")));
    }

    #[test]
    fn classify_examples() {
        let f = classify(&p("5/(1+3)"));
        assert!(f.is_fracterm && f.flat && !f.simple && f.proper.is_none());

        let f = classify(&p("4/6"));
        assert!(f.simple && f.safe && !f.simplified);

        let f = classify(&p("5/4"));
        assert!(f.simple && f.simplified && f.proper == Some(false));

        let f = classify(&p("(1+2/3)/5"));
        assert!(f.is_fracterm && !f.flat);

        assert!(!classify(&p("-3/-9")).simplified);
        assert!(classify(&p("-3/7")).simplified);
        assert!(classify(&p("17/-332")).safe);
        assert!(!classify(&p("1/0")).safe);
        assert!(!classify(&p("02/3")).simplified);
        assert!(!classify(&p("x/2")).closed);
    }

    #[test]
    fn num_and_denom() {
        assert_eq!(num(&p("2/(4/5)")).unwrap(), Term::lit(2));
        assert_eq!(denom(&p("1/2")).unwrap(), Term::lit(2));
        assert!(num(&p("1+2")).is_err());
        assert_eq!(denom(&p("1/ft (4/fv 5)")).unwrap(), p("4/5"));
    }

    #[test]
    fn numeral_expansion() {
        assert_eq!(expand_numeral(&Numeral::new("3").unwrap()), p("1+1+1"));
        assert_eq!(expand_numeral(&Numeral::new("0").unwrap()), p("0"));
        assert_eq!(expand_numeral(&Numeral::new("-2").unwrap()), p("-(1+1)"));
        assert_eq!(expand_numeral(&Numeral::new("-2").unwrap()).integer_value(), Some(BigInt::from(-2)));
    }
}
