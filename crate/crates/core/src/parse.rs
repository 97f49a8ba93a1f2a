//! Text form of Laurent polynomials.
//!
//! Grammar (whitespace is insignificant, `**` is a synonym for `^`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom (('^' | '**') exponent)?
//! exponent := ['-'] INT | '(' ['-'] INT ')'
//! atom   := INT | VAR | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. A divisor must
//! be a single term `c*x^k`, and `c` must divide every coefficient of the
//! dividend. There is no implicit multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, MAX_DIM};

pub const VARIABLE_NAMES: [&str; MAX_DIM] = ["x", "y", "z", "w"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the source text.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd,
    UndeclaredVariable(String),
    NonMonomialDivisor,
    InexactDivision,
    DivisionByZero,
    ExponentTooLarge,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UndeclaredVariable(v) => write!(f, "undeclared variable {v:?}"),
            ParseErrorKind::NonMonomialDivisor => write!(f, "divisor is not a single monomial"),
            ParseErrorKind::InexactDivision => write!(f, "coefficient division is not exact"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
        }
    }
}

/// Ordered variable declaration; its length is the polynomial dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variables(Vec<String>);

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() || names.len() > MAX_DIM {
            return Err(Error::UnsupportedDimension(names.len()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            if !VARIABLE_NAMES.contains(&n) {
                return Err(Error::InvalidInput(format!(
                    "variable {n:?} is not one of x, y, z, w"
                )));
            }
            if out.iter().any(|o| o == n) {
                return Err(Error::InvalidInput(format!("variable {n:?} declared twice")));
            }
            out.push(n.to_string());
        }
        Ok(Variables(out))
    }

    /// Parses a comma-separated list such as `"x,y"`.
    pub fn parse_list(list: &str) -> Result<Self> {
        let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::new(&names)
    }

    /// `x`, `x,y`, ... for the given dimension.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        Self::new(&VARIABLE_NAMES[..dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Expression text together with its variable declaration.
#[derive(Debug, Clone)]
pub struct ExprSource<'a> {
    pub text: &'a str,
    pub variables: &'a Variables,
}

pub fn parse(src: &ExprSource<'_>) -> std::result::Result<LaurentPoly, ParseError> {
    let tokens = tokenize(src.text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars: src.variables,
        end: src.text.len(),
    };
    let value = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(ParseError {
            kind: ParseErrorKind::UnexpectedToken {
                found: tok.kind.describe(),
                expected: "operator or end of input",
            },
            position: tok.position,
        });
    }
    Ok(value)
}

/// Convenience wrapper: parse `text` over the comma-separated `vars`.
pub fn parse_str(text: &str, vars: &str) -> Result<LaurentPoly> {
    let vars = Variables::parse_list(vars)?;
    Ok(parse(&ExprSource {
        text,
        variables: &vars,
    })?)
}

/// Graded-lex text form with the standard variable names.
pub fn to_canonical_string(f: &LaurentPoly) -> String {
    let vars = Variables::standard(f.dim()).expect("polynomial dimension is valid");
    to_canonical_string_with(f, &vars)
}

/// Graded-lex text form, e.g. `x^-1 + 2 + x`, `-1*x*y`. Positive unit
/// coefficients are omitted; negative coefficients always carry their
/// magnitude.
pub fn to_canonical_string_with(f: &LaurentPoly, vars: &Variables) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, c)) in f.terms().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors = monomial_factors(mono, vars);
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if negative || !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

fn monomial_factors(mono: &Monomial, vars: &Variables) -> Vec<String> {
    mono.exponents()
        .iter()
        .zip(vars.names())
        .filter(|(e, _)| **e != 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
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

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Int(n) => format!("integer {n}"),
            TokenKind::Ident(s) => format!("identifier {s:?}"),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    position: usize,
}

fn tokenize(text: &str) -> std::result::Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let kind = match c {
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                tokens.push(Token {
                    kind: TokenKind::Int(n),
                    position: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_string()),
                    position: start,
                });
                continue;
            }
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' if bytes.get(i + 1) == Some(&b'*') => {
                i += 1;
                TokenKind::Caret
            }
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            _ => {
                let ch = text[start..].chars().next().unwrap_or(c);
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    position: start,
                });
            }
        };
        i += 1;
        tokens.push(Token {
            kind,
            position: start,
        });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a Variables,
    end: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn position(&self) -> usize {
        self.peek().map(|t| t.position).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, kind: ParseErrorKind) -> PResult<T> {
        Err(ParseError {
            kind,
            position: self.position(),
        })
    }

    fn unexpected<T>(&self, expected: &'static str) -> PResult<T> {
        match self.peek() {
            Some(t) => Err(ParseError {
                kind: ParseErrorKind::UnexpectedToken {
                    found: t.kind.describe(),
                    expected,
                },
                position: t.position,
            }),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> PResult<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek_kind() {
                Some(TokenKind::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).expect("same dimension");
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).expect("same dimension");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<LaurentPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek_kind() {
                Some(TokenKind::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs, None).expect("same dimension");
                }
                Some(TokenKind::Slash) => {
                    let at = self.position();
                    self.bump();
                    let rhs = self.unary()?;
                    acc = divide(&acc, &rhs).map_err(|kind| ParseError { kind, position: at })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<LaurentPoly> {
        match self.peek_kind() {
            Some(TokenKind::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(TokenKind::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<LaurentPoly> {
        let base = self.atom()?;
        if self.peek_kind() != Some(&TokenKind::Caret) {
            return Ok(base);
        }
        let at = self.position();
        self.bump();
        let exponent = self.exponent()?;
        let result = if exponent >= 0 {
            base.pow(exponent as u64, None)
        } else {
            let one = LaurentPoly::one(base.dim()).expect("valid dimension");
            let inv = divide(&one, &base).map_err(|kind| ParseError { kind, position: at })?;
            inv.pow(exponent.unsigned_abs(), None)
        };
        if self.peek_kind() == Some(&TokenKind::Caret) {
            return self.unexpected("operator other than a second '^'");
        }
        Ok(result)
    }

    fn exponent(&mut self) -> PResult<i64> {
        let parenthesized = self.peek_kind() == Some(&TokenKind::LParen);
        if parenthesized {
            self.bump();
        }
        let negative = self.peek_kind() == Some(&TokenKind::Minus);
        if negative {
            self.bump();
        }
        let value = match self.peek_kind() {
            Some(TokenKind::Int(n)) => {
                let n = n.clone();
                let v: i64 = match i64::try_from(&n) {
                    Ok(v) if v <= 1_000_000 => v,
                    _ => return self.err(ParseErrorKind::ExponentTooLarge),
                };
                self.bump();
                v
            }
            _ => return self.unexpected("integer exponent"),
        };
        if parenthesized {
            if self.peek_kind() != Some(&TokenKind::RParen) {
                return self.unexpected("')'");
            }
            self.bump();
        }
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> PResult<LaurentPoly> {
        let dim = self.vars.dim();
        match self.peek_kind().cloned() {
            Some(TokenKind::Int(n)) => {
                self.bump();
                Ok(LaurentPoly::constant(dim, n).expect("valid dimension"))
            }
            Some(TokenKind::Ident(name)) => {
                let Some(i) = self.vars.index_of(&name) else {
                    return self.err(ParseErrorKind::UndeclaredVariable(name));
                };
                self.bump();
                Ok(LaurentPoly::var(dim, i).expect("declared variable"))
            }
            Some(TokenKind::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.peek_kind() != Some(&TokenKind::RParen) {
                    return self.unexpected("')'");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.unexpected("integer, variable or '('"),
        }
    }
}

/// Exact division by a single-term divisor.
fn divide(num: &LaurentPoly, den: &LaurentPoly) -> std::result::Result<LaurentPoly, ParseErrorKind> {
    if den.is_zero() {
        return Err(ParseErrorKind::DivisionByZero);
    }
    if den.len() != 1 {
        return Err(ParseErrorKind::NonMonomialDivisor);
    }
    let (mono, c) = den.terms().next().expect("one term");
    let inv = mono.negated();
    let mut terms = Vec::with_capacity(num.len());
    for (m, a) in num.terms() {
        let (q, r) = a.div_rem(c);
        if !r.is_zero() {
            return Err(ParseErrorKind::InexactDivision);
        }
        terms.push((m.shift(&inv).exponents().to_vec(), q));
    }
    Ok(LaurentPoly::from_terms(num.dim(), terms).expect("dimension unchanged"))
}
