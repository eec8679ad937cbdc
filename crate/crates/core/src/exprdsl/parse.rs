//! Lexer and recursive-descent parser.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::{Arg, Ast, CallName, GenKind, Scalar};
use crate::drinfeld::Side;
use crate::qscalar::Parity;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: expected {}, found {}", self.offset, self.expected.join(" | "), self.found)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Eq => "'='".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'=' => Tok::Eq,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(src[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(ParseError { offset: start, expected: vec!["a token".into()], found: format!("'{ch}'") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["generator", "call", "integer", "'q'", "'('"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError { offset: self.offset(), expected: expected.iter().map(|s| s.to_string()).collect(), found: self.peek().describe() }
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut terms = Vec::new();
        let mut neg = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            neg = true;
        }
        terms.push((neg, self.term()?));
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.term()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Ast::Sum(terms))
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut fs = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Ast::Product(fs) })
    }

    fn signed_int(&mut self, what: &str) -> Result<BigInt, ParseError> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let n = self.signed_int("exponent")?;
        let n = n.to_i64().ok_or(ParseError { offset: at, expected: vec!["exponent that fits in 64 bits".into()], found: n.to_string() })?;
        Ok(if n == 1 { base } else { Ast::Power(Box::new(base), n) })
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Ast::Scalar(Scalar::Int(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "q" {
                    self.bump();
                    return Ok(Ast::Scalar(Scalar::Q));
                }
                if let Some(kind) = GenKind::from_name(&name) {
                    self.bump();
                    self.expect(Tok::LBracket, "'['")?;
                    let at = self.offset();
                    let idx = match self.bump() {
                        Tok::Int(n) => n,
                        _ => return Err(ParseError { offset: at, expected: vec!["node index".into()], found: self.toks[self.pos - 1].0.describe() }),
                    };
                    let idx = idx.to_usize().filter(|&i| i >= 1).ok_or(ParseError {
                        offset: at,
                        expected: vec!["node index >= 1".into()],
                        found: idx.to_string(),
                    })?;
                    self.expect(Tok::RBracket, "']'")?;
                    return Ok(Ast::Gen(kind, idx));
                }
                if let Some(call) = CallName::from_name(&name) {
                    let at = self.offset();
                    self.bump();
                    self.expect(Tok::LParen, "'('")?;
                    let mut args = vec![self.arg()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.arg()?);
                    }
                    self.expect(Tok::RParen, "',' | ')'")?;
                    if !call.arity().contains(&args.len()) {
                        let n: Vec<String> = call.arity().iter().map(|a| a.to_string()).collect();
                        return Err(ParseError {
                            offset: at,
                            expected: vec![format!("{} with {} arguments", call.name(), n.join(" or "))],
                            found: format!("{} arguments", args.len()),
                        });
                    }
                    return Ok(Ast::Call(call, args));
                }
                Err(self.error(ATOM_START))
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        if let Tok::Ident(s) = self.peek().clone() {
            let a = match s.as_str() {
                "even" => Arg::Parity(Parity::Even),
                "odd" => Arg::Parity(Parity::Odd),
                "E" => Arg::Side(Side::E),
                "F" => Arg::Side(Side::F),
                _ => return Err(self.error(&["integer", "'even'", "'odd'", "'E'", "'F'"])),
            };
            self.bump();
            return Ok(a);
        }
        if matches!(self.peek(), Tok::Int(_) | Tok::Plus | Tok::Minus) {
            return Ok(Arg::Int(self.signed_int("integer")?));
        }
        Err(self.error(&["integer", "'even'", "'odd'", "'E'", "'F'"]))
    }
}

pub fn parse(src: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

/// Parses `lhs = rhs`; a bare expression is read as `expr = 0`.
pub fn parse_equation(src: &str) -> Result<(Ast, Ast), ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let lhs = p.expr()?;
    match p.peek() {
        Tok::End => return Ok((lhs, Ast::Scalar(Scalar::Int(BigInt::from(0))))),
        Tok::Eq => {
            p.bump();
        }
        _ => return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "'='", "end of input"])),
    }
    let rhs = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok((lhs, rhs))
}
