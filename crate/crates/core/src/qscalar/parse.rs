//! Parser for textual scalars such as `q^2 - 1`, `3/2*q^-1`, `(q + 1)/(q^2 + 1)`.

use super::{QScalar, ScalarError};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn int(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && (self.src[self.pos] == b'-' || self.src[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        txt.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("expected integer")
        })
    }

    fn expr(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    acc = acc.try_div(&d).map_err(|_| ScalarError::Parse { pos: at, msg: "division by zero".into() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QScalar, ScalarError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.int()?;
            let e = i32::try_from(e).or_else(|_| self.err("exponent out of range"))?;
            return base.pow(e).map_err(|_| ScalarError::Parse { pos: at, msg: "negative power of zero".into() });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<QScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(QScalar::q_pow(1))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.int()?;
                Ok(QScalar::from_int(v))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the textual form produced by [`QScalar::render`] (and general rational expressions in `q`).
pub fn parse_scalar(s: &str) -> Result<QScalar, ScalarError> {
    let mut c = Cursor { src: s.as_bytes(), pos: 0 };
    let v = c.expr()?;
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    Ok(v)
}
