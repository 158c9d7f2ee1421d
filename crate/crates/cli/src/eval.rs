//! Ring expressions for `omega eval`:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | '-' factor | 'neg(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use omega_core::tower::Tower;
use omega_core::{embed, PolyadicNumber};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for EvalError {}

pub fn evaluate(tower: &Tower, text: &str) -> Result<PolyadicNumber, EvalError> {
    let mut p = Parser {
        tower,
        text: text.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    tower: &'a Tower,
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> EvalError {
        EvalError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), EvalError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<PolyadicNumber, EvalError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyadicNumber, EvalError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyadicNumber, EvalError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'n') if self.text[self.pos..].starts_with(b"neg") => {
                self.pos += 3;
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(-inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                let value: BigInt = digits.parse().expect("decimal digits");
                Ok(embed(self.tower, value))
            }
            Some(_) => Err(self.error("expected an integer, `neg(`, `(` or `-`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
