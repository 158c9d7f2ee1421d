//! Set expressions:
//!
//! ```text
//! expr  := unary (op unary)*        op: '|' union, '&' intersection, '-' difference
//! unary := '~' unary | term         '~' complements with respect to the naturals
//! term  := 'AP(' int ',' int ')' | '{' [int (',' int)*] '}' | '(' expr ')'
//! ```
//!
//! Binary operators share one precedence level and associate to the left.
//! `AP(a,q)` is the progression `a, a+q, a+2q, ...`.

use crate::error::{Error, Result};

use super::set::{EventuallyPeriodicSet, SetOp};

pub fn parse_set_expression(text: &str) -> Result<EventuallyPeriodicSet> {
    let mut parser = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let set = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(set)
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::SetSyntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<EventuallyPeriodicSet> {
        let mut acc = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'|') => SetOp::Union,
                Some(b'&') => SetOp::Intersection,
                Some(b'-') => SetOp::Difference,
                _ => return Ok(acc),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.combine(op, &rhs)?;
        }
    }

    fn unary(&mut self) -> Result<EventuallyPeriodicSet> {
        if self.peek() == Some(b'~') {
            self.pos += 1;
            return Ok(self.unary()?.complement());
        }
        self.term()
    }

    fn term(&mut self) -> Result<EventuallyPeriodicSet> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'{') => {
                self.pos += 1;
                let mut points = Vec::new();
                if self.peek() == Some(b'}') {
                    self.pos += 1;
                    return Ok(EventuallyPeriodicSet::finite(points));
                }
                loop {
                    points.push(self.integer()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(EventuallyPeriodicSet::finite(points));
                        }
                        _ => return Err(self.error("expected `,` or `}`")),
                    }
                }
            }
            Some(b'A') if self.text[self.pos..].starts_with(b"AP") => {
                self.pos += 2;
                self.expect(b'(')?;
                let start = self.integer()?;
                self.expect(b',')?;
                let step_pos = self.pos;
                let step = self.integer()?;
                self.expect(b')')?;
                EventuallyPeriodicSet::progression(start, step).map_err(|e| match e {
                    Error::ZeroPeriod => Error::SetSyntax {
                        position: step_pos,
                        message: "progression difference must be positive".into(),
                    },
                    other => other,
                })
            }
            Some(_) => Err(self.error("expected `AP(`, `{`, `(` or `~`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a nonnegative integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::SetSyntax {
                position: start,
                message: "integer out of range".into(),
            })
    }
}
