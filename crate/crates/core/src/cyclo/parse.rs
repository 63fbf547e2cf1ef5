//! Recursive-descent parser for scalar literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 'E' '(' digits ')' | '(' expr ')'
//! ```
//!
//! `p/q` is parsed as a division of integers, so every rational literal is
//! covered by the grammar above.

use super::{CycloError, Cyclotomic, Int};

pub fn parse_literal(s: &str) -> Result<Cyclotomic, CycloError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos == p.s.len() {
        return Err(p.err("empty literal"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> CycloError {
        CycloError::Parse { pos: self.pos, reason: reason.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), CycloError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, CycloError> {
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

    fn term(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| CycloError::Parse {
                        pos: at,
                        reason: "division by zero".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Cyclotomic, CycloError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Cyclotomic, CycloError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let k = self.digits()?;
        let k = match k {
            Int::Small(v) => v,
            Int::Big(_) => return Err(CycloError::Parse { pos: at, reason: "exponent too large".into() }),
        };
        base.pow(if neg { -k } else { k }).map_err(|_| CycloError::Parse {
            pos: at,
            reason: "negative power of zero".into(),
        })
    }

    fn digits(&mut self) -> Result<Int, CycloError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(Int::parse(text).expect("ascii digits parse"))
    }

    fn atom(&mut self) -> Result<Cyclotomic, CycloError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let n = self.digits()?;
                let n = match n {
                    Int::Small(v) if v > 0 && v <= 1_000_000 => v as u32,
                    _ => {
                        return Err(CycloError::Parse {
                            pos: at,
                            reason: "root-of-unity order must be in 1..=1000000".into(),
                        })
                    }
                };
                self.expect(b')')?;
                Ok(Cyclotomic::zeta(n))
            }
            Some(c) if c.is_ascii_digit() => Ok(Cyclotomic::from_int(self.digits()?)),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_scalars() {
        let alpha = parse_literal("1/2*(E(4)-1)").unwrap();
        let expect = (&Cyclotomic::i() - &Cyclotomic::one()) * Cyclotomic::rational(1, 2).unwrap();
        assert_eq!(alpha, expect);
        assert!(parse_literal("0").unwrap().is_zero());
        assert_eq!(parse_literal("E(12)^3").unwrap(), Cyclotomic::i());
        assert_eq!(parse_literal(" E(4) ^ -1 ").unwrap(), Cyclotomic::i().neg());
        assert_eq!(parse_literal("-(3)/6").unwrap(), Cyclotomic::rational(-1, 2).unwrap());
    }

    #[test]
    fn reports_position() {
        match parse_literal("1+*2") {
            Err(CycloError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_literal("E(0)"), Err(CycloError::Parse { pos: 2, .. })));
        assert!(matches!(parse_literal("1/0"), Err(CycloError::Parse { .. })));
        assert!(matches!(parse_literal("(1"), Err(CycloError::Parse { .. })));
        assert!(matches!(parse_literal(""), Err(CycloError::Parse { pos: 0, .. })));
        assert!(matches!(parse_literal("1 2"), Err(CycloError::Parse { pos: 2, .. })));
    }
}
