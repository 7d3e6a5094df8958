//! Text syntax for elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := '-' power | atom ['^' int]
//! atom   := int ['/' int] | 'i' | 'sqrt2' | 'q(' a ',' b ')' | 'x' k | 'dx' k | '(' expr ')'
//! ```
//!
//! Products are taken left to right in the noncommutative algebra, so
//! `x2*x1` parses to `q(1,2)^-1*x1*x2`. Negative exponents are accepted on
//! `q(a,b)` only. The `Display` output of [`Element`] parses back to an
//! equal element.

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{Ctx, Element};
use crate::qphase::{Coeff, ExactScalar, Rational};

pub fn parse_expr(ctx: &Ctx, text: &str) -> Result<Element> {
    let mut p = Parser { ctx, src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    ctx: &'a Ctx,
    src: &'a [u8],
    pos: usize,
}

enum Atom {
    Value(Element),
    Phase(ExactScalar),
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits"))
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.digits()?;
        let a: usize = n.try_into().map_err(|_| Error::Syntax { pos: start, msg: "index too large".into() })?;
        self.ctx.check_index(a)?;
        Ok(a)
    }

    fn signed_int(&mut self) -> Result<i32> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let n: i32 =
            self.digits()?.try_into().map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = Element::zero(self.ctx);
        let mut first = true;
        loop {
            let neg = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else if first {
                false
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Element> {
        if self.eat(b'-') {
            return Ok(-self.power()?);
        }
        let atom = self.atom()?;
        let exp = if self.eat(b'^') { Some(self.signed_int()?) } else { None };
        match (atom, exp) {
            (Atom::Value(e), None) => Ok(e),
            (Atom::Phase(s), None) => Ok(Element::scalar(self.ctx, s)),
            (Atom::Phase(s), Some(k)) => {
                let (p, _) = s.terms().next().expect("phase atom has one term");
                Ok(Element::scalar(self.ctx, ExactScalar::phase(p.pow(k))))
            }
            (Atom::Value(_), Some(k)) if k < 0 => Err(self.error("negative exponent allowed only on q(a,b)")),
            (Atom::Value(e), Some(k)) => {
                let mut acc = Element::one(self.ctx);
                for _ in 0..k {
                    acc = &acc * &e;
                }
                Ok(acc)
            }
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let ctx = self.ctx;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Atom::Value(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let d = if self.eat(b'/') {
                    let start = self.pos;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(Error::Syntax { pos: start, msg: "zero denominator".into() });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let r = Rational::new(n, d);
                Ok(Atom::Value(Element::scalar(ctx, ExactScalar::rational(r))))
            }
            Some(_) => {
                if self.keyword("sqrt2") {
                    Ok(Atom::Value(Element::scalar(ctx, ExactScalar::sqrt2())))
                } else if self.keyword("dx") {
                    let a = self.index()?;
                    Ok(Atom::Value(Element::dx(ctx, a)?))
                } else if self.keyword("x") {
                    let a = self.index()?;
                    Ok(Atom::Value(Element::x(ctx, a)?))
                } else if self.keyword("q") {
                    self.expect(b'(')?;
                    let a = self.index()?;
                    self.expect(b',')?;
                    let b = self.index()?;
                    self.expect(b')')?;
                    Ok(Atom::Phase(ExactScalar::phase(ctx.reduce_pair(a, b)?)))
                } else if self.keyword("i") {
                    Ok(Atom::Value(Element::scalar(ctx, ExactScalar::from_coeff(Coeff::i()))))
                } else {
                    Err(self.error("unexpected character"))
                }
            }
        }
    }
}
