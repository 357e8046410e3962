//! Polynomial expressions in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*      divisor must be a nonzero constant
//! factor := '-' factor | base ('^' uint)?
//! base   := int | 'x' | 'y' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::algebra::FieldTower;
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
const MAX_POWER: u32 = 1 << 12;

/// Abstract syntax of an expression. Positions are byte offsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    X,
    Y,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Div(Box<PolyExpr>, Box<PolyExpr>, usize),
    Pow(Box<PolyExpr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = PolyExpr::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<PolyExpr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(PolyExpr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return self.err("negative exponent");
        }
        let at = self.pos;
        let Some(d) = self.digits() else {
            return self.err("expected an exponent");
        };
        match d.parse::<u32>() {
            Ok(e) if e <= MAX_POWER => Ok(PolyExpr::Pow(Box::new(base), e)),
            _ => Err(Error::Parse { pos: at, msg: format!("exponent exceeds {MAX_POWER}") }),
        }
    }

    fn base(&mut self) -> Result<PolyExpr> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(PolyExpr::X)
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(PolyExpr::Y)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                Ok(PolyExpr::Int(d.parse().expect("digits")))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression without evaluating it.
pub fn parse_expr(text: &str) -> Result<PolyExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl PolyExpr {
    /// Evaluates over the given field; like terms combine and coefficients
    /// reduce into the field.
    pub fn eval(&self, tower: &FieldTower) -> Result<BivarPoly> {
        Ok(match self {
            PolyExpr::Int(n) => BivarPoly::monomial(tower, 0, 0, tower.from_bigint(n)),
            PolyExpr::X => BivarPoly::x(tower),
            PolyExpr::Y => BivarPoly::y(tower),
            PolyExpr::Neg(a) => a.eval(tower)?.neg(),
            PolyExpr::Add(a, b) => a.eval(tower)?.add(&b.eval(tower)?),
            PolyExpr::Sub(a, b) => a.eval(tower)?.sub(&b.eval(tower)?),
            PolyExpr::Mul(a, b) => a.eval(tower)?.mul(&b.eval(tower)?),
            PolyExpr::Pow(a, e) => a.eval(tower)?.pow(*e),
            PolyExpr::Div(a, b, pos) => {
                let d = b.eval(tower)?;
                if !d.is_constant() {
                    return Err(Error::Parse { pos: *pos, msg: "divisor must be a nonzero constant".into() });
                }
                a.eval(tower)?.scale(&tower.inv(&d.coeff(0, 0)))
            }
        })
    }
}

/// Parses and evaluates an expression over `F_p`, or over `Q` for `p = 0`.
pub fn parse_poly(text: &str, tower: &FieldTower) -> Result<BivarPoly> {
    parse_expr(text)?.eval(tower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let t3 = FieldTower::prime(3).unwrap();
        let f = parse_poly("x*(x-y)^2+y^7", &t3).unwrap();
        let expect = BivarPoly::from_i64s(&t3, &[((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 7), 1)]);
        assert_eq!(f, expect);
        assert_eq!(parse_poly("3*x^2+y", &t3).unwrap(), BivarPoly::y(&t3));
        let q = FieldTower::rationals();
        assert!(parse_poly("x+ x*(-1)", &q).unwrap().is_zero());
        assert_eq!(parse_poly("x/2 + x/2", &q).unwrap(), BivarPoly::x(&q));
    }

    #[test]
    fn reports_positions() {
        let q = FieldTower::rationals();
        assert_eq!(parse_poly("x + * y", &q).unwrap_err(), Error::Parse { pos: 4, msg: "unexpected character '*'".into() });
        assert!(matches!(parse_poly("x^-1", &q), Err(Error::Parse { msg, .. }) if msg == "negative exponent"));
        assert!(matches!(parse_poly("(x + y", &q), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_poly("x / y", &q), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x y", &q), Err(Error::Parse { pos: 2, .. })));
        let t3 = FieldTower::prime(3).unwrap();
        assert!(matches!(parse_poly("x/3", &t3), Err(Error::Parse { .. })));
    }

    #[test]
    fn prints_what_it_parses() {
        let q = FieldTower::rationals();
        for text in ["x^2-2*x*y+3", "-y^3+(1/2)*x", "x*y^4-x^2"] {
            let f = parse_poly(text, &q).unwrap();
            assert_eq!(parse_poly(&f.to_string(), &q).unwrap(), f);
        }
    }
}
