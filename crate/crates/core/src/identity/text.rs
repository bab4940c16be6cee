//! Text form `c1*atan(p1/q1) + c2*atan(p2/q2) + ... = pi/4`.
//!
//! Whitespace is free, `arctan` is accepted for `atan`, a missing coefficient
//! means 1 and a coefficient may carry its own sign after the joining `+`/`-`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{MachinIdentity, Term};
use crate::error::{Error, Result};
use crate::exact::Rational;

pub(super) fn parse(src: &str) -> Result<MachinIdentity> {
    let mut p = Parser { src, pos: 0 };
    let mut terms = Vec::new();
    let mut sign = p.sign();
    loop {
        terms.push(p.term(sign)?);
        p.skip_ws();
        match p.peek() {
            Some('+') | Some('-') => sign = p.sign(),
            Some('=') => break,
            Some(c) => return Err(p.error(format!("expected '+', '-' or '=', found {c:?}"))),
            None => return Err(p.error("expected '= pi/4'".into())),
        }
    }
    p.expect('=')?;
    p.keyword(&["pi"])?;
    p.expect('/')?;
    let at = p.pos;
    if p.integer()? != BigInt::from(4) {
        return Err(p.error_at(at, "right-hand side must be pi/4".into()));
    }
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected trailing {c:?}")));
    }
    MachinIdentity::new(terms)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    /// 1-based character column of a byte offset.
    fn column(&self, pos: usize) -> usize {
        self.src[..pos].chars().count() + 1
    }

    fn error_at(&self, pos: usize, message: String) -> Error {
        Error::Parse {
            column: self.column(pos),
            message,
        }
    }

    fn error(&self, message: String) -> Error {
        self.error_at(self.pos, message)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected {c:?}, found {found:?}"))),
            None => Err(self.error(format!("expected {c:?}, found end of input"))),
        }
    }

    /// Consumes any run of `+`/`-` and returns the combined sign.
    fn sign(&mut self) -> i64 {
        let mut sign = 1;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1
                }
                _ => return sign,
            }
        }
    }

    fn keyword(&mut self, words: &[&str]) -> Result<()> {
        self.skip_ws();
        for w in words {
            if self.rest().starts_with(w) {
                self.pos += w.len();
                return Ok(());
            }
        }
        Err(self.error(format!("expected {}", words.join(" or "))))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits = self.rest().chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer".into()));
        }
        let n = self.rest()[..digits].parse::<BigInt>().expect("ascii digits");
        self.pos += digits;
        Ok(n)
    }

    fn term(&mut self, outer_sign: i64) -> Result<Term> {
        let sign = outer_sign * self.sign();
        self.skip_ws();
        let coef_at = self.pos;
        let magnitude = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.integer()?;
            self.expect('*')?;
            c
        } else {
            BigInt::from(1)
        };
        let coef = (magnitude * sign)
            .to_i64()
            .ok_or_else(|| self.error_at(coef_at, "coefficient does not fit in 64 bits".into()))?;
        if coef == 0 {
            return Err(self.error_at(coef_at, "coefficient must be nonzero".into()));
        }
        self.keyword(&["arctan", "atan"])?;
        self.expect('(')?;
        self.skip_ws();
        let arg_at = self.pos;
        let num = self.integer()?;
        self.skip_ws();
        let den = if self.peek() == Some('/') {
            self.pos += 1;
            self.integer()?
        } else {
            BigInt::from(1)
        };
        let arg = Rational::new(num, den).map_err(|_| self.error_at(arg_at, "zero denominator".into()))?;
        if !arg.is_positive() {
            return Err(self.error_at(arg_at, "arctan argument must be positive".into()));
        }
        self.expect(')')?;
        Ok(Term { coef, arg })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_of(src: &str) -> usize {
        match parse(src) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected a parse error for {src:?}, got {other:?}"),
        }
    }

    #[test]
    fn accepts_loose_spelling() {
        let a = parse("4*atan(1/5)-atan(1/239)=pi/4").unwrap();
        let b = parse("  4 * arctan( 1 / 5 ) + -1*atan(1/239) =  pi / 4 ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "4*atan(1/5) - 1*atan(1/239) = pi/4");
    }

    #[test]
    fn leading_negative_term() {
        let id = parse("-1*atan(1/3) + atan(2) = pi/4").unwrap();
        assert_eq!(id.to_string(), "-1*atan(1/3) + 1*atan(2/1) = pi/4");
    }

    #[test]
    fn reports_columns() {
        assert_eq!(column_of("4*atan(1/5) - 1*atn(1/239) = pi/4"), 17);
        assert_eq!(column_of("4*atan(1/5) = pi/3"), 18);
        assert_eq!(column_of("0*atan(1/5) = pi/4"), 1);
        assert_eq!(column_of("atan(0) = pi/4"), 6);
        assert_eq!(column_of("atan(1/0) = pi/4"), 6);
        assert_eq!(column_of("atan(1/2) atan(1/3) = pi/4"), 11);
        assert_eq!(column_of("atan(1/2) + atan(1/3) = pi/4 x"), 30);
        assert_eq!(column_of("atan(1/2) + atan(1/3)"), 22);
    }
}
