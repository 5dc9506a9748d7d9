use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CycloNumber, RadicalValue};
use crate::error::{Error, Result};

/// Grammar of the rendered values:
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := unary (('*' | '/') unary)*
/// unary  := '-' unary | atom
/// atom   := integer | 'i' | 'zeta' N ('^' k)? | 'sqrt(' integer ')' | '(' expr ')'
/// ```
///
/// Division is by nonzero rationals only.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn err(src: &str, msg: impl Into<String>) -> Error {
    Error::Serialization(format!("cannot parse `{src}`: {}", msg.into()))
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits: String = self.src[self.pos..].chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(err(self.src, format!("expected an integer at offset {}", self.pos)));
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<u64> {
        let v = self.integer()?;
        u64::try_from(v).map_err(|_| err(self.src, "index too large"))
    }

    fn expr(&mut self) -> Result<RadicalValue> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = &acc + &self.term()?;
            } else if self.eat("-") {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RadicalValue> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = &acc * &self.unary()?;
            } else if self.eat("/") {
                let d = self.unary()?;
                let q = d.as_rational().filter(|q| *q != BigRational::from_integer(0.into()));
                let q = q.ok_or_else(|| err(self.src, "divisor must be a nonzero rational"))?;
                acc = acc.scale_rational(&q.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RadicalValue> {
        if self.eat("-") {
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<RadicalValue> {
        if self.eat("(") {
            let v = self.expr()?;
            if !self.eat(")") {
                return Err(err(self.src, "missing `)`"));
            }
            return Ok(v);
        }
        if self.eat("sqrt(") {
            let r = self.small()?;
            if !self.eat(")") {
                return Err(err(self.src, "missing `)` after sqrt"));
            }
            return Ok(RadicalValue::sqrt(r));
        }
        if self.eat("zeta") {
            let n = self.small()?;
            if n == 0 || n > u32::MAX as u64 {
                return Err(err(self.src, "bad root-of-unity order"));
            }
            let k = if self.eat("^") { self.small()? } else { 1 };
            return Ok(CycloNumber::zeta_power(n as u32, k as i64).into());
        }
        if self.eat("i") {
            return Ok(RadicalValue::i());
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(RadicalValue::rational(BigRational::from_integer(self.integer()?))),
            _ => Err(err(self.src, format!("unexpected input at offset {}", self.pos))),
        }
    }
}

impl FromStr for RadicalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(err(s, format!("trailing input at offset {}", p.pos)));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rendered_forms() {
        let cases = [
            ("0", RadicalValue::zero()),
            ("-i", -&RadicalValue::i()),
            ("2*sqrt(15)", RadicalValue::sqrt(15).scale_rational(&q(2, 1))),
            ("(1/2)*sqrt(2)", RadicalValue::sqrt(2).scale_rational(&q(1, 2))),
            ("-1/3 + sqrt(2)", &RadicalValue::rational(q(-1, 3)) + &RadicalValue::sqrt(2)),
            ("-1 - zeta3", RadicalValue::from_cyclo(CycloNumber::zeta_power(3, 2))),
        ];
        for (text, want) in cases {
            assert_eq!(text.parse::<RadicalValue>().unwrap(), want, "{text}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "2*", "sqrt(2", "zeta0", "1/0", "x", "1 2"] {
            assert!(bad.parse::<RadicalValue>().is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn display_round_trips(
            a in -20i64..20, b in 1i64..9, k in 0i64..12, r in 1u64..40, n in prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]),
        ) {
            let c = &CycloNumber::from_terms(n, &[(k, a.into(), b.into())]).unwrap() + &CycloNumber::integer(n, 1);
            let v = &RadicalValue::term(r, c.clone()) + &RadicalValue::from_cyclo(c.conj());
            let text = v.to_string();
            prop_assert_eq!(text.parse::<RadicalValue>().unwrap(), v, "{}", text);
        }
    }
}
