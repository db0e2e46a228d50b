//! Parser for the canonical rational-function grammar.
//!
//! Integer literals, variables `a1..a6`, `e1`, `e2`, the operators
//! `+ - * / ^` (exponents are nonnegative integer literals) and parentheses.
//! Anything [`RationalFunction`]'s `Display` prints parses back to the same
//! value.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfunc::RationalFunction;
use super::vars::Var;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[start..i].iter().collect();
            out.push(Tok::Int(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Name(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<C: Field>(&mut self) -> Result<RationalFunction<C>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Field>(&mut self) -> Result<RationalFunction<C>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<C: Field>(&mut self) -> Result<RationalFunction<C>> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power<C: Field>(&mut self) -> Result<RationalFunction<C>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse(
                    "`^` must be followed by a nonnegative integer literal".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<C: Field>(&mut self) -> Result<RationalFunction<C>> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RationalFunction::constant(C::from_rational(
                    &BigRational::from_integer(n),
                )))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                Ok(RationalFunction::var(Var::parse(&name)?))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

pub fn parse_rf<C: Field>(s: &str) -> Result<RationalFunction<C>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::{One, Zero};

    type R = RationalFunction<BigRational>;

    #[test]
    fn parses_and_normalizes() {
        let x: R = parse_rf("(e1^2 - e2^2)/(e1 - e2)").unwrap();
        assert_eq!(x, parse_rf("e1 + e2").unwrap());
        assert_eq!(x.to_string(), "(e1 + e2)/(1)");
    }

    #[test]
    fn precedence() {
        let x: R = parse_rf("-a1^2 + 2*a1*e1/4").unwrap();
        assert_eq!(x.to_string(), "(-2*a1^2 + a1*e1)/(2)");
        let c: R = parse_rf("1/2*e2").unwrap();
        assert_eq!(c, R::var(Var::E2) * R::constant(rat(1, 2)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rf::<BigRational>("a1 +").is_err());
        assert!(parse_rf::<BigRational>("x1").is_err());
        assert!(parse_rf::<BigRational>("a1^e1").is_err());
        assert!(parse_rf::<BigRational>("1/(e1 - e1)").is_err());
        assert!(parse_rf::<BigRational>("(a1").is_err());
        assert!(parse_rf::<BigRational>("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["(a1 - a2 - e1 - e2)/(e1*e2)", "(-1)/(2*e1)", "(0)/(1)", "(3*a1^2*e2 - 1/5)/(a2 + 7)"] {
            let x: R = parse_rf(s).unwrap();
            let y: R = parse_rf(&x.to_string()).unwrap();
            assert_eq!(x, y);
        }
        let z: R = parse_rf("0").unwrap();
        assert!(z.is_zero());
        assert!(R::one().is_one());
    }
}
