use num_bigint::BigInt;
use num_traits::One;

use crate::exactalg::Rat;
use crate::words::Letter;
use crate::{Error, Result};

use super::ast::{Expr, Nc};

/// Parses a trace expression.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses the noncommutative expression that goes inside `tr(...)`.
pub fn parse_nc(text: &str) -> Result<Nc> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.nc()?;
    p.finish()?;
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
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
            match self.peek() {
                Some(found) => self.err(format!(
                    "expected '{}', found '{}'",
                    c as char, found as char
                )),
                None => self.err(format!("expected '{}' before end of input", c as char)),
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer()?;
            if den == BigInt::from(0) {
                self.pos = at;
                return self.err("zero denominator");
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let e = self.integer()?;
        let e: u32 = match e.try_into() {
            Ok(v) => v,
            Err(_) => {
                self.pos = at;
                return self.err("exponent too large");
            }
        };
        if e == 0 {
            self.pos = at;
            return self.err("exponent must be positive");
        }
        Ok(e)
    }

    fn leading_sign(&mut self) -> Option<Rat> {
        if self.eat(b'+') {
            Some(Rat::one())
        } else if self.eat(b'-') {
            Some(-Rat::one())
        } else {
            None
        }
    }

    fn starts_primary(&mut self) -> bool {
        matches!(self.peek(), Some(b't' | b'(' | b'0'..=b'9'))
    }

    fn expr(&mut self) -> Result<Expr> {
        let first_sign = self.leading_sign();
        let mut terms = vec![(first_sign.clone().unwrap_or_else(Rat::one), self.term()?)];
        loop {
            let sign = if self.eat(b'+') {
                Rat::one()
            } else if self.eat(b'-') {
                -Rat::one()
            } else {
                break;
            };
            terms.push((sign, self.term()?));
        }
        if terms.len() == 1 && first_sign.is_none() {
            let (_, factors) = terms.pop().expect("one term");
            return Ok(product(factors.into_iter().map(|(f, _)| f).collect()));
        }
        Ok(Expr::Sum(
            terms
                .into_iter()
                .map(|(sign, mut factors)| {
                    if factors.len() > 1 && factors[0].1 {
                        let Expr::Const(c) = factors.remove(0).0 else {
                            unreachable!()
                        };
                        (
                            sign * c,
                            product(factors.into_iter().map(|(f, _)| f).collect()),
                        )
                    } else {
                        (sign, product(factors.into_iter().map(|(f, _)| f).collect()))
                    }
                })
                .collect(),
        ))
    }

    /// Factors of a term, each flagged when it is a bare numeric literal.
    fn term(&mut self) -> Result<Vec<(Expr, bool)>> {
        let mut factors = vec![self.factor()?];
        loop {
            // juxtaposition multiplies, like an explicit `*`
            if self.eat(b'*') || self.starts_primary() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<(Expr, bool)> {
        let (mut base, mut literal) = self.primary()?;
        while self.eat(b'^') {
            base = Expr::Power(Box::new(base), self.exponent()?);
            literal = false;
        }
        Ok((base, literal))
    }

    fn primary(&mut self) -> Result<(Expr, bool)> {
        match self.peek() {
            Some(b't') => {
                if !self.s[self.pos..].starts_with(b"tr") {
                    return self.err("expected 'tr'");
                }
                self.pos += 2;
                self.expect(b'(')?;
                let nc = self.nc()?;
                self.expect(b')')?;
                Ok((Expr::Trace(nc), false))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok((e, false))
            }
            Some(b'0'..=b'9') => Ok((Expr::Const(self.rational()?), true)),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn nc(&mut self) -> Result<Nc> {
        let first_sign = self.leading_sign();
        let mut terms = vec![self.nc_term(first_sign.clone().unwrap_or_else(Rat::one))?];
        loop {
            let sign = if self.eat(b'+') {
                Rat::one()
            } else if self.eat(b'-') {
                -Rat::one()
            } else {
                break;
            };
            terms.push(self.nc_term(sign)?);
        }
        if terms.len() == 1 && first_sign.is_none() && terms[0].0.is_one() {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Nc::Sum(terms))
    }

    fn nc_term(&mut self, sign: Rat) -> Result<(Rat, Nc)> {
        let mut coeff = sign;
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff *= self.rational()?;
            self.eat(b'*');
        }
        let mut factors = vec![self.nc_factor()?];
        loop {
            if self.eat(b'*') || matches!(self.peek(), Some(b'x' | b'y' | b'[' | b'(')) {
                factors.push(self.nc_factor()?);
            } else {
                break;
            }
        }
        let body = if factors.len() == 1 {
            factors.pop().expect("one")
        } else {
            Nc::Product(factors)
        };
        Ok((coeff, body))
    }

    fn nc_factor(&mut self) -> Result<Nc> {
        let mut base = self.nc_atom()?;
        while self.eat(b'^') {
            base = Nc::Power(Box::new(base), self.exponent()?);
        }
        Ok(base)
    }

    fn nc_atom(&mut self) -> Result<Nc> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Nc::Letter(Letter::X))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Nc::Letter(Letter::Y))
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.nc()?;
                self.expect(b',')?;
                let b = self.nc()?;
                self.expect(b']')?;
                Ok(Nc::Bracket(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.nc()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) => self.err(format!("unexpected '{}' inside a trace", c as char)),
            None => self.err("unexpected end of input inside a trace"),
        }
    }
}

fn product(mut factors: Vec<Expr>) -> Expr {
    if factors.len() == 1 {
        factors.pop().expect("one factor")
    } else {
        Expr::Product(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::exprlang::PurePoly;
    use crate::words::{expand_55_generator, expand_bracket_power, TracePoly};

    fn tr(s: &str) -> Expr {
        Expr::Trace(parse_nc(s).unwrap())
    }

    #[test]
    fn difference_of_traces() {
        let e = parse("tr(x^2*y^2) - tr(x*y*x*y)").unwrap();
        assert_eq!(
            e,
            Expr::Sum(vec![
                (rat(1, 1), tr("x^2*y^2")),
                (rat(-1, 1), tr("x*y*x*y"))
            ])
        );
    }

    #[test]
    fn product_and_power() {
        let e = parse("tr(x^3)*tr(x*y^2) - tr(x^2*y)^2").unwrap();
        let Expr::Sum(ts) = &e else { panic!("{e:?}") };
        assert_eq!(ts[0].1, Expr::Product(vec![tr("x^3"), tr("x*y^2")]));
        assert_eq!(ts[1], (rat(-1, 1), Expr::Power(Box::new(tr("x^2*y")), 2)));
    }

    #[test]
    fn half_coefficient() {
        let e = parse("1/2*tr([x,y]^2)*tr(x^2)").unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![Expr::Const(rat(1, 2)), tr("[x,y]^2"), tr("x^2")])
        );
        let p = e.to_pure().unwrap();
        let expect = PurePoly::from_trace(&expand_bracket_power(2, 0))
            .times(&PurePoly::from_trace(&TracePoly::trace_of("xx").unwrap()))
            .scale(&rat(1, 2));
        assert_eq!(p, expect);
    }

    #[test]
    fn juxtaposition_means_product() {
        assert_eq!(
            parse("tr(x^3)tr(xy^2)").unwrap(),
            parse("tr(x^3)*tr(x*y^2)").unwrap()
        );
    }

    #[test]
    fn generator_55_text() {
        let e = parse("tr([x,y]^3(x^2y^2 - xy^2x - yx^2y + y^2x^2))").unwrap();
        assert_eq!(
            e.to_pure().unwrap(),
            PurePoly::from_trace(&expand_55_generator())
        );
    }

    #[test]
    fn errors_have_positions() {
        assert!(matches!(parse("tr(x^0)"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse("tr(x*y"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse("tr([x,y)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("tr(x))"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse("tr(z)"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn printing() {
        assert_eq!(tr("x^2y^2").to_string(), "tr(x^2*y^2)");
        let v2 = parse("1/2*(tr(x^2y^2xy) - tr(y^2x^2yx))").unwrap();
        assert_eq!(v2.to_string(), "1/2*(tr(x^2*y^2*x*y) - tr(y^2*x^2*y*x))");
        assert_eq!(parse(&v2.to_string()).unwrap(), v2);
    }
}
