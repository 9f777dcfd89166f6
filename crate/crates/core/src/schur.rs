//! Two-variable Schur polynomials and decomposition of GL2 characters.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive};

use crate::exactalg::{tu_vars, MultiPoly, Rat};
use crate::tableaux::{ModuleDecomp, Partition};
use crate::{Error, Result};

/// `S_λ(t,u) = (tu)^{l2} (t^{l1-l2} + t^{l1-l2-1}u + ... + u^{l1-l2})`.
pub fn schur_poly(shape: Partition) -> MultiPoly<Rat> {
    let k = shape.l1 - shape.l2;
    MultiPoly::from_terms(
        &tu_vars(),
        (0..=k).map(|i| ([shape.l2 + k - i, shape.l2 + i], Rat::one())),
    )
}

/// Non-negative combination `Σ m_λ S_λ`, largest first row first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurDecomp {
    terms: Vec<(Partition, u64)>,
}

impl SchurDecomp {
    pub fn terms(&self) -> &[(Partition, u64)] {
        &self.terms
    }

    pub fn multiplicity(&self, shape: Partition) -> u64 {
        self.terms
            .iter()
            .find(|(p, _)| *p == shape)
            .map_or(0, |(_, m)| *m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ m_λ S_λ` as a polynomial.
    pub fn reconstruct(&self) -> MultiPoly<Rat> {
        self.terms
            .iter()
            .fold(MultiPoly::zero(&tu_vars()), |acc, (p, m)| {
                acc.plus(&schur_poly(*p).scale(&Rat::from_integer((*m).into())))
            })
    }

    pub fn to_modules(&self) -> ModuleDecomp {
        let mut d = ModuleDecomp::new();
        for (p, m) in &self.terms {
            d.add(*p, *m as u32);
        }
        d
    }
}

/// Renders as `4*S(8,0) + 2*S(7,1)`; multiplicity 1 is omitted.
impl fmt::Display for SchurDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, m)| match m {
                1 => format!("S({},{})", p.l1, p.l2),
                _ => format!("{m}*S({},{})", p.l1, p.l2),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Writes a symmetric homogeneous polynomial in `t, u` as a non-negative
/// integer combination of Schur polynomials.
///
/// Peels off `c·S_(a,b)` for the term `t^a u^b` with the largest `a`,
/// which is exact for two variables.
pub fn schur_decompose(p: &MultiPoly<Rat>) -> Result<SchurDecomp> {
    let vars = tu_vars();
    let p = p.embed(&vars);
    if vars.len() != 2 || p.vars().len() != 2 {
        return Err(Error::Invalid("expected a polynomial in t,u only".into()));
    }
    if p.is_zero() {
        return Ok(SchurDecomp::default());
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    for (m, c) in p.terms() {
        if p.coeff(&[m.exponent(1), m.exponent(0)]) != Some(c) {
            return Err(Error::NotSymmetric);
        }
    }
    let mut rest = p;
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let (m, c) = rest
            .terms()
            .max_by_key(|(m, _)| m.exponent(0))
            .map(|(m, c)| (*m, c.clone()))
            .expect("nonzero");
        let (a, b) = (m.exponent(0), m.exponent(1));
        let integral = c.is_integer() && c.is_positive();
        if a < b || !integral {
            return Err(Error::NotSchurPositive {
                t_exp: a,
                u_exp: b,
                coefficient: c.to_string(),
            });
        }
        let mult = c
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Invalid("multiplicity too large".into()))?;
        let shape = Partition::new(a, b)?;
        rest = rest.minus(&schur_poly(shape).scale(&c));
        terms.push((shape, mult));
    }
    Ok(SchurDecomp { terms })
}

/// Parses a polynomial in `t, u` such as `t^2 + t*u + u^2` or
/// `(t + u)^4 - 2*t^2*u^2`. Coefficients may be fractions `a/b`.
pub fn parse_tu_poly(text: &str) -> Result<MultiPoly<Rat>> {
    let mut p = TuParser {
        s: text.as_bytes(),
        pos: 0,
    };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct TuParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl TuParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .s
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "expected an integer".into(),
            })
    }

    fn sum(&mut self) -> Result<MultiPoly<Rat>> {
        let mut acc = MultiPoly::zero(&tu_vars());
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign > 0 {
                acc.plus(&t)
            } else {
                acc.minus(&t)
            };
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<MultiPoly<Rat>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b't' | b'u' | b'(' | b'0'..=b'9') => {}
                _ => return Ok(acc),
            }
            acc = acc.times(&self.power()?);
        }
    }

    fn power(&mut self) -> Result<MultiPoly<Rat>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow_rat(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<Rat>> {
        let v = tu_vars();
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(MultiPoly::rat_var(&v, "t"))
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(MultiPoly::rat_var(&v, "u"))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let num = self.integer()?;
                let mut c = Rat::from_integer(num.into());
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    c /= Rat::from_integer(den.into());
                }
                Ok(MultiPoly::constant(&v, c))
            }
            _ => Err(self.err("expected t, u, a number or `(`")),
        }
    }
}
