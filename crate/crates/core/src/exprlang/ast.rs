use std::fmt;

use num_traits::{One, Signed};

use crate::exactalg::Rat;
use crate::words::{Letter, NcPoly};
use crate::Result;

use super::pure::PurePoly;

/// Noncommutative expression inside a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nc {
    Letter(Letter),
    /// Commutator `[a,b] = ab - ba`.
    Bracket(Box<Nc>, Box<Nc>),
    Power(Box<Nc>, u32),
    Product(Vec<Nc>),
    Sum(Vec<(Rat, Nc)>),
}

/// Polynomial in traces: the language of relation records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rat),
    Trace(Nc),
    Power(Box<Expr>, u32),
    Product(Vec<Expr>),
    Sum(Vec<(Rat, Expr)>),
}

impl Nc {
    pub fn to_ncpoly(&self) -> NcPoly {
        match self {
            Nc::Letter(l) => NcPoly::letter(*l),
            Nc::Bracket(a, b) => NcPoly::bracket(&a.to_ncpoly(), &b.to_ncpoly()),
            Nc::Power(b, e) => b.to_ncpoly().pow(*e),
            Nc::Product(fs) => fs
                .iter()
                .fold(NcPoly::one(), |acc, f| acc.times(&f.to_ncpoly())),
            Nc::Sum(ts) => ts.iter().fold(NcPoly::zero(), |acc, (c, t)| {
                acc.plus(&t.to_ncpoly().scale(c))
            }),
        }
    }
}

impl Expr {
    pub fn constant(c: Rat) -> Self {
        Expr::Const(c)
    }

    /// Expands into a polynomial in traces of cyclic words.
    pub fn to_pure(&self) -> Result<PurePoly> {
        Ok(match self {
            Expr::Const(c) => PurePoly::constant(c.clone()),
            Expr::Trace(nc) => PurePoly::from_trace(&nc.to_ncpoly().try_trace()?),
            Expr::Power(b, e) => b.to_pure()?.pow(*e),
            Expr::Product(fs) => {
                let mut acc = PurePoly::one();
                for f in fs {
                    acc = acc.times(&f.to_pure()?);
                }
                acc
            }
            Expr::Sum(ts) => {
                let mut acc = PurePoly::zero();
                for (c, t) in ts {
                    acc = acc.plus(&t.to_pure()?.scale(c));
                }
                acc
            }
        })
    }
}

fn write_sum<T>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Rat, T)],
    body: impl Fn(&mut fmt::Formatter<'_>, &T, bool) -> fmt::Result,
) -> fmt::Result {
    for (i, (c, t)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, true) => write!(f, "-")?,
            // a lone term carries an explicit sign so it reads back as a sum
            (0, false) if terms.len() == 1 => write!(f, "+")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if mag.is_one() {
            body(f, t, true)?;
        } else {
            write!(f, "{mag}*")?;
            body(f, t, false)?;
        }
    }
    Ok(())
}

impl Nc {
    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nc::Product(_) | Nc::Sum(_) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }

    fn fmt_base(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nc::Letter(_) | Nc::Bracket(..) | Nc::Power(..) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Nc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nc::Letter(l) => write!(f, "{}", l.as_char()),
            Nc::Bracket(a, b) => write!(f, "[{a},{b}]"),
            Nc::Power(b, e) => {
                b.fmt_base(f)?;
                write!(f, "^{e}")
            }
            Nc::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    x.fmt_factor(f)?;
                }
                Ok(())
            }
            Nc::Sum(ts) => write_sum(f, ts, |f, t, _| match t {
                Nc::Sum(_) => write!(f, "({t})"),
                _ => write!(f, "{t}"),
            }),
        }
    }
}

impl Expr {
    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Product(_) | Expr::Sum(_) => write!(f, "({self})"),
            Expr::Const(c) if c.is_negative() => write!(f, "({c})"),
            _ => write!(f, "{self}"),
        }
    }

    fn fmt_base(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Trace(_) | Expr::Power(..) => write!(f, "{self}"),
            Expr::Const(c) if c.is_integer() && !c.is_negative() => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }

    fn starts_with_const(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Product(fs) => matches!(fs.first(), Some(Expr::Const(_))),
            _ => false,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Trace(nc) => write!(f, "tr({nc})"),
            Expr::Power(b, e) => {
                b.fmt_base(f)?;
                write!(f, "^{e}")
            }
            Expr::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    x.fmt_factor(f)?;
                }
                Ok(())
            }
            Expr::Sum(ts) => write_sum(f, ts, |f, t, unit| {
                // a leading number would be read back as the coefficient
                if unit && t.starts_with_const() {
                    write!(f, "1*")?;
                }
                match t {
                    Expr::Sum(_) => write!(f, "({t})"),
                    Expr::Const(c) if c.is_negative() => write!(f, "({c})"),
                    _ => write!(f, "{t}"),
                }
            }),
        }
    }
}
