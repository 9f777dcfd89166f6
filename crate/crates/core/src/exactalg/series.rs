use num_traits::{One, Zero};

use super::field::Rat;
use super::poly::{Monomial, MultiPoly, VarSet};
use crate::{Error, Result};

pub fn tu_vars() -> VarSet {
    VarSet::new(["t", "u"])
}

/// The factor `(1 - t^a u^b)^mult` of a denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesFactor {
    pub t_exp: u32,
    pub u_exp: u32,
    pub mult: u32,
}

impl SeriesFactor {
    pub const fn new(t_exp: u32, u_exp: u32, mult: u32) -> Self {
        SeriesFactor { t_exp, u_exp, mult }
    }

    /// `(1 - t^a u^b)^mult` as a polynomial.
    pub fn expanded(&self) -> MultiPoly<Rat> {
        let v = tu_vars();
        let base = MultiPoly::from_terms(
            &v,
            [
                ([0, 0], Rat::one()),
                ([self.t_exp, self.u_exp], -Rat::one()),
            ],
        );
        base.pow_rat(self.mult)
    }
}

impl From<(u32, u32, u32)> for SeriesFactor {
    fn from((a, b, m): (u32, u32, u32)) -> Self {
        SeriesFactor::new(a, b, m)
    }
}

/// Power series in `t, u` truncated above total degree `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    bound: u32,
    poly: MultiPoly<Rat>,
}

impl BiSeries {
    pub fn from_poly(poly: &MultiPoly<Rat>, bound: u32) -> Self {
        BiSeries {
            bound,
            poly: poly.embed(&tu_vars()).truncate(bound),
        }
    }

    pub fn one(bound: u32) -> Self {
        Self::from_poly(&MultiPoly::one(&tu_vars()), bound)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn poly(&self) -> &MultiPoly<Rat> {
        &self.poly
    }

    pub fn coeff(&self, t_exp: u32, u_exp: u32) -> Rat {
        self.poly
            .coeff(&[t_exp, u_exp])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Homogeneous component of degree `n`; `n` must not exceed the bound.
    pub fn component(&self, n: u32) -> MultiPoly<Rat> {
        assert!(
            n <= self.bound,
            "component {n} beyond truncation bound {}",
            self.bound
        );
        self.poly.component(n)
    }

    fn common_bound(&self, o: &Self) -> u32 {
        self.bound.min(o.bound)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.common_bound(o);
        let a = self.poly.truncate(d);
        let b = o.poly.truncate(d);
        BiSeries {
            bound: d,
            poly: a.times(&b).truncate(d),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.common_bound(o);
        BiSeries {
            bound: d,
            poly: self.poly.plus(&o.poly).truncate(d),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let d = self.common_bound(o);
        BiSeries {
            bound: d,
            poly: self.poly.minus(&o.poly).truncate(d),
        }
    }

    /// Multiplies by `1 / (1 - t^a u^b)`: every coefficient absorbs the one
    /// `(a, b)` below it, which is the product with the geometric series
    /// `1 + t^a u^b + t^2a u^2b + ...`.
    fn divide_by_binomial(&self, a: u32, b: u32) -> Self {
        let d = self.bound as usize;
        let mut grid = vec![vec![Rat::zero(); d + 1]; d + 1];
        for (m, c) in self.poly.terms() {
            grid[m.exponent(0) as usize][m.exponent(1) as usize] = c.clone();
        }
        let (a, b) = (a as usize, b as usize);
        for deg in 0..=d {
            for i in 0..=deg {
                let j = deg - i;
                if i >= a && j >= b {
                    let prev = grid[i - a][j - b].clone();
                    if !prev.is_zero() {
                        grid[i][j] += prev;
                    }
                }
            }
        }
        let mut poly = MultiPoly::zero(&tu_vars());
        for (i, row) in grid.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                if i + j <= d && !c.is_zero() {
                    poly.add_term(Monomial::from_exponents(&[i as u32, j as u32]), c);
                }
            }
        }
        BiSeries {
            bound: self.bound,
            poly,
        }
    }
}

/// Expands `∏ (1 - t^a u^b)^(-mult)` to total degree `bound`.
pub fn series_expand_product(factors: &[SeriesFactor], bound: u32) -> Result<BiSeries> {
    let mut s = BiSeries::one(bound);
    for f in factors {
        if f.t_exp == 0 && f.u_exp == 0 {
            return Err(Error::ConstantFactor);
        }
        for _ in 0..f.mult {
            s = s.divide_by_binomial(f.t_exp, f.u_exp);
        }
    }
    Ok(s)
}

/// Truncated quotient `num / ∏ (1 - t^a u^b)^mult`.
pub fn series_divide(num: &MultiPoly<Rat>, den: &[SeriesFactor], bound: u32) -> Result<BiSeries> {
    let inv = series_expand_product(den, bound)?;
    Ok(BiSeries::from_poly(num, bound).mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn geometric_in_t() {
        let s = series_expand_product(&[SeriesFactor::new(1, 0, 1)], 3).unwrap();
        let expected = MultiPoly::from_terms(&tu_vars(), (0..=3).map(|k| ([k, 0], rat(1, 1))));
        assert_eq!(s.poly(), &expected);
    }

    #[test]
    fn product_of_two_geometric_series() {
        let s = series_expand_product(&[(1, 0, 1).into(), (0, 1, 1).into()], 2).unwrap();
        assert_eq!(s.coeff(1, 1), rat(1, 1));
        assert_eq!(s.coeff(2, 0), rat(1, 1));
        assert_eq!(s.poly().num_terms(), 6);
    }

    #[test]
    fn constant_factor_rejected() {
        assert_eq!(
            series_expand_product(&[(0, 0, 1).into()], 4),
            Err(Error::ConstantFactor)
        );
    }

    #[test]
    fn divide_one_by_one_minus_t() {
        let s = series_divide(&MultiPoly::one(&tu_vars()), &[(1, 0, 1).into()], 2).unwrap();
        assert_eq!(s.poly().to_string(), "t^2 + t + 1");
    }

    #[test]
    fn inverse_times_denominator_is_one() {
        let factors: Vec<SeriesFactor> = vec![
            (2, 0, 1).into(),
            (1, 1, 2).into(),
            (3, 1, 1).into(),
            (0, 2, 3).into(),
        ];
        let d = 9;
        let inv = series_expand_product(&factors, d).unwrap();
        let den = factors.iter().fold(MultiPoly::one(&tu_vars()), |acc, f| {
            acc.times(&f.expanded())
        });
        let prod = inv.poly().times(&den).truncate(d);
        assert_eq!(prod, MultiPoly::one(&tu_vars()));
    }
}
