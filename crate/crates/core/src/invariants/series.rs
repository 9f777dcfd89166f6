use serde::Serialize;

use crate::exactalg::{
    series_divide, series_expand_product, tu_vars, BiSeries, MultiPoly, Rat, SeriesFactor,
};
use crate::schur::{schur_decompose, SchurDecomp};
use crate::tableaux::Partition;
use crate::words::u_n_hilbert;
use crate::{Error, Result};

/// Largest truncation degree accepted by the series functions.
pub const MAX_SERIES_DEGREE: u32 = 20;

/// Which algebra a [`SeriesReport`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesId {
    /// The full pure trace algebra of two generic 4×4 matrices.
    C42,
    /// Its traceless part.
    C0,
    /// The polynomial algebra on a generating module.
    KM,
    /// The sum of the formal trace spaces `U_1 .. U_D`.
    UnSum,
}

impl std::str::FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c42" => Ok(SeriesId::C42),
            "c0" => Ok(SeriesId::C0),
            "km" => Ok(SeriesId::KM),
            "unsum" | "un" => Ok(SeriesId::UnSum),
            _ => Err(Error::Invalid(format!(
                "unknown series `{s}` (expected c42, c0, km or unsum)"
            ))),
        }
    }
}

/// A truncated bivariate series with the Schur decomposition of each
/// homogeneous component.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub id: SeriesId,
    pub series: BiSeries,
    pub components: Vec<(u32, SchurDecomp)>,
}

impl SeriesReport {
    fn new(id: SeriesId, series: BiSeries) -> Result<Self> {
        let components = (0..=series.bound())
            .map(|n| Ok((n, schur_decompose(&series.component(n))?)))
            .collect::<Result<_>>()?;
        Ok(SeriesReport {
            id,
            series,
            components,
        })
    }

    pub fn degree(&self) -> u32 {
        self.series.bound()
    }

    pub fn component(&self, n: u32) -> &SchurDecomp {
        &self.components[n as usize].1
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d > MAX_SERIES_DEGREE {
        return Err(Error::Invalid(format!(
            "degree bound {d} exceeds {MAX_SERIES_DEGREE}"
        )));
    }
    Ok(())
}

fn tu(a: u32, b: u32, c: i64) -> ([u32; 2], Rat) {
    ([a, b], Rat::from_integer(c.into()))
}

/// Numerator of the Hilbert series of the traceless algebra, written in
/// `e1 = t + u` and `e2 = tu`:
/// `(1 - e2 + e2^2)(1 - e1 e2 + e1 e2^2 + e1^2 e2^2 + e1 e2^3 - e1 e2^4 + e2^6)`.
pub fn numerator_c0() -> MultiPoly<Rat> {
    let v = tu_vars();
    let e1 = MultiPoly::from_terms(&v, [tu(1, 0, 1), tu(0, 1, 1)]);
    let e2 = MultiPoly::from_terms(&v, [tu(1, 1, 1)]);
    let one = MultiPoly::one(&v);
    let p =
        |a: &MultiPoly<Rat>, i: u32, b: &MultiPoly<Rat>, j: u32| a.pow_rat(i).times(&b.pow_rat(j));
    let first = one.minus(&e2).plus(&e2.pow_rat(2));
    let second = one
        .minus(&p(&e1, 1, &e2, 1))
        .plus(&p(&e1, 1, &e2, 2))
        .plus(&p(&e1, 2, &e2, 2))
        .plus(&p(&e1, 1, &e2, 3))
        .minus(&p(&e1, 1, &e2, 4))
        .plus(&e2.pow_rat(6));
    first.times(&second)
}

/// Denominator factors of the Hilbert series of the traceless algebra.
pub fn denominator_c0() -> Vec<SeriesFactor> {
    [
        (2, 0, 1),
        (3, 0, 1),
        (4, 0, 1),
        (0, 2, 1),
        (0, 3, 1),
        (0, 4, 1),
        (1, 1, 2),
        (2, 1, 2),
        (1, 2, 2),
        (3, 1, 1),
        (1, 3, 1),
        (2, 2, 1),
    ]
    .into_iter()
    .map(SeriesFactor::from)
    .collect()
}

/// Hilbert series of the traceless algebra `C0`, components `0..=d`.
pub fn hilbert_c0(d: u32) -> Result<SeriesReport> {
    check_degree(d)?;
    SeriesReport::new(
        SeriesId::C0,
        series_divide(&numerator_c0(), &denominator_c0(), d)?,
    )
}

/// Hilbert series of the full algebra: the traceless one times
/// `1 / ((1 - t)(1 - u))` for `tr(X)` and `tr(Y)`.
pub fn hilbert_c42(d: u32) -> Result<SeriesReport> {
    check_degree(d)?;
    let mut den = denominator_c0();
    den.push(SeriesFactor::new(1, 0, 1));
    den.push(SeriesFactor::new(0, 1, 1));
    SeriesReport::new(SeriesId::C42, series_divide(&numerator_c0(), &den, d)?)
}

/// One `(1 - t^p u^q)` per weight monomial of each module `W(λ)`, that is
/// `q = λ2 ..= λ1` with `p = |λ| - q`.
pub fn module_factors(generators: &[Partition]) -> Vec<SeriesFactor> {
    let mut out: Vec<SeriesFactor> = Vec::new();
    for g in generators {
        for q in g.l2..=g.l1 {
            let p = g.degree() - q;
            match out.iter_mut().find(|f| f.t_exp == p && f.u_exp == q) {
                Some(f) => f.mult += 1,
                None => out.push(SeriesFactor::new(p, q, 1)),
            }
        }
    }
    out
}

/// Hilbert series of the polynomial algebra on `⊕ W(λ)`. Degree-one modules
/// belong to the separate `tr(X), tr(Y)` factor and are rejected.
pub fn hilbert_km(generators: &[Partition], d: u32) -> Result<SeriesReport> {
    check_degree(d)?;
    if let Some(g) = generators.iter().find(|g| g.degree() < 2) {
        return Err(Error::Invalid(format!(
            "generator ({},{}) has degree below 2",
            g.l1, g.l2
        )));
    }
    SeriesReport::new(
        SeriesId::KM,
        series_expand_product(&module_factors(generators), d)?,
    )
}

/// Hilbert series of `U_1 ⊕ .. ⊕ U_d`.
pub fn hilbert_un(d: u32) -> Result<SeriesReport> {
    check_degree(d)?;
    let sum = (1..=d).fold(MultiPoly::zero(&tu_vars()), |acc, n| {
        acc.plus(&u_n_hilbert(n))
    });
    SeriesReport::new(SeriesId::UnSum, BiSeries::from_poly(&sum, d))
}

/// Dispatch on a [`SeriesId`]; `KM` uses the theorem's module list.
pub fn hilbert(id: SeriesId, d: u32) -> Result<SeriesReport> {
    match id {
        SeriesId::C42 => hilbert_c42(d),
        SeriesId::C0 => hilbert_c0(d),
        SeriesId::KM => hilbert_km(&super::theorem_modules_c0(), d),
        SeriesId::UnSum => hilbert_un(d),
    }
}

/// Per-degree decomposition of `H(K[M]) - H(C0)`, the character of the
/// kernel of `K[M] -> C0`. Errors if some component is not Schur positive.
pub fn relation_character(generators: &[Partition], d: u32) -> Result<Vec<(u32, SchurDecomp)>> {
    let km = hilbert_km(generators, d)?;
    let c0 = hilbert_c0(d)?;
    let diff = km.series.sub(&c0.series);
    (0..=d)
        .map(|n| Ok((n, schur_decompose(&diff.component(n))?)))
        .collect()
}
