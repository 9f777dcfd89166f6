//! Exact arithmetic: big rationals, prime-field elements, sparse multivariate
//! polynomials, truncated bivariate power series and linear algebra.

mod field;
mod matrix;
mod poly;
mod series;

pub use field::{rat, Coeff, FieldElem, Fp, ModP, Rat, DEFAULT_PRIMES};
pub use matrix::{rank_nullspace, FpMatrix, Matrix, QMatrix};
pub use poly::{Monomial, MultiPoly, VarSet, MAX_VARS};
pub use series::{series_divide, series_expand_product, tu_vars, BiSeries, SeriesFactor};
