use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{denominator_lcm, Coeff, FieldElem, Fp, ModP, Rat};
use crate::Result;

/// Dense rectangular matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type QMatrix = Matrix<Rat>;
pub type FpMatrix = Matrix<Fp>;

impl<F: Coeff> Matrix<F> {
    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self * v`.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = v
                    .first()
                    .map(|x| x.zero_like())
                    .unwrap_or_else(|| panic!("empty vector"));
                for (a, b) in row.iter().zip(v) {
                    acc.add_assign_coeff(&a.times(b));
                }
                acc
            })
            .collect()
    }
}

impl<F: FieldElem> Matrix<F> {
    /// Reduced row echelon form by plain Gaussian elimination; returns the
    /// pivot columns alongside.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m: Vec<Vec<F>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero_coeff()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot is invertible");
            for x in m[r][c..].iter_mut() {
                *x = x.times(&inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero_coeff() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.minus(&f.times(y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows(self.cols, m), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical nullspace basis read off the reduced echelon form: one
    /// vector per free column, with a 1 in that column.
    /// `one` supplies the field context for matrices without entries.
    pub fn nullspace(&self, one: &F) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let zero = one.zero_like();
        let mut basis = Vec::new();
        for free in (0..r.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); r.cols];
            v[free] = one.clone();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(i, free).negated();
            }
            basis.push(v);
        }
        basis
    }
}

impl QMatrix {
    /// Rank and pivot columns by fraction-free (Bareiss) elimination after
    /// clearing denominators row by row.
    pub fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = denominator_lcm(row);
                row.iter()
                    .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (head, tail) = m.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let factor = row[c].clone();
                for j in (c + 1)..self.cols {
                    let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }
}

/// Rank and canonical nullspace basis of a rational matrix.
///
/// The echelon form comes from integer Bareiss elimination; only the final
/// back-substitution to reduced form uses rational arithmetic.
pub fn rank_nullspace(m: &QMatrix) -> (usize, Vec<Vec<Rat>>) {
    let (echelon, pivots) = m.bareiss_echelon();
    let rank = pivots.len();
    let mut rows: Vec<Vec<Rat>> = echelon
        .into_iter()
        .map(|r| r.into_iter().map(Rat::from_integer).collect())
        .collect();
    for i in (0..rank).rev() {
        let pc = pivots[i];
        let inv = rows[i][pc].recip();
        for x in rows[i].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[i].clone();
        for row in rows[..i].iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    let zero = Rat::zero();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); m.cols];
        v[free] = Rat::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[i][free];
        }
        basis.push(v);
    }
    (rank, basis)
}

impl ModP for QMatrix {
    type Output = FpMatrix;
    fn modp(&self, prime: u64) -> Result<FpMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.modp(prime))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<F: Coeff> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
