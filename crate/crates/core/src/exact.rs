//! Exact rational arithmetic and dense linear algebra over the rationals.
//!
//! Every dimension this crate reports is the rank or nullity of some matrix
//! with rational entries, so everything here is exact: no floating point,
//! no modular shortcuts.

use std::fmt;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("expected {expected} columns, found a matrix with {found}")]
    ColumnMismatch { expected: usize, found: usize },
    #[error("entry count {found} does not match shape {rows}x{cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    ProductMismatch(usize, usize, usize, usize),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix over the rationals with a fixed shape.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| rat(x)));
        }
        QMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ProductMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation. `cols` is the declared width, needed when
    /// `ms` is empty.
    pub fn stack_vertical(ms: &[QMatrix], cols: usize) -> Result<QMatrix, LinalgError> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for m in ms {
            if m.cols != cols {
                return Err(LinalgError::ColumnMismatch {
                    expected: cols,
                    found: m.cols,
                });
            }
            rows += m.rows;
            entries.extend_from_slice(&m.entries);
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut rows: Vec<Vec<BigRational>> =
            (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let entries = rows.into_iter().flatten().collect();
        (
            QMatrix {
                rows: self.rows,
                cols: self.cols,
                entries,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|r| self.row(r).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        echelon_rows(&mut rows, self.cols)
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right null space. Vector `j` has a 1 in the `j`-th
    /// free column and 0 in every other free column, so coordinates of a
    /// kernel element can be read off its free columns.
    pub fn kernel_basis(&self) -> KernelBasis {
        let mut rows: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|r| self.row(r).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    let x = &rows[r][f];
                    if !x.is_zero() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect();
        KernelBasis { free, vectors }
    }

    pub fn determinant(&self) -> Result<BigRational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] / &pivot;
                let (upper, lower) = a.split_at_mut(r);
                for (x, p) in lower[0][c..n].iter_mut().zip(&upper[c][c..n]) {
                    *x -= p * &factor;
                }
            }
        }
        Ok(det)
    }

    /// Determinants of the upper-left k×k blocks for k = 1..=n.
    pub fn leading_principal_minors(&self) -> Result<Vec<BigRational>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        (1..=self.rows)
            .map(|k| {
                let mut block = Vec::with_capacity(k * k);
                for i in 0..k {
                    block.extend_from_slice(&self.row(i)[..k]);
                }
                QMatrix::new(k, k, block)?.determinant()
            })
            .collect()
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Null-space basis with the free columns used to build it.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub free: Vec<usize>,
    pub vectors: Vec<Vec<BigRational>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let coords: Vec<BigRational> = self.free.iter().map(|&f| v[f].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r -= c * x;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }
}

pub fn mat_rank(m: &QMatrix) -> usize {
    m.rank()
}

pub fn mat_kernel_dim(m: &QMatrix) -> usize {
    m.kernel_dim()
}

pub fn mat_stack_vertical(ms: &[QMatrix], cols: usize) -> Result<QMatrix, LinalgError> {
    QMatrix::stack_vertical(ms, cols)
}

// Forward elimination only; returns the rank. Rows are left in echelon form.
fn echelon_rows(rows: &mut [Vec<BigRational>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = pick_pivot(rows, rank, c) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let inv = pivot_row[c].recip();
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] * &inv;
            eliminate(row, pivot_row, &factor, c);
        }
        rank += 1;
    }
    rank
}

fn rref_rows(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = pick_pivot(rows, rank, c) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip();
        for x in rows[rank][c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            eliminate(row, &pivot_row, &factor, c);
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

// Prefer the pivot with the smallest height to slow coefficient growth.
fn pick_pivot(rows: &[Vec<BigRational>], from: usize, c: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][c].is_zero())
        .min_by_key(|&r| {
            let x = &rows[r][c];
            x.numer().abs().bits() + x.denom().bits()
        })
}

fn eliminate(
    row: &mut [BigRational],
    pivot_row: &[BigRational],
    factor: &BigRational,
    from: usize,
) {
    for (x, p) in row[from..].iter_mut().zip(&pivot_row[from..]) {
        if !p.is_zero() {
            *x -= factor * p;
        }
    }
}
