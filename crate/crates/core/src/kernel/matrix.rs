use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_traits::{One, Zero};

use super::rational::{rat, Rational};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let nz: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for &j in &nz {
                    let a = &self[(i, j)];
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// `vᵀ · self` for a row vector `v`.
    pub fn apply_left(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Reduced row echelon form; zero rows are kept at the bottom.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.eliminate();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().len()
    }

    /// Gauss–Jordan elimination in place. Returns the pivot columns.
    pub(crate) fn eliminate(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].recip();
            let support: Vec<usize> = (c..cols).filter(|&j| !self[(r, j)].is_zero()).collect();
            for &j in &support {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for &j in &support {
                    let delta = &factor * &self[(r, j)];
                    self[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Null space `{v : self · v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.eliminate();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..n).filter(|&j| !is_pivot[j]).map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(row, free)].clone();
            }
            v
        });
        Subspace::span(n, basis).expect("kernel vectors have ambient length")
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// `exp(t·self)` for a nilpotent matrix, as the finite series Σ (t·m)^i / i!.
    pub fn exp_nilpotent(&self, t: &Rational) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let tm = self.scale(t);
        let mut result = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        // nilpotency is decided on m itself, since t = 0 would hide it
        let mut power = Matrix::identity(n);
        for i in 1..=n.max(1) {
            power = &power * self;
            term = (&term * &tm).scale(&Rational::new(1.into(), (i as i64).into()));
            if power.is_zero() {
                return Ok(result);
            }
            result = &result + &term;
        }
        if power.is_zero() {
            Ok(result)
        } else {
            Err(Error::NotNilpotent)
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in self.row_vectors() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Free-function form of [`Matrix::rref`].
pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

/// Free-function form of [`Matrix::kernel_basis`].
pub fn kernel_basis(m: &Matrix) -> Subspace {
    m.kernel_basis()
}

/// Free-function form of [`Matrix::exp_nilpotent`].
pub fn exp_nilpotent(m: &Matrix, t: &Rational) -> Result<Matrix> {
    m.exp_nilpotent(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::ratio;

    #[test]
    fn rref_examples() {
        assert_eq!(
            Matrix::from_i64(&[&[0, 1], &[1, 0]]).rref(),
            Matrix::identity(2)
        );
        assert_eq!(
            Matrix::from_i64(&[&[2, 4], &[1, 2]]).rref(),
            Matrix::from_i64(&[&[1, 2], &[0, 0]])
        );
        assert_eq!(
            Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]).rref(),
            Matrix::from_i64(&[&[1, 0, -1], &[0, 1, 1], &[0, 0, 0]])
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel_basis().dim(), 0);
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, Subspace::full(3));
        let k = Matrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, Subspace::span(2, vec![vec![rat(1), rat(-1)]]).unwrap());
    }

    #[test]
    fn exp_examples() {
        let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            n.exp_nilpotent(&rat(1)).unwrap(),
            Matrix::from_i64(&[&[1, 1], &[0, 1]])
        );
        assert_eq!(
            Matrix::zeros(3, 3).exp_nilpotent(&ratio(7, 3)).unwrap(),
            Matrix::identity(3)
        );
        // t = 0 on a non-nilpotent matrix must still be rejected
        assert_eq!(
            Matrix::identity(2).exp_nilpotent(&rat(0)),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn sl2_exponential_by_hand() {
        // ad(e) on the ordered basis (e, h, f): [e,e]=0, [e,h]=-2e, [e,f]=h.
        // Columns are images: col(e)=0, col(h)=-2e, col(f)=h.
        let ad_e = Matrix::from_i64(&[&[0, -2, 0], &[0, 0, 1], &[0, 0, 0]]);
        let t = ratio(3, 5);
        let g = ad_e.exp_nilpotent(&t).unwrap();
        let t2 = &t * &t;
        // e ↦ e, h ↦ h − 2t·e, f ↦ f + t·h − t²·e
        let expected = Matrix::from_rows(
            3,
            vec![
                vec![rat(1), -rat(2) * &t, -t2],
                vec![rat(0), rat(1), t.clone()],
                vec![rat(0), rat(0), rat(1)],
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn apply_matches_product() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        let v = vec![rat(1), ratio(-1, 2)];
        assert_eq!(m.apply(&v), vec![rat(0), rat(1), rat(2)]);
        let w = vec![rat(1), rat(0), rat(-1)];
        assert_eq!(m.apply_left(&w), vec![rat(-4), rat(-4)]);
    }
}
