use num_traits::Zero;

use super::matrix::Matrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced row
/// echelon form. The RREF is canonical, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let m = Matrix::from_rows(ambient_dim, vectors.into_iter().collect())?;
        Ok(Self::row_space(&m))
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let mut r = m.clone();
        let pivots = r.eliminate();
        let cols = m.cols();
        let rows = pivots.iter().enumerate().map(|(i, _)| r.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: cols,
            basis: Matrix::from_rows(cols, rows).expect("rows of an existing matrix"),
            pivots,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after subtracting its projection along the pivot columns.
    /// Zero exactly when `v` lies in the subspace.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    w[j] -= &c * b;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.residual(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies in the span.
    pub fn rref_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis.row_vectors().all(|r| other.contains(r))
    }

    /// Functionals (in dual coordinates) vanishing on the subspace.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        self.basis.kernel_basis()
    }
}

/// Decides equality of two subspaces by comparing their RREF bases.
pub fn subspace_equal(u: &Subspace, v: &Subspace) -> Result<bool> {
    if u.ambient_dim != v.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: u.ambient_dim,
            found: v.ambient_dim,
        });
    }
    Ok(u == v)
}

/// Solves for coordinates with respect to a fixed linearly independent basis.
#[derive(Clone, Debug)]
pub struct Coordinates {
    reduced: Matrix,
    pivots: Vec<usize>,
    // transform · basis = reduced
    transform: Matrix,
}

impl Coordinates {
    pub fn new(basis: &Matrix) -> Result<Self> {
        let (k, n) = (basis.rows(), basis.cols());
        let mut aug = Matrix::zeros(k, n + k);
        for i in 0..k {
            for j in 0..n {
                aug[(i, j)] = basis[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::from_integer(1.into());
        }
        let pivots = aug.eliminate();
        if pivots.iter().filter(|&&p| p < n).count() < k {
            return Err(Error::LinearlyDependent);
        }
        let mut reduced = Matrix::zeros(k, n);
        let mut transform = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..n {
                reduced[(i, j)] = aug[(i, j)].clone();
            }
            for j in 0..k {
                transform[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(Coordinates {
            reduced,
            pivots,
            transform,
        })
    }

    pub fn dim(&self) -> usize {
        self.reduced.rows()
    }

    /// `c` with `v = Σ c_i basis_i`, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let r: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recombined = self.reduced.apply_left(&r);
        if recombined.as_slice() != v {
            return None;
        }
        Some(self.transform.apply_left(&r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{rat, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn equality_examples() {
        let a = Subspace::span(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let b = Subspace::span(2, vec![v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert!(subspace_equal(&a, &b).unwrap());
        let c = Subspace::span(2, vec![v(&[1, 0])]).unwrap();
        let d = Subspace::span(2, vec![v(&[0, 1])]).unwrap();
        assert!(!subspace_equal(&c, &d).unwrap());
        let e = Subspace::span(2, vec![v(&[2, 4])]).unwrap();
        let f = Subspace::span(2, vec![v(&[1, 2])]).unwrap();
        assert!(subspace_equal(&e, &f).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        assert!(subspace_equal(&Subspace::zero(2), &Subspace::zero(3)).is_err());
    }

    #[test]
    fn annihilator_of_line() {
        let l = Subspace::span(3, vec![v(&[1, 2, 0])]).unwrap();
        let ann = l.annihilator();
        assert_eq!(ann.dim(), 2);
        for phi in ann.basis().row_vectors() {
            let pairing: Rational = phi.iter().zip(v(&[1, 2, 0])).map(|(a, b)| a * b).sum();
            assert!(pairing.is_zero());
        }
        assert_eq!(Subspace::zero(3).annihilator(), Subspace::full(3));
    }

    #[test]
    fn coordinates_in_given_basis() {
        let basis = Matrix::from_i64(&[&[1, 1, 0], &[0, 2, 1]]);
        let c = Coordinates::new(&basis).unwrap();
        // 3·(1,1,0) + (1/2)·(0,2,1) = (3,4,1/2)
        let target = vec![rat(3), rat(4), ratio(1, 2)];
        assert_eq!(c.solve(&target).unwrap(), vec![rat(3), ratio(1, 2)]);
        assert!(c.solve(&v(&[0, 0, 1])).is_none());
        assert_eq!(
            Coordinates::new(&Matrix::from_i64(&[&[1, 2], &[2, 4]])).unwrap_err(),
            Error::LinearlyDependent
        );
    }
}
