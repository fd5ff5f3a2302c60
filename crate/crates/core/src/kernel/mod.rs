//! Exact rational linear algebra: matrices, row reduction, kernels,
//! canonical subspaces and exponentials of nilpotent matrices.
//!
//! Everything here is exact. Subspaces are kept in reduced row echelon form,
//! so comparing two of them is a plain equality check on their bases.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{exp_nilpotent, kernel_basis, rref, Matrix};
pub use rational::{format_rational, parse_rational, rat, ratio, serde_string, serde_string_vec, serde_string_vec_vec, Rational};
pub(crate) use rational::{parse_all, to_strings};
pub use subspace::{subspace_equal, Coordinates, Subspace};

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    use num_traits::Zero;
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}
