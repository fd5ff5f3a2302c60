//! Semisimple Lie algebras in a Chevalley basis.
//!
//! The basis is `h_1, …, h_l` followed by `e_λ` for every root `λ` in the
//! canonical root order. Structure constants are integers:
//!
//! * `[h_i, e_λ] = ⟨λ, α_i^∨⟩ e_λ`
//! * `[e_λ, e_{-λ}] = h_λ`, the coroot written over `h_1, …, h_l`
//! * `[e_λ, e_μ] = N_{λ,μ} e_{λ+μ}` with `|N_{λ,μ}| = p + 1`
//!
//! The coadjoint action uses `(ad*_x γ)(y) = -γ([x, y])`.

mod constants;
mod elements;
mod group;

use num_traits::Zero;

pub use elements::{GElement, GStarElement};
pub use group::{character, Generator, GroupElement};

use crate::error::{Error, Result};
use crate::kernel::{rat, Matrix, Rational, Subspace};
use crate::rootsys::{Root, RootSystem};
use constants::StructureConstants;

/// Sparse integer vector over a basis, sorted by index.
pub type SparseVec = Vec<(usize, i64)>;

/// What a basis vector of 𝔤 is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    /// `h_i` (0-based simple root index).
    Cartan(usize),
    /// `e_λ` with `λ = roots[index]`.
    RootVector(usize),
}

/// A semisimple Lie algebra with its Chevalley basis and bracket table.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    rs: RootSystem,
    table: Vec<Vec<SparseVec>>,
    n_table: Vec<Vec<i64>>,
}

impl LieAlgebra {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.roots().len()
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        let l = self.rank();
        if i < l {
            BasisLabel::Cartan(i)
        } else {
            BasisLabel::RootVector(i - l)
        }
    }

    /// Basis position of `e_{roots[r]}`.
    pub fn root_vector_index(&self, r: usize) -> usize {
        self.rank() + r
    }

    /// Basis position of `e_λ`.
    pub fn index_of_root(&self, lambda: &Root) -> Result<usize> {
        Ok(self.root_vector_index(self.rs.require_index(lambda)?))
    }

    /// Root index of a basis position, if it is a root vector.
    pub fn root_of_basis(&self, i: usize) -> Option<usize> {
        match self.label(i) {
            BasisLabel::RootVector(r) => Some(r),
            BasisLabel::Cartan(_) => None,
        }
    }

    /// `[b_i, b_j]` as a sparse integer vector.
    pub fn structure(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// `N_{r,s}` for root indices `r`, `s` (zero when `r + s` is not a root).
    pub fn n_constant(&self, r: usize, s: usize) -> i64 {
        self.n_table[r][s]
    }

    pub fn basis_element(&self, i: usize) -> GElement {
        GElement::unit(self.dim(), i)
    }

    pub fn h(&self, i: usize) -> GElement {
        self.basis_element(i)
    }

    pub fn e(&self, lambda: &Root) -> Result<GElement> {
        Ok(self.basis_element(self.index_of_root(lambda)?))
    }

    pub fn bracket(&self, x: &GElement, y: &GElement) -> GElement {
        let n = self.dim();
        assert_eq!(x.len(), n, "element of a different algebra");
        assert_eq!(y.len(), n, "element of a different algebra");
        let xs = x.support();
        let ys = y.support();
        let mut out = vec![Rational::zero(); n];
        for &i in &xs {
            for &j in &ys {
                let entry = &self.table[i][j];
                if entry.is_empty() {
                    continue;
                }
                let c = &x.coeffs()[i] * &y.coeffs()[j];
                for &(k, v) in entry {
                    out[k] += &c * rat(v);
                }
            }
        }
        GElement::new(out)
    }

    /// Bracket of sparse integer vectors.
    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in &self.table[i][j] {
                    acc.push((k, a * b * c));
                }
            }
        }
        normalize_sparse(acc)
    }

    /// Matrix of `y ↦ [x, y]`; column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &GElement) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in x.support() {
            let c = &x.coeffs()[i];
            for j in 0..n {
                for &(k, v) in &self.table[i][j] {
                    m[(k, j)] += c * rat(v);
                }
            }
        }
        m
    }

    /// `ad*_x γ`, the functional `y ↦ -γ([x, y])`.
    pub fn coad_star(&self, x: &GElement, gamma: &GStarElement) -> GStarElement {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        let gs = gamma.support();
        if gs.is_empty() {
            return GStarElement::new(out);
        }
        for i in x.support() {
            let c = &x.coeffs()[i];
            for (m, o) in out.iter_mut().enumerate() {
                for &(k, v) in &self.table[i][m] {
                    let g = &gamma.coeffs()[k];
                    if !g.is_zero() {
                        *o -= c * g * rat(v);
                    }
                }
            }
        }
        GStarElement::new(out)
    }

    /// Span of `h_1, …, h_l`.
    pub fn cartan_subalgebra(&self) -> Subspace {
        self.coordinate_span((0..self.rank()).collect())
    }

    /// Span of the positive root vectors.
    pub fn nilradical(&self) -> Subspace {
        let np = self.rs.num_positive();
        self.coordinate_span((0..np).map(|r| self.root_vector_index(r)).collect())
    }

    /// The standard Borel subalgebra `𝔥 ⊕ 𝔫`.
    pub fn borel(&self) -> Subspace {
        let np = self.rs.num_positive();
        let mut idx: Vec<usize> = (0..self.rank()).collect();
        idx.extend((0..np).map(|r| self.root_vector_index(r)));
        self.coordinate_span(idx)
    }

    pub(crate) fn coordinate_span(&self, idx: Vec<usize>) -> Subspace {
        let n = self.dim();
        Subspace::span(n, idx.into_iter().map(|i| GElement::unit(n, i).into_coeffs()))
            .expect("unit vectors have ambient length")
    }

    /// Checks antisymmetry and the Jacobi identity on basis triples `i < j < k`;
    /// together these give Jacobi on all triples.
    pub fn verify_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            if !self.table[i][i].is_empty() {
                return Err(Error::JacobiFailure(i, i, i));
            }
            for j in i + 1..n {
                let neg: SparseVec = self.table[j][i].iter().map(|&(k, v)| (k, -v)).collect();
                if neg != self.table[i][j] {
                    return Err(Error::JacobiFailure(i, j, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobiator(i, j, k).is_empty() {
                        return Err(Error::JacobiFailure(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]` as a sparse vector.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut acc = Vec::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for &(t, v) in &self.table[a][b] {
                for &(s, w) in &self.table[t][c] {
                    acc.push((s, v * w));
                }
            }
        }
        normalize_sparse(acc)
    }
}

pub(crate) fn normalize_sparse(mut acc: Vec<(usize, i64)>) -> SparseVec {
    acc.sort_unstable_by_key(|&(k, _)| k);
    let mut out: SparseVec = Vec::with_capacity(acc.len());
    for (k, v) in acc {
        match out.last_mut() {
            Some((lk, lv)) if *lk == k => *lv += v,
            _ => out.push((k, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Builds the Chevalley-basis bracket table and verifies Jacobi before returning.
pub fn build_chevalley_algebra(rs: &RootSystem) -> Result<LieAlgebra> {
    let l = rs.rank();
    let nroots = rs.roots().len();
    let n = l + nroots;
    let sc = StructureConstants::compute(rs)?;
    let mut n_table = vec![vec![0i64; nroots]; nroots];
    for (r, row) in n_table.iter_mut().enumerate() {
        for (s, entry) in row.iter_mut().enumerate() {
            *entry = sc.n(r, s)?;
        }
    }
    let d = rs.symmetrizer();
    // h_λ = Σ c_i (d_i / d_λ) h_i
    let coroot = |r: usize| -> SparseVec {
        let root = rs.root(r);
        let d_root = rs.inner(root, root) / 2;
        (0..l)
            .filter(|&i| root.coeffs()[i] != 0)
            .map(|i| (i, root.coeffs()[i] as i64 * d[i] / d_root))
            .collect()
    };
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..l {
        for r in 0..nroots {
            let w = rs.coroot_pairing(rs.root(r), i) as i64;
            if w != 0 {
                table[i][l + r] = vec![(l + r, w)];
                table[l + r][i] = vec![(l + r, -w)];
            }
        }
    }
    for r in 0..nroots {
        table[l + r][l + rs.neg_index(r)] = coroot(r);
        for s in 0..nroots {
            if let Some(t) = rs.sum_index(r, s) {
                let c = n_table[r][s];
                if c != 0 {
                    table[l + r][l + s] = vec![(l + t, c)];
                }
            }
        }
    }
    let algebra = LieAlgebra {
        rs: rs.clone(),
        table,
        n_table,
    };
    algebra.verify_jacobi()?;
    Ok(algebra)
}
