//! The double `𝔡 = 𝔤 ⋉ 𝔤*`, its invariant form and the action of `D = G ⋉ 𝔤*`.
//!
//! Coordinates on 𝔡 are the 𝔤-coordinates followed by the dual coordinates,
//! so the Gram matrix of the form is the block anti-diagonal identity.
//!
//! * bracket: `[(x, α), (y, β)] = ([x, y], ad*_x β - ad*_y α)`
//! * form: `((x, α), (y, β)) = α(y) + β(x)`
//! * group law: `(g, α)(g', α') = (g g', Ad*_{g'⁻¹} α + α')`
//! * action: `Ad_{(g, α)}(x, β) = (Ad_g x, -Ad*_g ad*_x α + Ad*_g β)`

use serde::{Deserialize, Serialize};

use crate::chevalley::{normalize_sparse, GElement, GStarElement, GroupElement, LieAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational, Subspace};

/// An element `(x, α)` of 𝔡.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DoubleElement {
    pub x: GElement,
    pub alpha: GStarElement,
}

impl DoubleElement {
    pub fn new(x: GElement, alpha: GStarElement) -> Self {
        DoubleElement { x, alpha }
    }

    pub fn zeros(n: usize) -> Self {
        DoubleElement::new(GElement::zeros(n), GStarElement::zeros(n))
    }

    pub fn from_g(x: GElement) -> Self {
        let n = x.len();
        DoubleElement::new(x, GStarElement::zeros(n))
    }

    pub fn from_dual(alpha: GStarElement) -> Self {
        let n = alpha.len();
        DoubleElement::new(GElement::zeros(n), alpha)
    }

    /// The `i`-th canonical basis vector of 𝔡 (`0 ≤ i < 2n`).
    pub fn unit(n: usize, i: usize) -> Self {
        if i < n {
            Self::from_g(GElement::unit(n, i))
        } else {
            Self::from_dual(GStarElement::unit(n, i - n))
        }
    }

    /// Concatenated coordinates `(x, α)` of length `2n`.
    pub fn to_coords(&self) -> Vec<Rational> {
        self.x.coeffs().iter().chain(self.alpha.coeffs()).cloned().collect()
    }

    pub fn from_coords(coords: &[Rational]) -> Self {
        let n = coords.len() / 2;
        DoubleElement::new(
            GElement::new(coords[..n].to_vec()),
            GStarElement::new(coords[n..].to_vec()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.alpha.is_zero()
    }
}

/// An element `(g, α)` of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGroupElement {
    pub g: GroupElement,
    pub alpha: GStarElement,
}

impl DGroupElement {
    pub fn new(g: GroupElement, alpha: GStarElement) -> Self {
        DGroupElement { g, alpha }
    }

    pub fn identity(algebra: &LieAlgebra) -> Self {
        DGroupElement::new(GroupElement::identity(algebra), GStarElement::zeros(algebra.dim()))
    }

    /// `(e, α)`.
    pub fn translation(algebra: &LieAlgebra, alpha: GStarElement) -> Self {
        DGroupElement::new(GroupElement::identity(algebra), alpha)
    }

    /// `(g, 0)`.
    pub fn from_group(g: GroupElement) -> Self {
        let n = g.matrix().rows();
        DGroupElement::new(g, GStarElement::zeros(n))
    }

    /// `(g, α)(g', α') = (g g', Ad*_{g'⁻¹} α + α')`.
    pub fn compose(&self, other: &DGroupElement) -> DGroupElement {
        let moved = other.g.inverse().act_dual(&self.alpha);
        DGroupElement::new(self.g.compose(&other.g), moved.add(&other.alpha))
    }

    /// `(g, α)⁻¹ = (g⁻¹, -Ad*_g α)`.
    pub fn inverse(&self) -> DGroupElement {
        DGroupElement::new(self.g.inverse(), self.g.act_dual(&self.alpha).neg())
    }
}

/// 𝔡 built over a fixed Lie algebra 𝔤.
#[derive(Clone, Copy, Debug)]
pub struct Double<'g> {
    algebra: &'g LieAlgebra,
}

impl<'g> Double<'g> {
    pub fn new(algebra: &'g LieAlgebra) -> Self {
        Double { algebra }
    }

    pub fn algebra(&self) -> &'g LieAlgebra {
        self.algebra
    }

    /// `n = dim 𝔤`; 𝔡 has dimension `2n`.
    pub fn half_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim(&self) -> usize {
        2 * self.algebra.dim()
    }

    pub fn d_bracket(&self, a: &DoubleElement, b: &DoubleElement) -> DoubleElement {
        let g = self.algebra;
        let x = g.bracket(&a.x, &b.x);
        let alpha = g.coad_star(&a.x, &b.alpha).sub(&g.coad_star(&b.x, &a.alpha));
        DoubleElement::new(x, alpha)
    }

    pub fn bilinear_form(&self, a: &DoubleElement, b: &DoubleElement) -> Rational {
        a.alpha.eval(&b.x) + b.alpha.eval(&a.x)
    }

    pub fn big_ad(&self, d: &DGroupElement, v: &DoubleElement) -> DoubleElement {
        let g = self.algebra;
        let shifted = if d.alpha.is_zero() {
            v.alpha.clone()
        } else {
            v.alpha.sub(&g.coad_star(&v.x, &d.alpha))
        };
        if d.g.word().is_empty() {
            // empty words only arise from the identity
            return DoubleElement::new(v.x.clone(), shifted);
        }
        DoubleElement::new(d.g.act(&v.x), d.g.act_dual(&shifted))
    }

    pub fn check_invariance(&self, d: &DGroupElement, a: &DoubleElement, b: &DoubleElement) -> bool {
        self.bilinear_form(&self.big_ad(d, a), &self.big_ad(d, b)) == self.bilinear_form(a, b)
    }

    /// Image of a subspace of 𝔡 under `Ad_d`.
    pub fn big_ad_subspace(&self, d: &DGroupElement, w: &Subspace) -> Subspace {
        let rows = w
            .basis()
            .row_vectors()
            .map(|r| self.big_ad(d, &DoubleElement::from_coords(r)).to_coords());
        Subspace::span(self.dim(), rows).expect("images keep ambient length")
    }

    /// Gram matrix of the form on the canonical basis.
    pub fn gram_matrix(&self) -> Matrix {
        let m = self.dim();
        let n = self.half_dim();
        let mut gram = Matrix::zeros(m, m);
        for i in 0..n {
            gram[(i, n + i)] = Rational::from_integer(1.into());
            gram[(n + i, i)] = Rational::from_integer(1.into());
        }
        gram
    }

    /// The subalgebra 𝔤 ⊂ 𝔡 (first factor).
    pub fn g_subspace(&self) -> Subspace {
        let n = self.half_dim();
        Subspace::span(self.dim(), (0..n).map(|i| DoubleElement::unit(n, i).to_coords()))
            .expect("unit vectors")
    }

    /// The subalgebra 𝔤* ⊂ 𝔡 (second factor).
    pub fn g_star_subspace(&self) -> Subspace {
        let n = self.half_dim();
        Subspace::span(self.dim(), (n..2 * n).map(|i| DoubleElement::unit(n, i).to_coords()))
            .expect("unit vectors")
    }

    /// `[u_i, u_j]` for canonical basis vectors of 𝔡, as a sparse integer vector.
    pub fn structure(&self, i: usize, j: usize) -> SparseVec {
        let n = self.half_dim();
        let g = self.algebra;
        match (i < n, j < n) {
            (true, true) => g.structure(i, j).clone(),
            // [b_i, b_j*] = ad*_{b_i} b_j* = Σ_m -c_{im}^j b_m*
            (true, false) => {
                let jj = j - n;
                let acc = (0..n)
                    .flat_map(|m| {
                        g.structure(i, m)
                            .iter()
                            .filter(move |&&(k, _)| k == jj)
                            .map(move |&(_, c)| (n + m, -c))
                    })
                    .collect();
                normalize_sparse(acc)
            }
            (false, true) => self.structure(j, i).into_iter().map(|(k, c)| (k, -c)).collect(),
            (false, false) => SparseVec::new(),
        }
    }

    /// Full structure table of 𝔡 on the canonical basis.
    pub fn structure_table(&self) -> Vec<Vec<SparseVec>> {
        let m = self.dim();
        (0..m).map(|i| (0..m).map(|j| self.structure(i, j)).collect()).collect()
    }
}

/// Jacobiator of basis triple `(i, j, k)` in a sparse structure table.
pub fn table_jacobiator(table: &[Vec<SparseVec>], i: usize, j: usize, k: usize) -> SparseVec {
    let mut acc = Vec::new();
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        for &(t, v) in &table[a][b] {
            for &(s, w) in &table[t][c] {
                acc.push((s, v * w));
            }
        }
    }
    normalize_sparse(acc)
}

/// Checks antisymmetry and Jacobi on every basis triple of a structure table.
pub fn verify_table_jacobi(table: &[Vec<SparseVec>]) -> Result<()> {
    let m = table.len();
    for i in 0..m {
        for j in 0..m {
            let neg: SparseVec = table[j][i].iter().map(|&(k, v)| (k, -v)).collect();
            if table[i][j] != neg {
                return Err(Error::JacobiFailure(i, j, j));
            }
            for k in 0..m {
                if !table_jacobiator(table, i, j, k).is_empty() {
                    return Err(Error::JacobiFailure(i, j, k));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::kernel::rat;
    use crate::rootsys::{Root, RootSystem};

    fn algebra(s: &str) -> LieAlgebra {
        build_chevalley_algebra(&RootSystem::of_type(s.parse().unwrap())).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let a2 = algebra("A2");
        let d = Double::new(&a2);
        let n = a2.dim();
        let a = DoubleElement::from_dual(GStarElement::unit(n, 3));
        let b = DoubleElement::from_dual(GStarElement::unit(n, 5));
        assert!(d.d_bracket(&a, &b).is_zero());

        let x = a2.e(&Root(vec![1, 0])).unwrap();
        let beta = GStarElement::unit(n, 4);
        let got = d.d_bracket(&DoubleElement::from_g(x.clone()), &DoubleElement::from_dual(beta.clone()));
        assert_eq!(got, DoubleElement::from_dual(a2.coad_star(&x, &beta)));

        let y = a2.e(&Root(vec![0, 1])).unwrap();
        let got = d.d_bracket(&DoubleElement::from_g(x.clone()), &DoubleElement::from_g(y.clone()));
        assert_eq!(got, DoubleElement::from_g(a2.bracket(&x, &y)));
        assert_eq!(got.x.support(), vec![a2.index_of_root(&Root(vec![1, 1])).unwrap()]);
    }

    #[test]
    fn form_examples() {
        let a2 = algebra("A2");
        let d = Double::new(&a2);
        let n = a2.dim();
        let th = a2.index_of_root(&Root(vec![1, 1])).unwrap();
        let a = DoubleElement::from_g(GElement::unit(n, th));
        let b = DoubleElement::from_dual(GStarElement::unit(n, th));
        assert_eq!(d.bilinear_form(&a, &b), rat(1));
        let x = DoubleElement::from_g(GElement::from_i64(&[1, 2, 3, 4, 5, 6, 7, 8]));
        assert_eq!(d.bilinear_form(&x, &a), rat(0));
        let hh = DoubleElement::new(GElement::unit(n, 0), GStarElement::unit(n, 0));
        assert_eq!(d.bilinear_form(&hh, &hh), rat(2));
    }

    #[test]
    fn translation_example() {
        let a2 = algebra("A2");
        let d = Double::new(&a2);
        let n = a2.dim();
        let th = a2.index_of_root(&Root(vec![1, 1])).unwrap();
        let a2i = a2.index_of_root(&Root(vec![0, 1])).unwrap();
        let shift = DGroupElement::translation(&a2, GStarElement::unit(n, th));
        let e1 = a2.e(&Root(vec![1, 0])).unwrap();
        let got = d.big_ad(&shift, &DoubleElement::from_g(e1.clone()));
        let n12 = a2.n_constant(0, 1);
        assert_eq!(got.x, e1);
        assert_eq!(got.alpha, GStarElement::unit(n, a2i).scale(&rat(n12)));
        // ad*_0 = 0
        let v = DoubleElement::from_dual(GStarElement::unit(n, 2));
        assert_eq!(d.big_ad(&shift, &v), v);
        assert_eq!(d.big_ad(&DGroupElement::identity(&a2), &v), v);
    }

    #[test]
    fn group_law_inverse() {
        let b2 = algebra("B2");
        let n = b2.dim();
        let g = GroupElement::unipotent(&b2, &Root(vec![1, 1]), &rat(2)).unwrap();
        let dg = DGroupElement::new(g, GStarElement::from_i64(&[1, 0, 2, -1, 0, 0, 3, 0, 1, 0]));
        assert_eq!(n, 10);
        let prod = dg.compose(&dg.inverse());
        assert!(prod.g.is_identity());
        assert!(prod.alpha.is_zero());
    }

    #[test]
    fn a1_double_jacobi() {
        let a1 = algebra("A1");
        verify_table_jacobi(&Double::new(&a1).structure_table()).unwrap();
    }
}
