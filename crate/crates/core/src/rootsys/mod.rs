//! Root systems from Cartan matrices, the root poset and the Weyl group.
//!
//! Roots are carried as integer coordinates over the simple roots. The
//! canonical order on positive roots is by height, ties broken so that the
//! simple roots come out as `α_1, …, α_l` (lexicographically descending
//! coefficient vectors). The full root list is the positive roots in that
//! order followed by their negatives in the same order.

mod cartan;
mod weyl;

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cartan::{CartanMatrix, CartanType, TypeLetter};
pub use weyl::{enumerate_weyl_group, positive_system_of, WeylElement};

use crate::error::{Error, Result};

/// A root as integer coordinates over the simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn plus(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus_multiple(&self, k: i32, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - k * b).collect())
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Root system of a simple Cartan type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    symmetrizer: Vec<i64>,
    // sum_table[i][j] = index of roots[i] + roots[j] when that is a root
    sum_table: Vec<Vec<Option<usize>>>,
}

impl RootSystem {
    pub fn of_type(t: CartanType) -> Self {
        build_root_system(&CartanMatrix::of_type(t)).expect("built-in Cartan matrices are valid")
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan.cartan_type()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Positive roots in canonical order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    /// All roots: positive roots, then their negatives in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.num_positive() - 1]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn require_index(&self, r: &Root) -> Result<usize> {
        self.index_of(r).ok_or_else(|| Error::NotARoot(r.0.clone()))
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn is_positive_index(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    /// Index of `-roots[i]`.
    pub fn neg_index(&self, i: usize) -> usize {
        let p = self.num_positive();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    /// Index of the simple root `α_i`.
    pub fn simple_index(&self, i: usize) -> usize {
        // simple roots are the first `rank` positive roots
        i
    }

    /// Index of `roots[i] + roots[j]` if it is a root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        self.sum_table[i][j]
    }

    /// `(α_i, α_i) / 2` for each simple root.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `⟨λ, α_i^∨⟩`.
    pub fn coroot_pairing(&self, lambda: &Root, i: usize) -> i32 {
        (0..self.rank())
            .map(|j| self.cartan.entry(i, j) * lambda.0[j])
            .sum()
    }

    /// The invariant form with `(α_i, α_i) = 2 d_i`, short roots of squared length 2.
    pub fn inner(&self, lambda: &Root, mu: &Root) -> i64 {
        let l = self.rank();
        let mut acc = 0i64;
        for i in 0..l {
            if lambda.0[i] == 0 {
                continue;
            }
            for j in 0..l {
                acc += lambda.0[i] as i64
                    * mu.0[j] as i64
                    * self.symmetrizer[i]
                    * self.cartan.entry(i, j) as i64;
            }
        }
        acc
    }

    /// Simple reflection `s_i(λ) = λ - ⟨λ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, lambda: &Root) -> Root {
        let k = self.coroot_pairing(lambda, i);
        let mut c = lambda.0.clone();
        c[i] -= k;
        Root(c)
    }

    pub fn sum_as_root(&self, lambda: &Root, mu: &Root) -> Result<Option<Root>> {
        let i = self.require_index(lambda)?;
        let j = self.require_index(mu)?;
        Ok(self.sum_index(i, j).map(|k| self.roots[k].clone()))
    }

    /// Greatest `p ≥ 0` with `μ - pλ ∈ Φ`.
    pub fn root_string_p(&self, lambda: &Root, mu: &Root) -> Result<i32> {
        self.require_index(lambda)?;
        self.require_index(mu)?;
        let mut p = 0;
        while self.is_root(&mu.minus_multiple(p + 1, lambda)) {
            p += 1;
        }
        Ok(p)
    }
}

fn canonical_key(r: &Root) -> (i32, Reverse<Vec<i32>>) {
    (r.height(), Reverse(r.0.clone()))
}

/// Generates the root system of a Cartan matrix by closing the simple roots
/// under addition of simple roots, using root strings to decide each step.
pub fn build_root_system(c: &CartanMatrix) -> Result<RootSystem> {
    let l = c.rank();
    let mut positive: Vec<Root> = (0..l).map(|i| Root::simple(l, i)).collect();
    let mut known: std::collections::HashSet<Root> = positive.iter().cloned().collect();
    let mut layer = positive.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..l {
                let alpha = Root::simple(l, i);
                // α_i-string through β: β - pα_i, …, β + qα_i with p - q = ⟨β, α_i^∨⟩
                let mut p = 0;
                while known.contains(&beta.minus_multiple(p + 1, &alpha)) {
                    p += 1;
                }
                let pairing: i32 = (0..l).map(|j| c.entry(i, j) * beta.0[j]).sum();
                let q = p - pairing;
                if q > 0 {
                    let candidate = beta.plus(&alpha);
                    if known.insert(candidate.clone()) {
                        next.push(candidate);
                    }
                }
            }
        }
        positive.extend(next.iter().cloned());
        layer = next;
        if positive.len() > 10_000 {
            return Err(Error::InvalidCartanMatrix(
                "root closure does not terminate".into(),
            ));
        }
    }
    let expected = c.cartan_type().num_positive_roots();
    if positive.len() != expected {
        return Err(Error::InvalidCartanMatrix(format!(
            "generated {} positive roots, expected {expected}",
            positive.len()
        )));
    }
    positive.sort_by_key(canonical_key);
    let negatives: Vec<Root> = positive.iter().map(Root::neg).collect();
    let roots: Vec<Root> = positive.into_iter().chain(negatives).collect();
    let index: HashMap<Root, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    let sum_table = roots
        .iter()
        .map(|a| roots.iter().map(|b| index.get(&a.plus(b)).copied()).collect())
        .collect();
    Ok(RootSystem {
        symmetrizer: c.symmetrizer(),
        cartan: c.clone(),
        roots,
        index,
        sum_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap())
    }

    #[test]
    fn a2_roots() {
        let a2 = rs("A2");
        assert_eq!(
            a2.positive_roots(),
            &[Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1])]
        );
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.highest_root(), &Root(vec![1, 1]));
    }

    #[test]
    fn a1_roots() {
        let a1 = rs("A1");
        assert_eq!(a1.roots(), &[Root(vec![1]), Root(vec![-1])]);
    }

    #[test]
    fn g2_roots() {
        let g2 = rs("G2");
        assert_eq!(g2.num_positive(), 6);
        assert_eq!(g2.highest_root(), &Root(vec![3, 2]));
        // α1 short, α2 long
        assert!(g2.inner(&Root(vec![1, 0]), &Root(vec![1, 0])) < g2.inner(&Root(vec![0, 1]), &Root(vec![0, 1])));
    }

    #[test]
    fn highest_roots() {
        assert_eq!(rs("B3").highest_root(), &Root(vec![1, 2, 2]));
        assert_eq!(rs("C3").highest_root(), &Root(vec![2, 2, 1]));
        assert_eq!(rs("D4").highest_root(), &Root(vec![1, 2, 1, 1]));
        assert_eq!(rs("F4").highest_root(), &Root(vec![2, 3, 4, 2]));
        assert_eq!(rs("E6").highest_root(), &Root(vec![1, 2, 2, 3, 2, 1]));
        assert_eq!(rs("E8").highest_root(), &Root(vec![2, 3, 4, 6, 5, 4, 3, 2]));
    }

    #[test]
    fn sums() {
        let a2 = rs("A2");
        let (a1, a2r, th) = (Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1]));
        assert_eq!(a2.sum_as_root(&a1, &a2r).unwrap(), Some(th.clone()));
        assert_eq!(a2.sum_as_root(&a1, &a1).unwrap(), None);
        assert_eq!(a2.sum_as_root(&th, &a1).unwrap(), None);
        assert_eq!(
            a2.sum_as_root(&Root(vec![2, 0]), &a1),
            Err(Error::NotARoot(vec![2, 0]))
        );
    }

    #[test]
    fn strings() {
        let a2 = rs("A2");
        assert_eq!(a2.root_string_p(&Root(vec![1, 0]), &Root(vec![0, 1])).unwrap(), 0);
        let b2 = rs("B2");
        assert_eq!(b2.root_string_p(&Root(vec![0, 1]), &Root(vec![1, 0])).unwrap(), 0);
        assert_eq!(b2.root_string_p(&Root(vec![0, 1]), &Root(vec![1, 1])).unwrap(), 1);
        let g2 = rs("G2");
        assert_eq!(g2.root_string_p(&Root(vec![1, 0]), &Root(vec![0, 1])).unwrap(), 0);
        assert_eq!(g2.root_string_p(&Root(vec![1, 0]), &Root(vec![3, 1])).unwrap(), 3);
        assert!(g2.root_string_p(&Root(vec![5, 0]), &Root(vec![0, 1])).is_err());
    }
}
