use std::collections::{BTreeSet, HashSet, VecDeque};

use super::RootSystem;
use crate::error::{Error, Result};

/// A Weyl group element, stored as the permutation it induces on the full
/// root list together with a reduced word in the simple reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u32>,
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            perm: (0..rs.roots().len() as u32).collect(),
            word: Vec::new(),
        }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        let perm = rs
            .roots()
            .iter()
            .map(|r| rs.index_of(&rs.reflect(i, r)).expect("reflections permute roots") as u32)
            .collect();
        WeylElement {
            perm,
            word: vec![i],
        }
    }

    /// Index of `w(roots[i])`.
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    /// Word `[i_1, …, i_k]` meaning `s_{i_1} ⋯ s_{i_k}` (0-based indices).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            perm: other.perm.iter().map(|&j| self.perm[j as usize]).collect(),
            word: self.word.iter().chain(&other.word).copied().collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0u32; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j as usize] = i as u32;
        }
        WeylElement {
            perm,
            word: self.word.iter().rev().copied().collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// True when the permutation is induced by a linear map of the root
    /// lattice that preserves the invariant form.
    pub fn is_orthogonal(&self, rs: &RootSystem) -> bool {
        let l = rs.rank();
        // images of simple roots determine the linear map
        let images: Vec<&super::Root> = (0..l).map(|i| rs.root(self.apply(i))).collect();
        rs.roots().iter().enumerate().all(|(k, r)| {
            let mut img = vec![0i32; l];
            for (i, &c) in r.coeffs().iter().enumerate() {
                for (t, x) in img.iter_mut().enumerate() {
                    *x += c * images[i].coeffs()[t];
                }
            }
            img == rs.root(self.apply(k)).coeffs()
        }) && (0..l).all(|i| {
            (0..l).all(|j| rs.inner(images[i], images[j]) == rs.inner(rs.root(i), rs.root(j)))
        })
    }
}

/// Full Weyl group by breadth-first closure over the simple reflections.
/// Elements come out in order of length; each carries a reduced word.
pub fn enumerate_weyl_group(rs: &RootSystem, cap: u64) -> Result<Vec<WeylElement>> {
    let order = rs.cartan_type().weyl_order();
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let gens: Vec<WeylElement> = (0..rs.rank())
        .map(|i| WeylElement::simple_reflection(rs, i))
        .collect();
    let id = WeylElement::identity(rs);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.perm.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for s in &gens {
            let next = w.compose(s);
            if seen.insert(next.perm.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    if out.len() as u64 != order {
        return Err(Error::InvalidCartanMatrix(format!(
            "Weyl closure produced {} elements, expected {order}",
            out.len()
        )));
    }
    Ok(out)
}

/// `w(Φ⁺)` as a set of root indices.
pub fn positive_system_of(w: &WeylElement, rs: &RootSystem) -> BTreeSet<usize> {
    (0..rs.num_positive()).map(|i| w.apply(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Root;

    fn rs(s: &str) -> RootSystem {
        RootSystem::of_type(s.parse().unwrap())
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_weyl_group(&rs("A2"), 100).unwrap().len(), 6);
        assert_eq!(enumerate_weyl_group(&rs("B2"), 100).unwrap().len(), 8);
        assert_eq!(enumerate_weyl_group(&rs("G2"), 100).unwrap().len(), 12);
    }

    #[test]
    fn cap_reports_order() {
        assert_eq!(
            enumerate_weyl_group(&rs("F4"), 1000).unwrap_err(),
            Error::CapExceeded {
                order: 1152,
                cap: 1000
            }
        );
    }

    #[test]
    fn a2_positive_systems() {
        let a2 = rs("A2");
        let w = enumerate_weyl_group(&a2, 100).unwrap();
        assert_eq!(positive_system_of(&w[0], &a2), (0..3).collect());
        let longest = w.iter().max_by_key(|e| e.length()).unwrap();
        assert_eq!(longest.length(), 3);
        assert_eq!(positive_system_of(longest, &a2), (3..6).collect());
        let s1 = WeylElement::simple_reflection(&a2, 0);
        let got: BTreeSet<Root> = positive_system_of(&s1, &a2)
            .into_iter()
            .map(|i| a2.root(i).clone())
            .collect();
        let want: BTreeSet<Root> = [Root(vec![-1, 0]), Root(vec![0, 1]), Root(vec![1, 1])]
            .into_iter()
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn inverse_and_orthogonality() {
        let b2 = rs("B2");
        for w in enumerate_weyl_group(&b2, 100).unwrap() {
            assert!(w.compose(&w.inverse()).is_identity());
            assert!(w.is_orthogonal(&b2));
        }
    }
}
