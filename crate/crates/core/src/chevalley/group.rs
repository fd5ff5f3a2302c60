use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{GElement, GStarElement, LieAlgebra};
use crate::error::{Error, Result};
use crate::kernel::{serde_string, serde_string_vec, Matrix, Rational};
use crate::rootsys::Root;

/// One factor of a group word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    /// `exp(t · ad e_root)`.
    Unipotent {
        root: Root,
        #[serde(with = "serde_string")]
        t: Rational,
    },
    /// Torus element acting on `𝔤_λ` by `Π c_i^{λ_i}`.
    Torus(#[serde(with = "serde_string_vec")] Vec<Rational>),
}

impl Generator {
    fn inverse(&self) -> Generator {
        match self {
            Generator::Unipotent { root, t } => Generator::Unipotent {
                root: root.clone(),
                t: -t,
            },
            Generator::Torus(c) => Generator::Torus(c.iter().map(|x| x.recip()).collect()),
        }
    }
}

/// `χ_λ(c) = Π c_i^{λ_i}`.
pub fn character(c: &[Rational], lambda: &Root) -> Result<Rational> {
    let mut acc = Rational::one();
    for (i, (ci, &k)) in c.iter().zip(lambda.coeffs()).enumerate() {
        if ci.is_zero() {
            return Err(Error::ZeroCharacterValue(i));
        }
        acc *= num_traits::pow::Pow::pow(ci, k);
    }
    Ok(acc)
}

/// An element of the adjoint group, acting on 𝔤-coordinates by `x ↦ M x`.
///
/// Built only from generators (unipotents and torus elements). Each generator
/// is checked to preserve brackets when it is created, so products are
/// automorphisms as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: Matrix,
    inverse: Matrix,
    word: Vec<Generator>,
}

impl GroupElement {
    pub fn identity(algebra: &LieAlgebra) -> Self {
        let n = algebra.dim();
        GroupElement {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
            word: Vec::new(),
        }
    }

    pub fn unipotent(algebra: &LieAlgebra, root: &Root, t: &Rational) -> Result<Self> {
        let ad = algebra.ad_matrix(&algebra.e(root)?);
        let g = GroupElement {
            matrix: ad.exp_nilpotent(t)?,
            inverse: ad.exp_nilpotent(&-t)?,
            word: vec![Generator::Unipotent {
                root: root.clone(),
                t: t.clone(),
            }],
        };
        g.verify_automorphism(algebra)?;
        Ok(g)
    }

    pub fn torus(algebra: &LieAlgebra, c: &[Rational]) -> Result<Self> {
        let rs = algebra.root_system();
        if c.len() != rs.rank() {
            return Err(Error::DimensionMismatch {
                expected: rs.rank(),
                found: c.len(),
            });
        }
        let n = algebra.dim();
        let mut matrix = Matrix::identity(n);
        let mut inverse = Matrix::identity(n);
        for (r, root) in rs.roots().iter().enumerate() {
            let i = algebra.root_vector_index(r);
            let chi = character(c, root)?;
            inverse[(i, i)] = chi.recip();
            matrix[(i, i)] = chi;
        }
        let g = GroupElement {
            matrix,
            inverse,
            word: vec![Generator::Torus(c.to_vec())],
        };
        g.verify_automorphism(algebra)?;
        Ok(g)
    }

    pub fn from_generator(algebra: &LieAlgebra, gen: &Generator) -> Result<Self> {
        match gen {
            Generator::Unipotent { root, t } => Self::unipotent(algebra, root, t),
            Generator::Torus(c) => Self::torus(algebra, c),
        }
    }

    /// Product of the word's factors, left to right.
    pub fn from_word(algebra: &LieAlgebra, word: &[Generator]) -> Result<Self> {
        word.iter().try_fold(Self::identity(algebra), |acc, g| {
            Ok(acc.compose(&Self::from_generator(algebra, g)?))
        })
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: &self.matrix * &other.matrix,
            inverse: &other.inverse * &self.inverse,
            word: self.word.iter().chain(&other.word).cloned().collect(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            word: self.word.iter().rev().map(Generator::inverse).collect(),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.rows())
    }

    /// `Ad_g x`.
    pub fn act(&self, x: &GElement) -> GElement {
        GElement::new(self.matrix.apply(x.coeffs()))
    }

    /// `Ad*_g γ = γ ∘ Ad_{g⁻¹}`.
    pub fn act_dual(&self, gamma: &GStarElement) -> GStarElement {
        GStarElement::new(self.inverse.apply_left(gamma.coeffs()))
    }

    /// Checks `[g b_i, g b_j] = g [b_i, b_j]` on all basis pairs (`i < j` by antisymmetry).
    pub fn verify_automorphism(&self, algebra: &LieAlgebra) -> Result<()> {
        let n = algebra.dim();
        let columns: Vec<GElement> = (0..n).map(|j| GElement::new(self.matrix.column(j))).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = algebra.bracket(&columns[i], &columns[j]);
                let mut rhs = GElement::zeros(n);
                for &(k, c) in algebra.structure(i, j) {
                    rhs = rhs.add(&columns[k].scale(&Rational::from_integer(c.into())));
                }
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(i, j));
                }
            }
        }
        if &self.matrix * &self.inverse != Matrix::identity(n) {
            return Err(Error::ContractViolation("stored inverse is wrong".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::kernel::{rat, ratio};
    use crate::rootsys::RootSystem;

    fn algebra(s: &str) -> LieAlgebra {
        build_chevalley_algebra(&RootSystem::of_type(s.parse().unwrap())).unwrap()
    }

    #[test]
    fn unipotent_at_zero_is_identity() {
        let a2 = algebra("A2");
        let g = GroupElement::unipotent(&a2, &Root(vec![1, 1]), &rat(0)).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn sl2_unipotent_matches_hand_computation() {
        let a1 = algebra("A1");
        let g = GroupElement::unipotent(&a1, &Root(vec![1]), &rat(1)).unwrap();
        // basis (h, e, f): h ↦ h − 2e, f ↦ f + h − e
        let expected = Matrix::from_i64(&[&[1, 0, 1], &[-2, 1, -1], &[0, 0, 1]]);
        assert_eq!(g.matrix(), &expected);
    }

    #[test]
    fn one_parameter_subgroup() {
        let b2 = algebra("B2");
        let r = Root(vec![1, 1]);
        let s = GroupElement::unipotent(&b2, &r, &ratio(1, 3)).unwrap();
        let t = GroupElement::unipotent(&b2, &r, &rat(-2)).unwrap();
        let st = GroupElement::unipotent(&b2, &r, &ratio(-5, 3)).unwrap();
        assert_eq!(s.compose(&t).matrix(), st.matrix());
    }

    #[test]
    fn torus_examples() {
        let a2 = algebra("A2");
        assert!(GroupElement::torus(&a2, &[rat(1), rat(1)]).unwrap().is_identity());
        let g = GroupElement::torus(&a2, &[rat(2), rat(3)]).unwrap();
        let th = a2.e(&Root(vec![1, 1])).unwrap();
        assert_eq!(g.act(&th), th.scale(&rat(6)));
        let f1 = a2.e(&Root(vec![-1, 0])).unwrap();
        assert_eq!(g.act(&f1), f1.scale(&ratio(1, 2)));
        assert_eq!(
            GroupElement::torus(&a2, &[rat(0), rat(1)]).unwrap_err(),
            Error::ZeroCharacterValue(0)
        );
        let h = GroupElement::torus(&a2, &[ratio(1, 5), rat(7)]).unwrap();
        let prod = GroupElement::torus(&a2, &[ratio(2, 5), rat(21)]).unwrap();
        assert_eq!(g.compose(&h).matrix(), prod.matrix());
        assert_eq!(g.compose(&h).matrix(), h.compose(&g).matrix());
    }

    #[test]
    fn dual_action_preserves_pairing() {
        let g2 = algebra("G2");
        let g = GroupElement::from_word(
            &g2,
            &[
                Generator::Unipotent {
                    root: Root(vec![1, 0]),
                    t: rat(2),
                },
                Generator::Torus(vec![rat(3), ratio(-1, 2)]),
                Generator::Unipotent {
                    root: Root(vec![-3, -2]),
                    t: ratio(1, 3),
                },
            ],
        )
        .unwrap();
        g.verify_automorphism(&g2).unwrap();
        let n = g2.dim();
        let gamma = GStarElement::new((0..n as i64).map(|i| rat(i - 5)).collect());
        let y = GElement::new((0..n as i64).map(|i| ratio(i * i - 3, 2)).collect());
        assert_eq!(g.act_dual(&gamma).eval(&g.act(&y)), gamma.eval(&y));
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(g.inverse().word().len(), 3);
    }

    #[test]
    fn rejects_non_automorphism() {
        let a1 = algebra("A1");
        let bogus = GroupElement {
            matrix: Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]),
            inverse: Matrix::identity(3),
            word: Vec::new(),
        };
        assert!(bogus.verify_automorphism(&a1).is_err());
    }

    #[test]
    fn word_json_shape() {
        let word = vec![
            Generator::Unipotent {
                root: Root(vec![1, 0]),
                t: ratio(1, 3),
            },
            Generator::Torus(vec![rat(2), ratio(-3, 2)]),
        ];
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(
            json,
            r#"[{"unipotent":{"root":[1,0],"t":"1/3"}},{"torus":["2","-3/2"]}]"#
        );
        let back: Vec<Generator> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, word);
    }
}
