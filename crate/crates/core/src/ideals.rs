//! Ad-nilpotent and abelian ideals of the standard Borel subalgebra, normalizers,
//! and certificates deciding whether the orbit through `𝔩(𝔞, f)` is closed.

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chevalley::{GElement, GStarElement, LieAlgebra};
use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational, Subspace};
use crate::lagrange::{f_alpha, Cocycle, Subalgebra};
use crate::rootsys::{enumerate_weyl_group, positive_system_of, CartanType, Root, RootSystem, WeylElement};

/// Default rank cap for enumeration; F4 and G2 are always allowed.
pub const DEFAULT_RANK_CAP: usize = 6;

/// Environment variable overriding [`DEFAULT_RANK_CAP`].
pub const RANK_CAP_ENV: &str = "LAGORB_MAX_RANK";

/// Upper bound on the Weyl group size searched by [`certify_closed_orbit`].
pub const WEYL_CAP: u64 = 1_000_000;

/// The rank cap from the environment, or the default.
pub fn rank_cap_from_env() -> usize {
    std::env::var(RANK_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_RANK_CAP)
}

/// An upper set `Λ ⊆ Φ⁺` of the root poset, i.e. the roots of an ideal of 𝔟 inside 𝔫.
///
/// Roots are kept in descending canonical order (highest root first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IdealDescriptor {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub roots: Vec<Root>,
}

impl IdealDescriptor {
    /// Validates that `roots` is an upper set of `Φ⁺`.
    pub fn new(rs: &RootSystem, roots: &[Root]) -> Result<Self> {
        let idx = indices_of(rs, roots)?;
        for &i in &idx {
            if !rs.is_positive_index(i) {
                return Err(Error::NotPositive(rs.root(i).0.clone()));
            }
        }
        if let Some((l, m)) = upper_set_violation(rs, &idx, &(0..rs.num_positive()).collect()) {
            return Err(Error::NotAnIdeal {
                root: rs.root(l).0.clone(),
                by: rs.root(m).0.clone(),
            });
        }
        Ok(Self::from_indices(rs, idx))
    }

    fn from_indices(rs: &RootSystem, idx: BTreeSet<usize>) -> Self {
        IdealDescriptor {
            cartan_type: rs.cartan_type(),
            roots: idx.iter().rev().map(|&i| rs.root(i).clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn indices(&self, rs: &RootSystem) -> BTreeSet<usize> {
        self.roots.iter().map(|r| rs.index_of(r).expect("validated roots")).collect()
    }

    /// `𝔞_Λ = ⊕ 𝔤_λ`, with basis in the descriptor's root order.
    pub fn subalgebra<'g>(&self, algebra: &'g LieAlgebra) -> Result<Subalgebra<'g>> {
        Subalgebra::from_roots(algebra, &self.roots)
    }

    /// Intersection of two upper sets.
    pub fn intersect(&self, other: &IdealDescriptor) -> IdealDescriptor {
        let keep: HashSet<&Root> = other.roots.iter().collect();
        IdealDescriptor {
            cartan_type: self.cartan_type,
            roots: self.roots.iter().filter(|r| keep.contains(r)).cloned().collect(),
        }
    }
}

fn indices_of(rs: &RootSystem, roots: &[Root]) -> Result<BTreeSet<usize>> {
    roots.iter().map(|r| rs.require_index(r)).collect()
}

/// First `(λ, μ)` with `λ ∈ Λ`, `μ ∈ P` and `λ + μ ∈ Φ \ Λ`, if any.
fn upper_set_violation(rs: &RootSystem, lambda: &BTreeSet<usize>, positive: &BTreeSet<usize>) -> Option<(usize, usize)> {
    lambda.iter().find_map(|&l| {
        positive
            .iter()
            .find(|&&m| rs.sum_index(l, m).is_some_and(|s| !lambda.contains(&s)))
            .map(|&m| (l, m))
    })
}

/// All upper sets of the root poset, in a fixed depth-first order.
pub fn enumerate_ad_nilpotent_ideals(rs: &RootSystem, cap: usize) -> Result<Vec<IdealDescriptor>> {
    rs.cartan_type().check_rank_cap(cap)?;
    let order: Vec<usize> = (0..rs.num_positive()).rev().collect();
    let covers: Vec<Vec<usize>> = (0..rs.num_positive())
        .map(|i| (0..rs.rank()).filter_map(|s| rs.sum_index(i, rs.simple_index(s))).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; rs.num_positive()];
    dfs(rs, &order, &covers, 0, &mut chosen, &mut out);
    Ok(out)
}

fn dfs(
    rs: &RootSystem,
    order: &[usize],
    covers: &[Vec<usize>],
    pos: usize,
    chosen: &mut Vec<bool>,
    out: &mut Vec<IdealDescriptor>,
) {
    let Some(&r) = order.get(pos) else {
        let idx = (0..chosen.len()).filter(|&i| chosen[i]).collect();
        out.push(IdealDescriptor::from_indices(rs, idx));
        return;
    };
    dfs(rs, order, covers, pos + 1, chosen, out);
    if covers[r].iter().all(|&c| chosen[c]) {
        chosen[r] = true;
        dfs(rs, order, covers, pos + 1, chosen, out);
        chosen[r] = false;
    }
}

/// `λ + μ ∉ Φ` for all `λ, μ ∈ Λ`.
pub fn is_abelian(rs: &RootSystem, ideal: &IdealDescriptor) -> bool {
    let idx: Vec<usize> = ideal.indices(rs).into_iter().collect();
    idx.iter().all(|&a| idx.iter().all(|&b| rs.sum_index(a, b).is_none()))
}

/// Abelian upper sets; their number must be `2^rank`.
pub fn enumerate_abelian_ideals(rs: &RootSystem, cap: usize) -> Result<Vec<IdealDescriptor>> {
    let out: Vec<_> = enumerate_ad_nilpotent_ideals(rs, cap)?
        .into_iter()
        .filter(|i| is_abelian(rs, i))
        .collect();
    let expected = 1usize << rs.rank();
    if out.len() != expected {
        return Err(Error::PetersonMismatch {
            root_type: rs.cartan_type().to_string(),
            rank: rs.rank(),
            found: out.len(),
            expected,
        });
    }
    Ok(out)
}

/// Whether `[h_i, 𝔞] ⊆ 𝔞` for every `i`.
pub fn is_h_stable(a: &Subalgebra<'_>) -> bool {
    let g = a.algebra();
    (0..g.rank()).all(|i| {
        let h = g.h(i);
        a.basis().iter().all(|v| a.span().contains(g.bracket(&h, v).coeffs()))
    })
}

/// `N_𝔤(𝔞)` and, for 𝔥-stable `𝔞`, the 1-based indices `J` with `e_{-α_j} ∈ N_𝔤(𝔞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalizer {
    pub space: Subspace,
    pub parabolic_type: Option<Vec<usize>>,
}

pub fn normalizer(a: &Subalgebra<'_>) -> Normalizer {
    let g = a.algebra();
    let n = g.dim();
    let ann = a.span().annihilator();
    let mut rows = Vec::new();
    for v in a.basis() {
        // φ([v, x]) = 0 for all φ ∈ ann(𝔞)
        let ad = g.ad_matrix(v);
        for phi in ann.basis().row_vectors() {
            let row = ad.apply_left(phi);
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(n)
    } else {
        Matrix::from_rows(n, rows).expect("length n").kernel_basis()
    };
    let parabolic_type = is_h_stable(a).then(|| {
        let rs = g.root_system();
        (0..rs.rank())
            .filter(|&i| {
                let f = g.basis_element(g.root_vector_index(rs.neg_index(rs.simple_index(i))));
                space.contains(f.coeffs())
            })
            .map(|i| i + 1)
            .collect()
    });
    Normalizer { space, parabolic_type }
}

/// Root indices and toral dimension of an 𝔥-stable subalgebra.
fn root_decomposition(a: &Subalgebra<'_>) -> Result<(BTreeSet<usize>, usize)> {
    if !is_h_stable(a) {
        return Err(Error::NotHStable);
    }
    let g = a.algebra();
    let rs = g.root_system();
    let lambda: BTreeSet<usize> = (0..rs.roots().len())
        .filter(|&r| a.span().contains(g.basis_element(g.root_vector_index(r)).coeffs()))
        .collect();
    Ok((lambda.clone(), a.dim() - lambda.len()))
}

/// Why `Λ` fails to be an ideal of the Borel subalgebra `w(𝔟)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BorelViolation {
    /// `root ∈ Λ` is negative for `w(Φ⁺)`.
    NotPositive { root: Root },
    /// `root + by` is a root outside `Λ`, with `by ∈ w(Φ⁺)`.
    NotUpper { root: Root, by: Root },
}

/// The Weyl element (a 1-based word in simple reflections) and its violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylFailure {
    pub word: Vec<usize>,
    pub violation: BorelViolation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureVerdict {
    Closed,
    NotClosed,
}

/// Evidence supporting a [`ClosureVerdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureWitness {
    /// `Λ` is an abelian ideal of `w(𝔟)` for this 1-based word `w`, and `f = 0`.
    BorelPosition { word: Vec<usize> },
    /// The cocycle matrix itself is nonzero.
    NonzeroCocycle {
        #[serde(with = "crate::kernel::serde_string_vec_vec")]
        f: Vec<Vec<Rational>>,
    },
    /// `f_α(v_i)(v_j) = value ≠ 0`, so `𝔞` is not abelian.
    Nonabelian {
        alpha: GStarElement,
        i: usize,
        j: usize,
        #[serde(with = "crate::kernel::serde_string")]
        value: Rational,
    },
    /// A nonzero element of `𝔞 ∩ 𝔥`.
    ToralPart { element: GElement },
    /// `Λ` is not an upper set of `w(Φ⁺)` for any `w`; one violation per Weyl element.
    IdealFailure { failures: Vec<WeylFailure> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCertificate {
    pub verdict: ClosureVerdict,
    pub witness: ClosureWitness,
}

impl ClosureCertificate {
    pub fn is_closed(&self) -> bool {
        self.verdict == ClosureVerdict::Closed
    }

    /// Re-checks the witness against the input it was issued for.
    pub fn check(&self, cocycle: &Cocycle<'_>) -> Result<bool> {
        let a = cocycle.domain();
        let g = a.algebra();
        let rs = g.root_system();
        Ok(match (&self.verdict, &self.witness) {
            (ClosureVerdict::Closed, ClosureWitness::BorelPosition { word }) => {
                let (lambda, toral) = root_decomposition(a)?;
                let w = weyl_from_word(rs, word)?;
                cocycle.is_zero()
                    && a.is_abelian()
                    && toral == 0
                    && borel_violation(rs, &w, &lambda).is_none()
            }
            (ClosureVerdict::NotClosed, ClosureWitness::NonzeroCocycle { f }) => {
                !cocycle.is_zero() && matrix_rows(cocycle.matrix()) == *f
            }
            (ClosureVerdict::NotClosed, ClosureWitness::Nonabelian { alpha, i, j, value }) => {
                let fa = f_alpha(a, alpha);
                *i < a.dim() && *j < a.dim() && !value.is_zero() && fa.matrix()[(*i, *j)] == *value
            }
            (ClosureVerdict::NotClosed, ClosureWitness::ToralPart { element }) => {
                !element.is_zero()
                    && a.span().contains(element.coeffs())
                    && element.support().iter().all(|&k| k < g.rank())
            }
            (ClosureVerdict::NotClosed, ClosureWitness::IdealFailure { failures }) => {
                let (lambda, toral) = root_decomposition(a)?;
                let order = rs.cartan_type().weyl_order();
                let mut seen = HashSet::new();
                toral == 0
                    && failures.len() as u64 == order
                    && failures.iter().all(|fl| {
                        weyl_from_word(rs, &fl.word).is_ok_and(|w| {
                            seen.insert(w.permutation().to_vec())
                                && violation_holds(rs, &w, &lambda, &fl.violation)
                        })
                    })
            }
            _ => false,
        })
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<Rational>> {
    m.row_vectors().map(<[_]>::to_vec).collect()
}

fn weyl_from_word(rs: &RootSystem, word: &[usize]) -> Result<WeylElement> {
    word.iter().try_fold(WeylElement::identity(rs), |acc, &s| {
        if s == 0 || s > rs.rank() {
            return Err(Error::ContractViolation(format!("simple reflection index {s} out of range")));
        }
        Ok(acc.compose(&WeylElement::simple_reflection(rs, s - 1)))
    })
}

fn borel_violation(rs: &RootSystem, w: &WeylElement, lambda: &BTreeSet<usize>) -> Option<BorelViolation> {
    let positive = positive_system_of(w, rs);
    if let Some(&l) = lambda.iter().find(|l| !positive.contains(l)) {
        return Some(BorelViolation::NotPositive { root: rs.root(l).clone() });
    }
    upper_set_violation(rs, lambda, &positive).map(|(l, m)| BorelViolation::NotUpper {
        root: rs.root(l).clone(),
        by: rs.root(m).clone(),
    })
}

fn violation_holds(rs: &RootSystem, w: &WeylElement, lambda: &BTreeSet<usize>, v: &BorelViolation) -> bool {
    let positive = positive_system_of(w, rs);
    match v {
        BorelViolation::NotPositive { root } => {
            rs.index_of(root).is_some_and(|l| lambda.contains(&l) && !positive.contains(&l))
        }
        BorelViolation::NotUpper { root, by } => match (rs.index_of(root), rs.index_of(by)) {
            (Some(l), Some(m)) => {
                lambda.contains(&l)
                    && positive.contains(&m)
                    && rs.sum_index(l, m).is_some_and(|s| !lambda.contains(&s))
            }
            _ => false,
        },
    }
}

/// Decides whether the orbit through `𝔩(𝔞, f)` is closed, for 𝔥-stable `𝔞`.
pub fn certify_closed_orbit(cocycle: &Cocycle<'_>) -> Result<ClosureCertificate> {
    let a = cocycle.domain();
    let g = a.algebra();
    let rs = g.root_system();
    let (lambda, toral) = root_decomposition(a)?;
    let not_closed = |witness| ClosureCertificate {
        verdict: ClosureVerdict::NotClosed,
        witness,
    };
    if !cocycle.is_zero() {
        return Ok(not_closed(ClosureWitness::NonzeroCocycle {
            f: matrix_rows(cocycle.matrix()),
        }));
    }
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let b = g.bracket(&a.basis()[i], &a.basis()[j]);
            if let Some(&t) = b.support().first() {
                let alpha = GStarElement::unit(g.dim(), t);
                let value = b.coeffs()[t].clone();
                return Ok(not_closed(ClosureWitness::Nonabelian { alpha, i, j, value }));
            }
        }
    }
    if toral > 0 {
        let element = a
            .basis()
            .iter()
            .map(|v| GElement::new((0..g.dim()).map(|k| if k < g.rank() { v.coeffs()[k].clone() } else { Rational::zero() }).collect()))
            .find(|h| !h.is_zero())
            .expect("a toral part exists");
        return Ok(not_closed(ClosureWitness::ToralPart { element }));
    }
    let mut failures = Vec::new();
    for w in enumerate_weyl_group(rs, WEYL_CAP)? {
        let word = w.word().iter().map(|s| s + 1).collect();
        match borel_violation(rs, &w, &lambda) {
            None => {
                return Ok(ClosureCertificate {
                    verdict: ClosureVerdict::Closed,
                    witness: ClosureWitness::BorelPosition { word },
                })
            }
            Some(violation) => failures.push(WeylFailure { word, violation }),
        }
    }
    Ok(not_closed(ClosureWitness::IdealFailure { failures }))
}

/// One row of the orbit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDescriptor {
    pub ideal: IdealDescriptor,
    pub dim_a: usize,
    pub parabolic_j: Vec<usize>,
    pub orbit_dim: usize,
    pub certified_closed: bool,
}

/// One row per abelian ideal: its normalizer's parabolic type and the orbit dimension.
pub fn orbit_table(algebra: &LieAlgebra, cap: usize) -> Result<Vec<OrbitDescriptor>> {
    let rs = algebra.root_system();
    enumerate_abelian_ideals(rs, cap)?
        .into_iter()
        .map(|ideal| {
            let a = ideal.subalgebra(algebra)?;
            let norm = normalizer(&a);
            let parabolic_j = norm.parabolic_type.clone().ok_or(Error::NotHStable)?;
            let cocycle = Cocycle::zero(a);
            let cert = certify_closed_orbit(&cocycle)?;
            if !cert.check(&cocycle)? {
                return Err(Error::ContractViolation("closure certificate failed its own check".into()));
            }
            Ok(OrbitDescriptor {
                dim_a: ideal.len(),
                parabolic_j,
                orbit_dim: algebra.dim() - norm.space.dim(),
                certified_closed: cert.is_closed(),
                ideal,
            })
        })
        .collect()
}

/// `|Φ⁻| - |Φ⁻ ∩ span_J|` for 1-based `J`.
pub fn parabolic_orbit_dim(rs: &RootSystem, j: &[usize]) -> usize {
    let in_levi = rs
        .positive_roots()
        .iter()
        .filter(|r| r.coeffs().iter().enumerate().all(|(i, &c)| c == 0 || j.contains(&(i + 1))))
        .count();
    rs.num_positive() - in_levi
}
