//! Subalgebras, skew cocycles and the Lagrangian subalgebras `𝔩(𝔞, f)` of 𝔡.
//!
//! A cocycle is stored as its value matrix `F[i][j] = f(v_i)(v_j)` on a fixed
//! basis `v_1, …, v_k` of 𝔞.

use num_traits::Zero;
use rand::Rng;

use crate::chevalley::{character, GElement, GStarElement, GroupElement, LieAlgebra};
use crate::double::{DGroupElement, Double, DoubleElement};
use crate::error::{Error, Result};
use crate::kernel::{dot, Coordinates, Matrix, Rational, Subspace};
use crate::rootsys::Root;

/// A Lie subalgebra `𝔞 ⊆ 𝔤` with an ordered basis.
///
/// `closure[i][j]` holds the coordinates of `[v_i, v_j]` in the basis, and is
/// filled in (and thereby verified) at construction.
#[derive(Clone, Debug)]
pub struct Subalgebra<'g> {
    algebra: &'g LieAlgebra,
    basis: Vec<GElement>,
    span: Subspace,
    coords: Coordinates,
    closure: Vec<Vec<Vec<Rational>>>,
}

impl<'g> Subalgebra<'g> {
    pub fn new(algebra: &'g LieAlgebra, basis: Vec<GElement>) -> Result<Self> {
        let n = algebra.dim();
        if let Some(bad) = basis.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let m = Matrix::from_rows(n, basis.iter().map(|v| v.coeffs().to_vec()).collect())?;
        let coords = Coordinates::new(&m)?;
        let k = basis.len();
        let mut closure = vec![vec![vec![Rational::zero(); k]; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let b = algebra.bracket(&basis[i], &basis[j]);
                let c = coords.solve(b.coeffs()).ok_or(Error::NotASubalgebra(i, j))?;
                closure[j][i] = c.iter().map(|x| -x).collect();
                closure[i][j] = c;
            }
        }
        Ok(Subalgebra {
            algebra,
            basis,
            span: Subspace::row_space(&m),
            coords,
            closure,
        })
    }

    /// The span of root vectors `e_λ`, in the given order.
    pub fn from_roots(algebra: &'g LieAlgebra, roots: &[Root]) -> Result<Self> {
        let basis = roots.iter().map(|r| algebra.e(r)).collect::<Result<_>>()?;
        Self::new(algebra, basis)
    }

    pub fn zero(algebra: &'g LieAlgebra) -> Self {
        Self::new(algebra, Vec::new()).expect("empty basis")
    }

    pub fn whole(algebra: &'g LieAlgebra) -> Self {
        let n = algebra.dim();
        Self::new(algebra, (0..n).map(|i| GElement::unit(n, i)).collect()).expect("canonical basis")
    }

    pub fn algebra(&self) -> &'g LieAlgebra {
        self.algebra
    }

    pub fn basis(&self) -> &[GElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Coordinates of `[v_i, v_j]` in the basis.
    pub fn closure(&self, i: usize, j: usize) -> &[Rational] {
        &self.closure[i][j]
    }

    /// Coordinates of `x` in the basis, if `x ∈ 𝔞`.
    pub fn coordinates(&self, x: &GElement) -> Option<Vec<Rational>> {
        self.coords.solve(x.coeffs())
    }

    pub fn is_abelian(&self) -> bool {
        self.closure.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// `[𝔞, 𝔞]` in basis coordinates (ambient dimension `k`).
    pub fn derived_coordinates(&self) -> Subspace {
        let k = self.dim();
        let rows = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        Subspace::span(k, rows.map(|(i, j)| self.closure[i][j].clone())).expect("length k")
    }

    /// For a basis of root vectors, the root of each basis vector.
    pub fn root_labels(&self) -> Result<Vec<usize>> {
        self.basis
            .iter()
            .map(|v| match v.support().as_slice() {
                [i] => self.algebra.root_of_basis(*i).ok_or(Error::NotHStable),
                _ => Err(Error::NotHStable),
            })
            .collect()
    }

    /// `g · 𝔞` with basis `g v_1, …, g v_k`.
    pub fn transport(&self, g: &GroupElement) -> Subalgebra<'g> {
        let basis = self.basis.iter().map(|v| g.act(v)).collect();
        Subalgebra::new(self.algebra, basis).expect("automorphisms map subalgebras to subalgebras")
    }

    /// Dual functionals `v_j^#` for the basis completed by `complement`.
    fn dual_functionals(&self, complement: &[GElement]) -> Result<Vec<GStarElement>> {
        let n = self.algebra.dim();
        let rows: Vec<Vec<Rational>> =
            self.basis.iter().chain(complement).map(|v| v.coeffs().to_vec()).collect();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let b = Matrix::from_rows(n, rows)?;
        let inv = b.inverse().ok_or(Error::LinearlyDependent)?;
        Ok((0..self.dim()).map(|j| GStarElement::new(inv.column(j))).collect())
    }

    /// Canonical basis vectors completing the basis to one of 𝔤, chosen greedily in order.
    pub fn greedy_complement(&self) -> Vec<GElement> {
        let n = self.algebra.dim();
        let mut span = self.span.clone();
        let mut out = Vec::new();
        for t in 0..n {
            if span.dim() == n {
                break;
            }
            let e = GElement::unit(n, t);
            if !span.contains(e.coeffs()) {
                let rows = span.basis().row_vectors().map(<[_]>::to_vec).chain([e.coeffs().to_vec()]);
                span = Subspace::span(n, rows).expect("length n");
                out.push(e);
            }
        }
        out
    }
}

/// A skew 1-cocycle `f: 𝔞 → 𝔞*`, given by `F[i][j] = f(v_i)(v_j)`.
#[derive(Clone, Debug)]
pub struct Cocycle<'g> {
    domain: Subalgebra<'g>,
    f: Matrix,
}

impl<'g> Cocycle<'g> {
    pub fn new(domain: Subalgebra<'g>, f: Matrix) -> Result<Self> {
        if !check_cocycle(&domain, &f)? {
            return Err(Error::InvalidCocycle);
        }
        Ok(Cocycle { domain, f })
    }

    pub fn zero(domain: Subalgebra<'g>) -> Self {
        let k = domain.dim();
        Cocycle {
            domain,
            f: Matrix::zeros(k, k),
        }
    }

    pub fn domain(&self) -> &Subalgebra<'g> {
        &self.domain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// `f(x)(y)` for `x, y ∈ 𝔞` given in basis coordinates.
    pub fn eval_coords(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(&self.f.apply_left(x), y)
    }
}

/// Decides whether `F` is skew and satisfies the cocycle identity on `𝔞`.
pub fn check_cocycle(a: &Subalgebra<'_>, f: &Matrix) -> Result<bool> {
    let k = a.dim();
    if f.rows() != k || f.cols() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: if f.rows() != k { f.rows() } else { f.cols() },
        });
    }
    for i in 0..k {
        for j in i..k {
            if f[(i, j)] != -&f[(j, i)] {
                return Ok(false);
            }
        }
    }
    let row = |i: usize| f.row(i).to_vec();
    for i in 0..k {
        for j in i + 1..k {
            // f([v_i, v_j]) as a functional on 𝔞
            let fij = f.apply_left(a.closure(i, j));
            for m in 0..k {
                let val = -dot(&row(j), a.closure(i, m)) + dot(&row(i), a.closure(j, m)) - &fij[m];
                if !val.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A point of the variety of Lagrangian subalgebras of 𝔡.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LagrangianPoint {
    subspace: Subspace,
}

impl LagrangianPoint {
    /// Wraps a subspace after checking that it is a Lagrangian subalgebra.
    pub fn new(double: &Double<'_>, subspace: Subspace) -> Result<Self> {
        let verdict = verify_lagrangian(double, &subspace)?;
        if !(verdict.is_lagrangian && verdict.is_subalgebra) {
            return Err(Error::ContractViolation(format!(
                "not a Lagrangian subalgebra: {:?}",
                verdict.failure_witness
            )));
        }
        Ok(LagrangianPoint { subspace })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// `𝔩(𝔞, f)`, using the greedy completion for the dual functionals.
pub fn build_lagrangian(cocycle: &Cocycle<'_>) -> Result<LagrangianPoint> {
    build_lagrangian_with_complement(cocycle, &cocycle.domain.greedy_complement())
}

/// `𝔩(𝔞, f)`, with the dual functionals taken from the basis `v_1, …, v_k` followed by `complement`.
pub fn build_lagrangian_with_complement(
    cocycle: &Cocycle<'_>,
    complement: &[GElement],
) -> Result<LagrangianPoint> {
    let a = &cocycle.domain;
    if !check_cocycle(a, &cocycle.f)? {
        return Err(Error::InvalidCocycle);
    }
    let double = Double::new(a.algebra);
    let n = a.algebra.dim();
    let duals = a.dual_functionals(complement)?;
    let mut rows = Vec::with_capacity(n);
    for (i, v) in a.basis.iter().enumerate() {
        let mut alpha = GStarElement::zeros(n);
        for (j, dj) in duals.iter().enumerate() {
            if !cocycle.f[(i, j)].is_zero() {
                alpha = alpha.add(&dj.scale(&cocycle.f[(i, j)]));
            }
        }
        rows.push(DoubleElement::new(v.clone(), alpha).to_coords());
    }
    for w in a.span.annihilator().basis().row_vectors() {
        rows.push(DoubleElement::from_dual(GStarElement::new(w.to_vec())).to_coords());
    }
    let subspace = Subspace::span(double.dim(), rows)?;
    if subspace.dim() != n {
        return Err(Error::ContractViolation(format!(
            "built point has dimension {}, expected {n}",
            subspace.dim()
        )));
    }
    Ok(LagrangianPoint { subspace })
}

/// Why a subspace failed to be a Lagrangian subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureWitness {
    /// Basis vectors `i`, `j` of the RREF basis pair to `value ≠ 0`.
    NotIsotropic { i: usize, j: usize, value: Rational },
    /// The bracket of basis vectors `i`, `j` leaves the subspace.
    NotClosed { i: usize, j: usize },
    /// Isotropic, but of the wrong dimension.
    WrongDimension { found: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianVerdict {
    pub is_isotropic: bool,
    pub is_subalgebra: bool,
    pub is_lagrangian: bool,
    pub failure_witness: Option<FailureWitness>,
}

impl LagrangianVerdict {
    pub fn all_true(&self) -> bool {
        self.is_isotropic && self.is_subalgebra && self.is_lagrangian
    }
}

pub fn verify_lagrangian(double: &Double<'_>, w: &Subspace) -> Result<LagrangianVerdict> {
    if w.ambient_dim() != double.dim() {
        return Err(Error::DimensionMismatch {
            expected: double.dim(),
            found: w.ambient_dim(),
        });
    }
    let basis: Vec<DoubleElement> = w.basis().row_vectors().map(DoubleElement::from_coords).collect();
    let mut witness = None;
    let mut is_isotropic = true;
    'iso: for i in 0..basis.len() {
        for j in i..basis.len() {
            let value = double.bilinear_form(&basis[i], &basis[j]);
            if !value.is_zero() {
                is_isotropic = false;
                witness = Some(FailureWitness::NotIsotropic { i, j, value });
                break 'iso;
            }
        }
    }
    let mut is_subalgebra = true;
    'sub: for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !w.contains(&double.d_bracket(&basis[i], &basis[j]).to_coords()) {
                is_subalgebra = false;
                witness.get_or_insert(FailureWitness::NotClosed { i, j });
                break 'sub;
            }
        }
    }
    let right_dim = w.dim() == double.half_dim();
    if is_isotropic && !right_dim {
        witness.get_or_insert(FailureWitness::WrongDimension {
            found: w.dim(),
            expected: double.half_dim(),
        });
    }
    Ok(LagrangianVerdict {
        is_isotropic,
        is_subalgebra,
        is_lagrangian: is_isotropic && right_dim,
        failure_witness: witness,
    })
}

/// `f_α(x) = -ad*_x(α|_𝔞)`, with matrix `α([v_i, v_j])`.
pub fn f_alpha<'g>(a: &Subalgebra<'g>, alpha: &GStarElement) -> Cocycle<'g> {
    let k = a.dim();
    let mut f = Matrix::zeros(k, k);
    if !alpha.is_zero() {
        for i in 0..k {
            for j in i + 1..k {
                let v = alpha.eval(&a.algebra.bracket(&a.basis[i], &a.basis[j]));
                f[(j, i)] = -&v;
                f[(i, j)] = v;
            }
        }
    }
    Cocycle {
        domain: a.clone(),
        f,
    }
}

/// `g.(𝔞, f) = (Ad_g 𝔞, g.f)`; in the transported basis the matrix is unchanged.
pub fn act_group<'g>(g: &GroupElement, cocycle: &Cocycle<'g>) -> Cocycle<'g> {
    Cocycle {
        domain: cocycle.domain.transport(g),
        f: cocycle.f.clone(),
    }
}

/// [`act_group`], also checking `Ad_g 𝔩(𝔞, f) = 𝔩(Ad_g 𝔞, g.f)`.
pub fn act_group_checked<'g>(g: &GroupElement, cocycle: &Cocycle<'g>) -> Result<Cocycle<'g>> {
    let out = act_group(g, cocycle);
    let double = Double::new(cocycle.domain.algebra);
    let moved = double.big_ad_subspace(&DGroupElement::from_group(g.clone()), build_lagrangian(cocycle)?.subspace());
    if &moved != build_lagrangian(&out)?.subspace() {
        return Err(Error::ContractViolation("group action does not match the transported point".into()));
    }
    Ok(out)
}

/// `α.(𝔞, f) = (𝔞, f + f_α)`.
pub fn act_translation<'g>(alpha: &GStarElement, cocycle: &Cocycle<'g>) -> Cocycle<'g> {
    let fa = f_alpha(&cocycle.domain, alpha);
    Cocycle {
        domain: cocycle.domain.clone(),
        f: &cocycle.f + &fa.f,
    }
}

/// [`act_translation`], also checking `Ad_α 𝔩(𝔞, f) = 𝔩(𝔞, f + f_α)`.
pub fn act_translation_checked<'g>(alpha: &GStarElement, cocycle: &Cocycle<'g>) -> Result<Cocycle<'g>> {
    let out = act_translation(alpha, cocycle);
    let algebra = cocycle.domain.algebra;
    let double = Double::new(algebra);
    let shift = DGroupElement::translation(algebra, alpha.clone());
    let moved = double.big_ad_subspace(&shift, build_lagrangian(cocycle)?.subspace());
    if &moved != build_lagrangian(&out)?.subspace() {
        return Err(Error::ContractViolation("translation does not match the shifted cocycle".into()));
    }
    Ok(out)
}

/// The torus element `t_c` acting on `f` for a basis of root vectors, kept in the same basis:
/// `F'[i][j] = χ_{λ_i}(c)⁻¹ χ_{λ_j}(c)⁻¹ F[i][j]`.
pub fn torus_twist_f<'g>(c: &[Rational], cocycle: &Cocycle<'g>) -> Result<Cocycle<'g>> {
    let a = &cocycle.domain;
    let rs = a.algebra.root_system();
    if c.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: c.len(),
        });
    }
    let inv_chars = a
        .root_labels()?
        .into_iter()
        .map(|r| character(c, rs.root(r)).map(|x| x.recip()))
        .collect::<Result<Vec<_>>>()?;
    let k = a.dim();
    let mut f = cocycle.f.clone();
    for i in 0..k {
        for j in 0..k {
            if !f[(i, j)].is_zero() {
                f[(i, j)] = &f[(i, j)] * &inv_chars[i] * &inv_chars[j];
            }
        }
    }
    Ok(Cocycle {
        domain: a.clone(),
        f,
    })
}

/// Decides `𝔩(𝔞, f) = 𝔩(𝔞', f')` by comparing spans and the maps after change of basis.
pub fn points_equal(p: &Cocycle<'_>, q: &Cocycle<'_>) -> bool {
    if p.domain.span != q.domain.span {
        return false;
    }
    // rows of `change` express q's basis in p's basis
    let change: Vec<Vec<Rational>> = q
        .domain
        .basis
        .iter()
        .map(|u| p.domain.coordinates(u).expect("equal spans"))
        .collect();
    let k = change.len();
    (0..k).all(|i| (0..k).all(|j| p.eval_coords(&change[i], &change[j]) == q.f[(i, j)]))
}

/// A random rational in `[-5, 5]` with denominator at most 3.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

pub fn random_functional<R: Rng>(n: usize, rng: &mut R) -> GStarElement {
    GStarElement::new((0..n).map(|_| random_rational(rng)).collect())
}

/// A random valid cocycle on `a`: `f_α` for random `α`, plus a random skew
/// form on `𝔞` vanishing whenever an argument lies in `[𝔞, 𝔞]`.
pub fn random_cocycle<'g, R: Rng>(a: &Subalgebra<'g>, rng: &mut R) -> Cocycle<'g> {
    let k = a.dim();
    let base = f_alpha(a, &random_functional(a.algebra.dim(), rng));
    let psi: Vec<Vec<Rational>> = a.derived_coordinates().annihilator().basis().row_vectors().map(<[_]>::to_vec).collect();
    let mut f = base.f;
    for s in 0..psi.len() {
        for t in s + 1..psi.len() {
            let c = random_rational(rng);
            if c.is_zero() {
                continue;
            }
            for i in 0..k {
                for j in 0..k {
                    let wedge = &psi[s][i] * &psi[t][j] - &psi[t][i] * &psi[s][j];
                    if !wedge.is_zero() {
                        f[(i, j)] += &c * wedge;
                    }
                }
            }
        }
    }
    Cocycle {
        domain: a.clone(),
        f,
    }
}

/// The twisted matrix predicted for `t_c` acting on a root-vector basis, used to
/// cross-check [`torus_twist_f`] against [`act_group`].
pub fn twist_via_group<'g>(g: &GroupElement, cocycle: &Cocycle<'g>) -> Result<Cocycle<'g>> {
    let moved = act_group(g, cocycle);
    let a = &cocycle.domain;
    // express g·v_i back in the original basis and pull the matrix back
    let change: Vec<Vec<Rational>> = a
        .basis
        .iter()
        .map(|v| moved.domain.coordinates(v).ok_or(Error::NotHStable))
        .collect::<Result<_>>()?;
    let k = a.dim();
    let mut f = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            f[(i, j)] = moved.eval_coords(&change[i], &change[j]);
        }
    }
    Ok(Cocycle {
        domain: a.clone(),
        f,
    })
}
