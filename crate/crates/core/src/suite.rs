//! Invariant suites run by `lagorb selftest`.
//!
//! Every check is exact. Sampled inputs come from a seeded generator, so a
//! given configuration always produces the same report.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chevalley::{build_chevalley_algebra, character, GStarElement, Generator, GroupElement, LieAlgebra, SparseVec};
use crate::double::{verify_table_jacobi, DGroupElement, Double, DoubleElement};
use crate::error::Result;
use crate::ideals::{
    certify_closed_orbit, enumerate_ad_nilpotent_ideals, enumerate_abelian_ideals, is_abelian, normalizer, orbit_table,
    parabolic_orbit_dim, ClosureWitness,
};
use crate::kernel::{rat, Rational, Subspace};
use crate::lagrange::{
    act_group, act_group_checked, act_translation, act_translation_checked, build_lagrangian, check_cocycle, f_alpha,
    random_cocycle, random_functional, random_rational, torus_twist_f, twist_via_group, verify_lagrangian, Cocycle,
};
use crate::rootsys::{CartanType, Root, RootSystem};

/// Types covered by default: everything of rank at most four.
pub const DEFAULT_TYPES: &str = "A1,A2,A3,A4,B2,B3,B4,C3,C4,D4,G2,F4";

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub types: Vec<CartanType>,
    pub seed: u64,
    /// Re-verify the group and translation action contracts as subspace equalities.
    pub debug_verify: bool,
    /// Number of sampled group elements and functionals per type.
    pub samples: usize,
    pub rank_cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            types: CartanType::parse_list(DEFAULT_TYPES).expect("valid default list"),
            seed: 0,
            debug_verify: false,
            samples: 3,
            rank_cap: crate::ideals::DEFAULT_RANK_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub check: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Per-type generator, independent of the order in which types are run.
pub fn type_rng(seed: u64, t: CartanType) -> ChaCha8Rng {
    let salt = t.to_string().bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
    ChaCha8Rng::seed_from_u64(seed ^ salt.rotate_left(17))
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A product of three random generators.
pub fn random_group_element<R: Rng>(algebra: &LieAlgebra, rng: &mut R) -> Result<GroupElement> {
    let rs = algebra.root_system();
    let word: Vec<Generator> = (0..3)
        .map(|_| {
            if rng.gen_bool(0.7) {
                let r = rng.gen_range(0..rs.roots().len());
                Generator::Unipotent {
                    root: rs.root(r).clone(),
                    t: random_nonzero_rational(rng),
                }
            } else {
                Generator::Torus((0..rs.rank()).map(|_| random_nonzero_rational(rng)).collect())
            }
        })
        .collect();
    GroupElement::from_word(algebra, &word)
}

pub fn random_d_group_element<R: Rng>(algebra: &LieAlgebra, rng: &mut R) -> Result<DGroupElement> {
    let g = random_group_element(algebra, rng)?;
    Ok(DGroupElement::new(g, random_functional(algebra.dim(), rng)))
}

/// The generators used by the action contracts: `unipotent(±α_i, t)` for
/// `t ∈ {1, -2, 1/3}` and the torus elements `(2, …, 2)` and `(1/2, 3, …, 3)`.
pub fn contract_generators(algebra: &LieAlgebra) -> Result<Vec<GroupElement>> {
    let rs = algebra.root_system();
    let l = rs.rank();
    let ts = [rat(1), rat(-2), Rational::new(1.into(), 3.into())];
    let mut out = Vec::new();
    for i in 0..l {
        let s = Root::simple(l, i);
        for root in [s.clone(), s.neg()] {
            for t in &ts {
                out.push(GroupElement::unipotent(algebra, &root, t)?);
            }
        }
    }
    out.push(GroupElement::torus(algebra, &vec![rat(2); l])?);
    let mut c = vec![rat(3); l];
    c[0] = Rational::new(1.into(), 2.into());
    out.push(GroupElement::torus(algebra, &c)?);
    Ok(out)
}

/// The torus parameter `(2, 3, 4, …)`.
pub fn scaling_parameter(rank: usize) -> Vec<Rational> {
    (0..rank as i64).map(|i| rat(i + 2)).collect()
}

struct Recorder<'a> {
    t: String,
    out: &'a mut Vec<CheckOutcome>,
}

impl Recorder<'_> {
    fn record(&mut self, check: &str, result: Result<(usize, Option<String>)>) {
        let (passed, cases, detail) = match result {
            Ok((cases, None)) => (true, cases, String::new()),
            Ok((cases, Some(why))) => (false, cases, why),
            Err(e) => (false, 0, e.to_string()),
        };
        self.out.push(CheckOutcome {
            cartan_type: self.t.clone(),
            check: check.to_string(),
            passed,
            cases,
            detail,
        });
    }
}

fn table_of(algebra: &LieAlgebra) -> Vec<Vec<SparseVec>> {
    let n = algebra.dim();
    (0..n).map(|i| (0..n).map(|j| algebra.structure(i, j).clone()).collect()).collect()
}

/// Runs every suite for every configured type.
pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let mut outcomes = Vec::new();
    for &t in &config.types {
        let mut rec = Recorder {
            t: t.to_string(),
            out: &mut outcomes,
        };
        if let Err(e) = t.check_rank_cap(config.rank_cap) {
            rec.record("rank_cap", Err(e));
            continue;
        }
        let rs = RootSystem::of_type(t);
        let algebra = match build_chevalley_algebra(&rs) {
            Ok(a) => a,
            Err(e) => {
                rec.record("chevalley_basis", Err(e));
                continue;
            }
        };
        run_type(&algebra, config, &mut rec);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    SuiteReport {
        failed: outcomes.len() - passed,
        passed,
        outcomes,
    }
}

fn run_type(algebra: &LieAlgebra, config: &SuiteConfig, rec: &mut Recorder<'_>) {
    let rs = algebra.root_system();
    let t = rs.cartan_type();
    let double = Double::new(algebra);
    let mut rng = type_rng(config.seed, t);

    rec.record("peterson_count", check_peterson(rs, config.rank_cap));
    rec.record("jacobi_g", verify_table_jacobi(&table_of(algebra)).map(|_| (algebra.dim().pow(3), None)));
    rec.record("jacobi_d", verify_table_jacobi(&double.structure_table()).map(|_| (double.dim().pow(3), None)));
    rec.record("form", Ok(check_form(&double)));
    rec.record("manin_triple", check_manin(&double));
    rec.record("invariance", check_invariance(&double, config.samples, &mut rng));
    rec.record("ad_action_law", check_action_law(&double, config.samples, &mut rng));

    let ideals = match enumerate_ad_nilpotent_ideals(rs, config.rank_cap) {
        Ok(i) => i,
        Err(e) => return rec.record("enumeration", Err(e)),
    };
    let abelian: Vec<_> = ideals.iter().filter(|i| is_abelian(rs, i)).cloned().collect();
    let cocycles = |with_random: bool, rng: &mut ChaCha8Rng| -> Result<Vec<Cocycle<'_>>> {
        let mut out = Vec::new();
        for ideal in &abelian {
            let a = ideal.subalgebra(algebra)?;
            if with_random {
                out.push(random_cocycle(&a, rng));
            }
            out.push(Cocycle::zero(a));
        }
        Ok(out)
    };

    rec.record("abelian_tests_agree", check_abelian_agreement(algebra, &ideals));
    rec.record("lagrangian_construction", check_lagrangian_construction(&double, &abelian));
    rec.record("fixed_point", check_fixed_point(&double, &abelian));
    rec.record("nonabelian_witness", check_nonabelian_witnesses(algebra, &ideals));
    rec.record("borel_normalizes", check_borel_normalizes(algebra, &abelian));
    rec.record("orbit_table", check_orbit_table(algebra, config.rank_cap));
    rec.record("certify_agrees", check_certify_agreement(algebra, &ideals, &mut rng));
    match cocycles(true, &mut rng) {
        Ok(cs) => {
            rec.record("group_action", check_group_action(algebra, &cs, config.debug_verify));
            rec.record("translation_action", check_translation_action(algebra, &cs, config.samples, config.debug_verify, &mut rng));
            rec.record("torus_scaling", check_torus_scaling(algebra, &cs));
        }
        Err(e) => rec.record("cocycles", Err(e)),
    }
}

type Check = Result<(usize, Option<String>)>;

fn fail(cases: usize, why: String) -> Check {
    Ok((cases, Some(why)))
}

fn check_peterson(rs: &RootSystem, cap: usize) -> Check {
    let n = enumerate_abelian_ideals(rs, cap)?.len();
    Ok((n, None))
}

fn check_form(double: &Double<'_>) -> (usize, Option<String>) {
    let gram = double.gram_matrix();
    let m = double.dim();
    if gram.transpose() != gram {
        return (1, Some("Gram matrix is not symmetric".into()));
    }
    // the Gram matrix must agree with the form on basis pairs
    for i in 0..m {
        for j in 0..m {
            let v = double.bilinear_form(&DoubleElement::unit(m / 2, i), &DoubleElement::unit(m / 2, j));
            if v != gram[(i, j)] {
                return (i * m + j, Some(format!("form disagrees with Gram matrix at ({i}, {j})")));
            }
        }
    }
    if gram.rank() != m {
        return (m * m, Some(format!("form is degenerate: rank {} < {m}", gram.rank())));
    }
    (m * m, None)
}

fn check_manin(double: &Double<'_>) -> Check {
    let g = double.g_subspace();
    let gs = double.g_star_subspace();
    for (name, w) in [("g", &g), ("g*", &gs)] {
        let v = verify_lagrangian(double, w)?;
        if !v.all_true() {
            return fail(1, format!("{name} is not a Lagrangian subalgebra: {:?}", v.failure_witness));
        }
    }
    let rows = g.basis().row_vectors().chain(gs.basis().row_vectors()).map(<[_]>::to_vec);
    if Subspace::span(double.dim(), rows)?.dim() != double.dim() {
        return fail(3, "g + g* is not all of d".into());
    }
    Ok((3, None))
}

fn check_invariance(double: &Double<'_>, samples: usize, rng: &mut ChaCha8Rng) -> Check {
    let m = double.dim();
    let n = double.half_dim();
    let mut cases = 0;
    for s in 0..samples {
        let d = random_d_group_element(double.algebra(), rng)?;
        let images: Vec<DoubleElement> = (0..m).map(|i| double.big_ad(&d, &DoubleElement::unit(n, i))).collect();
        for i in 0..m {
            for j in i..m {
                cases += 1;
                let want = if i + n == j { Rational::one() } else { Rational::zero() };
                if double.bilinear_form(&images[i], &images[j]) != want {
                    return fail(cases, format!("sample {s}: form not preserved on basis pair ({i}, {j})"));
                }
            }
        }
    }
    Ok((cases, None))
}

fn check_action_law(double: &Double<'_>, samples: usize, rng: &mut ChaCha8Rng) -> Check {
    let n = double.half_dim();
    let mut cases = 0;
    for s in 0..samples {
        let d1 = random_d_group_element(double.algebra(), rng)?;
        let d2 = random_d_group_element(double.algebra(), rng)?;
        let d12 = d1.compose(&d2);
        let v = DoubleElement::new(
            crate::chevalley::GElement::new((0..n).map(|_| random_rational(rng)).collect()),
            random_functional(n, rng),
        );
        cases += 1;
        if double.big_ad(&d12, &v) != double.big_ad(&d1, &double.big_ad(&d2, &v)) {
            return fail(cases, format!("sample {s}: Ad is not multiplicative"));
        }
        let e = d1.compose(&d1.inverse());
        if double.big_ad(&e, &v) != v {
            return fail(cases, format!("sample {s}: d d^-1 does not act trivially"));
        }
    }
    Ok((cases, None))
}

fn check_abelian_agreement(algebra: &LieAlgebra, ideals: &[crate::ideals::IdealDescriptor]) -> Check {
    for (k, ideal) in ideals.iter().enumerate() {
        let a = ideal.subalgebra(algebra)?;
        if a.is_abelian() != is_abelian(algebra.root_system(), ideal) {
            return fail(k + 1, format!("root-level and bracket-level tests disagree on {:?}", ideal.roots));
        }
    }
    Ok((ideals.len(), None))
}

fn check_lagrangian_construction(double: &Double<'_>, abelian: &[crate::ideals::IdealDescriptor]) -> Check {
    for (k, ideal) in abelian.iter().enumerate() {
        let p = build_lagrangian(&Cocycle::zero(ideal.subalgebra(double.algebra())?))?;
        let v = verify_lagrangian(double, p.subspace())?;
        if !v.all_true() {
            return fail(k + 1, format!("{:?}: {:?}", ideal.roots, v.failure_witness));
        }
    }
    Ok((abelian.len(), None))
}

fn check_fixed_point(double: &Double<'_>, abelian: &[crate::ideals::IdealDescriptor]) -> Check {
    let algebra = double.algebra();
    let n = algebra.dim();
    let mut cases = 0;
    for ideal in abelian {
        let a = ideal.subalgebra(algebra)?;
        let p = build_lagrangian(&Cocycle::zero(a.clone()))?;
        for t in 0..n {
            cases += 1;
            let alpha = GStarElement::unit(n, t);
            if !f_alpha(&a, &alpha).is_zero() {
                return fail(cases, format!("{:?}: f_alpha nonzero for dual basis vector {t}", ideal.roots));
            }
            let moved = double.big_ad_subspace(&DGroupElement::translation(algebra, alpha), p.subspace());
            if &moved != p.subspace() {
                return fail(cases, format!("{:?}: point moved by dual basis vector {t}", ideal.roots));
            }
        }
    }
    Ok((cases, None))
}

fn check_nonabelian_witnesses(algebra: &LieAlgebra, ideals: &[crate::ideals::IdealDescriptor]) -> Check {
    let rs = algebra.root_system();
    let mut cases = 0;
    for ideal in ideals.iter().filter(|i| !is_abelian(rs, i)) {
        cases += 1;
        let a = ideal.subalgebra(algebra)?;
        let zero = Cocycle::zero(a.clone());
        let cert = certify_closed_orbit(&zero)?;
        let ClosureWitness::Nonabelian { alpha, .. } = &cert.witness else {
            return fail(cases, format!("{:?}: no nonabelian witness", ideal.roots));
        };
        let fa = f_alpha(&a, alpha);
        if fa.is_zero() || build_lagrangian(&fa)? == build_lagrangian(&zero)? || !cert.check(&zero)? {
            return fail(cases, format!("{:?}: witness does not separate points", ideal.roots));
        }
    }
    Ok((cases, None))
}

fn check_borel_normalizes(algebra: &LieAlgebra, abelian: &[crate::ideals::IdealDescriptor]) -> Check {
    let borel = algebra.borel();
    for (k, ideal) in abelian.iter().enumerate() {
        let norm = normalizer(&ideal.subalgebra(algebra)?);
        if !borel.is_subspace_of(&norm.space) {
            return fail(k + 1, format!("{:?}: Borel subalgebra does not normalize", ideal.roots));
        }
    }
    Ok((abelian.len(), None))
}

fn check_orbit_table(algebra: &LieAlgebra, cap: usize) -> Check {
    let rs = algebra.root_system();
    let rows = orbit_table(algebra, cap)?;
    if rows.len() != 1 << rs.rank() {
        return fail(rows.len(), format!("{} rows, expected {}", rows.len(), 1 << rs.rank()));
    }
    for (k, r) in rows.iter().enumerate() {
        if !r.certified_closed {
            return fail(k + 1, format!("{:?} not certified closed", r.ideal.roots));
        }
        if r.orbit_dim != parabolic_orbit_dim(rs, &r.parabolic_j) {
            return fail(k + 1, format!("{:?}: orbit dimension disagrees with parabolic type", r.ideal.roots));
        }
    }
    Ok((rows.len(), None))
}

fn check_certify_agreement(algebra: &LieAlgebra, ideals: &[crate::ideals::IdealDescriptor], rng: &mut ChaCha8Rng) -> Check {
    let rs = algebra.root_system();
    let mut cases = 0;
    for ideal in ideals {
        let a = ideal.subalgebra(algebra)?;
        for c in [Cocycle::zero(a.clone()), random_cocycle(&a, rng)] {
            cases += 1;
            let cert = certify_closed_orbit(&c)?;
            let expected = is_abelian(rs, ideal) && c.is_zero();
            if cert.is_closed() != expected || !cert.check(&c)? {
                return fail(cases, format!("{:?}: certificate disagrees with characterization", ideal.roots));
            }
        }
    }
    Ok((cases, None))
}

fn check_group_action(algebra: &LieAlgebra, cocycles: &[Cocycle<'_>], debug_verify: bool) -> Check {
    let gens = contract_generators(algebra)?;
    let mut cases = 0;
    for c in cocycles {
        for g in &gens {
            cases += 1;
            let out = if debug_verify { act_group_checked(g, c)? } else { act_group(g, c) };
            if !check_cocycle(out.domain(), out.matrix())? {
                return fail(cases, "transported matrix is not a cocycle".into());
            }
        }
    }
    Ok((cases, None))
}

fn check_translation_action(
    algebra: &LieAlgebra,
    cocycles: &[Cocycle<'_>],
    samples: usize,
    debug_verify: bool,
    rng: &mut ChaCha8Rng,
) -> Check {
    let alphas: Vec<GStarElement> = (0..samples).map(|_| random_functional(algebra.dim(), rng)).collect();
    let mut cases = 0;
    for c in cocycles {
        for alpha in &alphas {
            cases += 1;
            let out = if debug_verify { act_translation_checked(alpha, c)? } else { act_translation(alpha, c) };
            if !check_cocycle(out.domain(), out.matrix())? {
                return fail(cases, "translated matrix is not a cocycle".into());
            }
        }
    }
    Ok((cases, None))
}

fn check_torus_scaling(algebra: &LieAlgebra, cocycles: &[Cocycle<'_>]) -> Check {
    let rs = algebra.root_system();
    let c = scaling_parameter(rs.rank());
    let g = GroupElement::torus(algebra, &c)?;
    let mut cases = 0;
    for cocycle in cocycles.iter().filter(|x| x.domain().dim() >= 2 && !x.is_zero()) {
        cases += 1;
        let twisted = torus_twist_f(&c, cocycle)?;
        let labels = cocycle.domain().root_labels()?;
        let chars = labels.iter().map(|&r| character(&c, rs.root(r))).collect::<Result<Vec<_>>>()?;
        let k = labels.len();
        let mut moves = false;
        for i in 0..k {
            for j in 0..k {
                let f = &cocycle.matrix()[(i, j)];
                if &twisted.matrix()[(i, j)] * &chars[i] * &chars[j] != *f {
                    return fail(cases, format!("entry ({i}, {j}) does not scale by the characters"));
                }
                moves |= !f.is_zero() && !(&chars[i] * &chars[j]).is_one();
            }
        }
        if moves == (twisted.matrix() == cocycle.matrix()) {
            return fail(cases, "twisted matrix fixed despite a nontrivial character".into());
        }
        if twist_via_group(&g, cocycle)?.matrix() != twisted.matrix() {
            return fail(cases, "twist disagrees with the group action".into());
        }
    }
    Ok((cases, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let config = SuiteConfig {
            types: CartanType::parse_list("A1,A2,B2,G2").unwrap(),
            debug_verify: true,
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        let failures: Vec<_> = report.outcomes.iter().filter(|o| !o.passed).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(report, run_suite(&config));
    }

    #[test]
    fn rank_cap_is_reported() {
        let config = SuiteConfig {
            types: CartanType::parse_list("A7").unwrap(),
            ..SuiteConfig::default()
        };
        let report = run_suite(&config);
        assert_eq!(report.failed, 1);
        assert_eq!(report.outcomes[0].check, "rank_cap");
    }
}
