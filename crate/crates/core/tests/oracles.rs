//! Independent oracles: brute force over subsets, classical counts, root strings.

use std::collections::BTreeSet;

use lagorb::chevalley::build_chevalley_algebra;
use lagorb::ideals::{enumerate_abelian_ideals, enumerate_ad_nilpotent_ideals, is_abelian};
use lagorb::lagrange::Subalgebra;
use lagorb::rootsys::{enumerate_weyl_group, CartanType, Root, RootSystem};

fn rs(t: &str) -> RootSystem {
    RootSystem::of_type(t.parse::<CartanType>().unwrap())
}

/// Every subset of Φ⁺ closed under adding simple roots, found by trying all masks.
fn brute_force_upper_sets(rs: &RootSystem) -> BTreeSet<BTreeSet<Root>> {
    let pos = rs.positive_roots();
    let m = pos.len();
    assert!(m <= 16, "brute force is only meant for small systems");
    let l = rs.rank();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m) {
        let set: BTreeSet<Root> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| pos[k].clone()).collect();
        let closed = set.iter().all(|r| {
            (0..l).all(|i| {
                let up = r.plus(&Root::simple(l, i));
                !rs.is_root(&up) || set.contains(&up)
            })
        });
        if closed {
            out.insert(set);
        }
    }
    out
}

fn abelian_by_sums(rs: &RootSystem, set: &BTreeSet<Root>) -> bool {
    set.iter().all(|a| set.iter().all(|b| !rs.is_root(&a.plus(b))))
}

#[test]
fn enumeration_matches_brute_force() {
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2"] {
        let rs = rs(t);
        let brute = brute_force_upper_sets(&rs);
        let listed = enumerate_ad_nilpotent_ideals(&rs, 6).unwrap();
        let got: BTreeSet<BTreeSet<Root>> = listed.iter().map(|i| i.roots.iter().cloned().collect()).collect();
        assert_eq!(got.len(), listed.len(), "{t}: duplicates");
        assert_eq!(got, brute, "{t}");

        let brute_abelian = brute.iter().filter(|s| abelian_by_sums(&rs, s)).count();
        assert_eq!(enumerate_abelian_ideals(&rs, 6).unwrap().len(), brute_abelian, "{t}");
        for i in &listed {
            assert_eq!(is_abelian(&rs, i), abelian_by_sums(&rs, &i.roots.iter().cloned().collect()));
        }
    }
}

#[test]
fn abelian_test_agrees_with_brackets() {
    for t in ["A3", "B3", "C3", "G2"] {
        let g = build_chevalley_algebra(&rs(t)).unwrap();
        for i in enumerate_ad_nilpotent_ideals(g.root_system(), 6).unwrap() {
            let a = Subalgebra::from_roots(&g, &i.roots).unwrap();
            assert_eq!(a.is_abelian(), is_abelian(g.root_system(), &i), "{t} {:?}", i.roots);
        }
    }
}

/// Ad-nilpotent ideal counts are the Catalan numbers of the Weyl group.
#[test]
fn catalan_counts() {
    let expected = [
        ("A1", 2),
        ("A2", 5),
        ("A3", 14),
        ("A4", 42),
        ("B2", 6),
        ("B3", 20),
        ("B4", 70),
        ("C3", 20),
        ("C4", 70),
        ("D4", 50),
        ("G2", 8),
        ("F4", 105),
        ("E6", 833),
    ];
    for (t, n) in expected {
        assert_eq!(enumerate_ad_nilpotent_ideals(&rs(t), 6).unwrap().len(), n, "{t}");
    }
    assert_eq!(enumerate_abelian_ideals(&rs("E6"), 6).unwrap().len(), 64);
}

#[test]
fn positive_root_counts_and_highest_roots() {
    let expected: [(&str, usize, &[i32]); 9] = [
        ("A4", 10, &[1, 1, 1, 1]),
        ("B4", 16, &[1, 2, 2, 2]),
        ("C4", 16, &[2, 2, 2, 1]),
        ("D4", 12, &[1, 2, 1, 1]),
        ("D5", 20, &[1, 2, 2, 1, 1]),
        ("G2", 6, &[3, 2]),
        ("F4", 24, &[2, 3, 4, 2]),
        ("E6", 36, &[1, 2, 2, 3, 2, 1]),
        ("E8", 120, &[2, 3, 4, 6, 5, 4, 3, 2]),
    ];
    for (t, n, theta) in expected {
        let rs = rs(t);
        assert_eq!(rs.num_positive(), n, "{t}");
        assert_eq!(rs.highest_root().coeffs(), theta, "{t}");
    }
}

#[test]
fn weyl_group_orders() {
    for (t, n) in [("A3", 24), ("B3", 48), ("C3", 48), ("D4", 192), ("G2", 12), ("F4", 1152)] {
        assert_eq!(enumerate_weyl_group(&rs(t), 1_000_000).unwrap().len(), n, "{t}");
    }
}

/// `|N_{λ,μ}| = p + 1` where `μ - pλ` ends the λ-string through μ.
#[test]
fn structure_constants_follow_root_strings() {
    for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
        let g = build_chevalley_algebra(&rs(t)).unwrap();
        let rs = g.root_system();
        let roots = rs.roots();
        for (r, lambda) in roots.iter().enumerate() {
            for (s, mu) in roots.iter().enumerate() {
                let n = g.n_constant(r, s);
                if rs.is_root(&lambda.plus(mu)) {
                    let p = rs.root_string_p(lambda, mu).unwrap() as i64;
                    assert_eq!(n.abs(), p + 1, "{t} {lambda:?} {mu:?}");
                    assert_eq!(g.n_constant(s, r), -n);
                } else {
                    assert_eq!(n, 0);
                }
            }
        }
    }
}
