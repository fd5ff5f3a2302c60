use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letter of a Cartan–Killing type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Cartan type such as `B3` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub letter: TypeLetter,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        use TypeLetter::*;
        let bad = |reason: &str| Error::InvalidCartanType {
            input: format!("{letter:?}{rank}"),
            reason: reason.to_string(),
        };
        match (letter, rank) {
            (_, 0) => Err(bad("rank must be positive")),
            (A, _) => Ok(()),
            (B, 1) => Err(bad("B1 coincides with A1; use A1")),
            (C, 1) => Err(bad("C1 coincides with A1; use A1")),
            (B | C, _) => Ok(()),
            (D, 1 | 2) => Err(bad("D1 and D2 are not simple")),
            (D, 3) => Err(bad("D3 coincides with A3; use A3")),
            (D, _) => Ok(()),
            (E, 6..=8) => Ok(()),
            (E, _) => Err(bad("type E exists only in ranks 6, 7, 8")),
            (F, 4) => Ok(()),
            (F, _) => Err(bad("type F exists only in rank 4")),
            (G, 2) => Ok(()),
            (G, _) => Err(bad("type G exists only in rank 2")),
        }?;
        Ok(CartanType { letter, rank })
    }

    /// Exceptional types of small rank that are allowed regardless of the rank cap.
    pub fn is_always_allowed(&self) -> bool {
        matches!(self.letter, TypeLetter::F | TypeLetter::G)
    }

    /// Rejects types above `cap` unless they are F4 or G2.
    pub fn check_rank_cap(&self, cap: usize) -> Result<()> {
        if self.rank > cap && !self.is_always_allowed() {
            Err(Error::RankCapExceeded {
                rank: self.rank,
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// Number of positive roots.
    pub fn num_positive_roots(&self) -> usize {
        let l = self.rank;
        match self.letter {
            TypeLetter::A => l * (l + 1) / 2,
            TypeLetter::B | TypeLetter::C => l * l,
            TypeLetter::D => l * (l - 1),
            TypeLetter::E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            TypeLetter::F => 24,
            TypeLetter::G => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let l = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.letter {
            TypeLetter::A => fact(l + 1),
            TypeLetter::B | TypeLetter::C => (1u64 << l) * fact(l),
            TypeLetter::D => (1u64 << (l - 1)) * fact(l),
            TypeLetter::E => match l {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            TypeLetter::F => 1_152,
            TypeLetter::G => 12,
        }
    }

    /// Parses a comma-separated list such as `A1,A2,B2`.
    pub fn parse_list(s: &str) -> Result<Vec<CartanType>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::InvalidCartanType {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = s.chars();
        let letter = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => TypeLetter::A,
            Some('B') => TypeLetter::B,
            Some('C') => TypeLetter::C,
            Some('D') => TypeLetter::D,
            Some('E') => TypeLetter::E,
            Some('F') => TypeLetter::F,
            Some('G') => TypeLetter::G,
            _ => return Err(bad("expected a letter A-G followed by the rank")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("rank must follow the letter immediately"))?;
        CartanType::new(letter, rank).map_err(|e| match e {
            Error::InvalidCartanType { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cartan matrix with entries `a[i][j] = ⟨α_j, α_i^∨⟩`, Bourbaki numbering.
///
/// With this convention `⟨λ, α_i^∨⟩ = Σ_j a[i][j] λ_j` for `λ = Σ λ_j α_j`.
/// In type B the last simple root is short, in type C it is long, in G2 the
/// first simple root is short and in F4 the first two are long.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    cartan_type: CartanType,
    entries: Vec<Vec<i32>>,
}

impl CartanMatrix {
    pub fn of_type(t: CartanType) -> Self {
        let l = t.rank;
        let mut a = vec![vec![0i32; l]; l];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match t.letter {
            TypeLetter::A | TypeLetter::B | TypeLetter::C => {
                for i in 0..l - 1 {
                    link(i, i + 1);
                }
            }
            TypeLetter::D => {
                for i in 0..l - 2 {
                    link(i, i + 1);
                }
                link(l - 3, l - 1);
            }
            TypeLetter::E => {
                // 1-3-4-5-...-l with 2 attached to 4
                link(0, 2);
                link(1, 3);
                for i in 2..l - 1 {
                    link(i, i + 1);
                }
            }
            TypeLetter::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            TypeLetter::G => link(0, 1),
        }
        match t.letter {
            TypeLetter::B => a[l - 1][l - 2] = -2,
            TypeLetter::C => a[l - 2][l - 1] = -2,
            TypeLetter::F => a[2][1] = -2,
            TypeLetter::G => a[0][1] = -3,
            _ => {}
        }
        CartanMatrix {
            cartan_type: t,
            entries: a,
        }
    }

    /// Validates user-supplied entries against the named type.
    pub fn new(t: CartanType, entries: Vec<Vec<i32>>) -> Result<Self> {
        let expected = Self::of_type(t);
        if entries.len() != t.rank || entries.iter().any(|r| r.len() != t.rank) {
            return Err(Error::InvalidCartanMatrix(format!(
                "{t} needs a {0}x{0} matrix",
                t.rank
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "diagonal entry ({i},{j}) is {x}, expected 2"
                    )));
                }
                if i != j && !(-3..=0).contains(&x) {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "off-diagonal entry ({i},{j}) is {x}, outside {{0,-1,-2,-3}}"
                    )));
                }
            }
        }
        if entries != expected.entries {
            return Err(Error::InvalidCartanMatrix(format!(
                "entries do not match type {t}"
            )));
        }
        Ok(expected)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i32>] {
        &self.entries
    }

    /// Positive integers `d_i` with `d_i a[i][j] = d_j a[j][i]`, normalised so
    /// that the shortest simple roots get `d = 1`. Then `(α_i, α_i) = 2 d_i`.
    pub fn symmetrizer(&self) -> Vec<i64> {
        let l = self.rank();
        // connected Dynkin diagram: propagate ratios from node 0
        let mut num = vec![0i64; l];
        let mut den = vec![0i64; l];
        num[0] = 1;
        den[0] = 1;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if j != i && self.entries[i][j] != 0 && num[j] == 0 {
                    // d_j = d_i a_ij / a_ji
                    num[j] = num[i] * self.entries[i][j] as i64;
                    den[j] = den[i] * self.entries[j][i] as i64;
                    stack.push(j);
                }
            }
        }
        let lcm_den = den.iter().fold(1i64, |acc, &d| lcm(acc, d.abs()));
        let scaled: Vec<i64> = (0..l).map(|i| num[i] * (lcm_den / den[i])).collect();
        let g = scaled.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
        scaled.iter().map(|&x| x.abs() / g).collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_types() {
        let t: CartanType = "B3".parse().unwrap();
        assert_eq!(t.letter, TypeLetter::B);
        assert_eq!(t.rank, 3);
        assert_eq!(t.to_string(), "B3");
        assert!("D3".parse::<CartanType>().is_err());
        assert!("E5".parse::<CartanType>().is_err());
        assert!("Q2".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert!("B 3".parse::<CartanType>().is_err());
        assert_eq!(CartanType::parse_list("A1, G2").unwrap().len(), 2);
    }

    #[test]
    fn d3_hint_mentions_a3() {
        let err = "D3".parse::<CartanType>().unwrap_err();
        assert!(err.to_string().contains("A3"), "{err}");
    }

    #[test]
    fn rank_cap() {
        let e7: CartanType = "E7".parse().unwrap();
        assert!(e7.check_rank_cap(6).is_err());
        assert!(e7.check_rank_cap(7).is_ok());
        let f4: CartanType = "F4".parse().unwrap();
        assert!(f4.check_rank_cap(2).is_ok());
    }

    #[test]
    fn symmetrizers() {
        let sym = |s: &str| CartanMatrix::of_type(s.parse().unwrap()).symmetrizer();
        assert_eq!(sym("A3"), vec![1, 1, 1]);
        assert_eq!(sym("B3"), vec![2, 2, 1]);
        assert_eq!(sym("C3"), vec![1, 1, 2]);
        assert_eq!(sym("G2"), vec![1, 3]);
        assert_eq!(sym("F4"), vec![2, 2, 1, 1]);
    }

    #[test]
    fn validated_construction() {
        let g2: CartanType = "G2".parse().unwrap();
        assert!(CartanMatrix::new(g2, vec![vec![2, -3], vec![-1, 2]]).is_ok());
        assert!(CartanMatrix::new(g2, vec![vec![2, -1], vec![-3, 2]]).is_err());
        assert!(CartanMatrix::new(g2, vec![vec![3, -3], vec![-1, 2]]).is_err());
        assert!(CartanMatrix::new(g2, vec![vec![2, -4], vec![-1, 2]]).is_err());
    }
}
