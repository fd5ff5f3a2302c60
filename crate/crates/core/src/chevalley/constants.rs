//! Structure constants `N_{r,s}` of a Chevalley basis.
//!
//! Positive pairs are fixed height by height. For each non-simple positive
//! root `ξ` the extraspecial pair `(α, β)` (smallest `α` among `α + β = ξ`,
//! `α ≺ β`) gets `N = +(p+1)`. Every other special pair is forced by the
//! four-root relation, and constants involving negative roots follow from
//! `N_{-r,-s} = -N_{r,s}` and the cyclic relation for `r + s + t = 0`:
//! `N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)`.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

pub(crate) struct StructureConstants<'a> {
    rs: &'a RootSystem,
    positive: HashMap<(usize, usize), i64>,
}

impl<'a> StructureConstants<'a> {
    pub(crate) fn compute(rs: &'a RootSystem) -> Result<Self> {
        let mut sc = StructureConstants {
            rs,
            positive: HashMap::new(),
        };
        let np = rs.num_positive();
        for xi in 0..np {
            let special: Vec<(usize, usize)> = (0..xi)
                .flat_map(|a| (a + 1..xi).map(move |b| (a, b)))
                .filter(|&(a, b)| rs.sum_index(a, b) == Some(xi))
                .collect();
            let Some(&(a0, b0)) = special.first() else {
                continue;
            };
            let p0 = rs.root_string_p(rs.root(a0), rs.root(b0))? as i64;
            sc.set_positive(a0, b0, p0 + 1);
            for &(a, b) in &special[1..] {
                let n = sc.four_root(a, b, a0, b0)?;
                let p = rs.root_string_p(rs.root(a), rs.root(b))? as i64;
                if n.abs() != p + 1 {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "structure constant N({a},{b}) = {n}, expected ±{}",
                        p + 1
                    )));
                }
                sc.set_positive(a, b, n);
            }
        }
        Ok(sc)
    }

    fn set_positive(&mut self, a: usize, b: usize, n: i64) {
        self.positive.insert((a, b), n);
        self.positive.insert((b, a), -n);
    }

    fn len2(&self, r: usize) -> i64 {
        let root = self.rs.root(r);
        self.rs.inner(root, root)
    }

    /// `N_{α,β}` for the special pair `(α, β)` from the extraspecial pair `(α', β')`.
    fn four_root(&self, a: usize, b: usize, a0: usize, b0: usize) -> Result<i64> {
        let rs = self.rs;
        let xi = rs.sum_index(a, b).expect("special pair sums to a root");
        let (g, d) = (rs.neg_index(a0), rs.neg_index(b0));
        let term = |x: usize, y: usize, u: usize, v: usize| -> Result<Ratio<i64>> {
            // N_{x,y} N_{u,v} / (x+y, x+y)
            match rs.sum_index(x, y) {
                None => Ok(Ratio::from_integer(0)),
                Some(s) => Ok(Ratio::new(self.n(x, y)? * self.n(u, v)?, self.len2(s))),
            }
        };
        let rest = term(b, g, a, d)? + term(g, a, b, d)?;
        let n_gd = self.n(g, d)?;
        let value = -Ratio::from_integer(self.len2(xi)) * rest / Ratio::from_integer(n_gd);
        if !value.is_integer() {
            return Err(Error::InvalidCartanMatrix(format!(
                "non-integral structure constant for pair ({a},{b})"
            )));
        }
        Ok(value.to_integer())
    }

    /// `N_{r,s}` for any roots, zero when `r + s` is not a root.
    pub(crate) fn n(&self, r: usize, s: usize) -> Result<i64> {
        let rs = self.rs;
        let Some(sum) = rs.sum_index(r, s) else {
            return Ok(0);
        };
        let (pr, ps) = (rs.is_positive_index(r), rs.is_positive_index(s));
        if pr && ps {
            return self.positive.get(&(r, s)).copied().ok_or_else(|| {
                Error::InvalidCartanMatrix(format!("constant N({r},{s}) requested out of order"))
            });
        }
        if !pr && !ps {
            return Ok(-self.n(rs.neg_index(r), rs.neg_index(s))?);
        }
        // r + s + t = 0 with t = -(r + s); use the cyclic relation on a same-sign pair
        let t = rs.neg_index(sum);
        let (known, num, den) = if rs.is_positive_index(s) == rs.is_positive_index(t) {
            (self.n(s, t)?, self.len2(t), self.len2(r))
        } else {
            (self.n(t, r)?, self.len2(t), self.len2(s))
        };
        let v = known * num;
        if v % den != 0 {
            return Err(Error::InvalidCartanMatrix(format!(
                "non-integral structure constant for pair ({r},{s})"
            )));
        }
        Ok(v / den)
    }
}
