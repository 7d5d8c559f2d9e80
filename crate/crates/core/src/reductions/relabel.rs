use std::fmt;

use serde::{Deserialize, Serialize};

use super::{complex, gcd};
use crate::error::{Error, Result};
use crate::game::Ruleset;

/// A pile renaming `i -> images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RelabelMap(Vec<usize>);

impl RelabelMap {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &j in &images {
            if j >= m || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidRuleset(format!("{images:?} is not a permutation of 0..{m}")));
            }
        }
        Ok(RelabelMap(images))
    }

    pub fn identity(m: usize) -> Self {
        RelabelMap((0..m).collect())
    }

    /// `i -> c*i + d mod m`; `c` must be a unit mod m.
    pub fn affine(c: usize, d: usize, m: usize) -> Self {
        RelabelMap((0..m).map(|i| (c * i + d) % m).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        RelabelMap(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Moves the height of pile `i` to pile `images[i]`.
    pub fn apply(&self, piles: &[u64]) -> Vec<u64> {
        let mut out = vec![0; piles.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j] = piles[i];
        }
        out
    }

    /// Whether the map carries `a`'s complex exactly onto `b`'s.
    pub fn carries(&self, a: &Ruleset, b: &Ruleset) -> bool {
        a.m() == self.m()
            && b.m() == self.m()
            && complex(a).iter().map(|f| f.relabel(&self.0)).collect::<std::collections::BTreeSet<_>>() == complex(b)
    }

    /// `(c, d)` when the map is affine.
    pub fn as_affine(&self) -> Option<(usize, usize)> {
        let m = self.m();
        if m < 2 {
            return Some((1, 0));
        }
        let d = self.0[0];
        let c = (self.0[1] + m - d) % m;
        (*self == RelabelMap::affine(c, d, m)).then_some((c, d))
    }
}

impl TryFrom<Vec<usize>> for RelabelMap {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        RelabelMap::new(v)
    }
}

impl From<RelabelMap> for Vec<usize> {
    fn from(m: RelabelMap) -> Self {
        m.0
    }
}

impl fmt::Display for RelabelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m();
        match self.as_affine() {
            Some((1, 0)) => f.write_str("identity"),
            Some((c, 0)) => write!(f, "i -> {c}i mod {m}"),
            Some((c, d)) => write!(f, "i -> {c}i+{d} mod {m}"),
            None => write!(f, "{:?}", self.0),
        }
    }
}

fn search(a: &Ruleset, b: &Ruleset) -> Option<RelabelMap> {
    let m = a.m();
    (1..m.max(2))
        .filter(|&c| gcd(c, m) == 1)
        .flat_map(|c| (0..m).map(move |d| RelabelMap::affine(c, d, m)))
        .find(|map| map.carries(a, b))
}

/// First affine relabeling `i -> c*i + d` (ordered by `c`, then `d`) carrying
/// `a`'s complex onto `b`'s. The search always runs from the ruleset whose
/// name sorts first, so `find_isomorphism(b, a)` is the inverse of
/// `find_isomorphism(a, b)`.
pub fn find_isomorphism(a: &Ruleset, b: &Ruleset) -> Option<RelabelMap> {
    if a.m() != b.m() {
        return None;
    }
    if b.to_string() < a.to_string() {
        search(b, a).map(|m| m.inverse())
    } else {
        search(a, b)
    }
}
