use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Face;
use crate::error::{Error, Result};

/// Largest pile count a ruleset may have; faces are `u32` bitmasks.
pub const MAX_PILES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RulesetKind {
    /// Extended circular nim: at most `k` piles in arithmetic progression
    /// with a step from `steps`, around the circle.
    Ecn { steps: Vec<usize>, k: usize },
    /// Moore's nim: any `k` piles. `k = 1` is plain nim.
    Moore { k: usize },
    /// Nim on an explicit simplicial complex.
    Simplicial,
}

/// An impartial ruleset on `m` piles, described by the simplicial complex of
/// pile sets that may be reduced together in one move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ruleset {
    m: usize,
    kind: RulesetKind,
    /// Generating faces: every legal support is a subset of one of these.
    faces: Vec<Face>,
}

impl Ruleset {
    pub fn ecn(m: usize, steps: impl IntoIterator<Item = usize>, k: usize) -> Result<Self> {
        let steps: Vec<usize> = steps.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if m == 0 || m > MAX_PILES {
            return Err(Error::InvalidRuleset(format!(
                "pile count m = {m} must be in 1..={MAX_PILES}"
            )));
        }
        if steps.is_empty() {
            return Err(Error::InvalidRuleset("step set S is empty".into()));
        }
        if let Some(&s) = steps.iter().find(|&&s| s == 0 || s > m / 2) {
            return Err(Error::InvalidRuleset(format!(
                "step s = {s} violates 1 <= s <= floor(m/2) = {}",
                m / 2
            )));
        }
        if k == 0 || k > m {
            return Err(Error::InvalidRuleset(format!("k = {k} violates 1 <= k <= m = {m}")));
        }
        let faces = ecn_faces(m, &steps, k);
        Ok(Ruleset {
            m,
            kind: RulesetKind::Ecn { steps, k },
            faces,
        })
    }

    /// Circular nim `CN(m, k)`, i.e. `ECN(m_{1}, k)`.
    pub fn cn(m: usize, k: usize) -> Result<Self> {
        Self::ecn(m, [1], k)
    }

    pub fn moore(m: usize, k: usize) -> Result<Self> {
        if m == 0 || m > MAX_PILES {
            return Err(Error::InvalidRuleset(format!(
                "pile count m = {m} must be in 1..={MAX_PILES}"
            )));
        }
        if k == 0 || k > m {
            return Err(Error::InvalidRuleset(format!("k = {k} violates 1 <= k <= m = {m}")));
        }
        let faces = k_subsets(m, k);
        Ok(Ruleset {
            m,
            kind: RulesetKind::Moore { k },
            faces,
        })
    }

    pub fn nim(m: usize) -> Result<Self> {
        Self::moore(m, 1)
    }

    /// Nim on an explicit face family. The family must be downward closed
    /// (empty set excepted) and contain every singleton.
    pub fn simplicial<I, F>(m: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        let family = collect_faces(m, faces)?;
        for i in 0..m {
            if !family.contains(&Face::from_indices([i])) {
                return Err(Error::InvalidRuleset(format!("singleton {{{i}}} is not a face")));
            }
        }
        for &f in &family {
            for i in f.indices() {
                let sub = Face::from_bits(f.bits() & !(1 << i));
                if !sub.is_empty() && !family.contains(&sub) {
                    return Err(Error::InvalidRuleset(format!(
                        "family is not downward closed: {f} is a face but {sub} is not"
                    )));
                }
            }
        }
        Ok(Ruleset {
            m,
            kind: RulesetKind::Simplicial,
            faces: maximal_elements(family.into_iter().collect()),
        })
    }

    /// Nim on the complex generated by `faces` (their downward closure).
    /// Every pile must appear in some face.
    pub fn from_maximal_faces<I, F>(m: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        let family = collect_faces(m, faces)?;
        let covered = family.iter().fold(0u32, |acc, f| acc | f.bits());
        if let Some(i) = (0..m).find(|&i| covered & (1 << i) == 0) {
            return Err(Error::InvalidRuleset(format!("pile {i} lies in no face")));
        }
        Ok(Ruleset {
            m,
            kind: RulesetKind::Simplicial,
            faces: maximal_elements(family.into_iter().collect()),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> &RulesetKind {
        &self.kind
    }

    /// Step set for ECN rulesets.
    pub fn steps(&self) -> Option<&[usize]> {
        match &self.kind {
            RulesetKind::Ecn { steps, .. } => Some(steps),
            _ => None,
        }
    }

    /// Selection limit for ECN and Moore rulesets.
    pub fn k(&self) -> Option<usize> {
        match &self.kind {
            RulesetKind::Ecn { k, .. } | RulesetKind::Moore { k } => Some(*k),
            RulesetKind::Simplicial => None,
        }
    }

    /// Same `m` and `S` with a different `k`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        match &self.kind {
            RulesetKind::Ecn { steps, .. } => Self::ecn(self.m, steps.iter().copied(), k),
            RulesetKind::Moore { .. } => Self::moore(self.m, k),
            RulesetKind::Simplicial => Err(Error::InvalidRuleset(
                "simplicial rulesets have no selection limit".into(),
            )),
        }
    }

    /// The generating faces. For ECN rulesets this is the deduplicated list of
    /// progressions `{i, i+s, ..., i+(k-1)s} mod m`, in step-then-start order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Nonempty and contained in a generating face.
    pub fn is_face(&self, face: Face) -> bool {
        !face.is_empty()
            && face.bits() >> self.m == 0
            && self.faces.iter().any(|&g| face.is_subset_of(g))
    }

    /// Every nonempty face of the complex, ascending by bitmask.
    pub fn all_faces(&self) -> Vec<Face> {
        let mut seen = BTreeSet::new();
        for &g in &self.faces {
            // enumerate nonempty submasks of g
            let mut sub = g.bits();
            while sub != 0 {
                seen.insert(Face::from_bits(sub));
                sub = (sub - 1) & g.bits();
            }
        }
        seen.into_iter().collect()
    }

    /// Maximal faces of the complex (an antichain), sorted.
    pub fn maximal_faces(&self) -> Vec<Face> {
        maximal_elements(self.faces.clone())
    }

    /// Whether the face family is invariant under rotation and reflection of
    /// the pile circle. Holds for every ECN and Moore ruleset.
    pub fn is_dihedral_invariant(&self) -> bool {
        match self.kind {
            RulesetKind::Ecn { .. } | RulesetKind::Moore { .. } => true,
            RulesetKind::Simplicial => {
                let max = self.maximal_faces();
                let set: BTreeSet<Face> = max.iter().copied().collect();
                let m = self.m;
                let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
                let refl: Vec<usize> = (0..m).map(|i| m - 1 - i).collect();
                [rot, refl].iter().all(|map| {
                    max.iter()
                        .map(|f| f.relabel(map))
                        .collect::<BTreeSet<_>>()
                        == set
                })
            }
        }
    }
}

fn ecn_faces(m: usize, steps: &[usize], k: usize) -> Vec<Face> {
    let mut seen = BTreeSet::new();
    let mut faces = Vec::new();
    for &s in steps {
        for i in 0..m {
            let face = Face::from_indices((0..k).map(|j| (i + j * s) % m));
            if seen.insert(face) {
                faces.push(face);
            }
        }
    }
    faces
}

fn k_subsets(m: usize, k: usize) -> Vec<Face> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(Face::from_indices(idx.iter().copied()));
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn collect_faces<I, F>(m: usize, faces: I) -> Result<BTreeSet<Face>>
where
    I: IntoIterator<Item = F>,
    F: IntoIterator<Item = usize>,
{
    if m == 0 || m > MAX_PILES {
        return Err(Error::InvalidRuleset(format!(
            "pile count m = {m} must be in 1..={MAX_PILES}"
        )));
    }
    let mut family = BTreeSet::new();
    for f in faces {
        let idx: Vec<usize> = f.into_iter().collect();
        if let Some(&bad) = idx.iter().find(|&&i| i >= m) {
            return Err(Error::InvalidRuleset(format!("face index {bad} out of range 0..{m}")));
        }
        if idx.is_empty() {
            continue;
        }
        family.insert(Face::from_indices(idx));
    }
    Ok(family)
}

/// Maximal faces, smaller faces first, ties broken by their index lists.
fn maximal_elements(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_by_key(|f| (f.len(), f.indices().collect::<Vec<_>>()));
    faces.dedup();
    let keep: Vec<Face> = faces
        .iter()
        .copied()
        .filter(|&f| !faces.iter().any(|&g| g != f && f.is_subset_of(g)))
        .collect();
    keep
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RulesetKind::Ecn { steps, k } => {
                write!(f, "ECN({}_{{", self.m)?;
                for (n, s) in steps.iter().enumerate() {
                    if n > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, "}},{k})")
            }
            RulesetKind::Moore { k: 1 } => write!(f, "NIM({})", self.m),
            RulesetKind::Moore { k } => write!(f, "MN({},{k})", self.m),
            RulesetKind::Simplicial => {
                write!(f, "SC({};", self.m)?;
                for (n, face) in self.faces.iter().enumerate() {
                    if n > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{face}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Ruleset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ruleset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().copied())
    }

    #[test]
    fn ecn_6_12_3_faces() {
        let r = Ruleset::ecn(6, [1, 2], 3).unwrap();
        assert!(r.faces().contains(&f(&[0, 1, 2])));
        assert!(r.faces().contains(&f(&[0, 2, 4])));
        assert!(!r.is_face(f(&[0, 1, 3])));
        assert!(r.is_face(f(&[0, 2])));
    }

    #[test]
    fn step_three_on_six_piles_collapses_to_pairs() {
        let r = Ruleset::ecn(6, [3], 2).unwrap();
        assert_eq!(r.faces(), &[f(&[0, 3]), f(&[1, 4]), f(&[2, 5])]);
        // k beyond the orbit length adds nothing
        let r4 = Ruleset::ecn(6, [3], 4).unwrap();
        assert_eq!(r4.faces(), r.faces());
    }

    #[test]
    fn k1_gives_singletons() {
        for steps in [vec![1], vec![2], vec![1, 2, 3], vec![3]] {
            let r = Ruleset::ecn(6, steps, 1).unwrap();
            let expect: Vec<Face> = (0..6).map(|i| f(&[i])).collect();
            assert_eq!(r.faces(), expect.as_slice());
        }
    }

    #[test]
    fn steps_are_normalized() {
        let a = Ruleset::ecn(6, [2, 1, 2], 3).unwrap();
        let b = Ruleset::ecn(6, [1, 2], 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "ECN(6_{1,2},3)");
    }

    #[test]
    fn validation_names_the_bound() {
        let e = Ruleset::ecn(6, [4], 2).unwrap_err().to_string();
        assert!(e.contains("floor(m/2)"), "{e}");
        let e = Ruleset::ecn(6, [1], 7).unwrap_err().to_string();
        assert!(e.contains("k = 7"), "{e}");
        let e = Ruleset::ecn(6, Vec::<usize>::new(), 2).unwrap_err().to_string();
        assert!(e.contains("empty"), "{e}");
        assert!(Ruleset::ecn(6, [0], 2).is_err());
    }

    #[test]
    fn simplicial_checks_closure() {
        let ok = Ruleset::simplicial(3, vec![vec![0], vec![1], vec![2], vec![0, 1]]).unwrap();
        assert_eq!(ok.maximal_faces(), vec![f(&[2]), f(&[0, 1])]);
        assert!(!ok.is_dihedral_invariant());
        let missing_singleton = Ruleset::simplicial(3, vec![vec![0], vec![1], vec![0, 1]]);
        assert!(missing_singleton.is_err());
        let not_closed = Ruleset::simplicial(3, vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]);
        assert!(not_closed.unwrap_err().to_string().contains("downward"));
    }

    #[test]
    fn moore_faces_are_k_subsets() {
        let r = Ruleset::moore(5, 2).unwrap();
        assert_eq!(r.faces().len(), 10);
        assert_eq!(r.all_faces().len(), 15);
        assert_eq!(r.to_string(), "MN(5,2)");
        assert_eq!(Ruleset::nim(3).unwrap().to_string(), "NIM(3)");
    }

    #[test]
    fn face_family_is_dihedral_invariant() {
        for m in 2..=9 {
            for mask in 1u32..(1 << (m / 2)) {
                let steps: Vec<usize> = (1..=m / 2).filter(|s| mask & (1 << (s - 1)) != 0).collect();
                for k in 1..=m {
                    let r = Ruleset::ecn(m, steps.clone(), k).unwrap();
                    let all: BTreeSet<Face> = r.all_faces().into_iter().collect();
                    let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
                    let refl: Vec<usize> = (0..m).map(|i| m - 1 - i).collect();
                    for map in [&rot, &refl] {
                        let img: BTreeSet<Face> = all.iter().map(|x| x.relabel(map)).collect();
                        assert_eq!(img, all, "{r}");
                    }
                }
            }
        }
    }
}
