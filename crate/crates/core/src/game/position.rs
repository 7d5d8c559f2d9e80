use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Face, Ruleset};
use crate::error::{Error, Result};

/// Pile heights `(n_0, ..., n_{m-1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(Vec<u64>);

impl Position {
    pub fn new(piles: Vec<u64>) -> Self {
        Position(piles)
    }

    pub fn zeros(m: usize) -> Self {
        Position(vec![0; m])
    }

    pub fn piles(&self) -> &[u64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    pub fn total(&self) -> u128 {
        self.0.iter().map(|&n| n as u128).sum()
    }

    pub fn is_terminal(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn max_height(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl Deref for Position {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for Position {
    fn from(v: Vec<u64>) -> Self {
        Position(v)
    }
}

impl<const N: usize> From<[u64; N]> for Position {
    fn from(v: [u64; N]) -> Self {
        Position(v.to_vec())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reduce every pile of `support` by its removal amount.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Move {
    support: Face,
    /// `(pile, amount)` pairs sorted by pile; amounts are positive.
    removals: Vec<(usize, u64)>,
}

impl Move {
    pub fn new<I: IntoIterator<Item = (usize, u64)>>(removals: I) -> Result<Self> {
        let mut removals: Vec<(usize, u64)> = removals.into_iter().collect();
        removals.sort_unstable();
        if removals.is_empty() {
            return Err(Error::IllegalMove("must remove at least one token in total".into()));
        }
        for w in removals.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::IllegalMove(format!("pile {} listed twice", w[0].0)));
            }
        }
        if let Some(&(i, _)) = removals.iter().find(|&&(_, a)| a == 0) {
            return Err(Error::IllegalMove(format!("removal from pile {i} must be positive")));
        }
        if let Some(&(i, _)) = removals.iter().find(|&&(i, _)| i >= 32) {
            return Err(Error::IllegalMove(format!("pile index {i} out of range")));
        }
        let support = Face::from_indices(removals.iter().map(|&(i, _)| i));
        Ok(Move { support, removals })
    }

    /// The move turning `from` into `to`, if `to` is entrywise no larger and differs.
    pub fn between(from: &[u64], to: &[u64]) -> Result<Self> {
        if from.len() != to.len() {
            return Err(Error::Arity {
                expected: from.len(),
                found: to.len(),
            });
        }
        let mut removals = Vec::new();
        for (i, (&a, &b)) in from.iter().zip(to).enumerate() {
            if b > a {
                return Err(Error::IllegalMove(format!("pile {i} would grow from {a} to {b}")));
            }
            if a > b {
                removals.push((i, a - b));
            }
        }
        Move::new(removals)
    }

    pub fn support(&self) -> Face {
        self.support
    }

    pub fn removals(&self) -> &[(usize, u64)] {
        &self.removals
    }

    pub fn tokens(&self) -> u128 {
        self.removals.iter().map(|&(_, a)| a as u128).sum()
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (i, a)) in self.removals.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "-{a}@{i}")?;
        }
        Ok(())
    }
}

/// Entrywise subtraction on the move's support.
pub fn apply_move(pos: &Position, mv: &Move) -> Result<Position> {
    let mut piles = pos.0.clone();
    for &(i, a) in mv.removals() {
        let h = *piles.get(i).ok_or_else(|| {
            Error::IllegalMove(format!("pile {i} does not exist in a {}-pile position", pos.len()))
        })?;
        if a > h {
            return Err(Error::IllegalMove(format!(
                "cannot remove {a} tokens from pile {i} holding {h}"
            )));
        }
        piles[i] = h - a;
    }
    Ok(Position(piles))
}

impl Ruleset {
    pub fn check_position(&self, pos: &Position) -> Result<()> {
        if pos.len() != self.m() {
            return Err(Error::Arity {
                expected: self.m(),
                found: pos.len(),
            });
        }
        Ok(())
    }

    /// Checks face and height constraints; the error names the violated one.
    pub fn check_move(&self, pos: &Position, mv: &Move) -> Result<()> {
        self.check_position(pos)?;
        if !self.is_face(mv.support()) {
            return Err(Error::IllegalMove(format!(
                "piles {} are not a face of {self}",
                mv.support()
            )));
        }
        apply_move(pos, mv).map(|_| ())
    }

    /// Every move: for each generating face, each pile loses between 0 and its
    /// height, excluding the all-zero removal. Successors reachable through
    /// several faces appear several times.
    pub fn legal_moves(&self, pos: &Position) -> Result<Vec<Move>> {
        self.check_position(pos)?;
        let mut out = Vec::new();
        for &face in self.faces() {
            let idx: Vec<usize> = face.indices().filter(|&i| pos[i] > 0).collect();
            if idx.is_empty() {
                continue;
            }
            let mut amounts = vec![0u64; idx.len()];
            'odometer: loop {
                let mut j = 0;
                loop {
                    if j == idx.len() {
                        break 'odometer;
                    }
                    if amounts[j] < pos[idx[j]] {
                        amounts[j] += 1;
                        break;
                    }
                    amounts[j] = 0;
                    j += 1;
                }
                let removals = idx
                    .iter()
                    .zip(&amounts)
                    .filter(|(_, &a)| a > 0)
                    .map(|(&i, &a)| (i, a));
                out.push(Move::new(removals).expect("odometer never yields an empty move"));
            }
        }
        Ok(out)
    }

    /// Distinct successor positions, sorted lexicographically.
    pub fn successors(&self, pos: &Position) -> Result<Vec<Position>> {
        self.check_position(pos)?;
        let mut set = BTreeSet::new();
        for face in self.all_faces() {
            let idx: Vec<usize> = face.indices().collect();
            if idx.iter().any(|&i| pos[i] == 0) {
                continue;
            }
            // exact support: every pile of the face loses at least one token
            let mut next = pos.0.clone();
            for &i in &idx {
                next[i] = pos[i] - 1;
            }
            'odometer: loop {
                set.insert(Position(next.clone()));
                let mut j = 0;
                loop {
                    if j == idx.len() {
                        break 'odometer;
                    }
                    let i = idx[j];
                    if next[i] > 0 {
                        next[i] -= 1;
                        break;
                    }
                    next[i] = pos[i] - 1;
                    j += 1;
                }
            }
        }
        Ok(set.into_iter().collect())
    }
}

/// One element of the dihedral group acting on pile labels: the image of a
/// position is `(n_s, n_{s+1}, ...)` or, reflected, `(n_s, n_{s-1}, ...)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Symmetry {
    pub start: usize,
    pub reflected: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        start: 0,
        reflected: false,
    };

    /// The `2m` symmetries in scan order: rotations first, then reflections.
    pub fn all(m: usize) -> impl Iterator<Item = Symmetry> {
        let fwd = (0..m).map(|start| Symmetry {
            start,
            reflected: false,
        });
        let rev = (0..m).map(|start| Symmetry {
            start,
            reflected: true,
        });
        fwd.chain(rev)
    }

    /// Index of the original pile that lands in slot `j`.
    pub fn source(self, j: usize, m: usize) -> usize {
        if self.reflected {
            (self.start + m - j % m) % m
        } else {
            (self.start + j) % m
        }
    }

    pub fn apply(self, piles: &[u64]) -> Vec<u64> {
        let m = piles.len();
        (0..m).map(|j| piles[self.source(j, m)]).collect()
    }

    pub fn apply_into(self, piles: &[u64], out: &mut [u64]) {
        let m = piles.len();
        for (j, o) in out.iter_mut().enumerate() {
            *o = piles[self.source(j, m)];
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflected {
            write!(f, "reflect@{}", self.start)
        } else {
            write!(f, "rotate@{}", self.start)
        }
    }
}

/// The distinct rotations and reflected rotations of `pos`, in scan order
/// (first occurrence kept). The length is the orbit size, a divisor of `2m`.
pub fn dihedral_images(pos: &Position) -> Vec<Position> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for sym in Symmetry::all(pos.len()) {
        let img = Position(sym.apply(pos));
        if seen.insert(img.clone()) {
            out.push(img);
        }
    }
    out
}

/// Lexicographically smallest dihedral image.
pub fn canonical(pos: &Position) -> Position {
    let m = pos.len();
    let mut best = pos.0.clone();
    let mut buf = vec![0; m];
    for sym in Symmetry::all(m) {
        sym.apply_into(pos, &mut buf);
        if buf < best {
            best.copy_from_slice(&buf);
        }
    }
    Position(best)
}
