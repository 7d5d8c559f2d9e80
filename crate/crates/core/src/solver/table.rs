use std::ops::ControlFlow;

use rayon::prelude::*;

use super::shape::{BoxShape, Budget};
use super::Outcome;
use crate::error::{Error, Result};
use crate::game::{Move, Position, Ruleset};

/// Faces of a ruleset laid out against a shape's strides.
#[derive(Clone, Debug)]
pub(crate) struct FaceStrides {
    faces: Vec<Vec<(usize, usize)>>,
}

impl FaceStrides {
    pub(crate) fn new(ruleset: &Ruleset, shape: &BoxShape) -> Self {
        let faces = ruleset
            .all_faces()
            .into_iter()
            .map(|f| f.indices().map(|i| (i, shape.strides()[i])).collect())
            .collect();
        FaceStrides { faces }
    }

    /// Upper bound on the number of distinct options of `piles`.
    pub(crate) fn option_count(&self, piles: &[u64]) -> usize {
        self.faces
            .iter()
            .map(|f| f.iter().map(|&(i, _)| piles[i] as usize).product::<usize>())
            .sum()
    }

    /// Visits the index of every option of the position at `index`. Each
    /// option is produced once: faces are exact supports, every pile of the
    /// face losing at least one token.
    pub(crate) fn for_each_option<B>(
        &self,
        index: usize,
        piles: &[u64],
        mut f: impl FnMut(usize) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let mut taken = [0u64; crate::game::MAX_PILES];
        for face in &self.faces {
            if face.iter().any(|&(i, _)| piles[i] == 0) {
                continue;
            }
            let mut offset: usize = face.iter().map(|&(_, s)| s).sum();
            for (j, _) in face.iter().enumerate() {
                taken[j] = 1;
            }
            loop {
                f(index - offset)?;
                let mut j = 0;
                loop {
                    if j == face.len() {
                        break;
                    }
                    let (i, s) = face[j];
                    if taken[j] < piles[i] {
                        taken[j] += 1;
                        offset += s;
                        break;
                    }
                    offset -= (taken[j] as usize - 1) * s;
                    taken[j] = 1;
                    j += 1;
                }
                if j == face.len() {
                    break;
                }
            }
        }
        ControlFlow::Continue(())
    }
}

fn check_arity(ruleset: &Ruleset, shape: &BoxShape) -> Result<()> {
    if ruleset.m() != shape.m() {
        return Err(Error::Arity {
            expected: ruleset.m(),
            found: shape.m(),
        });
    }
    Ok(())
}

/// Runs `compute` over every position, level by level in increasing token
/// total. Options always have a smaller total, so a level only reads
/// finished entries; positions inside a level are computed in parallel.
fn retrograde<T, F>(shape: &BoxShape, init: T, compute: F) -> Vec<T>
where
    T: Copy + Send + Sync,
    F: Fn(usize, &[u64], &[T], &mut Vec<u64>) -> T + Sync,
{
    let (order, offsets) = shape.levels();
    let mut values = vec![init; shape.len()];
    for level in offsets.windows(2) {
        let idxs = &order[level[0]..level[1]];
        let snapshot = &values;
        let results: Vec<T> = idxs
            .par_iter()
            .map_init(
                || (vec![0u64; shape.m()], Vec::new()),
                |(piles, scratch), &idx| {
                    shape.decode_into(idx, piles);
                    compute(idx, piles, snapshot, scratch)
                },
            )
            .collect();
        for (&idx, v) in idxs.iter().zip(results) {
            values[idx] = v;
        }
    }
    values
}

/// Grundy values for every position of a box.
#[derive(Clone, Debug)]
pub struct GrundyTable {
    ruleset: Ruleset,
    shape: BoxShape,
    values: Vec<u32>,
}

impl GrundyTable {
    pub fn build(ruleset: &Ruleset, shape: BoxShape) -> Result<Self> {
        check_arity(ruleset, &shape)?;
        let faces = FaceStrides::new(ruleset, &shape);
        let values = retrograde(&shape, 0u32, |idx, piles, values, seen| {
            let cap = faces.option_count(piles);
            let words = cap / 64 + 1;
            seen.clear();
            seen.resize(words, 0);
            let _ = faces.for_each_option::<()>(idx, piles, |opt| {
                let g = values[opt] as usize;
                if g <= cap {
                    seen[g / 64] |= 1 << (g % 64);
                }
                ControlFlow::Continue(())
            });
            mex_bits(seen)
        });
        Ok(GrundyTable {
            ruleset: ruleset.clone(),
            shape,
            values,
        })
    }

    pub fn uniform(ruleset: &Ruleset, bound: u64, budget: Budget) -> Result<Self> {
        Self::build(ruleset, BoxShape::uniform(ruleset.m(), bound, budget)?)
    }

    pub fn ruleset(&self) -> &Ruleset {
        &self.ruleset
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, piles: &[u64]) -> Option<u32> {
        self.shape.index(piles).map(|i| self.values[i])
    }

    pub fn outcome(&self, piles: &[u64]) -> Option<Outcome> {
        self.get(piles).map(Outcome::from_grundy)
    }

    /// Outcome table read off the Grundy values (P exactly where the value is 0).
    pub fn to_outcomes(&self) -> OutcomeTable {
        OutcomeTable {
            ruleset: self.ruleset.clone(),
            shape: self.shape.clone(),
            p: self.values.iter().map(|&g| g == 0).collect(),
        }
    }

    /// Winning move to the lexicographically smallest P successor, if any.
    pub fn winning_move(&self, piles: &[u64]) -> Option<Move> {
        let idx = self.shape.index(piles)?;
        let faces = FaceStrides::new(&self.ruleset, &self.shape);
        let mut best: Option<usize> = None;
        let _ = faces.for_each_option::<()>(idx, piles, |opt| {
            if self.values[opt] == 0 && best.is_none_or(|b| opt < b) {
                best = Some(opt);
            }
            ControlFlow::Continue(())
        });
        best.map(|b| {
            Move::between(piles, &self.shape.position(b)).expect("option is below its parent")
        })
    }
}

/// Smallest value whose bit is clear.
pub(crate) fn mex_bits(bits: &[u64]) -> u32 {
    for (w, &word) in bits.iter().enumerate() {
        if word != u64::MAX {
            return (w * 64 + (!word).trailing_zeros() as usize) as u32;
        }
    }
    (bits.len() * 64) as u32
}

/// P/N outcome for every position of a box.
#[derive(Clone, Debug)]
pub struct OutcomeTable {
    ruleset: Ruleset,
    shape: BoxShape,
    p: Vec<bool>,
}

impl OutcomeTable {
    /// Direct P/N computation: a position is N as soon as one P option is found.
    pub fn build(ruleset: &Ruleset, shape: BoxShape) -> Result<Self> {
        check_arity(ruleset, &shape)?;
        let faces = FaceStrides::new(ruleset, &shape);
        let p = retrograde(&shape, false, |idx, piles, p, _| {
            faces
                .for_each_option(idx, piles, |opt| {
                    if p[opt] {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })
                .is_continue()
        });
        Ok(OutcomeTable {
            ruleset: ruleset.clone(),
            shape,
            p,
        })
    }

    pub fn uniform(ruleset: &Ruleset, bound: u64, budget: Budget) -> Result<Self> {
        Self::build(ruleset, BoxShape::uniform(ruleset.m(), bound, budget)?)
    }

    pub fn ruleset(&self) -> &Ruleset {
        &self.ruleset
    }

    pub fn shape(&self) -> &BoxShape {
        &self.shape
    }

    pub fn outcome(&self, piles: &[u64]) -> Option<Outcome> {
        self.shape.index(piles).map(|i| self.at(i))
    }

    pub fn at(&self, index: usize) -> Outcome {
        if self.p[index] {
            Outcome::P
        } else {
            Outcome::N
        }
    }

    pub fn p_count(&self) -> usize {
        self.p.iter().filter(|&&p| p).count()
    }

    /// P-positions in index (lexicographic) order.
    pub fn p_positions(&self) -> Vec<Position> {
        self.p
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| Position::new(self.shape.position(i)))
            .collect()
    }
}

/// Both tables over all positions with every pile at most `bound`.
pub fn build_tables(
    ruleset: &Ruleset,
    bound: u64,
    budget: Budget,
) -> Result<(OutcomeTable, GrundyTable)> {
    let grundy = GrundyTable::uniform(ruleset, bound, budget)?;
    Ok((grundy.to_outcomes(), grundy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pile_nim_is_identity() {
        let r = Ruleset::nim(1).unwrap();
        let t = GrundyTable::uniform(&r, 20, Budget::DEFAULT).unwrap();
        for n in 0..=20u64 {
            assert_eq!(t.get(&[n]), Some(n as u32));
        }
    }

    #[test]
    fn nim_matches_xor() {
        let r = Ruleset::nim(3).unwrap();
        let t = GrundyTable::uniform(&r, 7, Budget::DEFAULT).unwrap();
        t.shape().for_each(|i, p| {
            assert_eq!(t.values()[i], (p[0] ^ p[1] ^ p[2]) as u32, "{p:?}");
        });
    }

    #[test]
    fn zero_bound_is_single_p_entry() {
        let r = Ruleset::ecn(6, [1, 2], 3).unwrap();
        let (o, g) = build_tables(&r, 0, Budget::DEFAULT).unwrap();
        assert_eq!(o.shape().len(), 1);
        assert_eq!(o.at(0), Outcome::P);
        assert_eq!(g.values(), &[0]);
    }

    #[test]
    fn cn42_table() {
        let r = Ruleset::ecn(4, [1], 2).unwrap();
        let (o, _) = build_tables(&r, 2, Budget::DEFAULT).unwrap();
        assert_eq!(o.outcome(&[2, 1, 2, 1]), Some(Outcome::P));
        assert_eq!(o.outcome(&[2, 1, 2, 0]), Some(Outcome::N));
    }

    #[test]
    fn capacity_error_reports_sizes() {
        let r = Ruleset::ecn(8, [1], 2).unwrap();
        let err = GrundyTable::uniform(&r, 5, Budget::new(10)).unwrap_err();
        assert!(matches!(err, Error::Capacity { required: 1679616, available: 10 }));
    }

    #[test]
    fn table_winning_move_is_lexicographically_smallest() {
        let r = Ruleset::nim(2).unwrap();
        let t = GrundyTable::uniform(&r, 3, Budget::DEFAULT).unwrap();
        let mv = t.winning_move(&[3, 1]).unwrap();
        assert_eq!(mv.removals(), &[(0, 2)]);
        assert!(t.winning_move(&[2, 2]).is_none());
    }

    #[test]
    fn mex_of_bits() {
        assert_eq!(mex_bits(&[0]), 0);
        assert_eq!(mex_bits(&[0b1011]), 2);
        assert_eq!(mex_bits(&[u64::MAX, 1]), 65);
    }
}
