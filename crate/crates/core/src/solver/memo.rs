use std::collections::HashMap;

use super::shape::Budget;
use crate::error::{Error, Result};
use crate::game::{canonical, Face, Position, Ruleset};

/// Memoized Grundy recursion over single positions. Memo keys are canonical
/// dihedral representatives when the ruleset's face family allows it.
///
/// The recursion runs on an explicit stack, so deep positions cannot
/// overflow the thread stack.
pub struct MemoSolver {
    ruleset: Ruleset,
    faces: Vec<Face>,
    symmetric: bool,
    memo: HashMap<Vec<u64>, u32>,
    budget: Budget,
}

struct Frame {
    key: Vec<u64>,
    options: Vec<Vec<u64>>,
    next: usize,
    seen: Vec<u32>,
}

impl MemoSolver {
    pub fn new(ruleset: &Ruleset, budget: Budget) -> Self {
        MemoSolver {
            faces: ruleset.all_faces(),
            symmetric: ruleset.is_dihedral_invariant(),
            ruleset: ruleset.clone(),
            memo: HashMap::new(),
            budget,
        }
    }

    pub fn ruleset(&self) -> &Ruleset {
        &self.ruleset
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn key(&self, piles: &[u64]) -> Vec<u64> {
        if self.symmetric {
            canonical(&Position::new(piles.to_vec())).into_inner()
        } else {
            piles.to_vec()
        }
    }

    fn options(&self, piles: &[u64]) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for face in &self.faces {
            let idx: Vec<usize> = face.indices().collect();
            if idx.iter().any(|&i| piles[i] == 0) {
                continue;
            }
            let mut next = piles.to_vec();
            for &i in &idx {
                next[i] -= 1;
            }
            'odometer: loop {
                out.push(next.clone());
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
                    next[i] = piles[i] - 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn grundy(&mut self, pos: &Position) -> Result<u32> {
        self.ruleset.check_position(pos)?;
        let root = self.key(pos);
        if let Some(&g) = self.memo.get(&root) {
            return Ok(g);
        }
        let mut stack = vec![Frame {
            options: self.options(&root),
            key: root,
            next: 0,
            seen: Vec::new(),
        }];
        while let Some(top) = stack.last_mut() {
            if top.next < top.options.len() {
                let opt_key = self.key(&top.options[top.next]);
                top.next += 1;
                if let Some(&g) = self.memo.get(&opt_key) {
                    top.seen.push(g);
                } else {
                    let options = self.options(&opt_key);
                    stack.push(Frame {
                        key: opt_key,
                        options,
                        next: 0,
                        seen: Vec::new(),
                    });
                }
                continue;
            }
            let frame = stack.pop().expect("stack is nonempty");
            let g = mex(frame.seen);
            if self.memo.len() as u128 >= self.budget.max_entries {
                return Err(Error::Capacity {
                    required: self.memo.len() as u128 + 1,
                    available: self.budget.max_entries,
                });
            }
            self.memo.insert(frame.key, g);
            match stack.last_mut() {
                Some(parent) => parent.seen.push(g),
                None => return Ok(g),
            }
        }
        unreachable!("root frame returns")
    }
}

fn mex(mut values: Vec<u32>) -> u32 {
    values.sort_unstable();
    values.dedup();
    values
        .iter()
        .enumerate()
        .find(|&(i, &v)| v as usize != i)
        .map_or(values.len() as u32, |(i, _)| i as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::GrundyTable;

    #[test]
    fn mex_examples() {
        assert_eq!(mex(vec![]), 0);
        assert_eq!(mex(vec![1, 2]), 0);
        assert_eq!(mex(vec![0, 0, 1, 3]), 2);
        assert_eq!(mex(vec![2, 1, 0]), 3);
    }

    #[test]
    fn agrees_with_dense_table() {
        for r in [
            Ruleset::ecn(5, [1], 2).unwrap(),
            Ruleset::ecn(6, [1, 2], 3).unwrap(),
            Ruleset::moore(4, 2).unwrap(),
            Ruleset::simplicial(3, vec![vec![0], vec![1], vec![2], vec![0, 1]]).unwrap(),
        ] {
            let t = GrundyTable::uniform(&r, 2, Budget::DEFAULT).unwrap();
            let mut memo = MemoSolver::new(&r, Budget::DEFAULT);
            t.shape().for_each(|i, p| {
                let g = memo.grundy(&Position::new(p.to_vec())).unwrap();
                assert_eq!(g, t.values()[i], "{r} {p:?}");
            });
        }
    }

    #[test]
    fn canonical_keys_shrink_the_memo() {
        let r = Ruleset::ecn(6, [1, 2], 2).unwrap();
        let mut memo = MemoSolver::new(&r, Budget::DEFAULT);
        memo.grundy(&Position::new(vec![2; 6])).unwrap();
        assert!(memo.memo_len() < 3usize.pow(6));
    }

    #[test]
    fn memo_budget() {
        let r = Ruleset::ecn(6, [1], 2).unwrap();
        let mut memo = MemoSolver::new(&r, Budget::new(50));
        let err = memo.grundy(&Position::new(vec![3; 6])).unwrap_err();
        assert!(err.is_budget());
    }
}
