use crate::error::{Error, Result};

/// Entry budget for dense tables and memo solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_entries: u128,
}

impl Budget {
    pub const DEFAULT: Budget = Budget {
        max_entries: 1 << 25,
    };

    pub fn new(max_entries: u128) -> Self {
        Budget { max_entries }
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.max_entries {
            Err(Error::Capacity {
                required,
                available: self.max_entries,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Number of positions in the box `0 <= n_i <= caps[i]`, saturating.
pub fn box_size(caps: &[u64]) -> u128 {
    caps.iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
        .unwrap_or(u128::MAX)
}

/// Mixed-radix layout of the box `0 <= n_i <= caps[i]`; pile 0 is the most
/// significant digit, so index order is lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxShape {
    caps: Vec<u64>,
    strides: Vec<usize>,
    len: usize,
}

impl BoxShape {
    pub fn new(caps: Vec<u64>, budget: Budget) -> Result<Self> {
        let required = box_size(&caps);
        budget.check(required)?;
        let len = usize::try_from(required).map_err(|_| Error::Capacity {
            required,
            available: usize::MAX as u128,
        })?;
        let m = caps.len();
        let mut strides = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (caps[i + 1] as usize + 1);
        }
        Ok(BoxShape { caps, strides, len })
    }

    pub fn uniform(m: usize, bound: u64, budget: Budget) -> Result<Self> {
        Self::new(vec![bound; m], budget)
    }

    pub fn caps(&self) -> &[u64] {
        &self.caps
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn m(&self) -> usize {
        self.caps.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The uniform bound if every cap is equal.
    pub fn uniform_bound(&self) -> Option<u64> {
        let first = *self.caps.first()?;
        self.caps.iter().all(|&c| c == first).then_some(first)
    }

    pub fn contains(&self, piles: &[u64]) -> bool {
        piles.len() == self.caps.len() && piles.iter().zip(&self.caps).all(|(n, c)| n <= c)
    }

    pub fn index(&self, piles: &[u64]) -> Option<usize> {
        self.contains(piles).then(|| {
            piles
                .iter()
                .zip(&self.strides)
                .map(|(&n, &s)| n as usize * s)
                .sum()
        })
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [u64]) {
        for (o, &s) in out.iter_mut().zip(&self.strides) {
            *o = (index / s) as u64;
            index %= s;
        }
    }

    pub fn position(&self, index: usize) -> Vec<u64> {
        let mut out = vec![0; self.m()];
        self.decode_into(index, &mut out);
        out
    }

    /// Calls `f(index, piles)` for every position in index order.
    pub fn for_each(&self, mut f: impl FnMut(usize, &[u64])) {
        let m = self.m();
        let mut cur = vec![0u64; m];
        for idx in 0..self.len {
            f(idx, &cur);
            for j in (0..m).rev() {
                if cur[j] < self.caps[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = 0;
            }
        }
    }

    /// Indices grouped by token total, ascending. Returns `(order, offsets)`:
    /// level `t` is `order[offsets[t]..offsets[t + 1]]`.
    pub fn levels(&self) -> (Vec<usize>, Vec<usize>) {
        let max_total: u64 = self.caps.iter().sum();
        let mut totals = Vec::with_capacity(self.len);
        let mut counts = vec![0usize; max_total as usize + 2];
        self.for_each(|_, p| {
            let t = p.iter().sum::<u64>() as usize;
            totals.push(t as u32);
            counts[t + 1] += 1;
        });
        for t in 1..counts.len() {
            counts[t] += counts[t - 1];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut order = vec![0usize; self.len];
        for (idx, &t) in totals.iter().enumerate() {
            let slot = &mut fill[t as usize];
            order[*slot] = idx;
            *slot += 1;
        }
        (order, offsets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_lexicographic() {
        let s = BoxShape::new(vec![1, 2, 3], Budget::DEFAULT).unwrap();
        assert_eq!(s.len(), 24);
        let mut prev: Option<Vec<u64>> = None;
        s.for_each(|i, p| {
            assert_eq!(s.index(p), Some(i));
            assert_eq!(s.position(i), p);
            if let Some(q) = &prev {
                assert!(q.as_slice() < p);
            }
            prev = Some(p.to_vec());
        });
    }

    #[test]
    fn levels_partition_by_total() {
        let s = BoxShape::uniform(3, 2, Budget::DEFAULT).unwrap();
        let (order, offsets) = s.levels();
        assert_eq!(offsets.len(), 8);
        assert_eq!(*offsets.last().unwrap(), 27);
        for t in 0..7 {
            for &idx in &order[offsets[t]..offsets[t + 1]] {
                assert_eq!(s.position(idx).iter().sum::<u64>(), t as u64);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = BoxShape::uniform(8, 9, Budget::new(1000)).unwrap_err();
        assert_eq!(
            err,
            Error::Capacity {
                required: 100_000_000,
                available: 1000
            }
        );
    }
}
