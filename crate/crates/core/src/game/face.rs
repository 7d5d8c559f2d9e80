use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of pile indices, stored as a bitmask (bit `i` is pile `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(u32);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u32) -> Self {
        Face(bits)
    }

    /// Wrap-around duplicates collapse: `{0, 3, 0}` is `{0, 3}`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Face(indices.into_iter().fold(0u32, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Image under a pile relabeling `i -> map[i]`.
    pub fn relabel(self, map: &[usize]) -> Face {
        Face::from_indices(self.indices().map(|i| map[i]))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.indices())
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = indices.iter().find(|&&i| i >= 32) {
            return Err(serde::de::Error::custom(format!("pile index {bad} out of range")));
        }
        Ok(Face::from_indices(indices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse() {
        let f = Face::from_indices([0, 3, 0, 3]);
        assert_eq!(f.len(), 2);
        assert_eq!(f.indices().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(f.to_string(), "{0,3}");
    }

    #[test]
    fn subset_and_relabel() {
        let a = Face::from_indices([1, 2]);
        let b = Face::from_indices([0, 1, 2]);
        assert!(a.is_subset_of(b));
        assert!(!b.is_subset_of(a));
        let map = [2, 0, 1];
        assert_eq!(a.relabel(&map), Face::from_indices([0, 1]));
    }
}
