use std::fmt;

use super::ExteriorError;

/// Strictly increasing list of 1-based coordinate indices naming the basis
/// form `dx^{i_1} ∧ ... ∧ dx^{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn new(indices: &[usize]) -> Result<Self, ExteriorError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.first() == Some(&0) {
            return Err(ExteriorError::UnsortedMultiIndex(indices.to_vec()));
        }
        Ok(Self::from_sorted(indices))
    }

    pub(crate) fn from_sorted(indices: &[usize]) -> Self {
        MultiIndex(
            indices
                .iter()
                .map(|&i| u8::try_from(i).expect("index too large"))
                .collect(),
        )
    }

    /// Sorts an arbitrary index tuple, returning the permutation sign, or
    /// `None` when an index repeats (the basis form vanishes).
    pub fn canonicalize(indices: &[usize]) -> Option<(i8, MultiIndex)> {
        let mut v = indices.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Self::from_sorted(&v)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices().collect()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.iter().any(|&i| i as usize == index)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&i| i as usize)
    }

    /// Removes the entry at `position`.
    pub(crate) fn without_position(&self, position: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(position);
        MultiIndex(v)
    }

    /// `dx^index ∧ dx^self`, as a sign and canonical index; `None` if
    /// `index` is already present.
    pub(crate) fn prepend(&self, index: usize) -> Option<(i8, MultiIndex)> {
        if self.contains(index) {
            return None;
        }
        let pos = self.0.iter().take_while(|&&i| (i as usize) < index).count();
        let mut v = self.0.clone();
        v.insert(pos, index as u8);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((sign, MultiIndex(v)))
    }

    /// `dx^self ∧ dx^other`; `None` when the index sets overlap.
    pub(crate) fn merge(&self, other: &MultiIndex) -> Option<(i8, MultiIndex)> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (0, 0);
        let mut inversions = 0usize;
        while a < self.0.len() || b < other.0.len() {
            if b == other.0.len() || (a < self.0.len() && self.0[a] < other.0[b]) {
                out.push(self.0[a]);
                a += 1;
            } else if a == self.0.len() || other.0[b] < self.0[a] {
                // every remaining element of `self` is larger than this one
                inversions += self.0.len() - a;
                out.push(other.0[b]);
                b += 1;
            } else {
                return None;
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, MultiIndex(out)))
    }

    /// Indices in `1..=dim` not in `self`, and the sign of the permutation
    /// `(self, complement)`.
    pub fn complement(&self, dim: usize) -> (i8, MultiIndex) {
        let rest: Vec<usize> = (1..=dim).filter(|&i| !self.contains(i)).collect();
        let rest = MultiIndex::from_sorted(&rest);
        let (sign, _) = self.merge(&rest).expect("disjoint by construction");
        (sign, rest)
    }

    /// All strictly increasing `k`-subsets of `1..=dim`, lexicographically.
    pub fn all(dim: usize, k: usize) -> Vec<MultiIndex> {
        fn rec(
            start: usize,
            dim: usize,
            k: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<MultiIndex>,
        ) {
            if cur.len() == k {
                out.push(MultiIndex::from_sorted(cur));
                return;
            }
            for i in start..=dim {
                cur.push(i);
                rec(i + 1, dim, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= dim {
            rec(1, dim, k, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("dx[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}
