//! Sorted derivative multi-indices.
//!
//! A `MultiIndex` records how many times each axis is differentiated
//! (counts vector of length N summing to the order m). It stands for the
//! whole equivalence class of `m!/(k_1! ... k_N!)` equal mixed partials, so a
//! symmetric order-m tensor needs only `C(N+m-1, m)` entries.

use crate::poly::multinomial;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    counts: Vec<u32>,
}

impl MultiIndex {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    /// The order-zero index (no derivatives).
    pub fn empty(dim: usize) -> Self {
        Self { counts: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn order(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, axis: usize) -> u32 {
        self.counts[axis]
    }

    /// Number of order permutations this sorted representative stands for.
    pub fn multiplicity(&self) -> u64 {
        multinomial(&self.counts)
    }

    /// Smallest axis with a nonzero count.
    pub fn first_axis(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c > 0)
    }

    pub fn with_axis_added(&self, axis: usize) -> Self {
        let mut c = self.counts.clone();
        c[axis] += 1;
        Self { counts: c }
    }

    pub fn with_axis_removed(&self, axis: usize) -> Self {
        debug_assert!(self.counts[axis] > 0);
        let mut c = self.counts.clone();
        c[axis] -= 1;
        Self { counts: c }
    }

    /// The non-decreasing axis tuple `(i_1 <= ... <= i_m)`, zero-based.
    pub fn axes(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.order() as usize);
        for (axis, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                v.push(axis);
            }
        }
        v
    }

    /// All multi-indices of the given order over `dim` axes, in
    /// deterministic (lexicographic counts) order.
    pub fn enumerate(dim: usize, order: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut counts = vec![0u32; dim];
        fn rec(counts: &mut Vec<u32>, axis: usize, left: u32, out: &mut Vec<MultiIndex>) {
            if axis + 1 == counts.len() {
                counts[axis] = left;
                out.push(MultiIndex::new(counts.clone()));
                counts[axis] = 0;
                return;
            }
            for k in 0..=left {
                counts[axis] = k;
                rec(counts, axis + 1, left - k, out);
            }
            counts[axis] = 0;
        }
        rec(&mut counts, 0, order, &mut out);
        out
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let axes: Vec<String> = self.axes().iter().map(|a| (a + 1).to_string()).collect();
        write!(f, "{{{}}}", axes.join(","))
    }
}
