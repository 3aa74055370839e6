//! Bundles and allocations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

/// A set of good indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Bundle {
    goods: BTreeSet<usize>,
}

impl Bundle {
    pub fn new() -> Self {
        Bundle::default()
    }

    pub fn insert(&mut self, good: usize) -> bool {
        self.goods.insert(good)
    }

    pub fn remove(&mut self, good: usize) -> bool {
        self.goods.remove(&good)
    }

    pub fn contains(&self, good: usize) -> bool {
        self.goods.contains(&good)
    }

    pub fn len(&self) -> usize {
        self.goods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goods.is_empty()
    }

    /// Goods in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.goods.iter().copied()
    }
}

impl FromIterator<usize> for Bundle {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Bundle {
            goods: iter.into_iter().collect(),
        }
    }
}

impl Extend<usize> for Bundle {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.goods.extend(iter);
    }
}

/// A partition of the goods `0..m` into one bundle per agent, indexed by
/// agent (never by position).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    bundles: Vec<Bundle>,
}

impl Allocation {
    /// `n` empty bundles.
    pub fn empty(agent_count: usize) -> Self {
        Allocation {
            bundles: alloc::vec![Bundle::new(); agent_count],
        }
    }

    pub fn new(bundles: Vec<Bundle>) -> Self {
        Allocation { bundles }
    }

    pub fn agent_count(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundle(&self, agent: usize) -> &Bundle {
        &self.bundles[agent]
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub(crate) fn bundle_mut(&mut self, agent: usize) -> &mut Bundle {
        &mut self.bundles[agent]
    }
}

/// Why an allocation fails validation. Goods print 1-based, matching all
/// user-facing output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllocationViolation {
    WrongBundleCount { expected: usize, actual: usize },
    OutOfRange { good: usize },
    Duplicated { good: usize },
    Unassigned { good: usize },
}

impl fmt::Display for AllocationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllocationViolation::WrongBundleCount { expected, actual } => {
                write!(f, "expected {expected} bundles, found {actual}")
            }
            AllocationViolation::OutOfRange { good } => {
                write!(f, "good g{} is out of range", good + 1)
            }
            AllocationViolation::Duplicated { good } => {
                write!(f, "good g{} is assigned to more than one agent", good + 1)
            }
            AllocationViolation::Unassigned { good } => {
                write!(f, "good g{} is unassigned", good + 1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn bundle_iterates_sorted() {
        let b: Bundle = [3, 1, 2].into_iter().collect();
        assert_eq!(b.iter().collect::<Vec<_>>(), alloc::vec![1, 2, 3]);
    }

    #[test]
    fn violation_messages_are_one_based() {
        assert_eq!(
            AllocationViolation::Duplicated { good: 0 }.to_string(),
            "good g1 is assigned to more than one agent"
        );
        assert_eq!(
            AllocationViolation::Unassigned { good: 1 }.to_string(),
            "good g2 is unassigned"
        );
    }
}
