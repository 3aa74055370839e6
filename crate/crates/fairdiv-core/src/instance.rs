//! Utility profiles over indivisible goods.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::allocation::{Allocation, AllocationViolation, Bundle};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An `n x m` matrix of non-negative utilities: `utilities[a][g]` is the
/// value of good `g` to agent `a`. Bundle values are additive.
///
/// Immutable after construction; all operations over it are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    utilities: Vec<Vec<Rational>>,
    agent_labels: Option<Vec<String>>,
    good_labels: Option<Vec<String>>,
}

impl Instance {
    /// Builds an instance from utility rows. Requires at least one agent, a
    /// rectangular matrix, and non-negative entries. Zero goods is fine.
    pub fn new(utilities: Vec<Vec<Rational>>) -> Result<Self> {
        let n = utilities.len();
        if n == 0 {
            return Err(Error::input("an instance needs at least one agent"));
        }
        let m = utilities[0].len();
        for (a, row) in utilities.iter().enumerate() {
            if row.len() != m {
                return Err(Error::input(format!(
                    "utility row {} has {} entries, expected {}",
                    a,
                    row.len(),
                    m
                )));
            }
            for (g, u) in row.iter().enumerate() {
                if u < &Rational::zero() {
                    return Err(Error::input(format!(
                        "utility of agent {} for good {} is negative",
                        a, g
                    )));
                }
            }
        }
        Ok(Instance {
            utilities,
            agent_labels: None,
            good_labels: None,
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_integer_rows(rows: &[&[u64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn with_agent_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.agent_count() {
            return Err(Error::input("agent label count does not match"));
        }
        self.agent_labels = Some(labels);
        Ok(self)
    }

    pub fn with_good_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.good_count() {
            return Err(Error::input("good label count does not match"));
        }
        self.good_labels = Some(labels);
        Ok(self)
    }

    pub fn agent_count(&self) -> usize {
        self.utilities.len()
    }

    pub fn good_count(&self) -> usize {
        self.utilities[0].len()
    }

    pub fn utility(&self, agent: usize, good: usize) -> &Rational {
        &self.utilities[agent][good]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn agent_labels(&self) -> Option<&[String]> {
        self.agent_labels.as_deref()
    }

    pub fn good_labels(&self) -> Option<&[String]> {
        self.good_labels.as_deref()
    }

    /// Total value of the whole good set for `agent`.
    pub fn total_utility(&self, agent: usize) -> Rational {
        self.utilities[agent].iter().sum()
    }
}

/// Exact value of `bundle` for `agent`: the sum of its per-good utilities.
/// The empty bundle is worth zero.
pub fn bundle_utility(inst: &Instance, agent: usize, bundle: &Bundle) -> Result<Rational> {
    if agent >= inst.agent_count() {
        return Err(Error::input(format!(
            "agent index {} out of range for {} agents",
            agent,
            inst.agent_count()
        )));
    }
    let mut total = Rational::zero();
    for g in bundle.iter() {
        if g >= inst.good_count() {
            return Err(Error::input(format!(
                "good index {} out of range for {} goods",
                g,
                inst.good_count()
            )));
        }
        total += inst.utility(agent, g);
    }
    Ok(total)
}

/// Checks that `alloc` is a partition of the instance's goods: one bundle per
/// agent, pairwise disjoint, covering every good exactly once. Reports the
/// smallest-index offending good.
pub fn validate_allocation(
    inst: &Instance,
    allocation: &Allocation,
) -> core::result::Result<(), AllocationViolation> {
    let n = inst.agent_count();
    let m = inst.good_count();
    if allocation.agent_count() != n {
        return Err(AllocationViolation::WrongBundleCount {
            expected: n,
            actual: allocation.agent_count(),
        });
    }
    let mut seen = alloc::vec![0usize; m];
    for bundle in allocation.bundles() {
        for g in bundle.iter() {
            if g >= m {
                return Err(AllocationViolation::OutOfRange { good: g });
            }
            seen[g] += 1;
        }
    }
    for (g, &count) in seen.iter().enumerate() {
        if count > 1 {
            return Err(AllocationViolation::Duplicated { good: g });
        }
    }
    for (g, &count) in seen.iter().enumerate() {
        if count == 0 {
            return Err(AllocationViolation::Unassigned { good: g });
        }
    }
    Ok(())
}

/// Multiplies each agent's utility row by the matching positive scalar.
/// Labels carry over; dimensions are unchanged.
pub fn scale_profile(inst: &Instance, scalars: &[Rational]) -> Result<Instance> {
    if scalars.len() != inst.agent_count() {
        return Err(Error::input(format!(
            "expected {} scalars, got {}",
            inst.agent_count(),
            scalars.len()
        )));
    }
    for (a, s) in scalars.iter().enumerate() {
        if s <= &Rational::zero() {
            return Err(Error::input(format!(
                "scalar for agent {} is not positive",
                a
            )));
        }
    }
    let utilities = inst
        .rows()
        .iter()
        .zip(scalars)
        .map(|(row, s)| row.iter().map(|u| u * s).collect())
        .collect();
    Ok(Instance {
        utilities,
        agent_labels: inst.agent_labels.clone(),
        good_labels: inst.good_labels.clone(),
    })
}
