//! The envy-cycle mechanism.
//!
//! Goods are handed out in index order, each to an unenvied agent (ties
//! broken by smallest position under the input ordering). Whenever every
//! agent is envied, a cycle in the envy graph is dissolved by rotating
//! bundles along it, which strictly shrinks the edge set, until an unenvied
//! agent reappears.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::ordering::AgentOrdering;
use crate::rational::Rational;
use crate::{Allocation, Bundle};

struct State<'a> {
    inst: &'a Instance,
    ordering: &'a AgentOrdering,
    bundles: Vec<Bundle>,
    // value[a][b] = value of b's current bundle in a's eyes.
    value: Vec<Vec<Rational>>,
}

impl State<'_> {
    fn envies(&self, a: usize, b: usize) -> bool {
        a != b && self.value[a][a] < self.value[a][b]
    }

    fn is_unenvied(&self, b: usize) -> bool {
        (0..self.bundles.len()).all(|a| !self.envies(a, b))
    }

    /// Unenvied agent of smallest position, if any.
    fn first_unenvied(&self) -> Option<usize> {
        self.ordering
            .positions()
            .iter()
            .copied()
            .find(|&b| self.is_unenvied(b))
    }

    fn edge_count(&self) -> usize {
        let n = self.bundles.len();
        (0..n)
            .map(|a| (0..n).filter(|&b| self.envies(a, b)).count())
            .sum()
    }

    fn give(&mut self, agent: usize, good: usize) {
        self.bundles[agent].insert(good);
        for a in 0..self.bundles.len() {
            let u = self.inst.utility(a, good).clone();
            self.value[a][agent] += u;
        }
    }

    /// Finds a cycle by walking backwards along envy edges: starting from
    /// the smallest-position agent, repeatedly step to the smallest-position
    /// agent envying the current one. Every agent is envied here, so the
    /// walk cannot stall and must revisit a vertex.
    fn find_cycle(&self) -> Result<Vec<usize>> {
        let n = self.bundles.len();
        let mut walk: Vec<usize> = Vec::new();
        let mut at = self.ordering.agent_at(0);
        loop {
            if let Some(start) = walk.iter().position(|&v| v == at) {
                return Ok(walk[start..].to_vec());
            }
            walk.push(at);
            let envier = self
                .ordering
                .positions()
                .iter()
                .copied()
                .find(|&a| self.envies(a, at))
                .ok_or_else(|| Error::internal("every agent must be envied during cycle search"))?;
            at = envier;
            if walk.len() > n {
                return Err(Error::internal("cycle walk failed to close"));
            }
        }
    }

    /// Rotates bundles along `walk` (consecutive entries `(w_k, w_{k+1})`
    /// satisfy "w_{k+1} envies w_k"): each agent receives the bundle of the
    /// agent it envies.
    fn rotate(&mut self, walk: &[usize]) {
        let k = walk.len();
        let old_bundles = self.bundles.clone();
        let old_value: Vec<Vec<Rational>> = self.value.clone();
        for idx in 0..k {
            let receiver = walk[(idx + 1) % k];
            let source = walk[idx];
            self.bundles[receiver] = old_bundles[source].clone();
            for (row, old_row) in self.value.iter_mut().zip(&old_value) {
                row[receiver] = old_row[source].clone();
            }
        }
    }
}

/// Runs the envy-cycle mechanism. Internal errors are impossible for a
/// correct envy graph and indicate a bug.
pub fn envy_cycle(inst: &Instance, ordering: &AgentOrdering) -> Result<Allocation> {
    super::check_dimensions(inst, ordering)?;
    let n = inst.agent_count();
    let mut state = State {
        inst,
        ordering,
        bundles: alloc::vec![Bundle::new(); n],
        value: alloc::vec![alloc::vec![Rational::zero(); n]; n],
    };
    for good in 0..inst.good_count() {
        let receiver = state
            .first_unenvied()
            .ok_or_else(|| Error::internal("no unenvied agent before an assignment"))?;
        state.give(receiver, good);
        // Each rotation strictly decreases the envy edge count, so at most
        // n^2 rotations can separate two assignments.
        let mut rotations = 0usize;
        while state.first_unenvied().is_none() {
            let before = state.edge_count();
            let walk = state.find_cycle()?;
            state.rotate(&walk);
            if state.edge_count() >= before {
                return Err(Error::internal("cycle rotation did not reduce envy edges"));
            }
            rotations += 1;
            if rotations > n * n {
                return Err(Error::internal("cycle elimination failed to terminate"));
            }
        }
    }
    Ok(Allocation::new(state.bundles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::instance::validate_allocation;

    fn bundle(goods: &[usize]) -> Bundle {
        goods.iter().copied().collect()
    }

    #[test]
    fn indifferent_rivals_let_the_first_agent_take_everything() {
        let inst = generators::ec_worst(2, 4).unwrap();
        let alloc = envy_cycle(&inst, &AgentOrdering::identity(2)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[0, 1, 2, 3]));
        assert!(alloc.bundle(1).is_empty());
    }

    #[test]
    fn reversed_ordering_starves_the_interested_agent() {
        let inst = generators::ec_worst(2, 4).unwrap();
        let alloc = envy_cycle(&inst, &AgentOrdering::reversed(2)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[1, 3]));
        assert_eq!(alloc.bundle(1), &bundle(&[0, 2]));
    }

    #[test]
    fn single_good_goes_to_the_first_position() {
        let inst = Instance::from_integer_rows(&[&[4], &[9], &[1]]).unwrap();
        let pi = AgentOrdering::new(alloc::vec![1, 2, 0]).unwrap();
        let alloc = envy_cycle(&inst, &pi).unwrap();
        assert_eq!(alloc.bundle(1), &bundle(&[0]));
    }

    #[test]
    fn three_indifferent_rivals() {
        let inst = generators::ec_worst(3, 3).unwrap();
        let alloc = envy_cycle(&inst, &AgentOrdering::identity(3)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[0, 1, 2]));
        let alloc = envy_cycle(&inst, &AgentOrdering::reversed(3)).unwrap();
        assert_eq!(alloc.bundle(0).len(), 1);
    }

    #[test]
    fn opposed_preferences_trigger_a_final_swap() {
        // Position order gives g1 to a1 and g2 to a2; each prefers the
        // other's good, and the closing cycle swaps them.
        let inst = Instance::from_integer_rows(&[&[1, 5], &[5, 1]]).unwrap();
        let alloc = envy_cycle(&inst, &AgentOrdering::identity(2)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[1]));
        assert_eq!(alloc.bundle(1), &bundle(&[0]));
        assert!(validate_allocation(&inst, &alloc).is_ok());
    }

    #[test]
    fn three_agent_cycle_resolves() {
        // a1 -> a2 -> a3 -> a1 in bundle preference once all three hold one
        // good each.
        let inst = Instance::from_integer_rows(&[&[1, 5, 0], &[0, 1, 5], &[5, 0, 1]]).unwrap();
        let alloc = envy_cycle(&inst, &AgentOrdering::identity(3)).unwrap();
        assert!(validate_allocation(&inst, &alloc).is_ok());
        assert_eq!(alloc.bundle(0), &bundle(&[1]));
        assert_eq!(alloc.bundle(1), &bundle(&[2]));
        assert_eq!(alloc.bundle(2), &bundle(&[0]));
    }
}
