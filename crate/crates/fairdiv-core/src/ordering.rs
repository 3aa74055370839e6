//! Agent orderings: the bijection between agents and pick positions that
//! every mechanism consumes alongside the utility profile.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A bijection from agents to positions `1..=n`, stored as the pick order:
/// entry `p` is the agent occupying position `p + 1`.
///
/// Agents and positions are 0-based everywhere in this crate; user-facing
/// 1-based numbering is a presentation concern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AgentOrdering {
    positions: Vec<usize>,
    inverse: Vec<usize>,
}

impl AgentOrdering {
    /// Builds an ordering from the pick order (`positions[p]` = agent at
    /// position `p`). Fails unless the list is a permutation of `0..n`.
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        let n = positions.len();
        if n == 0 {
            return Err(Error::input("ordering must contain at least one agent"));
        }
        let mut inverse = alloc::vec![usize::MAX; n];
        for (pos, &agent) in positions.iter().enumerate() {
            if agent >= n {
                return Err(Error::input(format!(
                    "ordering entry {} out of range for {} agents",
                    agent, n
                )));
            }
            if inverse[agent] != usize::MAX {
                return Err(Error::input(format!(
                    "agent {} appears twice in the ordering",
                    agent
                )));
            }
            inverse[agent] = pos;
        }
        Ok(AgentOrdering { positions, inverse })
    }

    /// The ordering `a_1, a_2, ..., a_n`.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity is a permutation")
    }

    /// The ordering `a_n, a_{n-1}, ..., a_1`.
    pub fn reversed(n: usize) -> Self {
        Self::new((0..n).rev().collect()).expect("reversal is a permutation")
    }

    pub fn agent_count(&self) -> usize {
        self.positions.len()
    }

    /// Agent occupying 0-based position `pos`.
    pub fn agent_at(&self, pos: usize) -> usize {
        self.positions[pos]
    }

    /// 0-based position of `agent`.
    pub fn position_of(&self, agent: usize) -> usize {
        self.inverse[agent]
    }

    /// Agents in pick order.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// All `n!` orderings in lexicographic order of their pick lists.
    pub fn all(n: usize) -> Vec<AgentOrdering> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = alloc::vec![false; n];
        fn rec(
            n: usize,
            current: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<AgentOrdering>,
        ) {
            if current.len() == n {
                out.push(AgentOrdering::new(current.clone()).expect("permutation"));
                return;
            }
            for agent in 0..n {
                if !used[agent] {
                    used[agent] = true;
                    current.push(agent);
                    rec(n, current, used, out);
                    current.pop();
                    used[agent] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// `n!` as a saturating `u64`, for cap checks.
pub fn factorial_saturating(n: usize) -> u64 {
    let mut acc: u64 = 1;
    for k in 2..=n as u64 {
        acc = acc.saturating_mul(k);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_permutations() {
        assert!(AgentOrdering::new(alloc::vec![]).is_err());
        assert!(AgentOrdering::new(alloc::vec![0, 0]).is_err());
        assert!(AgentOrdering::new(alloc::vec![0, 2]).is_err());
    }

    #[test]
    fn positions_and_inverse_agree() {
        let pi = AgentOrdering::new(alloc::vec![2, 0, 1]).unwrap();
        assert_eq!(pi.agent_at(0), 2);
        assert_eq!(pi.position_of(2), 0);
        assert_eq!(pi.position_of(1), 2);
    }

    #[test]
    fn all_orderings_lexicographic() {
        let all = AgentOrdering::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].positions(), &[0, 1, 2]);
        assert_eq!(all[5].positions(), &[2, 1, 0]);
        for w in all.windows(2) {
            assert!(w[0].positions() < w[1].positions());
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial_saturating(0), 1);
        assert_eq!(factorial_saturating(8), 40_320);
        assert_eq!(factorial_saturating(30), u64::MAX); // saturated
    }
}
