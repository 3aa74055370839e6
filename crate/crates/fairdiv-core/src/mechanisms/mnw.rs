//! Brute-force maximization of Nash social welfare.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::ordering::AgentOrdering;
use crate::rational::Rational;
use crate::Allocation;

/// Outcome of the exhaustive Nash-welfare search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnwOutcome {
    pub allocation: Allocation,
    /// Product of all agents' utilities in the returned allocation.
    pub nash_welfare: Rational,
    /// True when no allocation gives every agent positive utility. The
    /// returned allocation then maximizes the number of positively-served
    /// agents first and the product over those agents second.
    pub degenerate: bool,
}

/// Allocations are ranked by (number of agents with positive utility,
/// product of the positive utilities), compared lexicographically. When a
/// positive-welfare allocation exists this is exactly Nash-welfare
/// maximization; otherwise it is the standard degenerate extension.
fn score(utilities: &[Rational]) -> (usize, Rational) {
    let mut count = 0usize;
    let mut product = Rational::one();
    for u in utilities {
        if u > &Rational::zero() {
            count += 1;
            product *= u;
        }
    }
    (count, product)
}

/// Enumerates every allocation (assigning goods in index order to agents in
/// position order) and returns the first maximizer of the Nash welfare in
/// that enumeration order. Requires `n^m` within `cap`.
pub fn mnw_bruteforce_detailed(
    inst: &Instance,
    ordering: &AgentOrdering,
    cap: u64,
) -> Result<MnwOutcome> {
    super::check_dimensions(inst, ordering)?;
    let n = inst.agent_count();
    let m = inst.good_count();
    let state_count = (n as u64).saturating_pow(m.min(u32::MAX as usize) as u32);
    if state_count > cap {
        return Err(Error::resource(alloc::format!(
            "{}^{} allocations exceed the enumeration cap of {}",
            n,
            m,
            cap
        )));
    }

    // Odometer over position choices per good, most significant digit first:
    // exactly the order "for each choice of good 1's receiver, for each
    // choice of good 2's receiver, ...".
    let mut digits = alloc::vec![0usize; m];
    let mut best: Option<(usize, Rational, Vec<usize>)> = None;
    loop {
        let mut utilities = alloc::vec![Rational::zero(); n];
        for (g, &pos) in digits.iter().enumerate() {
            let agent = ordering.agent_at(pos);
            utilities[agent] += inst.utility(agent, g);
        }
        let (count, product) = score(&utilities);
        let improves = match &best {
            None => true,
            Some((bc, bp, _)) => count > *bc || (count == *bc && product > *bp),
        };
        if improves {
            best = Some((count, product, digits.clone()));
        }

        // Advance; rightmost digit moves fastest.
        let mut pos = m;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
        if digits.iter().all(|&d| d == 0) {
            break;
        }
    }

    let (count, _, winning) = best.expect("at least one allocation enumerated");
    let mut allocation = Allocation::empty(n);
    for (g, &pos) in winning.iter().enumerate() {
        allocation.bundle_mut(ordering.agent_at(pos)).insert(g);
    }
    let nash_welfare = (0..n)
        .map(|a| crate::instance::bundle_utility(inst, a, allocation.bundle(a)).expect("in range"))
        .product();
    Ok(MnwOutcome {
        allocation,
        nash_welfare,
        degenerate: count < n,
    })
}

/// [`mnw_bruteforce_detailed`] without the diagnostics.
pub fn mnw_bruteforce(inst: &Instance, ordering: &AgentOrdering, cap: u64) -> Result<Allocation> {
    mnw_bruteforce_detailed(inst, ordering, cap).map(|o| o.allocation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::Bundle;

    fn bundle(goods: &[usize]) -> Bundle {
        goods.iter().copied().collect()
    }

    #[test]
    fn complementary_preferences_split_cleanly() {
        let inst = Instance::from_integer_rows(&[&[2, 1], &[1, 2]]).unwrap();
        let out = mnw_bruteforce_detailed(&inst, &AgentOrdering::identity(2), 1000).unwrap();
        assert_eq!(out.allocation.bundle(0), &bundle(&[0]));
        assert_eq!(out.allocation.bundle(1), &bundle(&[1]));
        assert_eq!(out.nash_welfare, rat(4));
        assert!(!out.degenerate);
    }

    #[test]
    fn degenerate_case_maximizes_served_agents() {
        let inst = Instance::from_integer_rows(&[&[1], &[0]]).unwrap();
        for pi in AgentOrdering::all(2) {
            let out = mnw_bruteforce_detailed(&inst, &pi, 1000).unwrap();
            assert_eq!(out.allocation.bundle(0), &bundle(&[0]));
            assert!(out.degenerate);
            assert_eq!(out.nash_welfare, rat(0));
        }
    }

    #[test]
    fn single_agent_takes_everything() {
        let inst = Instance::from_integer_rows(&[&[1, 0, 3]]).unwrap();
        let out = mnw_bruteforce(&inst, &AgentOrdering::identity(1), 1000).unwrap();
        assert_eq!(out.bundle(0), &bundle(&[0, 1, 2]));
    }

    #[test]
    fn zero_goods_is_fine() {
        let inst = Instance::new(alloc::vec![alloc::vec![], alloc::vec![]]).unwrap();
        let out = mnw_bruteforce(&inst, &AgentOrdering::identity(2), 1000).unwrap();
        assert!(out.bundle(0).is_empty() && out.bundle(1).is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::from_integer_rows(&[&[1, 1, 1, 1], &[1, 1, 1, 1]]).unwrap();
        let err = mnw_bruteforce(&inst, &AgentOrdering::identity(2), 15).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn ties_break_by_enumeration_order() {
        // Symmetric instance: both allocations of the single good produce
        // welfare 0; the position-1 agent comes first in enumeration order.
        let inst = Instance::from_integer_rows(&[&[7], &[7]]).unwrap();
        for pi in AgentOrdering::all(2) {
            let out = mnw_bruteforce(&inst, &pi, 1000).unwrap();
            assert_eq!(out.bundle(pi.agent_at(0)), &bundle(&[0]));
            assert!(out.bundle(pi.agent_at(1)).is_empty());
        }
    }
}
