//! Round-based allocation through maximum-weight matchings.
//!
//! After padding the goods with worthless dummies until the count is
//! divisible by `n`, the mechanism runs `m/n` rounds. Each round builds a
//! two-tier weight over the remaining goods (a rank weight that only
//! depends on how each agent orders the remaining goods, plus an index
//! weight that acts as a binary tie-code over good indices) and gives every
//! agent the good matched to it by the canonical maximum-weight assignment.
//!
//! Because the rank weight ignores utility magnitudes and the index weight
//! ignores utilities entirely, the output is invariant under positive
//! per-agent rescaling, and the *set* of goods matched in a round does not
//! depend on the agent ordering (the ordering only steers tie-breaking
//! within the set).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matching::{max_weight_assignment, AssignmentProblem};
use crate::ordering::AgentOrdering;
use crate::rational::Rational;
use crate::{Allocation, Bundle};

/// Appends goods valued zero by every agent until the good count is
/// divisible by the agent count. Dummies take the highest indices, so the
/// index weight ranks every real good above every dummy.
pub fn pad_with_dummies(inst: &Instance) -> Instance {
    let n = inst.agent_count();
    let m = inst.good_count();
    let padded = m.div_ceil(n) * n;
    if padded == m {
        return inst.clone();
    }
    let rows = inst
        .rows()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.resize(padded, Rational::zero());
            row
        })
        .collect();
    Instance::new(rows).expect("padding preserves validity")
}

/// Builds the round's assignment problem over the remaining goods.
///
/// For each agent, the remaining goods are ranked by utility (equal
/// utilities share a rank); a good of rank `i` out of `k` distinct values
/// weighs `2^(k-i)`. Good `g_j` (1-based index `j` in the padded instance)
/// additionally weighs `2^(m-j)`, and the combined weight is
/// `n*m*2^m * rank_weight + index_weight`, which makes the rank weight
/// lexicographically dominant.
pub fn mech1_weights(padded: &Instance, remaining: &Bundle) -> Result<AssignmentProblem> {
    let n = padded.agent_count();
    let m = padded.good_count();
    if remaining.is_empty() {
        return Err(Error::input("no goods remain to be weighted"));
    }
    if !m.is_multiple_of(n) {
        return Err(Error::input("instance must be padded before weighting"));
    }
    for g in remaining.iter() {
        if g >= m {
            return Err(Error::input("remaining set mentions an out-of-range good"));
        }
    }
    let goods: Vec<usize> = remaining.iter().collect();
    let scale = BigInt::from(n) * BigInt::from(m) * (BigInt::one() << m);
    let mut weights = Vec::with_capacity(n);
    for agent in 0..n {
        // Distinct utility values over the remaining goods, highest first.
        let mut distinct: Vec<&Rational> =
            goods.iter().map(|&g| padded.utility(agent, g)).collect();
        distinct.sort();
        distinct.dedup();
        let k = distinct.len();
        let row = goods
            .iter()
            .map(|&g| {
                let rank_from_bottom = distinct
                    .iter()
                    .position(|u| *u == padded.utility(agent, g))
                    .expect("utility is one of the distinct values");
                let rank_weight: BigInt = BigInt::one() << rank_from_bottom;
                debug_assert!(rank_from_bottom < k);
                let index_weight: BigInt = BigInt::one() << (m - (g + 1));
                &scale * rank_weight + index_weight
            })
            .collect();
        weights.push(row);
    }
    AssignmentProblem::new(weights)
}

/// Like [`matching_pef1`], but also reports the set of real (non-dummy)
/// goods matched in each round. That set is the same for every agent
/// ordering of the same profile.
pub fn matching_pef1_trace(
    inst: &Instance,
    ordering: &AgentOrdering,
) -> Result<(Allocation, Vec<Bundle>)> {
    super::check_dimensions(inst, ordering)?;
    let n = inst.agent_count();
    let m = inst.good_count();
    let padded = pad_with_dummies(inst);
    let padded_m = padded.good_count();
    let rounds = padded_m / n;

    let mut allocation = Allocation::empty(n);
    let mut round_sets = Vec::with_capacity(rounds);
    let mut remaining: Bundle = (0..padded_m).collect();
    for _ in 0..rounds {
        let goods: Vec<usize> = remaining.iter().collect();
        let prob = mech1_weights(&padded, &remaining)?;
        let matching = max_weight_assignment(&prob, ordering.positions())?;
        let mut matched_real = Bundle::new();
        for agent in 0..n {
            let g = goods[matching.assigned_to(agent)];
            remaining.remove(g);
            if g < m {
                matched_real.insert(g);
                allocation.bundle_mut(agent).insert(g);
            }
        }
        round_sets.push(matched_real);
    }
    debug_assert!(remaining.is_empty());
    Ok((allocation, round_sets))
}

/// Runs the matching-based mechanism and returns the allocation over the
/// real goods (dummies stripped).
pub fn matching_pef1(inst: &Instance, ordering: &AgentOrdering) -> Result<Allocation> {
    matching_pef1_trace(inst, ordering).map(|(alloc, _)| alloc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_allocation;
    use crate::rational::rat;

    fn bundle(goods: &[usize]) -> Bundle {
        goods.iter().copied().collect()
    }

    #[test]
    fn padding_reaches_the_next_multiple() {
        let inst = Instance::from_integer_rows(&[&[1], &[2]]).unwrap();
        let padded = pad_with_dummies(&inst);
        assert_eq!(padded.good_count(), 2);
        assert_eq!(padded.utility(0, 1), &rat(0));
        assert_eq!(padded.utility(1, 1), &rat(0));
        // Already divisible: unchanged.
        let even = Instance::from_integer_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(pad_with_dummies(&even), even);
    }

    #[test]
    fn index_weight_uses_global_one_based_indices() {
        // One agent, five goods, all equal utility: every rank weight is 1,
        // so the combined weight is scale + 2^(m-j).
        let inst = Instance::from_integer_rows(&[&[7, 7, 7, 7, 7]]).unwrap();
        let remaining: Bundle = (0..5).collect();
        let prob = mech1_weights(&inst, &remaining).unwrap();
        let scale = BigInt::from(5) * (BigInt::one() << 5);
        assert_eq!(prob.weight(0, 1), &(&scale + BigInt::from(8))); // g2: 2^(5-2)
        assert_eq!(prob.weight(0, 4), &(&scale + BigInt::one())); // g5: 2^0
    }

    #[test]
    fn rank_weights_share_powers_on_ties() {
        // Utilities (3,3,2,0,0): three distinct values, rank weights 4,4,2,1,1.
        let inst = Instance::from_integer_rows(&[&[3, 3, 2, 0, 0]]).unwrap();
        let remaining: Bundle = (0..5).collect();
        let prob = mech1_weights(&inst, &remaining).unwrap();
        let scale = BigInt::from(5) * (BigInt::one() << 5);
        let expected = [4u32, 4, 2, 1, 1];
        for (j, &w1) in expected.iter().enumerate() {
            let index_weight = BigInt::one() << (5 - (j + 1));
            assert_eq!(
                prob.weight(0, j),
                &(&scale * BigInt::from(w1) + index_weight)
            );
        }
    }

    #[test]
    fn indifferent_agent_has_unit_rank_weights() {
        let inst = Instance::from_integer_rows(&[&[5, 5], &[1, 2]]).unwrap();
        let remaining: Bundle = (0..2).collect();
        let prob = mech1_weights(&inst, &remaining).unwrap();
        let scale = BigInt::from(2usize * 2) * (BigInt::one() << 2);
        assert_eq!(prob.weight(0, 0), &(&scale + BigInt::from(2)));
        assert_eq!(prob.weight(0, 1), &(&scale + BigInt::one()));
    }

    #[test]
    fn weights_reject_unpadded_or_empty_input() {
        let inst = Instance::from_integer_rows(&[&[1, 2, 3], &[1, 2, 3]]).unwrap();
        let remaining: Bundle = (0..3).collect();
        assert!(mech1_weights(&inst, &remaining).is_err());
        let padded = pad_with_dummies(&inst);
        assert!(mech1_weights(&padded, &Bundle::new()).is_err());
    }

    #[test]
    fn identical_preferences_follow_position_order() {
        let inst = Instance::from_integer_rows(&[&[2, 1], &[2, 1]]).unwrap();
        for pi in AgentOrdering::all(2) {
            let alloc = matching_pef1(&inst, &pi).unwrap();
            assert_eq!(alloc.bundle(pi.agent_at(0)), &bundle(&[0]));
            assert_eq!(alloc.bundle(pi.agent_at(1)), &bundle(&[1]));
        }
    }

    #[test]
    fn single_contested_good_goes_to_the_first_position() {
        let inst = Instance::from_integer_rows(&[&[5], &[5]]).unwrap();
        for pi in AgentOrdering::all(2) {
            let alloc = matching_pef1(&inst, &pi).unwrap();
            assert_eq!(alloc.bundle(pi.agent_at(0)), &bundle(&[0]));
            assert!(alloc.bundle(pi.agent_at(1)).is_empty());
            assert!(validate_allocation(&inst, &alloc).is_ok());
        }
    }

    #[test]
    fn sole_agent_receives_everything() {
        let inst = Instance::from_integer_rows(&[&[3, 0, 7]]).unwrap();
        let alloc = matching_pef1(&inst, &AgentOrdering::identity(1)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[0, 1, 2]));
    }

    #[test]
    fn round_sets_match_across_orderings() {
        let inst = crate::generators::example4();
        let (_, base) = matching_pef1_trace(&inst, &AgentOrdering::identity(4)).unwrap();
        for pi in AgentOrdering::all(4) {
            let (alloc, sets) = matching_pef1_trace(&inst, &pi).unwrap();
            assert_eq!(sets, base);
            assert!(validate_allocation(&inst, &alloc).is_ok());
        }
    }
}
