//! The adjusted winner procedures for two agents.
//!
//! Goods split into four groups by the sign pattern of the two utilities:
//! each agent's exclusive goods, the shared goods both value, and worthless
//! goods neither values. The discrete procedure hands the prioritized agent
//! everything shared and transfers goods to the other agent until the envy
//! is down to one good. The modified procedure instead computes the unique
//! equitable fractional division of the shared goods (a division in which
//! at most one good is split) and rounds the split good by comparing the
//! two fractions, which makes each agent's outcome nearly independent of the
//! ordering.
//!
//! Worthless goods (zero for both agents) are attached to the first agent's
//! bundle: they cannot affect utilities, envy, efficiency, or position envy,
//! but an allocation must place every good somewhere.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::{bundle_utility, Instance};
use crate::ordering::AgentOrdering;
use crate::rational::Rational;
use crate::{Allocation, Bundle};

/// The four sign-pattern groups of a two-agent instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPartition {
    /// Positive for agent 0, zero for agent 1.
    pub exclusive_first: Bundle,
    /// Zero for agent 0, positive for agent 1.
    pub exclusive_second: Bundle,
    /// Positive for both.
    pub shared: Bundle,
    /// Zero for both.
    pub worthless: Bundle,
}

/// Splits the goods of a two-agent instance into the four groups.
pub fn partition_goods(inst: &Instance) -> Result<GoodPartition> {
    require_two_agents(inst)?;
    let mut partition = GoodPartition {
        exclusive_first: Bundle::new(),
        exclusive_second: Bundle::new(),
        shared: Bundle::new(),
        worthless: Bundle::new(),
    };
    let zero = Rational::zero();
    for g in 0..inst.good_count() {
        let first = inst.utility(0, g) > &zero;
        let second = inst.utility(1, g) > &zero;
        match (first, second) {
            (true, false) => partition.exclusive_first.insert(g),
            (false, true) => partition.exclusive_second.insert(g),
            (true, true) => partition.shared.insert(g),
            (false, false) => partition.worthless.insert(g),
        };
    }
    Ok(partition)
}

/// The minimally fractional division of the shared goods: `p1` and `p2` go
/// whole to agents 0 and 1, and `split_good` is divided `lambda1 : lambda2`
/// with `lambda1 + lambda2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalSplit {
    pub p1: Bundle,
    pub p2: Bundle,
    pub split_good: usize,
    pub lambda1: Rational,
    pub lambda2: Rational,
}

fn require_two_agents(inst: &Instance) -> Result<()> {
    if inst.agent_count() != 2 {
        return Err(Error::input(alloc::format!(
            "adjusted winner needs exactly 2 agents, got {}",
            inst.agent_count()
        )));
    }
    Ok(())
}

/// Shared goods sorted by `u_num / u_den` non-increasing, ties by increasing
/// index. All compared goods have positive utility for both agents, so the
/// comparison cross-multiplies exactly.
fn sorted_by_ratio(inst: &Instance, shared: &Bundle, num: usize, den: usize) -> Vec<usize> {
    let mut goods: Vec<usize> = shared.iter().collect();
    goods.sort_by(|&g, &h| {
        let lhs = inst.utility(num, g) * inst.utility(den, h);
        let rhs = inst.utility(num, h) * inst.utility(den, g);
        rhs.cmp(&lhs).then(g.cmp(&h))
    });
    goods
}

/// Computes the equitable envy-free minimally fractional division of the
/// shared goods, in canonical agent order (agent 0's ratios first,
/// independent of any ordering).
///
/// The shared goods are scanned in ratio order for the unique boundary where
/// both agents realize the same fraction of their value for the shared set;
/// the split fraction solves that equitability equation exactly. Measuring
/// the fractions against the shared set is what makes the division
/// envy-free (each agent's fraction comes out at least one half); the
/// envy-freeness inequalities are asserted on the result rather than
/// searched for.
pub fn equitable_split(inst: &Instance) -> Result<FractionalSplit> {
    require_two_agents(inst)?;
    let partition = partition_goods(inst)?;
    if partition.shared.is_empty() {
        return Err(Error::input("equitable split needs a non-empty shared set"));
    }
    let total1 = bundle_utility(inst, 0, &partition.shared)?;
    let total2 = bundle_utility(inst, 1, &partition.shared)?;
    if total1.is_zero() || total2.is_zero() {
        // Unreachable: shared goods have positive value for both agents.
        return Err(Error::input("equitable split needs positive shared value"));
    }

    let sorted = sorted_by_ratio(inst, &partition.shared, 0, 1);
    for (idx, &split_good) in sorted.iter().enumerate() {
        let p1: Bundle = sorted[..idx].iter().copied().collect();
        let p2: Bundle = sorted[idx + 1..].iter().copied().collect();
        let u1_p1 = bundle_utility(inst, 0, &p1)?;
        let u2_p2 = bundle_utility(inst, 1, &p2)?;
        let u1_split = inst.utility(0, split_good);
        let u2_split = inst.utility(1, split_good);
        // Equitability is linear in lambda1, with S the shared set:
        //   (u1(p1) + l1*u1(g)) / u1(S) = (u2(p2) + (1-l1)*u2(g)) / u2(S).
        let numerator = &total1 * (&u2_p2 + u2_split) - &total2 * &u1_p1;
        let denominator = u1_split * &total2 + u2_split * &total1;
        let lambda1 = numerator / denominator;
        if lambda1 < Rational::zero() || lambda1 > Rational::one() {
            continue;
        }
        let lambda2 = Rational::one() - &lambda1;
        let split = FractionalSplit {
            p1,
            p2,
            split_good,
            lambda1,
            lambda2,
        };
        assert_split_envy_free(inst, &partition, &split)?;
        return Ok(split);
    }
    Err(Error::internal(
        "no boundary good admits an equitable fraction",
    ))
}

/// Asserts the envy-freeness inequalities of the fractional division,
/// accounting for each agent's exclusive goods.
fn assert_split_envy_free(
    inst: &Instance,
    partition: &GoodPartition,
    split: &FractionalSplit,
) -> Result<()> {
    let own = [
        bundle_utility(inst, 0, &partition.exclusive_first)?
            + bundle_utility(inst, 0, &split.p1)?
            + &split.lambda1 * inst.utility(0, split.split_good),
        bundle_utility(inst, 1, &partition.exclusive_second)?
            + bundle_utility(inst, 1, &split.p2)?
            + &split.lambda2 * inst.utility(1, split.split_good),
    ];
    let other = [
        bundle_utility(inst, 0, &partition.exclusive_second)?
            + bundle_utility(inst, 0, &split.p2)?
            + &split.lambda2 * inst.utility(0, split.split_good),
        bundle_utility(inst, 1, &partition.exclusive_first)?
            + bundle_utility(inst, 1, &split.p1)?
            + &split.lambda1 * inst.utility(1, split.split_good),
    ];
    for a in 0..2 {
        if own[a] < other[a] {
            return Err(Error::internal(
                "equitable fractional division is not envy-free",
            ));
        }
    }
    Ok(())
}

/// The discrete adjusted winner mechanism.
///
/// The agent in position 1 starts with its exclusive goods plus every shared
/// good; shared goods then move to the position-2 agent in non-increasing
/// order of that agent's relative valuation (ties by increasing index). The
/// transfer stops as soon as the position-2 agent's envy can be cured by
/// removing one good; the condition is checked before each move, including
/// the first.
pub fn adjusted_winner_discrete(inst: &Instance, ordering: &AgentOrdering) -> Result<Allocation> {
    require_two_agents(inst)?;
    super::check_dimensions(inst, ordering)?;
    let partition = partition_goods(inst)?;
    let first = ordering.agent_at(0);
    let second = ordering.agent_at(1);
    let exclusive = |agent: usize| -> &Bundle {
        if agent == 0 {
            &partition.exclusive_first
        } else {
            &partition.exclusive_second
        }
    };

    let mut holder = exclusive(first).clone();
    holder.extend(partition.shared.iter());
    let mut receiver = exclusive(second).clone();

    if !partition.shared.is_empty() {
        let queue = sorted_by_ratio(inst, &partition.shared, second, first);
        let mut held_value = bundle_utility(inst, second, &holder)?;
        let mut own_value = bundle_utility(inst, second, &receiver)?;
        for &g in &queue {
            if envy_at_most_one_good(inst, second, &own_value, &holder, &held_value) {
                break;
            }
            holder.remove(g);
            receiver.insert(g);
            let u = inst.utility(second, g);
            held_value -= u;
            own_value += u;
        }
    }

    finish_two_agent_allocation(inst, first, holder, second, receiver, &partition)
}

/// Does `agent` (owning `own_value`) envy `other` by at most one good? The
/// witness removal is the highest-value good in `other`, which is optimal
/// for additive utilities.
fn envy_at_most_one_good(
    inst: &Instance,
    agent: usize,
    own_value: &Rational,
    other: &Bundle,
    other_value: &Rational,
) -> bool {
    if own_value >= other_value {
        return true;
    }
    let best = other
        .iter()
        .map(|g| inst.utility(agent, g))
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    *own_value >= other_value - best
}

/// The modified adjusted winner mechanism.
///
/// The equitable fractional division is computed once, in canonical agent
/// order, so it is identical under both orderings; only the split good is
/// rounded, to the position-1 agent when its fraction is at least the other
/// agent's and to the position-2 agent otherwise.
pub fn adjusted_winner_modified(inst: &Instance, ordering: &AgentOrdering) -> Result<Allocation> {
    require_two_agents(inst)?;
    super::check_dimensions(inst, ordering)?;
    let partition = partition_goods(inst)?;
    let mut first_bundle = partition.exclusive_first.clone();
    let mut second_bundle = partition.exclusive_second.clone();

    if !partition.shared.is_empty() {
        let split = equitable_split(inst)?;
        first_bundle.extend(split.p1.iter());
        second_bundle.extend(split.p2.iter());
        let lambda = |agent: usize| {
            if agent == 0 {
                &split.lambda1
            } else {
                &split.lambda2
            }
        };
        let winner = if lambda(ordering.agent_at(0)) >= lambda(ordering.agent_at(1)) {
            ordering.agent_at(0)
        } else {
            ordering.agent_at(1)
        };
        if winner == 0 {
            first_bundle.insert(split.split_good);
        } else {
            second_bundle.insert(split.split_good);
        }
    }

    finish_two_agent_allocation(inst, 0, first_bundle, 1, second_bundle, &partition)
}

/// Assembles the final allocation, attaching the worthless goods to agent 0.
fn finish_two_agent_allocation(
    inst: &Instance,
    agent_a: usize,
    bundle_a: Bundle,
    agent_b: usize,
    bundle_b: Bundle,
    partition: &GoodPartition,
) -> Result<Allocation> {
    let mut alloc = Allocation::empty(inst.agent_count());
    *alloc.bundle_mut(agent_a) = bundle_a;
    *alloc.bundle_mut(agent_b) = bundle_b;
    alloc.bundle_mut(0).extend(partition.worthless.iter());
    Ok(alloc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_allocation;
    use crate::rational::{frac, rat};

    fn bundle(goods: &[usize]) -> Bundle {
        goods.iter().copied().collect()
    }

    /// Two agents, `m` goods: the first values everything at 1, the second
    /// values only the last good at 1 and the rest at eps.
    fn near_worthless_instance(m: usize, eps: Rational) -> Instance {
        let mut row2 = alloc::vec![eps; m - 1];
        row2.push(rat(1));
        Instance::new(alloc::vec![alloc::vec![rat(1); m], row2]).unwrap()
    }

    #[test]
    fn partition_by_sign_pattern() {
        let inst = Instance::new(alloc::vec![
            alloc::vec![rat(1), rat(0), rat(2), rat(0)],
            alloc::vec![rat(0), rat(1), rat(3), rat(0)],
        ])
        .unwrap();
        let p = partition_goods(&inst).unwrap();
        assert_eq!(p.exclusive_first, bundle(&[0]));
        assert_eq!(p.exclusive_second, bundle(&[1]));
        assert_eq!(p.shared, bundle(&[2]));
        assert_eq!(p.worthless, bundle(&[3]));
    }

    #[test]
    fn partition_degenerate_rows() {
        let inst = Instance::from_integer_rows(&[&[0, 0], &[1, 2]]).unwrap();
        let p = partition_goods(&inst).unwrap();
        assert!(p.exclusive_first.is_empty());
        assert!(p.shared.is_empty());
        assert_eq!(p.exclusive_second, bundle(&[0, 1]));

        let all_shared = Instance::from_integer_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let p = partition_goods(&all_shared).unwrap();
        assert_eq!(p.shared, bundle(&[0, 1]));
        assert!(p.exclusive_first.is_empty() && p.exclusive_second.is_empty());
    }

    #[test]
    fn partition_rejects_other_agent_counts() {
        let inst = Instance::from_integer_rows(&[&[1], &[1], &[1]]).unwrap();
        assert!(partition_goods(&inst).is_err());
        assert!(adjusted_winner_discrete(&inst, &AgentOrdering::identity(3)).is_err());
        assert!(adjusted_winner_modified(&inst, &AgentOrdering::identity(3)).is_err());
    }

    #[test]
    fn discrete_keeps_most_goods_with_the_prioritized_agent() {
        let inst = near_worthless_instance(5, frac(1, 10));
        let alloc = adjusted_winner_discrete(&inst, &AgentOrdering::identity(2)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[0, 1, 2, 3]));
        assert_eq!(alloc.bundle(1), &bundle(&[4]));
    }

    #[test]
    fn discrete_under_reversed_priority_transfers_half() {
        let inst = near_worthless_instance(5, frac(1, 10));
        let alloc = adjusted_winner_discrete(&inst, &AgentOrdering::reversed(2)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[0, 1]));
        assert_eq!(alloc.bundle(1), &bundle(&[2, 3, 4]));
    }

    #[test]
    fn no_shared_goods_returns_the_exclusive_sets() {
        let inst = Instance::from_integer_rows(&[&[2, 0], &[0, 3]]).unwrap();
        for pi in AgentOrdering::all(2) {
            let alloc = adjusted_winner_discrete(&inst, &pi).unwrap();
            assert_eq!(alloc.bundle(0), &bundle(&[0]));
            assert_eq!(alloc.bundle(1), &bundle(&[1]));
            let alloc = adjusted_winner_modified(&inst, &pi).unwrap();
            assert_eq!(alloc.bundle(0), &bundle(&[0]));
            assert_eq!(alloc.bundle(1), &bundle(&[1]));
        }
    }

    #[test]
    fn equitable_split_two_goods() {
        let inst = Instance::from_integer_rows(&[&[3, 1], &[1, 1]]).unwrap();
        let split = equitable_split(&inst).unwrap();
        assert_eq!(split.split_good, 0);
        assert_eq!(split.lambda1, frac(4, 5));
        assert_eq!(split.lambda2, frac(1, 5));
        // Both realized fractions equal 3/5.
        let r1 = split.lambda1.clone() * rat(3) / rat(4);
        let r2 = (rat(1) + split.lambda2.clone()) / rat(2);
        assert_eq!(r1, frac(3, 5));
        assert_eq!(r2, frac(3, 5));
    }

    #[test]
    fn equitable_split_single_shared_good() {
        let inst = Instance::from_integer_rows(&[&[1], &[1]]).unwrap();
        let split = equitable_split(&inst).unwrap();
        assert_eq!(split.split_good, 0);
        assert_eq!(split.lambda1, frac(1, 2));
        assert_eq!(split.lambda2, frac(1, 2));
    }

    #[test]
    fn equitable_split_accepts_boundary_fractions() {
        let inst = Instance::from_integer_rows(&[&[1, 1], &[1, 1]]).unwrap();
        let split = equitable_split(&inst).unwrap();
        assert_eq!(split.split_good, 0);
        assert_eq!(split.lambda1, rat(1));
        assert_eq!(split.lambda2, rat(0));
    }

    #[test]
    fn equitable_split_requires_shared_goods() {
        let inst = Instance::from_integer_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(equitable_split(&inst).is_err());
    }

    #[test]
    fn modified_rounds_to_the_larger_fraction_under_both_orderings() {
        let inst = Instance::from_integer_rows(&[&[3, 1], &[1, 1]]).unwrap();
        let identity = adjusted_winner_modified(&inst, &AgentOrdering::identity(2)).unwrap();
        assert_eq!(identity.bundle(0), &bundle(&[0]));
        assert_eq!(identity.bundle(1), &bundle(&[1]));
        let reversed = adjusted_winner_modified(&inst, &AgentOrdering::reversed(2)).unwrap();
        assert_eq!(identity, reversed);
    }

    #[test]
    fn modified_with_exclusive_goods_stays_envy_bounded() {
        let inst = Instance::from_integer_rows(&[&[2, 3, 1], &[0, 1, 2]]).unwrap();
        let split = equitable_split(&inst).unwrap();
        // Shared goods {g2, g3}: equal fractions of the shared value land at
        // 9/13 with g2 split 12/13 : 1/13.
        assert_eq!(split.split_good, 1);
        assert_eq!(split.lambda1, frac(12, 13));
        for pi in AgentOrdering::all(2) {
            let alloc = adjusted_winner_modified(&inst, &pi).unwrap();
            assert!(validate_allocation(&inst, &alloc).is_ok());
            assert_eq!(alloc.bundle(0), &bundle(&[0, 1]));
            assert_eq!(alloc.bundle(1), &bundle(&[2]));
        }
    }

    #[test]
    fn split_fractions_are_measured_against_the_shared_set() {
        // g1 is exclusive to the first agent; it must not shift the boundary
        // on the shared good g2, or the division stops being envy-free.
        let inst = Instance::from_integer_rows(&[&[7, 7], &[0, 4]]).unwrap();
        let split = equitable_split(&inst).unwrap();
        assert_eq!(split.split_good, 1);
        assert_eq!(split.lambda1, frac(1, 2));
        assert_eq!(split.lambda2, frac(1, 2));
    }

    #[test]
    fn worthless_goods_land_on_the_first_agent() {
        let inst = Instance::from_integer_rows(&[&[1, 0], &[2, 0]]).unwrap();
        for pi in AgentOrdering::all(2) {
            for alloc in [
                adjusted_winner_discrete(&inst, &pi).unwrap(),
                adjusted_winner_modified(&inst, &pi).unwrap(),
            ] {
                assert!(validate_allocation(&inst, &alloc).is_ok());
                assert!(alloc.bundle(0).contains(1));
            }
        }
    }
}
