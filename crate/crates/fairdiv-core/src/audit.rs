//! Fairness predicates and the position-envy audit.
//!
//! Each check either passes or returns a concrete witness that reproduces
//! the failure. The position-envy degree is computed per instance by running
//! the audited mechanism under every agent ordering; the result is exact for
//! that instance and a lower bound on the mechanism-level degree, which
//! ranges over all profiles.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::instance::{bundle_utility, scale_profile, Instance};
use crate::mechanisms::{self, MechanismId};
use crate::ordering::{factorial_saturating, AgentOrdering};
use crate::rational::Rational;
use crate::{Allocation, Bundle};

/// One agent envying another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyWitness {
    pub agent: usize,
    pub other: usize,
}

/// Envy between a pair that no single-good removal repairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ef1Witness {
    pub agent: usize,
    pub other: usize,
}

/// An allocation that Pareto-dominates the audited one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoWitness {
    pub dominating: Allocation,
}

/// A worst ordering pair for one agent: switching from `ordering_other` to
/// `ordering_current` costs the agent more than `removal_count - 1` goods.
/// `removed_goods` is the canonical minimum repair set inside the
/// other-ordering bundle (highest value first, ties by smallest index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PefWitness {
    pub agent: usize,
    pub ordering_current: AgentOrdering,
    pub ordering_other: AgentOrdering,
    pub removal_count: usize,
    pub removed_goods: Bundle,
}

/// Result of the per-instance position-envy audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PefDegree {
    pub degree: usize,
    pub witness: PefWitness,
}

/// A mechanism output that changed under positive per-agent rescaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleWitness {
    pub base: Allocation,
    pub scaled: Allocation,
}

/// Witness attached to a failed check: enough to replay the failure (the
/// ordering that produced the offending allocation plus the finding).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckWitness {
    Envy {
        ordering: AgentOrdering,
        witness: EnvyWitness,
        allocation: Allocation,
    },
    Ef1 {
        ordering: AgentOrdering,
        witness: Ef1Witness,
        allocation: Allocation,
    },
    Po {
        ordering: AgentOrdering,
        witness: PoWitness,
    },
    Scale {
        ordering: AgentOrdering,
        witness: ScaleWitness,
    },
    /// The position-envy degree exceeded a required bound.
    DegreeExceeded { degree: usize, bound: usize },
}

/// Outcome of one named check, with the wall time the caller measured.
/// Failed checks always carry a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Option<CheckWitness>,
    pub wall_ms: u64,
}

/// Aggregated audit output: named checks, the optional position-envy
/// degree, and free-form notes (for example the degenerate-welfare flag).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<CheckResult>,
    pub degree: Option<PefDegree>,
    pub notes: Vec<String>,
}

/// Envy-freeness: every agent values its own bundle at least as much as any
/// other bundle. Witness: first envious pair in agent order.
pub fn check_envy_free(inst: &Instance, allocation: &Allocation) -> Result<Option<EnvyWitness>> {
    let n = inst.agent_count();
    for agent in 0..n {
        let own = bundle_utility(inst, agent, allocation.bundle(agent))?;
        for other in 0..n {
            if agent == other {
                continue;
            }
            if own < bundle_utility(inst, agent, allocation.bundle(other))? {
                return Ok(Some(EnvyWitness { agent, other }));
            }
        }
    }
    Ok(None)
}

/// Envy-freeness up to one good. For additive utilities, removing the
/// highest-value good of the envied bundle is an optimal single removal, so
/// only that witness needs testing.
pub fn check_ef1(inst: &Instance, allocation: &Allocation) -> Result<Option<Ef1Witness>> {
    let n = inst.agent_count();
    for agent in 0..n {
        let own = bundle_utility(inst, agent, allocation.bundle(agent))?;
        for other in 0..n {
            if agent == other {
                continue;
            }
            let bundle = allocation.bundle(other);
            let total = bundle_utility(inst, agent, bundle)?;
            if own >= total {
                continue;
            }
            let best = bundle
                .iter()
                .map(|g| inst.utility(agent, g))
                .max()
                .cloned()
                .unwrap_or_else(Rational::zero);
            if own < total - best {
                return Ok(Some(Ef1Witness { agent, other }));
            }
        }
    }
    Ok(None)
}

/// Pareto optimality by exhaustive enumeration of all `n^m` allocations.
/// Witness: the first dominating allocation in enumeration order (goods in
/// index order, receivers in agent order).
pub fn check_po_bruteforce(
    inst: &Instance,
    allocation: &Allocation,
    cap: u64,
) -> Result<Option<PoWitness>> {
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
    let current: Vec<Rational> = (0..n)
        .map(|a| bundle_utility(inst, a, allocation.bundle(a)))
        .collect::<Result<_>>()?;

    let mut digits = alloc::vec![0usize; m];
    loop {
        let mut utilities = alloc::vec![Rational::zero(); n];
        for (g, &agent) in digits.iter().enumerate() {
            utilities[agent] += inst.utility(agent, g);
        }
        let weakly_better = (0..n).all(|a| utilities[a] >= current[a]);
        let strictly_better = (0..n).any(|a| utilities[a] > current[a]);
        if weakly_better && strictly_better {
            let mut dominating = Allocation::empty(n);
            for (g, &agent) in digits.iter().enumerate() {
                dominating.bundle_mut(agent).insert(g);
            }
            return Ok(Some(PoWitness { dominating }));
        }

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
    Ok(None)
}

/// The product of all agents' bundle utilities.
pub fn nash_welfare(inst: &Instance, allocation: &Allocation) -> Result<Rational> {
    let mut product = Rational::from_integer(1.into());
    for a in 0..inst.agent_count() {
        product *= bundle_utility(inst, a, allocation.bundle(a))?;
    }
    Ok(product)
}

/// Smallest `k` such that removing some `k` goods from `other` brings its
/// value for `evaluator` down to at most `own_value`, together with the
/// canonical removal set (highest value first, ties by smallest index).
/// Greedy removal by value is optimal for additive utilities.
pub fn min_removal_k(
    inst: &Instance,
    evaluator: usize,
    own_value: &Rational,
    other: &Bundle,
) -> Result<(usize, Bundle)> {
    let mut remaining = bundle_utility(inst, evaluator, other)?;
    if &remaining <= own_value {
        return Ok((0, Bundle::new()));
    }
    let mut goods: Vec<usize> = other.iter().collect();
    goods.sort_by(|&g, &h| {
        inst.utility(evaluator, h)
            .cmp(inst.utility(evaluator, g))
            .then(g.cmp(&h))
    });
    let mut removed = Bundle::new();
    for g in goods {
        remaining -= inst.utility(evaluator, g);
        removed.insert(g);
        if &remaining <= own_value {
            return Ok((removed.len(), removed));
        }
    }
    Err(Error::internal(
        "removing every good must reach any non-negative value",
    ))
}

/// Exact per-instance degree of position envy of `mechanism`: the mechanism
/// runs under all `n!` orderings, and the degree is the largest
/// [`min_removal_k`] over agents and ordering pairs, comparing each agent's
/// worst utility against its bundle under every other ordering.
///
/// The maximum over ordering pairs for a fixed agent is attained at that
/// agent's utility-minimizing ordering, so a two-pass sweep over single
/// orderings suffices. Witness selection is deterministic: the first
/// minimizing ordering and the first maximizing pair in lexicographic
/// enumeration order.
pub fn pef_degree(mechanism: MechanismId, inst: &Instance, caps: &Caps) -> Result<PefDegree> {
    let n = inst.agent_count();
    let orderings_count = factorial_saturating(n);
    if orderings_count > caps.orderings {
        return Err(Error::resource(alloc::format!(
            "{}! orderings exceed the ordering cap of {}",
            n,
            caps.orderings
        )));
    }
    let orderings = AgentOrdering::all(n);

    // Pass 1: each agent's minimum utility over all orderings.
    let mut min_value: Vec<Option<(Rational, usize)>> = alloc::vec![None; n];
    for (idx, pi) in orderings.iter().enumerate() {
        let allocation = mechanisms::run(mechanism, inst, pi, caps)?;
        for (agent, slot) in min_value.iter_mut().enumerate() {
            let value = bundle_utility(inst, agent, allocation.bundle(agent))?;
            if slot.as_ref().is_none_or(|(best, _)| value < *best) {
                *slot = Some((value, idx));
            }
        }
    }

    // Pass 2: worst repair cost against every other-ordering bundle.
    let mut best: Option<PefDegree> = None;
    for (idx, pi_other) in orderings.iter().enumerate() {
        let allocation = mechanisms::run(mechanism, inst, pi_other, caps)?;
        for (agent, slot) in min_value.iter().enumerate() {
            let (own_value, current_idx) = slot.as_ref().expect("pass 1 filled");
            let (k, removed) = min_removal_k(inst, agent, own_value, allocation.bundle(agent))?;
            if best.as_ref().is_none_or(|b| k > b.degree) {
                best = Some(PefDegree {
                    degree: k,
                    witness: PefWitness {
                        agent,
                        ordering_current: orderings[*current_idx].clone(),
                        ordering_other: orderings[idx].clone(),
                        removal_count: k,
                        removed_goods: removed,
                    },
                });
            }
        }
    }
    best.ok_or_else(|| Error::internal("at least one ordering must exist"))
}

/// Scale invariance at the allocation level: the mechanism must return the
/// identical allocation on the rescaled instance under the same ordering.
pub fn check_scale_invariance(
    mechanism: MechanismId,
    inst: &Instance,
    scalars: &[Rational],
    ordering: &AgentOrdering,
    caps: &Caps,
) -> Result<Option<ScaleWitness>> {
    let base = mechanisms::run(mechanism, inst, ordering, caps)?;
    let scaled_inst = scale_profile(inst, scalars)?;
    let scaled = mechanisms::run(mechanism, &scaled_inst, ordering, caps)?;
    if base == scaled {
        Ok(None)
    } else {
        Ok(Some(ScaleWitness { base, scaled }))
    }
}
