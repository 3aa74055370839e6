//! Allocation mechanisms.
//!
//! Every mechanism is a deterministic, pure map from an instance and an
//! agent ordering to a complete allocation. The ordering is the only channel
//! through which an organizer's arbitrary choices enter; running the same
//! mechanism under two orderings and comparing what each agent receives is
//! exactly what the position-envy audit in [`crate::audit`] does.

mod adjusted_winner;
mod envy_cycle;
mod matching_pef1;
mod mnw;
mod round_robin;

pub use adjusted_winner::{
    adjusted_winner_discrete, adjusted_winner_modified, equitable_split, partition_goods,
    FractionalSplit, GoodPartition,
};
pub use envy_cycle::envy_cycle;
pub use matching_pef1::{matching_pef1, matching_pef1_trace, mech1_weights, pad_with_dummies};
pub use mnw::{mnw_bruteforce, mnw_bruteforce_detailed, MnwOutcome};
pub use round_robin::round_robin;

use core::fmt;
use core::str::FromStr;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::ordering::AgentOrdering;
use crate::Allocation;

/// Dispatch key for the implemented mechanisms.
///
/// The adjusted-winner variants require exactly two agents; the brute-force
/// Nash-welfare maximizer accepts any agent count within the enumeration cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MechanismId {
    RoundRobin,
    EnvyCycle,
    MatchingPef1,
    AdjustedWinnerDiscrete,
    AdjustedWinnerModified,
    MnwBruteforce,
}

impl MechanismId {
    pub const ALL: [MechanismId; 6] = [
        MechanismId::RoundRobin,
        MechanismId::EnvyCycle,
        MechanismId::MatchingPef1,
        MechanismId::AdjustedWinnerDiscrete,
        MechanismId::AdjustedWinnerModified,
        MechanismId::MnwBruteforce,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MechanismId::RoundRobin => "round_robin",
            MechanismId::EnvyCycle => "envy_cycle",
            MechanismId::MatchingPef1 => "matching_pef1",
            MechanismId::AdjustedWinnerDiscrete => "adjusted_winner_discrete",
            MechanismId::AdjustedWinnerModified => "adjusted_winner_modified",
            MechanismId::MnwBruteforce => "mnw_bruteforce",
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MechanismId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MechanismId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::input(alloc::format!("unknown mechanism '{s}'")))
    }
}

/// Runs the mechanism identified by `id`.
pub fn run(
    id: MechanismId,
    inst: &Instance,
    ordering: &AgentOrdering,
    caps: &Caps,
) -> Result<Allocation> {
    match id {
        MechanismId::RoundRobin => round_robin(inst, ordering),
        MechanismId::EnvyCycle => envy_cycle(inst, ordering),
        MechanismId::MatchingPef1 => matching_pef1(inst, ordering),
        MechanismId::AdjustedWinnerDiscrete => adjusted_winner_discrete(inst, ordering),
        MechanismId::AdjustedWinnerModified => adjusted_winner_modified(inst, ordering),
        MechanismId::MnwBruteforce => mnw_bruteforce(inst, ordering, caps.enumeration),
    }
}

pub(crate) fn check_dimensions(inst: &Instance, ordering: &AgentOrdering) -> Result<()> {
    if ordering.agent_count() != inst.agent_count() {
        return Err(Error::input(alloc::format!(
            "ordering covers {} agents but the instance has {}",
            ordering.agent_count(),
            inst.agent_count()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_strings() {
        for id in MechanismId::ALL {
            assert_eq!(id.as_str().parse::<MechanismId>().unwrap(), id);
        }
        assert!("nonsense".parse::<MechanismId>().is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let inst = Instance::from_integer_rows(&[&[1], &[1]]).unwrap();
        let pi = AgentOrdering::identity(3);
        let err = run(MechanismId::RoundRobin, &inst, &pi, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
