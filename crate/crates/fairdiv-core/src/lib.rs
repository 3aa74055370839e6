//! Exact-arithmetic toolkit for allocating indivisible goods.
//!
//! The crate bundles three things:
//!
//! * deterministic allocation mechanisms ([`mechanisms`]): round-robin,
//!   envy-cycle elimination, a matching-based round mechanism, both adjusted
//!   winner variants for two agents, and a brute-force Nash-welfare
//!   maximizer;
//! * fairness audits ([`audit`]): envy-freeness, EF1, Pareto optimality,
//!   scale invariance, and the per-instance degree of position envy: how
//!   many goods an agent must be compensated for, at worst, when the agent
//!   ordering fed to a mechanism changes;
//! * instance generators ([`generators`]): the adversarial profiles the
//!   audits are calibrated against, plus seeded random instances.
//!
//! All utilities and welfare values are arbitrary-precision rationals, so
//! comparisons, sorting, and the equitability equalities are exact. Every
//! type is immutable after construction and every operation is a pure
//! function; the crate is `no_std` (with `alloc`) and does no IO. File
//! formats and the command-line front end live in the companion `fairdiv`
//! binary crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod allocation;
mod caps;
mod error;
mod instance;
mod ordering;
mod rational;

pub mod audit;
pub mod generators;
pub mod matching;
pub mod mechanisms;

pub use allocation::{Allocation, AllocationViolation, Bundle};
pub use caps::{Caps, DEFAULT_ENUMERATION_CAP, DEFAULT_ORDERINGS_CAP};
pub use error::{Error, Result};
pub use instance::{bundle_utility, scale_profile, validate_allocation, Instance};
pub use ordering::{factorial_saturating, AgentOrdering};
pub use rational::{frac, rat, Rational};

// Re-exported so downstream crates share the exact arithmetic types.
pub use num_bigint::BigInt;
