//! Command-line companion to `fairdiv-core`: instance files, run results,
//! audit reports, and the sweep CSV. Everything IO-, clock-, or
//! environment-dependent lives here; the core stays pure.

pub mod commands;
pub mod formats;
