//! Adversarial and random instance generators.
//!
//! The fixed families reproduce the worst-case profiles used by the audit
//! suites; `random` provides seeded fuel for property tests. All constants
//! are chosen as the smallest values meeting each family's strict
//! inequalities, keeping the arithmetic in small integers and rationals.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::Rational;

/// Four agents, five goods, constants (3, 2, 1): the smallest profile on
/// which round-robin position envy needs two removals to repair.
pub fn example4() -> Instance {
    Instance::from_integer_rows(&[
        &[3, 0, 0, 1, 2],
        &[0, 3, 0, 0, 2],
        &[3, 0, 2, 0, 0],
        &[0, 3, 1, 2, 0],
    ])
    .expect("fixed matrix is valid")
}

/// Worst-case round-robin profile with `m = n * rounds` goods, showing a
/// position-envy degree of at least `floor(log2 n)`.
///
/// Good `(r-1)*n + (a-1)` is the good agent `a` picks in round `r` under the
/// identity ordering (rounds laid out contiguously), which the utilities
/// below are built around:
///
/// * agent 1 values its own pick `C = rounds - floor(log2 n) + 2` in the
///   first `floor(log2 n)` rounds and 1 afterwards;
/// * every other agent values its own pick 1 in every round;
/// * in round `r <= floor(log2 n)`, the agents in the shrinking window
///   `(floor(n/2^r), floor(n/2^(r-1))]` each value one good picked near the
///   window's mirror position at 1, which under the reversed ordering makes
///   them raid agent 1's early picks.
///
/// Requires `rounds >= floor(log2 n)` and `n >= 2`.
pub fn rr_log_lower_bound(n: usize, rounds: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::input("need at least two agents"));
    }
    let log = n.ilog2() as usize;
    if rounds < log {
        return Err(Error::input(alloc::format!(
            "need at least floor(log2 {n}) = {log} rounds, got {rounds}"
        )));
    }
    let m = n * rounds;
    // Index of g_a^r, both 1-based.
    let good = |a: usize, r: usize| (r - 1) * n + (a - 1);
    let c = (rounds - log + 2) as u64;

    let mut rows = alloc::vec![alloc::vec![0u64; m]; n];
    for r in 1..=rounds {
        rows[0][good(1, r)] = if r <= log { c } else { 1 };
    }
    for a in 2..=n {
        for r in 1..=rounds {
            rows[a - 1][good(a, r)] = 1;
        }
    }
    for r in 1..=log {
        let hi = n >> (r - 1);
        let lo = n >> r;
        for i in (lo + 1)..=hi {
            let j = hi - i + 1;
            rows[i - 1][good(j, r)] = 1;
        }
    }
    Instance::from_integer_rows(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>())
}

/// Two agents, `m >= 3` goods: the first values everything at 1, the second
/// values only the last good at 1 and the rest at `1/(m+1)`. The discrete
/// adjusted winner's position envy on this profile needs `ceil(m/2) - 1`
/// removals.
pub fn aw_counterexample(m: usize) -> Result<Instance> {
    if m < 3 {
        return Err(Error::input("need at least three goods"));
    }
    let eps = Rational::new(1.into(), (m as u64 + 1).into());
    let ones = alloc::vec![Rational::from_integer(1.into()); m];
    let mut second = alloc::vec![eps; m - 1];
    second.push(Rational::from_integer(1.into()));
    Instance::new(alloc::vec![ones, second])
}

/// `m >= n` goods that only the first agent cares about: the envy-cycle
/// mechanism's position envy on this profile is exactly `m - floor(m/n)`.
pub fn ec_worst(n: usize, m: usize) -> Result<Instance> {
    if m < n {
        return Err(Error::input("need at least as many goods as agents"));
    }
    let mut rows = alloc::vec![alloc::vec![0u64; m]; n];
    rows[0] = alloc::vec![1u64; m];
    Instance::from_integer_rows(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>())
}

/// Seeded random instance: integer utilities drawn uniformly (by modulo
/// reduction) from `[0, max_value]`, agent by agent, good by good, from a
/// ChaCha8 stream seeded with `seed`. The draw procedure is fixed, so equal
/// parameters reproduce the identical instance on every platform.
pub fn random(n: usize, m: usize, seed: u64, max_value: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::input("need at least one agent"));
    }
    if max_value == 0 {
        return Err(Error::input("max_value must be at least 1"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let range = max_value as u128 + 1;
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let draw = (rng.next_u64() as u128 % range) as u64;
                    Rational::from_integer(draw.into())
                })
                .collect()
        })
        .collect();
    Instance::new(rows)
}
