/// Resource caps for the exhaustive procedures.
///
/// Brute-force searches (allocation enumeration, injection enumeration) and
/// the all-orderings audit refuse to start when the search space exceeds the
/// relevant cap, returning [`Error::Resource`](crate::Error::Resource)
/// instead of running forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of enumerated states for brute-force searches over
    /// allocations (`n^m`) and injections.
    pub enumeration: u64,
    /// Maximum number of agent orderings (`n!`) the position-envy audit will
    /// enumerate. The default admits up to eight agents.
    pub orderings: u64,
}

/// Default enumeration cap (allocations, injections).
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Default ordering cap: 8! orderings.
pub const DEFAULT_ORDERINGS_CAP: u64 = 40_320;

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: DEFAULT_ENUMERATION_CAP,
            orderings: DEFAULT_ORDERINGS_CAP,
        }
    }
}
