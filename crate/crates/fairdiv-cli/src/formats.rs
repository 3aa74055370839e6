//! File formats and JSON schemas.
//!
//! Rational numbers cross the boundary as strings ("p", "p/q", or a finite
//! decimal), never as JSON numbers, so round-trips are bit-exact. All
//! user-facing agent and good numbers are 1-based; the library is 0-based.

use anyhow::{bail, Context, Result};
use fairdiv_core::audit::PefWitness;
use fairdiv_core::{AgentOrdering, Allocation, BigInt, Bundle, Instance, Rational};
use serde::{Deserialize, Serialize};

/// Parses "p", "p/q", or a finite decimal string, exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        bail!("empty rational literal");
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let parse_int = |digits: &str, what: &str| -> Result<BigInt> {
        digits
            .parse::<BigInt>()
            .map_err(|e| anyhow::anyhow!("bad {what} in '{s}': {e}"))
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_int(num, "numerator")?;
        let den = parse_int(den, "denominator")?;
        if den == BigInt::from(0) {
            bail!("zero denominator in '{s}'");
        }
        Rational::new(num, den)
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            bail!("bad decimal digits in '{s}'");
        }
        let int_part = if int_part.is_empty() { "0" } else { int_part };
        if !int_part.bytes().all(|b| b.is_ascii_digit()) {
            bail!("bad integer digits in '{s}'");
        }
        let whole = parse_int(int_part, "integer part")?;
        let frac = parse_int(frac_part, "fractional part")?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        Rational::from_integer(whole) + Rational::new(frac, scale)
    } else {
        Rational::from_integer(parse_int(body, "integer")?)
    };
    Ok(if negative { -value } else { value })
}

/// Canonical rational string: lowest terms, "p" or "p/q".
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// The instance file: optional agent labels, the good count, and the
/// utility matrix as rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agents: Option<Vec<String>>,
    pub m: usize,
    pub utilities: Vec<Vec<String>>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            agents: inst.agent_labels().map(|l| l.to_vec()),
            m: inst.good_count(),
            utilities: inst
                .rows()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.utilities.is_empty() {
            bail!("instance file has no utility rows");
        }
        let mut rows = Vec::with_capacity(self.utilities.len());
        for (a, row) in self.utilities.iter().enumerate() {
            if row.len() != self.m {
                bail!(
                    "utility row {} has {} entries but m = {}",
                    a + 1,
                    row.len(),
                    self.m
                );
            }
            rows.push(
                row.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut inst = Instance::new(rows).map_err(|e| anyhow::anyhow!("{e}"))?;
        if let Some(labels) = &self.agents {
            inst = inst
                .with_agent_labels(labels.clone())
                .map_err(|e| anyhow::anyhow!("{e}"))?;
        }
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).context("cannot parse instance file")
    }
}

/// Output of `fairdiv run`: the ordering as given, per-agent bundles
/// (1-based good indices), and per-agent utilities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub mechanism: String,
    pub ordering: Vec<usize>,
    pub bundles: Vec<Vec<usize>>,
    pub utilities: Vec<String>,
}

impl RunResult {
    pub fn new(
        mechanism: &str,
        ordering: &AgentOrdering,
        inst: &Instance,
        allocation: &Allocation,
    ) -> Result<Self> {
        let utilities = (0..inst.agent_count())
            .map(|a| {
                fairdiv_core::bundle_utility(inst, a, allocation.bundle(a))
                    .map(|u| format_rational(&u))
                    .map_err(|e| anyhow::anyhow!("{e}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RunResult {
            mechanism: mechanism.to_string(),
            ordering: one_based(ordering.positions()),
            bundles: allocation.bundles().iter().map(bundle_one_based).collect(),
            utilities,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// JSON shape of the audit report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReportJson {
    pub mechanism: String,
    pub checks: Vec<CheckJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<DegreeJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub wall_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeJson {
    /// Exact for this instance; a lower bound for the mechanism overall.
    pub label: String,
    pub value: usize,
    pub witness: PefWitnessJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PefWitnessJson {
    pub agent: usize,
    pub ordering_current: Vec<usize>,
    pub ordering_other: Vec<usize>,
    pub removal_count: usize,
    pub removed_goods: Vec<usize>,
}

impl PefWitnessJson {
    pub fn from_witness(w: &PefWitness) -> Self {
        PefWitnessJson {
            agent: w.agent + 1,
            ordering_current: one_based(w.ordering_current.positions()),
            ordering_other: one_based(w.ordering_other.positions()),
            removal_count: w.removal_count,
            removed_goods: bundle_one_based(&w.removed_goods),
        }
    }
}

pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

pub fn bundle_one_based(bundle: &Bundle) -> Vec<usize> {
    bundle.iter().map(|g| g + 1).collect()
}

/// Parses a CLI ordering "1,2,3" (1-based agent numbers in pick order).
pub fn parse_ordering(s: &str, n: usize) -> Result<AgentOrdering> {
    let mut positions = Vec::new();
    for part in s.split(',') {
        let agent: usize = part
            .trim()
            .parse()
            .with_context(|| format!("bad agent number '{part}' in ordering"))?;
        if agent == 0 {
            bail!("agent numbers are 1-based");
        }
        positions.push(agent - 1);
    }
    if positions.len() != n {
        bail!(
            "ordering lists {} agents but the instance has {}",
            positions.len(),
            n
        );
    }
    AgentOrdering::new(positions).map_err(|e| anyhow::anyhow!("{e}"))
}

/// Parses a comma-separated list of rationals.
pub fn parse_scalars(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairdiv_core::{frac, rat};

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("1.25").unwrap(), frac(5, 4));
        assert_eq!(parse_rational("0.1").unwrap(), frac(1, 10));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_conversion_is_exact() {
        // 0.1 must become exactly 1/10, not a binary approximation.
        assert_eq!(format_rational(&parse_rational("0.1").unwrap()), "1/10");
        assert_eq!(format_rational(&parse_rational("2.50").unwrap()), "5/2");
    }

    #[test]
    fn instance_file_round_trip() {
        let inst = fairdiv_core::generators::example4();
        let file = InstanceFile::from_instance(&inst);
        let json = file.to_json();
        let reparsed = InstanceFile::from_json(&json).unwrap();
        assert_eq!(reparsed, file);
        assert_eq!(reparsed.to_json(), json);
        assert_eq!(reparsed.to_instance().unwrap(), inst);
    }

    #[test]
    fn ordering_parsing() {
        let pi = parse_ordering("4,3,2,1", 4).unwrap();
        assert_eq!(pi.positions(), &[3, 2, 1, 0]);
        assert!(parse_ordering("1,1,2", 3).is_err());
        assert!(parse_ordering("1,2", 3).is_err());
        assert!(parse_ordering("0,1", 2).is_err());
    }
}
