//! Implementations of the CLI subcommands.
//!
//! Exit-code contract: 0 when the command succeeds and every requested
//! check passes, 1 when a check fails, 2 on usage, parse, precondition, or
//! resource errors. Functions here return `Ok(exit_code)` for the first two
//! and `Err` for the rest.

use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use fairdiv_core::audit::{
    check_ef1, check_po_bruteforce, check_scale_invariance, pef_degree, AuditReport, CheckResult,
    CheckWitness,
};
use fairdiv_core::mechanisms::{self, MechanismId};
use fairdiv_core::{
    factorial_saturating, rat, validate_allocation, AgentOrdering, Bundle, Caps, Instance, Rational,
};
use serde_json::json;

use crate::formats::{
    bundle_one_based, one_based, AuditReportJson, CheckJson, DegreeJson, InstanceFile,
    PefWitnessJson, RunResult,
};

pub const DEGREE_LABEL: &str = "instance degree (lower-bounds mechanism degree)";

/// Caps from the environment: `FAIRDIV_ENUM_CAP`, when set, overrides both
/// the enumeration cap and the ordering cap.
pub fn caps_from_env() -> Result<Caps> {
    let mut caps = Caps::default();
    if let Ok(raw) = std::env::var("FAIRDIV_ENUM_CAP") {
        let value: u64 = raw
            .parse()
            .with_context(|| format!("FAIRDIV_ENUM_CAP is not a number: '{raw}'"))?;
        caps.enumeration = value;
        caps.orderings = value;
    }
    Ok(caps)
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    InstanceFile::from_json(&text)?.to_instance()
}

fn parse_mechanism(s: &str) -> Result<MechanismId> {
    s.parse::<MechanismId>().map_err(|e| anyhow!("{e}"))
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn cmd_run(mechanism: &str, instance: &Path, ordering: &str) -> Result<i32> {
    let id = parse_mechanism(mechanism)?;
    let inst = load_instance(instance)?;
    let pi = crate::formats::parse_ordering(ordering, inst.agent_count())?;
    let caps = caps_from_env()?;
    let allocation = mechanisms::run(id, &inst, &pi, &caps).map_err(|e| anyhow!("{e}"))?;
    if let Err(v) = validate_allocation(&inst, &allocation) {
        bail!("mechanism returned an invalid allocation: {v}");
    }
    let result = RunResult::new(id.as_str(), &pi, &inst, &allocation)?;
    print!("{}", result.to_json());
    Ok(0)
}

/// Enumerates all orderings, respecting the ordering cap.
fn all_orderings_capped(n: usize, caps: &Caps) -> Result<Vec<AgentOrdering>> {
    if factorial_saturating(n) > caps.orderings {
        bail!(
            "resource: {}! orderings exceed the ordering cap of {}",
            n,
            caps.orderings
        );
    }
    Ok(AgentOrdering::all(n))
}

pub fn cmd_audit(
    mechanism: &str,
    instance: &Path,
    checks: &str,
    scalars: Option<&str>,
    require_pef1: bool,
) -> Result<i32> {
    let id = parse_mechanism(mechanism)?;
    let inst = load_instance(instance)?;
    let caps = caps_from_env()?;
    let n = inst.agent_count();
    let scalars: Vec<Rational> = match scalars {
        Some(s) => {
            let parsed = crate::formats::parse_scalars(s)?;
            if parsed.len() != n {
                bail!("expected {} scalars, got {}", n, parsed.len());
            }
            parsed
        }
        None => vec![rat(1); n],
    };

    let mut report = AuditReport::default();
    if id == MechanismId::MnwBruteforce {
        let outcome = mechanisms::mnw_bruteforce_detailed(
            &inst,
            &AgentOrdering::identity(n),
            caps.enumeration,
        )
        .map_err(|e| anyhow!("{e}"))?;
        if outcome.degenerate {
            report.notes.push(
                "no allocation gives every agent positive utility; \
                 the maximizer used the degenerate extension (most agents \
                 served first, then the product over them)"
                    .to_string(),
            );
        }
    }

    for name in checks.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let started = Instant::now();
        let witness = match name {
            "ef1" => audit_ef1(id, &inst, &caps)?,
            "po" => audit_po(id, &inst, &caps)?,
            "pef_degree" => {
                let result = pef_degree(id, &inst, &caps).map_err(|e| anyhow!("{e}"))?;
                let degree = result.degree;
                report.degree = Some(result);
                (require_pef1 && degree > 1)
                    .then_some(CheckWitness::DegreeExceeded { degree, bound: 1 })
            }
            "scale" => audit_scale(id, &inst, &scalars, &caps)?,
            other => bail!("unknown check '{other}' (expected ef1, po, pef_degree, scale)"),
        };
        report.checks.push(CheckResult {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
            wall_ms: started.elapsed().as_millis() as u64,
        });
    }

    let all_passed = report.checks.iter().all(|c| c.passed);
    let json = report_to_json(id, &report);
    let mut out = serde_json::to_string_pretty(&json)?;
    out.push('\n');
    print!("{out}");
    Ok(if all_passed { 0 } else { 1 })
}

fn bundles_json(bundles: &[Bundle]) -> serde_json::Value {
    serde_json::Value::from(
        bundles
            .iter()
            .map(|b| serde_json::Value::from(bundle_one_based(b)))
            .collect::<Vec<_>>(),
    )
}

fn witness_json(witness: &CheckWitness) -> serde_json::Value {
    match witness {
        CheckWitness::Envy {
            ordering,
            witness,
            allocation,
        } => json!({
            "ordering": one_based(ordering.positions()),
            "agent": witness.agent + 1,
            "envies": witness.other + 1,
            "bundles": bundles_json(allocation.bundles()),
        }),
        CheckWitness::Ef1 {
            ordering,
            witness,
            allocation,
        } => json!({
            "ordering": one_based(ordering.positions()),
            "agent": witness.agent + 1,
            "envies": witness.other + 1,
            "bundles": bundles_json(allocation.bundles()),
        }),
        CheckWitness::Po { ordering, witness } => json!({
            "ordering": one_based(ordering.positions()),
            "dominating": bundles_json(witness.dominating.bundles()),
        }),
        CheckWitness::Scale { ordering, witness } => json!({
            "ordering": one_based(ordering.positions()),
            "base": bundles_json(witness.base.bundles()),
            "scaled": bundles_json(witness.scaled.bundles()),
        }),
        CheckWitness::DegreeExceeded { degree, bound } => json!({
            "degree": degree,
            "required_at_most": bound,
        }),
    }
}

fn report_to_json(id: MechanismId, report: &AuditReport) -> AuditReportJson {
    AuditReportJson {
        mechanism: id.as_str().to_string(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                name: c.name.clone(),
                pass: c.passed,
                wall_ms: c.wall_ms,
                witness: c.witness.as_ref().map(witness_json),
            })
            .collect(),
        degree: report.degree.as_ref().map(|d| DegreeJson {
            label: DEGREE_LABEL.to_string(),
            value: d.degree,
            witness: PefWitnessJson::from_witness(&d.witness),
        }),
        notes: report.notes.clone(),
    }
}

fn audit_ef1(id: MechanismId, inst: &Instance, caps: &Caps) -> Result<Option<CheckWitness>> {
    for pi in all_orderings_capped(inst.agent_count(), caps)? {
        let allocation = mechanisms::run(id, inst, &pi, caps).map_err(|e| anyhow!("{e}"))?;
        if let Some(witness) = check_ef1(inst, &allocation).map_err(|e| anyhow!("{e}"))? {
            return Ok(Some(CheckWitness::Ef1 {
                ordering: pi,
                witness,
                allocation,
            }));
        }
    }
    Ok(None)
}

fn audit_po(id: MechanismId, inst: &Instance, caps: &Caps) -> Result<Option<CheckWitness>> {
    for pi in all_orderings_capped(inst.agent_count(), caps)? {
        let allocation = mechanisms::run(id, inst, &pi, caps).map_err(|e| anyhow!("{e}"))?;
        if let Some(witness) =
            check_po_bruteforce(inst, &allocation, caps.enumeration).map_err(|e| anyhow!("{e}"))?
        {
            return Ok(Some(CheckWitness::Po {
                ordering: pi,
                witness,
            }));
        }
    }
    Ok(None)
}

fn audit_scale(
    id: MechanismId,
    inst: &Instance,
    scalars: &[Rational],
    caps: &Caps,
) -> Result<Option<CheckWitness>> {
    for pi in all_orderings_capped(inst.agent_count(), caps)? {
        if let Some(witness) =
            check_scale_invariance(id, inst, scalars, &pi, caps).map_err(|e| anyhow!("{e}"))?
        {
            return Ok(Some(CheckWitness::Scale {
                ordering: pi,
                witness,
            }));
        }
    }
    Ok(None)
}

pub fn cmd_gen(
    family: &str,
    n: Option<usize>,
    m: Option<usize>,
    rounds: Option<usize>,
    seed: u64,
    max_value: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let require = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| anyhow!("family '{family}' requires --{flag}"))
    };
    let inst = match family {
        "example4" => fairdiv_core::generators::example4(),
        "rr_log_lower_bound" => fairdiv_core::generators::rr_log_lower_bound(
            require(n, "n")?,
            require(rounds, "rounds")?,
        )
        .map_err(|e| anyhow!("{e}"))?,
        "table1_n5" => {
            fairdiv_core::generators::rr_log_lower_bound(5, 3).map_err(|e| anyhow!("{e}"))?
        }
        "aw_counterexample" => fairdiv_core::generators::aw_counterexample(require(m, "m")?)
            .map_err(|e| anyhow!("{e}"))?,
        "ec_worst" => fairdiv_core::generators::ec_worst(require(n, "n")?, require(m, "m")?)
            .map_err(|e| anyhow!("{e}"))?,
        "random" => {
            fairdiv_core::generators::random(require(n, "n")?, require(m, "m")?, seed, max_value)
                .map_err(|e| anyhow!("{e}"))?
        }
        other => bail!(
            "unknown family '{other}' (expected example4, rr_log_lower_bound, table1_n5, \
             aw_counterexample, ec_worst, random)"
        ),
    };
    emit(out, &InstanceFile::from_instance(&inst).to_json())?;
    Ok(0)
}

pub const SWEEP_HEADER: &str = "seed,n,m,degree,ef1,po,max_bundle,wall_ms,error";

/// The adversarial families that exactly fit the requested shape, mixed in
/// ahead of the random instances.
fn fitting_families(n: usize, m: usize) -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    if (n, m) == (4, 5) {
        out.push(("example4".to_string(), fairdiv_core::generators::example4()));
    }
    if n >= 2 && m.is_multiple_of(n) {
        let rounds = m / n;
        if let Ok(inst) = fairdiv_core::generators::rr_log_lower_bound(n, rounds) {
            out.push(("rr_log_lower_bound".to_string(), inst));
        }
    }
    if n == 2 && m >= 3 {
        if let Ok(inst) = fairdiv_core::generators::aw_counterexample(m) {
            out.push(("aw_counterexample".to_string(), inst));
        }
    }
    if let Ok(inst) = fairdiv_core::generators::ec_worst(n, m) {
        out.push(("ec_worst".to_string(), inst));
    }
    out
}

fn sweep_row(id: MechanismId, inst: &Instance, caps: &Caps) -> Result<(usize, bool, bool, usize)> {
    let orderings = all_orderings_capped(inst.agent_count(), caps)?;
    let mut ef1 = true;
    let mut po = true;
    let mut max_bundle = 0usize;
    for pi in &orderings {
        let allocation = mechanisms::run(id, inst, pi, caps).map_err(|e| anyhow!("{e}"))?;
        if check_ef1(inst, &allocation)
            .map_err(|e| anyhow!("{e}"))?
            .is_some()
        {
            ef1 = false;
        }
        if check_po_bruteforce(inst, &allocation, caps.enumeration)
            .map_err(|e| anyhow!("{e}"))?
            .is_some()
        {
            po = false;
        }
        max_bundle = max_bundle.max(
            allocation
                .bundles()
                .iter()
                .map(Bundle::len)
                .max()
                .unwrap_or(0),
        );
    }
    let degree = pef_degree(id, inst, caps)
        .map_err(|e| anyhow!("{e}"))?
        .degree;
    Ok((degree, ef1, po, max_bundle))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    mechanism: &str,
    count: usize,
    n: usize,
    m: usize,
    max_value: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<i32> {
    let id = parse_mechanism(mechanism)?;
    let caps = caps_from_env()?;
    let mut rows = vec![SWEEP_HEADER.to_string()];

    let mut instances: Vec<(String, Instance)> = Vec::new();
    if count > 0 {
        instances.extend(fitting_families(n, m));
        for i in 0..count {
            let instance_seed = seed.wrapping_add(i as u64);
            let inst = fairdiv_core::generators::random(n, m, instance_seed, max_value)
                .map_err(|e| anyhow!("{e}"))?;
            instances.push((instance_seed.to_string(), inst));
        }
    }

    for (label, inst) in &instances {
        let started = Instant::now();
        match sweep_row(id, inst, &caps) {
            Ok((degree, ef1, po, max_bundle)) => {
                let wall_ms = started.elapsed().as_millis();
                rows.push(format!(
                    "{},{},{},{},{},{},{},{},",
                    label,
                    inst.agent_count(),
                    inst.good_count(),
                    degree,
                    u8::from(ef1),
                    u8::from(po),
                    max_bundle,
                    wall_ms
                ));
            }
            Err(e) => {
                let wall_ms = started.elapsed().as_millis();
                let message = e.to_string().replace([',', '\n'], ";");
                rows.push(format!(
                    "{},{},{},,,,,{},{}",
                    label,
                    inst.agent_count(),
                    inst.good_count(),
                    wall_ms,
                    message
                ));
            }
        }
    }

    let mut csv = rows.join("\n");
    csv.push('\n');
    emit(out, &csv)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_fit_shapes() {
        let fams = fitting_families(4, 8);
        let names: Vec<&str> = fams.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["rr_log_lower_bound", "ec_worst"]);

        let fams = fitting_families(2, 5);
        let names: Vec<&str> = fams.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["aw_counterexample", "ec_worst"]);

        let fams = fitting_families(4, 5);
        let names: Vec<&str> = fams.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["example4", "ec_worst"]);
    }
}
