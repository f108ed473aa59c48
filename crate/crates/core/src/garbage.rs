//! Reachable garbage configurations, interface conformance and growth reports.
//!
//! Everything here enumerates the whole input space, so it is only meaningful
//! at desk scale. Growth classifications are empirical labels, never a
//! verdict on whether an algorithm is controllable.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::format::serialize;
use crate::ir::Machine;
use crate::sim::{is_injective, run_machine, truth_table_with, ExhaustiveConfig};

fn short_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Stable identifier: a digest of the canonical serialization.
pub fn machine_id(m: &Machine) -> String {
    format!("sha256:{}", short_digest(serialize(m).as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GarbageProfile {
    pub machine_id: String,
    pub input_bits: usize,
    pub garbage_bits: usize,
    /// Reachable garbage values in ascending numeric order.
    pub configs: Vec<Bits>,
    pub config_count: usize,
    /// Digest of `configs`, for comparing reports.
    pub configs_digest: String,
    /// Garbage left by each output value; only for injective machines.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_output: Option<BTreeMap<Bits, Bits>>,
    /// Forward runs spent building the profile.
    pub forward_runs: u64,
}

impl GarbageProfile {
    pub fn is_injective(&self) -> bool {
        self.per_output.is_some()
    }
}

pub fn garbage_profile(m: &Machine) -> Result<GarbageProfile> {
    garbage_profile_with(m, &ExhaustiveConfig::default())
}

pub fn garbage_profile_with(m: &Machine, config: &ExhaustiveConfig) -> Result<GarbageProfile> {
    let table = truth_table_with(m, config)?;
    let configs: BTreeSet<Bits> = table.rows().iter().map(|r| r.garbage.clone()).collect();
    let per_output = is_injective(&table).then(|| {
        table
            .rows()
            .iter()
            .map(|r| (r.output.clone(), r.garbage.clone()))
            .collect()
    });
    let configs: Vec<Bits> = configs.into_iter().collect();
    let digest_input: String = configs.iter().map(|c| format!("{c}\n")).collect();
    Ok(GarbageProfile {
        machine_id: machine_id(m),
        input_bits: m.input_bits(),
        garbage_bits: m.garbage_bits(),
        config_count: configs.len(),
        configs_digest: format!("sha256:{}", short_digest(digest_input.as_bytes())),
        configs,
        per_output,
        forward_runs: table.len() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub passed: bool,
    /// First input value that breaks the clause.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformanceReport {
    pub machine_id: String,
    pub clauses: Vec<ClauseResult>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

pub fn conformance(m: &Machine) -> Result<ConformanceReport> {
    conformance_with(m, &ExhaustiveConfig::default())
}

/// Checks the declared interface against every input.
pub fn conformance_with(m: &Machine, config: &ExhaustiveConfig) -> Result<ConformanceReport> {
    let n = m.input_bits();
    config.check(n)?;
    let iface = m.iface();

    let mut restored = ClauseResult {
        clause: "restored-lines-return-to-constants",
        passed: true,
        witness: None,
        detail: None,
    };
    'inputs: for x in 0..1u64 << n {
        let s = run_machine(m, &Bits::from_u64(x, n)?)?;
        for &(line, want) in iface.restored_lines() {
            if s.get(line) != want {
                restored.passed = false;
                restored.witness = Some(x);
                restored.detail = Some(format!(
                    "line {line} ended as {} instead of {}",
                    u8::from(!want),
                    u8::from(want)
                ));
                break 'inputs;
            }
        }
    }

    let mut covered = vec![false; m.width()];
    for &l in iface
        .output_lines()
        .iter()
        .chain(iface.garbage_lines())
        .chain(iface.restored_lines().iter().map(|p| &p.0))
    {
        covered[l] = true;
    }
    let uncovered: Vec<usize> = (0..m.width()).filter(|&l| !covered[l]).collect();
    let partition = ClauseResult {
        clause: "output-and-garbage-cover-non-restored-lines",
        passed: uncovered.is_empty(),
        witness: None,
        detail: (!uncovered.is_empty()).then(|| format!("unclassified lines {uncovered:?}")),
    };

    Ok(ConformanceReport {
        machine_id: machine_id(m),
        clauses: vec![restored, partition],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GrowthClass {
    Constant,
    Linear,
    PolynomialFit { degree: u32 },
    SuperpolynomialSuspect,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitDetails {
    /// Slope of log(count) against log(n) between consecutive sizes.
    pub local_slopes: Vec<f64>,
    /// Least-squares slope over all points in log-log space.
    pub loglog_slope: f64,
    pub loglog_rms_residual: f64,
    pub note: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub config_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub family: String,
    pub points: Vec<GrowthPoint>,
    pub classification: GrowthClass,
    pub fit_details: FitDetails,
}

pub const MIN_GROWTH_POINTS: usize = 3;

/// Profiles `family(n)` for each size and labels how the count grows.
pub fn growth_report<F>(family: &str, build: F, sizes: &[usize]) -> Result<GrowthReport>
where
    F: Fn(usize) -> Result<Machine>,
{
    growth_report_with(family, build, sizes, &ExhaustiveConfig::default())
}

pub fn growth_report_with<F>(
    family: &str,
    build: F,
    sizes: &[usize],
    config: &ExhaustiveConfig,
) -> Result<GrowthReport>
where
    F: Fn(usize) -> Result<Machine>,
{
    let sizes: BTreeSet<usize> = sizes.iter().copied().collect();
    if sizes.len() < MIN_GROWTH_POINTS {
        return Err(Error::InsufficientPoints {
            needed: MIN_GROWTH_POINTS,
            got: sizes.len(),
        });
    }
    let points = sizes
        .into_iter()
        .map(|n| {
            Ok(GrowthPoint {
                n,
                config_count: garbage_profile_with(&build(n)?, config)?.config_count,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = points.iter().map(|p| (p.n, p.config_count)).collect();
    let (classification, fit_details) = classify(&pairs);
    Ok(GrowthReport {
        family: family.to_string(),
        points,
        classification,
        fit_details,
    })
}

/// Labels a sorted series of `(n, count)` points.
///
/// Constant when all counts agree; linear when every divided difference is
/// the same. Superpolynomial-suspect when the per-step growth factor never
/// shrinks (a polynomial's decays towards 1) or when `count / n^4` rises at
/// every step. Anything else is a polynomial whose degree is the rounded
/// final log-log slope.
pub fn classify(points: &[(usize, usize)]) -> (GrowthClass, FitDetails) {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, c)| ((n.max(1) as f64).ln(), (c.max(1) as f64).ln()))
        .collect();
    let local_slopes: Vec<f64> = logs
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect();
    let (slope, rms) = least_squares(&logs);
    let details = FitDetails {
        local_slopes: local_slopes.clone(),
        loglog_slope: slope,
        loglog_rms_residual: rms,
        note: "empirical at desk scale",
    };

    let counts: Vec<i128> = points.iter().map(|p| p.1 as i128).collect();
    if counts.windows(2).all(|w| w[0] == w[1]) {
        return (GrowthClass::Constant, details);
    }
    // Equal divided differences, compared exactly by cross-multiplication.
    let diffs: Vec<(i128, i128)> = points
        .windows(2)
        .map(|w| (w[1].1 as i128 - w[0].1 as i128, w[1].0 as i128 - w[0].0 as i128))
        .collect();
    if diffs.windows(2).all(|d| d[0].0 * d[1].1 == d[1].0 * d[0].1) {
        return (GrowthClass::Linear, details);
    }
    // Per-unit-step growth factor, in log form.
    let step_growth: Vec<f64> = points
        .windows(2)
        .zip(logs.windows(2))
        .map(|(p, l)| (l[1].1 - l[0].1) / (p[1].0 - p[0].0) as f64)
        .collect();
    let steady_factor = step_growth.iter().all(|&g| g > 1e-9)
        && step_growth.windows(2).all(|w| w[1] >= w[0] - 1e-9);
    let beats_quartic = logs.windows(2).all(|w| w[1].1 - 4.0 * w[1].0 > w[0].1 - 4.0 * w[0].0 + 1e-9);
    if steady_factor || beats_quartic {
        return (GrowthClass::SuperpolynomialSuspect, details);
    }
    let last = local_slopes.last().copied().unwrap_or(slope);
    let degree = last.round().max(1.0) as u32;
    (GrowthClass::PolynomialFit { degree }, details)
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let rms = (points
        .iter()
        .map(|p| (p.1 - (my + slope * (p.0 - mx))).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    (slope, rms)
}
