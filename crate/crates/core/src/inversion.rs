//! Computing `x = f^-1(y)` by running a machine backward from guessed garbage.
//!
//! Fix the output region to `y`, put a candidate on the garbage lines and the
//! declared constants on the restored lines, run backward, and accept the
//! candidate iff every preset line comes back to its constant. The recovered
//! input region is then a pre-image of `y`.
//!
//! Each attempt starts from a freshly built state rather than re-running the
//! machine forward as a physical device would; the two are observationally
//! identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{BitState, Bits};
use crate::error::{Error, Result};
use crate::garbage::GarbageProfile;
use crate::ir::Machine;
use crate::sim::{run_in_place, run_machine, Direction};

/// Ceiling on the garbage width accepted by [`invert_blind`] by default.
pub const DEFAULT_BLIND_GARBAGE_BOUND: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionMethod {
    Table,
    Blind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub config: Bits,
    pub presets_match: bool,
    /// Input region after the backward run, valid or not.
    pub recovered: Bits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionResult {
    pub input_value: Bits,
    pub trials: u64,
    pub method: InversionMethod,
    pub matched_config: Bits,
    /// False when the profile did not establish a unique pre-image.
    pub injective: bool,
    /// Every backward run in order; recorded only by the table method.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<Attempt>,
}

struct Backward<'a> {
    m: &'a Machine,
    base: BitState,
}

impl<'a> Backward<'a> {
    fn new(m: &'a Machine, y: &Bits) -> Result<Self> {
        let iface = m.iface();
        if y.len() != iface.output_lines().len() {
            return Err(Error::WidthMismatch {
                left: iface.output_lines().len(),
                right: y.len(),
            });
        }
        let mut base = Bits::zeros(m.width());
        base.scatter(iface.output_lines(), y);
        for &(line, v) in iface.restored_lines() {
            base.set(line, v);
        }
        Ok(Self { m, base })
    }

    /// Runs backward from `config`; returns the recovered input and whether presets matched.
    fn attempt(&self, config: &Bits) -> Result<(Bits, bool)> {
        let iface = self.m.iface();
        if config.len() != iface.garbage_lines().len() {
            return Err(Error::WidthMismatch {
                left: iface.garbage_lines().len(),
                right: config.len(),
            });
        }
        let mut s = self.base.clone();
        s.scatter(iface.garbage_lines(), config);
        run_in_place(self.m.circuit(), &mut s, Direction::Backward)?;
        let ok = iface.preset_lines().iter().all(|&(l, v)| s.get(l) == v);
        Ok((s.gather(iface.input_lines()), ok))
    }
}

/// Re-runs forward to confirm the result before handing it out.
fn confirm(m: &Machine, x: &Bits, y: &Bits, config: &Bits) -> Result<()> {
    let s = run_machine(m, x)?;
    let iface = m.iface();
    if &s.gather(iface.output_lines()) != y || &s.gather(iface.garbage_lines()) != config {
        return Err(Error::Internal(format!(
            "recovered input {x} does not reproduce output {y} with garbage {config}"
        )));
    }
    Ok(())
}

/// Tries the profiled garbage configurations in ascending order.
///
/// Uses only `profile.configs`; the per-output map is never consulted, as
/// that would be a lookup rather than an inversion. At most
/// `profile.config_count` backward runs are made.
pub fn invert_with_profile(m: &Machine, y: &Bits, profile: &GarbageProfile) -> Result<InversionResult> {
    if profile.garbage_bits != m.garbage_bits() {
        return Err(Error::WidthMismatch {
            left: m.garbage_bits(),
            right: profile.garbage_bits,
        });
    }
    let runner = Backward::new(m, y)?;
    let mut attempts = Vec::new();
    for config in &profile.configs {
        let (recovered, presets_match) = runner.attempt(config)?;
        attempts.push(Attempt {
            config: config.clone(),
            presets_match,
            recovered: recovered.clone(),
        });
        if presets_match {
            confirm(m, &recovered, y, config)?;
            return Ok(InversionResult {
                input_value: recovered,
                trials: attempts.len() as u64,
                method: InversionMethod::Table,
                matched_config: config.clone(),
                injective: profile.is_injective(),
                attempts,
            });
        }
    }
    Err(Error::NoConfigMatches)
}

pub fn invert_blind(m: &Machine, y: &Bits, seed: u64, max_trials: u64) -> Result<InversionResult> {
    invert_blind_with(m, y, seed, max_trials, DEFAULT_BLIND_GARBAGE_BOUND)
}

/// Draws uniform garbage strings until the presets come back, or the budget runs out.
///
/// With a single correct configuration among `2^k`, the trial count is
/// geometric with mean `2^k`. Deterministic for a given seed.
pub fn invert_blind_with(
    m: &Machine,
    y: &Bits,
    seed: u64,
    max_trials: u64,
    garbage_bound: usize,
) -> Result<InversionResult> {
    let k = m.garbage_bits();
    if k > garbage_bound {
        return Err(Error::TooWide {
            bits: k,
            bound: garbage_bound,
        });
    }
    let runner = Backward::new(m, y)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=max_trials {
        let config = Bits::from_bools((0..k).map(|_| rng.random::<bool>()));
        let (recovered, ok) = runner.attempt(&config)?;
        if ok {
            confirm(m, &recovered, y, &config)?;
            return Ok(InversionResult {
                input_value: recovered,
                trials: trial,
                method: InversionMethod::Blind,
                matched_config: config,
                injective: false,
                attempts: Vec::new(),
            });
        }
    }
    Err(Error::TrialBudgetExhausted(max_trials))
}
