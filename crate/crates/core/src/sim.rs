//! Bit-exact forward and backward execution, and exhaustive truth tables.

use serde::Serialize;

use crate::bits::{BitState, Bits};
use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, Machine};

/// Default ceiling on the input width that exhaustive operations accept.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 20;

/// Input values are enumerated as `u64`, which caps any configured bound.
pub const MAX_EXHAUSTIVE_BOUND: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Limits for operations that enumerate every input of a machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveConfig {
    pub max_input_bits: usize,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        Self {
            max_input_bits: DEFAULT_EXHAUSTIVE_BOUND,
        }
    }
}

impl ExhaustiveConfig {
    pub fn new(max_input_bits: usize) -> Self {
        Self {
            max_input_bits: max_input_bits.min(MAX_EXHAUSTIVE_BOUND),
        }
    }

    pub fn check(&self, bits: usize) -> Result<()> {
        if bits > self.max_input_bits {
            return Err(Error::TooWide {
                bits,
                bound: self.max_input_bits,
            });
        }
        Ok(())
    }
}

/// Applies `g` in place.
pub fn apply(s: &mut BitState, g: &Gate) {
    if g.controls().iter().all(|&c| s.get(c)) {
        s.flip(g.target());
    }
}

pub fn step(s: &BitState, g: &Gate) -> Result<BitState> {
    if let Some(bad) = g.lines().find(|&l| l >= s.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            width: s.len(),
        });
    }
    let mut out = s.clone();
    apply(&mut out, g);
    Ok(out)
}

pub fn run(c: &Circuit, s: &BitState, direction: Direction) -> Result<BitState> {
    let mut out = s.clone();
    run_in_place(c, &mut out, direction)?;
    Ok(out)
}

pub fn run_in_place(c: &Circuit, s: &mut BitState, direction: Direction) -> Result<()> {
    if s.len() != c.width() {
        return Err(Error::WidthMismatch {
            left: c.width(),
            right: s.len(),
        });
    }
    match direction {
        Direction::Forward => c.gates().iter().for_each(|g| apply(s, g)),
        Direction::Backward => c.gates().iter().rev().for_each(|g| apply(s, g)),
    }
    Ok(())
}

/// Builds the starting state: `input` on the input lines, constants on presets.
pub fn initial_state(m: &Machine, input: &Bits) -> Result<BitState> {
    let iface = m.iface();
    if input.len() != iface.input_lines().len() {
        return Err(Error::LengthMismatch {
            left: iface.input_lines().len(),
            right: input.len(),
        });
    }
    let mut s = Bits::zeros(m.width());
    s.scatter(iface.input_lines(), input);
    for &(line, v) in iface.preset_lines() {
        s.set(line, v);
    }
    Ok(s)
}

/// Runs `m` forward on `input` with its presets applied.
pub fn run_machine(m: &Machine, input: &Bits) -> Result<BitState> {
    let mut s = initial_state(m, input)?;
    run_in_place(m.circuit(), &mut s, Direction::Forward)?;
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub output: Bits,
    pub garbage: Bits,
}

/// The function realised by a machine: row `x` holds the output and garbage
/// regions after a forward run on input value `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionTable {
    pub input_width: usize,
    pub output_width: usize,
    pub garbage_width: usize,
    rows: Vec<TableRow>,
}

impl FunctionTable {
    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn row(&self, input: u64) -> Option<&TableRow> {
        usize::try_from(input).ok().and_then(|i| self.rows.get(i))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn truth_table(m: &Machine) -> Result<FunctionTable> {
    truth_table_with(m, &ExhaustiveConfig::default())
}

pub fn truth_table_with(m: &Machine, config: &ExhaustiveConfig) -> Result<FunctionTable> {
    let n = m.input_bits();
    config.check(n)?;
    let iface = m.iface();
    let rows = (0..1u64 << n)
        .map(|x| {
            let s = run_machine(m, &Bits::from_u64(x, n)?)?;
            for &(line, expected) in iface.restored_lines() {
                let actual = s.get(line);
                if actual != expected {
                    return Err(Error::RestorationViolation {
                        line,
                        input: x,
                        expected,
                        actual,
                    });
                }
            }
            Ok(TableRow {
                output: s.gather(iface.output_lines()),
                garbage: s.gather(iface.garbage_lines()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctionTable {
        input_width: n,
        output_width: m.output_bits(),
        garbage_width: m.garbage_bits(),
        rows,
    })
}

/// True iff no two rows share an output value.
pub fn is_injective(t: &FunctionTable) -> bool {
    let mut outputs: Vec<&Bits> = t.rows.iter().map(|r| &r.output).collect();
    outputs.sort_unstable();
    outputs.windows(2).all(|w| w[0] != w[1])
}
