//! Gates, circuits, line-role interfaces and structural circuit algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    /// Unconditional negation.
    X,
    /// Controlled-NOT.
    Cx,
    /// Toffoli, controlled-controlled-NOT.
    Ccx,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::X => 0,
            GateKind::Cx => 1,
            GateKind::Ccx => 2,
        }
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::Cx => "cx",
            GateKind::Ccx => "ccx",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        match s {
            "x" => Some(GateKind::X),
            "cx" => Some(GateKind::Cx),
            "ccx" => Some(GateKind::Ccx),
            _ => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// A self-inverse reversible primitive: the target flips iff every control is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    controls: [usize; 2],
    target: usize,
}

impl Gate {
    pub fn new(kind: GateKind, controls: &[usize], target: usize) -> Result<Self> {
        for (i, &c) in controls.iter().enumerate() {
            if c == target || controls[..i].contains(&c) {
                return Err(Error::DuplicateLine(c));
            }
        }
        if controls.len() != kind.arity() {
            return Err(Error::ArityMismatch {
                kind: kind.mnemonic(),
                expected: kind.arity(),
                got: controls.len(),
            });
        }
        let mut slots = [0; 2];
        slots[..controls.len()].copy_from_slice(controls);
        Ok(Self {
            kind,
            controls: slots,
            target,
        })
    }

    pub fn x(target: usize) -> Self {
        Self {
            kind: GateKind::X,
            controls: [0; 2],
            target,
        }
    }

    pub fn cx(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cx, &[control], target)
    }

    pub fn ccx(a: usize, b: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Ccx, &[a, b], target)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[usize] {
        &self.controls[..self.kind.arity()]
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Controls followed by the target.
    pub fn lines(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls().iter().copied().chain(std::iter::once(self.target))
    }

    fn max_line(&self) -> usize {
        self.lines().max().unwrap_or(0)
    }

    fn relabel(&self, map: &[usize]) -> Self {
        let mut g = *self;
        for c in g.controls.iter_mut().take(self.kind.arity()) {
            *c = map[*c];
        }
        g.target = map[g.target];
        g
    }
}

/// An ordered gate list over `width` lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        Ok(Self {
            width,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(width: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Self::new(width)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let max = gate.max_line();
        if max >= self.width {
            return Err(Error::IndexOutOfRange {
                index: max,
                width: self.width,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    /// Every primitive is its own inverse, so reversing the order inverts the circuit.
    pub fn inverse(&self) -> Self {
        Self {
            width: self.width,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    pub fn concat(&self, other: &Circuit) -> Result<Self> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Self {
            width: self.width,
            gates,
        })
    }

    /// Appends `other` in place; widths must agree.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Relabels line `i` as `line_map[i]` in a circuit of `new_width` lines.
    pub fn remap(&self, line_map: &[usize], new_width: usize) -> Result<Self> {
        check_injective_map(line_map, self.width, new_width)?;
        Ok(Self {
            width: new_width,
            gates: self.gates.iter().map(|g| g.relabel(line_map)).collect(),
        })
    }
}

fn check_injective_map(line_map: &[usize], width: usize, new_width: usize) -> Result<()> {
    if new_width == 0 {
        return Err(Error::ZeroWidth);
    }
    if line_map.len() != width {
        return Err(Error::MapLengthMismatch {
            got: line_map.len(),
            width,
        });
    }
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (src, &dst) in line_map.iter().enumerate() {
        if dst >= new_width {
            return Err(Error::ImageOutOfRange {
                target: dst,
                width: new_width,
            });
        }
        if let Some(&first) = seen.get(&dst) {
            return Err(Error::NonInjectiveMap {
                first,
                second: src,
                target: dst,
            });
        }
        seen.insert(dst, src);
    }
    Ok(())
}

/// Declares which lines carry the input and which start at constants, and
/// how lines are read out once the circuit has run.
///
/// Initially `input_lines` and `preset_lines` partition the lines; finally
/// `output_lines`, `garbage_lines` and `restored_lines` do. Restored lines are
/// presets that must come back to their starting constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterfaceSpec {
    width: usize,
    input_lines: Vec<usize>,
    preset_lines: Vec<(usize, bool)>,
    output_lines: Vec<usize>,
    garbage_lines: Vec<usize>,
    restored_lines: Vec<(usize, bool)>,
}

impl InterfaceSpec {
    pub fn new(
        width: usize,
        input_lines: Vec<usize>,
        preset_lines: Vec<(usize, bool)>,
        output_lines: Vec<usize>,
        garbage_lines: Vec<usize>,
        restored_lines: Vec<(usize, bool)>,
    ) -> Result<Self> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        let preset_idx: Vec<usize> = preset_lines.iter().map(|p| p.0).collect();
        let restored_idx: Vec<usize> = restored_lines.iter().map(|p| p.0).collect();
        check_partition(width, "initial", &[&input_lines, &preset_idx])?;
        check_partition(
            width,
            "final",
            &[&output_lines, &garbage_lines, &restored_idx],
        )?;
        for &(line, value) in &restored_lines {
            match preset_lines.iter().find(|p| p.0 == line) {
                Some(&(_, v)) if v == value => {}
                Some(_) => {
                    return Err(Error::RolePartition(format!(
                        "restored line {line} constant differs from its preset"
                    )))
                }
                None => {
                    return Err(Error::RolePartition(format!(
                        "restored line {line} is not a preset line"
                    )))
                }
            }
        }
        Ok(Self {
            width,
            input_lines,
            preset_lines,
            output_lines,
            garbage_lines,
            restored_lines,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn input_lines(&self) -> &[usize] {
        &self.input_lines
    }

    pub fn preset_lines(&self) -> &[(usize, bool)] {
        &self.preset_lines
    }

    pub fn output_lines(&self) -> &[usize] {
        &self.output_lines
    }

    pub fn garbage_lines(&self) -> &[usize] {
        &self.garbage_lines
    }

    pub fn restored_lines(&self) -> &[(usize, bool)] {
        &self.restored_lines
    }

    pub fn preset_value(&self, line: usize) -> Option<bool> {
        self.preset_lines
            .iter()
            .find(|p| p.0 == line)
            .map(|p| p.1)
    }
}

fn check_partition(width: usize, phase: &str, groups: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; width];
    for group in groups {
        for &line in *group {
            if line >= width {
                return Err(Error::IndexOutOfRange { index: line, width });
            }
            if std::mem::replace(&mut seen[line], true) {
                return Err(Error::RolePartition(format!(
                    "line {line} has two {phase} roles"
                )));
            }
        }
    }
    if let Some(line) = seen.iter().position(|s| !s) {
        return Err(Error::RolePartition(format!(
            "line {line} has no {phase} role"
        )));
    }
    Ok(())
}

/// A circuit together with the roles of its lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Machine {
    circuit: Circuit,
    iface: InterfaceSpec,
}

impl Machine {
    pub fn new(circuit: Circuit, iface: InterfaceSpec) -> Result<Self> {
        if circuit.width() != iface.width() {
            return Err(Error::WidthMismatch {
                left: circuit.width(),
                right: iface.width(),
            });
        }
        Ok(Self { circuit, iface })
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn iface(&self) -> &InterfaceSpec {
        &self.iface
    }

    pub fn width(&self) -> usize {
        self.circuit.width()
    }

    pub fn input_bits(&self) -> usize {
        self.iface.input_lines.len()
    }

    pub fn output_bits(&self) -> usize {
        self.iface.output_lines.len()
    }

    pub fn garbage_bits(&self) -> usize {
        self.iface.garbage_lines.len()
    }

    /// The machine run in reverse: what was read out is now fed in.
    ///
    /// Outputs followed by garbage become the input; restored lines become the
    /// presets; original inputs become the output and every original preset
    /// line is garbage, since a wrong garbage guess leaves it arbitrary.
    pub fn inverse(&self) -> Result<Self> {
        let iface = &self.iface;
        let mut inputs = iface.output_lines.clone();
        inputs.extend_from_slice(&iface.garbage_lines);
        let garbage = iface.preset_lines.iter().map(|p| p.0).collect();
        Machine::new(
            self.circuit.inverse(),
            InterfaceSpec::new(
                iface.width,
                inputs,
                iface.restored_lines.clone(),
                iface.input_lines.clone(),
                garbage,
                Vec::new(),
            )?,
        )
    }
}
