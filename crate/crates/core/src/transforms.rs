//! Garbage-reducing machine transformations.
//!
//! [`bennett`] computes, copies the output out with CNOTs and uncomputes, so
//! the only garbage left is a copy of the input. [`zero_garbage_compose`]
//! goes further for bijections: given machines for `f` and its inverse it
//! builds a machine for `f` whose every non-output line returns to its preset.

use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, InterfaceSpec, Machine};
use crate::sim::{truth_table_with, ExhaustiveConfig};

/// CNOTs from `src[i]` onto `dst[i]`.
///
/// On zeroed destinations this writes a copy; applied to an existing copy it
/// erases it.
pub fn copy_fanout(src: &[usize], dst: &[usize], width: usize) -> Result<Circuit> {
    if src.len() != dst.len() {
        return Err(Error::LengthMismatch {
            left: src.len(),
            right: dst.len(),
        });
    }
    if let Some(&l) = src.iter().find(|l| dst.contains(l)) {
        return Err(Error::OverlappingRegions(l));
    }
    let mut c = Circuit::new(width)?;
    for (&s, &d) in src.iter().zip(dst) {
        c.push(Gate::cx(s, d)?)?;
    }
    Ok(c)
}

fn identity_map(width: usize) -> Vec<usize> {
    (0..width).collect()
}

/// Compute, copy, uncompute.
///
/// The result has `k` extra lines (one per output bit of `m`) appended after
/// the original ones, preset to 0. They carry the output at the end. The
/// original input lines are left holding the input and are declared garbage;
/// every original preset line is restored.
pub fn bennett(m: &Machine) -> Result<Machine> {
    let iface = m.iface();
    let width = m.width();
    let k = m.output_bits();
    let new_width = width + k;
    let fresh: Vec<usize> = (width..new_width).collect();

    let widened = m.circuit().remap(&identity_map(width), new_width)?;
    let mut circuit = widened.clone();
    circuit.extend(&copy_fanout(iface.output_lines(), &fresh, new_width)?)?;
    circuit.extend(&widened.inverse())?;

    let mut presets = iface.preset_lines().to_vec();
    presets.extend(fresh.iter().map(|&l| (l, false)));
    let new_iface = InterfaceSpec::new(
        new_width,
        iface.input_lines().to_vec(),
        presets,
        fresh,
        iface.input_lines().to_vec(),
        iface.preset_lines().to_vec(),
    )?;
    Machine::new(circuit, new_iface)
}

/// Checks `mfinv ∘ mf = id` and `mf ∘ mfinv = id` on output values.
fn check_inverse_pair(mf: &Machine, mfinv: &Machine, config: &ExhaustiveConfig) -> Result<()> {
    let tf = truth_table_with(mf, config)?;
    let tg = truth_table_with(mfinv, config)?;
    let there_and_back = |a: &crate::sim::FunctionTable, b: &crate::sim::FunctionTable, name: &str| {
        for (x, row) in a.rows().iter().enumerate() {
            let y = row.output.to_u64().ok_or_else(|| {
                Error::WidthIncompatible("output region wider than 64 bits".into())
            })?;
            let back = b.row(y).map(|r| r.output.to_u64());
            if back != Some(Some(x as u64)) {
                return Err(Error::NotInversePair(format!(
                    "{name}: input {x} maps to {y} which does not map back"
                )));
            }
        }
        Ok(())
    };
    there_and_back(&tf, &tg, "forward then inverse")?;
    there_and_back(&tg, &tf, "inverse then forward")
}

/// Garbage-free machine for a bijection `f` from machines for `f` and `f^-1`.
///
/// Layout of the result: lines `0..n` (R1) carry the input and finally the
/// output, `n..n+s` (R2) is scratch shared by both machines with `s` the
/// larger of their preset needs, and `n+s..2n+s` (R3) is the copy register.
///
/// 1. run `mf` forward on (R1, R2), copy its output into R3, run it backward;
/// 2. run `mfinv` forward on (R3, R2), which recomputes the input;
/// 3. erase R1 against that recomputed input;
/// 4. run `mfinv` backward with its output lines read from R1, leaving
///    `f(x)` where `mfinv` takes its input.
///
/// When `mfinv`'s output lines differ from its input lines part of `f(x)`
/// lands in R3; it is swapped back into R1. Scratch constants that differ
/// between the two machines are fixed up with X gates, so the result declares
/// every non-output line restored and has no garbage.
///
/// Mutual inversion is verified by truth tables when the input region fits
/// the exhaustive bound; above it the precondition is trusted.
pub fn zero_garbage_compose(mf: &Machine, mfinv: &Machine) -> Result<Machine> {
    zero_garbage_compose_with(mf, mfinv, &ExhaustiveConfig::default())
}

pub fn zero_garbage_compose_with(
    mf: &Machine,
    mfinv: &Machine,
    config: &ExhaustiveConfig,
) -> Result<Machine> {
    let n = mf.input_bits();
    if mf.output_bits() != mfinv.input_bits() || mfinv.output_bits() != n {
        return Err(Error::WidthIncompatible(format!(
            "f maps {} to {} bits but the inverse maps {} to {} bits",
            n,
            mf.output_bits(),
            mfinv.input_bits(),
            mfinv.output_bits()
        )));
    }
    if mf.output_bits() != n {
        return Err(Error::WidthIncompatible(format!(
            "a bijection needs equal input and output widths, got {n} and {}",
            mf.output_bits()
        )));
    }
    if config.check(n).is_ok() {
        check_inverse_pair(mf, mfinv, config)?;
    }

    let fi = mf.iface();
    let gi = mfinv.iface();
    let f_scratch: Vec<usize> = (0..mf.width())
        .filter(|l| !fi.input_lines().contains(l))
        .collect();
    let g_presets: Vec<usize> = (0..mfinv.width())
        .filter(|l| !gi.input_lines().contains(l))
        .collect();
    let s = f_scratch.len().max(g_presets.len());
    let width = 2 * n + s;
    let r1 = |i: usize| i;
    let r2 = |j: usize| n + j;
    let r3 = |i: usize| n + s + i;

    // Scratch constants as declared on the composed machine.
    let mut declared = vec![false; s];
    for (j, &l) in f_scratch.iter().enumerate() {
        declared[j] = fi.preset_value(l).unwrap_or(false);
    }

    let mut f_map = vec![0; mf.width()];
    for (i, &l) in fi.input_lines().iter().enumerate() {
        f_map[l] = r1(i);
    }
    for (j, &l) in f_scratch.iter().enumerate() {
        f_map[l] = r2(j);
    }
    let f_on = mf.circuit().remap(&f_map, width)?;
    let f_out: Vec<usize> = fi.output_lines().iter().map(|&l| f_map[l]).collect();
    let copy_reg: Vec<usize> = (0..n).map(r3).collect();
    let input_reg: Vec<usize> = (0..n).map(r1).collect();

    let mut circuit = f_on.clone();
    circuit.extend(&copy_fanout(&f_out, &copy_reg, width)?)?;
    circuit.extend(&f_on.inverse())?;

    // mfinv reads R3 and uses R2 for its presets.
    let mut g_map1 = vec![0; mfinv.width()];
    for (i, &l) in gi.input_lines().iter().enumerate() {
        g_map1[l] = r3(i);
    }
    for (j, &l) in g_presets.iter().enumerate() {
        g_map1[l] = r2(j);
        let wanted = gi.preset_value(l).unwrap_or(false);
        if wanted != declared[j] {
            circuit.push(Gate::x(r2(j)))?;
        }
    }
    circuit.extend(&mfinv.circuit().remap(&g_map1, width)?)?;
    let g_out1: Vec<usize> = gi.output_lines().iter().map(|&l| g_map1[l]).collect();
    circuit.extend(&copy_fanout(&input_reg, &g_out1, width)?)?;

    // Backward with its output lines taken from R1 instead.
    let mut g_map2 = g_map1.clone();
    for (i, &l) in gi.output_lines().iter().enumerate() {
        g_map2[l] = r1(i);
    }
    circuit.extend(&mfinv.circuit().remap(&g_map2, width)?.inverse())?;

    // Constant held by every non-output line at this point.
    let mut fixed: Vec<Option<bool>> = vec![None; width];
    for j in 0..s {
        fixed[r2(j)] = Some(declared[j]);
    }
    for i in 0..n {
        fixed[r3(i)] = Some(false);
    }
    for &l in &g_presets {
        fixed[g_map2[l]] = gi.preset_value(l);
    }
    for &o in &g_out1 {
        fixed[o] = Some(false);
    }
    let mut out_pos: Vec<usize> = gi.input_lines().iter().map(|&l| g_map2[l]).collect();
    for &p in &out_pos {
        fixed[p] = None;
    }

    // Move any output bits sitting in R3 into the R1 lines not yet holding output.
    let free_r1: Vec<usize> = (0..n).map(r1).filter(|p| !out_pos.contains(p)).collect();
    let stray: Vec<usize> = (0..n).filter(|&i| out_pos[i] >= r3(0)).collect();
    if free_r1.len() != stray.len() {
        return Err(Error::Internal("output placement does not balance".into()));
    }
    for (&dst, &i) in free_r1.iter().zip(&stray) {
        let src = out_pos[i];
        circuit.push(Gate::cx(dst, src)?)?;
        circuit.push(Gate::cx(src, dst)?)?;
        circuit.push(Gate::cx(dst, src)?)?;
        fixed.swap(dst, src);
        out_pos[i] = dst;
    }

    let mut presets = Vec::with_capacity(s + n);
    for (j, &v) in declared.iter().enumerate().take(s) {
        presets.push((r2(j), v));
    }
    for i in 0..n {
        presets.push((r3(i), false));
    }
    for &(line, want) in &presets {
        match fixed[line] {
            Some(v) if v == want => {}
            Some(_) => circuit.push(Gate::x(line))?,
            None => return Err(Error::Internal(format!("line {line} has no known constant"))),
        }
    }

    let iface = InterfaceSpec::new(
        width,
        input_reg,
        presets.clone(),
        out_pos,
        Vec::new(),
        presets,
    )?;
    Machine::new(circuit, iface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Bits;
    use crate::sim::{run, run_machine, truth_table, Direction};
    use crate::stdlib::{decrementer, incrementer, ripple_adder};

    #[test]
    fn copy_fanout_copies_and_erases() {
        let c = copy_fanout(&[0, 1, 2], &[3, 4, 5], 6).unwrap();
        let s: Bits = "101000".parse().unwrap();
        let copied = run(&c, &s, Direction::Forward).unwrap();
        assert_eq!(copied.to_string(), "101101");
        assert_eq!(run(&c, &copied, Direction::Forward).unwrap(), s);
        assert_eq!(copy_fanout(&[0], &[0], 1), Err(Error::OverlappingRegions(0)));
        assert!(matches!(copy_fanout(&[0, 1], &[2], 3), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn bennett_leaves_input_as_garbage() {
        let m = bennett(&incrementer(3).unwrap()).unwrap();
        assert_eq!(m.width(), 4 + 3);
        assert_eq!(m.garbage_bits(), m.input_bits());
        let t = truth_table(&m).unwrap();
        for x in 0..8u64 {
            let row = t.row(x).unwrap();
            assert_eq!(row.output.to_u64(), Some((x + 1) % 8));
            assert_eq!(row.garbage.to_u64(), Some(x));
        }
    }

    #[test]
    fn bennett_on_garbage_free_machine_still_garbages_input() {
        let m = bennett(&incrementer(2).unwrap()).unwrap();
        assert_eq!(m.garbage_bits(), 2);
    }

    #[test]
    fn zero_garbage_incrementer() {
        for n in 2..=6 {
            let m = zero_garbage_compose(&incrementer(n).unwrap(), &decrementer(n).unwrap()).unwrap();
            assert_eq!(m.garbage_bits(), 0);
            let t = truth_table(&m).unwrap();
            for x in 0..1u64 << n {
                assert_eq!(t.row(x).unwrap().output.to_u64(), Some((x + 1) % (1 << n)));
            }
        }
    }

    #[test]
    fn rejects_non_inverse_pair() {
        let i3 = incrementer(3).unwrap();
        assert!(matches!(zero_garbage_compose(&i3, &i3), Err(Error::NotInversePair(_))));
        let i4 = incrementer(4).unwrap();
        assert!(matches!(zero_garbage_compose(&i3, &i4), Err(Error::WidthIncompatible(_))));
    }

    #[test]
    fn reconciles_mismatched_scratch_and_output_layout() {
        // Bennett machines read out on fresh lines, so the inverse's output
        // lines differ from its input lines and f(x) first lands in R3.
        let f = bennett(&incrementer(3).unwrap()).unwrap();
        let d = bennett(&decrementer(3).unwrap()).unwrap();
        let m = zero_garbage_compose(&f, &d).unwrap();
        let t = truth_table(&m).unwrap();
        for x in 0..8u64 {
            assert_eq!(t.row(x).unwrap().output.to_u64(), Some((x + 1) % 8));
        }
    }

    #[test]
    fn preset_one_scratch_is_reconciled() {
        // incr(2) realised with a spare line preset to 1 that it leaves alone
        let inc = incrementer(3).unwrap();
        let widened = inc.circuit().remap(&[0, 1, 2, 3], 5).unwrap();
        let iface = InterfaceSpec::new(
            5,
            vec![0, 1, 2],
            vec![(3, false), (4, true)],
            vec![0, 1, 2],
            vec![3],
            vec![(4, true)],
        )
        .unwrap();
        let f = Machine::new(widened, iface).unwrap();
        let m = zero_garbage_compose(&f, &decrementer(3).unwrap()).unwrap();
        let t = truth_table(&m).unwrap();
        for x in 0..8u64 {
            assert_eq!(t.row(x).unwrap().output.to_u64(), Some((x + 1) % 8));
        }
        let s = run_machine(&m, &Bits::from_u64(5, 3).unwrap()).unwrap();
        for &(l, v) in m.iface().restored_lines() {
            assert_eq!(s.get(l), v);
        }
    }

    #[test]
    fn adder_has_expected_bennett_width() {
        let m = bennett(&ripple_adder(2).unwrap()).unwrap();
        assert_eq!(m.width(), 5 + 4);
    }
}
