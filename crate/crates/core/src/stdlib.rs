//! Concrete machines: incrementer, decrementer and ripple-carry adder.
//!
//! All three keep their carry (or borrow) bits as garbage lines preset to 0.

use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, InterfaceSpec, Machine};

fn require_bits(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::BitsTooSmall { got: n, min });
    }
    Ok(())
}

/// Sends `x` to `x + 1 mod 2^n`.
///
/// Lines `0..n` hold `a_0..a_{n-1}` (least significant first). Lines
/// `n..2n-2` hold the carries `c_1..c_{n-2}`, where `c_i = a_0 & .. & a_i`
/// of the original input. `a_0` serves as its own carry, so there is no `c_0`.
pub fn incrementer(n: usize) -> Result<Machine> {
    require_bits(n, 2)?;
    let width = 2 * n - 2;
    let a = |i: usize| i;
    let c = |i: usize| n + i - 1;
    let mut circuit = Circuit::new(width)?;
    incrementer_core(&mut circuit, n, a, c)?;
    Machine::new(circuit, carry_interface(n)?)
}

fn incrementer_core(
    circuit: &mut Circuit,
    n: usize,
    a: impl Fn(usize) -> usize,
    c: impl Fn(usize) -> usize,
) -> Result<()> {
    if n >= 3 {
        circuit.push(Gate::ccx(a(0), a(1), c(1))?)?;
        for i in 2..=n - 2 {
            circuit.push(Gate::ccx(c(i - 1), a(i), c(i))?)?;
        }
        for i in (2..n).rev() {
            circuit.push(Gate::cx(c(i - 1), a(i))?)?;
        }
    }
    circuit.push(Gate::cx(a(0), a(1))?)?;
    circuit.push(Gate::x(a(0)))
}

fn carry_interface(n: usize) -> Result<InterfaceSpec> {
    let a: Vec<usize> = (0..n).collect();
    let carries: Vec<usize> = (n..2 * n - 2).collect();
    InterfaceSpec::new(
        2 * n - 2,
        a.clone(),
        carries.iter().map(|&l| (l, false)).collect(),
        a,
        carries,
        Vec::new(),
    )
}

/// Sends `x` to `x - 1 mod 2^n`, computed as `!(!x + 1)`.
///
/// Same line layout as [`incrementer`]; the garbage lines hold the carry
/// chain of `!x`, i.e. the borrow chain of `x`.
pub fn decrementer(n: usize) -> Result<Machine> {
    require_bits(n, 2)?;
    let mut circuit = Circuit::new(2 * n - 2)?;
    for i in 0..n {
        circuit.push(Gate::x(i))?;
    }
    incrementer_core(&mut circuit, n, |i| i, |i| n + i - 1)?;
    for i in 0..n {
        circuit.push(Gate::x(i))?;
    }
    Machine::new(circuit, carry_interface(n)?)
}

/// Sends `(a, b)` to `(a + b mod 2^n, b)`.
///
/// Lines `0..n` hold `a`, `n..2n` hold `b`, and `2n..3n-1` hold the carries
/// `c_1..c_{n-1}` (preset 0, left as garbage). At each position the carry
/// out is computed as the majority of `a_i`, `b_i`, `c_i` before `a_i` is
/// overwritten by the sum bit.
pub fn ripple_adder(n: usize) -> Result<Machine> {
    require_bits(n, 1)?;
    let width = 3 * n - 1;
    let a = |i: usize| i;
    let b = |i: usize| n + i;
    let c = |i: usize| 2 * n + i - 1;
    let mut circuit = Circuit::new(width)?;
    for i in 0..n {
        if i + 1 < n {
            circuit.push(Gate::ccx(a(i), b(i), c(i + 1))?)?;
            if i > 0 {
                circuit.push(Gate::ccx(a(i), c(i), c(i + 1))?)?;
                circuit.push(Gate::ccx(b(i), c(i), c(i + 1))?)?;
            }
        }
        circuit.push(Gate::cx(b(i), a(i))?)?;
        if i > 0 {
            circuit.push(Gate::cx(c(i), a(i))?)?;
        }
    }
    let inputs: Vec<usize> = (0..2 * n).collect();
    let carries: Vec<usize> = (2 * n..width).collect();
    let iface = InterfaceSpec::new(
        width,
        inputs.clone(),
        carries.iter().map(|&l| (l, false)).collect(),
        inputs,
        carries,
        Vec::new(),
    )?;
    Machine::new(circuit, iface)
}
