//! Reversible Toffoli-family circuits and the garbage they leave behind.
//!
//! Circuits over the gate set {X, CX, CCX} are simulated bit-exactly in
//! both directions. On top of that sit compute-copy-uncompute and
//! zero-garbage transformations, an exhaustive profiler for reachable
//! garbage configurations, and two ways of inverting a machine by running
//! it backward: enumerating the profiled configurations, or guessing blindly.

pub mod bits;
pub mod error;
pub mod format;
pub mod garbage;
pub mod inversion;
pub mod ir;
pub mod sim;
pub mod stdlib;
pub mod transforms;

pub use bits::{BitState, Bits};
pub use error::{Error, Result};
pub use format::{parse_circuit, serialize, ParseError, ParseErrorKind};
pub use garbage::{
    conformance, garbage_profile, growth_report, ConformanceReport, GarbageProfile, GrowthClass,
    GrowthPoint, GrowthReport,
};
pub use inversion::{invert_blind, invert_with_profile, InversionMethod, InversionResult};
pub use ir::{Circuit, Gate, GateKind, InterfaceSpec, Machine};
pub use sim::{is_injective, run, step, truth_table, Direction, ExhaustiveConfig, FunctionTable};
pub use stdlib::{decrementer, incrementer, ripple_adder};
pub use transforms::{bennett, copy_fanout, zero_garbage_compose};
