use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use revkit::garbage::{conformance_with, garbage_profile_with, growth_report_with};
use revkit::inversion::invert_blind;
use revkit::sim::{run_machine, truth_table_with, Direction, ExhaustiveConfig, DEFAULT_EXHAUSTIVE_BOUND};
use revkit::transforms::zero_garbage_compose_with;
use revkit::{
    bennett, decrementer, incrementer, invert_with_profile, is_injective, parse_circuit, ripple_adder, run,
    serialize, Bits, Error, GrowthClass, Machine, ParseError,
};

/// Reversible circuit simulator and garbage-bit analyzer.
#[derive(Parser)]
#[command(name = "revkit", version)]
struct Cli {
    /// Largest input region that exhaustive commands will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_BOUND)]
    max_input_bits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ValueArgs {
    /// Bit string, leftmost character is bit 0 of the region.
    #[arg(short = 'x', long = "bits", conflicts_with = "int")]
    bits: Option<String>,
    /// Integer value, region bit i is integer bit i.
    #[arg(long)]
    int: Option<u64>,
}

#[derive(Args)]
struct OutputValueArgs {
    /// Output value as a bit string, leftmost character is bit 0.
    #[arg(short = 'y', long = "bits", conflicts_with = "int")]
    bits: Option<String>,
    /// Output value as an integer.
    #[arg(long)]
    int: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit on one input (or, with --backward, from one full final state).
    Sim {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[command(flatten)]
        value: ValueArgs,
        #[arg(long)]
        backward: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the full truth table.
    Table {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the reversed machine.
    Inverse {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Write the compute-copy-uncompute machine.
    Bennett {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Write a garbage-free machine built from machines for f and its inverse.
    ZgCompose {
        #[arg(long)]
        forward: PathBuf,
        #[arg(long)]
        inverse: PathBuf,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Enumerate reachable garbage configurations.
    Profile {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Profile a circuit family across sizes and label the growth.
    Growth {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recover the input that produced an output value.
    Invert {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[command(flatten)]
        value: OutputValueArgs,
        /// Guess garbage uniformly instead of using the profiled table.
        #[arg(long)]
        blind: bool,
        #[arg(long, default_value_t = 0, requires = "blind")]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000, requires = "blind")]
        max_trials: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate a library circuit.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        bits: usize,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Check a machine's declared interface on every input.
    Check {
        #[arg(short = 'c', long)]
        circuit: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Incr,
    Adder,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Incr,
    Decr,
    Add,
}

/// Exit code 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ParseError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::TooWide { .. }) => 4,
        Some(Error::NoConfigMatches | Error::TrialBudgetExhausted(_)) => 3,
        Some(_) => 2,
        None => 1,
    }
}

fn load(path: &Path) -> anyhow::Result<Machine> {
    let text = fs::read_to_string(path)
        .map_err(|e| anyhow::Error::new(Usage(format!("cannot read {}: {e}", path.display()))))?;
    parse_circuit(&text)
        .map_err(anyhow::Error::new)
        .with_context(|| path.display().to_string())
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) if p != Path::new("-") => fs::write(p, text)
            .map_err(|e| anyhow::Error::new(Usage(format!("cannot write {}: {e}", p.display())))),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_value(bits: Option<&str>, int: Option<u64>, len: usize, what: &str) -> anyhow::Result<Bits> {
    let value = match (bits, int) {
        (Some(s), None) => s.parse::<Bits>().map_err(|e| Usage(e.to_string()))?,
        (None, Some(v)) => Bits::from_u64(v, len).map_err(|e| Usage(e.to_string()))?,
        _ => return Err(Usage(format!("give the {what} with either --bits or --int")).into()),
    };
    if value.len() != len {
        return Err(Usage(format!("{what} needs {len} bits, got {}", value.len())).into());
    }
    Ok(value)
}

fn int_of(b: &Bits) -> Option<u64> {
    b.to_u64()
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn fmt_value(b: &Bits) -> String {
    match int_of(b) {
        Some(v) if !b.is_empty() => format!("{b} ({v})"),
        _ if b.is_empty() => "(empty)".to_string(),
        _ => b.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    let config = ExhaustiveConfig::new(cli.max_input_bits);
    match cli.command {
        Command::Sim {
            circuit,
            value,
            backward,
            json,
        } => {
            let m = load(&circuit)?;
            let iface = m.iface();
            if backward {
                let state = read_value(value.bits.as_deref(), value.int, m.width(), "final state")?;
                let s = run(m.circuit(), &state, Direction::Backward)?;
                let input = s.gather(iface.input_lines());
                let presets_match = iface.preset_lines().iter().all(|&(l, v)| s.get(l) == v);
                if json {
                    print_json(&json!({
                        "direction": "backward",
                        "state": s,
                        "input": input,
                        "input_value": int_of(&input),
                        "presets_match": presets_match,
                    }))
                } else {
                    println!("state          {s}");
                    println!("input          {}", fmt_value(&input));
                    println!("presets match  {}", if presets_match { "yes" } else { "no" });
                    Ok(())
                }
            } else {
                let input = read_value(value.bits.as_deref(), value.int, m.input_bits(), "input")?;
                let s = run_machine(&m, &input)?;
                let output = s.gather(iface.output_lines());
                let garbage = s.gather(iface.garbage_lines());
                let restored_ok = iface.restored_lines().iter().all(|&(l, v)| s.get(l) == v);
                if json {
                    print_json(&json!({
                        "direction": "forward",
                        "state": s,
                        "output": output,
                        "output_value": int_of(&output),
                        "garbage": garbage,
                        "restored_ok": restored_ok,
                    }))
                } else {
                    println!("state          {s}");
                    println!("output         {}", fmt_value(&output));
                    println!("garbage        {}", fmt_value(&garbage));
                    println!("restored ok    {}", if restored_ok { "yes" } else { "no" });
                    Ok(())
                }
            }
        }
        Command::Table { circuit, json } => {
            let m = load(&circuit)?;
            let t = truth_table_with(&m, &config)?;
            if json {
                print_json(&json!({ "table": t, "injective": is_injective(&t) }))
            } else {
                let mut out = String::new();
                writeln!(out, "{:>8}  {:<w$}  {:<o$}  garbage", "x", "input", "output", w = t.input_width.max(5), o = t.output_width.max(6))?;
                for (x, row) in t.rows().iter().enumerate() {
                    let input = Bits::from_u64(x as u64, t.input_width)?;
                    writeln!(
                        out,
                        "{:>8}  {:<w$}  {:<o$}  {}",
                        x,
                        input.to_string(),
                        row.output.to_string(),
                        row.garbage,
                        w = t.input_width.max(5),
                        o = t.output_width.max(6)
                    )?;
                }
                writeln!(out, "injective: {}", if is_injective(&t) { "yes" } else { "no" })?;
                print!("{out}");
                Ok(())
            }
        }
        Command::Inverse { circuit, out } => {
            let m = load(&circuit)?;
            emit(out.as_deref(), &serialize(&m.inverse()?))
        }
        Command::Bennett { circuit, out } => {
            let m = load(&circuit)?;
            emit(out.as_deref(), &serialize(&bennett(&m)?))
        }
        Command::ZgCompose { forward, inverse, out } => {
            let f = load(&forward)?;
            let g = load(&inverse)?;
            emit(out.as_deref(), &serialize(&zero_garbage_compose_with(&f, &g, &config)?))
        }
        Command::Profile { circuit, json } => {
            let m = load(&circuit)?;
            let p = garbage_profile_with(&m, &config)?;
            if json {
                print_json(&p)
            } else {
                println!("machine        {}", p.machine_id);
                println!("input bits     {}", p.input_bits);
                println!("garbage bits   {}", p.garbage_bits);
                println!("configs        {}", p.config_count);
                println!("injective      {}", if p.is_injective() { "yes" } else { "no" });
                println!("forward runs   {}", p.forward_runs);
                for c in &p.configs {
                    println!("  {}", fmt_value(c));
                }
                Ok(())
            }
        }
        Command::Growth { family, from, to, json } => {
            if from > to {
                return Err(Usage(format!("--from {from} is larger than --to {to}")).into());
            }
            let sizes: Vec<usize> = (from..=to).collect();
            let report = match family {
                Family::Incr => growth_report_with("incr", incrementer, &sizes, &config)?,
                Family::Adder => growth_report_with("adder", ripple_adder, &sizes, &config)?,
            };
            if json {
                print_json(&report)
            } else {
                println!("family  {}", report.family);
                println!("{:>4}  configs", "n");
                for p in &report.points {
                    println!("{:>4}  {}", p.n, p.config_count);
                }
                let label = match report.classification {
                    GrowthClass::Constant => "constant".to_string(),
                    GrowthClass::Linear => "linear".to_string(),
                    GrowthClass::PolynomialFit { degree } => format!("polynomial-fit (degree {degree})"),
                    GrowthClass::SuperpolynomialSuspect => "superpolynomial-suspect".to_string(),
                };
                println!("growth  {label} ({})", report.fit_details.note);
                Ok(())
            }
        }
        Command::Invert {
            circuit,
            value,
            blind,
            seed,
            max_trials,
            json,
        } => {
            let m = load(&circuit)?;
            let y = read_value(value.bits.as_deref(), value.int, m.output_bits(), "output")?;
            let (result, table_runs) = if blind {
                (invert_blind(&m, &y, seed, max_trials)?, 0)
            } else {
                let p = garbage_profile_with(&m, &config)?;
                (invert_with_profile(&m, &y, &p)?, p.forward_runs)
            };
            if json {
                print_json(&json!({
                    "output": y,
                    "result": result,
                    "input_value": int_of(&result.input_value),
                    "table_build_forward_runs": table_runs,
                }))
            } else {
                println!("output         {}", fmt_value(&y));
                for (i, a) in result.attempts.iter().enumerate() {
                    println!(
                        "trial {:>3}      garbage {}  -> input {}  presets {}",
                        i + 1,
                        a.config,
                        a.recovered,
                        if a.presets_match { "match" } else { "differ" }
                    );
                }
                println!("input          {}", fmt_value(&result.input_value));
                println!("garbage        {}", fmt_value(&result.matched_config));
                println!("trials         {}", result.trials);
                if !blind {
                    println!("table build    {table_runs} forward runs");
                    if !result.injective {
                        println!("note           machine is not injective; this is one pre-image of several");
                    }
                }
                Ok(())
            }
        }
        Command::Gen { kind, bits, out } => {
            let m = match kind {
                GenKind::Incr => incrementer(bits)?,
                GenKind::Decr => decrementer(bits)?,
                GenKind::Add => ripple_adder(bits)?,
            };
            emit(out.as_deref(), &serialize(&m))
        }
        Command::Check { circuit, json } => {
            let m = load(&circuit)?;
            let report = conformance_with(&m, &config)?;
            if json {
                print_json(&report)?;
            } else {
                for c in &report.clauses {
                    print!("{:<48} {}", c.clause, if c.passed { "pass" } else { "FAIL" });
                    if let Some(w) = c.witness {
                        print!("  (input {w})");
                    }
                    if let Some(d) = &c.detail {
                        print!("  {d}");
                    }
                    println!();
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(anyhow!(Error::RolePartition("declared interface does not hold".into())))
            }
        }
    }
}
