//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p revkit-core --test acceptance -- --nocapture`.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use revkit::garbage::garbage_profile;
use revkit::sim::run_machine;
use revkit::{
    bennett, decrementer, incrementer, invert_blind, invert_with_profile, parse_circuit, ripple_adder, run,
    serialize, step, truth_table, zero_garbage_compose, Bits, Direction, Gate, Machine,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn bits(v: u64, n: usize) -> Bits {
    Bits::from_u64(v, n).unwrap()
}

/// 1. CCX truth table, all 8 rows.
fn toffoli_semantics() -> Outcome {
    let start = Instant::now();
    let g = Gate::ccx(0, 1, 2).unwrap();
    for v in 0..8u64 {
        let (a, b, c) = (v & 1 == 1, v >> 1 & 1 == 1, v >> 2 & 1 == 1);
        let out = step(&bits(v, 3), &g).map_err(|e| e.to_string())?;
        let expect_c = if a && b { !c } else { c };
        ensure(out.get(0) == a && out.get(1) == b && out.get(2) == expect_c, || {
            format!("row a={a} b={b} c={c} gave {out}")
        })?;
    }
    within(Duration::from_secs(1), start)
}

/// 2. backward after forward is the identity on every state, width <= 8.
fn reversibility() -> Outcome {
    let start = Instant::now();
    let mut machines: Vec<(String, Machine)> = Vec::new();
    for n in 2..=5 {
        machines.push((format!("incr({n})"), incrementer(n).unwrap()));
        machines.push((format!("decr({n})"), decrementer(n).unwrap()));
        machines.push((format!("bennett(incr({n}))"), bennett(&incrementer(n).unwrap()).unwrap()));
        machines.push((
            format!("zg(incr({n}),decr({n}))"),
            zero_garbage_compose(&incrementer(n).unwrap(), &decrementer(n).unwrap()).unwrap(),
        ));
    }
    for n in 1..=3 {
        machines.push((format!("adder({n})"), ripple_adder(n).unwrap()));
        machines.push((format!("bennett(adder({n}))"), bennett(&ripple_adder(n).unwrap()).unwrap()));
    }
    let mut checked = 0;
    for (name, m) in machines.iter().filter(|(_, m)| m.width() <= 8) {
        let w = m.width();
        for v in 0..1u64 << w {
            let s = bits(v, w);
            let fwd = run(m.circuit(), &s, Direction::Forward).unwrap();
            let back = run(m.circuit(), &fwd, Direction::Backward).unwrap();
            ensure(back == s, || format!("{name}: state {s} came back as {back}"))?;
        }
        checked += 1;
    }
    ensure(checked >= 15, || format!("only {checked} machines had width <= 8"))?;
    within(Duration::from_secs(10), start)
}

/// 3. compute-copy-uncompute on the incrementer, n <= 6.
fn bennett_theorem() -> Outcome {
    for n in 2..=6 {
        let base = incrementer(n).unwrap();
        let m = bennett(&base).unwrap();
        ensure(m.garbage_bits() == m.input_bits(), || {
            format!("n={n}: {} garbage lines vs {} input lines", m.garbage_bits(), m.input_bits())
        })?;
        for x in 0..1u64 << n {
            let s = run_machine(&m, &bits(x, n)).unwrap();
            let iface = m.iface();
            ensure(s.gather(iface.input_lines()).to_u64() == Some(x), || format!("n={n} x={x}: input lines changed"))?;
            ensure(
                iface.restored_lines().iter().all(|&(l, v)| s.get(l) == v)
                    && iface.restored_lines().len() == base.iface().preset_lines().len(),
                || format!("n={n} x={x}: presets not restored"),
            )?;
            ensure(s.gather(iface.output_lines()).to_u64() == Some((x + 1) % (1 << n)), || {
                format!("n={n} x={x}: wrong output")
            })?;
        }
    }
    Ok(())
}

/// 4. zero-garbage composition of incrementer and decrementer, n <= 6.
fn zero_garbage_theorem() -> Outcome {
    for n in 2..=6 {
        let m = zero_garbage_compose(&incrementer(n).unwrap(), &decrementer(n).unwrap()).unwrap();
        let p = garbage_profile(&m).unwrap();
        ensure(p.config_count == 1 && m.garbage_bits() == 0, || {
            format!("n={n}: {} configs over {} garbage lines", p.config_count, m.garbage_bits())
        })?;
        let out = m.iface().output_lines().to_vec();
        for x in 0..1u64 << n {
            let s = run_machine(&m, &bits(x, n)).unwrap();
            ensure(s.gather(&out).to_u64() == Some((x + 1) % (1 << n)), || format!("n={n} x={x}: wrong output"))?;
            for l in (0..m.width()).filter(|l| !out.contains(l)) {
                ensure(Some(s.get(l)) == m.iface().preset_value(l), || {
                    format!("n={n} x={x}: line {l} not restored")
                })?;
            }
        }
    }
    Ok(())
}

/// 5. incrementer garbage configurations: n-1 of them, and the listed set at n=5.
fn incrementer_configs() -> Outcome {
    let start = Instant::now();
    for n in 2..=10 {
        let p = garbage_profile(&incrementer(n).unwrap()).unwrap();
        ensure(p.config_count == n - 1, || format!("n={n}: {} configs", p.config_count))?;
    }
    let p = garbage_profile(&incrementer(5).unwrap()).unwrap();
    // (c3 c2 c1) in {000, 001, 011, 111}
    let values: Vec<u64> = p.configs.iter().map(|c| c.to_u64().unwrap()).collect();
    ensure(values == [0b000, 0b001, 0b011, 0b111], || format!("n=5 configs {values:?}"))?;
    within(Duration::from_secs(5), start)
}

/// 6. profile-driven inversion of the incrementer, n <= 8.
fn table_inversion() -> Outcome {
    for n in 2..=8 {
        let m = incrementer(n).unwrap();
        let p = garbage_profile(&m).unwrap();
        for y in 0..1u64 << n {
            let r = invert_with_profile(&m, &bits(y, n), &p).map_err(|e| format!("n={n} y={y}: {e}"))?;
            let x = r.input_value.to_u64().unwrap();
            let s = run_machine(&m, &r.input_value).unwrap();
            ensure(s.gather(m.iface().output_lines()).to_u64() == Some(y), || {
                format!("n={n} y={y}: forward check failed for x={x}")
            })?;
            ensure((r.trials as usize) < n, || format!("n={n} y={y}: {} trials", r.trials))?;
        }
    }
    Ok(())
}

/// 7. blind guessing on incrementer(6): mean trials within 15% of 2^4.
fn blind_baseline() -> Outcome {
    let start = Instant::now();
    let m = incrementer(6).unwrap();
    let k = m.garbage_bits();
    ensure(k == 4, || format!("expected 4 garbage bits, got {k}"))?;
    let runs = 2000u64;
    let mut total = 0;
    for seed in 0..runs {
        let y = bits(seed % 64, 6);
        let r = invert_blind(&m, &y, seed, 1_000_000).map_err(|e| e.to_string())?;
        total += r.trials;
    }
    let mean = total as f64 / runs as f64;
    let expected = (1u64 << k) as f64;
    println!("    blind mean trials {mean:.3} over {runs} runs, expected {expected}");
    ensure((mean - expected).abs() <= 0.15 * expected, || format!("mean {mean}"))?;
    within(Duration::from_secs(30), start)
}

/// 8. ripple adder correctness and 2^(n-1) configurations.
fn ripple_adder_profile() -> Outcome {
    for n in 1..=4 {
        let m = ripple_adder(n).unwrap();
        let t = truth_table(&m).unwrap();
        let mask = (1u64 << n) - 1;
        for a in 0..=mask {
            for b in 0..=mask {
                let out = t.row(a | b << n).unwrap().output.to_u64().unwrap();
                ensure(out & mask == (a + b) & mask && out >> n == b, || {
                    format!("n={n} a={a} b={b}: got {out}")
                })?;
            }
        }
    }
    for n in 2..=5 {
        let p = garbage_profile(&ripple_adder(n).unwrap()).unwrap();
        ensure(p.config_count == 1 << (n - 1), || format!("n={n}: {} configs", p.config_count))?;
    }
    Ok(())
}

/// 9. golden files are byte-stable under parse then serialize.
fn golden_round_trip() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden");
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "rvc"))
        .collect();
    files.sort();
    ensure(files.len() >= 7, || format!("found {} golden files", files.len()))?;
    for f in files {
        let text = fs::read_to_string(&f).unwrap();
        let m = parse_circuit(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        let once = serialize(&m);
        ensure(once == text, || format!("{} not byte-stable", f.display()))?;
        ensure(serialize(&parse_circuit(&once).unwrap()) == once, || format!("{} not a fixpoint", f.display()))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 toffoli semantics", toffoli_semantics),
        ("2 reversibility, width <= 8", reversibility),
        ("3 bennett garbage equals input", bennett_theorem),
        ("4 zero-garbage composition", zero_garbage_theorem),
        ("5 incrementer configs n-1", incrementer_configs),
        ("6 table inversion", table_inversion),
        ("7 blind baseline mean 2^k", blind_baseline),
        ("8 ripple adder", ripple_adder_profile),
        ("9 golden round-trip", golden_round_trip),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  criterion {name}"),
            Err(why) => {
                println!("FAIL  criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
