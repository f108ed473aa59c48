//! Golden `.rvc` files: each must parse, conform, stay byte-stable under
//! canonical serialization, match the library constructor that produced it,
//! and realise its documented function.

use std::fs;
use std::path::PathBuf;

use revkit::garbage::conformance;
use revkit::{
    bennett, decrementer, incrementer, parse_circuit, ripple_adder, serialize, truth_table,
    zero_garbage_compose, Machine,
};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

type Oracle = fn(u64) -> (u64, u64);

/// (file, freshly built machine, expected output and garbage per input value)
fn cases() -> Vec<(&'static str, Machine, Oracle)> {
    vec![
        ("incr3.rvc", incrementer(3).unwrap(), |x| ((x + 1) % 8, u64::from(x & 3 == 3))),
        ("incr5.rvc", incrementer(5).unwrap(), |x| {
            let chain = (1..=3).filter(|&i| (0..=i).all(|j| x >> j & 1 == 1)).map(|i| 1 << (i - 1)).sum();
            ((x + 1) % 32, chain)
        }),
        ("decr3.rvc", decrementer(3).unwrap(), |x| ((x + 7) % 8, u64::from(x & 3 == 0))),
        ("adder2.rvc", ripple_adder(2).unwrap(), |v| {
            let (a, b) = (v & 3, v >> 2);
            (((a + b) & 3) | b << 2, a & b & 1)
        }),
        ("adder3.rvc", ripple_adder(3).unwrap(), |v| {
            let (a, b) = (v & 7, v >> 3);
            // carries into positions 1 and 2
            let c1 = a & b & 1;
            let c2 = ((a >> 1 & 1) + (b >> 1 & 1) + c1) >> 1;
            (((a + b) & 7) | b << 3, c1 | c2 << 1)
        }),
        ("bennett_incr3.rvc", bennett(&incrementer(3).unwrap()).unwrap(), |x| ((x + 1) % 8, x)),
        (
            "zg_incr4_decr4.rvc",
            zero_garbage_compose(&incrementer(4).unwrap(), &decrementer(4).unwrap()).unwrap(),
            |x| ((x + 1) % 16, 0),
        ),
    ]
}

#[test]
fn golden_files_hold() {
    for (file, built, oracle) in cases() {
        let text = fs::read_to_string(golden_dir().join(file)).unwrap();
        let m = parse_circuit(&text).unwrap_or_else(|e| panic!("{file}: {e}"));
        assert_eq!(serialize(&m), text, "{file} is not canonical");
        assert_eq!(m, built, "{file} differs from its constructor");
        assert!(conformance(&m).unwrap().passed(), "{file} fails conformance");
        let t = truth_table(&m).unwrap();
        for x in 0..t.len() as u64 {
            let row = t.row(x).unwrap();
            let got = (row.output.to_u64().unwrap(), row.garbage.to_u64().unwrap());
            assert_eq!(got, oracle(x), "{file} row {x}");
        }
    }
}
