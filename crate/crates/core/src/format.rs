//! The `.rvc` circuit document format.
//!
//! ```text
//! # comment
//! width 4
//! input 0 1 2
//! preset 3=0
//! output 0 1 2
//! garbage 3
//! restored
//! gate ccx 0 1 3
//! gate cx 3 2
//! ```
//!
//! Directives come first, each at most once; `width` is required and the
//! others default to empty. Region lists are in significance order, the first
//! listed line being bit 0. Gates list controls before the target.
//!
//! [`serialize`] emits the canonical form: all six directives in the order
//! above, one gate per line, single spaces, lowercase mnemonics.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::error::Error;
use crate::ir::{Circuit, Gate, GateKind, InterfaceSpec, Machine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    IndexOutOfRange,
    RolePartition,
    DuplicateLineInGate,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::IndexOutOfRange => "index out of range",
            ParseErrorKind::RolePartition => "role partition violation",
            ParseErrorKind::DuplicateLineInGate => "duplicate line in gate",
        })
    }
}

/// A document error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
            message: message.into(),
        }
    }
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &content[s..i],
                    line: line_no,
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    tokens
}

fn parse_index(tok: &Token<'_>) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| tok.error(ParseErrorKind::Syntax, format!("expected a line index, found {:?}", tok.text)))
}

fn parse_assignment(tok: &Token<'_>) -> Result<(usize, bool), ParseError> {
    let bad = || tok.error(ParseErrorKind::Syntax, format!("expected LINE=0 or LINE=1, found {:?}", tok.text));
    let (idx, val) = tok.text.split_once('=').ok_or_else(bad)?;
    let idx = idx.parse().map_err(|_| bad())?;
    let val = match val {
        "0" => false,
        "1" => true,
        _ => return Err(bad()),
    };
    Ok((idx, val))
}

// a directive keyword with its items, each item keeping its token for errors
type LineList<'a> = Option<(Token<'a>, Vec<(Token<'a>, usize)>)>;
type ConstList<'a> = Option<(Token<'a>, Vec<(Token<'a>, (usize, bool))>)>;

#[derive(Default)]
struct Directives<'a> {
    width: Option<(Token<'a>, usize)>,
    input: LineList<'a>,
    preset: ConstList<'a>,
    output: LineList<'a>,
    garbage: LineList<'a>,
    restored: ConstList<'a>,
}

fn set_once<T>(slot: &mut Option<T>, value: T, tok: &Token<'_>) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(tok.error(ParseErrorKind::Syntax, format!("duplicate directive {:?}", tok.text)));
    }
    *slot = Some(value);
    Ok(())
}

fn check_range<'a, T>(
    width: usize,
    items: &[(Token<'a>, T)],
    index: impl Fn(&T) -> usize,
) -> Result<(), ParseError> {
    for (tok, item) in items {
        let i = index(item);
        if i >= width {
            return Err(tok.error(
                ParseErrorKind::IndexOutOfRange,
                format!("line {i} is out of range for width {width}"),
            ));
        }
    }
    Ok(())
}

/// Parses a `.rvc` document into a validated [`Machine`].
pub fn parse_circuit(text: &str) -> Result<Machine, ParseError> {
    let mut dirs = Directives::default();
    let mut gates: Vec<(Token<'_>, Gate)> = Vec::new();
    let mut last_directive = Token {
        text: "",
        line: 1,
        column: 1,
    };

    for (no, raw) in text.lines().enumerate() {
        let toks = tokenize(no + 1, raw);
        let Some((head, args)) = toks.split_first() else {
            continue;
        };
        if head.text == "gate" {
            let Some((mn, operands)) = args.split_first() else {
                return Err(head.error(ParseErrorKind::Syntax, "gate statement needs a mnemonic"));
            };
            let kind = GateKind::from_mnemonic(mn.text)
                .ok_or_else(|| mn.error(ParseErrorKind::Syntax, format!("unknown gate {:?}", mn.text)))?;
            if operands.len() != kind.arity() + 1 {
                return Err(mn.error(
                    ParseErrorKind::Syntax,
                    format!("gate {} takes {} line(s), found {}", kind, kind.arity() + 1, operands.len()),
                ));
            }
            let lines = operands.iter().map(parse_index).collect::<Result<Vec<_>, _>>()?;
            let (target, controls) = lines.split_last().expect("arity checked");
            let gate = Gate::new(kind, controls, *target).map_err(|e| match e {
                Error::DuplicateLine(l) => mn.error(
                    ParseErrorKind::DuplicateLineInGate,
                    format!("line {l} used twice in gate"),
                ),
                other => mn.error(ParseErrorKind::Syntax, other.to_string()),
            })?;
            gates.push((*head, gate));
            continue;
        }
        if !gates.is_empty() {
            return Err(head.error(ParseErrorKind::Syntax, "directives must precede gate statements"));
        }
        last_directive = *head;
        let indices = || {
            args.iter()
                .map(|t| parse_index(t).map(|i| (*t, i)))
                .collect::<Result<Vec<_>, _>>()
        };
        let assignments = || {
            args.iter()
                .map(|t| parse_assignment(t).map(|a| (*t, a)))
                .collect::<Result<Vec<_>, _>>()
        };
        match head.text {
            "width" => {
                let [w] = args else {
                    return Err(head.error(ParseErrorKind::Syntax, "width takes exactly one value"));
                };
                let value = parse_index(w)?;
                if value == 0 {
                    return Err(w.error(ParseErrorKind::Syntax, "width must be positive"));
                }
                set_once(&mut dirs.width, (*head, value), head)?;
            }
            "input" => set_once(&mut dirs.input, (*head, indices()?), head)?,
            "preset" => set_once(&mut dirs.preset, (*head, assignments()?), head)?,
            "output" => set_once(&mut dirs.output, (*head, indices()?), head)?,
            "garbage" => set_once(&mut dirs.garbage, (*head, indices()?), head)?,
            "restored" => set_once(&mut dirs.restored, (*head, assignments()?), head)?,
            other => {
                return Err(head.error(ParseErrorKind::Syntax, format!("unknown directive {other:?}")))
            }
        }
    }

    let (_, width) = dirs.width.ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::Syntax,
        message: "missing width directive".into(),
    })?;
    let list = |d: &LineList<'_>| -> Result<Vec<usize>, ParseError> {
        let items = d.as_ref().map(|d| d.1.as_slice()).unwrap_or(&[]);
        check_range(width, items, |&i| i)?;
        Ok(items.iter().map(|p| p.1).collect())
    };
    let pairs = |d: &ConstList<'_>| -> Result<Vec<(usize, bool)>, ParseError> {
        let items = d.as_ref().map(|d| d.1.as_slice()).unwrap_or(&[]);
        check_range(width, items, |p| p.0)?;
        Ok(items.iter().map(|p| p.1).collect())
    };
    let input = list(&dirs.input)?;
    let preset = pairs(&dirs.preset)?;
    let output = list(&dirs.output)?;
    let garbage = list(&dirs.garbage)?;
    let restored = pairs(&dirs.restored)?;
    let iface = InterfaceSpec::new(width, input, preset, output, garbage, restored)
        .map_err(|e| last_directive.error(ParseErrorKind::RolePartition, e.to_string()))?;

    let mut circuit = Circuit::new(width).expect("width is positive");
    for (tok, gate) in gates {
        circuit.push(gate).map_err(|e| tok.error(ParseErrorKind::IndexOutOfRange, e.to_string()))?;
    }
    Ok(Machine::new(circuit, iface).expect("widths agree"))
}

/// Canonical text form of `m`.
pub fn serialize(m: &Machine) -> String {
    let iface = m.iface();
    let mut out = String::new();
    let directive = |out: &mut String, name: &str, items: &mut dyn Iterator<Item = String>| {
        out.push_str(name);
        for item in items {
            out.push(' ');
            out.push_str(&item);
        }
        out.push('\n');
    };
    let assign = |&(l, v): &(usize, bool)| format!("{l}={}", u8::from(v));
    writeln!(out, "width {}", m.width()).unwrap();
    directive(&mut out, "input", &mut iface.input_lines().iter().map(usize::to_string));
    directive(&mut out, "preset", &mut iface.preset_lines().iter().map(assign));
    directive(&mut out, "output", &mut iface.output_lines().iter().map(usize::to_string));
    directive(&mut out, "garbage", &mut iface.garbage_lines().iter().map(usize::to_string));
    directive(&mut out, "restored", &mut iface.restored_lines().iter().map(assign));
    for g in m.circuit().gates() {
        out.push_str("gate ");
        out.push_str(g.kind().mnemonic());
        for l in g.lines() {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdlib::incrementer;

    #[test]
    fn minimal_document() {
        let m = parse_circuit("width 1\ninput 0\noutput 0\ngate x 0\n").unwrap();
        assert_eq!(m.width(), 1);
        assert_eq!(m.circuit().gates(), &[Gate::x(0)]);
        assert_eq!(
            serialize(&m),
            "width 1\ninput 0\npreset\noutput 0\ngarbage\nrestored\ngate x 0\n"
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let m = parse_circuit("# header\n\nwidth 2  # two lines\ninput 0 1\noutput 1 0\n\ngate cx 0 1\n").unwrap();
        assert_eq!(m.iface().output_lines(), &[1, 0]);
    }

    #[test]
    fn ccx_line_format() {
        let iface = InterfaceSpec::new(6, (0..6).collect(), vec![], (0..6).collect(), vec![], vec![]).unwrap();
        let c = Circuit::from_gates(6, [Gate::ccx(0, 1, 5).unwrap()]).unwrap();
        let text = serialize(&Machine::new(c, iface).unwrap());
        assert!(text.ends_with("gate ccx 0 1 5\n"));
    }

    #[test]
    fn incrementer_statement_counts() {
        let text = serialize(&incrementer(3).unwrap());
        let count = |p: &str| text.lines().filter(|l| l.starts_with(p)).count();
        assert_eq!(count("gate ccx "), 1);
        assert_eq!(count("gate cx "), 2);
        assert_eq!(count("gate x "), 1);
    }

    fn err(text: &str) -> ParseError {
        parse_circuit(text).unwrap_err()
    }

    #[test]
    fn errors_carry_position_and_kind() {
        let e = err("width 4\ninput 0 1 2 3\noutput 0 1 2 3\ngate cx 1 9\n");
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::IndexOutOfRange, 4, 1));

        let e = err("width 2\ninput 0 1\noutput 0 1\ngate cx 1 1\n");
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::DuplicateLineInGate, 4, 6));

        let e = err("width 2\ninput 0\noutput 0 1\n");
        assert_eq!(e.kind, ParseErrorKind::RolePartition);

        let e = err("width 2\ninput 0 5\noutput 0 1\n");
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::IndexOutOfRange, 2, 9));

        let e = err("width 2\ninput 0 1\noutput 0 1\nfoo 3\n");
        assert_eq!((e.kind, e.line), (ParseErrorKind::Syntax, 4));

        let e = err("width 2\ninput 0 1\ngate x 0\noutput 0 1\n");
        assert_eq!((e.kind, e.line), (ParseErrorKind::Syntax, 4));

        let e = err("width 2\nwidth 2\n");
        assert_eq!((e.kind, e.line), (ParseErrorKind::Syntax, 2));

        let e = err("width 1\ninput 0\noutput 0\ngate toffoli 0\n");
        assert_eq!((e.kind, e.column), (ParseErrorKind::Syntax, 6));

        let e = err("width 2\ninput 0\npreset 1=2\noutput 0 1\n");
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::Syntax, 3, 8));

        let e = err("input 0\n");
        assert_eq!(e.kind, ParseErrorKind::Syntax);

        let e = err("width 1\ninput 0\noutput 0\ngate ccx 0\n");
        assert_eq!(e.kind, ParseErrorKind::Syntax);
    }
}
