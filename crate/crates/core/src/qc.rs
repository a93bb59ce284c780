//! Reader and writer for the `.qc` benchmark dialect.
//!
//! Header: `.v <names...>` (required), `.i` / `.o` (optional). Body between
//! `BEGIN` and `END`, one gate per line. `tof` with one control is CNOT, two
//! controls CCNOT, three or more a multiply-controlled NOT; `Z` with two or
//! three arguments is CZ / CCZ. `#` starts a comment. Mnemonics are
//! case-sensitive; anything unrecognized is a hard error.

use crate::circuit::{Circuit, Gate, WireId};
use crate::error::PhageError;
use std::collections::HashMap;

pub fn parse_qc(text: &str) -> Result<Circuit, PhageError> {
    let mut names: Vec<String> = Vec::new();
    let mut name_index: HashMap<String, u32> = HashMap::new();
    let mut inputs: Vec<u32> = Vec::new();
    let mut outputs: Vec<u32> = Vec::new();
    let mut gates: Vec<Gate> = Vec::new();
    let mut seen_v = false;
    let mut in_body = false;
    let mut ended = false;

    for (ln0, raw) in text.lines().enumerate() {
        let ln = ln0 + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let head = toks[0];

        if !in_body {
            match head {
                ".v" => {
                    for t in &toks[1..] {
                        if name_index.contains_key(*t) {
                            return Err(PhageError::QcSyntax {
                                line: ln,
                                msg: format!("duplicate wire name `{}`", t),
                            });
                        }
                        name_index.insert((*t).to_string(), names.len() as u32);
                        names.push((*t).to_string());
                    }
                    seen_v = true;
                }
                ".i" | ".o" => {
                    let dst = if head == ".i" {
                        &mut inputs
                    } else {
                        &mut outputs
                    };
                    for t in &toks[1..] {
                        let idx =
                            *name_index
                                .get(*t)
                                .ok_or_else(|| PhageError::UndeclaredWire {
                                    line: ln,
                                    name: (*t).to_string(),
                                })?;
                        dst.push(idx);
                    }
                }
                "BEGIN" => {
                    if !seen_v {
                        return Err(PhageError::QcSyntax {
                            line: ln,
                            msg: "BEGIN before any .v declaration".into(),
                        });
                    }
                    in_body = true;
                }
                _ => {
                    return Err(PhageError::QcSyntax {
                        line: ln,
                        msg: format!("unexpected header line `{}`", head),
                    })
                }
            }
            continue;
        }

        if head == "END" {
            in_body = false;
            ended = true;
            continue;
        }
        if ended {
            return Err(PhageError::QcSyntax {
                line: ln,
                msg: "content after END".into(),
            });
        }

        let args: Result<Vec<u32>, PhageError> = toks[1..]
            .iter()
            .map(|t| {
                name_index
                    .get(*t)
                    .copied()
                    .ok_or_else(|| PhageError::UndeclaredWire {
                        line: ln,
                        name: (*t).to_string(),
                    })
            })
            .collect();
        let args = args?;
        let arity_err = |expected: &str| PhageError::ArityMismatch {
            line: ln,
            gate: head.to_string(),
            got: args.len(),
            expected: expected.to_string(),
        };

        let gate = match head {
            "H" => Gate::H(*args.first().ok_or_else(|| arity_err("1"))?),
            "X" => Gate::X(*args.first().ok_or_else(|| arity_err("1"))?),
            "S" => Gate::S(*args.first().ok_or_else(|| arity_err("1"))?),
            "S*" => Gate::Sdg(*args.first().ok_or_else(|| arity_err("1"))?),
            "T" => Gate::T(*args.first().ok_or_else(|| arity_err("1"))?),
            "T*" => Gate::Tdg(*args.first().ok_or_else(|| arity_err("1"))?),
            "Z" => match args.len() {
                1 => Gate::Z(args[0]),
                2 => Gate::Cz(args[0], args[1]),
                3 => Gate::Ccz(args[0], args[1], args[2]),
                _ => return Err(arity_err("1..3")),
            },
            "tof" => match args.len() {
                2 => Gate::Cnot(args[0], args[1]),
                3 => Gate::Ccnot(args[0], args[1], args[2]),
                k if k >= 4 => Gate::Mcnot(args[..k - 1].to_vec(), args[k - 1]),
                _ => return Err(arity_err("2 or more")),
            },
            "cnot" => {
                if args.len() != 2 {
                    return Err(arity_err("2"));
                }
                Gate::Cnot(args[0], args[1])
            }
            "swap" => {
                if args.len() != 2 {
                    return Err(arity_err("2"));
                }
                Gate::Swap(args[0], args[1])
            }
            other => {
                return Err(PhageError::UnknownGate {
                    line: ln,
                    gate: other.to_string(),
                })
            }
        };
        if gate.check_distinct().is_err() {
            return Err(PhageError::RepeatedWire {
                line: ln,
                gate: head.to_string(),
            });
        }
        // matches the mnemonic checks above; extra args on 1-wire gates are errors
        let expected_arity = match &gate {
            Gate::Mcnot(cs, _) => cs.len() + 1,
            g => g.wires().len(),
        };
        if args.len() != expected_arity {
            return Err(arity_err(&expected_arity.to_string()));
        }
        gates.push(gate);
    }

    if !seen_v {
        return Err(PhageError::QcSyntax {
            line: 0,
            msg: "missing .v declaration".into(),
        });
    }
    if in_body || !ended {
        return Err(PhageError::QcSyntax {
            line: 0,
            msg: "missing BEGIN/END body".into(),
        });
    }

    let wires = names
        .into_iter()
        .enumerate()
        .map(|(i, name)| WireId {
            index: i as u32,
            name,
        })
        .collect();
    let c = Circuit {
        wires,
        gates,
        inputs,
        outputs,
    };
    c.validate()?;
    Ok(c)
}

pub fn write_qc(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str(".v");
    for w in &c.wires {
        out.push(' ');
        out.push_str(&w.name);
    }
    out.push('\n');
    if !c.inputs.is_empty() {
        out.push_str(".i");
        for i in &c.inputs {
            out.push(' ');
            out.push_str(&c.wires[*i as usize].name);
        }
        out.push('\n');
    }
    if !c.outputs.is_empty() {
        out.push_str(".o");
        for i in &c.outputs {
            out.push(' ');
            out.push_str(&c.wires[*i as usize].name);
        }
        out.push('\n');
    }
    out.push_str("\nBEGIN\n");
    for g in &c.gates {
        out.push_str(&format_gate(c, g));
        out.push('\n');
    }
    out.push_str("END\n");
    out
}

pub fn format_gate(c: &Circuit, g: &Gate) -> String {
    let n = |q: &u32| c.wires[*q as usize].name.clone();
    match g {
        Gate::X(q) => format!("X {}", n(q)),
        Gate::Z(q) => format!("Z {}", n(q)),
        Gate::S(q) => format!("S {}", n(q)),
        Gate::Sdg(q) => format!("S* {}", n(q)),
        Gate::T(q) => format!("T {}", n(q)),
        Gate::Tdg(q) => format!("T* {}", n(q)),
        Gate::H(q) => format!("H {}", n(q)),
        Gate::Cnot(a, b) => format!("tof {} {}", n(a), n(b)),
        Gate::Cz(a, b) => format!("Z {} {}", n(a), n(b)),
        Gate::Swap(a, b) => format!("swap {} {}", n(a), n(b)),
        Gate::Ccnot(a, b, t) => format!("tof {} {} {}", n(a), n(b), n(t)),
        Gate::Ccz(a, b, t) => format!("Z {} {} {}", n(a), n(b), n(t)),
        Gate::Mcnot(cs, t) => {
            let mut s = "tof".to_string();
            for cq in cs {
                s.push(' ');
                s.push_str(&n(cq));
            }
            s.push(' ');
            s.push_str(&n(t));
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let c = parse_qc(".v a b\nBEGIN\ntof a b\nEND").unwrap();
        assert_eq!(c.wire_count(), 2);
        assert_eq!(c.gates, vec![Gate::Cnot(0, 1)]);
    }

    #[test]
    fn three_arg_tof_is_ccnot() {
        let c = parse_qc(".v a b c\nBEGIN\ntof a b c\nEND").unwrap();
        assert_eq!(c.gates, vec![Gate::Ccnot(0, 1, 2)]);
    }

    #[test]
    fn z_arities() {
        let c = parse_qc(".v a b c\nBEGIN\nZ a\nZ a b\nZ a b c\nEND").unwrap();
        assert_eq!(
            c.gates,
            vec![Gate::Z(0), Gate::Cz(0, 1), Gate::Ccz(0, 1, 2)]
        );
    }

    #[test]
    fn unknown_mnemonic_is_hard_error() {
        let r = parse_qc(".v a\nBEGIN\nY a\nEND");
        assert!(matches!(r, Err(PhageError::UnknownGate { .. })));
    }

    #[test]
    fn undeclared_wire_rejected() {
        let r = parse_qc(".v a\nBEGIN\nH b\nEND");
        assert!(matches!(r, Err(PhageError::UndeclaredWire { .. })));
    }

    #[test]
    fn repeated_wire_rejected() {
        let r = parse_qc(".v a b\nBEGIN\ntof a a\nEND");
        assert!(matches!(r, Err(PhageError::RepeatedWire { .. })));
    }

    #[test]
    fn comments_and_io_lines() {
        let c = parse_qc(".v a b c # wires\n.i a b\n.o c\nBEGIN\nH a # kick\nEND").unwrap();
        assert_eq!(c.inputs, vec![0, 1]);
        assert_eq!(c.outputs, vec![2]);
        assert_eq!(c.gates.len(), 1);
    }

    #[test]
    fn write_contains_t_line_and_round_trips() {
        let mut c = Circuit::new(vec!["a".into()]);
        c.push(Gate::T(0));
        let doc = write_qc(&c);
        assert!(doc.contains("T a"));
        assert_eq!(parse_qc(&doc).unwrap(), c);
    }

    #[test]
    fn empty_body_round_trips() {
        let c = Circuit::new(vec!["a".into(), "b".into()]);
        let doc = write_qc(&c);
        assert!(doc.contains("BEGIN"));
        assert_eq!(parse_qc(&doc).unwrap(), c);
    }

    #[test]
    fn mcnot_round_trips() {
        let text = ".v a b c d e\nBEGIN\ntof a b c d e\nEND";
        let c = parse_qc(text).unwrap();
        assert_eq!(c.gates, vec![Gate::Mcnot(vec![0, 1, 2, 3], 4)]);
        assert_eq!(parse_qc(&write_qc(&c)).unwrap(), c);
    }
}
