//! Gate-level circuit IR over the input gate set
//! {X, CNOT, CCNOT, Z, CZ, CCZ, H, S, S†, T, T†, SWAP}, plus
//! multiply-controlled NOTs that are expanded away before reduction.

use crate::error::PhageError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A wire: dense index plus the name it was declared with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireId {
    pub index: u32,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "wires")]
pub enum Gate {
    X(u32),
    Z(u32),
    S(u32),
    Sdg(u32),
    T(u32),
    Tdg(u32),
    H(u32),
    Cnot(u32, u32),
    Cz(u32, u32),
    Swap(u32, u32),
    Ccnot(u32, u32, u32),
    Ccz(u32, u32, u32),
    Mcnot(Vec<u32>, u32),
}

impl Gate {
    pub fn wires(&self) -> Vec<u32> {
        match self {
            Gate::X(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::H(q) => vec![*q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) | Gate::Swap(a, b) => vec![*a, *b],
            Gate::Ccnot(a, b, c) | Gate::Ccz(a, b, c) => vec![*a, *b, *c],
            Gate::Mcnot(cs, t) => {
                let mut v = cs.clone();
                v.push(*t);
                v
            }
        }
    }

    pub fn touches(&self, q: u32) -> bool {
        match self {
            Gate::X(a)
            | Gate::Z(a)
            | Gate::S(a)
            | Gate::Sdg(a)
            | Gate::T(a)
            | Gate::Tdg(a)
            | Gate::H(a) => *a == q,
            Gate::Cnot(a, b) | Gate::Cz(a, b) | Gate::Swap(a, b) => *a == q || *b == q,
            Gate::Ccnot(a, b, c) | Gate::Ccz(a, b, c) => *a == q || *b == q || *c == q,
            Gate::Mcnot(cs, t) => *t == q || cs.contains(&q),
        }
    }

    pub fn is_clifford(&self) -> bool {
        !matches!(
            self,
            Gate::T(_) | Gate::Tdg(_) | Gate::Ccnot(..) | Gate::Ccz(..) | Gate::Mcnot(..)
        )
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        matches!(
            self,
            Gate::Z(_)
                | Gate::S(_)
                | Gate::Sdg(_)
                | Gate::T(_)
                | Gate::Tdg(_)
                | Gate::Cz(..)
                | Gate::Ccz(..)
        )
    }

    /// True when the gate maps basis states to basis states (phase-free).
    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            Gate::X(_) | Gate::Cnot(..) | Gate::Swap(..) | Gate::Ccnot(..) | Gate::Mcnot(..)
        )
    }

    /// Plain commutation used by Clifford hoisting: no gate is transformed.
    /// Structural cases only: disjoint supports, two diagonal gates, or two
    /// classical-NOT-type gates whose target/control structure commutes.
    pub fn commutes_plainly(&self, other: &Gate) -> bool {
        let a = self.wires();
        let b = other.wires();
        if a.iter().all(|q| !b.contains(q)) {
            return true;
        }
        if self.is_diagonal() && other.is_diagonal() {
            return true;
        }
        // X-type pair: controlled-NOTs and X gates commute when neither
        // gate's target is the other's control.
        if let (Some((ca, ta)), Some((cb, tb))) = (self.not_structure(), other.not_structure()) {
            let a_target_in_b_ctl = cb.contains(&ta);
            let b_target_in_a_ctl = ca.contains(&tb);
            return !a_target_in_b_ctl && !b_target_in_a_ctl;
        }
        // diagonal vs NOT-type gate touching only the NOT's controls
        if let Some((ctl, t)) = self.not_structure() {
            if other.is_diagonal() && !other.touches(t) {
                let _ = ctl;
                return true;
            }
        }
        if let Some((ctl, t)) = other.not_structure() {
            if self.is_diagonal() && !self.touches(t) {
                let _ = ctl;
                return true;
            }
        }
        false
    }

    /// (controls, target) for X / CNOT / CCNOT / MCNOT.
    fn not_structure(&self) -> Option<(Vec<u32>, u32)> {
        match self {
            Gate::X(t) => Some((vec![], *t)),
            Gate::Cnot(c, t) => Some((vec![*c], *t)),
            Gate::Ccnot(c1, c2, t) => Some((vec![*c1, *c2], *t)),
            Gate::Mcnot(cs, t) => Some((cs.clone(), *t)),
            _ => None,
        }
    }

    pub fn check_distinct(&self) -> Result<(), PhageError> {
        let mut w = self.wires();
        let n = w.len();
        w.sort_unstable();
        w.dedup();
        if w.len() != n {
            return Err(PhageError::RepeatedWire {
                line: 0,
                gate: format!("{:?}", self),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::X(q) => write!(f, "X {}", q),
            Gate::Z(q) => write!(f, "Z {}", q),
            Gate::S(q) => write!(f, "S {}", q),
            Gate::Sdg(q) => write!(f, "S* {}", q),
            Gate::T(q) => write!(f, "T {}", q),
            Gate::Tdg(q) => write!(f, "T* {}", q),
            Gate::H(q) => write!(f, "H {}", q),
            Gate::Cnot(c, t) => write!(f, "tof {} {}", c, t),
            Gate::Cz(a, b) => write!(f, "Z {} {}", a, b),
            Gate::Swap(a, b) => write!(f, "swap {} {}", a, b),
            Gate::Ccnot(a, b, c) => write!(f, "tof {} {} {}", a, b, c),
            Gate::Ccz(a, b, c) => write!(f, "Z {} {} {}", a, b, c),
            Gate::Mcnot(cs, t) => {
                write!(f, "tof")?;
                for c in cs {
                    write!(f, " {}", c)?;
                }
                write!(f, " {}", t)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub wires: Vec<WireId>,
    pub gates: Vec<Gate>,
    /// Declared primary inputs (`.i` line), indices into `wires`.
    pub inputs: Vec<u32>,
    /// Declared primary outputs (`.o` line).
    pub outputs: Vec<u32>,
}

/// Bump `name` with a numeric suffix until `taken` stops matching.
pub(crate) fn unique_name(name: String, taken: impl Fn(&str) -> bool) -> String {
    if !taken(&name) {
        return name;
    }
    let mut bump = 1usize;
    loop {
        let candidate = format!("{}_{}", name, bump);
        if !taken(&candidate) {
            return candidate;
        }
        bump += 1;
    }
}

impl Circuit {
    pub fn new(names: Vec<String>) -> Self {
        let wires = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| WireId {
                index: i as u32,
                name,
            })
            .collect();
        Circuit {
            wires,
            gates: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn with_width(n: u32) -> Self {
        Self::new((0..n).map(|i| format!("q{}", i)).collect())
    }

    pub fn wire_count(&self) -> u32 {
        self.wires.len() as u32
    }

    pub fn push(&mut self, g: Gate) {
        debug_assert!(g.wires().iter().all(|q| *q < self.wire_count()));
        debug_assert!(g.check_distinct().is_ok());
        self.gates.push(g);
    }

    /// Append a wire, bumping the requested name until it is unique.
    pub fn fresh_wire(&mut self, name: String) -> u32 {
        let idx = self.wire_count();
        let unique = unique_name(name, |n| self.wires.iter().any(|w| w.name == n));
        self.wires.push(WireId {
            index: idx,
            name: unique,
        });
        idx
    }

    /// T gates plus 7 per CCNOT/CCZ (and per CCNOT a multi-control expands
    /// to); the pre-reduction cost reported for context.
    pub fn naive_t_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::T(_) | Gate::Tdg(_) => 1,
                Gate::Ccnot(..) | Gate::Ccz(..) => 7,
                Gate::Mcnot(cs, _) => 7 * (2 * (cs.len() - 2) + 1),
                _ => 0,
            })
            .sum()
    }

    pub fn count_h(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::H(_)))
            .count()
    }

    /// Expand every multiply-controlled NOT with k >= 3 controls into the
    /// plain compute/uncompute CCNOT ladder on k-2 fresh ancillas, leaving
    /// the map on the original wires unchanged. Ancillas are appended after
    /// existing wires and named `_anc<k>`.
    pub fn expand_multi_controls(&self) -> Circuit {
        let mut out = Circuit {
            wires: self.wires.clone(),
            gates: Vec::with_capacity(self.gates.len()),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        };
        let mut anc_counter = 0usize;
        for g in &self.gates {
            match g {
                Gate::Mcnot(cs, t) => {
                    assert!(cs.len() >= 3);
                    let mut ancs = Vec::with_capacity(cs.len() - 2);
                    for _ in 0..cs.len() - 2 {
                        let a = out.fresh_wire(format!("_anc{}", anc_counter));
                        anc_counter += 1;
                        ancs.push(a);
                    }
                    let mut compute = Vec::new();
                    compute.push(Gate::Ccnot(cs[0], cs[1], ancs[0]));
                    for i in 1..cs.len() - 2 {
                        compute.push(Gate::Ccnot(ancs[i - 1], cs[i + 1], ancs[i]));
                    }
                    for c in &compute {
                        out.push(c.clone());
                    }
                    out.push(Gate::Ccnot(*ancs.last().unwrap(), *cs.last().unwrap(), *t));
                    for c in compute.iter().rev() {
                        out.push(c.clone());
                    }
                }
                other => out.push(other.clone()),
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), PhageError> {
        let n = self.wire_count();
        for g in &self.gates {
            if g.wires().iter().any(|q| *q >= n) {
                return Err(PhageError::QcSyntax {
                    line: 0,
                    msg: format!("gate {} references wire out of range", g),
                });
            }
            g.check_distinct()?;
        }
        Ok(())
    }
}
