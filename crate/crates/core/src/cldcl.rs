//! Reduction of a gate circuit to Cl-D-Cl form: an initial Clifford layer,
//! a diagonal body of pi/4 parity-phase gadgets, X-basis measurements with
//! conditional corrections, and a final Clifford layer.
//!
//! CCNOTs become H-conjugated CCZs; self-inverse pairs cancel; interior
//! Hadamards are commuted to a circuit end where transformations of X, Z,
//! CZ, and CNOT-target gates allow it, and the survivors are replaced by
//! |+>-ancilla teleportation gadgets. Diagonal gates fold into the body
//! polynomial conjugated through the accumulated X/CNOT frame, which is
//! emitted into the final Clifford layer. A frame that feeds a pending
//! measurement wire into live wires is spliced into H-conjugated CZs first,
//! so that every measurement is a genuine single-wire X-basis event and the
//! final layer never touches a measured wire.

use crate::circuit::{Circuit, Gate};
use crate::error::PhageError;
use crate::parity::ParitySet;
use crate::poly::PhasePolynomial;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementEvent {
    /// Physical wire measured in the X basis.
    pub wire: u32,
    /// Classical outcome bit s_j.
    pub outcome_label: u32,
    /// Clifford corrections applied when the outcome is |->; carried as
    /// metadata, never expanded (post-selection semantics).
    pub corrections: Vec<Gate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClDClForm {
    pub width: u32,
    pub original_width: u32,
    pub wire_names: Vec<String>,
    /// Initial Clifford layer (applied after ancilla preparation).
    pub initial: Vec<Gate>,
    /// Ancilla wires prepared in |+>.
    pub preps: Vec<u32>,
    #[serde(with = "body_serde")]
    pub body: PhasePolynomial,
    pub measurements: Vec<MeasurementEvent>,
    /// Final Clifford layer, applied after all measurements.
    #[serde(rename = "final")]
    pub final_gates: Vec<Gate>,
    /// Original wire index -> output wire index.
    pub wire_map: Vec<u32>,
}

mod body_serde {
    use super::*;
    use serde::de::Error;

    pub fn serialize<S: serde::Serializer>(p: &PhasePolynomial, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(u8, Vec<u32>)> = p
            .sorted_terms()
            .into_iter()
            .map(|(set, c)| (c, set.indices()))
            .collect();
        (p.width(), terms).serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> Result<PhasePolynomial, D::Error> {
        let (width, terms): (u32, Vec<(u8, Vec<u32>)>) = Deserialize::deserialize(d)?;
        let mut p = PhasePolynomial::new(width);
        for (c, idx) in terms {
            if idx.iter().any(|i| *i >= width) {
                return Err(D::Error::custom("term wire out of range"));
            }
            p.add(ParitySet::from_indices(width, idx), c % 8);
        }
        Ok(p)
    }
}

impl ClDClForm {
    pub fn t_count(&self) -> usize {
        self.body.t_count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("form serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CldclStats {
    pub width: u32,
    pub extra_qubits: u32,
    pub t_count_after_fusion: usize,
}

fn is_self_inverse(g: &Gate) -> bool {
    matches!(
        g,
        Gate::H(_) | Gate::X(_) | Gate::Z(_) | Gate::Cz(..) | Gate::Swap(..) | Gate::Cnot(..)
    )
}

/// Equality up to argument symmetry (CZ and SWAP are orderless).
fn same_gate(a: &Gate, b: &Gate) -> bool {
    match (a, b) {
        (Gate::Cz(x1, y1), Gate::Cz(x2, y2)) | (Gate::Swap(x1, y1), Gate::Swap(x2, y2)) => {
            (x1, y1) == (x2, y2) || (x1, y1) == (y2, x2)
        }
        _ => a == b,
    }
}

type Tagged = (Gate, usize);

/// One cancellation sweep: remove a pair of identical self-inverse gates
/// separated only by gates that plainly commute with the first. Returns true
/// if anything was removed.
fn cancel_pass(gates: &mut Vec<Tagged>) -> bool {
    for i in 0..gates.len() {
        if !is_self_inverse(&gates[i].0) {
            continue;
        }
        let mut j = i + 1;
        while j < gates.len() {
            if same_gate(&gates[i].0, &gates[j].0) {
                gates.remove(j);
                gates.remove(i);
                return true;
            }
            if !gates[i].0.commutes_plainly(&gates[j].0) {
                break;
            }
            j += 1;
        }
    }
    false
}

#[derive(Debug, PartialEq)]
enum SlideOutcome {
    /// H reached the requested end of the segment and now rests there.
    Exited,
    /// H met its mirror image; both were removed.
    Cancelled,
    Blocked,
}

/// Move the H at `pos` toward one end, transforming X/Z/CZ/CNOT-target gates
/// as it passes and cancelling against a met H on the same wire. On `Blocked`
/// the segment is left untouched. Tags travel with their gates.
fn slide_h(gates: &mut Vec<Tagged>, pos: usize, rightward: bool) -> SlideOutcome {
    let Gate::H(mut q) = gates[pos].0 else {
        panic!("slide_h on a non-H gate")
    };
    let trial: Vec<Tagged> = gates.clone();
    let mut k = pos;
    loop {
        let next = if rightward { k + 1 } else { k.wrapping_sub(1) };
        if next >= gates.len() {
            return SlideOutcome::Exited;
        }
        let g = gates[next].0.clone();
        if !g.touches(q) {
            gates.swap(k, next);
            k = next;
            continue;
        }
        let replacement = match &g {
            Gate::H(_) => {
                let (a, b) = if k < next { (k, next) } else { (next, k) };
                gates.remove(b);
                gates.remove(a);
                return SlideOutcome::Cancelled;
            }
            Gate::X(w) => Some(Gate::Z(*w)),
            Gate::Z(w) => Some(Gate::X(*w)),
            Gate::Cnot(c, t) if *t == q => Some(Gate::Cz(*c, *t)),
            Gate::Cz(a, b) => {
                let other = if *a == q { *b } else { *a };
                Some(Gate::Cnot(other, q))
            }
            Gate::Swap(a, b) => {
                q = if *a == q { *b } else { *a };
                gates[k].0 = Gate::H(q);
                gates.swap(k, next);
                k = next;
                continue;
            }
            _ => None,
        };
        match replacement {
            Some(r) => {
                gates[next].0 = r;
                gates.swap(k, next);
                k = next;
            }
            None => {
                *gates = trial;
                return SlideOutcome::Blocked;
            }
        }
    }
}

/// Steps 1-4 of the reduction: expand CCNOT into H-conjugated CCZ, cancel
/// self-inverse pairs, then commute each interior H toward a circuit end
/// (nearer end first, one attempt per direction, no backtracking), and
/// re-cancel.
pub fn normalize_gates(c: &Circuit) -> Circuit {
    assert!(
        !c.gates.iter().any(|g| matches!(g, Gate::Mcnot(..))),
        "expand_multi_controls before normalize_gates"
    );
    let mut raw: Vec<Gate> = Vec::with_capacity(c.gates.len() * 2);
    for g in &c.gates {
        match g {
            Gate::Ccnot(a, b, t) => {
                raw.push(Gate::H(*t));
                raw.push(Gate::Ccz(*a, *b, *t));
                raw.push(Gate::H(*t));
            }
            other => raw.push(other.clone()),
        }
    }
    let mut gates: Vec<Tagged> = raw.into_iter().zip(0..).collect();

    while cancel_pass(&mut gates) {}

    // Earliest H first; tags make each H attempted exactly once even as
    // slides and cancellations shuffle positions.
    let worklist: Vec<usize> = gates
        .iter()
        .filter(|(g, _)| matches!(g, Gate::H(_)))
        .map(|(_, t)| *t)
        .collect();
    for tag in worklist {
        let Some(pos) = gates.iter().position(|(_, t)| *t == tag) else {
            continue; // cancelled against an earlier H
        };
        let toward_right = gates.len() - 1 - pos <= pos;
        if matches!(
            slide_h(&mut gates, pos, toward_right),
            SlideOutcome::Blocked
        ) {
            let pos = gates.iter().position(|(_, t)| *t == tag).unwrap();
            let _ = slide_h(&mut gates, pos, !toward_right);
        }
    }

    while cancel_pass(&mut gates) {}

    Circuit {
        wires: c.wires.clone(),
        gates: gates.into_iter().map(|(g, _)| g).collect(),
        inputs: c.inputs.clone(),
        outputs: c.outputs.clone(),
    }
}

/// Length of the initial Clifford layer: the longest leading run of H and
/// diagonal Clifford gates, truncated after its last H. Diagonal gates not
/// protecting an H fold into the body as even terms instead, and everything
/// else (X/CNOT/SWAP and trailing Cliffords) leaves through the frame into
/// the final layer, so no suffix is split off.
fn initial_layer_len(gates: &[Gate]) -> usize {
    let mut run = 0;
    while run < gates.len() {
        let g = &gates[run];
        let ok = matches!(g, Gate::H(_)) || (g.is_diagonal() && g.is_clifford());
        if !ok {
            break;
        }
        run += 1;
    }
    gates[..run]
        .iter()
        .rposition(|g| matches!(g, Gate::H(_)))
        .map_or(0, |h| h + 1)
}

/// Working state of the diagonalization pass over the main body.
pub struct Reduction {
    width: u32,
    original_width: u32,
    names: Vec<String>,
    poly: PhasePolynomial,
    /// Frame rows over body-input coordinates: row j of the GF(2) matrix M
    /// in |z> -> |Mz + b>.
    rows: Vec<ParitySet>,
    bvec: ParitySet,
    /// Original circuit label -> physical wire currently holding that state.
    cur: Vec<u32>,
    measured: Vec<bool>,
    preps: Vec<u32>,
    measurements: Vec<MeasurementEvent>,
    /// Frame CNOTs factored out through the input side at gadgetization
    /// time; they follow the initial layer (ancillas are already prepared).
    initial_frame: Vec<Gate>,
    /// H gates (in label space) that slid out of the remaining stream; they
    /// follow the frame in the final layer.
    trailing_h: Vec<Gate>,
}

impl Reduction {
    pub fn new(c: &Circuit) -> Self {
        let n = c.wire_count();
        let names = c.wires.iter().map(|w| w.name.clone()).collect();
        Reduction {
            width: n,
            original_width: n,
            names,
            poly: PhasePolynomial::new(n),
            rows: (0..n).map(|i| ParitySet::singleton(n, i)).collect(),
            bvec: ParitySet::empty(n),
            cur: (0..n).collect(),
            measured: vec![false; n as usize],
            preps: Vec::new(),
            measurements: Vec::new(),
            initial_frame: Vec::new(),
            trailing_h: Vec::new(),
        }
    }

    fn grow(&mut self) -> u32 {
        let new_width = self.width + 1;
        self.poly = self.poly.widened(new_width);
        for r in &mut self.rows {
            *r = r.widened(new_width);
        }
        self.bvec = self.bvec.widened(new_width);
        self.rows.push(ParitySet::singleton(new_width, self.width));
        self.measured.push(false);
        let name = crate::circuit::unique_name(format!("_h{}", self.preps.len()), |n| {
            self.names.iter().any(|x| x == n)
        });
        self.names.push(name);
        self.width = new_width;
        new_width - 1
    }

    /// Conjugated parity set of a gadget on physical wires `x` through the
    /// frame: xor of the rows of M over x, plus the sign flip from b.
    fn conjugated(&self, x: &ParitySet) -> (ParitySet, bool) {
        let mut set = ParitySet::empty(self.width);
        for j in x.iter() {
            set = set.xor(&self.rows[j as usize]);
        }
        (set, x.odd_overlap(&self.bvec))
    }

    /// Insert a diagonal gadget acting on the current values of physical
    /// wires `x` with coefficient `coeff`.
    fn insert_gadget(&mut self, x: &ParitySet, coeff: u8) {
        let (set, flip) = self.conjugated(x);
        if set.is_empty() {
            return; // global phase
        }
        let c = if flip { (8 - coeff % 8) % 8 } else { coeff % 8 };
        self.poly.add(set, c);
    }

    fn insert_diagonal_gate(&mut self, g: &Gate) {
        let w = self.width;
        match g {
            Gate::Z(q) => self.insert_gadget(&ParitySet::singleton(w, *q), 4),
            Gate::S(q) => self.insert_gadget(&ParitySet::singleton(w, *q), 2),
            Gate::Sdg(q) => self.insert_gadget(&ParitySet::singleton(w, *q), 6),
            Gate::T(q) => self.insert_gadget(&ParitySet::singleton(w, *q), 1),
            Gate::Tdg(q) => self.insert_gadget(&ParitySet::singleton(w, *q), 7),
            Gate::Cz(a, b) => {
                self.insert_gadget(&ParitySet::singleton(w, *a), 6);
                self.insert_gadget(&ParitySet::singleton(w, *b), 6);
                self.insert_gadget(&ParitySet::from_indices(w, [*a, *b]), 2);
            }
            Gate::Ccz(a, b, c) => {
                for q in [*a, *b, *c] {
                    self.insert_gadget(&ParitySet::singleton(w, q), 1);
                }
                for pair in [[*a, *b], [*a, *c], [*b, *c]] {
                    self.insert_gadget(&ParitySet::from_indices(w, pair), 7);
                }
                self.insert_gadget(&ParitySet::from_indices(w, [*a, *b, *c]), 1);
            }
            _ => unreachable!("not a diagonal gate"),
        }
    }

    fn apply_x(&mut self, q: u32) {
        self.bvec.toggle(q);
    }

    fn apply_cnot(&mut self, h: u32, j: u32) {
        let row_h = self.rows[h as usize].clone();
        let rj = &mut self.rows[j as usize];
        *rj = rj.xor(&row_h);
        if self.bvec.contains(h) {
            self.bvec.toggle(j);
        }
    }

    /// Solve M gamma = e_w over GF(2), i.e. express e_w as a combination of
    /// the frame's columns. The frame is invertible, so a solution exists.
    fn column_combination_for(&self, w: u32) -> ParitySet {
        let n = self.width as usize;
        // augmented system: rows of M alongside the unit vector e_w
        let mut m: Vec<ParitySet> = self.rows.clone();
        let mut rhs = ParitySet::empty(self.width);
        rhs.insert(w);
        let mut gamma = ParitySet::empty(self.width);
        let mut pivots: Vec<(usize, u32)> = Vec::new(); // (row, col)
        let mut used = vec![false; n];
        for col in 0..n as u32 {
            let Some(r) = (0..n).find(|r| !used[*r] && m[*r].contains(col)) else {
                continue;
            };
            used[r] = true;
            pivots.push((r, col));
            for r2 in 0..n {
                if r2 != r && m[r2].contains(col) {
                    let src = m[r].clone();
                    m[r2] = m[r2].xor(&src);
                    if rhs.contains(r as u32) {
                        rhs.toggle(r2 as u32);
                    }
                }
            }
        }
        for (r, col) in pivots {
            if rhs.contains(r as u32) {
                gamma.insert(col);
            }
        }
        gamma
    }

    /// Replace an interior H on the current carrier of `label` by the
    /// teleportation gadget: a fresh |+> ancilla, a CZ conjugated into the
    /// body, an X-basis measurement of the old carrier, and a conditional X
    /// correction on the ancilla. Frame dependence of live wires on the
    /// measured input coordinate is first factored out through the input
    /// side: the factored CNOTs join the initial layer (ancillas are already
    /// prepared |+> there) and the existing body is conjugated to match.
    pub fn gadgetize_hadamard(&mut self, label: u32) -> Result<(), PhageError> {
        let w = self.cur[label as usize];
        debug_assert!(!self.measured[w as usize]);

        let dirty_col = (0..self.width).any(|j| j != w && self.rows[j as usize].contains(w));
        if dirty_col {
            // gamma: columns of M combining to e_w
            let mut gamma = self.column_combination_for(w);
            if !gamma.contains(w) {
                // free input-side pair: one CNOT(r -> w) into the initial
                // layer, its partner folded into the frame, flipping gamma_w
                let r = gamma
                    .iter()
                    .next()
                    .expect("e_w has a nonzero column expansion");
                self.initial_frame.push(Gate::Cnot(r, w));
                self.poly.conjugate_cnot(r, w);
                for row in &mut self.rows {
                    if row.contains(w) {
                        row.toggle(r);
                    }
                }
                gamma = self.column_combination_for(w);
                debug_assert!(gamma.contains(w));
            }
            // factor the input transform z_j ^= z_w for j in J out of the
            // frame; the measurement then reads a clean input coordinate
            for j in gamma.iter().filter(|j| *j != w) {
                self.initial_frame.push(Gate::Cnot(w, j));
                self.poly.conjugate_cnot(w, j);
            }
            let js: Vec<u32> = gamma.iter().filter(|j| *j != w).collect();
            for row in &mut self.rows {
                let flip = js.iter().filter(|j| row.contains(**j)).count() % 2 == 1;
                if flip {
                    row.toggle(w);
                }
            }
            debug_assert!(
                (0..self.width).all(|j| j == w || !self.rows[j as usize].contains(w)),
                "input-side factoring must clean column {}",
                w
            );
        }

        let a = self.grow();
        self.preps.push(a);

        // CZ between the retiring wire and the ancilla, through the frame
        let cw = self.width;
        self.insert_gadget(&ParitySet::singleton(cw, w), 6);
        self.insert_gadget(&ParitySet::singleton(cw, a), 6);
        self.insert_gadget(&ParitySet::from_indices(cw, [w, a]), 2);

        self.cur[label as usize] = a;

        // freeze the measured coordinate and record the event
        self.rows[w as usize] = ParitySet::singleton(self.width, w);
        if self.bvec.contains(w) {
            self.bvec.toggle(w);
        }
        self.measured[w as usize] = true;
        let label_id = self.measurements.len() as u32;
        self.measurements.push(MeasurementEvent {
            wire: w,
            outcome_label: label_id,
            corrections: vec![Gate::X(a)],
        });
        Ok(())
    }

    /// Map a stream gate from original labels to current physical wires.
    fn to_physical(&self, g: &Gate) -> Gate {
        let m = |q: &u32| self.cur[*q as usize];
        match g {
            Gate::X(q) => Gate::X(m(q)),
            Gate::Z(q) => Gate::Z(m(q)),
            Gate::S(q) => Gate::S(m(q)),
            Gate::Sdg(q) => Gate::Sdg(m(q)),
            Gate::T(q) => Gate::T(m(q)),
            Gate::Tdg(q) => Gate::Tdg(m(q)),
            Gate::H(q) => Gate::H(m(q)),
            Gate::Cnot(c, t) => Gate::Cnot(m(c), m(t)),
            Gate::Cz(a, b) => Gate::Cz(m(a), m(b)),
            Gate::Swap(a, b) => Gate::Swap(m(a), m(b)),
            Gate::Ccnot(a, b, t) => Gate::Ccnot(m(a), m(b), m(t)),
            Gate::Ccz(a, b, c) => Gate::Ccz(m(a), m(b), m(c)),
            Gate::Mcnot(..) => unreachable!("expanded earlier"),
        }
    }

    /// Steps 6-7: fold the main body into the polynomial and the frame.
    /// Gates arrive in original labels; SWAPs become relabelings.
    pub fn diagonalize(&mut self, body: &[Gate]) -> Result<(), PhageError> {
        let mut stream: VecDeque<Gate> = body.iter().cloned().collect();
        while let Some(g) = stream.pop_front() {
            match &g {
                Gate::Swap(u, v) => {
                    self.cur.swap(*u as usize, *v as usize);
                }
                Gate::H(q) => {
                    // try to slide it out rightward through the remaining
                    // stream; otherwise gadgetize
                    let mut tail: Vec<Tagged> = Vec::with_capacity(stream.len() + 1);
                    tail.push((Gate::H(*q), 0));
                    tail.extend(stream.iter().cloned().map(|g| (g, 1)));
                    match slide_h(&mut tail, 0, true) {
                        SlideOutcome::Cancelled => {
                            stream = tail.into_iter().map(|(g, _)| g).collect();
                        }
                        SlideOutcome::Exited => {
                            let Some((Gate::H(qq), _)) = tail.pop() else {
                                return Err(PhageError::NonDiagonalResidue(
                                    "h slide lost its gate".into(),
                                ));
                            };
                            stream = tail.into_iter().map(|(g, _)| g).collect();
                            self.trailing_h.push(Gate::H(qq));
                        }
                        SlideOutcome::Blocked => {
                            self.gadgetize_hadamard(*q)?;
                        }
                    }
                }
                _ => {
                    let pg = self.to_physical(&g);
                    match &pg {
                        Gate::X(q) => self.apply_x(*q),
                        Gate::Cnot(c, t) => self.apply_cnot(*c, *t),
                        d if d.is_diagonal() => self.insert_diagonal_gate(&pg),
                        other => return Err(PhageError::NonDiagonalResidue(format!("{}", other))),
                    }
                }
            }
        }
        Ok(())
    }

    /// Emit the frame as a CNOT network followed by X gates, realizing
    /// |z> -> |Mz + b>.
    fn synthesize_frame(&self) -> Vec<Gate> {
        let n = self.width as usize;
        let mut m: Vec<ParitySet> = self.rows.clone();
        let mut ops: Vec<Gate> = Vec::new();
        for col in 0..n {
            let pivot = (col..n)
                .find(|r| m[*r].contains(col as u32))
                .expect("frame matrix is invertible");
            if pivot != col {
                for (dst, src) in [(pivot, col), (col, pivot), (pivot, col)] {
                    let s = m[src].clone();
                    m[dst] = m[dst].xor(&s);
                    ops.push(Gate::Cnot(src as u32, dst as u32));
                }
            }
            for r in 0..n {
                if r != col && m[r].contains(col as u32) {
                    let s = m[col].clone();
                    m[r] = m[r].xor(&s);
                    ops.push(Gate::Cnot(col as u32, r as u32));
                }
            }
        }
        let mut gates: Vec<Gate> = ops.into_iter().rev().collect();
        for j in self.bvec.iter() {
            gates.push(Gate::X(j));
        }
        gates
    }

    /// Steps 8-9: assemble the canonical form. The polynomial is already
    /// fused (insertion fuses eagerly) and even coefficients stay in the
    /// body; corrections are grouped per control bit on their events.
    pub fn canonicalize(mut self, prefix: Vec<Gate>) -> Result<ClDClForm, PhageError> {
        let mut initial = prefix;
        initial.append(&mut self.initial_frame);
        let mut final_gates = self.synthesize_frame();
        let trailing = std::mem::take(&mut self.trailing_h);
        for g in trailing {
            final_gates.push(self.to_physical(&g));
        }

        for g in &final_gates {
            if g.wires().iter().any(|q| self.measured[*q as usize]) {
                return Err(PhageError::NonDiagonalResidue(format!(
                    "final layer touches a measured wire: {}",
                    g
                )));
            }
        }

        let wire_map: Vec<u32> = (0..self.original_width)
            .map(|q| self.cur[q as usize])
            .collect();

        Ok(ClDClForm {
            width: self.width,
            original_width: self.original_width,
            wire_names: self.names,
            initial,
            preps: self.preps,
            body: self.poly,
            measurements: self.measurements,
            final_gates,
            wire_map,
        })
    }
}

/// Full reduction: expand multi-controls, normalize, split stages,
/// diagonalize the body, canonicalize.
pub fn to_cldcl(c: &Circuit) -> Result<(ClDClForm, CldclStats), PhageError> {
    let expanded = c.expand_multi_controls();
    let normalized = normalize_gates(&expanded);
    let p = initial_layer_len(&normalized.gates);
    let prefix = normalized.gates[..p].to_vec();
    let body = &normalized.gates[p..];

    let surviving_h = body.iter().filter(|g| matches!(g, Gate::H(_))).count();
    let mut red = Reduction::new(&expanded);
    red.diagonalize(body)?;
    let form = red.canonicalize(prefix)?;
    debug_assert!(form.preps.len() <= surviving_h);
    debug_assert_eq!(form.preps.len(), form.measurements.len());
    let stats = CldclStats {
        width: form.width,
        extra_qubits: form.preps.len() as u32,
        t_count_after_fusion: form.body.t_count(),
    };
    Ok((form, stats))
}
