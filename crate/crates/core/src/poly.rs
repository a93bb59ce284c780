//! Z8 phase polynomials over parity sets.
//!
//! A diagonal CNOT+T unitary acts on a basis state |z> as a phase
//! exp(i*pi/4 * sum_S c_S * <x_S, z>_2), up to an overall global phase.
//! The map S -> c_S (c_S in Z8, no zero entries) is the canonical form used
//! throughout this crate. A coefficient of 1 is one T gate's worth of phase
//! on the odd-parity subspace of S; odd coefficients are what cost T gates.

use crate::error::PhageError;
use crate::parity::ParitySet;
use std::collections::HashMap;

/// A single parity-phase gadget: a parity set with a Z8 coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseGadget {
    pub parity: ParitySet,
    /// Units of pi/4 relative phase on odd-parity basis states, in 1..=7.
    pub coeff: u8,
}

impl PhaseGadget {
    /// Gadget for the parity-phase operator with phase exponent k (1 <= k <= 3),
    /// i.e. a relative phase of pi/2^(k-1) on odd-parity states. Returns `None`
    /// for k <= 0 (global phase or identity) and errors for k > 3, which is not
    /// representable over Z8.
    pub fn from_level(parity: ParitySet, k: i32) -> Result<Option<Self>, PhageError> {
        if k <= 0 {
            return Ok(None);
        }
        if k > 3 {
            return Err(PhageError::UnsupportedPhaseLevel(k));
        }
        let coeff = 1u8 << (3 - k);
        Ok(Some(PhaseGadget { parity, coeff }))
    }
}

/// Canonical Z8 phase polynomial: each parity set appears at most once and
/// zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhasePolynomial {
    width: u32,
    terms: HashMap<ParitySet, u8>,
}

impl PhasePolynomial {
    pub fn new(width: u32) -> Self {
        PhasePolynomial {
            width,
            terms: HashMap::new(),
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, s: &ParitySet) -> u8 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParitySet, u8)> {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    /// Terms sorted by ascending index list, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(ParitySet, u8)> {
        let mut v: Vec<(ParitySet, u8)> = self.terms.iter().map(|(s, c)| (s.clone(), *c)).collect();
        v.sort_by_key(|(s, _)| s.indices());
        v
    }

    /// Add `delta` (mod 8) to the coefficient of `s`, dropping empty and zero entries.
    pub fn add(&mut self, s: ParitySet, delta: u8) {
        if s.is_empty() || delta.is_multiple_of(8) {
            return;
        }
        assert_eq!(s.width(), self.width, "parity set width mismatch");
        let e = self.terms.entry(s);
        match e {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let c = (*o.get() + delta) % 8;
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(delta % 8);
            }
        }
    }

    /// Fuse a gadget into the polynomial (coefficient addition mod 8).
    pub fn fuse_insert(&mut self, g: &PhaseGadget) -> Result<(), PhageError> {
        if g.parity.width() != self.width {
            return Err(PhageError::WidthMismatch {
                expected: self.width,
                got: g.parity.width(),
            });
        }
        self.add(g.parity.clone(), g.coeff);
        Ok(())
    }

    /// Fuse every term of `other` into `self`.
    pub fn fuse_all(&mut self, other: &PhasePolynomial) {
        assert_eq!(self.width, other.width);
        for (s, c) in other.terms() {
            self.add(s.clone(), c);
        }
    }

    /// The polynomial with every coefficient negated mod 8: the inverse of the
    /// denoted diagonal unitary, up to global phase.
    pub fn negated(&self) -> PhasePolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.clone(), (8 - *c) % 8))
            .collect();
        PhasePolynomial {
            width: self.width,
            terms,
        }
    }

    /// Number of odd coefficients: the T-count of the denoted unitary.
    pub fn t_count(&self) -> usize {
        self.terms.values().filter(|c| **c % 2 == 1).count()
    }

    /// Conjugate by X on wire `q`: terms containing `q` have their
    /// coefficient negated.
    pub fn conjugate_x(&mut self, q: u32) {
        assert!(q < self.width);
        for (s, c) in self.terms.iter_mut() {
            if s.contains(q) {
                *c = (8 - *c) % 8;
            }
        }
        self.terms.retain(|_, c| *c != 0);
    }

    /// Conjugate by CNOT with control `h` and target `j`: every term with
    /// j in S is rewritten on S xor {h}; collisions fuse.
    pub fn conjugate_cnot(&mut self, h: u32, j: u32) {
        assert!(h != j && h < self.width && j < self.width);
        let mut moved: Vec<(ParitySet, u8)> = Vec::new();
        self.terms.retain(|s, c| {
            if s.contains(j) {
                let mut t = s.clone();
                t.toggle(h);
                moved.push((t, *c));
                false
            } else {
                true
            }
        });
        for (s, c) in moved {
            self.add(s, c);
        }
    }

    /// Relative phase exponent (units of pi/4, mod 8) on basis state `z`.
    pub fn eval_on_basis(&self, z: &ParitySet) -> u8 {
        (self.eval_exact(z) % 8) as u8
    }

    /// Same sum without the mod-8 reduction; exact input for the Walsh oracle.
    pub fn eval_exact(&self, z: &ParitySet) -> i64 {
        assert_eq!(z.width(), self.width);
        self.terms
            .iter()
            .filter(|(s, _)| s.odd_overlap(z))
            .map(|(_, c)| *c as i64)
            .sum()
    }

    /// CS on wires (h, j): D_h D_j D_hj^-1 up to global phase.
    pub fn decompose_cs(width: u32, h: u32, j: u32) -> PhasePolynomial {
        assert!(h != j);
        let mut p = PhasePolynomial::new(width);
        p.add(ParitySet::singleton(width, h), 1);
        p.add(ParitySet::singleton(width, j), 1);
        p.add(ParitySet::from_indices(width, [h, j]), 7);
        p
    }

    /// CZ on wires (h, j): the Clifford triple {h}:6, {j}:6, {h,j}:2.
    pub fn decompose_cz(width: u32, h: u32, j: u32) -> PhasePolynomial {
        assert!(h != j);
        let mut p = PhasePolynomial::new(width);
        p.add(ParitySet::singleton(width, h), 6);
        p.add(ParitySet::singleton(width, j), 6);
        p.add(ParitySet::from_indices(width, [h, j]), 2);
        p
    }

    /// CCZ on wires (g, h, j): singles +1, pairs -1, triple +1.
    pub fn decompose_ccz(width: u32, g: u32, h: u32, j: u32) -> PhasePolynomial {
        assert!(g != h && g != j && h != j);
        let mut p = PhasePolynomial::new(width);
        for w in [g, h, j] {
            p.add(ParitySet::singleton(width, w), 1);
        }
        for pair in [[g, h], [g, j], [h, j]] {
            p.add(ParitySet::from_indices(width, pair), 7);
        }
        p.add(ParitySet::from_indices(width, [g, h, j]), 1);
        p
    }

    /// Text form consumed by `--dump-poly` and the post-pass hook: one term
    /// per line, `<coeff> <wire indices...>`, sorted by parity set.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("width {}\n", self.width));
        for (s, c) in self.sorted_terms() {
            out.push_str(&c.to_string());
            for i in s.iter() {
                out.push(' ');
                out.push_str(&i.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<PhasePolynomial, PhageError> {
        let mut width: Option<u32> = None;
        let mut poly: Option<PhasePolynomial> = None;
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            if head == "width" {
                let w: u32 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(PhageError::PolyTextSyntax { line: ln + 1 })?;
                width = Some(w);
                poly = Some(PhasePolynomial::new(w));
                continue;
            }
            let p = poly
                .as_mut()
                .ok_or(PhageError::PolyTextSyntax { line: ln + 1 })?;
            let coeff: u8 = head
                .parse()
                .map_err(|_| PhageError::PolyTextSyntax { line: ln + 1 })?;
            let mut set = ParitySet::empty(width.unwrap());
            for t in parts {
                let i: u32 = t
                    .parse()
                    .map_err(|_| PhageError::PolyTextSyntax { line: ln + 1 })?;
                if i >= width.unwrap() {
                    return Err(PhageError::PolyTextSyntax { line: ln + 1 });
                }
                set.insert(i);
            }
            if set.is_empty() {
                return Err(PhageError::PolyTextSyntax { line: ln + 1 });
            }
            p.add(set, coeff % 8);
        }
        poly.ok_or(PhageError::PolyTextSyntax { line: 0 })
    }

    /// Widen to a larger circuit, keeping all terms.
    pub fn widened(&self, width: u32) -> PhasePolynomial {
        assert!(width >= self.width);
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.widened(width), *c))
            .collect();
        PhasePolynomial { width, terms }
    }
}
