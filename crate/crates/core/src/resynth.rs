//! Resynthesis of a phase polynomial back into a CNOT + phase-gate circuit.
//!
//! Each term compiles to a CNOT ladder collecting the parity onto its
//! lowest-index wire, the phase gates realizing the Z8 coefficient, and the
//! inverse ladder. Correctness only; no CNOT-count optimization.

use crate::circuit::{Circuit, Gate};
use crate::poly::PhasePolynomial;

fn phase_gates(wire: u32, coeff: u8) -> Vec<Gate> {
    match coeff % 8 {
        0 => vec![],
        1 => vec![Gate::T(wire)],
        2 => vec![Gate::S(wire)],
        3 => vec![Gate::S(wire), Gate::T(wire)],
        4 => vec![Gate::Z(wire)],
        5 => vec![Gate::Z(wire), Gate::T(wire)],
        6 => vec![Gate::Sdg(wire)],
        _ => vec![Gate::Tdg(wire)],
    }
}

/// Emit gates realizing `p` into an existing circuit (wire indices must
/// already be valid there).
pub fn append_polynomial(c: &mut Circuit, p: &PhasePolynomial) {
    for (set, coeff) in p.sorted_terms() {
        let idx = set.indices();
        let target = idx[0];
        for src in idx[1..].iter().rev() {
            c.push(Gate::Cnot(*src, target));
        }
        for g in phase_gates(target, coeff) {
            c.push(g);
        }
        for src in idx[1..].iter() {
            c.push(Gate::Cnot(*src, target));
        }
    }
}

/// Circuit over {CNOT, T, T*, S, S*, Z} whose extracted polynomial equals `p`.
pub fn resynthesize(p: &PhasePolynomial) -> Circuit {
    let mut c = Circuit::with_width(p.width());
    append_polynomial(&mut c, p);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cldcl::to_cldcl;
    use crate::parity::ParitySet;

    fn set(width: u32, idx: &[u32]) -> ParitySet {
        ParitySet::from_indices(width, idx.iter().copied())
    }

    #[test]
    fn pair_term_is_ladder_t_ladder() {
        let mut p = PhasePolynomial::new(3);
        p.add(set(3, &[1, 2]), 1);
        let c = resynthesize(&p);
        assert_eq!(
            c.gates,
            vec![Gate::Cnot(2, 1), Gate::T(1), Gate::Cnot(2, 1)]
        );
    }

    #[test]
    fn s_coefficient_is_single_gate() {
        let mut p = PhasePolynomial::new(2);
        p.add(set(2, &[1]), 2);
        let c = resynthesize(&p);
        assert_eq!(c.gates, vec![Gate::S(1)]);
    }

    #[test]
    fn round_trip_through_extraction() {
        let mut p = PhasePolynomial::new(4);
        p.add(set(4, &[0]), 3);
        p.add(set(4, &[1, 3]), 7);
        p.add(set(4, &[0, 1, 2]), 2);
        p.add(set(4, &[2, 3]), 5);
        let c = resynthesize(&p);
        let (form, _) = to_cldcl(&c).unwrap();
        assert_eq!(form.body, p);
        assert!(form.final_gates.is_empty());
        assert_eq!(form.preps.len(), 0);
    }
}
