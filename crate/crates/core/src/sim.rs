//! Desk-scale brute-force oracles: dense unitary simulation of gate
//! circuits, post-selected contraction of Cl-D-Cl forms, and comparison up
//! to global phase. Double precision, default cap 14 wires.

use crate::circuit::{Circuit, Gate};
use crate::cldcl::ClDClForm;
use crate::error::PhageError;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub const DEFAULT_SIM_CAP: u32 = 14;
pub const SIM_TOL: f64 = 1e-9;

/// Column-major dense matrix on `wires` qubits.
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    pub wires: u32,
    /// cols[c][r] = <r|U|c>
    cols: Vec<Vec<Complex64>>,
}

impl DenseUnitary {
    pub fn dimension(&self) -> usize {
        1 << self.wires
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.cols[col][row]
    }

    pub fn identity(wires: u32) -> Self {
        let dim = 1usize << wires;
        let cols = (0..dim)
            .map(|c| {
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                v[c] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        DenseUnitary { wires, cols }
    }

    /// Largest column-norm deviation from orthonormality (cheap sanity check
    /// for gate-circuit outputs; full orthogonality is not computed).
    pub fn max_column_norm_error(&self) -> f64 {
        self.cols
            .iter()
            .map(|c| (c.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

fn apply_gate(state: &mut [Complex64], g: &Gate) {
    let phase = |state: &mut [Complex64], mask: usize, ph: Complex64| {
        for (i, amp) in state.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= ph;
            }
        }
    };
    match g {
        Gate::X(q) => {
            let b = 1usize << q;
            for i in 0..state.len() {
                if i & b == 0 {
                    state.swap(i, i | b);
                }
            }
        }
        Gate::Z(q) => phase(state, 1 << q, Complex64::new(-1.0, 0.0)),
        Gate::S(q) => phase(state, 1 << q, Complex64::new(0.0, 1.0)),
        Gate::Sdg(q) => phase(state, 1 << q, Complex64::new(0.0, -1.0)),
        Gate::T(q) => phase(
            state,
            1 << q,
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
        ),
        Gate::Tdg(q) => phase(
            state,
            1 << q,
            Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
        ),
        Gate::H(q) => {
            let b = 1usize << q;
            for i in 0..state.len() {
                if i & b == 0 {
                    let a = state[i];
                    let c = state[i | b];
                    state[i] = (a + c) * FRAC_1_SQRT_2;
                    state[i | b] = (a - c) * FRAC_1_SQRT_2;
                }
            }
        }
        Gate::Cnot(c, t) => {
            let cb = 1usize << c;
            let tb = 1usize << t;
            for i in 0..state.len() {
                if i & cb == cb && i & tb == 0 {
                    state.swap(i, i | tb);
                }
            }
        }
        Gate::Cz(a, b) => phase(state, (1 << a) | (1 << b), Complex64::new(-1.0, 0.0)),
        Gate::Swap(a, b) => {
            let ab = 1usize << a;
            let bb = 1usize << b;
            for i in 0..state.len() {
                if i & ab == ab && i & bb == 0 {
                    state.swap(i, (i & !ab) | bb);
                }
            }
        }
        Gate::Ccnot(c1, c2, t) => {
            let cb = (1usize << c1) | (1 << c2);
            let tb = 1usize << t;
            for i in 0..state.len() {
                if i & cb == cb && i & tb == 0 {
                    state.swap(i, i | tb);
                }
            }
        }
        Gate::Ccz(a, b, c) => phase(
            state,
            (1 << a) | (1 << b) | (1 << c),
            Complex64::new(-1.0, 0.0),
        ),
        Gate::Mcnot(cs, t) => {
            let cb: usize = cs.iter().map(|c| 1usize << c).sum();
            let tb = 1usize << t;
            for i in 0..state.len() {
                if i & cb == cb && i & tb == 0 {
                    state.swap(i, i | tb);
                }
            }
        }
    }
}

/// Product of the gate matrices in circuit order.
pub fn simulate_unitary(c: &Circuit, cap: u32) -> Result<DenseUnitary, PhageError> {
    let n = c.wire_count();
    if n > cap {
        return Err(PhageError::SimCapExceeded { cap, got: n });
    }
    let dim = 1usize << n;
    let run_col = |col: usize| {
        let mut state = vec![Complex64::new(0.0, 0.0); dim];
        state[col] = Complex64::new(1.0, 0.0);
        for g in &c.gates {
            apply_gate(&mut state, g);
        }
        state
    };
    #[cfg(feature = "parallel")]
    let cols: Vec<Vec<Complex64>> = (0..dim).into_par_iter().map(run_col).collect();
    #[cfg(not(feature = "parallel"))]
    let cols: Vec<Vec<Complex64>> = (0..dim).map(run_col).collect();
    Ok(DenseUnitary { wires: n, cols })
}

/// Post-selected contraction of a Cl-D-Cl form onto its original wires:
/// ancillas prepared |+>, initial Clifford, diagonal body phases, <+|
/// projection of each measured wire, final Clifford; rescaled by 2^(m/2).
/// Conditional corrections are ignored (the post-selected branch).
pub fn simulate_cldcl_postselected(form: &ClDClForm, cap: u32) -> Result<DenseUnitary, PhageError> {
    let nw = form.width;
    if nw > cap {
        return Err(PhageError::SimCapExceeded { cap, got: nw });
    }
    let n = form.original_width;
    let full = 1usize << nw;

    // phase table for the body
    let phases: Vec<Complex64> = {
        let build = |z: usize| {
            let zs =
                crate::parity::ParitySet::from_indices(nw, (0..nw).filter(|i| (z >> i) & 1 == 1));
            let e = form.body.eval_on_basis(&zs);
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * e as f64)
        };
        #[cfg(feature = "parallel")]
        {
            (0..full).into_par_iter().map(build).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..full).map(build).collect()
        }
    };

    let anc_bits: Vec<u32> = form.preps.clone();
    let m = form.measurements.len() as u32;
    let norm_expect = 2.0f64.powf(-(m as f64) / 2.0);

    let run_col = |col: usize| -> Result<Vec<Complex64>, PhageError> {
        // input basis state on original wires, |+> on ancillas
        let mut state = vec![Complex64::new(0.0, 0.0); full];
        let amp = Complex64::new(2.0f64.powf(-(anc_bits.len() as f64) / 2.0), 0.0);
        for sub in 0..1usize << anc_bits.len() {
            let mut idx = col;
            for (k, a) in anc_bits.iter().enumerate() {
                if (sub >> k) & 1 == 1 {
                    idx |= 1 << a;
                }
            }
            state[idx] = amp;
        }

        for g in &form.initial {
            apply_gate(&mut state, g);
        }
        for (i, amp) in state.iter_mut().enumerate() {
            *amp *= phases[i];
        }
        // <+| projections: keep the measured bit at 0, average pairs
        for ev in &form.measurements {
            let b = 1usize << ev.wire;
            for i in 0..full {
                if i & b == 0 {
                    state[i] = (state[i] + state[i | b]) * FRAC_1_SQRT_2;
                    state[i | b] = Complex64::new(0.0, 0.0);
                }
            }
        }
        for g in &form.final_gates {
            apply_gate(&mut state, g);
        }

        // read out the original wires through the wire map
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut idx = 0usize;
            for (orig, phys) in form.wire_map.iter().enumerate() {
                if (r >> orig) & 1 == 1 {
                    idx |= 1 << phys;
                }
            }
            *slot = state[idx];
        }
        let norm = out.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - norm_expect).abs() > 1e-6 {
            return Err(PhageError::ZeroNormContraction);
        }
        let scale = 1.0 / norm_expect;
        for a in &mut out {
            *a *= scale;
        }
        Ok(out)
    };

    #[cfg(feature = "parallel")]
    let cols: Result<Vec<Vec<Complex64>>, PhageError> =
        (0..1usize << n).into_par_iter().map(run_col).collect();
    #[cfg(not(feature = "parallel"))]
    let cols: Result<Vec<Vec<Complex64>>, PhageError> = (0..1usize << n).map(run_col).collect();
    Ok(DenseUnitary {
        wires: n,
        cols: cols?,
    })
}

/// True iff A = e^(i phi) B entrywise within `tol`, with phi fixed from the
/// largest-magnitude entry of A.
pub fn equal_up_to_global_phase(
    a: &DenseUnitary,
    b: &DenseUnitary,
    tol: f64,
) -> Result<bool, PhageError> {
    if a.wires != b.wires {
        return Err(PhageError::DimensionMismatch(a.dimension(), b.dimension()));
    }
    let dim = a.dimension();
    let (mut best, mut br, mut bc) = (0.0f64, 0usize, 0usize);
    for c in 0..dim {
        for r in 0..dim {
            let m = a.entry(r, c).norm();
            if m > best {
                best = m;
                br = r;
                bc = c;
            }
        }
    }
    if best < tol {
        return Ok(b.cols.iter().flatten().all(|x| x.norm() < tol));
    }
    let bref = b.entry(br, bc);
    if bref.norm() < tol {
        return Ok(false);
    }
    let phase = a.entry(br, bc) / bref;
    let phase = phase / phase.norm();
    for c in 0..dim {
        for r in 0..dim {
            if (a.entry(r, c) - phase * b.entry(r, c)).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Deviation metric used by the CLI's --verify report.
pub fn max_deviation_up_to_phase(a: &DenseUnitary, b: &DenseUnitary) -> f64 {
    let dim = a.dimension();
    let (mut best, mut br, mut bc) = (0.0f64, 0usize, 0usize);
    for c in 0..dim {
        for r in 0..dim {
            let m = a.entry(r, c).norm();
            if m > best {
                best = m;
                br = r;
                bc = c;
            }
        }
    }
    let bref = b.entry(br, bc);
    if bref.norm() == 0.0 {
        return f64::INFINITY;
    }
    let phase = a.entry(br, bc) / bref;
    let phase = phase / phase.norm();
    let mut dev = 0.0f64;
    for c in 0..dim {
        for r in 0..dim {
            dev = dev.max((a.entry(r, c) - phase * b.entry(r, c)).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cldcl::to_cldcl;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn h_gate_matrix() {
        let mut c = Circuit::with_width(1);
        c.push(Gate::H(0));
        let u = simulate_unitary(&c, 14).unwrap();
        let r = FRAC_1_SQRT_2;
        assert!(close(u.entry(0, 0), Complex64::new(r, 0.0)));
        assert!(close(u.entry(1, 0), Complex64::new(r, 0.0)));
        assert!(close(u.entry(0, 1), Complex64::new(r, 0.0)));
        assert!(close(u.entry(1, 1), Complex64::new(-r, 0.0)));
    }

    #[test]
    fn t_gate_matrix() {
        let mut c = Circuit::with_width(1);
        c.push(Gate::T(0));
        let u = simulate_unitary(&c, 14).unwrap();
        assert!(close(u.entry(0, 0), Complex64::new(1.0, 0.0)));
        assert!(close(
            u.entry(1, 1),
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
        ));
        assert!(close(u.entry(0, 1), Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn ccnot_is_the_expected_permutation() {
        let mut c = Circuit::with_width(3);
        c.push(Gate::Ccnot(0, 1, 2));
        let u = simulate_unitary(&c, 14).unwrap();
        // |110> (=3) <-> |111> (=7), all others fixed
        assert!(close(u.entry(7, 3), Complex64::new(1.0, 0.0)));
        assert!(close(u.entry(3, 7), Complex64::new(1.0, 0.0)));
        assert!(close(u.entry(0, 0), Complex64::new(1.0, 0.0)));
        assert!(close(u.entry(3, 3), Complex64::new(0.0, 0.0)));
        assert!(u.max_column_norm_error() < 1e-12);
    }

    #[test]
    fn unitarity_of_random_words() {
        let mut c = Circuit::with_width(3);
        for g in [
            Gate::H(0),
            Gate::T(1),
            Gate::Cnot(0, 2),
            Gate::S(2),
            Gate::Ccz(0, 1, 2),
            Gate::H(2),
            Gate::Tdg(0),
            Gate::Swap(1, 2),
        ] {
            c.push(g);
        }
        let u = simulate_unitary(&c, 14).unwrap();
        assert!(u.max_column_norm_error() < 1e-9);
    }

    #[test]
    fn global_phase_comparison() {
        let mut c = Circuit::with_width(2);
        c.push(Gate::H(0));
        c.push(Gate::Cnot(0, 1));
        let u = simulate_unitary(&c, 14).unwrap();
        let mut neg = u.clone();
        for col in &mut neg.cols {
            for a in col {
                *a = -*a;
            }
        }
        assert!(equal_up_to_global_phase(&u, &neg, 1e-9).unwrap());

        let mut d = Circuit::with_width(2);
        d.push(Gate::H(0));
        let v = simulate_unitary(&d, 14).unwrap();
        assert!(!equal_up_to_global_phase(&u, &v, 1e-9).unwrap());
    }

    #[test]
    fn gadgetized_single_h_contracts_to_h() {
        let mut c = Circuit::with_width(1);
        c.push(Gate::T(0));
        c.push(Gate::H(0));
        c.push(Gate::T(0));
        let (form, _) = to_cldcl(&c).unwrap();
        let u = simulate_cldcl_postselected(&form, 14).unwrap();
        let v = simulate_unitary(&c, 14).unwrap();
        assert!(equal_up_to_global_phase(&u, &v, SIM_TOL).unwrap());
    }

    #[test]
    fn empty_form_is_identity() {
        let c = Circuit::with_width(2);
        let (form, _) = to_cldcl(&c).unwrap();
        let u = simulate_cldcl_postselected(&form, 14).unwrap();
        let id = DenseUnitary::identity(2);
        assert!(equal_up_to_global_phase(&u, &id, SIM_TOL).unwrap());
    }

    #[test]
    fn ccnot_circuit_round_trips_through_cldcl() {
        let mut c = Circuit::with_width(3);
        c.push(Gate::Ccnot(0, 1, 2));
        let (form, _) = to_cldcl(&c).unwrap();
        let u = simulate_cldcl_postselected(&form, 14).unwrap();
        let v = simulate_unitary(&c, 14).unwrap();
        assert!(equal_up_to_global_phase(&u, &v, SIM_TOL).unwrap());
    }
}
