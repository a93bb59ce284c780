//! Exact parity-basis (Walsh) expansion of diagonal phase functions.
//!
//! This is the independent oracle for every gadget decomposition in the
//! crate: a phase function theta: {0,1}^m -> (pi/4)*Z has a unique exact
//! expansion theta(z) = c_0 + sum_S c_S * <x_S, z>_2 over the rationals,
//! computed here with integers scaled by 2^m. No floating point.

use crate::error::PhageError;
use crate::parity::ParitySet;
use crate::poly::PhasePolynomial;

/// A phase function on `width` wires: one integer (units of pi/4) per basis
/// state, indexed by the usual binary order (wire i is bit i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseFunction {
    width: u32,
    values: Vec<i64>,
}

impl PhaseFunction {
    pub fn new(width: u32, values: Vec<i64>) -> Self {
        assert_eq!(
            values.len(),
            1usize << width,
            "need one value per basis state"
        );
        PhaseFunction { width, values }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn value(&self, z: u64) -> i64 {
        self.values[z as usize]
    }

    /// Tabulate the exact (unreduced) phase profile of a polynomial.
    pub fn from_polynomial(p: &PhasePolynomial) -> Self {
        let m = p.width();
        assert!(m <= 26, "phase function table would be too large");
        let values = (0u64..1 << m)
            .map(|z| {
                let zs = ParitySet::from_indices(m, (0..m).filter(|i| (z >> i) & 1 == 1));
                p.eval_exact(&zs)
            })
            .collect();
        PhaseFunction { width: m, values }
    }
}

/// Exact Walsh coefficients of a phase function.
///
/// Returns the polynomial (nonzero coefficients mod 8) together with the
/// global-phase term (the S = empty coefficient, mod 8). Errors if the
/// function is not an exact integer combination of parity functions, which
/// cannot happen for profiles tabulated from a polynomial without mod-8
/// reduction.
pub fn walsh_coefficients(f: &PhaseFunction) -> Result<(PhasePolynomial, u8), PhageError> {
    let m = f.width;
    let n = 1usize << m;

    // Walsh-Hadamard transform over the +-1 characters: after the butterfly,
    // spectrum[s] = sum_z theta(z) * (-1)^(<s,z>).
    let mut spectrum: Vec<i64> = f.values.clone();
    let mut h = 1usize;
    while h < n {
        let mut i = 0;
        while i < n {
            for j in i..i + h {
                let a = spectrum[j];
                let b = spectrum[j + h];
                spectrum[j] = a + b;
                spectrum[j + h] = a - b;
            }
            i += 2 * h;
        }
        h *= 2;
    }

    // theta = a_0*W_0 + sum_S a_S*W_S with a_S = spectrum[S]/2^m, and
    // <x_S,z>_2 = (1 - W_S(z))/2 gives c_S = -2*a_S = -spectrum[S]/2^(m-1).
    let mut poly = PhasePolynomial::new(m);
    let half = 1i64 << (m.saturating_sub(1));
    for (s, coeff) in spectrum.iter().enumerate().skip(1) {
        let num = -coeff;
        if num.rem_euclid(half) != 0 {
            return Err(PhageError::InexactPhaseFunction);
        }
        let c = (num / half).rem_euclid(8) as u8;
        if c != 0 {
            let set = ParitySet::from_indices(m, (0..m).filter(|i| (s >> i) & 1 == 1));
            poly.add(set, c);
        }
    }

    // global phase: theta(0...0) plus half the sum of all c_S equals a_0 + sum a_S;
    // simplest exact route: c_0 = theta(0) since every parity vanishes at z = 0.
    let global = f.values[0].rem_euclid(8) as u8;
    Ok((poly, global))
}
