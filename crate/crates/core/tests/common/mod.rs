//! Shared generators for the integration suites.

use phage_core::{Circuit, Gate, ParitySet, PhasePolynomial};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A random circuit over the input gate set {X, CNOT, CCNOT, Z, CZ, CCZ, H,
/// S, S*, T, T*, SWAP}; Hadamards are kept at a modest rate so that
/// gadgetized widths stay simulable.
pub fn random_circuit(seed: u64, max_wires: u32, max_gates: usize) -> Circuit {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_wires);
    let mut c = Circuit::with_width(n);
    let gates = rng.gen_range(1..=max_gates);
    for _ in 0..gates {
        let a = rng.gen_range(0..n);
        let b = pick_distinct(&mut rng, n, &[a]);
        let g = match rng.gen_range(0..14) {
            0 => Gate::X(a),
            1 => Gate::Z(a),
            2 => Gate::S(a),
            3 => Gate::Sdg(a),
            4 | 5 => Gate::T(a),
            6 => Gate::Tdg(a),
            7 => Gate::H(a),
            8 | 9 => Gate::Cnot(a, b),
            10 => Gate::Cz(a, b),
            11 => Gate::Swap(a, b),
            12 if n >= 3 => {
                let t = pick_distinct(&mut rng, n, &[a, b]);
                Gate::Ccnot(a, b, t)
            }
            _ if n >= 3 => {
                let t = pick_distinct(&mut rng, n, &[a, b]);
                Gate::Ccz(a, b, t)
            }
            _ => Gate::Cnot(a, b),
        };
        c.push(g);
    }
    c
}

fn pick_distinct(rng: &mut StdRng, n: u32, taken: &[u32]) -> u32 {
    loop {
        let w = rng.gen_range(0..n);
        if !taken.contains(&w) {
            return w;
        }
    }
}

/// A random canonical phase polynomial.
pub fn random_polynomial(seed: u64, width: u32, max_terms: usize) -> PhasePolynomial {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut p = PhasePolynomial::new(width);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let size = rng.gen_range(1..=width.min(4));
        let mut set = ParitySet::empty(width);
        while set.len() < size {
            set.insert(rng.gen_range(0..width));
        }
        p.add(set, rng.gen_range(1..8));
    }
    p
}

pub fn bench_path(name: &str) -> String {
    format!("{}/../../benchmarks/{}", env!("CARGO_MANIFEST_DIR"), name)
}

pub fn load_bench(name: &str) -> Circuit {
    let text = std::fs::read_to_string(bench_path(name)).unwrap();
    phage_core::parse_qc(&text).unwrap()
}
