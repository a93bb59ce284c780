//! T-count reduction for Clifford+T circuits.
//!
//! The pipeline normalizes a circuit over
//! {X, CNOT, CCNOT, Z, CZ, CCZ, H, S, T, SWAP} into Cl-D-Cl form, represents
//! the diagonal body as a Z8 phase polynomial of pi/4 parity-phase gadgets,
//! fuses gadgets, and then greedily applies spider-nest rewrite tactics
//! (STOMP 4 and STOMP 5) that strictly lower the number of odd coefficients,
//! i.e. the T-count. Brute-force simulation oracles check every step at
//! desk scale.

pub mod circuit;
pub mod cldcl;
pub mod error;
pub mod nest;
pub mod parity;
pub mod pipeline;
pub mod poly;
pub mod qc;
pub mod resynth;
pub mod sim;
pub mod stomp;
pub mod walsh;

pub use circuit::{Circuit, Gate, WireId};
pub use cldcl::{normalize_gates, to_cldcl, ClDClForm, CldclStats, MeasurementEvent};
pub use error::PhageError;
pub use nest::{
    composite_t_count_formula, gen_composite, gen_nest, gen_subset_parity_identity,
    t_count_formula, verify_identity, SpiderNestIdentity,
};
pub use parity::ParitySet;
pub use pipeline::{emit_circuit, run_pipeline, PipelineOptions, RunReport};
pub use poly::{PhaseGadget, PhasePolynomial};
pub use qc::{parse_qc, write_qc};
pub use resynth::resynthesize;
pub use sim::{
    equal_up_to_global_phase, simulate_cldcl_postselected, simulate_unitary, DenseUnitary,
    DEFAULT_SIM_CAP, SIM_TOL,
};
pub use stomp::{
    density, density3, phage_apply, run_strategy, stomp4, stomp5, StompOptions, StompStats,
    TacticFamily, TacticOutcome,
};
pub use walsh::{walsh_coefficients, PhaseFunction};
