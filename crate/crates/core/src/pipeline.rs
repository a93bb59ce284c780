//! End-to-end reduction driver: Cl-D-Cl reduction, the STOMP strategy, an
//! optional external post-pass over the polynomial text format, optional
//! brute-force verification, and machine-readable reporting.

use crate::circuit::Circuit;
use crate::cldcl::{to_cldcl, ClDClForm};
use crate::error::PhageError;
use crate::poly::PhasePolynomial;
use crate::qc::format_gate;
use crate::resynth::append_polynomial;
use crate::sim::{
    equal_up_to_global_phase, max_deviation_up_to_phase, simulate_cldcl_postselected,
    simulate_unitary, SIM_TOL,
};
use crate::stomp::{run_strategy, StompOptions, StompStats};
use serde::Serialize;
use std::io::Write as _;
use std::process::{Command, Stdio};
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub stomp: StompOptions,
    pub run_stomp: bool,
    /// External command for a T-count post-pass (e.g. a TODD implementation);
    /// receives the polynomial text format on stdin, must print the same
    /// format on stdout.
    pub post_pass: Option<String>,
    pub verify: bool,
    pub max_sim_wires: u32,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            stomp: StompOptions::default(),
            run_stomp: true,
            post_pass: None,
            verify: false,
            max_sim_wires: crate::sim::DEFAULT_SIM_CAP,
        }
    }
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub schema_version: u32,
    pub circuit_name: String,
    pub wire_count: u32,
    pub total_width: u32,
    pub extra_qubits: u32,
    /// T/T* gates plus 7 per CCNOT/CCZ in the input, before reduction.
    pub t_count_initial: usize,
    pub t_after_fusion: usize,
    pub t_after_stomp: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_after_post_pass: Option<usize>,
    pub stomp: StompStats,
    pub wall_times_ms: WallTimes,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WallTimes {
    pub reduction: u128,
    pub stomp: u128,
    pub post_pass: u128,
    pub verification: u128,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub passed: bool,
    pub max_deviation: f64,
}

fn run_post_pass(cmd: &str, poly: &PhasePolynomial) -> Result<PhasePolynomial, PhageError> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(cmd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(|e| PhageError::PostPass(format!("spawn failed: {}", e)))?;
    child
        .stdin
        .as_mut()
        .expect("stdin piped")
        .write_all(poly.to_text().as_bytes())?;
    let out = child
        .wait_with_output()
        .map_err(|e| PhageError::PostPass(format!("wait failed: {}", e)))?;
    if !out.status.success() {
        return Err(PhageError::PostPass(format!("exit status {}", out.status)));
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let result = PhasePolynomial::from_text(&text)?;
    if result.width() != poly.width() {
        return Err(PhageError::PostPass("post-pass changed the width".into()));
    }
    Ok(result)
}

/// The full reduction procedure on one circuit.
pub fn run_pipeline(
    c: &Circuit,
    name: &str,
    opts: &PipelineOptions,
) -> Result<(ClDClForm, RunReport), PhageError> {
    let t0 = Instant::now();
    let (mut form, stats) = to_cldcl(c)?;
    let reduction_ms = t0.elapsed().as_millis();

    let t_after_fusion = stats.t_count_after_fusion;
    let t1 = Instant::now();
    let stomp_stats = if opts.run_stomp {
        let (reduced, st) = run_strategy(&form.body, &opts.stomp);
        debug_assert!(reduced.t_count() <= form.body.t_count());
        form.body = reduced;
        st
    } else {
        StompStats::default()
    };
    let stomp_ms = t1.elapsed().as_millis();
    let t_after_stomp = form.body.t_count();

    let t2 = Instant::now();
    let t_after_post_pass = match &opts.post_pass {
        Some(cmd) => {
            let result = run_post_pass(cmd, &form.body)?;
            let t = result.t_count();
            form.body = result;
            Some(t)
        }
        None => None,
    };
    let post_ms = t2.elapsed().as_millis();

    let t3 = Instant::now();
    let verification = if opts.verify {
        let reference = simulate_unitary(c, opts.max_sim_wires)?;
        let contracted = simulate_cldcl_postselected(&form, opts.max_sim_wires)?;
        let passed = equal_up_to_global_phase(&reference, &contracted, SIM_TOL)?;
        let max_deviation = max_deviation_up_to_phase(&reference, &contracted);
        Some(VerificationReport {
            passed,
            max_deviation,
        })
    } else {
        None
    };
    let verify_ms = t3.elapsed().as_millis();

    let report = RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        circuit_name: name.to_string(),
        wire_count: c.wire_count(),
        total_width: form.width,
        extra_qubits: stats.extra_qubits,
        t_count_initial: c.naive_t_count(),
        t_after_fusion,
        t_after_stomp,
        t_after_post_pass,
        stomp: stomp_stats,
        wall_times_ms: WallTimes {
            reduction: reduction_ms,
            stomp: stomp_ms,
            post_pass: post_ms,
            verification: verify_ms,
        },
        verification,
    };
    Ok((form, report))
}

/// Re-emit a Cl-D-Cl form as a `.qc` circuit: initial Clifford gates, the
/// resynthesized body, measurements as structured comments (the dialect has
/// no measurement syntax), and the final Clifford layer.
pub fn emit_circuit(form: &ClDClForm) -> (Circuit, String) {
    let mut c = Circuit::new(form.wire_names.clone());
    c.inputs = (0..form.original_width).collect();
    c.outputs = form.wire_map.clone();
    for g in &form.initial {
        c.push(g.clone());
    }
    append_polynomial(&mut c, &form.body);
    let body_end = c.gates.len();
    for g in &form.final_gates {
        c.push(g.clone());
    }

    let mut text = String::new();
    text.push_str(&format!(
        "# Cl-D-Cl form: {} wires, {} ancillas, T-count {}\n",
        form.width,
        form.preps.len(),
        form.body.t_count()
    ));
    for a in &form.preps {
        text.push_str(&format!("# prep |+> {}\n", c.wires[*a as usize].name));
    }
    text.push_str(".v");
    for w in &c.wires {
        text.push(' ');
        text.push_str(&w.name);
    }
    text.push('\n');
    if !c.inputs.is_empty() {
        text.push_str(".i");
        for i in &c.inputs {
            text.push(' ');
            text.push_str(&c.wires[*i as usize].name);
        }
        text.push('\n');
    }
    text.push_str("\nBEGIN\n");
    for g in &c.gates[..body_end] {
        text.push_str(&format_gate(&c, g));
        text.push('\n');
    }
    for ev in &form.measurements {
        text.push_str(&format!(
            "# measure X {} -> s{}\n",
            c.wires[ev.wire as usize].name, ev.outcome_label
        ));
        for corr in &ev.corrections {
            text.push_str(&format!(
                "# if s{} = 1: {}\n",
                ev.outcome_label,
                format_gate(&c, corr)
            ));
        }
    }
    for g in &c.gates[body_end..] {
        text.push_str(&format_gate(&c, g));
        text.push('\n');
    }
    text.push_str("END\n");
    (c, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qc::parse_qc;

    #[test]
    fn identity_circuit_reports_zero_t() {
        let c = parse_qc(".v a b\nBEGIN\ntof a b\ntof a b\nEND").unwrap();
        let (_, report) = run_pipeline(&c, "id", &PipelineOptions::default()).unwrap();
        assert_eq!(report.t_after_fusion, 0);
        assert_eq!(report.t_after_stomp, 0);
        assert_eq!(report.extra_qubits, 0);
    }

    #[test]
    fn report_counts_match_body() {
        let c = parse_qc(".v a b c\nBEGIN\ntof a b c\nT a\nEND").unwrap();
        let (form, report) = run_pipeline(&c, "toy", &PipelineOptions::default()).unwrap();
        assert_eq!(report.t_after_stomp, form.body.t_count());
        assert!(report.t_after_stomp <= report.t_after_fusion);
        assert_eq!(report.t_count_initial, 8);
    }

    #[test]
    fn emitted_circuit_contains_t_line() {
        let c = parse_qc(".v a\nBEGIN\nT a\nEND").unwrap();
        let (form, _) = run_pipeline(&c, "t", &PipelineOptions::default()).unwrap();
        let (_, text) = emit_circuit(&form);
        assert!(text.lines().any(|l| l.trim() == "T a"));
    }

    #[test]
    fn post_pass_round_trips_through_cat() {
        let c = parse_qc(".v a b c\nBEGIN\ntof a b c\nEND").unwrap();
        let opts = PipelineOptions {
            post_pass: Some("cat".into()),
            ..Default::default()
        };
        let (_, report) = run_pipeline(&c, "cat", &opts).unwrap();
        assert_eq!(report.t_after_post_pass, Some(report.t_after_stomp));
    }

    #[test]
    fn verified_pipeline_on_toffoli() {
        let c = parse_qc(".v a b c\nBEGIN\ntof a b c\nEND").unwrap();
        let opts = PipelineOptions {
            verify: true,
            ..Default::default()
        };
        let (_, report) = run_pipeline(&c, "tof", &opts).unwrap();
        let v = report.verification.unwrap();
        assert!(v.passed, "max deviation {}", v.max_deviation);
    }
}
