//! phage-opt: T-count reduction for Clifford+T circuits in the `.qc` dialect.

use clap::{Parser, Subcommand};
use phage_core::StompOptions;
use phage_core::{
    emit_circuit, gen_nest, parse_qc, run_pipeline, ParitySet, PipelineOptions, RunReport,
};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "phage-opt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce the T-count of a single `.qc` circuit.
    Reduce(ReduceArgs),
    /// Run the benchmark regression suite over a directory of `.qc` files.
    Bench(BenchArgs),
    /// Print the spider nest identity N_S on n wires in the polynomial
    /// text format.
    EmitIdentity { n: u32 },
}

#[derive(Parser)]
struct ReduceArgs {
    /// Input circuit (.qc)
    input: PathBuf,
    /// Write the reduced circuit here (.qc with measurement comments)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON run report here
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Brute-force check the reduction against the input circuit
    #[arg(long)]
    verify: bool,
    /// Number of STOMP sweeps (each sweep: STOMP 4 then STOMP 5); sweeps
    /// stop early at a fixpoint
    #[arg(long, default_value_t = 1)]
    passes: u32,
    /// Skip the STOMP 5 tactic
    #[arg(long)]
    skip_stomp5: bool,
    /// STOMP 5 identity family: the full 63 or the deduplicated 58
    #[arg(long, default_value = "63", value_parser = ["63", "58"])]
    family: String,
    /// Skip STOMP entirely (gadget fusion only)
    #[arg(long)]
    fusion_only: bool,
    /// External post-pass command; receives the body polynomial in text
    /// form on stdin and must print the same format on stdout
    #[arg(long)]
    post_pass: Option<String>,
    /// Simulation cap for --verify
    #[arg(long, default_value_t = phage_core::DEFAULT_SIM_CAP)]
    max_sim_wires: u32,
    /// Dump the final body polynomial in text form to this file
    #[arg(long)]
    dump_poly: Option<PathBuf>,
}

#[derive(Parser)]
struct BenchArgs {
    /// Directory of `.qc` benchmark files
    dir: PathBuf,
    /// Expected-results JSON (see benchmarks/table1.json)
    #[arg(long)]
    expect: PathBuf,
    /// Passes per circuit
    #[arg(long, default_value_t = 1)]
    passes: u32,
}

#[derive(Deserialize)]
struct ExpectFile {
    circuits: BTreeMap<String, Expected>,
}

#[derive(Deserialize)]
struct Expected {
    #[serde(default)]
    extra_qubits: Option<u32>,
    #[serde(default)]
    fusion: Option<usize>,
    #[serde(default)]
    stomp: Option<usize>,
    /// Allowed excess over `stomp` (subset order is implementation-defined)
    #[serde(default)]
    stomp_tolerance: usize,
    /// When false the circuit is only logged, never asserted
    #[serde(default = "default_assert")]
    assert: bool,
}

fn default_assert() -> bool {
    true
}

fn pipeline_options(
    passes: u32,
    skip5: bool,
    family: &str,
    fusion_only: bool,
    post_pass: Option<String>,
    verify: bool,
    cap: u32,
) -> PipelineOptions {
    PipelineOptions {
        stomp: StompOptions {
            passes,
            skip_stomp5: skip5,
            family58: family == "58",
        },
        run_stomp: !fusion_only,
        post_pass,
        verify,
        max_sim_wires: cap,
    }
}

fn reduce(args: ReduceArgs) -> Result<(), String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("{}: {}", args.input.display(), e))?;
    let circuit = parse_qc(&text).map_err(|e| e.to_string())?;
    let name = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "circuit".into());
    let opts = pipeline_options(
        args.passes,
        args.skip_stomp5,
        &args.family,
        args.fusion_only,
        args.post_pass.clone(),
        args.verify,
        args.max_sim_wires,
    );
    let (form, report) = run_pipeline(&circuit, &name, &opts).map_err(|e| e.to_string())?;

    print_report(&report);
    if let Some(path) = &args.dump_poly {
        std::fs::write(path, form.body.to_text()).map_err(|e| e.to_string())?;
    }
    if let Some(path) = &args.out {
        let (_, qc_text) = emit_circuit(&form);
        std::fs::write(path, qc_text).map_err(|e| e.to_string())?;
    }
    if let Some(path) = &args.stats {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, json).map_err(|e| e.to_string())?;
    }
    if let Some(v) = &report.verification {
        if !v.passed {
            return Err(format!(
                "verification FAILED: max deviation {:.3e}",
                v.max_deviation
            ));
        }
        println!("verification PASS (max deviation {:.3e})", v.max_deviation);
    }
    Ok(())
}

fn print_report(r: &RunReport) {
    println!(
        "{}: {} wires (+{} ancillas), T-count {} -> fusion {} -> STOMP {}{}",
        r.circuit_name,
        r.wire_count,
        r.extra_qubits,
        r.t_count_initial,
        r.t_after_fusion,
        r.t_after_stomp,
        r.t_after_post_pass
            .map(|t| format!(" -> post-pass {}", t))
            .unwrap_or_default()
    );
}

fn bench(args: BenchArgs) -> Result<(), String> {
    let expect_text = std::fs::read_to_string(&args.expect)
        .map_err(|e| format!("{}: {}", args.expect.display(), e))?;
    let expect: ExpectFile = serde_json::from_str(&expect_text).map_err(|e| e.to_string())?;

    let mut files: Vec<PathBuf> = std::fs::read_dir(&args.dir)
        .map_err(|e| format!("{}: {}", args.dir.display(), e))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "qc"))
        .collect();
    files.sort();

    let mut failures = 0usize;
    for path in files {
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let circuit = parse_qc(&text).map_err(|e| format!("{}: {}", name, e))?;
        let opts = pipeline_options(
            args.passes,
            false,
            "63",
            false,
            None,
            false,
            phage_core::DEFAULT_SIM_CAP,
        );
        let start = std::time::Instant::now();
        let (_, report) = run_pipeline(&circuit, &name, &opts).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();

        match expect.circuits.get(&name) {
            Some(exp) => {
                let mut problems = Vec::new();
                if let Some(q) = exp.extra_qubits {
                    if report.extra_qubits != q {
                        problems.push(format!("extra qubits {} (want {})", report.extra_qubits, q));
                    }
                }
                if let Some(f) = exp.fusion {
                    if report.t_after_fusion != f {
                        problems.push(format!("fusion {} (want {})", report.t_after_fusion, f));
                    }
                }
                if let Some(s) = exp.stomp {
                    if report.t_after_stomp > s + exp.stomp_tolerance {
                        problems.push(format!(
                            "stomp {} (want <= {}+{})",
                            report.t_after_stomp, s, exp.stomp_tolerance
                        ));
                    }
                }
                let ok = problems.is_empty() || !exp.assert;
                println!(
                    "{} {:18} extra {:3} fusion {:4} stomp {:4} ({:.1}s){}",
                    if ok { "PASS" } else { "FAIL" },
                    name,
                    report.extra_qubits,
                    report.t_after_fusion,
                    report.t_after_stomp,
                    secs,
                    if problems.is_empty() {
                        String::new()
                    } else {
                        format!(
                            " [{}{}]",
                            if exp.assert { "" } else { "report-only: " },
                            problems.join("; ")
                        )
                    }
                );
                if !ok {
                    failures += 1;
                }
            }
            None => {
                println!(
                    "INFO {:18} extra {:3} fusion {:4} stomp {:4} ({:.1}s)",
                    name, report.extra_qubits, report.t_after_fusion, report.t_after_stomp, secs
                );
            }
        }
    }
    if failures > 0 {
        return Err(format!("{} circuit(s) out of tolerance", failures));
    }
    Ok(())
}

fn emit_identity(n: u32) -> Result<(), String> {
    let s = ParitySet::from_indices(n, 0..n);
    let nest = gen_nest(&s).map_err(|e| e.to_string())?;
    print!("{}", nest.poly.to_text());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Reduce(args) => reduce(args),
        Command::Bench(args) => bench(args),
        Command::EmitIdentity { n } => emit_identity(n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::FAILURE
        }
    }
}
