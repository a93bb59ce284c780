//! End-to-end checks of the phage-opt binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phage-opt"))
}

fn bench_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../benchmarks")
}

#[test]
fn reduce_reports_table1_numbers() {
    let out = bin()
        .arg("reduce")
        .arg(bench_dir().join("mod5_4.qc"))
        .arg("--verify")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("T-count 28 -> fusion 8 -> STOMP 7"),
        "{}",
        text
    );
    assert!(text.contains("verification PASS"), "{}", text);
}

#[test]
fn reduce_writes_outputs() {
    let dir = std::env::temp_dir().join(format!("phage-opt-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_qc = dir.join("mod5_4_out.qc");
    let stats = dir.join("report.json");
    let poly = dir.join("body.poly");
    let out = bin()
        .arg("reduce")
        .arg(bench_dir().join("mod5_4.qc"))
        .arg("--out")
        .arg(&out_qc)
        .arg("--stats")
        .arg(&stats)
        .arg("--dump-poly")
        .arg(&poly)
        .output()
        .unwrap();
    assert!(out.status.success());

    // the emitted circuit carries exactly 7 T/T* lines
    let qc_text = std::fs::read_to_string(&out_qc).unwrap();
    let t_lines = qc_text
        .lines()
        .filter(|l| l.starts_with("T ") || l.starts_with("T* "))
        .count();
    assert_eq!(t_lines, 7, "{}", qc_text);

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(report["schemaVersion"], 1);
    assert_eq!(report["tAfterFusion"], 8);
    assert_eq!(report["tAfterStomp"], 7);
    assert_eq!(report["extraQubits"], 0);

    let poly_text = std::fs::read_to_string(&poly).unwrap();
    assert!(poly_text.starts_with("width 5"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn emit_identity_prints_nest() {
    let out = bin().arg("emit-identity").arg("4").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("width 4"));
    // 4 singles, 6 pairs, 4 triples, 1 quad
    assert_eq!(text.lines().count(), 1 + 15);
}

#[test]
fn bench_suite_passes() {
    let out = bin()
        .arg("bench")
        .arg(bench_dir())
        .arg("--expect")
        .arg(bench_dir().join("table1.json"))
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{}", text);
    assert!(text.contains("PASS mod5_4"), "{}", text);
    assert!(!text.contains("FAIL"), "{}", text);
}

#[test]
fn post_pass_hook_round_trips() {
    let out = bin()
        .arg("reduce")
        .arg(bench_dir().join("nc_tof_3.qc"))
        .arg("--post-pass")
        .arg("cat")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("post-pass 13"), "{}", text);
}

#[test]
fn verify_failure_exits_nonzero() {
    // width beyond the simulation cap
    let out = bin()
        .arg("reduce")
        .arg(bench_dir().join("gf2^8_mult.qc"))
        .arg("--verify")
        .arg("--max-sim-wires")
        .arg("10")
        .output()
        .unwrap();
    assert!(!out.status.success());
}
