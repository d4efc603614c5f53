use std::fs;
use std::process::{Command, Output};

use boundent::cli::{SampleRow, StateFile, SweepRow};
use boundent::criteria::{CertificationReport, VerdictKind};
use boundent::linalg::hermitian_eigen;
use boundent::C64;

fn boundent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boundent"))
        .args(args)
        .output()
        .expect("run boundent")
}

fn state_of(out: &Output) -> StateFile {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("state JSON")
}

fn csv_rows<T: serde::de::DeserializeOwned>(bytes: &[u8]) -> Vec<T> {
    csv::Reader::from_reader(bytes)
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("csv rows")
}

#[test]
fn construct_family_a_spectrum() {
    let file = state_of(&boundent(&["construct", "--family", "a", "--params", "1,2,3,1,1,1"]));
    assert_eq!(file.index_convention, "i = m + 3*mu");
    assert!((file.norm_constant - 1.0 / 34.0).abs() < 1e-16);
    let rho = file.matrix().unwrap();
    assert!((rho.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
    let eig = hermitian_eigen(&rho).unwrap();
    for (l, w) in eig.eigenvalues.iter().zip([14.0, 11.0, 6.0, 3.0]) {
        assert!((l - w / 34.0).abs() < 1e-12);
    }
}

#[test]
fn construct_all_ones() {
    let file = state_of(&boundent(&["construct", "--family", "a", "--params", "1,1,1,1,1,1"]));
    let eig = hermitian_eigen(&file.matrix().unwrap()).unwrap();
    assert!(eig.eigenvalues[..4].iter().all(|l| (l - 0.25).abs() < 1e-12));
}

#[test]
fn construct_rejects_m_zero() {
    let out = boundent(&["construct", "--family", "a", "--params", "1,2,3,1,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn certify_verdicts_and_exit_codes() {
    let out = boundent(&["certify", "--family", "a", "--params", "1,2,3,1,1,1", "--restarts", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let rep: CertificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.kind(), VerdictKind::BoundEntangled);
    let raw: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(raw["verdict"], "BoundEntangled");

    let out = boundent(&["certify", "--family", "a", "--params", "1,1,1,1,1,1", "--restarts", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let rep: CertificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.kind(), VerdictKind::Inconclusive);
    assert!(rep.witness.is_some());

    let out = boundent(&["certify", "--family", "canonical", "--params", "1,2,3,1,1,1,6,1", "--restarts", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rep: CertificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.kind(), VerdictKind::NptEntangled);
}

#[test]
fn tol_psd_override_changes_verdict() {
    // |s| = 3.01 instead of 3 is slightly NPT; a huge tolerance hides it
    let args = ["certify", "--family", "canonical", "--params", "1,2,3,1,1,1,3.01,1", "--restarts", "4"];
    let strict: CertificationReport = serde_json::from_slice(&boundent(&args).stdout).unwrap();
    assert_eq!(strict.kind(), VerdictKind::NptEntangled);
    let mut loose = args.to_vec();
    loose.extend(["--tol-psd", "1"]);
    let out = boundent(&loose);
    let rep: CertificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_ne!(rep.kind(), VerdictKind::NptEntangled);
}

#[test]
fn construct_then_certify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    let report = dir.path().join("report.json");
    let out = boundent(&[
        "construct", "--family", "a", "--params", "1,2,3,1,1,1", "--output", state.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let out = boundent(&[
        "certify", "--input", state.to_str().unwrap(), "--restarts", "20", "--output", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: CertificationReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep.kind(), VerdictKind::BoundEntangled);
}

#[test]
fn certify_rejects_bad_input_files() {
    let dir = tempfile::tempdir().unwrap();
    let corrupt = dir.path().join("corrupt.json");
    fs::write(&corrupt, "{\"params\": [1, 2").unwrap();
    let out = boundent(&["certify", "--input", corrupt.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    assert_eq!(boundent(&["certify", "--input", missing.to_str().unwrap()]).status.code(), Some(2));

    // params and matrix disagree
    let mut file = state_of(&boundent(&["construct", "--family", "a", "--params", "1,2,3,1,1,1"]));
    file.matrix[0][0][0] += 1e-3;
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, serde_json::to_string(&file).unwrap()).unwrap();
    let out = boundent(&["certify", "--input", tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));
}

#[test]
fn sample_family_b_rows() {
    let out = boundent(&["sample", "--family", "b", "--count", "1000", "--seed", "7", "--restarts", "1", "--max-iters", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<SampleRow> = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 1000);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.index, i as u64);
        let p = row.params();
        assert!((p.s.norm() - p.a.re * p.c.re / p.n.re).abs() < 1e-9 * p.s.norm());
        assert!((p.t.norm() - p.a.re * p.d.re / p.m.re).abs() < 1e-9 * p.t.norm());
        if row.pt_min_eigenvalue < -1e-10 {
            assert_eq!(row.verdict, VerdictKind::NptEntangled);
        }
    }
    // measured: free phases of s and t give a negative partial transpose
    let npt = rows.iter().filter(|r| r.pt_min_eigenvalue < -1e-10).count();
    assert_eq!(npt, 1000);
}

#[test]
fn sample_family_a_self_transpose() {
    let out = boundent(&["sample", "--family", "a", "--count", "100", "--seed", "1", "--restarts", "2"]);
    let rows: Vec<SampleRow> = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r.sigma_equals_rho));
    assert!(rows.iter().all(|r| r.verdict != VerdictKind::NptEntangled));
}

#[test]
fn sample_is_byte_identical() {
    let args = ["sample", "--family", "b", "--count", "1", "--seed", "5", "--restarts", "5"];
    let a = boundent(&args);
    let b = boundent(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("index,seed,family,a_re,"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn sample_json_format() {
    let out = boundent(&["sample", "--family", "raw", "--count", "3", "--seed", "2", "--restarts", "2", "--format", "json"]);
    let rows: Vec<SampleRow> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().any(|r| r.a_im != 0.0));
}

#[test]
fn sweep_abs_s_touches_constraint() {
    let out = boundent(&[
        "sweep", "--var", "|s|", "--lo", "1.5", "--hi", "4.5", "--steps", "31", "--params", "1,2,3,1,1,1", "--restarts", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<SweepRow> = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 31);
    let at = rows.iter().find(|r| (r.value - 3.0).abs() < 1e-12).unwrap();
    assert!(at.pt_min_eigenvalue >= -1e-10);
    assert!(rows.iter().any(|r| r.pt_min_eigenvalue < -1e-10));
    // away from |s| = ac/n the partial transpose is negative
    assert!(rows
        .iter()
        .filter(|r| (r.value - 3.0).abs() > 0.05)
        .all(|r| r.verdict == VerdictKind::NptEntangled));
}

#[test]
fn sweep_phi_s_is_ppt_only_at_zero() {
    let out = boundent(&[
        "sweep", "--var", "phi_s", "--lo", "-3.0", "--hi", "3.0", "--steps", "13", "--restarts", "2",
    ]);
    let rows: Vec<SweepRow> = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 13);
    for r in &rows {
        let ppt = r.pt_min_eigenvalue >= -1e-10;
        assert_eq!(ppt, r.value.abs() < 1e-12, "phi_s = {} min {}", r.value, r.pt_min_eigenvalue);
    }
}

#[test]
fn sweep_magnitude_stays_ppt() {
    let out = boundent(&["sweep", "--var", "c", "--lo", "0.5", "--hi", "5", "--steps", "5", "--restarts", "2", "--format", "json"]);
    let rows: Vec<SweepRow> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.iter().all(|r| r.pt_min_eigenvalue >= -1e-10));
}

#[test]
fn sweep_rejects_unknown_variable() {
    let out = boundent(&["sweep", "--var", "q", "--lo", "0", "--hi", "1", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(boundent(&["construct", "--bogus"]).status.code(), Some(2));
}
