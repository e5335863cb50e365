use std::path::Path;
use std::process::{Command, Output};

fn incscc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incscc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn ingest_reports_counters() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "tiny.txt", "# c\n1 2 10\n1 2 11\n3 3 12\n");
    let out = incscc(&["ingest", "--dataset", &f, "--format", "snap-temporal"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n: 2\n"));
    assert!(text.contains("m: 1\n"));
    assert!(text.contains("self_loops: 1\n"));
    assert!(text.contains("duplicates: 1\n"));
}

#[test]
fn run_writes_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("g.txt");
    let gen = incscc(&[
        "generate",
        "--vertices",
        "200",
        "--edges",
        "800",
        "--seed",
        "3",
        "--out",
        data.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let csv = dir.path().join("out.csv");
    let out = incscc(&[
        "run",
        "--dataset",
        data.to_str().unwrap(),
        "--format",
        "snap-temporal",
        "--algo",
        "learned,offline,baseline,baseline-opt",
        "--s-values",
        "0,10,20",
        "--trials",
        "2",
        "--seed",
        "5",
        "--limit",
        "500",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "dataset,algo,S,trial,seed,eta_max,eta_avg,runtime_ms,work_edges,merges"
    );
    assert_eq!(lines.len(), 1 + 3 * 2 * 4);
    assert!(lines[1].starts_with("g,learned,0,0,5,0,0,"));
    assert!(lines[4].starts_with("g,baseline-opt,0,0,5,"));
    assert!(lines[5].starts_with("g,learned,0,1,4,"));
}

#[test]
fn verify_passes_and_the_mutant_fails() {
    let ok = incscc(&["verify", "--n-max", "10", "--m-max", "30", "--seeds", "30"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = incscc(&[
        "verify",
        "--n-max",
        "10",
        "--m-max",
        "30",
        "--seeds",
        "30",
        "--inject-mutant",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("FAILED"));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "1 2 x\n");
    let csv = dir.path().join("o.csv");
    let csv = csv.to_str().unwrap();
    assert_eq!(incscc(&["ingest", "--dataset", &f]).status.code(), Some(2));
    assert_eq!(incscc(&["ingest", "--dataset", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(
        incscc(&["run", "--dataset", &f, "--algo", "dijkstra", "--out", csv])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        incscc(&["run", "--dataset", &f, "--format", "json", "--out", csv])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(incscc(&["frobnicate"]).status.code(), Some(2));
}
