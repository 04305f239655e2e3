use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vortexlab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn census_table_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["census", "table"]);
    assert_eq!(code(&o), 0);
    let golden = std::fs::read(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/census_table.csv")).unwrap();
    assert_eq!(o.stdout, golden);
}

#[test]
fn manifest_hashes_artifact() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["census", "table", "--out", "t.csv"])), 0);
    let bytes = std::fs::read(dir.path().join("t.csv")).unwrap();
    let m = json(&dir.path().join("t.csv.manifest.json"));
    assert_eq!(m["command"], "census table");
    assert_eq!(m["artifacts"]["t.csv"], format!("{:x}", Sha256::digest(&bytes)));
}

#[test]
fn census_records_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["census", "--genus", "2", "--kind", "stable_generic", "--d", "0"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["description"]["provenance"], "paper-transcribed");
    assert_eq!(v["description"]["euler"], -8);
    let o = run(dir.path(), &["census", "--genus", "0", "--kind", "split", "--d", "1", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.contains("projective_space(1)") && row.ends_with(",computed"), "{row}");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["vortex", "hk", "--tau", "0", "--triple", "missing.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["nonsense"])), 2);
    assert_eq!(code(&run(dir.path(), &["census", "--genus", "1"])), 2);
    assert_eq!(code(&run(dir.path(), &["census", "--genus", "3", "--kind", "stable_generic", "--d", "0"])), 2);
    assert_eq!(code(&run(dir.path(), &["limit", "sweep", "--t", "0.5,1", "--n", "32"])), 2);
    std::fs::write(dir.path().join("junk.json"), "{\"n\": 16}").unwrap();
    assert_eq!(code(&run(dir.path(), &["kw", "solve", "--problem", "junk.json"])), 2);
}

#[test]
fn kw_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (flag, name) in [(None, "plain"), (Some("--binary"), "binary")] {
        let p = format!("{name}-problem.json");
        let s = format!("{name}-solution.json");
        let mut args = vec!["kw", "manufactured", "--n", "32", "--out", &p];
        args.extend(flag);
        assert_eq!(code(&run(dir.path(), &args)), 0);
        let mut args = vec!["kw", "solve", "--problem", &p, "--tol", "1e-10", "--out", &s];
        args.extend(flag);
        assert_eq!(code(&run(dir.path(), &args)), 0);
        let v = json(&dir.path().join(&s));
        assert!(v["residual_linf"].as_f64().unwrap() <= 1e-10);
        if flag.is_none() {
            let f: Vec<f64> = serde_json::from_value(v["f"].clone()).unwrap();
            for (k, val) in f.iter().enumerate() {
                let (x, y) = ((k % 32) as f64 / 32.0, (k / 32) as f64 / 32.0);
                let want = 0.3 * (2.0 * PI * x).cos() * (2.0 * PI * y).cos();
                assert!((val - want).abs() < 1e-9);
            }
        } else {
            assert!(v["f"]["data"].is_string());
        }
    }
    // At n = 64 the round-off floor sits above 1e-12, so Newton stalls.
    assert_eq!(code(&run(dir.path(), &["kw", "manufactured", "--n", "64", "--out", "p64.json"])), 0);
    let o = run(dir.path(), &["kw", "solve", "--problem", "p64.json", "--tol", "1e-12"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn vortex_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let t = ["vortex", "triple", "--n", "32", "--alpha-zeros", "0.3,0.4", "--beta-zeros", "0.7,0.8", "--out", "t.json"];
    assert_eq!(code(&run(dir.path(), &t)), 0);
    for out in ["a.json", "b.json"] {
        let o = run(dir.path(), &["vortex", "hk", "--triple", "t.json", "--tau", "0", "--tol", "1e-8", "--out", out]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert!(v["degree_defect"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["within_contract"], true);
    // A solved state's triple is itself a valid input.
    std::fs::write(dir.path().join("solved.json"), v["triple"].to_string()).unwrap();
    let o = run(dir.path(), &["vortex", "hk", "--triple", "solved.json", "--tau", "0"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn dolbeault_counts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["dolbeault", "h0", "--degree", "-1", "--class", "0.31,0.77", "--n", "16", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["h0"].as_u64(), v["h1"].as_u64()), (Some(0), Some(1)));
    let o = run(dir.path(), &["dolbeault", "h0", "--degree", "0", "--class", "0,0", "--n", "16"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().take(2).collect::<Vec<_>>(), ["h0 = 1", "h1 = 1"]);
}

#[test]
fn sweep_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["limit", "sweep", "--m", "1", "--t", "1,0.5,0.25", "--n", "64"];
    let mut one = base.to_vec();
    one.extend(["--jobs", "1", "--out", "one.csv"]);
    let mut two = base.to_vec();
    two.extend(["--jobs", "2", "--out", "two.csv"]);
    assert_eq!(code(&run(dir.path(), &one)), 0);
    assert_eq!(code(&run(dir.path(), &two)), 0);
    let a = std::fs::read_to_string(dir.path().join("one.csv")).unwrap();
    assert_eq!(a, std::fs::read_to_string(dir.path().join("two.csv")).unwrap());
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("t,zero_id,x,y,q,flux,exponent,kw_iters,residual"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    let qs: i64 = rows.iter().take(2).map(|r| r[4].parse::<i64>().unwrap()).sum();
    assert_eq!(qs, 0);
    // Captured flux grows as t shrinks.
    let flux = |i: usize| rows[i][5].parse::<f64>().unwrap();
    assert!(flux(0) < flux(2) && flux(2) < flux(4));
    let m = json(&dir.path().join("one.csv.manifest.json"));
    assert_eq!(m["provenance"]["flux"], "computed");
    assert_eq!(m["grid_size"], 64);
}

#[test]
fn repro_kw_manufactured() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["repro", "kw-manufactured", "--out", "summary.json"]);
    assert_eq!(code(&o), 0);
    let v = json(&dir.path().join("summary.json"));
    assert_eq!(v["passed"], 1);
    assert!(v["checks"][0]["seconds"].as_f64().unwrap() < 10.0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("PASS 3 kw-manufactured"));
}

#[test]
fn repro_respects_seed() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_vortexlab"))
        .current_dir(dir.path())
        .env("VORTEXLAB_SEED", "not-a-number")
        .args(["repro", "fueter"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_vortexlab"))
        .current_dir(dir.path())
        .env("VORTEXLAB_SEED", "7")
        .args(["repro", "moments", "--out", "m.json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&dir.path().join("m.json"))["seed"], 7);
}
