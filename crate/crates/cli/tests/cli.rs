// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn bcprof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcprof")).args(args).output().unwrap()
}

fn bcprof_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcprof"))
        .env("BCPROF_THREADS", threads)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &Path, spec: &str) -> String {
    let path = dir.join(format!("{}.tree", spec.replace([':', ','], "_")));
    let p = path.to_str().unwrap().to_string();
    let o = bcprof(&["gen", spec, "--out", &p]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn claw_file(dir: &Path) -> String {
    let p = dir.join("claw.tree");
    std::fs::write(&p, "# example\n11\n0 1\n1 2\n2 3\n3 4\n4 5\n4 6\n4 7\n5 8\n6 9\n7 10\n").unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_writes_family_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "gij:3,5");
    let text = std::fs::read_to_string(p).unwrap();
    assert!(text.contains("# family: gij:3,5"));
    assert!(text.contains("# designated: v=1"));
    let n: usize = text.lines().find(|l| !l.starts_with('#')).unwrap().parse().unwrap();
    assert_eq!(n, 51);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 51);
}

#[test]
fn gen_rejects_bad_specs() {
    assert_eq!(bcprof(&["gen", "broom:0,3"]).status.code(), Some(3));
    assert_eq!(bcprof(&["gen", "star:3"]).status.code(), Some(3));
    assert_eq!(bcprof(&["gen", "double-broom:3,2"]).status.code(), Some(3));
    assert_eq!(bcprof(&["gen"]).status.code(), Some(2));
}

#[test]
fn gen_scale_free_is_deterministic() {
    let a = bcprof(&["gen", "scale-free:250", "--seed", "7"]);
    let b = bcprof(&["gen", "scale-free:250", "--seed", "7"]);
    let c = bcprof(&["gen", "scale-free:250", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn profile_claw_example() {
    let dir = tempfile::tempdir().unwrap();
    let p = claw_file(dir.path());
    let out = stdout(&bcprof(&["profile", "--tree", &p, "--all"]));
    let rows = |v: usize| -> Vec<String> {
        out.lines()
            .skip(1)
            .filter(|l| l.split(',').next() == Some(&v.to_string()))
            .map(|l| l.split_once(',').unwrap().1.to_string())
            .collect()
    };
    assert_eq!(rows(5), rows(6));
    assert_eq!(rows(6), rows(7));
    assert_eq!(rows(5).len(), 5);
    for r in rows(8) {
        let fields: Vec<_> = r.split(',').collect();
        assert_eq!(fields[1], "0");
        assert_eq!(fields[4], "0.000000");
    }
    let json = stdout(&bcprof(&["profile", "--tree", &p, "--vertex", "1", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[1]["reduced"], "1/13");
}

#[test]
fn profile_path_is_non_decreasing() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "path:10");
    let out = stdout(&bcprof(&["profile", "--tree", &p, "--vertex", "5"]));
    let decimals: Vec<f64> = out.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(decimals.len(), 9);
    assert!(decimals.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn profile_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "path:4");
    assert_eq!(bcprof(&["profile", "--tree", &p, "--vertex", "9"]).status.code(), Some(5));
    assert_eq!(bcprof(&["profile", "--tree", "/nonexistent/x.tree", "--all"]).status.code(), Some(4));
    assert_eq!(bcprof(&["profile", "--tree", &p]).status.code(), Some(2));
}

#[test]
fn analyze_dips_and_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "gij:6,5");
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&bcprof(&["analyze", "--tree", &g, "--vertex", "1"]))).unwrap();
    assert!(v["dip_count"].as_u64().unwrap() >= 4);

    let t = gen(dir.path(), "tell:3");
    let text = std::fs::read_to_string(&t).unwrap();
    let designated = text.lines().find_map(|l| l.strip_prefix("# designated: ")).unwrap();
    let ids: Vec<String> = designated.split(' ').map(|s| s.split_once('=').unwrap().1.to_string()).collect();
    let out = bcprof(&["analyze", "--tree", &t, "--pair", &ids[0], &ids[1]]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["crossing_count"].as_u64().unwrap() >= 3);

    let c = claw_file(dir.path());
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&bcprof(&["analyze", "--tree", &c, "--pair", "5", "6"]))).unwrap();
    assert_eq!(v["crossing_count"], 0);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_checks() {
    let o = bcprof(&["verify", "--check", "corollary1", "--max-size", "50"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("corollary1: PASS"));
    let o = bcprof(&["verify", "--check", "lemma1", "--max-size", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(bcprof(&["verify", "--check", "bogus"]).status.code(), Some(7));
}

#[test]
fn verify_reports_failures_with_exit_one() {
    let o = bcprof(&["verify", "--check", "theorem1", "--max-size", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("G_6,5 r=5"));
}

#[test]
fn expect_exact_and_sampled() {
    let out = stdout(&bcprof(&["expect", "--n", "4", "--k", "2", "--exact"]));
    let values: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(values, vec!["8/5", "11/15", "1/5", "0"]);
    assert_eq!(bcprof(&["expect", "--n", "12", "--k", "3", "--exact"]).status.code(), Some(6));

    let a = bcprof_threads("1", &["expect", "--n", "10", "--k", "3", "--trials", "300", "--seed", "4"]);
    let b = bcprof_threads("3", &["expect", "--n", "10", "--k", "3", "--trials", "300", "--seed", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("vertex,k,mean,stderr,trials\n1,3,"));
}

#[test]
fn experiment_is_byte_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let o = bcprof_threads(
            threads,
            &[
                "experiment", "--which", "no_cross_12_vs_n", "--trials", "400", "--seed", "5",
                "--grid", "10,40", "--out", out.to_str().unwrap(),
            ],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let one = run("1", "a.csv");
    let four = run("4", "b.csv");
    assert_eq!(one, four);
    let text = String::from_utf8(one).unwrap();
    assert_eq!(text.lines().next(), Some("x,estimate,stderr,trials,seed"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn experiment_defaults_in_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = bcprof(&["experiment", "--which", "monotone_i_vs_i", "--grid", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = std::fs::read_to_string(dir.path().join("m.csv.manifest.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(v["config"]["trials"], 5000);
    assert_eq!(v["config"]["fixed_n"], 250);
    assert_eq!(v["config"]["which"], "monotone_i_vs_i");
    assert!(v["wall_time_secs"].as_f64().unwrap() >= 0.0);
    assert_eq!(bcprof(&["experiment", "--which", "nope"]).status.code(), Some(3));
}
