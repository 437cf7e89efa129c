use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use proptest::prelude::*;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn subdiv(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_subdiv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // A verb that fails before reading may close stdin early.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subdiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

fn generate(family: &str, seed: u64) -> String {
    let r = subdiv(&["gen", "--family", family, "--seed", &seed.to_string()], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}

/// Minimum out-degree straight from the edge-list text.
fn min_out_degree(text: &str) -> usize {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let n: usize = lines.next().unwrap()[2..].parse().unwrap();
    let mut out = vec![0; n];
    for l in lines {
        let tail: usize = l.split_whitespace().next().unwrap().parse().unwrap();
        out[tail] += 1;
    }
    out.into_iter().min().unwrap()
}

#[test]
fn two_block_on_a_host_at_the_bound() {
    let (k1, k2) = (2, 3);
    let bound = 2 * (k1 + k2) - 1;
    let host = generate(&format!("exact_outdegree:50,{bound}"), 11);
    assert!(min_out_degree(&host) >= 9);
    let r = subdiv(&["find-two-block", "--k1", "2", "--k2", "3"], &host);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let cert = json(&r.stdout);
    assert_eq!(cert["pattern"]["kind"], "two_block_cycle");

    let h = scratch("tb-host.dg", &host);
    let c = scratch("tb-cert.json", &r.stdout);
    let v = subdiv(&["verify", "--host", h.to_str().unwrap(), "--cert", c.to_str().unwrap()], "");
    assert_eq!(v.code, 0);
    assert_eq!(json(&v.stdout)["status"], "ok");
}

#[test]
fn tampered_certificate_names_the_violation() {
    let host = generate("exact_outdegree:40,9", 2);
    let cert = subdiv(&["find-two-block", "--k1", "2", "--k2", "3"], &host).stdout;
    let mut doc = json(&cert);
    // drop the last vertex of the first arc path
    doc["arc_paths"][0]["path"].as_array_mut().unwrap().pop();
    let h = scratch("tamper-host.dg", &host);
    let c = scratch("tamper-cert.json", &doc.to_string());
    let v = subdiv(&["verify", "--host", h.to_str().unwrap(), "--cert", c.to_str().unwrap()], "");
    assert_eq!(v.code, 1);
    let out = json(&v.stdout);
    assert_eq!(out["status"], "rejected");
    let kinds: Vec<&str> = out["violations"].as_array().unwrap().iter().map(|v| v["kind"].as_str().unwrap()).collect();
    assert!(kinds.iter().any(|k| ["endpoint mismatch", "path too short"].contains(k)), "{kinds:?}");

    // a different host is caught by its hash
    let other = scratch("tamper-other.dg", &generate("exact_outdegree:40,9", 3));
    let v = subdiv(&["verify", "--host", other.to_str().unwrap(), "--cert", c.to_str().unwrap()], "");
    assert_eq!(v.code, 1);
    assert!(v.stdout.contains("host mismatch"));
}

#[test]
fn dicolour_bidirected_k5() {
    let mut text = String::from("n 5\n");
    for u in 0..5 {
        for v in 0..5 {
            if u != v {
                text.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    let r = subdiv(&["dicolour"], &text);
    assert_eq!(r.code, 0);
    let out = json(&r.stdout);
    assert_eq!(out["k"], 5);
    assert_eq!(out["classes"].as_array().unwrap().len(), 5);

    let r = subdiv(&["dicolour", "--k", "4"], &text);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r.stdout)["reason"], "not_found");
}

#[test]
fn every_finder_round_trips_through_verify() {
    let cases: [(&str, &[&str]); 7] = [
        ("exact_outdegree:40,5", &["find-path", "--blocks", "2,1,2"]),
        ("exact_outdegree:40,4", &["find-cycle", "--k", "4"]),
        ("exact_outdegree:40,9", &["find-two-block", "--k1", "3", "--k2", "2"]),
        ("exact_outdegree:40,7", &["find-triple", "--k1", "2", "--k2", "2", "--k3", "2"]),
        ("exact_outdegree:150,36", &["find-inarb", "--depth", "2", "--branching", "2"]),
        ("bidirected_complete:9", &["find-dic", "--pattern", "directed_cycle:3", "--method", "peel"]),
        ("bidirected_complete:6", &["find-dic", "--pattern", "transitive_tournament:3"]),
    ];
    for (i, (family, args)) in cases.iter().enumerate() {
        let host = generate(family, i as u64);
        let r = subdiv(args, &host);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stdout);
        let c = scratch(&format!("rt-{i}.json"), &r.stdout);
        // host from stdin this time
        let v = subdiv(&["verify", "--cert", c.to_str().unwrap()], &host);
        assert_eq!(v.code, 0, "{args:?}: {}", v.stdout);
    }
}

#[test]
fn honest_failures_exit_one_with_a_reason() {
    let cycle = "n 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
    let r = subdiv(&["find-two-block", "--k1", "2", "--k2", "3"], cycle);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r.stdout)["reason"], "hypothesis_unmet");
    assert!(r.stdout.lines().count() == 1, "no partial certificate");

    let big = generate("gnp:25,0.3", 1);
    let r = subdiv(&["dicolour"], &big);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r.stdout)["reason"], "size_guard");

    let tt = generate("transitive_tournament:5", 0);
    let r = subdiv(&["oracle", "--pattern", "directed_cycle:3"], &tt);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r.stdout)["reason"], "not_found");

    let r = subdiv(&["oracle", "--pattern", "transitive_tournament:3"], &tt);
    assert_eq!(r.code, 0);
}

#[test]
fn malformed_input_exits_two() {
    for bad in ["", "n 3\n0 5\n", "0 1\n", "n 2\n0 0\n", "n 2\n0 1\n0 1\n"] {
        let r = subdiv(&["dicolour"], bad);
        assert_eq!(r.code, 2, "{bad:?}");
        assert!(r.stdout.is_empty());
        assert_eq!(json(&r.stderr)["status"], "error");
    }
    let r = subdiv(&["verify", "--cert", scratch("junk.json", "{not json").to_str().unwrap()], "n 1\n");
    assert_eq!(r.code, 2);
    let r = subdiv(&["find-path"], "n 1\n");
    assert_eq!(r.code, 2);
    let r = subdiv(&["find-dic", "--pattern", "no_such_kind:1"], "n 1\n");
    assert_eq!(r.code, 2);
    assert_eq!(json(&r.stderr)["reason"], "invalid_pattern");
}

#[test]
fn options_are_checked_before_input_is_read() {
    // The host path does not exist; the bad option must be what is reported.
    let missing = "/nonexistent/host.dg";
    for args in [
        &["find-two-block", "--k1", "0", "--k2", "3", "--host", missing][..],
        &["find-path", "--blocks", "1,0", "--host", missing],
        &["find-triple", "--k1", "1", "--k2", "1", "--k3", "2", "--host", missing],
        &["find-dic", "--pattern", "directed_cycle:1", "--host", missing],
    ] {
        let r = subdiv(args, "");
        assert_eq!(r.code, 2);
        assert_eq!(json(&r.stderr)["reason"], "invalid_pattern", "{args:?}");
    }
}

#[test]
fn randomized_verbs_need_a_seed() {
    assert_eq!(subdiv(&["gen", "--family", "random_tournament:5"], "").code, 2);
    assert_eq!(subdiv(&["experiment", "--suite", "triple"], "").code, 2);
}

#[test]
fn experiments_replay() {
    let r = subdiv(&["experiment", "--suite", "two-block", "--trials", "4", "--seed", "5"], "");
    assert_eq!(r.code, 0);
    let header = r.stdout.lines().next().unwrap();
    assert_eq!(header, "suite\ttrial\tgenspec\tparams\tn\tmin_out_degree\tsuccess\tverified\tmillis");
    let again = subdiv(&["experiment", "--suite", "two-block", "--trials", "4", "--seed", "5"], "");
    assert_eq!(again.stdout, r.stdout);
    let t = scratch("table.tsv", &r.stdout);
    let replay = subdiv(&["experiment", "--replay", t.to_str().unwrap()], "");
    assert_eq!(replay.stdout, r.stdout);

    // every row's descriptor regenerates its host
    for row in r.stdout.lines().skip(1) {
        let cols: Vec<&str> = row.split('\t').collect();
        let (family, seed) = cols[2].rsplit_once(':').unwrap();
        let host = generate(family, seed.parse().unwrap());
        assert!(host.contains(&format!("n {}\n", cols[4])));
        assert_eq!(min_out_degree(&host).to_string(), cols[5]);
        assert_eq!((cols[6], cols[7]), ("true", "true"));
    }
    let help = subdiv(&["experiment", "--help"], "");
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("min_out_degree"));
}

#[test]
fn in_process_run_matches_binary() {
    let host = generate("exact_outdegree:30,4", 8);
    let out = subdiv_cli::run(["subdiv", "find-cycle", "--k", "4"], &mut host.as_bytes());
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, subdiv(&["find-cycle", "--k", "4"], &host).stdout);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn find_then_verify(seed in 0u64..1000, k in 2usize..6) {
        let host = generate(&format!("random_min_outdegree:30,{k},0.05"), seed);
        let r = subdiv(&["find-cycle", "--k", &k.to_string()], &host);
        prop_assert_eq!(r.code, 0);
        let c = scratch(&format!("pt-{seed}-{k}.json"), &r.stdout);
        prop_assert_eq!(subdiv(&["verify", "--cert", c.to_str().unwrap()], &host).code, 0);
    }
}
