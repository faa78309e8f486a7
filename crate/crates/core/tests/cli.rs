//! End-to-end behaviour of the `orbitdist` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn orbitdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitdist")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dist_json_report() {
    let o = orbitdist(&["dist", "--q", "3", "--n", "11", "--subspace", "span(z^13,z^17,z^21,z^23)", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([87048, 1512, 12, 0]));
    assert_eq!(v["t"], 1);
    assert_eq!(v["orbit_size"], 88573);
    assert_eq!(v["min_distance"], 4);
    assert_eq!(v["delta"]["8"], 87048);
    // Ordered pairs at distance 6: |Orb(U)| · λ_1.
    assert_eq!(v["pair_counts"]["6"], 88573u64 * 1512);
    for key in ["q", "p", "e", "n", "modulus", "subspace", "k", "shifts", "seed", "version", "wall_time_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn dist_degenerate_orbit_and_csv() {
    let dir = std::env::temp_dir().join(format!("orbitdist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("rows.csv");
    let o = orbitdist(&[
        "dist",
        "--q",
        "2",
        "--n",
        "14",
        "--subspace",
        "z^11*F(2,2)+z^13*F(2,2)+z^14*F(2,2)",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("|Orb(U)| = 5461"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,lambda_i,distance,delta,pair_count");
    assert_eq!(lines[1], "0,5040,12,5040,27523440");
    assert_eq!(lines[3], "2,420,8,420,2293620");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 7] = [
        (&["dist", "--q", "2", "--n", "6", "--subspace", "span(z"], 2),
        (&["dist", "--q", "2", "--n", "6"], 2),
        (&["dist", "--q", "3", "--n", "16", "--subspace", "span(z)", "--budget", "1000"], 3),
        (&["dist", "--q", "6", "--n", "3", "--subspace", "span(z)"], 4),
        (&["dist", "--q", "2", "--n", "4", "--modulus", "1,0,1,0,1", "--subspace", "span(z)"], 4),
        (&["verify", "--check", "no_such_check", "--q", "2", "--n", "5"], 2),
        (&["field-info", "--q", "2", "--n", "4"], 0),
    ];
    for (args, code) in cases {
        let o = orbitdist(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn caret_points_at_the_error() {
    let o = orbitdist(&["dist", "--q", "3", "--n", "11", "--subspace", "span(z^13, z^17 z^21)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines[0], "error: invalid --subspace");
    assert_eq!(lines[1], "span(z^13, z^17 z^21)");
    assert_eq!(lines[2].find('^'), Some("span(z^13, z^17 ".len()));
    assert!(lines[2].ends_with("expected `,` or `)`, found `z`"));
}

#[test]
fn field_info_lists_subfields() {
    let o = orbitdist(&["field-info", "--q", "2", "--n", "14", "--dim", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conway"], true);
    let subfields = v["subfields"].as_array().unwrap();
    let degrees: Vec<u64> = subfields.iter().map(|s| s["s"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [1, 2, 7, 14]);
    assert_eq!(subfields[1]["exponent"], 5461);
}

#[test]
fn verify_list_and_single_check() {
    let o = orbitdist(&["verify", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 22);
    let o = orbitdist(&["verify", "--check", "thm_3_14", "--q", "2", "--n", "14", "--dim", "6", "--t", "2", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS thm_3_14"));
}

#[test]
fn reproduce_small_examples() {
    let o = orbitdist(&["reproduce", "--skip-large"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn reproduce_modulus_override_reports_mismatch() {
    // A primitive non-Conway modulus changes the q = 3, n = 16 distribution
    // but not the modulus-independent invariants. (The four smaller examples
    // come out the same under every alternative modulus tried.)
    let o = orbitdist(&["reproduce", "--q", "3", "--n", "16", "--modulus", "2,0,1,0,2,1,0,0,0,0,0,0,0,0,0,0,1"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("FAIL q3-n16-large"), "{out}");
    assert!(out.contains("sum rule PASS, divisibility PASS"), "{out}");
    assert!(out.contains("x^16 + x^5 + 2x^4 + x^2 + 2 (NOT the Conway polynomial)"), "{out}");
}
