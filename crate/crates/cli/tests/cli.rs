use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bochert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("bochert-cli-{}-{name}.json", std::process::id()))
}

/// Runs with `--json` and returns the parsed document and the exit code.
fn run_json(args: &[&str], name: &str) -> (Value, i32) {
    let path = json_path(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = run(&full);
    let text = std::fs::read_to_string(&path).expect("json written");
    std::fs::remove_file(&path).ok();
    (
        serde_json::from_str(&text).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn info_symmetric() {
    let (doc, code) = run_json(&["info", "catalog:S5"], "info-s5");
    assert_eq!(code, 0);
    assert_eq!(doc["order"], "120");
    assert_eq!(doc["t"], 5);
    assert_eq!(doc["m"], 2);
    assert!(stdout(&run(&["info", "catalog:S5"])).contains("order: 120"));
}

#[test]
fn info_m12() {
    let (doc, code) = run_json(&["info", "catalog:M12"], "info-m12");
    assert_eq!(code, 0);
    assert_eq!(
        (doc["order"].as_str(), doc["t"].as_u64(), doc["m"].as_u64()),
        (Some("95040"), Some(5), Some(8))
    );
}

#[test]
fn json_document_shape() {
    let (doc, _) = run_json(&["verify", "catalog:A5", "all", "--samples", "20"], "shape");
    let keys: Vec<&str> = doc
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "command",
            "elapsed_ms",
            "group",
            "m",
            "method",
            "n",
            "order",
            "schema",
            "seed",
            "suites",
            "t",
            "version"
        ]
    );
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["elapsed_ms"], 0);
    let suites = doc["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    for s in suites {
        for c in s["checks"].as_array().unwrap() {
            for key in ["label", "relation", "observed", "formula", "pass"] {
                assert!(c.get(key).is_some(), "{key}");
            }
        }
    }
}

#[test]
fn missing_file_fails() {
    let out = run(&["info", "file:/nonexistent/missing.perm"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.perm"));
}

#[test]
fn file_groups_load() {
    let path = std::env::temp_dir().join(format!("bochert-cli-{}-s4.perm", std::process::id()));
    std::fs::write(&path, "degree 4\n# label: sym4\n(1,2,3,4)\n(1,2)\n").unwrap();
    let spec = format!("file:{}", path.display());
    let (doc, code) = run_json(&["info", &spec], "file");
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(doc["group"], "sym4");
    assert_eq!(doc["order"], "24");
}

#[test]
fn cyclic_counts_inapplicable() {
    let (doc, code) = run_json(&["verify", "catalog:C6", "counts"], "c6");
    assert_eq!(code, 0);
    let suite = &doc["suites"][0];
    assert_eq!(suite["applicable"], false);
    let notes = suite["notes"].as_array().unwrap();
    assert_eq!(notes.len(), 5);
    assert!(notes
        .iter()
        .all(|n| n.as_str().unwrap().contains("inapplicable")));
}

#[test]
fn laws_pass_on_sym8() {
    let out = run(&[
        "verify",
        "catalog:S8",
        "laws",
        "--samples",
        "2000",
        "--jobs",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn trace_alternating_is_gated() {
    let (doc, code) = run_json(&["trace", "catalog:S6", "3.1"], "s6");
    assert_eq!(code, 0);
    let suite = &doc["suites"][0];
    assert!(suite["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    assert!(suite["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n.as_str().unwrap().contains("not asserted")));
}

#[test]
fn trace_m11_half() {
    let (doc, code) = run_json(&["trace", "catalog:M11", "half"], "m11");
    assert_eq!(code, 0);
    let details = &doc["suites"][0]["details"];
    assert_eq!(details["conclusion_holds"], true);
    assert_eq!(details["derived"]["M"], 5);
    assert_eq!(details["derived"]["p(M)"], "3409");
}

#[test]
fn table_rows() {
    let (doc, code) = run_json(&["table"], "table");
    assert_eq!(code, 0);
    let rows: Vec<(String, u64, u64)> = doc["suites"][0]["details"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["group"].as_str().unwrap().to_string(),
                r["m"].as_u64().unwrap(),
                r["bound"].as_u64().unwrap(),
            )
        })
        .collect();
    let expected = [
        ("M11", 8, 6),
        ("M12", 8, 6),
        ("M23", 16, 10),
        ("M24", 16, 11),
    ];
    assert_eq!(rows.len(), 4);
    for (row, (g, m, b)) in rows.iter().zip(expected) {
        assert_eq!((row.0.as_str(), row.1, row.2), (g, m, b));
    }
}

#[test]
fn mindeg_alternating() {
    let (doc, code) = run_json(&["mindeg", "catalog:A6"], "a6");
    assert_eq!(code, 0);
    assert_eq!(doc["m"], 3);
}

#[test]
fn mindeg_methods_agree_on_m11() {
    let (ex, _) = run_json(&["mindeg", "catalog:M11", "--method", "exhaustive"], "ex");
    let (bt, _) = run_json(&["mindeg", "catalog:M11", "--method", "backtrack"], "bt");
    assert_eq!(ex["m"], 8);
    assert_eq!(bt["m"], 8);
    assert_eq!(ex["method"], "exhaustive");
    assert_eq!(bt["method"], "backtrack");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["trace", "catalog:M11", "9.9"][..],
        &["info", "catalog:Q7"],
        &["info", "M11"],
        &["verify", "catalog:M11", "nothing"],
        &["info", "catalog:M11", "--jobs", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cap_exceeded_exits_three() {
    let out = run(&[
        "mindeg",
        "catalog:M11",
        "--method",
        "exhaustive",
        "--cap",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn seeded_output_independent_of_jobs() {
    let args = [
        "verify",
        "catalog:PGL(2,5)",
        "all",
        "--samples",
        "100",
        "--seed",
        "7",
    ];
    let one = json_path("jobs1");
    let many = json_path("jobs4");
    for (path, jobs) in [(&one, "1"), (&many, "4")] {
        let mut full = args.to_vec();
        full.extend(["--jobs", jobs, "--json", path.to_str().unwrap()]);
        assert_eq!(run(&full).status.code(), Some(0));
    }
    let a = std::fs::read(&one).unwrap();
    let b = std::fs::read(&many).unwrap();
    std::fs::remove_file(&one).ok();
    std::fs::remove_file(&many).ok();
    assert_eq!(a, b);
}
