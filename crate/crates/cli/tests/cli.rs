use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn shiftcrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftcrit"))
        .args(args)
        .env_remove("SHIFTCRIT_MAX_SECONDS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_dimacs_headers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g5.dimacs");
    let out = shiftcrit(&[
        "gen",
        "5",
        "--format",
        "dimacs",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&path)
        .unwrap()
        .lines()
        .any(|l| l == "p edge 10 10"));

    let out = shiftcrit(&["gen", "3", "--format", "dimacs"]);
    assert!(String::from_utf8_lossy(&out.stdout)
        .lines()
        .any(|l| l == "p edge 3 1"));
}

#[test]
fn gen_json_has_all_vertices() {
    let out = shiftcrit(&["gen", "17", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 136);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 680);
}

#[test]
fn gen_to_unwritable_path_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("g.dimacs");
    let out = shiftcrit(&["gen", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn core_member_counts() {
    for (n, count) in [("2", 5), ("3", 19), ("4", 87)] {
        let doc = stdout_json(&shiftcrit(&["core", n]));
        assert_eq!(doc["members"].as_array().unwrap().len(), count, "n = {n}");
        assert_eq!(
            doc["intervals"].as_array().unwrap().len(),
            n.parse::<usize>().unwrap() + 1
        );
    }
}

#[test]
fn chi_examples() {
    for (args, chi) in [
        (vec!["chi", "5"], 3),
        (vec!["chi", "5", "--delete", "2,3"], 2),
        (vec!["chi", "--core", "2"], 3),
    ] {
        let out = shiftcrit(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout_json(&out)["chi"], chi, "{args:?}");
    }
}

#[test]
fn chi_writes_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = shiftcrit(&[
        "chi",
        "--core",
        "2",
        "--cert-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    for name in ["coloring", "sequence", "refutation"] {
        let path = doc["certificates"][name].as_str().unwrap();
        let cert: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        assert!(cert.is_object(), "{name}");
    }
    let refutation: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("refutation.json")).unwrap())
            .unwrap();
    assert_eq!(refutation["sequence"]["k"], 2);
    assert_eq!(refutation["sequence"]["conclusive"], true);
    assert_eq!(refutation["branch_and_bound"]["conclusive"], true);
}

#[test]
fn chi_invalid_vertex_exits_2() {
    let out = shiftcrit(&["chi", "5", "--delete", "3,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = shiftcrit(&["chi", "5", "--delete", "1,6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chi_exhausted_budget_exits_3() {
    let out = shiftcrit(&["chi", "9", "--max-nodes", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_examples_pass() {
    let dir = tempfile::tempdir().unwrap();
    for (theorem, n) in [("1", "2"), ("2", "3"), ("3", "2")] {
        let path = dir.path().join(format!("t{theorem}.json"));
        let out = shiftcrit(&["verify", theorem, "--n", n, "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "theorem {theorem}");
        let report: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(report["status"], "pass");
    }
}

#[test]
fn verify_uniqueness_names_w() {
    let doc = stdout_json(&shiftcrit(&["verify", "1", "--n", "2"]));
    let critical = &doc["certificates"]["enumeration"]["critical"];
    assert_eq!(critical.as_array().unwrap().len(), 1);
    let pairs: Vec<(u64, u64)> = critical[0]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (v["x"].as_u64().unwrap(), v["y"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(1, 2), (2, 3), (2, 4), (3, 4), (4, 5)]);
}

#[test]
fn verify_inconclusive_exits_3() {
    let out = shiftcrit(&["verify", "3", "--n", "3", "--max-nodes", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_json(&out)["status"], "inconclusive");
}

#[test]
fn verify_members_only_skips_refutations() {
    let doc = stdout_json(&shiftcrit(&["verify", "2", "--n", "2", "--members-only"]));
    assert_eq!(doc["status"], "pass");
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "skipped"));
}

#[test]
fn budget_seconds_read_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_shiftcrit"))
        .args(["verify", "3", "--n", "4"])
        .env("SHIFTCRIT_MAX_SECONDS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn diagram_range_and_output() {
    assert_eq!(shiftcrit(&["diagram", "1"]).status.code(), Some(2));
    assert_eq!(shiftcrit(&["diagram", "9"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w3.svg");
    let out = shiftcrit(&["diagram", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches(r#"class="cell core""#).count(), 19);
    assert_eq!(svg.matches(r#"class="region""#).count(), 4);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["gen", "9", "--format", "json"],
        vec!["core", "3"],
        vec!["diagram", "4"],
        vec!["chi", "--core", "2"],
        vec!["verify", "2", "--n", "2"],
    ] {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{}-{run}", args.join("_")));
            let out = shiftcrit(&args);
            fs::write(&path, &out.stdout).unwrap();
            files.push(fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "{args:?}");
    }
}

#[test]
fn diagram_output_is_the_library_rendering() {
    for n in 2..=4 {
        let out = shiftcrit(&["diagram", &n.to_string()]);
        let expected = shiftcrit_core::diagram::render_svg(
            &shiftcrit_core::diagram::DiagramSpec::new(n).unwrap(),
        )
        .unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "n = {n}");
    }
}
