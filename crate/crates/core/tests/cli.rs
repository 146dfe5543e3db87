//! End-to-end checks of the binary: formats, determinism and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_colorex"))
}

fn write_fixture(name: &str, value: &serde_json::Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("colorex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn triangle_family() -> serde_json::Value {
    json!({
        "k": 2,
        "colors": ["black", "white"],
        "graphs": [{
            "k": 2, "n": 3, "colors": ["black", "white"],
            "edges": {"1,2": "black", "1,3": "black", "2,3": "black"}
        }]
    })
}

fn single_color_ground() -> serde_json::Value {
    json!({
        "r": 2, "k": 2, "partSizes": [2, 2],
        "colorSets": {"1": ["c"], "2": ["c"], "1,2": ["c"]},
        "coloring": {
            "1": {"1": "c", "2": "c"},
            "2": {"1": "c", "2": "c"},
            "1,2": {"1|1": "c", "2|1": "c", "1|2": "c", "2|2": "c"}
        }
    })
}

/// 2x2 ground with XOR edge colors: irregular at h=2 under zero slack.
fn xor_ground() -> serde_json::Value {
    json!({
        "r": 2, "k": 2, "partSizes": [2, 2],
        "colorSets": {"1": ["u"], "2": ["v"], "1,2": ["black", "white"]},
        "coloring": {
            "1": {"1": "u", "2": "u"},
            "2": {"1": "v", "2": "v"},
            "1,2": {"1|1": "black", "2|1": "white", "1|2": "white", "2|2": "black"}
        }
    })
}

#[test]
fn ex_triangle_n4() {
    let fam = write_fixture("fam.json", &triangle_family());
    let out = bin().args(["ex", "--family"]).arg(&fam).args(["--n", "4"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("bestProduct=16"), "{text}");
    assert!(text.contains("ex=4/6"), "{text}");
    assert!(text.contains("witness="), "{text}");
}

#[test]
fn count_triangle_n3() {
    let fam = write_fixture("fam-count.json", &triangle_family());
    let out = bin().args(["count", "--family"]).arg(&fam).args(["--n", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("count=7"));
}

#[test]
fn member_and_exit_codes() {
    let fam = write_fixture("fam-member.json", &triangle_family());
    let host = write_fixture(
        "host.json",
        &json!({
            "k": 2, "n": 3, "colors": ["black", "white"],
            "edges": {"1,2": "black", "1,3": "white", "2,3": "black"}
        }),
    );
    let out = bin()
        .args(["member", "--family"])
        .arg(&fam)
        .arg("--graph")
        .arg(&host)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("member=true"));
}

#[test]
fn malformed_input_exits_2() {
    let bad = write_fixture("bad.json", &json!({"k": 2, "n": 3, "colors": ["black"]}));
    let out = bin()
        .args(["member", "--family"])
        .arg(&bad)
        .arg("--graph")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("graphs"), "{err}");
}

#[test]
fn budget_exhaustion_exits_3() {
    let fam = write_fixture("fam-budget.json", &triangle_family());
    let out = bin()
        .env("COLOREX_NODE_CAP", "3")
        .args(["count", "--family"])
        .arg(&fam)
        .args(["--n", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn regcheck_single_color_passes() {
    let g = write_fixture("ground.json", &single_color_ground());
    let out = bin()
        .args(["regcheck", "--graph"])
        .arg(&g)
        .args(["--eps", "0.04", "--h", "1", "--mode", "exact"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verdict PASS"));
}

#[test]
fn regcheck_violation_exits_1() {
    let g = write_fixture("xor.json", &xor_ground());
    let out = bin()
        .args(["regcheck", "--graph"])
        .arg(&g)
        .args(["--eps", "4.0", "--h", "2", "--mode", "exact"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict FAIL"));
}

#[test]
fn sampled_mode_requires_seed_and_is_deterministic() {
    let g = write_fixture("ground-sampled.json", &xor_ground());
    let missing = bin()
        .args(["regcheck", "--graph"])
        .arg(&g)
        .args(["--eps", "4.0", "--mode", "sampled"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let run = || {
        bin()
            .args(["regcheck", "--graph"])
            .arg(&g)
            .args(["--eps", "4.0", "--mode", "sampled", "--samples", "500", "--seed", "11"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout, "same seed must reproduce the report verbatim");
    let other = bin()
        .args(["regcheck", "--graph"])
        .arg(&g)
        .args(["--eps", "4.0", "--mode", "sampled", "--samples", "500", "--seed", "12"])
        .output()
        .unwrap();
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn fit_delta_and_exceptional_pipeline() {
    let g = write_fixture("ground-fit.json", &single_color_ground());
    let out = bin()
        .args(["fit-delta", "--graph"])
        .arg(&g)
        .args(["--eps", "0.04"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict PASS"));

    let exc = bin()
        .args(["exceptional", "--graph"])
        .arg(&g)
        .args(["--eps", "0.04"])
        .output()
        .unwrap();
    assert!(exc.status.success());
    assert!(stdout(&exc).contains("exceptional=0/4"));

    let good = bin()
        .args(["goodify", "--graph"])
        .arg(&g)
        .args(["--eps", "0.04"])
        .output()
        .unwrap();
    assert!(good.status.success());
    assert!(stdout(&good).contains("{1,2} 1|1: [\"c\"]"));
}

#[test]
fn expand_bi_round_trips() {
    let fam = write_fixture(
        "bifam.json",
        &json!({
            "k": 2, "ell": 1, "colors": ["black", "invisible"],
            "graphs": [{
                "k": 2, "n": 3, "colors": ["black", "invisible"],
                "edges": {"1,2": "black", "1,3": "black", "2,3": "invisible"}
            }]
        }),
    );
    let out = bin().args(["expand-bi", "--family"]).arg(&fam).output().unwrap();
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(parsed["colors"], json!(["black", "white_1"]));
    assert!(!parsed["graphs"].as_array().unwrap().is_empty());
}

#[test]
fn verify_suite_runs() {
    let out = bin().args(["verify", "--suite", "oracle"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("checks passed"));

    let bad = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
