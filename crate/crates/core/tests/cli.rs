mod common;

use std::path::Path;
use std::process::Command;

use common::fixture;
use eulercat::cli::run;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn eulercat(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eulercat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn every_fixture_validates() {
    let dir = fixture("");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            let r = eulercat(&["validate", p.to_str().unwrap()]);
            assert_eq!(r.code, 0, "{}: {}{}", p.display(), r.out, r.err);
            assert_eq!(r.out, "");
            seen += 1;
        }
    }
    assert!(seen >= 8);
}

#[test]
fn functions_validate_against_their_category() {
    for f in ["parallel-delta.json", "parallel-pushed.json"] {
        let r = eulercat(&[
            "validate",
            &path(f),
            "--category",
            &path("parallel-arrows.json"),
        ]);
        assert_eq!(r.code, 0, "{}", r.out);
    }
}

#[test]
fn chi_of_fixtures() {
    assert_eq!(eulercat(&["chi", &path("pt.json")]).out, "1\n");
    assert_eq!(eulercat(&["chi", &path("parallel-arrows.json")]).out, "0\n");
    assert_eq!(eulercat(&["chi", &path("groupoid.json")]).out, "1\n");
    assert_eq!(eulercat(&["nerve-chi", &path("level-one.json")]).out, "2\n");
}

#[test]
fn weighting_of_parallel_arrows() {
    let r = eulercat(&["weighting", &path("parallel-arrows.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "a: -1\nb: 1\n");
}

#[test]
fn count_targets_on_sensor_fixture() {
    let r = eulercat(&["count-targets", &path("sensor-network.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, "5\ni=1: 2\ni=2: 0\ni=3: 2\ni=4: 1\n");
    assert_eq!(r.err, "");
}

#[test]
fn count_targets_json_reports_h() {
    let r = eulercat(&[
        "--output",
        "json",
        "count-targets",
        &path("sensor-network.json"),
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["count"], "5");
    assert_eq!(v["monotone"], true);
    assert_eq!(v["levels"], serde_json::json!(["2", "0", "2", "1"]));
    let h: Vec<u64> = v["h"]
        .as_object()
        .unwrap()
        .values()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(h, [1, 1, 0, 1, 2, 3, 0, 3, 4, 3]);
}

#[test]
fn pushforward_counterexample() {
    let map = path("parallel-identity.json");
    let once = eulercat(&["pushforward", &map, &path("parallel-delta.json")]);
    assert_eq!(once.out, "a: 1\nb: 0\n");
    let twice = eulercat(&["pushforward", &map, &path("parallel-pushed.json")]);
    assert_eq!(twice.out, "a: 1\nb: -1\n");
    let cat = path("parallel-arrows.json");
    assert_eq!(
        eulercat(&["integrate", &cat, &path("parallel-delta.json")]).out,
        "0\n"
    );
    assert_eq!(
        eulercat(&["integrate", &cat, &path("parallel-pushed.json")]).out,
        "-1\n"
    );
}

#[test]
fn decompose_in_both_bases() {
    let cat = path("parallel-arrows.json");
    let f = path("parallel-pushed.json");
    let r = eulercat(&["decompose", &cat, &f]);
    assert_eq!(r.out, "basis: prime-filters\na: 1\nb: -1\n");
    let r = eulercat(&[
        "--output",
        "json",
        "decompose",
        &cat,
        &f,
        "--basis",
        "prime-ideals",
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["basis"], "prime-ideals");
    assert_eq!(v["terms"], serde_json::json!([{ "coef": "1", "rep": "a" }]));
}

#[test]
fn integrate_on_ideals_and_strict() {
    let cat = path("parallel-arrows.json");
    let f = path("parallel-delta.json");
    assert_eq!(
        eulercat(&["integrate", &cat, &f, "--side", "ideals"]).out,
        "0\n"
    );
    // The full subcategory {b} is a point, {a} too, and both have χ, so the
    // strict check passes.
    let r = eulercat(&["integrate", &cat, &f, "--strict-measurable"]);
    assert_eq!(r.code, 0, "{}", r.err);
}

#[test]
fn missing_identity_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        r#"{"objects":["a","b"],"hom":[[0,1],[0,1]]}"#,
    );
    let r = eulercat(&["validate", &p]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out, "MissingIdentity at object a\n");
    let r = eulercat(&["chi", &p]);
    assert_eq!(r.code, 1);
    assert!(
        r.err.starts_with("error: MissingIdentity at object a"),
        "{}",
        r.err
    );
}

#[test]
fn transitive_edge_gets_a_repair_hint() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "net.json",
        r#"{"nodes":["p","q","r"],"hasse":[["p","r"],["r","q"],["p","q"]]}"#,
    );
    let r = eulercat(&["validate", &p]);
    assert_eq!(r.code, 1);
    assert_eq!(
        r.out,
        "NotCoverEdge (p,q); transitive reduction suggested: (p,r) (r,q)\n"
    );
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "junk.json", "{ not json");
    let r = eulercat(&["chi", &p]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error: ParseError"), "{}", r.err);

    let p = write(
        dir.path(),
        "extra.json",
        r#"{"objects":["a"],"hom":[[1]],"colour":"red"}"#,
    );
    assert_eq!(eulercat(&["chi", &p]).code, 2);

    assert_eq!(eulercat(&["chi", "/nonexistent/file.json"]).code, 2);
    assert_eq!(eulercat(&["no-such-command"]).code, 2);
    assert_eq!(
        eulercat(&[
            "integrate",
            &path("pt.json"),
            &path("pt.json"),
            "--side",
            "up"
        ])
        .code,
        2
    );
}

#[test]
fn non_definable_function_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.json", r#"{"values":{"a":"1","b":"2"}}"#);
    let r = eulercat(&["integrate", &path("groupoid.json"), &f]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("NotDefinable"), "{}", r.err);
}

#[test]
fn nerve_chi_needs_an_acyclic_category() {
    let r = eulercat(&["nerve-chi", &path("groupoid.json")]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("NotAcyclic"), "{}", r.err);
}

#[test]
fn simulate_is_reproducible_and_saves_networks() {
    let args = [
        "simulate",
        "--nodes",
        "9",
        "--targets",
        "12",
        "--density",
        "1/3",
        "--seed",
        "42",
        "--trials",
        "5",
    ];
    let a = eulercat(&args);
    let b = eulercat(&args);
    assert_eq!(a.code, 0, "{}", a.err);
    assert_eq!(a.out, b.out);
    assert!(a.out.ends_with("5/5 ok\n"));
    assert!(a.out.starts_with("seed 42: nodes 9,"));

    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("sim.json").display().to_string();
    let r = eulercat(&[
        "simulate",
        "--nodes",
        "7",
        "--targets",
        "6",
        "--density",
        "1/2",
        "--seed",
        "3",
        "--save",
        &saved,
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(eulercat(&["validate", &saved]).code, 0);
    assert!(eulercat(&["count-targets", &saved]).out.starts_with("6\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 3] = [
        &[
            "--output",
            "json",
            "count-targets",
            &path("sensor-network.json"),
        ],
        &["--output", "json", "weighting", &path("groupoid.json")],
        &[
            "pushforward",
            &path("parallel-identity.json"),
            &path("parallel-delta.json"),
        ],
    ];
    for args in cases {
        assert_eq!(eulercat(args).out, eulercat(args).out);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_eulercat");
    let ok = Command::new(bin)
        .args(["chi", &path("pt.json")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1\n");
    let bad = Command::new(bin)
        .args(["chi", "/nonexistent.json"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
