use std::io::Cursor;
use std::process::{Command, Stdio};

use serde_json::Value;
use spex_cli::{run, Execution, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use spex_core::constructions::{extremal_construction, k2_bipartite};
use spex_core::graph6::to_graph6;
use spex_core::patterns::{oracle_agreement, Claim};
use spex_core::planarity::planarity;
use spex_core::search::{family_search, SearchOptions};
use spex_core::spectral::{perron_bounds_report, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOL};
use spex_core::ForbiddenPattern;

fn spex(args: &[&str], stdin: &str) -> Execution {
    let argv = std::iter::once("spex").chain(args.iter().copied());
    run(argv, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

fn ok_payload(args: &[&str], stdin: &str) -> Value {
    let e = spex(args, stdin);
    assert_eq!(e.code, EXIT_OK, "{args:?}: {}", e.stderr);
    let v: Value = serde_json::from_str(&e.stdout).unwrap();
    assert_eq!(v["status"], "ok");
    v["payload"].clone()
}

fn error_of(args: &[&str], stdin: &str) -> (i32, Value) {
    let e = spex(args, stdin);
    assert!(e.stdout.is_empty());
    assert_eq!(e.stderr.trim_end().lines().count(), 1, "stderr is one line");
    (e.code, serde_json::from_str(&e.stderr).unwrap())
}

fn json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap()
}

#[test]
fn construct_extremal_theta4_is_bipartite() {
    let e = spex(
        &[
            "construct",
            "--family",
            "extremal",
            "--forbid",
            "theta:4",
            "--n",
            "10",
        ],
        "",
    );
    assert_eq!(e.code, EXIT_OK);
    assert_eq!(
        e.stdout.trim(),
        to_graph6(&k2_bipartite(10).unwrap()).unwrap()
    );

    let p = ok_payload(
        &[
            "construct",
            "--family",
            "extremal",
            "--forbid",
            "cll:4",
            "--n",
            "12",
            "--json",
        ],
        "",
    );
    let g = extremal_construction(&ForbiddenPattern::Cll(4), 12).unwrap();
    assert_eq!(p["graph6"], to_graph6(&g).unwrap());
    assert_eq!(p["edges"], g.edge_count());
}

#[test]
fn construct_requires_family_parameters() {
    let (code, v) = error_of(&["construct", "--family", "cycle"], "");
    assert_eq!(code, EXIT_USAGE);
    assert!(v["diagnostics"][0].as_str().unwrap().contains("--k"));
    let (code, _) = error_of(&["construct", "--family", "cycle", "--k", "2"], "");
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn rho_of_bipartite_from_stdin() {
    let p = ok_payload(&["rho"], "E?~o\n");
    assert!((p["rho"].as_f64().unwrap() - 8f64.sqrt()).abs() < 1e-9);
    assert!(p["residual"].as_f64().unwrap() <= 1e-12);
    assert!(p.get("perron").is_none());
    let keys: Vec<&str> = p.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["rho", "iterations", "residual"]);

    let p = ok_payload(&["rho", "--perron"], ">>graph6<<E?~o\r\n");
    assert_eq!(p["perron"].as_array().unwrap().len(), 6);
}

#[test]
fn rho_matches_direct_call() {
    let g = k2_bipartite(9).unwrap();
    let r = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    let p = ok_payload(&["rho", "--perron"], &to_graph6(&g).unwrap());
    let direct = json(&r);
    for key in ["rho", "iterations", "residual", "perron"] {
        assert_eq!(p[key], direct[key], "{key}");
    }
}

#[test]
fn numbers_carry_at_most_fifteen_digits() {
    let e = spex(&["rho", "--perron"], "DK{");
    for token in e
        .stdout
        .split(|c: char| !(c.is_ascii_digit() || c == '.' || c == 'e' || c == '-'))
    {
        let mantissa = token.split('e').next().unwrap();
        let digits = mantissa
            .chars()
            .filter(char::is_ascii_digit)
            .collect::<String>();
        assert!(digits.trim_start_matches('0').len() <= 15, "{token}");
    }
}

#[test]
fn graph_commands_are_thin_adapters() {
    let g = extremal_construction(&ForbiddenPattern::Theta(6), 14).unwrap();
    let g6 = to_graph6(&g).unwrap();
    assert_eq!(ok_payload(&["planar"], &g6), json(&planarity(&g)));
    let r = spectral_radius(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert_eq!(
        ok_payload(&["perron-report"], &g6),
        json(&perron_bounds_report(&g, &r).unwrap())
    );
    assert_eq!(
        ok_payload(
            &[
                "oracle-vs-predicate",
                "--claim",
                "4",
                "--l",
                "5",
                "--max-total",
                "8"
            ],
            ""
        ),
        json(&oracle_agreement(Claim::Claim4, 5, 8).unwrap())
    );
    let opts = SearchOptions {
        top_k: 5,
        ..SearchOptions::default()
    };
    assert_eq!(
        ok_payload(
            &[
                "family-search",
                "--forbid",
                "cll:5",
                "--n",
                "22",
                "--top",
                "5"
            ],
            ""
        ),
        json(&family_search(&ForbiddenPattern::Cll(5), 22, &opts).unwrap())
    );
}

#[test]
fn check_free_reports_witness() {
    let p = ok_payload(&["check-free", "--pattern", "theta:4"], "E?~o");
    assert_eq!(p["free"], true);
    assert!(p["witness"].is_null());
    let p = ok_payload(&["check-free", "--pattern", "cll:3"], "D~{");
    assert_eq!(p["free"], false);
    assert_eq!(p["witness"]["embedding"].as_array().unwrap().len(), 5);
}

#[test]
fn predicate_examples() {
    let p = ok_payload(
        &[
            "predicate",
            "--claim",
            "8",
            "--k",
            "6",
            "--partition",
            "2,1,1",
        ],
        "",
    );
    assert_eq!(p["free"], true);
    let p = ok_payload(
        &[
            "predicate",
            "--claim",
            "8",
            "--k",
            "6",
            "--partition",
            "2,2",
        ],
        "",
    );
    assert_eq!(p["free"], false);
    let p = ok_payload(
        &[
            "predicate",
            "--claim",
            "4",
            "--l",
            "4",
            "--partition",
            "2,2,2,2",
        ],
        "",
    );
    assert_eq!(p["free"], true);
    let p = ok_payload(&["predicate", "--claim", "c33", "--partition", "1,1,1"], "");
    assert_eq!(p["free"], true);
    assert_eq!(
        error_of(
            &[
                "predicate",
                "--claim",
                "c33",
                "--k",
                "5",
                "--partition",
                "1"
            ],
            ""
        )
        .0,
        EXIT_USAGE
    );
    assert_eq!(
        error_of(&["predicate", "--claim", "9", "--partition", "1"], "").0,
        EXIT_USAGE
    );
    assert_eq!(
        error_of(
            &["predicate", "--claim", "8", "--k", "4", "--partition", "1"],
            ""
        )
        .0,
        EXIT_DOMAIN
    );
}

#[test]
fn error_exit_codes() {
    assert_eq!(error_of(&["frobnicate"], "").0, EXIT_USAGE);
    assert_eq!(error_of(&["rho"], "A_x").0, EXIT_DOMAIN);
    assert_eq!(error_of(&["rho"], ":Fa@x^").0, EXIT_DOMAIN);
    // disconnected: 2K2
    assert_eq!(error_of(&["rho"], "CQ").0, EXIT_DOMAIN);
    assert_eq!(error_of(&["rho"], "").0, EXIT_DOMAIN);
    assert_eq!(
        error_of(&["extremal-search", "--forbid", "cll:3", "--n", "6"], "").0,
        EXIT_USAGE
    );
    assert_eq!(
        error_of(
            &[
                "extremal-search",
                "--forbid",
                "cll:3",
                "--n",
                "6",
                "--internal",
                "--trust-planar"
            ],
            ""
        )
        .0,
        EXIT_USAGE
    );
    assert_eq!(
        error_of(
            &[
                "extremal-search",
                "--forbid",
                "cll:3",
                "--n",
                "9",
                "--internal"
            ],
            ""
        )
        .0,
        EXIT_DOMAIN
    );
    assert_eq!(
        error_of(&["family-search", "--forbid", "theta:4", "--n", "9"], "").0,
        EXIT_DOMAIN
    );
    assert_eq!(
        error_of(&["family-search", "--forbid", "wheel:5", "--n", "9"], "").0,
        EXIT_USAGE
    );
    assert_eq!(error_of(&["rho", "--tol", "-1"], "A_").0, EXIT_USAGE);
}

#[test]
fn help_exits_cleanly() {
    let e = spex(&["--help"], "");
    assert_eq!(e.code, EXIT_OK);
    assert!(e.stdout.contains("family-search"));
}

#[test]
fn search_output_independent_of_jobs() {
    let args = |j: &'static str| {
        [
            "--jobs",
            j,
            "family-search",
            "--forbid",
            "theta:8",
            "--n",
            "30",
            "--top",
            "50",
        ]
    };
    let one = spex(&args("1"), "");
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one, spex(&args("4"), ""));
    let ex = |j: &'static str| {
        [
            "extremal-search",
            "--jobs",
            j,
            "--forbid",
            "cll:3",
            "--n",
            "7",
            "--internal",
        ]
    };
    assert_eq!(spex(&ex("1"), ""), spex(&ex("6"), ""));
}

#[test]
fn extremal_search_stream_from_stdin() {
    let text = "E?~w\nE`]w\n:bad\nDK{\n";
    let p = ok_payload(
        &[
            "extremal-search",
            "--forbid",
            "cll:3",
            "--n",
            "6",
            "--input",
            "-",
        ],
        text,
    );
    assert_eq!(p["source"], "graph6-stream");
    assert_eq!(p["visited"], 2);
    assert_eq!(p["ranked"][0]["graph6"], "E?~w");
    assert_eq!(p["skipped"].as_array().unwrap().len(), 2);
    let (code, _) = error_of(
        &[
            "extremal-search",
            "--forbid",
            "cll:3",
            "--n",
            "6",
            "--input",
            "-",
            "--strict",
        ],
        text,
    );
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn out_and_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let csv = dir.path().join("ranking.csv");
    let e = spex(
        &[
            "family-search",
            "--forbid",
            "cll:4",
            "--n",
            "12",
            "--out",
            out.to_str().unwrap(),
            "--csv",
            csv.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(e.code, EXIT_OK);
    assert!(e.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let csv = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "rank,graph6,rho,residual,flags");
    assert_eq!(
        lines.len(),
        1 + report["payload"]["ranked"].as_array().unwrap().len()
    );
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[1], report["payload"]["ranked"][0]["graph6"]);
    assert!(first[4].contains("theorem_extremal"));
}

#[test]
fn transform_ascent_command() {
    let p = ok_payload(
        &[
            "transform-ascent",
            "--forbid",
            "cll:4",
            "--n",
            "12",
            "--partition",
            "2,2,2,2,2",
        ],
        "",
    );
    assert_eq!(p["is_local_max"], true);
    assert_eq!(p["is_theorem_extremal"], true);
    let (code, _) = error_of(
        &[
            "transform-ascent",
            "--forbid",
            "cll:4",
            "--n",
            "13",
            "--partition",
            "2,2,2,2,2",
        ],
        "",
    );
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn binary_pipes_and_reads_tolerance_from_env() {
    let bin = env!("CARGO_BIN_EXE_spex");
    let built = Command::new(bin)
        .args([
            "construct",
            "--family",
            "h",
            "--n",
            "20",
            "--n1",
            "2",
            "--n2",
            "2",
        ])
        .output()
        .unwrap();
    assert!(built.status.success());

    let rho_with = |tol: Option<&str>| {
        let mut cmd = Command::new(bin);
        cmd.arg("rho")
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped());
        match tol {
            Some(t) => cmd.env("SPEX_TOL", t),
            None => cmd.env_remove("SPEX_TOL"),
        };
        let mut child = cmd.spawn().unwrap();
        use std::io::Write;
        child
            .stdin
            .take()
            .unwrap()
            .write_all(&built.stdout)
            .unwrap();
        child.wait_with_output().unwrap()
    };
    let strict = rho_with(None);
    let loose = rho_with(Some("1e-3"));
    assert!(strict.status.success() && loose.status.success());
    let it = |o: &std::process::Output| {
        serde_json::from_slice::<Value>(&o.stdout).unwrap()["payload"]["iterations"]
            .as_u64()
            .unwrap()
    };
    assert!(it(&loose) < it(&strict));

    let bad = rho_with(Some("abc"));
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert!(bad.stdout.is_empty());
    let err: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["status"], "error");
}
