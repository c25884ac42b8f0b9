use std::path::PathBuf;
use std::process::Command as Process;

use serde_json::Value;
use superlie_cli::{execute, run, AlgebraSpec, CliError, Command, RunConfig, Sampled};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn gl(m: usize, n: usize) -> AlgebraSpec {
    AlgebraSpec::Gl { m, n }
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {report}"))
}

#[test]
fn algebra_specs_parse() {
    assert_eq!("gl:2,1".parse::<AlgebraSpec>().unwrap(), gl(2, 1));
    assert_eq!("realgl:1,1".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::RealGl { m: 1, n: 1 });
    for bad in ["sl:2,1", "gl:2", "gl:0,1", "gl:a,b", "gl"] {
        assert!(matches!(bad.parse::<AlgebraSpec>(), Err(CliError::UnsupportedAlgebra(_))), "{bad}");
    }
}

#[test]
fn sampled_arguments_accept_counts_and_lists() {
    assert_eq!("7".parse::<Sampled<Vec<i32>>>().unwrap(), Sampled::Count(7));
    assert_eq!("[[1,0],[0,2]]".parse::<Sampled<Vec<i32>>>().unwrap(), Sampled::List(vec![vec![1, 0], vec![0, 2]]));
    match "[[[2,1,0,1],[1,1,0,1]]]".parse::<Sampled<superlie::TorusElement>>().unwrap() {
        Sampled::List(p) => assert_eq!(p[0].rank(), 2),
        other => panic!("{other:?}"),
    }
    assert!("[[1,".parse::<Sampled<Vec<i32>>>().is_err());
}

#[test]
fn casimir_on_gl11_is_central_and_serialized() {
    let mut c = RunConfig::new(Command::Casimir, gl(1, 1));
    c.check_central = true;
    let report = run(&c).unwrap();
    assert!(report.pass());
    let json = report.to_json();
    assert_eq!(json["command"], "casimir");
    assert_eq!(check(&json, "central")["pass"], true);
    let element = &check(&json, "casimir2")["values"]["element"];
    assert!(!element.as_array().unwrap().is_empty());
}

#[test]
fn gamma_check_records_sign() {
    let mut c = RunConfig::new(Command::GammaCheck, gl(2, 1));
    c.points = Sampled::Count(20);
    c.seed = 7;
    let report = run(&c).unwrap();
    assert!(report.pass());
    let json = report.to_json();
    let oracle = check(&json, "gamma_oracle");
    assert_eq!(oracle["values"]["sign"], 1);
    assert_eq!(oracle["values"]["points"].as_array().unwrap().len(), 20);
}

#[test]
fn bad_algebra_fails_with_witness_triple() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut c = RunConfig::new(Command::CheckJacobi, AlgebraSpec::File(data("bad_algebra.json")));
    c.output = Some(out.clone());
    match execute(&c) {
        Err(e @ CliError::CheckFailed { failed: 1 }) => assert_eq!(e.exit_code(), 1),
        other => panic!("expected CheckFailed, got {other:?}"),
    }
    let written: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    let jacobi = check(&written, "jacobi");
    assert_eq!(jacobi["pass"], false);
    assert_eq!(jacobi["witness"]["triple"].as_array().unwrap().len(), 3);
}

#[test]
fn malformed_file_reports_position() {
    let c = RunConfig::new(Command::Build, AlgebraSpec::File(data("malformed.json")));
    match run(&c) {
        Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 18)),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn builder_only_suites_reject_files() {
    let c = RunConfig::new(Command::HopfCheck, AlgebraSpec::File(data("heisenberg.json")));
    assert!(matches!(run(&c), Err(CliError::UnsupportedAlgebra(_))));
    let c = RunConfig::new(Command::JstructCheck, gl(1, 1));
    assert!(matches!(run(&c), Err(CliError::UnsupportedAlgebra(_))));
}

#[test]
fn jstruct_check_on_swap_fails_all_three() {
    let report = run(&RunConfig::new(Command::JstructCheck, AlgebraSpec::File(data("swap_j.json")))).unwrap();
    let json = report.to_json();
    for name in ["validate_j", "nijenhuis", "eigenspace_brackets"] {
        assert_eq!(check(&json, name)["pass"], false, "{name}");
        assert!(check(&json, name).get("witness").is_some(), "{name}");
    }
    assert!(run(&RunConfig::new(Command::JstructCheck, AlgebraSpec::RealGl { m: 1, n: 1 })).unwrap().pass());
}

#[test]
fn complexify_quotients_and_rejects() {
    let mut c = RunConfig::new(Command::Complexify, AlgebraSpec::File(data("heisenberg.json")));
    c.ideal = vec!["Z".into()];
    let report = run(&c).unwrap();
    assert!(report.pass());
    assert_eq!(check(&report.to_json(), "complexify")["values"]["complex_dim"], 3);
    c.ideal = vec!["X".into()];
    let report = run(&c).unwrap();
    assert!(!report.pass());
    c.ideal = vec!["W".into()];
    assert!(matches!(run(&c), Err(CliError::InvalidArgument(_))));
}

#[test]
fn casimir_order_respects_degree_cap() {
    let mut c = RunConfig::new(Command::Casimir, gl(1, 1));
    c.order = 5;
    assert!(matches!(run(&c), Err(CliError::InvalidArgument(_))));
    c.degree_cap = 5;
    assert!(run(&c).unwrap().pass());
}

#[test]
fn same_seed_gives_identical_reports() {
    for command in [Command::HopfCheck, Command::GammaCheck, Command::Radial] {
        let mut c = RunConfig::new(command, gl(1, 1));
        c.samples = 10;
        c.seed = 42;
        let a = run(&c).unwrap().without_timing();
        let b = run(&c).unwrap().without_timing();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn binary_exit_status_tracks_checks() {
    let bin = env!("CARGO_BIN_EXE_superlie");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("casimir.json");
    let status = Process::new(bin)
        .args(["casimir", "--algebra", "gl:1,1", "--order", "2", "--check-central", "--output"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report["timing"]["elapsed_ms"].is_u64());

    let status = Process::new(bin)
        .args(["check-jacobi", "--file"])
        .arg(data("bad_algebra.json"))
        .args(["--output"])
        .arg(dir.path().join("bad.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    assert!(dir.path().join("bad.json").exists());

    let status = Process::new(bin).args(["build", "--algebra", "so:3,2"]).output().unwrap().status;
    assert_eq!(status.code(), Some(2));

    let output = Process::new(bin)
        .args(["casimir", "--algebra", "gl:1,1", "--order", "5"])
        .env("SUPERLIE_DEGREE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
}
