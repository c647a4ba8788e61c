use std::path::{Path, PathBuf};
use std::process::Command;

use cohomoforge::cli::{emit, parse_input, parse_str, run_command, CliError, Options, Payload};
use cohomoforge::gmodule::GModule;
use cohomoforge::groups::FiniteGroup;
use cohomoforge::limits::Limits;
use cohomoforge::abelian::FiniteAbelianGroup;

fn input(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("inputs").join(name)
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cohomoforge"))
        .args(args)
        .env_remove("COHOMOFORGE_ORDER_CAP")
        .env_remove("COHOMOFORGE_DEGREE_CAP")
        .env_remove("COHOMOFORGE_SIZE_BUDGET")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn all_inputs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(input(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn minimal_group_document_parses() {
    let doc = parse_str(r#"{"schema": "cohomoforge.v1", "kind": "group", "table": [[0, 1], [1, 0]]}"#).unwrap();
    assert_eq!(doc.payload.kind(), "group");
    let Payload::Group(g) = &doc.payload else { panic!() };
    assert_eq!(g.build(&Limits::default()).unwrap().group.order(), 2);
}

#[test]
fn c3_on_z7_validates_like_direct_construction() {
    let doc = parse_input(&input("c3_on_z7.json"), &Limits::default()).unwrap();
    let Payload::Gmodule(spec) = &doc.payload else { panic!() };
    let parsed = spec.build(&Limits::default()).unwrap();
    let direct = GModule::from_matrices(
        &FiniteGroup::cyclic(3),
        &FiniteAbelianGroup::from_cyclic(vec![7]).unwrap(),
        vec![vec![vec![1]], vec![vec![2]], vec![vec![4]]],
    )
    .unwrap();
    assert_eq!(parsed.action(1), direct.action(1));
    assert_eq!(parsed.action(2), direct.action(2));
}

#[test]
fn non_associative_table_is_a_validation_error() {
    let err = parse_input(&input("group_nonassociative.json"), &Limits::default()).unwrap_err();
    match err {
        CliError::Validation(msg) => assert!(msg.contains("not associative"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn invalid_action_is_rejected() {
    let text = r#"{"schema": "cohomoforge.v1", "kind": "gmodule", "group": {"catalog": "C3"},
        "coeffs": {"factors": [7]}, "action": [[[1]], [[2]], [[3]]]}"#;
    let doc = parse_str(text).unwrap();
    assert!(matches!(doc.validate(&Limits::default()), Err(CliError::Validation(_))));
}

#[test]
fn schema_errors_carry_a_line() {
    let err = parse_str("{\n  \"schema\": \"cohomoforge.v1\",\n  \"kind\": \"group\",\n  \"table\": 3\n}").unwrap_err();
    assert!(matches!(err, CliError::Schema { line: 4, .. }), "{err:?}");
    let err = parse_str("{\n  \"schema\": \"cohomoforge.v1\",\n  \"kind\": \"gmodule\",\n  \"group\": {\n    \"tabel\": [[0]]\n  },\n  \"coeffs\": {\"factors\": [7]}\n}").unwrap_err();
    match err {
        CliError::Schema { line, field } => {
            assert_eq!(line, 5);
            assert!(field.starts_with("group.tabel"), "{field}");
        }
        other => panic!("unexpected {other:?}"),
    }
    let err = parse_str(r#"{"schema": "cohomoforge.v0", "kind": "group", "table": [[0]]}"#).unwrap_err();
    assert!(matches!(err, CliError::Schema { .. }));
    let err = parse_str(r#"{"schema": "cohomoforge.v1", "kind": "monoid"}"#).unwrap_err();
    assert!(matches!(err, CliError::Schema { .. }));
}

#[test]
fn canonical_documents_round_trip_byte_identical() {
    for path in all_inputs() {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse_str(&text).unwrap();
        assert_eq!(emit(&doc), text, "{}", path.display());
    }
}

#[test]
fn h1_on_c3_z7_reports_zero() {
    let (code, out, _) = bin(&["h1", input("c3_on_z7.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("H1 = 0"), "{out}");
}

#[test]
fn exit_codes() {
    let c37 = input("c3_on_z7.json");
    let c37 = c37.to_str().unwrap();
    assert_eq!(bin(&["schur", c37]).0, 0);
    assert_eq!(bin(&["no-such-command", c37]).0, 2);
    assert_eq!(bin(&["h1", "/nonexistent/input.json"]).0, 2);
    let bad = input("group_nonassociative.json");
    let (code, out, err) = bin(&["frattini", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("not associative"));
    let grp = input("group_c2.json");
    assert_eq!(bin(&["h1", grp.to_str().unwrap()]).0, 2);
}

#[test]
fn failing_check_exits_one() {
    let dir = std::env::temp_dir().join("cohomoforge-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    // ad_x^3 = ad_x on this ring, so the zero map breaks axiom 1.
    let doc = r#"{"schema": "cohomoforge.v1", "kind": "liering", "p": 3, "dim": 2,
        "bracket": [[[0, 0], [0, 1]], [[0, 2], [0, 0]]], "pmap": [[0, 0], [0, 0]]}"#;
    let path = dir.join("bad_pmap.json");
    std::fs::write(&path, doc).unwrap();
    let (code, out, _) = bin(&["lie-restricted", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn size_budget_overrun_exits_two() {
    let big = input("s4_trivial_z2_cubed.json");
    let (code, out, err) = bin(&["cohomology", big.to_str().unwrap(), "--degree", "3", "--degree-cap", "3"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn flags_override_environment() {
    let c37 = input("c3_on_z7.json");
    let out = Command::new(env!("CARGO_BIN_EXE_cohomoforge"))
        .args(["cohomology", c37.to_str().unwrap(), "--degree", "2", "--size-budget", "1"])
        .env("COHOMOFORGE_SIZE_BUDGET", "100000000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_cohomoforge"))
        .args(["cohomology", c37.to_str().unwrap(), "--degree", "2"])
        .env("COHOMOFORGE_SIZE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_validate_against_published_schema() {
    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let cases = [
        ("cohomology", "c3_on_z7.json"),
        ("h1", "s3_sign_on_z3.json"),
        ("inf-res", "s3_sign_on_z3.json"),
        ("les", "ses_z2_z4_z2.json"),
        ("vanishing", "a4_trivial_z2.json"),
        ("frattini", "group_s3_perm.json"),
        ("maschke", "c4_rotation_on_f5_squared.json"),
        ("schur", "c3_on_z7.json"),
        ("lie-cohomology", "heisenberg5_scalar.json"),
        ("lie-h1", "sl2_5_adjoint.json"),
        ("lie-inf-res", "heisenberg5_adjoint.json"),
        ("lie-six-term", "ses_heisenberg5_nilpotent.json"),
        ("lie-restricted", "gl2_f2_restricted.json"),
        ("lie-theorems", "gl2_f3_restricted.json"),
    ];
    for (command, file) in cases {
        let (code, out, err) = bin(&[command, input(file).to_str().unwrap(), "--json"]);
        assert_eq!(code, 0, "{command} {file}: {err}");
        let report: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(validator.is_valid(&report), "{command} {file}: {out}");
    }
}

#[test]
fn run_command_is_deterministic() {
    let doc = parse_input(&input("heisenberg5_adjoint.json"), &Limits::default()).unwrap();
    let opts = Options::default();
    let a = run_command(&doc, "lie-inf-res", "x", &opts).unwrap();
    let b = run_command(&doc, "lie-inf-res", "x", &opts).unwrap();
    assert_eq!(a.entries, b.entries);
    assert!(matches!(
        run_command(&doc, "cohomology", "x", &opts),
        Err(CliError::WrongKind { .. })
    ));
}

#[test]
fn small_suite_passes() {
    let (code, out, _) = bin(&["suite", input("battery_small.json").to_str().unwrap(), "--catalog", "small"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
