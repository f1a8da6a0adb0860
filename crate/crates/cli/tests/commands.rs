use serde_json::Value;
use twistor_cli::{run, EXIT_COMPUTATION, EXIT_INPUT, EXIT_OK};

fn twistor(args: &[&str]) -> twistor_cli::Outcome {
    run(std::iter::once("twistor").chain(args.iter().copied()))
}

fn stdout_ok(args: &[&str]) -> String {
    let out = twistor(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout_ok(args)).unwrap()
}

#[test]
fn single_values_print_bare() {
    assert_eq!(
        stdout_ok(&["self-intersect", "--builtin", "CP3", "--acs", "std"]),
        "20\n"
    );
    assert_eq!(
        stdout_ok(&[
            "intersect",
            "--builtin",
            "CP3",
            "--acs",
            "std",
            "--acs",
            "k=-1"
        ]),
        "-1\n"
    );
    assert_eq!(stdout_ok(&["self-intersect", "--builtin", "S6"]), "-2\n");
    assert_eq!(
        stdout_ok(&["self-intersect", "--builtin", "gS3xS3", "--g", "4"]),
        "6\n"
    );
}

#[test]
fn four_manifolds_chain_through_twistor_space() {
    assert_eq!(stdout_ok(&["self-intersect", "--builtin", "S4"]), "20\n");
    assert_eq!(
        stdout_ok(&["model", "--builtin", "S4"]),
        "Λ(z7, z5, z3; d=0), π1 = Z/20, formal\n"
    );
}

#[test]
fn negative_k_range() {
    let text = stdout_ok(&[
        "intersect",
        "--builtin",
        "CP3",
        "--k-min",
        "-1",
        "--k-max",
        "1",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].contains("k=-1") && lines[0].contains("k=1"));
}

#[test]
fn model_text() {
    assert_eq!(
        stdout_ok(&["model", "--builtin", "gS3xS3", "--g", "3"]),
        "Λ(z7, z4^6; d=0), π1 = Z/4, formal\n"
    );
    let out = twistor(&["model", "--builtin", "gS3xS3", "--g", "1"]);
    assert_eq!(out.code, EXIT_COMPUTATION);
    assert!(out.stderr.contains("chern-number-zero"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        twistor(&["self-intersect", "--builtin", "nope"]).code,
        EXIT_INPUT
    );
    assert_eq!(twistor(&["self-intersect"]).code, EXIT_INPUT);
    assert_eq!(
        twistor(&["validate", "--file", "/definitely/not/here.tw"]).code,
        EXIT_INPUT
    );
    assert_eq!(
        twistor(&["self-intersect", "--builtin", "gS3xS3"]).code,
        EXIT_INPUT
    );
}

#[test]
fn validate_require_acs() {
    assert_eq!(twistor(&["validate", "--builtin", "CP2"]).code, EXIT_OK);
    let out = twistor(&["validate", "--builtin", "CP2bar", "--require-acs"]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stdout.contains("hirzebruch-congruence"));
}

#[test]
fn json_document_shape() {
    let doc = json(&[
        "self-intersect",
        "--builtin",
        "CP3",
        "--acs",
        "std",
        "--json",
    ]);
    let keys: Vec<&str> = doc
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "acs",
            "checks",
            "command",
            "manifold",
            "provenance",
            "result"
        ]
    );
    assert_eq!(doc["command"], "self-intersect");
    assert_eq!(doc["result"][0]["value"], 20);
    for p in doc["provenance"].as_array().unwrap() {
        let tag = p["tag"].as_str().unwrap();
        assert!(["published", "derived", "trivial"].contains(&tag));
    }
}

#[test]
fn json_errors_are_checks() {
    let out = twistor(&["model", "--builtin", "gS3xS3", "--g", "1", "--json"]);
    assert_eq!(out.code, EXIT_COMPUTATION);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["checks"][0]["code"], "chern-number-zero");
    assert_eq!(doc["result"], Value::Null);
}

#[test]
fn json_is_deterministic() {
    let args = ["chern-ahs", "--builtin", "CP2", "--json"];
    assert_eq!(stdout_ok(&args), stdout_ok(&args));
    let doc = json(&args);
    assert_eq!(doc["result"]["spaces"][1]["c1c2"], 24);
    assert_eq!(doc["result"]["spaces"][1]["c3"], 6);
}

#[test]
fn chern_ahs_numeric_family() {
    let doc = json(&[
        "chern-ahs",
        "--builtin",
        "K3",
        "--reverse",
        "--blowups",
        "5",
        "--sign",
        "-",
        "--json",
    ]);
    assert_eq!(doc["result"]["spaces"][0]["self_intersection"], 38);
}

#[test]
fn twistor_ring_presentation() {
    let text = stdout_ok(&["twistor-ring", "--builtin", "S4", "--sign", "-"]);
    assert!(text.starts_with("H*(Z-(S4))"));
    let text = stdout_ok(&["twistor-ring", "--builtin", "CP3"]);
    assert!(text.contains("t^4 + (8 x)*t^3 + (22 x2)*t^2 + (20 vol)*t"));
}
