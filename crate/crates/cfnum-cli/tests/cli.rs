//! End-to-end tests of the `cfnum` binary: pinned outputs, JSON schemas,
//! format switches, truncation-order resolution, and exit codes.

use std::process::{Command, Output};

fn cfnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfnum"))
        .args(args)
        .env_remove("CFNUM_ORDER")
        .output()
        .expect("the cfnum binary should run")
}

fn cfnum_with_env(args: &[&str], order: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfnum"))
        .args(args)
        .env("CFNUM_ORDER", order)
        .output()
        .expect("the cfnum binary should run")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout is one JSON document")
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("process exits normally")
}

#[test]
fn triangle_csv_contains_the_pinned_central_entry() {
    let out = cfnum(&["triangle", "--family", "t2", "--n", "6", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.lines().next(), Some("n,k,value"));
    assert!(text.lines().any(|line| line == "6,4,\"5\""));
}

#[test]
fn triangle_json_schema_carries_family_params_and_rows() {
    let out = cfnum(&["triangle", "--family", "s2l", "--lambda", "1/3", "--n", "4"]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["family"], "s2l");
    assert_eq!(doc["params"]["lambda"], "1/3");
    assert_eq!(doc["n_max"], 4);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row.as_array().unwrap().len(), n + 1, "row {n}");
    }
}

#[test]
fn gould_hopper_triangle_requires_and_reports_its_parameters() {
    let out = cfnum(&["triangle", "--family", "gh", "--r", "2", "--s", "1", "--n", "4"]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["family"], "gh");
    assert_eq!(doc["params"]["r"], "2");
    assert_eq!(doc["params"]["s"], "1");

    let missing = cfnum(&["triangle", "--family", "gh", "--n", "4"]);
    assert_eq!(code_of(&missing), 2);
}

#[test]
fn unknown_names_exit_with_the_usage_code() {
    let cases: [&[&str]; 6] = [
        &["triangle", "--family", "nosuch", "--n", "3"],
        &["triangle", "--family", "s2l", "--n", "3"],
        &["assoc", "--kind", "t3", "--seq", "bernoulli", "--n", "3"],
        &["assoc", "--kind", "t2", "--seq", "nosuch", "--n", "3"],
        &["convert", "--from", "monomial", "--to", "nosuch", "1"],
        &["verify", "--suite", "bogus"],
    ];
    for args in cases {
        let out = cfnum(args);
        assert_eq!(code_of(&out), 2, "{args:?}");
        assert!(
            !out.stderr.is_empty(),
            "{args:?} should explain itself on stderr"
        );
        assert!(
            out.stdout.is_empty(),
            "{args:?} should not write a payload on failure"
        );
    }
}

#[test]
fn assoc_bernoulli_second_kind_row_two_is_pinned() {
    let out = cfnum(&["assoc", "--kind", "t2", "--seq", "bernoulli", "--n", "2"]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["sequence"], "bernoulli");
    assert_eq!(doc["kind"], "t2");
    assert_eq!(doc["route"], "explicit");
    assert_eq!(doc["rows"][2], serde_json::json!(["1/6", "-1", "1"]));
}

#[test]
fn assoc_bernoulli_product_first_kind_row_two_is_pinned() {
    let out = cfnum(&["assoc", "--kind", "t1", "--seq", "bernoulli_product", "--n", "2"]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["kind"], "t1");
    assert_eq!(doc["route"], "solve");
    assert_eq!(doc["rows"][2], serde_json::json!(["11/36", "1/2", "1/3"]));
}

#[test]
fn first_kind_routes_agree_for_a_pure_delta_pair() {
    let solve = cfnum(&["assoc", "--kind", "t1", "--seq", "laguerre", "--n", "6"]);
    let genfunc = cfnum(&[
        "assoc", "--kind", "t1", "--seq", "laguerre", "--route", "genfunc", "--n", "6",
    ]);
    let a = json_of(&solve);
    let b = json_of(&genfunc);
    assert_eq!(a["route"], "solve");
    assert_eq!(b["route"], "genfunc");
    assert_eq!(a["rows"], b["rows"]);
}

#[test]
fn routes_outside_their_domain_are_usage_errors() {
    // The generating-function first-kind route needs the pair's prefactor
    // to be 1, which the Bernoulli pair's is not.
    let out = cfnum(&[
        "assoc", "--kind", "t1", "--seq", "bernoulli", "--route", "genfunc", "--n", "4",
    ]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn convert_matches_the_pinned_examples() {
    let cube = cfnum(&["convert", "--from", "monomial", "--to", "central", "0,0,0,1"]);
    assert_eq!(code_of(&cube), 0);
    assert_eq!(stdout_of(&cube).trim_end(), "0,1/4,0,1");

    let sixth = cfnum(&[
        "convert", "--from", "central", "--to", "monomial", "0,0,0,0,0,0,1",
    ]);
    assert_eq!(stdout_of(&sixth).trim_end(), "0,0,4,0,-5,0,1");

    let identity = cfnum(&["convert", "--from", "rising", "--to", "rising", "3,-2,5/7"]);
    assert_eq!(stdout_of(&identity).trim_end(), "3,-2,5/7");
}

#[test]
fn convert_handles_degenerate_bases_and_json_format() {
    // (x)_{2,λ} = x(x − λ) = x² − x/3 at λ = 1/3.
    let out = cfnum(&[
        "convert",
        "--from",
        "falling_lambda",
        "--to",
        "monomial",
        "--lambda",
        "1/3",
        "--format",
        "json",
        "0,0,1",
    ]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["from"], "falling_lambda");
    assert_eq!(doc["to"], "monomial");
    assert_eq!(doc["coeffs"], serde_json::json!(["0", "-1/3", "1"]));
}

#[test]
fn convert_rejects_malformed_coefficients() {
    let out = cfnum(&["convert", "--from", "monomial", "--to", "central", "0,zz,1"]);
    assert_eq!(code_of(&out), 2);
    let zero_denominator = cfnum(&["convert", "--from", "monomial", "--to", "central", "1/0"]);
    assert_eq!(code_of(&zero_denominator), 2);
}

#[test]
fn series_emits_the_transport_columns() {
    let out = cfnum(&["series", "--name", "laguerre", "--order", "6", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(text.lines().next(), Some("k,f,fbar,lc,ec"));
    assert_eq!(text.lines().count(), 8); // header plus orders 0..=6
    for line in text.lines().skip(1) {
        // t/(t−1) is a compositional involution: f and fbar agree.
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1], cells[2], "{line}");
    }

    let doc = json_of(&cfnum(&["series", "--name", "monomials", "--order", "5"]));
    assert_eq!(doc["order"], 5);
    assert_eq!(doc["f"], doc["fbar"]); // t is its own inverse
    assert_eq!(doc["f"][1], "1");
    assert_eq!(doc["ec"][3], "1/24"); // 2·sinh(t/2) has t³-coefficient 1/24
}

#[test]
fn series_requires_a_generating_function_pair() {
    for name in ["tlb1", "tlb2", "bernoulli_product"] {
        let out = cfnum(&["series", "--name", name]);
        assert_eq!(code_of(&out), 2, "{name}");
    }
}

#[test]
fn order_resolution_prefers_flag_over_environment() {
    let base: [&str; 9] = [
        "assoc", "--kind", "t1", "--seq", "laguerre", "--route", "genfunc", "--n", "6",
    ];
    // Truncation order 2 cannot reach row 6.
    let starved = cfnum_with_env(&base, "2");
    assert_eq!(code_of(&starved), 2);
    // An explicit flag outranks the hostile environment.
    let mut rescued_args: Vec<&str> = base.to_vec();
    rescued_args.extend_from_slice(&["--order", "20"]);
    let rescued = cfnum_with_env(&rescued_args, "2");
    assert_eq!(code_of(&rescued), 0);
    // A workable environment value is honored when no flag is given.
    let env_only = cfnum_with_env(&base, "20");
    assert_eq!(code_of(&env_only), 0);
    assert_eq!(stdout_of(&env_only), stdout_of(&rescued));
    // Garbage in the environment is a usage error, not a silent default.
    let garbage = cfnum_with_env(&base, "many");
    assert_eq!(code_of(&garbage), 2);
}

#[test]
fn verify_none_is_an_empty_passing_report() {
    let out = cfnum(&["verify", "--suite", "none"]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["suite_version"], "1");
    assert_eq!(doc["checks"], serde_json::json!([]));
    assert_eq!(doc["all_pass"], true);
}

#[test]
fn verify_partial_suite_passes_and_reports_parameters() {
    let out = cfnum(&[
        "verify", "--suite", "orthogonality,sum_rule", "--n", "5", "--trials", "3",
    ]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["params"]["n_max"], "5");
    assert_eq!(doc["params"]["seed"], "42");
    // 22 catalog sequences plus 7 λ = 1 reruns, two checks apiece.
    assert_eq!(doc["checks"].as_array().unwrap().len(), 58);
}

#[test]
fn verify_reports_the_recurrence_counterexamples_and_fails() {
    let out = cfnum(&["verify", "--suite", "recurrences", "--n", "3"]);
    assert_eq!(code_of(&out), 1);
    let doc = json_of(&out);
    assert_eq!(doc["all_pass"], false);
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for check in checks {
        let id = check["id"].as_str().unwrap();
        if check["status"] == "fail" {
            assert!(
                id == "recurrence_t1" || id == "recurrence_t2",
                "only the one-step forms may fail, got {id}"
            );
            assert_eq!(check["witness"]["n"], 2, "{id} {}", check["sequence"]);
            assert_eq!(check["witness"]["k"], 1, "{id} {}", check["sequence"]);
        } else {
            assert!(id.ends_with("_step2"), "{id} should have failed");
            assert!(check["witness"].is_null());
        }
    }
}

#[test]
fn verify_is_deterministic_across_worker_counts() {
    let single = cfnum(&["verify", "--suite", "orthogonality", "--n", "4", "--jobs", "1"]);
    let multi = cfnum(&["verify", "--suite", "orthogonality", "--n", "4", "--jobs", "4"]);
    assert_eq!(code_of(&single), 0);
    assert_eq!(stdout_of(&single), stdout_of(&multi));
}

#[test]
fn list_sequences_enumerates_the_catalog() {
    let out = cfnum(&["list-sequences"]);
    assert_eq!(code_of(&out), 0);
    let doc = json_of(&out);
    let entries = doc.as_array().unwrap();
    assert_eq!(entries.len(), 22);
    let find = |name: &str| {
        entries
            .iter()
            .find(|e| e["name"] == name)
            .unwrap_or_else(|| panic!("catalog should list {name}"))
    };
    assert_eq!(find("falling_lambda")["params"], serde_json::json!(["lambda"]));
    assert_eq!(find("gould_hopper")["params"], serde_json::json!(["r", "s"]));
    assert_eq!(find("bernoulli_product")["params"], serde_json::json!([]));

    let csv = cfnum(&["list-sequences", "--format", "csv"]);
    let text = stdout_of(&csv);
    assert_eq!(text.lines().next(), Some("name,params"));
    assert_eq!(text.lines().count(), 23);
}
