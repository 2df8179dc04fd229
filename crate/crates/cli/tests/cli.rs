use assert_cmd::Command;
use serde_json::Value;

fn bzf(args: &[&str]) -> (Value, i32, String) {
    let out = Command::cargo_bin("bzf")
        .unwrap()
        .args(args)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (value, out.status.code().unwrap(), text)
}

fn golden(args: &[&str], expected: &str) {
    let (_, code, text) = bzf(args);
    assert_eq!(code, 0, "{text}");
    assert_eq!(text.trim_end(), expected);
}

#[test]
fn eval_products() {
    golden(
        &["eval", "(0,0;[0)) * (1,1;[0))"],
        r#"{"result":"(1,1;[0))"}"#,
    );
    golden(
        &["eval", "(-3,-1;[0))", "*", "(2,4;[0))"],
        r#"{"result":"(0,4;[0))"}"#,
    );
    golden(&["eval", "(0,5;2+3*w) * (1,0;2+3*w)"], r#"{"result":"0"}"#);
    golden(
        &["eval", "(0,3;{0,2}) * (1,1;{1,4})"],
        r#"{"result":"(0,3;{2})"}"#,
    );
}

#[test]
fn explicit_family_is_enforced() {
    let (v, code, _) = bzf(&["--family", "family{[0)}", "eval", "(0,0;{1}) * (0,0;[0))"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "set_not_in_family");
    let (v, code, _) = bzf(&[
        "--family",
        "family{{}; 2+3*w}",
        "eval",
        "(0,5;2+3*w) * (1,0;2+3*w)",
    ]);
    assert_eq!((v["result"].as_str(), code), (Some("0"), 0));
}

#[test]
fn classify_reports() {
    let (v, code, _) = bzf(&["classify", "family{ {}; 2+3*w }"]);
    assert_eq!(code, 0);
    assert_eq!(v["iso_type"], "ZeroBisimpleProgression");
    assert_eq!((v["i0"].as_u64(), v["j0"].as_u64()), (Some(2), Some(3)));
    assert_eq!(v["zero_bisimple"], true);
    assert_eq!(v["e_unitary"], false);

    let (v, _, _) = bzf(&["classify", "closure{ {0,1} }"]);
    assert_eq!(v["iso_type"], "General");
    assert_eq!(v["zero_simple"], false);
    assert_eq!(v["nonzero_d_classes"], 2);
    assert_eq!(v["witnesses"]["zero_simple"]["left"], "(0,0;{0})");

    let (v, _, _) = bzf(&["classify", "family{[3)}"]);
    assert_eq!(v["iso_type"], "ExtendedBicyclic");
    assert_eq!(
        (v["simple"].as_bool(), v["bisimple"].as_bool()),
        (Some(true), Some(true))
    );

    let (v, _, _) = bzf(&["classify", "closure{{7}}"]);
    assert_eq!(v["iso_type"], "MatrixUnitsOmega");

    let (v, _, _) = bzf(&["classify", "family{{}}"]);
    assert_eq!(v["iso_type"], "Trivial");
    assert_eq!(v["has_identity"], true);

    let (v, _, _) = bzf(&["classify", "closure{[2)}"]);
    assert_eq!(v["iso_type"], "ExtendedBicyclic");
}

#[test]
fn green_and_order() {
    let (v, _, _) = bzf(&["green", "(0,3;{2}) (0,7;{2}) R"]);
    assert_eq!(v["result"], true);
    assert_eq!(v["witness"]["verified"], true);
    let (v, _, _) = bzf(&["green", "(0,3;{2}) (0,7;{2}) L"]);
    assert_eq!(v["result"], false);
    assert!(v["witness"].is_null());
    let (v, _, _) = bzf(&["green", "(0,0;[0)) (5,5;[2))"]);
    assert_eq!(v["J"]["result"], true);
    assert_eq!(v["D"]["result"], false);

    let (v, _, _) = bzf(&["order", "(3,4;{1}) (1,2;{1,3})"]);
    assert_eq!(v["result"], true);
    assert_eq!(v["agrees_with_product"], true);
    let (v, _, _) = bzf(&["order", "(1,2;{1,3}) (3,4;{1})"]);
    assert_eq!(v["result"], false);
}

#[test]
fn morphisms() {
    golden(&["map", "sigma", "(2,5;[0))"], r#"{"result":-3}"#);
    golden(&["map", "brandt", "(-2,3;{4})"], r#"{"result":"(2,4,7)"}"#);
    golden(&["map", "brandt", "0"], r#"{"result":"O"}"#);
    golden(
        &["map", "reindex 0 (0,1;2+3*w)"],
        r#"{"result":"(0,1;0+3*w)"}"#,
    );
    golden(
        &["map", "ext-bicyclic (3,-2;[1))"],
        r#"{"result":"(3,-2)"}"#,
    );
    golden(
        &["map", "matrix-units (-2,3;{4})"],
        r#"{"result":{"omega":[3,6],"unit":"(-2,3)"}}"#,
    );

    let (v, code, _) = bzf(&["map", "sigma", "(0,1;{3})"]);
    assert_eq!(
        (v["error"]["code"].as_str(), code),
        (Some("zero_in_family"), 1)
    );

    for args in [
        "check-hom sigma (0,1;[2)) (5,0;[2))",
        "check-hom brandt (0,4;{1}) (2,0;{3})",
        "check-hom brandt (0,4;{1}) (2,0;{2})",
        "check-hom matrix-units (0,1;{4}) (2,-3;{4})",
        "check-hom reindex 5 (0,1;2+3*w) (4,0;2+3*w)",
        "check-hom ext-bicyclic (0,7;[1)) (3,1;[1))",
    ] {
        let (v, code, text) = bzf(&[args]);
        assert_eq!(
            (code, v["result"].as_bool()),
            (0, Some(true)),
            "{args}: {text}"
        );
    }
}

#[test]
fn closure_command() {
    golden(
        &["closure", "{0,1}"],
        r#"{"omega_closed":true,"result":["{}","{0}","{0,1}"],"size":3}"#,
    );
    let (v, _, _) = bzf(&["closure", "{{0,1}; [3)}"]);
    assert_eq!(v["omega_closed"], true);
    let (v, code, _) = bzf(&["--max-family", "2", "closure", "{0,1}"]);
    assert_eq!(
        (v["error"]["code"].as_str(), code),
        (Some("closure_diverged"), 1)
    );
}

#[test]
fn syntax_errors() {
    let (v, code, _) = bzf(&["eval", "(0,0;[0)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "syntax");
    assert_eq!(
        (v["error"]["line"].as_u64(), v["error"]["col"].as_u64()),
        (Some(1), Some(14))
    );
    let (_, code, _) = bzf(&["frobnicate"]);
    assert_eq!(code, 2);
    let (_, code, _) = bzf(&["classify", "family{{0,1}}"]);
    assert_eq!(code, 1);
}

#[test]
fn selftest_is_deterministic() {
    let args = ["--samples", "150", "--seed", "42", "selftest"];
    let (v, code, first) = bzf(&args);
    assert_eq!(code, 0, "{first}");
    assert_eq!(v["ok"], true);
    assert_eq!(v["suites"].as_array().unwrap().len(), 8);
    let (_, _, second) = bzf(&args);
    assert_eq!(first, second);
}

#[test]
fn oracle_check_and_failure_code() {
    let (v, code, _) = bzf(&["--samples", "300", "--window", "64", "oracle-check"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"][0]["suite"], "oracle");
    let (v, code, _) = bzf(&["--samples", "0", "selftest", "inverse"]);
    assert_eq!((code, v["ok"].as_bool()), (3, Some(false)));
}

#[test]
fn pretty_output_is_same_json() {
    let (plain, _, _) = bzf(&["classify", "closure{ {0,1} }"]);
    let (pretty, _, text) = bzf(&["--pretty", "classify", "closure{ {0,1} }"]);
    assert_eq!(plain, pretty);
    assert!(text.lines().count() > 1);
}
