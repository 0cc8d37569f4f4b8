use std::process::{Command, Output};

fn dkdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkdv")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn series_of_l() {
    let out = dkdv(&["series", "--op", "L"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n1/24\n7/5760\n");
}

#[test]
fn series_json_and_generating_functions() {
    let out = dkdv(&["series", "--op", "T", "--order", "4", "--json"]);
    let coeffs: Vec<String> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(coeffs, ["1", "1/24", "19/5760"]);
    let out = dkdv(&["series", "--op", "I1", "--order", "4"]);
    assert_eq!(stdout(&out), "1\n1/8\n5/384\n");
    let out = dkdv(&["series", "--op", "I2", "--order", "2"]);
    assert_eq!(stdout(&out), "1\n1/12\n");
}

#[test]
fn tau0_flow_in_uv() {
    let out = dkdv(&["flow", "--family", "tau", "--index", "0", "--order", "4", "--chart", "uv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let potential = text.lines().find(|l| l.starts_with("potential v = ")).unwrap();
    assert!(potential.starts_with("potential v = -1/4*v^2 + u"), "{potential}");
    assert!(text.contains("u_t = 0\n"));
}

#[test]
fn flow_json_schema() {
    let out = dkdv(&["flow", "--family", "t1", "--index", "1", "--order", "2", "--chart", "dr", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["flow"], "t1_1");
    assert_eq!(v["chart"], "dr");
    let groups = v["components"][0]["potential"].as_array().unwrap();
    assert_eq!(groups[0]["eps_power"], 0);
    assert_eq!(groups[0]["terms"][0]["monomial"], "u1^2");
    assert_eq!(groups[0]["terms"][0]["coeff"], "1/2");
}

#[test]
fn eval_prints_canonical_form() {
    let out = dkdv(&["eval", "ep^2*v_2 + (u - v)*(u + v)"]);
    assert_eq!(stdout(&out), "u^2 - v^2 + ep^2*v_2\n");
    let out = dkdv(&["eval", "u2*u1_3", "--ring", "dr"]);
    assert_eq!(stdout(&out), "u1_3*u2\n");
    let out = dkdv(&["eval", "-1/4*v^2 + u", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["terms"][0]["coeff"], "-1/4");
    assert_eq!(v[0]["terms"][1]["monomial"], "u");
}

#[test]
fn reconstruct_reports_unique_solution() {
    let out = dkdv(&["reconstruct", "--index", "1", "--order", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("unique: true"));
    assert!(text.contains("potential w = -1/6*w^3 + u*w"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["series", "--op", "Q"][..],
        &["series", "--op", "L", "--order", "3"],
        &["eval", "u + * v"],
        &["eval", "q"],
        &["verify", "--suite", "everything"],
        &["frobnicate"],
    ] {
        let out = dkdv(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic_and_exits_zero() {
    let a = dkdv(&["verify", "--suite", "genfun"]);
    let b = dkdv(&["verify", "--suite", "genfun"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().all(|l| l.starts_with("PASS ") || l.ends_with("0 failed")), "{text}");
    assert!(String::from_utf8_lossy(&a.stderr).contains(" ms"));
}

#[test]
fn verify_all_passes() {
    let out = dkdv(&["verify", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn flow_output_is_deterministic() {
    let args = ["flow", "--family", "tau", "--index", "2", "--order", "4", "--chart", "w"];
    assert_eq!(dkdv(&args).stdout, dkdv(&args).stdout);
}
