//! End-to-end checks of the `cobord` binary: output shapes, exit codes,
//! and the degree guard.

use std::process::{Command, Output};

fn cobord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn s_poly_text() {
    let out = cobord(&["s-poly", "[2]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "c1^2 - 2*c2\n");

    let out = cobord(&["s-poly", "[1,1,1]"]);
    assert_eq!(stdout(&out), "c3\n");

    let out = cobord(&["s-poly", "[2,1]"]);
    assert_eq!(stdout(&out), "c1*c2 - 3*c3\n");
}

#[test]
fn s_poly_json() {
    let out = cobord(&["s-poly", "[2]", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        serde_json::to_string(&json["s_polynomial"]).unwrap(),
        r#"{"[2]":-2,"[1,1]":1}"#
    );
    assert_eq!(json["degree"], 2);
}

#[test]
fn s_poly_usage_errors() {
    let out = cobord(&["s-poly", "[]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty partition"));

    let out = cobord(&["s-poly", "[1,2]"]);
    assert_eq!(out.status.code(), Some(2), "unsorted partition rejected");

    let out = cobord(&["s-poly"]);
    assert_eq!(out.status.code(), Some(2), "missing argument");
}

#[test]
fn obstruct_verdicts_drive_exit_codes() {
    let out = cobord(&["obstruct", "CP2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(1), "obstructed exits 1");
    let text = stdout(&out);
    assert!(text.contains("s[1,1] = 3"));
    assert!(text.contains("obstructed"));

    let out = cobord(&["obstruct", "4*CP2 - 3*CP1^2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("admits 1 section(s) rationally"));

    let out = cobord(&["obstruct", "CP2", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2), "r > d is a usage error");
}

#[test]
fn obstruct_json_shape() {
    let out = cobord(&["obstruct", "CP2", "--r", "1", "--format", "json"]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"d":2,"r":1,"entries":[{"omega":"[1,1]","value":"3"}],"vanishes":false,"witness":"[1,1]"}"#
    );

    let out = cobord(&[
        "obstruct",
        "1/4*CP3 - 1/2*CP1*CP2 + 1/4*CP1^3",
        "--r",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"d":3,"r":1,"entries":[{"omega":"[1,1,1]","value":"0"}],"vanishes":true,"witness":null}"#
    );
}

#[test]
fn generator_output() {
    let out = cobord(&["generator", "--d", "2", "--r", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4*CP2 - 3*CP1^2 (c=12)"), "{text}");
    assert!(text.contains("rational generator: yes"));

    let out = cobord(&["generator", "--d", "3", "--r", "1"]);
    let text = stdout(&out);
    assert!(text.contains("(c=4)"), "{text}");
    assert!(text.contains("admits 1 section(s) rationally: yes"));

    let out = cobord(&["generator", "--d", "2", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2), "r < d is required");
}

#[test]
fn generator_json() {
    let out = cobord(&["generator", "--d", "2", "--r", "1", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        serde_json::to_string(&json["class"]).unwrap(),
        r#"{"CP2":"4","CP1^2":"-3"}"#
    );
    assert_eq!(json["multiple"], "12");
    assert_eq!(json["rational_generator"], true);
    assert_eq!(json["integral_generator"], false);
    assert_eq!(json["prime_power"]["p"], 3);
}

#[test]
fn ranks_table() {
    let out = cobord(&["ranks", "--spectrum", "MTU", "--d", "2", "--q", "0..4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let values: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(' ').next().unwrap())
        .collect();
    assert_eq!(values, ["1", "1", "2", "2", "3"]);

    let out = cobord(&[
        "ranks", "--spectrum", "MTU-rel", "--d", "3", "--r", "1", "--q", "0..4",
    ]);
    let text = stdout(&out);
    let values: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(' ').next().unwrap())
        .collect();
    assert_eq!(values, ["0", "0", "0", "1", "1"]);

    let out = cobord(&["ranks", "--spectrum", "MTU-rel", "--d", "3", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2), "MTU-rel needs --r");
}

#[test]
fn ranks_json() {
    let out = cobord(&[
        "ranks", "--spectrum", "MTUbar", "--d", "2", "--q", "3", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["spectrum"], "MTUbar(2)");
    assert_eq!(json["ranks"][3], serde_json::json!({"degree": 6, "rank": 1}));
}

#[test]
fn chern_listing() {
    let out = cobord(&["chern", "CP1*CP2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("CP2*CP1"), "canonical name: {text}");
    assert!(text.contains("s[3] = 0"));
    assert!(text.contains("s[2,1] = 6"));
    assert!(text.contains("s[1,1,1] = 6"));
    assert!(text.contains("euler characteristic: 6"));

    let out = cobord(&["chern", "CP2 + CP1"]);
    assert_eq!(out.status.code(), Some(2), "mixed degrees");
}

#[test]
fn verify_summary() {
    let out = cobord(&["verify", "--d", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Stong det=192 OK"), "{text}");
    assert!(text.contains("splitting r=1: i=2 j=1 p=3 OK"));
    assert!(text.contains("stabilization"));
}

#[test]
fn kernel_listing() {
    let out = cobord(&["kernel", "--d", "3", "--r", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dimension 2"), "{text}");
    assert_eq!(text.lines().count(), 3);

    let out = cobord(&["kernel", "--d", "2", "--r", "2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["dimension"], 0);
}

#[test]
fn degree_guard_and_override() {
    let out = cobord(&["ranks", "--d", "11", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("max-degree"));

    let out = cobord(&["ranks", "--d", "11", "--q", "2", "--max-degree", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stderr(&out).contains("warning"),
        "raising the guard warns: {}",
        stderr(&out)
    );

    let out = cobord(&["obstruct", "CP11", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2), "class degree guarded too");
}

#[test]
fn json_output_is_deterministic() {
    let first = cobord(&["verify", "--d", "2", "--format", "json"]);
    let second = cobord(&["verify", "--d", "2", "--format", "json"]);
    assert_eq!(stdout(&first), stdout(&second));
    let json: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(json["ok"], true);
    assert_eq!(json["stong_det"], "12");
}
