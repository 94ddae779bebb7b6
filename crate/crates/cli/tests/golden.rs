//! Golden-file tests: byte-exact stdout for the documented commands.

use std::process::Command;

fn fthresh(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_fthresh"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn golden_nu() {
    let (stdout, stderr, code) = fthresh(&[
        "nu", "-p", "7", "-v", "x,y", "-f", "x^2+y^3", "-J", "x,y", "-e", "1",
    ]);
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(stdout, "nu=5\n");
}

#[test]
fn golden_fpt_json() {
    let (stdout, stderr, code) = fthresh(&[
        "fpt", "-p", "7", "-v", "x,y", "-f", "x^2+y^3", "--max-e", "1", "--json",
    ]);
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(
        stdout,
        "{\"lower\":\"5/7\",\"upper\":\"6/7\",\"guess\":\"5/6\"}\n"
    );
}

#[test]
fn golden_fedder() {
    let (stdout, stderr, code) = fthresh(&["fedder", "-p", "5", "-v", "x,y", "-f", "x*y"]);
    assert_eq!(code, 0, "stderr: {}", stderr);
    assert_eq!(stdout, "F-pure: true\n");
}

#[test]
fn exit_codes() {
    // parse error -> 1
    let (_, _, code) = fthresh(&["nu", "-p", "5", "-v", "x", "-f", "x^", "-J", "x", "-e", "1"]);
    assert_eq!(code, 1);
    // not prime -> 1
    let (_, _, code) = fthresh(&["nu", "-p", "9", "-v", "x", "-f", "x", "-J", "x", "-e", "1"]);
    assert_eq!(code, 1);
    // radical precondition -> 2
    let (_, _, code) = fthresh(&[
        "nu", "-p", "5", "-v", "x,y", "-f", "x", "-J", "y", "-e", "1",
    ]);
    assert_eq!(code, 2);
    // origin precondition -> 2
    let (_, _, code) = fthresh(&["fpt", "-p", "5", "-v", "x", "-f", "x+1"]);
    assert_eq!(code, 2);
    // degree budget -> 3
    let (_, _, code) = fthresh(&[
        "threshold",
        "-p",
        "7",
        "-v",
        "x,y",
        "-f",
        "x+y",
        "-J",
        "x,y",
        "--max-e",
        "4",
        "--degree-budget",
        "5",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn maximal_ideal_shortcut() {
    let (stdout, _, code) = fthresh(&[
        "nu", "-p", "7", "-v", "x,y", "-f", "x^2+y^3", "-J", "@m", "-e", "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "nu=5\n");
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec![
            "nu", "-p", "7", "-v", "x,y", "-f", "x^2+y^3", "-J", "x,y", "-e", "1", "--json",
        ],
        vec![
            "threshold",
            "-p",
            "5",
            "-v",
            "x",
            "-f",
            "x^2",
            "-J",
            "x",
            "--max-e",
            "2",
            "--json",
        ],
        vec![
            "testideal",
            "-p",
            "7",
            "-v",
            "x,y",
            "-f",
            "x^2+y^3",
            "-t",
            "6/7",
            "--json",
        ],
        vec![
            "jumps", "-p", "3", "-v", "x", "-f", "x", "--t-max", "1", "-E", "1", "--json",
        ],
        vec!["fedder", "-p", "7", "-v", "x,y", "-f", "x^2+y^3", "--json"],
    ] {
        let (stdout, stderr, code) = fthresh(&args);
        assert_eq!(code, 0, "args {:?} stderr {}", args, stderr);
        let value: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
        assert!(value.is_object());
    }
}
