use std::io::Write;
use std::process::{Command, Output, Stdio};

fn abelian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelian")).args(args).output().unwrap()
}

fn abelian_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_abelian"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn snf_of_small_matrix() {
    let f = write_temp("2 2\n2 4\n6 8\n");
    let out = abelian(&["snf", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("d = 2 4\n"), "{text}");
    assert!(text.contains("rank = 2\n"));
    assert!(text.contains(": ok\n"));
}

#[test]
fn snf_identity_and_zero() {
    let out = abelian_stdin(&["snf", "-"], "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("d = 1 1 1\n"));

    let out = abelian_stdin(&["snf", "-"], "2 3\n0 0 0\n0 0 0\n");
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rank = 0\n") && text.contains("d = \n"), "{text}");
}

#[test]
fn snf_parse_error_reports_position() {
    let out = abelian_stdin(&["snf", "-"], "2 2\n1 2\n3 x\n");
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3") && err.contains("column 3"), "{err}");

    let out = abelian(&["snf", "/nonexistent/matrix"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_z15_star() {
    let out = abelian(&["decompose", "znstar:15"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("order: 8\n"), "{text}");
    assert!(text.contains("Z_2 ") && text.contains("Z_4 "), "{text}");
    assert!(text.contains("verified: yes"));
}

#[test]
fn decompose_trivial_and_class_group() {
    let out = abelian(&["decompose", "cyclic:1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("summands: 0\n"));

    let out = abelian(&["decompose", "classgroup:-23", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"group_order\": \"3\""), "{text}");
    assert!(text.contains("\"prime\": \"3\""));
}

#[test]
fn structured_output_is_reproducible() {
    let args = ["decompose", "znstar:1001", "--seed", "7", "--format", "structured"];
    let a = abelian(&args);
    let b = abelian(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_specs_exit_2() {
    for spec in ["znstar:1", "znstar:015", "classgroup:-5", "cyclic:0", "torus:3", "znstar"] {
        let out = abelian(&["decompose", spec]);
        assert_eq!(out.status.code(), Some(2), "{spec}: {}", stderr(&out));
    }
    let out = abelian(&["decompose", "znstar:15", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_exceeded_exits_4() {
    let out = abelian(&["decompose", "cyclic:64,64", "--capacity", "100"]);
    assert_eq!(out.status.code(), Some(4));
    let err = stderr(&out);
    assert!(err.contains("subgroup size"), "{err}");
}

#[test]
fn verify_round_trip_and_tampering() {
    let out = abelian(&["decompose", "classgroup:-3299", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout(&out);
    let good = write_temp(&json);
    let path = good.path().to_str().unwrap();

    let out = abelian(&["verify", "classgroup:-3299", path]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("verified"));

    // lie about an exponent: Z_3 + Z_9 becomes Z_9 + Z_9
    let tampered = json.replacen("\"exponent\": 1", "\"exponent\": 2", 1);
    assert_ne!(tampered, json);
    let bad = write_temp(&tampered);
    let out = abelian(&["verify", "classgroup:-3299", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));

    // right file, wrong group
    let out = abelian(&["verify", "classgroup:-23", path]);
    assert_eq!(out.status.code(), Some(2));

    let garbage = write_temp("not json");
    let out = abelian(&["verify", "classgroup:-3299", garbage.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = abelian(&["verify", "nonsense", path]);
    assert_eq!(out.status.code(), Some(2));
}
