//! Golden-file tests for every subcommand. Run with `NCHARM_BLESS=1` to
//! rewrite the expected outputs after an intended change.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    stdin: Option<&'static str>,
    code: i32,
}

const CASES: &[Case] = &[
    Case { name: "derive", args: &["derive", "--vars", "2", "--var", "1", "x1^2*x2"], stdin: None, code: 0 },
    Case { name: "derive_json", args: &["derive", "--var", "2", "--json", "x1^2*x2"], stdin: None, code: 0 },
    Case { name: "laplacian", args: &["laplacian", "x1^2*x2"], stdin: None, code: 0 },
    Case { name: "laplacian_stdin", args: &["laplacian", "--vars", "3"], stdin: Some("x1*x3*x1 + x3^3\n"), code: 0 },
    Case { name: "collapse_check", args: &["collapse-check", "--vars", "3", "x1^2*x2*x3 - 2*x3^3"], stdin: None, code: 0 },
    Case { name: "harmonic_basis_3", args: &["harmonic-basis", "--vars", "2", "--degree", "3"], stdin: None, code: 0 },
    Case { name: "harmonic_basis_2_json", args: &["harmonic-basis", "--degree", "2", "--json"], stdin: None, code: 0 },
    Case {
        name: "middle_matrix",
        args: &["middle-matrix", "3*x1*h*x2^2*h*x1 + h*x1*x2*x1*h - h*x1*h*x2^2 - x2^2*h*x1*h + 5*x1*x2*h*x2*h*x2*x1"],
        stdin: None,
        code: 0,
    },
    Case { name: "middle_matrix_json", args: &["middle-matrix", "--json", "x1*x2^2*x1"], stdin: None, code: 0 },
    Case { name: "classify_degree2", args: &["classify", "--vars", "2", "x1^2 + x2^2"], stdin: None, code: 0 },
    Case { name: "classify_degree2_json", args: &["classify", "--json", "x1^2 + x2^2"], stdin: None, code: 0 },
    Case {
        name: "classify_degree4_strict",
        args: &["classify", "x1^4 - x1^2*x2^2 - x2^2*x1^2 + x2^4 + x1*x2^2*x1 + 2*x2*x1^2*x2"],
        stdin: None,
        code: 0,
    },
    Case { name: "classify_boundary", args: &["classify", "x1*x2^2*x1"], stdin: None, code: 0 },
    Case { name: "classify_quartic_power", args: &["classify", "--json", "x1^4"], stdin: None, code: 1 },
    Case { name: "classify_odd", args: &["classify", "x1^3"], stdin: None, code: 1 },
    Case { name: "classify_harmonic", args: &["classify", "x1*x2 + x2*x1"], stdin: None, code: 0 },
    Case { name: "sos", args: &["sos", "x1*x2^2*x1 + x2*x1^2*x2"], stdin: None, code: 0 },
    Case { name: "sos_none", args: &["sos", "-x1*x2^2*x1"], stdin: None, code: 1 },
    Case {
        name: "odd_sandwich",
        args: &["odd-sandwich", "x1^3 - x1*x2^2 - x2^2*x1 - x2*x1*x2"],
        stdin: None,
        code: 0,
    },
    Case { name: "sample_counterexample", args: &["sample", "--seed", "7", "x1^2 - x2^2"], stdin: None, code: 1 },
    Case {
        name: "sample_none_json",
        args: &["sample", "--json", "--sizes", "1,2", "--samples", "20", "x1^2 + x2^2"],
        stdin: None,
        code: 0,
    },
];

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ncharm"));
    c.env_remove("NCHARM_SEED");
    c
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(format!("{name}.out"));
    if std::env::var_os("NCHARM_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, want, "golden mismatch for {name}");
}

fn point_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ncharm-golden-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn subcommands_match_golden_files() {
    for case in CASES {
        let (code, out, err) = run(case.args, case.stdin);
        assert_eq!(code, case.code, "{}: exit code (stderr: {err})", case.name);
        check_golden(case.name, &out);
    }
}

#[test]
fn worked_examples() {
    let (_, out, _) = run(&["derive", "--vars", "2", "--var", "1", "x1^2*x2"], None);
    assert_eq!(out, "h*x1*x2 + x1*h*x2\n");

    let (_, out, _) = run(&["harmonic-basis", "--vars", "2", "--degree", "3"], None);
    assert!(out.starts_with("dimension 2\n"), "{out}");

    let (_, out, _) = run(&["classify", "--vars", "2", "x1^2 + x2^2"], None);
    assert!(out.starts_with("kind: PurelySubharmonicCertified\n"), "{out}");
    assert!(out.contains("A1 + A2 = 2/1"), "{out}");

    let (code, out, _) = run(&["classify", "--json", "2*x1^3*x1^3 + 5*x1*x2^5"], None);
    assert_eq!(code, 2, "not symmetric");
    assert!(out.is_empty());
}

#[test]
fn membership_json_matches_schema() {
    // 2 (Re gamma^3)^2 + 5 Im gamma^6, built through the library
    use ncharm_core::classify2::high_even_generators;
    use ncharm_core::Scalar;
    let [sq, _, im] = high_even_generators(3).unwrap();
    let p = sq.scale(&Scalar::from_integer(2.into())) + im.scale(&Scalar::from_integer(5.into()));
    let (code, out, _) = run(&["classify", "--json", &p.render()], None);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"kind\":\"PurelySubharmonicCertified\",\"membership\":{\"c0\":\"2/1\",\"c1\":\"0/1\",\"c2\":\"5/1\"}}\n"
    );
}

#[test]
fn eval_at_points() {
    let pt = point_file("eval", r#"{"X": [[[1, 0], [0, 2]], [[0, 1], [1, 0]]], "H": [[1, 0], [0, 0]]}"#);
    let (code, out, err) = run(&["eval", "--point", pt.to_str().unwrap(), "x1*h*x1 + x2"], None);
    assert_eq!(code, 0, "{err}");
    check_golden("eval", &out);

    // this cubic is subharmonic at X1 = I and not at X1 = -I
    let cubic = "x1^3 - x1*x2^2 - x2^2*x1 + x2*x1*x2";
    let plus = point_file("plus", r#"{"X": [[[1, 0], [0, 1]], [[0.3, -0.2], [-0.2, 0.5]]]}"#);
    let minus = point_file("minus", r#"{"X": [[[-1, 0], [0, -1]], [[0.3, -0.2], [-0.2, 0.5]]]}"#);
    let (code, out, _) = run(&["eval", "--subharmonic", "--point", plus.to_str().unwrap(), cubic], None);
    assert_eq!(code, 0);
    check_golden("eval_subharmonic_plus", &out);
    let (code, out, _) = run(&["eval", "--subharmonic", "--json", "--point", minus.to_str().unwrap(), cubic], None);
    assert_eq!(code, 1);
    assert!(out.starts_with("{\"kind\":\"CounterexampleH\""), "{out}");
    check_golden("eval_subharmonic_minus", &out);

    let bad = point_file("bad", r#"{"X": [[[1, 0]]]}"#);
    let (code, _, err) = run(&["eval", "--point", bad.to_str().unwrap(), "x1"], None);
    assert_eq!(code, 2);
    assert!(err.contains("not square"), "{err}");
    for p in [pt, plus, minus, bad] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn errors_exit_two_with_positions() {
    let (code, out, err) = run(&["laplacian", "x1 + * x2"], None);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert_eq!(err, "error: <argument>:1:6: parse error at byte 5: unexpected character\n  x1 + * x2\n       ^\n");

    let (code, _, err) = run(&["laplacian", "--vars", "2", "x1*x3"], None);
    assert_eq!(code, 2);
    assert!(err.contains("x3 out of range for 2 variables"), "{err}");

    let (code, _, err) = run(&["laplacian", "x1", "--file", "whatever.txt"], None);
    assert_eq!(code, 2);
    assert!(err.contains("pass only one"), "{err}");

    let (code, _, _) = run(&["laplacian", "--frobnicate", "x1"], None);
    assert_eq!(code, 2);

    let (code, _, err) = run(&["derive", "--var", "1", "x1*h"], None);
    assert_eq!(code, 2);
    assert!(err.contains("direction letter h"), "{err}");
}

#[test]
fn file_and_json_input() {
    let dir = std::env::temp_dir();
    let text = dir.join(format!("ncharm-golden-{}-p.txt", std::process::id()));
    let json = dir.join(format!("ncharm-golden-{}-p.json", std::process::id()));
    std::fs::write(&text, "x1^2*x2\n").unwrap();
    std::fs::write(&json, r#"{"g":2,"terms":[{"coeff":"1/1","word":[1,1,2]}]}"#).unwrap();
    let a = run(&["laplacian", "-f", text.to_str().unwrap()], None);
    let b = run(&["laplacian", "--file", json.to_str().unwrap()], None);
    let c = run(&["laplacian", "-f", "-"], Some("x1^2*x2"));
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert_eq!(a, c);
    let (code, _, err) = run(&["laplacian", "--vars", "3", "-f", json.to_str().unwrap()], None);
    assert_eq!(code, 2);
    assert!(err.contains("mismatch"), "{err}");
    let _ = std::fs::remove_file(text);
    let _ = std::fs::remove_file(json);
}

#[test]
fn seed_flag_overrides_environment() {
    let args = ["sample", "--json", "--sizes", "2,3", "x1^2 - 2*x2^2 + x1*x2 + x2*x1"];
    let env_run = |seed: &str, extra: &[&str]| {
        let out = bin().env("NCHARM_SEED", seed).args(args).args(extra).output().unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    let flag = run(&[&args[..], &["--seed", "11"]].concat(), None).1;
    assert_eq!(env_run("11", &[]), flag);
    assert_eq!(env_run("5", &["--seed", "11"]), flag);
    assert_ne!(env_run("5", &[]), flag);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["classify", "--json", "--seed", "3", "x1^3*x2 + x2*x1^3"][..],
        &["sample", "--json", "--seed", "3", "x1*x2*x1 - x2^2"][..],
        &["harmonic-basis", "--vars", "3", "--degree", "3", "--json"][..],
    ] {
        let first = run(args, None);
        for _ in 0..2 {
            assert_eq!(run(args, None), first, "{args:?}");
        }
    }
}
