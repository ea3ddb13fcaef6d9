use std::io::Write;
use std::process::Command;

fn rules_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn exit_code(sub: &str, text: &str) -> i32 {
    let f = rules_file(text);
    Command::new(env!("CARGO_BIN_EXE_lim1"))
        .arg(sub)
        .arg(f.path())
        .output()
        .unwrap()
        .status
        .code()
        .unwrap()
}

#[test]
fn rule_grammar_exit_codes() {
    let cases: &[(&str, &str, i32)] = &[
        ("sub", "a -> a b\nb -> a\n", 0),
        ("sub", "a->ab\nb->a", 0),
        ("sub", "# fibonacci\na -> a b   # first\n\nb -> a\n", 0),
        ("sub", "x1 -> x1 x2\nx2 -> x1\n", 0),
        ("endo", "a->aB\nb->a", 0),
        ("endo", "a -> b b'\nb -> a", 0),
        ("endo", "a -> a a", 0),
        ("cohomology", "a -> a a", 0),
        ("cohomology", "a -> a b\nb -> a", 0),
        ("sub", "a -> b b'\nb -> a", 3),
        ("sub", "a -> a b'\nb -> a", 3),
        ("sub", "a->aB\nb->a", 3),
        ("sub", "a ->\nb -> a", 3),
        ("endo", "a ->\nb -> a", 3),
        ("sub", "a -> a a", 3),
        ("sub", "a -> a b\nb -> b", 3),
        ("sub", "", 3),
        ("sub", "a -> c\nb -> a", 2),
        ("endo", "a -> a c'\nb -> a", 2),
        ("sub", "a -> b\na -> a\nb -> a", 2),
        ("sub", "a b\nb -> a", 2),
        ("sub", "1 -> a\na -> 1", 2),
        ("endo", "a -> a''\nb -> a", 2),
        ("endo", "x1->x1x2\nx2->x1", 2),
        ("endo", "a->a1\nb->a", 2),
    ];
    for &(sub, text, expected) in cases {
        assert_eq!(exit_code(sub, text), expected, "{sub} {text:?}");
    }
}

#[test]
fn parameter_exit_codes() {
    let code = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_lim1")).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["torus", "--d", "2", "--k", "1"]), 0);
    assert_eq!(code(&["torus", "--d", "1", "--k", "1"]), 3);
    assert_eq!(code(&["torus", "--d", "2", "--k", "0"]), 3);
    assert_eq!(code(&["projection", "--d", "2", "--n", "2"]), 0);
    assert_eq!(code(&["projection", "--d", "1", "--n", "2"]), 3);
    assert_eq!(code(&["projection", "--d", "2", "--n", "0"]), 3);
    assert_eq!(code(&["torus", "--d", "x", "--k", "1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["sub", "/nonexistent/rules"]), 2);
    assert_eq!(code(&["--cap-border", "0", "torus", "--d", "2", "--k", "1"]), 3);
}

#[test]
fn errors_go_to_stderr() {
    let f = rules_file("a -> b'\nb -> a");
    let out = Command::new(env!("CARGO_BIN_EXE_lim1")).arg("sub").arg(f.path()).output().unwrap();
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("inverse letter"), "{err}");
}
