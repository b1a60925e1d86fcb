use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxdecomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn f4_gives_d4() {
    let o = run(&["decompose", "--type", "F4", "--I", "s1,s2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("generators: 4"));
    assert!(text.contains("D4: "), "{text}");
}

#[test]
fn odd_path_is_an_input_error() {
    let o = run(&["decompose", "--type", "A3", "--I", "s1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("odd path s1 - s2"), "{}", stderr(&o));
}

#[test]
fn unknown_generator_and_type() {
    assert_eq!(
        run(&["decompose", "--type", "B3", "--I", "q"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["decompose", "--type", "Z9", "--I", "t"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["decompose", "--I", "t"]).status.code(), Some(2));
}

#[test]
fn table_passes() {
    let o = run(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("39 of 39 rows pass\n"));
}

#[test]
fn table_rows_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = coxdecomp::catalog::table_rows()[4].to_text();
    let bad = good.replacen("types: B2", "types: G2", 1);
    let path = dir.path().join("rows.txt");
    fs::write(&path, format!("{good}\n{bad}")).unwrap();
    let o = run(&["table", "--rows", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("PASS I2(8)"), "{text}");
    assert!(text.contains("FAIL I2(8)"));
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["decompose", "--type", "~C3", "--I", "s1,s2,t'"]);
    let b = run(&["decompose", "--type", "~C3", "--I", "s1,s2,t'"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn outputs_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let (dot, out) = (dir.path().join("m.dot"), dir.path().join("r.txt"));
    let o = run(&[
        "decompose",
        "--type",
        "~C2",
        "--I",
        "t,t'",
        "--dot",
        dot.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let dot = fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches("label=\"inf\"").count(), 2);
    assert!(fs::read_to_string(out).unwrap().contains("~A1: "));
}

#[test]
fn external_round_trip_and_violation() {
    let dir = tempfile::tempdir().unwrap();
    let ext = dir.path().join("f4.ext");
    let o = run(&[
        "decompose",
        "--type",
        "F4",
        "--I",
        "s1,s2",
        "--ext",
        ext.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["external", ext.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("coxeter system F4"));

    // Both W_I-orbits represented twice.
    let text = fs::read_to_string(&ext)
        .unwrap()
        .replace("[J]\nt1 t2", "[J]\nt1 s1t1s1 t2");
    fs::write(&ext, text).unwrap();
    let o = run(&["external", ext.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not a coxeter system"));
}

#[test]
fn matrix_input_and_partial_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    fs::write(&m, "a b c\n1 inf 2\ninf 1 4\n2 4 1\n").unwrap();
    let o = run(&["decompose", "--matrix", m.to_str().unwrap(), "--I", "a,b"]);
    assert_eq!(o.status.code(), Some(2), "W_I is infinite without a bound");
    let o = run(&[
        "decompose",
        "--matrix",
        m.to_str().unwrap(),
        "--I",
        "a,b",
        "--bound",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("truncated W_I"), "{}", stderr(&o));
    let o = run(&["decompose", "--matrix", m.to_str().unwrap(), "--I", "c"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn verify_and_descent_on_b2() {
    let o = run(&["verify", "--type", "B2", "--I", "t"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let o = run(&["descent", "--type", "B2", "--I", "t", "--sequential"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 4);
    let o = run(&["descent", "--type", "~A1", "--I", "s0"]);
    assert_eq!(o.status.code(), Some(2));
}
