use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIGON: &str = "poset rn 2\nv a 0 0\nv b 0 0\ne x a b 0 1\ne y a b 1 0\n";

fn h0pres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h0pres"))
        .args(args)
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_h0pres"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn betti2d_on_the_bigon() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bigon.fg", BIGON);
    let o = h0pres(&["betti2d", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "betti0\n0 0\n0 0\nbetti1\n0 1\n1 0\nbetti2\n1 1\nbetti0_h1\n1 1\nmatrix\n1 1 -1\n2 1 1\n1 2 -1\n2 2 1\n"
    );
    let naive = h0pres(&["betti2d", "--backend", "naive", &f]);
    assert_eq!(naive.stdout, o.stdout);
    assert_eq!(h0pres(&["betti2d", &f]).stdout, o.stdout);
}

#[test]
fn reads_standard_input_and_writes_files() {
    let o = with_stdin(&["minpres"], BIGON);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("betti0\n0 0\n0 0\nbetti1\n"));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.txt");
    let o = with_stdin(&["minpres", "-", "-o", out.to_str().unwrap()], BIGON);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(out)
        .unwrap()
        .ends_with("matrix\n1 1 -1\n2 1 1\n1 2 -1\n2 2 1\n"));
}

#[test]
fn oracle_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bigon.fg", BIGON);
    let o = h0pres(&["oracle", "--field", "3", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "field 3\nbetti0\n0 0\n0 0\nbetti1\n0 1\n1 0\nbetti2\n1 1\nbetti0_h1\n1 1\n"
    );
    let o = h0pres(&["verify", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("ok ")));
    let o = h0pres(&["oracle", "--grid-cap", "1", &f]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reduce_collapses() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "path.fg",
        "poset rn 2\nv a 0 0\nv b 1 1\ne ab a b 1 1\n",
    );
    let o = h0pres(&["reduce", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "poset rn 2\nv a 0 0\n");
}

#[test]
fn finite_poset_files_are_relative_to_the_graph() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "v.poset",
        "poset finite 3\n1 0 1\n0 1 1\n0 0 1\n",
    );
    let f = write(
        dir.path(),
        "g.fg",
        "poset finite v.poset\nv a 0\nv b 1\ne ab a b 2\n",
    );
    let o = h0pres(&["minpres", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "betti0\n0\n1\nbetti1\n2\nmatrix\n1 1 -1\n2 1 1\n"
    );
    let o = h0pres(&["verify", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(h0pres(&["betti2d", &f]).status.code(), Some(1));
    let missing = write(dir.path(), "h.fg", "poset finite nowhere.poset\nv a 0\n");
    assert_eq!(h0pres(&["minpres", &missing]).status.code(), Some(4));
}

#[test]
fn onecrit() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.fg", "poset rn 2\nv v 0 1 ; 1 0\n");
    let o = h0pres(&["onecrit", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "poset rn 2\nv v@1 0 1\nv v@2 1 0\ne v@1~2 v@1 v@2 1 1\n"
    );
    let o = h0pres(&["onecrit", "--betti", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "betti0\n0 1\n1 0\nbetti1\n1 1\nbetti2\n# betti0_h1 not meaningful for one-criticalized input\nmatrix\n1 1 -1\n2 1 1\n"
    );
}

#[test]
fn invalid_inputs_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.fg",
        "poset rn 2\nv a 2 2\nv b 0 0\ne ab a b 1 1\n",
    );
    let o = h0pres(&["minpres", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr)
        .contains("edge ab: grade is not above the grade of endpoint a"));
    let f = write(dir.path(), "syntax.fg", "poset rn 2\nv a 0\n");
    let o = h0pres(&["betti2d", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let f = write(
        dir.path(),
        "m.fg",
        "poset rn 2\nv a 1 1\nv b 0 0\ne ab a b 0 5 ; 2 2\n",
    );
    assert_eq!(h0pres(&["onecrit", &f]).status.code(), Some(1));
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(h0pres(&["minpres", "--help"]).status.code(), Some(0));
    assert_eq!(h0pres(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(h0pres(&["betti2d", "--colour", "x"]).status.code(), Some(2));
    assert_eq!(
        h0pres(&["oracle", "--field", "4", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(h0pres(&[]).status.code(), Some(2));
    let o = h0pres(&["betti2d", "/nonexistent/in.fg"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
}

#[test]
fn bench_prints_a_table() {
    let o = h0pres(&["bench", "--from", "6", "--to", "8", "--rounds", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "size seconds ratio");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("64 "));
    let o = h0pres(&[
        "bench", "--op", "minpres", "--from", "4", "--to", "5", "--rounds", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
}
