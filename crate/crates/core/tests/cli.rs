use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn pairdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairdom")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn solve_fifteen_vertex_example() {
    let o = pairdom(&["solve", data("example15.tree").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n=15\ngamma_pr=10\nphi=5\nroot_label=P\nmembers=1 2 3 4 5 6 7 8 11 12\npairs=1-4 2-5 3-8 6-11 7-12\n"
    );
}

#[test]
fn label_nineteen_vertex_example() {
    let o = pairdom(&["label", data("example19.tree").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n=19\nlabels=F F P F P R P R P R B R B B B B R B B\nphi=5\ngamma_from_labels=10\n"
    );
}

#[test]
fn oracle_and_edge() {
    let o = pairdom(&["oracle", data("example15.tree").to_str().unwrap()]);
    assert_eq!(stdout(&o), "n=15\ngamma_pr=10\n");
    let o = pairdom(&["solve", data("edge.tree").to_str().unwrap()]);
    assert!(stdout(&o).contains("gamma_pr=2\n"));
    assert!(stdout(&o).contains("pairs=1-2\n"));
}

#[test]
fn single_vertex() {
    let o = pairdom(&["solve", data("single.tree").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
    let o = pairdom(&["label", data("single.tree").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning=single vertex"));
}

#[test]
fn limit_constants() {
    let o = pairdom(&["constants", "--model", "labelled"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("mu_pr=0.5177"), "{out}");
    assert!(out.contains("x_B=0.4084569"), "{out}");
    let o = pairdom(&["constants", "--model", "custom", "--pmf", data("sparse.pmf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("model=custom"));
}

#[test]
fn sample_then_solve_via_stdin() {
    let o = pairdom(&["sample", "--model", "plane", "--n", "40", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let tree = stdout(&o);
    assert!(tree.starts_with("40\n"));
    let again = pairdom(&["sample", "--model", "plane", "--n", "40", "--seed", "3"]);
    assert_eq!(stdout(&again), tree);

    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pairdom"))
        .args(["solve", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(tree.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=40\ngamma_pr="));
}

#[test]
fn simulate_is_worker_independent() {
    let args = ["simulate", "--model", "binary", "--n", "200", "--reps", "50", "--seed", "5"];
    let one = pairdom(&[&args[..], &["--workers", "1"]].concat());
    let four = pairdom(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    assert!(stdout(&one).starts_with("model=binary\nn=200\nreps=50\nseed=5\n"));
}

#[test]
fn fixtures_are_written() {
    let dir = std::env::temp_dir().join(format!("pairdom-fixtures-{}", std::process::id()));
    let o = pairdom(&["fixtures", "--d0", "2", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("t1.gamma_pr=4\n") && out.contains("t2.gamma_pr=6\n"), "{out}");
    assert_eq!(std::fs::read_to_string(dir.join("t1.tree")).unwrap(), "11\n0 1 1 2 2 3 3 4 4 7 7\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let o = pairdom(&["bogus"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o).lines().count(), 1);
    let o = pairdom(&["simulate", "--model", "labelled", "--n", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--reps"));
    let o = pairdom(&["solve", data("bad_count.tree").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = pairdom(&["solve", "/nonexistent/tree"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pairdom(&["constants", "--model", "custom"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--pmf"));
    let o = pairdom(&["sample", "--model", "plane", "--n", "5", "--seed", "1", "--method", "pruefer"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pairdom(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Usage"));
}
