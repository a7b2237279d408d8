//! End-to-end tests of the `poset-dual` binary against golden outputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poset-dual"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest_path(&format!("tests/golden/{name}"))).unwrap()
}

fn assert_golden(args: &[&str], name: &str) {
    let o = run(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), golden(name), "{args:?}");
}

#[test]
fn subcommands_match_golden_output() {
    assert_golden(
        &["verify", "examples/chain2.poset", "--brute-force"],
        "verify_chain2.txt",
    );
    assert_golden(
        &["dual", "examples/antichain2.poset"],
        "dual_antichain2.txt",
    );
    assert_golden(&["hasse", "examples/diamond.poset"], "hasse_diamond.txt");
    assert_golden(
        &["irreducibles", "examples/vee.poset"],
        "irreducibles_vee.txt",
    );
    assert_golden(&["primes", "examples/vee.poset"], "primes_vee.txt");
    assert_golden(
        &["second-dual", "examples/chain2.poset", "--brute-force"],
        "second_dual_chain2.txt",
    );
}

#[test]
fn dual_dot_of_two_element_antichain() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("dual.dot");
    let o = run(&[
        "dual",
        "examples/antichain2.poset",
        "--label-embeddings",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text, golden("dual_antichain2.dot"));
    assert_eq!(text.matches(" [label=").count(), 4);
    assert_eq!(text.matches(" -> ").count(), 4);
}

#[test]
fn every_example_verifies() {
    for name in ["chain2", "antichain2", "diamond", "vee"] {
        let path = format!("examples/{name}.poset");
        let o = run(&["verify", &path, "--brute-force"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).ends_with("result: pass\n"), "{name}");
    }
}

#[test]
fn injected_fault_is_caught() {
    let o = run(&[
        "verify",
        "examples/chain2.poset",
        "--inject-fault",
        "lambda",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("evaluation_order: fail:"), "{out}");
    assert!(out.ends_with("result: fail\n"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poset");
    std::fs::write(&bad, "poset X\nelements: a\nrelations:\na < q\n").unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4, column 5: unknown element `q`"));

    let cyclic = dir.path().join("cyclic.poset");
    std::fs::write(
        &cyclic,
        "poset C\nelements: a b\nrelations:\na < b\nb < a\n",
    )
    .unwrap();
    assert_eq!(
        run(&["dual", cyclic.to_str().unwrap()]).status.code(),
        Some(2)
    );

    assert_eq!(run(&["dual", "no/such/file.poset"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["random", "3", "--density", "1.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn size_caps_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.poset");
    let o = run(&["random", "30", "--density", "0", "--name", "big"]);
    std::fs::write(&big, &o.stdout).unwrap();
    let o = run(&["dual", big.to_str().unwrap(), "--max-members", "1000"]);
    assert_eq!(o.status.code(), Some(3));

    // 6 incomparable elements: 64 members, too many to brute-force.
    let wide = dir.path().join("wide.poset");
    std::fs::write(&wide, "poset W\nelements: a b c d e f\nrelations:\n").unwrap();
    let o = run(&["second-dual", wide.to_str().unwrap(), "--brute-force"]);
    assert_eq!(o.status.code(), Some(3));
    // Without brute force the evaluation maps are listed.
    let o = run(&["second-dual", wide.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  size: 6\n"));
}

#[test]
fn random_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(&[
        "random",
        "7",
        "--seed",
        "42",
        "--density",
        "0.4",
        "--name",
        "r",
    ]);
    let second = run(&[
        "random",
        "7",
        "--seed",
        "42",
        "--density",
        "0.4",
        "--name",
        "r",
    ]);
    assert_eq!(first.stdout, second.stdout);
    let path = dir.path().join("r.poset");
    std::fs::write(&path, &first.stdout).unwrap();
    let o = run(&["verify", path.to_str().unwrap(), "--brute-force"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  name: r\n  size: 7\n"));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}
