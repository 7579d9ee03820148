use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn diffgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn build_then_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "d.txt");
    let dot = path(dir.path(), "d.dot");
    let o = diffgraph(&[
        "build",
        "--group",
        "3:1;2:2",
        "--kind",
        "difference",
        "--out",
        &file,
        "--dot",
        &dot,
    ]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&file)
        .unwrap()
        .starts_with("version 1\nspec 2:2;3:1\n"));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("graph G {"));

    let report = path(dir.path(), "r.json");
    let o = diffgraph(&[
        "reconstruct",
        "--in",
        &file,
        "--shuffle-seed",
        "9",
        "--report",
        &report,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("spec 2:2;3:1\n"));
    let json = fs::read_to_string(&report).unwrap();
    assert!(json.contains("\"spec\": \"2:2;3:1\""));
    assert!(json.contains("\"validated\": true"));
}

#[test]
fn reconstruct_matches_build_for_several_specs() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["2:1;3:1", "2:2,1;3:2,1", "2:1,1;3:2", "3:2;5:1", "2:3;3:2"] {
        let file = path(dir.path(), "g.txt");
        assert!(diffgraph(&[
            "build",
            "--group",
            spec,
            "--kind",
            "difference",
            "--out",
            &file
        ])
        .status
        .success());
        let o = diffgraph(&["reconstruct", "--in", &file, "--no-validate"]);
        assert_eq!(
            stdout(&o).lines().next(),
            Some(format!("spec {spec}").as_str())
        );
    }
}

#[test]
fn other_graph_kinds() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, edges) in [("power", 13), ("enhanced", 15), ("directed-power", 15)] {
        let file = path(dir.path(), "g.txt");
        let o = diffgraph(&[
            "build", "--group", "2:1;3:1", "--kind", kind, "--out", &file,
        ]);
        assert!(o.status.success(), "{kind}");
        assert_eq!(stdout(&o), format!("6 vertices, {edges} edges\n"), "{kind}");
    }
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = diffgraph(&["classes", "--group", "4:1;3:1"]);
    assert_eq!(o.status.code(), Some(2));

    let c5 = path(dir.path(), "c5.txt");
    fs::write(
        &c5,
        "version 1\nvertices 5\nedge 0 1\nedge 0 4\nedge 1 2\nedge 2 3\nedge 3 4\n",
    )
    .unwrap();
    assert_eq!(
        diffgraph(&["reconstruct", "--in", &c5]).status.code(),
        Some(2)
    );

    let dup = path(dir.path(), "dup.txt");
    fs::write(&dup, "version 1\nvertices 3\nedge 0 1\nedge 0 1\n").unwrap();
    let o = diffgraph(&["reconstruct", "--in", &dup]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn classes_table() {
    let o = diffgraph(&["classes", "--group", "2:2;3:2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 8);
    assert!(out.contains("qp-max-submax"));
    let mut sizes: Vec<u32> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 2, 2, 4, 6, 6]);
}

#[test]
fn enumerate_lists_canonical_specs() {
    let o = diffgraph(&["enumerate", "--max-order", "12"]);
    assert_eq!(stdout(&o), "2:1;3:1\n2:1;5:1\n2:1,1;3:1\n2:2;3:1\n");
}

#[test]
fn verify_exit_codes_and_determinism() {
    let ok = diffgraph(&["verify", "--max-order", "60", "--jobs", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    let par = diffgraph(&["verify", "--max-order", "60", "--jobs", "3"]);
    assert_eq!(stdout(&ok), stdout(&par));
    assert!(stdout(&ok).contains("total: "));

    let bad = diffgraph(&[
        "verify",
        "--max-order",
        "60",
        "--suites",
        "adjacency,roundtrip",
        "--fault-inject",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("FAIL "));

    let unknown = diffgraph(&["verify", "--max-order", "60", "--suites", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}
