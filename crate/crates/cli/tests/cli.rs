use std::process::{Command, Output};

fn glmn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glmn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn oddset_graph_as_dot() {
    let o = glmn(&["graph", "oddset", "--m", "1", "--n", "1", "--format", "dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("digraph crystal {"));
    assert!(s.contains("n0 -> n1 [label=\"1\""));
}

#[test]
fn graph_output_is_deterministic() {
    let args = [
        "graph", "kac", "--m", "2", "--n", "1", "--lambda", "1,0,1", "--format", "json",
    ];
    assert_eq!(stdout(&glmn(&args)), stdout(&glmn(&args)));
}

#[test]
fn example_neighbourhood() {
    let o = glmn(&[
        "graph", "binf", "--from", "example", "--depth", "1", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m"], 3);
    assert_eq!(v["n"], 4);
    let nodes = v["nodes"].as_array().unwrap();
    assert!(nodes.len() > 5);
    assert!(nodes
        .iter()
        .any(|x| x["label"]
            == "{14,16,25,26,35,37} | 12:2,13:1,23:2 | 45:2,46:1,47:1,56:1,57:2,67:1"));
}

#[test]
fn verify_suites_report_and_exit() {
    let o = glmn(&["verify", "examples"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("[pass]"));
    let o = glmn(&["verify", "qfield", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["suite"], "qfield");
    assert_eq!(glmn(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn components_census() {
    let o = glmn(&[
        "components",
        "--m",
        "2",
        "--n",
        "2",
        "--cap",
        "3",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["expected"], 4);
}

#[test]
fn bad_lambda_is_rejected() {
    let o = glmn(&[
        "graph", "kac", "--m", "2", "--n", "2", "--lambda", "0,1,0,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not dominant"));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("glmn-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.dot");
    let o = glmn(&[
        "graph",
        "xlambda",
        "--lambda",
        "1,0,1,0",
        "--cap",
        "2",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .contains("style=bold"));
    std::fs::remove_dir_all(dir).unwrap();
}
