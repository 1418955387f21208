use std::path::Path;
use std::process::{Command, Output};

fn xg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xg"))
        .args(args)
        .env_remove("XG_NODE_BUDGET")
        .env_remove("XG_THREADS")
        .output()
        .expect("run xg")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn alternator_prints_the_certificate() {
    let out = xg(&["alternator", "-n", "16", "-k", "4", "-a", "4,9,12,15", "-b", "6,8,13,16"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n 16\nk 4\nA 4 9 12 15\nB 6 8 13 16\nm 2\npair 2 11\npair 3 7\n");
}

#[test]
fn non_edge_is_refused() {
    let out = xg(&["alternator", "-n", "7", "-k", "2", "-a", "1,3", "-b", "5,7"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not an edge"));
}

#[test]
fn non_vertex_is_a_usage_error() {
    let out = xg(&["alternator", "-n", "7", "-k", "2", "-a", "1,2", "-b", "3,4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_arguments_exit_with_three() {
    assert_eq!(xg(&["bogus"]).status.code(), Some(3));
    assert_eq!(xg(&["chi", "--family", "xg", "-n", "3", "-k", "2"]).status.code(), Some(3));
    assert_eq!(xg(&["--help"]).status.code(), Some(0));
}

#[test]
fn chi_of_kneser_graph_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chi.json");
    let out = xg(&["chi", "--family", "kneser", "-n", "7", "-k", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("chi=5 status=exact"));
    let v = read_json(&path);
    assert_eq!(v["chi"], 5);
    let colors = v["coloring"].as_array().unwrap();
    assert_eq!(colors.len(), 21);
    assert!(colors.iter().all(|c| (1..=5).contains(&c.as_u64().unwrap())));
}

#[test]
fn exhausted_budget_is_unknown() {
    let out = xg(&["chi", "--family", "xg", "-n", "9", "-k", "3", "--budget", "10", "--no-sat"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("chi=unknown"));
}

#[test]
fn generated_graph_round_trips_through_chi() {
    let dir = tempfile::tempdir().unwrap();
    for (format, name) in [("dimacs", "g.col"), ("json", "g.json")] {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let out = xg(&["generate", "--family", "mycielski-tower", "-t", "5", "--radii", "2,1,3", "--format", format, "-o", p]);
        assert_eq!(out.status.code(), Some(0), "{format}");
        let out = xg(&["chi", "--input", p]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains("chi=5 status=exact"), "{format}: {}", stdout(&out));
    }
}

#[test]
fn generation_is_deterministic() {
    let a = xg(&["generate", "--family", "schrijver", "-n", "9", "-k", "3"]);
    let b = xg(&["generate", "--family", "schrijver", "-n", "9", "-k", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p edge 30 "));
}

#[test]
fn verify_critical_passes_and_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("crit.json");
    let out = xg(&["verify-critical", "-n", "7", "-k", "2", "--exact", "all", "--certificate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failed_edges=0 violations=0 exact_checked=40"));
    let v = read_json(&path);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["report"]["edges"].as_array().unwrap().len(), 40);
}

#[test]
fn verify_critical_negative_controls_fail() {
    let out = xg(&["verify-critical", "-n", "7", "-k", "2", "--exact", "none", "--corrupt-palette"]);
    assert_eq!(out.status.code(), Some(1));
    let out = xg(&["verify-critical", "-n", "6", "-k", "2", "--exact", "none", "--r1", "least"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("failed_edges=3"));
}

#[test]
fn sampled_output_reports_seed_and_is_reproducible() {
    let args = ["verify-critical", "-n", "9", "-k", "3", "--exact", "sample", "--sample", "5", "--seed", "42"];
    let a = xg(&args);
    let b = xg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed=42"));
    assert!(stdout(&a).contains("exact_checked=5"));
}

#[test]
fn homomorphism_and_its_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hom.json");
    let out = xg(&["verify-hom", "-n", "9", "-k", "3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("violations=0"));
    assert_eq!(read_json(&path)["violations"].as_array().unwrap().len(), 0);

    let out = xg(&["verify-hom", "-n", "9", "-k", "3", "--perturb", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!read_json(&path)["violations"].as_array().unwrap().is_empty());

    let out = xg(&["verify-hom", "-n", "9", "-k", "3", "--identity"]);
    assert_eq!(out.status.code(), Some(0));
}
