use std::fs;
use std::process::{Command, Output};

fn reflexive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflexive")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_is_sorted_and_complete() {
    let o = reflexive(&["enumerate", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let words: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(words.contains(&"***".to_string()));
    let mut sorted = words.clone();
    sorted.sort_by_key(|w| w.chars().map(|c| "*+-".find(c).unwrap()).collect::<Vec<_>>());
    sorted.dedup();
    assert_eq!(words, sorted);
    assert_eq!(reflexive(&["enumerate", "2"]).status.code(), Some(4));
}

#[test]
fn hom_lift_and_dot() {
    let o = reflexive(&["hom", "--from", "+", "--to", "-", "--pin", "0=0", "--pin", "1=1"]);
    assert_eq!(stdout(&o), "none\n");
    let o = reflexive(&["lift", "--cycle", "+*+-**"]);
    assert_eq!(stdout(&o), "no lift (nonzero winding)\n");
    let o = reflexive(&["lift", "--cycle", "+*+-**", "--source", "*+", "--map", "5,0,1"]);
    assert_eq!(stdout(&o), "0 -> (5,0)\n1 -> (0,1)\n2 -> (1,1)\n");
    let o = reflexive(&["export-dot", "cycle:+*+-**"]);
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("->")).count(), 6);
    assert_eq!(dot.matches("dir=both").count(), 3);
    let o = reflexive(&["export-dot", "cycle:+*+-**", "--cover-levels", "1", "--no-loops"]);
    assert!(stdout(&o).contains("[label=\"(0,-1)\"]"));
}

#[test]
fn usage_errors_exit_4() {
    let o = reflexive(&["hom", "--from", "+x", "--to", "-"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 1"));
    assert_eq!(reflexive(&["classify", "--girth", "6..4"]).status.code(), Some(4));
    assert_eq!(reflexive(&["classify", "--girth", "4", "--jobs", "0"]).status.code(), Some(4));
    assert_eq!(reflexive(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(reflexive(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_is_deterministic_and_cache_sound() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let cache = path("cache");
    let run = |out: &str, jobs: &str, cache: Option<&str>| {
        let mut args = vec!["classify", "--girth", "4..5", "--jobs", jobs, "--out", out];
        if let Some(c) = cache {
            args.extend(["--cache", c]);
        }
        let o = reflexive(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out).unwrap()
    };
    let fresh = run(&path("fresh.jsonl"), "1", None);
    let cold = run(&path("cold.jsonl"), "3", Some(&cache));
    let warm = run(&path("warm.jsonl"), "2", Some(&cache));
    assert_eq!(fresh, cold);
    assert_eq!(cold, warm);
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 45);

    let timings = fs::read_to_string(path("warm.jsonl.timings.jsonl")).unwrap();
    assert_eq!(timings.lines().count(), 45);
    assert!(timings.lines().all(|l| l.contains("\"cached\":true")));

    let text = String::from_utf8(fresh).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["mismatch"], false);
        assert_eq!(v["path_condition"]["syntactic"]["fails"], v["path_condition"]["bruteforce"]["fails"]);
    }
}

#[test]
fn classify_budgets_and_formats() {
    let o = reflexive(&["classify", "--girth", "8", "--methods", "syntactic,bruteforce"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.contains("\"status\":\"skipped\"")));

    let o = reflexive(&["classify", "--girth", "4", "--methods", "slupecki", "--budget-nodes", "10"]);
    assert_eq!(o.status.code(), Some(3));

    let o = reflexive(&["classify", "--girth", "3", "--methods", "slupecki", "--arity", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next().unwrap().contains("\"verdict\":\"counterexample\""));

    // at girth 3 the shape classifier and the definition disagree
    let o = reflexive(&["classify", "--girth", "3", "--methods", "syntactic,bruteforce"]);
    assert_eq!(o.status.code(), Some(2));
    let report = stdout(&o);
    let flagged: Vec<&str> = report.lines().filter(|l| l.contains("\"mismatch\":true")).collect();
    assert_eq!(flagged.len(), 5, "{flagged:?}");

    let o = reflexive(&["classify", "--girth", "5", "--methods", "syntactic,witness", "--witness-N", "12", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("canonical_word,girth,"));
    assert!(text.lines().skip(1).all(|l| l.contains("N=12;separates_all=")));
}
