use std::process::{Command, Output};

fn tk(args: &[&str], jobs: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tk"));
    cmd.args(args);
    match jobs {
        Some(j) => cmd.env("TK_JOBS", j),
        None => cmd.env_remove("TK_JOBS"),
    };
    cmd.output().expect("tk runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_packs_msb_first() {
    let o = tk(&["gen", "delta_plus", "--n", "4"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=4 bits=bc\n");
    let o = tk(&["gen", "O_n", "--n", "5"], None);
    assert_eq!(stdout(&o), "n=5 bits=ffc\n");
}

#[test]
fn analyze_almost_transitive() {
    let dir = std::env::temp_dir().join(format!("tk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("almost4.tk");
    let o = tk(&["gen", "almost_transitive", "--n", "4", "--out", file.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let o = tk(&["analyze", "--in", file.to_str().unwrap()], None);
    let text = stdout(&o);
    assert!(text.contains("partition P: 0|1,2|3"), "{text}");
    assert!(text.contains("C3"), "{text}");
    assert!(text.contains("  0: (0, 0)"), "{text}");
    assert!(text.contains("{-3}-self dual: yes"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(tk(&["verify", "no-such-suite"], None).status.code(), Some(2));
    assert_eq!(tk(&["verify", "gallai", "--n", "40"], None).status.code(), Some(2));
    assert_eq!(tk(&["gen", "nonsense", "--n", "4"], None).status.code(), Some(2));
    assert_eq!(tk(&["verify"], None).status.code(), Some(2));
    let o = tk(&["verify", "gallai", "--n", "7", "--mode", "exhaustive"], None);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["instances_checked"], 456);
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
    for key in ["suite", "params", "instances_checked", "violations", "runtime_ms", "deterministic"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn list_names_every_suite() {
    let o = tk(&["verify", "--list"], None);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| !r["statement"].as_str().unwrap().is_empty()));
}

#[test]
fn reports_identical_across_worker_counts() {
    for args in [
        &["verify", "comb-lemma", "--trials", "200", "--seed", "9", "--omit-timing"][..],
        &["verify", "gallai", "--n", "12", "--trials", "300", "--omit-timing"][..],
        &["verify", "prop28", "--trials", "20", "--omit-timing"][..],
    ] {
        let a = tk(args, Some("1"));
        let b = tk(args, Some("4"));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
    }
}

#[test]
fn enumerate_then_verify_from_catalog() {
    let dir = std::env::temp_dir().join(format!("tk-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("cat6.tkc");
    let o = tk(&["enumerate", "--n", "6", "--out", file.to_str().unwrap(), "--jobs", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("TKC1 n=6 count=56\n"));
    let o = tk(
        &["verify", "gallai", "--n", "6", "--mode", "exhaustive", "--catalog", file.to_str().unwrap()],
        None,
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["instances_checked"], 56);
}
