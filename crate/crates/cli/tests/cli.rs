use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mipkit_core::catalog::quaternion;
use mipkit_core::invariants::fingerprint;
use mipkit_core::io::parse_group;
use mipkit_core::{isomorphic, load_group, Fingerprint, Group, Verdict};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn group_path(stem: &str) -> String {
    data().join("groups").join(format!("{stem}.perm")).display().to_string()
}

fn mipkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mipkit"))
        .args(args)
        .env_remove("MIPKIT_DATA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mipkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn emitted(args: &[&str]) -> Group {
    let o = mipkit(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    parse_group(&stdout(&o)).unwrap()
}

#[test]
fn family_q_1_2_is_quaternion() {
    let g = emitted(&["family", "Q", "1", "2", "--emit", "cayley"]);
    assert_eq!(g.order(), 8);
    assert!(isomorphic(&g, &quaternion(8).unwrap()).unwrap().is_some());
}

#[test]
fn emit_formats_agree() {
    for kind in ["D", "Q", "S"] {
        let a = emitted(&["family", kind, "2", "3", "--emit", "cayley"]);
        let b = emitted(&["family", kind, "2", "3", "--emit", "perm"]);
        assert_eq!(a.order(), 32);
        assert!(isomorphic(&a, &b).unwrap().is_some(), "{kind}");
    }
}

#[test]
fn tables_rows() {
    let o = mipkit(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = |label: &str| -> Vec<String> {
        let line = text.lines().find(|l| l.split_whitespace().next() == Some(label)).unwrap();
        line.split_whitespace().skip(2).map(String::from).collect()
    };
    let t1 = [("U_1", "4 0 5"), ("U_2", "4 1 6"), ("U_3", "5 2 6"), ("U_4", "5 1 4"), ("U_5", "4 1 4"), ("U_6", "5 1 5")];
    for (label, want) in t1 {
        assert_eq!(row(label).join(" "), want, "{label}");
    }
    let t2 = [("U_7", "5 2 4"), ("U_8", "5 1 4"), ("U_9", "6 2 4"), ("U_10", "6 1 4"), ("U_11", "6 0 4"), ("U_12", "6 0 2")];
    for (label, want) in t2 {
        assert_eq!(row(label).join(" "), want, "{label}");
    }
}

#[test]
fn compare_by_a3() {
    let o = mipkit(&["compare", &group_path("sg64_97"), &group_path("sg64_108")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DISTINGUISHED(a_3): 2 vs 1"), "{}", stdout(&o));
}

#[test]
fn compare_self_is_indistinguishable() {
    let p = group_path("sg32_13");
    let o = mipkit(&["compare", &p, &p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("INDISTINGUISHABLE"));
}

#[test]
fn compare_json_round_trip() {
    let o = mipkit(&["compare", &group_path("sg64_97"), &group_path("sg64_108"), "--json"]);
    let v: Verdict = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.field(), Some("a_3"));
    let raw: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(raw["verdict"], "DISTINGUISHED");
}

#[test]
fn annotations_are_echoed_and_used() {
    let ann = data().join("annotations").join("e_values.txt").display().to_string();
    let p = group_path("sg32_13");
    let o = mipkit(&["compare", &p, &p, "--annotations", &ann, "--json"]);
    assert_eq!(o.status.code(), Some(0));

    let fake = scratch_file("dup.txt", "SG(32,13) 4\nSG(32,13) 9\nSG(99,1) 1\n");
    let o = mipkit(&["compare", &p, &group_path("sg32_14"), "--annotations", fake.to_str().unwrap()]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("duplicate") && err.contains("unknown"), "{err}");
}

#[test]
fn reduce_strips_factors() {
    let o = mipkit(&["compare", &group_path("sg32_9"), &group_path("sg32_9"), "--reduce"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C_p^0"), "{}", stdout(&o));
}

#[test]
fn invariants_json_round_trip_and_determinism() {
    let p = group_path("sg32_10");
    let first = mipkit(&["invariants", &p, "--json"]);
    let second = mipkit(&["invariants", &p, "--json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let f: Fingerprint = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(f, fingerprint(&load_group(&p).unwrap(), None).unwrap());
    assert_eq!(serde_json::to_string_pretty(&f).unwrap() + "\n", stdout(&first));
}

#[test]
fn invariants_n_max() {
    let o = mipkit(&["invariants", &group_path("sg32_10"), "--n-max", "1", "--json"]);
    let f: Fingerprint = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(f.k_seq.len(), 2);
    assert_eq!(f.abelian_series.len(), 2);
}

#[test]
fn verify_lemmas_small_group() {
    let out = mipkit(&["family", "D", "1", "2"]);
    let path = scratch_file("d8.cayley", &stdout(&out));
    let args = ["verify-lemmas", path.to_str().unwrap(), "--seed", "7", "--trials", "20"];
    let a = mipkit(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(stdout(&a).contains(" 0 failures"));
    assert_eq!(a.stdout, mipkit(&args).stdout);
}

#[test]
fn decompose_and_jennings() {
    let o = mipkit(&["decompose", &group_path("sg32_9")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank(T): 0"));
    assert!(stdout(&o).contains("conditions: ok"));

    let o = mipkit(&["jennings", &group_path("sg64_97")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ranks: [3, 2, 0, 1]"), "{}", stdout(&o));
    assert!(stdout(&o).contains("agree: true"));
}

#[test]
fn qs_distinguish_report() {
    let o = mipkit(&["qs-distinguish", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    assert_eq!(mipkit(&["qs-distinguish", "1", "3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [&["invariants", "--bogus", "x"][..], &["family", "X", "1", "2"], &["compare", "only-one"], &[]] {
        let o = mipkit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
    let o = mipkit(&["invariants", "/nonexistent/group.perm"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn data_env_override() {
    let run = |dir: &Path, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_mipkit")).args(args).env("MIPKIT_DATA", dir).output().unwrap()
    };
    let o = run(&data(), &["jennings", "sg32_11.perm"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&data(), &["tables"]).stdout, mipkit(&["tables"]).stdout);
    assert_eq!(run(Path::new("/nonexistent"), &["tables"]).status.code(), Some(2));
}
