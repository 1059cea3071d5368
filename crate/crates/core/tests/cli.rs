use std::path::PathBuf;
use std::process::{Command, Output};

fn sys(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "systems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn hinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ppm_table_for_a2() {
    let o = hinv(&["ppm", "--system", &sys("a2-id.json"), "--maxlen", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("y,w,l_y,l_w,Ppm,P,Pplus,Pminus"));
    let rows: Vec<&str> = lines.collect();
    let tops: std::collections::BTreeSet<&str> = rows.iter().map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(tops.len(), 4);
    assert!(rows.iter().all(|r| r.split(',').nth(4) == Some("1")));
}

#[test]
fn verify_all_on_b2() {
    let o = hinv(&["verify", "all", "--system", &sys("b2.json"), "--maxlen", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(": ok")).count(), 8);
}

#[test]
fn scan_contains_the_a2_affine_rows() {
    let o = hinv(&["scan-8-4", "--system", &sys("a2-affine-swap.json"), "--maxlen", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("dprime_word,d_word,ppm,kl_neg_u,equal,N_u1\n"));
    assert!(text.contains(",1-u+u^2,1-u+u^2,true,3"));
    assert!(text.contains(",1-u,1-u,true,2"));
    assert!(!text.contains("false"));
}

#[test]
fn check_86_exit_codes() {
    assert_eq!(hinv(&["check-8-6", "--system", &sys("a2-affine-swap.json")]).status.code(), Some(0));
    assert_eq!(hinv(&["check-8-6", "--system", &sys("a1-affine.json")]).status.code(), Some(0));
    assert_eq!(hinv(&["check-8-6", "--system", &sys("c2-affine.json")]).status.code(), Some(2));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(hinv(&["verify", "nope", "--system", &sys("b2.json")]).status.code(), Some(2));
    assert_eq!(hinv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hinv(&["bar", "s.t", "--system", &sys("a2-id.json")]).status.code(), Some(2));
    assert_eq!(hinv(&["enumerate", "--system", &sys("a1-affine.json"), "--maxlen", "50", "--cap", "10"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"matrix": [[1, 3], [2, 1]]}"#).unwrap();
    assert_eq!(hinv(&["enumerate", "--system", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = hinv(&["ppm", "--system", &sys("b3.json"), "--maxlen", "9", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn star_override_and_basis() {
    let o = hinv(&["enumerate", "--twisted", "--system", &sys("a2-id.json"), "--star", "1,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let words: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    assert_eq!(words, ["", "s.t", "t.s", "s.t.s"]);
    let o = hinv(&["basis", "s", "--system", &sys("a1.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["terms"][0]["coeff"], serde_json::json!({"offset": -1, "coeffs": [1]}));
}

#[test]
fn cosets_report() {
    let o = hinv(&["cosets", "1,2", "--system", &sys("a3-id.json"), "--maxlen", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let first = &v[0];
    assert_eq!(first["d"], "1.2.1");
    assert_eq!(first["case_tag"], "iv");
}
