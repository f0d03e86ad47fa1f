use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cozero(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cozero"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn cozero")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn frame_files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".frame.json"))
        .collect();
    names.sort();
    names
}

#[test]
fn gen_chain_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(&["gen", "--kind", "chain", "--size", "3", "--out", "a"], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("wrote 1 frame files"));
    let out = cozero(&["gen", "--kind", "chain", "--size", "3", "--out", "b"], tmp.path());
    assert!(out.status.success());

    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert_eq!(frame_files(&a), vec!["c3.frame.json"]);
    for file in ["c3.frame.json", "manifest.json"] {
        assert_eq!(
            fs::read(a.join(file)).unwrap(),
            fs::read(b.join(file)).unwrap(),
            "{file} differs between identical runs"
        );
    }
}

#[test]
fn gen_poset_counts_by_size_flag() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(
        &["gen", "--kind", "all-posets", "--size", "4", "--out", "exact"],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(frame_files(&tmp.path().join("exact")).len(), 16);

    let out = cozero(
        &["gen", "--kind", "all-posets", "--max-size", "4", "--out", "upto"],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(frame_files(&tmp.path().join("upto")).len(), 24);
}

#[test]
fn gen_rejects_oversized_and_ambiguous_requests() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(
        &["gen", "--kind", "all-posets", "--max-size", "9"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("out of range"));

    let out = cozero(&["gen", "--kind", "chain"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    let out = cozero(
        &["gen", "--kind", "chain", "--size", "3", "--max-size", "4"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn props_describes_a_chain() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(&["gen", "--kind", "chain", "--size", "3", "--out", "."], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let out = cozero(&["props", "c3.frame.json"], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("elements: 3"));
    assert!(text.contains("Coz_c: {c00, c02}"));
    assert!(text.contains("zero-dimensional: false"));
    assert!(text.contains("sigma-frame laws: pass"));
}

#[test]
fn props_rejects_a_nondistributive_lattice() {
    let tmp = tempfile::tempdir().unwrap();
    let doc = serde_json::json!({
        "name": "diamond",
        "elements": ["0", "a", "b", "c", "1"],
        "covers": [["0", "a"], ["0", "b"], ["0", "c"], ["a", "1"], ["b", "1"], ["c", "1"]],
    });
    fs::write(tmp.path().join("m3.frame.json"), doc.to_string()).unwrap();
    let out = cozero(&["props", "m3.frame.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not distributive"), "{}", stderr(&out));
}

#[test]
fn cuts_tabulates_an_indicator() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(&["gen", "--kind", "boolean", "--size", "2", "--out", "."], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    fs::write(
        tmp.path().join("ind.fn.json"),
        r#"{"frame":"b2","parts":[["a","1"],["b","0"]]}"#,
    )
    .unwrap();
    let out = cozero(&["cuts", "b2.frame.json", "ind.fn.json"], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("cut table over b2"));
    assert!(text.contains("P(a)\t1\tupper attained\tlower attained"));
    assert!(text.contains("P(b)\t0\tupper attained\tlower attained"));
    assert!(text.contains("agreement: true"));
}

#[test]
fn cuts_rejects_a_function_for_another_frame() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(&["gen", "--kind", "chain", "--size", "3", "--out", "."], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    fs::write(
        tmp.path().join("other.fn.json"),
        r#"{"frame":"c4","parts":[["c02","5"]]}"#,
    )
    .unwrap();
    let out = cozero(&["cuts", "c3.frame.json", "other.fn.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("names frame `c4`"), "{}", stderr(&out));
}

#[test]
fn verify_reports_are_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(
        &["gen", "--kind", "chain", "--max-size", "4", "--out", "frames"],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let args = |report: &'static str| {
        vec![
            "verify", "frames", "--suite", "sigma-frame", "--suite", "remark3", "--report", report,
        ]
    };
    let out = cozero(&args("r1.json"), tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("all properties hold"));
    let out = cozero(&args("r2.json"), tmp.path());
    assert!(out.status.success());
    let r1 = fs::read(tmp.path().join("r1.json")).unwrap();
    let r2 = fs::read(tmp.path().join("r2.json")).unwrap();
    assert!(!r1.is_empty());
    assert_eq!(r1, r2, "report differs between identical runs");

    let reports: serde_json::Value = serde_json::from_slice(&r1).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 15);
    assert!(reports.iter().all(|r| r["verdict"] == true));
}

#[test]
fn verify_rejects_unknown_suites_before_reading_frames() {
    let tmp = tempfile::tempdir().unwrap();
    let out = cozero(
        &["verify", "no-such-dir", "--suite", "bogus", "--report", "r.json"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown suite `bogus`"), "{}", stderr(&out));
    assert!(!tmp.path().join("r.json").exists());
}

#[test]
fn verify_rejects_a_corrupt_frame_file() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("bad.frame.json"), "{ not json").unwrap();
    let out = cozero(&["verify", "bad.frame.json", "--suite", "model-laws"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).to_lowercase().contains("pars"), "{}", stderr(&out));
}
