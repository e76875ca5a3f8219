use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).to_string_lossy().into_owned()
}

fn coxsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxsub")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = coxsub(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    coxsub(args).status.code().unwrap()
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn homology_of_projective_plane() {
    assert_eq!(stdout(&["homology", &data("rp2-6.json")]), "H0=Z H1=Z/2 H2=0\n");
    assert_eq!(
        stdout(&["homology", &data("rp2-6.json"), "--ring", "Z", "--ring", "Fp:2"]),
        "[Z] H0=Z H1=Z/2 H2=0\n[Fp:2] H0=1 H1=1 H2=1\n"
    );
}

#[test]
fn parallel_rings_match_serial() {
    let args = ["homology", &data("rp2-11.json"), "--ring", "Z", "--ring", "Q", "--ring", "Fp:2", "--ring", "Fp:3"];
    let serial = stdout(&args);
    let mut threaded = args.to_vec();
    threaded.extend(["--jobs", "4"]);
    assert_eq!(stdout(&threaded), serial);
}

#[test]
fn euler_characteristic() {
    let out = stdout(&["euler", &data("rp2-11.json"), "--index", "8"]);
    assert!(out.starts_with("chi = 1/2\n"), "{out}");
    assert!(out.contains("= 4"), "{out}");
}

#[test]
fn printed_presentation_abelianizes() {
    assert_eq!(stdout(&["abelianize", &data("gamma1.json")]), "Z + (Z/2)^7\n");
    assert_eq!(stdout(&["abelianize", &data("delta.json")]), "Z + (Z/2)^7\n");
    assert!(stdout(&["verify-hom", &data("gamma1.json"), &data("rp2-11.json"), &data("gamma1-words.json")]).contains("identity"));
}

#[test]
fn bowtie_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (sd, c, p) = (tmp(&dir, "sd.json"), tmp(&dir, "c.json"), tmp(&dir, "p.json"));
    stdout(&["subdivide", &data("bowtie.json"), "-o", &sd]);
    stdout(&["flag-check", &sd]);
    assert_eq!(code(&["--strict", "flag-check", &sd]), 0);
    stdout(&["color", &sd, "--by-dimension", "-o", &c]);
    stdout(&["rs-presentation", &sd, &c, "--simplify", "4", "-o", &p]);
    assert_eq!(stdout(&["abelianize", &p]), "Z^11\n");
    let dq = stdout(&["davis-quotient", &sd, &c]);
    assert!(dq.contains("H1=Z^11"), "{dq}");
}

#[test]
fn word_reduction() {
    assert_eq!(stdout(&["word-reduce", &data("rp2-11.json"), "abba"]), "1\n");
}

#[test]
fn exit_codes() {
    let skeleton = data("simplex6-2skeleton.json");
    assert_eq!(code(&["flag-check", &skeleton]), 0);
    assert_eq!(code(&["--strict", "flag-check", &skeleton]), 1);
    assert_eq!(code(&["homology", "/nonexistent/input.json"]), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = tmp(&dir, "bad.json");
    std::fs::write(&bad, "{\"bad\":").unwrap();
    assert_eq!(code(&["homology", &bad]), 2);
    let out = coxsub(&["pullback-presentation", &data("rp2-11.json"), &data("rp2-11-coloring.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("star"));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (tmp(&dir, "a.json"), tmp(&dir, "b.json"));
    stdout(&["--format", "json", "subdivide", &data("triangle.json"), "-o", &a]);
    stdout(&["--format", "json", "subdivide", &data("triangle.json"), "-o", &b]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let first = stdout(&["--format", "json", "homology", &a]);
    assert_eq!(first, stdout(&["--format", "json", "homology", &a]));
    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(parsed.is_object() || parsed.is_array());
    let euler: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "euler", &data("rp2-11.json")])).unwrap();
    assert_eq!(euler["chi"], "1/2");
}

#[test]
fn verify_single_check() {
    let out = stdout(&["verify", "--only", "1"]);
    assert!(out.starts_with("PASS [1]"), "{out}");
}
