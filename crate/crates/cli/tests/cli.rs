use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use relpres_core::io::{self, GroupRef, PresentationFile};
use relpres_core::kernel::{FpWord, Group, TLetter, TWord};
use relpres_core::{fixtures, PhiPresentation};
use serde_json::Value;
use tempfile::TempDir;

fn relpres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relpres")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn word(letters: &[(usize, i8)]) -> TWord {
    let mut w = TWord::new();
    for &(g, e) in letters {
        w.push(TLetter::coeff(g));
        w.push(TLetter::t(e));
    }
    w
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write<T: serde::Serialize>(&self, name: &str, value: &T) -> String {
        let p = self.path(name);
        io::write_json(&p, value).unwrap();
        p.display().to_string()
    }

    fn raw(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn presentation(&self, name: &str, p: &PhiPresentation) -> String {
        self.write(name, &PresentationFile::from_presentation(p))
    }
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn rewrite_z3_reports_s_and_m() {
    let f = Files::new();
    let g = f.write("g.json", &Group::cyclic(3).to_file());
    let w = f.write("w.json", &word(&[(1, 1), (1, -1), (1, 1)]));
    let out_path = f.path("p.json");
    let out = relpres(&["rewrite", "--group", &g, "--word", &w, "--power", "2", "--out", &s(&out_path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!((report["s"].as_i64(), report["m"].as_i64()), (Some(0), Some(0)));
    assert_eq!(report["warnings"].as_array().unwrap().len(), 0);
    let p = io::load_presentation(&out_path).unwrap();
    assert_eq!((p.s, p.m(), p.k), (0, 0, 2));
}

#[test]
fn rewrite_free_product_case() {
    let f = Files::new();
    let g = f.write("g.json", &Group::cyclic(3).to_file());
    let w = f.write("w.json", &word(&[(1, 1)]));
    let out = relpres(&["rewrite", "--group", &g, "--word", &w, "--power", "2"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stdout).contains("G ∗ ℤk"));
}

#[test]
fn rewrite_involution_warning() {
    let f = Files::new();
    let g = f.write("g.json", &Group::cyclic(2).to_file());
    let w = f.write("w.json", &word(&[(1, 1), (1, -1), (1, 1)]));
    let out = relpres(&["rewrite", "--group", &g, "--word", &w, "--power", "2"]);
    assert_eq!(code(&out), 0);
    let warnings = stdout_json(&out)["warnings"].to_string();
    assert!(warnings.contains("InvolutionHypothesisGap"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvolutionHypothesisGap"));
}

#[test]
fn rewrite_power_one_is_precondition() {
    let f = Files::new();
    let g = f.write("g.json", &Group::cyclic(3).to_file());
    let w = f.write("w.json", &word(&[(1, 1), (1, -1), (1, 1)]));
    let out = relpres(&["rewrite", "--group", &g, "--word", &w, "--power", "1"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("k ≥ 2 required"));
}

#[test]
fn rewrite_not_unimodular() {
    let f = Files::new();
    let g = f.write("g.json", &Group::cyclic(3).to_file());
    let w = f.write("w.json", &word(&[(1, 1), (1, 1)]));
    let out = relpres(&["rewrite", "--group", &g, "--word", &w, "--power", "2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn parse_errors_exit_one() {
    let f = Files::new();
    let g = f.raw("g.json", "{\"order\": 2, \"table\": [[0,1]]");
    let w = f.write("w.json", &word(&[(1, 1)]));
    assert_eq!(code(&relpres(&["rewrite", "--group", &g, "--word", &w, "--power", "2"])), 1);
    let missing = s(&f.path("missing.json"));
    assert_eq!(code(&relpres(&["rewrite", "--group", &missing, "--word", &w, "--power", "2"])), 1);
    let bad_table = f.raw("t.json", "{\"order\": 2, \"table\": [[0,1],[1,1]]}");
    assert_eq!(code(&relpres(&["rewrite", "--group", &bad_table, "--word", &w, "--power", "2"])), 1);
    assert_eq!(code(&relpres(&["fuzz", "--kind", "nope"])), 1);
    assert_eq!(code(&relpres(&["frobnicate"])), 1);
}

#[test]
fn audit_pillow_passes() {
    let f = Files::new();
    let p = fixtures::cyclic_presentation(3, 2);
    let pp = f.presentation("p.json", &p);
    let d = f.write("d.json", &fixtures::pillow(&p).to_file(None));
    let out = relpres(&["audit", "--diagram", &d, "--presentation", &pp]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let r = stdout_json(&out);
    assert_eq!(r["section8"]["lhs"], 31);
    assert_eq!(r["section8"]["rhs"], 6);
    assert_eq!(r["motion"]["carCrash"]["holds"], true);
}

#[test]
fn audit_k3_uses_isoperimetric() {
    let f = Files::new();
    let p = fixtures::cyclic_presentation(3, 3);
    let pp = f.presentation("p.json", &p);
    let d = f.write("d.json", &fixtures::pillow(&p).to_file(None));
    let out = relpres(&["audit", "--diagram", &d, "--presentation", &pp]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["isoperimetric"]["lhs"], 19);
}

#[test]
fn audit_corrupted_label_exits_two() {
    let f = Files::new();
    let p = fixtures::cyclic_presentation(3, 2);
    let pp = f.presentation("p.json", &p);
    let mut file = fixtures::pillow(&p).to_file(None);
    file.corner_labels[1] = FpWord::single(0, 2);
    let d = f.write("d.json", &file);
    let out = relpres(&["audit", "--diagram", &d, "--presentation", &pp]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["passed"], false);
}

#[test]
fn audit_k1_presentation_is_precondition() {
    let f = Files::new();
    let p = fixtures::cyclic_presentation(3, 2);
    let mut pf = PresentationFile::from_presentation(&p);
    pf.k = 1;
    let pp = f.write("p.json", &pf);
    let d = f.write("d.json", &fixtures::pillow(&p).to_file(None));
    let out = relpres(&["audit", "--diagram", &d, "--presentation", &pp]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("k ≥ 2 required"));
}

#[test]
fn audit_group_path_and_out_file() {
    let f = Files::new();
    let p = fixtures::cyclic_presentation(3, 2);
    f.write("z3.json", &p.group.to_file());
    let mut pf = PresentationFile::from_presentation(&p);
    pf.group = GroupRef::Path("z3.json".into());
    let pp = f.write("p.json", &pf);
    let d = f.write("d.json", &fixtures::pillow(&p).to_file(None));
    let report = f.path("r.json");
    let out = relpres(&["audit", "--diagram", &d, "--presentation", &pp, "--out", &s(&report)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = io::read_json(&report).unwrap();
    assert_eq!(r["passed"], true);
}

#[test]
fn fuzz_kinds_pass_and_are_deterministic() {
    for (kind, count) in [("gauss-bonnet", "200"), ("britton", "200"), ("rewrite", "20")] {
        let a = relpres(&["fuzz", "--kind", kind, "--count", count, "--seed", "7"]);
        let b = relpres(&["fuzz", "--kind", kind, "--count", count, "--seed", "7"]);
        assert_eq!(code(&a), 0, "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
        assert_eq!(stdout_json(&a)["failures"], 0);
    }
}
