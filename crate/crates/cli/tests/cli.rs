use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn tilepump(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilepump")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn cell_rects(svg: &str) -> usize {
    svg.lines().filter(|l| l.starts_with("<rect x=")).count()
}

#[test]
fn classify_reports_the_flags() {
    let out = tilepump(&["classify", "--gen", path(&corpus("sierpinski.json"))]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let class = &report["class"];
    assert_eq!(class["is_pier_fractal"], true);
    assert_eq!(class["is_tree_fractal"], true);
    assert_eq!(class["is_pinch_point_fractal"], true);

    let out = tilepump(&["classify", "--gen", path(&corpus("multiple_bridges.json"))]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["class"]["satisfies_cor_multiple_bridges"], true);
    assert_eq!((report["class"]["nhb"].as_u64(), report["class"]["nvb"].as_u64()), (Some(3), Some(1)));
}

#[test]
fn malformed_input_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"g\": 2, \"points\": [").unwrap();
    let out = tilepump(&["classify", "--gen", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed generator JSON"));
}

#[test]
fn stage_draws_one_rect_per_cell() {
    let gen = corpus("sierpinski.json");
    let count = |s: &str, c: &str| {
        let out = tilepump(&["stage", "--gen", path(&gen), "--stage", s, "--scale", c]);
        assert!(out.status.success());
        let svg = stdout(&out);
        assert!(svg.starts_with("<svg ") && svg.trim_end().ends_with("</svg>"));
        cell_rects(&svg)
    };
    assert_eq!(count("3", "1"), 27);
    assert_eq!(count("1", "1"), 3);
    assert_eq!(count("2", "2"), 36);
}

#[test]
fn simulate_dumps() {
    let out = tilepump(&["simulate", "--tas", path(&corpus("line.json")), "--cap", "10"]);
    assert_eq!(stdout(&out).lines().count(), 10);
    let out = tilepump(&["simulate", "--tas", path(&corpus("terminal.json"))]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let two = corpus("two_tile_line.json");
    let random = ["simulate", "--tas", path(&two), "--cap", "30", "--policy", "random", "--seed", "7"];
    assert_eq!(tilepump(&random).stdout, tilepump(&random).stdout);
}

#[test]
fn movie_dumps() {
    let line = corpus("line.json");
    let base = ["movie", "--tas", path(&line), "--region", "0,0,9,0"];
    let away = tilepump(&[&base[..], &["--rect", "3,4,5,6"]].concat());
    assert!(away.status.success());
    assert!(stdout(&away).is_empty());

    let full = stdout(&tilepump(&[&base[..], &["--rect", "0,0,1,1"]].concat()));
    let bonds = stdout(&tilepump(&[&base[..], &["--rect", "0,0,1,1", "--bond-forming"]].concat()));
    assert_eq!(bonds.lines().count(), 2);
    // the bond-forming dump is a subsequence of the full one
    let mut rest = full.lines();
    assert!(bonds.lines().all(|b| rest.any(|f| f == b)));
    assert!(full.lines().count() > 2);

    let square = tilepump(&[&base[..], &["--window", "1,2,2,0,0,0,0"]].concat());
    assert!(square.status.success());
    let bad = tilepump(&[&base[..], &["--window", "1,2,2"]].concat());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn refute_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let svg = dir.path().join("report.svg");
    let gen = corpus("sierpinski.json");
    let out = tilepump(&[
        "refute",
        "--tas",
        path(&corpus("sierpinski_shared_c1.json")),
        "--gen",
        path(&gen),
        "--intended",
        path(&corpus("sierpinski_shared_c1_intended.json")),
        "--out",
        path(&report),
        "--svg",
        path(&svg),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["outcome"], "refuted");
    assert!(!json["missing"].as_array().unwrap().is_empty() || !json["extra"].as_array().unwrap().is_empty());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("class=\"window\""));

    let unique = tilepump(&["refute", "--tas", path(&corpus("sierpinski_unique_c1.json")), "--gen", path(&gen)]);
    assert_eq!(unique.status.code(), Some(3));
    let json: Value = serde_json::from_str(&stdout(&unique)).unwrap();
    assert_eq!(json["outcome"], "no-match");

    let none = tilepump(&["refute", "--tas", path(&corpus("line.json")), "--gen", path(&corpus("disconnected.json"))]);
    assert_eq!(none.status.code(), Some(4));
}

#[test]
fn refute_is_deterministic() {
    let (tas, gen) = (corpus("sierpinski_unique_c1.json"), corpus("sierpinski.json"));
    let args = [
        "refute",
        "--tas",
        path(&tas),
        "--gen",
        path(&gen),
        "--policy",
        "random",
        "--seed",
        "3",
    ];
    assert_eq!(tilepump(&args).stdout, tilepump(&args).stdout);
}

#[test]
fn crafted_corpus_files_are_current() {
    let dir = tempfile::tempdir().unwrap();
    for c in ["1", "2"] {
        let tas = dir.path().join("tas.json");
        let intended = dir.path().join("intended.json");
        let out = tilepump(&[
            "craft",
            "--gen",
            path(&corpus("sierpinski.json")),
            "--scale",
            c,
            "--stage",
            "3",
            "--glues",
            "shared",
            "--out",
            path(&tas),
            "--intended",
            path(&intended),
        ]);
        assert!(out.status.success());
        let read = |p: &Path| std::fs::read_to_string(p).unwrap();
        assert_eq!(read(&tas), read(&corpus(&format!("sierpinski_shared_c{c}.json"))));
        assert_eq!(read(&intended), read(&corpus(&format!("sierpinski_shared_c{c}_intended.json"))));
    }
}
