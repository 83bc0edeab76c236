use std::path::Path;
use std::process::{Command, Output};

fn projifs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projifs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn certify_mirror_pair_succeeds() {
    let o = projifs(&["certify", "--example", "mirror_pair"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert_eq!(value(&r, "status"), Some("certified"));
    assert_eq!(value(&r, "bodies"), Some("2"));
    assert_eq!(value(&r, "verified"), Some("true"));
}

#[test]
fn non_contractive_parameter_exits_2() {
    let o = projifs(&["certify", "--example", "family_t0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(value(&stdout(&o), "status"), Some("no-certificate"));
}

#[test]
fn index_of_ladder() {
    let o = projifs(&["index", "--example", "ladder_M3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "index"), Some("3"));
}

#[test]
fn index_refuses_uncertified_systems() {
    let o = projifs(&["index", "--example", "family_t1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"version": 1, "dim": 1, "maps": [{"matrix": [1, 1, 1, 1]}]}"#).unwrap();
    let o = projifs(&["certify", "--scene", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("maps[0].matrix"));
    assert_eq!(projifs(&["certify", "--example", "nope"]).status.code(), Some(1));
    assert_eq!(projifs(&["certify", "--example", "mirror_pair", "--tol", "-1"]).status.code(), Some(1));
    assert_eq!(projifs(&["certify"]).status.code(), Some(1));
    assert_eq!(projifs(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(projifs(&["--help"]).status.code(), Some(0));
}

#[test]
fn report_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = projifs(&["attractor", "--example", "ladder_M2", "--seed", "7", "--tol", "1e-5"]);
    let r = stdout(&o);
    let config = value(&r, "config").unwrap();
    assert!(config.contains("\"seed\":7") && config.contains("\"tol\":0.00001"), "{config}");
    let p = dir.path().join("scene.json");
    std::fs::write(&p, config).unwrap();
    let again = projifs(&["attractor", "--scene", p.to_str().unwrap()]);
    assert_eq!(stdout(&again), r);
}

fn artifacts(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, ex) in [("basin", "gasket_p2"), ("render", "single_map"), ("repeller", "ladder_M3")] {
        let mut runs = Vec::new();
        for threads in ["1", "4"] {
            let out = dir.path().join(format!("{cmd}-{threads}"));
            let o = projifs(&[cmd, "--example", ex, "--threads", threads, "--grid", "200", "--size", "200", "--out", out.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{cmd} {ex}");
            runs.push((stdout(&o), artifacts(&out)));
        }
        assert_eq!(runs[0], runs[1], "{cmd} {ex}");
        assert!(runs[0].1.len() >= 2);
    }
}

#[test]
fn artifacts_follow_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("scene.json");
    std::fs::write(&p, r#"{"version": 1, "dim": 2, "maps": [{"matrix": [1,0,0, 0,0.2,0, 0,0,0.2]}, {"matrix": [1,0,0, 0.8,0.2,0, 0,0,0.2]}], "outputs": ["pgm"]}"#).unwrap();
    let out = dir.path().join("out");
    let o = projifs(&["basin", "--scene", p.to_str().unwrap(), "--grid", "64", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = artifacts(&out).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ["basin.pgm", "report.txt"]);
}

#[test]
fn adjoint_writes_loadable_scenes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("adj");
    let o = projifs(&["adjoint", "--example", "single_map", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["adjoint.json", "inverse.json"] {
        let s = projifs::scene::parse_scene(&out.join(name)).unwrap();
        assert_eq!(s.maps.len(), projifs::fixtures::scene("single_map").unwrap().maps.len());
        assert!(s.maps[0].name.starts_with("f1^"));
    }
}
