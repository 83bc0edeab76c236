use projifs::fixtures;
use projifs::scene::{parse_scene_str, Output, SceneConfig, SceneError};
use projifs_core::fixtures as core;
use projifs_core::engine::Ifs;

fn same_system(a: &Ifs, b: &Ifs) -> f64 {
    assert_eq!(a.len(), b.len());
    a.maps().iter().zip(b.maps()).map(|(x, y)| x.matrix().residual_up_to_scale(y.matrix()).0).fold(0.0, f64::max)
}

#[test]
fn mirror_pair_scene() {
    let s = fixtures::scene("mirror_pair").unwrap();
    assert_eq!(s.dim, 1);
    assert_eq!(s.maps.len(), 2);
    assert_eq!(s.maps[1].name, "f2");
    assert_eq!(s.parameters.tol, 1e-6);
    assert_eq!(s.outputs, vec![Output::Cloud, Output::Png, Output::Pgm]);
}

#[test]
fn bundled_scenes_match_core_fixtures() {
    let pairs: Vec<(&str, Ifs)> = vec![
        ("single_map", core::single_map()),
        ("mirror_pair", core::mirror_pair()),
        ("rotating_line", core::rotating_line(1.0)),
        ("crossing_lines", core::crossing_lines()),
        ("family_t0", core::family(0.0)),
        ("family_t0.5", core::family(0.5)),
        ("family_t1", core::family(1.0)),
        ("family_t1.5", core::family(1.5)),
        ("family_t2", core::family(2.0)),
        ("ladder_M2", core::ladder(2, 10.0)),
        ("ladder_M3", core::ladder(3, 10.0)),
        ("ladder_M4", core::ladder(4, 10.0)),
        ("ladder_M5", core::ladder(5, 10.0)),
        ("conjugate_pair", core::conjugate_pair()),
        ("cantor_p1", core::cantor_p1()),
        ("gasket_p2", core::gasket_p2()),
    ];
    assert_eq!(pairs.len(), fixtures::names().count());
    for (name, f) in pairs {
        let s = fixtures::scene(name).unwrap();
        assert!(same_system(&s.ifs(), &f) < 1e-12, "{name}");
    }
}

#[test]
fn defaults_are_written_back_and_round_trip() {
    let s = parse_scene_str(r#"{"version": 1, "dim": 1, "maps": [{"matrix": [2, 0, 0, 1]}]}"#).unwrap();
    assert_eq!(s.maps[0].name, "f1");
    assert_eq!(s.parameters.seed, 42);
    let again = parse_scene_str(&s.to_json()).unwrap();
    assert_eq!(again, s);
    let pretty = parse_scene_str(&s.to_json_pretty()).unwrap();
    assert_eq!(pretty, s);
}

#[test]
fn singular_matrix_is_rejected() {
    let e = parse_scene_str(r#"{"version": 1, "dim": 1, "maps": [{"matrix": [1, 2, 2, 4]}]}"#).unwrap_err();
    match e {
        SceneError::Validation { field, .. } => assert_eq!(field, "maps[0].matrix"),
        other => panic!("{other}"),
    }
}

#[test]
fn unknown_keys_report_position() {
    let text = "{\n  \"version\": 1,\n  \"dim\": 1,\n  \"mpas\": []\n}";
    match parse_scene_str(text).unwrap_err() {
        SceneError::Parse { line, message, .. } => {
            assert_eq!(line, 4);
            assert!(message.contains("mpas"), "{message}");
        }
        other => panic!("{other}"),
    }
    let bad_param = r#"{"version": 1, "dim": 1, "maps": [{"matrix": [2, 0, 0, 1]}], "parameters": {"tolerance": 1}}"#;
    assert!(matches!(parse_scene_str(bad_param), Err(SceneError::Parse { .. })));
}

#[test]
fn invalid_values() {
    let cases = [
        (r#"{"version": 2, "dim": 1, "maps": [{"matrix": [2, 0, 0, 1]}]}"#, "version"),
        (r#"{"version": 1, "dim": 3, "maps": [{"matrix": [2, 0, 0, 1]}]}"#, "dim"),
        (r#"{"version": 1, "dim": 1, "maps": []}"#, "maps"),
        (r#"{"version": 1, "dim": 2, "maps": [{"matrix": [2, 0, 0, 1]}]}"#, "maps[0].matrix"),
        (r#"{"version": 1, "dim": 1, "maps": [{"name": "a", "matrix": [2, 0, 0, 1]}, {"name": "a", "matrix": [1, 0, 0, 2]}]}"#, "maps[1].name"),
        (r#"{"version": 1, "dim": 1, "maps": [{"matrix": [2, 0, 0, 1]}], "parameters": {"tol": 0}}"#, "parameters.tol"),
        (r#"{"version": 1, "dim": 1, "maps": [{"matrix": [2, 0, 0, 1]}], "parameters": {"grid": 9000}}"#, "parameters.grid"),
    ];
    for (text, want) in cases {
        match parse_scene_str(text) {
            Err(SceneError::Validation { field, .. }) => assert_eq!(field, want, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn from_ifs_round_trips() {
    let f = core::family(1.0);
    let s = SceneConfig::from_ifs("e4", &f);
    let back = parse_scene_str(&s.to_json()).unwrap();
    assert!(same_system(&back.ifs(), &f) < 1e-15);
}
