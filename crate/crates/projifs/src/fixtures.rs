//! Scene files for the worked examples, bundled into the binary.

use crate::scene::{parse_scene_str, SceneConfig};

pub const BUNDLED: &[(&str, &str)] = &[
    ("single_map", include_str!("../fixtures/single_map.json")),
    ("mirror_pair", include_str!("../fixtures/mirror_pair.json")),
    ("rotating_line", include_str!("../fixtures/rotating_line.json")),
    ("crossing_lines", include_str!("../fixtures/crossing_lines.json")),
    ("family_t0", include_str!("../fixtures/family_t0.json")),
    ("family_t0.5", include_str!("../fixtures/family_t0.5.json")),
    ("family_t1", include_str!("../fixtures/family_t1.json")),
    ("family_t1.5", include_str!("../fixtures/family_t1.5.json")),
    ("family_t2", include_str!("../fixtures/family_t2.json")),
    ("ladder_M2", include_str!("../fixtures/ladder_M2.json")),
    ("ladder_M3", include_str!("../fixtures/ladder_M3.json")),
    ("ladder_M4", include_str!("../fixtures/ladder_M4.json")),
    ("ladder_M5", include_str!("../fixtures/ladder_M5.json")),
    ("cantor_p1", include_str!("../fixtures/cantor_p1.json")),
    ("gasket_p2", include_str!("../fixtures/gasket_p2.json")),
    ("conjugate_pair", include_str!("../fixtures/conjugate_pair.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Parsed bundled scene by name.
pub fn scene(name: &str) -> Option<SceneConfig> {
    let (_, text) = BUNDLED.iter().find(|(n, _)| *n == name)?;
    Some(parse_scene_str(text).expect("bundled scenes are valid"))
}
