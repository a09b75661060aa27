#![allow(dead_code)]

use std::path::PathBuf;

use supersquares::{FieldSpec, GroupSpec, Origin, Square};

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Panels of a figure file, separated by blank lines, top row first.
pub fn panels(name: &str) -> Vec<String> {
    golden_text(name).split("\n\n").map(|p| format!("{}\n", p.trim_end())).collect()
}

pub fn parse_grid(text: &str) -> Vec<Vec<u16>> {
    text.lines().map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect()).collect()
}

pub fn gf4() -> (FieldSpec, GroupSpec) {
    let f = FieldSpec::new(2, 2).unwrap();
    let g = GroupSpec::field(&f);
    (f, g)
}

pub fn figure_squares(name: &str) -> Vec<Square> {
    let (_, g) = gf4();
    panels(&format!("{name}.txt"))
        .iter()
        .map(|p| Square::from_grid(&g, &parse_grid(p), Origin::Bottom).unwrap())
        .collect()
}

pub const GOLDEN_JSON: [&str; 6] = ["fig1.json", "fig2.json", "fig4.json", "fig5.json", "fig6.json", "fig6e.json"];
