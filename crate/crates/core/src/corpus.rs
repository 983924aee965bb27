//! Bundled logics reproducing the standard configurations.

pub const STAR4: &str = include_str!("../../../corpus/star4.gls");
pub const GAMMA1: &str = include_str!("../../../corpus/gamma1.gls");
pub const GAMMA3PAIR: &str = include_str!("../../../corpus/gamma3pair.gls");
pub const CABELLO18: &str = include_str!("../../../corpus/cabello18.gls");
pub const L12: &str = include_str!("../../../corpus/l12.gls");
pub const CHAIN3: &str = include_str!("../../../corpus/chain3.gls");
pub const TIGHT3: &str = include_str!("../../../corpus/tight3.gls");
pub const TIGHT3_4D: &str = include_str!("../../../corpus/tight3_4d.gls");

/// `(file name, contents)` for every bundled logic.
pub const ALL: [(&str, &str); 8] = [
    ("star4.gls", STAR4),
    ("gamma1.gls", GAMMA1),
    ("gamma3pair.gls", GAMMA3PAIR),
    ("cabello18.gls", CABELLO18),
    ("l12.gls", L12),
    ("chain3.gls", CHAIN3),
    ("tight3.gls", TIGHT3),
    ("tight3_4d.gls", TIGHT3_4D),
];

/// Looks a bundled file up by name, with or without the `.gls` suffix.
pub fn get(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".gls").unwrap_or(name);
    ALL.iter().find(|(file, _)| file.strip_suffix(".gls") == Some(name)).map(|(_, text)| *text)
}
