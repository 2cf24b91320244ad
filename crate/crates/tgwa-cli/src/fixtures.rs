//! Bundled example data. Every file loads, validates, and passes the
//! consistency check; the test suites lean on them heavily.

pub const FIXTURES: &[(&str, &str)] = &[
    ("ex_mu.json", include_str!("../fixtures/ex_mu.json")),
    (
        "ex_nonsimple_gwa.json",
        include_str!("../fixtures/ex_nonsimple_gwa.json"),
    ),
    ("weyl.json", include_str!("../fixtures/weyl.json")),
    (
        "sergeev_1u1.json",
        include_str!("../fixtures/sergeev_1u1.json"),
    ),
    ("kh_a2.json", include_str!("../fixtures/kh_a2.json")),
    ("tq_a2_q2.json", include_str!("../fixtures/tq_a2_q2.json")),
    (
        "tq_a1a1_q2.json",
        include_str!("../fixtures/tq_a1a1_q2.json"),
    ),
];

pub fn get(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name || n.trim_end_matches(".json") == name)
        .map(|(_, c)| *c)
}

/// Writes every bundled fixture into `dir`, returning the file names.
pub fn write_all(dir: &std::path::Path) -> std::io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for (name, contents) in FIXTURES {
        std::fs::write(dir.join(name), contents)?;
        out.push(name.to_string());
    }
    Ok(out)
}
