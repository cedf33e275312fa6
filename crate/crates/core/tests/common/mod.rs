#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use upset_alttext::{PlotConfig, SetDataset};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn set_name(i: usize) -> String {
    format!("S{i}")
}

/// Random dataset with `n_sets` sets and `n_elements` elements. Each set gets
/// its own membership probability so sizes vary.
pub fn random_dataset(seed: u64, n_elements: usize, n_sets: usize) -> SetDataset {
    let mut rng = StdRng::seed_from_u64(seed);
    let probs: Vec<f64> = (0..n_sets).map(|_| rng.gen_range(0.05..0.7)).collect();
    let names: Vec<String> = (0..n_sets).map(set_name).collect();
    let ids: Vec<String> = (0..n_elements).map(|i| format!("e{i}")).collect();
    let membership: Vec<(String, Vec<String>)> = ids
        .iter()
        .map(|id| {
            let sets = (0..n_sets)
                .filter(|&s| rng.gen_bool(probs[s]))
                .map(set_name)
                .collect();
            (id.clone(), sets)
        })
        .collect();
    SetDataset::new(ids.clone(), names, membership).unwrap()
}

/// Random non-empty selection of visible sets, in random order.
pub fn random_visible(seed: u64, ds: &SetDataset) -> PlotConfig {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut names: Vec<String> = ds.set_names().to_vec();
    for i in (1..names.len()).rev() {
        names.swap(i, rng.gen_range(0..=i));
    }
    let keep = rng.gen_range(1..=names.len());
    names.truncate(keep);
    PlotConfig::new(names).validate(ds).unwrap()
}

/// Exclusive intersections by enumerating every subset of the visible sets.
/// Keys list set names in visible order.
pub fn brute_force(ds: &SetDataset, visible: &[String]) -> BTreeMap<Vec<String>, u64> {
    let members: Vec<Vec<&str>> = ds.iter().map(|(_, sets)| sets).collect();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << visible.len()) {
        let combo: Vec<&String> = (0..visible.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| &visible[b])
            .collect();
        let count = members
            .iter()
            .filter(|sets| {
                visible
                    .iter()
                    .all(|v| sets.contains(&v.as_str()) == combo.contains(&v))
            })
            .count() as u64;
        if count > 0 {
            out.insert(combo.into_iter().cloned().collect(), count);
        }
    }
    out
}

/// Bundled fixtures: (name, dataset file if separate, config file).
pub const FIXTURES: [(&str, Option<&str>, &str); 3] = [
    ("tennis", Some("tennis.csv"), "tennis.config.json"),
    ("genres", Some("genres.csv"), "genres.config.json"),
    ("organizations", None, "organizations.config.json"),
];

pub fn describe_fixture(
    name: &str,
    options: &upset_alttext::DescriptionOptions,
) -> upset_alttext::DescriptionDocument {
    use upset_alttext::api::{self, DataPolicy};
    let (_, data, config) = FIXTURES
        .iter()
        .find(|f| f.0 == name)
        .expect("unknown fixture");
    let config_path = fixture(config);
    let bytes = std::fs::read(&config_path).unwrap();
    let data_path = data.map(fixture);
    let base_dir = fixture("");
    let policy = match &data_path {
        Some(p) => DataPolicy::File(p),
        None => DataPolicy::FromConfig {
            base_dir: &base_dir,
        },
    };
    let prepared = api::prepare(Some(&bytes), policy).unwrap();
    api::describe_prepared(&prepared, options).unwrap()
}

/// Compares `actual` with the golden file, rewriting it when
/// `UPDATE_GOLDEN=1`. Returns a diff summary on mismatch.
pub fn check_golden(file: &str, actual: &str) -> Result<(), String> {
    let path = fixture("golden").join(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1") {
        std::fs::write(&path, actual).unwrap();
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| {
        format!(
            "{}: {e} (run with UPDATE_GOLDEN=1 to create)",
            path.display()
        )
    })?;
    if expected == actual {
        return Ok(());
    }
    let first_diff = expected
        .lines()
        .zip(actual.lines())
        .position(|(a, b)| a != b)
        .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()));
    Err(format!(
        "{file} differs at line {}:\n  expected: {:?}\n  actual:   {:?}",
        first_diff + 1,
        expected.lines().nth(first_diff).unwrap_or(""),
        actual.lines().nth(first_diff).unwrap_or(""),
    ))
}
