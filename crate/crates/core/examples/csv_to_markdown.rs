//! Describe a CSV membership matrix, optionally with a JSON config.
//!
//! ```text
//! cargo run --example csv_to_markdown -- data.csv [config.json]
//! ```
//!
//! Without arguments the bundled tennis fixture is used.

use std::path::PathBuf;

use upset_alttext::api::{describe_prepared, prepare, DataPolicy};
use upset_alttext::DescriptionOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut args = std::env::args_os().skip(1).map(PathBuf::from);
    let (data, config) = match args.next() {
        Some(data) => (data, args.next()),
        None => (
            fixtures.join("tennis.csv"),
            Some(fixtures.join("tennis.config.json")),
        ),
    };

    let config_bytes = config.map(std::fs::read).transpose()?;
    let prepared = prepare(config_bytes.as_deref(), DataPolicy::File(&data))?;
    for warning in &prepared.warnings {
        eprintln!("warning: {warning}");
    }
    let doc = describe_prepared(&prepared, &DescriptionOptions::default())?;
    print!("{}", doc.long_markdown);
    Ok(())
}
