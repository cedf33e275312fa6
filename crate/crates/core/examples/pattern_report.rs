//! Inspect the classifications behind the text, or dump them as JSON.
//!
//! `cargo run --example pattern_report -- --json`

use upset_alttext::{analyze, PlotConfig, SetDataset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dataset = SetDataset::from_sets([
        ("Fever", ids(0..120)),
        ("Cough", ids(60..150)),
        ("Fatigue", ids(100..400)),
        ("Rash", ids(390..405)),
    ])?;
    let config = PlotConfig::all_sets(&dataset).validate(&dataset)?;
    let report = analyze(&dataset, &config)?;

    if std::env::args().any(|a| a == "--json") {
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(());
    }

    println!("divergence: {:?}", report.divergence.label);
    println!(
        "distribution: {:?} (beta {:?})",
        report.distribution.label, report.distribution.beta
    );
    let st = &report.statistics;
    println!(
        "mean {:.1}, median {}, p90 {}, p10 {}, dominance {:?}",
        st.mean, st.median, st.p90, st.p10, st.dominance_factor
    );
    for (i, row) in report.table.rows.iter().enumerate() {
        println!(
            "{:>4}  {:<22} {:?}/{:?}",
            row.size,
            row.sets.join("+"),
            report.size_classes[i],
            report.degree_classes[i]
        );
    }
    Ok(())
}

fn ids(range: std::ops::Range<u32>) -> Vec<String> {
    range.map(|i| format!("e{i}")).collect()
}
