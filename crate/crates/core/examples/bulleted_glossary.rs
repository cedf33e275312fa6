//! The same plot rendered as paragraphs, as bullets, and with a glossary.

use upset_alttext::{describe_plot, DescriptionOptions, PlotConfig, SetDataset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dataset = SetDataset::from_sets([
        ("Email", ids(0..40)),
        ("Chat", ids(25..70)),
        ("Phone", ids(60..75)),
    ])?;
    let config = PlotConfig::all_sets(&dataset).validate(&dataset)?;

    for (title, bullets, glossary) in [
        ("paragraphs", false, false),
        ("bullets + glossary", true, true),
    ] {
        let options = DescriptionOptions {
            bullets,
            glossary,
            ..Default::default()
        };
        println!("==== {title}");
        print!(
            "{}",
            describe_plot(&dataset, &config, &options)?.long_markdown
        );
        println!();
    }
    Ok(())
}

fn ids(range: std::ops::Range<u32>) -> Vec<String> {
    range.map(|i| format!("e{i}")).collect()
}
