//! Build a dataset in code and print both descriptions.

use upset_alttext::{describe_plot, DescriptionOptions, ItemLabel, PlotConfig, SetDataset};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dataset = SetDataset::from_sets([
        (
            "Python",
            vec!["ana", "bo", "cy", "dee", "eli", "fay", "gus"],
        ),
        ("Rust", vec!["bo", "cy", "hal"]),
        ("Go", vec!["cy", "dee", "ivy", "jo"]),
    ])?
    .with_item_label(Some(ItemLabel::new("developer", "developers")))
    .with_set_noun(Some("languages".into()));

    let config = PlotConfig::all_sets(&dataset).validate(&dataset)?;
    let doc = describe_plot(&dataset, &config, &DescriptionOptions::default())?;

    println!("{}\n", doc.short_text);
    print!("{}", doc.long_markdown);
    Ok(())
}
