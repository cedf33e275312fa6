//! Item labels, set nouns, and how raw column names are turned into prose.

use upset_alttext::textgen::{humanize_set_name, join_combination, join_list, MAX_SET_NAME_LEN};
use upset_alttext::{
    describe_plot, DescriptionOptions, ItemLabel, PlotConfig, SetDataset, Verbosity,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for raw in [
        "shortness_of_breath",
        "SciFi",
        "Documentary_Feature_Length_Films",
    ] {
        println!("{raw:?} -> {:?}", humanize_set_name(raw, MAX_SET_NAME_LEN));
    }
    let names = ["Cough", "Fever", "Fatigue"];
    println!("{}", join_list(&names));
    println!("{}", join_combination(names));

    let dataset = SetDataset::from_sets([
        ("has_garden", vec!["a", "b", "c"]),
        ("near_school", vec!["b", "c", "d", "e"]),
    ])?;
    let config = PlotConfig::all_sets(&dataset).validate(&dataset)?;
    let short = DescriptionOptions {
        verbosity: Verbosity::Short,
        ..Default::default()
    };
    println!("\n{}", describe_plot(&dataset, &config, &short)?.short_text);

    let labelled = dataset
        .with_item_label(Some(ItemLabel::new("house", "houses")))
        .with_set_noun(Some("features".into()));
    println!(
        "\n{}",
        describe_plot(&labelled, &config, &short)?.short_text
    );
    Ok(())
}
