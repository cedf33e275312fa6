//! Exclusive intersections under both sort modes, and what hiding a set does.

use upset_alttext::{compute_table, IntersectionTable, PlotConfig, SetDataset, SortBy};

fn print(table: &IntersectionTable) {
    for row in &table.rows {
        let name = if row.sets.is_empty() {
            "(none)".to_owned()
        } else {
            row.sets.join(" & ")
        };
        println!("  {:>3}  deg {}  {name}", row.size, row.degree());
    }
    println!("  total {}", table.total());
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dataset = SetDataset::from_sets([
        ("A", vec!["a", "b", "c", "d", "e", "f"]),
        ("B", vec!["d", "e", "f", "g"]),
        ("C", vec!["f", "g", "h", "i"]),
        ("D", vec!["j"]),
    ])?;

    let mut config = PlotConfig::all_sets(&dataset).validate(&dataset)?;
    println!("sorted by size:");
    print(&compute_table(&dataset, &config)?);

    config.sort_by = SortBy::Degree;
    println!("sorted by degree:");
    print(&compute_table(&dataset, &config)?);

    // element j only belongs to D, so it lands in the empty row
    let config = PlotConfig::new(["A", "B", "C"]).validate(&dataset)?;
    println!("D hidden:");
    print(&compute_table(&dataset, &config)?);
    Ok(())
}
