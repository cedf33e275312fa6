//! Fit decay curves to a few size series.

use upset_alttext::patterns::fit_distribution;

fn main() {
    let series: [(&str, Vec<f64>); 5] = [
        ("linear", (0..12).map(|i| 100.0 - 7.0 * i as f64).collect()),
        (
            "gentle exponential",
            (0..12).map(|i| 500.0 * (-0.05 * i as f64).exp()).collect(),
        ),
        (
            "steep exponential",
            (0..12).map(|i| 500.0 * (-0.9 * i as f64).exp()).collect(),
        ),
        (
            "quadratic",
            (0..12)
                .map(|i| 20.0 + 2.0 * (11 - i) as f64 * (11 - i) as f64)
                .collect(),
        ),
        ("flat", vec![40.0; 12]),
    ];
    for (name, sizes) in series {
        let shape = fit_distribution(&sizes);
        let adverb = shape.label.adverb().unwrap_or("-");
        println!("{name:<20} {:?} ({adverb})", shape.label);
        let r = shape.fit_residuals;
        println!(
            "    rmse exp {:?} quad {:?} lin {:?}",
            r.exponential, r.quadratic, r.linear
        );
    }
}
