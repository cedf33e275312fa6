//! Pattern heuristics over sets and intersections, plus the statistical
//! summary the text is built from.
//!
//! Thresholds:
//!
//! | pattern            | rule                                                        |
//! |--------------------|-------------------------------------------------------------|
//! | set-size divergence| `(max - min) / max`: > 30% a lot, 10–30% moderate, else equal |
//! | degree             | 1 independent, 2–3 low, up to ⌈n/2⌉ medium, below n high    |
//! | size               | < median small, ≤ median + 1.5·IQR medium, above large      |
//! | distribution       | best of exponential / quadratic / linear least-squares fits |

mod fit;
mod stats;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::intersections::{self, SpecialIntersections};
use crate::model::{IntersectionTable, ItemLabel, ModelError, PlotConfig, SetDataset};

pub use fit::{fit_distribution, DistributionLabel, DistributionShape, FitResiduals};
pub use stats::{nearest_rank, summarize_statistics, SetPresence, StatisticsSummary};

/// Share of a size class's rows a degree class must reach to count as
/// significantly present there.
pub const SIGNIFICANCE_SHARE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceLabel {
    DivergingALot,
    ModeratelyDiverging,
    RoughlyEqual,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetSizeDivergence {
    pub label: DivergenceLabel,
    pub relative_range: f64,
    pub min_size: u64,
    pub max_size: u64,
}

pub fn classify_set_sizes(sizes: &[u64]) -> SetSizeDivergence {
    let max = sizes.iter().copied().max().unwrap_or(0);
    let min = sizes.iter().copied().min().unwrap_or(0);
    let spread = u128::from(max - min);
    let max_wide = u128::from(max);
    // Integer comparisons keep the label exactly scale-invariant.
    let label = if 10 * spread > 3 * max_wide {
        DivergenceLabel::DivergingALot
    } else if 10 * spread >= max_wide && spread > 0 {
        DivergenceLabel::ModeratelyDiverging
    } else {
        DivergenceLabel::RoughlyEqual
    };
    let relative_range = if max == 0 {
        0.0
    } else {
        (max - min) as f64 / max as f64
    };
    SetSizeDivergence {
        label,
        relative_range,
        min_size: min,
        max_size: max,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeClass {
    Empty,
    Independent,
    Low,
    Medium,
    High,
    AllSet,
}

impl DegreeClass {
    pub const ALL: [DegreeClass; 6] = [
        DegreeClass::Empty,
        DegreeClass::Independent,
        DegreeClass::Low,
        DegreeClass::Medium,
        DegreeClass::High,
        DegreeClass::AllSet,
    ];
}

pub fn classify_degree(degree: usize, n_visible: usize) -> DegreeClass {
    let half = n_visible.div_ceil(2);
    match degree {
        0 => DegreeClass::Empty,
        d if d >= n_visible => DegreeClass::AllSet,
        1 => DegreeClass::Independent,
        2 | 3 => DegreeClass::Low,
        d if d <= half => DegreeClass::Medium,
        _ => DegreeClass::High,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeClass {
    Small,
    Medium,
    Large,
    Largest,
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeClass::Small => "small",
            SizeClass::Medium => "medium",
            SizeClass::Large => "large",
            SizeClass::Largest => "largest",
        })
    }
}

/// Median and upper fence of the row sizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeThresholds {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub iqr: f64,
    pub fence: f64,
}

// Linearly interpolated quartile k/4 of ascending `sorted`, scaled by 4 so
// it is an exact integer.
fn quartile_x4(sorted: &[u64], k: usize) -> i128 {
    let pos = (sorted.len() - 1) * k;
    let (lo, rem) = (pos / 4, (pos % 4) as i128);
    let base = i128::from(sorted[lo]);
    if rem == 0 {
        4 * base
    } else {
        4 * base + rem * (i128::from(sorted[lo + 1]) - base)
    }
}

/// Size class of every row of `table`, in row order.
pub fn classify_sizes(table: &IntersectionTable) -> (Vec<SizeClass>, SizeThresholds) {
    let sizes: Vec<u64> = table.rows.iter().map(|r| r.size).collect();
    classify_size_values(&sizes)
}

pub fn classify_size_values(sizes: &[u64]) -> (Vec<SizeClass>, SizeThresholds) {
    if sizes.is_empty() {
        let zero = SizeThresholds {
            q1: 0.0,
            median: 0.0,
            q3: 0.0,
            iqr: 0.0,
            fence: 0.0,
        };
        return (Vec::new(), zero);
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let q1 = quartile_x4(&sorted, 1);
    let median = quartile_x4(&sorted, 2);
    let q3 = quartile_x4(&sorted, 3);
    // fence = median + 1.5 * IQR, in eighths
    let fence_x8 = 2 * median + 3 * (q3 - q1);
    let max = *sorted.last().unwrap();

    let classes = sizes
        .iter()
        .map(|&s| {
            let s = i128::from(s);
            if s == i128::from(max) {
                SizeClass::Largest
            } else if 8 * s > fence_x8 {
                SizeClass::Large
            } else if 4 * s >= median {
                SizeClass::Medium
            } else {
                SizeClass::Small
            }
        })
        .collect();

    let thresholds = SizeThresholds {
        q1: q1 as f64 / 4.0,
        median: median as f64 / 4.0,
        q3: q3 as f64 / 4.0,
        iqr: (q3 - q1) as f64 / 4.0,
        fence: fence_x8 as f64 / 8.0,
    };
    (classes, thresholds)
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DegreeSizeAssociation {
    /// Size classes occupied by the rows of each degree class present.
    pub occupied: BTreeMap<DegreeClass, BTreeSet<SizeClass>>,
    /// `(size class, degree class)` pairs where the degree class makes up at
    /// least the significance share of that size class's rows.
    pub significant: BTreeSet<(SizeClass, DegreeClass)>,
}

impl DegreeSizeAssociation {
    pub fn is_significant(&self, size: SizeClass, degree: DegreeClass) -> bool {
        self.significant.contains(&(size, degree))
    }

    pub fn sizes_of(&self, degree: DegreeClass) -> Option<&BTreeSet<SizeClass>> {
        self.occupied.get(&degree)
    }
}

pub fn associate_degree_size(
    size_classes: &[SizeClass],
    degree_classes: &[DegreeClass],
) -> DegreeSizeAssociation {
    associate_degree_size_with_share(size_classes, degree_classes, SIGNIFICANCE_SHARE)
}

pub fn associate_degree_size_with_share(
    size_classes: &[SizeClass],
    degree_classes: &[DegreeClass],
    share: f64,
) -> DegreeSizeAssociation {
    assert_eq!(size_classes.len(), degree_classes.len());
    let mut assoc = DegreeSizeAssociation::default();
    let mut per_size: BTreeMap<SizeClass, usize> = BTreeMap::new();
    let mut per_pair: BTreeMap<(SizeClass, DegreeClass), usize> = BTreeMap::new();
    for (&size, &degree) in size_classes.iter().zip(degree_classes) {
        assoc.occupied.entry(degree).or_default().insert(size);
        *per_size.entry(size).or_default() += 1;
        *per_pair.entry((size, degree)).or_default() += 1;
    }
    for (&(size, degree), &count) in &per_pair {
        if count as f64 >= share * per_size[&size] as f64 {
            assoc.significant.insert((size, degree));
        }
    }
    assoc
}

/// A visible set and its size in the full dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetSize {
    pub name: String,
    pub size: u64,
}

/// Everything the text generator reads.
#[derive(Debug, Clone, Serialize)]
pub struct PatternReport {
    pub total_sets: usize,
    /// Distinct elements; the rows partition these.
    pub total_elements: u64,
    /// Set memberships summed over every set of the dataset, hidden ones
    /// included. This is the element count the dataset sentence reports.
    pub total_memberships: u64,
    pub item_label: Option<ItemLabel>,
    pub set_noun: Option<String>,
    /// Visible sets, largest first; ties keep plot order.
    pub set_sizes: Vec<SetSize>,
    /// Rows in plot order.
    pub table: IntersectionTable,
    /// Indices into `table.rows`, largest first.
    pub by_size: Vec<usize>,
    pub special: SpecialIntersections,
    pub divergence: SetSizeDivergence,
    /// Aligned with `table.rows`.
    pub degree_classes: Vec<DegreeClass>,
    /// Aligned with `table.rows`.
    pub size_classes: Vec<SizeClass>,
    pub size_thresholds: SizeThresholds,
    pub distribution: DistributionShape,
    pub statistics: StatisticsSummary,
    pub association: DegreeSizeAssociation,
}

impl PatternReport {
    pub fn n_visible(&self) -> usize {
        self.table.n_visible
    }

    /// Rows largest first.
    pub fn largest_rows(&self) -> impl Iterator<Item = &crate::model::Intersection> + '_ {
        self.by_size.iter().map(|&i| &self.table.rows[i])
    }

    pub fn has_degree_class(&self, class: DegreeClass) -> bool {
        self.association.occupied.contains_key(&class)
    }
}

/// Runs the whole analysis for a validated dataset and config.
pub fn analyze(dataset: &SetDataset, config: &PlotConfig) -> Result<PatternReport, ModelError> {
    let table = intersections::compute_table(dataset, config)?;

    let mut set_sizes: Vec<SetSize> = config
        .visible_sets
        .iter()
        .map(|name| SetSize {
            name: name.clone(),
            size: dataset.set_size(name) as u64,
        })
        .collect();
    set_sizes.sort_by_key(|s| std::cmp::Reverse(s.size));

    let by_size = {
        let mut idx: Vec<usize> = (0..table.rows.len()).collect();
        idx.sort_by(|&a, &b| {
            intersections::compare_rows(
                &table.rows[a],
                &table.rows[b],
                crate::model::SortBy::Size,
                crate::model::SortOrder::Descending,
            )
        });
        idx
    };

    let special = intersections::detect_special(&table, table.n_visible);
    let divergence = classify_set_sizes(&set_sizes.iter().map(|s| s.size).collect::<Vec<_>>());
    let degree_classes: Vec<DegreeClass> = table
        .rows
        .iter()
        .map(|r| classify_degree(r.degree(), table.n_visible))
        .collect();
    let (size_classes, size_thresholds) = classify_sizes(&table);
    let descending: Vec<f64> = by_size.iter().map(|&i| table.rows[i].size as f64).collect();
    let distribution = fit_distribution(&descending);
    let statistics = summarize_statistics(&table, &set_sizes);
    let association = associate_degree_size(&size_classes, &degree_classes);

    Ok(PatternReport {
        total_sets: dataset.set_names().len(),
        total_elements: dataset.len() as u64,
        total_memberships: dataset.membership_count() as u64,
        item_label: dataset.item_label().cloned(),
        set_noun: dataset.set_noun().map(str::to_owned),
        set_sizes,
        table,
        by_size,
        special,
        divergence,
        degree_classes,
        size_classes,
        size_thresholds,
        distribution,
        statistics,
        association,
    })
}
