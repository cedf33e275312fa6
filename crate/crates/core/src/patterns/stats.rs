use serde::Serialize;

use super::SetSize;
use crate::model::IntersectionTable;

/// Share of rows whose combination contains a given set, in percent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetPresence {
    pub set: String,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatisticsSummary {
    pub mean: f64,
    pub median: f64,
    pub p90: u64,
    pub p10: u64,
    pub largest_set_presence: Option<SetPresence>,
    pub smallest_set_presence: Option<SetPresence>,
    /// `floor(peak / second)` when that is at least 2.
    pub dominance_factor: Option<u64>,
    pub peak: u64,
    pub tail: u64,
}

/// Nearest-rank percentile: the value at rank `ceil(pct/100 · n)` of the
/// ascending values. `pct` is an integer percentage in `1..=100`.
pub fn nearest_rank(ascending: &[u64], pct: u32) -> u64 {
    assert!(!ascending.is_empty() && (1..=100).contains(&pct));
    let n = ascending.len();
    let rank = (pct as usize * n).div_ceil(100);
    ascending[rank.max(1) - 1]
}

/// Summary over all populated rows (the degree-0 row included).
///
/// `set_sizes` must be ordered largest first; its first and last entries are
/// the largest and smallest sets.
pub fn summarize_statistics(table: &IntersectionTable, set_sizes: &[SetSize]) -> StatisticsSummary {
    let mut sizes: Vec<u64> = table
        .rows
        .iter()
        .map(|r| r.size)
        .filter(|&s| s > 0)
        .collect();
    sizes.sort_unstable();
    let n = sizes.len();
    if n == 0 {
        return StatisticsSummary {
            mean: 0.0,
            median: 0.0,
            p90: 0,
            p10: 0,
            largest_set_presence: None,
            smallest_set_presence: None,
            dominance_factor: None,
            peak: 0,
            tail: 0,
        };
    }

    let mean = sizes.iter().sum::<u64>() as f64 / n as f64;
    let median = if n % 2 == 1 {
        sizes[n / 2] as f64
    } else {
        (sizes[n / 2 - 1] + sizes[n / 2]) as f64 / 2.0
    };
    let peak = sizes[n - 1];
    let dominance_factor = match n {
        1 => None,
        _ => Some(peak / sizes[n - 2]).filter(|&f| f >= 2),
    };

    let presence = |set: &SetSize| {
        let hits = table
            .rows
            .iter()
            .filter(|r| r.size > 0 && r.contains(&set.name))
            .count();
        SetPresence {
            set: set.name.clone(),
            percent: 100.0 * hits as f64 / n as f64,
        }
    };

    StatisticsSummary {
        mean,
        median,
        p90: nearest_rank(&sizes, 90),
        p10: nearest_rank(&sizes, 10),
        largest_set_presence: set_sizes.first().map(presence),
        smallest_set_presence: set_sizes.last().map(presence),
        dominance_factor,
        peak,
        tail: sizes[0],
    }
}
