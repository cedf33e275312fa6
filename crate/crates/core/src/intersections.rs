//! Exclusive intersections over the visible sets.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::model::{
    Intersection, IntersectionTable, ModelError, PlotConfig, SetDataset, SortBy, SortOrder,
};

/// Sizes of the two special rows, when populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SpecialIntersections {
    pub all_set: Option<u64>,
    pub empty: Option<u64>,
}

/// Builds the intersection table for `config.visible_sets`.
///
/// Every element lands in exactly one row: the one whose combination equals
/// its membership restricted to the visible sets. Elements outside every
/// visible set (including those only in hidden sets) form the degree-0 row.
pub fn compute_table(
    dataset: &SetDataset,
    config: &PlotConfig,
) -> Result<IntersectionTable, ModelError> {
    if dataset.is_empty() {
        return Err(ModelError::EmptyDataset);
    }

    // dataset set index -> visible position
    let mut visible_pos = vec![None; dataset.set_names().len()];
    for (pos, name) in config.visible_sets.iter().enumerate() {
        let idx = dataset
            .set_index(name)
            .ok_or_else(|| ModelError::UnknownVisibleSet(name.clone()))?;
        visible_pos[idx] = Some(pos);
    }

    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for element in 0..dataset.len() {
        let mut key: Vec<usize> = dataset
            .memberships(element)
            .iter()
            .filter_map(|&s| visible_pos[s])
            .collect();
        key.sort_unstable();
        *counts.entry(key).or_default() += 1;
    }

    let rows = counts
        .into_iter()
        .map(|(key, size)| Intersection {
            sets: key
                .iter()
                .map(|&p| config.visible_sets[p].clone())
                .collect(),
            size,
        })
        .collect();

    let table = IntersectionTable {
        rows,
        n_visible: config.visible_sets.len(),
        sort_by: config.sort_by,
        sort_order: config.sort_order,
    };
    Ok(sort_intersections(table, config.sort_by, config.sort_order))
}

/// Orders rows by `sort_by` / `sort_order`.
///
/// Ties on the primary key fall back to: higher degree first (size sort) or
/// larger size first (degree sort), then the lexicographic order of the
/// member set names.
pub fn sort_intersections(
    mut table: IntersectionTable,
    sort_by: SortBy,
    sort_order: SortOrder,
) -> IntersectionTable {
    table
        .rows
        .sort_by(|a, b| compare_rows(a, b, sort_by, sort_order));
    table.sort_by = sort_by;
    table.sort_order = sort_order;
    table
}

pub(crate) fn compare_rows(
    a: &Intersection,
    b: &Intersection,
    sort_by: SortBy,
    sort_order: SortOrder,
) -> Ordering {
    let primary = match sort_by {
        SortBy::Size => a.size.cmp(&b.size),
        SortBy::Degree => a.degree().cmp(&b.degree()),
    };
    let primary = match sort_order {
        SortOrder::Ascending => primary,
        SortOrder::Descending => primary.reverse(),
    };
    let secondary = match sort_by {
        SortBy::Size => b.degree().cmp(&a.degree()),
        SortBy::Degree => b.size.cmp(&a.size),
    };
    primary.then(secondary).then_with(|| a.sets.cmp(&b.sets))
}

/// Rows ordered largest first, independent of the plot's own sort.
pub fn largest_first(table: &IntersectionTable) -> Vec<&Intersection> {
    let mut rows: Vec<&Intersection> = table.rows.iter().collect();
    rows.sort_by(|a, b| compare_rows(a, b, SortBy::Size, SortOrder::Descending));
    rows
}

pub fn detect_special(table: &IntersectionTable, n_visible: usize) -> SpecialIntersections {
    let mut special = SpecialIntersections::default();
    for row in table.rows.iter().filter(|r| r.size > 0) {
        if row.degree() == 0 {
            special.empty = Some(row.size);
        } else if row.degree() == n_visible {
            special.all_set = Some(row.size);
        }
    }
    special
}
