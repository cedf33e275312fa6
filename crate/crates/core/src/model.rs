//! Shared domain types: the set dataset, the plot-state configuration and the
//! intersection table.
//!
//! Everything here is immutable once validated. Construction goes through
//! [`SetDataset::new`] / [`PlotConfig::validate`] so downstream code can rely
//! on the invariants without re-checking them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_TOP_K: usize = 5;
pub const MIN_TOP_K: usize = 5;
pub const MAX_TOP_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("duplicate set name `{0}`")]
    DuplicateSet(String),
    #[error("set names must be non-empty")]
    EmptySetName,
    #[error("membership refers to unknown set `{0}`")]
    UnknownSetInMembership(String),
    #[error("visible set `{0}` is not part of the dataset")]
    UnknownVisibleSet(String),
    #[error("visible set `{0}` is listed more than once")]
    DuplicateVisibleSet(String),
    #[error("at least one set must be visible")]
    EmptyVisibleSets,
    #[error("topK must be between {MIN_TOP_K} and {MAX_TOP_K}, got {0}")]
    TopKOutOfRange(usize),
    #[error("the dataset contains no elements")]
    EmptyDataset,
}

impl ModelError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            ModelError::DuplicateElement(_) => "DuplicateElement",
            ModelError::DuplicateSet(_) => "DuplicateSet",
            ModelError::EmptySetName => "EmptySetName",
            ModelError::UnknownSetInMembership(_) => "UnknownSetInMembership",
            ModelError::UnknownVisibleSet(_) => "UnknownVisibleSet",
            ModelError::DuplicateVisibleSet(_) => "DuplicateVisibleSet",
            ModelError::EmptyVisibleSets => "EmptyVisibleSets",
            ModelError::TopKOutOfRange(_) => "TopKOutOfRange",
            ModelError::EmptyDataset => "EmptyDataset",
        }
    }
}

/// Singular/plural noun pair for the things being counted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemLabel {
    pub singular: String,
    pub plural: String,
}

impl ItemLabel {
    pub fn new(singular: impl Into<String>, plural: impl Into<String>) -> Self {
        ItemLabel {
            singular: singular.into(),
            plural: plural.into(),
        }
    }

    pub fn for_count(&self, count: u64) -> &str {
        if count == 1 {
            &self.singular
        } else {
            &self.plural
        }
    }
}

impl Default for ItemLabel {
    fn default() -> Self {
        ItemLabel::new("element", "elements")
    }
}

/// Elements with boolean membership over an ordered list of named sets.
#[derive(Debug, Clone)]
pub struct SetDataset {
    set_names: Vec<String>,
    element_ids: Vec<String>,
    // Per element, indices into `set_names`.
    membership: Vec<BTreeSet<usize>>,
    item_label: Option<ItemLabel>,
    set_noun: Option<String>,
}

impl SetDataset {
    /// Builds a validated dataset.
    ///
    /// Identifiers are trimmed of surrounding whitespace. Elements listed in
    /// `element_ids` but missing from `membership` belong to no set.
    pub fn new<E, S>(
        element_ids: impl IntoIterator<Item = E>,
        set_names: impl IntoIterator<Item = S>,
        membership: impl IntoIterator<Item = (E, Vec<S>)>,
    ) -> Result<Self, ModelError>
    where
        E: AsRef<str>,
        S: AsRef<str>,
    {
        let mut names = Vec::new();
        let mut name_index = HashMap::new();
        for name in set_names {
            let name = name.as_ref().trim();
            if name.is_empty() {
                return Err(ModelError::EmptySetName);
            }
            if name_index.insert(name.to_owned(), names.len()).is_some() {
                return Err(ModelError::DuplicateSet(name.to_owned()));
            }
            names.push(name.to_owned());
        }

        let mut ids = Vec::new();
        let mut id_index = HashMap::new();
        for id in element_ids {
            let id = id.as_ref().trim();
            if id_index.insert(id.to_owned(), ids.len()).is_some() {
                return Err(ModelError::DuplicateElement(id.to_owned()));
            }
            ids.push(id.to_owned());
        }

        let mut member_of = vec![BTreeSet::new(); ids.len()];
        for (id, sets) in membership {
            let id = id.as_ref().trim();
            let idx = match id_index.get(id) {
                Some(&idx) => idx,
                None => {
                    id_index.insert(id.to_owned(), ids.len());
                    ids.push(id.to_owned());
                    member_of.push(BTreeSet::new());
                    ids.len() - 1
                }
            };
            for set in sets {
                let set = set.as_ref().trim();
                let set_idx = *name_index
                    .get(set)
                    .ok_or_else(|| ModelError::UnknownSetInMembership(set.to_owned()))?;
                member_of[idx].insert(set_idx);
            }
        }

        Ok(SetDataset {
            set_names: names,
            element_ids: ids,
            membership: member_of,
            item_label: None,
            set_noun: None,
        })
    }

    /// Builds a dataset from `(set name, members)` pairs. Elements are
    /// ordered by first appearance.
    pub fn from_sets<N, M, I>(sets: impl IntoIterator<Item = (N, I)>) -> Result<Self, ModelError>
    where
        N: AsRef<str>,
        M: AsRef<str>,
        I: IntoIterator<Item = M>,
    {
        let mut names = Vec::new();
        let mut order: Vec<String> = Vec::new();
        let mut member_sets: HashMap<String, Vec<String>> = HashMap::new();
        for (name, members) in sets {
            let name = name.as_ref().to_owned();
            for m in members {
                let id = m.as_ref().trim().to_owned();
                let entry = member_sets.entry(id.clone()).or_insert_with(|| {
                    order.push(id);
                    Vec::new()
                });
                if !entry.contains(&name) {
                    entry.push(name.clone());
                }
            }
            names.push(name);
        }
        let membership: Vec<(String, Vec<String>)> = order
            .iter()
            .map(|id| (id.clone(), member_sets.remove(id).unwrap_or_default()))
            .collect();
        SetDataset::new(order.iter().cloned(), names, membership)
    }

    pub fn with_item_label(mut self, label: Option<ItemLabel>) -> Self {
        self.item_label = label;
        self
    }

    pub fn with_set_noun(mut self, noun: Option<String>) -> Self {
        self.set_noun = noun;
        self
    }

    pub fn set_names(&self) -> &[String] {
        &self.set_names
    }

    pub fn element_ids(&self) -> &[String] {
        &self.element_ids
    }

    pub fn len(&self) -> usize {
        self.element_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.element_ids.is_empty()
    }

    pub fn item_label(&self) -> Option<&ItemLabel> {
        self.item_label.as_ref()
    }

    pub fn set_noun(&self) -> Option<&str> {
        self.set_noun.as_deref()
    }

    pub fn set_index(&self, name: &str) -> Option<usize> {
        self.set_names.iter().position(|n| n == name)
    }

    /// Set indices the element at `element` belongs to.
    pub fn memberships(&self, element: usize) -> &BTreeSet<usize> {
        &self.membership[element]
    }

    /// Iterates `(element_id, set names)` pairs in element order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Vec<&str>)> + '_ {
        self.element_ids
            .iter()
            .zip(&self.membership)
            .map(|(id, sets)| {
                (
                    id.as_str(),
                    sets.iter().map(|&s| self.set_names[s].as_str()).collect(),
                )
            })
    }

    /// Number of elements in the named set.
    pub fn set_size(&self, name: &str) -> usize {
        match self.set_index(name) {
            Some(idx) => self.membership.iter().filter(|m| m.contains(&idx)).count(),
            None => 0,
        }
    }

    /// Total number of (element, set) memberships.
    pub fn membership_count(&self) -> usize {
        self.membership.iter().map(BTreeSet::len).sum()
    }

    fn canonical(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        self.iter()
            .map(|(id, sets)| (id, sets.into_iter().collect()))
            .collect()
    }
}

/// Datasets are equal when they have the same ordered set names, the same
/// labels and the same element → membership mapping. Element order is not
/// significant.
impl PartialEq for SetDataset {
    fn eq(&self, other: &Self) -> bool {
        self.set_names == other.set_names
            && self.item_label == other.item_label
            && self.set_noun == other.set_noun
            && self.canonical() == other.canonical()
    }
}

impl Eq for SetDataset {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortBy {
    #[default]
    Size,
    Degree,
}

impl fmt::Display for SortBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SortBy::Size => "size",
            SortBy::Degree => "degree",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortOrder {
    Ascending,
    #[default]
    Descending,
}

impl fmt::Display for SortOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SortOrder::Ascending => "ascending",
            SortOrder::Descending => "descending",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Horizontal,
    Vertical,
}

/// Plot-state configuration.
///
/// `unsupported` keeps the aggregation / attribute / query blocks verbatim.
/// They are carried along for round-tripping and never read by the analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotConfig {
    pub visible_sets: Vec<String>,
    pub sort_by: SortBy,
    pub sort_order: SortOrder,
    pub direction: Direction,
    pub title: Option<String>,
    pub caption: Option<String>,
    pub top_k: usize,
    pub unsupported: BTreeMap<String, serde_json::Value>,
}

impl PlotConfig {
    /// Config with defaults showing the given sets.
    pub fn new<S: Into<String>>(visible_sets: impl IntoIterator<Item = S>) -> Self {
        PlotConfig {
            visible_sets: visible_sets.into_iter().map(Into::into).collect(),
            sort_by: SortBy::default(),
            sort_order: SortOrder::default(),
            direction: Direction::default(),
            title: None,
            caption: None,
            top_k: DEFAULT_TOP_K,
            unsupported: BTreeMap::new(),
        }
    }

    /// Config showing every set of the dataset, in dataset order.
    pub fn all_sets(dataset: &SetDataset) -> Self {
        PlotConfig::new(dataset.set_names().iter().cloned())
    }

    /// Checks the config against a validated dataset. Set names are trimmed.
    pub fn validate(mut self, dataset: &SetDataset) -> Result<Self, ModelError> {
        if self.visible_sets.is_empty() {
            return Err(ModelError::EmptyVisibleSets);
        }
        let mut seen = HashSet::new();
        for name in &mut self.visible_sets {
            let trimmed = name.trim();
            if dataset.set_index(trimmed).is_none() {
                return Err(ModelError::UnknownVisibleSet(trimmed.to_owned()));
            }
            if !seen.insert(trimmed.to_owned()) {
                return Err(ModelError::DuplicateVisibleSet(trimmed.to_owned()));
            }
            *name = trimmed.to_owned();
        }
        if !(MIN_TOP_K..=MAX_TOP_K).contains(&self.top_k) {
            return Err(ModelError::TopKOutOfRange(self.top_k));
        }
        Ok(self)
    }
}

/// One exclusive intersection: the elements whose membership, restricted to
/// the visible sets, is exactly `sets`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Intersection {
    /// Member sets in visible-set order. Empty for the degree-0 row.
    pub sets: Vec<String>,
    pub size: u64,
}

impl Intersection {
    pub fn degree(&self) -> usize {
        self.sets.len()
    }

    pub fn contains(&self, set: &str) -> bool {
        self.sets.iter().any(|s| s == set)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionTable {
    pub rows: Vec<Intersection>,
    pub n_visible: usize,
    pub sort_by: SortBy,
    pub sort_order: SortOrder,
}

impl IntersectionTable {
    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.size).sum()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
