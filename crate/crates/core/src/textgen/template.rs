//! Sentence templates and the placeholder renderer.
//!
//! Templates are plain strings with `{name}` placeholders. Two placeholders
//! are resolved from the labels rather than from arguments:
//!
//! * `{items}` becomes the item noun, singular when the closest count
//!   argument rendered before it is 1 and plural otherwise;
//! * `{set_noun}` becomes the configured description of the sets.

use thiserror::Error;

use crate::model::ItemLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("unknown placeholder `{{{0}}}`")]
    UnknownPlaceholder(String),
    #[error("unterminated placeholder at byte {0}")]
    Unterminated(usize),
    #[error("no template named `{0}`")]
    UnknownTemplate(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Count(u64),
    Text(String),
}

impl From<u64> for Arg {
    fn from(v: u64) -> Self {
        Arg::Count(v)
    }
}

impl From<usize> for Arg {
    fn from(v: usize) -> Self {
        Arg::Count(v as u64)
    }
}

impl From<String> for Arg {
    fn from(v: String) -> Self {
        Arg::Text(v)
    }
}

impl From<&str> for Arg {
    fn from(v: &str) -> Self {
        Arg::Text(v.to_owned())
    }
}

/// Substitutes `args` and the label placeholders into `template`.
pub fn apply_labels(
    template: &str,
    item_label: Option<&ItemLabel>,
    set_noun: Option<&str>,
    args: &[(&str, Arg)],
) -> Result<String, TemplateError> {
    let default_label = ItemLabel::default();
    let label = item_label.unwrap_or(&default_label);
    let mut out = String::with_capacity(template.len() + 32);
    let mut last_count: Option<u64> = None;
    let mut rest = template;
    let mut offset = 0;

    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .ok_or(TemplateError::Unterminated(offset + open))?;
        let name = &rest[open + 1..open + close];
        match name {
            "items" => out.push_str(label.for_count(last_count.unwrap_or(0))),
            "set_noun" => out.push_str(set_noun.unwrap_or("sets")),
            _ => match args.iter().find(|(k, _)| *k == name) {
                Some((_, Arg::Count(n))) => {
                    last_count = Some(*n);
                    out.push_str(&n.to_string());
                }
                Some((_, Arg::Text(t))) => out.push_str(t),
                None => return Err(TemplateError::UnknownPlaceholder(name.to_owned())),
            },
        }
        offset += open + close + 1;
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Every sentence the generator can emit, keyed by id.
pub const CATALOG: &[(&str, &str)] = &[
    ("short.intro", "This is an UpSet plot which shows the intersections of {n_sets} {sets_word}."),
    ("short.intro_captioned", "The plot shows the intersections of {n_sets} {sets_word}."),
    ("short.major", "All major intersections involve the set {sets}."),
    ("short.largest", "The largest intersection is {name}, with {size} {items}."),
    ("short.others", "Other large intersections also involve {sets}."),
    ("short.all_set", "The intersection of all sets is present with {size} {items}."),
    ("short.empty_largest", "The empty intersection is the largest, with {size} {items}."),
    ("dataset.set_noun", "The sets are {set_noun}."),
    ("dataset.items", "The items are {items}."),
    (
        "dataset.contains",
        "The dataset contains {total_sets} {sets_word} and {total_elements} {items}, of which {visible} {visible_word} shown in the plot.",
    ),
    ("sets.divergence", "The set sizes are {divergence}, ranging from {min} to {max}."),
    ("sets.single", "The plot shows a single set, {name}, with {size} {items}."),
    ("sets.enumeration", "The largest set is {name} with {size} {items}, followed by {rest}."),
    ("intersections.sort", "The plot is sorted by {sort_by} in {sort_order} order."),
    (
        "intersections.count",
        "There are {count} non-empty intersections, all of which are shown in the plot.",
    ),
    ("intersections.count_one", "There is 1 non-empty intersection, which is shown in the plot."),
    ("intersections.top", "The largest {k} intersections are {list}."),
    ("intersections.only", "The only intersection is {list}."),
    ("stats.mean", "The average intersection size is {mean}, and the median is {median}."),
    ("stats.percentiles", "The 90th percentile is {p90}, and the 10th percentile is {p10}."),
    (
        "stats.largest_presence",
        "The largest set, {name}, is present in {percent}% of all non-empty intersections.",
    ),
    (
        "stats.smallest_presence",
        "The smallest set, {name}, is present in {percent}% of all non-empty intersections.",
    ),
    (
        "trend.flatten",
        "The intersection sizes peak at a value of {peak} and then {adverb} flatten down to {tail}.",
    ),
    ("trend.constant", "The intersection sizes are constant at a value of {peak}."),
    ("trend.dominance", "{name} is the largest by a factor of {factor}."),
    ("trend.empty", "The empty intersection is present with a size of {size}."),
    ("trend.all_set_present", "An all set intersection is present with a size of {size}."),
    ("trend.all_set_absent", "An all set intersection is not present."),
    ("trend.independent", "The individual set intersections are {classes} in size."),
    ("trend.low", "The low degree set intersections lie in {classes} sized intersections."),
    (
        "trend.medium",
        "The medium degree set intersections can be seen among {classes} sized intersections.",
    ),
    (
        "trend.high_significant",
        "Among the {classes} sized intersections, the high order set intersections are significantly present.",
    ),
    (
        "trend.high",
        "The high order set intersections can be seen among {classes} sized intersections.",
    ),
    ("trend.no_high", "No high order intersections are present."),
];

pub fn template(id: &str) -> Result<&'static str, TemplateError> {
    CATALOG
        .iter()
        .find(|(k, _)| *k == id)
        .map(|&(_, t)| t)
        .ok_or_else(|| TemplateError::UnknownTemplate(id.to_owned()))
}
