//! Reading and writing datasets and the plot-state configuration document.
//!
//! Datasets come as a CSV membership matrix (first column the element id,
//! one 0/1 column per set) or as JSON in one of two shapes:
//!
//! ```json
//! {"sets": {"Drama": ["m1", "m2"], "Comedy": ["m2"]}, "elementIds": ["m1", "m2", "m3"]}
//! {"setNames": ["Drama", "Comedy"], "elements": [{"id": "m1", "sets": ["Drama"]}]}
//! ```
//!
//! `elementIds` is optional and only needed to list elements that belong to
//! no set. The configuration is a JSON object with lowerCamelCase keys; see
//! `schema/upset-config.schema.json`.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use thiserror::Error;

use crate::model::{
    Direction, ItemLabel, ModelError, PlotConfig, SetDataset, SortBy, SortOrder, DEFAULT_TOP_K,
};

/// Config keys that are accepted and kept but never used for descriptions.
pub const TOLERATED_KEYS: [&str; 3] = ["aggregation", "attributes", "queries"];

/// Keys the config document reads (the tolerated keys aside).
pub const KNOWN_KEYS: [&str; 11] = [
    "data",
    "visibleSets",
    "sortBy",
    "sortOrder",
    "direction",
    "title",
    "caption",
    "itemLabel",
    "setNoun",
    "topK",
    "$schema",
];

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("CSV input has no header naming at least one set")]
    EmptyHeader,
    #[error("row on line {line} has {found} fields, expected {expected}")]
    MalformedRow {
        line: u64,
        found: usize,
        expected: usize,
    },
    #[error("line {line}, column `{column}`: `{value}` is not one of 0, 1, true, false")]
    NonBinaryCell {
        line: u64,
        column: String,
        value: String,
    },
    #[error("{path}: {message}")]
    InvalidField { path: String, message: String },
    #[error("unknown sort key `{0}`, expected `size` or `degree`")]
    UnknownSortKey(String),
    #[error("unknown sort order `{0}`, expected `ascending` or `descending`")]
    UnknownSortOrder(String),
    #[error("unknown direction `{0}`, expected `horizontal` or `vertical`")]
    UnknownDirection(String),
    #[error("no data: the configuration has no `data` entry and none was supplied")]
    MissingData,
    #[error("`data` must be inline; file references are not accepted here")]
    FileReferenceNotAllowed,
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{source}")]
    Model {
        path: String,
        #[source]
        source: ModelError,
    },
}

impl IngestError {
    pub fn code(&self) -> &'static str {
        match self {
            IngestError::Syntax { .. } => "SyntaxError",
            IngestError::EmptyHeader => "EmptyHeader",
            IngestError::MalformedRow { .. } => "MalformedRow",
            IngestError::NonBinaryCell { .. } => "NonBinaryCell",
            IngestError::InvalidField { .. } => "InvalidField",
            IngestError::UnknownSortKey(_) => "UnknownSortKey",
            IngestError::UnknownSortOrder(_) => "UnknownSortOrder",
            IngestError::UnknownDirection(_) => "UnknownDirection",
            IngestError::MissingData => "MissingData",
            IngestError::FileReferenceNotAllowed => "FileReferenceNotAllowed",
            IngestError::Io { .. } => "IoError",
            IngestError::Model { source, .. } => source.code(),
        }
    }

    /// Location of the problem inside the input document, JSON-pointer style.
    pub fn path(&self) -> String {
        match self {
            IngestError::InvalidField { path, .. } | IngestError::Model { path, .. } => {
                path.clone()
            }
            IngestError::UnknownSortKey(_) => "/sortBy".into(),
            IngestError::UnknownSortOrder(_) => "/sortOrder".into(),
            IngestError::UnknownDirection(_) => "/direction".into(),
            IngestError::MissingData | IngestError::FileReferenceNotAllowed => "/data".into(),
            IngestError::MalformedRow { line, .. } => format!("line {line}"),
            IngestError::NonBinaryCell { line, column, .. } => format!("line {line}/{column}"),
            IngestError::Io { path, .. } => path.clone(),
            IngestError::Syntax { line, column, .. } => format!("line {line}, column {column}"),
            IngestError::EmptyHeader => "line 1".into(),
        }
    }

    fn model(path: impl Into<String>, source: ModelError) -> Self {
        IngestError::Model {
            path: path.into(),
            source,
        }
    }

    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        IngestError::InvalidField {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// A parsed value plus non-fatal findings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn parse_json(bytes: &[u8]) -> Result<Value, IngestError> {
    serde_json::from_slice(bytes).map_err(|e| IngestError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_cell(raw: &str) -> Option<bool> {
    match raw.trim() {
        "1" => Some(true),
        "0" => Some(false),
        t if t.eq_ignore_ascii_case("true") => Some(true),
        t if t.eq_ignore_ascii_case("false") => Some(false),
        _ => None,
    }
}

/// Parses a CSV membership matrix.
pub fn parse_dataset_csv(bytes: &[u8]) -> Result<SetDataset, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(csv_error)?,
        None => return Err(IngestError::EmptyHeader),
    };
    let sets: Vec<String> = header.iter().skip(1).map(|s| s.trim().to_owned()).collect();
    if sets.is_empty() {
        return Err(IngestError::EmptyHeader);
    }

    let mut ids = Vec::new();
    let mut membership = Vec::new();
    for rec in records {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != sets.len() + 1 {
            return Err(IngestError::MalformedRow {
                line,
                found: rec.len(),
                expected: sets.len() + 1,
            });
        }
        let id = rec[0].to_owned();
        let mut member_of = Vec::new();
        for (cell, set) in rec.iter().skip(1).zip(&sets) {
            match parse_cell(cell) {
                Some(true) => member_of.push(set.clone()),
                Some(false) => {}
                None => {
                    return Err(IngestError::NonBinaryCell {
                        line,
                        column: set.clone(),
                        value: cell.to_owned(),
                    })
                }
            }
        }
        ids.push(id.clone());
        membership.push((id, member_of));
    }

    SetDataset::new(ids, sets, membership).map_err(|e| IngestError::model("", e))
}

fn csv_error(e: csv::Error) -> IngestError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    IngestError::Syntax {
        line,
        column: 0,
        message: e.to_string(),
    }
}

fn string_list(value: &Value, path: &str) -> Result<Vec<String>, IngestError> {
    let items = value
        .as_array()
        .ok_or_else(|| IngestError::field(path, "expected an array of strings"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| IngestError::field(format!("{path}/{i}"), "expected a string"))
        })
        .collect()
}

/// Parses a JSON dataset in either the sets form or the elements form.
pub fn parse_dataset_json(bytes: &[u8]) -> Result<Parsed<SetDataset>, IngestError> {
    dataset_from_value(&parse_json(bytes)?, "")
}

/// Builds a dataset from an already parsed JSON value. `base` prefixes error
/// paths.
pub fn dataset_from_value(value: &Value, base: &str) -> Result<Parsed<SetDataset>, IngestError> {
    let obj = value
        .as_object()
        .ok_or_else(|| IngestError::field(base, "expected a dataset object"))?;
    let mut warnings = Vec::new();

    let dataset = match (obj.get("sets"), obj.get("elements")) {
        (Some(Value::Object(sets)), None) => {
            let mut names = Vec::new();
            let mut ids: Vec<String> = Vec::new();
            let mut seen_ids = HashSet::new();
            let mut membership: BTreeMap<String, Vec<String>> = BTreeMap::new();
            for (name, members) in sets {
                let path = format!("{base}/sets/{}", escape_pointer(name));
                names.push(name.clone());
                let mut seen_here = HashSet::new();
                for id in string_list(members, &path)? {
                    let id = id.trim().to_owned();
                    if !seen_here.insert(id.clone()) {
                        warnings.push(format!(
                            "element `{id}` listed more than once in set `{name}`"
                        ));
                        continue;
                    }
                    if seen_ids.insert(id.clone()) {
                        ids.push(id.clone());
                    }
                    membership.entry(id).or_default().push(name.clone());
                }
            }
            if let Some(extra) = obj.get("elementIds") {
                for id in string_list(extra, &format!("{base}/elementIds"))? {
                    let id = id.trim().to_owned();
                    if seen_ids.insert(id.clone()) {
                        ids.push(id);
                    }
                }
            }
            let membership: Vec<(String, Vec<String>)> = ids
                .iter()
                .map(|id| (id.clone(), membership.remove(id).unwrap_or_default()))
                .collect();
            SetDataset::new(ids.clone(), names, membership)
                .map_err(|e| IngestError::model(format!("{base}/sets"), e))?
        }
        (None, Some(Value::Array(elements))) => {
            let mut names: Vec<String> = match obj.get("setNames") {
                Some(v) => string_list(v, &format!("{base}/setNames"))?,
                None => Vec::new(),
            };
            let explicit_names = obj.contains_key("setNames");
            let mut known: HashSet<String> = names.iter().map(|n| n.trim().to_owned()).collect();
            let mut ids = Vec::new();
            let mut membership = Vec::new();
            for (i, element) in elements.iter().enumerate() {
                let path = format!("{base}/elements/{i}");
                let id = element.get("id").and_then(Value::as_str).ok_or_else(|| {
                    IngestError::field(format!("{path}/id"), "expected a string id")
                })?;
                let sets = match element.get("sets") {
                    Some(v) => string_list(v, &format!("{path}/sets"))?,
                    None => Vec::new(),
                };
                let mut unique = Vec::new();
                for set in sets {
                    let set = set.trim().to_owned();
                    if unique.contains(&set) {
                        warnings.push(format!(
                            "set `{set}` listed more than once for element `{id}`"
                        ));
                        continue;
                    }
                    if !explicit_names && known.insert(set.clone()) {
                        names.push(set.clone());
                    }
                    unique.push(set);
                }
                ids.push(id.to_owned());
                membership.push((id.to_owned(), unique));
            }
            SetDataset::new(ids, names, membership)
                .map_err(|e| IngestError::model(format!("{base}/elements"), e))?
        }
        _ => {
            return Err(IngestError::field(
                base,
                "expected either a `sets` object or an `elements` array",
            ))
        }
    };

    Ok(Parsed {
        value: dataset,
        warnings,
    })
}

fn escape_pointer(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Reads a dataset file; `.json` files (or content starting with `{`) are
/// parsed as JSON, everything else as CSV.
pub fn load_dataset(path: &Path) -> Result<Parsed<SetDataset>, IngestError> {
    let bytes = std::fs::read(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{');
    if is_json {
        parse_dataset_json(&bytes)
    } else {
        Ok(Parsed {
            value: parse_dataset_csv(&bytes)?,
            warnings: Vec::new(),
        })
    }
}

/// Where the dataset of a config document lives.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Inline(Value),
    File(PathBuf),
}

/// The configuration document as written, before validation against a
/// dataset.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawConfigDocument {
    pub data: Option<DataSource>,
    pub visible_sets: Option<Vec<String>>,
    pub sort_by: Option<SortBy>,
    pub sort_order: Option<SortOrder>,
    pub direction: Option<Direction>,
    pub title: Option<String>,
    pub caption: Option<String>,
    pub item_label: Option<ItemLabel>,
    pub set_noun: Option<String>,
    pub top_k: Option<usize>,
    /// `aggregation`, `attributes` and `queries`, verbatim.
    pub unsupported: BTreeMap<String, Value>,
    /// Keys this crate does not know, verbatim.
    pub unknown: BTreeMap<String, Value>,
}

fn opt_string(obj: &Map<String, Value>, key: &str) -> Result<Option<String>, IngestError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(IngestError::field(format!("/{key}"), "expected a string")),
    }
}

/// Parses the config document without looking at the dataset.
pub fn parse_config_document(bytes: &[u8]) -> Result<Parsed<RawConfigDocument>, IngestError> {
    config_document_from_value(parse_json(bytes)?)
}

pub fn config_document_from_value(value: Value) -> Result<Parsed<RawConfigDocument>, IngestError> {
    let obj = match value {
        Value::Object(obj) => obj,
        _ => return Err(IngestError::field("", "expected a configuration object")),
    };
    let mut doc = RawConfigDocument::default();
    let mut warnings = Vec::new();

    doc.data = match obj.get("data") {
        None | Some(Value::Null) => None,
        Some(Value::String(path)) => Some(DataSource::File(PathBuf::from(path))),
        Some(v @ Value::Object(_)) => Some(DataSource::Inline(v.clone())),
        Some(_) => {
            return Err(IngestError::field(
                "/data",
                "expected an object or a file path",
            ))
        }
    };
    doc.visible_sets = match obj.get("visibleSets") {
        None | Some(Value::Null) => None,
        Some(v) => Some(string_list(v, "/visibleSets")?),
    };
    doc.sort_by = opt_string(&obj, "sortBy")?
        .map(|s| match s.as_str() {
            "size" => Ok(SortBy::Size),
            "degree" => Ok(SortBy::Degree),
            _ => Err(IngestError::UnknownSortKey(s)),
        })
        .transpose()?;
    doc.sort_order = opt_string(&obj, "sortOrder")?
        .map(|s| match s.as_str() {
            "ascending" => Ok(SortOrder::Ascending),
            "descending" => Ok(SortOrder::Descending),
            _ => Err(IngestError::UnknownSortOrder(s)),
        })
        .transpose()?;
    doc.direction = opt_string(&obj, "direction")?
        .map(|s| match s.as_str() {
            "horizontal" => Ok(Direction::Horizontal),
            "vertical" => Ok(Direction::Vertical),
            _ => Err(IngestError::UnknownDirection(s)),
        })
        .transpose()?;
    doc.title = opt_string(&obj, "title")?;
    doc.caption = opt_string(&obj, "caption")?;
    doc.set_noun = opt_string(&obj, "setNoun")?;
    doc.item_label = match obj.get("itemLabel") {
        None | Some(Value::Null) => None,
        Some(Value::Object(label)) => {
            let singular = label.get("singular").and_then(Value::as_str);
            let plural = label.get("plural").and_then(Value::as_str);
            match (singular, plural) {
                (Some(s), Some(p)) => Some(ItemLabel::new(s, p)),
                _ => {
                    return Err(IngestError::field(
                        "/itemLabel",
                        "expected `singular` and `plural` strings",
                    ))
                }
            }
        }
        Some(_) => return Err(IngestError::field("/itemLabel", "expected an object")),
    };
    doc.top_k = match obj.get("topK") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| IngestError::field("/topK", "expected a non-negative integer"))?
                as usize,
        ),
    };

    for (key, value) in &obj {
        if TOLERATED_KEYS.contains(&key.as_str()) {
            warnings.push(format!("{key} not used in descriptions"));
            doc.unsupported.insert(key.clone(), value.clone());
        } else if !KNOWN_KEYS.contains(&key.as_str()) {
            warnings.push(format!("unknown key `{key}` ignored"));
            doc.unknown.insert(key.clone(), value.clone());
        }
    }

    Ok(Parsed {
        value: doc,
        warnings,
    })
}

impl RawConfigDocument {
    /// Validated plot config for `dataset`. A missing `visibleSets` shows
    /// every set in dataset order.
    pub fn to_config(&self, dataset: &SetDataset) -> Result<PlotConfig, IngestError> {
        let config = PlotConfig {
            visible_sets: self
                .visible_sets
                .clone()
                .unwrap_or_else(|| dataset.set_names().to_vec()),
            sort_by: self.sort_by.unwrap_or_default(),
            sort_order: self.sort_order.unwrap_or_default(),
            direction: self.direction.unwrap_or_default(),
            title: self.title.clone(),
            caption: self.caption.clone(),
            top_k: self.top_k.unwrap_or(DEFAULT_TOP_K),
            unsupported: self.unsupported.clone(),
        };
        let visible = config.visible_sets.clone();
        config.validate(dataset).map_err(|e| {
            let path = match &e {
                ModelError::UnknownVisibleSet(name) | ModelError::DuplicateVisibleSet(name) => {
                    match visible.iter().rposition(|v| v.trim() == name) {
                        Some(i) => format!("/visibleSets/{i}"),
                        None => "/visibleSets".into(),
                    }
                }
                ModelError::EmptyVisibleSets => "/visibleSets".into(),
                ModelError::TopKOutOfRange(_) => "/topK".into(),
                _ => String::new(),
            };
            IngestError::model(path, e)
        })
    }

    /// Copies the item label and set noun onto the dataset.
    pub fn label_dataset(&self, dataset: SetDataset) -> SetDataset {
        dataset
            .with_item_label(self.item_label.clone())
            .with_set_noun(self.set_noun.clone())
    }
}

/// Parses and validates a config document against `dataset`.
pub fn parse_config(bytes: &[u8], dataset: &SetDataset) -> Result<Parsed<PlotConfig>, IngestError> {
    let Parsed { value, warnings } = parse_config_document(bytes)?;
    Ok(Parsed {
        value: value.to_config(dataset)?,
        warnings,
    })
}

/// Serializes a dataset as a CSV membership matrix.
pub fn dataset_to_csv(dataset: &SetDataset) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("id").chain(dataset.set_names().iter().map(String::as_str));
    writer.write_record(header).expect("in-memory write");
    for element in 0..dataset.len() {
        let member_of = dataset.memberships(element);
        let cells =
            (0..dataset.set_names().len()).map(|s| if member_of.contains(&s) { "1" } else { "0" });
        writer
            .write_record(std::iter::once(dataset.element_ids()[element].as_str()).chain(cells))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Serializes a dataset in the elements form.
pub fn dataset_to_json(dataset: &SetDataset) -> Value {
    let elements: Vec<Value> = dataset
        .iter()
        .map(|(id, sets)| serde_json::json!({"id": id, "sets": sets}))
        .collect();
    serde_json::json!({"setNames": dataset.set_names(), "elements": elements})
}

/// Serializes a dataset in the sets form.
pub fn dataset_to_sets_json(dataset: &SetDataset) -> Value {
    let mut sets = Map::new();
    for name in dataset.set_names() {
        sets.insert(name.clone(), Value::Array(Vec::new()));
    }
    for (id, member_of) in dataset.iter() {
        for set in member_of {
            if let Some(Value::Array(list)) = sets.get_mut(set) {
                list.push(Value::String(id.to_owned()));
            }
        }
    }
    serde_json::json!({"sets": sets, "elementIds": dataset.element_ids()})
}

/// Serializes a validated config back into the document format.
pub fn config_to_json(config: &PlotConfig, dataset: &SetDataset) -> Value {
    let mut obj = Map::new();
    obj.insert("visibleSets".into(), serde_json::json!(config.visible_sets));
    obj.insert("sortBy".into(), serde_json::json!(config.sort_by));
    obj.insert("sortOrder".into(), serde_json::json!(config.sort_order));
    obj.insert("direction".into(), serde_json::json!(config.direction));
    if let Some(t) = &config.title {
        obj.insert("title".into(), t.clone().into());
    }
    if let Some(c) = &config.caption {
        obj.insert("caption".into(), c.clone().into());
    }
    if let Some(label) = dataset.item_label() {
        obj.insert("itemLabel".into(), serde_json::json!(label));
    }
    if let Some(noun) = dataset.set_noun() {
        obj.insert("setNoun".into(), noun.into());
    }
    obj.insert("topK".into(), config.top_k.into());
    for (k, v) in &config.unsupported {
        obj.insert(k.clone(), v.clone());
    }
    Value::Object(obj)
}
