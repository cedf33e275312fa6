//! End-to-end pipeline shared by the CLI and the HTTP service.

pub mod cli;
pub mod http;

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{self, DataSource, IngestError, Parsed, RawConfigDocument};
use crate::model::{ModelError, PlotConfig, SetDataset, MAX_TOP_K, MIN_TOP_K};
use crate::patterns;
use crate::textgen::{self, DescriptionDocument, DescriptionOptions, TemplateError};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The JSON schema of the configuration document.
pub const CONFIG_SCHEMA: &str = include_str!("../../schema/upset-config.schema.json");

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error("{message}")]
    InvalidArgument { name: String, message: String },
}

/// How an error should be reported to a client.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unreadable or malformed input.
    BadInput,
    /// Well-formed input describing an impossible plot.
    Semantic,
    Internal,
}

fn model_kind(e: &ModelError) -> ErrorKind {
    match e {
        ModelError::DuplicateElement(_)
        | ModelError::DuplicateSet(_)
        | ModelError::EmptySetName
        | ModelError::UnknownSetInMembership(_) => ErrorKind::BadInput,
        ModelError::UnknownVisibleSet(_)
        | ModelError::DuplicateVisibleSet(_)
        | ModelError::EmptyVisibleSets
        | ModelError::TopKOutOfRange(_)
        | ModelError::EmptyDataset => ErrorKind::Semantic,
    }
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ingest(e) => e.code(),
            Error::Model(e) => e.code(),
            Error::Template(_) => "TemplateError",
            Error::InvalidArgument { .. } => "InvalidArgument",
        }
    }

    pub fn path(&self) -> String {
        match self {
            Error::Ingest(e) => e.path(),
            Error::Model(ModelError::TopKOutOfRange(_)) => "topK".into(),
            Error::Model(_) | Error::Template(_) => String::new(),
            Error::InvalidArgument { name, .. } => name.clone(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Ingest(IngestError::Model { source, .. }) | Error::Model(source) => {
                model_kind(source)
            }
            Error::Ingest(
                IngestError::UnknownSortKey(_)
                | IngestError::UnknownSortOrder(_)
                | IngestError::UnknownDirection(_),
            ) => ErrorKind::Semantic,
            Error::Ingest(_) | Error::InvalidArgument { .. } => ErrorKind::BadInput,
            Error::Template(_) => ErrorKind::Internal,
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            code: self.code().to_owned(),
            message: self.to_string(),
            path: self.path(),
        }
    }
}

/// Structured error shared by the HTTP responses and the CLI's stderr line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DescriptionResponse {
    pub short_description: String,
    pub long_description: String,
    pub warnings: Vec<String>,
    pub engine_version: String,
}

impl From<DescriptionDocument> for DescriptionResponse {
    fn from(doc: DescriptionDocument) -> Self {
        DescriptionResponse {
            short_description: doc.short_text,
            long_description: doc.long_markdown,
            warnings: doc.warnings,
            engine_version: ENGINE_VERSION.to_owned(),
        }
    }
}

/// A labelled dataset with a config validated against it.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub dataset: SetDataset,
    pub config: PlotConfig,
    pub warnings: Vec<String>,
}

/// Where the dataset comes from when the config does not say.
#[derive(Debug, Clone, Copy)]
pub enum DataPolicy<'a> {
    /// Read this file, ignoring any `data` entry in the config.
    File(&'a std::path::Path),
    /// Use the config's `data`; file references resolve against this directory.
    FromConfig { base_dir: &'a std::path::Path },
    /// Use the config's inline `data` only.
    InlineOnly,
}

/// Loads dataset and config. `config` is the raw config document, if any.
pub fn prepare(config: Option<&[u8]>, data: DataPolicy<'_>) -> Result<Prepared, Error> {
    let Parsed {
        value: doc,
        mut warnings,
    } = match config {
        Some(bytes) => ingest::parse_config_document(bytes)?,
        None => Parsed {
            value: RawConfigDocument::default(),
            warnings: Vec::new(),
        },
    };

    let parsed = match (data, &doc.data) {
        (DataPolicy::File(path), _) => ingest::load_dataset(path)?,
        (_, None) => return Err(IngestError::MissingData.into()),
        (_, Some(DataSource::Inline(value))) => ingest::dataset_from_value(value, "/data")?,
        (DataPolicy::InlineOnly, Some(DataSource::File(_))) => {
            return Err(IngestError::FileReferenceNotAllowed.into())
        }
        (DataPolicy::FromConfig { base_dir }, Some(DataSource::File(path))) => {
            ingest::load_dataset(&base_dir.join(path))?
        }
    };
    warnings.extend(parsed.warnings);

    let dataset = doc.label_dataset(parsed.value);
    let config = doc.to_config(&dataset)?;
    Ok(Prepared {
        dataset,
        config,
        warnings,
    })
}

/// Runs analysis and text generation.
pub fn describe(
    dataset: &SetDataset,
    config: &PlotConfig,
    options: &DescriptionOptions,
) -> Result<DescriptionDocument, Error> {
    if let Some(k) = options.top_k {
        if !(MIN_TOP_K..=MAX_TOP_K).contains(&k) {
            return Err(ModelError::TopKOutOfRange(k).into());
        }
    }
    let report = patterns::analyze(dataset, config)?;
    Ok(textgen::describe(&report, config, options)?)
}

pub fn describe_prepared(
    prepared: &Prepared,
    options: &DescriptionOptions,
) -> Result<DescriptionDocument, Error> {
    let mut doc = describe(&prepared.dataset, &prepared.config, options)?;
    let mut warnings = prepared.warnings.clone();
    warnings.append(&mut doc.warnings);
    doc.warnings = warnings;
    Ok(doc)
}
