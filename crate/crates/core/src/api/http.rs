//! Stateless HTTP service.
//!
//! | route                        | response                                   |
//! |------------------------------|--------------------------------------------|
//! | `POST /api/v1/description`   | [`DescriptionResponse`] or [`ErrorBody`]   |
//! | `GET /api/v1/health`         | `ok`                                       |
//! | `GET /api/v1/schema`         | the config document schema                 |
//!
//! The request body is the configuration document with inline `data`.
//! Rendering options come as query parameters: `bullets`, `glossary` and
//! `topK`.

use std::collections::HashMap;
use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, Query};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};

use super::{DataPolicy, DescriptionResponse, Error, ErrorBody, ErrorKind, CONFIG_SCHEMA};
use crate::textgen::DescriptionOptions;

pub const DEFAULT_BIND_ADDR: &str = "127.0.0.1:8080";
pub const DEFAULT_MAX_BODY_BYTES: usize = 10 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceConfig {
    pub bind_addr: String,
    pub max_body_bytes: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            bind_addr: DEFAULT_BIND_ADDR.to_owned(),
            max_body_bytes: DEFAULT_MAX_BODY_BYTES,
        }
    }
}

impl ServiceConfig {
    /// Reads `BIND_ADDR` and `MAX_BODY_BYTES`, falling back to defaults.
    pub fn from_env() -> Result<Self, String> {
        let mut config = ServiceConfig::default();
        if let Ok(addr) = std::env::var("BIND_ADDR") {
            config.bind_addr = addr;
        }
        if let Ok(raw) = std::env::var("MAX_BODY_BYTES") {
            config.max_body_bytes = raw
                .trim()
                .parse()
                .map_err(|_| format!("MAX_BODY_BYTES must be a byte count, got `{raw}`"))?;
        }
        Ok(config)
    }
}

pub fn router(max_body_bytes: usize) -> Router {
    Router::new()
        .route("/api/v1/description", post(describe))
        .route("/api/v1/health", get(health))
        .route("/api/v1/schema", get(schema))
        .layer(DefaultBodyLimit::max(max_body_bytes))
}

/// Binds and serves until ctrl-c.
pub async fn serve(config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(&config.bind_addr).await?;
    let addr: SocketAddr = listener.local_addr()?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, router(config.max_body_bytes))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

async fn health() -> &'static str {
    "ok"
}

async fn schema() -> impl IntoResponse {
    (
        [(header::CONTENT_TYPE, "application/schema+json")],
        CONFIG_SCHEMA,
    )
}

fn error_response(status: StatusCode, body: ErrorBody) -> Response {
    (status, Json(body)).into_response()
}

impl IntoResponse for Error {
    fn into_response(self) -> Response {
        let status = match self.kind() {
            ErrorKind::BadInput => StatusCode::BAD_REQUEST,
            ErrorKind::Semantic => StatusCode::UNPROCESSABLE_ENTITY,
            ErrorKind::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        };
        error_response(status, self.body())
    }
}

fn parse_bool(name: &str, raw: &str) -> Result<bool, Error> {
    match raw {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(Error::InvalidArgument {
            name: name.to_owned(),
            message: format!("query parameter `{name}` must be true or false, got `{raw}`"),
        }),
    }
}

fn options_from_query(query: &HashMap<String, String>) -> Result<DescriptionOptions, Error> {
    let mut options = DescriptionOptions::default();
    if let Some(v) = query.get("bullets") {
        options.bullets = parse_bool("bullets", v)?;
    }
    if let Some(v) = query.get("glossary") {
        options.glossary = parse_bool("glossary", v)?;
    }
    if let Some(v) = query.get("topK") {
        options.top_k = Some(v.parse().map_err(|_| Error::InvalidArgument {
            name: "topK".into(),
            message: format!("query parameter `topK` must be an integer, got `{v}`"),
        })?);
    }
    Ok(options)
}

async fn describe(
    Query(query): Query<HashMap<String, String>>,
    body: Result<Bytes, BytesRejection>,
) -> Response {
    let body = match body {
        Ok(body) => body,
        Err(rejection) => {
            let status = rejection.status();
            let code = if status == StatusCode::PAYLOAD_TOO_LARGE {
                "PayloadTooLarge"
            } else {
                "UnreadableBody"
            };
            return error_response(
                status,
                ErrorBody {
                    code: code.into(),
                    message: rejection.body_text(),
                    path: String::new(),
                },
            );
        }
    };
    let options = match options_from_query(&query) {
        Ok(options) => options,
        Err(e) => return e.into_response(),
    };

    let result = tokio::task::spawn_blocking(move || {
        let prepared = super::prepare(Some(&body), DataPolicy::InlineOnly)?;
        super::describe_prepared(&prepared, &options)
    })
    .await;

    match result {
        Ok(Ok(doc)) => Json(DescriptionResponse::from(doc)).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(join) => error_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            ErrorBody {
                code: "Internal".into(),
                message: join.to_string(),
                path: String::new(),
            },
        ),
    }
}
