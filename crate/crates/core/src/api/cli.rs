//! Batch command line.
//!
//! Exit codes: 0 on success, 2 for bad input (one JSON error line on
//! stderr), 1 for anything else.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::http::ServiceConfig;
use super::{DataPolicy, Error, ErrorBody, ErrorKind};
use crate::textgen::{self, DescriptionOptions, Verbosity};

#[derive(Debug, Parser)]
#[command(
    name = "upset-alttext",
    version,
    about = "Generate text descriptions of UpSet plots",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    describe: DescribeArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the HTTP service (BIND_ADDR, MAX_BODY_BYTES).
    Serve {
        /// Overrides BIND_ADDR.
        #[arg(long)]
        bind: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerbosityArg {
    Short,
    Long,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Markdown,
    Text,
}

#[derive(Debug, clap::Args)]
struct DescribeArgs {
    /// Dataset file (CSV membership matrix or JSON).
    #[arg(long, value_name = "PATH")]
    data: Option<PathBuf>,
    /// Plot configuration document (JSON).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    verbosity: VerbosityArg,
    /// Render long-description sentences as list items (default).
    #[arg(long, overrides_with = "no_bullets")]
    bullets: bool,
    #[arg(long = "no-bullets")]
    no_bullets: bool,
    /// Append the glossary to the long description (default).
    #[arg(long, overrides_with = "no_glossary")]
    glossary: bool,
    #[arg(long = "no-glossary")]
    no_glossary: bool,
    /// Number of largest intersections to list (5 to 10).
    #[arg(long = "top-k", value_name = "N")]
    top_k: Option<usize>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn fail(stderr: &mut dyn Write, body: &ErrorBody, code: i32) -> i32 {
    let line = serde_json::to_string(body).unwrap_or_else(|_| body.message.clone());
    let _ = writeln!(stderr, "{line}");
    code
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default();
            let body = ErrorBody {
                code: "InvalidArgument".into(),
                message: first.trim_start_matches("error: ").to_owned(),
                path: String::new(),
            };
            return fail(stderr, &body, 2);
        }
    };

    match cli.command {
        Some(Command::Serve { bind }) => serve(bind, stderr),
        None => describe(cli.describe, stdout, stderr),
    }
}

fn serve(bind: Option<String>, stderr: &mut dyn Write) -> i32 {
    let mut config = match ServiceConfig::from_env() {
        Ok(c) => c,
        Err(message) => {
            let body = ErrorBody {
                code: "InvalidArgument".into(),
                message,
                path: "MAX_BODY_BYTES".into(),
            };
            return fail(stderr, &body, 2);
        }
    };
    if let Some(bind) = bind {
        config.bind_addr = bind;
    }
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return 1;
        }
    };
    match runtime.block_on(super::http::serve(config)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            1
        }
    }
}

fn describe(args: DescribeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let rendered = match render(&args) {
        Ok(text) => text,
        Err(e) => {
            let code = if e.kind() == ErrorKind::Internal {
                1
            } else {
                2
            };
            return fail(stderr, &e.body(), code);
        }
    };
    let written = match &args.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => stdout.write_all(rendered.as_bytes()),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let body = ErrorBody {
                code: "OutputError".into(),
                message: e.to_string(),
                path: args
                    .output
                    .map(|p| p.display().to_string())
                    .unwrap_or_default(),
            };
            fail(stderr, &body, 1)
        }
    }
}

fn render(args: &DescribeArgs) -> Result<String, Error> {
    let config_bytes = match &args.config {
        Some(path) => {
            Some(
                std::fs::read(path).map_err(|source| crate::ingest::IngestError::Io {
                    path: path.display().to_string(),
                    source,
                })?,
            )
        }
        None => None,
    };
    let base_dir = args
        .config
        .as_deref()
        .and_then(Path::parent)
        .unwrap_or(Path::new("."));
    let policy = match &args.data {
        Some(path) => DataPolicy::File(path),
        None if config_bytes.is_some() => DataPolicy::FromConfig { base_dir },
        None => {
            return Err(Error::InvalidArgument {
                name: "--data".into(),
                message: "missing required flag --data".into(),
            })
        }
    };
    let prepared = match super::prepare(config_bytes.as_deref(), policy) {
        Err(Error::Ingest(crate::ingest::IngestError::MissingData)) => {
            return Err(Error::InvalidArgument {
                name: "--data".into(),
                message: "missing required flag --data (the configuration has no data either)"
                    .into(),
            })
        }
        other => other?,
    };

    let options = DescriptionOptions {
        verbosity: Verbosity::Long,
        bullets: !args.no_bullets,
        glossary: !args.no_glossary,
        top_k: args.top_k,
    };
    let doc = super::describe_prepared(&prepared, &options)?;

    let convert = |s: &str| match args.format {
        Format::Markdown => s.to_owned(),
        Format::Text => textgen::to_plain_text(s),
    };
    let mut out = match args.verbosity {
        VerbosityArg::Short => convert(&doc.short_text),
        VerbosityArg::Long => convert(&doc.long_markdown),
        VerbosityArg::Both => format!(
            "{}\n\n{}",
            convert(&doc.short_text),
            convert(&doc.long_markdown)
        ),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}
