//! `msle`: query, validate and assess the MSLE ontology from the shell.
//!
//! Exit status: 0 on success, 1 when validation, a competency question or
//! a completeness entry fails, 2 on usage, parse or I/O errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use msle_core::Inference;

#[derive(Parser)]
#[command(name = "msle", version, about = "MSLE ontology toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct DataArgs {
    /// Turtle data file; repeat to merge several. Defaults to the bundled MSLE data.
    #[arg(long = "data", short = 'd', value_name = "FILE")]
    pub data: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InferArg {
    None,
    Rdfs,
}

impl From<InferArg> for Inference {
    fn from(value: InferArg) -> Self {
        match value {
            InferArg::None => Inference::None,
            InferArg::Rdfs => Inference::Rdfs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a SELECT query.
    Query {
        #[command(flatten)]
        data: DataArgs,
        /// File holding the query; `-` reads standard input.
        #[arg(required_unless_present = "expr")]
        file: Option<PathBuf>,
        /// Query text given inline.
        #[arg(long, short = 'e', conflicts_with = "file")]
        expr: Option<String>,
        #[arg(long, value_enum, default_value = "none")]
        infer: InferArg,
        #[arg(long, value_enum, default_value = "table")]
        format: TableFormat,
    },
    /// Validate data against SHACL shapes.
    Validate {
        #[command(flatten)]
        data: DataArgs,
        /// Shapes file. Defaults to the bundled shapes.
        #[arg(long, short = 's')]
        shapes: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "none")]
        infer: InferArg,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Run a competency-question suite.
    Cq {
        #[command(flatten)]
        data: DataArgs,
        /// Suite file (JSON). Defaults to the bundled suite.
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Constraint-based and real-world completeness.
    Completeness {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, short = 's')]
        shapes: Option<PathBuf>,
        /// Real-world count spec (JSON). Defaults to the bundled spec.
        #[arg(long)]
        realworld: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Look up concepts by label, or list the labels of a concept.
    Label {
        #[command(flatten)]
        data: DataArgs,
        /// Label text, or a concept as <iri> or prefix:local.
        text: String,
        #[arg(long)]
        lang: Option<String>,
        /// Match label substrings instead of whole labels.
        #[arg(long)]
        substring: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Labels, definition, types, images and statements of one concept.
    Describe {
        #[command(flatten)]
        data: DataArgs,
        /// Concept as <iri> or prefix:local.
        iri: String,
        #[arg(long)]
        lang: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Rewrite a Turtle file in canonical form on standard output.
    Fmt {
        file: PathBuf,
        /// Report whether the file is already canonical instead of printing it.
        #[arg(long)]
        check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Query { data, file, expr, infer, format } => commands::query(&data, file, expr, infer.into(), format),
        Command::Validate { data, shapes, infer, format } => commands::validate(&data, shapes, infer.into(), format),
        Command::Cq { data, suite, format } => commands::cq(&data, suite, format),
        Command::Completeness { data, shapes, realworld, format } => {
            commands::completeness(&data, shapes, realworld, format)
        }
        Command::Label { data, text, lang, substring, format } => {
            commands::label(&data, &text, lang.as_deref(), substring, format)
        }
        Command::Describe { data, iri, lang, format } => commands::describe(&data, &iri, lang.as_deref(), format),
        Command::Fmt { file, check } => commands::fmt(&file, check),
    };
    match outcome {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("msle: {e}");
            ExitCode::from(2)
        }
    }
}
