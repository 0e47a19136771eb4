//! The bundled MSLE ontology: schema, lab instances, alignment to SSN and
//! MatVoc, SHACL shapes, competency questions and real-world counts.
//!
//! Files are embedded at compile time; [`load_dir`] reads the same layout
//! from disk instead.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::maturity::{CqSuite, RealWorldSpec, SuiteError};
use crate::model::Graph;
use crate::shacl::{parse_shapes, ShapeError, ShapeSet};
use crate::turtle::{parse_turtle, ParseError};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Every embedded file, by name relative to the data directory.
pub const BUNDLED: &[(&str, &str)] = &[
    (MANIFEST_FILE, include_str!("../data/manifest.json")),
    ("msle-schema.ttl", include_str!("../data/msle-schema.ttl")),
    ("msle-instances.ttl", include_str!("../data/msle-instances.ttl")),
    ("msle-alignment.ttl", include_str!("../data/msle-alignment.ttl")),
    ("msle-shapes.ttl", include_str!("../data/msle-shapes.ttl")),
    ("msle-cq.json", include_str!("../data/msle-cq.json")),
    ("msle-realworld.json", include_str!("../data/msle-realworld.json")),
    ("fixtures/high-tension-data.ttl", include_str!("../data/fixtures/high-tension-data.ttl")),
    ("fixtures/high-tension-repaired.ttl", include_str!("../data/fixtures/high-tension-repaired.ttl")),
];

pub fn bundled_text(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// The embedded Turtle files, in [`BUNDLED`] order.
pub fn bundled_turtle() -> impl Iterator<Item = (&'static str, &'static str)> {
    BUNDLED.iter().copied().filter(|(n, _)| n.ends_with(".ttl"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Schema,
    Instances,
    Alignment,
    Shapes,
    CqSuite,
    Realworld,
}

impl Role {
    pub fn is_data(self) -> bool {
        matches!(self, Role::Schema | Role::Instances | Role::Alignment)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub role: Role,
    /// Number of triples, for Turtle files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub files: Vec<ManifestEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetErrorKind {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Turtle(#[from] ParseError),
    #[error(transparent)]
    Shapes(#[from] ShapeError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("expected {expected} triples, found {found}")]
    TripleCount { expected: usize, found: usize },
    #[error("manifest lists no {0:?} file")]
    MissingRole(Role),
    #[error("file is not embedded")]
    NotBundled,
}

/// A load failure, naming the offending file.
#[derive(Debug, thiserror::Error)]
#[error("{file}: {kind}")]
pub struct DatasetError {
    pub file: String,
    #[source]
    pub kind: DatasetErrorKind,
}

impl DatasetError {
    fn new(file: &str, kind: impl Into<DatasetErrorKind>) -> Self {
        DatasetError {
            file: file.to_owned(),
            kind: kind.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub manifest: Manifest,
    /// Schema, instances and alignment merged.
    pub data: Graph,
    pub shapes_graph: Graph,
    pub shapes: ShapeSet,
    pub suite: CqSuite,
    pub realworld: Vec<RealWorldSpec>,
}

pub fn load_bundled() -> Result<Dataset, DatasetError> {
    load_with(|name| bundled_text(name).map(str::to_owned).ok_or(DatasetErrorKind::NotBundled))
}

/// Loads a data directory laid out like the bundled one.
pub fn load_dir(dir: &Path) -> Result<Dataset, DatasetError> {
    load_with(|name| std::fs::read_to_string(dir.join(name)).map_err(DatasetErrorKind::from))
}

fn load_with(read: impl Fn(&str) -> Result<String, DatasetErrorKind>) -> Result<Dataset, DatasetError> {
    let text = |name: &str| read(name).map_err(|k| DatasetError::new(name, k));
    let manifest: Manifest =
        serde_json::from_str(&text(MANIFEST_FILE)?).map_err(|e| DatasetError::new(MANIFEST_FILE, e))?;

    let turtle = |entry: &ManifestEntry| -> Result<Graph, DatasetError> {
        let graph = parse_turtle(&text(&entry.path)?).map_err(|e| DatasetError::new(&entry.path, e))?;
        match entry.triple_count {
            Some(expected) if expected != graph.len() => Err(DatasetError::new(
                &entry.path,
                DatasetErrorKind::TripleCount {
                    expected,
                    found: graph.len(),
                },
            )),
            _ => Ok(graph),
        }
    };
    let first = |role: Role| {
        manifest
            .files
            .iter()
            .find(|e| e.role == role)
            .ok_or_else(|| DatasetError::new(MANIFEST_FILE, DatasetErrorKind::MissingRole(role)))
    };

    let mut data = Graph::new();
    for entry in manifest.files.iter().filter(|e| e.role.is_data()) {
        data.merge(&turtle(entry)?);
    }

    let shapes_entry = first(Role::Shapes)?;
    let shapes_graph = turtle(shapes_entry)?;
    let shapes = parse_shapes(&shapes_graph).map_err(|e| DatasetError::new(&shapes_entry.path, e))?;

    let suite_entry = first(Role::CqSuite)?;
    let suite = CqSuite::from_json(&text(&suite_entry.path)?).map_err(|e| DatasetError::new(&suite_entry.path, e))?;

    let realworld = match manifest.files.iter().find(|e| e.role == Role::Realworld) {
        Some(entry) => RealWorldSpec::list_from_json(&text(&entry.path)?).map_err(|e| DatasetError::new(&entry.path, e))?,
        None => Vec::new(),
    };

    Ok(Dataset {
        manifest,
        data,
        shapes_graph,
        shapes,
        suite,
        realworld,
    })
}
