//! SHACL-core validation: class targets and single-predicate property
//! shapes with `sh:datatype`, `sh:minCount`, `sh:maxCount`,
//! `sh:minInclusive`, `sh:maxInclusive` and `sh:message`.
//!
//! Every violation is reported at violation severity.

pub mod numeric;
mod shapes;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::inference::rdfs_closure;
use crate::model::{Graph, Iri, Term};
use crate::query::Inference;
use crate::vocab::rdf;

pub use shapes::{parse_shapes, Bound, Message, NodeShape, PropertyShape, ShapeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("property shape {0} has no sh:path")]
    MissingPath(String),
    #[error("node shape {0} has no sh:targetClass")]
    NoTarget(String),
    #[error("shape {shape}: {parameter} must be numeric, found {value}")]
    NonNumericBound {
        shape: String,
        parameter: &'static str,
        value: String,
    },
    #[error("shape {shape}: invalid {parameter} value {value}")]
    InvalidValue {
        shape: String,
        parameter: &'static str,
        value: String,
    },
    #[error("shape {shape}: {parameter} given more than once")]
    MultipleValues { shape: String, parameter: &'static str },
    #[error("shape {shape}: {detail}")]
    EmptyRange { shape: String, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    MinCount,
    MaxCount,
    Datatype,
    MinInclusive,
    MaxInclusive,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Component::MinCount => "MinCount",
            Component::MaxCount => "MaxCount",
            Component::Datatype => "Datatype",
            Component::MinInclusive => "MinInclusive",
            Component::MaxInclusive => "MaxInclusive",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationResult {
    pub focus_node: Term,
    pub path: Iri,
    pub value: Option<Term>,
    pub source_shape: Term,
    pub component: Component,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub conforms: bool,
    pub results: Vec<ValidationResult>,
}

impl ValidationReport {
    fn from_results(results: Vec<ValidationResult>) -> Self {
        ValidationReport {
            conforms: results.is_empty(),
            results,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn results_for<'a>(&'a self, focus: &'a Term) -> impl Iterator<Item = &'a ValidationResult> + 'a {
        self.results.iter().filter(move |r| &r.focus_node == focus)
    }
}

/// Focus nodes of `shape`: subjects asserted `rdf:type` of a target class.
pub fn focus_nodes<'g>(data: &'g Graph, shape: &NodeShape) -> BTreeSet<&'g Term> {
    let rdf_type = Term::iri(rdf::TYPE).expect("vocabulary constant");
    let mut nodes = BTreeSet::new();
    for class in &shape.target_classes {
        let class = Term::Iri(class.clone());
        for t in data.triples_matching(None, Some(&rdf_type), Some(&class)) {
            nodes.insert(t.subject());
        }
    }
    nodes
}

/// Validates `data` against `shapes` with no entailment.
pub fn validate(data: &Graph, shapes: &[NodeShape]) -> ValidationReport {
    let mut results = Vec::new();
    for shape in shapes {
        for focus in focus_nodes(data, shape) {
            for property in &shape.property_shapes {
                check_property(data, focus, property, &mut results);
            }
        }
    }
    ValidationReport::from_results(results)
}

/// Like [`validate`], optionally closing the data graph under RDFS first.
pub fn validate_with(data: &Graph, shapes: &[NodeShape], inference: Inference) -> ValidationReport {
    match inference {
        Inference::None => validate(data, shapes),
        Inference::Rdfs => validate(&rdfs_closure(data), shapes),
    }
}

fn default_message(component: Component, property: &PropertyShape, found: usize) -> String {
    let path = property.path.as_str();
    match component {
        Component::MinCount => format!(
            "{component}: expected at least {} value(s) of <{path}>, found {found}",
            property.min_count.unwrap_or_default()
        ),
        Component::MaxCount => format!(
            "{component}: expected at most {} value(s) of <{path}>, found {found}",
            property.max_count.unwrap_or_default()
        ),
        Component::Datatype => format!(
            "{component}: value of <{path}> must have datatype <{}>",
            property.datatype.as_ref().map_or("", Iri::as_str)
        ),
        Component::MinInclusive => format!(
            "{component}: value of <{path}> must be >= {}",
            property.min_inclusive.as_ref().map_or("", |b| b.literal.lexical())
        ),
        Component::MaxInclusive => format!(
            "{component}: value of <{path}> must be <= {}",
            property.max_inclusive.as_ref().map_or("", |b| b.literal.lexical())
        ),
    }
}

fn check_property(data: &Graph, focus: &Term, property: &PropertyShape, out: &mut Vec<ValidationResult>) {
    let path = Term::Iri(property.path.clone());
    let values: Vec<&Term> = {
        let mut v: Vec<&Term> = data.objects(focus, &path).collect();
        v.sort();
        v
    };
    let mut emit = |component: Component, value: Option<&Term>| {
        let message = property
            .message
            .as_ref()
            .map(|m| m.text.clone())
            .unwrap_or_else(|| default_message(component, property, values.len()));
        out.push(ValidationResult {
            focus_node: focus.clone(),
            path: property.path.clone(),
            value: value.cloned(),
            source_shape: property.id.clone(),
            component,
            message,
        });
    };

    if property.min_count.is_some_and(|min| (values.len() as u64) < min) {
        emit(Component::MinCount, None);
    }
    if property.max_count.is_some_and(|max| (values.len() as u64) > max) {
        emit(Component::MaxCount, None);
    }
    if let Some(dt) = &property.datatype {
        for v in &values {
            let ok = v
                .as_literal()
                .is_some_and(|l| l.datatype() == dt && numeric::lexical_ok(l));
            if !ok {
                emit(Component::Datatype, Some(v));
            }
        }
    }
    let numeric_of = |v: &Term| v.as_literal().and_then(numeric::numeric_value);
    if let Some(min) = &property.min_inclusive {
        for v in &values {
            let ok = numeric_of(v)
                .and_then(|n| n.compare(&min.value))
                .is_some_and(|o| o != Ordering::Less);
            if !ok {
                emit(Component::MinInclusive, Some(v));
            }
        }
    }
    if let Some(max) = &property.max_inclusive {
        for v in &values {
            let ok = numeric_of(v)
                .and_then(|n| n.compare(&max.value))
                .is_some_and(|o| o != Ordering::Greater);
            if !ok {
                emit(Component::MaxInclusive, Some(v));
            }
        }
    }
}
