use std::collections::BTreeSet;

use crate::model::{Graph, Iri, Literal, Term};
use crate::shacl::numeric::{numeric_value, Numeric};
use crate::shacl::ShapeError;
use crate::vocab::{rdf, sh};

/// A node shape: which focus nodes to check and what to check on them.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeShape {
    pub id: Term,
    pub target_classes: Vec<Iri>,
    pub property_shapes: Vec<PropertyShape>,
}

/// Constraints on the values of one predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyShape {
    pub id: Term,
    pub path: Iri,
    pub datatype: Option<Iri>,
    pub min_count: Option<u64>,
    pub max_count: Option<u64>,
    pub min_inclusive: Option<Bound>,
    pub max_inclusive: Option<Bound>,
    pub message: Option<Message>,
}

/// A range bound as written in the shapes graph, with its exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub literal: Literal,
    pub value: Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub text: String,
    pub lang: Option<String>,
}

/// Shapes read from a graph, plus warnings about ignored vocabulary.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ShapeSet {
    pub shapes: Vec<NodeShape>,
    pub warnings: Vec<String>,
}

const NODE_SHAPE_KEYS: &[&str] = &[sh::TARGET_CLASS, sh::PROPERTY];
const PROPERTY_SHAPE_KEYS: &[&str] = &[
    sh::PATH,
    sh::DATATYPE,
    sh::MIN_COUNT,
    sh::MAX_COUNT,
    sh::MIN_INCLUSIVE,
    sh::MAX_INCLUSIVE,
    sh::MESSAGE,
];

fn iri(s: &str) -> Term {
    Term::iri(s).expect("vocabulary constant")
}

/// Reads every `sh:NodeShape` in `shapes_graph`.
///
/// Unknown `sh:` predicates are skipped and reported in
/// [`ShapeSet::warnings`]; structural problems are errors.
pub fn parse_shapes(shapes_graph: &Graph) -> Result<ShapeSet, ShapeError> {
    let mut set = ShapeSet::default();
    let mut seen = BTreeSet::new();
    let node_shape = iri(sh::NODE_SHAPE);
    let rdf_type = iri(rdf::TYPE);
    let ids: Vec<Term> = shapes_graph
        .subjects(&rdf_type, &node_shape)
        .filter(|id| seen.insert((*id).clone()))
        .cloned()
        .collect();
    for id in ids {
        let shape = node_shape_at(shapes_graph, &id, &mut set.warnings)?;
        set.shapes.push(shape);
    }
    for w in &set.warnings {
        log::warn!("{w}");
    }
    Ok(set)
}

fn warn_unknown(graph: &Graph, node: &Term, known: &[&str], warnings: &mut Vec<String>) {
    for t in graph.triples_matching(Some(node), None, None) {
        let p = t.predicate().as_iri().expect("predicates are IRIs").as_str();
        if p.starts_with(sh::NS) && !known.contains(&p) {
            warnings.push(format!("shape {node}: ignoring unsupported predicate <{p}>"));
        }
    }
}

fn node_shape_at(graph: &Graph, id: &Term, warnings: &mut Vec<String>) -> Result<NodeShape, ShapeError> {
    warn_unknown(graph, id, NODE_SHAPE_KEYS, warnings);
    let mut target_classes = Vec::new();
    for t in graph.objects(id, &iri(sh::TARGET_CLASS)) {
        match t {
            Term::Iri(c) => target_classes.push(c.clone()),
            other => {
                return Err(ShapeError::InvalidValue {
                    shape: id.to_string(),
                    parameter: "sh:targetClass",
                    value: other.to_string(),
                })
            }
        }
    }
    if target_classes.is_empty() {
        return Err(ShapeError::NoTarget(id.to_string()));
    }
    let property_shapes = graph
        .objects(id, &iri(sh::PROPERTY))
        .cloned()
        .collect::<Vec<_>>()
        .iter()
        .map(|p| property_shape_at(graph, p, warnings))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NodeShape {
        id: id.clone(),
        target_classes,
        property_shapes,
    })
}

fn single<'g>(graph: &'g Graph, node: &'g Term, predicate: &'static str, name: &'static str) -> Result<Option<&'g Term>, ShapeError> {
    let p = iri(predicate);
    let mut values: Vec<&Term> = graph
        .triples_matching(Some(node), Some(&p), None)
        .map(|t| t.object())
        .collect();
    match values.len() {
        0 => Ok(None),
        1 => Ok(values.pop()),
        _ => Err(ShapeError::MultipleValues {
            shape: node.to_string(),
            parameter: name,
        }),
    }
}

fn count(node: &Term, value: Option<&Term>, name: &'static str) -> Result<Option<u64>, ShapeError> {
    let Some(v) = value else { return Ok(None) };
    let parsed = v
        .as_literal()
        .filter(|l| l.language().is_none())
        .and_then(|l| l.lexical().strip_prefix('+').unwrap_or(l.lexical()).parse::<u64>().ok());
    match parsed {
        Some(n) => Ok(Some(n)),
        None => Err(ShapeError::InvalidValue {
            shape: node.to_string(),
            parameter: name,
            value: v.to_string(),
        }),
    }
}

fn bound(node: &Term, value: Option<&Term>, name: &'static str) -> Result<Option<Bound>, ShapeError> {
    let Some(v) = value else { return Ok(None) };
    match v.as_literal().and_then(|l| numeric_value(l).map(|n| (l, n))) {
        Some((literal, value)) if value != Numeric::NaN => Ok(Some(Bound {
            literal: literal.clone(),
            value,
        })),
        _ => Err(ShapeError::NonNumericBound {
            shape: node.to_string(),
            parameter: name,
            value: v.to_string(),
        }),
    }
}

fn message(graph: &Graph, node: &Term) -> Option<Message> {
    let p = iri(sh::MESSAGE);
    let mut messages: Vec<Message> = graph
        .objects(node, &p)
        .filter_map(Term::as_literal)
        .map(|l| Message {
            text: l.lexical().to_owned(),
            lang: l.language().map(str::to_owned),
        })
        .collect();
    messages.sort_by_key(|m| {
        let rank = match m.lang.as_deref() {
            Some("en") => 0,
            None => 1,
            Some(_) => 2,
        };
        (rank, m.lang.clone(), m.text.clone())
    });
    messages.into_iter().next()
}

fn property_shape_at(graph: &Graph, id: &Term, warnings: &mut Vec<String>) -> Result<PropertyShape, ShapeError> {
    warn_unknown(graph, id, PROPERTY_SHAPE_KEYS, warnings);
    let path = match single(graph, id, sh::PATH, "sh:path")? {
        None => return Err(ShapeError::MissingPath(id.to_string())),
        Some(Term::Iri(p)) => p.clone(),
        Some(other) => {
            return Err(ShapeError::InvalidValue {
                shape: id.to_string(),
                parameter: "sh:path",
                value: other.to_string(),
            })
        }
    };
    let datatype = match single(graph, id, sh::DATATYPE, "sh:datatype")? {
        None => None,
        Some(Term::Iri(dt)) => Some(dt.clone()),
        Some(other) => {
            return Err(ShapeError::InvalidValue {
                shape: id.to_string(),
                parameter: "sh:datatype",
                value: other.to_string(),
            })
        }
    };
    let min_count = count(id, single(graph, id, sh::MIN_COUNT, "sh:minCount")?, "sh:minCount")?;
    let max_count = count(id, single(graph, id, sh::MAX_COUNT, "sh:maxCount")?, "sh:maxCount")?;
    let min_inclusive = bound(id, single(graph, id, sh::MIN_INCLUSIVE, "sh:minInclusive")?, "sh:minInclusive")?;
    let max_inclusive = bound(id, single(graph, id, sh::MAX_INCLUSIVE, "sh:maxInclusive")?, "sh:maxInclusive")?;

    if let (Some(lo), Some(hi)) = (min_count, max_count) {
        if lo > hi {
            return Err(ShapeError::EmptyRange {
                shape: id.to_string(),
                detail: format!("sh:minCount {lo} exceeds sh:maxCount {hi}"),
            });
        }
    }
    if let (Some(lo), Some(hi)) = (&min_inclusive, &max_inclusive) {
        if lo.value.compare(&hi.value) == Some(std::cmp::Ordering::Greater) {
            return Err(ShapeError::EmptyRange {
                shape: id.to_string(),
                detail: format!(
                    "sh:minInclusive {} exceeds sh:maxInclusive {}",
                    lo.literal.lexical(),
                    hi.literal.lexical()
                ),
            });
        }
    }

    Ok(PropertyShape {
        id: id.clone(),
        path,
        datatype,
        min_count,
        max_count,
        min_inclusive,
        max_inclusive,
        message: message(graph, id),
    })
}
