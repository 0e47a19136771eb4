//! Ontology maturity metrics: competency-question pass rate,
//! constraint-based completeness and real-world completeness.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::model::{Graph, Iri, Term};
use crate::query::{evaluate, parse_query_with, Inference};
use crate::shacl::{focus_nodes, validate, NodeShape};

/// Variable name to canonical term string.
pub type Row = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CqCase {
    pub id: String,
    pub question: String,
    pub query: String,
    #[serde(default)]
    pub inference: Inference,
    pub expected: Vec<Row>,
    /// The expected result is deliberately empty.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub negative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CqSuite {
    #[serde(default)]
    pub prefixes: BTreeMap<String, String>,
    pub cases: Vec<CqCase>,
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("invalid suite JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate case id {0:?}")]
    DuplicateId(String),
}

impl CqSuite {
    pub fn from_json(text: &str) -> Result<Self, SuiteError> {
        let suite: CqSuite = serde_json::from_str(text)?;
        let mut ids = HashSet::new();
        for case in &suite.cases {
            if !ids.insert(case.id.as_str()) {
                return Err(SuiteError::DuplicateId(case.id.clone()));
            }
        }
        Ok(suite)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite serializes")
    }
}

/// An exact ratio in `[0, 1]`. An empty denominator scores 1 and is
/// flagged vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Score {
    pub ratio: Ratio<u64>,
    pub vacuous: bool,
}

impl Score {
    pub fn of(numerator: u64, denominator: u64) -> Self {
        if denominator == 0 {
            Score {
                ratio: Ratio::from_integer(1),
                vacuous: true,
            }
        } else {
            Score {
                ratio: Ratio::new(numerator.min(denominator), denominator),
                vacuous: false,
            }
        }
    }

    pub fn value(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            numerator: u64,
            denominator: u64,
            value: f64,
            vacuous: bool,
        }
        Repr {
            numerator: *self.ratio.numer(),
            denominator: *self.ratio.denom(),
            value: self.value(),
            vacuous: self.vacuous,
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseVerdict {
    pub id: String,
    pub passed: bool,
    pub missing: Vec<Row>,
    pub unexpected: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CqReport {
    pub total: usize,
    pub passed: usize,
    pub pass_rate: Score,
    pub cases: Vec<CaseVerdict>,
}

/// Term string used when comparing results: the canonical form, except
/// that every blank node renders as `[]`.
pub fn canonical_term(term: &Term) -> String {
    match term {
        Term::Blank(_) => "[]".to_owned(),
        other => other.to_string(),
    }
}

fn run_case(graph: &Graph, rdfs: &Graph, prefixes: &BTreeMap<String, String>, case: &CqCase) -> CaseVerdict {
    let fail = |error: String| CaseVerdict {
        id: case.id.clone(),
        passed: false,
        missing: case.expected.clone(),
        unexpected: Vec::new(),
        error: Some(error),
    };
    let query = match parse_query_with(&case.query, prefixes) {
        Ok(q) => q,
        Err(e) => return fail(e.to_string()),
    };
    let header: BTreeSet<String> = query.projected_variables().into_iter().collect();
    if let Some(row) = case.expected.iter().find(|r| r.keys().cloned().collect::<BTreeSet<_>>() != header) {
        return fail(format!(
            "expected row binds {:?} but the query projects {:?}",
            row.keys().collect::<Vec<_>>(),
            header
        ));
    }
    let target = match case.inference {
        Inference::None => graph,
        Inference::Rdfs => rdfs,
    };
    let results = match evaluate(target, &query, Inference::None) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let actual: BTreeSet<Row> = results
        .rows
        .iter()
        .map(|row| {
            results
                .variables
                .iter()
                .cloned()
                .zip(row.0.iter().map(canonical_term))
                .collect()
        })
        .collect();
    let expected: BTreeSet<Row> = case.expected.iter().cloned().collect();
    let missing: Vec<Row> = expected.difference(&actual).cloned().collect();
    let unexpected: Vec<Row> = actual.difference(&expected).cloned().collect();
    CaseVerdict {
        id: case.id.clone(),
        passed: missing.is_empty() && unexpected.is_empty(),
        missing,
        unexpected,
        error: None,
    }
}

/// Runs every case; a case passes iff its result set equals the expected
/// set. Cases that fail to parse are failed with the error attached.
pub fn run_cq_suite(graph: &Graph, suite: &CqSuite) -> CqReport {
    let needs_closure = suite.cases.iter().any(|c| c.inference == Inference::Rdfs);
    let closed = if needs_closure {
        crate::inference::rdfs_closure(graph)
    } else {
        Graph::new()
    };
    let mut prefixes = graph.prefixes().clone();
    prefixes.extend(suite.prefixes.iter().map(|(k, v)| (k.clone(), v.clone())));
    let cases: Vec<CaseVerdict> = suite
        .cases
        .iter()
        .map(|c| run_case(graph, &closed, &prefixes, c))
        .collect();
    let passed = cases.iter().filter(|c| c.passed).count();
    CqReport {
        total: cases.len(),
        passed,
        pass_rate: Score::of(passed as u64, cases.len() as u64),
        cases,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassCompleteness {
    pub focus_nodes: usize,
    pub conforming: usize,
    pub score: Score,
}

/// Per target class, the share of its focus nodes with no validation
/// result at all.
pub fn constraint_completeness(data: &Graph, shapes: &[NodeShape]) -> BTreeMap<Iri, ClassCompleteness> {
    let report = validate(data, shapes);
    let violating: HashSet<&Term> = report.results.iter().map(|r| &r.focus_node).collect();
    let mut nodes: BTreeMap<Iri, BTreeSet<&Term>> = BTreeMap::new();
    for shape in shapes {
        for class in &shape.target_classes {
            let single = NodeShape {
                id: shape.id.clone(),
                target_classes: vec![class.clone()],
                property_shapes: Vec::new(),
            };
            nodes.entry(class.clone()).or_default().extend(focus_nodes(data, &single));
        }
    }
    nodes
        .into_iter()
        .map(|(class, focus)| {
            let conforming = focus.iter().filter(|n| !violating.contains(**n)).count();
            let entry = ClassCompleteness {
                focus_nodes: focus.len(),
                conforming,
                score: Score::of(conforming as u64, focus.len() as u64),
            };
            (class, entry)
        })
        .collect()
}

/// One expert-supplied count: how many entities exist in reality, and a
/// query whose distinct rows count those represented in the ontology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealWorldSpec {
    pub label: String,
    pub count_query: String,
    pub actual: u64,
}

impl RealWorldSpec {
    pub fn list_from_json(text: &str) -> Result<Vec<Self>, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealWorldEntry {
    pub count: Option<u64>,
    pub actual: u64,
    pub score: Option<Score>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// `min(1, distinct rows / actual)` per entry. Entries whose query fails
/// or whose `actual` is zero are marked erroneous.
pub fn realworld_completeness(data: &Graph, specs: &[RealWorldSpec]) -> BTreeMap<String, RealWorldEntry> {
    specs
        .iter()
        .map(|spec| {
            let erroneous = |error: String| RealWorldEntry {
                count: None,
                actual: spec.actual,
                score: None,
                error: Some(error),
            };
            let entry = if spec.actual == 0 {
                erroneous("actual count must be positive".to_owned())
            } else {
                match parse_query_with(&spec.count_query, data.prefixes())
                    .and_then(|q| evaluate(data, &q, Inference::None))
                {
                    Ok(rs) => {
                        let count = rs.rows.iter().collect::<HashSet<_>>().len() as u64;
                        RealWorldEntry {
                            count: Some(count),
                            actual: spec.actual,
                            score: Some(Score::of(count, spec.actual)),
                            error: None,
                        }
                    }
                    Err(e) => erroneous(e.to_string()),
                }
            };
            (spec.label.clone(), entry)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaturityReport {
    pub cq: CqReport,
    pub constraint_completeness: BTreeMap<Iri, ClassCompleteness>,
    pub realworld_completeness: BTreeMap<String, RealWorldEntry>,
}

pub fn maturity_report(
    data: &Graph,
    suite: &CqSuite,
    shapes: &[NodeShape],
    realworld: &[RealWorldSpec],
) -> MaturityReport {
    MaturityReport {
        cq: run_cq_suite(data, suite),
        constraint_completeness: constraint_completeness(data, shapes),
        realworld_completeness: realworld_completeness(data, realworld),
    }
}
