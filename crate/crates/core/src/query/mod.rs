//! SELECT queries over basic graph patterns.
//!
//! The grammar covers `PREFIX`, `SELECT [DISTINCT] ?v... | *`, and a
//! `WHERE { ... }` block of triple patterns using `;`, `,`, `a` and typed or
//! language-tagged literals. No FILTER, OPTIONAL, UNION or property paths.

mod eval;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::Term;
use crate::turtle::ParseError;

pub use eval::evaluate;
pub use parser::{parse_query, parse_query_with};

/// Whether to evaluate against the asserted graph or its RDFS closure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inference {
    #[default]
    None,
    Rdfs,
}

impl std::str::FromStr for Inference {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Inference::None),
            "rdfs" => Ok(Inference::Rdfs),
            other => Err(format!("unknown inference mode {other:?} (expected none or rdfs)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("line {line}, column {column}: unresolved prefix {prefix:?}")]
    UnresolvedPrefix { prefix: String, line: usize, column: usize },
    #[error("projected variable ?{0} does not occur in any pattern")]
    UnboundVariable(String),
    #[error("a query needs at least one triple pattern")]
    EmptyPattern,
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Term(Term),
    /// Case-sensitive variable name, without the leading `?`.
    Var(String),
}

impl PatternTerm {
    pub fn var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Term(t) => t.fmt(f),
            PatternTerm::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Vars(Vec<String>),
}

/// A parsed SELECT query with all prefixed names already expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    prefixes: BTreeMap<String, String>,
    projection: Projection,
    distinct: bool,
    patterns: Vec<TriplePattern>,
}

impl Query {
    pub fn new(
        prefixes: BTreeMap<String, String>,
        projection: Projection,
        distinct: bool,
        patterns: Vec<TriplePattern>,
    ) -> Result<Self, QueryError> {
        if patterns.is_empty() {
            return Err(QueryError::EmptyPattern);
        }
        for p in &patterns {
            if matches!(&p.subject, PatternTerm::Term(t) if t.is_literal()) {
                return Err(QueryError::InvalidPattern(format!("literal {} in subject position", p.subject)));
            }
            if matches!(&p.predicate, PatternTerm::Term(t) if !t.is_iri()) {
                return Err(QueryError::InvalidPattern(format!("{} in predicate position", p.predicate)));
            }
        }
        let query = Query {
            prefixes,
            projection,
            distinct,
            patterns,
        };
        let vars = query.pattern_variables();
        if let Projection::Vars(projected) = &query.projection {
            if let Some(missing) = projected.iter().find(|v| !vars.contains(v)) {
                return Err(QueryError::UnboundVariable(missing.clone()));
            }
        }
        Ok(query)
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    pub fn distinct(&self) -> bool {
        self.distinct
    }

    pub fn patterns(&self) -> &[TriplePattern] {
        &self.patterns
    }

    /// Variables in order of first appearance in the patterns.
    pub fn pattern_variables(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for p in &self.patterns {
            for v in p.positions().into_iter().filter_map(PatternTerm::var) {
                if !seen.iter().any(|s: &String| s == v) {
                    seen.push(v.to_owned());
                }
            }
        }
        seen
    }

    /// The result header: the SELECT list, or every pattern variable for `*`.
    pub fn projected_variables(&self) -> Vec<String> {
        match &self.projection {
            Projection::All => self.pattern_variables(),
            Projection::Vars(v) => v.clone(),
        }
    }
}

/// One result row, aligned with [`ResultSet::variables`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution(pub Vec<Term>);

impl Solution {
    pub fn values(&self) -> &[Term] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultSet {
    pub variables: Vec<String>,
    pub rows: Vec<Solution>,
}

impl ResultSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The binding of `var` in row `row`.
    pub fn get(&self, row: usize, var: &str) -> Option<&Term> {
        let col = self.variables.iter().position(|v| v == var)?;
        self.rows.get(row).map(|r| &r.0[col])
    }

    /// Rows as variable → canonical term string maps.
    pub fn to_string_rows(&self) -> Vec<BTreeMap<String, String>> {
        self.rows
            .iter()
            .map(|row| {
                self.variables
                    .iter()
                    .cloned()
                    .zip(row.0.iter().map(Term::to_string))
                    .collect()
            })
            .collect()
    }
}
