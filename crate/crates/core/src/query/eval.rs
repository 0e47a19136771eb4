use std::borrow::Cow;
use std::collections::HashMap;

use crate::inference::rdfs_closure;
use crate::model::{Graph, Term};
use crate::query::{Inference, PatternTerm, Query, QueryError, ResultSet, Solution, TriplePattern};

/// Evaluates `query` against `graph`, or against its RDFS closure.
///
/// Patterns are joined left to right; each partial solution is substituted
/// into the next pattern and the bound positions drive an index lookup.
/// Rows are sorted so results are reproducible.
pub fn evaluate(graph: &Graph, query: &Query, inference: Inference) -> Result<ResultSet, QueryError> {
    let target: Cow<'_, Graph> = match inference {
        Inference::None => Cow::Borrowed(graph),
        Inference::Rdfs => Cow::Owned(rdfs_closure(graph)),
    };

    let vars = query.pattern_variables();
    let slot: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let header = query.projected_variables();
    let columns = header
        .iter()
        .map(|v| slot.get(v.as_str()).copied().ok_or_else(|| QueryError::UnboundVariable(v.clone())))
        .collect::<Result<Vec<_>, _>>()?;

    let mut partial: Vec<Vec<Option<Term>>> = vec![vec![None; vars.len()]];
    for pattern in query.patterns() {
        partial = extend(&target, pattern, &slot, partial);
        if partial.is_empty() {
            break;
        }
    }

    let mut rows: Vec<Solution> = partial
        .into_iter()
        .map(|binding| {
            Solution(
                columns
                    .iter()
                    .map(|&c| binding[c].clone().expect("every pattern variable is bound after the join"))
                    .collect(),
            )
        })
        .collect();
    rows.sort();
    if query.distinct() {
        rows.dedup();
    }
    Ok(ResultSet {
        variables: header,
        rows,
    })
}

fn extend(
    graph: &Graph,
    pattern: &TriplePattern,
    slot: &HashMap<&str, usize>,
    partial: Vec<Vec<Option<Term>>>,
) -> Vec<Vec<Option<Term>>> {
    let mut out = Vec::new();
    for binding in partial {
        let resolve = |p: &PatternTerm| -> Option<Term> {
            match p {
                PatternTerm::Term(t) => Some(t.clone()),
                PatternTerm::Var(v) => binding[slot[v.as_str()]].clone(),
            }
        };
        let [s, p, o] = pattern.positions().map(resolve);
        for triple in graph.triples_matching(s.as_ref(), p.as_ref(), o.as_ref()) {
            let mut next = binding.clone();
            let consistent = pattern
                .positions()
                .into_iter()
                .zip(triple.terms())
                .all(|(position, term)| match position {
                    PatternTerm::Term(_) => true,
                    PatternTerm::Var(v) => {
                        let cell = &mut next[slot[v.as_str()]];
                        match cell {
                            Some(existing) => existing == term,
                            None => {
                                *cell = Some(term.clone());
                                true
                            }
                        }
                    }
                });
            if consistent {
                out.push(next);
            }
        }
    }
    out
}
