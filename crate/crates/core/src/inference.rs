//! RDFS-lite forward chaining.
//!
//! Materializes the transitive closure of `rdfs:subClassOf` and
//! `rdfs:subPropertyOf`, and propagates `rdf:type` along the class
//! hierarchy. Reflexive `C subClassOf C` triples are never added.
//! OWL constructs are left as plain triples.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::model::{Graph, Iri, Term, Triple};
use crate::vocab::{rdf, rdfs};

/// The input graph plus everything derivable under the rules above.
pub fn rdfs_closure(graph: &Graph) -> Graph {
    let mut closed = graph.clone();
    let sub_class = iri(rdfs::SUB_CLASS_OF);
    let sub_property = iri(rdfs::SUB_PROPERTY_OF);
    let rdf_type = iri(rdf::TYPE);

    transitive_closure(&mut closed, &sub_class);
    transitive_closure(&mut closed, &sub_property);

    let supers = successors(&closed, &sub_class);
    let derived: Vec<Triple> = closed
        .triples_matching(None, Some(&rdf_type), None)
        .flat_map(|t| {
            supers
                .get(t.object())
                .into_iter()
                .flatten()
                .map(|sup| Triple::new(t.subject().clone(), rdf_type.clone(), sup.clone()))
        })
        .filter_map(Result::ok)
        .collect();
    for t in derived {
        closed.insert(t);
    }
    closed
}

fn iri(s: &str) -> Term {
    Term::Iri(Iri::new(s).expect("vocabulary constant"))
}

fn successors(graph: &Graph, predicate: &Term) -> HashMap<Term, BTreeSet<Term>> {
    let mut map: HashMap<Term, BTreeSet<Term>> = HashMap::new();
    for t in graph.triples_matching(None, Some(predicate), None) {
        map.entry(t.subject().clone())
            .or_default()
            .insert(t.object().clone());
    }
    map
}

/// Semi-naive transitive closure of one predicate, in place.
///
/// Each round joins only the triples derived in the previous round
/// against the full relation, in both directions.
fn transitive_closure(graph: &mut Graph, predicate: &Term) {
    let mut forward: HashMap<Term, HashSet<Term>> = HashMap::new();
    let mut backward: HashMap<Term, HashSet<Term>> = HashMap::new();
    let mut delta: Vec<(Term, Term)> = Vec::new();
    for t in graph.triples_matching(None, Some(predicate), None) {
        let (s, o) = (t.subject().clone(), t.object().clone());
        forward.entry(s.clone()).or_default().insert(o.clone());
        backward.entry(o.clone()).or_default().insert(s.clone());
        delta.push((s, o));
    }

    while !delta.is_empty() {
        let mut fresh: Vec<(Term, Term)> = Vec::new();
        for (a, b) in &delta {
            // a ⊑ b, b ⊑ c  =>  a ⊑ c
            for c in forward.get(b).into_iter().flatten() {
                fresh.push((a.clone(), c.clone()));
            }
            // x ⊑ a, a ⊑ b  =>  x ⊑ b
            for x in backward.get(a).into_iter().flatten() {
                fresh.push((x.clone(), b.clone()));
            }
        }
        delta.clear();
        for (s, o) in fresh {
            // literal subjects cannot chain
            if s == o || s.is_literal() {
                continue;
            }
            if forward.entry(s.clone()).or_default().insert(o.clone()) {
                backward.entry(o.clone()).or_default().insert(s.clone());
                delta.push((s, o));
            }
        }
    }

    for (s, objects) in forward {
        for o in objects {
            if let Ok(t) = Triple::new(s.clone(), predicate.clone(), o) {
                graph.insert(t);
            }
        }
    }
}
