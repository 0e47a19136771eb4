use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::model::{BlankNode, ModelError, Term, Triple};

type TripleId = usize;

/// A deduplicated set of triples with a prefix map and subject, predicate
/// and object indices.
///
/// Iteration follows insertion order. A graph is mutated while it is built
/// and then shared read-only.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    slots: Vec<Option<Triple>>,
    ids: HashMap<Triple, TripleId>,
    by_subject: HashMap<Term, BTreeSet<TripleId>>,
    by_predicate: HashMap<Term, BTreeSet<TripleId>>,
    by_object: HashMap<Term, BTreeSet<TripleId>>,
    prefixes: BTreeMap<String, String>,
    next_blank: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Inserts a triple, returning `true` if it was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.ids.contains_key(&triple) {
            return false;
        }
        for term in triple.terms() {
            if let Some(n) = term.as_blank().and_then(BlankNode::allocation_index) {
                self.next_blank = self.next_blank.max(n + 1);
            }
        }
        let id = self.slots.len();
        self.by_subject
            .entry(triple.subject().clone())
            .or_default()
            .insert(id);
        self.by_predicate
            .entry(triple.predicate().clone())
            .or_default()
            .insert(id);
        self.by_object
            .entry(triple.object().clone())
            .or_default()
            .insert(id);
        self.ids.insert(triple.clone(), id);
        self.slots.push(Some(triple));
        true
    }

    /// Builds and inserts a triple from its parts.
    pub fn add(&mut self, subject: Term, predicate: Term, object: Term) -> Result<bool, ModelError> {
        Ok(self.insert(Triple::new(subject, predicate, object)?))
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        let Some(id) = self.ids.remove(triple) else {
            return false;
        };
        self.slots[id] = None;
        for (index, term) in [
            (&mut self.by_subject, triple.subject()),
            (&mut self.by_predicate, triple.predicate()),
            (&mut self.by_object, triple.object()),
        ] {
            if let Some(set) = index.get_mut(term) {
                set.remove(&id);
                if set.is_empty() {
                    index.remove(term);
                }
            }
        }
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.ids.contains_key(triple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.slots.iter().flatten()
    }

    /// Triples agreeing with every bound position; `None` is a wildcard.
    ///
    /// Candidates come from the smallest index among the bound positions.
    pub fn triples_matching<'g: 'q, 'q>(
        &'g self,
        subject: Option<&'q Term>,
        predicate: Option<&'q Term>,
        object: Option<&'q Term>,
    ) -> Box<dyn Iterator<Item = &'g Triple> + 'q> {
        let lookups = [
            subject.map(|t| self.by_subject.get(t)),
            predicate.map(|t| self.by_predicate.get(t)),
            object.map(|t| self.by_object.get(t)),
        ];
        let mut best: Option<&BTreeSet<TripleId>> = None;
        for lookup in lookups.into_iter().flatten() {
            match lookup {
                // a bound term absent from its index: nothing can match
                None => return Box::new(std::iter::empty()),
                Some(set) if best.is_none_or(|b| set.len() < b.len()) => best = Some(set),
                Some(_) => {}
            }
        }
        let agrees = move |t: &&Triple| {
            subject.is_none_or(|s| t.subject() == s)
                && predicate.is_none_or(|p| t.predicate() == p)
                && object.is_none_or(|o| t.object() == o)
        };
        match best {
            None => Box::new(self.iter()),
            Some(ids) => Box::new(
                ids.iter()
                    .filter_map(move |&id| self.slots[id].as_ref())
                    .filter(agrees),
            ),
        }
    }

    /// Objects of `(subject, predicate, ?)`.
    pub fn objects<'g: 'q, 'q>(&'g self, subject: &'q Term, predicate: &'q Term) -> impl Iterator<Item = &'g Term> + 'q {
        self.triples_matching(Some(subject), Some(predicate), None)
            .map(Triple::object)
    }

    /// Subjects of `(?, predicate, object)`.
    pub fn subjects<'g: 'q, 'q>(&'g self, predicate: &'q Term, object: &'q Term) -> impl Iterator<Item = &'g Term> + 'q {
        self.triples_matching(None, Some(predicate), Some(object))
            .map(Triple::subject)
    }

    /// Every distinct term in any position, sorted.
    pub fn terms(&self) -> BTreeSet<&Term> {
        self.iter().flat_map(|t| t.terms()).collect()
    }

    /// Allocates a blank node label unused in this graph.
    pub fn fresh_blank(&mut self) -> BlankNode {
        let b = BlankNode::allocated(self.next_blank);
        self.next_blank += 1;
        b
    }

    /// Adds all triples of `other`, relabelling its blank nodes apart from
    /// this graph's. Prefixes are copied unless the label is already bound.
    pub fn merge(&mut self, other: &Graph) {
        let mut relabel: HashMap<&BlankNode, BlankNode> = HashMap::new();
        for triple in other.iter() {
            let [s, o] = [triple.subject(), triple.object()].map(|term| match term {
                Term::Blank(b) => Term::Blank(
                    relabel
                        .entry(b)
                        .or_insert_with(|| {
                            let fresh = BlankNode::allocated(self.next_blank);
                            self.next_blank += 1;
                            fresh
                        })
                        .clone(),
                ),
                t => t.clone(),
            });
            let t = Triple::new(s, triple.predicate().clone(), o).expect("relabelled triple keeps its shape");
            self.insert(t);
        }
        for (label, ns) in &other.prefixes {
            self.prefixes.entry(label.clone()).or_insert_with(|| ns.clone());
        }
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, label: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(label.into(), namespace.into());
    }

    /// Expands `label:local` against the prefix map.
    pub fn expand(&self, prefixed: &str) -> Result<String, ModelError> {
        expand_with(&self.prefixes, prefixed)
    }

    /// The shortest `label:local` form of `iri` whose local part is a safe
    /// prefixed-name local, if any registered namespace covers it.
    pub fn compact(&self, iri: &str) -> Option<String> {
        compact_with(&self.prefixes, iri)
    }
}

pub(crate) fn expand_with(prefixes: &BTreeMap<String, String>, prefixed: &str) -> Result<String, ModelError> {
    let (label, local) = prefixed
        .split_once(':')
        .ok_or_else(|| ModelError::NotPrefixed(prefixed.to_owned()))?;
    let ns = prefixes
        .get(label)
        .ok_or_else(|| ModelError::UnresolvedPrefix(label.to_owned()))?;
    Ok(format!("{ns}{local}"))
}

pub(crate) fn compact_with(prefixes: &BTreeMap<String, String>, iri: &str) -> Option<String> {
    prefixes
        .iter()
        .filter_map(|(label, ns)| {
            let local = iri.strip_prefix(ns.as_str())?;
            is_safe_local(local).then(|| format!("{label}:{local}"))
        })
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
}

/// Local names the Turtle lexer reads back unchanged.
pub(crate) fn is_safe_local(local: &str) -> bool {
    if local.is_empty() {
        return true;
    }
    local.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !local.starts_with(['.', '-'])
        && !local.ends_with('.')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Literal;
    use crate::vocab::{owl, rdf, xsd, MSLE_NS};

    fn iri(s: &str) -> Term {
        Term::iri(s).unwrap()
    }

    fn msle(local: &str) -> Term {
        iri(&format!("{MSLE_NS}{local}"))
    }

    #[test]
    fn insert_is_set_semantic() {
        let mut g = Graph::new();
        let t = Triple::new(msle("SEM"), iri(rdf::TYPE), iri(owl::CLASS)).unwrap();
        assert!(g.insert(t.clone()));
        assert_eq!(g.len(), 1);
        assert!(!g.insert(t));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn malformed_triples_are_rejected() {
        let mut g = Graph::new();
        let lit = Term::Literal(Literal::integer(35));
        assert!(g.add(lit, iri(rdf::TYPE), msle("x")).is_err());
        assert!(g.is_empty());
    }

    #[test]
    fn matching_uses_every_position() {
        let mut g = Graph::new();
        let zeiss = msle("Zeiss_Auriga_60");
        let ht = msle("hasHighTension");
        let int = crate::model::Iri::new(xsd::INTEGER).unwrap();
        g.add(zeiss.clone(), ht.clone(), Literal::typed("35", int).unwrap().into())
            .unwrap();
        g.add(zeiss.clone(), iri(rdf::TYPE), msle("Dual_Beam")).unwrap();
        g.add(msle("FEI_Strata_400s"), iri(rdf::TYPE), msle("Dual_Beam"))
            .unwrap();

        assert_eq!(g.triples_matching(Some(&zeiss), None, None).count(), 2);
        assert_eq!(g.triples_matching(None, Some(&iri(rdf::TYPE)), None).count(), 2);
        assert_eq!(g.triples_matching(None, None, Some(&msle("Dual_Beam"))).count(), 2);
        assert_eq!(
            g.triples_matching(Some(&zeiss), Some(&iri(rdf::TYPE)), Some(&msle("Dual_Beam")))
                .count(),
            1
        );
        assert_eq!(g.triples_matching(Some(&msle("nothing")), None, None).count(), 0);
        assert_eq!(g.triples_matching(None, None, None).count(), 3);
        assert_eq!(Graph::new().triples_matching(None, None, None).count(), 0);
    }

    #[test]
    fn remove_keeps_indices_consistent() {
        let mut g = Graph::new();
        let t = Triple::new(msle("a"), msle("p"), msle("b")).unwrap();
        g.insert(t.clone());
        assert!(g.remove(&t));
        assert!(!g.remove(&t));
        assert!(g.is_empty());
        assert_eq!(g.triples_matching(Some(&msle("a")), None, None).count(), 0);
        assert!(g.insert(t));
        assert_eq!(g.objects(&msle("a"), &msle("p")).count(), 1);
    }

    #[test]
    fn expand_and_compact() {
        let mut g = Graph::new();
        g.set_prefix("MSLE", MSLE_NS);
        g.set_prefix("xsd", xsd::NS);
        assert_eq!(
            g.expand("MSLE:Dual_Beam").unwrap(),
            "http://www.semanticweb.org/hr7456/ontologies/2021/8/MSLE#Dual_Beam"
        );
        assert_eq!(g.expand("xsd:integer").unwrap(), "http://www.w3.org/2001/XMLSchema#integer");
        match g.expand("nope:x") {
            Err(ModelError::UnresolvedPrefix(label)) => assert_eq!(label, "nope"),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(g.compact(xsd::INTEGER).as_deref(), Some("xsd:integer"));
        assert_eq!(g.compact("http://elsewhere.org/x"), None);
    }

    #[test]
    fn merge_relabels_blank_nodes() {
        let mut a = Graph::new();
        let b0 = a.fresh_blank();
        a.add(b0.into(), msle("p"), msle("o")).unwrap();
        let mut b = Graph::new();
        let other = b.fresh_blank();
        b.add(other.into(), msle("p"), msle("o")).unwrap();
        b.set_prefix("MSLE", MSLE_NS);
        a.merge(&b);
        assert_eq!(a.len(), 2);
        assert!(a.prefixes().contains_key("MSLE"));
    }

    #[test]
    fn inserted_labels_advance_allocator() {
        let mut g = Graph::new();
        g.add(BlankNode::new("b7").unwrap().into(), msle("p"), msle("o"))
            .unwrap();
        assert_eq!(g.fresh_blank().as_str(), "b8");
    }
}
