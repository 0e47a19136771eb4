//! SKOS label and definition lookup.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::{Graph, Iri, Term};
use crate::vocab::{owl, rdf, skos, MSLE_NS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Pref,
    Alt,
    Hidden,
}

impl LabelKind {
    pub const ALL: [LabelKind; 3] = [LabelKind::Pref, LabelKind::Alt, LabelKind::Hidden];

    pub fn predicate(self) -> &'static str {
        match self {
            LabelKind::Pref => skos::PREF_LABEL,
            LabelKind::Alt => skos::ALT_LABEL,
            LabelKind::Hidden => skos::HIDDEN_LABEL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LabelEntry {
    pub concept: Iri,
    pub kind: LabelKind,
    pub text: String,
    pub lang: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    Exact,
    Substring,
}

fn iri(s: &str) -> Term {
    Term::iri(s).expect("vocabulary constant")
}

/// Label triples of `concept`, pref before alt before hidden.
///
/// With `lang` given, only labels tagged with that language are kept.
pub fn labels_of(graph: &Graph, concept: &Iri, lang: Option<&str>) -> Vec<LabelEntry> {
    let subject = Term::Iri(concept.clone());
    let lang = lang.map(str::to_ascii_lowercase);
    let mut out = Vec::new();
    for kind in LabelKind::ALL {
        let mut entries: Vec<LabelEntry> = graph
            .objects(&subject, &iri(kind.predicate()))
            .filter_map(Term::as_literal)
            .filter(|l| lang.is_none() || l.language() == lang.as_deref())
            .map(|l| LabelEntry {
                concept: concept.clone(),
                kind,
                text: l.lexical().to_owned(),
                lang: l.language().map(str::to_owned),
            })
            .collect();
        entries.sort_by(|a, b| (&a.lang, &a.text).cmp(&(&b.lang, &b.text)));
        out.extend(entries);
    }
    out
}

fn fold(s: &str) -> String {
    s.to_lowercase()
}

/// Concepts with any pref, alt or hidden label matching `text`,
/// case-insensitively, in IRI order.
pub fn find_by_label(graph: &Graph, text: &str, mode: MatchMode) -> Vec<Iri> {
    let needle = fold(text);
    if needle.is_empty() {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    for kind in LabelKind::ALL {
        let p = iri(kind.predicate());
        for t in graph.triples_matching(None, Some(&p), None) {
            let (Some(concept), Some(label)) = (t.subject().as_iri(), t.object().as_literal()) else {
                continue;
            };
            let hay = fold(label.lexical());
            let hit = match mode {
                MatchMode::Exact => hay == needle,
                MatchMode::Substring => hay.contains(&needle),
            };
            if hit {
                found.insert(concept.clone());
            }
        }
    }
    found.into_iter().collect()
}

/// The `skos:definition` of `concept`: in `lang` if available, then
/// English, then untagged, then any other.
pub fn definition_of(graph: &Graph, concept: &Iri, lang: Option<&str>) -> Option<String> {
    let subject = Term::Iri(concept.clone());
    let wanted = lang.map(str::to_ascii_lowercase);
    graph
        .objects(&subject, &iri(skos::DEFINITION))
        .filter_map(Term::as_literal)
        .min_by_key(|l| {
            let tag = l.language();
            let rank = if wanted.is_some() && tag == wanted.as_deref() {
                0
            } else if tag == Some("en") {
                1
            } else if tag.is_none() {
                2
            } else {
                3
            };
            (rank, tag.map(str::to_owned), l.lexical().to_owned())
        })
        .map(|l| l.lexical().to_owned())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum LintIssue {
    DuplicatePrefLabel { concept: Iri, lang: Option<String>, count: usize },
    MissingEnglishPrefLabel { concept: Iri },
    MissingDefinition { concept: Iri },
}

/// Label hygiene: at most one prefLabel per concept and language, and
/// every `owl:Class` in `namespace` has an English prefLabel and a
/// definition.
pub fn lint(graph: &Graph, namespace: &str) -> Vec<LintIssue> {
    let mut issues = Vec::new();
    let pref = iri(skos::PREF_LABEL);
    let mut per_lang: BTreeMap<(Iri, Option<String>), usize> = BTreeMap::new();
    for t in graph.triples_matching(None, Some(&pref), None) {
        if let (Some(c), Some(l)) = (t.subject().as_iri(), t.object().as_literal()) {
            *per_lang.entry((c.clone(), l.language().map(str::to_owned))).or_default() += 1;
        }
    }
    for ((concept, lang), count) in per_lang {
        if count > 1 {
            issues.push(LintIssue::DuplicatePrefLabel { concept, lang, count });
        }
    }
    for class in classes_in(graph, namespace) {
        if labels_of(graph, &class, Some("en")).iter().all(|e| e.kind != LabelKind::Pref) {
            issues.push(LintIssue::MissingEnglishPrefLabel { concept: class.clone() });
        }
        if definition_of(graph, &class, None).is_none() {
            issues.push(LintIssue::MissingDefinition { concept: class });
        }
    }
    issues.sort();
    issues
}

/// IRIs in `namespace` declared `owl:Class`.
pub fn classes_in(graph: &Graph, namespace: &str) -> BTreeSet<Iri> {
    graph
        .subjects(&iri(rdf::TYPE), &iri(owl::CLASS))
        .filter_map(Term::as_iri)
        .filter(|c| c.as_str().starts_with(namespace))
        .cloned()
        .collect()
}

/// [`lint`] over the MSLE namespace.
pub fn lint_msle(graph: &Graph) -> Vec<LintIssue> {
    lint(graph, MSLE_NS)
}
