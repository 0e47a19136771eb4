//! Terms, triples and the indexed in-memory graph.

mod graph;
mod isomorphism;
mod term;

pub use graph::Graph;
pub(crate) use graph::compact_with;
pub use isomorphism::isomorphic;
pub(crate) use term::{escape_string, is_language_tag};
pub use term::{BlankNode, Iri, Literal, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid IRI {0:?}: must be non-empty and absolute")]
    InvalidIri(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankNode(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
    #[error("rdf:langString literals need a language tag")]
    LangStringWithoutTag,
    #[error("literal {0} cannot be a subject")]
    LiteralSubject(String),
    #[error("predicate {0} is not an IRI")]
    NonIriPredicate(String),
    #[error("unresolved prefix {0:?}")]
    UnresolvedPrefix(String),
    #[error("{0:?} is not a prefixed name")]
    NotPrefixed(String),
}
