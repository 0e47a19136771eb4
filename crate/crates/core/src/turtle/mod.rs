//! The Turtle subset used by the bundled ontology files.
//!
//! Supported: `@prefix`/`PREFIX`, prefixed names, `<absolute IRIs>`, `a`,
//! predicate lists (`;`), object lists (`,`), `[ ... ]` and `_:label` blank
//! nodes, quoted strings with `@lang` or `^^datatype`, bare integer,
//! decimal, double and boolean literals, and `#` comments. Collections
//! and long strings are not.

pub(crate) mod lexer;
mod parser;
mod serializer;

pub(crate) use parser::resolve_iri;
pub use parser::{parse_turtle, parse_turtle_into};
pub use serializer::{format_term, serialize_turtle};

/// A syntax error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message} (at {snippet:?})")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub snippet: String,
}
