//! Knowledge-graph toolkit for the MSLE materials-science lab-equipment
//! ontology.
//!
//! The crate bundles an in-memory RDF graph with Turtle I/O, a basic graph
//! pattern SELECT engine, RDFS subclass/type closure, a SHACL-core
//! validator, SKOS label lookup and the ontology maturity metrics
//! (competency-question pass rate, constraint-based and real-world
//! completeness). The MSLE ontology itself ships in [`dataset`].

pub mod dataset;
pub mod inference;
pub mod maturity;
pub mod model;
pub mod query;
pub mod shacl;
pub mod skos;
pub mod turtle;
pub mod vocab;

pub use model::{isomorphic, BlankNode, Graph, Iri, Literal, ModelError, Term, Triple};
pub use query::{evaluate, parse_query, Inference, Query, QueryError, ResultSet, Solution};
pub use turtle::{parse_turtle, serialize_turtle, ParseError};
