//! Knowledge graph engine: an indexed RDF triple store with Turtle and
//! N-Triples IO, rule-based RDFS and OWL-RL-style reasoning under the
//! open-world assumption without unique names, frame-based knowledge with
//! inheritance, and conjunctive graph-pattern queries.

pub mod error;
pub mod frames;
pub mod graph;
pub mod io;
pub mod pattern;
pub mod prefix;
pub mod query;
pub mod reason;
pub mod term;
pub mod vocab;

pub use error::ModelError;
pub use graph::{Graph, IdTriple, TermId};
pub use pattern::{Binding, PatternTerm, TriplePattern};
pub use prefix::PrefixMap;
pub use term::{Literal, LiteralKind, Term, Triple};
