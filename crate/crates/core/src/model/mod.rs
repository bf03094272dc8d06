//! Domain types: names, path and shape expressions, schemas, graphs,
//! vocabularies and finite interpretations.

mod expr;
mod graph;
mod interp;
mod name;
mod schema;
mod vocab;

pub use expr::{desugar, PathExpr, ShapeExpr};
pub use graph::{nodes_of, Fact, Graph};
pub use interp::{DomainElement, FiniteInterpretation, InterpretationBuilder, Relation};
pub use name::{Name, NameKind, NodeName, PropName, ShapeName};
pub use schema::{dependency_order, ShapeSchema, Target};
pub use vocab::{vocabulary_of, Vocabulary};
