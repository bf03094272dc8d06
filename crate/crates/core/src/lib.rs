//! SHACL validation as model checking.
//!
//! A data graph is read as a first-order interpretation over the infinite
//! set of all node names. Shapes are evaluated over a finite interpretation
//! whose domain is the graph's nodes, the schema's constants, and one
//! symbolic element that stands for every other node.

pub mod cli;
pub mod error;
pub mod eval;
pub mod gen;
pub mod import;
pub mod model;
pub mod natural;
pub mod reference;
pub mod report;
pub mod text;

pub use error::{Error, Result, SourceLocation};
