//! Concrete syntaxes: the shape DSL and the two graph formats.

mod dsl;
mod graph_formats;
mod serialize;

pub use dsl::{parse_path_expr, parse_schema, parse_shape_expr, KEYWORDS};
pub use graph_formats::{parse_graph, serialize_graph, GraphFormat};
pub use serialize::{
    dsl_name, is_bare_name, serialize_path, serialize_path_with, serialize_schema, serialize_shape,
    serialize_shape_with,
};
