//! Import of SHACL shapes graphs written in Turtle.

mod shacl;
mod turtle;

use std::collections::BTreeMap;

pub use shacl::{import_shapes_graph, import_shapes_graph_with_prefixes, SH};
pub use turtle::{parse_turtle, Located, Term, Triple, TurtleDoc, RDF_TYPE};

/// Declared namespace prefixes, used to abbreviate IRIs in reports.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    prefixes: BTreeMap<String, String>,
}

impl PrefixMap {
    pub fn new(prefixes: BTreeMap<String, String>) -> Self {
        PrefixMap { prefixes }
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.prefixes.iter().map(|(p, ns)| (p.as_str(), ns.as_str()))
    }

    /// `prefix:local` for the longest matching namespace whose remainder is
    /// a plain local name; otherwise the IRI unchanged.
    pub fn compact(&self, iri: &str) -> String {
        self.prefixes
            .iter()
            .filter_map(|(p, ns)| {
                let local = iri.strip_prefix(ns.as_str())?;
                let plain = local
                    .chars()
                    .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
                    && !local.ends_with('.');
                plain.then_some((ns.len(), p, local))
            })
            // longest namespace wins; among equals, the first prefix
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(a.1)))
            .map_or_else(|| iri.to_owned(), |(_, p, local)| format!("{p}:{local}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map() -> PrefixMap {
        PrefixMap::new(BTreeMap::from([
            ("ex".to_owned(), "http://www.example.org/".to_owned()),
            ("exa".to_owned(), "http://www.example.org/a/".to_owned()),
            ("alt".to_owned(), "http://www.example.org/".to_owned()),
        ]))
    }

    #[test]
    fn longest_namespace_wins() {
        let m = map();
        assert_eq!(m.compact("http://www.example.org/a/b"), "exa:b");
        assert_eq!(m.compact("http://www.example.org/b"), "alt:b");
        assert_eq!(m.compact("http://other.org/b"), "http://other.org/b");
        assert_eq!(m.compact("http://www.example.org/x/y"), "http://www.example.org/x/y");
        assert_eq!(m.compact("plain"), "plain");
    }
}
