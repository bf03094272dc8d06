use std::collections::BTreeSet;

use super::expr::ShapeExpr;
use super::graph::Graph;
use super::name::{Name, NodeName, PropName, ShapeName};
use super::schema::ShapeSchema;

/// A finite vocabulary Σ, split by kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub node_names: BTreeSet<NodeName>,
    pub shape_names: BTreeSet<ShapeName>,
    pub property_names: BTreeSet<PropName>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Vocabulary::default()
    }

    pub fn insert(&mut self, name: Name) {
        match name {
            Name::Node(n) => {
                self.node_names.insert(n);
            }
            Name::Shape(s) => {
                self.shape_names.insert(s);
            }
            Name::Property(p) => {
                self.property_names.insert(p);
            }
        }
    }

    pub fn add_shape(&mut self, shape: &ShapeExpr) {
        let mut symbols = BTreeSet::new();
        shape.symbols(&mut symbols);
        symbols.into_iter().for_each(|n| self.insert(n));
    }

    pub fn add_schema(&mut self, schema: &ShapeSchema) {
        for (name, body) in schema.definitions() {
            self.shape_names.insert(name.clone());
            self.add_shape(body);
        }
        for target in schema.targets() {
            self.add_shape(&target.lhs);
            self.add_shape(&target.rhs);
        }
    }

    pub fn add_graph(&mut self, graph: &Graph) {
        for fact in graph.facts() {
            self.node_names.insert(fact.subject.clone());
            self.node_names.insert(fact.object.clone());
            self.property_names.insert(fact.property.clone());
        }
    }

    pub fn union(&mut self, other: &Vocabulary) {
        self.node_names.extend(other.node_names.iter().cloned());
        self.shape_names.extend(other.shape_names.iter().cloned());
        self.property_names
            .extend(other.property_names.iter().cloned());
    }

    pub fn contains(&self, name: &Name) -> bool {
        match name {
            Name::Node(n) => self.node_names.contains(n),
            Name::Shape(s) => self.shape_names.contains(s),
            Name::Property(p) => self.property_names.contains(p),
        }
    }

    pub fn len(&self) -> usize {
        self.node_names.len() + self.shape_names.len() + self.property_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Name> + '_ {
        self.node_names
            .iter()
            .cloned()
            .map(Name::Node)
            .chain(self.shape_names.iter().cloned().map(Name::Shape))
            .chain(self.property_names.iter().cloned().map(Name::Property))
    }
}

/// Σ = symbols of the schema ∪ node and property names of the graph.
pub fn vocabulary_of(schema: &ShapeSchema, graph: &Graph) -> Vocabulary {
    let mut sigma = Vocabulary::new();
    sigma.add_schema(schema);
    sigma.add_graph(graph);
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Fact, PathExpr, Target};

    #[test]
    fn absent_constant_vocabulary() {
        let schema = ShapeSchema::from_parts(
            [(
                ShapeName::new("s"),
                ShapeExpr::exists(PathExpr::prop("r"), ShapeExpr::Top),
            )],
            vec![Target::new(ShapeExpr::constant("b"), ShapeExpr::shape_ref("s"))],
        )
        .unwrap();
        let graph: Graph = [Fact::new("r", "x", "y")].into_iter().collect();
        let sigma = vocabulary_of(&schema, &graph);
        let nodes: Vec<&str> = sigma.node_names.iter().map(|n| n.as_str()).collect();
        assert_eq!(nodes, ["b", "x", "y"]);
        assert_eq!(sigma.shape_names, BTreeSet::from([ShapeName::new("s")]));
        assert_eq!(sigma.property_names, BTreeSet::from([PropName::new("r")]));
    }

    #[test]
    fn empty_inputs_give_empty_vocabulary() {
        assert!(vocabulary_of(&ShapeSchema::empty(), &Graph::new()).is_empty());
    }

    #[test]
    fn closed_sets_contribute_properties() {
        let schema = ShapeSchema::from_parts(
            [],
            vec![Target::new(ShapeExpr::Top, ShapeExpr::closed(["q", "p"]))],
        )
        .unwrap();
        let sigma = vocabulary_of(&schema, &Graph::new());
        assert_eq!(sigma.property_names.len(), 2);
    }
}
