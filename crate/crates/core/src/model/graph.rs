use std::collections::{BTreeMap, BTreeSet};

use super::name::{NodeName, PropName};

/// A fact `p(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub property: PropName,
    pub subject: NodeName,
    pub object: NodeName,
}

impl Fact {
    pub fn new(
        property: impl Into<PropName>,
        subject: impl Into<NodeName>,
        object: impl Into<NodeName>,
    ) -> Self {
        Fact {
            property: property.into(),
            subject: subject.into(),
            object: object.into(),
        }
    }
}

type Adjacency = BTreeMap<PropName, BTreeMap<NodeName, BTreeSet<NodeName>>>;

/// A finite set of facts with forward and backward adjacency indexes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    facts: BTreeSet<Fact>,
    forward: Adjacency,
    backward: Adjacency,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Returns `false` if the fact was already present.
    pub fn insert(&mut self, fact: Fact) -> bool {
        if self.facts.contains(&fact) {
            return false;
        }
        self.forward
            .entry(fact.property.clone())
            .or_default()
            .entry(fact.subject.clone())
            .or_default()
            .insert(fact.object.clone());
        self.backward
            .entry(fact.property.clone())
            .or_default()
            .entry(fact.object.clone())
            .or_default()
            .insert(fact.subject.clone());
        self.facts.insert(fact)
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.facts.contains(fact)
    }

    /// N_G: every node name occurring as subject or object.
    pub fn nodes(&self) -> BTreeSet<NodeName> {
        self.facts
            .iter()
            .flat_map(|f| [f.subject.clone(), f.object.clone()])
            .collect()
    }

    pub fn properties(&self) -> BTreeSet<PropName> {
        self.forward.keys().cloned().collect()
    }

    /// `{b | p(a, b) ∈ G}`
    pub fn objects(&self, property: &PropName, subject: &NodeName) -> Option<&BTreeSet<NodeName>> {
        self.forward.get(property)?.get(subject)
    }

    /// `{a | p(a, b) ∈ G}`
    pub fn subjects(&self, property: &PropName, object: &NodeName) -> Option<&BTreeSet<NodeName>> {
        self.backward.get(property)?.get(object)
    }

    /// The p-edges of the graph, i.e. ⟦p⟧_G.
    pub fn edges<'a>(
        &'a self,
        property: &PropName,
    ) -> impl Iterator<Item = (&'a NodeName, &'a NodeName)> + 'a {
        self.forward
            .get(property)
            .into_iter()
            .flat_map(|by_subject| {
                by_subject
                    .iter()
                    .flat_map(|(a, objs)| objs.iter().map(move |b| (a, b)))
            })
    }

    #[cfg(test)]
    pub(crate) fn forward_index(&self) -> &Adjacency {
        &self.forward
    }

    #[cfg(test)]
    pub(crate) fn backward_index(&self) -> &Adjacency {
        &self.backward
    }
}

impl FromIterator<Fact> for Graph {
    fn from_iter<T: IntoIterator<Item = Fact>>(iter: T) -> Self {
        let mut g = Graph::new();
        for fact in iter {
            g.insert(fact);
        }
        g
    }
}

impl Extend<Fact> for Graph {
    fn extend<T: IntoIterator<Item = Fact>>(&mut self, iter: T) {
        for fact in iter {
            self.insert(fact);
        }
    }
}

/// N_G for a graph.
pub fn nodes_of(graph: &Graph) -> BTreeSet<NodeName> {
    graph.nodes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nodes_of_single_triple() {
        let g: Graph = [Fact::new("r", "a", "b")].into_iter().collect();
        let expected: BTreeSet<NodeName> = ["a", "b"].into_iter().map(NodeName::new).collect();
        assert_eq!(nodes_of(&g), expected);
        assert!(nodes_of(&Graph::new()).is_empty());
    }

    #[test]
    fn duplicates_collapse() {
        let mut g = Graph::new();
        assert!(g.insert(Fact::new("p", "a", "b")));
        assert!(!g.insert(Fact::new("p", "a", "b")));
        assert_eq!(g.len(), 1);
    }

    fn arb_fact() -> impl Strategy<Value = Fact> {
        (0..3u8, 0..5u8, 0..5u8).prop_map(|(p, a, b)| {
            Fact::new(format!("p{p}").as_str(), format!("n{a}").as_str(), format!("n{b}").as_str())
        })
    }

    proptest! {
        #[test]
        fn indexes_agree_with_facts(facts in proptest::collection::vec(arb_fact(), 0..20)) {
            let g: Graph = facts.iter().cloned().collect();
            for f in &facts {
                prop_assert!(g.objects(&f.property, &f.subject).unwrap().contains(&f.object));
                prop_assert!(g.subjects(&f.property, &f.object).unwrap().contains(&f.subject));
            }
            for (p, by_subject) in g.forward_index() {
                for (a, objs) in by_subject {
                    for b in objs {
                        let fact = Fact { property: p.clone(), subject: a.clone(), object: b.clone() };
                        prop_assert!(g.contains(&fact));
                    }
                }
            }
            for (p, by_object) in g.backward_index() {
                for (b, subs) in by_object {
                    for a in subs {
                        let fact = Fact { property: p.clone(), subject: a.clone(), object: b.clone() };
                        prop_assert!(g.contains(&fact));
                    }
                }
            }
        }
    }
}
