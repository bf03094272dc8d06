use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use super::name::{NodeName, PropName, ShapeName};
use crate::error::{Error, Result};

/// An element of an interpretation's domain: a node name, or the single
/// symbolic element standing for every node name not mentioned anywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainElement {
    Node(NodeName),
    Star,
}

impl DomainElement {
    pub fn node(name: impl Into<NodeName>) -> Self {
        DomainElement::Node(name.into())
    }

    pub fn as_node(&self) -> Option<&NodeName> {
        match self {
            DomainElement::Node(n) => Some(n),
            DomainElement::Star => None,
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self, DomainElement::Star)
    }
}

impl fmt::Display for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainElement::Node(n) => f.write_str(n.as_str()),
            DomainElement::Star => f.write_str("*"),
        }
    }
}

impl From<NodeName> for DomainElement {
    fn from(n: NodeName) -> Self {
        DomainElement::Node(n)
    }
}

/// A binary relation over domain indices, stored as sorted adjacency lists
/// in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    forward: Vec<Vec<usize>>,
    backward: Vec<Vec<usize>>,
}

impl Relation {
    fn from_pairs(size: usize, pairs: &BTreeSet<(usize, usize)>) -> Self {
        let mut forward = vec![Vec::new(); size];
        let mut backward = vec![Vec::new(); size];
        // BTreeSet order keeps forward lists sorted; backward needs a sort.
        for &(a, b) in pairs {
            forward[a].push(b);
            backward[b].push(a);
        }
        backward.iter_mut().for_each(|v| v.sort_unstable());
        Relation { forward, backward }
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.forward[a]
    }

    pub fn predecessors(&self, b: usize) -> &[usize] {
        &self.backward[b]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.forward
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }
}

/// A first-order interpretation with a finite domain.
///
/// Elements are addressed by their index in the sorted domain. Property
/// names without an entry denote the empty relation.
#[derive(Debug, Clone)]
pub struct FiniteInterpretation {
    domain: Vec<DomainElement>,
    index: HashMap<DomainElement, usize>,
    constants: BTreeMap<NodeName, usize>,
    shapes: BTreeMap<ShapeName, FixedBitSet>,
    properties: BTreeMap<PropName, Relation>,
}

impl FiniteInterpretation {
    pub fn builder(domain: impl IntoIterator<Item = DomainElement>) -> InterpretationBuilder {
        InterpretationBuilder::new(domain)
    }

    pub fn domain(&self) -> &[DomainElement] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn index_of(&self, element: &DomainElement) -> Option<usize> {
        self.index.get(element).copied()
    }

    pub fn element(&self, index: usize) -> &DomainElement {
        &self.domain[index]
    }

    pub fn contains(&self, element: &DomainElement) -> bool {
        self.index.contains_key(element)
    }

    /// c^I, as a domain index.
    pub fn constant(&self, name: &NodeName) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&NodeName, &DomainElement)> {
        self.constants
            .iter()
            .map(|(name, &i)| (name, &self.domain[i]))
    }

    pub fn relation(&self, property: &PropName) -> Option<&Relation> {
        self.properties.get(property)
    }

    pub fn property_names(&self) -> impl Iterator<Item = &PropName> {
        self.properties.keys()
    }

    /// p^I as element pairs.
    pub fn property_pairs(&self, property: &PropName) -> BTreeSet<(DomainElement, DomainElement)> {
        self.relation(property)
            .map(|rel| {
                rel.pairs()
                    .map(|(a, b)| (self.domain[a].clone(), self.domain[b].clone()))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub(crate) fn shape_bits(&self, name: &ShapeName) -> Option<&FixedBitSet> {
        self.shapes.get(name)
    }

    /// s^I, if the interpretation assigns one.
    pub fn shape(&self, name: &ShapeName) -> Option<BTreeSet<DomainElement>> {
        self.shapes
            .get(name)
            .map(|bits| bits.ones().map(|i| self.domain[i].clone()).collect())
    }

    pub fn shape_names(&self) -> impl Iterator<Item = &ShapeName> {
        self.shapes.keys()
    }

    /// Same interpretation with the shape names replaced.
    pub(crate) fn with_shape_bits(&self, shapes: BTreeMap<ShapeName, FixedBitSet>) -> Self {
        FiniteInterpretation {
            shapes,
            ..self.clone()
        }
    }
}

/// Collects domain, constants, shapes and relations, checking that every
/// endpoint lies in the domain.
#[derive(Debug, Clone)]
pub struct InterpretationBuilder {
    domain: Vec<DomainElement>,
    index: HashMap<DomainElement, usize>,
    constants: BTreeMap<NodeName, usize>,
    shapes: BTreeMap<ShapeName, FixedBitSet>,
    pairs: BTreeMap<PropName, BTreeSet<(usize, usize)>>,
}

impl InterpretationBuilder {
    pub fn new(domain: impl IntoIterator<Item = DomainElement>) -> Self {
        let domain: Vec<DomainElement> = domain
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = domain
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        InterpretationBuilder {
            domain,
            index,
            constants: BTreeMap::new(),
            shapes: BTreeMap::new(),
            pairs: BTreeMap::new(),
        }
    }

    fn lookup(&self, element: &DomainElement) -> Result<usize> {
        self.index
            .get(element)
            .copied()
            .ok_or_else(|| Error::ElementNotInDomain(element.clone()))
    }

    pub fn constant(&mut self, name: NodeName, element: &DomainElement) -> Result<&mut Self> {
        let i = self.lookup(element)?;
        self.constants.insert(name, i);
        Ok(self)
    }

    /// Maps every node name in the domain to itself.
    pub fn identity_constants(&mut self) -> &mut Self {
        for (i, e) in self.domain.iter().enumerate() {
            if let DomainElement::Node(n) = e {
                self.constants.insert(n.clone(), i);
            }
        }
        self
    }

    pub fn edge(
        &mut self,
        property: PropName,
        from: &DomainElement,
        to: &DomainElement,
    ) -> Result<&mut Self> {
        let (a, b) = (self.lookup(from)?, self.lookup(to)?);
        self.pairs.entry(property).or_default().insert((a, b));
        Ok(self)
    }

    /// Registers a property name with an (initially) empty relation.
    pub fn property(&mut self, property: PropName) -> &mut Self {
        self.pairs.entry(property).or_default();
        self
    }

    pub fn shape<'a>(
        &mut self,
        name: ShapeName,
        members: impl IntoIterator<Item = &'a DomainElement>,
    ) -> Result<&mut Self> {
        let mut bits = FixedBitSet::with_capacity(self.domain.len());
        for m in members {
            bits.insert(self.lookup(m)?);
        }
        self.shapes.insert(name, bits);
        Ok(self)
    }

    pub fn build(&self) -> FiniteInterpretation {
        let size = self.domain.len();
        FiniteInterpretation {
            domain: self.domain.clone(),
            index: self.index.clone(),
            constants: self.constants.clone(),
            shapes: self.shapes.clone(),
            properties: self
                .pairs
                .iter()
                .map(|(p, pairs)| (p.clone(), Relation::from_pairs(size, pairs)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_sorts_after_nodes() {
        let mut elems = [DomainElement::Star,
            DomainElement::node("b"),
            DomainElement::node("a")];
        elems.sort();
        assert_eq!(elems.last(), Some(&DomainElement::Star));
        assert_eq!(elems[0], DomainElement::node("a"));
    }

    #[test]
    fn edges_outside_domain_are_rejected() {
        let mut b = FiniteInterpretation::builder([DomainElement::node("a")]);
        let err = b
            .edge(PropName::new("p"), &DomainElement::node("a"), &DomainElement::node("z"))
            .unwrap_err();
        assert_eq!(err, Error::ElementNotInDomain(DomainElement::node("z")));
    }

    #[test]
    fn relation_indexes_both_directions() {
        let a = DomainElement::node("a");
        let b = DomainElement::node("b");
        let mut builder = FiniteInterpretation::builder([a.clone(), b.clone(), DomainElement::Star]);
        builder.identity_constants();
        builder.edge(PropName::new("p"), &b, &a).unwrap();
        builder.edge(PropName::new("p"), &a, &a).unwrap();
        let interp = builder.build();
        let rel = interp.relation(&PropName::new("p")).unwrap();
        assert_eq!(rel.successors(1), &[0]);
        assert_eq!(rel.predecessors(0), &[0, 1]);
        assert_eq!(interp.constant(&NodeName::new("b")), Some(1));
        assert!(interp.constants().all(|(_, e)| !e.is_star()));
    }
}
