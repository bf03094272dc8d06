//! Evaluation of path expressions and shapes over finite interpretations,
//! unfolding of acyclic definitions, and conformance checking.

mod path;
mod shape;

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::model::{
    dependency_order, DomainElement, FiniteInterpretation, PathExpr, ShapeExpr, ShapeName,
    ShapeSchema, Vocabulary,
};

pub(crate) use path::CompiledPath;
pub(crate) use shape::Evaluator;

/// A set of domain elements produced by evaluating a shape or a path from a
/// source element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeSet(BTreeSet<DomainElement>);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet::default()
    }

    pub(crate) fn from_bits(interp: &FiniteInterpretation, bits: &FixedBitSet) -> Self {
        NodeSet(bits.ones().map(|i| interp.element(i).clone()).collect())
    }

    pub fn contains(&self, element: &DomainElement) -> bool {
        self.0.contains(element)
    }

    pub fn iter(&self) -> impl Iterator<Item = &DomainElement> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Keeps only named elements whose name satisfies `keep`; drops the
    /// symbolic element.
    pub fn named_only(&self, mut keep: impl FnMut(&crate::model::NodeName) -> bool) -> NodeSet {
        NodeSet(
            self.0
                .iter()
                .filter(|e| e.as_node().is_some_and(&mut keep))
                .cloned()
                .collect(),
        )
    }

    pub fn as_set(&self) -> &BTreeSet<DomainElement> {
        &self.0
    }

    pub fn into_set(self) -> BTreeSet<DomainElement> {
        self.0
    }
}

impl FromIterator<DomainElement> for NodeSet {
    fn from_iter<T: IntoIterator<Item = DomainElement>>(iter: T) -> Self {
        NodeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a DomainElement;
    type IntoIter = std::collections::btree_set::Iter<'a, DomainElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// E^I as a set of element pairs, computed by relational algebra over whole
/// relations (join for composition, fixpoint iteration for closure).
pub fn eval_path(path: &PathExpr, interp: &FiniteInterpretation) -> BTreeSet<(DomainElement, DomainElement)> {
    path::relation_of(path, interp)
        .into_iter()
        .map(|(a, b)| (interp.element(a).clone(), interp.element(b).clone()))
        .collect()
}

/// E^I(a), computed by graph search from `a` alone.
pub fn eval_path_from(path: &PathExpr, interp: &FiniteInterpretation, source: &DomainElement) -> Result<NodeSet> {
    let a = interp
        .index_of(source)
        .ok_or_else(|| Error::ElementNotInDomain(source.clone()))?;
    let mut compiled = CompiledPath::new(path, interp);
    Ok(compiled
        .successors(a)
        .iter()
        .map(|&b| interp.element(b).clone())
        .collect())
}

/// ⟦φ⟧^I. Shape names are looked up in the interpretation; `closed` ranges
/// over the property names of `sigma`.
pub fn eval_shape(shape: &ShapeExpr, interp: &FiniteInterpretation, sigma: &Vocabulary) -> Result<NodeSet> {
    let eval = Evaluator::new(interp, &sigma.property_names);
    Ok(NodeSet::from_bits(interp, &eval.eval(shape)?))
}

/// I◇D: the unique interpretation agreeing with `interp` outside shape
/// names that satisfies every definition. Shape names of `sigma` without a
/// definition are interpreted as the whole domain.
pub fn extend_interpretation(
    interp: &FiniteInterpretation,
    definitions: &BTreeMap<ShapeName, ShapeExpr>,
    sigma: &Vocabulary,
) -> Result<FiniteInterpretation> {
    let order = dependency_order(definitions)?;
    let eval = unfold(interp, definitions, &order, sigma)?;
    Ok(interp.with_shape_bits(eval.into_shapes()))
}

pub(crate) fn unfold<'i>(
    interp: &'i FiniteInterpretation,
    definitions: &BTreeMap<ShapeName, ShapeExpr>,
    order: &[ShapeName],
    sigma: &'i Vocabulary,
) -> Result<Evaluator<'i>> {
    let mut eval = Evaluator::without_shapes(interp, &sigma.property_names);
    let all = eval.full();
    for name in &sigma.shape_names {
        if !definitions.contains_key(name) {
            eval.bind(name.clone(), all.clone());
        }
    }
    for name in order {
        let bits = eval.eval(&definitions[name])?;
        eval.bind(name.clone(), bits);
    }
    Ok(eval)
}

/// One focus element that satisfies a target's left-hand side but not its
/// right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub target_index: usize,
    pub focus: DomainElement,
    pub lhs: ShapeExpr,
    pub rhs: ShapeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConformanceReport {
    conforms: bool,
    violations: Vec<Violation>,
}

impl ConformanceReport {
    /// Sorts violations by target index, then focus (the symbolic element
    /// last).
    pub fn new(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| {
            (a.target_index, &a.focus).cmp(&(b.target_index, &b.focus))
        });
        ConformanceReport {
            conforms: violations.is_empty(),
            violations,
        }
    }

    pub fn conforms(&self) -> bool {
        self.conforms
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn violations_for(&self, target_index: usize) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(move |v| v.target_index == target_index)
    }
}

/// Builds I◇D and collects every element of ⟦lhs⟧ \ ⟦rhs⟧ for every target.
pub fn check_conformance(
    interp: &FiniteInterpretation,
    schema: &ShapeSchema,
    sigma: &Vocabulary,
) -> Result<ConformanceReport> {
    let eval = unfold(interp, schema.definitions(), schema.dependency_order(), sigma)?;
    let mut violations = Vec::new();
    for (index, target) in schema.targets().iter().enumerate() {
        let mut outside = eval.eval(&target.lhs)?;
        outside.difference_with(&eval.eval(&target.rhs)?);
        violations.extend(outside.ones().map(|i| Violation {
            target_index: index,
            focus: interp.element(i).clone(),
            lhs: target.lhs.clone(),
            rhs: target.rhs.clone(),
        }));
    }
    Ok(ConformanceReport::new(violations))
}
