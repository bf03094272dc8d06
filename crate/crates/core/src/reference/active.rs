//! Active-domain semantics: shapes are evaluated over the graph's own nodes
//! only, except that a constant always denotes itself.
//! Evaluation here does not go through the shape engine.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::eval::{ConformanceReport, NodeSet, Violation};
use crate::model::{
    dependency_order, desugar, DomainElement, Graph, NodeName, PathExpr, PropName, ShapeExpr,
    ShapeName, ShapeSchema,
};

type Names = BTreeSet<NodeName>;
type Pairs = BTreeSet<(NodeName, NodeName)>;

struct ActiveDomain<'g> {
    graph: &'g Graph,
    nodes: Names,
    shapes: BTreeMap<ShapeName, Names>,
}

impl<'g> ActiveDomain<'g> {
    fn new(graph: &'g Graph, schema: &ShapeSchema) -> Result<Self> {
        let mut this = ActiveDomain {
            graph,
            nodes: graph.nodes(),
            shapes: BTreeMap::new(),
        };
        for name in dependency_order(schema.definitions())? {
            let set = this.shape(&schema.definitions()[&name]);
            this.shapes.insert(name, set);
        }
        Ok(this)
    }

    fn path(&self, path: &PathExpr) -> Pairs {
        match path {
            PathExpr::Prop(p) => self
                .graph
                .edges(p)
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
            PathExpr::Inverse(p) => self
                .graph
                .edges(p)
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            PathExpr::Union(a, b) => self.path(a).union(&self.path(b)).cloned().collect(),
            PathExpr::Compose(a, b) => compose(&self.path(a), &self.path(b)),
            PathExpr::Star(e) => {
                let mut closure: Pairs = self.identity();
                closure.extend(self.path(e));
                loop {
                    let next: Pairs = compose(&closure, &closure).union(&closure).cloned().collect();
                    if next.len() == closure.len() {
                        return closure;
                    }
                    closure = next;
                }
            }
            PathExpr::Optional(e) => {
                let mut pairs = self.identity();
                pairs.extend(self.path(e));
                pairs
            }
        }
    }

    fn identity(&self) -> Pairs {
        self.nodes.iter().map(|n| (n.clone(), n.clone())).collect()
    }

    fn successors(pairs: &Pairs, a: &NodeName) -> Names {
        pairs
            .iter()
            .filter(|(x, _)| x == a)
            .map(|(_, y)| y.clone())
            .collect()
    }

    fn shape(&self, shape: &ShapeExpr) -> Names {
        match shape {
            ShapeExpr::Top => self.nodes.clone(),
            ShapeExpr::Ref(s) => self.shapes.get(s).unwrap_or(&self.nodes).clone(),
            ShapeExpr::Constant(c) => BTreeSet::from([c.clone()]),
            ShapeExpr::And(a, b) => self.shape(a).intersection(&self.shape(b)).cloned().collect(),
            ShapeExpr::Or(a, b) => self.shape(a).union(&self.shape(b)).cloned().collect(),
            ShapeExpr::Not(a) => self.nodes.difference(&self.shape(a)).cloned().collect(),
            ShapeExpr::AtLeast(n, path, body) => {
                let pairs = self.path(path);
                let body = self.shape(body);
                self.nodes
                    .iter()
                    .filter(|a| {
                        Self::successors(&pairs, a).intersection(&body).count() >= n.get() as usize
                    })
                    .cloned()
                    .collect()
            }
            ShapeExpr::Eq(p, path) | ShapeExpr::Disj(p, path) => {
                let direct = self.path(&PathExpr::Prop(p.clone()));
                let pairs = self.path(path);
                self.nodes
                    .iter()
                    .filter(|a| {
                        let ps = Self::successors(&direct, a);
                        let es = Self::successors(&pairs, a);
                        if matches!(shape, ShapeExpr::Eq(..)) {
                            ps == es
                        } else {
                            ps.is_disjoint(&es)
                        }
                    })
                    .cloned()
                    .collect()
            }
            ShapeExpr::Closed(allowed) => {
                let forbidden: Vec<PropName> = self
                    .graph
                    .properties()
                    .into_iter()
                    .filter(|p| !allowed.contains(p))
                    .collect();
                self.nodes
                    .iter()
                    .filter(|a| forbidden.iter().all(|p| self.graph.objects(p, a).is_none()))
                    .cloned()
                    .collect()
            }
            ShapeExpr::Forall(..) | ShapeExpr::Exists(..) => self.shape(&desugar(shape)),
        }
    }
}

fn compose(left: &Pairs, right: &Pairs) -> Pairs {
    let mut by_source: BTreeMap<&NodeName, Vec<&NodeName>> = BTreeMap::new();
    for (a, b) in right {
        by_source.entry(a).or_default().push(b);
    }
    let mut out = Pairs::new();
    for (a, m) in left {
        for b in by_source.get(m).into_iter().flatten() {
            out.insert((a.clone(), (*b).clone()));
        }
    }
    out
}

fn to_node_set(names: Names) -> NodeSet {
    names.into_iter().map(DomainElement::Node).collect()
}

/// Evaluates `shape` under the active-domain semantics, with the schema's
/// definitions in force and undefined shape names read as every graph node.
pub fn active_domain_eval(shape: &ShapeExpr, graph: &Graph, schema: &ShapeSchema) -> Result<NodeSet> {
    let ad = ActiveDomain::new(graph, schema)?;
    Ok(to_node_set(ad.shape(shape)))
}

/// Conformance under the active-domain semantics.
pub fn active_domain_validate(graph: &Graph, schema: &ShapeSchema) -> Result<ConformanceReport> {
    let ad = ActiveDomain::new(graph, schema)?;
    let mut violations = Vec::new();
    for (index, target) in schema.targets().iter().enumerate() {
        let rhs = ad.shape(&target.rhs);
        for focus in ad.shape(&target.lhs).difference(&rhs) {
            violations.push(Violation {
                target_index: index,
                focus: DomainElement::Node(focus.clone()),
                lhs: target.lhs.clone(),
                rhs: target.rhs.clone(),
            });
        }
    }
    Ok(ConformanceReport::new(violations))
}
