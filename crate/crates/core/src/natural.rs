//! Natural semantics of a graph, computed through the finite star
//! interpretation.
//!
//! The natural interpretation of a graph has every node name in its domain,
//! interprets each constant as itself, and each property as exactly its
//! edges in the graph. Node names that occur in neither the graph nor the
//! vocabulary are indistinguishable from one another, so a single symbolic
//! element `*` represents all of them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::eval::{check_conformance, unfold, ConformanceReport, NodeSet};
use crate::model::{
    desugar, vocabulary_of, DomainElement, FiniteInterpretation, Graph, NodeName, ShapeExpr,
    ShapeSchema, Vocabulary,
};

/// How the symbolic element is described to users.
pub const STAR_GLOSS: &str = "any node not named in the graph or schema";

/// The star interpretation of a graph over a vocabulary.
#[derive(Debug, Clone)]
pub struct StarContext {
    interpretation: FiniteInterpretation,
    sigma: Vocabulary,
    graph_nodes: BTreeSet<NodeName>,
}

impl StarContext {
    pub fn interpretation(&self) -> &FiniteInterpretation {
        &self.interpretation
    }

    pub fn sigma(&self) -> &Vocabulary {
        &self.sigma
    }

    pub fn graph_nodes(&self) -> &BTreeSet<NodeName> {
        &self.graph_nodes
    }

    /// Elements standing for themselves: N_G ∪ (Σ ∩ N).
    pub fn named_elements(&self) -> impl Iterator<Item = &NodeName> {
        self.interpretation.domain().iter().filter_map(|e| e.as_node())
    }
}

/// Interpretation of `graph` over the node names N_G ∪ (Σ ∩ N) plus `extra`
/// elements. Constants denote themselves, properties denote their edges,
/// every property name of Σ is registered (possibly empty), and no shape
/// names are assigned.
pub(crate) fn graph_interpretation(
    graph: &Graph,
    sigma: &Vocabulary,
    extra: impl IntoIterator<Item = DomainElement>,
) -> FiniteInterpretation {
    let domain = graph
        .nodes()
        .into_iter()
        .chain(sigma.node_names.iter().cloned())
        .map(DomainElement::Node)
        .chain(extra);
    let mut builder = FiniteInterpretation::builder(domain);
    builder.identity_constants();
    for p in &sigma.property_names {
        builder.property(p.clone());
    }
    for fact in graph.facts() {
        builder
            .edge(
                fact.property.clone(),
                &DomainElement::Node(fact.subject.clone()),
                &DomainElement::Node(fact.object.clone()),
            )
            .expect("graph nodes are in the domain");
    }
    builder.build()
}

/// I⋆ with domain N_G ∪ (Σ ∩ N) ∪ {⋆}.
pub fn star_interpretation(graph: &Graph, sigma: &Vocabulary) -> StarContext {
    StarContext {
        interpretation: graph_interpretation(graph, sigma, [DomainElement::Star]),
        sigma: sigma.clone(),
        graph_nodes: graph.nodes(),
    }
}

/// Validates `graph` against `schema` under the natural semantics.
///
/// A violation whose focus is [`DomainElement::Star`] means infinitely many
/// node names outside the graph and schema violate that target.
pub fn validate(graph: &Graph, schema: &ShapeSchema) -> Result<ConformanceReport> {
    validate_with(graph, schema, &Vocabulary::new())
}

/// As [`validate`], with `extra` added to the vocabulary (for instance more
/// property names that `closed` should rule out).
pub fn validate_with(graph: &Graph, schema: &ShapeSchema, extra: &Vocabulary) -> Result<ConformanceReport> {
    let mut sigma = vocabulary_of(schema, graph);
    sigma.union(extra);
    let ctx = star_interpretation(graph, &sigma);
    check_conformance(&ctx.interpretation, schema, &ctx.sigma)
}

/// Membership answers for a shape over the natural interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAnswers {
    pub answers: BTreeMap<NodeName, bool>,
    /// Whether node names outside the star domain satisfy the shape.
    pub star_verdict: bool,
}

impl GraphAnswers {
    /// Answer for any node name; names outside the star domain inherit
    /// `star_verdict`.
    pub fn get(&self, name: &NodeName) -> Option<bool> {
        self.answers.get(name).copied()
    }
}

/// Evaluates `shape` (with the schema's definitions in force) and reports,
/// for each queried node name, whether it satisfies the shape.
pub fn eval_on_graph(
    shape: &ShapeExpr,
    graph: &Graph,
    schema: &ShapeSchema,
    query: &[NodeName],
) -> Result<GraphAnswers> {
    eval_on_graph_with(shape, graph, schema, query, &Vocabulary::new())
}

pub fn eval_on_graph_with(
    shape: &ShapeExpr,
    graph: &Graph,
    schema: &ShapeSchema,
    query: &[NodeName],
    extra: &Vocabulary,
) -> Result<GraphAnswers> {
    let shape = desugar(shape);
    let mut sigma = vocabulary_of(schema, graph);
    sigma.add_shape(&shape);
    sigma.union(extra);
    let ctx = star_interpretation(graph, &sigma);
    let extension = shape_extension(&ctx, schema, &shape)?;
    let star_verdict = extension.contains(&DomainElement::Star);
    let answers = query
        .iter()
        .map(|x| {
            let element = DomainElement::Node(x.clone());
            let verdict = if ctx.interpretation.contains(&element) {
                extension.contains(&element)
            } else {
                star_verdict
            };
            (x.clone(), verdict)
        })
        .collect();
    Ok(GraphAnswers {
        answers,
        star_verdict,
    })
}

/// ⟦shape⟧⋆ evaluated in the extension of the star interpretation by the
/// schema's definitions.
pub fn shape_extension(ctx: &StarContext, schema: &ShapeSchema, shape: &ShapeExpr) -> Result<NodeSet> {
    let eval = unfold(
        &ctx.interpretation,
        schema.definitions(),
        schema.dependency_order(),
        &ctx.sigma,
    )?;
    Ok(NodeSet::from_bits(&ctx.interpretation, &eval.eval(shape)?))
}
