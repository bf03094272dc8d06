//! Oracles for the natural semantics: the active-domain semantics it is
//! contrasted with, and brute-force evaluation over enlarged finite domains.

mod active;

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

pub use active::{active_domain_eval, active_domain_validate};

use crate::error::{Error, Result};
use crate::eval::{check_conformance, unfold, ConformanceReport};
use crate::model::{
    vocabulary_of, DomainElement, FiniteInterpretation, Graph, NodeName, ShapeExpr, ShapeSchema,
    Target, Vocabulary,
};
use crate::natural::{graph_interpretation, star_interpretation, validate_with};

/// `m` node names of the form `_fresh<k>` that avoid `taken`; a name that
/// collides gets underscores appended until it does not.
pub fn fresh_names(m: usize, taken: &BTreeSet<NodeName>) -> Vec<NodeName> {
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let mut candidate = format!("_fresh{k}");
        while taken.contains(candidate.as_str()) || out.iter().any(|n: &NodeName| n.as_str() == candidate) {
            candidate.push('_');
        }
        out.push(NodeName::new(candidate));
    }
    out
}

fn sigma_for(graph: &Graph, schema: &ShapeSchema, extra: &Vocabulary) -> Vocabulary {
    let mut sigma = vocabulary_of(schema, graph);
    sigma.union(extra);
    sigma
}

fn enlarged_interpretation(graph: &Graph, sigma: &Vocabulary, m: usize) -> FiniteInterpretation {
    let taken: BTreeSet<NodeName> = graph.nodes().into_iter().chain(sigma.node_names.iter().cloned()).collect();
    let fresh = fresh_names(m, &taken).into_iter().map(DomainElement::Node);
    graph_interpretation(graph, sigma, fresh)
}

/// Conformance over the domain N_G ∪ (Σ ∩ N) plus `m` fresh node names,
/// with no symbolic element.
pub fn brute_force_validate(graph: &Graph, schema: &ShapeSchema, m: usize) -> Result<ConformanceReport> {
    brute_force_validate_with(graph, schema, m, &Vocabulary::new())
}

pub fn brute_force_validate_with(
    graph: &Graph,
    schema: &ShapeSchema,
    m: usize,
    extra: &Vocabulary,
) -> Result<ConformanceReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("the number of fresh nodes must be at least 1".into()));
    }
    let sigma = sigma_for(graph, schema, extra);
    check_conformance(&enlarged_interpretation(graph, &sigma, m), schema, &sigma)
}

/// A target on which the natural and the active-domain semantics disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticsDiff {
    pub target_index: usize,
    pub target: Target,
    pub natural_conforms: bool,
    pub active_conforms: bool,
    pub natural_violations: BTreeSet<DomainElement>,
    pub active_violations: BTreeSet<DomainElement>,
    /// A focus violating the target under exactly one of the semantics.
    pub witness: Option<DomainElement>,
}

pub fn diff_semantics(graph: &Graph, schema: &ShapeSchema) -> Result<Vec<SemanticsDiff>> {
    diff_semantics_with(graph, schema, &Vocabulary::new())
}

pub fn diff_semantics_with(graph: &Graph, schema: &ShapeSchema, extra: &Vocabulary) -> Result<Vec<SemanticsDiff>> {
    let natural = validate_with(graph, schema, extra)?;
    let active = active_domain_validate(graph, schema)?;
    let mut diffs = Vec::new();
    for (index, target) in schema.targets().iter().enumerate() {
        let nat: BTreeSet<_> = natural.violations_for(index).map(|v| v.focus.clone()).collect();
        let act: BTreeSet<_> = active.violations_for(index).map(|v| v.focus.clone()).collect();
        if nat.is_empty() == act.is_empty() {
            continue;
        }
        let witness = nat.symmetric_difference(&act).min().cloned();
        diffs.push(SemanticsDiff {
            target_index: index,
            target: target.clone(),
            natural_conforms: nat.is_empty(),
            active_conforms: act.is_empty(),
            natural_violations: nat,
            active_violations: act,
            witness,
        });
    }
    Ok(diffs)
}

/// Evidence that the star interpretation and an enlarged finite domain
/// disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Counterexample {
    /// Number of fresh nodes in the enlarged domain.
    pub fresh_count: usize,
    /// What was compared: a conformance verdict, a shape name or a target side.
    pub subject: String,
    /// The element on which membership differs (`None` for verdicts).
    pub element: Option<DomainElement>,
    pub star: bool,
    pub brute_force: bool,
}

impl fmt::Display for Theorem1Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "with {} fresh node(s), {}", self.fresh_count, self.subject)?;
        if let Some(e) = &self.element {
            write!(f, " at {e}")?;
        }
        write!(f, ": star says {}, brute force says {}", self.star, self.brute_force)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theorem1Outcome {
    Pass {
        max_fresh: usize,
        /// Number of individual agreements checked.
        checks: usize,
    },
    Fail(Theorem1Counterexample),
}

impl Theorem1Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Theorem1Outcome::Pass { .. })
    }
}

pub fn check_theorem1(graph: &Graph, schema: &ShapeSchema, max_fresh: usize) -> Result<Theorem1Outcome> {
    check_theorem1_with(graph, schema, max_fresh, &Vocabulary::new())
}

/// Compares the star interpretation with brute force for 1..=`max_fresh`
/// fresh nodes: conformance verdicts, the membership of every named element
/// in every shape name and target side, and the membership of every fresh
/// element against that of the symbolic element.
pub fn check_theorem1_with(
    graph: &Graph,
    schema: &ShapeSchema,
    max_fresh: usize,
    extra: &Vocabulary,
) -> Result<Theorem1Outcome> {
    if max_fresh == 0 {
        return Err(Error::InvalidArgument("max_fresh must be at least 1".into()));
    }
    let sigma = sigma_for(graph, schema, extra);
    let star = star_interpretation(graph, &sigma);
    let star_i = star.interpretation();
    let star_eval = unfold(star_i, schema.definitions(), schema.dependency_order(), &sigma)?;
    let star_report = check_conformance(star_i, schema, &sigma)?;

    let mut subjects: Vec<(String, ShapeExpr)> = sigma
        .shape_names
        .iter()
        .map(|s| (format!("shape {s}"), ShapeExpr::Ref(s.clone())))
        .collect();
    for (i, t) in schema.targets().iter().enumerate() {
        subjects.push((format!("target {i} left side"), t.lhs.clone()));
        subjects.push((format!("target {i} right side"), t.rhs.clone()));
    }
    let star_bits: Vec<FixedBitSet> = subjects
        .iter()
        .map(|(_, s)| star_eval.eval(s))
        .collect::<Result<_>>()?;
    let star_index = |e: &DomainElement| star_i.index_of(e).or_else(|| star_i.index_of(&DomainElement::Star));

    let mut checks = 0;
    for m in 1..=max_fresh {
        let big = enlarged_interpretation(graph, &sigma, m);
        let report = check_conformance(&big, schema, &sigma)?;
        checks += 1;
        if report.conforms() != star_report.conforms() {
            return Ok(Theorem1Outcome::Fail(Theorem1Counterexample {
                fresh_count: m,
                subject: "conformance".into(),
                element: None,
                star: star_report.conforms(),
                brute_force: report.conforms(),
            }));
        }
        let eval = unfold(&big, schema.definitions(), schema.dependency_order(), &sigma)?;
        for ((subject, shape), expected) in subjects.iter().zip(&star_bits) {
            let got = eval.eval(shape)?;
            for (i, element) in big.domain().iter().enumerate() {
                let j = star_index(element).expect("the star domain has the symbolic element");
                checks += 1;
                if got.contains(i) != expected.contains(j) {
                    return Ok(Theorem1Outcome::Fail(Theorem1Counterexample {
                        fresh_count: m,
                        subject: subject.clone(),
                        element: Some(element.clone()),
                        star: expected.contains(j),
                        brute_force: got.contains(i),
                    }));
                }
            }
        }
    }
    Ok(Theorem1Outcome::Pass { max_fresh, checks })
}
