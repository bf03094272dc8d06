//! Rendering of conformance reports and the other command outputs.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::eval::ConformanceReport;
use crate::import::PrefixMap;
use crate::model::{DomainElement, NodeName, ShapeExpr};
use crate::natural::{GraphAnswers, STAR_GLOSS};
use crate::reference::{SemanticsDiff, Theorem1Outcome};
use crate::text::{dsl_name, serialize_shape_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format `{other}` (expected text or json)")),
        }
    }
}

/// Spells names for output: abbreviated through the prefixes when any are
/// declared, in full otherwise.
#[derive(Debug, Clone, Default)]
pub struct Names {
    prefixes: PrefixMap,
}

impl Names {
    pub fn new(prefixes: PrefixMap) -> Self {
        Names { prefixes }
    }

    pub fn name(&self, text: &str) -> String {
        self.prefixes.compact(text)
    }

    pub fn element(&self, e: &DomainElement) -> String {
        match e {
            DomainElement::Node(n) => self.name(n.as_str()),
            DomainElement::Star => "*".to_owned(),
        }
    }

    pub fn shape(&self, shape: &ShapeExpr) -> String {
        serialize_shape_with(shape, &|n| dsl_name(&self.name(n)))
    }
}

#[derive(Serialize)]
struct JsonReport {
    conforms: bool,
    violations: Vec<JsonViolation>,
}

#[derive(Serialize)]
struct JsonViolation {
    target: usize,
    focus: String,
    lhs: String,
    rhs: String,
}

pub fn conformance_json(report: &ConformanceReport, names: &Names) -> String {
    let json = JsonReport {
        conforms: report.conforms(),
        violations: report
            .violations()
            .iter()
            .map(|v| JsonViolation {
                target: v.target_index,
                focus: names.element(&v.focus),
                lhs: names.shape(&v.lhs),
                rhs: names.shape(&v.rhs),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&json).expect("report serializes");
    out.push('\n');
    out
}

pub fn conformance_text(report: &ConformanceReport, names: &Names) -> String {
    let mut out = String::new();
    if report.conforms() {
        out.push_str("conforms: true\n");
        return out;
    }
    let n = report.violations().len();
    let _ = writeln!(out, "conforms: false ({n} violation{})", if n == 1 { "" } else { "s" });
    let mut current = None;
    for v in report.violations() {
        if current != Some(v.target_index) {
            current = Some(v.target_index);
            let _ = writeln!(
                out,
                "target {}: {} <= {}",
                v.target_index,
                names.shape(&v.lhs),
                names.shape(&v.rhs)
            );
        }
        let _ = writeln!(out, "  focus {}", describe(&v.focus, names));
    }
    out
}

fn describe(e: &DomainElement, names: &Names) -> String {
    match e {
        DomainElement::Star => format!("* ({STAR_GLOSS})"),
        DomainElement::Node(_) => names.element(e),
    }
}

pub fn render_conformance(report: &ConformanceReport, format: ReportFormat, names: &Names) -> String {
    match format {
        ReportFormat::Text => conformance_text(report, names),
        ReportFormat::Json => conformance_json(report, names),
    }
}

#[derive(Serialize)]
struct JsonAnswers {
    answers: Vec<JsonAnswer>,
    other: bool,
}

#[derive(Serialize)]
struct JsonAnswer {
    node: String,
    member: bool,
}

/// One `name: bool` line per queried node in the order given, then the row
/// for every other node.
pub fn render_answers(
    answers: &GraphAnswers,
    order: &[NodeName],
    format: ReportFormat,
    names: &Names,
) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            for n in order {
                let _ = writeln!(out, "{}: {}", names.name(n.as_str()), answers.answers[n]);
            }
            let _ = writeln!(out, "* (any other node): {}", answers.star_verdict);
            out
        }
        ReportFormat::Json => {
            let json = JsonAnswers {
                answers: order
                    .iter()
                    .map(|n| JsonAnswer {
                        node: names.name(n.as_str()),
                        member: answers.answers[n],
                    })
                    .collect(),
                other: answers.star_verdict,
            };
            serde_json::to_string_pretty(&json).expect("answers serialize") + "\n"
        }
    }
}

#[derive(Serialize)]
struct JsonDiff {
    target: usize,
    lhs: String,
    rhs: String,
    natural_conforms: bool,
    active_conforms: bool,
    natural_violations: Vec<String>,
    active_violations: Vec<String>,
    witness: Option<String>,
}

pub fn render_diffs(diffs: &[SemanticsDiff], format: ReportFormat, names: &Names) -> String {
    let list = |set: &std::collections::BTreeSet<DomainElement>| -> Vec<String> {
        set.iter().map(|e| names.element(e)).collect()
    };
    let listing = |set| {
        let items = list(set);
        if items.is_empty() {
            "none".to_owned()
        } else {
            items.join(", ")
        }
    };
    match format {
        ReportFormat::Text => {
            if diffs.is_empty() {
                return "no differences\n".to_owned();
            }
            let mut out = String::new();
            for d in diffs {
                let _ = writeln!(
                    out,
                    "target {}: {} <= {}",
                    d.target_index,
                    names.shape(&d.target.lhs),
                    names.shape(&d.target.rhs)
                );
                let _ = writeln!(
                    out,
                    "  natural: {} (violations: {})",
                    verdict(d.natural_conforms),
                    listing(&d.natural_violations)
                );
                let _ = writeln!(
                    out,
                    "  active domain: {} (violations: {})",
                    verdict(d.active_conforms),
                    listing(&d.active_violations)
                );
                if let Some(w) = &d.witness {
                    let _ = writeln!(out, "  witness: {}", describe(w, names));
                }
            }
            out
        }
        ReportFormat::Json => {
            let json: Vec<JsonDiff> = diffs
                .iter()
                .map(|d| JsonDiff {
                    target: d.target_index,
                    lhs: names.shape(&d.target.lhs),
                    rhs: names.shape(&d.target.rhs),
                    natural_conforms: d.natural_conforms,
                    active_conforms: d.active_conforms,
                    natural_violations: list(&d.natural_violations),
                    active_violations: list(&d.active_violations),
                    witness: d.witness.as_ref().map(|w| names.element(w)),
                })
                .collect();
            serde_json::to_string_pretty(&json).expect("diffs serialize") + "\n"
        }
    }
}

fn verdict(conforms: bool) -> &'static str {
    if conforms {
        "conforms"
    } else {
        "does not conform"
    }
}

#[derive(Serialize)]
struct JsonTheorem1 {
    pass: bool,
    max_fresh: Option<usize>,
    checks: Option<usize>,
    counterexample: Option<String>,
}

pub fn render_theorem1(outcome: &Theorem1Outcome, format: ReportFormat, names: &Names) -> String {
    let counterexample = match outcome {
        Theorem1Outcome::Fail(c) => {
            let mut c = c.clone();
            c.element = c.element.map(|e| match e {
                DomainElement::Node(n) => DomainElement::Node(NodeName::new(names.name(n.as_str()))),
                star => star,
            });
            Some(c.to_string())
        }
        Theorem1Outcome::Pass { .. } => None,
    };
    match (format, outcome) {
        (ReportFormat::Text, Theorem1Outcome::Pass { max_fresh, checks }) => {
            format!("pass: star and brute force agree for 1..={max_fresh} fresh nodes ({checks} checks)\n")
        }
        (ReportFormat::Text, Theorem1Outcome::Fail(_)) => {
            format!("fail: {}\n", counterexample.unwrap_or_default())
        }
        (ReportFormat::Json, _) => {
            let (max_fresh, checks) = match outcome {
                Theorem1Outcome::Pass { max_fresh, checks } => (Some(*max_fresh), Some(*checks)),
                Theorem1Outcome::Fail(_) => (None, None),
            };
            let json = JsonTheorem1 {
                pass: outcome.passed(),
                max_fresh,
                checks,
                counterexample,
            };
            serde_json::to_string_pretty(&json).expect("outcome serializes") + "\n"
        }
    }
}
