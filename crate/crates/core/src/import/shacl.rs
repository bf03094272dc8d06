use std::collections::BTreeMap;

use super::turtle::{parse_turtle, Located, Term, Triple, TurtleDoc, RDF_TYPE};
use super::PrefixMap;
use crate::error::{Error, Result, SourceLocation};
use crate::model::{PathExpr, ShapeExpr, ShapeName, ShapeSchema, Target};

pub const SH: &str = "http://www.w3.org/ns/shacl#";

fn sh(local: &str) -> String {
    format!("{SH}{local}")
}

fn local_of(iri: &str) -> Option<&str> {
    iri.strip_prefix(SH)
}

fn unsupported(iri: &str, location: SourceLocation) -> Error {
    let term = match local_of(iri) {
        Some(local) => format!("sh:{local}"),
        None => format!("<{iri}>"),
    };
    Error::UnsupportedConstruct { term, location }
}

const TARGETS: &[&str] = &["targetNode", "targetSubjectsOf", "targetObjectsOf", "targetClass"];
const SHAPE_TYPES: &[&str] = &["NodeShape", "PropertyShape"];
const COUNTS: &[&str] = &["minCount", "maxCount", "qualifiedMinCount"];
const CONSTRAINTS: &[&str] = &["and", "or", "not", "hasValue", "path", "qualifiedValueShape"];
const PATHS: &[&str] = &["inversePath", "alternativePath", "zeroOrMorePath", "zeroOrOnePath"];

fn is_supported(local: &str) -> bool {
    [TARGETS, SHAPE_TYPES, COUNTS, CONSTRAINTS, PATHS]
        .iter()
        .any(|group| group.contains(&local))
}

/// The first `sh:` term, in document order, outside the supported subset.
fn first_unsupported(doc: &TurtleDoc) -> Option<Error> {
    fn visit<'a>(object: &'a Located, out: &mut Vec<(SourceLocation, &'a str)>) {
        match &object.term {
            Term::Iri(iri) => out.push((object.location, iri)),
            Term::List(items) => items.iter().for_each(|i| visit(i, out)),
            _ => {}
        }
    }
    let mut terms = Vec::new();
    for t in &doc.triples {
        terms.push((t.predicate_location, t.predicate.as_str()));
        visit(&t.object, &mut terms);
    }
    terms
        .into_iter()
        .filter(|(_, iri)| local_of(iri).is_some_and(|l| !is_supported(l)))
        .min()
        .map(|(location, iri)| unsupported(iri, location))
}

/// Reads a SHACL shapes graph in Turtle.
pub fn import_shapes_graph(text: &str) -> Result<ShapeSchema> {
    import_shapes_graph_with_prefixes(text).map(|(schema, _)| schema)
}

/// As [`import_shapes_graph`], also returning the declared prefixes.
pub fn import_shapes_graph_with_prefixes(text: &str) -> Result<(ShapeSchema, PrefixMap)> {
    let doc = parse_turtle(text)?;
    if let Some(err) = first_unsupported(&doc) {
        return Err(err);
    }
    let schema = Translator { doc: &doc }.schema()?;
    Ok((schema, PrefixMap::new(doc.prefixes.clone())))
}

struct Translator<'d> {
    doc: &'d TurtleDoc,
}

impl<'d> Translator<'d> {
    fn schema(&self) -> Result<ShapeSchema> {
        let mut names: BTreeMap<Term, ShapeName> = BTreeMap::new();
        let mut order: Vec<Term> = Vec::new();
        for (k, id) in self.doc.top_level_blanks.iter().enumerate() {
            names.insert(Term::Blank(*id), ShapeName::new(format!("_anon{k}")));
            order.push(Term::Blank(*id));
        }
        for t in &self.doc.triples {
            if let Term::Iri(iri) = &t.subject {
                if !names.contains_key(&t.subject) && self.is_shape_subject(&t.subject) {
                    names.insert(t.subject.clone(), ShapeName::new(iri));
                    order.push(t.subject.clone());
                }
            }
        }

        let mut definitions = Vec::new();
        for subject in &order {
            definitions.push((names[subject].clone(), self.node_shape(subject)?));
        }

        let mut targets = Vec::new();
        for t in &self.doc.triples {
            let Some(kind) = local_of(&t.predicate).filter(|l| TARGETS.contains(l)) else {
                continue;
            };
            let rhs = match (&t.subject, names.get(&t.subject)) {
                (_, Some(name)) => ShapeExpr::Ref(name.clone()),
                (Term::Iri(iri), None) => ShapeExpr::shape_ref(iri.as_str()),
                _ => return Err(unsupported(&t.predicate, t.predicate_location)),
            };
            let value = self.iri_object(&t.object, &t.predicate)?;
            let lhs = match kind {
                "targetNode" => ShapeExpr::constant(value),
                "targetSubjectsOf" => ShapeExpr::at_least(1, PathExpr::prop(value), ShapeExpr::Top),
                "targetObjectsOf" => {
                    ShapeExpr::at_least(1, PathExpr::inverse(value), ShapeExpr::Top)
                }
                _ => ShapeExpr::at_least(1, PathExpr::prop(RDF_TYPE), ShapeExpr::constant(value)),
            };
            targets.push(Target::new(lhs, rhs));
        }
        ShapeSchema::from_parts(definitions, targets)
    }

    /// An IRI subject defines a shape when it is typed as one or carries a
    /// constraint; target triples alone only refer to the name.
    fn is_shape_subject(&self, subject: &Term) -> bool {
        self.doc.about(subject).any(|t| {
            if t.predicate == RDF_TYPE {
                matches!(&t.object.term, Term::Iri(o) if local_of(o).is_some_and(|l| SHAPE_TYPES.contains(&l)))
            } else {
                local_of(&t.predicate).is_some_and(|l| !TARGETS.contains(&l))
            }
        })
    }

    fn iri_object<'a>(&self, object: &'a Located, predicate: &str) -> Result<&'a str> {
        match &object.term {
            Term::Iri(iri) => Ok(iri),
            _ => Err(Error::parse(
                object.location,
                format!("{} expects an IRI", display_predicate(predicate)),
            )),
        }
    }

    fn count(&self, object: &Located, predicate: &str) -> Result<u32> {
        match &object.term {
            Term::Integer(digits) => digits.parse::<u32>().map_err(|_| {
                Error::parse(
                    object.location,
                    format!("{} must be a non-negative integer below 2^32", display_predicate(predicate)),
                )
            }),
            _ => Err(Error::parse(
                object.location,
                format!("{} expects an integer", display_predicate(predicate)),
            )),
        }
    }

    /// A shape in object position: IRIs are references, blank nodes inline.
    fn shape(&self, object: &Located) -> Result<ShapeExpr> {
        match &object.term {
            Term::Iri(iri) => Ok(ShapeExpr::shape_ref(iri.as_str())),
            Term::Blank(_) => self.node_shape(&object.term),
            _ => Err(Error::parse(object.location, "expected a shape (IRI or `[...]`)")),
        }
    }

    fn shape_list(&self, object: &Located) -> Result<Vec<ShapeExpr>> {
        match &object.term {
            Term::List(items) => items.iter().map(|i| self.shape(i)).collect(),
            _ => Err(Error::parse(object.location, "expected a collection `( ... )`")),
        }
    }

    /// The conjunction of every constraint on `subject`, in document order.
    fn node_shape(&self, subject: &Term) -> Result<ShapeExpr> {
        let triples: Vec<&Triple> = self.doc.about(subject).collect();
        let mut parts = Vec::new();
        let mut path: Option<&Triple> = None;
        let mut counts: Vec<&Triple> = Vec::new();
        let mut qualified_shape: Option<&Triple> = None;

        for t in &triples {
            if t.predicate == RDF_TYPE {
                if let Term::Iri(o) = &t.object.term {
                    if let Some(l) = local_of(o) {
                        if !SHAPE_TYPES.contains(&l) {
                            return Err(unsupported(o, t.object.location));
                        }
                    }
                }
                continue;
            }
            let Some(local) = local_of(&t.predicate) else {
                continue;
            };
            match local {
                "and" => parts.push(ShapeExpr::and_all(self.shape_list(&t.object)?)),
                "or" => parts.push(ShapeExpr::or_all(self.shape_list(&t.object)?)),
                "not" => parts.push(ShapeExpr::negate(self.shape(&t.object)?)),
                "hasValue" => parts.push(ShapeExpr::constant(self.iri_object(&t.object, &t.predicate)?)),
                "path" => {
                    if path.is_some() {
                        return Err(Error::parse(t.predicate_location, "more than one sh:path"));
                    }
                    path = Some(t);
                }
                "qualifiedValueShape" => {
                    if qualified_shape.is_some() {
                        return Err(Error::parse(
                            t.predicate_location,
                            "more than one sh:qualifiedValueShape",
                        ));
                    }
                    qualified_shape = Some(t);
                }
                l if COUNTS.contains(&l) => counts.push(t),
                l if TARGETS.contains(&l) => {}
                _ => return Err(unsupported(&t.predicate, t.predicate_location)),
            }
        }

        match path {
            None => {
                if let Some(t) = counts.first().copied().or(qualified_shape) {
                    return Err(Error::parse(
                        t.predicate_location,
                        format!("{} requires sh:path", display_predicate(&t.predicate)),
                    ));
                }
            }
            Some(path_triple) => {
                let path = self.path(&path_triple.object)?;
                let has_qualified_count = counts.iter().any(|t| t.predicate == sh("qualifiedMinCount"));
                if let Some(q) = qualified_shape {
                    if !has_qualified_count {
                        return Err(Error::parse(
                            q.predicate_location,
                            "sh:qualifiedValueShape requires sh:qualifiedMinCount",
                        ));
                    }
                }
                for t in counts {
                    let n = self.count(&t.object, &t.predicate)?;
                    let part = match local_of(&t.predicate).unwrap() {
                        "minCount" => at_least_or_top(n, path.clone(), ShapeExpr::Top),
                        "maxCount" => {
                            let n1 = n.checked_add(1).ok_or_else(|| {
                                Error::parse(t.object.location, "sh:maxCount is too large")
                            })?;
                            ShapeExpr::negate(ShapeExpr::at_least(n1, path.clone(), ShapeExpr::Top))
                        }
                        _ => {
                            let Some(q) = qualified_shape else {
                                return Err(Error::parse(
                                    t.predicate_location,
                                    "sh:qualifiedMinCount requires sh:qualifiedValueShape",
                                ));
                            };
                            at_least_or_top(n, path.clone(), self.shape(&q.object)?)
                        }
                    };
                    parts.push(part);
                }
            }
        }
        Ok(ShapeExpr::and_all(parts))
    }

    fn path(&self, object: &Located) -> Result<PathExpr> {
        match &object.term {
            Term::Iri(iri) => Ok(PathExpr::prop(iri.as_str())),
            Term::List(items) => {
                let mut paths = items.iter().map(|i| self.path(i));
                let first = paths
                    .next()
                    .ok_or_else(|| Error::parse(object.location, "empty sequence path"))??;
                paths.try_fold(first, |acc, p| Ok(PathExpr::compose(acc, p?)))
            }
            Term::Blank(_) => {
                let triples: Vec<&Triple> = self.doc.about(&object.term).collect();
                let [t] = triples.as_slice() else {
                    return Err(Error::parse(
                        object.location,
                        "a path node must carry exactly one path operator",
                    ));
                };
                match local_of(&t.predicate) {
                    Some("inversePath") => match &t.object.term {
                        Term::Iri(p) => Ok(PathExpr::inverse(p.as_str())),
                        _ => Err(Error::UnsupportedConstruct {
                            term: "sh:inversePath of a complex path".into(),
                            location: t.object.location,
                        }),
                    },
                    Some("alternativePath") => {
                        let Term::List(items) = &t.object.term else {
                            return Err(Error::parse(t.object.location, "expected a collection `( ... )`"));
                        };
                        let mut paths = items.iter().map(|i| self.path(i));
                        let first = paths
                            .next()
                            .ok_or_else(|| Error::parse(t.object.location, "empty alternative path"))??;
                        paths.try_fold(first, |acc, p| Ok(PathExpr::union(acc, p?)))
                    }
                    Some("zeroOrMorePath") => Ok(PathExpr::star(self.path(&t.object)?)),
                    Some("zeroOrOnePath") => Ok(PathExpr::optional(self.path(&t.object)?)),
                    _ => Err(unsupported(&t.predicate, t.predicate_location)),
                }
            }
            Term::Integer(_) | Term::Literal(_) => Err(Error::parse(object.location, "expected a path")),
        }
    }
}

fn at_least_or_top(n: u32, path: PathExpr, body: ShapeExpr) -> ShapeExpr {
    if n == 0 {
        ShapeExpr::Top
    } else {
        ShapeExpr::at_least(n, path, body)
    }
}

fn display_predicate(iri: &str) -> String {
    match local_of(iri) {
        Some(l) => format!("sh:{l}"),
        None => format!("<{iri}>"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEAD: &str = "@prefix ex: <http://www.example.org/> .\n@prefix sh: <http://www.w3.org/ns/shacl#> .\n";
    const EX: &str = "http://www.example.org/";

    fn ex(local: &str) -> String {
        format!("{EX}{local}")
    }

    fn import(body: &str) -> Result<ShapeSchema> {
        import_shapes_graph(&format!("{HEAD}{body}"))
    }

    #[test]
    fn undefined_refs() {
        let s = import(
            "ex:MyShape a sh:NodeShape ;\n    sh:and ( ex:NoDef ex:AlsoNoDef ) .\nex:MyShape sh:targetSubjectsOf ex:r .",
        )
        .unwrap();
        let my = ShapeName::new(ex("MyShape"));
        assert_eq!(
            s.definition(&my),
            Some(&ShapeExpr::and(
                ShapeExpr::shape_ref(ex("NoDef").as_str()),
                ShapeExpr::shape_ref(ex("AlsoNoDef").as_str())
            ))
        );
        assert_eq!(s.definitions().len(), 1);
        assert_eq!(
            s.targets(),
            &[Target::new(
                ShapeExpr::at_least(1, PathExpr::prop(ex("r").as_str()), ShapeExpr::Top),
                ShapeExpr::Ref(my)
            )]
        );
    }

    #[test]
    fn double_negation() {
        let s = import(
            "ex:MyShape a sh:NodeShape ;\n    sh:not [ sh:not [ sh:hasValue ex:MyNode ] ] .\nex:MyShape sh:targetNode ex:MyNode .",
        )
        .unwrap();
        assert_eq!(
            s.definition(&ShapeName::new(ex("MyShape"))),
            Some(&ShapeExpr::negate(ShapeExpr::negate(ShapeExpr::constant(ex("MyNode").as_str()))))
        );
        assert_eq!(s.targets()[0].lhs, ShapeExpr::constant(ex("MyNode").as_str()));
    }

    #[test]
    fn de_morgan() {
        let s = import(
            "ex:MyShape a sh:NodeShape ;\n    sh:not [\n        sh:and (\n            [ sh:not [\n                  sh:path ex:r ;\n                  sh:minCount 1 ] ]\n            [ sh:not [ sh:hasValue ex:MyNode ] ] ) ] .\nex:MyShape sh:targetNode ex:MyNode .",
        )
        .unwrap();
        let r = PathExpr::prop(ex("r").as_str());
        assert_eq!(
            s.definition(&ShapeName::new(ex("MyShape"))),
            Some(&ShapeExpr::negate(ShapeExpr::and(
                ShapeExpr::negate(ShapeExpr::at_least(1, r, ShapeExpr::Top)),
                ShapeExpr::negate(ShapeExpr::constant(ex("MyNode").as_str()))
            )))
        );
    }

    #[test]
    fn not_author() {
        let s = import(
            "ex:NotAnAuthor a sh:NodeShape ;\n    sh:not [\n        a sh:PropertyShape ;\n        sh:path (ex:author ex:venue) ;\n        sh:qualifiedValueShape [ sh:hasValue ex:LPNMR22 ] ;\n        sh:qualifiedMinCount 1 ] .\nex:NotAnAuthor sh:targetNode ex:MarcoMaratea .",
        )
        .unwrap();
        assert_eq!(
            s.definition(&ShapeName::new(ex("NotAnAuthor"))),
            Some(&ShapeExpr::negate(ShapeExpr::at_least(
                1,
                PathExpr::compose(PathExpr::prop(ex("author").as_str()), PathExpr::prop(ex("venue").as_str())),
                ShapeExpr::constant(ex("LPNMR22").as_str())
            )))
        );
    }

    #[test]
    fn counts_and_complex_paths() {
        let s = import(
            "ex:S sh:path [ sh:alternativePath ( ex:p [ sh:inversePath ex:q ] [ sh:zeroOrMorePath [ sh:zeroOrOnePath ex:r ] ] ) ] ;\n  sh:minCount 0 ; sh:maxCount 2 .",
        )
        .unwrap();
        let p = PathExpr::union(
            PathExpr::union(PathExpr::prop(ex("p").as_str()), PathExpr::inverse(ex("q").as_str())),
            PathExpr::star(PathExpr::optional(PathExpr::prop(ex("r").as_str()))),
        );
        assert_eq!(
            s.definition(&ShapeName::new(ex("S"))),
            Some(&ShapeExpr::and(
                ShapeExpr::Top,
                ShapeExpr::negate(ShapeExpr::at_least(3, p, ShapeExpr::Top))
            ))
        );
    }

    #[test]
    fn empty_lists_and_empty_shapes() {
        let s = import("ex:A sh:and () . ex:B sh:or () . ex:C a sh:NodeShape .").unwrap();
        assert_eq!(s.definition(&ShapeName::new(ex("A"))), Some(&ShapeExpr::Top));
        assert_eq!(
            s.definition(&ShapeName::new(ex("B"))),
            Some(&ShapeExpr::negate(ShapeExpr::Top))
        );
        assert_eq!(s.definition(&ShapeName::new(ex("C"))), Some(&ShapeExpr::Top));
    }

    #[test]
    fn anonymous_shapes_are_numbered() {
        let s = import("[ sh:hasValue ex:a ] sh:targetNode ex:a .\n[ sh:targetClass ex:C ] .").unwrap();
        let names: Vec<_> = s.definitions().keys().map(|n| n.as_str().to_owned()).collect();
        assert_eq!(names, ["_anon0", "_anon1"]);
        assert_eq!(
            s.targets()[1],
            Target::new(
                ShapeExpr::at_least(1, PathExpr::prop(RDF_TYPE), ShapeExpr::constant(ex("C").as_str())),
                ShapeExpr::shape_ref("_anon1")
            )
        );
    }

    #[test]
    fn target_only_subject_stays_undefined() {
        let s = import("ex:S sh:targetObjectsOf ex:p .").unwrap();
        assert!(s.definitions().is_empty());
        assert_eq!(
            s.targets()[0].lhs,
            ShapeExpr::at_least(1, PathExpr::inverse(ex("p").as_str()), ShapeExpr::Top)
        );
    }

    #[test]
    fn no_shacl_terms_means_empty_schema() {
        assert!(import("ex:a ex:p ex:b . ex:b a ex:C .").unwrap().is_empty());
        assert!(import_shapes_graph("").unwrap().is_empty());
    }

    #[test]
    fn unsupported_terms_are_reported_with_location() {
        let err = import("ex:S a sh:NodeShape ;\n  sh:property [ sh:path ex:p ] .").unwrap_err();
        assert_eq!(
            err,
            Error::UnsupportedConstruct {
                term: "sh:property".into(),
                location: SourceLocation::new(4, 3)
            }
        );
        let err = import("ex:S sh:path [ sh:oneOrMorePath ex:p ] ; sh:minCount 1 .").unwrap_err();
        assert!(matches!(err, Error::UnsupportedConstruct { ref term, .. } if term == "sh:oneOrMorePath"));
        let err = import("ex:S sh:path [ sh:inversePath ( ex:p ex:q ) ] ; sh:minCount 1 .").unwrap_err();
        assert!(matches!(err, Error::UnsupportedConstruct { .. }));
        let err = import("ex:S sh:path ex:p ; sh:pattern \"^A\" .").unwrap_err();
        assert_eq!(err.to_string(), "unsupported construct sh:pattern at 3:21");
        let err = import("ex:S a sh:SPARQLConstraint .").unwrap_err();
        assert!(matches!(err, Error::UnsupportedConstruct { ref term, .. } if term == "sh:SPARQLConstraint"));
    }

    #[test]
    fn malformed_shapes_are_parse_errors() {
        assert!(matches!(import("ex:S sh:minCount 1 ."), Err(Error::Parse { .. })));
        assert!(matches!(import("ex:S sh:path ex:p ; sh:minCount ex:x ."), Err(Error::Parse { .. })));
        assert!(matches!(
            import("ex:S sh:path ex:p ; sh:qualifiedValueShape [ sh:hasValue ex:a ] ."),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(import("ex:S sh:not ex:S ."), Err(Error::CyclicSchema { .. })));
    }
}
