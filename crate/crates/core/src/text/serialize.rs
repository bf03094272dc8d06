use std::fmt::{self, Write};

use super::dsl::{is_name_char, is_name_start, KEYWORDS};
use crate::model::{PathExpr, ShapeExpr, ShapeSchema};

/// Whether `text` can be written without angle brackets.
pub fn is_bare_name(text: &str) -> bool {
    if KEYWORDS.contains(&text) {
        return false;
    }
    let (head, tail) = match text.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (text, None),
    };
    let mut chars = head.chars();
    let head_ok = chars.next().is_some_and(is_name_start) && chars.all(is_name_char);
    let tail_ok = tail.is_none_or(|t| !t.is_empty() && t.chars().all(is_name_char));
    head_ok && tail_ok
}

/// The DSL spelling of a name: bare when possible, otherwise `<text>`.
pub fn dsl_name(text: &str) -> String {
    if is_bare_name(text) {
        text.to_owned()
    } else {
        format!("<{text}>")
    }
}

/// Writes a schema in the DSL: definitions in name order, then targets.
pub fn serialize_schema(schema: &ShapeSchema) -> String {
    let mut out = String::new();
    for (name, body) in schema.definitions() {
        let _ = writeln!(
            out,
            "shape {} := {} .",
            dsl_name(name.as_str()),
            serialize_shape(body)
        );
    }
    for target in schema.targets() {
        let _ = writeln!(
            out,
            "target {} <= {} .",
            serialize_shape(&target.lhs),
            serialize_shape(&target.rhs)
        );
    }
    out
}

pub fn serialize_shape(shape: &ShapeExpr) -> String {
    serialize_shape_with(shape, &dsl_name)
}

pub fn serialize_path(path: &PathExpr) -> String {
    serialize_path_with(path, &dsl_name)
}

/// As [`serialize_shape`], spelling every name with `name`.
pub fn serialize_shape_with(shape: &ShapeExpr, name: &dyn Fn(&str) -> String) -> String {
    let mut out = String::new();
    write_shape(&mut out, shape, 1, name);
    out
}

pub fn serialize_path_with(path: &PathExpr, name: &dyn Fn(&str) -> String) -> String {
    let mut out = String::new();
    write_path(&mut out, path, 1, name);
    out
}

// Shape levels: 1 `|`, 2 `&`, 3 prefix operators, 4 atoms.
fn shape_level(shape: &ShapeExpr) -> u8 {
    match shape {
        ShapeExpr::Or(..) => 1,
        ShapeExpr::And(..) => 2,
        ShapeExpr::Not(_) | ShapeExpr::AtLeast(..) | ShapeExpr::Exists(..) | ShapeExpr::Forall(..) => 3,
        _ => 4,
    }
}

fn write_shape(out: &mut String, shape: &ShapeExpr, min: u8, name: &dyn Fn(&str) -> String) {
    if shape_level(shape) < min {
        out.push('(');
        write_shape(out, shape, 1, name);
        out.push(')');
        return;
    }
    match shape {
        ShapeExpr::Top => out.push_str("top"),
        ShapeExpr::Ref(s) => out.push_str(&name(s.as_str())),
        ShapeExpr::Constant(c) => {
            out.push('{');
            out.push_str(&name(c.as_str()));
            out.push('}');
        }
        ShapeExpr::Or(a, b) => {
            write_shape(out, a, 1, name);
            out.push_str(" | ");
            write_shape(out, b, 2, name);
        }
        ShapeExpr::And(a, b) => {
            write_shape(out, a, 2, name);
            out.push_str(" & ");
            write_shape(out, b, 3, name);
        }
        ShapeExpr::Not(a) => {
            out.push('!');
            write_shape(out, a, 3, name);
        }
        ShapeExpr::AtLeast(n, path, body) => {
            let _ = write!(out, ">= {n} ");
            write_path(out, path, 1, name);
            out.push_str(" . ");
            write_shape(out, body, 3, name);
        }
        ShapeExpr::Exists(path, body) | ShapeExpr::Forall(path, body) => {
            out.push_str(if matches!(shape, ShapeExpr::Exists(..)) {
                "exists "
            } else {
                "forall "
            });
            write_path(out, path, 1, name);
            out.push_str(" . ");
            write_shape(out, body, 3, name);
        }
        ShapeExpr::Eq(p, path) | ShapeExpr::Disj(p, path) => {
            out.push_str(if matches!(shape, ShapeExpr::Eq(..)) { "eq(" } else { "disj(" });
            out.push_str(&name(p.as_str()));
            out.push_str(", ");
            write_path(out, path, 1, name);
            out.push(')');
        }
        ShapeExpr::Closed(props) => {
            out.push_str("closed(");
            for (i, p) in props.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&name(p.as_str()));
            }
            out.push(')');
        }
    }
}

// Path levels: 1 `|`, 2 `/`, 3 postfix, 4 atoms.
fn path_level(path: &PathExpr) -> u8 {
    match path {
        PathExpr::Union(..) => 1,
        PathExpr::Compose(..) => 2,
        PathExpr::Star(_) | PathExpr::Optional(_) => 3,
        _ => 4,
    }
}

fn write_path(out: &mut String, path: &PathExpr, min: u8, name: &dyn Fn(&str) -> String) {
    if path_level(path) < min {
        out.push('(');
        write_path(out, path, 1, name);
        out.push(')');
        return;
    }
    match path {
        PathExpr::Prop(p) => out.push_str(&name(p.as_str())),
        PathExpr::Inverse(p) => {
            out.push('^');
            out.push_str(&name(p.as_str()));
        }
        PathExpr::Union(a, b) => {
            write_path(out, a, 1, name);
            out.push_str(" | ");
            write_path(out, b, 2, name);
        }
        PathExpr::Compose(a, b) => {
            write_path(out, a, 2, name);
            out.push('/');
            write_path(out, b, 3, name);
        }
        PathExpr::Star(e) => {
            write_path(out, e, 3, name);
            out.push('*');
        }
        PathExpr::Optional(e) => {
            write_path(out, e, 3, name);
            out.push('?');
        }
    }
}

impl fmt::Display for ShapeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_shape(self))
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_path(self))
    }
}
