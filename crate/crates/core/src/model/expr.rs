use std::collections::BTreeSet;
use std::num::NonZeroU32;

use super::name::{Name, NodeName, PropName, ShapeName};

/// Path expressions: binary relations built from property names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathExpr {
    Prop(PropName),
    /// Inverse is only defined on a bare property name.
    Inverse(PropName),
    Union(Box<PathExpr>, Box<PathExpr>),
    Compose(Box<PathExpr>, Box<PathExpr>),
    /// Reflexive-transitive closure.
    Star(Box<PathExpr>),
    /// Reflexive closure.
    Optional(Box<PathExpr>),
}

impl PathExpr {
    pub fn prop(p: impl Into<PropName>) -> Self {
        PathExpr::Prop(p.into())
    }

    pub fn inverse(p: impl Into<PropName>) -> Self {
        PathExpr::Inverse(p.into())
    }

    pub fn union(a: PathExpr, b: PathExpr) -> Self {
        PathExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn compose(a: PathExpr, b: PathExpr) -> Self {
        PathExpr::Compose(Box::new(a), Box::new(b))
    }

    pub fn star(e: PathExpr) -> Self {
        PathExpr::Star(Box::new(e))
    }

    pub fn optional(e: PathExpr) -> Self {
        PathExpr::Optional(Box::new(e))
    }

    pub fn properties(&self, out: &mut BTreeSet<PropName>) {
        match self {
            PathExpr::Prop(p) | PathExpr::Inverse(p) => {
                out.insert(p.clone());
            }
            PathExpr::Union(a, b) | PathExpr::Compose(a, b) => {
                a.properties(out);
                b.properties(out);
            }
            PathExpr::Star(e) | PathExpr::Optional(e) => e.properties(out),
        }
    }
}

/// Shapes: unary formulas over nodes.
///
/// `Forall` and `Exists` are sugar; [`desugar`] rewrites them into the core
/// constructors and evaluation expects desugared input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeExpr {
    Top,
    Ref(ShapeName),
    Constant(NodeName),
    And(Box<ShapeExpr>, Box<ShapeExpr>),
    Or(Box<ShapeExpr>, Box<ShapeExpr>),
    Not(Box<ShapeExpr>),
    AtLeast(NonZeroU32, PathExpr, Box<ShapeExpr>),
    Eq(PropName, PathExpr),
    Disj(PropName, PathExpr),
    Closed(BTreeSet<PropName>),
    Forall(PathExpr, Box<ShapeExpr>),
    Exists(PathExpr, Box<ShapeExpr>),
}

impl ShapeExpr {
    pub fn shape_ref(s: impl Into<ShapeName>) -> Self {
        ShapeExpr::Ref(s.into())
    }

    pub fn constant(c: impl Into<NodeName>) -> Self {
        ShapeExpr::Constant(c.into())
    }

    pub fn and(a: ShapeExpr, b: ShapeExpr) -> Self {
        ShapeExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ShapeExpr, b: ShapeExpr) -> Self {
        ShapeExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn negate(a: ShapeExpr) -> Self {
        ShapeExpr::Not(Box::new(a))
    }

    /// `≥n E.φ`. Panics if `n` is zero; use the variant directly with a
    /// checked `NonZeroU32` when `n` is untrusted.
    pub fn at_least(n: u32, path: PathExpr, body: ShapeExpr) -> Self {
        let n = NonZeroU32::new(n).expect("AtLeast count must be nonzero");
        ShapeExpr::AtLeast(n, path, Box::new(body))
    }

    pub fn equals(p: impl Into<PropName>, path: PathExpr) -> Self {
        ShapeExpr::Eq(p.into(), path)
    }

    pub fn disjoint(p: impl Into<PropName>, path: PathExpr) -> Self {
        ShapeExpr::Disj(p.into(), path)
    }

    pub fn closed<I, P>(props: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<PropName>,
    {
        ShapeExpr::Closed(props.into_iter().map(Into::into).collect())
    }

    pub fn forall(path: PathExpr, body: ShapeExpr) -> Self {
        ShapeExpr::Forall(path, Box::new(body))
    }

    pub fn exists(path: PathExpr, body: ShapeExpr) -> Self {
        ShapeExpr::Exists(path, Box::new(body))
    }

    /// Left fold with `And`; the empty conjunction is `Top`.
    pub fn and_all(items: impl IntoIterator<Item = ShapeExpr>) -> Self {
        items
            .into_iter()
            .reduce(ShapeExpr::and)
            .unwrap_or(ShapeExpr::Top)
    }

    /// Left fold with `Or`; the empty disjunction is `¬⊤`.
    pub fn or_all(items: impl IntoIterator<Item = ShapeExpr>) -> Self {
        items
            .into_iter()
            .reduce(ShapeExpr::or)
            .unwrap_or_else(|| ShapeExpr::negate(ShapeExpr::Top))
    }

    pub fn is_core(&self) -> bool {
        match self {
            ShapeExpr::Forall(..) | ShapeExpr::Exists(..) => false,
            ShapeExpr::Top
            | ShapeExpr::Ref(_)
            | ShapeExpr::Constant(_)
            | ShapeExpr::Eq(..)
            | ShapeExpr::Disj(..)
            | ShapeExpr::Closed(_) => true,
            ShapeExpr::And(a, b) | ShapeExpr::Or(a, b) => a.is_core() && b.is_core(),
            ShapeExpr::Not(a) | ShapeExpr::AtLeast(_, _, a) => a.is_core(),
        }
    }

    /// Shape names referenced anywhere inside the expression.
    pub fn shape_refs(&self, out: &mut BTreeSet<ShapeName>) {
        self.visit(&mut |name| {
            if let Name::Shape(s) = name {
                out.insert(s);
            }
        });
    }

    /// Every symbol occurring in the expression, tagged by kind.
    pub fn symbols(&self, out: &mut BTreeSet<Name>) {
        self.visit(&mut |name| {
            out.insert(name);
        });
    }

    fn visit(&self, f: &mut dyn FnMut(Name)) {
        let path_props = |path: &PathExpr, f: &mut dyn FnMut(Name)| {
            let mut props = BTreeSet::new();
            path.properties(&mut props);
            props.into_iter().for_each(|p| f(Name::Property(p)));
        };
        match self {
            ShapeExpr::Top => {}
            ShapeExpr::Ref(s) => f(Name::Shape(s.clone())),
            ShapeExpr::Constant(c) => f(Name::Node(c.clone())),
            ShapeExpr::And(a, b) | ShapeExpr::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            ShapeExpr::Not(a) => a.visit(f),
            ShapeExpr::AtLeast(_, path, body)
            | ShapeExpr::Forall(path, body)
            | ShapeExpr::Exists(path, body) => {
                path_props(path, f);
                body.visit(f);
            }
            ShapeExpr::Eq(p, path) | ShapeExpr::Disj(p, path) => {
                f(Name::Property(p.clone()));
                path_props(path, f);
            }
            ShapeExpr::Closed(q) => q.iter().for_each(|p| f(Name::Property(p.clone()))),
        }
    }

    /// Nesting depth; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            ShapeExpr::Top
            | ShapeExpr::Ref(_)
            | ShapeExpr::Constant(_)
            | ShapeExpr::Eq(..)
            | ShapeExpr::Disj(..)
            | ShapeExpr::Closed(_) => 1,
            ShapeExpr::And(a, b) | ShapeExpr::Or(a, b) => 1 + a.depth().max(b.depth()),
            ShapeExpr::Not(a)
            | ShapeExpr::AtLeast(_, _, a)
            | ShapeExpr::Forall(_, a)
            | ShapeExpr::Exists(_, a) => 1 + a.depth(),
        }
    }
}

/// Rewrites `∀E.φ` into `¬≥1 E.¬φ` and `∃E.φ` into `≥1 E.φ`, recursively.
/// Core constructors are left as they are.
pub fn desugar(shape: &ShapeExpr) -> ShapeExpr {
    let one = NonZeroU32::MIN;
    match shape {
        ShapeExpr::Forall(path, body) => ShapeExpr::negate(ShapeExpr::AtLeast(
            one,
            path.clone(),
            Box::new(ShapeExpr::negate(desugar(body))),
        )),
        ShapeExpr::Exists(path, body) => {
            ShapeExpr::AtLeast(one, path.clone(), Box::new(desugar(body)))
        }
        ShapeExpr::And(a, b) => ShapeExpr::and(desugar(a), desugar(b)),
        ShapeExpr::Or(a, b) => ShapeExpr::or(desugar(a), desugar(b)),
        ShapeExpr::Not(a) => ShapeExpr::negate(desugar(a)),
        ShapeExpr::AtLeast(n, path, body) => {
            ShapeExpr::AtLeast(*n, path.clone(), Box::new(desugar(body)))
        }
        ShapeExpr::Top
        | ShapeExpr::Ref(_)
        | ShapeExpr::Constant(_)
        | ShapeExpr::Eq(..)
        | ShapeExpr::Disj(..)
        | ShapeExpr::Closed(_) => shape.clone(),
    }
}
