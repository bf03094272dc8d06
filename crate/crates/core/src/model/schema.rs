use std::collections::{BTreeMap, BTreeSet};

use super::expr::ShapeExpr;
use super::name::ShapeName;
use crate::error::{Error, Result};

/// An inclusion `lhs ⊑ rhs`: every element satisfying `lhs` must satisfy `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Target {
    pub lhs: ShapeExpr,
    pub rhs: ShapeExpr,
}

impl Target {
    pub fn new(lhs: ShapeExpr, rhs: ShapeExpr) -> Self {
        Target { lhs, rhs }
    }
}

/// Acyclic shape definitions plus target inclusions.
///
/// Construction rejects cyclic definitions, so every value of this type
/// admits a bottom-up unfolding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeSchema {
    definitions: BTreeMap<ShapeName, ShapeExpr>,
    targets: Vec<Target>,
    order: Vec<ShapeName>,
}

impl ShapeSchema {
    pub fn new(definitions: BTreeMap<ShapeName, ShapeExpr>, targets: Vec<Target>) -> Result<Self> {
        let order = dependency_order(&definitions)?;
        Ok(ShapeSchema {
            definitions,
            targets,
            order,
        })
    }

    /// Builds a schema from a definition list, rejecting duplicate names.
    pub fn from_parts(
        definitions: impl IntoIterator<Item = (ShapeName, ShapeExpr)>,
        targets: Vec<Target>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, shape) in definitions {
            if map.contains_key(&name) {
                return Err(Error::DuplicateDefinition(name));
            }
            map.insert(name, shape);
        }
        ShapeSchema::new(map, targets)
    }

    pub fn empty() -> Self {
        ShapeSchema {
            definitions: BTreeMap::new(),
            targets: Vec::new(),
            order: Vec::new(),
        }
    }

    pub fn definitions(&self) -> &BTreeMap<ShapeName, ShapeExpr> {
        &self.definitions
    }

    pub fn definition(&self, name: &ShapeName) -> Option<&ShapeExpr> {
        self.definitions.get(name)
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    /// Defined shape names, each after every defined name it depends on.
    pub fn dependency_order(&self) -> &[ShapeName] {
        &self.order
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty() && self.targets.is_empty()
    }
}

/// Topologically sorts the defined shape names so each comes after every
/// defined name occurring in its body. Undefined names are left out.
///
/// Ties are broken by name so the order is deterministic.
pub fn dependency_order(definitions: &BTreeMap<ShapeName, ShapeExpr>) -> Result<Vec<ShapeName>> {
    // deps[s] = defined names used by φ_s
    let deps: BTreeMap<&ShapeName, BTreeSet<ShapeName>> = definitions
        .iter()
        .map(|(name, body)| {
            let mut refs = BTreeSet::new();
            body.shape_refs(&mut refs);
            refs.retain(|r| definitions.contains_key(r));
            (name, refs)
        })
        .collect();

    let mut remaining: BTreeMap<&ShapeName, usize> =
        deps.iter().map(|(name, d)| (*name, d.len())).collect();
    let mut users: BTreeMap<&ShapeName, Vec<&ShapeName>> = BTreeMap::new();
    for (name, d) in &deps {
        for dep in d {
            let key = definitions.get_key_value(dep).map(|(k, _)| k).unwrap();
            users.entry(key).or_default().push(name);
        }
    }

    let mut ready: BTreeSet<&ShapeName> = remaining
        .iter()
        .filter(|(_, &n)| n == 0)
        .map(|(name, _)| *name)
        .collect();
    let mut order = Vec::with_capacity(definitions.len());
    while let Some(next) = ready.pop_first() {
        order.push(next.clone());
        remaining.remove(next);
        for user in users.get(next).into_iter().flatten() {
            let count = remaining.get_mut(user).unwrap();
            *count -= 1;
            if *count == 0 {
                ready.insert(user);
            }
        }
    }

    if order.len() == definitions.len() {
        Ok(order)
    } else {
        let stuck: BTreeSet<&ShapeName> = remaining.keys().copied().collect();
        Err(Error::CyclicSchema {
            cycle: find_cycle(&deps, &stuck),
        })
    }
}

// Every stuck node has a stuck dependency, so walking dependencies from any
// of them must revisit a node.
fn find_cycle(
    deps: &BTreeMap<&ShapeName, BTreeSet<ShapeName>>,
    stuck: &BTreeSet<&ShapeName>,
) -> Vec<ShapeName> {
    let mut path: Vec<ShapeName> = Vec::new();
    let mut current = (*stuck.first().unwrap()).clone();
    loop {
        if let Some(pos) = path.iter().position(|n| *n == current) {
            return path.split_off(pos);
        }
        path.push(current.clone());
        current = deps[&current]
            .iter()
            .find(|d| stuck.contains(d))
            .unwrap()
            .clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PathExpr;

    fn defs(items: Vec<(&str, ShapeExpr)>) -> BTreeMap<ShapeName, ShapeExpr> {
        items
            .into_iter()
            .map(|(n, s)| (ShapeName::new(n), s))
            .collect()
    }

    #[test]
    fn chain_orders_dependency_first() {
        let d = defs(vec![
            ("s1", ShapeExpr::and(ShapeExpr::shape_ref("s2"), ShapeExpr::Top)),
            ("s2", ShapeExpr::Top),
        ]);
        assert_eq!(
            dependency_order(&d).unwrap(),
            vec![ShapeName::new("s2"), ShapeName::new("s1")]
        );
    }

    #[test]
    fn self_loop_is_cyclic() {
        let d = defs(vec![("s", ShapeExpr::negate(ShapeExpr::shape_ref("s")))]);
        assert_eq!(
            dependency_order(&d),
            Err(Error::CyclicSchema {
                cycle: vec![ShapeName::new("s")]
            })
        );
    }

    #[test]
    fn undefined_names_are_excluded() {
        let d = defs(vec![(
            "MyShape",
            ShapeExpr::and(ShapeExpr::shape_ref("NoDef"), ShapeExpr::shape_ref("AlsoNoDef")),
        )]);
        assert_eq!(dependency_order(&d).unwrap(), vec![ShapeName::new("MyShape")]);
    }

    #[test]
    fn longer_cycle_is_reported_with_witness() {
        let d = defs(vec![
            ("a", ShapeExpr::shape_ref("b")),
            (
                "b",
                ShapeExpr::at_least(1, PathExpr::prop("p"), ShapeExpr::shape_ref("c")),
            ),
            ("c", ShapeExpr::or(ShapeExpr::shape_ref("a"), ShapeExpr::Top)),
            ("d", ShapeExpr::shape_ref("a")),
        ]);
        match dependency_order(&d) {
            Err(Error::CyclicSchema { cycle }) => {
                let names: BTreeSet<_> = cycle.iter().map(|s| s.as_str()).collect();
                assert_eq!(names, BTreeSet::from(["a", "b", "c"]));
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_definitions_are_rejected() {
        let err = ShapeSchema::from_parts(
            vec![
                (ShapeName::new("s"), ShapeExpr::Top),
                (ShapeName::new("s"), ShapeExpr::Top),
            ],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateDefinition(ShapeName::new("s")));
    }
}
