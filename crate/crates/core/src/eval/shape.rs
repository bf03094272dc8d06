use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use super::path::CompiledPath;
use crate::error::{Error, Result};
use crate::model::{FiniteInterpretation, PathExpr, PropName, ShapeExpr, ShapeName};

/// Evaluates shapes to bitsets over the domain of one interpretation.
///
/// Shape names are looked up in an overlay that starts out as the
/// interpretation's own assignment; [`Evaluator::bind`] adds to it, which is
/// how definitions get unfolded bottom-up.
pub(crate) struct Evaluator<'i> {
    interp: &'i FiniteInterpretation,
    sigma_props: &'i BTreeSet<PropName>,
    shapes: BTreeMap<ShapeName, FixedBitSet>,
}

impl<'i> Evaluator<'i> {
    pub(crate) fn new(interp: &'i FiniteInterpretation, sigma_props: &'i BTreeSet<PropName>) -> Self {
        let shapes = interp
            .shape_names()
            .map(|s| (s.clone(), interp.shape_bits(s).unwrap().clone()))
            .collect();
        Evaluator {
            interp,
            sigma_props,
            shapes,
        }
    }

    /// Starts from an empty shape assignment, ignoring whatever the
    /// interpretation carries.
    pub(crate) fn without_shapes(
        interp: &'i FiniteInterpretation,
        sigma_props: &'i BTreeSet<PropName>,
    ) -> Self {
        Evaluator {
            interp,
            sigma_props,
            shapes: BTreeMap::new(),
        }
    }

    pub(crate) fn bind(&mut self, name: ShapeName, bits: FixedBitSet) {
        self.shapes.insert(name, bits);
    }

    pub(crate) fn into_shapes(self) -> BTreeMap<ShapeName, FixedBitSet> {
        self.shapes
    }

    pub(crate) fn full(&self) -> FixedBitSet {
        let mut all = FixedBitSet::with_capacity(self.interp.size());
        all.insert_range(..);
        all
    }

    pub(crate) fn eval(&self, shape: &ShapeExpr) -> Result<FixedBitSet> {
        let n = self.interp.size();
        Ok(match shape {
            ShapeExpr::Top => self.full(),
            ShapeExpr::Ref(s) => self
                .shapes
                .get(s)
                .cloned()
                .ok_or_else(|| Error::UnboundShapeName(s.clone()))?,
            ShapeExpr::Constant(c) => {
                let i = self
                    .interp
                    .constant(c)
                    .ok_or_else(|| Error::ConstantNotInterpreted(c.clone()))?;
                let mut bits = FixedBitSet::with_capacity(n);
                bits.insert(i);
                bits
            }
            ShapeExpr::And(a, b) => {
                let mut bits = self.eval(a)?;
                bits.intersect_with(&self.eval(b)?);
                bits
            }
            ShapeExpr::Or(a, b) => {
                let mut bits = self.eval(a)?;
                bits.union_with(&self.eval(b)?);
                bits
            }
            ShapeExpr::Not(a) => complement(self.eval(a)?),
            ShapeExpr::AtLeast(count, path, body) => {
                self.at_least(count.get() as usize, path, &self.eval(body)?)
            }
            ShapeExpr::Exists(path, body) => self.at_least(1, path, &self.eval(body)?),
            ShapeExpr::Forall(path, body) => {
                // ¬ ≥1 E.¬φ
                let violators = complement(self.eval(body)?);
                complement(self.at_least(1, path, &violators))
            }
            ShapeExpr::Eq(p, path) => {
                let direct = self.interp.relation(p);
                let mut reach = CompiledPath::new(path, self.interp);
                let mut bits = FixedBitSet::with_capacity(n);
                for a in 0..n {
                    let ps = direct.map_or(&[][..], |r| r.successors(a));
                    if *ps == *reach.successors(a) {
                        bits.insert(a);
                    }
                }
                bits
            }
            ShapeExpr::Disj(p, path) => {
                let direct = self.interp.relation(p);
                let mut reach = CompiledPath::new(path, self.interp);
                let mut bits = FixedBitSet::with_capacity(n);
                for a in 0..n {
                    let ps = direct.map_or(&[][..], |r| r.successors(a));
                    let es = reach.successors(a);
                    if ps.iter().all(|b| es.binary_search(b).is_err()) {
                        bits.insert(a);
                    }
                }
                bits
            }
            ShapeExpr::Closed(allowed) => {
                let mut bits = self.full();
                for p in self.sigma_props.difference(allowed) {
                    if let Some(rel) = self.interp.relation(p) {
                        for a in 0..n {
                            if !rel.successors(a).is_empty() {
                                bits.set(a, false);
                            }
                        }
                    }
                }
                bits
            }
        })
    }

    fn at_least(&self, count: usize, path: &PathExpr, body: &FixedBitSet) -> FixedBitSet {
        let n = self.interp.size();
        let mut reach = CompiledPath::new(path, self.interp);
        let mut bits = FixedBitSet::with_capacity(n);
        for a in 0..n {
            let hits = reach
                .successors(a)
                .iter()
                .filter(|&&b| body.contains(b))
                .take(count)
                .count();
            if hits >= count {
                bits.insert(a);
            }
        }
        bits
    }
}

fn complement(mut bits: FixedBitSet) -> FixedBitSet {
    bits.toggle_range(..);
    bits
}
