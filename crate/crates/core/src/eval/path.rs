use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use fixedbitset::FixedBitSet;

use crate::model::{FiniteInterpretation, PathExpr, Relation};

/// A path expression flattened into an arena, with a per-source memo for
/// every compound node. The memo lives as long as the compiled path, which
/// never outlives a single evaluation call.
pub(crate) struct CompiledPath<'i> {
    nodes: Vec<Node<'i>>,
    root: usize,
    memo: Vec<HashMap<usize, Rc<[usize]>>>,
    size: usize,
}

enum Node<'i> {
    Forward(Option<&'i Relation>),
    Backward(Option<&'i Relation>),
    Union(usize, usize),
    Compose(usize, usize),
    Star(usize),
    Optional(usize),
}

impl<'i> CompiledPath<'i> {
    pub(crate) fn new(path: &PathExpr, interp: &'i FiniteInterpretation) -> Self {
        let mut nodes = Vec::new();
        let root = compile(path, interp, &mut nodes);
        let memo = (0..nodes.len()).map(|_| HashMap::new()).collect();
        CompiledPath {
            nodes,
            root,
            memo,
            size: interp.size(),
        }
    }

    /// E(a) as sorted, duplicate-free domain indices.
    pub(crate) fn successors(&mut self, a: usize) -> Rc<[usize]> {
        self.node_successors(self.root, a)
    }

    fn node_successors(&mut self, id: usize, a: usize) -> Rc<[usize]> {
        match self.nodes[id] {
            Node::Forward(rel) => return Rc::from(rel.map_or(&[][..], |r| r.successors(a))),
            Node::Backward(rel) => return Rc::from(rel.map_or(&[][..], |r| r.predecessors(a))),
            _ => {}
        }
        if let Some(hit) = self.memo[id].get(&a) {
            return Rc::clone(hit);
        }
        let result: Rc<[usize]> = match self.nodes[id] {
            Node::Forward(_) | Node::Backward(_) => unreachable!(),
            Node::Union(l, r) => {
                let left = self.node_successors(l, a);
                let right = self.node_successors(r, a);
                merge_sorted(&left, &right).into()
            }
            Node::Compose(l, r) => {
                let mut out = FixedBitSet::with_capacity(self.size);
                let mids = self.node_successors(l, a);
                for &m in mids.iter() {
                    out.extend(self.node_successors(r, m).iter().copied());
                }
                out.ones().collect()
            }
            Node::Star(inner) => {
                let mut seen = FixedBitSet::with_capacity(self.size);
                let mut queue = VecDeque::from([a]);
                seen.insert(a);
                while let Some(x) = queue.pop_front() {
                    for &y in self.node_successors(inner, x).iter() {
                        if !seen.put(y) {
                            queue.push_back(y);
                        }
                    }
                }
                seen.ones().collect()
            }
            Node::Optional(inner) => {
                let base = self.node_successors(inner, a);
                merge_sorted(&base, &[a]).into()
            }
        };
        self.memo[id].insert(a, Rc::clone(&result));
        result
    }
}

fn compile<'i>(path: &PathExpr, interp: &'i FiniteInterpretation, nodes: &mut Vec<Node<'i>>) -> usize {
    let node = match path {
        PathExpr::Prop(p) => Node::Forward(interp.relation(p)),
        PathExpr::Inverse(p) => Node::Backward(interp.relation(p)),
        PathExpr::Union(a, b) => {
            let (a, b) = (compile(a, interp, nodes), compile(b, interp, nodes));
            Node::Union(a, b)
        }
        PathExpr::Compose(a, b) => {
            let (a, b) = (compile(a, interp, nodes), compile(b, interp, nodes));
            Node::Compose(a, b)
        }
        PathExpr::Star(e) => Node::Star(compile(e, interp, nodes)),
        PathExpr::Optional(e) => Node::Optional(compile(e, interp, nodes)),
    };
    nodes.push(node);
    nodes.len() - 1
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Whole-relation evaluation, one relational-algebra step per constructor.
/// Kept separate from [`CompiledPath`] so each can check the other.
pub(crate) fn relation_of(path: &PathExpr, interp: &FiniteInterpretation) -> BTreeSet<(usize, usize)> {
    let identity = || (0..interp.size()).map(|a| (a, a));
    match path {
        PathExpr::Prop(p) => interp
            .relation(p)
            .map(|r| r.pairs().collect())
            .unwrap_or_default(),
        PathExpr::Inverse(p) => interp
            .relation(p)
            .map(|r| r.pairs().map(|(a, b)| (b, a)).collect())
            .unwrap_or_default(),
        PathExpr::Union(a, b) => {
            let mut out = relation_of(a, interp);
            out.extend(relation_of(b, interp));
            out
        }
        PathExpr::Compose(a, b) => compose(&relation_of(a, interp), &relation_of(b, interp)),
        PathExpr::Star(e) => {
            let step = relation_of(e, interp);
            let mut closure: BTreeSet<(usize, usize)> = identity().collect();
            closure.extend(step.iter().copied());
            loop {
                let next = compose(&closure, &step);
                let before = closure.len();
                closure.extend(next);
                if closure.len() == before {
                    break closure;
                }
            }
        }
        PathExpr::Optional(e) => {
            let mut out = relation_of(e, interp);
            out.extend(identity());
            out
        }
    }
}

fn compose(left: &BTreeSet<(usize, usize)>, right: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(c, b) in right {
        by_source.entry(c).or_default().push(b);
    }
    let mut out = BTreeSet::new();
    for &(a, c) in left {
        if let Some(bs) = by_source.get(&c) {
            out.extend(bs.iter().map(|&b| (a, b)));
        }
    }
    out
}
