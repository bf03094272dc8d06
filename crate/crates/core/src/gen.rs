//! Seeded generation of small random graphs, shapes and schemas.
//!
//! Every instance is a pure function of the seed, so a failing case can be
//! replayed by exporting `SHACL_DL_SEED`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Fact, Graph, PathExpr, ShapeExpr, ShapeName, ShapeSchema, Target};

pub const SEED_VAR: &str = "SHACL_DL_SEED";
pub const DEFAULT_SEED: u64 = 20_221_005;

/// The seed named by `SHACL_DL_SEED` (decimal or `0x` hex), or
/// [`DEFAULT_SEED`] when it is unset.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(text) => parse_seed(&text),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn parse_seed(text: &str) -> Result<u64> {
    let text = text.trim();
    let parsed = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => text.parse(),
    };
    parsed.map_err(|_| Error::InvalidArgument(format!("{SEED_VAR} must be an unsigned integer, got `{text}`")))
}

/// Size limits for generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub max_nodes: usize,
    pub max_properties: usize,
    pub max_facts: usize,
    /// Constants are drawn from this many node names; those past the
    /// graph's nodes are absent from it.
    pub constant_pool: usize,
    pub max_shape_depth: usize,
    pub max_path_depth: usize,
    pub max_count: u32,
    pub max_definitions: usize,
    pub max_targets: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_nodes: 6,
            max_properties: 3,
            max_facts: 10,
            constant_pool: 8,
            max_shape_depth: 4,
            max_path_depth: 2,
            max_count: 3,
            max_definitions: 3,
            max_targets: 3,
        }
    }
}

/// A graph together with a schema over the same names.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub schema: ShapeSchema,
}

pub struct Generator {
    rng: ChaCha8Rng,
    config: GenConfig,
    /// Shape names the shape being generated may refer to.
    refs: Vec<ShapeName>,
}

pub fn node(i: usize) -> String {
    format!("n{i}")
}

pub fn property(i: usize) -> String {
    format!("p{i}")
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator::with_config(seed, GenConfig::default())
    }

    pub fn with_config(seed: u64, config: GenConfig) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
            refs: Vec::new(),
        }
    }

    pub fn config(&self) -> &GenConfig {
        &self.config
    }

    /// Up to `max_facts` facts over `max_nodes` nodes and `max_properties`
    /// properties. Node `n0..` are the only names used.
    pub fn graph(&mut self) -> Graph {
        let c = self.config;
        let facts = self.rng.random_range(0..=c.max_facts);
        (0..facts)
            .map(|_| {
                Fact::new(
                    property(self.rng.random_range(0..c.max_properties)).as_str(),
                    node(self.rng.random_range(0..c.max_nodes)).as_str(),
                    node(self.rng.random_range(0..c.max_nodes)).as_str(),
                )
            })
            .collect()
    }

    fn prop_name(&mut self) -> String {
        property(self.rng.random_range(0..self.config.max_properties))
    }

    pub fn path(&mut self, depth: usize) -> PathExpr {
        let leaf = depth <= 1 || self.rng.random_bool(0.5);
        if leaf {
            let p = self.prop_name();
            return if self.rng.random_bool(0.3) {
                PathExpr::inverse(p.as_str())
            } else {
                PathExpr::prop(p.as_str())
            };
        }
        match self.rng.random_range(0..4) {
            0 => PathExpr::union(self.path(depth - 1), self.path(depth - 1)),
            1 => PathExpr::compose(self.path(depth - 1), self.path(depth - 1)),
            2 => PathExpr::star(self.path(depth - 1)),
            _ => PathExpr::optional(self.path(depth - 1)),
        }
    }

    fn atom(&mut self) -> ShapeExpr {
        let c = self.config;
        let choice = self.rng.random_range(0..if self.refs.is_empty() { 5 } else { 6 });
        match choice {
            0 => ShapeExpr::Top,
            1 => ShapeExpr::constant(node(self.rng.random_range(0..c.constant_pool)).as_str()),
            2 => {
                let p = self.prop_name();
                ShapeExpr::equals(p.as_str(), self.path(c.max_path_depth))
            }
            3 => {
                let p = self.prop_name();
                ShapeExpr::disjoint(p.as_str(), self.path(c.max_path_depth))
            }
            4 => {
                let q: Vec<String> = (0..c.max_properties)
                    .filter(|_| self.rng.random_bool(0.4))
                    .map(property)
                    .collect();
                ShapeExpr::closed(q.iter().map(String::as_str))
            }
            _ => ShapeExpr::Ref(self.refs[self.rng.random_range(0..self.refs.len())].clone()),
        }
    }

    /// A shape of depth at most `depth` (atoms have depth 1), possibly using
    /// `∀`/`∃`.
    pub fn shape(&mut self, depth: usize) -> ShapeExpr {
        if depth <= 1 || self.rng.random_bool(0.25) {
            return self.atom();
        }
        let d = depth - 1;
        let path_depth = self.config.max_path_depth;
        match self.rng.random_range(0..6) {
            0 => ShapeExpr::and(self.shape(d), self.shape(d)),
            1 => ShapeExpr::or(self.shape(d), self.shape(d)),
            2 => ShapeExpr::negate(self.shape(d)),
            3 => {
                let n = self.rng.random_range(1..=self.config.max_count);
                let path = self.path(path_depth);
                ShapeExpr::at_least(n, path, self.shape(d))
            }
            4 => {
                let path = self.path(path_depth);
                ShapeExpr::forall(path, self.shape(d))
            }
            _ => {
                let path = self.path(path_depth);
                ShapeExpr::exists(path, self.shape(d))
            }
        }
    }

    /// Shape names `s0, s1, ...` where `s<i>` only refers to earlier names
    /// or to the undefined name `u`, plus 1..=`max_targets` targets.
    pub fn schema(&mut self) -> ShapeSchema {
        let c = self.config;
        let defs = self.rng.random_range(0..=c.max_definitions);
        self.refs = vec![ShapeName::new("u")];
        let mut definitions = Vec::new();
        for i in 0..defs {
            let body = self.shape(c.max_shape_depth);
            let name = ShapeName::new(format!("s{i}"));
            definitions.push((name.clone(), body));
            self.refs.push(name);
        }
        let targets = (0..self.rng.random_range(1..=c.max_targets))
            .map(|_| {
                let lhs = self.shape(c.max_shape_depth);
                let rhs = self.shape(c.max_shape_depth);
                Target::new(lhs, rhs)
            })
            .collect();
        self.refs.clear();
        ShapeSchema::from_parts(definitions, targets).expect("generated definitions are acyclic")
    }

    pub fn instance(&mut self) -> Instance {
        Instance {
            graph: self.graph(),
            schema: self.schema(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let mut a = Generator::new(7);
        let mut b = Generator::new(7);
        for _ in 0..20 {
            let (x, y) = (a.instance(), b.instance());
            assert_eq!(x.graph, y.graph);
            assert_eq!(x.schema, y.schema);
        }
    }

    #[test]
    fn instances_respect_limits() {
        let mut g = Generator::new(1);
        for _ in 0..200 {
            let inst = g.instance();
            assert!(inst.graph.nodes().len() <= 6);
            assert!(inst.graph.properties().len() <= 3);
            assert!(!inst.schema.targets().is_empty() && inst.schema.targets().len() <= 3);
            for body in inst.schema.definitions().values() {
                assert!(body.depth() <= 4);
            }
            for t in inst.schema.targets() {
                assert!(t.lhs.depth() <= 4 && t.rhs.depth() <= 4);
            }
        }
    }

    #[test]
    fn seeds_parse() {
        assert_eq!(parse_seed("42").unwrap(), 42);
        assert_eq!(parse_seed(" 0xff ").unwrap(), 255);
        assert!(parse_seed("x").is_err());
    }
}
