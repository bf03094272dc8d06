use proptest::prelude::*;

use shacl_dl::eval::eval_shape;
use shacl_dl::gen::{node, property, Generator};
use shacl_dl::model::{Name, NodeName, PropName, ShapeExpr, Vocabulary};
use shacl_dl::natural::{star_interpretation, validate};
use shacl_dl::reference::{brute_force_validate, check_theorem1};
use shacl_dl::text::{parse_graph, serialize_graph, GraphFormat};

fn sigma(generator: &Generator) -> Vocabulary {
    let c = generator.config();
    let mut sigma = Vocabulary::new();
    (0..c.constant_pool).for_each(|i| sigma.insert(Name::Node(NodeName::new(node(i)))));
    (0..c.max_properties).for_each(|i| sigma.insert(Name::Property(PropName::new(property(i)))));
    sigma
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn brute_force_verdict_does_not_depend_on_fresh_count(seed in any::<u64>()) {
        let inst = Generator::new(seed).instance();
        let star = validate(&inst.graph, &inst.schema).unwrap().conforms();
        for m in 1..=3 {
            let brute = brute_force_validate(&inst.graph, &inst.schema, m).unwrap().conforms();
            prop_assert_eq!(brute, star, "m = {}", m);
        }
    }

    #[test]
    fn star_agrees_with_enlarged_domains(seed in any::<u64>()) {
        let inst = Generator::new(seed).instance();
        let outcome = check_theorem1(&inst.graph, &inst.schema, 2).unwrap();
        prop_assert!(outcome.passed(), "{:?}", outcome);
    }

    #[test]
    fn counting_is_antitone(seed in any::<u64>(), n in 1u32..4) {
        let mut generator = Generator::new(seed);
        let sigma = sigma(&generator);
        let g = generator.graph();
        let ctx = star_interpretation(&g, &sigma);
        let (path, body) = (generator.path(2), generator.shape(3));
        let more = eval_shape(&ShapeExpr::at_least(n + 1, path.clone(), body.clone()), ctx.interpretation(), &sigma).unwrap();
        let fewer = eval_shape(&ShapeExpr::at_least(n, path, body), ctx.interpretation(), &sigma).unwrap();
        prop_assert!(more.is_subset(&fewer));
    }

    #[test]
    fn forall_and_exists_are_dual(seed in any::<u64>()) {
        let mut generator = Generator::new(seed);
        let sigma = sigma(&generator);
        let g = generator.graph();
        let ctx = star_interpretation(&g, &sigma);
        let (path, body) = (generator.path(2), generator.shape(3));
        let interp = ctx.interpretation();
        let all = eval_shape(&ShapeExpr::forall(path.clone(), body.clone()), interp, &sigma).unwrap();
        let some_not = eval_shape(&ShapeExpr::exists(path, ShapeExpr::negate(body)), interp, &sigma).unwrap();
        let top = eval_shape(&ShapeExpr::Top, interp, &sigma).unwrap();
        prop_assert!(all.iter().all(|e| !some_not.contains(e)));
        prop_assert_eq!(all.len() + some_not.len(), top.len());
    }

    #[test]
    fn graphs_survive_both_formats(seed in any::<u64>()) {
        let g = Generator::new(seed).graph();
        for format in [GraphFormat::NTriples, GraphFormat::SimpleFacts] {
            let text = serialize_graph(&g, format);
            prop_assert_eq!(&parse_graph(&text, format).unwrap(), &g);
        }
    }
}
