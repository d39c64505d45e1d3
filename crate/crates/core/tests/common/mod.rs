#![allow(dead_code)]

use mvm_core::canonical::add_edge;
use mvm_core::io::parse_model;
use mvm_core::{Component, Level, Limits, Model, Parametrization, RegulatoryGraph};
use rand::seq::IteratorRandom;
use rand::Rng;

pub const FEEDBACK: &str = "\
component v 2
component u 1
edge u 1 v
edge v 2 v
edge v 1 u
param v v:0 u:0 = 2
param v v:2 u:0 = 1
param v v:0 u:1 = 2
param v v:2 u:1 = 1
param u v:0 = 0
param u v:1 = 1
";

pub const FEEDBACK_REDUCED: &str = "\
component v 2
component u 1
edge v 2 v
edge v 1 u
param v v:0 = 2
param v v:2 = 1
param u v:0 = 0
param u v:1 = 1
";

pub const RAMP: &str = "\
component v 2
component u 1
edge v 1 v
edge u 1 v
param v v:0 u:0 = 0
param v v:1 u:0 = 0
param v v:0 u:1 = 1
param v v:1 u:1 = 2
param u = 0
";

pub const RAMP_NORMALIZED: &str = "\
component v 2
component u 1
edge v 1 v
edge u 1 v
param v v:0 u:0 = 0
param v v:1 u:0 = 0
param v v:0 u:1 = 2
param v v:1 u:1 = 2
param u = 0
";

pub const RAMP_MINIMAL: &str = "\
component v 2
component u 1
edge u 1 v
param v u:0 = 0
param v u:1 = 2
param u = 0
";

pub fn example(text: &str) -> Model {
    parse_model(text).expect("example documents parse")
}

/// Uniformly random tables over a random graph of the given components.
pub fn random_over(rng: &mut impl Rng, components: Vec<Component>) -> Model {
    let base = RegulatoryGraph::new(components.clone(), vec![]).unwrap();
    let density: f64 = rng.gen();
    let edges = base
        .possible_edges()
        .filter(|_| rng.gen_bool(density))
        .collect();
    let graph = RegulatoryGraph::new(components, edges).unwrap();
    let params = Parametrization::from_fn(&graph, &Limits::default(), |v, _| {
        rng.gen_range(0..=graph.max_level(v))
    })
    .unwrap();
    Model::new(graph, params).unwrap()
}

/// A random model with up to `max_components` components of level at most `max_level`.
///
/// Half of the models get a few extra edges that split contexts without changing any value,
/// so that non-observable edges are common.
pub fn random_model(rng: &mut impl Rng, max_components: usize, max_level: Level) -> Model {
    let n = rng.gen_range(1..=max_components);
    let components = (0..n)
        .map(|i| Component::new(format!("c{i}"), rng.gen_range(1..=max_level)))
        .collect();
    let mut model = random_over(rng, components);
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=3) {
            let missing = model.graph().missing_edges().choose(rng);
            match missing {
                Some(edge) => model = add_edge(&model, edge).unwrap(),
                None => break,
            }
        }
    }
    model
}

/// Replaces one random parameter by a different value.
pub fn mutate(rng: &mut impl Rng, model: &Model) -> Model {
    let graph = model.graph();
    let v = graph.component_ids().choose(rng).unwrap();
    let ctx = rng.gen_range(0..model.space(v).len());
    let old = model.parameter(v, ctx);
    let value = (0..=graph.max_level(v))
        .filter(|&x| x != old)
        .choose(rng)
        .unwrap();
    model.with_parameter(v, ctx, value).unwrap()
}
