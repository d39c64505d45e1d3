mod common;

use common::*;
use mvm_core::canonical::{canonize, complete, equivalent_by_completion, is_canonical};
use mvm_core::dynamics::{async_ts, derivative, equivalent_by_ts, sync_ts, update, Sign};
use mvm_core::io::{parse_model, serialize_model};
use mvm_core::minimization::{equivalent_by_minimization, minimize};
use mvm_core::normalization::{is_normalized, mtv, mtv_traced, normalize, observable_in_param};
use mvm_core::oracle::{
    delta_oracle, distance_oracle, mtv_oracle, ts_observable_oracle, ts_observable_oracle_mtv,
};
use mvm_core::{Model, StateSpace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seeded(seed: u64) -> Model {
    random_model(&mut ChaCha8Rng::seed_from_u64(seed), 4, 3)
}

fn states(m: &Model) -> StateSpace {
    StateSpace::new(m.graph(), m.limits()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let m = seeded(seed);
        let text = serialize_model(&m);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(serialize_model(&back), text);
    }

    #[test]
    fn contexts_partition_the_state_space(seed in any::<u64>()) {
        let m = seeded(seed);
        let graph = m.graph();
        for v in graph.component_ids() {
            let expected: usize = graph
                .component_ids()
                .map(|u| graph.thresholds(u, v).len() + 1)
                .product();
            prop_assert_eq!(m.space(v).len(), expected);
            let contexts = graph.contexts(v, m.limits()).unwrap();
            for s in states(&m).iter() {
                prop_assert_eq!(contexts.iter().filter(|c| c.contains(&s)).count(), 1);
                let ctx = m.space(v).index_of_state(&s);
                prop_assert_eq!(&contexts[ctx], &graph.context_of(v, &s).unwrap());
            }
        }
    }

    #[test]
    fn derivative_identities(seed in any::<u64>()) {
        let m = seeded(seed);
        for s in states(&m).iter() {
            for v in m.graph().component_ids() {
                let d = derivative(&m, v, &s);
                let k = m.parameter(v, m.space(v).index_of_state(&s));
                let level = s.level(v);
                prop_assert_eq!(d, Sign::towards(level, k));
                prop_assert_eq!(d.value(), delta_oracle(&m, v, &s).unwrap());
                let target = mtv_oracle(&m, v, &s).unwrap();
                prop_assert_eq!(d, Sign::towards(level, target));
                prop_assert_eq!(i32::from(update(&m, v, &s)) - i32::from(level), d.value());
            }
        }
    }

    #[test]
    fn transition_system_shape(seed in any::<u64>()) {
        let m = seeded(seed);
        let n = m.graph().len();
        let asynchronous = async_ts(&m).unwrap();
        for s in states(&m).iter() {
            let next = asynchronous.successors(&s);
            prop_assert!(next.len() <= n);
            for t in next {
                let diff: Vec<i32> = s.levels().iter().zip(t.levels())
                    .map(|(a, b)| i32::from(*b) - i32::from(*a))
                    .filter(|d| *d != 0)
                    .collect();
                prop_assert!(diff == [1] || diff == [-1]);
            }
        }
        let synchronous = sync_ts(&m).unwrap();
        prop_assert_eq!(synchronous.len(), states(&m).len());
        for s in states(&m).iter() {
            prop_assert_eq!(synchronous.successors(&s).len(), 1);
        }
    }

    #[test]
    fn mtv_is_constant_on_contexts(seed in any::<u64>()) {
        let m = seeded(seed);
        for v in m.graph().component_ids() {
            let mut seen = vec![None; m.space(v).len()];
            for s in states(&m).iter() {
                let ctx = m.space(v).index_of_state(&s);
                let value = mtv_oracle(&m, v, &s).unwrap();
                prop_assert_eq!(*seen[ctx].get_or_insert(value), value);
                prop_assert_eq!(mtv(&m, v, ctx), value);
            }
        }
    }

    #[test]
    fn observability_agrees_with_oracles(seed in any::<u64>()) {
        let m = seeded(seed);
        let normal = normalize(&m);
        for e in m.graph().edges() {
            let in_ts = ts_observable_oracle(&m, e).unwrap();
            prop_assert_eq!(in_ts, ts_observable_oracle_mtv(&m, e).unwrap());
            prop_assert_eq!(in_ts, observable_in_param(&normal, e).unwrap());
            if !observable_in_param(&m, e).unwrap() {
                prop_assert!(!in_ts);
            }
        }
    }

    #[test]
    fn recursion_depth_is_bounded_by_distance(seed in any::<u64>()) {
        let m = seeded(seed);
        for v in m.graph().component_ids() {
            let own_intervals = m.graph().activity_intervals(v, v).unwrap().len();
            for ctx in 0..m.space(v).len() {
                let (_, depth) = mtv_traced(&m, v, ctx);
                let distance = distance_oracle(&m, v, &m.space(v).context(ctx)).unwrap();
                prop_assert!(depth <= distance, "depth {} > distance {}", depth, distance);
                prop_assert!(distance < own_intervals);
            }
        }
    }

    #[test]
    fn values_beyond_the_own_interval_are_interchangeable(seed in any::<u64>(), pick in any::<u64>()) {
        let m = seeded(seed);
        let reference = async_ts(&m).unwrap();
        for v in m.graph().component_ids() {
            for ctx in 0..m.space(v).len() {
                let own = m.space(v).interval(ctx, v);
                let k = m.parameter(v, ctx);
                let replacement = if k < own.low {
                    Some((pick % u64::from(own.low)) as u16)
                } else if k >= own.high && own.high <= m.graph().max_level(v) {
                    let span = u64::from(m.graph().max_level(v) - own.high + 1);
                    Some(own.high + (pick % span) as u16)
                } else {
                    None
                };
                if let Some(j) = replacement {
                    let changed = m.with_parameter(v, ctx, j).unwrap();
                    prop_assert_eq!(&async_ts(&changed).unwrap(), &reference);
                }
            }
        }
    }

    #[test]
    fn transforms_land_in_their_classes(seed in any::<u64>()) {
        let m = seeded(seed);
        prop_assert!(is_canonical(&canonize(&m)));
        prop_assert!(is_normalized(&normalize(&m)));
        prop_assert!(complete(&m).unwrap().graph().is_complete());
        let min = minimize(&m);
        prop_assert!(is_normalized(&min));
        for e in min.graph().edges() {
            prop_assert!(observable_in_param(&min, e).unwrap());
        }
    }

    #[test]
    fn equivalence_methods_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_model(&mut rng, 4, 3);
        let others = [mutate(&mut rng, &m), canonize(&m), minimize(&m), mutate(&mut rng, &minimize(&m))];
        for other in &others {
            let t = equivalent_by_ts(&m, other).unwrap();
            prop_assert_eq!(equivalent_by_completion(&m, other).unwrap(), t);
            prop_assert_eq!(equivalent_by_minimization(&m, other).unwrap(), t);
            let sync_equal = sync_ts(&m).unwrap() == sync_ts(other).unwrap();
            prop_assert_eq!(sync_equal, t);
        }
    }
}
