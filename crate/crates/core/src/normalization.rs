//! Monotone target values, normalization and edge observability.
//!
//! The monotone target value (MTV) of a state in dimension `v` is the level towards which
//! `v` moves monotonically when only `v` is updated, until it settles or turns back. It is
//! constant over a regulatory context and can be read off the parameter table by walking
//! along the self-regulation intervals of `v`, without touching the state space.
//!
//! In a normalized parametrization (every parameter replaced by its MTV) an edge is
//! observable in the table exactly when it is observable in the transition system.

use crate::error::{Error, Result};
use crate::model::{ComponentId, ContextSpace, Edge, Level, Model, Parametrization};

enum NormStep {
    Done(Level),
    /// The value equals that of the adjacent self-interval context.
    Follow(usize),
}

fn norm_step(space: &ContextSpace, table: &[Level], v: ComponentId, ctx: usize) -> NormStep {
    let i = space.interval_index(ctx, v);
    let own = space.interval_at(v, i);
    let k = table[ctx];
    if own.contains(k) {
        NormStep::Done(k)
    } else if k < own.low {
        // k >= 0 rules out the lowest interval here
        let lower = space.with_interval(ctx, v, i - 1);
        if table[lower] + 1 >= own.low {
            NormStep::Done(own.low - 1)
        } else {
            NormStep::Follow(lower)
        }
    } else {
        // k <= ρ(v) rules out the highest interval here
        let upper = space.with_interval(ctx, v, i + 1);
        if table[upper] <= own.high {
            NormStep::Done(own.high)
        } else {
            NormStep::Follow(upper)
        }
    }
}

/// The MTV shared by all states of context `ctx` of `v`.
pub fn mtv(model: &Model, v: ComponentId, ctx: usize) -> Level {
    mtv_traced(model, v, ctx).0
}

/// [`mtv`] together with the number of recursive steps taken along self-intervals.
pub fn mtv_traced(model: &Model, v: ComponentId, ctx: usize) -> (Level, usize) {
    let space = model.space(v);
    let table = model.params().table(v);
    let mut ctx = ctx;
    let mut depth = 0;
    loop {
        match norm_step(space, table, v, ctx) {
            NormStep::Done(value) => return (value, depth),
            NormStep::Follow(next) => {
                ctx = next;
                depth += 1;
            }
        }
    }
}

fn normalize_table(space: &ContextSpace, table: &[Level], v: ComponentId) -> Vec<Level> {
    let mut out: Vec<Option<Level>> = vec![None; table.len()];
    let mut chain = Vec::new();
    for start in 0..table.len() {
        if out[start].is_some() {
            continue;
        }
        chain.clear();
        let mut ctx = start;
        let value = loop {
            if let Some(known) = out[ctx] {
                break known;
            }
            chain.push(ctx);
            match norm_step(space, table, v, ctx) {
                NormStep::Done(value) => break value,
                NormStep::Follow(next) => ctx = next,
            }
        };
        for &c in &chain {
            out[c] = Some(value);
        }
    }
    out.into_iter()
        .map(|x| x.expect("every context resolved"))
        .collect()
}

/// Replaces every parameter by its MTV. The graph and the dynamics are unchanged.
pub fn normalize(model: &Model) -> Model {
    let graph = model.graph();
    let tables = graph
        .component_ids()
        .map(|v| normalize_table(model.space(v), model.params().table(v), v))
        .collect();
    Model::from_checked(
        graph.clone(),
        Parametrization::from_tables(tables),
        model.spaces().to_vec(),
        *model.limits(),
    )
}

pub fn is_normalized(model: &Model) -> bool {
    model.graph().component_ids().all(|v| {
        normalize_table(model.space(v), model.params().table(v), v) == model.params().table(v)
    })
}

/// The pairs `(upper, lower)` of contexts of the target that differ only in the source's
/// interval across the edge's threshold: `[n, n+)` versus `[n-, n)`.
pub(crate) fn split_pairs<'a>(
    model: &'a Model,
    edge: &Edge,
) -> Result<impl Iterator<Item = (usize, usize)> + 'a> {
    let graph = model.graph();
    if !graph.contains_edge(edge) {
        return Err(Error::Domain(format!(
            "edge {} is not in the graph",
            if edge.source.index() < graph.len() && edge.target.index() < graph.len() {
                graph.edge_label(edge)
            } else {
                format!("{edge:?}")
            }
        )));
    }
    let space = model.space(edge.target);
    let u = edge.source;
    let upper = space
        .bound_position(u, edge.threshold)
        .expect("edge threshold is an interval bound");
    let stride = space.stride(u);
    Ok((0..space.len())
        .filter(move |&ctx| space.interval_index(ctx, u) == upper)
        .map(move |ctx| (ctx, ctx - stride)))
}

/// An edge is observable in the parametrization when some context pair split by its
/// threshold carries different values.
pub fn observable_in_param(model: &Model, edge: &Edge) -> Result<bool> {
    let table = model.params().table(edge.target);
    Ok(split_pairs(model, edge)?.any(|(hi, lo)| table[hi] != table[lo]))
}

/// Observability in the transition system, decided on the normalized parametrization.
pub fn observable_in_ts(model: &Model, edge: &Edge) -> Result<bool> {
    observable_in_param(&normalize(model), edge)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeObservability {
    pub edge: Edge,
    pub in_param: bool,
    pub in_ts: bool,
}

/// Both observability verdicts for every edge, in the fixed edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservabilityReport {
    pub entries: Vec<EdgeObservability>,
}

pub fn observability_report(model: &Model) -> ObservabilityReport {
    let normalized = normalize(model);
    let entries = model
        .graph()
        .edges()
        .iter()
        .map(|edge| EdgeObservability {
            edge: *edge,
            in_param: observable_in_param(model, edge).expect("edge of the graph"),
            in_ts: observable_in_param(&normalized, edge).expect("edge of the graph"),
        })
        .collect();
    ObservabilityReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Component, RegulatoryGraph};

    const V: ComponentId = ComponentId(0);
    const U: ComponentId = ComponentId(1);

    fn model(edges: Vec<Edge>, tables: Vec<Vec<Level>>) -> Model {
        let g = RegulatoryGraph::new(vec![Component::new("v", 2), Component::new("u", 1)], edges)
            .unwrap();
        Model::new(g, Parametrization::from_tables(tables)).unwrap()
    }

    fn feedback() -> Model {
        model(
            vec![Edge::new(U, 1, V), Edge::new(V, 2, V), Edge::new(V, 1, U)],
            vec![vec![2, 1, 2, 1], vec![0, 1]],
        )
    }

    fn feedback_reduced() -> Model {
        model(
            vec![Edge::new(V, 2, V), Edge::new(V, 1, U)],
            vec![vec![2, 1], vec![0, 1]],
        )
    }

    fn ramp() -> Model {
        model(
            vec![Edge::new(U, 1, V), Edge::new(V, 1, V)],
            vec![vec![0, 0, 1, 2], vec![0]],
        )
    }

    fn ramp_normalized() -> Model {
        model(
            vec![Edge::new(U, 1, V), Edge::new(V, 1, V)],
            vec![vec![0, 0, 2, 2], vec![0]],
        )
    }

    #[test]
    fn param_observability_examples() {
        assert!(!observable_in_param(&feedback(), &Edge::new(U, 1, V)).unwrap());
        assert!(observable_in_param(&ramp(), &Edge::new(V, 1, V)).unwrap());
        assert!(observable_in_param(&feedback(), &Edge::new(V, 2, V)).unwrap());
        assert!(matches!(
            observable_in_param(&feedback(), &Edge::new(V, 1, V)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mtv_examples() {
        // context ([0,1),[1,2)) of v is number 2
        assert_eq!(mtv_traced(&ramp(), V, 2), (2, 1));
        // context ([0,2),[1,2))
        assert_eq!(mtv(&feedback(), V, 2), 2);
        // parameter inside its own interval
        assert_eq!(mtv_traced(&ramp(), V, 0), (0, 0));
        assert_eq!(mtv(&feedback(), U, 1), 1);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&ramp()), ramp_normalized());
        assert_eq!(normalize(&ramp_normalized()), ramp_normalized());
        assert_eq!(normalize(&feedback()), feedback());
        assert!(is_normalized(&ramp_normalized()));
        assert!(!is_normalized(&ramp()));
    }

    #[test]
    fn ts_observability_examples() {
        assert!(!observable_in_ts(&ramp_normalized(), &Edge::new(V, 1, V)).unwrap());
        assert!(!observable_in_ts(&feedback(), &Edge::new(U, 1, V)).unwrap());
        assert!(observable_in_ts(&feedback(), &Edge::new(V, 2, V)).unwrap());
    }

    #[test]
    fn report_examples() {
        let report = observability_report(&ramp());
        assert_eq!(
            report.entries,
            vec![
                EdgeObservability {
                    edge: Edge::new(V, 1, V),
                    in_param: true,
                    in_ts: false
                },
                EdgeObservability {
                    edge: Edge::new(U, 1, V),
                    in_param: true,
                    in_ts: true
                },
            ]
        );
        let report = observability_report(&feedback_reduced());
        assert_eq!(report.entries.len(), 2);
        assert!(report.entries.iter().all(|e| e.in_param && e.in_ts));

        let empty = model(vec![], vec![vec![1], vec![0]]);
        assert!(observability_report(&empty).entries.is_empty());
    }
}
