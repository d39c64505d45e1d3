//! The minimal representative: removal of non-observable edges from normalized models.

use std::cmp::Ordering;

use crate::canonical::require_same_space;
use crate::error::{Error, Result};
use crate::model::{ContextSpace, Edge, Level, Model, Parametrization};
use crate::normalization::{is_normalized, normalize, observable_in_param};

/// Removes `edge`, merging each pair of contexts it separated into one that keeps their
/// shared value. The edge must be non-observable in the parametrization.
pub fn remove_edge(model: &Model, edge: &Edge) -> Result<Model> {
    if observable_in_param(model, edge)? {
        return Err(Error::Contract(format!(
            "edge {} is observable and cannot be removed",
            model.graph().edge_label(edge)
        )));
    }
    let v = edge.target;
    let reduced = model.graph().without_edge(edge);
    let old_space = model.space(v);
    let new_space = ContextSpace::new(&reduced, v, model.limits())?;
    let old_table = model.params().table(v);
    let new_table: Vec<Level> = (0..new_space.len())
        .map(|ctx| old_table[new_space.project(ctx, old_space)])
        .collect();

    let mut tables = model.params().tables().to_vec();
    tables[v.index()] = new_table;
    let mut spaces = model.spaces().to_vec();
    spaces[v.index()] = new_space;
    Ok(Model::from_checked(
        reduced,
        Parametrization::from_tables(tables),
        spaces,
        *model.limits(),
    ))
}

fn non_observable_edges(model: &Model) -> impl Iterator<Item = Edge> + '_ {
    model
        .graph()
        .edges()
        .iter()
        .filter(|e| !observable_in_param(model, e).expect("edge of the graph"))
        .copied()
}

/// Removes the least non-observable edge under `cmp`, if any.
pub fn minimize_step_by<F>(model: &Model, mut cmp: F) -> Result<Model>
where
    F: FnMut(&Edge, &Edge) -> Ordering,
{
    if !is_normalized(model) {
        return Err(Error::Contract(
            "minimization step requires a normalized parametrization".into(),
        ));
    }
    match non_observable_edges(model).min_by(|a, b| cmp(a, b)) {
        Some(edge) => remove_edge(model, &edge),
        None => Ok(model.clone()),
    }
}

/// One minimization step in the fixed edge order. The input must be normalized.
pub fn minimize_step(model: &Model) -> Result<Model> {
    minimize_step_by(model, Edge::cmp)
}

/// Normalizes, then removes non-observable edges in the order given by `cmp` until every
/// remaining edge is observable.
pub fn minimize_by<F>(model: &Model, mut cmp: F) -> Model
where
    F: FnMut(&Edge, &Edge) -> Ordering,
{
    let mut current = normalize(model);
    loop {
        let next = match non_observable_edges(&current).min_by(|a, b| cmp(a, b)) {
            Some(edge) => remove_edge(&current, &edge).expect("removal never grows the tables"),
            None => return current,
        };
        current = next;
    }
}

/// The minimal normalized representative of the model's equivalence class.
pub fn minimize(model: &Model) -> Model {
    minimize_by(model, Edge::cmp)
}

/// Decides equality of the transition systems by comparing minimized normalized forms.
pub fn equivalent_by_minimization(a: &Model, b: &Model) -> Result<bool> {
    require_same_space(a, b)?;
    Ok(minimize(a) == minimize(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::add_edge;
    use crate::dynamics::async_ts;
    use crate::model::{Component, ComponentId, RegulatoryGraph};

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

    fn ramp_minimal() -> Model {
        model(vec![Edge::new(U, 1, V)], vec![vec![0, 2], vec![0]])
    }

    #[test]
    fn minimize_step_examples() {
        assert_eq!(minimize_step(&ramp_normalized()).unwrap(), ramp_minimal());
        assert_eq!(minimize_step(&ramp_minimal()).unwrap(), ramp_minimal());
        let step = minimize_step(&feedback()).unwrap();
        assert_eq!(step, feedback_reduced());
        assert_eq!(step.params().table(V).len(), 2);
    }

    #[test]
    fn minimize_step_rejects_unnormalized_input() {
        assert!(matches!(minimize_step(&ramp()), Err(Error::Contract(_))));
    }

    #[test]
    fn remove_edge_rejects_observable_edges() {
        assert!(matches!(
            remove_edge(&ramp_normalized(), &Edge::new(U, 1, V)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn minimize_examples() {
        assert_eq!(minimize(&feedback()), feedback_reduced());
        assert_eq!(minimize(&ramp()), ramp_minimal());
        assert_eq!(minimize(&ramp_minimal()), ramp_minimal());
        for m in [feedback(), ramp(), ramp_normalized()] {
            assert_eq!(async_ts(&minimize(&m)).unwrap(), async_ts(&m).unwrap());
        }
    }

    #[test]
    fn removal_is_undone_by_adding_the_edge_back() {
        let before = ramp_normalized();
        let after = minimize_step(&before).unwrap();
        assert_eq!(add_edge(&after, Edge::new(V, 1, V)).unwrap(), before);
    }

    #[test]
    fn equivalence_by_minimization() {
        assert!(equivalent_by_minimization(&feedback(), &feedback_reduced()).unwrap());
        assert!(equivalent_by_minimization(&ramp(), &ramp_minimal()).unwrap());
        assert!(!equivalent_by_minimization(&feedback(), &ramp_normalized()).unwrap());
        assert_ne!(
            async_ts(&feedback()).unwrap(),
            async_ts(&ramp_normalized()).unwrap()
        );
    }
}
