//! The maximal representative of an equivalence class: canonization and completion.
//!
//! A canonical parametrization keeps every parameter within one step of its context's own
//! self-regulation interval `[j,k)`, i.e. in `[j-1, k]`. Completion adds missing edges one at
//! a time in the fixed edge order, copying the parameter of every split context into both
//! halves. On a complete graph every context is a single state, and canonical parameters
//! are then in one-to-one correspondence with transition systems.

use crate::error::{Cap, Error, Result};
use crate::model::{ComponentId, ContextSpace, Edge, Level, Model, Parametrization};

/// Lowest and highest parameter value allowed for context `ctx` of `v`.
fn canonical_bounds(space: &ContextSpace, ctx: usize, v: ComponentId) -> (Level, Level) {
    let own = space.interval(ctx, v);
    (own.low.saturating_sub(1), own.high)
}

pub fn is_canonical(model: &Model) -> bool {
    model.graph().component_ids().all(|v| {
        let space = model.space(v);
        model.params().table(v).iter().enumerate().all(|(ctx, &k)| {
            let (lo, hi) = canonical_bounds(space, ctx, v);
            lo <= k && k <= hi
        })
    })
}

/// Clamps every parameter into its canonical range. The graph is unchanged.
pub fn canonize(model: &Model) -> Model {
    let graph = model.graph();
    let tables = graph
        .component_ids()
        .map(|v| {
            let space = model.space(v);
            model
                .params()
                .table(v)
                .iter()
                .enumerate()
                .map(|(ctx, &k)| {
                    let (lo, hi) = canonical_bounds(space, ctx, v);
                    k.clamp(lo, hi)
                })
                .collect()
        })
        .collect();
    Model::from_checked(
        graph.clone(),
        Parametrization::from_tables(tables),
        model.spaces().to_vec(),
        *model.limits(),
    )
}

/// Adds `edge` to the graph and splits the affected contexts of its target, each half
/// inheriting the value of the context it came from.
pub fn add_edge(model: &Model, edge: Edge) -> Result<Model> {
    let graph = model.graph();
    if edge.source.index() >= graph.len() || edge.target.index() >= graph.len() {
        return Err(Error::Domain(
            "edge refers to an undeclared component".into(),
        ));
    }
    if edge.threshold == 0 || edge.threshold > graph.max_level(edge.source) {
        return Err(Error::Domain(format!(
            "threshold {} is out of range for `{}`",
            edge.threshold,
            graph.name(edge.source)
        )));
    }
    if graph.contains_edge(&edge) {
        return Err(Error::Domain(format!(
            "edge {} is already present",
            graph.edge_label(&edge)
        )));
    }
    let v = edge.target;
    let extended = graph.with_edge(edge);
    let old_space = model.space(v);
    let new_space = ContextSpace::new(&extended, v, model.limits())?;
    let old_table = model.params().table(v);
    let new_table: Vec<Level> = (0..new_space.len())
        .map(|ctx| old_table[new_space.project(ctx, old_space)])
        .collect();

    let mut tables = model.params().tables().to_vec();
    tables[v.index()] = new_table;
    let mut spaces = model.spaces().to_vec();
    spaces[v.index()] = new_space;
    Ok(Model::from_checked(
        extended,
        Parametrization::from_tables(tables),
        spaces,
        *model.limits(),
    ))
}

/// One completion step: adds the least missing edge, or returns the model unchanged if the
/// graph is already complete.
pub fn complete_step(model: &Model) -> Result<Model> {
    match model.graph().missing_edges().next() {
        Some(edge) => add_edge(model, edge),
        None => Ok(model.clone()),
    }
}

/// Iterates [`complete_step`] to its fixed point, a complete graph.
pub fn complete(model: &Model) -> Result<Model> {
    // every context of a complete graph is a single state
    let required = model.graph().state_count();
    let limit = model.limits().max_contexts;
    if required > limit as u128 {
        return Err(Error::Capacity {
            cap: Cap::Contexts,
            required,
            limit,
        });
    }
    let mut current = model.clone();
    while !current.graph().is_complete() {
        current = complete_step(&current)?;
    }
    Ok(current)
}

pub(crate) fn require_same_space(a: &Model, b: &Model) -> Result<()> {
    if a.graph().same_state_space(b.graph()) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "models have different state spaces: {:?} vs {:?}",
            a.graph().dimensions(),
            b.graph().dimensions()
        )))
    }
}

/// Decides equality of the transition systems by comparing canonized complete forms.
pub fn equivalent_by_completion(a: &Model, b: &Model) -> Result<bool> {
    require_same_space(a, b)?;
    Ok(canonize(&complete(a)?) == canonize(&complete(b)?))
}
