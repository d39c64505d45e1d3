//! Brute-force reference implementations.
//!
//! Everything here works directly from the definitions over explicit states and context
//! lists. Parameters are looked up by scanning the context list of a component for the one
//! containing the state, and derivatives are recomputed from scratch, so none of the index
//! arithmetic used by [`crate::dynamics`] or [`crate::normalization`] is shared. These
//! routines are exponential and meant for small models.

use crate::error::{Cap, Error, Result};
use crate::model::{
    Component, ComponentId, Context, ContextSpace, Edge, Level, Limits, Model, Parametrization,
    RegulatoryGraph, State,
};

/// Parameter tables keyed by explicit contexts.
struct Reference<'a> {
    model: &'a Model,
    tables: Vec<Vec<(Context, Level)>>,
}

impl<'a> Reference<'a> {
    fn new(model: &'a Model) -> Result<Self> {
        let graph = model.graph();
        let tables = graph
            .component_ids()
            .map(|v| {
                let contexts = graph.contexts(v, model.limits())?;
                Ok(contexts
                    .into_iter()
                    .zip(model.params().table(v).iter().copied())
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(Reference { model, tables })
    }

    fn parameter(&self, v: ComponentId, state: &State) -> Level {
        let matching: Vec<Level> = self.tables[v.index()]
            .iter()
            .filter(|(context, _)| context.contains(state))
            .map(|&(_, k)| k)
            .collect();
        assert_eq!(matching.len(), 1, "contexts must partition the state space");
        matching[0]
    }

    /// `F_v(s) - s_v`.
    fn delta(&self, v: ComponentId, state: &State) -> i32 {
        let current = state.level(v) as i32;
        let target = self.parameter(v, state) as i32;
        let next = if current < target {
            current + 1
        } else if current == target {
            current
        } else {
            current - 1
        };
        next - current
    }

    fn mtv(&self, v: ComponentId, state: &State) -> Level {
        let level = state.level(v);
        match self.delta(v, state) {
            0 => level,
            1 => (level + 1..=self.model.graph().max_level(v))
                .find(|&j| self.delta(v, &state.with(v, j)) != 1)
                .expect("an increasing walk stops at the maximum level"),
            _ => (0..level)
                .rev()
                .find(|&j| self.delta(v, &state.with(v, j)) != -1)
                .expect("a decreasing walk stops at level 0"),
        }
    }

    fn states(&self) -> Result<Vec<State>> {
        all_states(self.model.graph(), self.model.limits())
    }
}

fn all_states(graph: &RegulatoryGraph, limits: &Limits) -> Result<Vec<State>> {
    let required = graph.state_count();
    if required > limits.max_states as u128 {
        return Err(Error::Capacity {
            cap: Cap::States,
            required,
            limit: limits.max_states,
        });
    }
    let mut out = vec![State::new(vec![])];
    for c in graph.components() {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..=c.max_level).map(move |l| {
                    let mut levels = s.levels().to_vec();
                    levels.push(l);
                    State::new(levels)
                })
            })
            .collect();
    }
    Ok(out)
}

fn sgn(x: i32) -> i32 {
    x.signum()
}

/// `(n-, n+)`: the neighbours of the edge's threshold among the extended thresholds.
fn neighbours(graph: &RegulatoryGraph, edge: &Edge) -> Result<(Level, Level)> {
    if !graph.contains_edge(edge) {
        return Err(Error::Domain("edge is not in the graph".into()));
    }
    let bounds = graph.extended_thresholds(edge.source, edge.target)?;
    let at = bounds
        .iter()
        .position(|&b| b == edge.threshold)
        .expect("threshold is a bound");
    Ok((bounds[at - 1], bounds[at + 1]))
}

/// The monotone target value of `v` at `state`, found by walking along dimension `v`.
pub fn mtv_oracle(model: &Model, v: ComponentId, state: &State) -> Result<Level> {
    Ok(Reference::new(model)?.mtv(v, state))
}

/// `F_v(s) - s_v`, recomputed from the context list.
pub fn delta_oracle(model: &Model, v: ComponentId, state: &State) -> Result<i32> {
    Ok(Reference::new(model)?.delta(v, state))
}

/// Observability of `edge` in the transition system, straight from the definition: the edge
/// is non-observable iff for every state `s` with `s_u` in `[n-, n+)` some target level `k`
/// explains the derivative of `v` at `s[u <- j]` for every `j` in that range.
pub fn ts_observable_oracle(model: &Model, edge: &Edge) -> Result<bool> {
    let (lo, hi) = neighbours(model.graph(), edge)?;
    let reference = Reference::new(model)?;
    let (u, v) = (edge.source, edge.target);
    let rho_v = model.graph().max_level(v);
    for s in reference.states()? {
        if !(lo..hi).contains(&s.level(u)) {
            continue;
        }
        let explained = (0..=rho_v).any(|k| {
            (lo..hi).all(|j| {
                let t = s.with(u, j);
                reference.delta(v, &t) == sgn(k as i32 - t.level(v) as i32)
            })
        });
        if !explained {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The same verdict with the target level fixed to the monotone target value of `s`.
pub fn ts_observable_oracle_mtv(model: &Model, edge: &Edge) -> Result<bool> {
    let (lo, hi) = neighbours(model.graph(), edge)?;
    let reference = Reference::new(model)?;
    let (u, v) = (edge.source, edge.target);
    for s in reference.states()? {
        if !(lo..hi).contains(&s.level(u)) {
            continue;
        }
        let target = reference.mtv(v, &s) as i32;
        let explained = (lo..hi).all(|j| {
            let t = s.with(u, j);
            reference.delta(v, &t) == sgn(target - t.level(v) as i32)
        });
        if !explained {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Number of self-regulation intervals of `v` between the context's own interval and the
/// one holding its monotone target value.
pub fn distance_oracle(model: &Model, v: ComponentId, context: &Context) -> Result<usize> {
    let graph = model.graph();
    let intervals = graph.activity_intervals(v, v)?;
    let probe = State::new(context.intervals().iter().map(|i| i.low).collect());
    let target = Reference::new(model)?.mtv(v, &probe);
    let own = intervals
        .iter()
        .position(|i| *i == context.interval(v))
        .ok_or_else(|| Error::Domain("context does not belong to the component".into()))?;
    let holding = intervals
        .iter()
        .position(|i| i.contains(target))
        .expect("intervals cover all levels");
    Ok(own.abs_diff(holding))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Only parametrizations whose values lie in `[j-1, k]` for each context's own interval.
    pub canonical_only: bool,
    pub max_models: u128,
    pub limits: Limits,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            canonical_only: false,
            max_models: 1 << 24,
            limits: Limits::default(),
        }
    }
}

/// Every graph over `components` crossed with every total parametrization of it.
///
/// Graphs are visited by edge subset (bit `i` set means the `i`-th possible edge in the fixed
/// edge order is present, subsets in ascending numeric order); for each graph the
/// parametrizations are visited as an odometer over the tables with the first cell fastest.
pub fn enumerate_models(
    components: &[(&str, Level)],
    options: EnumerationOptions,
) -> Result<ModelEnumeration> {
    let components: Vec<Component> = components
        .iter()
        .map(|&(name, rho)| Component::new(name, rho))
        .collect();
    let base = RegulatoryGraph::new(components.clone(), vec![])?;
    let possible: Vec<Edge> = base.possible_edges().collect();
    let states = base.state_count();
    if states > options.limits.max_states as u128 {
        return Err(Error::Capacity {
            cap: Cap::States,
            required: states,
            limit: options.limits.max_states,
        });
    }
    if possible.len() > 32 {
        return Err(Error::Capacity {
            cap: Cap::Models,
            required: 1u128 << possible.len().min(127),
            limit: options.max_models.min(usize::MAX as u128) as usize,
        });
    }
    let total = count_models(&components, &possible, &options)?;
    if total > options.max_models {
        return Err(Error::Capacity {
            cap: Cap::Models,
            required: total,
            limit: options.max_models.min(usize::MAX as u128) as usize,
        });
    }
    let mask_end = if components.is_empty() {
        0
    } else {
        1u64 << possible.len()
    };
    Ok(ModelEnumeration {
        components,
        possible,
        options,
        next_mask: 0,
        mask_end,
        cursor: None,
        total,
    })
}

fn graph_for_mask(components: &[Component], possible: &[Edge], mask: u64) -> RegulatoryGraph {
    let edges = possible
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| *e)
        .collect();
    RegulatoryGraph::from_parts(components.to_vec(), edges)
}

/// Value range of every table cell of a graph.
fn cell_ranges(
    graph: &RegulatoryGraph,
    spaces: &[ContextSpace],
    canonical_only: bool,
) -> Vec<(Level, Level)> {
    graph
        .component_ids()
        .flat_map(|v| {
            let space = &spaces[v.index()];
            let rho = graph.max_level(v);
            (0..space.len()).map(move |ctx| {
                if canonical_only {
                    let own = space.interval(ctx, v);
                    (own.low.saturating_sub(1), own.high.min(rho))
                } else {
                    (0, rho)
                }
            })
        })
        .collect()
}

fn count_models(
    components: &[Component],
    possible: &[Edge],
    options: &EnumerationOptions,
) -> Result<u128> {
    if components.is_empty() {
        return Ok(0);
    }
    // edges into different targets vary independently, as do their tables
    let mut total: u128 = 1;
    for v in 0..components.len() {
        let incoming: Vec<Edge> = possible
            .iter()
            .filter(|e| e.target.index() == v)
            .copied()
            .collect();
        let mut per_target: u128 = 0;
        for mask in 0u64..(1u64 << incoming.len()) {
            let graph = graph_for_mask(components, &incoming, mask);
            let space = ContextSpace::new(&graph, ComponentId(v), &options.limits)?;
            let rho = components[v].max_level;
            let mut count: u128 = 1;
            for ctx in 0..space.len() {
                let choices = if options.canonical_only {
                    let own = space.interval(ctx, ComponentId(v));
                    (own.high.min(rho) - own.low.saturating_sub(1)) as u128 + 1
                } else {
                    rho as u128 + 1
                };
                count = count.saturating_mul(choices);
            }
            per_target = per_target.saturating_add(count);
        }
        total = total.saturating_mul(per_target);
    }
    Ok(total)
}

struct GraphCursor {
    graph: RegulatoryGraph,
    spaces: Vec<ContextSpace>,
    sizes: Vec<usize>,
    ranges: Vec<(Level, Level)>,
    digits: Vec<Level>,
    exhausted: bool,
}

impl GraphCursor {
    fn new(graph: RegulatoryGraph, options: &EnumerationOptions) -> Self {
        let spaces: Vec<ContextSpace> = graph
            .component_ids()
            .map(|v| ContextSpace::new(&graph, v, &options.limits).expect("checked by count"))
            .collect();
        let sizes = spaces.iter().map(ContextSpace::len).collect();
        let ranges = cell_ranges(&graph, &spaces, options.canonical_only);
        let digits = ranges.iter().map(|r| r.0).collect();
        GraphCursor {
            graph,
            spaces,
            sizes,
            ranges,
            digits,
            exhausted: false,
        }
    }

    fn next_model(&mut self, limits: Limits) -> Option<Model> {
        if self.exhausted {
            return None;
        }
        let mut tables = Vec::with_capacity(self.sizes.len());
        let mut offset = 0;
        for &size in &self.sizes {
            tables.push(self.digits[offset..offset + size].to_vec());
            offset += size;
        }
        let model = Model::from_checked(
            self.graph.clone(),
            Parametrization::from_tables(tables),
            self.spaces.clone(),
            limits,
        );
        self.exhausted = true;
        for (digit, &(lo, hi)) in self.digits.iter_mut().zip(&self.ranges) {
            if *digit < hi {
                *digit += 1;
                self.exhausted = false;
                break;
            }
            *digit = lo;
        }
        Some(model)
    }
}

/// Stream of models produced by [`enumerate_models`].
pub struct ModelEnumeration {
    components: Vec<Component>,
    possible: Vec<Edge>,
    options: EnumerationOptions,
    next_mask: u64,
    mask_end: u64,
    cursor: Option<GraphCursor>,
    total: u128,
}

impl ModelEnumeration {
    /// Total number of models the stream yields.
    pub fn total(&self) -> u128 {
        self.total
    }
}

impl Iterator for ModelEnumeration {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        loop {
            if let Some(cursor) = &mut self.cursor {
                if let Some(model) = cursor.next_model(self.options.limits) {
                    return Some(model);
                }
                self.cursor = None;
            }
            if self.next_mask >= self.mask_end {
                return None;
            }
            let graph = graph_for_mask(&self.components, &self.possible, self.next_mask);
            self.next_mask += 1;
            self.cursor = Some(GraphCursor::new(graph, &self.options));
        }
    }
}
