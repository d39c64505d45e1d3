//! Regulatory graphs, activity intervals, regulatory contexts and parametrizations.
//!
//! Components are addressed by [`ComponentId`], their index in declaration order. That order
//! is total and fixes the layout of states, the order of edges and the order of contexts.
//!
//! A context of a target `v` picks one activity interval per component (components that do
//! not regulate `v` contribute their single full interval). Contexts are numbered in mixed
//! radix with the *first* declared component varying fastest, so the table of `v` in the
//! two-component example `(v, u)` reads `([0,2),[0,1))`, `([2,3),[0,1))`, `([0,2),[1,2))`, ...

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Cap, Error, Result};

/// An activity level or a threshold.
pub type Level = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub usize);

impl ComponentId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub name: String,
    pub max_level: Level,
}

impl Component {
    pub fn new(name: impl Into<String>, max_level: Level) -> Self {
        Component {
            name: name.into(),
            max_level,
        }
    }
}

/// A regulation `(source, threshold, target)`.
///
/// The derived ordering is lexicographic by (source index, target index, threshold), which is
/// the fixed edge order used by completion, minimization and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: ComponentId,
    pub target: ComponentId,
    pub threshold: Level,
}

impl Edge {
    pub fn new(source: ComponentId, threshold: Level, target: ComponentId) -> Self {
        Edge {
            source,
            target,
            threshold,
        }
    }
}

/// Bounds on explicit enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_contexts: usize,
}

impl Limits {
    pub const DEFAULT_MAX_STATES: usize = 1 << 22;
    pub const DEFAULT_MAX_CONTEXTS: usize = 1 << 20;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: Self::DEFAULT_MAX_STATES,
            max_contexts: Self::DEFAULT_MAX_CONTEXTS,
        }
    }
}

/// Half-open range of levels `[low, high)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActivityInterval {
    pub low: Level,
    pub high: Level,
}

impl ActivityInterval {
    pub fn new(low: Level, high: Level) -> Self {
        debug_assert!(low < high);
        ActivityInterval { low, high }
    }

    pub fn contains(&self, level: Level) -> bool {
        self.low <= level && level < self.high
    }

    /// Every member of the interval is strictly greater than `level`.
    pub fn is_above(&self, level: Level) -> bool {
        level < self.low
    }

    /// Every member of the interval is strictly smaller than `level`.
    pub fn is_below(&self, level: Level) -> bool {
        level >= self.high
    }
}

impl fmt::Display for ActivityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.low, self.high)
    }
}

/// One activity interval per component, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    intervals: Vec<ActivityInterval>,
}

impl Context {
    pub fn new(intervals: Vec<ActivityInterval>) -> Self {
        Context { intervals }
    }

    pub fn intervals(&self) -> &[ActivityInterval] {
        &self.intervals
    }

    pub fn interval(&self, u: ComponentId) -> ActivityInterval {
        self.intervals[u.0]
    }

    pub fn contains(&self, state: &State) -> bool {
        self.intervals
            .iter()
            .zip(state.levels())
            .all(|(interval, &level)| interval.contains(level))
    }

    /// The context key: low endpoints in declaration order.
    pub fn key(&self) -> Vec<Level> {
        self.intervals.iter().map(|i| i.low).collect()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, interval) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{interval}")?;
        }
        f.write_str(")")
    }
}

/// A configuration of the network, one level per component in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(Vec<Level>);

impl State {
    pub fn new(levels: Vec<Level>) -> Self {
        State(levels)
    }

    pub fn levels(&self) -> &[Level] {
        &self.0
    }

    pub fn level(&self, v: ComponentId) -> Level {
        self.0[v.0]
    }

    /// The substitution `s[v <- level]`.
    pub fn with(&self, v: ComponentId, level: Level) -> State {
        let mut levels = self.0.clone();
        levels[v.0] = level;
        State(levels)
    }

    pub fn set(&mut self, v: ComponentId, level: Level) {
        self.0[v.0] = level;
    }
}

impl From<Vec<Level>> for State {
    fn from(levels: Vec<Level>) -> Self {
        State(levels)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, level) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{level}")?;
        }
        f.write_str(")")
    }
}

/// Mixed-radix numbering of the full state space. The last component varies fastest, so
/// numeric order of indices is lexicographic order of state tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    radices: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl StateSpace {
    pub fn new(graph: &RegulatoryGraph, limits: &Limits) -> Result<Self> {
        let radices: Vec<usize> = graph
            .components
            .iter()
            .map(|c| c.max_level as usize + 1)
            .collect();
        let required = checked_product(&radices);
        if required > limits.max_states as u128 {
            return Err(Error::Capacity {
                cap: Cap::States,
                required,
                limit: limits.max_states,
            });
        }
        let mut strides = vec![0; radices.len()];
        let mut stride = 1;
        for (i, radix) in radices.iter().enumerate().rev() {
            strides[i] = stride;
            stride *= radix;
        }
        Ok(StateSpace {
            radices,
            strides,
            size: required as usize,
        })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn dimension(&self) -> usize {
        self.radices.len()
    }

    pub fn encode(&self, levels: &[Level]) -> usize {
        levels
            .iter()
            .zip(&self.strides)
            .map(|(&l, &s)| l as usize * s)
            .sum()
    }

    pub fn decode(&self, mut index: usize) -> State {
        let mut levels = vec![0; self.radices.len()];
        for (i, stride) in self.strides.iter().enumerate() {
            levels[i] = (index / stride) as Level;
            index %= stride;
        }
        State(levels)
    }

    /// The index of `s[v <- level]` given the index of `s` and its current level of `v`.
    pub fn substitute(&self, index: usize, v: ComponentId, from: Level, to: Level) -> usize {
        index - from as usize * self.strides[v.0] + to as usize * self.strides[v.0]
    }

    /// All states in index (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.size).map(|i| self.decode(i))
    }
}

fn checked_product(factors: &[usize]) -> u128 {
    factors
        .iter()
        .fold(1u128, |acc, &f| acc.saturating_mul(f as u128))
}

/// Components with maximal activity levels and threshold-labelled regulations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegulatoryGraph {
    components: Vec<Component>,
    edges: Vec<Edge>,
}

impl RegulatoryGraph {
    /// Builds a graph and checks its structural invariants.
    pub fn new(components: Vec<Component>, edges: Vec<Edge>) -> Result<Self> {
        let graph = Self::from_parts(components, edges);
        let diagnostics = graph.structural_diagnostics();
        if diagnostics.is_empty() {
            Ok(graph)
        } else {
            Err(Error::Invalid(diagnostics))
        }
    }

    /// Builds a graph without checking it; see [`validate`].
    pub fn from_parts(components: Vec<Component>, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        RegulatoryGraph { components, edges }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> &Component {
        &self.components[id.0]
    }

    pub fn component_ids(&self) -> impl Iterator<Item = ComponentId> + '_ {
        (0..self.components.len()).map(ComponentId)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn name(&self, id: ComponentId) -> &str {
        &self.components[id.0].name
    }

    pub fn max_level(&self, id: ComponentId) -> Level {
        self.components[id.0].max_level
    }

    pub fn id(&self, name: &str) -> Result<ComponentId> {
        self.components
            .iter()
            .position(|c| c.name == name)
            .map(ComponentId)
            .ok_or_else(|| Error::UnknownComponent(name.to_string()))
    }

    fn check_id(&self, id: ComponentId) -> Result<()> {
        if id.0 < self.components.len() {
            Ok(())
        } else {
            Err(Error::UnknownComponent(format!("#{}", id.0)))
        }
    }

    /// Edges in the fixed lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, edge: &Edge) -> bool {
        self.edges.binary_search(edge).is_ok()
    }

    /// `(name, max_level)` per component; two graphs share a state space iff these match.
    pub fn dimensions(&self) -> Vec<(String, Level)> {
        self.components
            .iter()
            .map(|c| (c.name.clone(), c.max_level))
            .collect()
    }

    pub fn same_state_space(&self, other: &RegulatoryGraph) -> bool {
        self.components == other.components
    }

    /// Thresholds of all edges from `u` to `v`, ascending.
    pub fn thresholds(&self, u: ComponentId, v: ComponentId) -> Vec<Level> {
        let set: BTreeSet<Level> = self
            .edges
            .iter()
            .filter(|e| e.source == u && e.target == v)
            .map(|e| e.threshold)
            .collect();
        set.into_iter().collect()
    }

    /// `θ(u,v) ∪ {0, ρ(u)+1}`, ascending.
    pub fn extended_thresholds(&self, u: ComponentId, v: ComponentId) -> Result<Vec<Level>> {
        self.check_id(u)?;
        self.check_id(v)?;
        let mut bounds = vec![0];
        bounds.extend(self.thresholds(u, v));
        bounds.push(self.max_level(u) + 1);
        Ok(bounds)
    }

    /// The activity intervals of `u` in regulation of `v`, sorted by low endpoint.
    pub fn activity_intervals(
        &self,
        u: ComponentId,
        v: ComponentId,
    ) -> Result<Vec<ActivityInterval>> {
        let bounds = self.extended_thresholds(u, v)?;
        Ok(bounds
            .windows(2)
            .map(|w| ActivityInterval::new(w[0], w[1]))
            .collect())
    }

    /// All regulatory contexts of `v` in table order.
    pub fn contexts(&self, v: ComponentId, limits: &Limits) -> Result<Vec<Context>> {
        let space = ContextSpace::new(self, v, limits)?;
        Ok((0..space.len()).map(|i| space.context(i)).collect())
    }

    /// The unique context of `v` containing `state`.
    pub fn context_of(&self, v: ComponentId, state: &State) -> Result<Context> {
        self.check_id(v)?;
        let intervals = self
            .component_ids()
            .map(|u| {
                let intervals = self.activity_intervals(u, v)?;
                let level = state.level(u);
                intervals
                    .into_iter()
                    .find(|i| i.contains(level))
                    .ok_or_else(|| {
                        Error::Domain(format!(
                            "level {level} of `{}` is outside [0,{}]",
                            self.name(u),
                            self.max_level(u)
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Context::new(intervals))
    }

    /// Number of contexts of `v`, without materializing them.
    pub fn context_count(&self, v: ComponentId) -> u128 {
        self.component_ids()
            .map(|u| self.thresholds(u, v).len() as u128 + 1)
            .fold(1u128, |acc, f| acc.saturating_mul(f))
    }

    pub fn state_count(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.max_level as u128 + 1)
            .fold(1u128, |acc, f| acc.saturating_mul(f))
    }

    /// Every edge `(u, n, v)` with `1 <= n <= ρ(u)`, in the fixed edge order.
    pub fn possible_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.component_ids().flat_map(move |u| {
            self.component_ids()
                .flat_map(move |v| (1..=self.max_level(u)).map(move |n| Edge::new(u, n, v)))
        })
    }

    /// Possible edges that are not in the graph, in the fixed edge order.
    pub fn missing_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.possible_edges().filter(|e| !self.contains_edge(e))
    }

    pub fn is_complete(&self) -> bool {
        self.missing_edges().next().is_none()
    }

    pub fn with_edge(&self, edge: Edge) -> RegulatoryGraph {
        let mut edges = self.edges.clone();
        if let Err(at) = edges.binary_search(&edge) {
            edges.insert(at, edge);
        }
        RegulatoryGraph {
            components: self.components.clone(),
            edges,
        }
    }

    pub fn without_edge(&self, edge: &Edge) -> RegulatoryGraph {
        RegulatoryGraph {
            components: self.components.clone(),
            edges: self.edges.iter().filter(|e| *e != edge).copied().collect(),
        }
    }

    /// Renders an edge as `(u,n,v)` using component names.
    pub fn edge_label(&self, edge: &Edge) -> String {
        format!(
            "({},{},{})",
            self.name(edge.source),
            edge.threshold,
            self.name(edge.target)
        )
    }

    fn structural_diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c.name.as_str()) {
                out.push(Diagnostic::new(
                    DiagnosticKind::DuplicateComponent,
                    format!("component `{}` declared more than once", c.name),
                ));
            }
            if c.max_level == 0 {
                out.push(Diagnostic::new(
                    DiagnosticKind::MaxLevel,
                    format!("component `{}`: max level must be >= 1", c.name),
                ));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.source.0 >= self.components.len() || e.target.0 >= self.components.len() {
                out.push(Diagnostic::new(
                    DiagnosticKind::UnknownComponent,
                    format!(
                        "edge #{i} refers to an undeclared component (source #{}, target #{})",
                        e.source.0, e.target.0
                    ),
                ));
                continue;
            }
            let rho = self.max_level(e.source);
            if e.threshold == 0 || e.threshold > rho {
                out.push(Diagnostic::new(
                    DiagnosticKind::ThresholdRange,
                    format!(
                        "edge {}: threshold must lie in [1,{rho}]",
                        self.edge_label(e)
                    ),
                ));
            }
            if i > 0 && self.edges[i - 1] == *e {
                out.push(Diagnostic::new(
                    DiagnosticKind::DuplicateEdge,
                    format!("edge {} declared more than once", self.edge_label(e)),
                ));
            }
        }
        out
    }
}

/// Index arithmetic over the contexts of one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSpace {
    target: ComponentId,
    /// Extended thresholds per regulator.
    bounds: Vec<Vec<Level>>,
    /// Level to interval index per regulator.
    lookup: Vec<Vec<usize>>,
    strides: Vec<usize>,
    size: usize,
}

impl ContextSpace {
    pub fn new(graph: &RegulatoryGraph, v: ComponentId, limits: &Limits) -> Result<Self> {
        graph.check_id(v)?;
        let bounds: Vec<Vec<Level>> = graph
            .component_ids()
            .map(|u| graph.extended_thresholds(u, v))
            .collect::<Result<_>>()?;
        let radices: Vec<usize> = bounds.iter().map(|b| b.len() - 1).collect();
        let required = checked_product(&radices);
        if required > limits.max_contexts as u128 {
            return Err(Error::Capacity {
                cap: Cap::Contexts,
                required,
                limit: limits.max_contexts,
            });
        }
        let mut strides = Vec::with_capacity(radices.len());
        let mut stride = 1;
        for radix in &radices {
            strides.push(stride);
            stride *= radix;
        }
        let lookup = bounds
            .iter()
            .map(|b| {
                let top = *b.last().expect("at least two bounds");
                (0..top)
                    .map(|level| b.partition_point(|&x| x <= level) - 1)
                    .collect()
            })
            .collect();
        Ok(ContextSpace {
            target: v,
            bounds,
            lookup,
            strides,
            size: required as usize,
        })
    }

    pub fn target(&self) -> ComponentId {
        self.target
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Number of activity intervals of regulator `u`.
    pub fn interval_count(&self, u: ComponentId) -> usize {
        self.bounds[u.0].len() - 1
    }

    pub fn stride(&self, u: ComponentId) -> usize {
        self.strides[u.0]
    }

    pub fn bounds(&self, u: ComponentId) -> &[Level] {
        &self.bounds[u.0]
    }

    /// Position of `level` among the extended thresholds of `u`, if it is one.
    pub fn bound_position(&self, u: ComponentId, level: Level) -> Option<usize> {
        self.bounds[u.0].binary_search(&level).ok()
    }

    pub fn interval_index(&self, ctx: usize, u: ComponentId) -> usize {
        (ctx / self.strides[u.0]) % self.interval_count(u)
    }

    pub fn interval_at(&self, u: ComponentId, index: usize) -> ActivityInterval {
        let b = &self.bounds[u.0];
        ActivityInterval::new(b[index], b[index + 1])
    }

    pub fn interval(&self, ctx: usize, u: ComponentId) -> ActivityInterval {
        self.interval_at(u, self.interval_index(ctx, u))
    }

    /// The context obtained by replacing the interval of `u` with the one at `index`.
    pub fn with_interval(&self, ctx: usize, u: ComponentId, index: usize) -> usize {
        let current = self.interval_index(ctx, u);
        ctx - current * self.strides[u.0] + index * self.strides[u.0]
    }

    pub fn index_of_levels(&self, levels: &[Level]) -> usize {
        levels
            .iter()
            .enumerate()
            .map(|(u, &l)| self.lookup[u][l as usize] * self.strides[u])
            .sum()
    }

    pub fn index_of_state(&self, state: &State) -> usize {
        self.index_of_levels(state.levels())
    }

    pub fn context(&self, ctx: usize) -> Context {
        Context::new(
            (0..self.bounds.len())
                .map(|u| self.interval(ctx, ComponentId(u)))
                .collect(),
        )
    }

    /// Index of a context given by its intervals; `None` if some interval is not an
    /// activity interval of this space.
    pub fn index_of_context(&self, context: &Context) -> Option<usize> {
        let mut index = 0;
        for (u, interval) in context.intervals().iter().enumerate() {
            let b = &self.bounds[u];
            let at = b.binary_search(&interval.low).ok()?;
            if at + 1 >= b.len() || b[at + 1] != interval.high {
                return None;
            }
            index += at * self.strides[u];
        }
        Some(index)
    }

    /// Maps context `ctx` of `self` to the context of `other` (same target, graphs in the same
    /// state space) that contains the low endpoint of each of its intervals.
    pub fn project(&self, ctx: usize, other: &ContextSpace) -> usize {
        (0..self.bounds.len())
            .map(|u| {
                let low = self.interval(ctx, ComponentId(u)).low;
                other.lookup[u][low as usize] * other.strides[u]
            })
            .sum()
    }
}

/// Per-component tables of target levels, indexed by context number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parametrization {
    tables: Vec<Vec<Level>>,
}

impl Parametrization {
    pub fn from_tables(tables: Vec<Vec<Level>>) -> Self {
        Parametrization { tables }
    }

    /// Builds a total parametrization by evaluating `f` on every context of every component.
    pub fn from_fn<F>(graph: &RegulatoryGraph, limits: &Limits, mut f: F) -> Result<Self>
    where
        F: FnMut(ComponentId, &Context) -> Level,
    {
        let tables = graph
            .component_ids()
            .map(|v| {
                let space = ContextSpace::new(graph, v, limits)?;
                Ok((0..space.len()).map(|i| f(v, &space.context(i))).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Parametrization { tables })
    }

    pub fn tables(&self) -> &[Vec<Level>] {
        &self.tables
    }

    pub fn table(&self, v: ComponentId) -> &[Level] {
        &self.tables[v.0]
    }

    pub fn get(&self, v: ComponentId, ctx: usize) -> Level {
        self.tables[v.0][ctx]
    }

    pub fn into_tables(self) -> Vec<Vec<Level>> {
        self.tables
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    DuplicateComponent,
    MaxLevel,
    UnknownComponent,
    ThresholdRange,
    DuplicateEdge,
    Totality,
    Range,
}

/// One violated invariant, with a message naming where.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    fn new(kind: DiagnosticKind, message: String) -> Self {
        Diagnostic { kind, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Checks the graph invariants and that `params` is a total, range-respecting
/// parametrization of `graph`. An empty result means the model is well formed.
pub fn validate(graph: &RegulatoryGraph, params: &Parametrization) -> Vec<Diagnostic> {
    let mut out = graph.structural_diagnostics();
    if !out.is_empty() {
        return out;
    }
    if params.tables.len() != graph.len() {
        out.push(Diagnostic::new(
            DiagnosticKind::Totality,
            format!(
                "parametrization has {} tables for {} components",
                params.tables.len(),
                graph.len()
            ),
        ));
    }
    for v in graph.component_ids().take(params.tables.len()) {
        let name = graph.name(v);
        let expected = graph.context_count(v);
        let table = &params.tables[v.0];
        if table.len() as u128 != expected {
            out.push(Diagnostic::new(
                DiagnosticKind::Totality,
                format!(
                    "component `{name}`: {} parameter rows for {expected} contexts",
                    table.len()
                ),
            ));
            continue;
        }
        let rho = graph.max_level(v);
        if let Some(ctx) = table.iter().position(|&k| k > rho) {
            let context = ContextSpace::new(
                graph,
                v,
                &Limits {
                    max_states: usize::MAX,
                    max_contexts: usize::MAX,
                },
            )
            .map(|s| s.context(ctx).to_string())
            .unwrap_or_else(|_| format!("#{ctx}"));
            out.push(Diagnostic::new(
                DiagnosticKind::Range,
                format!(
                    "component `{name}`: parameter {} at context {context} exceeds max level {rho}",
                    table[ctx]
                ),
            ));
        }
    }
    out
}

/// A validated parametrized regulatory graph.
///
/// Equality compares graph and parametrization; the enumeration limits travel with the model
/// but are not part of its identity.
#[derive(Debug, Clone)]
pub struct Model {
    graph: RegulatoryGraph,
    params: Parametrization,
    spaces: Vec<ContextSpace>,
    limits: Limits,
}

impl PartialEq for Model {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.params == other.params
    }
}

impl Eq for Model {}

impl Model {
    pub fn new(graph: RegulatoryGraph, params: Parametrization) -> Result<Self> {
        Self::with_limits(graph, params, Limits::default())
    }

    pub fn with_limits(
        graph: RegulatoryGraph,
        params: Parametrization,
        limits: Limits,
    ) -> Result<Self> {
        let diagnostics = validate(&graph, &params);
        if !diagnostics.is_empty() {
            return Err(Error::Invalid(diagnostics));
        }
        let spaces = graph
            .component_ids()
            .map(|v| ContextSpace::new(&graph, v, &limits))
            .collect::<Result<_>>()?;
        Ok(Model {
            graph,
            params,
            spaces,
            limits,
        })
    }

    /// Assembles a model from parts already known to be consistent.
    pub(crate) fn from_checked(
        graph: RegulatoryGraph,
        params: Parametrization,
        spaces: Vec<ContextSpace>,
        limits: Limits,
    ) -> Self {
        debug_assert!(validate(&graph, &params).is_empty());
        Model {
            graph,
            params,
            spaces,
            limits,
        }
    }

    pub fn graph(&self) -> &RegulatoryGraph {
        &self.graph
    }

    pub fn params(&self) -> &Parametrization {
        &self.params
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    pub fn space(&self, v: ComponentId) -> &ContextSpace {
        &self.spaces[v.0]
    }

    pub(crate) fn spaces(&self) -> &[ContextSpace] {
        &self.spaces
    }

    pub fn parameter(&self, v: ComponentId, ctx: usize) -> Level {
        self.params.get(v, ctx)
    }

    /// The parameter of the context of `v` containing `levels`.
    pub fn parameter_at(&self, v: ComponentId, levels: &[Level]) -> Level {
        self.params.get(v, self.spaces[v.0].index_of_levels(levels))
    }

    pub fn into_parts(self) -> (RegulatoryGraph, Parametrization) {
        (self.graph, self.params)
    }

    /// Returns a copy with one parameter replaced, re-checking its range.
    pub fn with_parameter(&self, v: ComponentId, ctx: usize, value: Level) -> Result<Model> {
        let mut tables = self.params.tables.clone();
        tables[v.0][ctx] = value;
        let params = Parametrization::from_tables(tables);
        let diagnostics = validate(&self.graph, &params);
        if !diagnostics.is_empty() {
            return Err(Error::Invalid(diagnostics));
        }
        Ok(Model {
            graph: self.graph.clone(),
            params,
            spaces: self.spaces.clone(),
            limits: self.limits,
        })
    }
}
