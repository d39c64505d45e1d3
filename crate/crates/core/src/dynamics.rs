//! Update function and the asynchronous / synchronous transition systems it induces.

use std::fmt;

use crate::error::Result;
use crate::model::{ComponentId, Level, Model, State, StateSpace};

/// Direction of the update of one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: i32) -> Sign {
        match x {
            x if x < 0 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    /// `Sgn(target - current)`.
    pub fn towards(current: Level, target: Level) -> Sign {
        Sign::of(target as i32 - current as i32)
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-1",
            Sign::Zero => "0",
            Sign::Positive => "+1",
        })
    }
}

/// One step of `v` towards the parameter of its current context.
pub fn update(model: &Model, v: ComponentId, state: &State) -> Level {
    step(state.level(v), model.parameter_at(v, state.levels()))
}

pub fn derivative(model: &Model, v: ComponentId, state: &State) -> Sign {
    Sign::towards(state.level(v), update(model, v, state))
}

fn step(current: Level, target: Level) -> Level {
    use std::cmp::Ordering::*;
    match current.cmp(&target) {
        Less => current + 1,
        Equal => current,
        Greater => current - 1,
    }
}

/// A transition relation over the full state space of a dimension list.
///
/// Transitions are kept as pairs of state indices sorted ascending; since state indices
/// follow lexicographic order of tuples, this is the canonical form, and equality of two
/// systems is plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    dimensions: Vec<(String, Level)>,
    space: StateSpace,
    transitions: Vec<(usize, usize)>,
}

impl TransitionSystem {
    pub fn dimensions(&self) -> &[(String, Level)] {
        &self.dimensions
    }

    pub fn state_space(&self) -> &StateSpace {
        &self.space
    }

    /// Number of transitions.
    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, State)> + '_ {
        self.transitions
            .iter()
            .map(|&(a, b)| (self.space.decode(a), self.space.decode(b)))
    }

    pub fn index_pairs(&self) -> &[(usize, usize)] {
        &self.transitions
    }

    pub fn contains(&self, from: &State, to: &State) -> bool {
        let key = (
            self.space.encode(from.levels()),
            self.space.encode(to.levels()),
        );
        self.transitions.binary_search(&key).is_ok()
    }

    pub fn successors(&self, from: &State) -> Vec<State> {
        let src = self.space.encode(from.levels());
        let start = self.transitions.partition_point(|&(a, _)| a < src);
        self.transitions[start..]
            .iter()
            .take_while(|&&(a, _)| a == src)
            .map(|&(_, b)| self.space.decode(b))
            .collect()
    }
}

/// Walks all states in index order, handing out the index and the level tuple.
fn for_each_state(space: &StateSpace, radices: &[Level], mut f: impl FnMut(usize, &[Level])) {
    let mut levels = vec![0 as Level; radices.len()];
    for index in 0..space.len() {
        f(index, &levels);
        for i in (0..levels.len()).rev() {
            if levels[i] < radices[i] {
                levels[i] += 1;
                break;
            }
            levels[i] = 0;
        }
    }
}

/// `s -> s'` iff `s != s'` and `s' = s[v <- F_v(s)]` for some component `v`.
pub fn async_ts(model: &Model) -> Result<TransitionSystem> {
    let graph = model.graph();
    let space = StateSpace::new(graph, model.limits())?;
    let maxima: Vec<Level> = graph.components().iter().map(|c| c.max_level).collect();
    let mut transitions = Vec::new();
    let mut row = Vec::with_capacity(graph.len());
    for_each_state(&space, &maxima, |index, levels| {
        row.clear();
        for v in graph.component_ids() {
            let current = levels[v.index()];
            let next = step(current, model.parameter_at(v, levels));
            if next != current {
                row.push((index, space.substitute(index, v, current, next)));
            }
        }
        row.sort_unstable();
        transitions.extend_from_slice(&row);
    });
    Ok(TransitionSystem {
        dimensions: graph.dimensions(),
        space,
        transitions,
    })
}

/// `s -> s'` iff `s'_v = F_v(s)` for every `v`; steady states carry a self-loop.
pub fn sync_ts(model: &Model) -> Result<TransitionSystem> {
    let graph = model.graph();
    let space = StateSpace::new(graph, model.limits())?;
    let maxima: Vec<Level> = graph.components().iter().map(|c| c.max_level).collect();
    let mut transitions = Vec::with_capacity(space.len());
    let mut next = vec![0 as Level; graph.len()];
    for_each_state(&space, &maxima, |index, levels| {
        for v in graph.component_ids() {
            next[v.index()] = step(levels[v.index()], model.parameter_at(v, levels));
        }
        transitions.push((index, space.encode(&next)));
    });
    Ok(TransitionSystem {
        dimensions: graph.dimensions(),
        space,
        transitions,
    })
}

pub fn ts_equal(a: &TransitionSystem, b: &TransitionSystem) -> bool {
    a == b
}

/// Decides equivalence by building and comparing both asynchronous transition systems.
pub fn equivalent_by_ts(a: &Model, b: &Model) -> Result<bool> {
    crate::canonical::require_same_space(a, b)?;
    Ok(ts_equal(&async_ts(a)?, &async_ts(b)?))
}
