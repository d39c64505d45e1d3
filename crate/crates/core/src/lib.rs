//! Dynamical equivalence of multi-valued logical regulatory networks.
//!
//! A [`Model`] is a regulatory graph together with a parametrization. Its asynchronous
//! transition system is produced by [`dynamics::async_ts`]. Two models in the same state
//! space are equivalent when their transition systems coincide, which can be decided without
//! building either system:
//!
//! * [`canonical::equivalent_by_completion`] compares the canonized complete (maximal)
//!   representatives; exponential in the number of components.
//! * [`minimization::equivalent_by_minimization`] compares the minimized normalized
//!   representatives; exponential only in the in-degree.
//!
//! [`oracle`] holds brute-force reference implementations used to cross-check both routes.

pub mod canonical;
pub mod dynamics;
mod error;
pub mod io;
pub mod minimization;
pub mod model;
pub mod normalization;
pub mod oracle;

pub use error::{Cap, Error, ParseError, Result};
pub use model::{
    validate, ActivityInterval, Component, ComponentId, Context, ContextSpace, Diagnostic,
    DiagnosticKind, Edge, Level, Limits, Model, Parametrization, RegulatoryGraph, State,
    StateSpace,
};
