//! Weighted dual graphs of curve configurations and their birational calculus.
//!
//! A *weighted dual graph* records a configuration of smooth rational curves
//! on a surface: one vertex per curve carrying its self-intersection number,
//! one edge per transversal intersection point (multi-edges allowed, loops
//! not). This crate implements the combinatorial calculus those graphs obey
//! under blow-ups and blow-downs of the surface:
//!
//! * [`graph`] — the graph type itself, shape detection, canonical forms,
//!   and intersection matrices;
//! * [`moves`] — the three primitive birational moves (blow-down, outer and
//!   inner blow-up), the composite elementary transformation, and replayable
//!   move traces;
//! * [`intersection`] — exact integer tests: negative definiteness,
//!   determinants, and contractibility searches;
//! * [`normal_form`] — minimalization and the standard forms of linear and
//!   circular graphs, branch decomposition of branched graphs, and fibration
//!   marker detection;
//! * [`classify`] — the decision procedure sorting a boundary graph into one
//!   of the six admissible families (or rejecting it with a reason);
//! * [`batch`] — data-parallel classification of many graphs at once.
//!
//! All arithmetic on weights is checked `i64`; determinant computations use
//! arbitrary-precision integers throughout, so no answer ever depends on
//! floating point or silent wraparound.

#![forbid(unsafe_code)]

pub mod batch;
mod canon;
pub mod classify;
pub mod graph;
pub mod intersection;
pub mod moves;
pub mod normal_form;

pub use classify::{classify, explain, Family, Outcome, Reason, Verdict};
pub use graph::{CanonicalForm, DualGraph, GraphError, GraphShape, VertexId};
pub use intersection::IntersectionMatrix;
pub use moves::{Direction, Move, MoveError, MoveTrace};
