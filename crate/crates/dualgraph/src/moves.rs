//! Birational moves on weighted dual graphs and replayable traces.
//!
//! Three primitive moves mirror blow-ups and blow-downs of the surface:
//!
//! * **blow-down** of a (−1)-vertex of valency ≤ 2: remove it; its two
//!   distinct neighbors (if any) gain an edge and +1 weight each, a single
//!   neighbor gains +1 weight, an isolated vertex leaves the empty graph.
//!   A (−1)-vertex doubly joined to one neighbor cannot contract — doing so
//!   would create a loop.
//! * **outer blow-up** at a vertex `v`: a fresh (−1)-vertex is joined to
//!   `v`, whose weight drops by one (blowing up a free point of the curve).
//! * **inner blow-up** at an edge `{u, w}`: one copy of the edge is replaced
//!   by a fresh (−1)-vertex joined to both ends, whose weights each drop by
//!   one (blowing up the intersection point).
//!
//! The *elementary transformation* is the composite «blow up, then contract
//! the old 0-vertex»: it slides weight past a 0-vertex of valency ≤ 2 and is
//! stored as a composite so callers can reason about elementary-only
//! rewrites. Fresh vertices are named `E1, E2, …` deterministically per
//! trace; replaying a trace reproduces the same graph with the same names.

use serde::{Deserialize, Serialize};

use crate::graph::{DualGraph, VertexId};

/// Errors raised by move application.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    /// Blow-down requires weight exactly −1.
    #[error("cannot blow down `{vertex}`: weight is {weight}, not -1")]
    NotMinusOne { vertex: VertexId, weight: i64 },
    /// Blow-down requires valency ≤ 2.
    #[error("cannot blow down `{vertex}`: valency {valency} exceeds 2")]
    ValencyTooHigh { vertex: VertexId, valency: u32 },
    /// Contracting a vertex doubly joined to a single neighbor would create
    /// a loop.
    #[error("cannot blow down `{vertex}`: both edges lead to `{neighbor}`, contraction would create a loop")]
    LoopCreation { vertex: VertexId, neighbor: VertexId },
    /// The named vertex is not in the graph.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    /// Inner blow-up requires an existing edge.
    #[error("no edge joins `{0}` and `{1}`")]
    NoSuchEdge(VertexId, VertexId),
    /// Elementary transformations pivot on a 0-vertex.
    #[error("`{vertex}` has weight {weight}, not 0: elementary transformations pivot on a 0-vertex")]
    NotZeroVertex { vertex: VertexId, weight: i64 },
    /// The direction given to an elementary transformation does not fit the
    /// pivot's valency or neighborhood.
    #[error("bad direction for elementary transformation at `{vertex}`: {reason}")]
    BadDirection { vertex: VertexId, reason: String },
    /// A trace was replayed against a graph that is not its recorded start.
    #[error("trace starts from a different graph: {reason}")]
    TraceMismatch { reason: String },
    /// A move failed mid-trace; the position is the zero-based index of the
    /// offending move.
    #[error("move {index} failed: {source}")]
    AtPosition {
        index: usize,
        #[source]
        source: Box<MoveError>,
    },
    /// A fresh-vertex name recorded in a trace collides with an existing
    /// vertex — the trace cannot have been produced from this graph.
    #[error("fresh vertex `{0}` already exists in the graph")]
    FreshNameTaken(VertexId),
}

/// Which way an elementary transformation slides weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// At a valency-2 zero: the named neighbor's weight drops by one, the
    /// other neighbor's rises by one.
    Toward(VertexId),
    /// At a valency-1 zero: the unique neighbor's weight rises by one.
    Raise,
    /// At a valency-1 zero: the unique neighbor's weight drops by one.
    Lower,
}

/// One birational move, with every vertex it touches named explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// Contract the named (−1)-vertex.
    BlowDown(VertexId),
    /// Attach a fresh (−1)-vertex to `at`.
    OuterBlowUp { at: VertexId, fresh: VertexId },
    /// Replace one copy of the edge `{u, w}` by a fresh (−1)-vertex joined
    /// to both.
    InnerBlowUp {
        u: VertexId,
        w: VertexId,
        fresh: VertexId,
    },
    /// The composite elementary transformation pivoting on the 0-vertex
    /// `zero`; `fresh` is the replacement 0-vertex created by the expansion.
    Elementary {
        zero: VertexId,
        direction: Direction,
        fresh: VertexId,
    },
}

impl Move {
    /// The fresh vertex this move introduces, if any.
    pub fn fresh(&self) -> Option<&VertexId> {
        match self {
            Move::BlowDown(_) => None,
            Move::OuterBlowUp { fresh, .. }
            | Move::InnerBlowUp { fresh, .. }
            | Move::Elementary { fresh, .. } => Some(fresh),
        }
    }
}

/// Contract a (−1)-vertex of valency ≤ 2 in place.
///
/// Returns the (up to two) neighbors whose weights rose. Contracting the
/// last vertex leaves the empty graph.
pub fn blow_down(g: &mut DualGraph, v: &VertexId) -> Result<(), MoveError> {
    let w = g
        .weight(v)
        .ok_or_else(|| MoveError::UnknownVertex(v.clone()))?;
    if w != -1 {
        return Err(MoveError::NotMinusOne {
            vertex: v.clone(),
            weight: w,
        });
    }
    let valency = g.valency(v);
    if valency > 2 {
        return Err(MoveError::ValencyTooHigh {
            vertex: v.clone(),
            valency,
        });
    }
    let neighbors = g.neighbors(v);
    if valency == 2 && neighbors.len() == 1 {
        return Err(MoveError::LoopCreation {
            vertex: v.clone(),
            neighbor: neighbors[0].0.clone(),
        });
    }
    match neighbors.as_slice() {
        [] => {
            g.vertices_mut().remove(v);
        }
        [(u, _)] => {
            let u = u.clone();
            g.remove_edge(v, &u);
            g.vertices_mut().remove(v);
            bump(g, &u, 1);
        }
        [(a, _), (b, _)] => {
            let (a, b) = (a.clone(), b.clone());
            g.remove_edge(v, &a);
            g.remove_edge(v, &b);
            g.vertices_mut().remove(v);
            g.add_edge(&a, &b);
            bump(g, &a, 1);
            bump(g, &b, 1);
        }
        _ => unreachable!("valency ≤ 2 admits at most two distinct neighbors"),
    }
    Ok(())
}

/// Attach a fresh (−1)-vertex to `at`, lowering `at`'s weight by one.
pub fn blow_up_outer(g: &mut DualGraph, at: &VertexId, fresh: VertexId) -> Result<(), MoveError> {
    if g.weight(at).is_none() {
        return Err(MoveError::UnknownVertex(at.clone()));
    }
    if g.contains(&fresh) {
        return Err(MoveError::FreshNameTaken(fresh));
    }
    g.vertices_mut().insert(fresh.clone(), -1);
    g.add_edge(at, &fresh);
    bump(g, at, -1);
    Ok(())
}

/// Replace one copy of the edge `{u, w}` by a fresh (−1)-vertex joined to
/// both ends, lowering each end's weight by one.
pub fn blow_up_inner(
    g: &mut DualGraph,
    u: &VertexId,
    w: &VertexId,
    fresh: VertexId,
) -> Result<(), MoveError> {
    for end in [u, w] {
        if g.weight(end).is_none() {
            return Err(MoveError::UnknownVertex(end.clone()));
        }
    }
    if g.edge_multiplicity(u, w) == 0 {
        return Err(MoveError::NoSuchEdge(u.clone(), w.clone()));
    }
    if g.contains(&fresh) {
        return Err(MoveError::FreshNameTaken(fresh));
    }
    g.remove_edge(u, w);
    g.vertices_mut().insert(fresh.clone(), -1);
    g.add_edge(u, &fresh);
    g.add_edge(w, &fresh);
    bump(g, u, -1);
    bump(g, w, -1);
    Ok(())
}

/// Apply the composite elementary transformation pivoting on `zero`.
///
/// * `Toward(u)` at a valency-2 zero with distinct neighbors `u`, `w`:
///   expands to an inner blow-up at `{u, zero}` followed by contraction of
///   `zero`. Net effect `[[…u, 0, w…]] → [[…u−1, 0, w+1…]]` with the fresh
///   vertex as the new 0.
/// * `Raise` / `Lower` at a valency-1 zero with neighbor `u`: expands to an
///   outer blow-up at `zero` (respectively an inner blow-up at `{zero, u}`)
///   followed by contraction of `zero`. Net effect `[[0, u…]] → [[0, u±1…]]`.
pub fn elementary(
    g: &mut DualGraph,
    zero: &VertexId,
    direction: &Direction,
    fresh: VertexId,
) -> Result<(), MoveError> {
    for m in expand_elementary(g, zero, direction, fresh)? {
        match m {
            Move::BlowDown(v) => blow_down(g, &v)?,
            Move::OuterBlowUp { at, fresh } => blow_up_outer(g, &at, fresh)?,
            Move::InnerBlowUp { u, w, fresh } => blow_up_inner(g, &u, &w, fresh)?,
            Move::Elementary { .. } => unreachable!("expansion is primitive"),
        }
    }
    Ok(())
}

/// The two primitive moves an elementary transformation expands to, given
/// the current graph. Fails with the same diagnostics `elementary` would.
pub fn expand_elementary(
    g: &DualGraph,
    zero: &VertexId,
    direction: &Direction,
    fresh: VertexId,
) -> Result<[Move; 2], MoveError> {
    let w = g
        .weight(zero)
        .ok_or_else(|| MoveError::UnknownVertex(zero.clone()))?;
    if w != 0 {
        return Err(MoveError::NotZeroVertex {
            vertex: zero.clone(),
            weight: w,
        });
    }
    let valency = g.valency(zero);
    let neighbors = g.neighbors(zero);
    match direction {
        Direction::Toward(u) => {
            if valency != 2 {
                return Err(MoveError::BadDirection {
                    vertex: zero.clone(),
                    reason: format!("`toward` needs valency 2, found {valency}"),
                });
            }
            if neighbors.len() != 2 {
                return Err(MoveError::BadDirection {
                    vertex: zero.clone(),
                    reason: "`toward` needs two distinct neighbors, found a double edge".into(),
                });
            }
            if !neighbors.iter().any(|(n, _)| n == u) {
                return Err(MoveError::BadDirection {
                    vertex: zero.clone(),
                    reason: format!("`{u}` is not a neighbor of the pivot"),
                });
            }
            Ok([
                Move::InnerBlowUp {
                    u: u.clone(),
                    w: zero.clone(),
                    fresh,
                },
                Move::BlowDown(zero.clone()),
            ])
        }
        Direction::Raise => {
            if valency != 1 {
                return Err(MoveError::BadDirection {
                    vertex: zero.clone(),
                    reason: format!("`raise` needs valency 1, found {valency}"),
                });
            }
            Ok([
                Move::OuterBlowUp {
                    at: zero.clone(),
                    fresh,
                },
                Move::BlowDown(zero.clone()),
            ])
        }
        Direction::Lower => {
            if valency != 1 {
                return Err(MoveError::BadDirection {
                    vertex: zero.clone(),
                    reason: format!("`lower` needs valency 1, found {valency}"),
                });
            }
            let (u, _) = neighbors[0].clone();
            Ok([
                Move::InnerBlowUp {
                    u,
                    w: zero.clone(),
                    fresh,
                },
                Move::BlowDown(zero.clone()),
            ])
        }
    }
}

/// An ordered, replayable record of moves from a fixed starting graph.
///
/// The trace stores the exact starting graph (names included), so replay
/// reproduces the end graph byte for byte; a relabeled start is a
/// [`MoveError::TraceMismatch`]. Fresh vertices are named `E1, E2, …`,
/// skipping names already present, and are never reused within a trace even
/// after deletion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    start: DualGraph,
    moves: Vec<Move>,
    /// Every name ever used by this trace's graph states — fresh names must
    /// avoid all of them.
    used_names: Vec<VertexId>,
    /// Next candidate index for fresh `E{n}` names.
    next_fresh: u64,
}

impl MoveTrace {
    /// Start a trace at `start`.
    pub fn new(start: &DualGraph) -> Self {
        MoveTrace {
            start: start.clone(),
            moves: Vec::new(),
            used_names: start.vertices().map(|(id, _)| id.clone()).collect(),
            next_fresh: 1,
        }
    }

    /// The recorded starting graph.
    pub fn start(&self) -> &DualGraph {
        &self.start
    }

    /// The recorded moves in order.
    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Number of recorded moves (elementary composites count once).
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// True if no moves are recorded.
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Drop recorded moves beyond the first `len` (used when a search
    /// backtracks). Names stay reserved: a truncated trace never reuses a
    /// fresh name it once handed out.
    pub fn truncate(&mut self, len: usize) {
        self.moves.truncate(len);
    }

    /// Allocate the next fresh vertex name: the first `E{n}` not yet used.
    pub fn fresh_name(&mut self) -> VertexId {
        loop {
            let candidate = VertexId::new(format!("E{}", self.next_fresh));
            self.next_fresh += 1;
            if !self.used_names.contains(&candidate) {
                self.used_names.push(candidate.clone());
                return candidate;
            }
        }
    }

    /// Record and apply a blow-down.
    pub fn blow_down(&mut self, g: &mut DualGraph, v: &VertexId) -> Result<(), MoveError> {
        blow_down(g, v)?;
        self.moves.push(Move::BlowDown(v.clone()));
        Ok(())
    }

    /// Record and apply an outer blow-up; returns the fresh vertex.
    pub fn blow_up_outer(
        &mut self,
        g: &mut DualGraph,
        at: &VertexId,
    ) -> Result<VertexId, MoveError> {
        let fresh = self.fresh_name();
        blow_up_outer(g, at, fresh.clone())?;
        self.moves.push(Move::OuterBlowUp {
            at: at.clone(),
            fresh: fresh.clone(),
        });
        Ok(fresh)
    }

    /// Record and apply an inner blow-up; returns the fresh vertex.
    pub fn blow_up_inner(
        &mut self,
        g: &mut DualGraph,
        u: &VertexId,
        w: &VertexId,
    ) -> Result<VertexId, MoveError> {
        let fresh = self.fresh_name();
        blow_up_inner(g, u, w, fresh.clone())?;
        self.moves.push(Move::InnerBlowUp {
            u: u.clone(),
            w: w.clone(),
            fresh: fresh.clone(),
        });
        Ok(fresh)
    }

    /// Record and apply an elementary transformation; returns the fresh
    /// 0-vertex that replaces the pivot.
    pub fn elementary(
        &mut self,
        g: &mut DualGraph,
        zero: &VertexId,
        direction: Direction,
    ) -> Result<VertexId, MoveError> {
        let fresh = self.fresh_name();
        elementary(g, zero, &direction, fresh.clone())?;
        self.moves.push(Move::Elementary {
            zero: zero.clone(),
            direction,
            fresh: fresh.clone(),
        });
        Ok(fresh)
    }

    /// Append every move of `other` (whose start must be where this trace
    /// currently ends — the caller guarantees it, typically by construction).
    pub fn extend(&mut self, other: &MoveTrace) {
        self.moves.extend(other.moves.iter().cloned());
        for name in &other.used_names {
            if !self.used_names.contains(name) {
                self.used_names.push(name.clone());
            }
        }
        self.next_fresh = self.next_fresh.max(other.next_fresh);
    }

    /// Replay the trace from `g`, which must equal the recorded start
    /// exactly (same names, weights, and edges). Returns the end graph.
    ///
    /// Any per-move failure is wrapped with the move's position.
    pub fn apply(&self, g: &DualGraph) -> Result<DualGraph, MoveError> {
        if *g != self.start {
            let reason = if g.canonicalize() == self.start.canonicalize() {
                "isomorphic to the recorded start but labeled differently".to_string()
            } else {
                "not the recorded starting graph".to_string()
            };
            return Err(MoveError::TraceMismatch { reason });
        }
        let mut cur = g.clone();
        for (index, m) in self.moves.iter().enumerate() {
            let step = |cur: &mut DualGraph| -> Result<(), MoveError> {
                match m {
                    Move::BlowDown(v) => blow_down(cur, v),
                    Move::OuterBlowUp { at, fresh } => blow_up_outer(cur, at, fresh.clone()),
                    Move::InnerBlowUp { u, w, fresh } => {
                        blow_up_inner(cur, u, w, fresh.clone())
                    }
                    Move::Elementary {
                        zero,
                        direction,
                        fresh,
                    } => elementary(cur, zero, direction, fresh.clone()),
                }
            };
            step(&mut cur).map_err(|e| MoveError::AtPosition {
                index,
                source: Box::new(e),
            })?;
        }
        Ok(cur)
    }
}

/// Checked weight adjustment; i64 overflow here is unreachable in real use
/// (every move shifts weights by ±1) but fails loudly rather than wrapping.
fn bump(g: &mut DualGraph, v: &VertexId, delta: i64) {
    let w = g
        .vertices_mut()
        .get_mut(v)
        .expect("bump targets an existing vertex");
    *w = w
        .checked_add(delta)
        .expect("vertex weight overflowed i64 — input weights are astronomically out of range");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vid(s: &str) -> VertexId {
        VertexId::new(s)
    }

    #[test]
    fn blow_down_middle_of_chain_joins_neighbors() {
        // [[-2, -1, -2]] — contract the middle: [[-1, -1]].
        let mut g = DualGraph::chain(&[-2, -1, -2]);
        blow_down(&mut g, &vid("C2")).unwrap();
        assert_eq!(g, DualGraph::new(
            [(vid("C1"), -1), (vid("C3"), -1)],
            [(vid("C1"), vid("C3"))],
        ).unwrap());
    }

    #[test]
    fn blow_down_leaf_bumps_its_neighbor() {
        let mut g = DualGraph::chain(&[-1, -3]);
        blow_down(&mut g, &vid("C1")).unwrap();
        assert_eq!(g, DualGraph::chain(&[-2]).relabel(
            &[(vid("C1"), vid("C2"))].into()
        ).unwrap());
    }

    #[test]
    fn blow_down_isolated_vertex_leaves_empty() {
        let mut g = DualGraph::chain(&[-1]);
        blow_down(&mut g, &vid("C1")).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn blow_down_rejects_wrong_weight_and_high_valency() {
        let mut g = DualGraph::chain(&[-2, -1, -2]);
        assert_eq!(
            blow_down(&mut g, &vid("C1")),
            Err(MoveError::NotMinusOne { vertex: vid("C1"), weight: -2 })
        );
        let mut star = DualGraph::new(
            [(vid("E"), -1), (vid("A"), -2), (vid("B"), -2), (vid("D"), -2)],
            [(vid("E"), vid("A")), (vid("E"), vid("B")), (vid("E"), vid("D"))],
        )
        .unwrap();
        assert_eq!(
            blow_down(&mut star, &vid("E")),
            Err(MoveError::ValencyTooHigh { vertex: vid("E"), valency: 3 })
        );
    }

    #[test]
    fn blow_down_rejects_double_edge_to_one_neighbor() {
        // ((-1, 0)): contracting the −1 would join its single neighbor to
        // itself.
        let mut g = DualGraph::cycle(&[-1, 0]);
        assert_eq!(
            blow_down(&mut g, &vid("C1")),
            Err(MoveError::LoopCreation { vertex: vid("C1"), neighbor: vid("C2") })
        );
    }

    #[test]
    fn inner_blow_up_splits_one_copy_of_a_double_edge() {
        // ((0, 0)) — blow up one of the two edges: a triangle of
        // (−1, −1, −1).
        let mut g = DualGraph::cycle(&[0, 0]);
        blow_up_inner(&mut g, &vid("C1"), &vid("C2"), vid("E1")).unwrap();
        assert_eq!(g.canonicalize(), DualGraph::cycle(&[-1, -1, -1]).canonicalize());
    }

    #[test]
    fn outer_then_down_restores_graph() {
        let original = DualGraph::chain(&[-2, 0, -3]);
        let mut g = original.clone();
        blow_up_outer(&mut g, &vid("C2"), vid("E1")).unwrap();
        assert_eq!(g.weight(&vid("C2")), Some(-1));
        blow_down(&mut g, &vid("E1")).unwrap();
        assert_eq!(g, original);
    }

    #[test]
    fn elementary_toward_slides_weight_through_the_zero() {
        // [[-2, 0, -3]] toward the left end: [[-3, 0, -2]].
        let mut g = DualGraph::chain(&[-2, 0, -3]);
        let mut trace = MoveTrace::new(&g);
        trace
            .elementary(&mut g, &vid("C2"), Direction::Toward(vid("C1")))
            .unwrap();
        assert_eq!(g.canonicalize(), DualGraph::chain(&[-3, 0, -2]).canonicalize());
        // The pivot was recycled: C2 is gone, E1 is the new zero.
        assert!(!g.contains(&vid("C2")));
        assert_eq!(g.weight(&vid("E1")), Some(0));
    }

    #[test]
    fn elementary_raise_and_lower_shift_the_end_neighbor() {
        // [[0, -1]] raise: [[0, 0]].
        let mut g = DualGraph::chain(&[0, -1]);
        elementary(&mut g, &vid("C1"), &Direction::Raise, vid("E1")).unwrap();
        assert_eq!(g.canonicalize(), DualGraph::chain(&[0, 0]).canonicalize());

        let mut h = DualGraph::chain(&[0, -1]);
        elementary(&mut h, &vid("C1"), &Direction::Lower, vid("E1")).unwrap();
        assert_eq!(h.canonicalize(), DualGraph::chain(&[0, -2]).canonicalize());
    }

    #[test]
    fn elementary_rejects_bad_pivots_and_directions() {
        let mut g = DualGraph::chain(&[-2, 0, -3]);
        assert!(matches!(
            elementary(&mut g, &vid("C1"), &Direction::Raise, vid("E1")),
            Err(MoveError::NotZeroVertex { .. })
        ));
        assert!(matches!(
            elementary(&mut g, &vid("C2"), &Direction::Raise, vid("E1")),
            Err(MoveError::BadDirection { .. })
        ));
        assert!(matches!(
            elementary(&mut g, &vid("C2"), &Direction::Toward(vid("C9")), vid("E1")),
            Err(MoveError::BadDirection { .. })
        ));
        // A zero doubly joined to one neighbor has valency 2 but no
        // direction to slide in.
        let mut two = DualGraph::cycle(&[0, -2]);
        assert!(matches!(
            elementary(&mut two, &vid("C1"), &Direction::Toward(vid("C2")), vid("E1")),
            Err(MoveError::BadDirection { .. })
        ));
    }

    #[test]
    fn trace_replay_reproduces_names_and_rejects_relabels() {
        let start = DualGraph::chain(&[-2, 0, -3]);
        let mut g = start.clone();
        let mut trace = MoveTrace::new(&g);
        trace
            .elementary(&mut g, &vid("C2"), Direction::Toward(vid("C1")))
            .unwrap();
        trace.blow_up_outer(&mut g, &vid("C3")).unwrap();

        let replayed = trace.apply(&start).unwrap();
        assert_eq!(replayed, g);

        // Same graph, different names: the trace must refuse.
        let relabeled = start
            .relabel(
                &[
                    (vid("C1"), vid("X1")),
                    (vid("C2"), vid("X2")),
                    (vid("C3"), vid("X3")),
                ]
                .into(),
            )
            .unwrap();
        assert!(matches!(
            trace.apply(&relabeled),
            Err(MoveError::TraceMismatch { .. })
        ));
    }

    #[test]
    fn trace_errors_carry_positions() {
        let start = DualGraph::chain(&[-1, -3]);
        let mut g = start.clone();
        let mut trace = MoveTrace::new(&g);
        trace.blow_down(&mut g, &vid("C1")).unwrap();
        // Manually craft a second contraction of the already-removed vertex.
        let mut broken = trace.clone();
        broken.moves.push(Move::BlowDown(vid("C1")));
        match broken.apply(&start) {
            Err(MoveError::AtPosition { index: 1, source }) => {
                assert_eq!(*source, MoveError::UnknownVertex(vid("C1")));
            }
            other => panic!("expected positioned error, got {other:?}"),
        }
    }

    #[test]
    fn fresh_names_skip_taken_ones_and_are_never_reused() {
        let g0 = DualGraph::new(
            [(vid("E1"), 0), (vid("B"), -1)],
            [(vid("E1"), vid("B"))],
        )
        .unwrap();
        let mut g = g0.clone();
        let mut trace = MoveTrace::new(&g);
        let f1 = trace.blow_up_outer(&mut g, &vid("B")).unwrap();
        assert_eq!(f1, vid("E2"), "E1 is taken, so the first fresh name is E2");
        // Contract the fresh vertex, then blow up again: the name E2 is not
        // recycled.
        trace.blow_down(&mut g, &f1).unwrap();
        let f2 = trace.blow_up_outer(&mut g, &vid("B")).unwrap();
        assert_eq!(f2, vid("E3"));
    }
}
