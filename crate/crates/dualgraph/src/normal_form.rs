//! Minimalization, standard forms of linear and circular graphs, branch
//! decomposition, and fibration-marker detection.
//!
//! The two standardizers are deterministic rewrite machines. Each loop
//! iteration re-reads the graph in a fixed orientation (zero blocks lead),
//! applies the first matching rule, and records every primitive move in the
//! trace. Progress is protected twice over: a visited set of canonical forms
//! detects oscillation, and a global move ceiling bounds runaway rewriting;
//! either trips a [`Diagnostic`] instead of looping. Inputs whose class has
//! no standard representative (they exist — e.g. `[[-1]]`, or chains whose
//! zero block cannot be shrunk below length 3) end with a diagnostic and the
//! best graph reached.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::graph::{CanonicalForm, DualGraph, GraphShape, VertexId};
use crate::intersection::is_contractible;
use crate::moves::{Direction, MoveError, MoveTrace};

/// Upper bound on primitive moves a standardizer may record before giving up.
pub const MOVE_CEILING: usize = 10_000;

/// Errors from shape- or minimality-sensitive operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("expected a {expected} graph, found {found:?}")]
    WrongShape {
        expected: &'static str,
        found: GraphShape,
    },
    #[error("the empty graph has no normal form")]
    Empty,
    #[error("graph is not minimal: `{vertex}` is a contractible (-1)-vertex")]
    NotMinimal { vertex: VertexId },
}

/// Non-fatal findings reported by the standardizers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// The zero block cannot be brought down to a supported length
    /// (chains support blocks of length ≤ 3, and only `[[0,0,0]]` exactly
    /// for length 3).
    NonstandardZeroBlock { length: usize },
    /// The rewrite system revisited a state or hit the move ceiling.
    NonTermination { moves_applied: usize },
    /// No rule applies and the graph is not a recognized standard form.
    Stuck,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::NonstandardZeroBlock { length } => {
                write!(f, "zero block of length {length} has no standard form")
            }
            Diagnostic::NonTermination { moves_applied } => {
                write!(
                    f,
                    "rewriting did not terminate ({moves_applied} moves applied)"
                )
            }
            Diagnostic::Stuck => write!(f, "no rewrite rule applies"),
        }
    }
}

/// Result of a standardization run: the reached graph, the replayable trace
/// from the input, and any diagnostics (empty on clean success).
#[derive(Debug, Clone)]
pub struct Standardized {
    pub graph: DualGraph,
    pub trace: MoveTrace,
    pub diagnostics: Vec<Diagnostic>,
}

impl Standardized {
    /// True when standardization finished without diagnostics.
    pub fn is_clean(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Minimalization
// ---------------------------------------------------------------------------

/// The lowest-id vertex that can be blown down right now: weight −1 and
/// valency 1 or 2 with distinct neighbors. Valency 0 is excluded — a lone
/// (−1)-vertex stays, since emptying the graph leaves nothing to work with —
/// and double edges to a single neighbor are excluded because contracting
/// them would create a loop.
fn first_minimalizable(g: &DualGraph) -> Option<VertexId> {
    minimalizable_candidates(g).into_iter().next()
}

/// All legal minimalization targets, in id order.
fn minimalizable_candidates(g: &DualGraph) -> Vec<VertexId> {
    let mut out = Vec::new();
    for (id, w) in g.vertices() {
        if w != -1 {
            continue;
        }
        let valency = g.valency(id);
        if valency == 0 || valency > 2 {
            continue;
        }
        if valency == 2 && g.neighbors(id).len() == 1 {
            continue;
        }
        out.push(id.clone());
    }
    out
}

/// Repeatedly blow down (−1)-vertices of valency ≤ 2 (lowest id first)
/// until none remain, except the skips documented on
/// [`first_minimalizable`]. Returns the minimal graph and the trace.
pub fn minimalize(g: &DualGraph) -> (DualGraph, MoveTrace) {
    let mut cur = g.clone();
    let mut trace = MoveTrace::new(g);
    minimalize_into(&mut cur, &mut trace);
    (cur, trace)
}

/// In-place minimalization appending to an existing trace.
fn minimalize_into(cur: &mut DualGraph, trace: &mut MoveTrace) {
    while let Some(v) = first_minimalizable(cur) {
        trace
            .blow_down(cur, &v)
            .expect("candidate was checked legal");
    }
}

/// Minimalize choosing among candidates with a caller-supplied picker —
/// used to check that the outcome is independent of the contraction order.
pub fn minimalize_with(
    g: &DualGraph,
    mut pick: impl FnMut(&[VertexId]) -> usize,
) -> (DualGraph, MoveTrace) {
    let mut cur = g.clone();
    let mut trace = MoveTrace::new(g);
    loop {
        let candidates = minimalizable_candidates(&cur);
        if candidates.is_empty() {
            return (cur, trace);
        }
        let i = pick(&candidates).min(candidates.len() - 1);
        trace
            .blow_down(&mut cur, &candidates[i])
            .expect("candidate was checked legal");
    }
}

/// True iff no (−1)-vertex of valency ≤ 2 can be blown down.
pub fn is_minimal(g: &DualGraph) -> bool {
    first_minimalizable(g).is_none()
}

// ---------------------------------------------------------------------------
// Elementary-move toolkit
// ---------------------------------------------------------------------------

/// Repeated elementary moves at a valency-2 `zero` (distinct neighbors)
/// until the chosen neighbor `n` has weight 0; the opposite neighbor
/// absorbs `n`'s old weight. This is the weight-shifting engine behind
/// `[[w₁, 0, w₂]] → [[w₁+w₂, 0, 0]]` and the zero-pair slides.
///
/// Performs `|weight(n)|` elementary moves. The pivot is replaced by a fresh
/// vertex on every move; the returned id is the final zero.
pub fn zero_out_neighbor(
    g: &mut DualGraph,
    trace: &mut MoveTrace,
    zero: &VertexId,
    n: &VertexId,
) -> Result<VertexId, MoveError> {
    let mut z = zero.clone();
    loop {
        let w = g
            .weight(n)
            .ok_or_else(|| MoveError::UnknownVertex(n.clone()))?;
        if w == 0 {
            return Ok(z);
        }
        let direction = if w > 0 {
            Direction::Toward(n.clone())
        } else {
            let other = g
                .neighbors(&z)
                .into_iter()
                .map(|(v, _)| v)
                .find(|v| v != n)
                .ok_or_else(|| MoveError::BadDirection {
                    vertex: z.clone(),
                    reason: "pivot needs a second distinct neighbor to absorb weight".into(),
                })?;
            Direction::Toward(other)
        };
        z = trace.elementary(g, &z, direction)?;
    }
}

// ---------------------------------------------------------------------------
// Standard-form recognizers
// ---------------------------------------------------------------------------

/// The standard forms a linear graph can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearStandardForm {
    /// `[[0]]`.
    SingleZero,
    /// `[[0, 0, w₁…w_m]]` with every wᵢ ≤ −2; `m = 0` gives `[[0, 0]]`.
    Zigzag { tail: Vec<i64> },
    /// `[[0, 0, 0]]`.
    TripleZero,
    /// Every weight ≤ −2: rigid, no move can introduce a zero.
    Rigid { weights: Vec<i64> },
}

/// Recognize a chain as one of the linear standard forms, reading weights
/// with zero blocks leading.
pub fn linear_standard_form(g: &DualGraph) -> Option<LinearStandardForm> {
    let (_, ws) = g.as_chain()?;
    if ws == [0] {
        return Some(LinearStandardForm::SingleZero);
    }
    if ws == [0, 0, 0] {
        return Some(LinearStandardForm::TripleZero);
    }
    if ws.len() >= 2 && ws[0] == 0 && ws[1] == 0 && ws[2..].iter().all(|&w| w <= -2) {
        return Some(LinearStandardForm::Zigzag {
            tail: ws[2..].to_vec(),
        });
    }
    if ws.iter().all(|&w| w <= -2) {
        return Some(LinearStandardForm::Rigid { weights: ws });
    }
    None
}

/// The standard forms a circular graph can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircularStandardForm {
    /// `((0_{2k}, w₁…w_n))` with every wᵢ ≤ −2; `k = 0` is the rigid
    /// all-≤ −2 cycle, `n = 0` (with `k = 1`) is `((0, 0))`.
    EvenZeros { k: usize, tail: Vec<i64> },
    /// `((0_l, w))` with `w ≤ 0`: a single zero run of length `l ≥ 1`
    /// followed by one vertex. All-zero cycles of length ≥ 3 are read this
    /// way (`l = len − 1`, `w = 0`).
    ZeroRun { l: usize, w: i64 },
    /// `((0_{2k}, −1, −1))`; `k = 0` is the double-edge pair `((−1, −1))`.
    MinusOnePair { k: usize },
}

/// Recognize a cycle as one of the circular standard forms.
///
/// Overlaps are resolved the same way every time: a cycle of two zeros is
/// `EvenZeros { k: 1 }`, longer all-zero cycles are `ZeroRun`, and an even
/// zero run with an all-≤ −2 tail is `EvenZeros` even when the tail has
/// length one.
pub fn circular_standard_form(g: &DualGraph) -> Option<CircularStandardForm> {
    let (_, ws) = g.as_cycle_reading()?;
    let n = ws.len();
    let zeros = ws.iter().filter(|&&w| w == 0).count();
    if zeros == n {
        return if n == 2 {
            Some(CircularStandardForm::EvenZeros { k: 1, tail: vec![] })
        } else {
            Some(CircularStandardForm::ZeroRun { l: n - 1, w: 0 })
        };
    }
    if zeros == 0 {
        if ws.iter().all(|&w| w <= -2) {
            return Some(CircularStandardForm::EvenZeros { k: 0, tail: ws });
        }
        if ws == [-1, -1] {
            return Some(CircularStandardForm::MinusOnePair { k: 0 });
        }
        return None;
    }
    // Mixed: the reading leads with the (unique, if standard) zero run.
    let run = ws.iter().take_while(|&&w| w == 0).count();
    if run != zeros {
        return None; // zeros split across several runs
    }
    let tail = &ws[run..];
    if tail == [-1, -1] && run % 2 == 0 {
        return Some(CircularStandardForm::MinusOnePair { k: run / 2 });
    }
    if run % 2 == 0 && tail.iter().all(|&w| w <= -2) {
        return Some(CircularStandardForm::EvenZeros {
            k: run / 2,
            tail: tail.to_vec(),
        });
    }
    if tail.len() == 1 && tail[0] <= -1 {
        return Some(CircularStandardForm::ZeroRun { l: run, w: tail[0] });
    }
    None
}

// ---------------------------------------------------------------------------
// Linear standardization
// ---------------------------------------------------------------------------

/// Drive a single-vertex or linear graph to a standard form:
/// `[[0]]`, `[[0, 0, w₁…w_m]]` (all ≤ −2), `[[0, 0, 0]]`, or an unchanged
/// all-≤ −2 rigid chain. Classes without a standard representative end with
/// a diagnostic and the last graph reached.
pub fn standardize_linear(g: &DualGraph) -> Result<Standardized, NormalFormError> {
    match g.shape() {
        Ok(GraphShape::SingleVertex) | Ok(GraphShape::Linear) => {}
        Ok(found) => {
            return Err(NormalFormError::WrongShape {
                expected: "linear",
                found,
            })
        }
        Err(_) => return Err(NormalFormError::Empty),
    }

    let mut cur = g.clone();
    let mut trace = MoveTrace::new(g);
    let mut diagnostics = Vec::new();
    let mut visited: HashSet<CanonicalForm> = HashSet::new();

    loop {
        if trace.len() >= MOVE_CEILING {
            diagnostics.push(Diagnostic::NonTermination {
                moves_applied: trace.len(),
            });
            break;
        }
        if !visited.insert(cur.canonicalize()) {
            diagnostics.push(Diagnostic::NonTermination {
                moves_applied: trace.len(),
            });
            break;
        }
        if linear_standard_form(&cur).is_some() {
            break;
        }

        let (ids, ws) = cur.as_chain().expect("shape is preserved by every rule");
        let n = ws.len();

        // Dead ends that no move can rescue (checked against the
        // blow-invariant (−1)^n · det, which no standard form shares).
        if ws == [-1] {
            diagnostics.push(Diagnostic::Stuck);
            break;
        }
        let longest_zero_run = zero_runs(&ws).into_iter().map(|(_, l)| l).max().unwrap_or(0);
        if longest_zero_run >= 3 && n > longest_zero_run {
            diagnostics.push(Diagnostic::NonstandardZeroBlock {
                length: longest_zero_run,
            });
            break;
        }
        if longest_zero_run == n && n >= 4 {
            diagnostics.push(Diagnostic::NonstandardZeroBlock { length: n });
            break;
        }

        // R1 — risk-free contraction: a (−1)-vertex whose neighbors are all
        // ≤ −1, so blowing down cannot create a positive weight.
        if let Some(v) = safe_blow_down(&cur) {
            trace.blow_down(&mut cur, &v).expect("checked legal");
            continue;
        }

        // R2 — eliminate the leftmost positive weight.
        if let Some(i) = ws.iter().position(|&w| w > 0) {
            dig_positive_linear(&mut cur, &mut trace, &ids, &ws, i)?;
            continue;
        }

        // R3 — left-end zero with a negative neighbor: raise the neighbor
        // to zero, forming the leading pair.
        if ws[0] == 0 && n >= 2 && ws[1] < 0 {
            let budget_ok = (-ws[1]) as usize <= MOVE_CEILING.saturating_sub(trace.len());
            if !budget_ok {
                diagnostics.push(Diagnostic::NonTermination {
                    moves_applied: trace.len(),
                });
                break;
            }
            let mut z = ids[0].clone();
            for _ in 0..(-ws[1]) {
                z = trace
                    .elementary(&mut cur, &z, Direction::Raise)
                    .map_err(internal)?;
            }
            continue;
        }

        // R4 — slide a zero pair leftward one step.
        if let Some((s, _)) = zero_runs(&ws).into_iter().find(|&(s, l)| l >= 2 && s >= 1) {
            zero_out_checked(&mut cur, &mut trace, &ids[s], &ids[s - 1], &mut diagnostics)?;
            if !diagnostics.is_empty() {
                break;
            }
            continue;
        }

        // R5 — pair up an interior lone zero with its left neighbor.
        if let Some(i) = (1..n.saturating_sub(1)).find(|&i| {
            ws[i] == 0 && ws[i - 1] != 0 && ws[i + 1] != 0
        }) {
            zero_out_checked(&mut cur, &mut trace, &ids[i], &ids[i - 1], &mut diagnostics)?;
            if !diagnostics.is_empty() {
                break;
            }
            continue;
        }

        // R6 — right-end zero with a negative neighbor: raise it into a run
        // (the run then slides left or trips a zero-block diagnostic).
        if n >= 2 && ws[n - 1] == 0 && ws[n - 2] < 0 {
            let budget_ok = (-ws[n - 2]) as usize <= MOVE_CEILING.saturating_sub(trace.len());
            if !budget_ok {
                diagnostics.push(Diagnostic::NonTermination {
                    moves_applied: trace.len(),
                });
                break;
            }
            let mut z = ids[n - 1].clone();
            for _ in 0..(-ws[n - 2]) {
                z = trace
                    .elementary(&mut cur, &z, Direction::Raise)
                    .map_err(internal)?;
            }
            continue;
        }

        // Fallback — ordinary minimalization step.
        if let Some(v) = first_minimalizable(&cur) {
            trace.blow_down(&mut cur, &v).expect("checked legal");
            continue;
        }

        diagnostics.push(Diagnostic::Stuck);
        break;
    }

    Ok(Standardized {
        graph: cur,
        trace,
        diagnostics,
    })
}

/// Maximal runs of zero weights as `(start, length)`.
fn zero_runs(ws: &[i64]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < ws.len() {
        if ws[i] == 0 {
            let start = i;
            while i < ws.len() && ws[i] == 0 {
                i += 1;
            }
            runs.push((start, i - start));
        } else {
            i += 1;
        }
    }
    runs
}

/// Lowest-id (−1)-vertex of valency ≤ 2 (distinct neighbors) all of whose
/// neighbors weigh ≤ −1, so contraction cannot create a positive weight.
fn safe_blow_down(g: &DualGraph) -> Option<VertexId> {
    minimalizable_candidates(g)
        .into_iter()
        .find(|v| g.neighbors(v).iter().all(|(u, _)| g.weight(u).unwrap_or(0) <= -1))
}

/// Remove the positive weight at chain position `i` (ids/ws are the current
/// reading): prefer an elementary dig through an adjacent zero, then an
/// end-zero lowering, then an inner blow-up on an adjacent edge, and for an
/// isolated vertex an outer blow-up.
fn dig_positive_linear(
    cur: &mut DualGraph,
    trace: &mut MoveTrace,
    ids: &[VertexId],
    ws: &[i64],
    i: usize,
) -> Result<(), NormalFormError> {
    let n = ws.len();
    // Adjacent interior zero: shift the whole weight across it.
    for j in [i.wrapping_sub(1), i + 1] {
        if j < n && ws[j] == 0 && cur.valency(&ids[j]) == 2 {
            zero_out_neighbor(cur, trace, &ids[j], &ids[i]).map_err(internal)?;
            return Ok(());
        }
    }
    // Adjacent end zero: lower the positive down to zero.
    for j in [i.wrapping_sub(1), i + 1] {
        if j < n && ws[j] == 0 && cur.valency(&ids[j]) == 1 {
            let mut z = ids[j].clone();
            for _ in 0..ws[i] {
                z = trace
                    .elementary(cur, &z, Direction::Lower)
                    .map_err(internal)?;
            }
            return Ok(());
        }
    }
    // Any edge: one inner blow-up chips the weight by one.
    if n >= 2 {
        let j = if i > 0 { i - 1 } else { i + 1 };
        trace
            .blow_up_inner(cur, &ids[i], &ids[j])
            .map_err(internal)?;
        return Ok(());
    }
    // Isolated positive vertex.
    trace.blow_up_outer(cur, &ids[i]).map_err(internal)?;
    Ok(())
}

/// [`zero_out_neighbor`] with a move-budget check; on an exhausted budget a
/// diagnostic is pushed instead of performing the moves.
fn zero_out_checked(
    cur: &mut DualGraph,
    trace: &mut MoveTrace,
    zero: &VertexId,
    n: &VertexId,
    diagnostics: &mut Vec<Diagnostic>,
) -> Result<(), NormalFormError> {
    let cost = cur.weight(n).unwrap_or(0).unsigned_abs() as usize;
    if cost > MOVE_CEILING.saturating_sub(trace.len()) {
        diagnostics.push(Diagnostic::NonTermination {
            moves_applied: trace.len(),
        });
        return Ok(());
    }
    zero_out_neighbor(cur, trace, zero, n).map_err(internal)?;
    Ok(())
}

/// Move errors inside the standardizers indicate a rule fired on a state it
/// was not designed for; surface them loudly rather than mislabeling graphs.
fn internal(e: MoveError) -> NormalFormError {
    panic!("standardizer applied an illegal move: {e}");
}

// ---------------------------------------------------------------------------
// Circular standardization
// ---------------------------------------------------------------------------

/// Drive a circular graph to a standard form: `((0_{2k}, w₁…w_n))` with all
/// wᵢ ≤ −2, `((0_l, w))` with w ≤ 0, or `((0_{2k}, −1, −1))`. The recognizer
/// runs before any move, so already-standard cycles (including `((−1, −1))`
/// and `((0, 0, −1, −1))`, which naive minimalization would tear apart)
/// return unchanged.
pub fn standardize_circular(g: &DualGraph) -> Result<Standardized, NormalFormError> {
    match g.shape() {
        Ok(GraphShape::Circular) => {}
        Ok(found) => {
            return Err(NormalFormError::WrongShape {
                expected: "circular",
                found,
            })
        }
        Err(_) => return Err(NormalFormError::Empty),
    }

    let mut cur = g.clone();
    let mut trace = MoveTrace::new(g);
    let mut diagnostics = Vec::new();
    let mut visited: HashSet<CanonicalForm> = HashSet::new();

    loop {
        if trace.len() >= MOVE_CEILING {
            diagnostics.push(Diagnostic::NonTermination {
                moves_applied: trace.len(),
            });
            break;
        }
        if !visited.insert(cur.canonicalize()) {
            diagnostics.push(Diagnostic::NonTermination {
                moves_applied: trace.len(),
            });
            break;
        }
        if circular_standard_form(&cur).is_some() {
            break;
        }

        let (ids, ws) = cur
            .as_cycle_reading()
            .expect("shape is preserved by every rule");
        let n = ws.len();

        // R1 — risk-free contraction.
        if let Some(v) = safe_blow_down(&cur) {
            trace.blow_down(&mut cur, &v).expect("checked legal");
            continue;
        }

        // R2 — chip a positive weight with an inner blow-up, preferring the
        // edge toward an adjacent zero (that turns `((0, 1, 0))` into the
        // standard `((−1, −1, 0, 0))` instead of treadmilling weight).
        if let Some(i) = ws.iter().position(|&w| w > 0) {
            let left = ids[(i + n - 1) % n].clone();
            let right = ids[(i + 1) % n].clone();
            let partner = if cur.weight(&left) == Some(0) {
                left
            } else if cur.weight(&right) == Some(0) {
                right
            } else if cur.weight(&left) <= cur.weight(&right) {
                left
            } else {
                right
            };
            trace
                .blow_up_inner(&mut cur, &ids[i], &partner)
                .map_err(internal)?;
            continue;
        }

        // R3 — several zero runs: walk the run that leads the reading
        // rightward, absorbing the gap after it, until it meets the next
        // run. Each step costs |gap vertex weight| elementary moves.
        let runs = cycle_zero_runs(&ws);
        if runs.len() >= 2 {
            let (start, len) = runs[0];
            let mut tail_zero = ids[(start + len - 1) % n].clone();
            let mut merged = false;
            while !merged {
                let gap_vertex = cur
                    .neighbors(&tail_zero)
                    .into_iter()
                    .map(|(v, _)| v)
                    .find(|v| cur.weight(v) != Some(0))
                    .expect("a run boundary borders a nonzero vertex");
                let cost = cur.weight(&gap_vertex).unwrap_or(0).unsigned_abs() as usize;
                if cost > MOVE_CEILING.saturating_sub(trace.len()) {
                    diagnostics.push(Diagnostic::NonTermination {
                        moves_applied: trace.len(),
                    });
                    break;
                }
                // After this, `gap_vertex` weighs 0. If its far side already
                // touches another zero, the runs have merged.
                let far_zero = cur
                    .neighbors(&gap_vertex)
                    .into_iter()
                    .map(|(v, _)| v)
                    .any(|v| v != tail_zero && cur.weight(&v) == Some(0));
                zero_out_neighbor(&mut cur, &mut trace, &tail_zero, &gap_vertex)
                    .map_err(internal)?;
                merged = far_zero;
                tail_zero = gap_vertex;
            }
            if !diagnostics.is_empty() {
                break;
            }
            continue;
        }

        // Fallback — ordinary minimalization step.
        if let Some(v) = first_minimalizable(&cur) {
            trace.blow_down(&mut cur, &v).expect("checked legal");
            continue;
        }

        diagnostics.push(Diagnostic::Stuck);
        break;
    }

    Ok(Standardized {
        graph: cur,
        trace,
        diagnostics,
    })
}

/// Maximal zero runs of a cyclic weight sequence as `(start, length)` with
/// wraparound, ordered by start position.
fn cycle_zero_runs(ws: &[i64]) -> Vec<(usize, usize)> {
    let n = ws.len();
    if ws.iter().all(|&w| w == 0) {
        return vec![(0, n)];
    }
    let mut runs = Vec::new();
    let mut i = 0;
    while i < n {
        if ws[i] == 0 && ws[(i + n - 1) % n] != 0 {
            let mut len = 0;
            while ws[(i + len) % n] == 0 {
                len += 1;
            }
            runs.push((i, len));
            i += len;
        } else {
            i += 1;
        }
    }
    runs
}

// ---------------------------------------------------------------------------
// Branch decomposition
// ---------------------------------------------------------------------------

/// How a piece of the graph left after removing the non-fork branch points
/// is configured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentTag {
    /// A chain (or single vertex) with no fork.
    Linear,
    /// A cycle.
    Circular,
    /// Contains exactly one recognized fork.
    OneFork,
    /// Contains exactly two recognized forks.
    TwoForks,
    /// Anything else (three or more forks, or an unexpected shape).
    Other,
}

/// One connected component of the graph with the non-fork branch points
/// removed.
#[derive(Debug, Clone)]
pub struct Component {
    pub vertices: BTreeSet<VertexId>,
    pub tag: ComponentTag,
}

/// The branch-point structure of a minimal graph: `br` splits into the
/// recognized forks `t0` (valency-3 vertices with two bare (−2)-leaves whose
/// weight is −1 or can be made −1 by elementary moves in the third branch)
/// and the rest `t1`; `components` are the non-contractible pieces of the
/// graph with `t1` removed.
#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    pub br: BTreeSet<VertexId>,
    pub t0: BTreeSet<VertexId>,
    pub t1: BTreeSet<VertexId>,
    pub components: Vec<Component>,
}

/// Bare (−2)-leaves hanging on `v`: weight −2, valency 1, single edge.
pub(crate) fn bare_leaves(g: &DualGraph, v: &VertexId) -> Vec<VertexId> {
    g.neighbors(v)
        .into_iter()
        .filter(|(u, m)| *m == 1 && g.weight(u) == Some(-2) && g.valency(u) == 1)
        .map(|(u, _)| u)
        .collect()
}

/// Decide whether the fork `v` (valency 3, two bare (−2)-leaves) has
/// adjustable weight: −1 already, or its third branch can present a
/// 0-vertex next to `v` (each end move at such a zero then shifts `v` by
/// ±1), or `v` sits directly on a partner fork that is already at −1 while
/// `v` is ≥ −1 (inner blow-ups over the joining edge then reach −1).
fn fork_weight_adjustable(g: &DualGraph, v: &VertexId, leaves: &[VertexId]) -> bool {
    if g.weight(v) == Some(-1) {
        return true;
    }
    let third = match g
        .neighbors(v)
        .into_iter()
        .map(|(u, _)| u)
        .find(|u| u != &leaves[0] && u != &leaves[1])
    {
        Some(u) => u,
        None => return false,
    };
    // Walk the third branch through valency-2 vertices.
    let mut segment: Vec<i64> = Vec::new();
    let mut prev = v.clone();
    let mut cur = third;
    loop {
        match g.valency(&cur) {
            1 => {
                segment.push(g.weight(&cur).unwrap_or(0));
                // Pure hanging chain: a zero is presentable at the v-end
                // exactly when the chain standardizes cleanly to a form
                // with a zero in it.
                let chain = DualGraph::chain(&segment);
                return match standardize_linear(&chain) {
                    Ok(s) if s.is_clean() => !matches!(
                        linear_standard_form(&s.graph),
                        Some(LinearStandardForm::Rigid { .. }) | None
                    ),
                    _ => false,
                };
            }
            2 => {
                segment.push(g.weight(&cur).unwrap_or(0));
                let next = g
                    .neighbors(&cur)
                    .into_iter()
                    .map(|(u, _)| u)
                    .find(|u| *u != prev);
                match next {
                    Some(u) => {
                        prev = cur;
                        cur = u;
                    }
                    None => return false, // double edge dead-ends the walk
                }
            }
            _ => {
                // Hit another branch point.
                if segment.is_empty() {
                    // Direct edge onto a partner fork.
                    let partner_leaves = bare_leaves(g, &cur);
                    return g.valency(&cur) == 3
                        && partner_leaves.len() >= 2
                        && g.weight(&cur) == Some(-1)
                        && g.weight(v).is_some_and(|w| w >= -1);
                }
                // Segment between two branch points: the far branch point's
                // weight is expendable for end moves, so the segment behaves
                // like a free-ended chain.
                let chain = DualGraph::chain(&segment);
                return match standardize_linear(&chain) {
                    Ok(s) if s.is_clean() => !matches!(
                        linear_standard_form(&s.graph),
                        Some(LinearStandardForm::Rigid { .. }) | None
                    ),
                    _ => false,
                };
            }
        }
    }
}

/// Split the branch points of a minimal graph into recognized forks and the
/// rest, and collect the non-contractible components left when the rest is
/// removed.
pub fn branch_decomposition(g: &DualGraph) -> Result<BranchDecomposition, NormalFormError> {
    if let Some(vertex) = first_minimalizable(g) {
        return Err(NormalFormError::NotMinimal { vertex });
    }
    let mut br = BTreeSet::new();
    let mut t0 = BTreeSet::new();
    let mut t1 = BTreeSet::new();
    for (v, _) in g.vertices() {
        if g.valency(v) < 3 {
            continue;
        }
        br.insert(v.clone());
        let leaves = bare_leaves(g, v);
        if g.valency(v) == 3 && leaves.len() >= 2 && fork_weight_adjustable(g, v, &leaves) {
            t0.insert(v.clone());
        } else {
            t1.insert(v.clone());
        }
    }

    let mut components = Vec::new();
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for (start, _) in g.vertices() {
        if t1.contains(start) || seen.contains(start) {
            continue;
        }
        // Flood-fill the component of `start` in g ⊖ t1.
        let mut stack = vec![start.clone()];
        let mut comp: BTreeSet<VertexId> = BTreeSet::new();
        while let Some(u) = stack.pop() {
            if t1.contains(&u) || !comp.insert(u.clone()) {
                continue;
            }
            for (w, _) in g.neighbors(&u) {
                if !t1.contains(&w) && !comp.contains(&w) {
                    stack.push(w);
                }
            }
        }
        seen.extend(comp.iter().cloned());
        let sub = induced_subgraph(g, &comp);
        if is_contractible(&sub) {
            continue;
        }
        let fork_count = comp.iter().filter(|v| t0.contains(*v)).count();
        let tag = match fork_count {
            0 => match sub.shape() {
                Ok(GraphShape::SingleVertex) | Ok(GraphShape::Linear) => ComponentTag::Linear,
                Ok(GraphShape::Circular) => ComponentTag::Circular,
                _ => ComponentTag::Other,
            },
            1 => ComponentTag::OneFork,
            2 => ComponentTag::TwoForks,
            _ => ComponentTag::Other,
        };
        components.push(Component {
            vertices: comp,
            tag,
        });
    }
    components.sort_by(|a, b| a.vertices.iter().next().cmp(&b.vertices.iter().next()));

    Ok(BranchDecomposition {
        br,
        t0,
        t1,
        components,
    })
}

/// The induced subgraph on `keep` (assumed to form a connected set).
fn induced_subgraph(g: &DualGraph, keep: &BTreeSet<VertexId>) -> DualGraph {
    let vertices: Vec<(VertexId, i64)> = keep
        .iter()
        .map(|v| (v.clone(), g.weight(v).expect("member of g")))
        .collect();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (u, v, m) in g.edges() {
        if keep.contains(u) && keep.contains(v) {
            for _ in 0..m {
                edges.push((u.clone(), v.clone()));
            }
        }
    }
    DualGraph::new(vertices, edges).expect("induced subgraph of a component is valid")
}

// ---------------------------------------------------------------------------
// Fibration markers
// ---------------------------------------------------------------------------

/// A local pattern certifying a fibration on the surface the graph bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FibrationMarker {
    /// A 0-vertex of valency ≤ 1: a fiber of a line fibration.
    CFiber { anchor: VertexId },
    /// A 0-vertex with two distinct neighbors: an untwisted punctured-line
    /// fibration.
    UntwistedCstar { anchor: VertexId },
    /// A 0-vertex joined to a single neighbor by a double edge: the twisted
    /// case with a doubled section.
    TwistedA { anchor: VertexId, neighbor: VertexId },
    /// A (−1)-vertex of valency 3 carrying two bare (−2)-leaves: the twisted
    /// case realized by a fork; one marker per leaf pair.
    TwistedB {
        center: VertexId,
        leaves: (VertexId, VertexId),
    },
}

/// All fibration markers present in the graph, each anchored at its
/// participating vertices. The three 0-vertex kinds are mutually exclusive
/// per anchor (they are distinguished by valency).
pub fn fibration_markers(g: &DualGraph) -> Vec<FibrationMarker> {
    let mut out = Vec::new();
    for (v, w) in g.vertices() {
        if w == 0 {
            let valency = g.valency(v);
            let nbrs = g.neighbors(v);
            match (valency, nbrs.len()) {
                (0, _) | (1, _) => out.push(FibrationMarker::CFiber { anchor: v.clone() }),
                (2, 2) => out.push(FibrationMarker::UntwistedCstar { anchor: v.clone() }),
                (2, 1) => out.push(FibrationMarker::TwistedA {
                    anchor: v.clone(),
                    neighbor: nbrs[0].0.clone(),
                }),
                _ => {}
            }
        }
        if w == -1 && g.valency(v) == 3 {
            let leaves = bare_leaves(g, v);
            for i in 0..leaves.len() {
                for j in i + 1..leaves.len() {
                    out.push(FibrationMarker::TwistedB {
                        center: v.clone(),
                        leaves: (leaves[i].clone(), leaves[j].clone()),
                    });
                }
            }
        }
    }
    out
}
