//! The weighted dual graph type and its basic queries.
//!
//! A [`DualGraph`] is a finite connected multigraph without loops, each
//! vertex carrying an integer weight (the self-intersection number of the
//! curve it stands for). Vertices are named by opaque string identifiers
//! ordered shortlex (length first, then bytes), so `C2 < C10` and fresh
//! vertices `E1, E2, …` sort in creation order.
//!
//! The *empty* graph is a legal value only as the terminal state of a
//! contraction; constructors reject it, and shape queries report
//! [`GraphError::EmptyGraph`] when handed one.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon;
use crate::intersection::IntersectionMatrix;

/// Errors arising from graph construction and shape queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    /// The operation needs at least one vertex.
    #[error("the empty graph has no shape")]
    EmptyGraph,
    /// Every dual graph must be connected.
    #[error("graph is disconnected: no path joins `{0}` and `{1}`")]
    Disconnected(VertexId, VertexId),
    /// Loops (an edge from a vertex to itself) never occur in a dual graph
    /// of a simple normal crossing configuration.
    #[error("loop at `{0}` rejected: dual graphs are loop-free")]
    LoopRejected(VertexId),
    /// An edge referred to a vertex that was never declared.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    /// The same vertex name was declared twice.
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(VertexId),
}

/// An opaque, stable vertex identifier.
///
/// Ordering is shortlex — shorter names sort first, equal lengths compare
/// bytewise — which keeps numbered families like `C1..C12` in numeric order
/// without padding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    /// Wrap a name as a vertex identifier.
    pub fn new(name: impl Into<String>) -> Self {
        VertexId(name.into())
    }

    /// The underlying name.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Ord for VertexId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), self.0.as_bytes()).cmp(&(other.0.len(), other.0.as_bytes()))
    }
}

impl PartialOrd for VertexId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

/// The coarse shape of a connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphShape {
    /// Exactly one vertex, no edges.
    SingleVertex,
    /// A path on two or more vertices (a tree of maximal valency two).
    Linear,
    /// Every vertex has valency exactly two: a cycle, including the
    /// two-vertex cycle formed by a double edge.
    Circular,
    /// Some vertex has valency three or more.
    Branched,
}

impl std::fmt::Display for GraphShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GraphShape::SingleVertex => "single-vertex",
            GraphShape::Linear => "linear",
            GraphShape::Circular => "circular",
            GraphShape::Branched => "branched",
        })
    }
}

/// A total-order key identifying a graph up to weight-preserving isomorphism.
///
/// Two graphs get equal canonical forms exactly when some bijection of
/// their vertices preserves weights and edge multiplicities. The key is a
/// vertex count, a weight vector, and an edge list, all under a canonical
/// vertex ordering chosen by the labeling algorithm in [`canonicalize`].
///
/// [`canonicalize`]: DualGraph::canonicalize
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// Number of vertices.
    pub vertex_count: usize,
    /// Vertex weights in canonical order.
    pub weights: Vec<i64>,
    /// Edges as `(i, j, multiplicity)` with `i < j` indices into `weights`,
    /// sorted.
    pub edges: Vec<(u16, u16, u16)>,
}

/// A finite connected loop-free multigraph with integer vertex weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    /// Weight of each vertex.
    vertices: BTreeMap<VertexId, i64>,
    /// Edge multiset: normalized key `(min, max)` mapping to multiplicity ≥ 1.
    edges: BTreeMap<(VertexId, VertexId), u32>,
}

impl DualGraph {
    /// Build a graph from vertex weights and an edge multiset.
    ///
    /// Rejects loops, references to undeclared vertices, and disconnected
    /// inputs. The empty graph is rejected here; it exists only as the
    /// result of contracting a single-vertex graph.
    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, i64)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut vmap = BTreeMap::new();
        for (id, w) in vertices {
            if vmap.insert(id.clone(), w).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
        }
        if vmap.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut emap: BTreeMap<(VertexId, VertexId), u32> = BTreeMap::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::LoopRejected(u));
            }
            if !vmap.contains_key(&u) {
                return Err(GraphError::UnknownVertex(u));
            }
            if !vmap.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
            let key = if u <= v { (u, v) } else { (v, u) };
            *emap.entry(key).or_insert(0) += 1;
        }
        let g = DualGraph {
            vertices: vmap,
            edges: emap,
        };
        g.check_connected()?;
        Ok(g)
    }

    /// A path `C1 — C2 — … — Cn` with the given weights.
    ///
    /// Panics on an empty weight list; use [`DualGraph::new`] for full control.
    pub fn chain(weights: &[i64]) -> Self {
        assert!(!weights.is_empty(), "a chain needs at least one vertex");
        let ids: Vec<VertexId> = (1..=weights.len())
            .map(|i| VertexId::new(format!("C{i}")))
            .collect();
        let vertices = ids.iter().cloned().zip(weights.iter().copied());
        let edges = ids.windows(2).map(|w| (w[0].clone(), w[1].clone()));
        DualGraph::new(vertices, edges).expect("a chain is always a valid graph")
    }

    /// A cycle `C1 — C2 — … — Cn — C1` with the given weights.
    ///
    /// Two weights produce the double-edge cycle on two vertices. Panics on
    /// fewer than two weights (a one-vertex cycle would be a loop).
    pub fn cycle(weights: &[i64]) -> Self {
        assert!(weights.len() >= 2, "a cycle needs at least two vertices");
        let ids: Vec<VertexId> = (1..=weights.len())
            .map(|i| VertexId::new(format!("C{i}")))
            .collect();
        let vertices = ids.iter().cloned().zip(weights.iter().copied());
        let mut edges: Vec<(VertexId, VertexId)> =
            ids.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        edges.push((ids[ids.len() - 1].clone(), ids[0].clone()));
        DualGraph::new(vertices, edges).expect("a cycle is always a valid graph")
    }

    /// The empty graph: the terminal state of a full contraction.
    ///
    /// Only the contraction machinery should produce this; most queries
    /// report [`GraphError::EmptyGraph`] when handed it.
    pub fn empty() -> Self {
        DualGraph {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// True when the graph has no vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().map(|&m| m as usize).sum()
    }

    /// Iterate over `(id, weight)` pairs in id order.
    pub fn vertices(&self) -> impl Iterator<Item = (&VertexId, i64)> {
        self.vertices.iter().map(|(id, &w)| (id, w))
    }

    /// Iterate over distinct edges as `(u, v, multiplicity)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (&VertexId, &VertexId, u32)> {
        self.edges.iter().map(|((u, v), &m)| (u, v, m))
    }

    /// The weight of `v`, if present.
    pub fn weight(&self, v: &VertexId) -> Option<i64> {
        self.vertices.get(v).copied()
    }

    /// True if `v` is a vertex of this graph.
    pub fn contains(&self, v: &VertexId) -> bool {
        self.vertices.contains_key(v)
    }

    /// Multiplicity of the edge between `u` and `v` (0 if absent).
    pub fn edge_multiplicity(&self, u: &VertexId, v: &VertexId) -> u32 {
        if u == v {
            return 0;
        }
        let key = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        self.edges.get(&key).copied().unwrap_or(0)
    }

    /// The valency of `v`: incident edge ends counted with multiplicity,
    /// so a double edge contributes two.
    pub fn valency(&self, v: &VertexId) -> u32 {
        self.edges
            .iter()
            .map(|((a, b), &m)| if a == v || b == v { m } else { 0 })
            .sum()
    }

    /// Distinct neighbors of `v` with the multiplicity of each connection,
    /// in id order.
    pub fn neighbors(&self, v: &VertexId) -> Vec<(VertexId, u32)> {
        let mut out = Vec::new();
        for ((a, b), &m) in &self.edges {
            if a == v {
                out.push((b.clone(), m));
            } else if b == v {
                out.push((a.clone(), m));
            }
        }
        out.sort();
        out
    }

    /// The coarse shape of the graph.
    ///
    /// Circular means *every* vertex has valency exactly two (the two-vertex
    /// double-edge cycle included); Linear is a path on ≥ 2 vertices;
    /// Branched has a vertex of valency ≥ 3.
    pub fn shape(&self) -> Result<GraphShape, GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        if self.vertices.len() == 1 {
            return Ok(GraphShape::SingleVertex);
        }
        let mut max_val = 0;
        let mut all_two = true;
        for id in self.vertices.keys() {
            let val = self.valency(id);
            max_val = max_val.max(val);
            if val != 2 {
                all_two = false;
            }
        }
        if max_val >= 3 {
            Ok(GraphShape::Branched)
        } else if all_two {
            Ok(GraphShape::Circular)
        } else {
            Ok(GraphShape::Linear)
        }
    }

    /// The canonical form of this graph: equal forms ⇔ isomorphic graphs
    /// (weights and multiplicities preserved).
    ///
    /// Chains and cycles use closed-form keys (reversal- respectively
    /// rotation/reflection-minimal weight reading); general graphs use
    /// color refinement with backtracking, which is exact at the sizes this
    /// calculus meets (well under a hundred vertices).
    pub fn canonicalize(&self) -> CanonicalForm {
        canon::canonical_form(self, &[])
    }

    /// Canonical form with distinguished vertices: isomorphisms must fix the
    /// marked set (setwise). Used to memoize searches that track a kept
    /// vertex.
    pub fn canonicalize_marked(&self, marked: &[VertexId]) -> CanonicalForm {
        canon::canonical_form(self, marked)
    }

    /// The intersection matrix under the deterministic (sorted) vertex
    /// ordering: diagonal = weights, off-diagonal = edge multiplicities.
    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let ordering: Vec<VertexId> = self.vertices.keys().cloned().collect();
        self.intersection_matrix_with(&ordering)
            .expect("sorted ordering covers every vertex")
    }

    /// The intersection matrix under a caller-supplied vertex ordering,
    /// which must list every vertex exactly once.
    pub fn intersection_matrix_with(
        &self,
        ordering: &[VertexId],
    ) -> Result<IntersectionMatrix, GraphError> {
        let distinct: BTreeSet<&VertexId> = ordering.iter().collect();
        if distinct.len() != ordering.len() || distinct.len() != self.vertices.len() {
            // Find a concrete offender for the error message.
            for id in ordering {
                if !self.contains(id) {
                    return Err(GraphError::UnknownVertex(id.clone()));
                }
            }
            for id in self.vertices.keys() {
                if !distinct.contains(id) {
                    return Err(GraphError::UnknownVertex(id.clone()));
                }
            }
            // Duplicates in the ordering.
            let mut seen = BTreeSet::new();
            for id in ordering {
                if !seen.insert(id) {
                    return Err(GraphError::DuplicateVertex(id.clone()));
                }
            }
            unreachable!("some ordering defect must have been reported");
        }
        for id in ordering {
            if !self.contains(id) {
                return Err(GraphError::UnknownVertex(id.clone()));
            }
        }
        let n = ordering.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, u) in ordering.iter().enumerate() {
            entries[i][i] = self.vertices[u];
            for (j, v) in ordering.iter().enumerate().skip(i + 1) {
                let m = self.edge_multiplicity(u, v) as i64;
                entries[i][j] = m;
                entries[j][i] = m;
            }
        }
        Ok(IntersectionMatrix::new(ordering.to_vec(), entries))
    }

    /// If the graph is a single vertex or a path, the vertex ids in path
    /// order together with their weights. Of the two orientations this
    /// returns the one whose weight sequence is lexicographically greater
    /// (ties broken by smaller end vertex id), so zero blocks lead:
    /// `[[0, 0, -5]]`, never `[[-5, 0, 0]]`.
    pub fn as_chain(&self) -> Option<(Vec<VertexId>, Vec<i64>)> {
        match self.shape() {
            Ok(GraphShape::SingleVertex) => {
                let (id, w) = self.vertices.iter().next().map(|(i, &w)| (i.clone(), w))?;
                Some((vec![id], vec![w]))
            }
            Ok(GraphShape::Linear) => {
                let ends: Vec<VertexId> = self
                    .vertices
                    .keys()
                    .filter(|v| self.valency(v) == 1)
                    .cloned()
                    .collect();
                debug_assert_eq!(ends.len(), 2, "a path has exactly two ends");
                let walk = |start: &VertexId| -> (Vec<VertexId>, Vec<i64>) {
                    let mut order = vec![start.clone()];
                    let mut prev: Option<VertexId> = None;
                    let mut cur = start.clone();
                    loop {
                        let next = self
                            .neighbors(&cur)
                            .into_iter()
                            .map(|(n, _)| n)
                            .find(|n| Some(n) != prev.as_ref());
                        match next {
                            Some(n) => {
                                order.push(n.clone());
                                prev = Some(cur);
                                cur = n;
                            }
                            None => break,
                        }
                    }
                    let weights = order.iter().map(|v| self.vertices[v]).collect();
                    (order, weights)
                };
                let a = walk(&ends[0]);
                let b = walk(&ends[1]);
                Some(if a.1 > b.1 || (a.1 == b.1 && a.0[0] <= b.0[0]) {
                    a
                } else {
                    b
                })
            }
            _ => None,
        }
    }

    /// If the graph is a cycle, the vertex ids in cyclic order starting at
    /// the smallest id, walking toward its smaller neighbor, with weights.
    pub fn as_cycle(&self) -> Option<(Vec<VertexId>, Vec<i64>)> {
        if self.shape() != Ok(GraphShape::Circular) {
            return None;
        }
        let start = self.vertices.keys().next()?.clone();
        if self.vertices.len() == 2 {
            let other = self.vertices.keys().nth(1)?.clone();
            let weights = vec![self.vertices[&start], self.vertices[&other]];
            return Some((vec![start, other], weights));
        }
        let mut order = vec![start.clone()];
        let first = self.neighbors(&start).into_iter().map(|(n, _)| n).min()?;
        let mut prev = start.clone();
        let mut cur = first;
        while cur != start {
            order.push(cur.clone());
            let next = self
                .neighbors(&cur)
                .into_iter()
                .map(|(n, _)| n)
                .find(|n| *n != prev)
                .expect("cycle vertices have two distinct neighbors");
            prev = cur;
            cur = next;
        }
        let weights = order.iter().map(|v| self.vertices[v]).collect();
        Some((order, weights))
    }

    /// Like [`as_cycle`](Self::as_cycle), but rotated and possibly reflected
    /// so the weight sequence is lexicographically greatest (ties broken by
    /// the id sequence): zero blocks lead, `((0, 0, -2, -3))` style.
    pub fn as_cycle_reading(&self) -> Option<(Vec<VertexId>, Vec<i64>)> {
        let (ids, weights) = self.as_cycle()?;
        let n = ids.len();
        let mut best: Option<(Vec<i64>, Vec<VertexId>)> = None;
        for reflect in [false, true] {
            let (ids_dir, w_dir): (Vec<VertexId>, Vec<i64>) = if reflect {
                (
                    ids.iter().rev().cloned().collect(),
                    weights.iter().rev().copied().collect(),
                )
            } else {
                (ids.clone(), weights.clone())
            };
            for shift in 0..n {
                let w: Vec<i64> = (0..n).map(|i| w_dir[(i + shift) % n]).collect();
                let v: Vec<VertexId> = (0..n).map(|i| ids_dir[(i + shift) % n].clone()).collect();
                let better = match &best {
                    None => true,
                    Some((bw, bv)) => w > *bw || (w == *bw && v < *bv),
                };
                if better {
                    best = Some((w, v));
                }
            }
        }
        best.map(|(w, v)| (v, w))
    }

    /// Apply a renaming to every vertex. The map must be a bijection on the
    /// vertex set (checked); weights and edges follow the renaming.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Self, GraphError> {
        let rename = |v: &VertexId| -> Result<VertexId, GraphError> {
            map.get(v)
                .cloned()
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
        };
        let mut vertices = Vec::new();
        for (id, &w) in &self.vertices {
            vertices.push((rename(id)?, w));
        }
        let mut edges = Vec::new();
        for ((u, v), &m) in &self.edges {
            for _ in 0..m {
                edges.push((rename(u)?, rename(v)?));
            }
        }
        DualGraph::new(vertices, edges)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let start = match self.vertices.keys().next() {
            Some(v) => v.clone(),
            None => return Ok(()),
        };
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if !seen.insert(v.clone()) {
                continue;
            }
            for (n, _) in self.neighbors(&v) {
                if !seen.contains(&n) {
                    queue.push_back(n);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            let outside = self
                .vertices
                .keys()
                .find(|v| !seen.contains(v))
                .expect("some vertex is unreached");
            let inside = seen.iter().next().expect("bfs visited the start");
            return Err(GraphError::Disconnected(inside.clone(), outside.clone()));
        }
        Ok(())
    }

    /// Internal: mutable access for the move layer, which maintains the
    /// invariants itself (and may produce the empty graph).
    pub(crate) fn vertices_mut(&mut self) -> &mut BTreeMap<VertexId, i64> {
        &mut self.vertices
    }

    /// Internal: add one copy of an edge (used by moves).
    pub(crate) fn add_edge(&mut self, u: &VertexId, v: &VertexId) {
        debug_assert_ne!(u, v, "moves never create loops");
        let key = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        *self.edges.entry(key).or_insert(0) += 1;
    }

    /// Internal: remove one copy of an edge; true if an edge was present.
    pub(crate) fn remove_edge(&mut self, u: &VertexId, v: &VertexId) -> bool {
        let key = if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        };
        match self.edges.get_mut(&key) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&key);
                true
            }
            None => false,
        }
    }
}

impl fmt::Display for DualGraph {
    /// Compact human-readable rendering: `[[w1, …, wn]]` for chains,
    /// `((w1, …, wn))` for cycles, and an explicit vertex/edge listing
    /// otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        if let Some((_, weights)) = self.as_chain() {
            let inner: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
            return write!(f, "[[{}]]", inner.join(", "));
        }
        if let Some((_, weights)) = self.as_cycle_reading() {
            let inner: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
            return write!(f, "(({}))", inner.join(", "));
        }
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|(id, w)| format!("{id}: {w}"))
            .collect();
        let mut edges: Vec<String> = Vec::new();
        for ((u, v), &m) in &self.edges {
            for _ in 0..m {
                edges.push(format!("{u}--{v}"));
            }
        }
        write!(f, "{{ {} | {} }}", verts.join("  "), edges.join("  "))
    }
}
