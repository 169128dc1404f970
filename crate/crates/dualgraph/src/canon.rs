//! Canonical labeling of weighted multigraphs.
//!
//! Chains and cycles — the overwhelmingly common shapes in this calculus —
//! get closed-form keys: a chain is read in whichever direction gives the
//! lexicographically smaller weight sequence, a cycle is read from the
//! rotation/reflection minimizing the sequence. Everything else goes through
//! iterated color refinement with individualization backtracking, taking the
//! minimum encoding over the leaves of the search tree. That is exact (two
//! graphs receive equal keys iff they are weight-preserving isomorphic) and
//! fast at the vertex counts this crate meets.

use std::collections::BTreeMap;

use crate::graph::{CanonicalForm, DualGraph, GraphShape, VertexId};

/// Compute the canonical form; `marked` vertices (if any) are distinguished,
/// i.e. isomorphisms must map marked vertices to marked vertices.
pub(crate) fn canonical_form(g: &DualGraph, marked: &[VertexId]) -> CanonicalForm {
    if g.is_empty() {
        return CanonicalForm {
            vertex_count: 0,
            weights: Vec::new(),
            edges: Vec::new(),
        };
    }
    if marked.is_empty() {
        match g.shape() {
            Ok(GraphShape::SingleVertex) => {
                let (_, w) = g.vertices().next().expect("single vertex present");
                return CanonicalForm {
                    vertex_count: 1,
                    weights: vec![w],
                    edges: Vec::new(),
                };
            }
            Ok(GraphShape::Linear) => {
                let (_, weights) = g.as_chain().expect("linear graph reads as a chain");
                let n = weights.len();
                let mut rev = weights.clone();
                rev.reverse();
                let best = weights.min(rev);
                let edges = (0..n - 1).map(|i| (i as u16, i as u16 + 1, 1)).collect();
                return CanonicalForm {
                    vertex_count: n,
                    weights: best,
                    edges,
                };
            }
            Ok(GraphShape::Circular) => {
                let (_, weights) = g.as_cycle().expect("circular graph reads as a cycle");
                return cycle_form(&weights);
            }
            _ => {}
        }
    }
    general_form(g, marked)
}

/// Canonical key of a cycle: the lexicographic minimum over all rotations of
/// the weight sequence and of its reversal.
fn cycle_form(weights: &[i64]) -> CanonicalForm {
    let n = weights.len();
    let mut best: Option<Vec<i64>> = None;
    let mut consider = |seq: &[i64]| {
        for start in 0..n {
            let rotated: Vec<i64> = (0..n).map(|i| seq[(start + i) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    };
    consider(weights);
    let mut rev = weights.to_vec();
    rev.reverse();
    consider(&rev);
    let edges = if n == 2 {
        vec![(0, 1, 2)]
    } else {
        let mut e: Vec<(u16, u16, u16)> = (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                (a as u16, b as u16, 1)
            })
            .collect();
        e.sort();
        e
    };
    CanonicalForm {
        vertex_count: n,
        weights: best.expect("cycle has at least one rotation"),
        edges,
    }
}

/// Exact canonical labeling by refinement + individualization.
fn general_form(g: &DualGraph, marked: &[VertexId]) -> CanonicalForm {
    let ids: Vec<VertexId> = g.vertices().map(|(id, _)| id.clone()).collect();
    let index: BTreeMap<&VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let n = ids.len();
    let weights: Vec<i64> = g.vertices().map(|(_, w)| w).collect();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (u, v, m) in g.edges() {
        let (iu, iv) = (index[u], index[v]);
        adj[iu].push((iv, m));
        adj[iv].push((iu, m));
    }

    // Initial colors: (marked?, weight, valency), rank-compressed.
    let mut init: Vec<(bool, i64, u64)> = Vec::with_capacity(n);
    for (i, id) in ids.iter().enumerate() {
        let val: u64 = adj[i].iter().map(|&(_, m)| m as u64).sum();
        init.push((marked.contains(id), weights[i], val));
    }
    let colors = rank_compress(&init);

    let mut best: Option<CanonicalForm> = None;
    search(&weights, &adj, colors, &mut best);
    best.expect("search visits at least one leaf")
}

/// Replace arbitrary orderable signatures by their rank among the distinct
/// signatures present — an isomorphism-invariant renaming.
fn rank_compress<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sig.to_vec();
    distinct.sort();
    distinct.dedup();
    sig.iter()
        .map(|s| distinct.binary_search(s).expect("signature present"))
        .collect()
}

/// One round of color refinement to a stable partition.
fn refine(adj: &[Vec<(usize, u32)>], mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let mut sigs: Vec<(usize, Vec<(usize, u32)>)> = Vec::with_capacity(colors.len());
        for (i, nbrs) in adj.iter().enumerate() {
            let mut around: Vec<(usize, u32)> = nbrs.iter().map(|&(j, m)| (colors[j], m)).collect();
            around.sort();
            sigs.push((colors[i], around));
        }
        let next = rank_compress(&sigs);
        if next == colors {
            return next;
        }
        colors = next;
    }
}

/// Individualization search: refine, then split the first non-singleton
/// color class on every candidate, keeping the minimum leaf encoding.
fn search(
    weights: &[i64],
    adj: &[Vec<(usize, u32)>],
    colors: Vec<usize>,
    best: &mut Option<CanonicalForm>,
) {
    let colors = refine(adj, colors);
    let n = colors.len();
    // Locate the first color owning more than one vertex.
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colors.iter().enumerate() {
        by_color.entry(c).or_default().push(i);
    }
    if let Some((_, cell)) = by_color.iter().find(|(_, members)| members.len() > 1) {
        for &v in cell {
            // Individualize v: give it a color just below the rest of its cell.
            let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * colors[v];
            search(weights, adj, next, best);
        }
        return;
    }
    // Discrete coloring: emit the encoding and keep the minimum.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| colors[i]);
    let mut rank = vec![0usize; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let w: Vec<i64> = order.iter().map(|&i| weights[i]).collect();
    let mut edges: Vec<(u16, u16, u16)> = Vec::new();
    for (i, nbrs) in adj.iter().enumerate() {
        for &(j, m) in nbrs {
            if i < j {
                let (a, b) = (rank[i].min(rank[j]) as u16, rank[i].max(rank[j]) as u16);
                edges.push((a, b, m as u16));
            }
        }
    }
    edges.sort();
    let candidate = CanonicalForm {
        vertex_count: n,
        weights: w,
        edges,
    };
    if best.as_ref().is_none_or(|b| candidate < *b) {
        *best = Some(candidate);
    }
}
