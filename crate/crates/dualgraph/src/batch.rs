//! Batch classification over collections of graphs.
//!
//! Classification of one graph is pure and independent of any other, so a
//! batch is embarrassingly parallel. With the `parallel` feature (on by
//! default) [`classify_all`] fans out over a rayon pool; without it, it
//! falls back to the sequential path. [`classify_all_seq`] is always
//! available as the baseline the benchmark suite compares against.

use crate::classify::{classify, Verdict};
use crate::graph::{DualGraph, GraphError};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Classify every graph, preserving input order in the results.
pub fn classify_all(graphs: &[DualGraph]) -> Vec<Result<Verdict, GraphError>> {
    #[cfg(feature = "parallel")]
    {
        graphs.par_iter().map(classify).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        classify_all_seq(graphs)
    }
}

/// Sequential batch classification, available regardless of features.
pub fn classify_all_seq(graphs: &[DualGraph]) -> Vec<Result<Verdict, GraphError>> {
    graphs.iter().map(classify).collect()
}
