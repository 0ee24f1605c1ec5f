/*!
Multiscale clustering as persistent sets.

This crate treats the output of a hierarchical clustering method not as a
single partition but as a *persistent set*: a map from scales `r >= 0` to
partitions of a fixed point set that coarsens monotonically and is constant
on finitely many half-open intervals. Dendrograms are the persistent sets
that eventually reach the single-block partition.

On top of that representation the crate provides:

* single-linkage clustering via chained `r`-closeness, plus multi-merge
  agglomerative clustering for single/complete/average linkage ([`linkage`]);
* morphism classification of maps between finite metric spaces and
  persistence-preservation checks, with an automated counterexample search
  for non-functorial schemes ([`metric`], [`persistence`], [`functorial`]);
* the minimax ultrametric attached to a space, interchangeable with its
  single-linkage dendrogram ([`ultrametric`]);
* exact (branch-and-bound) and lower-bounded Gromov-Hausdorff distances via
  correspondences, together with Hausdorff distance and covering radii in an
  ambient space ([`gh`]);
* deterministic sampling experiments measuring stability of dendrograms under
  resampling and convergence to the component space of a disconnected shape
  ([`convergence`]);
* bootstrap zig-zag clustering: cluster overlapping samples, linearize the
  induced set maps over the two-element field, and decompose the resulting
  diagram into interval summands ([`zigzag`]).

The `examples/` directory contains one runnable program per capability;
`src/bin/perset.rs` exposes the same operations as a small command-line tool.
*/

pub mod cli;
pub mod convergence;
pub mod error;
pub mod fixtures;
pub mod functorial;
pub mod gh;
pub mod io;
pub mod linkage;
pub mod metric;
pub mod persistence;
pub mod ultrametric;
pub mod zigzag;

pub use error::{Error, Result};
pub use linkage::LinkageRule;
pub use metric::{FiniteMetricSpace, MorphismClass, SetMap};
pub use persistence::{Dendrogram, Partition, PersistentSet};

/// Relative floating tolerance for symmetry, triangle and morphism checks.
pub const TOL: f64 = 1e-9;

/// Absolute tolerance for comparing and deduplicating merge heights.
pub const TOL_HEIGHT: f64 = 1e-9;

/// `a <= b` up to the relative tolerance `tol`.
pub(crate) fn approx_le(a: f64, b: f64, tol: f64) -> bool {
    a <= b + tol * a.abs().max(b.abs()).max(1.0)
}

/// `a == b` up to the relative tolerance `tol`.
pub(crate) fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
