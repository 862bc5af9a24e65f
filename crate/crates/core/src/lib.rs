//! Exact computation of generalized Ramsey-Turán clique densities.
//!
//! The crate works with weighted graphs over the edge alphabet {0, 1/2, 1}:
//! weight 1/2 stands for a regular pair of density about one half, weight 1
//! for a dense pair. The q-clique weight N_q (sum over q-subsets of the
//! product of induced edge weights) is computed exactly in dyadic arithmetic.
//! On top of that sit p-skeleton detection, the symmetrization that reduces
//! any p-skeleton-free graph to a profile graph, density optimization over
//! profile shapes, closed-form value tables with counterexample machinery, an
//! exhaustive small-n oracle, and finite geometric Bollobás-Erdős
//! constructions.

pub mod be;
pub mod bitset;
pub mod cliques;
pub mod dyadic;
pub mod error;
pub mod oracle;
pub mod profile;
pub mod ratio;
pub mod skeleton;
pub mod solver;
pub mod symmetrize;
pub mod wgraph;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use profile::{Profile, SizeAssignment};
pub use wgraph::{Weight, WeightedGraph};
