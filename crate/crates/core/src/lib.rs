//! Exact and approximate solvers for the d-obstruction covering problem and
//! the (n-d)-node-connectivity augmentation problem it is equivalent to.
//!
//! An obstruction of order `d` in a graph is an edge-induced complete
//! bipartite subgraph `K_{i,j}` with `i + j = d`. On a graph with no
//! `K_{i,j}`, `i + j > d`, the task is to pick a minimum-cost subset of a
//! given link set that touches every obstruction. For `d = 4` this
//! generalises edge cover: obstructions are the stars of degree-3 nodes and
//! the 4-cycles ("squares").
//!
//! The crate ships:
//! - [`graph`]: multigraphs, complements, vertex connectivity, obstruction
//!   enumeration and instance validation;
//! - [`reduction`]: the augmentation <-> covering translation with cut
//!   witnesses in both directions;
//! - [`decomp`]: decomposition of a valid `d = 4` host into lonely nodes,
//!   ladders and hexagons;
//! - [`chain`]: exact covering of a single ladder/hexagon (dynamic program
//!   plus boundary sweep);
//! - [`cover`]: minimum-weight edge cover, N-edge cover, and the exact
//!   solver for instances whose components all have degree 1 or 2;
//! - [`factor`]: Petersen splits of 4-regular multigraphs;
//! - [`weighted`] / [`unweighted`]: the 3/2- and 4/3-approximation
//!   pipelines;
//! - [`oracle`]: branch-and-bound ground truth for small instances;
//! - [`gadgets`]: SAT and tree-augmentation hardness constructions used as
//!   instance factories;
//! - [`io`]: the text formats understood by the CLI.

pub mod chain;
pub mod cost;
pub mod cover;
pub mod decomp;
pub mod factor;
pub mod gadgets;
pub mod gen;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod reduction;
pub mod unweighted;
pub mod weighted;

pub use cost::{rat, Cost};
pub use graph::{
    enumerate_obstructions, is_feasible, validate_instance, CoveringInstance, Edge, LinkSolution,
    Multigraph, Obstruction,
};
