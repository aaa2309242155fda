//! Exact graph rubbling: reachability and solvability under pebbling and
//! strict rubbling moves, optimal and k-optimal rubbling numbers by
//! symmetry-pruned exhaustive search, and executable checks of the ladder,
//! prism and Möbius-ladder results built on them.

pub mod dyadic;
pub mod engine;
pub mod error;
pub mod graph;
pub mod ladder;
pub mod moves;
pub mod par;
pub mod reduction;
pub mod search;
pub mod theorems;

pub use dyadic::Dyadic;
pub use engine::{Engine, EngineOptions, ReachResult};
pub use error::{Result, RubbleError};
pub use graph::{cartesian_product, cycle_graph, ladder, mobius_ladder, path_graph, prism, Graph, GraphSpec, Vertex};
pub use moves::{apply_move, is_executable, Distribution, Move, MoveSequence};
pub use par::ExecMode;

/// Bumped whenever search semantics change; stale cache entries are ignored.
pub const ENGINE_VERSION: &str = concat!("rubbling-", env!("CARGO_PKG_VERSION"), "-e1");
