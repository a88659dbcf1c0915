//! Distance colouring of the infinite hexagonal grid.
//!
//! - [`grid`]: coordinates, adjacency and the two distance routes.
//! - [`shell`]: rings, corners, shell sets, distance cliques and reuse sets.
//! - [`reuse`]: exhaustive checks of colour-reuse bounds and counting certificates.
//! - [`span`]: the closed-form span for even `l`, in exact rationals.
//! - [`coloring`]: periodic and finite-window colourings, exact search.
//! - [`io`]: colouring files, DIMACS export and SVG rendering.

pub mod coloring;
pub mod grid;
pub mod io;
pub mod reuse;
pub mod shell;
pub mod span;

pub use grid::{distance, distance_bfs, Handedness, Translation, Vertex};
