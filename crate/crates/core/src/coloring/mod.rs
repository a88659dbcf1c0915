//! Colourings of the grid: periodic (lattice) colourings, finite windows, and
//! the exact colourability search both rely on.

pub mod exact;
pub mod lattice;
pub mod window;

pub use exact::{color_within, Colorability, ConflictGraph, NodeLimitExceeded};
pub use lattice::{
    even_hnfs, search_lattice, search_lattice_multi, search_with_fallback, single_coset_valid,
    verify_lattice, Hnf, LatticeColoring, LatticeError, LatticeSearchReport, MultiDomainSearch,
    SearchMode,
};
pub use window::{
    exact_window_span, power_graph, verify_window, window_chromatic_number, Guard, Refusal,
    Verdict, Violation, WindowColoring, WindowSpan,
};
