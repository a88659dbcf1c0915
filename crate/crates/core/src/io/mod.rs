//! Text formats: colouring files, DIMACS graphs and SVG pictures.

pub mod coloring_file;
pub mod dimacs;
pub mod svg;

pub use coloring_file::{parse_coloring, read_coloring, write_coloring, ColoringFile, FileError, ParseError};
pub use dimacs::{export_dimacs, to_dimacs};
pub use svg::render_svg;
