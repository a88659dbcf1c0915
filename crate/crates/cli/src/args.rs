use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hexspan::Vertex;

#[derive(Debug, Parser)]
#[command(name = "hexspan", version, about = "Distance colouring of the infinite hexagonal grid")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_vertex(s: &str) -> Result<Vertex, String> {
    let (i, j) = s.split_once(',').ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("`{x}` is not an integer"));
    Ok(Vertex::new(parse(i)?, parse(j)?))
}

#[derive(Debug, Args)]
pub struct Center {
    /// Centre vertex as `i,j`.
    #[arg(long, default_value = "0,0", value_parser = parse_vertex, allow_hyphen_values = true)]
    pub center: Vertex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph distance between two vertices.
    #[command(allow_negative_numbers = true)]
    Distance {
        i1: i64,
        j1: i64,
        i2: i64,
        j2: i64,
        /// Also compute the distance by breadth-first search.
        #[arg(long)]
        bfs: bool,
    },
    /// The ring of vertices at distance exactly `k`, with groups and corners.
    Ring {
        k: u64,
        #[command(flatten)]
        center: Center,
    },
    /// The radius-`p` ball and its diameter.
    Clique {
        p: u64,
        #[command(flatten)]
        center: Center,
    },
    /// Non-corners of ring `k` at distance `2h` from a corner.
    Shell {
        k: u64,
        h: u64,
        #[command(flatten)]
        center: Center,
    },
    /// Closed-form span for even `l >= 8`.
    Span { l: u64 },
    /// Exhaustive reuse-bound checks and counting certificates.
    CheckObservations {
        /// Values of p to check (repeatable); default 4 through 12.
        #[arg(long = "p")]
        p: Vec<u64>,
    },
    /// Search for a periodic colouring by sublattice enumeration.
    SearchLattice {
        l: u64,
        #[arg(long)]
        max_index: u64,
        /// Also search multi-cell fundamental domains if single cosets fall short.
        #[arg(long)]
        fallback: bool,
        /// Target colour count; defaults to the closed-form span for even l >= 8.
        #[arg(long)]
        budget: Option<u64>,
        /// Branch-and-bound node limit per candidate lattice.
        #[arg(long, default_value_t = hexspan::coloring::lattice::DEFAULT_LATTICE_NODE_LIMIT)]
        node_limit: u64,
        /// Write the colouring in `hexcolor v1` format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a `hexcolor v1` file for same-colour pairs within distance l.
    VerifyColoring { file: PathBuf },
    /// Exact colourability of the radius window's power graph.
    ExactWindow {
        l: u64,
        #[arg(long)]
        radius: u64,
        /// Colour budget; if absent, the smallest feasible budget is reported.
        #[arg(long)]
        budget: Option<usize>,
        /// Maximum window size in vertices.
        #[arg(long, default_value_t = hexspan::coloring::window::DEFAULT_GUARD)]
        guard: usize,
        #[arg(long, default_value_t = hexspan::coloring::window::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Power graph of a window in DIMACS edge format.
    ExportDimacs {
        l: u64,
        #[arg(long)]
        radius: u64,
        #[arg(long, default_value_t = hexspan::coloring::window::DEFAULT_GUARD)]
        guard: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a `hexcolor v1` file as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
