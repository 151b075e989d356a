//! Command-line grammar. Flag values that name algorithms, methods or
//! orders stay strings here and are parsed in `exec`, so every rejection
//! goes through the same usage-error path.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "polyhull",
    version,
    about = "Exact polyhedral geometry: hulls, lattice points, integer hulls"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Write a generated instance as a .poly file
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Irredundant inequality description (facets) of the input
    Hull {
        /// Input .poly file; `-` or absent reads stdin
        input: Option<PathBuf>,
        /// Conversion algorithm: dd or bb
        #[arg(long, default_value = "dd")]
        algo: String,
        /// Insertion order for bb: given, lex, vertices-first, random:<seed>
        #[arg(long, default_value = "given")]
        order: String,
        /// Output file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Irredundant generator description (vertices, rays, lineality)
    Vertices {
        input: Option<PathBuf>,
        /// Conversion algorithm: dd or bb
        #[arg(long, default_value = "dd")]
        algo: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice points of the input, written as a V .poly file
    Points {
        input: Option<PathBuf>,
        /// Enumeration method: bbox, projection, hilbert or zero-one
        #[arg(long, default_value = "projection")]
        method: String,
        /// Abort once this many points have been found
        #[arg(long)]
        limit_points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of lattice points of the input
    Count {
        input: Option<PathBuf>,
        /// Enumeration method: bbox, projection, hilbert or zero-one
        #[arg(long, default_value = "projection")]
        method: String,
        #[arg(long)]
        limit_points: Option<usize>,
    },
    /// Convex hull of the lattice points of the input
    IntegerHull {
        input: Option<PathBuf>,
        /// Which description to write: v (vertices) or h (facets)
        #[arg(long, default_value = "v")]
        rep: String,
        #[arg(long)]
        limit_points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimize an affine objective over the input; prints the status, the
    /// optimal value and an optimal vertex
    Lp {
        input: Option<PathBuf>,
        /// Comma-separated scalars c0,c1,..,cd for c0 + c.x (or d entries,
        /// read as coefficients with constant 0)
        #[arg(long)]
        objective: String,
        /// Maximize (the default)
        #[arg(long)]
        max: bool,
        /// Minimize
        #[arg(long)]
        min: bool,
    },
    /// Exact volume of a bounded input
    Volume { input: Option<PathBuf> },
    /// Run a benchmark suite and write its CSV
    Bench {
        /// One of: cut, knapsack-hull, knapsack-count, voronoi, rbox, matching
        suite: String,
        /// Repetitions per instance; randomized suites use seed+rep per run
        #[arg(long, default_value_t = 1)]
        reps: u32,
        /// Per-instance wall-clock cap; overruns are recorded as `timeout`
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// Base seed for the randomized suites
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Leave the seconds column empty (byte-reproducible output)
        #[arg(long)]
        no_time: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one benchmark instance and print metric, value pairs (internal)
    #[command(hide = true)]
    BenchOne {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
        #[arg(long)]
        operation: String,
        #[arg(long)]
        algorithm: String,
        #[arg(long, default_value = "")]
        order: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
pub enum GenFamily {
    /// Knapsack simplex with Fibonacci-like weights in dimension d, bound b
    KnapsackFib {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut polytope of a graph: Gk:<k>, P:<n>, C:<n> or K:<n>
    Cut {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parametrically perturbed cube; --t sym (default) for symbolic t,
    /// or any rational like 1/4
    KleeMinty {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "sym")]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lifted Voronoi polyhedron of m random sites in [-1,1]^(d-1)
    Voronoi {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// n lattice points drawn uniformly from [0,5]^d
    Rbox {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fractional matching polytope of the complete graph K_n
    Matching {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simplex over pairwise coprime a,b,c whose only lattice points are
    /// its six vertices
    HardSimplex {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
