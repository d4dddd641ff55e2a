use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "rb-renorm", version, about = "Exact Rota-Baxter renormalization and graph-hypersurface tools")]
pub struct Cli {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect Feynman graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Coproduct, antipode and axiom checks in the Hopf algebra of graphs.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Birkhoff factorization and Atkinson solutions of characters.
    #[command(subcommand)]
    Birkhoff(BirkhoffCmd),
    /// Graph polynomials and the map into matrix space.
    #[command(subcommand)]
    Symanzik(SymanzikCmd),
    /// Grothendieck classes in Z[L].
    #[command(subcommand)]
    Motive(MotiveCmd),
    /// Rota-Baxter operators on the provided algebras.
    #[command(subcommand)]
    Rb(RbCmd),
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Loop number, connectivity and superficial degree.
    Info {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: i64,
    },
    /// Divergent 1PI subgraphs.
    Divergent {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: i64,
        /// Keep only subgraphs whose components have even edge counts.
        #[arg(long)]
        even: bool,
    },
    /// Spanning trees as lists of edge ids.
    Trees { file: PathBuf },
    /// Print a built-in graph as JSON, or list the built-in names.
    Catalog { name: Option<String> },
}

/// Which graph to act on and how the generator registry is set up.
#[derive(Args, Debug, Clone)]
pub struct RegistryArgs {
    /// Extra graph files to register; the file stem is the generator name
    /// unless the graph is isomorphic to one already registered.
    #[arg(long = "graph", value_name = "FILE")]
    pub graphs: Vec<PathBuf>,
    /// Do not preload the built-in generator library.
    #[arg(long)]
    pub no_library: bool,
    #[arg(long, default_value_t = 4)]
    pub dim: i64,
    /// Restrict the Hopf algebra to even edge counts.
    #[arg(long)]
    pub even: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[command(flatten)]
    pub registry: RegistryArgs,
    /// Generator to act on; defaults to the last `--graph`.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum HopfCmd {
    Coproduct {
        #[command(flatten)]
        target: Target,
        /// Drop the primitive terms `Γ⊗1 + 1⊗Γ`.
        #[arg(long)]
        reduced: bool,
    },
    Antipode {
        #[command(flatten)]
        target: Target,
    },
    /// Coassociativity, counit and antipode identities on one generator.
    Check {
        #[command(flatten)]
        target: Target,
    },
    /// Registered generators with their graphs.
    Library {
        #[command(flatten)]
        registry: RegistryArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum BirkhoffCmd {
    /// `φ₋` and `φ₊` on generators.
    Factorize {
        character: PathBuf,
        #[command(flatten)]
        registry: RegistryArgs,
        /// Generators to factorize; defaults to all with assigned values.
        #[arg(long = "name")]
        names: Vec<String>,
        /// Check `φ = (φ₋∘S)⋆φ₊` and report the defect.
        #[arg(long)]
        verify: bool,
        /// Also compute `φ₋` by the non-recursive formula.
        #[arg(long)]
        nonrecursive: bool,
    },
    /// Solve the Atkinson equations through a degree cutoff.
    Atkinson {
        character: PathBuf,
        #[command(flatten)]
        registry: RegistryArgs,
        /// Truncation degree; defaults to RB_RENORM_DEGREE_CUTOFF or 4.
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SymanzikCmd {
    Psi { file: PathBuf },
    Matrix { file: PathBuf },
    Second { file: PathBuf },
    Upsilon { file: PathBuf },
    Embedding { file: PathBuf },
    Eta {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: i64,
    },
    /// Everything above in one report.
    All {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        dim: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum MotiveCmd {
    Projective { n: i64 },
    Gl { l: i64 },
    Grass { d: i64, n: i64 },
    /// Characteristic polynomial and projective class of an arrangement file.
    Arrangement { file: PathBuf },
    Sigma { l: i64, g: i64 },
    #[command(name = "pole-bound")]
    PoleBound {
        n: i64,
        l: i64,
        #[arg(name = "D")]
        dim: i64,
    },
    /// Blow up a class along centres listed as `[{"center": "1", "codim": 2}, ...]`.
    Blowup { class: String, steps: PathBuf },
    /// `[ℙ^{ℓ²}]` blown up along strata `[{"base", "fiber", "codim"}, ...]`.
    Kausz { l: i64, strata: Option<PathBuf> },
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Algebra descriptor file; overrides the flags below.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long, default_value = "laurent_ms")]
    pub kind: String,
    /// Number of ambient coordinates `x1..xN`.
    #[arg(long, default_value_t = 0)]
    pub ambient: usize,
    #[arg(long)]
    pub divisors: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum RbCmd {
    /// Rota-Baxter identity on random pairs.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
    },
    /// `T(x)` and `(1-T)(x)` for an element file.
    Polar {
        #[command(flatten)]
        algebra: AlgebraArgs,
        element: PathBuf,
    },
    /// Iterated residue of a log form, first index first.
    Residue {
        #[command(flatten)]
        algebra: AlgebraArgs,
        element: PathBuf,
        /// 0-based divisor index; repeat for an iterated residue.
        #[arg(long = "index", required = true)]
        indices: Vec<usize>,
    },
}
