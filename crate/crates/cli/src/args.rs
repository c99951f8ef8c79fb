use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "splitclust",
    version,
    about = "Overlapping clustering of correlation graphs by vertex splitting",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Print a single JSON object instead of the plain output format.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial-time clustering of cost at most 7x optimal.
    Approx {
        graph: String,
        /// Report the cost of every clique guess on stderr.
        #[arg(long)]
        guess_all: bool,
    },
    /// Optimal clustering by exhaustive search.
    Exact {
        graph: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Whether a clustering of cost at most the budget exists.
    Decide {
        graph: String,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Lower bound from a maximal bad star forest.
    Lb { graph: String },
    /// Reduce to an equivalent instance whose size depends on the budget only.
    Kernel {
        graph: String,
        #[arg(long)]
        budget: usize,
        /// Where to write the transcript needed by `lift`.
        #[arg(long)]
        transcript: Option<String>,
    },
    /// Map a clustering of a kernel back to the original graph.
    Lift {
        clustering: String,
        transcript: String,
    },
    /// Check a clustering against a graph.
    Verify { graph: String, clustering: String },
    /// Conversions between clustering and multicut with vertex splitting.
    Reduce {
        #[command(subcommand)]
        command: ReduceCommand,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
    /// Summary numbers of a graph.
    Stats { graph: String },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Largest cost searched.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Search nodes visited before giving up.
    #[arg(long)]
    pub node_limit: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Blue pairs become edges, red pairs terminals.
    CcvsToMcvs {
        graph: String,
        #[arg(long, default_value_t = 0)]
        budget: usize,
    },
    /// Edges become blue pairs, terminals red pairs.
    McvsToCcvs { instance: String },
    /// Translate a clustering into a splitting solution.
    ClusteringToMcsol { graph: String, clustering: String },
    /// Translate a splitting solution into a clustering.
    McsolToClustering { instance: String, solution: String },
    /// Check a splitting solution against an instance.
    Check { instance: String, solution: String },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Seeded random graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p_blue: f64,
        /// Defaults to `1 - p_blue` for complete graphs and 0 otherwise.
        #[arg(long)]
        p_red: Option<f64>,
        /// Allow neutral pairs.
        #[arg(long)]
        incomplete: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Vertex cover gadget over the blue pairs of a graph.
    VcGadget {
        graph: String,
        #[arg(long)]
        budget: usize,
    },
    /// Coloring gadget over the blue pairs of a graph.
    ColoringGadget {
        graph: String,
        #[arg(long)]
        colors: usize,
    },
}
