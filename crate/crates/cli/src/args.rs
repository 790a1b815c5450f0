use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wiener_core::enumeration::TreeFilter;
use wiener_core::families::FamilySpec;
use wiener_core::io::GraphFormat;
use wiener_core::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(
    name = "wiener",
    version,
    about = "Exact Wiener indices of iterated line graphs"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for enumeration and search (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Largest vertex or edge count allowed for any line graph built.
    #[arg(long, env = "WIENER_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Wiener index of a graph.
    Wiener(GraphInput),
    /// The k-th iterated line graph.
    Line {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        output: GraphOutput,
    },
    /// W, W_k and R_k = W_k / W up to k, with D2 and the path comparison.
    Ratio {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, default_value_t = 2)]
        k: usize,
    },
    /// Build a family member, e.g. `spider:7,7,7` or `ua:5`.
    Family {
        spec: FamilySpec,
        #[command(flatten)]
        output: GraphOutput,
    },
    /// All free trees of an order, one per isomorphism class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Exact threshold scan over a family parameter.
    Scan {
        /// i, ii, iii (balanced spiders) or ua.
        #[arg(long)]
        case: wiener_core::analysis::ScanFamily,
        #[arg(long, value_parser = parse_range, default_value = "2..30")]
        a_range: RangeInclusive<u64>,
    },
    /// Named checks; exit status 1 if any fails.
    Verify {
        #[command(subcommand)]
        bundle: VerifyBundle,
    },
    /// Exhaustive searches over free trees.
    Search {
        #[command(subcommand)]
        search: SearchCommand,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyBundle {
    /// W(L(T)) = W(T) - C(n,2) over all trees of order up to max-n.
    Buckley {
        #[arg(long, default_value_t = 14)]
        max_n: usize,
    },
    /// Spider, quipu and path closed forms against BFS.
    Lemmas {
        #[arg(long, default_value_t = 8)]
        max_a: u64,
        #[arg(long, default_value_t = 60)]
        max_n: u64,
    },
    /// Balanced spider thresholds and the 15/14 limits.
    Thm4 {
        #[arg(long, value_parser = parse_range, default_value = "2..30")]
        a_range: RangeInclusive<u64>,
    },
    /// R2(U_a) < R2(P_n) by building U_a.
    Thm5 {
        #[arg(long, default_value_t = 50)]
        a: u64,
    },
    /// Relative deviations of W(U_a) and D2(U_a) shrink across the given a.
    Deviations {
        #[arg(long, value_delimiter = ',', default_value = "20,40,60")]
        a: Vec<u64>,
    },
    /// The star uniquely minimizes R1 over trees of each order 4..=max-n.
    Thm1 {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// The order-22 worked example.
    PaperNumbers,
    /// Every bundle with its defaults.
    All,
}

#[derive(Subcommand, Debug)]
pub enum SearchCommand {
    /// Exact minimum of R2 over trees of order n, with every minimizer.
    MinR2 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
        /// Refuse orders above this instead of searching.
        #[arg(long, default_value_t = wiener_core::analysis::DEFAULT_ORDER_LIMIT)]
        order_limit: usize,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Family spec such as `path:22`, `spider:7,7,7`, `qa:5`.
    #[arg(long)]
    pub family: Option<FamilySpec>,
    /// Edge-list or graph6 file; `-` reads stdin.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    #[command(flatten)]
    pub source: GraphSource,
    /// Input format; guessed from the file extension when omitted.
    #[arg(long)]
    pub input_format: Option<GraphFormat>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphOutput {
    /// Graph encoding for text output.
    #[arg(long, default_value_t = GraphFormat::EdgeList)]
    pub output_format: GraphFormat,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FilterArgs {
    /// Only trees with maximum degree at most this.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Only trees with maximum degree at least this.
    #[arg(long)]
    pub min_max_degree: Option<usize>,
    /// Only trees with at most this many vertices of degree 3.
    #[arg(long)]
    pub max_degree3: Option<usize>,
    /// Only trees with at least this many vertices of degree 3.
    #[arg(long)]
    pub min_degree3: Option<usize>,
}

impl From<FilterArgs> for TreeFilter {
    fn from(f: FilterArgs) -> TreeFilter {
        TreeFilter {
            max_degree: f.max_degree,
            min_max_degree: f.min_max_degree,
            max_degree3: f.max_degree3,
            min_degree3: f.min_degree3,
        }
    }
}

/// `a..b` and `a..=b` are both inclusive; a bare `a` is the range `a..=a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| format!("bad bound {t:?}: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}
