//! `connmat`: enumerate partitions, build connectivity matrices, compute their
//! determinants and reliability polynomials, and check the determinant formula.
//!
//! Exit codes: 0 success, 2 bad arguments or input, 3 size cap refused,
//! 4 a verification check failed, 1 internal error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use connmat::algebra::{connectivity_number, pi};
use connmat::conmatrix::{
    build_connectivity_matrix, build_elimination_matrix, determinant_alpha, determinant_direct,
    formula_value, triangularize, verify_theorem, DetMethod, MatrixExport, VerifyOptions,
};
use connmat::reliability::{
    complete_graph, mgr, quotient_graph, reliability_polynomial, Multigraph, ReliabilityOptions,
};
use connmat::{coherent_order, CoherentOrder, Error, Integer, Limits, Partition};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "connmat", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "CONNMAT_FORMAT")]
    format: Format,
    /// Largest ground set for enumeration and orderings.
    #[arg(long, global = true, env = "CONNMAT_MAX_N")]
    max_n: Option<usize>,
    /// Largest ground set for the Bareiss determinant.
    #[arg(long, global = true, env = "CONNMAT_MAX_DIRECT_N")]
    max_direct_n: Option<usize>,
    /// Edge cap for reliability polynomials.
    #[arg(long, global = true, env = "CONNMAT_MAX_EDGES")]
    max_edges: Option<usize>,
    /// Worker threads for matrix and connectivity-number work (default: all cores).
    #[arg(long, global = true, env = "CONNMAT_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Alpha,
    Direct,
    Both,
}

impl From<Method> for DetMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Alpha => DetMethod::Alpha,
            Method::Direct => DetMethod::Direct,
            Method::Both => DetMethod::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    /// The 0/1 connectivity matrix `A`.
    Connectivity,
    /// The matrix `B` of the elimination operator.
    Elimination,
    /// `Bᵗ A`.
    Triangular,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List Part_n in coherent order with block counts and class labels.
    Partitions {
        n: usize,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Print the connectivity matrix (or B, or BᵗA).
    Matrix {
        n: usize,
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MatrixKind::Connectivity)]
        kind: MatrixKind,
    },
    /// Expand pi(A) in the partition basis, e.g. `pi "1 2|3"`.
    Pi { partition: String },
    /// Determinant of the connectivity matrix.
    Det {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// All-terminal reliability polynomial and its leading term.
    Reliability(ReliabilityArgs),
    /// Check |det A| = prod (m_A - 1)! and the triangularization.
    Verify {
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long)]
        order: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["complete", "quotient", "graph"])))]
struct ReliabilityArgs {
    /// The complete graph K_m.
    #[arg(long)]
    complete: Option<usize>,
    /// The quotient K_n^A; needs --partition.
    #[arg(long, requires = "partition")]
    quotient: Option<usize>,
    #[arg(long)]
    partition: Option<String>,
    /// A graph file: node count, then `u v k` lines.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Cache deletion–contraction subresults.
    #[arg(long)]
    memoize: bool,
}

enum Failure {
    Lib(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(4),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeLimit { .. } => 3,
                Error::Domain(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) => 2,
                Error::Consistency(_) => 1,
            })
        }
    }
}

fn limits(global: &GlobalArgs) -> Limits {
    let mut limits = Limits::default();
    if let Some(v) = global.max_n {
        limits.max_n = v;
        limits.max_alpha_n = limits.max_alpha_n.min(v);
    }
    if let Some(v) = global.max_direct_n {
        limits.max_direct_n = v;
    }
    if let Some(v) = global.max_edges {
        limits.max_reliability_edges = v;
    }
    limits
}

fn cap(what: &'static str, value: usize, limit: usize) -> Result<(), Error> {
    if value > limit {
        return Err(Error::SizeLimit { what, value, limit });
    }
    Ok(())
}

fn load_order(n: usize, path: Option<&Path>, limits: &Limits) -> Result<CoherentOrder, Error> {
    match path {
        Some(path) => CoherentOrder::parse_text(n, &std::fs::read_to_string(path)?, limits),
        None => coherent_order(n, limits),
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let limits = limits(&cli.global);
    let format = cli.global.format;
    match &cli.command {
        Command::Partitions { n, order } => {
            let order = load_order(*n, order.as_deref(), &limits)?;
            let rows: Vec<_> = order
                .class_ranges()
                .iter()
                .enumerate()
                .flat_map(|(k, range)| {
                    order.sequence()[range.clone()]
                        .iter()
                        .map(move |p| (p, k + 1))
                })
                .collect();
            match format {
                Format::Text => {
                    for (p, class) in rows {
                        println!("{p}\t{}\tO{class}", p.num_blocks());
                    }
                }
                Format::Json => print_json(
                    &rows
                        .iter()
                        .map(|(p, class)| {
                            json!({
                                "partition": p.to_string(),
                                "blocks": p.num_blocks(),
                                "class": class,
                                "signature": p.signature(),
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
            }
        }
        Command::Matrix { n, order, kind } => {
            let order = load_order(*n, order.as_deref(), &limits)?;
            let a = build_connectivity_matrix(&order);
            let export = match kind {
                MatrixKind::Connectivity => a.export(),
                MatrixKind::Elimination => {
                    let b = build_elimination_matrix::<Integer>(&order, &limits)?;
                    MatrixExport::from_matrix("elimination", &order, b.matrix())
                }
                MatrixKind::Triangular => {
                    let b = build_elimination_matrix::<Integer>(&order, &limits)?;
                    MatrixExport::from_matrix("triangular", &order, &triangularize(&a, &b)?)
                }
            };
            match format {
                Format::Text => {
                    for row in &export.entries {
                        println!("{}", row.join(" "));
                    }
                }
                Format::Json => print_json(&export),
            }
        }
        Command::Pi { partition } => {
            let a = Partition::parse(partition)?;
            cap("n", a.n(), limits.max_n)?;
            let v = pi::<Integer>(&a);
            let alpha = connectivity_number::<Integer>(&a).alpha;
            match format {
                Format::Text => {
                    for (c, p) in v.to_pairs() {
                        println!("{c}\t{p}");
                    }
                    println!("alpha\t{alpha}");
                }
                Format::Json => print_json(&json!({
                    "partition": a.to_string(),
                    "terms": v.to_json(),
                    "alpha": alpha.to_string(),
                })),
            }
        }
        Command::Det { n, method, order } => {
            if matches!(method, Method::Direct | Method::Both) {
                cap("n (direct determinant)", *n, limits.max_direct_n)?;
            }
            let order = load_order(*n, order.as_deref(), &limits)?;
            let method = DetMethod::from(*method);
            let alpha = method
                .uses_alpha()
                .then(|| determinant_alpha::<Integer>(&order, &limits))
                .transpose()?;
            let direct = method
                .uses_direct()
                .then(|| determinant_direct::<Integer>(&build_connectivity_matrix(&order), &limits))
                .transpose()?;
            let formula = formula_value(*n);
            let agree = match (&alpha, &direct) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            };
            match format {
                Format::Text => {
                    if let Some(d) = &alpha {
                        println!("alpha\t{d}");
                    }
                    if let Some(d) = &direct {
                        println!("direct\t{d}");
                    }
                    println!("formula\t±{formula}");
                }
                Format::Json => print_json(&json!({
                    "n": n,
                    "alpha": alpha.as_ref().map(ToString::to_string),
                    "direct": direct.as_ref().map(ToString::to_string),
                    "formula": formula.to_string(),
                    "legs_agree": agree,
                })),
            }
            if !agree {
                return Err(Failure::Verification);
            }
        }
        Command::Reliability(args) => reliability(args, &limits, format)?,
        Command::Verify { n, method, order } => {
            let order = order
                .as_deref()
                .map(|p| load_order(*n, Some(p), &limits))
                .transpose()?;
            let options = VerifyOptions {
                method: (*method).into(),
                limits,
                order,
                ..VerifyOptions::default()
            };
            let report = verify_theorem(*n, &options)?;
            match format {
                Format::Text => println!("{report}"),
                Format::Json => print_json(&report),
            }
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn reliability(args: &ReliabilityArgs, limits: &Limits, format: Format) -> Result<(), Error> {
    let mut quotient_of: Option<Partition> = None;
    let graph = if let Some(m) = args.complete {
        if m == 0 {
            return Err(Error::Domain("complete graph needs at least one node".into()));
        }
        cap("m (complete graph)", m, limits.max_complete)?;
        complete_graph(m)
    } else if let Some(n) = args.quotient {
        let text = args.partition.as_deref().expect("clap enforces --partition");
        let a = Partition::parse_with_n(text, n)?;
        let g = quotient_graph(n, &a)?;
        quotient_of = Some(a);
        g
    } else {
        let path = args.graph.as_deref().expect("clap enforces one source");
        Multigraph::parse_text(&std::fs::read_to_string(path)?)?
    };
    let options = ReliabilityOptions {
        memoize: args.memoize,
        ..ReliabilityOptions::default()
    };
    let r = reliability_polynomial::<Integer>(&graph, &options, limits)?;
    let edges = graph.edge_count();
    let lead = mgr(&r, edges);
    let alpha = quotient_of
        .as_ref()
        .map(|_| Integer::from(if edges % 2 == 0 { 1 } else { -1 }) * lead.coefficient.clone());
    match format {
        Format::Text => {
            println!("{r}");
            println!("nodes\t{}", graph.node_count());
            println!("edges\t{edges}");
            println!("dropped_loops\t{}", graph.dropped_loops());
            println!("mgr\t{}\t{}", lead.coefficient, lead.degree);
            if let (Some(a), Some(alpha)) = (&quotient_of, &alpha) {
                println!("blocks\t{}", a.num_blocks());
                println!("alpha\t{alpha}");
            }
        }
        Format::Json => print_json(&json!({
            "polynomial": r.export(),
            "nodes": graph.node_count(),
            "edges": edges,
            "dropped_loops": graph.dropped_loops(),
            "mgr": { "coefficient": lead.coefficient.to_string(), "degree": lead.degree },
            "partition": quotient_of.as_ref().map(ToString::to_string),
            "alpha": alpha.as_ref().map(ToString::to_string),
        })),
    }
    Ok(())
}
