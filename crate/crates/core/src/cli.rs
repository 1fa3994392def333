//! Command-line front end. Every subcommand is a thin wrapper over the
//! library: deterministic TSV on stdout, diagnostics on stderr, rationals
//! printed `p/q`. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand};

use crate::curve::{DualGraph, EdgeLabeling};
use crate::grading::ConeSpec;
use crate::partitions::trim;
use crate::polarize::{ChoiceSpec, EpsilonChoice};
use crate::poly::PolyMatrix;
use crate::qgrass;
use crate::rat::{format_rat, parse_rat};
use crate::weights::Weight;
use crate::{factorize, fusion, grading, polarize, snf, Error, Result};

#[derive(Parser)]
#[command(
    name = "cbfact",
    version,
    about = "Exact conformal-block ranks on stable curves, with fusion, polarization, and section-ring tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a fusion product; prints "weight<TAB>coefficient" lines.
    Fusion(FusionArgs),
    /// Rank of the block space at a nodal curve.
    CbRank(CbRankArgs),
    /// Per-labeling decomposition table.
    CbTable(CbTableArgs),
    /// Graded ranks at multiples of a base level, one per line.
    Hilbert(HilbertArgs),
    /// Fit an exact quasi-polynomial to a sequence.
    QpFit(QpFitArgs),
    /// Build a covering-pair polarization for a labeling.
    CoverPair(CoverPairArgs),
    /// Pole-order bound for diagonal gluing data.
    PoleCheck(PoleCheckArgs),
    /// Quantum power of the coupling Schubert class.
    Qh(QhArgs),
    /// Hilbert basis of the polarization-degree cone.
    HilbertBasis(HilbertBasisArgs),
    /// Smith normal form of a polynomial matrix.
    Snf(SnfArgs),
    /// The sl2 Chern-coefficient displays alpha(m), beta(m).
    ChernSl2(ChernArgs),
}

#[derive(Args)]
struct FusionArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    level: u32,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
}

#[derive(Args)]
struct CbRankArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    level: u32,
    /// Also print the decomposition table.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct CbTableArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    level: u32,
}

#[derive(Args)]
struct HilbertArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    l0: u32,
    #[arg(long)]
    max: u32,
}

#[derive(Args)]
struct QpFitArgs {
    /// File with one value per line (integers or rationals p/q).
    #[arg(long)]
    input: String,
    #[arg(long, default_value_t = 4)]
    max_period: usize,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
}

#[derive(Args)]
struct CoverPairArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    level: u32,
    /// File with one weight per line, one for each edge in order.
    #[arg(long)]
    labeling: String,
    /// Use the midpoint perturbation at every node.
    #[arg(long)]
    midpoint: bool,
    /// Endpoint to use when not midpoint: "low" or "high".
    #[arg(long, default_value = "low")]
    choice: String,
}

#[derive(Args)]
struct PoleCheckArgs {
    /// Weight at the first node half, e.g. "1,0".
    #[arg(long)]
    mu: String,
    /// Comma-separated exponents, or "-" for the empty list.
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    m: i64,
}

#[derive(Args)]
struct QhArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    power: u32,
}

#[derive(Args)]
struct HilbertBasisArgs {
    #[arg(long)]
    components: usize,
    #[arg(long)]
    genus: u32,
    /// Lower bound r0 as an exact rational, e.g. "-1/2".
    #[arg(long)]
    r0: String,
    #[arg(long)]
    bound: u32,
}

#[derive(Args)]
struct SnfArgs {
    /// Matrix file: one row per line, entries split by ';', each entry
    /// comma-separated ascending coefficients.
    #[arg(long)]
    matrix: String,
    /// Also print the left and right transforms.
    #[arg(long)]
    transforms: bool,
}

#[derive(Args)]
struct ChernArgs {
    #[arg(long)]
    m: u32,
}

/// Parses and dispatches; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_thread_pool();
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("VF_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn read_file(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::BadInput(format!("{path}: {e}")))
}

fn load_graph(path: &str) -> Result<DualGraph> {
    let graph = DualGraph::from_json(&read_file(path)?)?;
    graph.validate()?;
    Ok(graph)
}

fn parse_exponent_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::BadInput(format!("bad exponent {p:?}")))
        })
        .collect()
}

fn labeling_line(l: &EdgeLabeling) -> String {
    l.edge_weights
        .iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

fn partition_field(parts: &[u32]) -> String {
    let t = trim(parts);
    if t.is_empty() {
        "0".to_string()
    } else {
        t.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn dispatch(cmd: Command) -> Result<String> {
    let mut out = String::new();
    match cmd {
        Command::Fusion(a) => {
            let lhs = Weight::parse(&a.lhs)?;
            let rhs = Weight::parse(&a.rhs)?;
            if lhs.rank() != a.r || rhs.rank() != a.r {
                return Err(Error::BadWeight(format!(
                    "weights must have {} parts",
                    a.r
                )));
            }
            for (w, c) in fusion::fusion_affine_fold(a.r, a.level, &lhs, &rhs)? {
                out.push_str(&format!("{w}\t{c}\n"));
            }
        }
        Command::CbRank(a) => {
            let graph = load_graph(&a.graph)?;
            let rank = factorize::rank_nodal(&graph, a.r, a.level)?;
            out.push_str(&format!("{rank}\n"));
            if a.table {
                for row in factorize::decomposition_table(&graph, a.r, a.level)? {
                    out.push_str(&format!(
                        "{}\t{}\n",
                        labeling_line(&row.labeling),
                        row.contribution
                    ));
                }
            }
        }
        Command::CbTable(a) => {
            let graph = load_graph(&a.graph)?;
            for row in factorize::decomposition_table(&graph, a.r, a.level)? {
                out.push_str(&format!(
                    "{}\t{}\n",
                    labeling_line(&row.labeling),
                    row.contribution
                ));
            }
        }
        Command::Hilbert(a) => {
            let graph = load_graph(&a.graph)?;
            for v in grading::hilbert_function(&graph, a.r, a.l0, a.max)? {
                out.push_str(&format!("{v}\n"));
            }
        }
        Command::QpFit(a) => {
            let values = read_file(&a.input)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(parse_rat)
                .collect::<Result<Vec<_>>>()?;
            let qp = grading::qp_fit(&values, a.max_period, a.max_degree)?;
            out.push_str(&format!("period\t{}\n", qp.period));
            out.push_str(&format!("degree\t{}\n", qp.degree));
            for (i, p) in qp.constituents.iter().enumerate() {
                let coeffs = p
                    .coeffs()
                    .iter()
                    .map(format_rat)
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!(
                    "p_{i}\t{}\n",
                    if coeffs.is_empty() { "0".into() } else { coeffs }
                ));
            }
        }
        Command::CoverPair(a) => {
            let graph = load_graph(&a.graph)?;
            let weights = read_file(&a.labeling)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(Weight::parse)
                .collect::<Result<Vec<_>>>()?;
            if weights.iter().any(|w| w.rank() != a.r) {
                return Err(Error::BadWeight(format!(
                    "labeling weights must have {} parts",
                    a.r
                )));
            }
            let labeling = EdgeLabeling {
                edge_weights: weights,
            };
            let choice = if a.midpoint {
                ChoiceSpec::Uniform(EpsilonChoice::Midpoint)
            } else {
                match a.choice.as_str() {
                    "low" => ChoiceSpec::Uniform(EpsilonChoice::Low),
                    "high" => ChoiceSpec::Uniform(EpsilonChoice::High),
                    other => {
                        return Err(Error::BadInput(format!(
                            "choice must be low or high, got {other:?}"
                        )))
                    }
                }
            };
            let cp = polarize::build_covering_pair(&graph, a.level, &labeling, &choice)?;
            for (i, node) in cp.nodes.iter().enumerate() {
                out.push_str(&format!(
                    "node\t{i}\t{}\t{}\t{}\t{}\n",
                    node.comp_a,
                    node.comp_b,
                    node.weight,
                    format_rat(&node.epsilon_a)
                ));
            }
            for (i, comp) in cp.components.iter().enumerate() {
                out.push_str(&format!(
                    "component\t{i}\t{}\t{}\t{}\n",
                    format_rat(&comp.a_weight),
                    format_rat(&comp.degree),
                    if comp.integral { "integral" } else { "half" }
                ));
            }
            out.push_str(&format!(
                "trace\t{}\n",
                cp.trace()
                    .iter()
                    .map(|b| b.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        Command::PoleCheck(a) => {
            let mu = Weight::parse(&a.mu)?;
            let alpha = parse_exponent_list(&a.alpha)?;
            let beta = parse_exponent_list(&a.beta)?;
            let bound = polarize::pole_order_bound(&mu, &alpha, &beta, a.m)?;
            out.push_str(&format!("{}\n", format_rat(&bound)));
        }
        Command::Qh(a) => {
            let class = qgrass::coupling_class(a.k, a.n)?;
            let power = qgrass::power_with_qdegrees(&class, a.power)?;
            for (p, q, c) in power.terms() {
                out.push_str(&format!("{}\tq^{q}\t{c}\n", partition_field(p)));
            }
        }
        Command::HilbertBasis(a) => {
            let cone = ConeSpec {
                components: a.components,
                genus: a.genus,
                lower_bound: parse_rat(&a.r0)?,
            };
            let basis = grading::hilbert_basis(&cone, a.bound)?;
            for ((d, l), ratios) in basis.generators.iter().zip(&basis.ratios) {
                out.push_str(&format!(
                    "{}\t{}\t{}\n",
                    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                    l,
                    ratios.iter().map(format_rat).collect::<Vec<_>>().join(",")
                ));
            }
        }
        Command::Snf(a) => {
            let matrix = PolyMatrix::parse(&read_file(&a.matrix)?)?;
            let s = snf::smith_normal_form(&matrix)?;
            for (i, d) in s.diagonal.iter().enumerate() {
                out.push_str(&format!("d_{i}\t{d}\n"));
            }
            if let Some(exps) = s.t_power_exponents() {
                out.push_str(&format!(
                    "t-exponents\t{}\n",
                    exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                ));
            }
            if a.transforms {
                for (name, m) in [("left", &s.left), ("right", &s.right)] {
                    for i in 0..m.rows() {
                        let row = (0..m.cols())
                            .map(|j| m.at(i, j).to_string())
                            .collect::<Vec<_>>()
                            .join(";");
                        out.push_str(&format!("{name}\t{row}\n"));
                    }
                }
            }
        }
        Command::ChernSl2(a) => {
            let (alpha, beta) = grading::chern_sl2_coefficients(a.m);
            out.push_str(&format!("alpha\t{}\n", format_rat(&alpha)));
            out.push_str(&format!("beta\t{}\n", format_rat(&beta)));
        }
    }
    Ok(out)
}
