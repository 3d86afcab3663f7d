//! Command-line front end. Exit codes: 0 success, 2 parameter/parse error,
//! 3 regime refusal, 4 verification failure, 5 budget exceeded.

use altpath::colored::color_uniform;
use altpath::error::{Error, Result};
use altpath::experiments::{
    run_experiment, trial_colored_graph, trial_pairs, ExperimentConfig, Mode, PRule,
};
use altpath::graph::gnp_generate;
use altpath::io as fileio;
use altpath::oracle;
use altpath::pathsys::{dense_construct, sparse_construct, verify_path_system};
use altpath::report::ExperimentReport;
use altpath::rng::Seed;
use altpath::spectral::pseudo_kappa_check;
use clap::{Parser, Subcommand};
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "altpath",
    about = "Alternating-path connectivity laboratory for random graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate G(n, p) and write it as an edge-list file
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color a graph file uniformly at random with r colors
    Color {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a path-system file against a colored graph file
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        paths: PathBuf,
    },
    /// Alternating-P2 sweep vs (1 - 1/r) n p^2
    Kappa2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dense construction sweep vs min{n/(ell-1), np(1-p/2)}
    Dense {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the first sampled pair's path system here
        #[arg(long)]
        paths_out: Option<PathBuf>,
        /// Also write the colored graph the sweep used here
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Sparse construction sweep vs np (or Theta(n^{k-1} p^k) at ell = k)
    Sparse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        paths_out: Option<PathBuf>,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Exact oracle: kappa_exact on a plain graph file, or the exact
    /// disjoint packing for one pair of a colored graph file
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long)]
        u: Option<u32>,
        #[arg(long)]
        v: Option<u32>,
    },
    /// Spectral profile and EML-backed dense check
    Pseudo {
        /// Graph file to analyze; mutually exclusive with --n/--p
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a config-driven experiment and emit the CSV report
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed in the config file
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn emit_report(out: &Option<PathBuf>, report: &ExperimentReport) -> Result<()> {
    emit(out, &report.to_csv())
}

fn single_point_config(
    mode: Mode,
    n: usize,
    p: f64,
    r: u32,
    ell: usize,
    k: Option<usize>,
    pairs: usize,
    seed: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        mode,
        n_grid: vec![n],
        p_rule: PRule::Const(p),
        r,
        ell,
        k,
        trials: 1,
        pair_sample: pairs,
        seed: Seed(seed),
    }
}

fn dump_first_pair_system(
    cfg: &ExperimentConfig,
    construct: impl Fn(&altpath::colored::ColoredGraph, u32, u32) -> Result<altpath::pathsys::PathSystem>,
    paths_out: &Option<PathBuf>,
    graph_out: &Option<PathBuf>,
) -> Result<()> {
    if paths_out.is_none() && graph_out.is_none() {
        return Ok(());
    }
    let n = cfg.n_grid[0];
    let cg = trial_colored_graph(cfg, n, 0)?;
    if let Some(path) = graph_out {
        fs::write(path, fileio::write_colored(&cg))?;
    }
    if let Some(path) = paths_out {
        let (a, b) = trial_pairs(cfg, n, 0)[0];
        let ps = construct(&cg, a, b)?;
        fs::write(path, fileio::write_path_system(&ps))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen { n, p, seed, out } => {
            let g = gnp_generate(n, p, Seed(seed))?;
            eprintln!("generated G({n}, {p}): {} edges", g.edge_count());
            emit(&out, &fileio::write_graph(&g))
        }
        Cmd::Color { input, r, seed, out } => {
            let g = fileio::read_plain(&fs::read_to_string(&input)?)?;
            let cg = color_uniform(g, r, Seed(seed))?;
            emit(&out, &fileio::write_colored(&cg))
        }
        Cmd::Verify { graph, paths } => {
            let cg = fileio::read_colored(&fs::read_to_string(&graph)?)?;
            let ps = fileio::read_path_system(&fs::read_to_string(&paths)?)?;
            match verify_path_system(&cg, &ps) {
                Ok(()) => {
                    println!("OK: {} paths of length {} between {} and {}", ps.len(), ps.ell, ps.u, ps.v);
                    Ok(())
                }
                Err(viol) => Err(Error::Verification(viol.to_string())),
            }
        }
        Cmd::Kappa2 { n, p, r, pairs, seed, out } => {
            let cfg = single_point_config(Mode::Kappa2, n, p, r, 2, None, pairs, seed);
            let report = run_experiment(&cfg)?;
            emit_report(&out, &report)
        }
        Cmd::Dense { n, p, ell, pairs, seed, out, paths_out, graph_out } => {
            let cfg = single_point_config(Mode::Dense, n, p, 2, ell, None, pairs, seed);
            let report = run_experiment(&cfg)?;
            dump_first_pair_system(&cfg, |cg, a, b| dense_construct(cg, a, b, ell), &paths_out, &graph_out)?;
            emit_report(&out, &report)
        }
        Cmd::Sparse { n, p, ell, k, pairs, seed, out, paths_out, graph_out } => {
            let cfg = single_point_config(Mode::Sparse, n, p, 2, ell, k, pairs, seed);
            let report = run_experiment(&cfg)?;
            let kk = report.rows.first().and_then(|r| r.k).or(k).unwrap_or(2);
            dump_first_pair_system(&cfg, |cg, a, b| sparse_construct(cg, a, b, ell, kk), &paths_out, &graph_out)?;
            emit_report(&out, &report)
        }
        Cmd::Oracle { input, ell, r, u, v } => {
            let text = fs::read_to_string(&input)?;
            match (fileio::read_graph_file(&text)?, u, v) {
                (fileio::GraphFile::Colored(cg), Some(u), Some(v)) => {
                    let exact = oracle::max_disjoint_alt_paths_exact(&cg, u, v, ell)?;
                    println!("max internally disjoint alternating {ell}-paths between {u} and {v}: {exact}");
                    Ok(())
                }
                (fileio::GraphFile::Colored(_), _, _) => Err(Error::Parameter(
                    "colored input needs --u and --v for the per-pair oracle".into(),
                )),
                (fileio::GraphFile::Plain(g), None, None) => {
                    let kappa = oracle::kappa_exact(&g, r, ell)?;
                    println!("kappa_exact(r={r}, ell={ell}) = {kappa}");
                    Ok(())
                }
                (fileio::GraphFile::Plain(_), _, _) => Err(Error::Parameter(
                    "plain input runs the exhaustive sweep; drop --u/--v".into(),
                )),
            }
        }
        Cmd::Pseudo { input, n, p, ell, pairs, seed, out } => {
            let g = match (input, n, p) {
                (Some(path), None, None) => fileio::read_plain(&fs::read_to_string(&path)?)?,
                (None, Some(n), Some(p)) => gnp_generate(n, p, Seed(seed))?,
                _ => {
                    return Err(Error::Parameter(
                        "pseudo needs either --input or both --n and --p".into(),
                    ))
                }
            };
            let check = pseudo_kappa_check(&g, ell, pairs, Seed(seed))?;
            eprintln!(
                "profile: n={} d={:.3} lambda={:.3} largest={:.3} spread={:.1}{}",
                check.profile.n,
                check.profile.d,
                check.profile.lambda,
                check.profile.largest,
                check.profile.degree_spread,
                if check.lambda_window_ok { "" } else { "  [warning: lambda outside d^2/n window]" }
            );
            let report = ExperimentReport { rows: check.rows };
            emit_report(&out, &report)
        }
        Cmd::Experiment { config, seed, out } => {
            let mut cfg = ExperimentConfig::parse(&fs::read_to_string(&config)?)?;
            if let Some(s) = seed {
                cfg.seed = Seed(s);
            }
            let start = Instant::now();
            let report = run_experiment(&cfg)?;
            eprintln!(
                "{} rows in {:.1?} (mode {}, seed {})",
                report.rows.len(),
                start.elapsed(),
                cfg.mode.as_str(),
                cfg.seed.0
            );
            emit_report(&out, &report)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
