//! Config-driven Monte Carlo harness.
//!
//! A flat key=value config names a mode, an n-grid, a p rule, and sampling
//! parameters. Every (n, trial) cell generates a fresh seeded graph, colors
//! it, runs the mode's measurement over sampled pairs, and emits report
//! rows. Trials run in parallel; row order is canonical (grid order, then
//! trial, then pair index) regardless of scheduling. Constructed systems
//! must verify or the run fails with the offending instance serialized for
//! replay.

use crate::colored::{color_uniform, ColoredGraph};
use crate::error::{Error, Result};
use crate::graph::{gnp_generate, Vertex};
use crate::oracle;
use crate::pathsys::{
    count_alt_p2, dense_construct, sample_pairs, sparse_construct, verify_path_system,
};
use crate::regime::{classify, target_for, Regime};
use crate::report::{ExperimentReport, ReportRow};
use crate::rng::{stream_key, Seed, SplitMix64};
use crate::spectral::pseudo_kappa_check;
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Kappa2,
    Dense,
    Sparse,
    Lambda,
    Pseudo,
    Oracle,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Kappa2 => "kappa2",
            Mode::Dense => "dense",
            Mode::Sparse => "sparse",
            Mode::Lambda => "lambda",
            Mode::Pseudo => "pseudo",
            Mode::Oracle => "oracle",
        }
    }

    fn parse(s: &str) -> Result<Mode> {
        match s {
            "kappa2" => Ok(Mode::Kappa2),
            "dense" => Ok(Mode::Dense),
            "sparse" => Ok(Mode::Sparse),
            "lambda" => Ok(Mode::Lambda),
            "pseudo" => Ok(Mode::Pseudo),
            "oracle" => Ok(Mode::Oracle),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Edge-probability rule evaluated per grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PRule {
    /// p = c
    Const(f64),
    /// p = n^{-a}
    NPow { a: f64 },
    /// p = c * n^{-a}
    CNPow { c: f64, a: f64 },
    /// p = (n ln n)^a / n
    NLogN { a: f64 },
}

impl PRule {
    pub fn eval(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            PRule::Const(c) => c,
            PRule::NPow { a } => nf.powf(-a),
            PRule::CNPow { c, a } => c * nf.powf(-a),
            PRule::NLogN { a } => (nf * nf.ln()).powf(a) / nf,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub n_grid: Vec<usize>,
    pub p_rule: PRule,
    pub r: u32,
    pub ell: usize,
    pub k: Option<usize>,
    pub trials: u64,
    pub pair_sample: usize,
    pub seed: Seed,
}

impl ExperimentConfig {
    /// Parses the flat key=value format. Lines may carry `#` comments;
    /// unknown keys are errors.
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let mut map: HashMap<&str, String> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse(format!("line {}: expected key = value", lineno + 1)));
            };
            let key = key.trim();
            let value = value.trim().to_string();
            const KNOWN: [&str; 11] = [
                "mode", "n_grid", "p_rule", "c", "a", "r", "ell", "k", "trials", "pair_sample",
                "seed",
            ];
            if !KNOWN.contains(&key) {
                return Err(Error::Parse(format!("line {}: unknown key {key:?}", lineno + 1)));
            }
            if map.insert(key, value).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key {key:?}", lineno + 1)));
            }
        }
        let get = |key: &str| -> Result<&String> {
            map.get(key).ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
        };
        let parse_f64 = |key: &str| -> Result<f64> {
            get(key)?.parse().map_err(|e| Error::Parse(format!("{key}: {e}")))
        };
        let mode = Mode::parse(get("mode")?)?;
        let n_grid: Vec<usize> = get("n_grid")?
            .split(',')
            .map(|tok| tok.trim().parse().map_err(|e| Error::Parse(format!("n_grid: {e}"))))
            .collect::<Result<_>>()?;
        let rule_text = get("p_rule")?.as_str();
        let p_rule = if let Ok(p) = rule_text.parse::<f64>() {
            PRule::Const(p)
        } else {
            match rule_text {
                "c" => PRule::Const(parse_f64("c")?),
                "n^-a" => PRule::NPow { a: parse_f64("a")? },
                "c*n^-a" => PRule::CNPow { c: parse_f64("c")?, a: parse_f64("a")? },
                "nlogn^a/n" => PRule::NLogN { a: parse_f64("a")? },
                other => {
                    return Err(Error::Parse(format!(
                        "p_rule {other:?} is not a number or one of c, n^-a, c*n^-a, nlogn^a/n"
                    )))
                }
            }
        };
        let parse_usize = |key: &str| -> Result<usize> {
            get(key)?.parse().map_err(|e| Error::Parse(format!("{key}: {e}")))
        };
        let cfg = ExperimentConfig {
            mode,
            n_grid,
            p_rule,
            r: get("r")?.parse().map_err(|e| Error::Parse(format!("r: {e}")))?,
            ell: parse_usize("ell")?,
            k: match map.get("k") {
                Some(v) => Some(v.parse().map_err(|e| Error::Parse(format!("k: {e}")))?),
                None => None,
            },
            trials: get("trials")?.parse().map_err(|e| Error::Parse(format!("trials: {e}")))?,
            pair_sample: parse_usize("pair_sample")?,
            seed: Seed(get("seed")?.parse().map_err(|e| Error::Parse(format!("seed: {e}")))?),
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Mode-specific completeness and range checks.
    pub fn check(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::Parameter("n_grid is empty".into()));
        }
        if self.r < 2 {
            return Err(Error::Parameter("r must be >= 2".into()));
        }
        match self.mode {
            Mode::Kappa2 => {
                if self.ell != 2 {
                    return Err(Error::Parameter("kappa2 mode requires ell = 2".into()));
                }
            }
            Mode::Lambda => {
                if self.ell != 3 {
                    return Err(Error::Parameter("lambda mode requires ell = 3".into()));
                }
            }
            Mode::Dense | Mode::Pseudo => {
                if self.ell < 3 {
                    return Err(Error::Parameter(format!(
                        "{} mode requires ell >= 3",
                        self.mode.as_str()
                    )));
                }
            }
            Mode::Sparse => {
                if self.ell < 2 {
                    return Err(Error::Parameter("sparse mode requires ell >= 2".into()));
                }
            }
            Mode::Oracle => {
                if !(2..=5).contains(&self.ell) {
                    return Err(Error::Parameter("oracle mode supports ell in 2..=5".into()));
                }
            }
        }
        for &n in &self.n_grid {
            let p = self.p_rule.eval(n);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Parameter(format!(
                    "p rule evaluates to {p} at n = {n}, outside [0,1]"
                )));
            }
        }
        Ok(())
    }
}

/// Classifies one grid point under the config's mode, refusing points whose
/// window does not match the mode.
pub fn validate_regime(cfg: &ExperimentConfig, n: usize) -> Result<Regime> {
    let p = cfg.p_rule.eval(n);
    match cfg.mode {
        Mode::Kappa2 => {
            let regime = classify(n, p, 2)?;
            debug_assert_eq!(regime, Regime::Kappa2);
            Ok(regime)
        }
        Mode::Dense => match classify(n, p, cfg.ell)? {
            Regime::Dense => Ok(Regime::Dense),
            other => Err(Error::Regime(format!(
                "dense mode needs constant-p window, classified {} at n={n}, p={p}",
                other.label()
            ))),
        },
        Mode::Sparse => {
            let regime = classify(n, p, cfg.ell)?;
            let k = match regime.sparse_k() {
                Some(k) => k,
                None => {
                    return Err(Error::Regime(format!(
                        "sparse mode needs a sparse window, classified {} at n={n}, p={p}",
                        regime.label()
                    )))
                }
            };
            if let Some(want) = cfg.k {
                if want != k {
                    return Err(Error::Regime(format!(
                        "config k = {want} does not match the window k = {k} at n={n}, np={}",
                        n as f64 * p
                    )));
                }
            }
            Ok(regime)
        }
        Mode::Lambda => {
            // lower bound window: np >> (n log n)^{1/3}
            let np = n as f64 * p;
            let lower = (n as f64 * (n as f64).ln()).powf(1.0 / 3.0);
            if np >= lower {
                Ok(Regime::Dense) // label unused; lambda rows carry "prop6.1"
            } else {
                Err(Error::Regime(format!(
                    "lambda mode needs np >= (n log n)^(1/3) = {lower:.3}, got {np:.3}"
                )))
            }
        }
        Mode::Pseudo | Mode::Oracle => Ok(Regime::Dense),
    }
}

const TAG_GRAPH: u64 = 1;
const TAG_COLOR: u64 = 2;
const TAG_PAIRS: u64 = 3;

/// The seeded graph of one (n, trial) cell.
pub fn trial_graph(cfg: &ExperimentConfig, n: usize, trial: u64) -> Result<crate::graph::Graph> {
    let p = cfg.p_rule.eval(n);
    gnp_generate(n, p, Seed(stream_key(cfg.seed, &[n as u64, trial, TAG_GRAPH])))
}

/// The seeded coloring of one cell. Two colors in every construction mode;
/// r colors for ell = 2.
pub fn trial_colored_graph(cfg: &ExperimentConfig, n: usize, trial: u64) -> Result<ColoredGraph> {
    let g = trial_graph(cfg, n, trial)?;
    let colors = if cfg.mode == Mode::Kappa2 { cfg.r } else { 2 };
    color_uniform(g, colors, Seed(stream_key(cfg.seed, &[n as u64, trial, TAG_COLOR])))
}

/// The seeded pair sample of one cell.
pub fn trial_pairs(cfg: &ExperimentConfig, n: usize, trial: u64) -> Vec<(Vertex, Vertex)> {
    let mut rng = SplitMix64::substream(cfg.seed, &[n as u64, trial, TAG_PAIRS]);
    sample_pairs(n, cfg.pair_sample.max(1), &mut rng)
}

fn replay_dump(cfg: &ExperimentConfig, n: usize, trial: u64, cg: &ColoredGraph, ps: &crate::pathsys::PathSystem) -> String {
    let stem = format!("altpath_replay_{}_{n}_{trial}", cfg.mode.as_str());
    let graph_path = format!("{stem}.graph.txt");
    let paths_path = format!("{stem}.paths.txt");
    let _ = std::fs::write(&graph_path, crate::io::write_colored(cg));
    let _ = std::fs::write(&paths_path, crate::io::write_path_system(ps));
    format!("instance serialized to {graph_path} and {paths_path}")
}

fn run_cell(cfg: &ExperimentConfig, n: usize, trial: u64, regime: Regime) -> Result<Vec<ReportRow>> {
    let p = cfg.p_rule.eval(n);
    let mode = cfg.mode.as_str();
    let seed = cfg.seed.0;
    let mut rows = Vec::new();
    match cfg.mode {
        Mode::Kappa2 | Mode::Dense | Mode::Sparse => {
            let cg = trial_colored_graph(cfg, n, trial)?;
            let p_hat = cg.graph().density();
            let (theory, _) = target_for(regime, n, p_hat, cfg.r, cfg.ell);
            let k = regime.sparse_k();
            for (a, b) in trial_pairs(cfg, n, trial) {
                let achieved = match cfg.mode {
                    Mode::Kappa2 => count_alt_p2(&cg, a, b)? as u64,
                    Mode::Dense => {
                        let ps = dense_construct(&cg, a, b, cfg.ell)?;
                        if let Err(viol) = verify_path_system(&cg, &ps) {
                            let where_ = replay_dump(cfg, n, trial, &cg, &ps);
                            return Err(Error::Verification(format!(
                                "dense system invalid at n={n} trial={trial} pair=({a},{b}): {viol}; {where_}"
                            )));
                        }
                        ps.len() as u64
                    }
                    Mode::Sparse => {
                        let ps = sparse_construct(&cg, a, b, cfg.ell, k.expect("sparse regime"))?;
                        if let Err(viol) = verify_path_system(&cg, &ps) {
                            let where_ = replay_dump(cfg, n, trial, &cg, &ps);
                            return Err(Error::Verification(format!(
                                "sparse system invalid at n={n} trial={trial} pair=({a},{b}): {viol}; {where_}"
                            )));
                        }
                        ps.len() as u64
                    }
                    _ => unreachable!(),
                };
                rows.push(ReportRow {
                    mode,
                    n,
                    p,
                    r: cfg.r,
                    ell: cfg.ell,
                    k,
                    trial,
                    pair_u: a,
                    pair_v: b,
                    achieved,
                    theory,
                    ratio: if theory > 0.0 { achieved as f64 / theory } else { 0.0 },
                    regime: regime.label(),
                    seed,
                    elapsed_ms: 0,
                });
            }
        }
        Mode::Lambda => {
            let cg = trial_colored_graph(cfg, n, trial)?;
            let p_hat = cg.graph().density();
            let theory = (n as f64).powi(2) * p_hat.powi(3) / 8.0;
            let (achieved, (a, b)) = oracle::lambda_estimate_argmin(&cg)?;
            rows.push(ReportRow {
                mode,
                n,
                p,
                r: 2,
                ell: 3,
                k: None,
                trial,
                pair_u: a,
                pair_v: b,
                achieved: achieved as u64,
                theory,
                ratio: if theory > 0.0 { achieved as f64 / theory } else { 0.0 },
                regime: "prop6.1",
                seed,
                elapsed_ms: 0,
            });
        }
        Mode::Pseudo => {
            let g = trial_graph(cfg, n, trial)?;
            let check = pseudo_kappa_check(
                &g,
                cfg.ell,
                cfg.pair_sample,
                Seed(stream_key(cfg.seed, &[n as u64, trial, TAG_COLOR])),
            )?;
            for mut row in check.rows {
                row.trial = trial;
                row.seed = seed;
                row.p = p;
                rows.push(row);
            }
        }
        Mode::Oracle => {
            let cg = trial_colored_graph(cfg, n, trial)?;
            for (a, b) in trial_pairs(cfg, n, trial) {
                let achieved = if cfg.ell == 2 {
                    count_alt_p2(&cg, a, b)? as u64
                } else {
                    let ps = dense_construct(&cg, a, b, cfg.ell)?;
                    if let Err(viol) = verify_path_system(&cg, &ps) {
                        let where_ = replay_dump(cfg, n, trial, &cg, &ps);
                        return Err(Error::Verification(format!(
                            "oracle-mode system invalid at n={n} trial={trial} pair=({a},{b}): {viol}; {where_}"
                        )));
                    }
                    ps.len() as u64
                };
                let exact = oracle::max_disjoint_alt_paths_exact(&cg, a, b, cfg.ell)? as u64;
                if achieved > exact {
                    return Err(Error::Verification(format!(
                        "construction beat the exact oracle at n={n} trial={trial} pair=({a},{b}): {achieved} > {exact}"
                    )));
                }
                rows.push(ReportRow {
                    mode,
                    n,
                    p,
                    r: cfg.r,
                    ell: cfg.ell,
                    k: None,
                    trial,
                    pair_u: a,
                    pair_v: b,
                    achieved,
                    theory: exact as f64,
                    ratio: if exact > 0 { achieved as f64 / exact as f64 } else { 0.0 },
                    regime: "exact",
                    seed,
                    elapsed_ms: 0,
                });
            }
        }
    }
    Ok(rows)
}

/// Runs the full grid. Deterministic per (config, seed): identical runs
/// produce byte-identical CSV.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.check()?;
    let mut cells: Vec<(usize, u64, Regime)> = Vec::new();
    for &n in &cfg.n_grid {
        let regime = validate_regime(cfg, n)?;
        for trial in 0..cfg.trials {
            cells.push((n, trial, regime));
        }
    }
    let results: Result<Vec<Vec<ReportRow>>> = cells
        .par_iter()
        .map(|&(n, trial, regime)| run_cell(cfg, n, trial, regime))
        .collect();
    let rows = results?.into_iter().flatten().collect();
    Ok(ExperimentReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KAPPA2_CFG: &str = "\
mode = kappa2
n_grid = 300, 500
p_rule = 0.15
r = 2
ell = 2
trials = 2
pair_sample = 40
seed = 11
";

    #[test]
    fn parse_round_trip() {
        let cfg = ExperimentConfig::parse(KAPPA2_CFG).unwrap();
        assert_eq!(cfg.mode, Mode::Kappa2);
        assert_eq!(cfg.n_grid, vec![300, 500]);
        assert_eq!(cfg.p_rule, PRule::Const(0.15));
        assert_eq!(cfg.seed, Seed(11));
    }

    #[test]
    fn unknown_keys_are_errors() {
        let bad = format!("{KAPPA2_CFG}\nplot = yes\n");
        assert!(ExperimentConfig::parse(&bad).is_err());
    }

    #[test]
    fn symbolic_rules_evaluate() {
        assert!((PRule::NPow { a: 0.5 }.eval(4096) - 1.0 / 64.0).abs() < 1e-12);
        let p = PRule::NLogN { a: 0.5 }.eval(100);
        assert!((p - (100.0f64 * 100.0f64.ln()).sqrt() / 100.0).abs() < 1e-12);
        assert!((PRule::CNPow { c: 2.0, a: 1.0 }.eval(100) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn trials_zero_gives_empty_report() {
        let mut cfg = ExperimentConfig::parse(KAPPA2_CFG).unwrap();
        cfg.trials = 0;
        let report = run_experiment(&cfg).unwrap();
        assert!(report.rows.is_empty());
        assert_eq!(report.to_csv().lines().count(), 1);
    }

    #[test]
    fn identical_runs_are_byte_identical() {
        let cfg = ExperimentConfig::parse(KAPPA2_CFG).unwrap();
        let a = run_experiment(&cfg).unwrap().to_csv();
        let b = run_experiment(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn kappa2_ratios_hover_near_one() {
        let cfg = ExperimentConfig::parse(KAPPA2_CFG).unwrap();
        let report = run_experiment(&cfg).unwrap();
        for &n in &cfg.n_grid {
            let rows: Vec<_> = report.rows.iter().filter(|r| r.n == n).collect();
            let mean_ratio: f64 =
                rows.iter().map(|r| r.ratio).sum::<f64>() / rows.len() as f64;
            assert!(
                (mean_ratio - 1.0).abs() < 0.15,
                "n={n}: mean ratio {mean_ratio}"
            );
        }
    }

    #[test]
    fn achieved_never_runs_far_above_theory() {
        // An achieved value far above the target would mean a counting bug:
        // the matching upper bounds are near-tight in these modes.
        let dense = "\
mode = dense
n_grid = 400
p_rule = 0.5
r = 2
ell = 4
trials = 2
pair_sample = 5
seed = 3
";
        for text in [KAPPA2_CFG, dense] {
            let cfg = ExperimentConfig::parse(text).unwrap();
            let report = run_experiment(&cfg).unwrap();
            for &n in &cfg.n_grid {
                for trial in 0..cfg.trials {
                    let group: Vec<_> = report
                        .rows
                        .iter()
                        .filter(|r| r.n == n && r.trial == trial)
                        .collect();
                    let min_achieved = group.iter().map(|r| r.achieved).min().unwrap();
                    let theory = group[0].theory;
                    assert!(
                        min_achieved as f64 <= 1.25 * theory,
                        "{} at n={n} trial={trial}: min {min_achieved} vs theory {theory}",
                        cfg.mode.as_str()
                    );
                }
            }
        }
    }

    #[test]
    fn sparse_mode_window_mismatch_is_refused() {
        let text = "\
mode = sparse
n_grid = 4096
p_rule = n^-a
a = 0.5
r = 2
ell = 4
k = 3
trials = 1
pair_sample = 3
seed = 1
";
        let cfg = ExperimentConfig::parse(text).unwrap();
        match run_experiment(&cfg) {
            Err(Error::Regime(msg)) => assert!(msg.contains("k = 2"), "{msg}"),
            other => panic!("expected regime refusal, got {other:?}"),
        }
    }

    #[test]
    fn oracle_mode_never_beats_the_oracle() {
        let text = "\
mode = oracle
n_grid = 8
p_rule = 0.55
r = 2
ell = 3
trials = 4
pair_sample = 10
seed = 5
";
        let cfg = ExperimentConfig::parse(text).unwrap();
        let report = run_experiment(&cfg).unwrap();
        assert!(!report.rows.is_empty());
        for row in &report.rows {
            assert!(row.achieved as f64 <= row.theory);
        }
    }
}
