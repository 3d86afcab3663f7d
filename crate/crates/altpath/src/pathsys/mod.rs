//! Alternating path systems: the verifier, length-2 counting and its
//! Cauchy–Schwarz upper bound, the auxiliary contraction graph, and the
//! regime-dispatching estimate wrapper around the two constructions.

mod dense;
mod sparse;

pub use dense::dense_construct;
pub use sparse::sparse_construct;

use crate::colored::ColoredGraph;
use crate::error::{parameter, Result};
use crate::graph::{BipartiteGraph, Graph, Vertex};
use crate::regime::{classify, target_for, Regime};
use crate::rng::{Seed, SplitMix64};
use std::collections::HashMap;
use std::fmt;

/// A family of internally disjoint alternating u–v paths of fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    pub u: Vertex,
    pub v: Vertex,
    /// Path length in edges; every path holds `ell + 1` vertices.
    pub ell: usize,
    pub paths: Vec<Vec<Vertex>>,
}

impl PathSystem {
    pub fn empty(u: Vertex, v: Vertex, ell: usize) -> PathSystem {
        PathSystem { u, v, ell, paths: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// First failed invariant of a path system, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongLength { path: usize, expected: usize, got: usize },
    WrongEndpoint { path: usize },
    MissingEdge { path: usize, x: Vertex, y: Vertex },
    NotAlternating { path: usize, at: usize },
    EndpointInside { path: usize, vertex: Vertex },
    RepeatedInternal { path: usize, vertex: Vertex },
    SharedInternal { path_a: usize, path_b: usize, vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { path, expected, got } => {
                write!(f, "path {path}: expected {expected} vertices, got {got}")
            }
            Violation::WrongEndpoint { path } => write!(f, "path {path}: wrong endpoints"),
            Violation::MissingEdge { path, x, y } => {
                write!(f, "path {path}: ({x},{y}) is not an edge")
            }
            Violation::NotAlternating { path, at } => {
                write!(f, "path {path}: equal colors on consecutive edges at {at}")
            }
            Violation::EndpointInside { path, vertex } => {
                write!(f, "path {path}: endpoint {vertex} used internally")
            }
            Violation::RepeatedInternal { path, vertex } => {
                write!(f, "path {path}: internal vertex {vertex} repeated")
            }
            Violation::SharedInternal { path_a, path_b, vertex } => {
                write!(f, "paths {path_a} and {path_b} share internal vertex {vertex}")
            }
        }
    }
}

/// Checks every PathSystem invariant against the colored host graph and
/// reports the first failure.
pub fn verify_path_system(cg: &ColoredGraph, ps: &PathSystem) -> std::result::Result<(), Violation> {
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    for (idx, path) in ps.paths.iter().enumerate() {
        if path.len() != ps.ell + 1 {
            return Err(Violation::WrongLength { path: idx, expected: ps.ell + 1, got: path.len() });
        }
        if path[0] != ps.u || *path.last().unwrap() != ps.v {
            return Err(Violation::WrongEndpoint { path: idx });
        }
        let mut last_color: Option<u8> = None;
        for w in path.windows(2) {
            match cg.color_of(w[0], w[1]) {
                None => return Err(Violation::MissingEdge { path: idx, x: w[0], y: w[1] }),
                Some(c) => {
                    if last_color == Some(c) {
                        return Err(Violation::NotAlternating { path: idx, at: 0 });
                    }
                    last_color = Some(c);
                }
            }
        }
        let mut seen_here: HashMap<Vertex, ()> = HashMap::new();
        for &w in &path[1..path.len() - 1] {
            if w == ps.u || w == ps.v {
                return Err(Violation::EndpointInside { path: idx, vertex: w });
            }
            if seen_here.insert(w, ()).is_some() {
                return Err(Violation::RepeatedInternal { path: idx, vertex: w });
            }
            if let Some(&other) = owner.get(&w) {
                return Err(Violation::SharedInternal { path_a: other, path_b: idx, vertex: w });
            }
        }
        for &w in &path[1..path.len() - 1] {
            owner.insert(w, idx);
        }
    }
    Ok(())
}

/// Number of alternating length-2 paths between u and v: common neighbors w
/// with c(uw) != c(wv). All such paths are automatically internally disjoint.
pub fn count_alt_p2(cg: &ColoredGraph, u: Vertex, v: Vertex) -> Result<usize> {
    Ok(alt_p2_system(cg, u, v)?.len())
}

/// The alternating length-2 paths themselves, as a PathSystem.
pub fn alt_p2_system(cg: &ColoredGraph, u: Vertex, v: Vertex) -> Result<PathSystem> {
    cg.graph().check_vertex(u)?;
    cg.graph().check_vertex(v)?;
    if u == v {
        return parameter("alternating paths need u != v");
    }
    let g = cg.graph();
    let (nu, nv) = (g.neighbors(u), g.neighbors(v));
    let mut paths = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    while i < nu.len() && j < nv.len() {
        match nu[i].cmp(&nv[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let w = nu[i];
                if w != u && w != v && cg.color_of(u, w) != cg.color_of(w, v) {
                    paths.push(vec![u, w, v]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(PathSystem { u, v, ell: 2, paths })
}

/// Coloring-independent upper bound on the min-pair alternating-P2 count:
/// [sum_v deg(v)^2 (1 - 1/r) / 2] / C(n, 2).
pub fn kappa2_upper_bound(g: &Graph, r: u32) -> Result<f64> {
    if r < 2 {
        return parameter("kappa2_upper_bound needs r >= 2");
    }
    if g.n() < 2 {
        return parameter("kappa2_upper_bound needs n >= 2");
    }
    let total: f64 = (0..g.n())
        .map(|v| {
            let d = g.degree(v as Vertex) as f64;
            d * d * (1.0 - 1.0 / r as f64) / 2.0
        })
        .sum();
    let pairs = g.n() as f64 * (g.n() as f64 - 1.0) / 2.0;
    Ok(total / pairs)
}

/// Auxiliary bipartite graph on partition classes: class i ~ class j when at
/// least one `color`-colored edge joins their vertex sets. Each auxiliary
/// edge carries its lexicographically lowest witness edge.
pub struct Contraction {
    pub graph: BipartiteGraph,
    witnesses: HashMap<(Vertex, Vertex), (Vertex, Vertex)>,
}

impl Contraction {
    /// Witness (x, y) in host-vertex ids for auxiliary edge (i, j).
    pub fn witness(&self, i: Vertex, j: Vertex) -> Option<(Vertex, Vertex)> {
        self.witnesses.get(&(i, j)).copied()
    }
}

pub fn contract_bipartite(
    cg: &ColoredGraph,
    parts_a: &[Vec<Vertex>],
    parts_b: &[Vec<Vertex>],
    color: u8,
) -> Result<Contraction> {
    cg.check_color(color)?;
    let n = cg.n();
    let mut membership: Vec<Option<(bool, Vertex)>> = vec![None; n];
    for (side, parts) in [(false, parts_a), (true, parts_b)] {
        for (i, part) in parts.iter().enumerate() {
            for &x in part {
                cg.graph().check_vertex(x)?;
                if membership[x as usize].is_some() {
                    return parameter(format!("vertex {x} appears in two parts"));
                }
                membership[x as usize] = Some((side, i as Vertex));
            }
        }
    }
    let mut witnesses: HashMap<(Vertex, Vertex), (Vertex, Vertex)> = HashMap::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    // Scanning x ascending within each part and neighbors ascending makes the
    // first witness per auxiliary edge the lexicographically lowest.
    for (i, part) in parts_a.iter().enumerate() {
        let mut sorted = part.clone();
        sorted.sort_unstable();
        for &x in &sorted {
            for (y, c) in cg.colored_neighbors(x) {
                if c != color {
                    continue;
                }
                if let Some((true, j)) = membership[y as usize] {
                    witnesses.entry((i as Vertex, j)).or_insert_with(|| {
                        edges.push((i as Vertex, j));
                        (x, y)
                    });
                }
            }
        }
    }
    let graph = BipartiteGraph::from_edges(parts_a.len(), parts_b.len(), edges)?;
    Ok(Contraction { graph, witnesses })
}

/// Result of a regime-dispatched construction sweep over sampled pairs.
#[derive(Debug, Clone)]
pub struct KappaEstimate {
    /// Minimum per-pair count over the sample.
    pub achieved: usize,
    /// The applicable theorem's closed-form target.
    pub theory: f64,
    pub ratio: f64,
    pub regime: Regime,
    /// True when the target is known only up to a constant factor.
    pub theta_only: bool,
    /// (u, v, count) per sampled pair, in sample order.
    pub per_pair: Vec<(Vertex, Vertex, usize)>,
}

/// Samples `count` distinct unordered pairs; all pairs when C(n,2) <= 10^4.
pub fn sample_pairs(n: usize, count: usize, rng: &mut SplitMix64) -> Vec<(Vertex, Vertex)> {
    let total = n * (n - 1) / 2;
    if total <= 10_000 {
        let mut all = Vec::with_capacity(total);
        for u in 0..n {
            for v in (u + 1)..n {
                all.push((u as Vertex, v as Vertex));
            }
        }
        return all;
    }
    let mut chosen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.next_below(n as u64) as Vertex;
        let b = rng.next_below(n as u64) as Vertex;
        if a == b {
            continue;
        }
        let pair = (a.min(b), a.max(b));
        if chosen.insert(pair) {
            out.push(pair);
        }
    }
    out
}

const TAG_COLOR: u64 = 2;
const TAG_PAIRS: u64 = 3;

/// Colors `g` uniformly, classifies the point by empirical density, runs the
/// applicable construction over sampled pairs, and reports the minimum
/// achieved count against the theorem target.
pub fn kappa_estimate(
    g: &Graph,
    r: u32,
    ell: usize,
    pair_sample: usize,
    seed: Seed,
) -> Result<KappaEstimate> {
    if r < 2 {
        return parameter("kappa_estimate needs r >= 2");
    }
    if g.n() < 2 {
        return parameter("kappa_estimate needs n >= 2");
    }
    let n = g.n();
    let p_hat = g.density();
    let regime = classify(n, p_hat, ell)?;
    let (theory, theta_only) = target_for(regime, n, p_hat, r, ell);
    // Constructions for ell >= 3 always work with two colors; more colors
    // never improve the two-color lower bound.
    let colors = if ell == 2 { r } else { 2 };
    let cg = crate::colored::color_uniform(
        g.clone(),
        colors,
        Seed(crate::rng::stream_key(seed, &[TAG_COLOR])),
    )?;
    let mut pair_rng = SplitMix64::substream(seed, &[TAG_PAIRS]);
    let pairs = sample_pairs(n, pair_sample.max(1), &mut pair_rng);
    let mut per_pair = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let count = match regime {
            Regime::Kappa2 => count_alt_p2(&cg, a, b)?,
            Regime::Dense => {
                let ps = dense_construct(&cg, a, b, ell)?;
                debug_assert!(verify_path_system(&cg, &ps).is_ok());
                ps.len()
            }
            Regime::SparseKPlus1 { k }
            | Regime::SparseKPlus2 { k }
            | Regime::SparseDiameter { k } => {
                let ps = sparse_construct(&cg, a, b, ell, k)?;
                debug_assert!(verify_path_system(&cg, &ps).is_ok());
                ps.len()
            }
        };
        per_pair.push((a, b, count));
    }
    let achieved = per_pair.iter().map(|&(_, _, c)| c).min().unwrap_or(0);
    let ratio = if theory > 0.0 { achieved as f64 / theory } else { 0.0 };
    Ok(KappaEstimate { achieved, theory, ratio, regime, theta_only, per_pair })
}
