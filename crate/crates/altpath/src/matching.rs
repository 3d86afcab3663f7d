//! Bipartite matching kernels: maximum matchings by augmenting paths,
//! saturating d-matchings via the clone reduction, Hall-condition witnesses,
//! and color-filtered matchings between vertex sets of a host graph.
//!
//! All searches visit neighbors in ascending index order and process the A
//! side in ascending order, so outputs are deterministic.

use crate::colored::ColoredGraph;
use crate::error::{parameter, Result};
use crate::graph::{ensure_budget, BipartiteGraph, Graph, Vertex};
use itertools::Itertools;
use std::collections::HashSet;

/// A matching in a bipartite graph: pairs (a, b) with all a distinct and all
/// b distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// Checks matching validity against its host.
    pub fn is_valid_for(&self, bg: &BipartiteGraph) -> bool {
        let mut seen_a = HashSet::new();
        let mut seen_b = HashSet::new();
        self.pairs.iter().all(|&(a, b)| {
            seen_a.insert(a) && seen_b.insert(b) && bg.has_edge(a, b)
        })
    }
}

/// A d-matching: vertex-disjoint stars K_{1,d} centered on the A side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarMatching {
    pub d: usize,
    /// (center, leaves) sorted by center; each leaf list ascending.
    pub stars: Vec<(Vertex, Vec<Vertex>)>,
}

fn kuhn_augment(
    bg: &BipartiteGraph,
    a: Vertex,
    match_a: &mut [Option<Vertex>],
    match_b: &mut [Option<Vertex>],
    visited_b: &mut [bool],
) -> bool {
    for &b in bg.neighbors(a) {
        if visited_b[b as usize] {
            continue;
        }
        visited_b[b as usize] = true;
        match match_b[b as usize] {
            None => {
                match_b[b as usize] = Some(a);
                match_a[a as usize] = Some(b);
                return true;
            }
            Some(a2) => {
                if kuhn_augment(bg, a2, match_a, match_b, visited_b) {
                    match_b[b as usize] = Some(a);
                    match_a[a as usize] = Some(b);
                    return true;
                }
            }
        }
    }
    false
}

/// Maximum-cardinality matching. The size is canonical; the pairing is the
/// deterministic one produced by ascending-order augmentation.
pub fn max_matching(bg: &BipartiteGraph) -> Matching {
    let (na, nb) = (bg.size_a(), bg.size_b());
    let mut match_a: Vec<Option<Vertex>> = vec![None; na];
    let mut match_b: Vec<Option<Vertex>> = vec![None; nb];
    // greedy seeding
    for a in 0..na {
        for &b in bg.neighbors(a as Vertex) {
            if match_b[b as usize].is_none() {
                match_b[b as usize] = Some(a as Vertex);
                match_a[a] = Some(b);
                break;
            }
        }
    }
    let mut visited_b = vec![false; nb];
    for a in 0..na {
        if match_a[a].is_some() {
            continue;
        }
        visited_b.iter_mut().for_each(|x| *x = false);
        kuhn_augment(bg, a as Vertex, &mut match_a, &mut match_b, &mut visited_b);
    }
    let pairs = match_a
        .iter()
        .enumerate()
        .filter_map(|(a, b)| b.map(|b| (a as Vertex, b)))
        .collect();
    Matching { pairs }
}

fn cloned_star_matching(bg: &BipartiteGraph, d: usize) -> Vec<(Vertex, Vec<Vertex>)> {
    // Clone each A-vertex d times and run max_matching; star leaves are the
    // partners of the clones. No center can hold more leaves than its
    // degree, so cloning is capped there.
    let na = bg.size_a();
    let max_deg = (0..na).map(|a| bg.neighbors(a as Vertex).len()).max().unwrap_or(0);
    let d_eff = d.min(max_deg).max(1);
    let cloned = BipartiteGraph::from_edges(
        na * d_eff,
        bg.size_b(),
        (0..na * d_eff).flat_map(|i| {
            bg.neighbors((i / d_eff) as Vertex)
                .iter()
                .map(move |&b| (i as Vertex, b))
                .collect::<Vec<_>>()
        }),
    )
    .expect("clone reduction stays in range");
    let m = max_matching(&cloned);
    let mut stars: Vec<(Vertex, Vec<Vertex>)> = (0..na).map(|a| (a as Vertex, Vec::new())).collect();
    for (clone, b) in m.pairs {
        stars[clone as usize / d_eff].1.push(b);
    }
    for (_, leaves) in stars.iter_mut() {
        leaves.sort_unstable();
    }
    stars
}

/// Saturating d-matching: every A-vertex becomes the center of a K_{1,d}
/// with pairwise-disjoint leaf sets, or `None` when no such subgraph exists.
pub fn d_matching(bg: &BipartiteGraph, d: usize) -> Option<StarMatching> {
    assert!(d >= 1, "star size must be >= 1");
    if bg.size_b() < d * bg.size_a() {
        return None; // counting obstruction
    }
    let stars = cloned_star_matching(bg, d);
    if stars.iter().all(|(_, leaves)| leaves.len() == d) {
        Some(StarMatching { d, stars })
    } else {
        None
    }
}

/// Best-effort star matching for the constructions: centers keep however
/// many leaves the maximum matching could give them (up to d); leafless
/// centers are dropped. Coincides with `d_matching` whenever one exists.
pub(crate) fn star_matching_partial(bg: &BipartiteGraph, d: usize) -> StarMatching {
    let stars = cloned_star_matching(bg, d)
        .into_iter()
        .filter(|(_, leaves)| !leaves.is_empty())
        .collect();
    StarMatching { d, stars }
}

/// Max subsets examined by `hall_violation`.
const HALL_SUBSET_BUDGET: u128 = 1 << 20;

/// Searches subsets S of A with |S| <= max_subset for |N(S)| < d|S|,
/// in size-then-lexicographic order; returns the first violation.
pub fn hall_violation(
    bg: &BipartiteGraph,
    d: usize,
    max_subset: usize,
) -> Result<Option<Vec<Vertex>>> {
    if d == 0 {
        return parameter("hall_violation requires d >= 1");
    }
    if max_subset > bg.size_a() {
        return parameter(format!(
            "max_subset {max_subset} exceeds |A| = {}",
            bg.size_a()
        ));
    }
    let mut planned: u128 = 0;
    for s in 1..=max_subset {
        planned = planned.saturating_add(binomial(bg.size_a(), s));
    }
    ensure_budget(planned, HALL_SUBSET_BUDGET, "hall_violation subset count")?;

    let words = bg.size_b().div_ceil(64);
    let masks: Vec<Vec<u64>> = (0..bg.size_a())
        .map(|a| {
            let mut m = vec![0u64; words];
            for &b in bg.neighbors(a as Vertex) {
                m[b as usize / 64] |= 1u64 << (b % 64);
            }
            m
        })
        .collect();
    let mut acc = vec![0u64; words];
    for s in 1..=max_subset {
        for subset in (0..bg.size_a()).combinations(s) {
            acc.iter_mut().for_each(|w| *w = 0);
            for &a in &subset {
                for (w, m) in acc.iter_mut().zip(&masks[a]) {
                    *w |= m;
                }
            }
            let nbhd: u32 = acc.iter().map(|w| w.count_ones()).sum();
            if (nbhd as usize) < d * s {
                return Ok(Some(subset.into_iter().map(|a| a as Vertex).collect()));
            }
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// m minus the maximum matching size of a balanced bipartite graph.
pub fn near_perfect_matching_deficiency(bg: &BipartiteGraph) -> Result<usize> {
    if bg.size_a() != bg.size_b() {
        return parameter(format!(
            "deficiency requires |A| = |B|, got {} and {}",
            bg.size_a(),
            bg.size_b()
        ));
    }
    Ok(bg.size_a() - max_matching(bg).size())
}

fn induced_bipartite(
    g: &Graph,
    a: &[Vertex],
    b: &[Vertex],
    keep: impl Fn(Vertex, Vertex) -> bool,
) -> Result<BipartiteGraph> {
    let b_index: std::collections::HashMap<Vertex, Vertex> = b
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    if b_index.len() != b.len() {
        return parameter("duplicate vertices in B side");
    }
    {
        let a_set: HashSet<Vertex> = a.iter().copied().collect();
        if a_set.len() != a.len() {
            return parameter("duplicate vertices in A side");
        }
        if b.iter().any(|v| a_set.contains(v)) {
            return parameter("A and B overlap");
        }
    }
    let mut edges = Vec::new();
    for (ia, &va) in a.iter().enumerate() {
        g.check_vertex(va)?;
        for &w in g.neighbors(va) {
            if let Some(&ib) = b_index.get(&w) {
                if keep(va, w) {
                    edges.push((ia as Vertex, ib));
                }
            }
        }
    }
    BipartiteGraph::from_edges(a.len(), b.len(), edges)
}

fn matching_to_host(m: Matching, a: &[Vertex], b: &[Vertex]) -> Matching {
    Matching {
        pairs: m
            .pairs
            .into_iter()
            .map(|(ia, ib)| (a[ia as usize], b[ib as usize]))
            .collect(),
    }
}

/// Maximum matching between disjoint vertex sets A and B of a host graph,
/// in host vertex ids.
pub fn dense_pair_matching(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<Matching> {
    let bg = induced_bipartite(g, a, b, |_, _| true)?;
    Ok(matching_to_host(max_matching(&bg), a, b))
}

/// Same, restricted to edges of one color.
pub fn dense_pair_matching_colored(
    cg: &ColoredGraph,
    a: &[Vertex],
    b: &[Vertex],
    color: u8,
) -> Result<Matching> {
    cg.check_color(color)?;
    let bg = induced_bipartite(cg.graph(), a, b, |u, v| cg.color_of(u, v) == Some(color))?;
    Ok(matching_to_host(max_matching(&bg), a, b))
}
