//! Exact ground truth on small instances: alternating path enumeration,
//! branch-and-bound disjoint packing, the exhaustive coloring sweep behind
//! kappa on tiny graphs, and the alternating-P3 counting machinery.
//!
//! Budgets are hard errors, never silent truncation: an oracle must not
//! return a non-exact value.

pub mod codes;

use crate::colored::{ColoredGraph, BLUE, RED};
use crate::error::{budget, parameter, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::SplitMix64;

/// Hard cap on partial paths explored per enumeration call.
const ENUMERATION_BUDGET: u64 = 10_000_000;

/// Hard cap on colorings examined by `kappa_exact`.
const COLORING_BUDGET_LOG2: f64 = 24.0;

/// All simple alternating u–v paths of exactly `ell` edges, lexicographic by
/// vertex sequence.
pub fn enumerate_alt_paths(
    cg: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    ell: usize,
) -> Result<Vec<Vec<Vertex>>> {
    cg.graph().check_vertex(u)?;
    cg.graph().check_vertex(v)?;
    if u == v {
        return parameter("enumerate_alt_paths needs u != v");
    }
    if ell == 0 {
        return parameter("enumerate_alt_paths needs ell >= 1");
    }
    let mut on_path = vec![false; cg.n()];
    on_path[u as usize] = true;
    let mut path = vec![u];
    let mut out = Vec::new();
    let mut explored: u64 = 0;
    dfs(cg, v, ell, &mut path, &mut on_path, None, &mut out, &mut explored)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    cg: &ColoredGraph,
    target: Vertex,
    remaining: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    last: Option<u8>,
    out: &mut Vec<Vec<Vertex>>,
    explored: &mut u64,
) -> Result<()> {
    let cur = *path.last().unwrap();
    for (w, c) in cg.colored_neighbors(cur) {
        if last == Some(c) {
            continue;
        }
        *explored += 1;
        if *explored > ENUMERATION_BUDGET {
            return budget(format!(
                "enumeration explored more than {ENUMERATION_BUDGET} partial paths"
            ));
        }
        if remaining == 1 {
            if w == target {
                let mut full = path.clone();
                full.push(w);
                out.push(full);
            }
            continue;
        }
        if w == target || on_path[w as usize] {
            continue;
        }
        path.push(w);
        on_path[w as usize] = true;
        let res = dfs(cg, target, remaining - 1, path, on_path, Some(c), out, explored);
        path.pop();
        on_path[w as usize] = false;
        res?;
    }
    Ok(())
}

/// Exact maximum size of an internally disjoint sub-family of the
/// alternating u–v paths of length ell. Branch and bound over the full path
/// list; paths ordered by ascending internal degree-sum (fail-first), with a
/// greedy disjoint completion as the initial incumbent.
pub fn max_disjoint_alt_paths_exact(
    cg: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    ell: usize,
) -> Result<usize> {
    let paths = enumerate_alt_paths(cg, u, v, ell)?;
    if ell <= 2 {
        // length <= 2 paths have distinct internal vertices by uniqueness
        return Ok(paths.len());
    }
    if cg.n() > 128 {
        return budget("exact packing supports n <= 128");
    }
    let g = cg.graph();
    let mut masked: Vec<(u64, u128)> = paths
        .iter()
        .map(|p| {
            let internal = &p[1..p.len() - 1];
            let degsum: u64 = internal.iter().map(|&w| g.degree(w) as u64).sum();
            let mask: u128 = internal.iter().fold(0u128, |m, &w| m | (1u128 << w));
            (degsum, mask)
        })
        .collect();
    masked.sort_unstable();
    let masks: Vec<u128> = masked.into_iter().map(|(_, m)| m).collect();

    // greedy incumbent
    let mut best = 0usize;
    let mut used: u128 = 0;
    for &m in &masks {
        if m & used == 0 {
            used |= m;
            best += 1;
        }
    }
    let mut incumbent = best;
    branch(&masks, 0, 0, 0, &mut incumbent);
    Ok(incumbent)
}

fn branch(masks: &[u128], idx: usize, used: u128, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    let compatible = masks[idx..].iter().filter(|&&m| m & used == 0).count();
    if count + compatible <= *best {
        return;
    }
    for i in idx..masks.len() {
        if masks[i] & used == 0 {
            branch(masks, i + 1, used | masks[i], count + 1, best);
        }
    }
}

/// Exhaustive kappa on tiny graphs: the maximum over all r^{|E|} colorings
/// of the minimum over vertex pairs of the exact disjoint packing size.
pub fn kappa_exact(g: &Graph, r: u32, ell: usize) -> Result<usize> {
    if g.n() < 2 {
        return parameter("kappa_exact needs n >= 2");
    }
    if r < 2 {
        return parameter("kappa_exact needs r >= 2");
    }
    let m = g.edge_count();
    let log2_colorings = m as f64 * (r as f64).log2();
    if log2_colorings > COLORING_BUDGET_LOG2 {
        return budget(format!(
            "kappa_exact: {r}^{m} colorings exceed 2^{COLORING_BUDGET_LOG2}"
        ));
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let pairs: Vec<(Vertex, Vertex)> = (0..g.n() as Vertex)
        .flat_map(|a| ((a + 1)..g.n() as Vertex).map(move |b| (a, b)))
        .collect();
    let mut cg = ColoredGraph::from_assignment(g.clone(), r, |_, _| 0)?;
    let mut digits = vec![0u8; m];
    let mut best = 0usize;
    loop {
        // min over pairs, abandoning colorings that cannot beat the incumbent
        let mut min_pair = usize::MAX;
        for &(a, b) in &pairs {
            let c = max_disjoint_alt_paths_exact(&cg, a, b, ell)?;
            min_pair = min_pair.min(c);
            if min_pair <= best {
                break;
            }
        }
        if min_pair != usize::MAX && min_pair > best {
            best = min_pair;
        }
        // odometer step
        let mut i = 0;
        while i < m {
            digits[i] += 1;
            if (digits[i] as u32) < r {
                cg.set_edge_color(edges[i].0, edges[i].1, digits[i]);
                break;
            }
            digits[i] = 0;
            cg.set_edge_color(edges[i].0, edges[i].1, 0);
            i += 1;
        }
        if i == m {
            break;
        }
    }
    Ok(best)
}

/// Number of alternating length-3 paths between x and y (internal vertices
/// may repeat across paths, not within).
pub fn alt_p3_count(cg: &ColoredGraph, x: Vertex, y: Vertex) -> Result<usize> {
    cg.graph().check_vertex(x)?;
    cg.graph().check_vertex(y)?;
    if x == y {
        return parameter("alt_p3_count needs x != y");
    }
    let mut count = 0usize;
    for (a, ca) in cg.colored_neighbors(x) {
        if a == y {
            continue;
        }
        for (b, cab) in cg.colored_neighbors(a) {
            if b == x || b == y || cab == ca {
                continue;
            }
            if let Some(cby) = cg.color_of(b, y) {
                if cby != cab {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Total number of alternating length-3 paths of a 2-colored graph via red
/// and blue degrees: for each blue edge {i,j} the alternating paths through
/// it are r_i r_j minus the shared red neighbors (which would close the walk
/// into a triangle, not a path), and symmetrically for red edges.
pub fn count_alt_p3_formula(cg: &ColoredGraph) -> Result<u64> {
    if cg.r() != 2 {
        return parameter("count_alt_p3_formula needs exactly 2 colors");
    }
    let n = cg.n();
    let mut red_deg = vec![0u64; n];
    let mut blue_deg = vec![0u64; n];
    for v in 0..n as Vertex {
        red_deg[v as usize] = cg.colored_degree(v, RED) as u64;
        blue_deg[v as usize] = cg.colored_degree(v, BLUE) as u64;
    }
    let mut total = 0u64;
    for (u, v) in cg.graph().edges() {
        let c = cg.color_of(u, v).unwrap();
        let (deg_u, deg_v, outer) = if c == BLUE {
            (red_deg[u as usize], red_deg[v as usize], RED)
        } else {
            (blue_deg[u as usize], blue_deg[v as usize], BLUE)
        };
        let shared = cg.pair_colored_neighborhood(u, v, outer, outer)?.len() as u64;
        total += deg_u * deg_v - shared;
    }
    Ok(total)
}

/// d^3 / (4(n-1)): the rearrangement bound on lambda_{2,3} of a d-regular
/// graph on n vertices.
pub fn lambda23_upper_bound(d: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return parameter("lambda23_upper_bound needs n >= 2");
    }
    if d < 0.0 {
        return parameter("degree must be nonnegative");
    }
    Ok(d.powi(3) / (4.0 * (n as f64 - 1.0)))
}

/// Fixed sampling stream for `lambda_estimate` above the all-pairs
/// threshold, pinned so repeated calls agree.
const LAMBDA_SAMPLE_KEY: u64 = 0x6c61_6d62_6461;

/// Minimum over vertex pairs of the alternating length-3 path count; all
/// pairs when n <= 400, otherwise 200 seeded pairs.
pub fn lambda_estimate(cg: &ColoredGraph) -> Result<usize> {
    lambda_estimate_argmin(cg).map(|(count, _)| count)
}

/// As `lambda_estimate`, also reporting a pair attaining the minimum.
pub fn lambda_estimate_argmin(cg: &ColoredGraph) -> Result<(usize, (Vertex, Vertex))> {
    if cg.r() != 2 {
        return parameter("lambda_estimate needs exactly 2 colors");
    }
    let n = cg.n();
    if n < 2 {
        return parameter("lambda_estimate needs n >= 2");
    }
    let pairs: Vec<(Vertex, Vertex)> = if n <= 400 {
        (0..n as Vertex)
            .flat_map(|a| ((a + 1)..n as Vertex).map(move |b| (a, b)))
            .collect()
    } else {
        let mut rng = SplitMix64::new(LAMBDA_SAMPLE_KEY);
        crate::pathsys::sample_pairs(n, 200, &mut rng)
    };
    let mut best = (usize::MAX, (0 as Vertex, 1 as Vertex));
    for (a, b) in pairs {
        let c = alt_p3_count(cg, a, b)?;
        if c < best.0 {
            best = (c, (a, b));
            if c == 0 {
                break;
            }
        }
    }
    if best.0 == usize::MAX {
        best.0 = 0;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::color_uniform;
    use crate::graph::gnp_generate;
    use crate::rng::Seed;

    fn colored(edges: &[(Vertex, Vertex, u8)], n: usize) -> ColoredGraph {
        let g = Graph::from_edges(n, edges.iter().map(|&(a, b, _)| (a, b))).unwrap();
        let lookup: std::collections::HashMap<(Vertex, Vertex), u8> = edges
            .iter()
            .flat_map(|&(a, b, c)| [((a, b), c), ((b, a), c)])
            .collect();
        ColoredGraph::from_assignment(g, 2, |a, b| lookup[&(a, b)]).unwrap()
    }

    /// Independent recount: DP over (visited-mask, current, last color).
    fn count_by_bitmask_dp(cg: &ColoredGraph, u: Vertex, v: Vertex, ell: usize) -> usize {
        fn go(
            cg: &ColoredGraph,
            v: Vertex,
            cur: Vertex,
            mask: u32,
            last: Option<u8>,
            remaining: usize,
        ) -> usize {
            if remaining == 0 {
                return usize::from(cur == v);
            }
            let mut total = 0;
            for (w, c) in cg.colored_neighbors(cur) {
                if last == Some(c) {
                    continue;
                }
                if remaining == 1 {
                    total += usize::from(w == v);
                    continue;
                }
                if w == v || mask & (1 << w) != 0 {
                    continue;
                }
                total += go(cg, v, w, mask | (1 << w), Some(c), remaining - 1);
            }
            total
        }
        go(cg, v, u, 1 << u, None, ell)
    }

    #[test]
    fn single_alternating_arm() {
        let cg = colored(&[(0, 2, RED), (2, 1, BLUE)], 3);
        let paths = enumerate_alt_paths(&cg, 0, 1, 2).unwrap();
        assert_eq!(paths, vec![vec![0, 2, 1]]);
    }

    #[test]
    fn monochromatic_graph_has_no_long_alternating_paths() {
        let cg = ColoredGraph::from_assignment(Graph::complete(6), 2, |_, _| RED).unwrap();
        for ell in 2..=4 {
            assert!(enumerate_alt_paths(&cg, 0, 1, ell).unwrap().is_empty());
        }
        assert_eq!(enumerate_alt_paths(&cg, 0, 1, 1).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_matches_bitmask_dp() {
        for seed in 0..20 {
            let g = gnp_generate(8, 0.6, Seed(seed)).unwrap();
            let cg = color_uniform(g, 2, Seed(seed + 100)).unwrap();
            for ell in 2..=4 {
                let listed = enumerate_alt_paths(&cg, 0, 7, ell).unwrap();
                // lexicographic and duplicate-free
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(
                    listed.len(),
                    count_by_bitmask_dp(&cg, 0, 7, ell),
                    "seed {seed} ell {ell}"
                );
            }
        }
    }

    #[test]
    fn packing_pair_of_disjoint_paths() {
        let cg = colored(
            &[(0, 2, RED), (2, 1, BLUE), (0, 3, BLUE), (3, 1, RED)],
            4,
        );
        assert_eq!(max_disjoint_alt_paths_exact(&cg, 0, 1, 2).unwrap(), 2);
    }

    #[test]
    fn packing_shared_internal_vertex() {
        // Two length-3 paths sharing internal vertex 2.
        let cg = colored(
            &[
                (0, 2, RED),
                (2, 3, BLUE),
                (3, 1, RED),
                (2, 4, BLUE),
                (4, 1, RED),
            ],
            5,
        );
        let all = enumerate_alt_paths(&cg, 0, 1, 3).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(max_disjoint_alt_paths_exact(&cg, 0, 1, 3).unwrap(), 1);
    }

    /// Exhaustive subset packer for cross-checking branch and bound.
    fn brute_max_disjoint(cg: &ColoredGraph, u: Vertex, v: Vertex, ell: usize) -> usize {
        let paths = enumerate_alt_paths(cg, u, v, ell).unwrap();
        let masks: Vec<u64> = paths
            .iter()
            .map(|p| p[1..p.len() - 1].iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect();
        let mut best = 0;
        for subset in 0u32..(1 << masks.len().min(20)) {
            let mut used = 0u64;
            let mut ok = true;
            let mut count = 0;
            for (i, &m) in masks.iter().enumerate() {
                if subset & (1 << i) != 0 {
                    if used & m != 0 {
                        ok = false;
                        break;
                    }
                    used |= m;
                    count += 1;
                }
            }
            if ok {
                best = best.max(count);
            }
        }
        best
    }

    #[test]
    fn packing_matches_exhaustive_subsets() {
        for seed in 0..25 {
            let g = gnp_generate(9, 0.5, Seed(300 + seed)).unwrap();
            let cg = color_uniform(g, 2, Seed(400 + seed)).unwrap();
            for ell in 3..=4 {
                let n_paths = enumerate_alt_paths(&cg, 0, 8, ell).unwrap().len();
                if n_paths > 18 {
                    continue; // keep the brute subset sweep small
                }
                assert_eq!(
                    max_disjoint_alt_paths_exact(&cg, 0, 8, ell).unwrap(),
                    brute_max_disjoint(&cg, 0, 8, ell),
                    "seed {seed} ell {ell}"
                );
            }
        }
    }

    #[test]
    fn kappa_exact_tiny_values() {
        let k3 = Graph::complete(3);
        assert_eq!(kappa_exact(&k3, 2, 2).unwrap(), 0);
        assert_eq!(kappa_exact(&k3, 3, 2).unwrap(), 1);
        let c5 = Graph::cycle(5);
        assert_eq!(kappa_exact(&c5, 2, 2).unwrap(), 0);
    }

    #[test]
    fn kappa_exact_k4_regression() {
        // Pinned after the first exhaustive run over 2^6 colorings.
        assert_eq!(kappa_exact(&Graph::complete(4), 2, 2).unwrap(), 1);
    }

    #[test]
    fn kappa_exact_monotone_in_r() {
        for (g, ell) in [(Graph::complete(3), 2), (Graph::complete(4), 2), (Graph::cycle(4), 2)] {
            let k2 = kappa_exact(&g, 2, ell).unwrap();
            let k3 = kappa_exact(&g, 3, ell).unwrap();
            assert!(k2 <= k3, "more colors should never hurt");
        }
    }

    #[test]
    fn kappa_exact_budget() {
        assert!(kappa_exact(&Graph::complete(10), 2, 2).is_err());
    }

    #[test]
    fn formula_zero_on_monochromatic() {
        let cg = ColoredGraph::from_assignment(Graph::complete(8), 2, |_, _| RED).unwrap();
        assert_eq!(count_alt_p3_formula(&cg).unwrap(), 0);
    }

    #[test]
    fn formula_on_alternating_four_cycle() {
        let cg = colored(
            &[(0, 1, RED), (1, 2, BLUE), (2, 3, RED), (3, 0, BLUE)],
            4,
        );
        assert_eq!(count_alt_p3_formula(&cg).unwrap(), 4);
        // cross-check by enumeration over all pairs
        let mut by_enum = 0;
        for a in 0..4 {
            for b in (a + 1)..4 {
                by_enum += enumerate_alt_paths(&cg, a, b, 3).unwrap().len();
            }
        }
        assert_eq!(by_enum, 4);
    }

    #[test]
    fn formula_equals_enumeration_on_random_graphs() {
        for seed in 0..15 {
            let g = gnp_generate(40, 0.3, Seed(700 + seed)).unwrap();
            let cg = color_uniform(g, 2, Seed(800 + seed)).unwrap();
            let mut by_enum = 0u64;
            for a in 0..40 {
                for b in (a + 1)..40 {
                    by_enum += enumerate_alt_paths(&cg, a, b, 3).unwrap().len() as u64;
                }
            }
            assert_eq!(count_alt_p3_formula(&cg).unwrap(), by_enum, "seed {seed}");
        }
    }

    #[test]
    fn lambda_bound_values() {
        assert!((lambda23_upper_bound(4.0, 5).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(lambda23_upper_bound(0.0, 7).unwrap(), 0.0);
        assert!(lambda23_upper_bound(3.0, 1).is_err());
    }

    #[test]
    fn lambda_estimate_monochromatic_is_zero() {
        let cg = ColoredGraph::from_assignment(Graph::complete(10), 2, |_, _| BLUE).unwrap();
        assert_eq!(lambda_estimate(&cg).unwrap(), 0);
    }

    #[test]
    fn lambda_estimate_in_window_on_random_graph() {
        let g = gnp_generate(300, 0.2, Seed(13)).unwrap();
        let cg = color_uniform(g, 2, Seed(14)).unwrap();
        let min_pair = lambda_estimate(&cg).unwrap() as f64;
        let target = 300.0f64.powi(2) * 0.2f64.powi(3) / 8.0; // 90
        assert!(
            min_pair >= 0.5 * target && min_pair <= 1.5 * target,
            "min-pair {min_pair} outside [0.5, 1.5] x {target}"
        );
        // rearrangement bound with the max degree
        let dmax = (0..300).map(|v| cg.graph().degree(v)).max().unwrap() as f64;
        assert!(min_pair <= lambda23_upper_bound(dmax, 300).unwrap());
    }
}
