//! Tree/contraction construction of alternating path systems in the sparse
//! regime.
//!
//! Four alternating-color tree families grow outward: two rooted at u (one
//! per root edge color) and, where the shape needs them, two rooted at v.
//! Leaves are partitioned by their level-1 ancestor; the partitions on the
//! two sides are joined through the auxiliary contraction graph, one path
//! per matched partition pair. For ell = k the leaf partitions connect
//! straight to v; for ell >= k+2 the v-side trees gain one extra star level
//! and the u-side trees gain single-vertex relay levels.

use super::{alt_p2_system, contract_bipartite, PathSystem};
use crate::colored::{ColoredGraph, BLUE, RED};
use crate::error::{parameter, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::{max_matching, star_matching_partial};
use std::collections::{BTreeMap, HashMap};

fn other(c: u8) -> u8 {
    1 - c
}

/// One alternating tree: level i is reached by an edge of color
/// `root_color` when i is odd and the other color when i is even.
struct AltTree {
    root_color: u8,
    /// levels[0] is level 1 (the colored neighborhood of the root).
    levels: Vec<Vec<Vertex>>,
    parent: HashMap<Vertex, Vertex>,
}

impl AltTree {
    fn init(cg: &ColoredGraph, root: Vertex, color: u8, used: &mut [bool]) -> AltTree {
        let mut level = Vec::new();
        for (w, c) in cg.colored_neighbors(root) {
            if c == color && !used[w as usize] {
                used[w as usize] = true;
                level.push(w);
            }
        }
        AltTree { root_color: color, levels: vec![level], parent: HashMap::new() }
    }

    fn depth(&self) -> usize {
        self.levels.len()
    }

    fn top(&self) -> &[Vertex] {
        self.levels.last().unwrap()
    }

    fn incoming_color(&self, level: usize) -> u8 {
        if level % 2 == 1 {
            self.root_color
        } else {
            other(self.root_color)
        }
    }

    fn top_incoming(&self) -> u8 {
        self.incoming_color(self.depth())
    }

    /// Root-to-leaf vertex chain (excluding the tree root itself).
    fn ancestry(&self, leaf: Vertex) -> Vec<Vertex> {
        let mut chain = vec![leaf];
        let mut cur = leaf;
        while let Some(&p) = self.parent.get(&cur) {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain
    }

    /// Top-level leaves grouped by level-1 ancestor, roots ascending.
    fn classes(&self) -> Vec<(Vertex, Vec<Vertex>)> {
        let mut by_root: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &leaf in self.top() {
            let root1 = self.ancestry(leaf)[0];
            by_root.entry(root1).or_default().push(leaf);
        }
        by_root.into_iter().collect()
    }

    /// Grows one level: a vertex-disjoint star family of size up to `d` per
    /// current leaf, over still-unused vertices, using correctly colored
    /// edges. Leaves that cannot be extended simply drop out.
    fn grow(&mut self, cg: &ColoredGraph, d: usize, used: &mut [bool]) {
        let color = self.incoming_color(self.depth() + 1);
        let prev = self.top().to_vec();
        if prev.is_empty() {
            self.levels.push(Vec::new());
            return;
        }
        let n = cg.n();
        let pool: Vec<Vertex> = (0..n as Vertex).filter(|&w| !used[w as usize]).collect();
        let mut pool_index: Vec<u32> = vec![u32::MAX; n];
        for (i, &w) in pool.iter().enumerate() {
            pool_index[w as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for (ai, &a) in prev.iter().enumerate() {
            for (w, c) in cg.colored_neighbors(a) {
                if c == color && pool_index[w as usize] != u32::MAX {
                    edges.push((ai as Vertex, pool_index[w as usize]));
                }
            }
        }
        let bg = BipartiteGraph::from_edges(prev.len(), pool.len(), edges)
            .expect("pool indices in range");
        let sm = star_matching_partial(&bg, d);
        let mut level = Vec::new();
        for (center, leaves) in sm.stars {
            let parent_vertex = prev[center as usize];
            for leaf in leaves {
                let w = pool[leaf as usize];
                used[w as usize] = true;
                self.parent.insert(w, parent_vertex);
                level.push(w);
            }
        }
        level.sort_unstable();
        self.levels.push(level);
    }
}

/// Joins the leaf partitions of a u-side tree and a v-side tree through the
/// auxiliary contraction graph; one path per matched partition pair, routed
/// through unique tree ancestry.
fn junction_paths(
    cg: &ColoredGraph,
    tx: &AltTree,
    ty: &AltTree,
    u: Vertex,
    v: Vertex,
) -> Result<Vec<Vec<Vertex>>> {
    let jc = other(tx.top_incoming());
    debug_assert_eq!(
        tx.top_incoming(),
        ty.top_incoming(),
        "junction parity mismatch between paired trees"
    );
    let cx = tx.classes();
    let cy = ty.classes();
    let parts_x: Vec<Vec<Vertex>> = cx.iter().map(|(_, l)| l.clone()).collect();
    let parts_y: Vec<Vec<Vertex>> = cy.iter().map(|(_, l)| l.clone()).collect();
    let con = contract_bipartite(cg, &parts_x, &parts_y, jc)?;
    let m = max_matching(&con.graph);
    let mut paths = Vec::new();
    for (i, j) in m.pairs {
        let (xl, yl) = con.witness(i, j).expect("matched aux edge has a witness");
        let mut path = Vec::new();
        path.push(u);
        path.extend(tx.ancestry(xl));
        let mut down = ty.ancestry(yl);
        down.reverse();
        path.extend(down);
        path.push(v);
        paths.push(path);
    }
    Ok(paths)
}

/// ell = k shape: each leaf partition of a u-side tree connects straight to
/// v through its lowest junction-colored edge.
fn junction_to_endpoint(cg: &ColoredGraph, tx: &AltTree, u: Vertex, v: Vertex) -> Vec<Vec<Vertex>> {
    let jc = other(tx.top_incoming());
    let mut paths = Vec::new();
    for (_root, leaves) in tx.classes() {
        let witness = leaves
            .iter()
            .copied()
            .find(|&leaf| cg.color_of(leaf, v) == Some(jc));
        if let Some(leaf) = witness {
            let mut path = Vec::new();
            path.push(u);
            path.extend(tx.ancestry(leaf));
            path.push(v);
            paths.push(path);
        }
    }
    paths
}

/// Builds internally disjoint alternating u–v paths of length `ell` in the
/// sparse regime with diameter parameter `k` (ell >= k >= 2):
///
/// * ell = k: u-side trees of depth k-1, leaf partitions starred into v;
/// * ell = k+1: u-trees of depth ceil(k/2) meet v-trees of depth floor(k/2)
///   through the contraction graph;
/// * ell >= k+2: the v-trees gain one star level (size np/8, or 1/(6p) when
///   k = 2) and the u-trees gain ell-k-2 single-vertex relay levels.
///
/// Star sizes are floored and clamped to >= 1; shortfalls shrink the
/// returned system instead of aborting.
pub fn sparse_construct(
    cg: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    ell: usize,
    k: usize,
) -> Result<PathSystem> {
    cg.graph().check_vertex(u)?;
    cg.graph().check_vertex(v)?;
    if u == v {
        return parameter("sparse_construct needs u != v");
    }
    if k < 2 {
        return parameter(format!("sparse_construct needs k >= 2, got {k}"));
    }
    if ell < k {
        return parameter(format!(
            "ell = {ell} below the diameter parameter k = {k}: outside the sparse windows"
        ));
    }
    if ell == 2 {
        return alt_p2_system(cg, u, v);
    }
    let g = cg.graph();
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok(PathSystem::empty(u, v, ell));
    }
    let p_hat = g.density();
    let max_deg = (0..n).map(|w| g.degree(w as Vertex)).max().unwrap_or(0).max(1);
    let d_star = ((n as f64 * p_hat / 8.0).floor() as usize).clamp(1, max_deg);
    let d_ext = if k == 2 {
        (((1.0 / (6.0 * p_hat)).floor()) as usize).clamp(1, max_deg)
    } else {
        d_star
    };

    let mut used = vec![false; n];
    used[u as usize] = true;
    used[v as usize] = true;

    let mut paths;
    if ell == k {
        // ell = 2 was handled above, so k >= 3 here. Inner levels grow with
        // star size np/8; the leaf level feeding the junction stars takes
        // every available correctly colored vertex instead — the target here
        // is only an order of magnitude and class order Theta((np)^{k-2})
        // tolerates the larger constant, while small fixed stars leave the
        // junction too thin at desk scale.
        let mut tx = AltTree::init(cg, u, RED, &mut used);
        let mut tx2 = AltTree::init(cg, u, BLUE, &mut used);
        for level in 2..=(k - 1) {
            let d = if level == k - 1 { max_deg } else { d_star };
            tx.grow(cg, d, &mut used);
            tx2.grow(cg, d, &mut used);
        }
        paths = junction_to_endpoint(cg, &tx, u, v);
        paths.extend(junction_to_endpoint(cg, &tx2, u, v));
    } else {
        let lx = k.div_ceil(2);
        let ly = k / 2;
        let mut tx = AltTree::init(cg, u, RED, &mut used);
        let mut tx2 = AltTree::init(cg, u, BLUE, &mut used);
        let mut ty = AltTree::init(cg, v, RED, &mut used);
        let mut ty2 = AltTree::init(cg, v, BLUE, &mut used);
        for _ in 2..=lx {
            tx.grow(cg, d_star, &mut used);
            tx2.grow(cg, d_star, &mut used);
        }
        for _ in 2..=ly {
            ty.grow(cg, d_star, &mut used);
            ty2.grow(cg, d_star, &mut used);
        }
        let extra = ell - k;
        if extra >= 2 {
            ty.grow(cg, d_ext, &mut used);
            ty2.grow(cg, d_ext, &mut used);
            for _ in 0..(extra - 2) {
                tx.grow(cg, 1, &mut used);
                tx2.grow(cg, 1, &mut used);
            }
        }
        let (py, py2) = if tx.top_incoming() == ty.top_incoming() {
            (&ty, &ty2)
        } else {
            (&ty2, &ty)
        };
        paths = junction_paths(cg, &tx, py, u, v)?;
        paths.extend(junction_paths(cg, &tx2, py2, u, v)?);
    }
    let ps = PathSystem { u, v, ell, paths };
    debug_assert!(
        super::verify_path_system(cg, &ps).is_ok(),
        "sparse construction produced an invalid system: {:?}",
        super::verify_path_system(cg, &ps)
    );
    Ok(ps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::color_uniform;
    use crate::graph::{gnp_generate, Graph};
    use crate::pathsys::verify_path_system;
    use crate::rng::Seed;

    fn hand_graph(edges: &[(Vertex, Vertex, u8)], n: usize) -> ColoredGraph {
        let g = Graph::from_edges(n, edges.iter().map(|&(a, b, _)| (a, b))).unwrap();
        let lookup: HashMap<(Vertex, Vertex), u8> = edges
            .iter()
            .flat_map(|&(a, b, c)| [((a, b), c), ((b, a), c)])
            .collect();
        ColoredGraph::from_assignment(g, 2, |a, b| lookup[&(a, b)]).unwrap()
    }

    #[test]
    fn parameter_checks() {
        let cg = color_uniform(Graph::complete(5), 2, Seed(1)).unwrap();
        assert!(sparse_construct(&cg, 0, 0, 3, 2).is_err());
        assert!(sparse_construct(&cg, 0, 1, 3, 1).is_err());
        assert!(sparse_construct(&cg, 0, 1, 2, 3).is_err(), "ell below k");
    }

    #[test]
    fn hand_instance_k2_ell3() {
        // u=0 with red 1 / blue 2; v=5 with red 3 / blue 4; junctions wired
        // so both trees yield a path.
        let cg = hand_graph(
            &[(0, 1, RED), (0, 2, BLUE), (5, 3, RED), (5, 4, BLUE), (1, 3, BLUE), (2, 4, RED)],
            6,
        );
        let ps = sparse_construct(&cg, 0, 5, 3, 2).unwrap();
        assert!(verify_path_system(&cg, &ps).is_ok());
        assert_eq!(ps.len(), 2, "paths: {:?}", ps.paths);
    }

    #[test]
    fn hand_instance_part_iii() {
        // k = 3, ell = 3: u-0 red-> 1, star 1 -blue-> 2, junction 2 -red-> v.
        let cg = hand_graph(&[(0, 1, RED), (1, 2, BLUE), (2, 4, RED)], 5);
        let ps = sparse_construct(&cg, 0, 4, 3, 3).unwrap();
        assert!(verify_path_system(&cg, &ps).is_ok());
        assert_eq!(ps.paths, vec![vec![0, 1, 2, 4]]);
    }

    #[test]
    fn unreachable_target_gives_empty_system() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2)]).unwrap();
        let cg = color_uniform(g, 2, Seed(3)).unwrap();
        let ps = sparse_construct(&cg, 0, 5, 3, 2).unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn ell_two_falls_back_to_alternating_p2() {
        let cg = hand_graph(&[(0, 2, RED), (2, 1, BLUE), (0, 3, RED), (3, 1, RED)], 4);
        let ps = sparse_construct(&cg, 0, 1, 2, 2).unwrap();
        assert_eq!(ps.paths, vec![vec![0, 2, 1]]);
    }

    #[test]
    fn random_sparse_systems_verify_across_shapes() {
        for seed in 0..6 {
            let g = gnp_generate(500, 0.02, Seed(40 + seed)).unwrap();
            let cg = color_uniform(g, 2, Seed(50 + seed)).unwrap();
            for &(ell, k) in &[(3usize, 2usize), (4, 2), (5, 2), (3, 3), (4, 3), (5, 3), (4, 4)] {
                let ps = sparse_construct(&cg, 0, 1, ell, k).unwrap();
                assert!(
                    verify_path_system(&cg, &ps).is_ok(),
                    "seed {seed} ell {ell} k {k}: {:?}",
                    verify_path_system(&cg, &ps)
                );
            }
        }
    }

    #[test]
    fn k2_ell4_achieves_most_of_np() {
        // np = 64 at n = 4096 (the ell >= k+2 window boundary).
        let g = gnp_generate(4096, 1.0 / 64.0, Seed(60)).unwrap();
        let cg = color_uniform(g, 2, Seed(61)).unwrap();
        let ps = sparse_construct(&cg, 0, 1, 4, 2).unwrap();
        assert!(verify_path_system(&cg, &ps).is_ok());
        assert!(
            ps.len() as f64 >= 0.5 * 64.0,
            "achieved {} < 0.5 np = 32",
            ps.len()
        );
    }

    #[test]
    fn relay_levels_extend_path_length() {
        let g = gnp_generate(4096, 1.0 / 64.0, Seed(62)).unwrap();
        let cg = color_uniform(g, 2, Seed(63)).unwrap();
        for ell in 5..=6 {
            let ps = sparse_construct(&cg, 0, 1, ell, 2).unwrap();
            assert!(verify_path_system(&cg, &ps).is_ok());
            assert!(!ps.is_empty(), "ell={ell} produced nothing");
            assert!(ps.paths.iter().all(|p| p.len() == ell + 1));
        }
    }
}
