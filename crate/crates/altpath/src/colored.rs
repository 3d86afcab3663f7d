//! Edge-colored graphs: a total color assignment over the edge set, colored
//! neighborhoods N_i(v), and pairwise colored neighborhoods N_ij(u, v).
//!
//! Color indices are 0-based. Wherever exactly two colors are in play,
//! red = 0 and blue = 1.

use crate::error::{parameter, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{Seed, SplitMix64};

pub const RED: u8 = 0;
pub const BLUE: u8 = 1;

/// A graph together with a total edge -> color map from `r >= 2` colors.
///
/// Colors are stored in parallel with the adjacency lists (both directions of
/// every edge carry the same color), so color lookup is a binary search in
/// the neighbor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    r: u32,
    color_adj: Vec<Vec<u8>>,
}

impl ColoredGraph {
    /// Colors every canonical edge (u < v) of `graph` via `assign`.
    pub fn from_assignment(
        graph: Graph,
        r: u32,
        mut assign: impl FnMut(Vertex, Vertex) -> u8,
    ) -> Result<ColoredGraph> {
        if r < 2 {
            return parameter(format!("color count r={r} must be >= 2"));
        }
        let n = graph.n();
        let mut color_adj: Vec<Vec<u8>> =
            (0..n).map(|v| vec![0u8; graph.degree(v as Vertex)]).collect();
        for u in 0..n {
            let u = u as Vertex;
            for (idx, &v) in graph.neighbors(u).iter().enumerate() {
                if v > u {
                    let c = assign(u, v);
                    if c as u32 >= r {
                        return parameter(format!("color {c} out of range for r={r}"));
                    }
                    color_adj[u as usize][idx] = c;
                    let back = graph.neighbors(v).binary_search(&u).expect("symmetric adjacency");
                    color_adj[v as usize][back] = c;
                }
            }
        }
        Ok(ColoredGraph { graph, r, color_adj })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Color of edge {u, v}, or None when the edge is absent.
    pub fn color_of(&self, u: Vertex, v: Vertex) -> Option<u8> {
        let idx = self.graph.neighbors(u).binary_search(&v).ok()?;
        Some(self.color_adj[u as usize][idx])
    }

    /// Neighbors of `v` together with the incident edge colors.
    pub fn colored_neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u8)> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .zip(self.color_adj[v as usize].iter().copied())
    }

    /// N_i(v): neighbors joined to v by an i-colored edge, ascending.
    pub fn colored_neighborhood(&self, v: Vertex, i: u8) -> Result<Vec<Vertex>> {
        self.graph.check_vertex(v)?;
        self.check_color(i)?;
        Ok(self
            .colored_neighbors(v)
            .filter(|&(_, c)| c == i)
            .map(|(w, _)| w)
            .collect())
    }

    /// N_ij(u, v): vertices w with {u,w} colored i and {v,w} colored j.
    pub fn pair_colored_neighborhood(
        &self,
        u: Vertex,
        v: Vertex,
        i: u8,
        j: u8,
    ) -> Result<Vec<Vertex>> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        if u == v {
            return parameter("pair_colored_neighborhood requires u != v");
        }
        self.check_color(i)?;
        self.check_color(j)?;
        let (nu, nv) = (self.graph.neighbors(u), self.graph.neighbors(v));
        let (cu, cv) = (&self.color_adj[u as usize], &self.color_adj[v as usize]);
        let mut out = Vec::new();
        let (mut a, mut b) = (0usize, 0usize);
        while a < nu.len() && b < nv.len() {
            match nu[a].cmp(&nv[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    if cu[a] == i && cv[b] == j {
                        out.push(nu[a]);
                    }
                    a += 1;
                    b += 1;
                }
            }
        }
        Ok(out)
    }

    /// Degree of v restricted to color i.
    pub fn colored_degree(&self, v: Vertex, i: u8) -> usize {
        self.colored_neighbors(v).filter(|&(_, c)| c == i).count()
    }

    pub fn check_color(&self, c: u8) -> Result<()> {
        if (c as u32) < self.r {
            Ok(())
        } else {
            parameter(format!("color {c} out of range for r={}", self.r))
        }
    }

    /// Rewrites the color of one edge; used by the exhaustive coloring sweep.
    pub(crate) fn set_edge_color(&mut self, u: Vertex, v: Vertex, c: u8) {
        debug_assert!((c as u32) < self.r);
        let iu = self.graph.neighbors(u).binary_search(&v).expect("edge exists");
        let iv = self.graph.neighbors(v).binary_search(&u).expect("edge exists");
        self.color_adj[u as usize][iu] = c;
        self.color_adj[v as usize][iv] = c;
    }
}

/// Colors every edge independently and uniformly from `r` colors;
/// deterministic per seed.
pub fn color_uniform(g: Graph, r: u32, seed: Seed) -> Result<ColoredGraph> {
    if r < 2 {
        return parameter(format!("color count r={r} must be >= 2"));
    }
    let mut rng = SplitMix64::substream(seed, &[g.n() as u64, r as u64, 0x636f_6c6f_72]);
    ColoredGraph::from_assignment(g, r, |_, _| rng.next_below(r as u64) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gnp_generate;

    fn star(center_color: u8, leaves: usize) -> ColoredGraph {
        let g = Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v as Vertex))).unwrap();
        ColoredGraph::from_assignment(g, 2, |_, _| center_color).unwrap()
    }

    #[test]
    fn monochromatic_star_neighborhoods() {
        let cg = star(RED, 4);
        assert_eq!(cg.colored_neighborhood(0, RED).unwrap(), vec![1, 2, 3, 4]);
        assert!(cg.colored_neighborhood(0, BLUE).unwrap().is_empty());
        assert!(cg.colored_neighborhood(0, 2).is_err());
    }

    #[test]
    fn edgeless_graph_colors_fine() {
        let cg = color_uniform(Graph::empty(4), 3, Seed(1)).unwrap();
        assert_eq!(cg.colored_neighborhood(0, 0).unwrap(), Vec::<Vertex>::new());
    }

    #[test]
    fn partition_identity() {
        let g = gnp_generate(200, 0.3, Seed(5)).unwrap();
        let cg = color_uniform(g, 2, Seed(6)).unwrap();
        for v in 0..200u32 {
            let total: usize = (0..2)
                .map(|i| cg.colored_neighborhood(v, i).unwrap().len())
                .sum();
            assert_eq!(total, cg.graph().degree(v));
        }
    }

    #[test]
    fn pair_neighborhood_triangle() {
        let g = Graph::complete(3);
        let cg = ColoredGraph::from_assignment(g, 2, |u, v| {
            // c(0,2)=RED, c(1,2)=BLUE, c(0,1)=RED
            if (u, v) == (1, 2) {
                BLUE
            } else {
                RED
            }
        })
        .unwrap();
        assert_eq!(cg.pair_colored_neighborhood(0, 1, RED, BLUE).unwrap(), vec![2]);
        assert!(cg.pair_colored_neighborhood(0, 1, RED, RED).unwrap().is_empty());
        assert!(cg.pair_colored_neighborhood(0, 0, RED, RED).is_err());
    }

    #[test]
    fn pair_neighborhoods_partition_common_neighborhood() {
        let g = gnp_generate(400, 0.3, Seed(8)).unwrap();
        let cg = color_uniform(g, 2, Seed(9)).unwrap();
        let (u, v) = (3, 77);
        let codeg = crate::graph::codegree(cg.graph(), u, v).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        let mut total = 0;
        for i in 0..2u8 {
            for j in 0..2u8 {
                let set = cg.pair_colored_neighborhood(u, v, i, j).unwrap();
                total += set.len();
                for w in set {
                    assert!(seen.insert((w, i, j)));
                }
            }
        }
        let distinct: std::collections::BTreeSet<_> =
            seen.iter().map(|&(w, _, _)| w).collect();
        assert_eq!(distinct.len(), total, "N_ij sets overlap");
        assert_eq!(total, codeg);
    }

    #[test]
    fn pair_colored_sizes_near_np2_over_4() {
        let g = gnp_generate(2000, 0.5, Seed(20)).unwrap();
        let cg = color_uniform(g, 2, Seed(21)).unwrap();
        let mut rng = SplitMix64::new(77);
        let mut total = 0usize;
        let pairs = 100;
        for _ in 0..pairs {
            let u = rng.next_below(2000) as Vertex;
            let mut v = rng.next_below(2000) as Vertex;
            while v == u {
                v = rng.next_below(2000) as Vertex;
            }
            total += cg.pair_colored_neighborhood(u, v, RED, BLUE).unwrap().len();
        }
        let avg = total as f64 / pairs as f64;
        let expect = 2000.0 * 0.25 / 4.0; // np^2/4 = 125
        assert!((avg - expect).abs() < 0.2 * expect, "avg {avg} vs {expect}");
    }

    #[test]
    fn coloring_is_deterministic() {
        let g = gnp_generate(100, 0.5, Seed(1)).unwrap();
        let a = color_uniform(g.clone(), 3, Seed(1)).unwrap();
        let b = color_uniform(g, 3, Seed(1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn per_edge_color_is_uniform_chi_square() {
        // K3 under r=2 has 8 equally likely colorings; chi-square over seeds.
        let mut counts = [0usize; 8];
        let trials = 800;
        for s in 0..trials {
            let cg = color_uniform(Graph::complete(3), 2, Seed(s)).unwrap();
            let idx = (cg.color_of(0, 1).unwrap() as usize)
                | (cg.color_of(0, 2).unwrap() as usize) << 1
                | (cg.color_of(1, 2).unwrap() as usize) << 2;
            counts[idx] += 1;
        }
        let expect = trials as f64 / 8.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expect;
                d * d / expect
            })
            .sum();
        // df = 7, far tail at alpha ~ 1e-3 is 24.3
        assert!(chi2 < 24.3, "chi2 {chi2} counts {counts:?}");
    }

    #[test]
    fn rejects_r_below_two() {
        assert!(color_uniform(Graph::complete(3), 1, Seed(0)).is_err());
    }
}
