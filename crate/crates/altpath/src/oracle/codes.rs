//! The coding correspondence: colorings of a complete bipartite host
//! K_{m,n} are codebooks of n words over [r]^m, and Hamming distance between
//! words equals the alternating-P2 count between their vertices.

use crate::colored::ColoredGraph;
use crate::error::{parameter, Result};
use crate::graph::{Graph, Vertex};

/// A block code: `words.len()` words of length `m` over alphabet 0..r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBook {
    pub m: usize,
    pub r: u32,
    pub words: Vec<Vec<u8>>,
}

impl CodeBook {
    pub fn new(m: usize, r: u32, words: Vec<Vec<u8>>) -> Result<CodeBook> {
        if r < 2 {
            return parameter("codebook alphabet needs r >= 2");
        }
        for (i, w) in words.iter().enumerate() {
            if w.len() != m {
                return parameter(format!("word {i} has length {} != m = {m}", w.len()));
            }
            if w.iter().any(|&s| s as u32 >= r) {
                return parameter(format!("word {i} has a symbol outside 0..{r}"));
            }
        }
        Ok(CodeBook { m, r, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Number of coordinates where two equal-length words differ.
pub fn hamming(x: &[u8], y: &[u8]) -> Result<usize> {
    if x.len() != y.len() {
        return parameter("hamming distance needs equal-length words");
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

fn check_complete_bipartite(cg: &ColoredGraph, m: usize) -> Result<usize> {
    let total = cg.n();
    if m == 0 || m >= total {
        return parameter(format!("side split m = {m} invalid for n = {total}"));
    }
    let n_side = total - m;
    let g = cg.graph();
    let expected = m * n_side;
    if g.edge_count() != expected {
        return parameter("host is not complete bipartite on [m] and [m..m+n)");
    }
    for u in 0..m as Vertex {
        for v in m as Vertex..total as Vertex {
            if !g.has_edge(u, v) {
                return parameter("host is not complete bipartite on [m] and [m..m+n)");
            }
        }
    }
    Ok(n_side)
}

/// Reads the codebook off a colored complete bipartite host: word v has
/// c_v(u) = color({v, u}) for u in the m-side.
pub fn code_from_coloring(cg: &ColoredGraph, m: usize) -> Result<CodeBook> {
    let n_side = check_complete_bipartite(cg, m)?;
    let words = (0..n_side)
        .map(|i| {
            let v = (m + i) as Vertex;
            (0..m as Vertex)
                .map(|u| cg.color_of(v, u).expect("complete host"))
                .collect()
        })
        .collect();
    CodeBook::new(m, cg.r(), words)
}

/// Builds the colored complete bipartite host encoding a codebook.
pub fn coloring_from_code(cb: &CodeBook) -> Result<ColoredGraph> {
    if cb.is_empty() {
        return parameter("codebook has no words");
    }
    let m = cb.m;
    if m == 0 {
        return parameter("codebook word length must be >= 1");
    }
    let n_side = cb.len();
    let g = Graph::from_edges(
        m + n_side,
        (0..m as Vertex).flat_map(|u| {
            (m as Vertex..(m + n_side) as Vertex).map(move |v| (u, v))
        }),
    )?;
    ColoredGraph::from_assignment(g, cb.r, |u, v| {
        // canonical edges have u < v, so u is on the m-side
        cb.words[v as usize - m][u as usize]
    })
}
