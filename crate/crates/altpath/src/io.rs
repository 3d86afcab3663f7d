//! Plain-text interchange formats.
//!
//! Graph: first line `n m`, then m lines `u v` with u < v, sorted. A colored
//! graph adds a third column `c`; the color count is recovered as
//! max(c) + 1, floored at 2. Path system: header `u v ell t`, then t lines
//! of ell + 1 vertex indices. Codebook: header `m n r`, then n lines of m
//! symbols.

use crate::colored::ColoredGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracle::codes::CodeBook;
use crate::pathsys::PathSystem;
use std::collections::HashMap;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_colored(cg: &ColoredGraph) -> String {
    let g = cg.graph();
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v} {}\n", cg.color_of(u, v).unwrap()));
    }
    out
}

/// A graph file is plain (2 columns) or colored (3 columns).
pub enum GraphFile {
    Plain(Graph),
    Colored(ColoredGraph),
}

pub fn read_graph_file(text: &str) -> Result<GraphFile> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = match lines.next() {
        Some(h) => h,
        None => return parse_err("empty graph file"),
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return parse_err(format!("graph header must be `n m`, got {header:?}"));
    }
    let n: usize = head[0].parse().map_err(|e| Error::Parse(format!("bad n: {e}")))?;
    let m: usize = head[1].parse().map_err(|e| Error::Parse(format!("bad m: {e}")))?;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut colors: HashMap<(Vertex, Vertex), u8> = HashMap::new();
    let mut colored = None;
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (fields.len(), colored) {
            (2, None) => colored = Some(false),
            (3, None) => colored = Some(true),
            (2, Some(false)) | (3, Some(true)) => {}
            _ => return parse_err(format!("row {i}: inconsistent column count")),
        }
        let u: Vertex = fields[0].parse().map_err(|e| Error::Parse(format!("row {i}: {e}")))?;
        let v: Vertex = fields[1].parse().map_err(|e| Error::Parse(format!("row {i}: {e}")))?;
        if u >= v {
            return parse_err(format!("row {i}: edges must satisfy u < v"));
        }
        edges.push((u, v));
        if fields.len() == 3 {
            let c: u8 = fields[2].parse().map_err(|e| Error::Parse(format!("row {i}: {e}")))?;
            colors.insert((u, v), c);
        }
    }
    if edges.len() != m {
        return parse_err(format!("header claims {m} edges, found {}", edges.len()));
    }
    let g = Graph::from_edges(n, edges.iter().copied())?;
    if g.edge_count() != m {
        return parse_err("duplicate edges in file");
    }
    if colored == Some(true) {
        let r = colors.values().map(|&c| c as u32 + 1).max().unwrap_or(2).max(2);
        let cg = ColoredGraph::from_assignment(g, r, |u, v| colors[&(u, v)])?;
        Ok(GraphFile::Colored(cg))
    } else {
        Ok(GraphFile::Plain(g))
    }
}

pub fn read_colored(text: &str) -> Result<ColoredGraph> {
    match read_graph_file(text)? {
        GraphFile::Colored(cg) => Ok(cg),
        // an edgeless file has no rows to sniff; its color map is empty
        GraphFile::Plain(g) if g.edge_count() == 0 => {
            ColoredGraph::from_assignment(g, 2, |_, _| 0)
        }
        GraphFile::Plain(_) => parse_err("expected a colored graph (3 columns)"),
    }
}

pub fn read_plain(text: &str) -> Result<Graph> {
    match read_graph_file(text)? {
        GraphFile::Plain(g) => Ok(g),
        GraphFile::Colored(_) => parse_err("expected an uncolored graph (2 columns)"),
    }
}

pub fn write_path_system(ps: &PathSystem) -> String {
    let mut out = format!("{} {} {} {}\n", ps.u, ps.v, ps.ell, ps.paths.len());
    for path in &ps.paths {
        let words: Vec<String> = path.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_path_system(text: &str) -> Result<PathSystem> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = match lines.next() {
        Some(h) => h,
        None => return parse_err("empty path-system file"),
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 4 {
        return parse_err("path-system header must be `u v ell t`");
    }
    let u: Vertex = head[0].parse().map_err(|e| Error::Parse(format!("bad u: {e}")))?;
    let v: Vertex = head[1].parse().map_err(|e| Error::Parse(format!("bad v: {e}")))?;
    let ell: usize = head[2].parse().map_err(|e| Error::Parse(format!("bad ell: {e}")))?;
    let t: usize = head[3].parse().map_err(|e| Error::Parse(format!("bad t: {e}")))?;
    let mut paths = Vec::with_capacity(t);
    for (i, line) in lines.enumerate() {
        let path: std::result::Result<Vec<Vertex>, _> =
            line.split_whitespace().map(|w| w.parse()).collect();
        let path = path.map_err(|e| Error::Parse(format!("path {i}: {e}")))?;
        if path.len() != ell + 1 {
            return parse_err(format!("path {i}: expected {} vertices", ell + 1));
        }
        paths.push(path);
    }
    if paths.len() != t {
        return parse_err(format!("header claims {t} paths, found {}", paths.len()));
    }
    Ok(PathSystem { u, v, ell, paths })
}

pub fn write_codebook(cb: &CodeBook) -> String {
    let mut out = format!("{} {} {}\n", cb.m, cb.words.len(), cb.r);
    for word in &cb.words {
        let words: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_codebook(text: &str) -> Result<CodeBook> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = match lines.next() {
        Some(h) => h,
        None => return parse_err("empty codebook file"),
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 {
        return parse_err("codebook header must be `m n r`");
    }
    let m: usize = head[0].parse().map_err(|e| Error::Parse(format!("bad m: {e}")))?;
    let n: usize = head[1].parse().map_err(|e| Error::Parse(format!("bad n: {e}")))?;
    let r: u32 = head[2].parse().map_err(|e| Error::Parse(format!("bad r: {e}")))?;
    let mut words = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let word: std::result::Result<Vec<u8>, _> =
            line.split_whitespace().map(|w| w.parse()).collect();
        words.push(word.map_err(|e| Error::Parse(format!("word {i}: {e}")))?);
    }
    if words.len() != n {
        return parse_err(format!("header claims {n} words, found {}", words.len()));
    }
    CodeBook::new(m, r, words)
}
