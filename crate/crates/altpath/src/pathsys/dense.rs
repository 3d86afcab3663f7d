//! Layered construction of alternating path systems in the dense regime.
//!
//! For a pair (x, y) the neighborhood splits into four disjoint quarter sets
//! keyed by incident edge colors; chains of layers W_1..W_{ell-1} and
//! Z_1..Z_{ell-1} wired by color-constrained matchings then carry one
//! alternating path per surviving chain. When the total-path bound
//! n/(ell-1) binds, a second round over the unused quarter-set remainders
//! tops the system up.

use super::PathSystem;
use crate::colored::{ColoredGraph, BLUE, RED};
use crate::error::{parameter, Result};
use crate::graph::Vertex;
use crate::matching::dense_pair_matching_colored;
use std::collections::HashMap;

fn other(c: u8) -> u8 {
    1 - c
}

/// The four disjoint quarter sets around a pair: every neighbor of x or y
/// lands in exactly one, keyed by the color of its edge toward x (or toward
/// y when it only neighbors y; common neighbors go by the (c(xw), c(yw))
/// pattern so that x-side sets carry an x-edge of the set's color and y-side
/// sets carry a y-edge of the set's color).
struct QuarterSets {
    x_red: Vec<Vertex>,
    x_blue: Vec<Vertex>,
    y_red: Vec<Vertex>,
    y_blue: Vec<Vertex>,
}

fn quarter_sets(cg: &ColoredGraph, x: Vertex, y: Vertex) -> QuarterSets {
    let mut q = QuarterSets {
        x_red: Vec::new(),
        x_blue: Vec::new(),
        y_red: Vec::new(),
        y_blue: Vec::new(),
    };
    let g = cg.graph();
    for (w, cx) in cg.colored_neighbors(x) {
        if w == y {
            continue;
        }
        match cg.color_of(y, w) {
            None => {
                // exclusive neighbor of x
                if cx == RED {
                    q.x_red.push(w)
                } else {
                    q.x_blue.push(w)
                }
            }
            Some(cy) => match (cx, cy) {
                (BLUE, BLUE) => q.x_blue.push(w),
                (RED, RED) => q.x_red.push(w),
                (RED, BLUE) => q.y_blue.push(w),
                (BLUE, RED) => q.y_red.push(w),
                _ => unreachable!("two-color construction"),
            },
        }
    }
    for (w, cy) in cg.colored_neighbors(y) {
        if w == x || g.has_edge(x, w) {
            continue; // common neighbors already placed
        }
        if cy == RED {
            q.y_red.push(w)
        } else {
            q.y_blue.push(w)
        }
    }
    q
}

/// Takes the `k` lowest-index vertices from `candidates` that are still
/// unused, marking them used.
fn take_lowest(candidates: &[Vertex], k: usize, used: &mut [bool]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(k);
    for &w in candidates {
        if out.len() == k {
            break;
        }
        if !used[w as usize] {
            used[w as usize] = true;
            out.push(w);
        }
    }
    out
}

/// Composes the color-constrained matchings along one chain of layers and
/// returns the complete x–y paths. `layers[0]` neighbors x with
/// `first_color`; the matching into `layers[i]` must use color
/// `first_color` when i is even and the other color when i is odd, so the
/// whole path alternates.
fn run_chain(
    cg: &ColoredGraph,
    x: Vertex,
    y: Vertex,
    layers: &[Vec<Vertex>],
    first_color: u8,
) -> Result<Vec<Vec<Vertex>>> {
    if layers.iter().any(|l| l.is_empty()) {
        return Ok(Vec::new());
    }
    let mut links: Vec<HashMap<Vertex, Vertex>> = Vec::new();
    for i in 1..layers.len() {
        let color = if i % 2 == 0 { first_color } else { other(first_color) };
        let m = dense_pair_matching_colored(cg, &layers[i - 1], &layers[i], color)?;
        links.push(m.pairs.into_iter().collect());
    }
    let mut paths = Vec::new();
    'next: for &start in &layers[0] {
        let mut path = Vec::with_capacity(layers.len() + 2);
        path.push(x);
        path.push(start);
        let mut cur = start;
        for link in &links {
            match link.get(&cur) {
                Some(&nxt) => {
                    path.push(nxt);
                    cur = nxt;
                }
                None => continue 'next,
            }
        }
        path.push(y);
        paths.push(path);
    }
    Ok(paths)
}

/// One round of the layered construction: W and Z chains with first/last
/// layers drawn from the quarter sets and middle layers of `mid_size` drawn
/// lowest-index-first from `mid_pool`.
#[allow(clippy::too_many_arguments)]
fn build_round(
    cg: &ColoredGraph,
    x: Vertex,
    y: Vertex,
    ell: usize,
    w_first: Vec<Vertex>,
    z_first: Vec<Vertex>,
    w_last: Vec<Vertex>,
    z_last: Vec<Vertex>,
    mid_size: usize,
    mid_pool: &[Vertex],
    used: &mut [bool],
) -> Result<Vec<Vec<Vertex>>> {
    let mut w_layers = vec![w_first];
    let mut z_layers = vec![z_first];
    for _i in 2..=ell.saturating_sub(2) {
        w_layers.push(take_lowest(mid_pool, mid_size, used));
        z_layers.push(take_lowest(mid_pool, mid_size, used));
    }
    w_layers.push(w_last);
    z_layers.push(z_last);
    let mut paths = run_chain(cg, x, y, &w_layers, RED)?;
    paths.extend(run_chain(cg, x, y, &z_layers, BLUE)?);
    Ok(paths)
}

/// Builds a system of internally disjoint alternating x–y paths of length
/// `ell >= 3` in a 2-colored dense graph. The regime (one covering round vs
/// two) is chosen by comparing n/(ell-1) with n*p_hat*(1 - p_hat/2) on the
/// empirical density p_hat. Degenerate inputs yield an empty system.
pub fn dense_construct(cg: &ColoredGraph, x: Vertex, y: Vertex, ell: usize) -> Result<PathSystem> {
    if ell < 3 {
        return parameter(format!("dense_construct needs ell >= 3, got {ell}"));
    }
    cg.graph().check_vertex(x)?;
    cg.graph().check_vertex(y)?;
    if x == y {
        return parameter("dense_construct needs x != y");
    }
    let g = cg.graph();
    let n = g.n();
    if g.degree(x) == 0 || g.degree(y) == 0 {
        return Ok(PathSystem::empty(x, y, ell));
    }
    let q = quarter_sets(cg, x, y);
    let p_hat = g.density();
    let path_bound = n as f64 / (ell as f64 - 1.0);
    let deg_bound = n as f64 * p_hat * (1.0 - p_hat / 2.0);
    let two_round = ell >= 4 && path_bound <= deg_bound;

    // `used` tracks vertices consumed by middle layers; the quarter sets and
    // their round-2 remainders are kept disjoint by slicing instead.
    let mut used = vec![false; n];
    used[x as usize] = true;
    used[y as usize] = true;
    // S: vertices adjacent to neither endpoint.
    let s_pool: Vec<Vertex> = (0..n as Vertex)
        .filter(|&w| w != x && w != y && !g.has_edge(x, w) && !g.has_edge(y, w))
        .collect();

    // Chain ends: the last edge of a length-ell path is red exactly when ell
    // is odd, which dictates which y-side quarter closes each chain.
    let (w_last_full, z_last_full) = if ell % 2 == 1 {
        (q.y_red.clone(), q.y_blue.clone())
    } else {
        (q.y_blue.clone(), q.y_red.clone())
    };

    let mut paths;
    if !two_round {
        // Single covering round: full quarter sets at the ends, middle layers
        // of about (n p / 2)(1 - p / 2) lowest-index vertices from S.
        let middles = 2 * (ell - 3);
        let requested = (n as f64 * p_hat / 2.0 * (1.0 - p_hat / 2.0)).floor() as usize;
        let mid_size = if middles == 0 {
            0
        } else {
            requested.min(s_pool.len() / middles)
        };
        paths = build_round(
            cg,
            x,
            y,
            ell,
            q.x_red.clone(),
            q.x_blue.clone(),
            w_last_full,
            z_last_full,
            mid_size,
            &s_pool,
            &mut used,
        )?;
    } else {
        // Round 1 covers S with layer size s / (2(ell-3)); round 2 covers the
        // quarter-set remainders U' with layer size |U'| / (2(ell-1)).
        let s = s_pool.len();
        let r1 = (s / (2 * (ell - 3)))
            .min(q.x_red.len())
            .min(q.x_blue.len())
            .min(q.y_red.len())
            .min(q.y_blue.len());
        let take = |set: &[Vertex]| set[..r1].to_vec();
        let (w_last_1, z_last_1) = if ell % 2 == 1 {
            (take(&q.y_red), take(&q.y_blue))
        } else {
            (take(&q.y_blue), take(&q.y_red))
        };
        paths = build_round(
            cg,
            x,
            y,
            ell,
            take(&q.x_red),
            take(&q.x_blue),
            w_last_1,
            z_last_1,
            r1,
            &s_pool,
            &mut used,
        )?;

        // Remainders of the quarter sets form U'.
        let rem = |set: &[Vertex]| set[r1..].to_vec();
        let (xr2, xb2, yr2, yb2) = (rem(&q.x_red), rem(&q.x_blue), rem(&q.y_red), rem(&q.y_blue));
        let k2 = xr2.len() + xb2.len() + yr2.len() + yb2.len();
        let r2 = (k2 / (2 * (ell - 1)))
            .min(xr2.len())
            .min(xb2.len())
            .min(yr2.len())
            .min(yb2.len());
        if r2 > 0 {
            let take2 = |set: &[Vertex]| set[..r2].to_vec();
            let mut u_rest: Vec<Vertex> = Vec::with_capacity(k2);
            for set in [&xr2, &xb2, &yr2, &yb2] {
                u_rest.extend(set[r2..].iter().copied());
            }
            u_rest.sort_unstable();
            let (w_last_2, z_last_2) = if ell % 2 == 1 {
                (take2(&yr2), take2(&yb2))
            } else {
                (take2(&yb2), take2(&yr2))
            };
            let round2 = build_round(
                cg,
                x,
                y,
                ell,
                take2(&xr2),
                take2(&xb2),
                w_last_2,
                z_last_2,
                r2,
                &u_rest,
                &mut used,
            )?;
            paths.extend(round2);
        }
    }
    let ps = PathSystem { u: x, v: y, ell, paths };
    debug_assert!(
        super::verify_path_system(cg, &ps).is_ok(),
        "dense construction produced an invalid system: {:?}",
        super::verify_path_system(cg, &ps)
    );
    Ok(ps)
}
