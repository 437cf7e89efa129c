//! Extraction of subdivisions under minimum out-degree hypotheses.
//!
//! All finders work on vertex masks over the original host rather than on
//! relabelled copies, and break ties by smallest vertex id.

mod fork;
mod paths;

pub use fork::{find_triple_path, find_two_block_cycle, Fork, ForkVariant};
pub use paths::{
    blocked_path_block_lengths, find_blocked_path, find_c_k_1, find_long_cycle,
};

use crate::digraph::Digraph;
use crate::error::Error;

/// Greedy dipath from `start` inside `alive`, always stepping to the
/// smallest-id unvisited out-neighbour, until the end has none left. Every
/// out-neighbour (inside `alive`) of the returned path's last vertex lies on
/// the path.
pub(crate) fn maximal_path(d: &Digraph, start: usize, alive: &[bool]) -> Vec<usize> {
    let mut on_path = vec![false; d.vertex_count()];
    let mut path = vec![start];
    on_path[start] = true;
    let mut cur = start;
    while let Some(&w) = d.out_neighbours(cur).iter().find(|&&w| alive[w] && !on_path[w]) {
        on_path[w] = true;
        path.push(w);
        cur = w;
    }
    path
}

/// Greedy dipath with exactly `len` arcs from `start` inside `alive`, or
/// `None` if the walk gets stuck.
pub(crate) fn exact_walk(d: &Digraph, start: usize, len: usize, alive: &[bool]) -> Option<Vec<usize>> {
    let mut on_path = vec![false; d.vertex_count()];
    let mut path = vec![start];
    on_path[start] = true;
    let mut cur = start;
    for _ in 0..len {
        let &w = d.out_neighbours(cur).iter().find(|&&w| alive[w] && !on_path[w])?;
        on_path[w] = true;
        path.push(w);
        cur = w;
    }
    Some(path)
}

/// Cycle closed at the end of a maximal path from `start`: runs from the
/// earliest out-neighbour of the terminal vertex along the path to the
/// terminal. Its length is at least one more than the terminal's out-degree
/// inside `alive`.
pub(crate) fn cycle_from_maximal_path(d: &Digraph, start: usize, alive: &[bool]) -> Option<Vec<usize>> {
    let path = maximal_path(d, start, alive);
    let u = *path.last()?;
    let pos = path.iter().position(|&p| p != u && d.has_arc(u, p) && alive[p])?;
    Some(path[pos..].to_vec())
}

/// The error to report when a construction fails: an honest miss if the
/// degree bound fails, a defect otherwise.
pub(crate) fn failure(d: &Digraph, bound: usize, what: &str, state: String) -> Error {
    let have = d.min_out_degree();
    if have < bound {
        Error::HypothesisUnmet(format!("{what}: minimum out-degree {have} is below the bound {bound} ({state})"))
    } else {
        Error::Internal(format!("{what}: construction failed although minimum out-degree {have} >= {bound}: {state}"))
    }
}
