//! Finite simple digraphs on dense vertex ids `0..n`.
//!
//! Digons are allowed, loops and parallel arcs are not. Adjacency lists are
//! kept sorted so every traversal visits neighbours in ascending id order.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
}

/// Degree summary of a digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Degrees {
    pub delta_plus: usize,
    pub delta_minus: usize,
    pub delta_zero: usize,
    pub max_in_degree: usize,
}

impl Digraph {
    /// Builds a digraph, rejecting loops, duplicate arcs and out-of-range ids.
    pub fn new<I>(vertex_count: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); vertex_count];
        for (u, v) in arcs {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "arc ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            out[u].push(v);
        }
        let mut inn = vec![Vec::new(); vertex_count];
        let mut arc_count = 0;
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate arc ({u},{})", w[0])));
            }
            for &v in list.iter() {
                inn[v].push(u);
            }
            arc_count += list.len();
        }
        Ok(Digraph { out, inn, arc_count })
    }

    /// Same as [`Digraph::new`] but silently drops loops and duplicates.
    pub fn from_arcs_lossy<I>(vertex_count: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list: Vec<(usize, usize)> = arcs
            .into_iter()
            .filter(|&(u, v)| u != v && u < vertex_count && v < vertex_count)
            .collect();
        list.sort_unstable();
        list.dedup();
        Digraph::new(vertex_count, list).expect("filtered arc list is valid")
    }

    pub fn empty(vertex_count: usize) -> Self {
        Digraph {
            out: vec![Vec::new(); vertex_count],
            inn: vec![Vec::new(); vertex_count],
            arc_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.out.len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.out.len() && self.out[u].binary_search(&v).is_ok()
    }

    pub fn has_digon(&self) -> bool {
        self.arcs().any(|(u, v)| u < v && self.has_arc(v, u))
    }

    pub fn degrees(&self) -> Degrees {
        if self.out.is_empty() {
            return Degrees::default();
        }
        let delta_plus = self.out.iter().map(Vec::len).min().unwrap_or(0);
        let delta_minus = self.inn.iter().map(Vec::len).min().unwrap_or(0);
        let max_in_degree = self.inn.iter().map(Vec::len).max().unwrap_or(0);
        Degrees {
            delta_plus,
            delta_minus,
            delta_zero: delta_plus.min(delta_minus),
            max_in_degree,
        }
    }

    pub fn min_out_degree(&self) -> usize {
        self.degrees().delta_plus
    }

    /// The digraph obtained by reversing every arc.
    pub fn converse(&self) -> Digraph {
        Digraph {
            out: self.inn.clone(),
            inn: self.out.clone(),
            arc_count: self.arc_count,
        }
    }

    /// Subdigraph induced by `vertices`, relabelled to `0..k` in ascending
    /// original-id order. Returns the digraph and the map new id -> old id.
    pub fn induced(&self, vertices: &[usize]) -> (Digraph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let arcs = keep.iter().flat_map(|&u| {
            let index = &index;
            self.out[u]
                .iter()
                .filter(move |&&v| index[v] != usize::MAX)
                .map(move |&v| (index[u], index[v]))
        });
        let sub = Digraph::new(keep.len(), arcs.collect::<Vec<_>>()).expect("induced subdigraph is simple");
        (sub, keep)
    }

    /// Spanning subdigraph without the arc `(u, v)`.
    pub fn without_arc(&self, u: usize, v: usize) -> Digraph {
        Digraph::new(self.vertex_count(), self.arcs().filter(|&a| a != (u, v)))
            .expect("subset of a simple arc set")
    }

    /// Whether the subdigraph induced by the vertices flagged in `alive` has a
    /// directed cycle.
    pub fn has_cycle_within(&self, alive: &[bool]) -> bool {
        // Kahn's algorithm restricted to `alive`.
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        let mut remaining = 0;
        for v in 0..n {
            if alive[v] {
                remaining += 1;
                indeg[v] = self.inn[v].iter().filter(|&&u| alive[u]).count();
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| alive[v] && indeg[v] == 0).collect();
        while let Some(u) = stack.pop() {
            remaining -= 1;
            for &v in &self.out[u] {
                if alive[v] {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        stack.push(v);
                    }
                }
            }
        }
        remaining > 0
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_cycle_within(&vec![true; self.vertex_count()])
    }

    /// Whether `path` is a directed path (no repeated vertex, consecutive
    /// vertices joined by arcs).
    pub fn is_dipath(&self, path: &[usize]) -> bool {
        let n = self.vertex_count();
        if path.iter().any(|&v| v >= n) {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in path {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        path.windows(2).all(|w| self.has_arc(w[0], w[1]))
    }

    /// Parses the edge-list text format: an `n <count>` header, then one
    /// `<tail> <head>` pair per line. Lines starting with `#` are comments.
    pub fn parse_edge_list(text: &str) -> Result<Digraph> {
        let mut vertex_count: Option<usize> = None;
        let mut arcs = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match vertex_count {
                None => {
                    if fields.len() != 2 || fields[0] != "n" {
                        return Err(err(format!("expected header `n <vertex_count>`, found `{line}`")));
                    }
                    let n = fields[1]
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad vertex count: {e}")))?;
                    vertex_count = Some(n);
                }
                Some(n) => {
                    if fields.len() != 2 {
                        return Err(err(format!("expected `<tail> <head>`, found `{line}`")));
                    }
                    let u = fields[0].parse::<usize>().map_err(|e| err(format!("bad tail: {e}")))?;
                    let v = fields[1].parse::<usize>().map_err(|e| err(format!("bad head: {e}")))?;
                    if u >= n || v >= n {
                        return Err(err(format!("arc ({u},{v}) out of range for {n} vertices")));
                    }
                    if u == v {
                        return Err(err(format!("loop at vertex {u}")));
                    }
                    if !seen.insert((u, v)) {
                        return Err(err(format!("duplicate arc ({u},{v})")));
                    }
                    arcs.push((u, v));
                }
            }
        }
        let n = vertex_count.ok_or(Error::Parse {
            line: 0,
            message: "missing `n <vertex_count>` header".into(),
        })?;
        Digraph::new(n, arcs)
    }

    /// Canonical edge-list text: header, then arcs in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n {}", self.vertex_count());
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    /// SHA-256 (hex) of the canonical edge list; certificates refer to their
    /// host through this value.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_edge_list().as_bytes()))
    }
}

/// Small constructors used throughout tests and generators.
pub mod families {
    use super::Digraph;

    pub fn directed_cycle(k: usize) -> Digraph {
        Digraph::new(k, (0..k).map(|i| (i, (i + 1) % k))).expect("k >= 2")
    }

    pub fn directed_path(vertices: usize) -> Digraph {
        Digraph::new(vertices, (1..vertices).map(|i| (i - 1, i))).expect("simple")
    }

    pub fn complete_digraph(n: usize) -> Digraph {
        Digraph::new(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))))
            .expect("simple")
    }

    pub fn transitive_tournament(n: usize) -> Digraph {
        Digraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn degrees_of_small_families() {
        let k3 = complete_digraph(3).degrees();
        assert_eq!((k3.delta_plus, k3.delta_zero), (2, 2));
        let c5 = directed_cycle(5).degrees();
        assert_eq!((c5.delta_plus, c5.delta_minus, c5.max_in_degree), (1, 1, 1));
        let star = Digraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap().degrees();
        assert_eq!((star.delta_plus, star.max_in_degree), (0, 1));
        assert_eq!(Digraph::empty(0).degrees(), Degrees::default());
    }

    #[test]
    fn converse_examples() {
        let digon = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon.converse(), digon);
        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(arc.converse().arcs().collect::<Vec<_>>(), vec![(1, 0)]);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Digraph::new(2, [(0, 0)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
        assert!(Digraph::new(2, [(0, 2)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn edge_list_parsing() {
        let g = Digraph::parse_edge_list("# c4\nn 4\n0 1\n1 2\n\n2 3\n3 0\n").unwrap();
        assert_eq!(g, directed_cycle(4));
        assert_eq!(Digraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        for bad in ["0 1\n", "n 3\n0 0\n", "n 3\n0 1\n0 1\n", "n 3\n0 5\n", "n x\n", "n 3\n0 1 2\n", ""] {
            assert!(Digraph::parse_edge_list(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = complete_digraph(5);
        let (sub, map) = g.induced(&[4, 1, 3]);
        assert_eq!(map, vec![1, 3, 4]);
        assert_eq!(sub, complete_digraph(3));
    }

    #[test]
    fn acyclicity() {
        assert!(transitive_tournament(5).is_acyclic());
        assert!(!directed_cycle(3).is_acyclic());
        let g = directed_cycle(3);
        assert!(!g.has_cycle_within(&[true, true, false]));
    }

    #[test]
    fn hash_depends_on_arcs_only() {
        let a = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let b = Digraph::new(3, [(1, 2), (0, 1)]).unwrap();
        assert_eq!(a.content_hash(), b.content_hash());
        assert_ne!(a.content_hash(), a.converse().content_hash());
    }
}
