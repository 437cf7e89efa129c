//! Brute-force ground truth for small instances. Nothing here shares code
//! with the finders beyond the digraph type and the certificate format.

use crate::certificate::{ArcPath, SubdivisionCertificate};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::flow::is_vertex_cut;
use crate::pattern::PatternSpec;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest host for [`brute_min_vertex_cut`].
pub const CUT_LIMIT: usize = 12;

struct Search<'a> {
    host: &'a Digraph,
    pattern: &'a Digraph,
    budget: u64,
    nodes: u64,
    image: Vec<Option<usize>>,
    /// Host vertex is a branch image or an internal path vertex.
    used: Vec<bool>,
    paths: Vec<ArcPath>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// All simple dipaths from `a` to `b` whose internal vertices are unused,
    /// shortest first.
    fn candidate_paths(&mut self, a: usize, b: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut stack = vec![a];
        let mut on = vec![false; self.host.vertex_count()];
        on[a] = true;
        self.collect(b, &mut stack, &mut on, &mut out)?;
        out.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
        Ok(out)
    }

    fn collect(&mut self, b: usize, stack: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) -> Result<()> {
        self.tick()?;
        let cur = *stack.last().expect("nonempty");
        for &w in self.host.out_neighbours(cur) {
            if w == b {
                let mut p = stack.clone();
                p.push(b);
                out.push(p);
            } else if !on[w] && !self.used[w] {
                on[w] = true;
                stack.push(w);
                self.collect(b, stack, on, out)?;
                stack.pop();
                on[w] = false;
            }
        }
        Ok(())
    }

    /// Realizes the pattern arcs in `arcs[from..]`, all of whose endpoints
    /// are mapped.
    fn realize(&mut self, arcs: &[(usize, usize)], from: usize, next_vertex: usize) -> Result<bool> {
        let Some(&(u, v)) = arcs.get(from) else {
            return self.place(next_vertex);
        };
        let (a, b) = (self.image[u].expect("mapped"), self.image[v].expect("mapped"));
        for path in self.candidate_paths(a, b)? {
            self.tick()?;
            let internal = path[1..path.len() - 1].to_vec();
            for &w in &internal {
                self.used[w] = true;
            }
            self.paths.push(ArcPath { tail: u, head: v, path });
            if self.realize(arcs, from + 1, next_vertex)? {
                return Ok(true);
            }
            self.paths.pop();
            for &w in &internal {
                self.used[w] = false;
            }
        }
        Ok(false)
    }

    /// Maps pattern vertex `p` (and recursively the rest), realizing every
    /// arc between `p` and earlier vertices right away.
    fn place(&mut self, p: usize) -> Result<bool> {
        if p == self.pattern.vertex_count() {
            return Ok(true);
        }
        self.tick()?;
        let (need_out, need_in) = (self.pattern.out_degree(p), self.pattern.in_degree(p));
        let arcs: Vec<(usize, usize)> = self
            .pattern
            .out_neighbours(p)
            .iter()
            .filter(|&&q| q < p)
            .map(|&q| (p, q))
            .chain(self.pattern.in_neighbours(p).iter().filter(|&&q| q < p).map(|&q| (q, p)))
            .collect();
        for h in self.host.vertices() {
            if self.used[h] || self.host.out_degree(h) < need_out || self.host.in_degree(h) < need_in {
                continue;
            }
            self.image[p] = Some(h);
            self.used[h] = true;
            if self.realize(&arcs, 0, p + 1)? {
                return Ok(true);
            }
            self.used[h] = false;
            self.image[p] = None;
        }
        Ok(false)
    }
}

/// Exhaustive search for a subdivision of `pattern` in `host`, returning a
/// witness certificate. Refuses with [`Error::BudgetExceeded`] once `budget`
/// search nodes have been expanded.
pub fn oracle_subdivision(host: &Digraph, pattern: &PatternSpec, budget: u64) -> Result<Option<SubdivisionCertificate>> {
    let f = &pattern.pattern;
    if f.vertex_count() > host.vertex_count() || f.arc_count() > host.arc_count() {
        return Ok(None);
    }
    let mut search = Search {
        host,
        pattern: f,
        budget,
        nodes: 0,
        image: vec![None; f.vertex_count()],
        used: vec![false; host.vertex_count()],
        paths: Vec::new(),
    };
    if !search.place(0)? {
        return Ok(None);
    }
    let mut cert = SubdivisionCertificate {
        host_hash: host.content_hash(),
        pattern: pattern.clone(),
        branch_map: search.image.iter().enumerate().map(|(p, h)| (p, h.expect("complete map"))).collect(),
        arc_paths: search.paths,
    };
    cert.canonicalize();
    Ok(Some(cert))
}

pub fn oracle_has_subdivision(host: &Digraph, pattern: &PatternSpec) -> Result<bool> {
    Ok(oracle_subdivision(host, pattern, DEFAULT_BUDGET)?.is_some())
}

/// Size of a minimum `(S,T)`-vertex-cut by enumerating vertex subsets in
/// order of size. Cuts may contain vertices of `S` and `T`.
pub fn brute_min_vertex_cut(d: &Digraph, sources: &[usize], targets: &[usize]) -> Result<usize> {
    let n = d.vertex_count();
    if n > CUT_LIMIT {
        return Err(Error::SizeGuard { vertices: n, limit: CUT_LIMIT });
    }
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let cut: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if is_vertex_cut(d, sources, targets, &cut) {
            best = size;
        }
    }
    Ok(best)
}
