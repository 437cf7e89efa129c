//! Vertex-disjoint path systems via unit vertex capacities.
//!
//! Every vertex `v` is split into `v_in -> v_out` with capacity one; arcs and
//! the source/sink attachments get capacity larger than any cut, so a
//! minimum cut consists of split edges only and reads off as a vertex cut.

use std::collections::VecDeque;

use crate::digraph::Digraph;

/// Pairwise vertex-disjoint dipaths in a host digraph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks disjointness and that every path follows arcs of `host`.
    pub fn is_valid_in(&self, host: &Digraph) -> bool {
        let mut used = vec![false; host.vertex_count()];
        for p in &self.paths {
            if p.is_empty() || !host.is_dipath(p) {
                return false;
            }
            for &v in p {
                if std::mem::replace(&mut used[v], true) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MengerPair {
    pub system: PathSystem,
    /// An (S,T)-vertex-cut with exactly as many vertices as there are paths.
    pub cut: Vec<usize>,
}

struct Network {
    head: Vec<usize>,
    cap: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: usize) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// BFS in the residual network; returns the predecessor edge of every
    /// reached node.
    fn residual_bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut pred = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let w = self.head[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    pred[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        pred
    }

    fn reached(&self, source: usize) -> Vec<bool> {
        let pred = self.residual_bfs(source);
        (0..self.adj.len()).map(|v| v == source || pred[v].is_some()).collect()
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        loop {
            let pred = self.residual_bfs(source);
            if pred[sink].is_none() {
                return flow;
            }
            // Every augmenting path crosses a unit split edge, so push one unit.
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path edge");
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.head[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// Maximum system of vertex-disjoint (S,T)-dipaths together with a minimum
/// (S,T)-vertex-cut of the same size. Vertices of `S ∩ T` are length-0 paths.
pub fn disjoint_paths(d: &Digraph, sources: &[usize], targets: &[usize]) -> MengerPair {
    let n = d.vertex_count();
    if sources.is_empty() || targets.is_empty() {
        return MengerPair { system: PathSystem::default(), cut: Vec::new() };
    }
    let big = n + 1;
    let vin = |v: usize| 2 * v;
    let vout = |v: usize| 2 * v + 1;
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    let mut is_source = vec![false; n];
    let mut is_target = vec![false; n];
    for &v in sources {
        is_source[v] = true;
    }
    for &v in targets {
        is_target[v] = true;
    }
    let mut source_edge = vec![usize::MAX; n];
    for v in 0..n {
        if is_source[v] {
            source_edge[v] = net.head.len();
            net.add_edge(s, vin(v), big);
        }
    }
    let mut split_edge = vec![0usize; n];
    for v in 0..n {
        split_edge[v] = net.head.len();
        net.add_edge(vin(v), vout(v), 1);
        for &w in d.out_neighbours(v) {
            net.add_edge(vout(v), vin(w), big);
        }
    }
    for v in 0..n {
        if is_target[v] {
            net.add_edge(vout(v), t, big);
        }
    }
    let value = net.max_flow(s, t);

    let reached = net.reached(s);
    let cut: Vec<usize> = (0..n).filter(|&v| reached[vin(v)] && !reached[vout(v)]).collect();

    // Decompose: follow saturated split edges from each used source.
    let carries = |v: usize| net.cap[split_edge[v]] == 0;
    let mut paths = Vec::with_capacity(value);
    let mut consumed = vec![false; n];
    for start in 0..n {
        if !is_source[start] || net.cap[source_edge[start] ^ 1] == 0 || consumed[start] {
            continue;
        }
        let mut path = vec![start];
        consumed[start] = true;
        let mut v = start;
        loop {
            // A unit leaves v_out either to the sink or to some w_in.
            let mut next = None;
            for &e in &net.adj[vout(v)] {
                let w = net.head[e];
                if e % 2 == 0 && w != t && w % 2 == 0 && w < 2 * n && net.cap[e ^ 1] > 0 {
                    let u = w / 2;
                    if carries(u) && !consumed[u] {
                        next = Some(u);
                        break;
                    }
                }
            }
            let ends_here = is_target[v]
                && net.adj[vout(v)].iter().any(|&e| net.head[e] == t && net.cap[e ^ 1] > 0);
            if ends_here {
                break;
            }
            match next {
                Some(u) => {
                    consumed[u] = true;
                    path.push(u);
                    v = u;
                }
                None => break,
            }
        }
        paths.push(trim_path(path, &is_source, &is_target));
    }
    debug_assert_eq!(paths.len(), value);
    debug_assert_eq!(cut.len(), value);
    MengerPair { system: PathSystem { paths }, cut }
}

/// Keeps the part of `path` after its last source vertex and up to its first
/// target vertex that follows.
fn trim_path(path: Vec<usize>, is_source: &[bool], is_target: &[bool]) -> Vec<usize> {
    let start = path.iter().rposition(|&v| is_source[v]).unwrap_or(0);
    let tail = &path[start..];
    let end = tail.iter().position(|&v| is_target[v]).unwrap_or(tail.len() - 1);
    tail[..=end].to_vec()
}

/// Whether deleting `cut` leaves no dipath from `sources` to `targets`.
pub fn is_vertex_cut(d: &Digraph, sources: &[usize], targets: &[usize], cut: &[usize]) -> bool {
    let n = d.vertex_count();
    let mut alive = vec![true; n];
    for &v in cut {
        alive[v] = false;
    }
    let mut target = vec![false; n];
    for &v in targets {
        target[v] = true;
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = sources.iter().copied().filter(|&v| alive[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(u) = stack.pop() {
        if target[u] {
            return false;
        }
        for &w in d.out_neighbours(u) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    true
}
