//! Strong components, BFS trees with their level partition, and reachability.

use std::collections::VecDeque;

use crate::digraph::Digraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

fn step(d: &Digraph, v: usize, dir: Direction) -> &[usize] {
    match dir {
        Direction::Out => d.out_neighbours(v),
        Direction::In => d.in_neighbours(v),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongComponents {
    /// Component id of every vertex. Ids are a topological order of the
    /// condensation: every arc between components goes from a smaller id to
    /// a larger one.
    pub component_of: Vec<usize>,
    pub condensation: Digraph,
}

impl StrongComponents {
    pub fn count(&self) -> usize {
        self.condensation.vertex_count()
    }

    /// Members of every component, each sorted ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count()];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Component ids with no arc leaving them.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.count())
            .filter(|&c| self.condensation.out_degree(c) == 0)
            .collect()
    }
}

/// Tarjan's algorithm, iterative.
pub fn strong_components(d: &Digraph) -> StrongComponents {
    let n = d.vertex_count();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSET; n];
    let mut next_index = 0;
    let mut found = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let (v, pos) = *top;
            let outs = d.out_neighbours(v);
            if pos < outs.len() {
                top.1 += 1;
                let w = outs[pos];
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = found;
                        if w == v {
                            break;
                        }
                    }
                    found += 1;
                }
            }
        }
    }

    // Tarjan emits sink components first; flip to a topological numbering.
    let component_of: Vec<usize> = comp.iter().map(|&c| found - 1 - c).collect();
    let condensation = Digraph::from_arcs_lossy(
        found,
        d.arcs()
            .map(|(u, v)| (component_of[u], component_of[v]))
            .filter(|(a, b)| a != b),
    );
    StrongComponents { component_of, condensation }
}

pub fn is_strong(d: &Digraph) -> bool {
    d.vertex_count() > 0 && strong_components(d).count() == 1
}

/// Out- or in-BFS tree with its level partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    pub root: usize,
    pub direction: Direction,
    /// Tree neighbour one step closer to the root; `None` for the root and
    /// for unreachable vertices.
    pub parent: Vec<Option<usize>>,
    pub dist: Vec<Option<usize>>,
    pub levels: Vec<Vec<usize>>,
}

impl BfsTree {
    /// Vertices on the tree path between `v` and the root, ordered along the
    /// arcs: root first for an out-tree, `v` first for an in-tree.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        self.dist[v]?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        if self.direction == Direction::Out {
            path.reverse();
        }
        Some(path)
    }

    /// Tree path between ancestor `a` and descendant `v`, ordered along the arcs.
    pub fn segment(&self, a: usize, v: usize) -> Option<Vec<usize>> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != a {
            cur = self.parent[cur]?;
            path.push(cur);
        }
        if self.direction == Direction::Out {
            path.reverse();
        }
        Some(path)
    }

    pub fn lowest_common_ancestor(&self, a: usize, b: usize) -> Option<usize> {
        let (mut x, mut y) = (a, b);
        let (mut dx, mut dy) = (self.dist[x]?, self.dist[y]?);
        while dx > dy {
            x = self.parent[x]?;
            dx -= 1;
        }
        while dy > dx {
            y = self.parent[y]?;
            dy -= 1;
        }
        while x != y {
            x = self.parent[x]?;
            y = self.parent[y]?;
        }
        Some(x)
    }
}

pub fn bfs_tree(d: &Digraph, root: usize, direction: Direction) -> BfsTree {
    let n = d.vertex_count();
    let mut parent = vec![None; n];
    let mut dist = vec![None; n];
    let mut levels: Vec<Vec<usize>> = vec![vec![root]];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &w in step(d, u, direction) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                parent[w] = Some(u);
                if levels.len() <= du + 1 {
                    levels.push(Vec::new());
                }
                levels[du + 1].push(w);
                queue.push_back(w);
            }
        }
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    BfsTree { root, direction, parent, dist, levels }
}

pub fn is_generator(d: &Digraph, v: usize, direction: Direction) -> bool {
    bfs_tree(d, v, direction).dist.iter().all(Option::is_some)
}

/// Vertices reachable from `start` inside the vertex set flagged by `alive`.
pub fn reachable_within(d: &Digraph, start: usize, alive: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; d.vertex_count()];
    if !alive[start] {
        return seen;
    }
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in d.out_neighbours(u) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Shortest dipath, inside `alive`, from some vertex flagged in `sources` to
/// `target`. The path meets `sources` only in its first vertex.
pub fn shortest_path_from_set(
    d: &Digraph,
    sources: &[bool],
    target: usize,
    alive: &[bool],
) -> Option<Vec<usize>> {
    // Searching backwards from the target keeps the path's first vertex as
    // the only source vertex on it.
    let n = d.vertex_count();
    let mut next = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    if !alive[target] {
        return None;
    }
    seen[target] = true;
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        if sources[v] {
            let mut path = vec![v];
            let mut cur = v;
            while cur != target {
                cur = next[cur];
                path.push(cur);
            }
            return Some(path);
        }
        for &u in d.in_neighbours(v) {
            if alive[u] && !seen[u] {
                seen[u] = true;
                next[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// Shortest dipath inside `alive` from `source` to any vertex flagged in
/// `targets`; the path meets `targets` only in its last vertex.
pub fn shortest_path_to_set(
    d: &Digraph,
    source: usize,
    targets: &[bool],
    alive: &[bool],
) -> Option<Vec<usize>> {
    let n = d.vertex_count();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    if !alive[source] {
        return None;
    }
    seen[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        if targets[v] {
            let mut path = vec![v];
            let mut cur = v;
            while cur != source {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in d.out_neighbours(v) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}
