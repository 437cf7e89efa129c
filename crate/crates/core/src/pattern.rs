//! Target digraphs searched for as subdivisions, with builders for the named
//! families.

use std::collections::BTreeMap;
use std::fmt;

use crate::digraph::{families, Digraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternKind {
    /// Oriented path whose maximal directed subpaths have the given lengths,
    /// first block forward.
    BlockedPath(Vec<usize>),
    /// Complete `branching`-ary in-arborescence of the given depth.
    Branching { depth: usize, branching: usize },
    /// Two internally disjoint dipaths of lengths `k1`, `k2` with common ends.
    TwoBlockCycle(usize, usize),
    /// Two `(x,y)`-dipaths of lengths `k1`, `k2` and one `(y,x)`-dipath of length `k3`.
    TriplePath(usize, usize, usize),
    TransitiveTournament(usize),
    CompleteDigraph(usize),
    Custom,
}

impl PatternKind {
    pub fn name(&self) -> &'static str {
        match self {
            PatternKind::BlockedPath(_) => "blocked_path",
            PatternKind::Branching { .. } => "branching",
            PatternKind::TwoBlockCycle(..) => "two_block_cycle",
            PatternKind::TriplePath(..) => "triple_path",
            PatternKind::TransitiveTournament(_) => "transitive_tournament",
            PatternKind::CompleteDigraph(_) => "complete_digraph",
            PatternKind::Custom => "custom",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match self {
            PatternKind::BlockedPath(ks) => ks.clone(),
            PatternKind::Branching { depth, branching } => vec![*depth, *branching],
            PatternKind::TwoBlockCycle(a, b) => vec![*a, *b],
            PatternKind::TriplePath(a, b, c) => vec![*a, *b, *c],
            PatternKind::TransitiveTournament(k) | PatternKind::CompleteDigraph(k) => vec![*k],
            PatternKind::Custom => Vec::new(),
        }
    }
}

/// A pattern digraph together with its family tag and named vertices
/// (`initial`, `root`, `x`, `y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSpec {
    pub pattern: Digraph,
    pub kind: PatternKind,
    pub distinguished: BTreeMap<String, usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidPattern(msg.into())
}

impl PatternSpec {
    pub fn custom(pattern: Digraph) -> Self {
        PatternSpec { pattern, kind: PatternKind::Custom, distinguished: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.pattern.vertex_count()
    }

    pub fn role(&self, name: &str) -> Option<usize> {
        self.distinguished.get(name).copied()
    }

    /// `P(k1, …, kl)`: vertices are numbered along the path from the initial
    /// vertex. Block `i` (1-based) spans positions `s_i ..= s_i + k_i` and is
    /// forward for odd `i`, backward for even `i`.
    pub fn blocked_path(ks: &[usize]) -> Result<Self> {
        if ks.is_empty() {
            return Err(invalid("blocked path needs at least one block"));
        }
        if let Some(i) = ks.iter().skip(1).position(|&k| k == 0) {
            return Err(invalid(format!("block {} has length 0; only the first block may be empty", i + 2)));
        }
        let total: usize = ks.iter().sum();
        let mut arcs = Vec::with_capacity(total);
        let mut pos = 0;
        for (i, &k) in ks.iter().enumerate() {
            for j in pos..pos + k {
                if i % 2 == 0 {
                    arcs.push((j, j + 1));
                } else {
                    arcs.push((j + 1, j));
                }
            }
            pos += k;
        }
        Ok(PatternSpec {
            pattern: Digraph::new(total + 1, arcs)?,
            kind: PatternKind::BlockedPath(ks.to_vec()),
            distinguished: BTreeMap::from([("initial".to_string(), 0)]),
        })
    }

    /// `B(k, l)` with heap numbering: the root is 0 and the parent of `x > 0`
    /// is `(x - 1) / l`.
    pub fn branching(depth: usize, branching: usize) -> Result<Self> {
        if branching == 0 {
            return Err(invalid("branching factor must be at least 1"));
        }
        let size = branching_size(depth, branching)
            .ok_or_else(|| invalid(format!("B({depth},{branching}) is too large to build")))?;
        let arcs = (1..size).map(|x| (x, (x - 1) / branching));
        Ok(PatternSpec {
            pattern: Digraph::new(size, arcs)?,
            kind: PatternKind::Branching { depth, branching },
            distinguished: BTreeMap::from([("root".to_string(), 0)]),
        })
    }

    /// `C(k1, k2)`: `x = 0`, `y = 1`, then the internal vertices of the
    /// first and of the second dipath.
    pub fn two_block_cycle(k1: usize, k2: usize) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(invalid("two-block cycle lengths must be positive"));
        }
        if k1 == 1 && k2 == 1 {
            return Err(invalid("C(1,1) would need two parallel arcs"));
        }
        let n = k1 + k2;
        let mut arcs = Vec::new();
        for seq in two_block_sequences(k1, k2) {
            arcs.extend(seq.windows(2).map(|w| (w[0], w[1])));
        }
        Ok(PatternSpec {
            pattern: Digraph::new(n, arcs)?,
            kind: PatternKind::TwoBlockCycle(k1, k2),
            distinguished: BTreeMap::from([("x".to_string(), 0), ("y".to_string(), 1)]),
        })
    }

    /// `P(k1, k2; k3)`: `x = 0`, `y = 1`, then the internal vertices of the
    /// two `(x,y)`-dipaths and of the `(y,x)`-dipath.
    pub fn triple_path(k1: usize, k2: usize, k3: usize) -> Result<Self> {
        if k1 == 0 || k2 == 0 || k3 == 0 {
            return Err(invalid("triple path lengths must be positive"));
        }
        if k1 == 1 && k2 == 1 {
            return Err(invalid("P(1,1;k) would need two parallel arcs"));
        }
        let n = k1 + k2 + k3 - 1;
        let mut arcs = Vec::new();
        for seq in triple_sequences(k1, k2, k3) {
            arcs.extend(seq.windows(2).map(|w| (w[0], w[1])));
        }
        Ok(PatternSpec {
            pattern: Digraph::new(n, arcs)?,
            kind: PatternKind::TriplePath(k1, k2, k3),
            distinguished: BTreeMap::from([("x".to_string(), 0), ("y".to_string(), 1)]),
        })
    }

    pub fn transitive_tournament(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("tournament order must be positive"));
        }
        Ok(PatternSpec {
            pattern: families::transitive_tournament(k),
            kind: PatternKind::TransitiveTournament(k),
            distinguished: BTreeMap::new(),
        })
    }

    pub fn complete_digraph(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("complete digraph order must be positive"));
        }
        Ok(PatternSpec {
            pattern: families::complete_digraph(n),
            kind: PatternKind::CompleteDigraph(n),
            distinguished: BTreeMap::new(),
        })
    }

    /// Rebuilds a named pattern from its kind name and parameters.
    pub fn from_kind(name: &str, params: &[usize]) -> Result<Self> {
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(invalid(format!("{name} takes {k} parameter(s), got {}", params.len())))
            }
        };
        match name {
            "blocked_path" => Self::blocked_path(params),
            "branching" => want(2).and_then(|_| Self::branching(params[0], params[1])),
            "two_block_cycle" => want(2).and_then(|_| Self::two_block_cycle(params[0], params[1])),
            "triple_path" => want(3).and_then(|_| Self::triple_path(params[0], params[1], params[2])),
            "transitive_tournament" => want(1).and_then(|_| Self::transitive_tournament(params[0])),
            "complete_digraph" => want(1).and_then(|_| Self::complete_digraph(params[0])),
            "directed_cycle" => {
                want(1)?;
                if params[0] < 2 {
                    return Err(invalid("directed cycle needs length at least 2"));
                }
                Ok(Self::custom(families::directed_cycle(params[0])))
            }
            other => Err(invalid(format!("unknown pattern kind `{other}`"))),
        }
    }

    /// Parses `kind:p1,p2,...`, e.g. `two_block_cycle:2,3`.
    pub fn from_descriptor(text: &str) -> Result<Self> {
        let (name, rest) = text.trim().split_once(':').unwrap_or((text.trim(), ""));
        let params = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|e| invalid(format!("bad parameter `{p}`: {e}"))))
                .collect::<Result<Vec<_>>>()?
        };
        Self::from_kind(name, &params)
    }

    /// For named families, the pattern's dipaths between branch vertices as
    /// vertex sequences (blocks of a blocked path are listed in arc order).
    pub fn route_sequences(&self) -> Vec<Vec<usize>> {
        match &self.kind {
            PatternKind::TwoBlockCycle(a, b) => two_block_sequences(*a, *b),
            PatternKind::TriplePath(a, b, c) => triple_sequences(*a, *b, *c),
            PatternKind::BlockedPath(ks) => {
                let mut out = Vec::new();
                let mut pos = 0;
                for (i, &k) in ks.iter().enumerate() {
                    if k > 0 {
                        let mut seq: Vec<usize> = (pos..=pos + k).collect();
                        if i % 2 == 1 {
                            seq.reverse();
                        }
                        out.push(seq);
                    }
                    pos += k;
                }
                out
            }
            _ => self.pattern.arcs().map(|(u, v)| vec![u, v]).collect(),
        }
    }

    /// Whether the underlying undirected multigraph is a forest (digons count
    /// as 2-cycles).
    pub fn is_oriented_forest(&self) -> bool {
        if self.pattern.has_digon() {
            return false;
        }
        let n = self.pattern.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, v) in self.pattern.arcs() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Number of connected components of the underlying graph.
    pub fn component_count(&self) -> usize {
        let n = self.pattern.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.pattern.out_neighbours(u).iter().chain(self.pattern.in_neighbours(u)) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PatternKind::Custom => write!(
                f,
                "custom({} vertices, {} arcs)",
                self.pattern.vertex_count(),
                self.pattern.arc_count()
            ),
            kind => {
                let params: Vec<String> = kind.params().iter().map(|p| p.to_string()).collect();
                write!(f, "{}:{}", kind.name(), params.join(","))
            }
        }
    }
}

/// `b(k, l) = 1 + l + … + l^k`, or `None` on overflow.
pub fn branching_size(depth: usize, branching: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for i in 0..=depth {
        total = total.checked_add(layer)?;
        if i < depth {
            layer = layer.checked_mul(branching)?;
        }
    }
    Some(total)
}

fn two_block_sequences(k1: usize, k2: usize) -> Vec<Vec<usize>> {
    let mut first = vec![0];
    first.extend(2..=k1);
    first.push(1);
    let mut second = vec![0];
    second.extend(k1 + 1..k1 + k2);
    second.push(1);
    vec![first, second]
}

fn triple_sequences(k1: usize, k2: usize, k3: usize) -> Vec<Vec<usize>> {
    let mut next = 2;
    let mut seq = |from: usize, to: usize, len: usize| {
        let mut s = vec![from];
        s.extend(next..next + len - 1);
        next += len - 1;
        s.push(to);
        s
    };
    let a = seq(0, 1, k1);
    let b = seq(0, 1, k2);
    let c = seq(1, 0, k3);
    vec![a, b, c]
}
