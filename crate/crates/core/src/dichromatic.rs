//! Dicolourings, the exact dichromatic number, and extraction of
//! subdivisions from digraphs of large dichromatic number by levelling.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::certificate::{CertificateBuilder, SubdivisionCertificate};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;
use crate::structure::{bfs_tree, shortest_path_from_set, strong_components, BfsTree, Direction};

/// Largest digraph the exact solver accepts.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dicolouring {
    pub classes: Vec<Vec<usize>>,
}

impl Dicolouring {
    pub fn k(&self) -> usize {
        self.classes.len()
    }
}

/// Whether `parts` is a dicolouring of `d`. A part list that is not a
/// partition of `V(d)` into nonempty classes is an input error.
pub fn verify_dicolouring(d: &Digraph, parts: &[Vec<usize>]) -> Result<bool> {
    let n = d.vertex_count();
    let mut seen = vec![false; n];
    for (i, class) in parts.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::InvalidArgument(format!("class {i} is empty")));
        }
        for &v in class {
            if v >= n {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidArgument(format!("vertex {v} is in no class")));
    }
    Ok(parts.iter().all(|class| {
        let mut mask = vec![false; n];
        for &v in class {
            mask[v] = true;
        }
        !d.has_cycle_within(&mask)
    }))
}

struct Colourer {
    out: Vec<u32>,
    inn: Vec<u32>,
    order: Vec<usize>,
    class_mask: Vec<u32>,
    class_of: Vec<usize>,
}

impl Colourer {
    fn new(d: &Digraph) -> Self {
        let n = d.vertex_count();
        let bits = |vs: &[usize]| vs.iter().fold(0u32, |m, &w| m | 1 << w);
        let out: Vec<u32> = (0..n).map(|v| bits(d.out_neighbours(v))).collect();
        let inn: Vec<u32> = (0..n).map(|v| bits(d.in_neighbours(v))).collect();
        // Each next vertex has the most arcs to the vertices already placed,
        // so cycles inside a class surface early.
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u32;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    let linked = ((out[v] | inn[v]) & placed).count_ones();
                    (linked, (out[v] | inn[v]).count_ones(), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            placed |= 1 << v;
            order.push(v);
        }
        Colourer { out, inn, order, class_mask: Vec::new(), class_of: vec![0; n] }
    }

    /// Whether adding `v` to the class `mask` closes a directed cycle.
    fn closes_cycle(&self, v: usize, mask: u32) -> bool {
        let mut reach = self.out[v] & mask;
        let mut frontier = reach;
        while frontier != 0 {
            if reach & self.inn[v] != 0 {
                return true;
            }
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.out[w] & mask;
            }
            frontier = next & !reach;
            reach |= next;
        }
        reach & self.inn[v] != 0
    }

    fn search(&mut self, i: usize, used: usize, k: usize) -> bool {
        let Some(&v) = self.order.get(i) else { return true };
        for c in 0..(used + 1).min(k) {
            if !self.closes_cycle(v, self.class_mask[c]) {
                self.class_mask[c] |= 1 << v;
                self.class_of[v] = c;
                if self.search(i + 1, used.max(c + 1), k) {
                    return true;
                }
                self.class_mask[c] &= !(1 << v);
            }
        }
        false
    }

    fn colour(&mut self, k: usize) -> Option<Dicolouring> {
        let n = self.order.len();
        if n == 0 {
            return Some(Dicolouring { classes: Vec::new() });
        }
        self.class_mask = vec![0; k];
        if !self.search(0, 0, k) {
            return None;
        }
        let mut classes = vec![Vec::new(); k];
        for v in 0..n {
            classes[self.class_of[v]].push(v);
        }
        classes.retain(|c| !c.is_empty());
        Some(Dicolouring { classes })
    }
}

fn guard(d: &Digraph) -> Result<()> {
    if d.vertex_count() > EXACT_LIMIT {
        return Err(Error::SizeGuard { vertices: d.vertex_count(), limit: EXACT_LIMIT });
    }
    Ok(())
}

/// A dicolouring with at most `k` classes, if one exists.
pub fn dicolour_with(d: &Digraph, k: usize) -> Result<Option<Dicolouring>> {
    guard(d)?;
    Ok(Colourer::new(d).colour(k))
}

/// Exact dichromatic number with a minimum witness (exhaustive search).
pub fn dichromatic_number(d: &Digraph) -> Result<Dicolouring> {
    guard(d)?;
    let mut solver = Colourer::new(d);
    for k in 0..=d.vertex_count() {
        if let Some(col) = solver.colour(k) {
            return Ok(col);
        }
    }
    unreachable!("singleton classes always work")
}

/// A `k`-dichromatic-critical subdigraph: vertices, then arcs, are deleted
/// while the dichromatic number stays at least `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSubdigraph {
    pub digraph: Digraph,
    /// Host id of every vertex of `digraph`.
    pub vertices: Vec<usize>,
}

pub fn critical_subdigraph(d: &Digraph, k: usize) -> Result<CriticalSubdigraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    guard(d)?;
    let at_least_k = |g: &Digraph| Colourer::new(g).colour(k - 1).is_none();
    if !at_least_k(d) {
        return Err(Error::HypothesisUnmet(format!("dichromatic number is below {k}")));
    }
    let mut keep: Vec<usize> = d.vertices().collect();
    for v in d.vertices() {
        let candidate: Vec<usize> = keep.iter().copied().filter(|&w| w != v).collect();
        if at_least_k(&d.induced(&candidate).0) {
            keep = candidate;
        }
    }
    let (mut h, vertices) = d.induced(&keep);
    let arcs: Vec<(usize, usize)> = h.arcs().collect();
    for (a, b) in arcs {
        let candidate = h.without_arc(a, b);
        if at_least_k(&candidate) {
            h = candidate;
        }
    }
    let delta_zero = h.degrees().delta_zero;
    if delta_zero + 1 < k {
        return Err(Error::Internal(format!("critical subdigraph has minimum semi-degree {delta_zero} < {}", k - 1)));
    }
    Ok(CriticalSubdigraph { digraph: h, vertices })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestLevel {
    pub index: usize,
    pub vertices: Vec<usize>,
    pub dic: usize,
}

/// The level of `tree` inducing the largest dichromatic number (first on
/// ties).
pub fn best_level(d: &Digraph, tree: &BfsTree) -> Result<BestLevel> {
    let mut best: Option<BestLevel> = None;
    for (index, level) in tree.levels.iter().enumerate() {
        let dic = dichromatic_number(&d.induced(level).0)?.k();
        if best.as_ref().is_none_or(|b| dic > b.dic) {
            let mut vertices = level.clone();
            vertices.sort_unstable();
            best = Some(BestLevel { index, vertices, dic });
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("tree has no levels".into()))
}

/// Strong component of largest dichromatic number (members ascending).
/// Exact values are only computed when several components contain cycles.
fn strongest_component(d: &Digraph) -> Result<Vec<usize>> {
    let comps = strong_components(d).members();
    let nontrivial: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() > 1).collect();
    let mut chosen = match nontrivial.len() {
        0 => comps.first().cloned().unwrap_or_default(),
        1 => nontrivial[0].clone(),
        _ => {
            let mut best = (0, Vec::new());
            for c in nontrivial {
                let k = dichromatic_number(&d.induced(c).0)?.k();
                let mut sorted = c.clone();
                sorted.sort_unstable();
                if k > best.0 || (k == best.0 && sorted < best.1) {
                    best = (k, sorted);
                }
            }
            best.1
        }
    };
    chosen.sort_unstable();
    Ok(chosen)
}

/// Partial subdivision: images of the placed pattern vertices and host
/// paths of the realized pattern arcs.
#[derive(Debug, Clone, Default)]
struct Embedding {
    image: BTreeMap<usize, usize>,
    paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Embedding {
    fn relabel(self, map: &[usize]) -> Embedding {
        Embedding {
            image: self.image.into_iter().map(|(p, h)| (p, map[h])).collect(),
            paths: self.paths.into_iter().map(|(a, path)| (a, path.into_iter().map(|v| map[v]).collect())).collect(),
        }
    }

    fn used(&self, n: usize) -> Vec<bool> {
        let mut used = vec![false; n];
        for &h in self.image.values() {
            used[h] = true;
        }
        for p in self.paths.values() {
            for &h in p {
                used[h] = true;
            }
        }
        used
    }

    fn into_certificate(self, host: &Digraph, pattern: &PatternSpec) -> Result<SubdivisionCertificate> {
        let mut b = CertificateBuilder::new(host, pattern.clone());
        for (&p, &h) in &self.image {
            b.map(p, h)?;
        }
        for ((t, h), path) in self.paths {
            b.path(t, h, path)?;
        }
        b.finish()
    }
}

fn step_failed(msg: impl Into<String>) -> Error {
    Error::HypothesisUnmet(msg.into())
}

/// Pattern vertices still present, and the pattern arcs among them.
#[derive(Debug, Clone)]
struct SubPattern<'a> {
    f: &'a Digraph,
    active: Vec<bool>,
}

impl<'a> SubPattern<'a> {
    fn whole(f: &'a Digraph) -> Self {
        SubPattern { f, active: vec![true; f.vertex_count()] }
    }

    fn vertices(&self) -> Vec<usize> {
        (0..self.f.vertex_count()).filter(|&v| self.active[v]).collect()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.f.arcs().filter(|&(a, b)| self.active[a] && self.active[b]).collect()
    }

    fn out(&self, v: usize) -> Vec<usize> {
        self.f.out_neighbours(v).iter().copied().filter(|&w| self.active[w]).collect()
    }

    fn inn(&self, v: usize) -> Vec<usize> {
        self.f.in_neighbours(v).iter().copied().filter(|&w| self.active[w]).collect()
    }

    fn without(&self, x: usize) -> Self {
        let mut s = self.clone();
        s.active[x] = false;
        s
    }

    /// Spanning forest of the underlying graph (BFS per component from the
    /// smallest id) and the remaining arcs, ascending.
    fn spanning_forest(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let n = self.f.vertex_count();
        let mut seen = vec![false; n];
        let mut forest = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let mut nbrs: Vec<usize> = self.out(u).into_iter().chain(self.inn(u)).collect();
                nbrs.sort_unstable();
                nbrs.dedup();
                for w in nbrs {
                    if !seen[w] {
                        seen[w] = true;
                        forest.push(if self.f.has_arc(u, w) { (u, w) } else { (w, u) });
                        queue.push_back(w);
                    }
                }
            }
        }
        forest.sort_unstable();
        let rest = self.arcs().into_iter().filter(|a| forest.binary_search(a).is_err()).collect();
        (forest, rest)
    }

    fn component_count(&self) -> usize {
        self.vertices().len() - self.spanning_forest().0.len()
    }

    fn is_forest(&self) -> bool {
        self.spanning_forest().1.is_empty()
    }

    /// Smallest 2-source, else smallest 2-sink (as `(vertex, true)` for a
    /// source).
    fn reducible_step(&self) -> Option<(usize, bool)> {
        let vs = self.vertices();
        vs.iter()
            .find(|&&v| self.inn(v).is_empty() && self.out(v).len() <= 2)
            .map(|&v| (v, true))
            .or_else(|| vs.iter().find(|&&v| self.out(v).is_empty() && self.inn(v).len() <= 2).map(|&v| (v, false)))
    }

    fn is_reducible(&self) -> bool {
        let mut s = self.clone();
        while let Some((x, _)) = s.reducible_step() {
            s = s.without(x);
        }
        s.vertices().is_empty()
    }
}

fn peel_chain(n: usize, peels: usize) -> u64 {
    let mut c = n as u64;
    for _ in 0..peels {
        c = c.saturating_mul(4).saturating_sub(3);
    }
    c
}

/// `4^(m - n + cc) (n - 1) + 1`, the dichromatic number sufficient for the
/// arc-peeling construction (saturating).
pub fn dic_requirement(f: &PatternSpec) -> u64 {
    let s = SubPattern::whole(&f.pattern);
    let (_, rest) = s.spanning_forest();
    peel_chain(f.vertex_count(), rest.len())
}

/// Requirement of the 2-source/2-sink construction for 2-reducible
/// patterns: `n` for forests, `2c - 1` per deleted vertex otherwise.
pub fn reducible_requirement(f: &PatternSpec) -> Option<u64> {
    let s = SubPattern::whole(&f.pattern);
    s.is_reducible().then(|| reducible_chain(&s))
}

fn reducible_chain(s: &SubPattern) -> u64 {
    if s.is_forest() {
        return s.vertices().len() as u64;
    }
    let (x, _) = s.reducible_step().expect("reducible");
    reducible_chain(&s.without(x)).saturating_mul(2).saturating_sub(1)
}

/// Forest base: restrict to the subdigraph of minimum semi-degree at least
/// `|V(F)| - 1` (which contains every critical subdigraph of that order)
/// and embed greedily.
fn embed_forest_in_core(d: &Digraph, s: &SubPattern, forest: &[(usize, usize)]) -> Result<Embedding> {
    let need = s.vertices().len().saturating_sub(1);
    let n = d.vertex_count();
    let mut alive = vec![true; n];
    let mut out: Vec<usize> = (0..n).map(|v| d.out_degree(v)).collect();
    let mut inn: Vec<usize> = (0..n).map(|v| d.in_degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| out[v] < need || inn[v] < need).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in d.in_neighbours(v) {
            out[w] -= 1;
            if alive[w] && out[w] < need {
                stack.push(w);
            }
        }
        for &w in d.out_neighbours(v) {
            inn[w] -= 1;
            if alive[w] && inn[w] < need {
                stack.push(w);
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if core.is_empty() && !s.vertices().is_empty() {
        return Err(step_failed(format!("no subdigraph with minimum semi-degree {need}")));
    }
    let (h, map) = d.induced(&core);
    Ok(greedy_forest(&h, s, forest)?.relabel(&map))
}

/// Embeds the pattern vertices of `s` along the given spanning forest arcs.
fn greedy_forest(d: &Digraph, s: &SubPattern, forest: &[(usize, usize)]) -> Result<Embedding> {
    let n = d.vertex_count();
    let mut used = vec![false; n];
    let mut emb = Embedding::default();
    let tree_nbrs = |v: usize| -> Vec<(usize, bool)> {
        let mut out: Vec<(usize, bool)> = forest
            .iter()
            .filter_map(|&(a, b)| if a == v { Some((b, true)) } else if b == v { Some((a, false)) } else { None })
            .collect();
        out.sort_unstable();
        out
    };
    for root in s.vertices() {
        if emb.image.contains_key(&root) {
            continue;
        }
        let h = (0..n).find(|&h| !used[h]).ok_or_else(|| step_failed("host too small for the forest"))?;
        used[h] = true;
        emb.image.insert(root, h);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            let hp = emb.image[&p];
            for (q, forward) in tree_nbrs(p) {
                if emb.image.contains_key(&q) {
                    continue;
                }
                let candidates = if forward { d.out_neighbours(hp) } else { d.in_neighbours(hp) };
                let hq = *candidates
                    .iter()
                    .find(|&&w| !used[w])
                    .ok_or_else(|| step_failed(format!("no free neighbour of {hp} for pattern vertex {q}")))?;
                used[hq] = true;
                emb.image.insert(q, hq);
                let arc = if forward { (p, q) } else { (q, p) };
                emb.paths.insert(arc, if forward { vec![hp, hq] } else { vec![hq, hp] });
                queue.push_back(q);
            }
        }
    }
    Ok(emb)
}

/// Embeds an oriented forest as a subdigraph, root-first per tree, always
/// taking the smallest free in- or out-neighbour. Succeeds whenever the
/// minimum semi-degree is at least `|V(F)| - 1`.
pub fn greedy_embed_forest(d: &Digraph, f: &PatternSpec) -> Result<SubdivisionCertificate> {
    if !f.is_oriented_forest() {
        return Err(Error::InvalidPattern("pattern is not an oriented forest".into()));
    }
    let need = f.vertex_count().saturating_sub(1);
    let s = SubPattern::whole(&f.pattern);
    let emb = greedy_forest(d, &s, &s.spanning_forest().0).map_err(|e| match e {
        Error::HypothesisUnmet(s) if d.degrees().delta_zero >= need && d.vertex_count() >= f.vertex_count() => {
            Error::Internal(format!("greedy forest embedding failed with minimum semi-degree >= {need}: {s}"))
        }
        Error::HypothesisUnmet(s) => Error::HypothesisUnmet(format!("minimum semi-degree below {need}: {s}")),
        other => other,
    })?;
    emb.into_certificate(d, f)
}

/// Shortens a walk to a dipath with the same ends by cutting out loops.
fn loop_erase(walk: &[usize]) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::new();
    let mut pos: HashMap<usize, usize> = HashMap::new();
    for &w in walk {
        if let Some(&i) = pos.get(&w) {
            for z in path.drain(i + 1..) {
                pos.remove(&z);
            }
        } else {
            pos.insert(w, path.len());
            path.push(w);
        }
    }
    path
}

/// Arc-peeling recursion: `peeled` are the non-forest arcs still to be
/// added, the last one first.
fn peel(d: &Digraph, s: &SubPattern, forest: &[(usize, usize)], peeled: &[(usize, usize)]) -> Result<Embedding> {
    let Some((&(x, y), rest)) = peeled.split_last() else {
        return embed_forest_in_core(d, s, forest);
    };
    let (k_d, k_map) = d.induced(&strongest_component(d)?);
    if k_d.vertex_count() < 2 {
        return Err(step_failed("no directed cycle left"));
    }
    let t_u = bfs_tree(&k_d, 0, Direction::Out);
    let l_u = best_level(&k_d, &t_u)?;
    let (l_d, l_map) = k_d.induced(&l_u.vertices);
    let c_in_k: Vec<usize> = strongest_component(&l_d)?.into_iter().map(|i| l_map[i]).collect();
    let mut in_c = vec![false; k_d.vertex_count()];
    for &v in &c_in_k {
        in_c[v] = true;
    }
    let p = shortest_path_from_set(&k_d, &in_c, 0, &vec![true; k_d.vertex_count()])
        .ok_or_else(|| Error::Internal("component is not strong".into()))?;
    let v = p[0];
    let (c_d, c_map) = k_d.induced(&c_in_k);
    let v_c = c_map.binary_search(&v).expect("v lies in C");
    let t_v = bfs_tree(&c_d, v_c, Direction::In);
    let l_v = best_level(&c_d, &t_v)?;
    let (lv_d, lv_map) = c_d.induced(&l_v.vertices);

    let sub = peel(&lv_d, s, forest, rest)?;
    let mut sub = sub.relabel(&lv_map); // labels of C
    let (x_c, y_c) = (sub.image[&x], sub.image[&y]);
    let mut walk: Vec<usize> = t_v.segment(v_c, x_c).expect("x below v").into_iter().map(|i| c_map[i]).collect();
    walk.extend_from_slice(&p[1..]);
    walk.extend_from_slice(&t_u.segment(0, c_map[y_c]).expect("y below u")[1..]);
    let q = loop_erase(&walk);
    sub = sub.relabel(&c_map); // labels of K
    sub.paths.insert((x, y), q);
    Ok(sub.relabel(&k_map))
}

/// 2-source (or, mirrored, 2-sink) step: embed `F - x` in the best level of
/// a BFS tree and join the images of the neighbours of `x` at their lowest
/// common ancestor.
fn source_step(d: &Digraph, s: &SubPattern, x: usize, source: bool, solve_rest: &dyn Fn(&Digraph, &SubPattern) -> Result<Embedding>) -> Result<Embedding> {
    let (k_d, k_map) = d.induced(&strongest_component(d)?);
    let dir = if source { Direction::Out } else { Direction::In };
    let t = bfs_tree(&k_d, 0, dir);
    let level = best_level(&k_d, &t)?;
    let (l_d, l_map) = k_d.induced(&level.vertices);
    let rest = s.without(x);
    let mut emb = solve_rest(&l_d, &rest)?.relabel(&l_map);
    let nbrs = if source { s.out(x) } else { s.inn(x) };
    let images: Vec<usize> = nbrs.iter().map(|q| emb.image[q]).collect();
    let v = match images[..] {
        [] => {
            let used = emb.used(k_d.vertex_count());
            (0..k_d.vertex_count()).find(|&h| !used[h]).ok_or_else(|| step_failed("no vertex left for an isolated source"))?
        }
        [y] => t.parent[y].ok_or_else(|| step_failed("best level is the root level"))?,
        [y1, y2] => t.lowest_common_ancestor(y1, y2).ok_or_else(|| Error::Internal("BFS tree spans the component".into()))?,
        _ => return Err(Error::InvalidPattern(format!("vertex {x} has more than two neighbours"))),
    };
    emb.image.insert(x, v);
    for (&q, &y) in nbrs.iter().zip(&images) {
        let path = t.segment(v, y).expect("v is an ancestor");
        emb.paths.insert(if source { (x, q) } else { (q, x) }, path);
    }
    Ok(emb.relabel(&k_map))
}

fn reduce(d: &Digraph, s: &SubPattern) -> Result<Embedding> {
    let (forest, rest) = s.spanning_forest();
    if rest.is_empty() {
        return embed_forest_in_core(d, s, &forest);
    }
    let (x, source) = s.reducible_step().ok_or_else(|| Error::InvalidPattern("pattern is not 2-reducible".into()))?;
    source_step(d, s, x, source, &reduce)
}

fn peel_all(d: &Digraph, s: &SubPattern) -> Result<Embedding> {
    let (forest, rest) = s.spanning_forest();
    peel(d, s, &forest, &rest)
}

/// Reclassifies a failed construction against the sufficient bound.
fn finish(d: &Digraph, f: &PatternSpec, requirement: u64, result: Result<Embedding>) -> Result<SubdivisionCertificate> {
    match result {
        Ok(emb) => emb.into_certificate(d, f),
        Err(Error::HypothesisUnmet(state) | Error::Internal(state)) => {
            let mut chi = 0;
            for c in strong_components(d).members() {
                chi = chi.max(dichromatic_number(&d.induced(&c).0)?.k());
            }
            if chi as u64 >= requirement {
                Err(Error::Internal(format!("{f}: construction failed with dichromatic number {chi} >= {requirement}: {state}")))
            } else {
                Err(Error::HypothesisUnmet(format!("{f}: dichromatic number {chi} is below {requirement} ({state})")))
            }
        }
        Err(e) => Err(e),
    }
}

fn check_nonempty(d: &Digraph, f: &PatternSpec) -> Result<()> {
    if f.vertex_count() > d.vertex_count() {
        return Err(Error::HypothesisUnmet(format!("host has fewer than {} vertices", f.vertex_count())));
    }
    Ok(())
}

/// Subdivision of an arbitrary pattern, guaranteed when the dichromatic
/// number is at least [`dic_requirement`]. Non-forest arcs are peeled one at
/// a time, largest first.
pub fn find_subdivision_dic(d: &Digraph, f: &PatternSpec) -> Result<SubdivisionCertificate> {
    check_nonempty(d, f)?;
    let s = SubPattern::whole(&f.pattern);
    finish(d, f, dic_requirement(f), peel_all(d, &s))
}

/// Subdivision of a 2-reducible pattern by repeatedly removing the smallest
/// 2-source (else 2-sink); guaranteed at [`reducible_requirement`].
pub fn find_subdivision_reducible(d: &Digraph, f: &PatternSpec) -> Result<SubdivisionCertificate> {
    let requirement = reducible_requirement(f).ok_or_else(|| Error::InvalidPattern(format!("{f} is not 2-reducible")))?;
    check_nonempty(d, f)?;
    finish(d, f, requirement, reduce(d, &SubPattern::whole(&f.pattern)))
}

/// The construction with the smaller sufficient dichromatic number.
pub fn find_subdivision_auto(d: &Digraph, f: &PatternSpec) -> Result<SubdivisionCertificate> {
    match reducible_requirement(f) {
        Some(r) if r < dic_requirement(f) => find_subdivision_reducible(d, f),
        _ => find_subdivision_dic(d, f),
    }
}

/// One 2-source step at pattern vertex `x`; `F - x` is embedded by the
/// reducible construction when possible, else by arc peeling.
pub fn two_source_step(d: &Digraph, f: &PatternSpec, x: usize) -> Result<SubdivisionCertificate> {
    let s = SubPattern::whole(&f.pattern);
    if x >= f.vertex_count() || !s.inn(x).is_empty() || s.out(x).len() > 2 {
        return Err(Error::InvalidPattern(format!("vertex {x} is not a 2-source of {f}")));
    }
    check_nonempty(d, f)?;
    let rest = s.without(x);
    let inner = if rest.is_reducible() { reducible_chain(&rest) } else {
        let (_, r) = rest.spanning_forest();
        peel_chain(rest.vertices().len(), r.len())
    };
    let solve_rest = |g: &Digraph, r: &SubPattern| if r.is_reducible() { reduce(g, r) } else { peel_all(g, r) };
    let result = source_step(d, &s, x, true, &solve_rest);
    finish(d, f, inner.saturating_mul(2).saturating_sub(1), result)
}

/// Number of connected components of the pattern's underlying graph.
pub fn pattern_components(f: &PatternSpec) -> usize {
    SubPattern::whole(&f.pattern).component_count()
}
