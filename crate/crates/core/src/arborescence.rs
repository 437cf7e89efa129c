//! Subdivisions of the complete in-arborescences `B(k, l)` under a minimum
//! out-degree bound, via packings of `l`-branching in-arborescences and a
//! recursion on the digraph of their roots.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::certificate::{CertificateBuilder, SubdivisionCertificate};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::finders::find_blocked_path;
use crate::flow::{disjoint_paths, PathSystem};
use crate::pattern::PatternSpec;

/// `b(k, l) = 1 + l + … + l^k`, the order of `B(k, l)`.
pub fn b_size(k: usize, l: &BigUint) -> BigUint {
    let mut total = BigUint::zero();
    let mut layer = BigUint::one();
    for _ in 0..=k {
        total += &layer;
        layer *= l;
    }
    total
}

fn check_bound_args(k: usize, l: &BigUint) -> Result<()> {
    if k == 0 || *l < BigUint::from(2u8) {
        return Err(Error::InvalidArgument(format!("f and t are defined for k >= 1 and l >= 2, got k={k}, l={l}")));
    }
    Ok(())
}

/// `t(k, l) = f(k-1, b(k-1,l)(l-1) + 1) · b(k-1, l)` for `k >= 2`.
pub fn t_bound(k: usize, l: &BigUint) -> Result<BigUint> {
    check_bound_args(k, l)?;
    if k == 1 {
        return Err(Error::InvalidArgument("t(k,l) is defined for k >= 2".into()));
    }
    let b = b_size(k - 1, l);
    let p = &b * (l - 1u8) + 1u8;
    Ok(f_bound(k - 1, &p)? * b)
}

/// `f(1, l) = l` and `f(k, l) = t(k,l)(l-1)k + t(k,l)`.
pub fn f_bound(k: usize, l: &BigUint) -> Result<BigUint> {
    check_bound_args(k, l)?;
    if k == 1 {
        return Ok(l.clone());
    }
    let t = t_bound(k, l)?;
    Ok(&t * (l - 1u8) * k + &t)
}

/// One member of a packing: an exact copy of `B(depth, l)` in the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arborescence {
    pub root: usize,
    pub depth: usize,
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    /// Out-neighbour of every non-root vertex inside the member.
    pub parent: BTreeMap<usize, usize>,
}

impl Arborescence {
    /// Children of `v` inside the member, ascending.
    pub fn children(&self, v: usize) -> Vec<usize> {
        self.parent.iter().filter(|(_, &p)| p == v).map(|(&c, _)| c).collect()
    }

    /// Member path from `v` up to the root.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Whether the member is an exact `B(depth, l)` subdigraph of `host`.
    pub fn is_exact_in(&self, host: &Digraph, l: usize) -> bool {
        if self.parent.keys().any(|&c| !self.vertices.contains(&c))
            || self.parent.iter().any(|(&c, &p)| !host.has_arc(c, p))
            || self.parent.contains_key(&self.root)
        {
            return false;
        }
        if self.vertices.len() != self.parent.len() + 1 {
            return false;
        }
        // every vertex at distance < depth from the root has exactly l children
        let mut layer = vec![self.root];
        for _ in 0..self.depth {
            let mut next = Vec::new();
            for &v in &layer {
                let ch = self.children(v);
                if ch.len() != l {
                    return false;
                }
                next.extend(ch);
            }
            layer = next;
        }
        layer.iter().all(|&v| self.children(v).is_empty())
            && Some(self.vertices.len()) == crate::pattern::branching_size(self.depth, l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub branching: usize,
    pub members: Vec<Arborescence>,
    /// Vertices in no member, ascending.
    pub uncovered: Vec<usize>,
    /// Index of a member that reached the requested depth, if the greedy
    /// procedure stopped early because of it.
    pub complete: Option<usize>,
}

impl Packing {
    /// Member index of every vertex.
    pub fn member_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (i, m) in self.members.iter().enumerate() {
            for &v in &m.vertices {
                out[v] = Some(i);
            }
        }
        out
    }

    /// Members are disjoint exact copies of `B(depth, l)` and the uncovered
    /// set is exactly the rest.
    pub fn is_valid_in(&self, host: &Digraph) -> bool {
        let n = host.vertex_count();
        let mut count = vec![0usize; n];
        for m in &self.members {
            if m.depth == 0 || !m.is_exact_in(host, self.branching) {
                return false;
            }
            for &v in &m.vertices {
                if v >= n {
                    return false;
                }
                count[v] += 1;
            }
        }
        let uncovered: Vec<usize> = (0..n).filter(|&v| count[v] == 0).collect();
        count.iter().all(|&c| c <= 1) && uncovered == self.uncovered
    }

    /// Neither augmentation move applies: no uncovered vertex has `l`
    /// uncovered in-neighbours, nor `l` in-neighbours that are roots of
    /// members of one common depth.
    pub fn is_locally_maximal(&self, host: &Digraph) -> bool {
        let member_of = self.member_of(host.vertex_count());
        self.uncovered.iter().all(|&u| move_at(host, self.branching, u, &member_of, &self.members).is_none())
    }
}

enum Move {
    /// New depth-1 member with these leaves.
    Star(Vec<usize>),
    /// Merge these members (all of one depth) under a new root.
    Merge(Vec<usize>),
}

fn move_at(d: &Digraph, l: usize, u: usize, member_of: &[Option<usize>], members: &[Arborescence]) -> Option<Move> {
    let free: Vec<usize> = d.in_neighbours(u).iter().copied().filter(|&w| member_of[w].is_none()).take(l).collect();
    if free.len() == l {
        return Some(Move::Star(free));
    }
    let mut by_depth: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &w in d.in_neighbours(u) {
        if let Some(i) = member_of[w] {
            if members[i].root == w {
                by_depth.entry(members[i].depth).or_default().push(i);
            }
        }
    }
    by_depth.into_values().find(|ms| ms.len() >= l).map(|ms| Move::Merge(ms[..l].to_vec()))
}

/// Greedy packing of `l`-branching in-arborescences, locally maximal under
/// the star and merge moves (applied to fixpoint in ascending vertex order).
/// Stops as soon as some member has depth `max_depth`.
pub fn maximal_packing(d: &Digraph, l: usize, max_depth: usize) -> Result<Packing> {
    if l < 2 || max_depth == 0 {
        return Err(Error::InvalidArgument("packings need l >= 2 and max_depth >= 1".into()));
    }
    let n = d.vertex_count();
    let mut member_of: Vec<Option<usize>> = vec![None; n];
    let mut members: Vec<Arborescence> = Vec::new();
    let mut retired = vec![false; 0];
    let mut complete = None;
    'outer: loop {
        let mut changed = false;
        for u in 0..n {
            if member_of[u].is_some() {
                continue;
            }
            let Some(mv) = move_at(d, l, u, &member_of, &members) else { continue };
            changed = true;
            let idx = members.len();
            let member = match mv {
                Move::Star(leaves) => {
                    let mut vertices = leaves.clone();
                    vertices.push(u);
                    vertices.sort_unstable();
                    Arborescence { root: u, depth: 1, vertices, parent: leaves.iter().map(|&c| (c, u)).collect() }
                }
                Move::Merge(parts) => {
                    let depth = members[parts[0]].depth + 1;
                    let mut vertices = vec![u];
                    let mut parent = BTreeMap::new();
                    for &p in &parts {
                        retired[p] = true;
                        vertices.extend_from_slice(&members[p].vertices);
                        parent.extend(members[p].parent.iter().map(|(&a, &b)| (a, b)));
                        parent.insert(members[p].root, u);
                    }
                    vertices.sort_unstable();
                    Arborescence { root: u, depth, vertices, parent }
                }
            };
            for &v in &member.vertices {
                member_of[v] = Some(idx);
            }
            let deep = member.depth >= max_depth;
            members.push(member);
            retired.push(false);
            if deep {
                complete = Some(idx);
                break 'outer;
            }
        }
        if !changed {
            break;
        }
    }
    // Drop merged-away members and renumber.
    let mut kept = Vec::new();
    let mut complete_new = None;
    for (i, m) in members.into_iter().enumerate() {
        if !retired[i] {
            if complete == Some(i) {
                complete_new = Some(kept.len());
            }
            kept.push(m);
        }
    }
    let uncovered = (0..n).filter(|&v| member_of[v].is_none()).collect();
    Ok(Packing { branching: l, members: kept, uncovered, complete: complete_new })
}

/// `|S|` vertex-disjoint `(S,T)`-dipaths, one from every vertex of `S`,
/// when every vertex of `S` has in-degree 0, `S ∩ T = ∅`, and
/// `d⁺(v) >= Δ⁻(D)` outside `T`.
pub fn path_system(d: &Digraph, sources: &[usize], targets: &[usize]) -> Result<PathSystem> {
    let n = d.vertex_count();
    let unmet = |m: String| Err(Error::HypothesisUnmet(m));
    if let Some(&v) = sources.iter().chain(targets).find(|&&v| v >= n) {
        return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
    }
    if let Some(&s) = sources.iter().find(|&&s| d.in_degree(s) > 0) {
        return unmet(format!("source {s} has in-degree {}", d.in_degree(s)));
    }
    let mut in_t = vec![false; n];
    for &t in targets {
        in_t[t] = true;
    }
    if let Some(&s) = sources.iter().find(|&&s| in_t[s]) {
        return unmet(format!("vertex {s} is both a source and a target"));
    }
    let max_in = d.degrees().max_in_degree;
    if let Some(v) = (0..n).find(|&v| !in_t[v] && d.out_degree(v) < max_in) {
        return unmet(format!("vertex {v} outside T has out-degree {} < maximum in-degree {max_in}", d.out_degree(v)));
    }
    if !sources.is_empty() && max_in == 0 {
        return unmet("the digraph has no arcs, so no source reaches T".into());
    }
    let system = disjoint_paths(d, sources, targets).system;
    let mut distinct = sources.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if system.len() != distinct.len() {
        return Err(Error::Internal(format!("found {} disjoint paths for {} sources", system.len(), distinct.len())));
    }
    Ok(system)
}

/// Which branch of the construction produced a `B(k,l)` subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchingRoute {
    /// Depth 0, or a single vertex with `l` in-neighbours.
    Direct,
    /// A packing member reached depth `k`.
    PackingMember,
    /// Recursion on the digraph `H` of direct root-to-member arcs.
    RootDigraph,
    /// Recursion on `H` augmented by the redistribution paths.
    Augmented,
}

/// Subdivision of `B(k, l)`. Guaranteed when `δ⁺ >= f(k, l)`; for `l = 1`
/// the pattern is a dipath and `δ⁺ >= k` suffices.
pub fn find_branching(d: &Digraph, k: usize, l: usize) -> Result<SubdivisionCertificate> {
    Ok(find_branching_traced(d, k, l)?.0)
}

pub fn find_branching_traced(d: &Digraph, k: usize, l: usize) -> Result<(SubdivisionCertificate, BranchingRoute)> {
    if l == 0 {
        return Err(Error::InvalidPattern("branching factor must be at least 1".into()));
    }
    let pattern = PatternSpec::branching(k, l)?;
    if d.vertex_count() == 0 {
        return Err(Error::HypothesisUnmet("empty digraph".into()));
    }
    if k == 0 {
        let mut b = CertificateBuilder::new(d, pattern);
        b.map(0, 0)?;
        return Ok((b.finish()?, BranchingRoute::Direct));
    }
    if l == 1 {
        // B(k,1) is a dipath of length k into the root.
        let path = dipath_vertices(&find_blocked_path(d, 0, &[k])?);
        let mut b = CertificateBuilder::new(d, pattern);
        let seq: Vec<usize> = (0..=k).rev().collect();
        b.route(&seq, &path)?;
        return Ok((b.finish()?, BranchingRoute::Direct));
    }
    if k == 1 {
        let v = d
            .vertices()
            .find(|&v| d.in_degree(v) >= l)
            .ok_or_else(|| unmet_or_bug(d, k, l, "no vertex has in-degree l".into()))?;
        let mut b = CertificateBuilder::new(d, pattern);
        for (i, &w) in d.in_neighbours(v)[..l].iter().enumerate() {
            b.path(i + 1, 0, vec![w, v])?;
        }
        return Ok((b.finish()?, BranchingRoute::Direct));
    }
    let packing = maximal_packing(d, l, k)?;
    find_branching_with_packing(d, k, l, &packing)
}

fn unmet_or_bug(d: &Digraph, k: usize, l: usize, state: String) -> Error {
    let have = BigUint::from(d.min_out_degree());
    let need = if l == 1 { Ok(BigUint::from(k)) } else { f_bound(k, &BigUint::from(l)) };
    match need {
        Ok(f) if have >= f => Error::Internal(format!("B({k},{l}) construction failed with minimum out-degree {have} >= f = {f}: {state}")),
        Ok(f) => Error::HypothesisUnmet(format!("B({k},{l}): minimum out-degree {have} is below f = {f} ({state})")),
        Err(e) => e,
    }
}

/// The construction for `k >= 2`, `l >= 2` from a given packing, which must
/// be valid and locally maximal. A member of depth `>= k` is used directly.
pub fn find_branching_with_packing(
    d: &Digraph,
    k: usize,
    l: usize,
    packing: &Packing,
) -> Result<(SubdivisionCertificate, BranchingRoute)> {
    if k < 2 || l < 2 || packing.branching != l {
        return Err(Error::InvalidArgument("the packing route needs k >= 2, l >= 2 and a matching packing".into()));
    }
    if !packing.is_valid_in(d) {
        return Err(Error::InvalidArgument("packing is not a packing of the host".into()));
    }
    let pattern = PatternSpec::branching(k, l)?;
    if let Some(m) = packing.members.iter().find(|m| m.depth >= k) {
        return Ok((certify_member(d, pattern, m, k, l)?, BranchingRoute::PackingMember));
    }
    if !packing.is_locally_maximal(d) {
        return Err(Error::InvalidArgument("packing is not locally maximal".into()));
    }
    if packing.members.is_empty() {
        return Err(unmet_or_bug(d, k, l, "packing is empty".into()));
    }

    let lb = BigUint::from(l);
    let t_big = t_bound(k, &lb)?;
    let b_prev = b_size(k - 1, &lb).to_usize().expect("b(k-1,l) fits since members of that size exist");
    let threshold_big = &t_big / b_prev;
    let n = d.vertex_count();
    let h = RootDigraph::direct(d, packing);
    let min_h = h.graph.min_out_degree();
    if BigUint::from(min_h) >= threshold_big {
        let cert = claim(d, packing, &h, k, l).map_err(|e| demote(d, k, l, e))?;
        return Ok((cert, BranchingRoute::RootDigraph));
    }
    // t exceeds any out-degree: redistribution cannot produce anything.
    let Some(t) = t_big.to_usize().filter(|&t| t < n.saturating_mul(n).max(1)) else {
        return Err(unmet_or_bug(d, k, l, format!("root digraph has minimum out-degree {min_h}")));
    };
    match augmented_root_digraph(d, packing, &h, t, k, l) {
        Ok(m) => {
            let cert = claim(d, packing, &m, k, l).map_err(|e| demote(d, k, l, e))?;
            Ok((cert, BranchingRoute::Augmented))
        }
        Err(e) => {
            // Best effort below the bound: the claim on H alone may still work.
            if let Ok(cert) = claim(d, packing, &h, k, l) {
                return Ok((cert, BranchingRoute::RootDigraph));
            }
            Err(demote(d, k, l, e))
        }
    }
}

/// Re-labels a failure from an inner step against the outer bound.
fn demote(d: &Digraph, k: usize, l: usize, e: Error) -> Error {
    match e {
        Error::HypothesisUnmet(s) | Error::Internal(s) => unmet_or_bug(d, k, l, s),
        other => other,
    }
}

fn certify_member(d: &Digraph, pattern: PatternSpec, m: &Arborescence, k: usize, l: usize) -> Result<SubdivisionCertificate> {
    let mut b = CertificateBuilder::new(d, pattern);
    b.map(0, m.root)?;
    // Walk the pattern in heap order alongside the member's children lists.
    let mut layer = vec![(0usize, m.root)];
    for _ in 0..k {
        let mut next = Vec::new();
        for &(q, v) in &layer {
            for (j, c) in m.children(v).into_iter().take(l).enumerate() {
                let child = q * l + 1 + j;
                b.path(child, q, vec![c, v])?;
                next.push((child, c));
            }
        }
        layer = next;
    }
    b.finish()
}

/// Digraph on packing members with, for every arc `(a, b)`, a host dipath
/// from the root of `a` to a vertex of `b` whose internal vertices are
/// uncovered.
struct RootDigraph {
    graph: Digraph,
    connector: BTreeMap<(usize, usize), Vec<usize>>,
}

impl RootDigraph {
    fn direct(d: &Digraph, packing: &Packing) -> Self {
        let member_of = packing.member_of(d.vertex_count());
        let mut connector = BTreeMap::new();
        for (a, m) in packing.members.iter().enumerate() {
            for &z in d.out_neighbours(m.root) {
                if let Some(b) = member_of[z] {
                    if b != a {
                        connector.entry((a, b)).or_insert_with(|| vec![m.root, z]);
                    }
                }
            }
        }
        let graph = Digraph::from_arcs_lossy(packing.members.len(), connector.keys().copied());
        RootDigraph { graph, connector }
    }
}

/// Builds `M`: redistributes the uncovered out-neighbours of roots in `X`
/// over `t` copies each, links the copies to `T` by the path-system lemma,
/// extends every path by one covered vertex, and adds the resulting
/// connectors to `H`.
fn augmented_root_digraph(d: &Digraph, packing: &Packing, h: &RootDigraph, t: usize, k: usize, l: usize) -> Result<RootDigraph> {
    let n = d.vertex_count();
    let member_of = packing.member_of(n);
    let uncovered = &packing.uncovered;
    let mut g_index = vec![usize::MAX; n];
    for (i, &u) in uncovered.iter().enumerate() {
        g_index[u] = i;
    }
    let in_u = |v: usize| member_of[v].is_none();
    let big = t * (l - 1) * k;
    let x: Vec<usize> = packing
        .members
        .iter()
        .map(|m| m.root)
        .filter(|&r| d.out_neighbours(r).iter().filter(|&&w| in_u(w)).count() >= big)
        .collect();
    if x.is_empty() {
        return Err(Error::HypothesisUnmet("no root has enough uncovered out-neighbours".into()));
    }

    // G: uncovered vertices first, then t copies of every vertex of X.
    let nu = uncovered.len();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for &u in uncovered {
        for &w in d.out_neighbours(u) {
            if in_u(w) {
                arcs.push((g_index[u], g_index[w]));
            }
        }
    }
    let mut copy_of = Vec::new();
    for (xi, &v) in x.iter().enumerate() {
        let outs: Vec<usize> = d.out_neighbours(v).iter().copied().filter(|&w| in_u(w)).collect();
        for (j, &w) in outs.iter().enumerate() {
            arcs.push((nu + xi * t + j % t, g_index[w]));
        }
        copy_of.extend(std::iter::repeat_n(v, t));
    }
    let g = Digraph::new(nu + x.len() * t, arcs).map_err(|e| Error::Internal(e.to_string()))?;

    // Redistribution must leave the in-degree of every uncovered vertex intact.
    let mut in_x = vec![false; n];
    for &v in &x {
        in_x[v] = true;
    }
    for (i, &u) in uncovered.iter().enumerate() {
        let expected = d.in_neighbours(u).iter().filter(|&&w| in_u(w) || in_x[w]).count();
        if g.in_degree(i) != expected {
            return Err(Error::Internal(format!("redistribution changed the in-degree of {u}")));
        }
    }

    let sources: Vec<usize> = (nu..g.vertex_count()).collect();
    let targets: Vec<usize> = (0..nu)
        .filter(|&i| d.out_neighbours(uncovered[i]).iter().filter(|&&w| !in_u(w)).count() > t)
        .collect();
    let system = path_system(&g, &sources, &targets)?;

    let mut result = RootDigraph { graph: h.graph.clone(), connector: h.connector.clone() };
    let mut landed: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in &system.paths {
        let v = copy_of[p[0] - nu];
        let a = member_of[v].expect("roots are covered");
        let mut host_path = vec![v];
        host_path.extend(p[1..].iter().map(|&i| uncovered[i]));
        let end = *host_path.last().expect("nonempty");
        let taken = landed.entry(v).or_default();
        let w = d
            .out_neighbours(end)
            .iter()
            .copied()
            .find(|&w| !in_u(w) && w != v && !taken.contains(&w))
            .ok_or_else(|| Error::Internal(format!("cannot extend the path ending at {end}")))?;
        taken.push(w);
        host_path.push(w);
        let b = member_of[w].expect("covered");
        if b != a {
            result.connector.entry((a, b)).or_insert(host_path);
        }
    }
    result.graph = Digraph::from_arcs_lossy(packing.members.len(), result.connector.keys().copied());
    Ok(result)
}

/// From a subdivision of `B(k-1, p)` in the root digraph, with
/// `p = b(k-1,l)(l-1) + 1`, assembles a subdivision of `B(k, l)` in `d`.
fn claim(d: &Digraph, packing: &Packing, root: &RootDigraph, k: usize, l: usize) -> Result<SubdivisionCertificate> {
    let b_prev = crate::pattern::branching_size(k - 1, l).ok_or_else(|| Error::Internal("b(k-1,l) overflows".into()))?;
    let p = b_prev * (l - 1) + 1;
    let inner = find_branching(&root.graph, k - 1, p)?;

    let image = |q: usize| inner.branch_of(q).expect("complete branch map");
    let landing = |a: usize, b: usize| *root.connector[&(a, b)].last().expect("nonempty connector");

    // For each inner pattern vertex, which of its p children to keep and
    // where their connectors land (h_r).
    let inner_pattern = &inner.pattern.pattern;
    let mut kept: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
    let mut stack = vec![0usize];
    while let Some(q) = stack.pop() {
        let children: Vec<usize> = inner_pattern.in_neighbours(q).to_vec();
        if children.is_empty() {
            continue;
        }
        let r = image(q);
        let mut by_landing: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &c in &children {
            let path = inner.path_for(c, q).expect("arc path");
            let last_in = path[path.len() - 2];
            by_landing.entry(landing(last_in, r)).or_default().push(c);
        }
        let (h_r, group) = by_landing
            .into_iter()
            .find(|(_, g)| g.len() >= l)
            .ok_or_else(|| Error::Internal(format!("no vertex of the member rooted at {} collects {l} connectors", packing.members[r].root)))?;
        let chosen: Vec<usize> = group[..l].to_vec();
        stack.extend(&chosen);
        kept.insert(q, (h_r, chosen));
    }

    // Host path from member x's entry vertex up to its root.
    let up = |x: usize, entry: usize| packing.members[x].path_to_root(entry);

    let pattern = PatternSpec::branching(k, l)?;
    let mut builder = CertificateBuilder::new(d, pattern);
    // (outer pattern vertex, inner pattern vertex)
    let mut queue = vec![(0usize, 0usize)];
    builder.map(0, kept[&0].0)?;
    while let Some((q_out, q_in)) = queue.pop() {
        let Some((h_r, chosen)) = kept.get(&q_in) else {
            // Inner leaf: its member's root children form the last level.
            let m = &packing.members[image(q_in)];
            for (j, c) in m.children(m.root).into_iter().take(l).enumerate() {
                builder.path(q_out * l + 1 + j, q_out, vec![c, m.root])?;
            }
            continue;
        };
        for (j, &c) in chosen.iter().enumerate() {
            let child_out = q_out * l + 1 + j;
            let members_path = inner.path_for(c, q_in).expect("arc path");
            let start = members_path[0];
            let mut host = match kept.get(&c) {
                Some((h_c, _)) => up(start, *h_c),
                None => vec![packing.members[start].root],
            };
            for w in members_path.windows(2) {
                let conn = &root.connector[&(w[0], w[1])];
                host.extend_from_slice(&conn[1..]);
                if w[1] != image(q_in) {
                    let entry = *conn.last().expect("nonempty");
                    host.extend_from_slice(&up(w[1], entry)[1..]);
                }
            }
            debug_assert_eq!(host.last(), Some(h_r));
            builder.path(child_out, q_out, host)?;
            queue.push((child_out, c));
        }
    }
    builder.finish()
}

/// Host vertices of a forward single-block path certificate, in order.
fn dipath_vertices(cert: &SubdivisionCertificate) -> Vec<usize> {
    let mut arcs = cert.arc_paths.clone();
    arcs.sort_by_key(|a| a.tail);
    let mut out = vec![arcs[0].path[0]];
    for a in arcs {
        out.extend_from_slice(&a.path[1..]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_subdivision;
    use crate::digraph::families::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn recurrence_values() {
        assert_eq!(f_bound(1, &big(3)).unwrap(), big(3));
        assert_eq!(b_size(2, &big(2)), big(7));
        assert_eq!(t_bound(2, &big(2)).unwrap(), big(12));
        assert_eq!(f_bound(2, &big(2)).unwrap(), big(36));
        assert_eq!(f_bound(3, &big(2)).unwrap(), big(241_920));
        assert!(f_bound(2, &big(1)).is_err());
        assert!(t_bound(1, &big(3)).is_err());
    }

    #[test]
    fn packing_examples() {
        let p = maximal_packing(&transitive_tournament(1), 2, 2).unwrap();
        assert!(p.members.is_empty());

        let b12 = PatternSpec::branching(1, 2).unwrap().pattern;
        let p = maximal_packing(&b12, 2, 2).unwrap();
        assert_eq!(p.members.len(), 1);
        assert!(p.uncovered.is_empty());
        assert!(p.is_valid_in(&b12) && p.is_locally_maximal(&b12));

        let k5 = complete_digraph(5);
        let p = maximal_packing(&k5, 2, 2).unwrap();
        assert!(p.is_valid_in(&k5));
        assert!(p.complete.is_some() || p.is_locally_maximal(&k5));
    }

    #[test]
    fn path_system_preconditions() {
        // out-star forest: sources 0,1 point at leaves 2,3
        let g = Digraph::new(4, [(0, 2), (1, 3)]).unwrap();
        let sys = path_system(&g, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(sys.paths, vec![vec![0, 2], vec![1, 3]]);

        let g = Digraph::new(4, [(0, 2), (2, 3), (1, 3)]).unwrap();
        // vertex 3 has in-degree 2 but 2 has out-degree 1
        assert!(matches!(path_system(&g, &[0, 1], &[3]), Err(Error::HypothesisUnmet(_))));
        assert!(matches!(path_system(&g, &[2], &[3]), Err(Error::HypothesisUnmet(_))));
    }

    #[test]
    fn small_branchings() {
        let d = complete_digraph(4);
        let (cert, route) = find_branching_traced(&d, 1, 3).unwrap();
        assert_eq!(route, BranchingRoute::Direct);
        assert!(verify_subdivision(&d, &cert).ok);
        let (cert, _) = find_branching_traced(&directed_cycle(5), 3, 1).unwrap();
        assert!(verify_subdivision(&directed_cycle(5), &cert).ok);
        assert!(matches!(find_branching(&transitive_tournament(4), 2, 2), Err(Error::HypothesisUnmet(_))));
    }
}
