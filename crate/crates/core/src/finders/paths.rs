use crate::certificate::{CertificateBuilder, SubdivisionCertificate};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::{PatternKind, PatternSpec};
use crate::structure::{shortest_path_from_set, shortest_path_to_set, strong_components, reachable_within};

use super::{cycle_from_maximal_path, exact_walk, failure, maximal_path};

/// Finds a subdivision of `P(k_1, …, k_l)` whose initial branch vertex is
/// `v`: forward blocks may be longer than requested, backward blocks have
/// exactly the requested length. Succeeds whenever the minimum out-degree is
/// at least `Σ k_i`.
///
/// When `k_1 = 0` the pattern starts with a backward block, so the initial
/// branch vertex is the head of that block, which the construction reaches
/// from `v` by a forward dipath that is not part of the certificate.
pub fn find_blocked_path(d: &Digraph, v: usize, ks: &[usize]) -> Result<SubdivisionCertificate> {
    let pattern = PatternSpec::blocked_path(ks)?;
    if v >= d.vertex_count() {
        return Err(Error::InvalidArgument(format!("start vertex {v} not in a digraph on {} vertices", d.vertex_count())));
    }
    let bound: usize = ks.iter().sum();
    let alive = vec![true; d.vertex_count()];
    let mut blocks = Vec::new();
    grow_blocks(d, v, ks, alive, &mut blocks).map_err(|state| failure(d, bound, "blocked path", state))?;

    if ks[0] == 0 {
        // The forward lead-in from v to the first junction is not part of the pattern.
        blocks.remove(0);
    }
    let mut builder = CertificateBuilder::new(d, pattern.clone());
    if blocks.is_empty() {
        builder.map(0, v)?;
    }
    for (seq, host) in pattern.route_sequences().iter().zip(&blocks) {
        builder.route(seq, host)?;
    }
    builder.finish()
}

/// Host blocks in arc order. Odd blocks (1-based) run forward from the
/// previous junction, even blocks end at it.
fn grow_blocks(
    d: &Digraph,
    v: usize,
    ks: &[usize],
    mut alive: Vec<bool>,
    blocks: &mut Vec<Vec<usize>>,
) -> std::result::Result<(), String> {
    let n = d.vertex_count();
    let lead = exact_walk(d, v, ks[0], &alive).ok_or_else(|| format!("no dipath of length {} from {v}", ks[0]))?;
    if ks.len() == 1 {
        blocks.push(lead);
        return Ok(());
    }
    let u = *lead.last().expect("walk is nonempty");
    for &p in &lead[..lead.len() - 1] {
        alive[p] = false;
    }

    // A sink strong component H reachable from u in what is left.
    let reach = reachable_within(d, u, &alive);
    let members: Vec<usize> = (0..n).filter(|&w| reach[w]).collect();
    let (sub, old_of) = d.induced(&members);
    let sc = strong_components(&sub);
    let sink = *sc.sinks().first().expect("a finite digraph has a sink component");
    let mut in_h = vec![false; n];
    for (i, &c) in sc.component_of.iter().enumerate() {
        if c == sink {
            in_h[old_of[i]] = true;
        }
    }
    let to_h = shortest_path_to_set(d, u, &in_h, &alive).ok_or("sink component unreachable")?;
    let x = *to_h.last().expect("path is nonempty");

    let back = exact_path_into(d, x, ks[1], &in_h)
        .ok_or_else(|| format!("no dipath of length {} into {x} inside its sink component", ks[1]))?;
    let y = back[0];

    let mut forward = lead;
    forward.extend_from_slice(&to_h[1..]);
    blocks.push(forward);
    blocks.push(back.clone());
    if ks.len() == 2 {
        return Ok(());
    }
    let mut rest = in_h;
    for &p in &back[1..] {
        rest[p] = false;
    }
    grow_blocks(d, y, &ks[2..], rest, blocks)
}

/// A dipath with exactly `len` arcs ending at `x`, inside the strong vertex
/// set `within`: a long cycle plus a shortest path from the cycle to `x`,
/// walking backwards around the cycle for any missing length.
fn exact_path_into(d: &Digraph, x: usize, len: usize, within: &[bool]) -> Option<Vec<usize>> {
    let start = within.iter().position(|&b| b)?;
    let cycle = cycle_from_maximal_path(d, start, within)?;
    if cycle.len() <= len {
        return None;
    }
    let mut on_cycle = vec![false; d.vertex_count()];
    for &c in &cycle {
        on_cycle[c] = true;
    }
    let r = shortest_path_from_set(d, &on_cycle, x, within)?;
    let r_len = r.len() - 1;
    if r_len >= len {
        return Some(r[r_len - len..].to_vec());
    }
    let missing = len - r_len;
    let l = cycle.len();
    let j = cycle.iter().position(|&c| c == r[0]).expect("path starts on the cycle");
    let mut path: Vec<usize> = (1..=missing).rev().map(|s| cycle[(j + l - s % l) % l]).collect();
    path.extend_from_slice(&r);
    Some(path)
}

/// Lengths of the host blocks of a blocked-path certificate, in pattern
/// order. A zero first block is reported as 0.
pub fn blocked_path_block_lengths(cert: &SubdivisionCertificate) -> Vec<usize> {
    let PatternKind::BlockedPath(ks) = &cert.pattern.kind else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(ks.len());
    let mut pos = 0;
    for (i, &k) in ks.iter().enumerate() {
        let mut total = 0;
        for j in pos..pos + k {
            let (t, h) = if i % 2 == 0 { (j, j + 1) } else { (j + 1, j) };
            total += cert.path_for(t, h).map_or(0, |p| p.len() - 1);
        }
        out.push(total);
        pos += k;
    }
    out
}

/// A directed cycle of length at least `k`, closed at the terminal vertex of
/// a maximal dipath from vertex 0. Guaranteed when `δ⁺ ≥ k - 1`.
pub fn find_long_cycle(d: &Digraph, k: usize) -> Result<Vec<usize>> {
    let bound = k.saturating_sub(1);
    if d.vertex_count() == 0 {
        return Err(failure(d, bound.max(1), "long cycle", "empty digraph".into()));
    }
    let alive = vec![true; d.vertex_count()];
    match cycle_from_maximal_path(d, 0, &alive) {
        Some(c) if c.len() >= k.max(2) => Ok(c),
        Some(c) => Err(failure(d, bound, "long cycle", format!("closed a cycle of length {} only", c.len()))),
        None => Err(failure(d, bound.max(1), "long cycle", "maximal dipath ends in a sink".into())),
    }
}

/// Subdivision of `C(k,1)`: the terminal `u` of a maximal dipath `P` with
/// first and last out-neighbours `v`, `w` along `P` gives `(u,v) ∪ P[v,w]`
/// and the arc `(u,w)`. Guaranteed when `δ⁺ ≥ k`.
///
/// `C(1,1)` would need parallel arcs; for `k = 1` the digon pattern is
/// certified instead (any directed cycle subdivides it).
pub fn find_c_k_1(d: &Digraph, k: usize) -> Result<SubdivisionCertificate> {
    if k == 0 {
        return Err(Error::InvalidPattern("C(k,1) needs k >= 1".into()));
    }
    if k == 1 {
        return digon_subdivision(d);
    }
    let pattern = PatternSpec::two_block_cycle(k, 1)?;
    let (long, short) = c_k_1_paths(d).ok_or_else(|| failure(d, k, "C(k,1)", "maximal dipath end has fewer than two out-neighbours".into()))?;
    if long.len() - 1 < k {
        return Err(failure(d, k, "C(k,1)", format!("long side has length {} only", long.len() - 1)));
    }
    let seqs = pattern.route_sequences();
    let mut b = CertificateBuilder::new(d, pattern.clone());
    b.route(&seqs[0], &long)?.route(&seqs[1], &short)?;
    b.finish()
}

/// `((u, v, …, w), (u, w))` from the terminal of a maximal dipath from 0.
pub(crate) fn c_k_1_paths(d: &Digraph) -> Option<(Vec<usize>, Vec<usize>)> {
    if d.vertex_count() == 0 {
        return None;
    }
    let alive = vec![true; d.vertex_count()];
    let path = maximal_path(d, 0, &alive);
    let u = *path.last()?;
    let first = path.iter().position(|&p| d.has_arc(u, p))?;
    let last = path.iter().rposition(|&p| d.has_arc(u, p))?;
    if first == last {
        return None;
    }
    let mut long = vec![u];
    long.extend_from_slice(&path[first..=last]);
    Some((long, vec![u, path[last]]))
}

/// Any directed cycle, certified as a subdivision of the digon.
pub(crate) fn digon_subdivision(d: &Digraph) -> Result<SubdivisionCertificate> {
    let cycle = find_long_cycle(d, 2)?;
    let mut b = CertificateBuilder::new(d, PatternSpec::complete_digraph(2)?);
    let mut back = cycle[1..].to_vec();
    back.push(cycle[0]);
    b.path(0, 1, vec![cycle[0], cycle[1]])?.path(1, 0, back)?;
    b.finish()
}
