//! Forks: a spine dipath whose last vertex (the junction) starts two tails.
//! Growing a fork until its tail ends close back onto the spine yields
//! subdivisions of `C(k1,k2)` and of `P(k1,k2;k3)`.

use crate::certificate::{CertificateBuilder, SubdivisionCertificate};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

use super::paths::{c_k_1_paths, digon_subdivision};
use super::{exact_walk, failure, maximal_path};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForkVariant {
    /// Spine `A = (a_0, …, a_l)`.
    TwoTail,
    /// Spine `P` followed by the handle `A` of `k3 - 1` vertices.
    Handled { k3: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    pub variant: ForkVariant,
    pub spine: Vec<usize>,
    /// `B¹` (with `k1 - 1` vertices) and `B²` (with `k2 - 1` vertices).
    pub tails: [Vec<usize>; 2],
}

impl Fork {
    pub fn junction(&self) -> usize {
        *self.spine.last().expect("spine is nonempty")
    }

    /// Number of trailing spine vertices that tails may not close onto.
    fn reserved(&self) -> usize {
        match self.variant {
            ForkVariant::TwoTail => 1,
            ForkVariant::Handled { k3 } => k3,
        }
    }

    /// Spine vertices a tail end may close onto: all of `A` but `a_l` for a
    /// two-tail fork; `p_1, …, p_{l-1}` for a handled fork.
    pub fn targets(&self) -> &[usize] {
        &self.spine[..self.spine.len().saturating_sub(self.reserved())]
    }

    /// The fork parameter `l`.
    pub fn ell(&self) -> usize {
        match self.variant {
            ForkVariant::TwoTail => self.spine.len() - 1,
            ForkVariant::Handled { k3 } => self.spine.len() + 1 - k3,
        }
    }

    /// Checks the defining structure in `host` for tail sizes `k1 - 1`, `k2 - 1`.
    pub fn is_valid_in(&self, host: &Digraph, k1: usize, k2: usize) -> bool {
        let mut seen = vec![false; host.vertex_count()];
        let all = self.spine.iter().chain(&self.tails[0]).chain(&self.tails[1]);
        for &v in all {
            if v >= host.vertex_count() || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        let min_spine = match self.variant {
            ForkVariant::TwoTail => 1,
            ForkVariant::Handled { k3 } => k3,
        };
        let x = self.junction();
        self.spine.len() >= min_spine
            && host.is_dipath(&self.spine)
            && self.tails[0].len() + 1 == k1
            && self.tails[1].len() + 1 == k2
            && self.tails.iter().all(|t| {
                t.is_empty() || (host.has_arc(x, t[0]) && host.is_dipath(t))
            })
    }
}

/// Two internally disjoint dipaths from the junction to a common end; the
/// first runs through `B¹`, the second through `B²`.
struct Closing {
    via: [Vec<usize>; 2],
    /// Spine index of the common end, when it lies on the spine.
    end_on_spine: Option<usize>,
}

enum Growth {
    /// `paths[which]` ends at a vertex dominating `target`.
    Hit { paths: [Vec<usize>; 2], which: usize, target: usize },
    Full([Vec<usize>; 2]),
}

enum Step {
    Closed(Closing),
    Extended(Fork),
}

struct Engine<'a> {
    d: &'a Digraph,
    /// Tail sizes `k1 - 1 >= k2 - 1 >= 1`.
    lens: [usize; 2],
    variant: ForkVariant,
}

impl Engine<'_> {
    fn first_hit(&self, v: usize, target: &[bool]) -> Option<usize> {
        self.d.out_neighbours(v).iter().copied().find(|&w| target[w])
    }

    fn initial_fork(&self) -> std::result::Result<Fork, String> {
        let d = self.d;
        let n = d.vertex_count();
        if n == 0 {
            return Err("empty digraph".into());
        }
        let spine_len = match self.variant {
            ForkVariant::TwoTail => 2,
            ForkVariant::Handled { k3 } => k3,
        };
        let all = vec![true; n];
        let spine = exact_walk(d, 0, spine_len - 1, &all).ok_or("no initial spine")?;
        let mut used = vec![false; n];
        for &v in &spine {
            used[v] = true;
        }
        let x = *spine.last().expect("spine is nonempty");
        let mut starts = d.out_neighbours(x).iter().copied().filter(|&w| !used[w]);
        let (s1, s2) = starts.next().zip(starts.next()).ok_or("junction has fewer than two free out-neighbours")?;
        used[s1] = true;
        used[s2] = true;
        let mut tails = [vec![s1], vec![s2]];
        for (t, &len) in tails.iter_mut().zip(&self.lens) {
            while t.len() < len {
                let end = *t.last().expect("tail is nonempty");
                let &w = d.out_neighbours(end).iter().find(|&&w| !used[w]).ok_or("initial tail got stuck")?;
                used[w] = true;
                t.push(w);
            }
        }
        Ok(Fork { variant: self.variant, spine, tails })
    }

    /// Grows two disjoint dipaths from distinct out-neighbours of `from`
    /// avoiding `blocked`, aiming for `self.lens` vertices (the second never
    /// ahead of the first), and stops as soon as an end dominates a `target`.
    fn grow_pair(&self, from: usize, blocked: &[bool], target: &[bool]) -> std::result::Result<Growth, String> {
        let d = self.d;
        let mut used = blocked.to_vec();
        let mut starts = d.out_neighbours(from).iter().copied().filter(|&w| !used[w] && !target[w]);
        let (s1, s2) = starts
            .next()
            .zip(starts.next())
            .ok_or_else(|| format!("{from} has fewer than two free out-neighbours"))?;
        used[s1] = true;
        used[s2] = true;
        let mut paths = [vec![s1], vec![s2]];
        loop {
            for which in 0..2 {
                let end = *paths[which].last().expect("nonempty");
                if let Some(t) = self.first_hit(end, target) {
                    return Ok(Growth::Hit { paths, which, target: t });
                }
            }
            let [l1, l2] = [paths[0].len(), paths[1].len()];
            if l1 >= self.lens[0] && l2 >= self.lens[1] {
                return Ok(Growth::Full(paths));
            }
            let g = if l1 >= self.lens[0] || l2 < self.lens[1].min(l1) { 1 } else { 0 };
            let end = *paths[g].last().expect("nonempty");
            let &w = d
                .out_neighbours(end)
                .iter()
                .find(|&&w| !used[w])
                .ok_or_else(|| format!("path from {from} stuck at {end} after {} vertices", paths[g].len()))?;
            used[w] = true;
            paths[g].push(w);
        }
    }

    fn step(&self, fork: &Fork) -> std::result::Result<Step, String> {
        let d = self.d;
        let n = d.vertex_count();
        let two_block = self.variant == ForkVariant::TwoTail;
        let x = fork.junction();
        let mut spine_index = vec![usize::MAX; n];
        for (i, &v) in fork.spine.iter().enumerate() {
            spine_index[v] = i;
        }
        let mut in_t = vec![false; n];
        for &v in fork.targets() {
            in_t[v] = true;
        }
        let mut in_fork = vec![false; n];
        for &v in fork.spine.iter().chain(&fork.tails[0]).chain(&fork.tails[1]) {
            in_fork[v] = true;
        }
        let ends = [*fork.tails[0].last().expect("tail"), *fork.tails[1].last().expect("tail")];
        let hits = [self.first_hit(ends[0], &in_t), self.first_hit(ends[1], &in_t)];
        let lead = |t: usize| -> Vec<usize> {
            let mut p = vec![x];
            p.extend_from_slice(&fork.tails[t]);
            p
        };

        if let [Some(a), Some(b)] = hits {
            let mut via = [lead(0), lead(1)];
            via[0].push(a);
            via[1].push(b);
            return Ok(Step::Closed(self.join_on_spine(fork, via, &spine_index)));
        }

        // e: a tail end with no out-neighbour among the targets; o: the other.
        let e = if hits[0].is_none() { 0 } else { 1 };
        let o = 1 - e;
        let extend = |t: usize, tails: [Vec<usize>; 2]| {
            let mut spine = fork.spine.clone();
            spine.extend_from_slice(&fork.tails[t]);
            Step::Extended(Fork { variant: self.variant, spine, tails })
        };

        let (pair, gamma, gamma_target) = match self.grow_pair(ends[e], &in_fork, &in_t)? {
            Growth::Full(paths) => return Ok(extend(e, paths)),
            Growth::Hit { paths, which, target } => {
                let g = paths[which].clone();
                (paths, g, target)
            }
        };
        let via_e = {
            let mut p = lead(e);
            p.extend_from_slice(&gamma);
            p.push(gamma_target);
            p
        };

        if let Some(m) = hits[o] {
            let mut via_o = lead(o);
            via_o.push(m);
            return Ok(Step::Closed(self.join_on_spine(fork, ordered(e, via_e, via_o), &spine_index)));
        }

        // Positions of the stage-one paths, for closing onto them.
        let mut on_pair = vec![None; n];
        for (g, p) in pair.iter().enumerate() {
            for (h, &v) in p.iter().enumerate() {
                on_pair[v] = Some((g, h));
            }
        }
        let close_on_pair = |via_o: Vec<usize>, z: usize| {
            let (g, h) = on_pair[z].expect("target lies on a stage-one path");
            let mut via_e = lead(e);
            via_e.extend_from_slice(&pair[g][..=h]);
            Closing { via: ordered(e, via_e, via_o), end_on_spine: None }
        };
        if two_block {
            if let Some(z) = self.first_hit(ends[o], &on_pair.iter().map(Option::is_some).collect::<Vec<_>>()) {
                let mut via_o = lead(o);
                via_o.push(z);
                return Ok(Step::Closed(close_on_pair(via_o, z)));
            }
        }

        let mut blocked = in_fork.clone();
        let mut target2 = in_t.clone();
        if two_block {
            for p in &pair {
                for &v in p {
                    blocked[v] = true;
                    target2[v] = true;
                }
            }
        } else {
            for &v in &gamma {
                blocked[v] = true;
            }
        }
        match self.grow_pair(ends[o], &blocked, &target2)? {
            Growth::Full(paths) => Ok(extend(o, paths)),
            Growth::Hit { paths, which, target } => {
                let mut via_o = lead(o);
                via_o.extend_from_slice(&paths[which]);
                via_o.push(target);
                if in_t[target] {
                    Ok(Step::Closed(self.join_on_spine(fork, ordered(e, via_e, via_o), &spine_index)))
                } else {
                    Ok(Step::Closed(close_on_pair(via_o, target)))
                }
            }
        }
    }

    /// Both dipaths end on the spine; the one ending earlier is extended
    /// along the spine to the later end.
    fn join_on_spine(&self, fork: &Fork, mut via: [Vec<usize>; 2], spine_index: &[usize]) -> Closing {
        let idx = [spine_index[*via[0].last().unwrap()], spine_index[*via[1].last().unwrap()]];
        let far = idx[0].max(idx[1]);
        for t in 0..2 {
            via[t].extend_from_slice(&fork.spine[idx[t] + 1..=far]);
        }
        Closing { via, end_on_spine: Some(far) }
    }

    fn run(&self) -> std::result::Result<(Fork, Closing), String> {
        let mut fork = self.initial_fork()?;
        for _ in 0..=self.d.vertex_count() {
            match self.step(&fork)? {
                Step::Closed(c) => return Ok((fork, c)),
                Step::Extended(next) => fork = next,
            }
        }
        Err("fork kept growing past the host size".into())
    }
}

/// Puts the path through tail `e` in slot `e`.
fn ordered(e: usize, via_e: Vec<usize>, via_o: Vec<usize>) -> [Vec<usize>; 2] {
    if e == 0 {
        [via_e, via_o]
    } else {
        [via_o, via_e]
    }
}

/// Subdivision of `C(k1,k2)` (two internally disjoint dipaths of lengths at
/// least `k1` and `k2` with common ends). Guaranteed when
/// `δ⁺ ≥ 2(k1 + k2) - 1`.
///
/// `C(1,1)` would need parallel arcs and is answered with the digon pattern;
/// `C(k,1)` goes through the longest-path argument.
pub fn find_two_block_cycle(d: &Digraph, k1: usize, k2: usize) -> Result<SubdivisionCertificate> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidPattern("two-block cycle lengths must be positive".into()));
    }
    if (k1, k2) == (1, 1) {
        return digon_subdivision(d);
    }
    let pattern = PatternSpec::two_block_cycle(k1, k2)?;
    let (big, small) = (k1.max(k2), k1.min(k2));
    let bound = 2 * (k1 + k2) - 1;
    let what = "two-block cycle";
    let [long, short] = if small == 1 {
        let (long, short) =
            c_k_1_paths(d).ok_or_else(|| failure(d, bound, what, "maximal dipath end has one out-neighbour".into()))?;
        if long.len() - 1 < big {
            return Err(failure(d, bound, what, format!("long side has length {} only", long.len() - 1)));
        }
        [long, short]
    } else {
        let engine = Engine { d, lens: [big - 1, small - 1], variant: ForkVariant::TwoTail };
        engine.run().map_err(|s| failure(d, bound, what, s))?.1.via
    };
    let seqs = pattern.route_sequences();
    let (first, second) = if k1 >= k2 { (&long, &short) } else { (&short, &long) };
    let mut b = CertificateBuilder::new(d, pattern.clone());
    b.route(&seqs[0], first)?.route(&seqs[1], second)?;
    b.finish()
}

/// Subdivision of `P(k1,k2;k3)`: two internally disjoint `(x,y)`-dipaths of
/// lengths at least `k1`, `k2` and a `(y,x)`-dipath of length at least `k3`,
/// all internally disjoint. Guaranteed when `δ⁺ ≥ 3k1 + 2k2 + k3 - 5` with
/// `k1 >= k2` (the arguments may come in either order).
pub fn find_triple_path(d: &Digraph, k1: usize, k2: usize, k3: usize) -> Result<SubdivisionCertificate> {
    let pattern = PatternSpec::triple_path(k1, k2, k3)?;
    let (big, small) = (k1.max(k2), k1.min(k2));
    let bound = 3 * big + 2 * small + k3 - 5;
    let what = "triple path";
    let (long, short, back) = if small == 1 {
        triple_from_maximal_path(d, big, k3).map_err(|s| failure(d, bound, what, s))?
    } else {
        let engine = Engine { d, lens: [big - 1, small - 1], variant: ForkVariant::Handled { k3 } };
        let (fork, closing) = engine.run().map_err(|s| failure(d, bound, what, s))?;
        let far = closing.end_on_spine.expect("handled forks close on the spine");
        let [long, short] = closing.via;
        (long, short, fork.spine[far..].to_vec())
    };
    let seqs = pattern.route_sequences();
    let (first, second) = if k1 >= k2 { (&long, &short) } else { (&short, &long) };
    let mut b = CertificateBuilder::new(d, pattern.clone());
    b.route(&seqs[0], first)?.route(&seqs[1], second)?.route(&seqs[2], &back)?;
    b.finish()
}

/// `P(k1,1;k3)` from a maximal dipath `W` ending at `u`: with the
/// out-neighbours of `u` at positions `n_1 < n_2 < …` of `W`, take
/// `x = u`, `y = W[n_{k1}]`, the paths `u W[n_1..n_{k1}]` and `(u,y)`, and
/// `W[n_{k1}..]` back to `u`.
fn triple_from_maximal_path(d: &Digraph, k1: usize, k3: usize) -> std::result::Result<(Vec<usize>, Vec<usize>, Vec<usize>), String> {
    if d.vertex_count() == 0 {
        return Err("empty digraph".into());
    }
    let alive = vec![true; d.vertex_count()];
    let w = maximal_path(d, 0, &alive);
    let u = *w.last().expect("nonempty");
    let hits: Vec<usize> = (0..w.len()).filter(|&i| d.has_arc(u, w[i])).collect();
    if hits.len() < k1 {
        return Err(format!("maximal dipath end has {} out-neighbours", hits.len()));
    }
    let (n1, nk) = (hits[0], hits[k1 - 1]);
    let back = w[nk..].to_vec();
    if back.len() - 1 < k3 {
        return Err(format!("return path has length {} only", back.len() - 1));
    }
    let mut long = vec![u];
    long.extend_from_slice(&w[n1..=nk]);
    Ok((long, vec![u, w[nk]], back))
}
