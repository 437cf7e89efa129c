//! Subdivision certificates, their text format, and the verifier every finder
//! output passes through.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::{PatternKind, PatternSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcPath {
    pub tail: usize,
    pub head: usize,
    pub path: Vec<usize>,
}

/// Branch-vertex map plus one host dipath per pattern arc. The host is
/// referenced by content hash only.
///
/// The fields are public and may hold malformed data (e.g. read from a
/// tampered file); [`verify_subdivision`] is the only judge of validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub host_hash: String,
    pub pattern: PatternSpec,
    pub branch_map: Vec<(usize, usize)>,
    pub arc_paths: Vec<ArcPath>,
}

impl SubdivisionCertificate {
    pub fn branch_of(&self, pattern_vertex: usize) -> Option<usize> {
        self.branch_map.iter().find(|(p, _)| *p == pattern_vertex).map(|&(_, h)| h)
    }

    pub fn path_for(&self, tail: usize, head: usize) -> Option<&[usize]> {
        self.arc_paths
            .iter()
            .find(|a| a.tail == tail && a.head == head)
            .map(|a| a.path.as_slice())
    }

    /// Distinct host vertices used by branch images and arc paths, ascending.
    pub fn host_vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.branch_map.iter().map(|&(_, h)| h).collect();
        for a in &self.arc_paths {
            all.extend_from_slice(&a.path);
        }
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Sorts both maps into canonical order.
    pub fn canonicalize(&mut self) {
        self.branch_map.sort_unstable();
        self.arc_paths.sort_by_key(|a| (a.tail, a.head));
    }

    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            host_hash: self.host_hash.clone(),
            pattern: PatternJson::from_spec(&self.pattern),
            branch_map: self.branch_map.iter().map(|&(p, h)| [p, h]).collect(),
            arc_paths: self.arc_paths.clone(),
        };
        let mut text = serde_json::to_string(&file).expect("certificate serializes");
        text.push('\n');
        text
    }

    /// Reads the certificate format. Structural nonsense inside the maps is
    /// kept as is for the verifier to report; only unreadable text or an
    /// unbuildable pattern is an error here.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CertificateFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Ok(SubdivisionCertificate {
            host_hash: file.host_hash,
            pattern: file.pattern.into_spec()?,
            branch_map: file.branch_map.iter().map(|&[p, h]| (p, h)).collect(),
            arc_paths: file.arc_paths,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    host_hash: String,
    pattern: PatternJson,
    branch_map: Vec<[usize; 2]>,
    arc_paths: Vec<ArcPath>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arcs: Option<Vec<[usize; 2]>>,
}

impl PatternJson {
    fn from_spec(spec: &PatternSpec) -> Self {
        match spec.kind {
            PatternKind::Custom => PatternJson {
                kind: "custom".into(),
                params: None,
                vertex_count: Some(spec.pattern.vertex_count()),
                arcs: Some(spec.pattern.arcs().map(|(u, v)| [u, v]).collect()),
            },
            ref kind => PatternJson {
                kind: kind.name().into(),
                params: Some(kind.params()),
                vertex_count: None,
                arcs: None,
            },
        }
    }

    fn into_spec(self) -> Result<PatternSpec> {
        if self.kind == "custom" {
            let n = self
                .vertex_count
                .ok_or_else(|| Error::InvalidPattern("custom pattern without vertex_count".into()))?;
            let arcs = self.arcs.unwrap_or_default();
            let g = Digraph::new(n, arcs.iter().map(|&[u, v]| (u, v)))
                .map_err(|e| Error::InvalidPattern(e.to_string()))?;
            Ok(PatternSpec::custom(g))
        } else {
            PatternSpec::from_kind(&self.kind, &self.params.unwrap_or_default())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    HostMismatch,
    BranchOutOfRange,
    BranchDuplicate,
    BranchMissing,
    BranchNotInjective,
    MissingArcPath,
    UnexpectedArcPath,
    PathTooShort,
    EndpointMismatch,
    PathVertexOutOfRange,
    OrientationMismatch,
    NotADipath,
    PathNotSimple,
    InternalDisjointness,
    InternalHitsBranch,
    CountingBound,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::HostMismatch => "host mismatch",
            ViolationKind::BranchOutOfRange => "branch vertex out of range",
            ViolationKind::BranchDuplicate => "branch map lists a pattern vertex twice",
            ViolationKind::BranchMissing => "branch map incomplete",
            ViolationKind::BranchNotInjective => "branch map not injective",
            ViolationKind::MissingArcPath => "missing arc path",
            ViolationKind::UnexpectedArcPath => "unexpected arc path",
            ViolationKind::PathTooShort => "path too short",
            ViolationKind::EndpointMismatch => "endpoint mismatch",
            ViolationKind::PathVertexOutOfRange => "path vertex out of range",
            ViolationKind::OrientationMismatch => "orientation mismatch",
            ViolationKind::NotADipath => "not a dipath",
            ViolationKind::PathNotSimple => "path not simple",
            ViolationKind::InternalDisjointness => "internal disjointness",
            ViolationKind::InternalHitsBranch => "internal vertex hits branch vertex",
            ViolationKind::CountingBound => "counting bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Pattern arc the violation belongs to, if any.
    pub arc: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.arc {
            Some((u, v)) => write!(f, "{} on arc ({u},{v}): {}", self.kind, self.detail),
            None => write!(f, "{}: {}", self.kind, self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Minimum number of host vertices any subdivision of `K_n` must use when
/// embedded with the given branch images: every pair of branch vertices not
/// joined by a host digon forces one subdivided arc, and subdivided arcs have
/// pairwise distinct internal vertices.
pub fn complete_digraph_vertex_bound(host: &Digraph, images: &[usize]) -> usize {
    let mut bound = images.len();
    for (i, &a) in images.iter().enumerate() {
        for &b in &images[i + 1..] {
            if !(host.has_arc(a, b) && host.has_arc(b, a)) {
                bound += 1;
            }
        }
    }
    bound
}

/// Checks every certificate invariant against `host`. Never panics on
/// malformed input; each pattern arc contributes at most one violation (its
/// first failing check).
pub fn verify_subdivision(host: &Digraph, cert: &SubdivisionCertificate) -> Verification {
    let mut violations = Vec::new();
    let mut push = |kind, arc, detail: String| violations.push(Violation { kind, arc, detail });
    let n = host.vertex_count();
    let pattern = &cert.pattern.pattern;
    let p = pattern.vertex_count();

    if cert.host_hash != host.content_hash() {
        push(ViolationKind::HostMismatch, None, format!("certificate names host {}", cert.host_hash));
    }

    let mut image: Vec<Option<usize>> = vec![None; p];
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for &(pv, hv) in &cert.branch_map {
        if pv >= p || hv >= n {
            push(ViolationKind::BranchOutOfRange, None, format!("entry [{pv},{hv}]"));
            continue;
        }
        if image[pv].is_some() {
            push(ViolationKind::BranchDuplicate, None, format!("pattern vertex {pv}"));
            continue;
        }
        if let Some(&other) = owner.get(&hv) {
            push(
                ViolationKind::BranchNotInjective,
                None,
                format!("pattern vertices {other} and {pv} both map to {hv}"),
            );
        }
        image[pv] = Some(hv);
        owner.insert(hv, pv);
    }
    for (pv, img) in image.iter().enumerate() {
        if img.is_none() {
            push(ViolationKind::BranchMissing, None, format!("pattern vertex {pv} has no image"));
        }
    }

    let mut seen_arcs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut internal_owner: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for entry in &cert.arc_paths {
        let arc = (entry.tail, entry.head);
        let path = &entry.path;
        if entry.tail >= p || entry.head >= p || !pattern.has_arc(entry.tail, entry.head) {
            push(ViolationKind::UnexpectedArcPath, Some(arc), "not an arc of the pattern".into());
            continue;
        }
        let count = seen_arcs.entry(arc).or_insert(0);
        *count += 1;
        if *count > 1 {
            push(ViolationKind::UnexpectedArcPath, Some(arc), "arc listed twice".into());
            continue;
        }
        if path.len() < 2 {
            push(ViolationKind::PathTooShort, Some(arc), format!("{} vertices", path.len()));
            continue;
        }
        if let Some(&bad) = path.iter().find(|&&v| v >= n) {
            push(ViolationKind::PathVertexOutOfRange, Some(arc), format!("vertex {bad}"));
            continue;
        }
        let (first, last) = (path[0], path[path.len() - 1]);
        if image[entry.tail] != Some(first) || image[entry.head] != Some(last) {
            push(
                ViolationKind::EndpointMismatch,
                Some(arc),
                format!("path runs {first}..{last}, branch images are {:?}..{:?}", image[entry.tail], image[entry.head]),
            );
            continue;
        }
        if let Some(w) = path.windows(2).find(|w| !host.has_arc(w[0], w[1])) {
            let kind = if host.has_arc(w[1], w[0]) {
                ViolationKind::OrientationMismatch
            } else {
                ViolationKind::NotADipath
            };
            push(kind, Some(arc), format!("no host arc ({},{})", w[0], w[1]));
            continue;
        }
        let mut sorted = path.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            push(ViolationKind::PathNotSimple, Some(arc), "repeats a vertex".into());
            continue;
        }
        let internal = &path[1..path.len() - 1];
        if let Some(&v) = internal.iter().find(|v| owner.contains_key(v)) {
            push(ViolationKind::InternalHitsBranch, Some(arc), format!("vertex {v}"));
            continue;
        }
        if let Some(&v) = internal.iter().find(|v| internal_owner.contains_key(v)) {
            let (a, b) = internal_owner[&v];
            push(
                ViolationKind::InternalDisjointness,
                Some(arc),
                format!("vertex {v} is also internal to the path of ({a},{b})"),
            );
            continue;
        }
        for &v in internal {
            internal_owner.insert(v, arc);
        }
    }
    for arc in pattern.arcs() {
        if !seen_arcs.contains_key(&arc) {
            push(ViolationKind::MissingArcPath, Some(arc), "no host path given".into());
        }
    }

    if violations.is_empty() {
        if let PatternKind::CompleteDigraph(k) = cert.pattern.kind {
            let images: Vec<usize> = image.iter().flatten().copied().collect();
            let need = complete_digraph_vertex_bound(host, &images);
            let used = cert.host_vertices().len();
            if used < need {
                violations.push(Violation {
                    kind: ViolationKind::CountingBound,
                    arc: None,
                    detail: format!("K{k} subdivision uses {used} host vertices, needs at least {need}"),
                });
            }
        }
    }

    Verification { ok: violations.is_empty(), violations }
}

/// Assembles a certificate from host paths, with consistency checks that
/// turn finder bugs into [`Error::Internal`].
#[derive(Debug)]
pub struct CertificateBuilder<'a> {
    host: &'a Digraph,
    pattern: PatternSpec,
    branch: Vec<Option<usize>>,
    paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl<'a> CertificateBuilder<'a> {
    pub fn new(host: &'a Digraph, pattern: PatternSpec) -> Self {
        let p = pattern.vertex_count();
        CertificateBuilder { host, pattern, branch: vec![None; p], paths: BTreeMap::new() }
    }

    pub fn map(&mut self, pattern_vertex: usize, host_vertex: usize) -> Result<&mut Self> {
        match self.branch[pattern_vertex] {
            Some(h) if h != host_vertex => Err(Error::Internal(format!(
                "pattern vertex {pattern_vertex} mapped to both {h} and {host_vertex}"
            ))),
            _ => {
                self.branch[pattern_vertex] = Some(host_vertex);
                Ok(self)
            }
        }
    }

    /// Records the host path of one pattern arc and maps its endpoints.
    pub fn path(&mut self, tail: usize, head: usize, host_path: Vec<usize>) -> Result<&mut Self> {
        let (&first, &last) = host_path
            .first()
            .zip(host_path.last())
            .ok_or_else(|| Error::Internal(format!("empty host path for arc ({tail},{head})")))?;
        self.map(tail, first)?;
        self.map(head, last)?;
        self.paths.insert((tail, head), host_path);
        Ok(self)
    }

    /// Maps a pattern dipath (vertex sequence) onto a host dipath with at
    /// least as many arcs: every pattern arc but the last takes one host arc,
    /// the last takes the remainder.
    pub fn route(&mut self, pattern_seq: &[usize], host_seq: &[usize]) -> Result<&mut Self> {
        let m = pattern_seq.len().saturating_sub(1);
        if m == 0 || host_seq.len() < m + 1 {
            return Err(Error::Internal(format!(
                "cannot route a {m}-arc pattern path along {} host vertices",
                host_seq.len()
            )));
        }
        for i in 0..m - 1 {
            self.path(pattern_seq[i], pattern_seq[i + 1], host_seq[i..i + 2].to_vec())?;
        }
        self.path(pattern_seq[m - 1], pattern_seq[m], host_seq[m - 1..].to_vec())?;
        Ok(self)
    }

    /// Builds the certificate and runs the verifier on it.
    pub fn finish(&self) -> Result<SubdivisionCertificate> {
        let mut cert = SubdivisionCertificate {
            host_hash: self.host.content_hash(),
            pattern: self.pattern.clone(),
            branch_map: self
                .branch
                .iter()
                .enumerate()
                .filter_map(|(p, h)| h.map(|h| (p, h)))
                .collect(),
            arc_paths: self
                .paths
                .iter()
                .map(|(&(tail, head), path)| ArcPath { tail, head, path: path.clone() })
                .collect(),
        };
        cert.canonicalize();
        let check = verify_subdivision(self.host, &cert);
        if !check.ok {
            let listed: Vec<String> = check.violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Internal(format!("assembled certificate rejected: {}", listed.join("; "))));
        }
        Ok(cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::families::*;

    fn identity(host: &Digraph, pattern: PatternSpec) -> SubdivisionCertificate {
        let mut b = CertificateBuilder::new(host, pattern.clone());
        for (u, v) in pattern.pattern.arcs() {
            b.path(u, v, vec![u, v]).unwrap();
        }
        b.finish().unwrap()
    }

    #[test]
    fn identity_cycle_is_accepted() {
        let c3 = directed_cycle(3);
        let cert = identity(&c3, PatternSpec::custom(c3.clone()));
        assert!(verify_subdivision(&c3, &cert).ok);
    }

    #[test]
    fn shared_internal_vertex_rejected() {
        // C(2,2) squeezed so both paths pass through host vertex 2
        let host = Digraph::new(4, [(0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        let pattern = PatternSpec::two_block_cycle(2, 2).unwrap();
        let cert = SubdivisionCertificate {
            host_hash: host.content_hash(),
            pattern,
            branch_map: vec![(0, 0), (1, 1), (2, 2), (3, 3)],
            arc_paths: vec![
                ArcPath { tail: 0, head: 2, path: vec![0, 2] },
                ArcPath { tail: 2, head: 1, path: vec![2, 1] },
                ArcPath { tail: 0, head: 3, path: vec![0, 3] },
                ArcPath { tail: 3, head: 1, path: vec![3, 1] },
            ],
        };
        assert!(verify_subdivision(&host, &cert).ok);

        let c3 = directed_cycle(3);
        let host = Digraph::new(4, [(0, 3), (3, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        let cert = SubdivisionCertificate {
            host_hash: host.content_hash(),
            pattern: PatternSpec::custom(c3),
            branch_map: vec![(0, 0), (1, 1), (2, 2)],
            arc_paths: vec![
                ArcPath { tail: 0, head: 1, path: vec![0, 3, 1] },
                ArcPath { tail: 1, head: 2, path: vec![1, 3, 2] },
                ArcPath { tail: 2, head: 0, path: vec![2, 0] },
            ],
        };
        let v = verify_subdivision(&host, &cert);
        assert!(!v.ok);
        assert!(v.has(ViolationKind::InternalDisjointness));
        assert!(v.violations.iter().any(|x| x.to_string().contains("internal disjointness")));
    }

    #[test]
    fn malformed_certificates_do_not_panic() {
        let c3 = directed_cycle(3);
        let good = identity(&c3, PatternSpec::custom(c3.clone()));

        let mut c = good.clone();
        c.branch_map.push((0, 1));
        assert!(verify_subdivision(&c3, &c).has(ViolationKind::BranchDuplicate));

        let mut c = good.clone();
        c.branch_map[0].1 = 99;
        assert!(!verify_subdivision(&c3, &c).ok);

        let mut c = good.clone();
        c.arc_paths[0].path.reverse();
        assert!(!verify_subdivision(&c3, &c).ok);

        let mut c = good.clone();
        c.arc_paths.pop();
        assert!(verify_subdivision(&c3, &c).has(ViolationKind::MissingArcPath));

        let mut c = good.clone();
        c.arc_paths[1].path = vec![];
        assert!(verify_subdivision(&c3, &c).has(ViolationKind::PathTooShort));

        let mut c = good;
        c.host_hash = "0".repeat(64);
        assert!(verify_subdivision(&c3, &c).has(ViolationKind::HostMismatch));
    }

    #[test]
    fn orientation_is_named() {
        let host = Digraph::new(2, [(1, 0)]).unwrap();
        let pattern = PatternSpec::custom(Digraph::new(2, [(0, 1)]).unwrap());
        let cert = SubdivisionCertificate {
            host_hash: host.content_hash(),
            pattern,
            branch_map: vec![(0, 0), (1, 1)],
            arc_paths: vec![ArcPath { tail: 0, head: 1, path: vec![0, 1] }],
        };
        assert!(verify_subdivision(&host, &cert).has(ViolationKind::OrientationMismatch));
    }

    #[test]
    fn counting_bound_on_digon_free_host() {
        // K2 subdivided inside a 3-cycle plus arc: 0->1 direct, 1->2->0 back.
        let host = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut b = CertificateBuilder::new(&host, PatternSpec::complete_digraph(2).unwrap());
        b.path(0, 1, vec![0, 1]).unwrap().path(1, 0, vec![1, 2, 0]).unwrap();
        let cert = b.finish().unwrap();
        assert_eq!(cert.host_vertices().len(), 3);
        assert_eq!(complete_digraph_vertex_bound(&host, &[0, 1]), 3);

        // on a digon the bound relaxes to n
        let k2 = complete_digraph(2);
        let cert = identity(&k2, PatternSpec::complete_digraph(2).unwrap());
        assert!(verify_subdivision(&k2, &cert).ok);
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let c3 = directed_cycle(3);
        let cert = identity(&c3, PatternSpec::custom(c3.clone()));
        let text = cert.to_json();
        let back = SubdivisionCertificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        assert!(text.starts_with("{\"host_hash\":"));

        let host = complete_digraph(5);
        let tb = PatternSpec::two_block_cycle(2, 3).unwrap();
        let mut b = CertificateBuilder::new(&host, tb.clone());
        let seqs = tb.route_sequences();
        b.route(&seqs[0], &[0, 2, 1]).unwrap();
        b.route(&seqs[1], &[0, 3, 4, 1]).unwrap();
        let cert = b.finish().unwrap();
        let text = cert.to_json();
        assert!(text.contains("\"pattern\":{\"kind\":\"two_block_cycle\",\"params\":[2,3]}"));
        assert_eq!(SubdivisionCertificate::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn route_spreads_slack_onto_last_arc() {
        let host = directed_path(6);
        let pattern = PatternSpec::blocked_path(&[2]).unwrap();
        let mut b = CertificateBuilder::new(&host, pattern);
        b.route(&[0, 1, 2], &[0, 1, 2, 3, 4, 5]).unwrap();
        let cert = b.finish().unwrap();
        assert_eq!(cert.path_for(1, 2), Some(&[1, 2, 3, 4, 5][..]));
    }
}
