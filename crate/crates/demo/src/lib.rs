//! Browser bindings. Every function takes and returns plain strings (edge
//! lists, descriptors, JSON) so the page needs no generated type glue.
//! Failures come back as `{"ok": false, "error": ...}` rather than
//! exceptions.

use digraph_subdiv::arborescence::find_branching;
use digraph_subdiv::dichromatic::{dichromatic_number, find_subdivision_auto};
use digraph_subdiv::finders::{find_blocked_path, find_two_block_cycle, find_triple_path};
use digraph_subdiv::generate::GenSpec;
use digraph_subdiv::{verify_subdivision, Digraph, PatternKind, PatternSpec, Result, SubdivisionCertificate};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Hosts above this size are refused; the page draws every vertex.
pub const MAX_VERTICES: usize = 400;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"ok": false, "reason": e.tag(), "error": e.to_string()}).to_string(),
    }
}

fn parse_host(text: &str) -> Result<Digraph> {
    let d = Digraph::parse_edge_list(text)?;
    if d.vertex_count() > MAX_VERTICES {
        return Err(digraph_subdiv::Error::InvalidArgument(format!(
            "the demo draws at most {MAX_VERTICES} vertices"
        )));
    }
    Ok(d)
}

fn describe_host(d: &Digraph) -> Value {
    json!({
        "n": d.vertex_count(),
        "arcs": d.arcs().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "min_out_degree": d.min_out_degree(),
        "hash": d.content_hash(),
    })
}

/// `family` is a descriptor without seed, e.g. `exact_outdegree:30,5`.
/// Returns the edge list plus the parsed host.
#[wasm_bindgen]
pub fn generate(family: &str, seed: u64) -> String {
    respond((|| {
        let spec: GenSpec = format!("{family}:{seed}").parse()?;
        let d = spec.generate()?;
        if d.vertex_count() > MAX_VERTICES {
            return Err(digraph_subdiv::Error::InvalidArgument(format!(
                "the demo draws at most {MAX_VERTICES} vertices"
            )));
        }
        Ok(json!({"ok": true, "genspec": spec.to_string(), "edge_list": d.to_edge_list(), "host": describe_host(&d)}))
    })())
}

/// Parses an edge list for drawing.
#[wasm_bindgen]
pub fn describe(host: &str) -> String {
    respond(parse_host(host).map(|d| json!({"ok": true, "host": describe_host(&d)})))
}

/// Runs the finder that fits the pattern: the degree-based constructions
/// for blocked paths, two-block cycles, triple paths and in-arborescences,
/// the dichromatic one for everything else.
#[wasm_bindgen]
pub fn find(host: &str, pattern: &str) -> String {
    respond((|| {
        let f = PatternSpec::from_descriptor(pattern)?;
        let d = parse_host(host)?;
        let cert = match &f.kind {
            PatternKind::BlockedPath(ks) => find_blocked_path(&d, 0, ks)?,
            PatternKind::TwoBlockCycle(k1, k2) => find_two_block_cycle(&d, *k1, *k2)?,
            PatternKind::TriplePath(k1, k2, k3) => find_triple_path(&d, *k1, *k2, *k3)?,
            PatternKind::Branching { depth, branching } => find_branching(&d, *depth, *branching)?,
            _ => find_subdivision_auto(&d, &f)?,
        };
        let verdict = verify_subdivision(&d, &cert);
        let certificate: Value = serde_json::from_str(&cert.to_json()).expect("certificate is JSON");
        Ok(json!({"ok": true, "verified": verdict.ok, "certificate": certificate}))
    })())
}

/// Exact dichromatic number with a witness partition.
#[wasm_bindgen]
pub fn dicolour(host: &str) -> String {
    respond((|| {
        let d = parse_host(host)?;
        let c = dichromatic_number(&d)?;
        Ok(json!({"ok": true, "k": c.k(), "classes": c.classes}))
    })())
}

/// Checks a certificate (JSON text) against a host.
#[wasm_bindgen]
pub fn verify(host: &str, certificate: &str) -> String {
    respond((|| {
        let d = parse_host(host)?;
        let cert = SubdivisionCertificate::from_json(certificate)?;
        let verdict = verify_subdivision(&d, &cert);
        let violations: Vec<String> = verdict.violations.iter().map(|v| v.to_string()).collect();
        Ok(json!({"ok": true, "accepted": verdict.ok, "violations": violations}))
    })())
}
