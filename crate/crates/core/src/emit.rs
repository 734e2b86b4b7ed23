//! Versioned JSON documents and Graphviz output.
//!
//! Big integers are written as decimal strings so that no consumer loses
//! precision; points are written in their `[a:b]` text form.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::BinaryForm;
use crate::certify::{CanonicalHeightValue, DescentCertificate};
use crate::elliptic::{ECPoint, EllipticCurve, TorsionGroup};
use crate::orbit::{BackwardTree, Classification, Fate, PeriodicReport};
use crate::projective::{Morphism, ProjPoint};

pub const CERTIFICATE_SCHEMA: &str = "certificate.v1";
pub const PERIODIC_SCHEMA: &str = "periodic-report.v1";
pub const BACKWARD_TREE_SCHEMA: &str = "backward-tree.v1";
pub const TORSION_SCHEMA: &str = "torsion.v1";

fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn form(f: &BinaryForm) -> Value {
    Value::Array(f.coeffs().iter().map(big).collect())
}

pub fn point_json(p: &ProjPoint) -> Value {
    Value::String(p.to_string())
}

pub fn ec_point_json(p: &ECPoint) -> Value {
    match p {
        ECPoint::Infinity => Value::String("O".into()),
        ECPoint::Affine { x, y } => json!({ "x": x.to_string(), "y": y.to_string() }),
    }
}

pub fn curve_json(e: &EllipticCurve) -> Value {
    json!({ "a": big(e.a()), "b": big(e.b()), "discriminant": big(e.discriminant()) })
}

fn certificate_body(cert: &DescentCertificate) -> Value {
    let (nx, ny) = cert.cofactor_norms();
    let c = cert.cofactors();
    json!({
        "degree": cert.degree(),
        "B": big(cert.bound()),
        "M": big(cert.cap()),
        "resultant": big(cert.resultant()),
        "cofactor_norms": { "x": big(&nx), "y": big(&ny) },
        "upper_constant": big(cert.upper_constant()),
        "cofactors": { "px": form(&c.px), "qx": form(&c.qx), "py": form(&c.py), "qy": form(&c.qy) },
    })
}

/// `certificate.v1`.
pub fn certificate_json(f: &Morphism, cert: &DescentCertificate) -> Value {
    let mut v = certificate_body(cert);
    let obj = v.as_object_mut().expect("object");
    obj.insert("schema".into(), CERTIFICATE_SCHEMA.into());
    obj.insert("map".into(), f.to_string().into());
    v
}

/// `periodic-report.v1`.
pub fn periodic_report_json(f: &Morphism, r: &PeriodicReport) -> Value {
    let cycles: Vec<Value> = r
        .cycles
        .iter()
        .map(|c| json!({ "period": c.len(), "points": c.iter().map(point_json).collect::<Vec<_>>() }))
        .collect();
    json!({
        "schema": PERIODIC_SCHEMA,
        "map": f.to_string(),
        "dimension": r.dim,
        "certified": r.certified,
        "bound": big(&r.bound),
        "certificate": r.certificate.as_ref().map(certificate_body),
        "candidates": r.candidates,
        "cycles": cycles,
        "periodic_count": r.periodic_count(),
        "preperiodic": r.preperiodic,
        "escaping": r.escaping,
        "unresolved": r.unresolved,
    })
}

/// `backward-tree.v1`.
pub fn backward_tree_json(f: &Morphism, t: &BackwardTree) -> Value {
    let levels: Vec<Value> = t
        .levels
        .iter()
        .map(|level| {
            Value::Array(level.iter().map(|n| json!({ "point": point_json(&n.point), "parent": n.parent })).collect())
        })
        .collect();
    json!({
        "schema": BACKWARD_TREE_SCHEMA,
        "map": f.to_string(),
        "root": point_json(&t.root),
        "depth": t.depth,
        "levels": levels,
        "node_count": t.node_count(),
    })
}

/// `torsion.v1`.
pub fn torsion_json(e: &EllipticCurve, t: &TorsionGroup) -> Value {
    let points: Vec<Value> =
        t.points.iter().map(|p| json!({ "point": ec_point_json(p), "order": t.orders[p] })).collect();
    json!({
        "schema": TORSION_SCHEMA,
        "curve": curve_json(e),
        "structure": t.structure.to_string(),
        "size": t.len(),
        "exponent": t.exponent(),
        "points": points,
    })
}

pub fn canonical_height_json(p: &ProjPoint, v: &CanonicalHeightValue) -> Value {
    json!({ "point": point_json(p), "value": v.value, "radius": v.radius, "iterations": v.iterations })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edges `P -> f(P)` among periodic and preperiodic candidates; cycle
/// edges carry `cycle=true`.
pub fn functional_graph_dot(f: &Morphism, c: &Classification) -> crate::error::Result<String> {
    let pts = c.candidates.points();
    let kept: Vec<usize> =
        (0..pts.len()).filter(|&i| matches!(c.fates[i], Fate::Periodic { .. } | Fate::Preperiodic { .. })).collect();
    let index: HashMap<&ProjPoint, usize> = kept.iter().map(|&i| (&pts[i], i)).collect();
    let mut out = String::from("digraph periodic {\n  node [shape=box];\n");
    for &i in &kept {
        let _ = writeln!(out, "  n{i} [label={}];", quote(&pts[i].to_string()));
    }
    for &i in &kept {
        let j = index[&f.evaluate(&pts[i])?];
        match c.fates[i] {
            Fate::Periodic { .. } => {
                let _ = writeln!(out, "  n{i} -> n{j} [cycle=true];");
            }
            _ => {
                let _ = writeln!(out, "  n{i} -> n{j};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// The cycles of a report as a graph.
pub fn periodic_dot(r: &PeriodicReport) -> String {
    let mut ids: BTreeMap<&ProjPoint, usize> = BTreeMap::new();
    for p in r.cycles.iter().flatten() {
        let n = ids.len();
        ids.entry(p).or_insert(n);
    }
    let mut out = String::from("digraph periodic {\n  node [shape=box];\n");
    for (p, i) in &ids {
        let _ = writeln!(out, "  n{i} [label={}];", quote(&p.to_string()));
    }
    for c in &r.cycles {
        for (k, p) in c.iter().enumerate() {
            let q = &c[(k + 1) % c.len()];
            let _ = writeln!(out, "  n{} -> n{} [cycle=true];", ids[p], ids[q]);
        }
    }
    out.push_str("}\n");
    out
}

/// One node per distinct point of the tree and one edge `P -> f(P)` per
/// distinct pair; an edge lies on a cycle when `P` returns to itself
/// inside the tree.
pub fn backward_tree_dot(t: &BackwardTree) -> String {
    let mut ids: BTreeMap<&ProjPoint, usize> = BTreeMap::new();
    let mut image: HashMap<&ProjPoint, &ProjPoint> = HashMap::new();
    for (k, level) in t.levels.iter().enumerate() {
        for node in level {
            let n = ids.len();
            ids.entry(&node.point).or_insert(n);
            if let Some(parent) = node.parent {
                image.insert(&node.point, &t.levels[k - 1][parent].point);
            }
        }
    }
    let on_cycle = |p: &ProjPoint| {
        let mut cur = p;
        for _ in 0..ids.len() {
            match image.get(cur) {
                Some(&q) if q == p => return true,
                Some(&q) => cur = q,
                None => return false,
            }
        }
        false
    };
    let mut out = String::from("digraph backward {\n  node [shape=box];\n");
    for (p, i) in &ids {
        let root = if *p == &t.root { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  n{i} [label={}{root}];", quote(&p.to_string()));
    }
    let mut edges: Vec<(&ProjPoint, &ProjPoint)> = image.iter().map(|(&p, &q)| (p, q)).collect();
    edges.sort();
    for (p, q) in edges {
        let attr = if on_cycle(p) { " [cycle=true]" } else { "" };
        let _ = writeln!(out, "  n{} -> n{}{attr};", ids[p], ids[q]);
    }
    out.push_str("}\n");
    out
}
