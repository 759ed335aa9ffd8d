//! Canonical JSON: sorted keys, two-space indentation, floats at 17
//! significant digits, and a metadata block on every document.

use std::fmt::Write;

use fuchsian_core::covolume::{AreaJacobian, CovolumeReport, InequalityReport, MixedCovolume, SpdCertificate};
use fuchsian_core::fuchsian::DirichletCell;
use fuchsian_core::polyhedra::{FacetGeometry, FuchsianPolyhedron};
use fuchsian_core::solver::SolverReport;
use fuchsian_core::{tol, FuchsianGroup, Isometry, LorentzVector, OrbitBall};
use serde_json::{json, Map, Value};

pub const TOOL: &str = "fuchsian";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `d.ddddddddddddddddde±x`; non-finite values become `null`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

/// Serializes `v` canonically, with a trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64().filter(|_| !n.is_f64()) {
                write!(out, "{i}").unwrap();
            } else if let Some(u) = n.as_u64().filter(|_| !n.is_f64()) {
                write!(out, "{u}").unwrap();
            } else {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, x, depth + 1);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                indent(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                indent(out, depth + 1);
                out.push_str(&serde_json::to_string(key).unwrap());
                out.push_str(": ");
                write_value(out, &map[key.as_str()], depth + 1);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            indent(out, depth);
            out.push('}');
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

pub fn metadata() -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "tolerances": {
            "lightlike": tol::LIGHTLIKE,
            "geometric": tol::GEOMETRIC,
            "acosh_clamp": tol::ACOSH_CLAMP,
            "isometry": tol::ISOMETRY,
            "dedup": tol::DEDUP,
            "vertex": tol::VERTEX,
            "clip": tol::CLIP,
            "short_edge": tol::SHORT_EDGE,
            "inequality": tol::INEQUALITY,
            "max_cutoff": tol::MAX_CUTOFF,
        },
    })
}

/// `body` with `kind` and the metadata block added.
pub fn document(kind: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    map.insert("kind".into(), Value::String(kind.into()));
    map.insert("metadata".into(), metadata());
    Value::Object(map)
}

pub fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

pub fn vector(v: &LorentzVector) -> Value {
    floats(v.coords())
}

pub fn isometry(g: &Isometry) -> Value {
    json!({
        "word": g.word(),
        "matrix": g.rows().iter().map(|r| floats(r)).collect::<Vec<_>>(),
    })
}

pub fn group(g: &FuchsianGroup) -> Value {
    let gens: Vec<Value> = g
        .generators()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            json!({
                "index": k,
                "inverse": g.inverse_index(k),
                "matrix": s.rows().iter().map(|r| floats(r)).collect::<Vec<_>>(),
                "translation_length": s.translation_length(),
                "origin_displacement": s.displacement(&LorentzVector::origin(g.dim())),
            })
        })
        .collect();
    json!({
        "label": g.label(),
        "dim": g.dim(),
        "generators": gens,
        "hyperbolic_volume": g.hyperbolic_volume().ok(),
    })
}

pub fn dirichlet_cell(c: &DirichletCell) -> Value {
    json!({
        "center": vector(&c.center),
        "vertices": c.vertices.iter().map(vector).collect::<Vec<_>>(),
        "angles": floats(&c.angles()),
        "volume": c.volume(),
        "certified_radius": c.radius,
    })
}

pub fn orbit(o: &OrbitBall) -> Value {
    let dist = o.distances();
    let points: Vec<Value> = o
        .elements
        .iter()
        .zip(dist)
        .map(|((g, p), d)| json!({ "word": g.word(), "point": vector(p), "distance": d }))
        .collect();
    json!({ "base": vector(&o.base), "radius": o.radius, "count": o.len(), "points": points })
}

pub fn facet(f: &FacetGeometry) -> Value {
    let edges: Vec<Value> = f
        .edges
        .iter()
        .map(|e| {
            json!({
                "neighbor": e.neighbor,
                "element": isometry(&e.element),
                "normal": floats(&e.normal),
                "support": e.support,
                "length": e.length,
                "phi": e.phi,
            })
        })
        .collect();
    json!({
        "rep_index": f.rep_index,
        "plane": {
            "normal": vector(&f.plane.normal),
            "offset": f.plane.offset,
            "foot": vector(&f.plane.foot),
            "frame": f.plane.frame.iter().map(vector).collect::<Vec<_>>(),
        },
        "polygon": f.polygon.iter().map(|p| floats(p)).collect::<Vec<_>>(),
        "vertices": f.ambient_vertices().iter().map(vector).collect::<Vec<_>>(),
        "edges": edges,
        "area": f.area,
        "vertex_degrees": f.vertex_degrees,
        "false_face": f.is_false_face(),
        "cutoff": f.cutoff,
    })
}

pub fn polyhedron(p: &FuchsianPolyhedron) -> Value {
    json!({
        "group": p.group().label(),
        "normals": p.family.reps().iter().map(vector).collect::<Vec<_>>(),
        "support": floats(p.support.values()),
        "facets": p.facets.iter().map(facet).collect::<Vec<_>>(),
        "fan_signature": p.fan.to_string(),
        "simple": p.is_simple(),
    })
}

pub fn covolume(r: &CovolumeReport) -> Value {
    json!({ "covol": r.covol, "areas": floats(&r.areas), "support": floats(r.support.values()) })
}

pub fn certificate(c: &SpdCertificate) -> Value {
    json!({
        "asymmetry": c.asymmetry,
        "min_diagonal": c.min_diagonal,
        "max_off_diagonal": c.max_off_diagonal,
        "dominance_margin": c.dominance_margin,
        "cholesky": c.cholesky,
        "min_eigenvalue": c.min_eigenvalue,
        "holds": c.holds(),
    })
}

pub fn jacobian(j: &AreaJacobian) -> Value {
    json!({
        "matrix": j.matrix.rows().iter().map(|r| floats(r)).collect::<Vec<_>>(),
        "short_edges": j.short_edges.iter().map(|(f, e)| json!({ "facet": f, "edge": e })).collect::<Vec<_>>(),
        "certificate": certificate(&j.certificate()),
    })
}

pub fn solver(r: &SolverReport) -> Value {
    json!({
        "solution": floats(r.solution.values()),
        "residual_history": floats(&r.residual_history),
        "step_lengths": floats(&r.step_lengths),
        "iterations": r.iterations,
        "converged": r.converged,
        "combinatorics_changes": r.combinatorics_changes,
        "properness_bound": r.properness_bound,
    })
}

pub fn mixed(m: &MixedCovolume) -> Value {
    json!({ "value": m.value, "polarized": m.polarized, "difference": (m.value - m.polarized).abs() })
}

pub fn inequality(r: &InequalityReport) -> Value {
    json!({ "name": r.name.as_str(), "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack, "pass": r.pass })
}
