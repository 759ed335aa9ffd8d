//! Wavefront OBJ export of facet meshes and a small reader for checking it.
//!
//! Each facet polygon gets its own vertices, written at 17 significant
//! digits, followed by one `f` record (d = 2) or `l` record (d = 1, where the
//! ambient space is the plane and `z = 0`).

use std::fmt::Write;

use fuchsian_core::{Isometry, LorentzVector};
use thiserror::Error;

use crate::json::format_float;

#[derive(Debug, Error, PartialEq)]
pub enum ObjError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Vertices and polygon records of an OBJ file. Indices are 0-based.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ObjMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    pub lines: Vec<Vec<usize>>,
}

pub fn write_obj(mesh: &[(usize, Isometry, Vec<LorentzVector>)]) -> String {
    let mut out = String::from("# fuchsian facet mesh\n");
    let mut next = 1usize;
    for (i, g, poly) in mesh {
        let word: Vec<String> = g.word().iter().map(ToString::to_string).collect();
        writeln!(out, "# facet {i} word [{}]", word.join(" ")).unwrap();
        let mut ids = Vec::with_capacity(poly.len());
        let mut planar = false;
        for v in poly {
            let c = v.coords();
            planar = c.len() == 2;
            let z = if planar { 0.0 } else { c[2] };
            writeln!(out, "v {} {} {}", format_float(c[0]), format_float(c[1]), format_float(z)).unwrap();
            ids.push(next.to_string());
            next += 1;
        }
        writeln!(out, "{} {}", if planar { "l" } else { "f" }, ids.join(" ")).unwrap();
    }
    out
}

pub fn parse_obj(text: &str) -> Result<ObjMesh, ObjError> {
    let mut mesh = ObjMesh::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| ObjError::Syntax { line, message };
        let body = raw.split('#').next().unwrap_or("").trim();
        let mut parts = body.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        match tag {
            "v" => {
                let c: Vec<f64> = parts
                    .map(|p| p.parse::<f64>().map_err(|e| err(format!("bad coordinate {p:?}: {e}"))))
                    .collect::<Result<_, _>>()?;
                if c.len() != 3 {
                    return Err(err(format!("expected 3 coordinates, got {}", c.len())));
                }
                mesh.vertices.push([c[0], c[1], c[2]]);
            }
            "f" | "l" => {
                let ids: Vec<usize> = parts
                    .map(|p| {
                        let idx = p.split('/').next().unwrap_or(p);
                        match idx.parse::<usize>() {
                            Ok(i) if i >= 1 && i <= mesh.vertices.len() => Ok(i - 1),
                            _ => Err(err(format!("bad vertex index {p:?}"))),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                if ids.len() < 2 {
                    return Err(err("record needs at least two vertices".into()));
                }
                if tag == "f" {
                    mesh.faces.push(ids);
                } else {
                    mesh.lines.push(ids);
                }
            }
            other => return Err(err(format!("unsupported record {other:?}"))),
        }
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_records() {
        assert!(matches!(parse_obj("v 1 2\n"), Err(ObjError::Syntax { line: 1, .. })));
        assert!(matches!(parse_obj("v 1 2 3\nf 1 4\n"), Err(ObjError::Syntax { line: 2, .. })));
        assert!(parse_obj("vt 0 0\n").is_err());
        let m = parse_obj("# c\nv 0 0 1\nv 1 0 1\nv 0 1 1\nf 1 2 3\n").unwrap();
        assert_eq!(m.faces, vec![vec![0, 1, 2]]);
    }
}
