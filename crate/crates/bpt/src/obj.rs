//! Wavefront OBJ reading and writing.
//!
//! Only `v` and `f` records matter here; everything else is skipped. Faces
//! may use the `i/t/n` slash syntax (only the vertex index is used) and
//! negative indices, which resolve relative to the vertex count at the point
//! the face appears. Polygons are fan-triangulated from their first listed
//! vertex, preserving winding.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::RawMesh;

/// Parses an OBJ document from raw bytes.
pub fn load_obj(bytes: &[u8]) -> Result<RawMesh> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::ObjParse {
        line: 0,
        msg: "file is not valid UTF-8".into(),
    })?;

    let mut positions: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        match keyword {
            "v" => {
                let mut coords = [0.0f64; 3];
                for slot in coords.iter_mut() {
                    let tok = tokens.next().ok_or_else(|| Error::ObjParse {
                        line,
                        msg: "vertex record needs 3 coordinates".into(),
                    })?;
                    *slot = tok.parse().map_err(|_| Error::ObjParse {
                        line,
                        msg: format!("invalid coordinate `{tok}`"),
                    })?;
                }
                // Optional w / color components are ignored.
                positions.push(coords);
            }
            "f" => {
                let mut indices = Vec::new();
                for tok in tokens {
                    let vertex_field = tok.split('/').next().unwrap_or("");
                    let signed: i64 = vertex_field.parse().map_err(|_| Error::ObjParse {
                        line,
                        msg: format!("invalid face index `{tok}`"),
                    })?;
                    let resolved = resolve_index(signed, positions.len())
                        .ok_or_else(|| Error::ObjParse {
                            line,
                            msg: format!(
                                "face index {signed} out of range ({} vertices so far)",
                                positions.len()
                            ),
                        })?;
                    indices.push(resolved);
                }
                if indices.len() < 3 {
                    return Err(Error::ObjParse {
                        line,
                        msg: "face record needs at least 3 indices".into(),
                    });
                }
                for k in 2..indices.len() {
                    faces.push([indices[0], indices[k - 1], indices[k]]);
                }
            }
            _ => {}
        }
    }

    if faces.is_empty() {
        return Err(Error::EmptyMesh);
    }
    Ok(RawMesh::new(positions, faces))
}

/// Reads and parses an OBJ file from disk.
pub fn load_obj_file(path: impl AsRef<Path>) -> Result<RawMesh> {
    let bytes = std::fs::read(path)?;
    load_obj(&bytes)
}

fn resolve_index(signed: i64, current_count: usize) -> Option<usize> {
    if signed > 0 {
        let idx = (signed - 1) as usize;
        (idx < current_count).then_some(idx)
    } else if signed < 0 {
        let idx = current_count as i64 + signed;
        (idx >= 0).then_some(idx as usize)
    } else {
        None
    }
}

/// Writes `v` records at full decimal precision, then `f` records, with LF
/// line endings and a trailing newline.
pub fn write_obj(mesh: &RawMesh, out: &mut dyn Write) -> std::io::Result<()> {
    for p in &mesh.positions {
        writeln!(out, "v {} {} {}", p[0], p[1], p[2])?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

/// Convenience wrapper returning the OBJ document as a string.
pub fn obj_to_string(mesh: &RawMesh) -> String {
    let mut buf = Vec::new();
    write_obj(mesh, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("OBJ output is ASCII")
}

/// Writes a mesh to an OBJ file on disk.
pub fn write_obj_file(mesh: &RawMesh, path: impl AsRef<Path>) -> std::io::Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_obj(mesh, &mut file)
}
