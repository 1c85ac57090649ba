//! The 9-tokens-per-face baseline: every face emits x, y, z for each of its
//! three vertices, token id == coordinate value.

use std::collections::HashMap;

use crate::block::BptConfig;
use crate::error::{MalformedSequence, Result};
use crate::mesh::{canonicalize, Face, QuantizedMesh, QuantizedVertex};

use super::{specials, SequenceKind, TokenSequence};

pub(super) fn encode(mesh: &QuantizedMesh, cfg: &BptConfig) -> Vec<u32> {
    let (bos, eos, _) = specials(SequenceKind::Vanilla, cfg);
    let mut tokens = Vec::with_capacity(9 * mesh.faces.len() + 2);
    tokens.push(bos);
    for face in &mesh.faces {
        for v in face.vertices() {
            let p = mesh.vertices[v];
            tokens.extend_from_slice(&[p.x, p.y, p.z]);
        }
    }
    tokens.push(eos);
    tokens
}

pub(super) fn decode(seq: &TokenSequence) -> Result<QuantizedMesh> {
    let cfg = &seq.config;
    let r = cfg.resolution();
    let (_, eos, pad) = specials(SequenceKind::Vanilla, cfg);

    let mut coords: Vec<u32> = Vec::with_capacity(seq.tokens.len());
    let mut saw_eos = false;
    for &token in &seq.tokens[1..] {
        if saw_eos {
            return Err(MalformedSequence::Unexpected(token).into());
        }
        if token == eos {
            saw_eos = true;
        } else if token < r {
            coords.push(token);
        } else {
            // BOS in the middle or PAD anywhere.
            debug_assert!(token == pad || token == eos || token >= r);
            return Err(MalformedSequence::Unexpected(token).into());
        }
    }
    if !saw_eos {
        return Err(MalformedSequence::Truncated.into());
    }
    if !coords.len().is_multiple_of(9) {
        return Err(MalformedSequence::BadContentLength {
            len: coords.len(),
            unit: 9,
        }
        .into());
    }

    let mut interner: HashMap<QuantizedVertex, usize> = HashMap::new();
    let mut vertices: Vec<QuantizedVertex> = Vec::new();
    let mut intern = |v: QuantizedVertex| -> usize {
        let next_id = vertices.len();
        *interner.entry(v).or_insert_with(|| {
            vertices.push(v);
            next_id
        })
    };
    let mut faces = Vec::with_capacity(coords.len() / 9);
    for chunk in coords.chunks_exact(9) {
        let a = intern(QuantizedVertex::new(chunk[0], chunk[1], chunk[2]));
        let b = intern(QuantizedVertex::new(chunk[3], chunk[4], chunk[5]));
        let c = intern(QuantizedVertex::new(chunk[6], chunk[7], chunk[8]));
        faces.push(Face::new(a, b, c));
    }
    canonicalize(&vertices, &faces, cfg.bits()).map(|(mesh, _)| mesh)
}
