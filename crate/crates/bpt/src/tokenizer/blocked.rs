//! The block-indexing-only baseline: the vanilla face stream with each
//! vertex as (block, offset) and adjacent-block merging across the whole
//! stream. One block vocabulary, no patches.

use std::collections::HashMap;

use crate::block::{BlockIndex, BptConfig, OffsetIndex};
use crate::error::{MalformedSequence, Result};
use crate::mesh::{canonicalize, Face, QuantizedMesh, QuantizedVertex};

use super::{specials, SequenceKind, TokenSequence};

pub(super) fn encode(mesh: &QuantizedMesh, cfg: &BptConfig) -> Vec<u32> {
    let (bos, eos, _) = specials(SequenceKind::Blocked, cfg);
    let offset_count = cfg.offset_count();
    let mut tokens = Vec::with_capacity(4 * mesh.faces.len() + 2);
    tokens.push(bos);
    let mut current: Option<BlockIndex> = None;
    for face in &mesh.faces {
        for v in face.vertices() {
            let (b, o) = cfg.block_index(mesh.vertices[v]);
            if current != Some(b) {
                tokens.push(offset_count + b.0);
                current = Some(b);
            }
            tokens.push(o.0);
        }
    }
    tokens.push(eos);
    tokens
}

pub(super) fn decode(seq: &TokenSequence) -> Result<QuantizedMesh> {
    let cfg = &seq.config;
    let offset_count = cfg.offset_count();
    let block_end = offset_count + cfg.block_count();
    let (_, eos, _) = specials(SequenceKind::Blocked, cfg);

    let mut stream: Vec<QuantizedVertex> = Vec::new();
    let mut current: Option<BlockIndex> = None;
    let mut pending_block: Option<u32> = None;
    let mut saw_eos = false;
    for &token in &seq.tokens[1..] {
        if saw_eos {
            return Err(MalformedSequence::Unexpected(token).into());
        }
        if token < offset_count {
            let Some(block) = current else {
                return Err(MalformedSequence::OffsetBeforeBlock(token).into());
            };
            stream.push(cfg.vertex_at(block, OffsetIndex(token)));
            pending_block = None;
        } else if token < block_end {
            if let Some(prev) = pending_block {
                return Err(MalformedSequence::DanglingBlock(prev).into());
            }
            current = Some(BlockIndex(token - offset_count));
            pending_block = Some(token);
        } else if token == eos {
            if let Some(prev) = pending_block {
                return Err(MalformedSequence::DanglingBlock(prev).into());
            }
            saw_eos = true;
        } else {
            return Err(MalformedSequence::Unexpected(token).into());
        }
    }
    if !saw_eos {
        return Err(MalformedSequence::Truncated.into());
    }
    if !stream.len().is_multiple_of(3) {
        return Err(MalformedSequence::BadContentLength {
            len: stream.len(),
            unit: 3,
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
    let faces: Vec<Face> = stream
        .chunks_exact(3)
        .map(|t| Face::new(intern(t[0]), intern(t[1]), intern(t[2])))
        .collect();
    canonicalize(&vertices, &faces, cfg.bits()).map(|(mesh, _)| mesh)
}
