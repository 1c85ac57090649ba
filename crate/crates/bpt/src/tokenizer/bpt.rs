//! The blocked + patchified tokenizer and its exact decoder.

use std::collections::HashMap;

use crate::block::{BptConfig, TokenClass};
use crate::error::{MalformedSequence, Result};
use crate::mesh::{canonicalize, Face, QuantizedMesh, QuantizedVertex};
use crate::patch::aggregate_patches;

use super::TokenSequence;

/// Emits BOS, then per patch: a center-block id, the center offset, and for
/// each ring vertex an optional common-block id (only when its block differs
/// from the running block, which resets to the center's block at every patch
/// start) followed by its offset; then EOS.
pub(super) fn encode(mesh: &QuantizedMesh, cfg: &BptConfig) -> Vec<u32> {
    let layout = cfg.layout();
    let patches = aggregate_patches(mesh);
    let mut tokens = Vec::with_capacity(2 + patches.iter().map(|p| 2 + 2 * p.ring.len()).sum::<usize>());
    tokens.push(layout.bos());
    for patch in &patches {
        let (center_block, center_offset) = cfg.block_index(mesh.vertices[patch.center]);
        tokens.push(layout.center_block_id(center_block));
        tokens.push(layout.offset_id(center_offset));
        let mut current = center_block;
        for &w in &patch.ring {
            let (b, o) = cfg.block_index(mesh.vertices[w]);
            if b != current {
                tokens.push(layout.common_block_id(b));
                current = b;
            }
            tokens.push(layout.offset_id(o));
        }
    }
    tokens.push(layout.eos());
    tokens
}

/// Rebuilds patches by vocabulary-range dispatch and canonicalizes the
/// resulting face soup. The envelope (BOS present, ids in range) has already
/// been checked by the caller.
pub(super) fn decode(seq: &TokenSequence) -> Result<QuantizedMesh> {
    let cfg = &seq.config;
    let layout = cfg.layout();

    let mut interner: HashMap<QuantizedVertex, usize> = HashMap::new();
    let mut vertices: Vec<QuantizedVertex> = Vec::new();
    let mut faces: Vec<Face> = Vec::new();

    let mut current_block = None;
    let mut center: Option<usize> = None;
    let mut ring: Vec<usize> = Vec::new();
    let mut awaiting_center_offset = false;
    let mut pending_block: Option<u32> = None;
    let mut saw_eos = false;

    let close_patch = |center: &mut Option<usize>,
                           ring: &mut Vec<usize>,
                           faces: &mut Vec<Face>|
     -> std::result::Result<(), MalformedSequence> {
        if let Some(c) = center.take() {
            if ring.len() < 2 {
                return Err(MalformedSequence::RingTooShort);
            }
            for w in ring.windows(2) {
                faces.push(Face::new(c, w[0], w[1]));
            }
            ring.clear();
        }
        Ok(())
    };

    for (i, &token) in seq.tokens.iter().enumerate() {
        if i == 0 {
            // BOS, validated by the envelope check.
            continue;
        }
        if saw_eos {
            return Err(MalformedSequence::Unexpected(token).into());
        }
        match layout.classify(token) {
            TokenClass::CenterBlock(b) => {
                if pending_block.is_some() || awaiting_center_offset {
                    return Err(MalformedSequence::DanglingBlock(
                        pending_block.unwrap_or(token),
                    )
                    .into());
                }
                close_patch(&mut center, &mut ring, &mut faces)?;
                current_block = Some(b);
                awaiting_center_offset = true;
            }
            TokenClass::CommonBlock(b) => {
                if center.is_none() && !awaiting_center_offset {
                    return Err(MalformedSequence::ExpectedCenterBlock(token).into());
                }
                if pending_block.is_some() || awaiting_center_offset {
                    return Err(MalformedSequence::DanglingBlock(
                        pending_block.unwrap_or(token),
                    )
                    .into());
                }
                current_block = Some(b);
                pending_block = Some(token);
            }
            TokenClass::Offset(o) => {
                let Some(block) = current_block else {
                    return Err(MalformedSequence::OffsetBeforeBlock(token).into());
                };
                let vertex = cfg.vertex_at(block, o);
                let next_id = vertices.len();
                let id = *interner.entry(vertex).or_insert_with(|| {
                    vertices.push(vertex);
                    next_id
                });
                if awaiting_center_offset {
                    center = Some(id);
                    awaiting_center_offset = false;
                } else {
                    ring.push(id);
                }
                pending_block = None;
            }
            TokenClass::Eos => {
                if pending_block.is_some() || awaiting_center_offset {
                    return Err(MalformedSequence::DanglingBlock(
                        pending_block.unwrap_or(token),
                    )
                    .into());
                }
                close_patch(&mut center, &mut ring, &mut faces)?;
                saw_eos = true;
            }
            TokenClass::Bos | TokenClass::Pad => {
                return Err(MalformedSequence::Unexpected(token).into());
            }
            TokenClass::Invalid => {
                return Err(MalformedSequence::TokenOutOfRange {
                    id: token,
                    vocab: layout.total(),
                }
                .into());
            }
        }
    }
    if !saw_eos {
        return Err(MalformedSequence::Truncated.into());
    }

    canonicalize(&vertices, &faces, cfg.bits()).map(|(mesh, _)| mesh)
}
