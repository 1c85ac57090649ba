//! Token sequences and the three mesh tokenizers.
//!
//! * `vanilla` - 9 coordinate tokens per face, the ratio-1.00 baseline.
//! * `blocked` - block/offset vertex indexing with adjacent-block merging
//!   over the flat face stream, no patches.
//! * `bpt` - blocked indexing plus patch aggregation with dual block
//!   vocabularies.
//!
//! All three are lossless: decoding a sequence and canonicalizing the result
//! reproduces the encoded mesh exactly.

use serde::{Deserialize, Serialize};

use crate::block::BptConfig;
use crate::error::{Error, MalformedSequence, Result};
use crate::mesh::QuantizedMesh;

mod blocked;
mod bpt;
mod vanilla;

/// Which tokenizer produced a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Bpt,
    Vanilla,
    Blocked,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [
        SequenceKind::Bpt,
        SequenceKind::Vanilla,
        SequenceKind::Blocked,
    ];

    /// Kind byte used by the `.bpt` container.
    pub fn code(self) -> u8 {
        match self {
            SequenceKind::Bpt => 0,
            SequenceKind::Vanilla => 1,
            SequenceKind::Blocked => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(SequenceKind::Bpt),
            1 => Some(SequenceKind::Vanilla),
            2 => Some(SequenceKind::Blocked),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::Bpt => "bpt",
            SequenceKind::Vanilla => "vanilla",
            SequenceKind::Blocked => "blocked",
        }
    }
}

impl std::fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bpt" => Ok(SequenceKind::Bpt),
            "vanilla" => Ok(SequenceKind::Vanilla),
            "blocked" => Ok(SequenceKind::Blocked),
            other => Err(Error::Config(format!("unknown tokenizer kind `{other}`"))),
        }
    }
}

/// Total vocabulary size for a kind under a config, specials included.
pub fn vocab_total(kind: SequenceKind, cfg: &BptConfig) -> u32 {
    match kind {
        SequenceKind::Bpt => cfg.layout().total(),
        SequenceKind::Vanilla => cfg.resolution() + 3,
        SequenceKind::Blocked => cfg.offset_count() + cfg.block_count() + 3,
    }
}

/// BOS, EOS and PAD ids for a kind; always the last three ids.
pub fn specials(kind: SequenceKind, cfg: &BptConfig) -> (u32, u32, u32) {
    let base = vocab_total(kind, cfg) - 3;
    (base, base + 1, base + 2)
}

/// An encoded mesh: ordered token ids plus the config that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    pub tokens: Vec<u32>,
    pub config: BptConfig,
    pub kind: SequenceKind,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of tokens that are not BOS, EOS or PAD.
    pub fn content_len(&self) -> usize {
        let (bos, eos, pad) = specials(self.kind, &self.config);
        self.tokens
            .iter()
            .filter(|&&t| t != bos && t != eos && t != pad)
            .count()
    }

    pub fn vocab_total(&self) -> u32 {
        vocab_total(self.kind, &self.config)
    }
}

/// Encodes a canonical mesh with the requested tokenizer.
pub fn encode(mesh: &QuantizedMesh, cfg: &BptConfig, kind: SequenceKind) -> Result<TokenSequence> {
    if mesh.faces.is_empty() {
        return Err(Error::EmptyMesh);
    }
    if cfg.bits() != mesh.bits {
        return Err(Error::Config(format!(
            "config is for {}-bit grids but mesh is {}-bit",
            cfg.bits(),
            mesh.bits
        )));
    }
    let tokens = match kind {
        SequenceKind::Bpt => bpt::encode(mesh, cfg),
        SequenceKind::Vanilla => vanilla::encode(mesh, cfg),
        SequenceKind::Blocked => blocked::encode(mesh, cfg),
    };
    Ok(TokenSequence {
        tokens,
        config: *cfg,
        kind,
    })
}

/// Decodes a token sequence back into a canonical mesh.
pub fn decode(seq: &TokenSequence) -> Result<QuantizedMesh> {
    validate_envelope(seq)?;
    match seq.kind {
        SequenceKind::Bpt => bpt::decode(seq),
        SequenceKind::Vanilla => vanilla::decode(seq),
        SequenceKind::Blocked => blocked::decode(seq),
    }
}

/// Length of the BPT encoding of a mesh, BOS and EOS included. This is the
/// quantity the corpus filter compares against a model's context window.
pub fn sequence_length(mesh: &QuantizedMesh, cfg: &BptConfig) -> Result<usize> {
    Ok(encode(mesh, cfg, SequenceKind::Bpt)?.tokens.len())
}

fn validate_envelope(seq: &TokenSequence) -> Result<()> {
    let vocab = vocab_total(seq.kind, &seq.config);
    if let Some(&bad) = seq.tokens.iter().find(|&&t| t >= vocab) {
        return Err(MalformedSequence::TokenOutOfRange { id: bad, vocab }.into());
    }
    let (bos, _, _) = specials(seq.kind, &seq.config);
    match seq.tokens.first() {
        None => Err(MalformedSequence::Truncated.into()),
        Some(&t) if t != bos => Err(MalformedSequence::MissingBos.into()),
        Some(_) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{canonicalize, Face, QuantizedVertex};

    pub(crate) fn grid_mesh(
        verts: &[(u32, u32, u32)],
        faces: &[(usize, usize, usize)],
    ) -> QuantizedMesh {
        let vs: Vec<QuantizedVertex> = verts
            .iter()
            .map(|&(x, y, z)| QuantizedVertex::new(x, y, z))
            .collect();
        let fs: Vec<Face> = faces.iter().map(|&(a, b, c)| Face::new(a, b, c)).collect();
        canonicalize(&vs, &fs, 7).unwrap().0
    }

    #[test]
    fn kind_codes_round_trip() {
        for kind in SequenceKind::ALL {
            assert_eq!(SequenceKind::from_code(kind.code()), Some(kind));
            assert_eq!(kind.as_str().parse::<SequenceKind>().unwrap(), kind);
        }
        assert_eq!(SequenceKind::from_code(3), None);
        assert!("amt".parse::<SequenceKind>().is_err());
    }

    #[test]
    fn vocab_totals() {
        let cfg = BptConfig::default();
        assert_eq!(vocab_total(SequenceKind::Bpt, &cfg), 5123);
        assert_eq!(vocab_total(SequenceKind::Vanilla, &cfg), 131);
        assert_eq!(vocab_total(SequenceKind::Blocked, &cfg), 4096 + 512 + 3);
    }

    #[test]
    fn encode_rejects_empty_mesh() {
        let empty = QuantizedMesh {
            vertices: vec![],
            faces: vec![],
            bits: 7,
        };
        for kind in SequenceKind::ALL {
            assert!(matches!(
                encode(&empty, &BptConfig::default(), kind),
                Err(Error::EmptyMesh)
            ));
        }
    }

    #[test]
    fn encode_rejects_config_mismatch() {
        let mesh = grid_mesh(&[(0, 0, 0), (5, 0, 0), (0, 5, 0)], &[(0, 1, 2)]);
        // Valid config, but for a 6-bit grid while the mesh is 7-bit.
        let cfg = BptConfig::new(8, 8, 6).unwrap();
        assert!(matches!(
            encode(&mesh, &cfg, SequenceKind::Bpt),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn single_triangle_token_counts() {
        // One triangle inside one block: 4 content tokens for bpt
        // (center-block, center-offset, offset, offset), 9 for vanilla,
        // 4 for blocked (block + 3 offsets).
        let mesh = grid_mesh(&[(1, 1, 1), (5, 1, 1), (1, 5, 1)], &[(0, 1, 2)]);
        let cfg = BptConfig::default();
        let bpt = encode(&mesh, &cfg, SequenceKind::Bpt).unwrap();
        assert_eq!(bpt.content_len(), 4);
        assert_eq!(bpt.len(), 6); // plus BOS and EOS
        assert_eq!(sequence_length(&mesh, &cfg).unwrap(), 6);
        let vanilla = encode(&mesh, &cfg, SequenceKind::Vanilla).unwrap();
        assert_eq!(vanilla.content_len(), 9);
        let blocked = encode(&mesh, &cfg, SequenceKind::Blocked).unwrap();
        assert_eq!(blocked.content_len(), 4);
    }

    #[test]
    fn shared_edge_pair_bpt_token_count() {
        // Two triangles sharing an edge, four vertices in one block:
        // 5 content tokens (center-block, center-offset, 3 ring offsets).
        let mesh = grid_mesh(
            &[(1, 1, 1), (5, 1, 1), (5, 5, 1), (1, 5, 1)],
            &[(0, 1, 2), (0, 2, 3)],
        );
        let seq = encode(&mesh, &BptConfig::default(), SequenceKind::Bpt).unwrap();
        assert_eq!(seq.content_len(), 5);
    }

    #[test]
    fn closed_hexagon_fan_bpt_token_count() {
        // Hub plus 6-vertex ring inside one block: center-block +
        // center-offset + 7 ring offsets = 9 content tokens vs 54 vanilla.
        let hub = (8, 8, 2);
        let ring = [
            (12, 8, 2),
            (10, 11, 2),
            (6, 11, 2),
            (4, 8, 2),
            (6, 5, 2),
            (10, 5, 2),
        ];
        let mut verts = vec![hub];
        verts.extend_from_slice(&ring);
        let faces: Vec<(usize, usize, usize)> =
            (0..6).map(|i| (0, i + 1, (i + 1) % 6 + 1)).collect();
        let mesh = grid_mesh(&verts, &faces);
        assert_eq!(mesh.faces.len(), 6);
        let cfg = BptConfig::default();
        let seq = encode(&mesh, &cfg, SequenceKind::Bpt).unwrap();
        assert_eq!(seq.content_len(), 9);
        let vanilla = encode(&mesh, &cfg, SequenceKind::Vanilla).unwrap();
        assert_eq!(vanilla.content_len(), 54);
    }

    #[test]
    fn round_trip_all_kinds_all_configs() {
        let meshes = [
            grid_mesh(&[(0, 0, 0), (90, 3, 7), (2, 110, 50)], &[(0, 1, 2)]),
            grid_mesh(
                &[(1, 1, 1), (120, 4, 9), (100, 90, 3), (7, 80, 127)],
                &[(0, 1, 2), (0, 2, 3)],
            ),
        ];
        for mesh in &meshes {
            for blocks in [4u16, 8, 16] {
                let cfg = BptConfig::with_blocks(blocks, 7).unwrap();
                for kind in SequenceKind::ALL {
                    let seq = encode(mesh, &cfg, kind).unwrap();
                    let back = decode(&seq).unwrap();
                    assert_eq!(&back, mesh, "kind={kind} blocks={blocks}");
                }
            }
        }
    }

    #[test]
    fn bpt_sequence_shape() {
        let mesh = grid_mesh(
            &[(1, 1, 1), (40, 3, 90), (100, 90, 3), (7, 80, 127)],
            &[(0, 1, 2), (0, 2, 3)],
        );
        let cfg = BptConfig::default();
        let layout = cfg.layout();
        let seq = encode(&mesh, &cfg, SequenceKind::Bpt).unwrap();
        assert_eq!(seq.tokens.first(), Some(&layout.bos()));
        assert_eq!(seq.tokens.last(), Some(&layout.eos()));
        // First content token opens a patch from the center vocabulary.
        assert!(layout.center_block_range().contains(&seq.tokens[1]));
    }

    #[test]
    fn decode_rejects_spec_malformed_sequences() {
        let cfg = BptConfig::default();
        let layout = cfg.layout();
        let seq = |tokens: Vec<u32>| TokenSequence {
            tokens,
            config: cfg,
            kind: SequenceKind::Bpt,
        };

        // Offset before any patch opened.
        let err = decode(&seq(vec![layout.bos(), 7, layout.eos()])).unwrap_err();
        assert!(matches!(
            err,
            Error::Malformed(MalformedSequence::OffsetBeforeBlock(7))
        ));

        // Patch with an empty ring.
        let err = decode(&seq(vec![
            layout.bos(),
            layout.center_block_id(crate::block::BlockIndex(0)),
            0,
            layout.eos(),
        ]))
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Malformed(MalformedSequence::RingTooShort)
        ));

        // Missing EOS.
        let err = decode(&seq(vec![
            layout.bos(),
            layout.center_block_id(crate::block::BlockIndex(0)),
            0,
            1,
            2,
        ]))
        .unwrap_err();
        assert!(matches!(err, Error::Malformed(MalformedSequence::Truncated)));

        // Token beyond the vocabulary.
        let err = decode(&seq(vec![layout.bos(), layout.total(), layout.eos()])).unwrap_err();
        assert!(matches!(
            err,
            Error::Malformed(MalformedSequence::TokenOutOfRange { .. })
        ));

        // Missing BOS.
        let err = decode(&seq(vec![0, layout.eos()])).unwrap_err();
        assert!(matches!(err, Error::Malformed(MalformedSequence::MissingBos)));

        // Dangling block id right before EOS.
        let err = decode(&seq(vec![
            layout.bos(),
            layout.center_block_id(crate::block::BlockIndex(0)),
            0,
            1,
            2,
            layout.common_block_id(crate::block::BlockIndex(1)),
            layout.eos(),
        ]))
        .unwrap_err();
        assert!(matches!(
            err,
            Error::Malformed(MalformedSequence::DanglingBlock(_))
        ));
    }

    #[test]
    fn ring_vertices_cost_at_most_two_tokens() {
        let mesh = crate::quantize(
            &crate::normalize(&crate::shapes::icosphere(2)).unwrap(),
            7,
        )
        .unwrap();
        let cfg = BptConfig::default();
        let seq = encode(&mesh, &cfg, SequenceKind::Bpt).unwrap();
        let emitted: usize = crate::patch::aggregate_patches(&mesh)
            .iter()
            .map(|p| 1 + p.ring.len())
            .sum();
        let content = seq.content_len();
        assert!(content >= emitted, "every vertex occurrence costs >= 1 token");
        assert!(content <= 2 * emitted, "and at most 2 tokens");
    }

    #[test]
    fn stage_ordering_on_adjacent_faces() {
        let mesh = crate::quantize(
            &crate::normalize(&crate::shapes::icosphere(1)).unwrap(),
            7,
        )
        .unwrap();
        let cfg = BptConfig::default();
        let bpt = encode(&mesh, &cfg, SequenceKind::Bpt).unwrap().len();
        let blocked = encode(&mesh, &cfg, SequenceKind::Blocked).unwrap().len();
        let vanilla = encode(&mesh, &cfg, SequenceKind::Vanilla).unwrap().len();
        assert!(bpt < blocked, "bpt={bpt} blocked={blocked}");
        assert!(blocked < vanilla, "blocked={blocked} vanilla={vanilla}");
    }

    #[test]
    fn fan_length_is_monotone_in_faces() {
        let cfg = BptConfig::default();
        let mut lengths = Vec::new();
        for k in 1..=6 {
            let mesh =
                crate::quantize(&crate::normalize(&crate::shapes::fan(k, false)).unwrap(), 7)
                    .unwrap();
            lengths.push(sequence_length(&mesh, &cfg).unwrap());
        }
        for pair in lengths.windows(2) {
            assert!(pair[0] < pair[1], "lengths not monotone: {lengths:?}");
        }
    }

    #[test]
    fn encode_is_deterministic() {
        let mesh = crate::quantize(
            &crate::normalize(&crate::shapes::icosphere(1)).unwrap(),
            7,
        )
        .unwrap();
        let cfg = BptConfig::default();
        for kind in SequenceKind::ALL {
            let a = encode(&mesh, &cfg, kind).unwrap();
            let b = encode(&mesh, &cfg, kind).unwrap();
            assert_eq!(a, b);
        }
    }
}
