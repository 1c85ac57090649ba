//! Block-wise vertex indexing and the token vocabulary layout.
//!
//! The grid of `2^bits` cells per axis is partitioned into `B` blocks of `O`
//! cells per axis (`B * O == 2^bits`). A vertex splits into a block index in
//! `[0, B^3)` and an offset index in `[0, O^3)`:
//!
//! ```text
//! b = (x / O) * B^2 + (y / O) * B + (z / O)
//! o = (x % O) * O^2 + (y % O) * O + (z % O)
//! ```
//!
//! Token ids pack three ranges plus specials, back to back:
//! offsets, common-block ids, center-block ids, then BOS/EOS/PAD.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::mesh::QuantizedVertex;

/// Tokenization parameters: blocks per axis, offsets per axis, grid depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BptConfig {
    blocks: u16,
    offsets: u16,
    bits: u8,
}

impl Default for BptConfig {
    /// The default configuration: 8 blocks of 16 cells on a 7-bit grid.
    fn default() -> Self {
        BptConfig {
            blocks: 8,
            offsets: 16,
            bits: 7,
        }
    }
}

impl BptConfig {
    pub fn new(blocks: u16, offsets: u16, bits: u8) -> Result<Self> {
        if !(1..=10).contains(&bits) {
            return Err(Error::Config(format!(
                "quantization bits must be in 1..=10, got {bits}"
            )));
        }
        if blocks == 0 || offsets == 0 {
            return Err(Error::Config("blocks and offsets must be >= 1".into()));
        }
        if (blocks as u32) * (offsets as u32) != 1u32 << bits {
            return Err(Error::Config(format!(
                "blocks * offsets must equal 2^bits: {blocks} * {offsets} != {}",
                1u32 << bits
            )));
        }
        Ok(BptConfig {
            blocks,
            offsets,
            bits,
        })
    }

    /// Builds a config from the block count alone; the offset count is
    /// derived as `2^bits / blocks`, so inconsistent pairs cannot exist.
    pub fn with_blocks(blocks: u16, bits: u8) -> Result<Self> {
        if !(1..=10).contains(&bits) {
            return Err(Error::Config(format!(
                "quantization bits must be in 1..=10, got {bits}"
            )));
        }
        let r = 1u32 << bits;
        if blocks == 0 || !r.is_multiple_of(blocks as u32) {
            return Err(Error::Config(format!(
                "blocks ({blocks}) must divide the grid resolution ({r})"
            )));
        }
        BptConfig::new(blocks, (r / blocks as u32) as u16, bits)
    }

    pub fn blocks(&self) -> u32 {
        self.blocks as u32
    }

    pub fn offsets(&self) -> u32 {
        self.offsets as u32
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn resolution(&self) -> u32 {
        1u32 << self.bits
    }

    /// Size of the block vocabulary, `B^3`.
    pub fn block_count(&self) -> u32 {
        self.blocks().pow(3)
    }

    /// Size of the offset vocabulary, `O^3`.
    pub fn offset_count(&self) -> u32 {
        self.offsets().pow(3)
    }

    /// Splits a grid vertex into its block and in-block offset indexes.
    pub fn block_index(&self, v: QuantizedVertex) -> (BlockIndex, OffsetIndex) {
        let b_axis = self.blocks();
        let o_axis = self.offsets();
        debug_assert!(v.x < self.resolution() && v.y < self.resolution() && v.z < self.resolution());
        let b = (v.x / o_axis) * b_axis * b_axis + (v.y / o_axis) * b_axis + (v.z / o_axis);
        let o = (v.x % o_axis) * o_axis * o_axis + (v.y % o_axis) * o_axis + (v.z % o_axis);
        (BlockIndex(b), OffsetIndex(o))
    }

    /// Exact inverse of [`BptConfig::block_index`].
    pub fn vertex_at(&self, b: BlockIndex, o: OffsetIndex) -> QuantizedVertex {
        let b_axis = self.blocks();
        let o_axis = self.offsets();
        debug_assert!(b.0 < self.block_count() && o.0 < self.offset_count());
        let x = (b.0 / (b_axis * b_axis)) * o_axis + o.0 / (o_axis * o_axis);
        let y = ((b.0 / b_axis) % b_axis) * o_axis + (o.0 / o_axis) % o_axis;
        let z = (b.0 % b_axis) * o_axis + o.0 % o_axis;
        QuantizedVertex::new(x, y, z)
    }

    pub fn layout(&self) -> TokenLayout {
        TokenLayout {
            offset_count: self.offset_count(),
            block_count: self.block_count(),
        }
    }
}

/// 1-D index of the coarse block containing a vertex, in `[0, B^3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockIndex(pub u32);

/// 1-D index of a vertex's cell within its block, in `[0, O^3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OffsetIndex(pub u32);

/// Flattens a grid vertex to the single index `x*r^2 + y*r + z`.
///
/// This is the reference vocabulary that blows up as `r^3`; it exists to
/// cross-check that block/offset indexing is a bijection of the same grid.
pub fn naive_index(v: QuantizedVertex, bits: u8) -> u64 {
    let r = 1u64 << bits;
    v.x as u64 * r * r + v.y as u64 * r + v.z as u64
}

/// Concrete id ranges realizing the dual block vocabularies.
///
/// Offsets come first, then common-block ids, then center-block ids, then
/// BOS, EOS and PAD. The ranges partition `[0, total)`, so a decoder can
/// classify any id without lookahead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenLayout {
    offset_count: u32,
    block_count: u32,
}

impl TokenLayout {
    pub fn offset_range(&self) -> Range<u32> {
        0..self.offset_count
    }

    pub fn common_block_range(&self) -> Range<u32> {
        self.offset_count..self.offset_count + self.block_count
    }

    pub fn center_block_range(&self) -> Range<u32> {
        self.offset_count + self.block_count..self.offset_count + 2 * self.block_count
    }

    pub fn bos(&self) -> u32 {
        self.offset_count + 2 * self.block_count
    }

    pub fn eos(&self) -> u32 {
        self.bos() + 1
    }

    pub fn pad(&self) -> u32 {
        self.bos() + 2
    }

    pub fn total(&self) -> u32 {
        self.offset_count + 2 * self.block_count + 3
    }

    pub fn offset_id(&self, o: OffsetIndex) -> u32 {
        debug_assert!(o.0 < self.offset_count);
        o.0
    }

    pub fn common_block_id(&self, b: BlockIndex) -> u32 {
        debug_assert!(b.0 < self.block_count);
        self.offset_count + b.0
    }

    pub fn center_block_id(&self, b: BlockIndex) -> u32 {
        debug_assert!(b.0 < self.block_count);
        self.offset_count + self.block_count + b.0
    }

    pub fn classify(&self, id: u32) -> TokenClass {
        if id < self.offset_count {
            TokenClass::Offset(OffsetIndex(id))
        } else if self.common_block_range().contains(&id) {
            TokenClass::CommonBlock(BlockIndex(id - self.offset_count))
        } else if self.center_block_range().contains(&id) {
            TokenClass::CenterBlock(BlockIndex(id - self.offset_count - self.block_count))
        } else if id == self.bos() {
            TokenClass::Bos
        } else if id == self.eos() {
            TokenClass::Eos
        } else if id == self.pad() {
            TokenClass::Pad
        } else {
            TokenClass::Invalid
        }
    }
}

/// What a token id means under a given layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenClass {
    Offset(OffsetIndex),
    CommonBlock(BlockIndex),
    CenterBlock(BlockIndex),
    Bos,
    Eos,
    Pad,
    Invalid,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32, y: u32, z: u32) -> QuantizedVertex {
        QuantizedVertex::new(x, y, z)
    }

    #[test]
    fn config_validates_factorization() {
        assert!(BptConfig::new(8, 16, 7).is_ok());
        assert!(BptConfig::new(4, 32, 7).is_ok());
        assert!(BptConfig::new(16, 8, 7).is_ok());
        assert!(BptConfig::new(5, 16, 7).is_err());
        assert!(BptConfig::new(0, 16, 7).is_err());
        assert!(BptConfig::new(8, 16, 0).is_err());
        assert!(BptConfig::with_blocks(5, 7).is_err());
        assert_eq!(BptConfig::with_blocks(8, 7).unwrap(), BptConfig::default());
    }

    #[test]
    fn block_index_matches_hand_computed_values() {
        let cfg = BptConfig::default();
        assert_eq!(cfg.block_index(v(0, 0, 0)), (BlockIndex(0), OffsetIndex(0)));
        assert_eq!(
            cfg.block_index(v(127, 127, 127)),
            (BlockIndex(511), OffsetIndex(4095))
        );
        // (20,33,5): b = 1*64 + 2*8 + 0 = 80, o = 4*256 + 1*16 + 5 = 1045
        assert_eq!(
            cfg.block_index(v(20, 33, 5)),
            (BlockIndex(80), OffsetIndex(1045))
        );
    }

    #[test]
    fn inverse_recovers_corners() {
        let cfg = BptConfig::default();
        assert_eq!(cfg.vertex_at(BlockIndex(0), OffsetIndex(0)), v(0, 0, 0));
        assert_eq!(
            cfg.vertex_at(BlockIndex(511), OffsetIndex(4095)),
            v(127, 127, 127)
        );
    }

    #[test]
    fn round_trip_exhaustive_small_grid() {
        // Full sweep at bits=4 for every legal factorization.
        for blocks in [1u16, 2, 4, 8, 16] {
            let cfg = BptConfig::with_blocks(blocks, 4).unwrap();
            for x in 0..16 {
                for y in 0..16 {
                    for z in 0..16 {
                        let p = v(x, y, z);
                        let (b, o) = cfg.block_index(p);
                        assert!(b.0 < cfg.block_count());
                        assert!(o.0 < cfg.offset_count());
                        assert_eq!(cfg.vertex_at(b, o), p);
                    }
                }
            }
        }
    }

    #[test]
    fn naive_index_reference_values() {
        assert_eq!(naive_index(v(0, 0, 0), 7), 0);
        assert_eq!(naive_index(v(127, 127, 127), 7), 128u64.pow(3) - 1);
        assert_eq!(naive_index(v(1, 0, 0), 7), 16384);
    }

    #[test]
    fn packed_block_offset_is_not_the_naive_index() {
        // Both are bijections of the grid, but they disagree pointwise.
        let cfg = BptConfig::default();
        let p = v(20, 33, 5);
        let (b, o) = cfg.block_index(p);
        let packed = b.0 as u64 * cfg.offset_count() as u64 + o.0 as u64;
        assert_ne!(packed, naive_index(p, 7));
    }

    #[test]
    fn layout_default_config() {
        let layout = BptConfig::default().layout();
        assert_eq!(layout.offset_range(), 0..4096);
        assert_eq!(layout.common_block_range(), 4096..4608);
        assert_eq!(layout.center_block_range(), 4608..5120);
        assert_eq!(layout.bos(), 5120);
        assert_eq!(layout.eos(), 5121);
        assert_eq!(layout.pad(), 5122);
        assert_eq!(layout.total(), 5123);
    }

    #[test]
    fn layout_alternative_configs() {
        let layout = BptConfig::new(4, 32, 7).unwrap().layout();
        assert_eq!(layout.offset_range(), 0..32768);
        assert_eq!(layout.common_block_range(), 32768..32832);
        assert_eq!(layout.center_block_range(), 32832..32896);
        assert_eq!(layout.total(), 32899);

        let layout = BptConfig::new(16, 8, 7).unwrap().layout();
        assert_eq!(layout.offset_range(), 0..512);
        assert_eq!(layout.common_block_range(), 512..4608);
        assert_eq!(layout.center_block_range(), 4608..8704);
        assert_eq!(layout.total(), 8707);
    }

    #[test]
    fn classify_partitions_whole_vocabulary() {
        let layout = BptConfig::default().layout();
        let mut counts = [0usize; 6];
        for id in 0..layout.total() {
            match layout.classify(id) {
                TokenClass::Offset(o) => {
                    assert_eq!(layout.offset_id(o), id);
                    counts[0] += 1;
                }
                TokenClass::CommonBlock(b) => {
                    assert_eq!(layout.common_block_id(b), id);
                    counts[1] += 1;
                }
                TokenClass::CenterBlock(b) => {
                    assert_eq!(layout.center_block_id(b), id);
                    counts[2] += 1;
                }
                TokenClass::Bos => counts[3] += 1,
                TokenClass::Eos => counts[4] += 1,
                TokenClass::Pad => counts[5] += 1,
                TokenClass::Invalid => panic!("id {id} classified as invalid"),
            }
        }
        assert_eq!(counts, [4096, 512, 512, 1, 1, 1]);
        assert_eq!(layout.classify(layout.total()), TokenClass::Invalid);
    }
}
