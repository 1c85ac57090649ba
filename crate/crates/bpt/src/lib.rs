//! Lossless blocked + patchified tokenization for triangle meshes.
//!
//! The pipeline: load an OBJ, [`normalize`] it into the unit box,
//! [`quantize`] onto a `2^bits` integer grid (canonical z-y-x ordering
//! included), then [`encode`] the canonical mesh into a compact token
//! sequence. [`decode`] inverts the encoding exactly: decoding and
//! canonicalizing always reproduces the encoded mesh.
//!
//! Three tokenizers share one [`TokenSequence`] type and one `.bpt`
//! container:
//!
//! * **vanilla** - 9 coordinate tokens per face; the ratio-1.00 baseline.
//! * **blocked** - each vertex as a (block, offset) pair with adjacent-block
//!   merging over the face stream; roughly halves the sequence.
//! * **bpt** - blocked indexing plus fan-patch aggregation with dual block
//!   vocabularies; patch starts are marked by a dedicated center-block id
//!   range, so no separator tokens are spent.
//!
//! The [`metrics`] module measures what the tokenizers achieve: compression
//! ratio against the 9-tokens-per-face baseline, sequence locality (AVD@t),
//! and geometric fidelity (Chamfer/Hausdorff on uniformly sampled surface
//! point clouds). The [`corpus`] module batch-processes directories and
//! filters meshes by tokenized length against a model context window.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release -p bpt --example roundtrip          # encode/decode losslessness
//! cargo run --release -p bpt --example compression_table  # ratios per tokenizer and shape
//! cargo run --release -p bpt --example locality           # AVD@t for bpt vs vanilla
//! cargo run --release -p bpt --example vocabulary         # token id layouts per config
//! cargo run --release -p bpt --example surface_metrics    # Chamfer/Hausdorff fidelity
//! cargo run --release -p bpt --example corpus_filter      # context-window data filtering
//! ```
//!
//! A thin `bpt` binary exposes the same operations for scripting; see the
//! README for the subcommands.
//!
//! # Quick start
//!
//! ```
//! use bpt::{BptConfig, SequenceKind};
//!
//! let raw = bpt::shapes::icosphere(1);
//! let mesh = bpt::quantize(&bpt::normalize(&raw)?, 7)?;
//! let cfg = BptConfig::default(); // 8 blocks of 16 cells on a 7-bit grid
//! let seq = bpt::encode(&mesh, &cfg, SequenceKind::Bpt)?;
//! assert_eq!(bpt::decode(&seq)?, mesh);
//! # Ok::<(), bpt::Error>(())
//! ```

pub mod block;
pub mod container;
pub mod corpus;
pub mod error;
pub mod mesh;
pub mod metrics;
pub mod obj;
pub mod patch;
pub mod shapes;
pub mod tokenizer;

pub use block::{naive_index, BlockIndex, BptConfig, OffsetIndex, TokenClass, TokenLayout};
pub use container::{from_bytes, read_bpt, to_bytes, write_bpt};
pub use error::{Error, MalformedSequence, Result};
pub use mesh::{
    canonicalize, dequantize, normalize, quantize, CanonicalizationReport, Face, QuantizedMesh,
    QuantizedVertex, RawMesh,
};
pub use metrics::{
    avd, avd_report, chamfer, chamfer_with, compression_ratio, hausdorff, sample_surface,
    vertex_emission_stream, AvdReport, ChamferNorm, CompressionReport, PointCloud,
};
pub use obj::{load_obj, load_obj_file, obj_to_string, write_obj, write_obj_file};
pub use patch::{aggregate_patches, Patch};
pub use tokenizer::{
    decode, encode, sequence_length, specials, vocab_total, SequenceKind, TokenSequence,
};
