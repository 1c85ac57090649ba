//! Compression ratios (content tokens / 9·faces) for every tokenizer kind
//! over a spread of shapes, at the default (8, 16) configuration and the
//! two alternative factorizations of the 7-bit grid.

use bpt::{compression_ratio, encode, normalize, quantize, shapes, BptConfig, SequenceKind};

fn main() -> Result<(), bpt::Error> {
    let fixtures: Vec<(&str, bpt::RawMesh)> = vec![
        ("triangle", shapes::triangle()),
        ("quad", shapes::quad()),
        ("cube", shapes::cube()),
        ("hexagon-fan", shapes::fan(6, true)),
        ("icosphere-80", shapes::icosphere(1)),
        ("icosphere-320", shapes::icosphere(2)),
        ("icosphere-1280", shapes::icosphere(3)),
        ("icosphere-5120", shapes::icosphere(4)),
    ];

    for blocks in [4u16, 8, 16] {
        let cfg = BptConfig::with_blocks(blocks, 7)?;
        eprintln!(
            "config: {} blocks x {} offsets per axis (7-bit grid)",
            cfg.blocks(),
            cfg.offsets()
        );
        eprintln!(
            "{:<15} {:>7} {:>9} {:>9} {:>9}",
            "mesh", "faces", "vanilla", "blocked", "bpt"
        );
        for (name, raw) in &fixtures {
            let mesh = quantize(&normalize(raw)?, 7)?;
            let mut row = format!("{:<15} {:>7}", name, mesh.faces.len());
            for kind in [SequenceKind::Vanilla, SequenceKind::Blocked, SequenceKind::Bpt] {
                let seq = encode(&mesh, &cfg, kind)?;
                let report = compression_ratio(&seq, &mesh)?;
                row.push_str(&format!(" {:>9.3}", report.ratio));
            }
            eprintln!("{row}");
        }
        eprintln!();
    }
    Ok(())
}
