//! Lossless round trip: OBJ text -> normalized -> quantized -> tokens ->
//! decoded mesh, for all three tokenizer kinds, including a pass through
//! the binary container.

use bpt::{
    compression_ratio, decode, dequantize, encode, from_bytes, load_obj, normalize, obj_to_string,
    quantize, shapes, to_bytes, BptConfig, SequenceKind,
};

fn main() -> Result<(), bpt::Error> {
    // Start from OBJ text to exercise the full ingestion path.
    let obj_text = obj_to_string(&shapes::icosphere(2));
    let raw = load_obj(obj_text.as_bytes())?;
    let mesh = quantize(&normalize(&raw)?, 7)?;
    eprintln!(
        "icosphere: {} vertices, {} faces after 7-bit quantization",
        mesh.vertices.len(),
        mesh.faces.len()
    );

    let cfg = BptConfig::default();
    for kind in SequenceKind::ALL {
        let seq = encode(&mesh, &cfg, kind)?;
        let bytes = to_bytes(&seq);
        let reread = from_bytes(&bytes)?;
        assert_eq!(reread, seq, "container must round-trip byte-exactly");
        let back = decode(&reread)?;
        assert_eq!(back, mesh, "decoding must reproduce the canonical mesh");
        let report = compression_ratio(&seq, &mesh)?;
        eprintln!(
            "{:>8}: {:5} tokens ({} content), ratio {:.3}, container {} bytes -- lossless",
            kind.as_str(),
            seq.tokens.len(),
            report.tokens,
            report.ratio,
            bytes.len()
        );
    }

    // The decoded geometry re-enters the pipeline unchanged.
    let rebuilt = quantize(&normalize(&dequantize(&mesh))?, 7)?;
    assert_eq!(rebuilt, mesh, "dequantize/requantize must be stable");
    eprintln!("dequantize -> normalize -> quantize is stable");
    Ok(())
}
