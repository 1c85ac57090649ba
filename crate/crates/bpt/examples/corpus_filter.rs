//! Context-window data filtering over a synthetic corpus: icospheres from
//! 80 to 20480 faces are tokenized and kept only when their sequence length
//! (BOS/EOS included) fits the window. The manifest is JSON lines, one
//! record per mesh plus a trailing summary.

use bpt::corpus::{discover_objs, filter_by_length, write_manifest_jsonl};
use bpt::{shapes, write_obj_file, BptConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    for k in 1..=5u32 {
        let mesh = shapes::icosphere(k);
        let path = dir.path().join(format!("icosphere_{:05}.obj", mesh.faces.len()));
        write_obj_file(&mesh, &path)?;
    }

    let cfg = BptConfig::default();
    let max_len = 9600;
    let paths = discover_objs(dir.path())?;
    let manifest = filter_by_length(&paths, &cfg, max_len)?;

    let mut out = Vec::new();
    write_manifest_jsonl(&manifest, &mut out)?;
    print!("{}", String::from_utf8(out)?);

    for record in &manifest.records {
        eprintln!(
            "{:>6} faces -> {:>6} tokens: {}",
            record.faces,
            record.token_len.get("bpt").copied().unwrap_or(0),
            if record.kept { "kept" } else { "rejected" }
        );
    }
    eprintln!(
        "kept {}/{} meshes at window {max_len}",
        manifest.summary.kept, manifest.summary.total
    );
    Ok(())
}
