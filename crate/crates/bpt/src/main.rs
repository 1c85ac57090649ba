//! Thin command-line front end over the library. stdout carries
//! machine-readable JSON only; human-readable notes go to stderr.
//!
//! Exit codes: 0 success, 1 usage/parse/config error (including bad magic),
//! 2 round-trip mismatch or malformed token file.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bpt::corpus::{corpus_stats, discover_objs, filter_by_length, write_manifest_jsonl};
use bpt::{
    compression_ratio, decode, dequantize, encode, normalize, quantize, BptConfig, Error,
    SequenceKind,
};

#[derive(Parser)]
#[command(name = "bpt", version, about = "Mesh tokenization codec and analysis tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Bpt,
    Vanilla,
    Blocked,
}

impl From<KindArg> for SequenceKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Bpt => SequenceKind::Bpt,
            KindArg::Vanilla => SequenceKind::Vanilla,
            KindArg::Blocked => SequenceKind::Blocked,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tokenize an OBJ mesh into a .bpt container.
    Encode {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 7)]
        bits: u8,
        /// Blocks per axis; offsets per axis are derived as 2^bits / blocks.
        #[arg(long, default_value_t = 8)]
        blocks: u16,
        #[arg(long, value_enum, default_value_t = KindArg::Bpt)]
        kind: KindArg,
    },
    /// Decode a .bpt container back into an OBJ mesh.
    Decode {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode then decode, and verify the canonical meshes match.
    Roundtrip {
        input: PathBuf,
        #[arg(long, default_value_t = 7)]
        bits: u8,
        #[arg(long, default_value_t = 8)]
        blocks: u16,
        #[arg(long, value_enum, default_value_t = KindArg::Bpt)]
        kind: KindArg,
    },
    /// Per-mesh and aggregate token counts, ratios and AVD across kinds.
    Stats {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Emit JSON lines instead of one pretty-printed document.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 7)]
        bits: u8,
        #[arg(long, default_value_t = 8)]
        blocks: u16,
    },
    /// Tokenize a directory of OBJ files and filter by sequence length.
    Filter {
        dir: PathBuf,
        #[arg(long, default_value_t = 9600)]
        max_len: usize,
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, default_value_t = 7)]
        bits: u8,
        #[arg(long, default_value_t = 8)]
        blocks: u16,
    },
    /// Chamfer and Hausdorff distance between two sampled mesh surfaces.
    Metrics {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1024)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Malformed(_) => 2,
        _ => 1,
    }
}

fn load_quantized(path: &PathBuf, bits: u8) -> Result<bpt::QuantizedMesh, Error> {
    let raw = bpt::load_obj_file(path)?;
    quantize(&normalize(&raw)?, bits)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Encode {
            input,
            out,
            bits,
            blocks,
            kind,
        } => {
            let cfg = BptConfig::with_blocks(blocks, bits)?;
            let mesh = load_quantized(&input, bits)?;
            let seq = encode(&mesh, &cfg, kind.into())?;
            let mut file = std::io::BufWriter::new(std::fs::File::create(&out)?);
            bpt::write_bpt(&seq, &mut file)?;
            let report = compression_ratio(&seq, &mesh)?;
            println!(
                "{}",
                json!({
                    "path": input.display().to_string(),
                    "kind": seq.kind.as_str(),
                    "tokens": seq.tokens.len(),
                    "content_tokens": report.tokens,
                    "faces": report.faces,
                    "ratio": report.ratio,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode { input, out } => {
            let mut file = std::io::BufReader::new(std::fs::File::open(&input)?);
            let seq = bpt::read_bpt(&mut file)?;
            let mesh = decode(&seq)?;
            bpt::write_obj_file(&dequantize(&mesh), &out)?;
            println!(
                "{}",
                json!({
                    "kind": seq.kind.as_str(),
                    "vertices": mesh.vertices.len(),
                    "faces": mesh.faces.len(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Roundtrip {
            input,
            bits,
            blocks,
            kind,
        } => {
            let cfg = BptConfig::with_blocks(blocks, bits)?;
            let mesh = load_quantized(&input, bits)?;
            let seq = encode(&mesh, &cfg, kind.into())?;
            let back = decode(&seq)?;
            if back == mesh {
                println!(
                    "{}",
                    json!({
                        "roundtrip": "ok",
                        "kind": seq.kind.as_str(),
                        "faces": mesh.faces.len(),
                        "tokens": seq.tokens.len(),
                    })
                );
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{}", json!({ "roundtrip": "mismatch", "diff": diff_summary(&mesh, &back) }));
                Ok(ExitCode::from(2))
            }
        }
        Command::Stats {
            inputs,
            json: jsonl,
            bits,
            blocks,
        } => {
            let cfg = BptConfig::with_blocks(blocks, bits)?;
            let manifest = corpus_stats(&inputs, &cfg, &SequenceKind::ALL)?;
            if jsonl {
                let mut stdout = std::io::stdout().lock();
                write_manifest_jsonl(&manifest, &mut stdout)?;
            } else {
                println!("{}", serde_json::to_string_pretty(&manifest).map_err(json_err)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Filter {
            dir,
            max_len,
            manifest,
            bits,
            blocks,
        } => {
            let cfg = BptConfig::with_blocks(blocks, bits)?;
            let paths = discover_objs(&dir)?;
            let result = filter_by_length(&paths, &cfg, max_len)?;
            let mut file = std::io::BufWriter::new(std::fs::File::create(&manifest)?);
            write_manifest_jsonl(&result, &mut file)?;
            println!("{}", serde_json::to_string(&result.summary).map_err(json_err)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Metrics { a, b, points, seed } => {
            let cloud_a = sampled(&a, points, seed)?;
            let cloud_b = sampled(&b, points, seed)?;
            let cd = bpt::chamfer(&cloud_a, &cloud_b)?;
            let hd = bpt::hausdorff(&cloud_a, &cloud_b)?;
            println!("{}", json!({ "cd": cd, "hd": hd, "n": points, "seed": seed }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

// Meshes are sampled as given, in model units: translating one input by d
// moves the Hausdorff distance to exactly d.
fn sampled(path: &PathBuf, points: usize, seed: u64) -> Result<bpt::PointCloud, Error> {
    let raw = bpt::load_obj_file(path)?;
    bpt::sample_surface(&raw, points, seed)
}

fn diff_summary(expected: &bpt::QuantizedMesh, got: &bpt::QuantizedMesh) -> serde_json::Value {
    let first_vertex_diff = expected
        .vertices
        .iter()
        .zip(&got.vertices)
        .position(|(a, b)| a != b);
    let first_face_diff = expected
        .faces
        .iter()
        .zip(&got.faces)
        .position(|(a, b)| a != b);
    json!({
        "expected_vertices": expected.vertices.len(),
        "got_vertices": got.vertices.len(),
        "expected_faces": expected.faces.len(),
        "got_faces": got.faces.len(),
        "first_vertex_diff": first_vertex_diff,
        "first_face_diff": first_face_diff,
    })
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
