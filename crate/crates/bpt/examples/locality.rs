//! Sequence locality: average distance (in grid units) from each emitted
//! vertex to its previous t emitted vertices, for the bpt and vanilla
//! emission orders. Lower is better. Patch aggregation keeps each patch's
//! vertices clustered, while the vanilla stream re-emits every vertex once
//! per incident face; those repeats contribute zero-distance pairs, so on
//! highly regular meshes like icospheres the two orders trade places
//! depending on the window.

use bpt::{avd, normalize, quantize, shapes, vertex_emission_stream, SequenceKind};

fn main() -> Result<(), bpt::Error> {
    let windows = [8usize, 32, 128];
    eprintln!(
        "{:<15} {:>6} {:>10} {:>10} {:>10}",
        "mesh", "kind", "AVD@8", "AVD@32", "AVD@128"
    );
    for (name, subdivisions) in [
        ("icosphere-80", 1u32),
        ("icosphere-320", 2),
        ("icosphere-1280", 3),
        ("icosphere-5120", 4),
    ] {
        let mesh = quantize(&normalize(&shapes::icosphere(subdivisions))?, 7)?;
        for kind in [SequenceKind::Vanilla, SequenceKind::Bpt] {
            let stream = vertex_emission_stream(&mesh, kind);
            let mut row = format!("{:<15} {:>6}", name, kind.as_str());
            for t in windows {
                row.push_str(&format!(" {:>10.3}", avd(&stream, t)?));
            }
            eprintln!("{row}");
        }
    }
    Ok(())
}
