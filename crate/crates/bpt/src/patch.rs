//! Patch aggregation: greedy fan covering of the canonical face list.
//!
//! Each patch is a center vertex plus an ordered ring of fan vertices; the
//! patch's faces are exactly (center, ring[i], ring[i+1]). A closed fan
//! repeats its first ring vertex at the end so the decoder can apply the
//! consecutive-pair rule uniformly.

use std::collections::VecDeque;

use crate::mesh::QuantizedMesh;

/// A fan of triangles around one center vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Patch {
    /// Index of the hub vertex.
    pub center: usize,
    /// Fan vertices in walk order; `ring[0] == ring[n-1]` iff `closed`.
    pub ring: Vec<usize>,
    /// Whether the fan wraps all the way around the center.
    pub closed: bool,
}

impl Patch {
    pub fn face_count(&self) -> usize {
        self.ring.len() - 1
    }

    /// The faces this patch stands for, in ring order with original winding.
    pub fn faces(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.ring.windows(2).map(move |w| (self.center, w[0], w[1]))
    }
}

/// Partitions the faces of a canonical mesh into fan patches.
///
/// The first unvisited face in canonical order seeds each patch. Among that
/// face's three vertices, the one touching the most unvisited faces becomes
/// the center (ties go to the vertex lowest in z-y-x order, which is the
/// lowest index). The walk then collects the edge-connected run of unvisited
/// center-incident faces containing the seed: forward in winding order, then
/// backward if the fan is open. Faces that cannot be reached through a
/// walkable edge (non-manifold configurations) stay unvisited and seed their
/// own patches later, so every face ends up in exactly one patch.
pub fn aggregate_patches(mesh: &QuantizedMesh) -> Vec<Patch> {
    let num_faces = mesh.faces.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); mesh.vertices.len()];
    for (fid, face) in mesh.faces.iter().enumerate() {
        for v in face.vertices() {
            incident[v].push(fid);
        }
    }
    let mut unvisited_count: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut visited = vec![false; num_faces];
    let mut patches = Vec::new();
    let mut cursor = 0usize;

    while cursor < num_faces {
        if visited[cursor] {
            cursor += 1;
            continue;
        }
        let seed = cursor;
        let center = mesh.faces[seed]
            .vertices()
            .into_iter()
            .max_by_key(|&v| (unvisited_count[v], std::cmp::Reverse(v)))
            .expect("face has three vertices");

        let (patch, walked) = walk_fan(mesh, center, seed, &incident[center], &visited);
        for fid in walked {
            visited[fid] = true;
            for v in mesh.faces[fid].vertices() {
                unvisited_count[v] -= 1;
            }
        }
        patches.push(patch);
    }
    patches
}

/// One center-incident face expressed as its wings around the center.
#[derive(Clone, Copy)]
struct FanEntry {
    fid: usize,
    u: usize,
    v: usize,
}

fn walk_fan(
    mesh: &QuantizedMesh,
    center: usize,
    seed: usize,
    center_faces: &[usize],
    visited: &[bool],
) -> (Patch, Vec<usize>) {
    // Candidate faces in canonical order, each as (u, v) wings.
    let entries: Vec<FanEntry> = center_faces
        .iter()
        .filter(|&&fid| !visited[fid])
        .map(|&fid| {
            let (u, v) = mesh.faces[fid]
                .wings(center)
                .expect("face is incident to center");
            FanEntry { fid, u, v }
        })
        .collect();
    let seed_pos = entries
        .iter()
        .position(|e| e.fid == seed)
        .expect("seed face is unvisited and incident");

    let mut used = vec![false; entries.len()];
    used[seed_pos] = true;
    let mut chain = VecDeque::from([seed_pos]);
    let mut closed = false;

    let pick = |used: &[bool], pred: &dyn Fn(&FanEntry) -> bool| {
        entries
            .iter()
            .enumerate()
            .find(|(i, e)| !used[*i] && pred(e))
            .map(|(i, _)| i)
    };

    // Forward: follow faces whose leading wing matches the current tail.
    loop {
        let tail_v = entries[*chain.back().unwrap()].v;
        if tail_v == entries[*chain.front().unwrap()].u {
            closed = true;
            break;
        }
        match pick(&used, &|e| e.u == tail_v) {
            Some(i) => {
                used[i] = true;
                chain.push_back(i);
            }
            None => break,
        }
    }
    // Backward: extend to the fan boundary so the walk starts there.
    if !closed {
        loop {
            let head_u = entries[*chain.front().unwrap()].u;
            match pick(&used, &|e| e.v == head_u) {
                Some(i) => {
                    used[i] = true;
                    chain.push_front(i);
                }
                None => break,
            }
        }
    }

    let mut ring = Vec::with_capacity(chain.len() + 1);
    ring.push(entries[*chain.front().unwrap()].u);
    let mut walked = Vec::with_capacity(chain.len());
    for &i in &chain {
        ring.push(entries[i].v);
        walked.push(entries[i].fid);
    }
    (
        Patch {
            center,
            ring,
            closed,
        },
        walked,
    )
}
