//! Random alternating diagrams for property tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::VecDeque;
use wga_core::diagram::{Crossing, DiagramEdge, DiagramParts, OverPair};
use wga_core::ambient::{AmbientFlags, DeclaredRep};
use wga_core::{AmbientContext, AmbientKind, RepValue, SurfaceDiagram};

fn rot(d: usize) -> usize {
    d - d % 4 + (d % 4 + 1) % 4
}

fn mate_table(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut mate = vec![0; 4 * n];
    for &(a, b) in pairs {
        mate[a] = b;
        mate[b] = a;
    }
    mate
}

fn face_count(mate: &[usize]) -> usize {
    let mut seen = vec![false; mate.len()];
    let mut faces = 0;
    for s in 0..mate.len() {
        if seen[s] {
            continue;
        }
        faces += 1;
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            d = rot(mate[d]);
        }
    }
    faces
}

fn connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a / 4].push(b / 4);
        adj[b / 4].push(a / 4);
    }
    let mut seen = vec![false; n];
    let mut q = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                q.push_back(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Genus of the closed surface on which the 4-valent map is cellular.
pub fn genus_of(n: usize, pairs: &[(usize, usize)]) -> u32 {
    let f = face_count(&mate_table(n, pairs)) as i64;
    ((2 + n as i64 - f) / 2) as u32
}

pub fn build(n: usize, pairs: &[(usize, usize)], over: &[OverPair]) -> SurfaceDiagram {
    let genus = genus_of(n, pairs);
    SurfaceDiagram::new(DiagramParts {
        surfaces: vec![(0, genus)],
        crossings: (0..n).map(|x| Crossing { id: x as i64, surface: 0, over_pair: over[x] }).collect(),
        edges: pairs.iter().map(|&(a, b)| DiagramEdge { ends: [a, b], shift: None }).collect(),
        ..Default::default()
    })
    .expect("generated diagram is valid")
}

/// Join every over port to an under port at random. With all crossings
/// carrying the over strand on ports 0 and 2 the result is alternating, its
/// faces are disks, and it is checkerboard colourable.
pub fn random_matching_pairs<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    loop {
        let even: Vec<usize> = (0..4 * n).filter(|d| d % 2 == 0).collect();
        let mut odd: Vec<usize> = (0..4 * n).filter(|d| d % 2 == 1).collect();
        odd.shuffle(rng);
        let pairs: Vec<(usize, usize)> = even.into_iter().zip(odd).collect();
        if connected(n, &pairs) {
            return pairs;
        }
    }
}

/// Closure of a braid on `strands` strands on the sphere. Ports: 0 and 1
/// come in from positions i and i+1, 3 and 2 leave to positions i and i+1.
pub fn braid_closure_pairs(strands: usize, word: &[usize]) -> Vec<(usize, usize)> {
    let mut pending: Vec<Option<usize>> = vec![None; strands];
    let mut first: Vec<Option<usize>> = vec![None; strands];
    let mut pairs = Vec::new();
    for (k, &i) in word.iter().enumerate() {
        for (pos, port) in [(i, 0), (i + 1, 1)] {
            match pending[pos] {
                None => first[pos] = Some(4 * k + port),
                Some(src) => pairs.push((src, 4 * k + port)),
            }
        }
        pending[i] = Some(4 * k + 3);
        pending[i + 1] = Some(4 * k + 2);
    }
    for pos in 0..strands {
        pairs.push((pending[pos].unwrap(), first[pos].unwrap()));
    }
    pairs
}

/// Over pairs making every edge join an over end to an under end, if any.
pub fn solve_alternation(n: usize, pairs: &[(usize, usize)]) -> Option<Vec<OverPair>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        let flip = (1 + a + b) % 2 == 1;
        adj[a / 4].push((b / 4, flip));
        adj[b / 4].push((a / 4, flip));
    }
    let mut s: Vec<Option<bool>> = vec![None; n];
    for r in 0..n {
        if s[r].is_some() {
            continue;
        }
        s[r] = Some(false);
        let mut q = VecDeque::from([r]);
        while let Some(x) = q.pop_front() {
            for &(y, c) in &adj[x] {
                let want = s[x].unwrap() ^ c;
                match s[y] {
                    None => {
                        s[y] = Some(want);
                        q.push_back(y);
                    }
                    Some(v) if v != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(s.into_iter().map(|v| if v.unwrap() { OverPair::P13 } else { OverPair::P02 }).collect())
}

/// A random braid closure on the sphere using every generator.
pub fn random_sphere_diagram<R: Rng>(rng: &mut R, max_crossings: usize) -> SurfaceDiagram {
    loop {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(strands.max(2)..=max_crossings);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..strands - 1)).collect();
        if (0..strands - 1).any(|g| !word.contains(&g)) {
            continue;
        }
        let pairs = braid_closure_pairs(strands, &word);
        if let Some(over) = solve_alternation(len, &pairs) {
            return build(len, &pairs, &over);
        }
    }
}

/// A random alternating colourable diagram with at most `max_crossings`
/// crossings on a surface of genus at most `max_genus`.
pub fn random_diagram<R: Rng>(rng: &mut R, max_crossings: usize, max_genus: u32) -> SurfaceDiagram {
    if rng.gen_bool(0.3) {
        return random_sphere_diagram(rng, max_crossings);
    }
    loop {
        let n = rng.gen_range(1..=max_crossings);
        let pairs = random_matching_pairs(rng, n);
        if genus_of(n, &pairs) <= max_genus {
            return build(n, &pairs, &vec![OverPair::P02; n]);
        }
    }
}

/// Random declared facts: every flag is unset, false or true.
pub fn random_ctx<R: Rng>(rng: &mut R) -> AmbientContext {
    let flag = |rng: &mut R| match rng.gen_range(0..3) {
        0 => None,
        1 => Some(false),
        _ => Some(true),
    };
    let rep = |rng: &mut R| match rng.gen_range(0..4) {
        0 => RepValue::Infinite,
        k => RepValue::Finite(2 + k as u32),
    };
    let kind = match rng.gen_range(0..4) {
        0 => AmbientKind::ThickenedSurface,
        1 => AmbientKind::HeegaardTorusS3,
        _ => AmbientKind::Declared,
    };
    let declared_representativity = if rng.gen_bool(0.7) {
        vec![DeclaredRep { surface: None, minus: rep(rng), plus: rep(rng), note: None }]
    } else {
        Vec::new()
    };
    AmbientContext {
        kind,
        flags: AmbientFlags {
            atoroidal: flag(rng),
            boundary_anannular: flag(rng),
            boundary_incompressible: flag(rng),
            in_s3: flag(rng),
        },
        declared_representativity,
        heegaard: flag(rng),
        annulus_core_knotted: flag(rng),
        ..Default::default()
    }
}
