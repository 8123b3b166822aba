//! Rotation-system model of a link diagram drawn on a closed surface.
//!
//! A dart is a (crossing, port) slot encoded as `4 * crossing + port`. Ports run
//! counterclockwise as seen from the positive side of the surface, so the
//! rotation at a crossing is `port -> port + 1` and the strands pair ports
//! (0,2) and (1,3). Faces are orbits of `d -> rot(mate(d))`; walking a face this
//! way keeps the face on the right.

mod faces;
mod homology;
mod strands;

pub use faces::{Corner, Face, FaceSet};
pub(crate) use homology::gcd;
pub use strands::{LinkComponent, Passage};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Dart = usize;

#[inline]
pub fn dart(crossing: usize, port: u8) -> Dart {
    4 * crossing + port as usize
}

#[inline]
pub fn crossing_of(d: Dart) -> usize {
    d / 4
}

#[inline]
pub fn port_of(d: Dart) -> u8 {
    (d % 4) as u8
}

/// Next port counterclockwise at the same crossing.
#[inline]
pub fn rot(d: Dart) -> Dart {
    d - d % 4 + (d % 4 + 1) % 4
}

#[inline]
pub fn rot_by(d: Dart, k: u8) -> Dart {
    d - d % 4 + (d % 4 + k as usize) % 4
}

/// Which opposite pair of ports carries the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OverPair {
    #[serde(rename = "02")]
    P02,
    #[serde(rename = "13")]
    P13,
}

impl OverPair {
    pub fn is_over(self, port: u8) -> bool {
        match self {
            OverPair::P02 => port.is_multiple_of(2),
            OverPair::P13 => port % 2 == 1,
        }
    }

    pub fn flipped(self) -> OverPair {
        match self {
            OverPair::P02 => OverPair::P13,
            OverPair::P13 => OverPair::P02,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OverPair::P02 => "02",
            OverPair::P13 => "13",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub id: i64,
    pub genus: u32,
    pub derived_genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub id: i64,
    /// Index into the surface list.
    pub surface: usize,
    pub over_pair: OverPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramEdge {
    pub ends: [Dart; 2],
    /// Deck translation from `ends[0]` to `ends[1]` in the universal abelian
    /// cover of a torus component.
    pub shift: Option<[i64; 2]>,
}

/// Groups several boundary cycles (each named by one of its darts) into a
/// single region of the given genus. Cycles not mentioned are disks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionSpec {
    pub boundaries: Vec<Dart>,
    pub genus: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed syntax at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported sld version {0}")]
    Version(u64),
    #[error("duplicate surface id {0}")]
    DuplicateSurface(i64),
    #[error("duplicate crossing id {0}")]
    DuplicateCrossing(i64),
    #[error("crossing {crossing} refers to unknown surface {surface}")]
    UnknownSurface { crossing: i64, surface: i64 },
    #[error("edge {edge} refers to unknown crossing {crossing}")]
    UnknownCrossing { edge: usize, crossing: i64 },
    #[error("edge {edge} uses port {port} at crossing {crossing}; ports are 0..=3")]
    BadPort { edge: usize, crossing: i64, port: u8 },
    #[error("duplicate port: crossing {crossing} port {port} appears in more than one edge")]
    DuplicatePort { crossing: i64, port: u8 },
    #[error("dangling port: crossing {crossing} port {port} is not the end of any edge")]
    DanglingPort { crossing: i64, port: u8 },
    #[error("edge {edge} spans surfaces {a} and {b}")]
    EdgeSpansSurfaces { edge: usize, a: i64, b: i64 },
    #[error("genus mismatch on surface {surface}: declared {declared}, faces give Euler characteristic {euler}")]
    GenusMismatch { surface: i64, declared: u32, euler: i64 },
    #[error("a genus 0 surface must be the only surface component")]
    SphereNotAlone,
    #[error("region {region}: {message}")]
    BadRegion { region: usize, message: String },
    #[error("free loop refers to unknown surface {0}")]
    BadFreeLoop(i64),
    #[error("edge shifts: {0}")]
    BadShift(String),
}

/// Immutable diagram on a (possibly disconnected) closed orientable surface.
#[derive(Clone, Debug)]
pub struct SurfaceDiagram {
    surfaces: Vec<SurfaceComponent>,
    crossings: Vec<Crossing>,
    edges: Vec<DiagramEdge>,
    regions: Vec<RegionSpec>,
    free_loops: Vec<usize>,
    mate: Vec<Dart>,
    edge_of: Vec<usize>,
    faces: FaceSet,
    /// Per dart translation on torus components; zero elsewhere.
    dart_shift: Vec<[i64; 2]>,
    shifts_declared: bool,
}

/// Raw parts accepted by [`SurfaceDiagram::new`]. Crossing surfaces and edge
/// ends are indices, not ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramParts {
    pub surfaces: Vec<(i64, u32)>,
    pub crossings: Vec<Crossing>,
    pub edges: Vec<DiagramEdge>,
    pub regions: Vec<RegionSpec>,
    pub free_loops: Vec<usize>,
}

impl SurfaceDiagram {
    pub fn new(parts: DiagramParts) -> Result<Self, DiagramError> {
        let DiagramParts { surfaces, crossings, edges, regions, free_loops } = parts;
        let n = crossings.len();
        let mut mate = vec![usize::MAX; 4 * n];
        let mut edge_of = vec![usize::MAX; 4 * n];
        let cid = |d: Dart| crossings[crossing_of(d)].id;
        let sid = |s: usize| surfaces[s].0;

        if surfaces.iter().any(|s| s.1 == 0) && surfaces.len() > 1 {
            return Err(DiagramError::SphereNotAlone);
        }
        for (i, s) in surfaces.iter().enumerate() {
            if surfaces[..i].iter().any(|t| t.0 == s.0) {
                return Err(DiagramError::DuplicateSurface(s.0));
            }
        }
        for c in &crossings {
            if c.surface >= surfaces.len() {
                return Err(DiagramError::UnknownSurface { crossing: c.id, surface: c.surface as i64 });
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if let Some(&d) = e.ends.iter().find(|&&d| d >= 4 * n) {
                return Err(DiagramError::UnknownCrossing { edge: i, crossing: crossing_of(d) as i64 });
            }
        }
        for &s in &free_loops {
            if s >= surfaces.len() {
                return Err(DiagramError::BadFreeLoop(s as i64));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            for &d in &e.ends {
                if edge_of[d] != usize::MAX {
                    return Err(DiagramError::DuplicatePort { crossing: cid(d), port: port_of(d) });
                }
                edge_of[d] = i;
            }
            let [a, b] = e.ends;
            if a == b {
                return Err(DiagramError::DuplicatePort { crossing: cid(a), port: port_of(a) });
            }
            mate[a] = b;
            mate[b] = a;
            let (sa, sb) = (crossings[crossing_of(a)].surface, crossings[crossing_of(b)].surface);
            if sa != sb {
                return Err(DiagramError::EdgeSpansSurfaces { edge: i, a: sid(sa), b: sid(sb) });
            }
        }
        if let Some(d) = (0..4 * n).find(|&d| mate[d] == usize::MAX) {
            return Err(DiagramError::DanglingPort { crossing: cid(d), port: port_of(d) });
        }

        let faces = FaceSet::trace(&crossings, &mate, surfaces.len(), &surfaces, &regions)?;
        let mut comps: Vec<SurfaceComponent> = surfaces
            .iter()
            .map(|&(id, genus)| SurfaceComponent { id, genus, derived_genus: genus })
            .collect();
        for (s, comp) in comps.iter_mut().enumerate() {
            let v = crossings.iter().filter(|c| c.surface == s).count() as i64;
            let e = 2 * v;
            let fsum: i64 = faces.faces.iter().filter(|f| f.surface == s).map(|f| f.euler_char).sum();
            let euler = v - e + fsum;
            if euler > 2 || euler % 2 != 0 || (2 - euler) / 2 != comp.genus as i64 {
                return Err(DiagramError::GenusMismatch { surface: comp.id, declared: comp.genus, euler });
            }
            comp.derived_genus = ((2 - euler) / 2) as u32;
        }

        let mut diagram = SurfaceDiagram {
            surfaces: comps,
            crossings,
            edges,
            regions,
            free_loops,
            mate,
            edge_of,
            faces,
            dart_shift: Vec::new(),
            shifts_declared: false,
        };
        diagram.install_shifts()?;
        Ok(diagram)
    }

    pub fn surfaces(&self) -> &[SurfaceComponent] {
        &self.surfaces
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn regions(&self) -> &[RegionSpec] {
        &self.regions
    }

    pub fn free_loops(&self) -> &[usize] {
        &self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn dart_count(&self) -> usize {
        4 * self.crossings.len()
    }

    /// The other end of the edge through `d`.
    #[inline]
    pub fn mate(&self, d: Dart) -> Dart {
        self.mate[d]
    }

    #[inline]
    pub fn edge_of(&self, d: Dart) -> usize {
        self.edge_of[d]
    }

    #[inline]
    pub fn is_over(&self, d: Dart) -> bool {
        self.crossings[crossing_of(d)].over_pair.is_over(port_of(d))
    }

    pub fn surface_of_crossing(&self, x: usize) -> usize {
        self.crossings[x].surface
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    /// Face-tracing entry point; faces are computed at construction.
    pub fn trace_faces(&self) -> FaceSet {
        self.faces.clone()
    }

    /// Euler characteristic of surface component `s`.
    pub fn surface_euler(&self, s: usize) -> i64 {
        2 - 2 * self.surfaces[s].genus as i64
    }

    /// Euler characteristic of the whole projection surface.
    pub fn euler_char(&self) -> i64 {
        (0..self.surfaces.len()).map(|s| self.surface_euler(s)).sum()
    }

    pub fn crossings_on(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.crossings.len()).filter(move |&x| self.crossings[x].surface == s)
    }

    /// Region containing the corner between ports `a` and `a + 1` at `x`.
    pub fn corner_face(&self, x: usize, a: u8) -> usize {
        self.faces.dart_face[dart(x, (a + 1) % 4)]
    }

    /// Translation of dart `d` on a torus component (zero elsewhere).
    pub fn dart_shift(&self, d: Dart) -> [i64; 2] {
        self.dart_shift[d]
    }

    pub fn shifts_declared(&self) -> bool {
        self.shifts_declared
    }

    /// Same diagram with every crossing switched.
    pub fn mirror(&self) -> SurfaceDiagram {
        let mut m = self.clone();
        for c in &mut m.crossings {
            c.over_pair = c.over_pair.flipped();
        }
        m
    }

    /// Flip a single crossing; mainly for building counterexamples.
    pub fn with_flipped_crossing(&self, x: usize) -> SurfaceDiagram {
        let mut m = self.clone();
        m.crossings[x].over_pair = m.crossings[x].over_pair.flipped();
        m
    }

    pub fn to_parts(&self) -> DiagramParts {
        DiagramParts {
            surfaces: self.surfaces.iter().map(|s| (s.id, s.genus)).collect(),
            crossings: self.crossings.clone(),
            edges: self.edges.clone(),
            regions: self.regions.clone(),
            free_loops: self.free_loops.clone(),
        }
    }

    /// Relabel crossings by `perm[old] = new`, keeping ids attached to crossings.
    pub fn relabeled(&self, perm: &[usize]) -> Result<SurfaceDiagram, DiagramError> {
        let mut parts = self.to_parts();
        let mut crossings = parts.crossings.clone();
        for (old, &new) in perm.iter().enumerate() {
            crossings[new] = parts.crossings[old].clone();
        }
        let map = |d: Dart| dart(perm[crossing_of(d)], port_of(d));
        parts.crossings = crossings;
        for e in &mut parts.edges {
            e.ends = [map(e.ends[0]), map(e.ends[1])];
        }
        for r in &mut parts.regions {
            for d in &mut r.boundaries {
                *d = map(*d);
            }
        }
        SurfaceDiagram::new(parts)
    }

    pub fn strands(&self) -> Vec<LinkComponent> {
        strands::trace(self)
    }

    /// Is every region a disk?
    pub fn all_faces_disks(&self) -> bool {
        self.faces.faces.iter().all(|f| f.is_disk)
    }

    pub fn max_genus(&self) -> u32 {
        self.surfaces.iter().map(|s| s.genus).max().unwrap_or(0)
    }
}
