//! The angled chunk decomposition of a link complement, and its bounded
//! variant with the faces of one checkerboard colour left unglued.
//!
//! There is one chunk on each side of the projection surface. Each carries a
//! copy of the diagram graph with crossings as (truncated) ideal vertices and
//! diagram edges as chunk edges. A chunk edge is a copy of the crossing arc at
//! the crossing where its diagram edge is under, on the plus side, or over, on
//! the minus side; so each crossing arc appears four times.
//!
//! Angles are exact rationals in units of pi.

mod area;

pub use area::{
    classify_zero_area_square, combinatorial_area, enumerate_normal_disks, gauss_bonnet_check, vertex_linking_squares,
    ArcGluing, ArcRef, Exit, FaceRef, NormalSquareForm, PieceError, PieceKind, Step, SurfacePiece,
};

use crate::ambient::{representativity, AmbientContext, AmbientKind, Side};
use crate::certificate::{Certificate, Conclusion, Hypothesis};
use crate::diagram::{crossing_of, Dart, SurfaceDiagram};
use crate::validation::{checkerboard_colouring, cycle_kinds, is_alternating, is_weakly_prime, Colour};
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// A multiple of pi.
pub type Angle = Ratio<i64>;

pub fn half_pi() -> Angle {
    Ratio::new(1, 2)
}

fn ser_angle<S: Serializer>(a: &Angle, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{a}pi"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExteriorFace {
    pub euler_char: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chunk {
    pub id: usize,
    pub side: Side,
    /// Surface components whose copy on this side bounds the chunk.
    pub marked_surfaces: Vec<usize>,
    pub exterior_faces: Vec<ExteriorFace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    /// Glued to its partner on the other side.
    Interior,
    /// Left unglued in a bounded decomposition.
    Surface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChunkFace {
    pub id: usize,
    pub chunk: usize,
    pub region: usize,
    pub kind: FaceKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colour: Option<Colour>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Interior,
    Surface,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChunkEdge {
    pub id: usize,
    pub chunk: usize,
    pub diagram_edge: usize,
    /// The crossing whose crossing arc this edge copies.
    pub crossing: usize,
    pub class: usize,
    pub kind: EdgeKind,
    #[serde(serialize_with = "ser_angle")]
    pub interior_angle: Angle,
}

impl ChunkEdge {
    pub fn exterior_angle(&self) -> Angle {
        Angle::from_integer(1) - self.interior_angle
    }
}

/// The square left by truncating an ideal vertex. Its boundary edge at
/// corner `c` borders the face `corner_faces[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryFace {
    pub id: usize,
    pub chunk: usize,
    pub crossing: usize,
    pub corner_faces: [usize; 4],
    /// Chunk edges ending on this face, by port.
    pub edges: [usize; 4],
}

impl BoundaryFace {
    pub fn is_square(&self) -> bool {
        self.corner_faces.len() == 4
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub id: usize,
    pub members: Vec<usize>,
    /// Common crossing of the members, if they agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing: Option<usize>,
    #[serde(serialize_with = "ser_angle")]
    pub angle_sum: Angle,
    pub surface: bool,
}

/// How the minus copy of a region is glued to the plus copy: each edge side
/// (a dart with the region on its right) goes to the edge side `shift` steps
/// along the same boundary cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceGluing {
    pub region: usize,
    pub minus_face: usize,
    pub plus_face: usize,
    /// Per boundary cycle of the region.
    pub shifts: Vec<i64>,
    /// (minus edge side, plus edge side).
    pub side_map: Vec<(Dart, Dart)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChunkDecomposition {
    pub chunks: Vec<Chunk>,
    pub faces: Vec<ChunkFace>,
    pub boundary_faces: Vec<BoundaryFace>,
    pub edges: Vec<ChunkEdge>,
    pub classes: Vec<EdgeClass>,
    pub gluings: Vec<FaceGluing>,
    /// Colour of the surface faces in a bounded decomposition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unglued: Option<Colour>,
    /// Per boundary face, the corners whose face is a surface face; these
    /// boundary edges make up the parabolic locus.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parabolic_corners: Vec<Vec<u8>>,
    /// Diagram conditions that give the normal-disk angle condition.
    pub normal_disk_support: Vec<Hypothesis>,
    #[serde(skip)]
    diagram: SurfaceDiagram,
    #[serde(skip)]
    extra_rotation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChunkError {
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("diagram is not checkerboard colourable: {0}")]
    NotColourable(String),
}

pub const MINUS: usize = 0;
pub const PLUS: usize = 1;

impl ChunkDecomposition {
    pub fn diagram(&self) -> &SurfaceDiagram {
        &self.diagram
    }

    /// Chunk face id of region `r` on side `s`.
    pub fn face_of(&self, s: usize, region: usize) -> usize {
        s * self.diagram.faces().len() + region
    }

    /// Chunk edge id of diagram edge `e` on side `s`.
    pub fn edge_of(&self, s: usize, e: usize) -> usize {
        s * self.diagram.edges().len() + e
    }

    /// Boundary face id of crossing `x` on side `s`.
    pub fn boundary_face_of(&self, s: usize, x: usize) -> usize {
        s * self.diagram.crossing_count() + x
    }

    /// Where the gluing sends the minus edge side `d` (None if its region is
    /// a surface face).
    pub fn glue(&self, d: Dart) -> Option<Dart> {
        let r = self.diagram.faces().dart_face[d];
        self.gluings.iter().find(|g| g.region == r)?.side_map.iter().find(|p| p.0 == d).map(|p| p.1)
    }

    /// Same chunks with every face gluing rotated `k` further steps. Any
    /// `k != 0` breaks the decomposition; this exists to exercise the verifier.
    pub fn regluing(&self, k: i64) -> ChunkDecomposition {
        assemble(&self.diagram, self.chunks.clone(), self.unglued, self.normal_disk_support.clone(), self.extra_rotation + k)
    }
}

fn preconditions(d: &SurfaceDiagram) -> Result<(), ChunkError> {
    let alt = is_alternating(d);
    if !alt.alternating {
        return Err(ChunkError::Hypothesis("diagram is not alternating".into()));
    }
    for s in 0..d.surfaces().len() {
        if d.crossings_on(s).next().is_none() {
            return Err(ChunkError::Hypothesis(format!("surface {} carries no crossing", d.surfaces()[s].id)));
        }
    }
    if let Some(k) = d.strands().iter().find(|k| k.cr == 0) {
        return Err(ChunkError::Hypothesis(format!("link component {} meets no crossing", k.id)));
    }
    Ok(())
}

fn make_chunks(d: &SurfaceDiagram, ctx: &AmbientContext) -> Vec<Chunk> {
    let sphere = d.surfaces().len() == 1 && d.surfaces()[0].genus == 0;
    let all: Vec<usize> = (0..d.surfaces().len()).collect();
    [Side::Minus, Side::Plus]
        .into_iter()
        .enumerate()
        .map(|(id, side)| {
            let exterior_faces = match ctx.kind {
                AmbientKind::ThickenedSurface => {
                    (0..d.surfaces().len()).map(|s| ExteriorFace { euler_char: d.surface_euler(s) }).collect()
                }
                AmbientKind::HeegaardTorusS3 => Vec::new(),
                AmbientKind::Declared if sphere => Vec::new(),
                AmbientKind::Declared => ctx
                    .boundary_of_y
                    .iter()
                    .filter(|b| b.side == side)
                    .map(|b| ExteriorFace { euler_char: b.euler_char })
                    .collect(),
            };
            Chunk { id, side, marked_surfaces: all.clone(), exterior_faces }
        })
        .collect()
}

fn support(d: &SurfaceDiagram, ctx: &AmbientContext) -> Vec<Hypothesis> {
    let prime = is_weakly_prime(d);
    vec![
        Hypothesis::computed("weakly prime", prime.weakly_prime, prime.reason.unwrap_or_default()),
        match representativity(d, ctx) {
            Ok(rep) => Hypothesis::computed("representativity r >= 4", rep.r.at_least(4), format!("r = {}", rep.r))
                .with_provenance(rep.method),
            Err(e) => Hypothesis::declared("representativity r >= 4", None, e.to_string()),
        },
    ]
}

pub fn build_chunk_decomposition(d: &SurfaceDiagram, ctx: &AmbientContext) -> Result<ChunkDecomposition, ChunkError> {
    preconditions(d)?;
    Ok(assemble(d, make_chunks(d, ctx), None, support(d, ctx), 0))
}

pub fn build_bounded_decomposition(
    d: &SurfaceDiagram,
    ctx: &AmbientContext,
    colour: Colour,
) -> Result<ChunkDecomposition, ChunkError> {
    preconditions(d)?;
    checkerboard_colouring(d).map_err(|e| ChunkError::NotColourable(e.to_string()))?;
    Ok(assemble(d, make_chunks(d, ctx), Some(colour), support(d, ctx), 0))
}

fn assemble(
    d: &SurfaceDiagram,
    chunks: Vec<Chunk>,
    unglued: Option<Colour>,
    normal_disk_support: Vec<Hypothesis>,
    extra_rotation: i64,
) -> ChunkDecomposition {
    let fs = d.faces();
    let nf = fs.len();
    let ne = d.edges().len();
    let n = d.crossing_count();
    let colouring = checkerboard_colouring(d).ok();
    let colour_of = |r: usize| colouring.as_ref().map(|c| c.of(r));
    let is_surface = |r: usize| unglued.is_some() && colour_of(r) == unglued;

    let mut faces = Vec::with_capacity(2 * nf);
    for s in [MINUS, PLUS] {
        for r in 0..nf {
            faces.push(ChunkFace {
                id: s * nf + r,
                chunk: s,
                region: r,
                kind: if is_surface(r) { FaceKind::Surface } else { FaceKind::Interior },
                colour: colour_of(r),
            });
        }
    }

    let mut edges = Vec::with_capacity(2 * ne);
    for s in [MINUS, PLUS] {
        for (e, de) in d.edges().iter().enumerate() {
            let [a, b] = de.ends;
            // plus side: the crossing where this edge ends under; minus: over
            let want_over = s == MINUS;
            let crossing = if d.is_over(a) == want_over { crossing_of(a) } else { crossing_of(b) };
            let surface = is_surface(fs.dart_face[a]) || is_surface(fs.dart_face[b]);
            edges.push(ChunkEdge {
                id: s * ne + e,
                chunk: s,
                diagram_edge: e,
                crossing,
                class: usize::MAX,
                kind: if surface { EdgeKind::Surface } else { EdgeKind::Interior },
                interior_angle: half_pi(),
            });
        }
    }

    let mut boundary_faces = Vec::with_capacity(2 * n);
    for s in [MINUS, PLUS] {
        for x in 0..n {
            boundary_faces.push(BoundaryFace {
                id: s * n + x,
                chunk: s,
                crossing: x,
                corner_faces: std::array::from_fn(|c| s * nf + d.corner_face(x, c as u8)),
                edges: std::array::from_fn(|p| s * ne + d.edge_of(crate::diagram::dart(x, p as u8))),
            });
        }
    }
    let parabolic_corners = if unglued.is_some() {
        boundary_faces
            .iter()
            .map(|b| (0..4u8).filter(|&c| faces[b.corner_faces[c as usize]].kind == FaceKind::Surface).collect())
            .collect()
    } else {
        Vec::new()
    };

    // Gear rotation: a cycle whose darts leave crossings on the over strand
    // shifts back one step, the other kind forward one step.
    let kinds = cycle_kinds(d);
    let mut gluings = Vec::new();
    for f in &fs.faces {
        if is_surface(f.id) {
            continue;
        }
        let mut shifts = Vec::new();
        let mut side_map = Vec::new();
        for &c in &f.cycles {
            let cyc = &fs.cycles[c];
            let len = cyc.len() as i64;
            let shift = match kinds[c] {
                Some(true) => -1,
                _ => 1,
            } + extra_rotation;
            shifts.push(shift);
            for (i, &x) in cyc.iter().enumerate() {
                let j = (i as i64 + shift).rem_euclid(len) as usize;
                side_map.push((x, cyc[j]));
            }
        }
        gluings.push(FaceGluing { region: f.id, minus_face: f.id, plus_face: nf + f.id, shifts, side_map });
    }

    // Edge classes: union the minus edge of each side with its image.
    let mut parent: Vec<usize> = (0..2 * ne).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in &gluings {
        for &(a, b) in &g.side_map {
            let (u, v) = (find(&mut parent, d.edge_of(a)), find(&mut parent, ne + d.edge_of(b)));
            parent[u] = v;
        }
    }
    let mut class_of_root = vec![usize::MAX; 2 * ne];
    let mut classes: Vec<EdgeClass> = Vec::new();
    for e in 0..2 * ne {
        let r = find(&mut parent, e);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(EdgeClass {
                id: classes.len(),
                members: Vec::new(),
                crossing: None,
                angle_sum: Angle::from_integer(0),
                surface: false,
            });
        }
        let k = class_of_root[r];
        edges[e].class = k;
        classes[k].members.push(e);
        classes[k].angle_sum += edges[e].interior_angle;
        classes[k].surface |= edges[e].kind == EdgeKind::Surface;
    }
    for c in &mut classes {
        let x = edges[c.members[0]].crossing;
        c.crossing = c.members.iter().all(|&m| edges[m].crossing == x).then_some(x);
    }
    classes.sort_by_key(|c| (c.crossing.unwrap_or(usize::MAX), c.members[0]));
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
        for &m in &c.members {
            edges[m].class = i;
        }
    }

    ChunkDecomposition {
        chunks,
        faces,
        boundary_faces,
        edges,
        classes,
        gluings,
        unglued,
        parabolic_corners,
        normal_disk_support,
        diagram: d.clone(),
        extra_rotation,
    }
}

/// Check every structural invariant of the decomposition and certify it as
/// angled, with the normal-disk condition supplied by weak primeness and
/// r >= 4.
pub fn verify_angled_structure(cd: &ChunkDecomposition) -> Certificate {
    let d = &cd.diagram;
    let two_pi = Angle::from_integer(2);
    let pi = Angle::from_integer(1);
    let mut hyps = Vec::new();

    let bad_size: Vec<String> = cd
        .classes
        .iter()
        .filter(|c| c.members.len() != if c.surface { 2 } else { 4 })
        .map(|c| format!("class {} has {} members", c.id, c.members.len()))
        .collect();
    hyps.push(Hypothesis::computed(
        if cd.unglued.is_some() { "edge class sizes (4 interior, 2 surface)" } else { "edge classes glued in fours" },
        bad_size.is_empty(),
        if bad_size.is_empty() { String::new() } else { format!("edge class size != 4: {}", bad_size.join("; ")) },
    ));

    let mixed: Vec<usize> = cd.classes.iter().filter(|c| c.crossing.is_none()).map(|c| c.id).collect();
    hyps.push(Hypothesis::computed(
        "each edge class copies a single crossing arc",
        mixed.is_empty(),
        if mixed.is_empty() { String::new() } else { format!("classes {mixed:?} mix crossing arcs") },
    ));

    let bad_sum: Vec<String> = cd
        .classes
        .iter()
        .filter(|c| c.angle_sum != if c.surface { pi } else { two_pi })
        .map(|c| format!("class {} sums to {}pi", c.id, c.angle_sum))
        .collect();
    hyps.push(Hypothesis::computed(
        "edge class angle sums (2pi interior, pi surface)",
        bad_sum.is_empty(),
        bad_sum.join("; "),
    ));

    let angles_ok = cd.edges.iter().all(|e| e.interior_angle > Angle::from_integer(0) && e.interior_angle < pi);
    hyps.push(Hypothesis::computed("interior angles lie strictly between 0 and pi", angles_ok, ""));

    // Each boundary face is a square whose four incident edges have
    // exterior angles summing to 2pi.
    let mut ends = vec![0usize; cd.boundary_faces.len()];
    for e in &cd.edges {
        for &x in &d.edges()[e.diagram_edge].ends {
            ends[cd.boundary_face_of(e.chunk, crossing_of(x))] += 1;
        }
    }
    let squares = ends.iter().all(|&k| k == 4) && cd.boundary_faces.iter().all(|b| b.is_square());
    hyps.push(Hypothesis::computed("boundary faces are squares", squares, ""));
    let vertex_sums = cd
        .boundary_faces
        .iter()
        .all(|b| b.edges.iter().map(|&e| cd.edges[e].exterior_angle()).sum::<Angle>() == two_pi);
    hyps.push(Hypothesis::computed("exterior angles at each boundary face sum to 2pi", vertex_sums, ""));

    // The gluing is a bijection on edge sides, so composing it with its
    // inverse is the identity.
    let mut bijective = true;
    for g in &cd.gluings {
        let mut img: Vec<Dart> = g.side_map.iter().map(|p| p.1).collect();
        let mut dom: Vec<Dart> = g.side_map.iter().map(|p| p.0).collect();
        img.sort_unstable();
        dom.sort_unstable();
        bijective &= img == dom;
    }
    hyps.push(Hypothesis::computed("face gluings are bijective on edge sides", bijective, ""));

    hyps.extend(cd.normal_disk_support.iter().cloned());
    Certificate::new(
        "angled chunk decomposition",
        "with every edge at angle pi/2 the chunk decomposition of the link complement is angled",
        hyps,
        Conclusion::AngledChunkDecomposition,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;

    #[test]
    fn fig8_counts() {
        let doc = load("fig8_s2");
        let cd = build_chunk_decomposition(&doc.diagram, &doc.ambient).unwrap();
        assert_eq!(cd.chunks.len(), 2);
        assert_eq!(cd.classes.len(), 4);
        assert_eq!(cd.boundary_faces.len(), 8);
        assert_eq!(cd.faces.len(), 12);
        assert!(cd.classes.iter().all(|c| c.members.len() == 4));
        let cert = verify_angled_structure(&cd);
        assert!(cert.granted(), "{:?}", cert.refusal());
    }

    #[test]
    fn weave_in_thickened_torus() {
        let doc = load("weave4_t2");
        let cd = build_chunk_decomposition(&doc.diagram, &doc.ambient).unwrap();
        assert!(cd.chunks.iter().all(|c| c.exterior_faces.len() == 1 && c.exterior_faces[0].euler_char == 0));
        assert_eq!(cd.classes.len(), 4);
        assert_eq!(cd.faces.len(), 8);
        assert!(verify_angled_structure(&cd).granted());
        let b = build_bounded_decomposition(&doc.diagram, &doc.ambient, Colour::White).unwrap();
        let surface: Vec<&ChunkFace> = b.faces.iter().filter(|f| f.kind == FaceKind::Surface).collect();
        assert_eq!(surface.len(), 4);
        assert!(surface.iter().all(|f| f.colour == Some(Colour::White)));
        assert!(b.faces.iter().filter(|f| f.kind == FaceKind::Interior).all(|f| f.colour == Some(Colour::Shaded)));
    }

    #[test]
    fn bounded_surface_classes() {
        let doc = load("fig8_s2");
        let b = build_bounded_decomposition(&doc.diagram, &doc.ambient, Colour::Shaded).unwrap();
        assert!(b.classes.iter().all(|c| c.surface && c.members.len() == 2 && c.angle_sum == Angle::from_integer(1)));
        assert!(verify_angled_structure(&b).granted());
        assert!(b.parabolic_corners.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn errors() {
        let doc = load("fig2_t2");
        assert!(matches!(
            build_bounded_decomposition(&doc.diagram, &doc.ambient, Colour::White),
            Err(ChunkError::NotColourable(_))
        ));
        let bad = load("fig8_s2").diagram.with_flipped_crossing(1);
        assert!(build_chunk_decomposition(&bad, &AmbientContext::default()).is_err());
    }

    #[test]
    fn corrupted_gluing_is_caught() {
        let doc = load("fig8_s2");
        let cd = build_chunk_decomposition(&doc.diagram, &doc.ambient).unwrap().regluing(2);
        let cert = verify_angled_structure(&cd);
        assert!(!cert.granted());
        assert!(cert.refusal().unwrap().contains("edge class size != 4"), "{:?}", cert.refusal());
    }

    #[test]
    fn gluing_respects_crossing_arcs() {
        for name in ["fig8_s2", "borromean_s2", "weave4_t2", "fig2_t2", "heegaard11_t2"] {
            let doc = load(name);
            let cd = build_chunk_decomposition(&doc.diagram, &doc.ambient).unwrap();
            assert!(cd.classes.iter().all(|c| c.crossing.is_some()), "{name}");
            assert_eq!(cd.classes.len(), doc.diagram.crossing_count(), "{name}");
        }
    }
}
