//! Surfaces in chunks, described by where their boundary runs on the chunk
//! boundary, and their combinatorial area.
//!
//! A boundary component is a cyclic list of steps. Each step runs through a
//! face (a region copy or a boundary square) and then exits it: across a chunk
//! edge, across a boundary edge into or out of a square, or (for admissible
//! surfaces) off the chunk boundary along an interior arc that comes back at
//! the next step's face.

use super::{Angle, ChunkDecomposition, FaceKind, MINUS, PLUS};
use crate::diagram::{crossing_of, dart, Dart};
use crate::validation::{analyse, Cut};
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceRef {
    /// The copy of a diagram region in the piece's chunk.
    Region(usize),
    /// The boundary square at a crossing.
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    /// Cross the chunk edge of dart `d`, from the region of `d` into the region of its mate.
    Edge(Dart),
    /// Cross the boundary edge at corner `corner` of the square at `crossing`.
    BoundaryEdge { crossing: usize, corner: u8 },
    /// Leave the chunk boundary along an interior arc.
    IntoChunk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub face: FaceRef,
    pub exit: Exit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    Normal,
    Admissible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfacePiece {
    pub chunk: usize,
    pub kind: PieceKind,
    pub euler_char: i64,
    pub boundaries: Vec<Vec<Step>>,
}

impl SurfacePiece {
    pub fn disk(chunk: usize, steps: Vec<Step>) -> SurfacePiece {
        SurfacePiece { chunk, kind: PieceKind::Normal, euler_char: 1, boundaries: vec![steps] }
    }

    /// Number of interior arcs.
    pub fn sigma(&self) -> usize {
        self.boundaries.iter().flatten().filter(|s| s.exit == Exit::IntoChunk).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", content = "detail", rename_all = "snake_case")]
pub enum PieceError {
    #[error("boundary {boundary}, step {step}: exit does not lead into the next face")]
    Disconnected { boundary: usize, step: usize },
    #[error("chunk {0} does not exist")]
    NoChunk(usize),
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("bad gluing: {0}")]
    BadGluing(String),
}

fn check(cd: &ChunkDecomposition, piece: &SurfacePiece) -> Result<(), PieceError> {
    if piece.chunk > PLUS {
        return Err(PieceError::NoChunk(piece.chunk));
    }
    let d = cd.diagram();
    let fs = d.faces();
    for (bi, b) in piece.boundaries.iter().enumerate() {
        let k = b.len();
        for i in 0..k {
            let (s, t) = (b[i], b[(i + 1) % k]);
            let ok = match (s.face, s.exit, t.face) {
                (FaceRef::Region(r), Exit::Edge(x), FaceRef::Region(r2)) => {
                    fs.dart_face[x] == r && fs.dart_face[d.mate(x)] == r2
                }
                (FaceRef::Region(r), Exit::BoundaryEdge { crossing, corner }, FaceRef::Vertex(y)) => {
                    crossing == y && corner < 4 && d.corner_face(crossing, corner) == r
                }
                (FaceRef::Vertex(x), Exit::BoundaryEdge { crossing, corner }, FaceRef::Region(r)) => {
                    crossing == x && corner < 4 && d.corner_face(crossing, corner) == r
                }
                (FaceRef::Region(_), Exit::IntoChunk, FaceRef::Region(_)) => piece.kind == PieceKind::Admissible,
                _ => false,
            };
            if !ok {
                return Err(PieceError::Disconnected { boundary: bi, step: i });
            }
        }
        if piece.kind == PieceKind::Normal {
            normal_conditions(cd, b)?;
        }
    }
    Ok(())
}

/// The diagram edges meeting the corner (x, c).
fn corner_edges(cd: &ChunkDecomposition, x: usize, c: u8) -> [usize; 2] {
    let d = cd.diagram();
    [d.edge_of(dart(x, c)), d.edge_of(dart(x, (c + 1) % 4))]
}

/// No arc in a face may run from an edge back to the same edge, and no arc in
/// a region may run from a boundary edge to an edge meeting that corner.
fn normal_conditions(cd: &ChunkDecomposition, b: &[Step]) -> Result<(), PieceError> {
    let d = cd.diagram();
    let k = b.len();
    for i in 0..k {
        let (prev, cur) = (b[(i + k - 1) % k], b[i]);
        match (cur.face, prev.exit, cur.exit) {
            (FaceRef::Region(r), Exit::Edge(a), Exit::Edge(c)) if d.edge_of(a) == d.edge_of(c) => {
                return Err(PieceError::NotNormal(format!("arc in region {r} returns to edge {}", d.edge_of(a))));
            }
            (FaceRef::Vertex(x), Exit::BoundaryEdge { corner: a, .. }, Exit::BoundaryEdge { corner: c, .. }) if a == c => {
                return Err(PieceError::NotNormal(format!("arc in the square at crossing {x} returns to its edge")));
            }
            (FaceRef::Region(r), Exit::BoundaryEdge { crossing, corner }, Exit::Edge(c))
            | (FaceRef::Region(r), Exit::Edge(c), Exit::BoundaryEdge { crossing, corner }) => {
                if corner_edges(cd, crossing, corner).contains(&d.edge_of(c)) {
                    return Err(PieceError::NotNormal(format!(
                        "arc in region {r} cuts off the corner at crossing {crossing}"
                    )));
                }
            }
            (FaceRef::Region(r), Exit::BoundaryEdge { crossing: x, corner: a }, Exit::BoundaryEdge { crossing: y, corner: c })
                if x == y && a == c =>
            {
                return Err(PieceError::NotNormal(format!("arc in region {r} returns to the boundary edge it left")));
            }
            _ => {}
        }
    }
    Ok(())
}

fn is_interior_face(cd: &ChunkDecomposition, chunk: usize, f: FaceRef) -> bool {
    match f {
        FaceRef::Region(r) => cd.faces[cd.face_of(chunk, r)].kind == FaceKind::Interior,
        FaceRef::Vertex(_) => false,
    }
}

/// Sum of exterior angles along the boundary, in multiples of pi.
fn exterior_sum(cd: &ChunkDecomposition, piece: &SurfacePiece) -> Angle {
    let d = cd.diagram();
    let half = super::half_pi();
    let mut total = Angle::from_integer(0);
    for b in &piece.boundaries {
        let k = b.len();
        for i in 0..k {
            total += match b[i].exit {
                Exit::Edge(x) => cd.edges[cd.edge_of(piece.chunk, d.edge_of(x))].exterior_angle(),
                Exit::BoundaryEdge { .. } => half,
                Exit::IntoChunk => {
                    let ends = [b[i].face, b[(i + 1) % k].face];
                    half * ends.iter().filter(|&&f| is_interior_face(cd, piece.chunk, f)).count() as i64
                }
            };
        }
    }
    total
}

/// Combinatorial area in multiples of pi: the exterior angle sum, minus
/// 2 pi chi, plus 2 pi per interior arc.
pub fn combinatorial_area(cd: &ChunkDecomposition, piece: &SurfacePiece) -> Result<Angle, PieceError> {
    check(cd, piece)?;
    Ok(exterior_sum(cd, piece) - Angle::from_integer(2 * piece.euler_char) + Angle::from_integer(2 * piece.sigma() as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArcRef {
    pub piece: usize,
    pub boundary: usize,
    pub step: usize,
}

/// Two arcs of piece boundaries identified across a glued face. Unless
/// `reversed`, start goes to start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArcGluing {
    pub a: ArcRef,
    pub b: ArcRef,
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussBonnet {
    pub euler_char: i64,
    pub sigma: usize,
    pub parabolic_points: usize,
    /// Multiples of pi.
    #[serde(serialize_with = "super::ser_angle")]
    pub total_area: Angle,
    #[serde(serialize_with = "super::ser_angle")]
    pub expected: Angle,
    pub holds: bool,
    pub piece_areas: Vec<String>,
}

/// -2 pi chi + (pi/2) p + 2 pi sigma, in multiples of pi.
pub fn required_area(euler_char: i64, parabolic_points: usize, sigma: usize) -> Angle {
    Angle::from_integer(-2 * euler_char) + super::half_pi() * parabolic_points as i64 + Angle::from_integer(2 * sigma as i64)
}

/// Assemble pieces along the given arc gluings and compare the total area
/// with what Gauss-Bonnet asks of the assembled surface.
pub fn gauss_bonnet_check(
    cd: &ChunkDecomposition,
    pieces: &[SurfacePiece],
    gluings: &[ArcGluing],
    parabolic_points: usize,
) -> Result<GaussBonnet, PieceError> {
    let mut areas = Vec::with_capacity(pieces.len());
    for p in pieces {
        areas.push(combinatorial_area(cd, p)?);
    }
    // Vertex (piece, boundary, k) is where step k exits; arc k runs from
    // vertex k-1 to vertex k.
    let mut base = Vec::new();
    let mut nv = 0;
    for p in pieces {
        let mut row = Vec::new();
        for b in &p.boundaries {
            row.push(nv);
            nv += b.len();
        }
        base.push(row);
    }
    let step_of = |r: ArcRef| -> Result<Step, PieceError> {
        pieces
            .get(r.piece)
            .and_then(|p| p.boundaries.get(r.boundary))
            .and_then(|b| b.get(r.step))
            .copied()
            .ok_or_else(|| PieceError::BadGluing(format!("no arc {r:?}")))
    };
    let ends = |r: ArcRef| -> (usize, usize) {
        let len = pieces[r.piece].boundaries[r.boundary].len();
        let b0 = base[r.piece][r.boundary];
        (b0 + (r.step + len - 1) % len, b0 + r.step)
    };
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut used = HashSet::new();
    for g in gluings {
        let (sa, sb) = (step_of(g.a)?, step_of(g.b)?);
        let (ca, cb) = (pieces[g.a.piece].chunk, pieces[g.b.piece].chunk);
        let same_region = match (sa.face, sb.face) {
            (FaceRef::Region(x), FaceRef::Region(y)) => x == y,
            _ => false,
        };
        if ca == cb || !same_region || !is_interior_face(cd, ca, sa.face) {
            return Err(PieceError::BadGluing(format!("{:?} and {:?} are not in glued faces", g.a, g.b)));
        }
        if !used.insert(g.a) || !used.insert(g.b) {
            return Err(PieceError::BadGluing("an arc is glued twice".into()));
        }
        let (a0, a1) = ends(g.a);
        let (b0, b1) = ends(g.b);
        let pairs = if g.reversed { [(a0, b1), (a1, b0)] } else { [(a0, b0), (a1, b1)] };
        for (u, v) in pairs {
            let (u, v) = (find(&mut parent, u), find(&mut parent, v));
            parent[u] = v;
        }
    }
    let classes = (0..nv).filter(|&v| find(&mut parent, v) == v).count();
    let euler_char =
        pieces.iter().map(|p| p.euler_char).sum::<i64>() + gluings.len() as i64 + classes as i64 - nv as i64;
    let sigma = pieces.iter().map(SurfacePiece::sigma).sum();
    let total_area: Angle = areas.iter().sum();
    let expected = required_area(euler_char, parabolic_points, sigma);
    Ok(GaussBonnet {
        euler_char,
        sigma,
        parabolic_points,
        total_area,
        expected,
        holds: total_area == expected,
        piece_areas: areas.iter().map(|a| format!("{a}pi")).collect(),
    })
}

/// The normal squares cutting off each ideal vertex of each chunk, glued
/// across the faces: together they make the boundary tori of the link
/// complement.
pub fn vertex_linking_squares(cd: &ChunkDecomposition) -> (Vec<SurfacePiece>, Vec<ArcGluing>) {
    let d = cd.diagram();
    let n = d.crossing_count();
    let mut pieces = Vec::with_capacity(2 * n);
    for s in [MINUS, PLUS] {
        for x in 0..n {
            let steps = (0..4u8)
                .map(|c| Step { face: FaceRef::Region(d.corner_face(x, c)), exit: Exit::Edge(dart(x, (c + 1) % 4)) })
                .collect();
            pieces.push(SurfacePiece::disk(s, steps));
        }
    }
    // The arc at corner (x, c) on the minus side sits between the edge sides
    // mate(dart(x, c)) and dart(x, c+1); the gluing carries it to the arc
    // between their images.
    let mut gluings = Vec::new();
    for x in 0..n {
        for c in 0..4u8 {
            let arriving = d.mate(dart(x, c));
            let Some(img) = cd.glue(arriving) else { continue };
            let y = crossing_of(d.mate(img));
            let cy = crate::diagram::port_of(d.mate(img));
            gluings.push(ArcGluing {
                a: ArcRef { piece: x, boundary: 0, step: c as usize },
                b: ArcRef { piece: n + y, boundary: 0, step: cy as usize },
                reversed: false,
            });
        }
    }
    (pieces, gluings)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum NormalSquareForm {
    /// One boundary face, crossed between opposite boundary edges, plus two
    /// chunk edges.
    Form1 { crossing: usize },
    /// Two boundary faces, each crossed between adjacent boundary edges: the
    /// square encircles one edge and runs through faces of opposite colours.
    Form2 { crossings: [usize; 2], edge: usize },
    /// Two boundary faces, each crossed between opposite boundary edges; the
    /// square runs through faces of the same colour.
    Form3 { crossings: [usize; 2] },
}

/// Which of the three shapes a zero-area normal disk meeting a boundary face
/// takes.
pub fn classify_zero_area_square(cd: &ChunkDecomposition, piece: &SurfacePiece) -> Result<NormalSquareForm, PieceError> {
    let area = combinatorial_area(cd, piece)?;
    if piece.kind != PieceKind::Normal || piece.euler_char != 1 || piece.boundaries.len() != 1 {
        return Err(PieceError::NotApplicable("not a normal disk".into()));
    }
    if area != Angle::from_integer(0) {
        return Err(PieceError::NotApplicable(format!("area is {area}pi, not 0")));
    }
    let b = &piece.boundaries[0];
    let k = b.len();
    // (crossing, entry corner, exit corner) of each pass through a square
    let mut passes = Vec::new();
    for i in 0..k {
        if let (FaceRef::Vertex(x), Exit::BoundaryEdge { corner: a, .. }, Exit::BoundaryEdge { corner: c, .. }) =
            (b[i].face, b[(i + k - 1) % k].exit, b[i].exit)
        {
            passes.push((x, a, c, i));
        }
    }
    let opposite = |a: u8, c: u8| (a + 2) % 4 == c;
    let colours = crate::validation::checkerboard_colouring(cd.diagram()).ok();
    let region_after = |i: usize| match b[(i + 1) % k].face {
        FaceRef::Region(r) => r,
        FaceRef::Vertex(_) => unreachable!("a square is followed by a region"),
    };
    match passes.as_slice() {
        [] => Err(PieceError::NotApplicable("the disk meets no boundary face".into())),
        [(x, a, c, _)] if opposite(*a, *c) => Ok(NormalSquareForm::Form1 { crossing: *x }),
        [(x, a, c, i), (y, a2, c2, j)] => {
            let (r1, r2) = (region_after(*i), region_after(*j));
            let same = colours.as_ref().map(|col| col.of(r1) == col.of(r2));
            if opposite(*a, *c) && opposite(*a2, *c2) {
                if same == Some(false) {
                    return Err(PieceError::NotNormal("form 3 square through faces of opposite colours".into()));
                }
                Ok(NormalSquareForm::Form3 { crossings: [*x, *y] })
            } else if !opposite(*a, *c) && !opposite(*a2, *c2) {
                if same == Some(true) {
                    return Err(PieceError::NotNormal("form 2 square through faces of the same colour".into()));
                }
                // The encircled edge joins the two crossings and meets both corners passed.
                let d = cd.diagram();
                let near_x: Vec<usize> = corner_edges(cd, *x, *a).into_iter().filter(|e| corner_edges(cd, *x, *c).contains(e)).collect();
                let edge = near_x
                    .into_iter()
                    .find(|&e| d.edges()[e].ends.iter().any(|&z| crossing_of(z) == *y))
                    .ok_or_else(|| PieceError::NotApplicable("no edge joins the two squares".into()))?;
                Ok(NormalSquareForm::Form2 { crossings: [*x, *y], edge })
            } else {
                Err(PieceError::NotApplicable("mixed passes through the two boundary faces".into()))
            }
        }
        _ => Err(PieceError::NotApplicable(format!("{} passes through boundary faces", passes.len()))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Tok {
    E(Dart),
    /// Through the square at crossing x, from corner a to corner c.
    V(usize, u8, u8),
}

impl Tok {
    fn cost(self) -> usize {
        match self {
            Tok::E(_) => 1,
            Tok::V(..) => 2,
        }
    }
}

fn canonical(d: &crate::diagram::SurfaceDiagram, toks: &[Tok]) -> Vec<Tok> {
    let rev: Vec<Tok> = toks
        .iter()
        .rev()
        .map(|&t| match t {
            Tok::E(x) => Tok::E(d.mate(x)),
            Tok::V(x, a, c) => Tok::V(x, c, a),
        })
        .collect();
    let mut best: Option<Vec<Tok>> = None;
    for seq in [toks, &rev[..]] {
        for i in 0..seq.len() {
            let r: Vec<Tok> = seq[i..].iter().chain(&seq[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// Every normal disk in the given chunk whose boundary crosses at most
/// `max_crossings` edges (a pass through a boundary square crosses two) and
/// is inessential on the projection surface. Each disk is listed once.
pub fn enumerate_normal_disks(cd: &ChunkDecomposition, chunk: usize, max_crossings: usize) -> Vec<SurfacePiece> {
    let d = cd.diagram();
    let fs = d.faces();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    // moves out of each region: (token, region entered)
    let mut moves: Vec<Vec<(Tok, usize)>> = vec![Vec::new(); fs.len()];
    for x in 0..d.dart_count() {
        moves[fs.dart_face[x]].push((Tok::E(x), fs.dart_face[d.mate(x)]));
    }
    for x in 0..d.crossing_count() {
        for a in 0..4u8 {
            for c in (0..4u8).filter(|&c| c != a) {
                moves[d.corner_face(x, a)].push((Tok::V(x, a, c), d.corner_face(x, c)));
            }
        }
    }
    let mut path = Vec::new();
    for start in 0..fs.len() {
        dfs(cd, &moves, start, start, max_crossings, &mut path, &mut seen, &mut out, chunk);
    }
    out
}

/// Normality of the arc between consecutive tokens.
fn arc_ok(cd: &ChunkDecomposition, a: Tok, b: Tok) -> bool {
    let d = cd.diagram();
    match (a, b) {
        (Tok::E(x), Tok::E(y)) => d.edge_of(x) != d.edge_of(y),
        (Tok::V(x, _, c), Tok::E(y)) => !corner_edges(cd, x, c).contains(&d.edge_of(y)),
        (Tok::E(y), Tok::V(x, a, _)) => !corner_edges(cd, x, a).contains(&d.edge_of(y)),
        (Tok::V(x, _, c), Tok::V(y, a, _)) => !(x == y && a == c),
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    cd: &ChunkDecomposition,
    moves: &[Vec<(Tok, usize)>],
    start: usize,
    at: usize,
    budget: usize,
    path: &mut Vec<Tok>,
    seen: &mut HashSet<Vec<Tok>>,
    out: &mut Vec<SurfacePiece>,
    chunk: usize,
) {
    for &(t, next) in &moves[at] {
        if t.cost() > budget || path.last().is_some_and(|&p| !arc_ok(cd, p, t)) {
            continue;
        }
        path.push(t);
        if next == start && arc_ok(cd, t, path[0]) {
            consider(cd, path, start, seen, out, chunk);
        }
        dfs(cd, moves, start, next, budget - t.cost(), path, seen, out, chunk);
        path.pop();
    }
}

fn consider(
    cd: &ChunkDecomposition,
    toks: &[Tok],
    start: usize,
    seen: &mut HashSet<Vec<Tok>>,
    out: &mut Vec<SurfacePiece>,
    chunk: usize,
) {
    let d = cd.diagram();
    let key = canonical(d, toks);
    if !seen.insert(key) {
        return;
    }
    let cuts: Vec<Cut> = toks
        .iter()
        .map(|&t| match t {
            Tok::E(x) => Cut::Edge(x),
            Tok::V(x, a, c) => Cut::Corner { crossing: x, from: a, to: c },
        })
        .collect();
    let Ok(variants) = analyse(d, &cuts) else { return };
    if !variants.iter().any(|an| an.separating && an.disk_sides().next().is_some()) {
        return;
    }
    let fs = d.faces();
    let mut steps = Vec::new();
    let mut r = start;
    for &t in toks {
        match t {
            Tok::E(x) => {
                steps.push(Step { face: FaceRef::Region(r), exit: Exit::Edge(x) });
                r = fs.dart_face[d.mate(x)];
            }
            Tok::V(x, a, c) => {
                steps.push(Step { face: FaceRef::Region(r), exit: Exit::BoundaryEdge { crossing: x, corner: a } });
                steps.push(Step { face: FaceRef::Vertex(x), exit: Exit::BoundaryEdge { crossing: x, corner: c } });
                r = d.corner_face(x, c);
            }
        }
    }
    out.push(SurfacePiece::disk(chunk, steps));
}
