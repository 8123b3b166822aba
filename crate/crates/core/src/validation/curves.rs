//! Closed curves on the projection surface that meet the diagram in finitely
//! many points (mid-edge crossings or passages straight through a crossing),
//! and the topology of what they cut off.
//!
//! A curve is a cyclic list of cuts. Between consecutive cuts it runs through
//! one region. Cutting the surface along it, each side is assembled from
//! pieces of regions, uncut crossings and edges (or half-edges); its Euler
//! characteristic is `#crossings - #edges + sum chi(pieces)`, the cut points
//! cancelling against the arcs of the curve.

use crate::diagram::{crossing_of, dart, port_of, Dart, SurfaceDiagram};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cut {
    /// Cross the edge of dart `d`, from the region of `d` into the region of its mate.
    Edge(Dart),
    /// Pass through `crossing` from the corner after port `corner` to the
    /// opposite corner.
    Vertex { crossing: usize, corner: u8 },
    /// Pass through `crossing` from corner `from` to any other corner `to`.
    Corner { crossing: usize, from: u8, to: u8 },
}

impl Cut {
    /// (crossing, entry corner, exit corner) for a pass through a crossing.
    fn through(self) -> Option<(usize, u8, u8)> {
        match self {
            Cut::Edge(_) => None,
            Cut::Vertex { crossing, corner } => Some((crossing, corner % 4, (corner + 2) % 4)),
            Cut::Corner { crossing, from, to } => Some((crossing, from % 4, to % 4)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("consecutive cuts do not share a region")]
    Disconnected,
    #[error("the curve meets the same point twice or crosses itself")]
    NotSimple,
    #[error("several arcs in one non-disk region are not supported")]
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideInfo {
    pub euler_char: i64,
    pub is_disk: bool,
    /// Crossings strictly inside the side.
    pub crossings: Vec<usize>,
    /// Regions lying entirely inside the side.
    pub faces: Vec<usize>,
    /// Regions the curve cuts that have a piece on this side.
    pub cut_faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveAnalysis {
    pub separating: bool,
    pub sides: Vec<SideInfo>,
}

impl CurveAnalysis {
    pub fn disk_sides(&self) -> impl Iterator<Item = &SideInfo> {
        self.sides.iter().filter(|s| s.is_disk)
    }
}

/// Position on a boundary cycle of length L: 2i+1 is the middle of dart i,
/// 2i+2 the corner after it. Positions live in 0..2L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    cycle: usize,
    at: usize,
}

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Uf {
        Uf((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

fn mid(d: &SurfaceDiagram, x: Dart) -> Pos {
    let fs = d.faces();
    Pos { cycle: fs.dart_cycle[x], at: 2 * fs.dart_pos[x] + 1 }
}

fn corner(d: &SurfaceDiagram, x: usize, c: u8) -> Pos {
    let fs = d.faces();
    let arriving = d.mate(dart(x, c));
    let c = fs.dart_cycle[arriving];
    Pos { cycle: c, at: (2 * fs.dart_pos[arriving] + 2) % (2 * fs.cycles[c].len()) }
}

fn enter(d: &SurfaceDiagram, c: Cut) -> Pos {
    match (c, c.through()) {
        (Cut::Edge(x), _) => mid(d, d.mate(x)),
        (_, Some((x, _, to))) => corner(d, x, to),
        _ => unreachable!(),
    }
}

fn leave(d: &SurfaceDiagram, c: Cut) -> Pos {
    match (c, c.through()) {
        (Cut::Edge(x), _) => mid(d, x),
        (_, Some((x, from, _))) => corner(d, x, from),
        _ => unreachable!(),
    }
}

struct Piece {
    face: usize,
    euler: i64,
    /// The whole region, untouched by the curve.
    whole: bool,
    segments: Vec<Seg>,
}

/// Boundary stretch from position `s` to `t` (t > s, possibly wrapping past
/// the cycle length). A closed segment is a whole uncut cycle, so the corner
/// at its start is interior too.
#[derive(Clone, Copy)]
struct Seg {
    cycle: usize,
    s: usize,
    t: usize,
    closed: bool,
}

/// Analyse a curve. Returns one analysis per way of placing arcs inside
/// non-disk regions (an arc with both ends on one boundary cycle can cut off a
/// disk on either side).
pub fn analyse(d: &SurfaceDiagram, cuts: &[Cut]) -> Result<Vec<CurveAnalysis>, CurveError> {
    let fs = d.faces();
    let k = cuts.len();
    // (entry corner, number of ports on the first side) per cut crossing
    let mut cut_crossing: Vec<Option<(u8, u8)>> = vec![None; d.crossing_count()];
    let mut cut_edge = vec![false; d.edges().len()];
    for &c in cuts {
        match c {
            Cut::Edge(x) => {
                let e = d.edge_of(x);
                if cut_edge[e] {
                    return Err(CurveError::NotSimple);
                }
                cut_edge[e] = true;
            }
            _ => {
                let (crossing, from, to) = c.through().unwrap();
                if cut_crossing[crossing].is_some() || from == to {
                    return Err(CurveError::NotSimple);
                }
                cut_crossing[crossing] = Some((from, (to + 4 - from) % 4));
            }
        }
    }
    let surface = match (cuts[0], cuts[0].through()) {
        (Cut::Edge(x), _) => d.surface_of_crossing(crossing_of(x)),
        (_, Some((x, _, _))) => d.surface_of_crossing(x),
        _ => unreachable!(),
    };

    // arcs[i] runs from enter(cuts[i]) to leave(cuts[i+1]) inside one region
    let mut arcs_by_face: Vec<Vec<(Pos, Pos)>> = vec![Vec::new(); fs.len()];
    for i in 0..k {
        let a = enter(d, cuts[i]);
        let b = leave(d, cuts[(i + 1) % k]);
        if fs.cycle_face[a.cycle] != fs.cycle_face[b.cycle] {
            return Err(CurveError::Disconnected);
        }
        arcs_by_face[fs.cycle_face[a.cycle]].push((a, b));
    }

    // Pieces that do not depend on a variant choice, plus the choice points.
    let mut fixed: Vec<Piece> = Vec::new();
    let mut choices: Vec<(usize, Pos, Pos)> = Vec::new();
    for f in fs.faces.iter().filter(|f| f.surface == surface) {
        let arcs = &arcs_by_face[f.id];
        let full = |c: usize| Seg { cycle: c, s: 0, t: 2 * fs.cycles[c].len(), closed: true };
        if arcs.is_empty() {
            fixed.push(Piece {
                face: f.id,
                euler: f.euler_char,
                whole: true,
                segments: f.cycles.iter().map(|&c| full(c)).collect(),
            });
        } else if f.is_disk {
            fixed.extend(split_disk(f.id, 2 * f.degree, f.cycles[0], arcs)?);
        } else if arcs.len() > 1 {
            return Err(CurveError::Unsupported);
        } else {
            let (a, b) = arcs[0];
            if a.cycle == b.cycle {
                if a.at == b.at {
                    return Err(CurveError::NotSimple);
                }
                choices.push((f.id, a, b));
            } else {
                let mut segments = vec![
                    Seg { cycle: a.cycle, s: a.at, t: a.at + 2 * fs.cycles[a.cycle].len(), closed: false },
                    Seg { cycle: b.cycle, s: b.at, t: b.at + 2 * fs.cycles[b.cycle].len(), closed: false },
                ];
                segments.extend(f.cycles.iter().filter(|&&c| c != a.cycle && c != b.cycle).map(|&c| full(c)));
                fixed.push(Piece { face: f.id, euler: f.euler_char + 1, whole: false, segments });
            }
        }
    }

    let mut out = Vec::new();
    for mask in 0..(1usize << choices.len()) {
        let mut pieces: Vec<&Piece> = fixed.iter().collect();
        let mut extra = Vec::new();
        for (j, &(f, a, b)) in choices.iter().enumerate() {
            let face = &fs.faces[f];
            let len = 2 * fs.cycles[a.cycle].len();
            let (s, t) = if mask >> j & 1 == 0 { (a.at, b.at) } else { (b.at, a.at) };
            let t = if t < s { t + len } else { t };
            extra.push(Piece { face: f, euler: 1, whole: false, segments: vec![Seg { cycle: a.cycle, s, t, closed: false }] });
            let mut rest = vec![Seg { cycle: a.cycle, s: t, t: s + len, closed: false }];
            rest.extend(
                face.cycles
                    .iter()
                    .filter(|&&c| c != a.cycle)
                    .map(|&c| Seg { cycle: c, s: 0, t: 2 * fs.cycles[c].len(), closed: true }),
            );
            extra.push(Piece { face: f, euler: face.euler_char, whole: false, segments: rest });
        }
        pieces.extend(extra.iter());
        out.push(assemble(d, surface, &cut_crossing, &cut_edge, &pieces));
    }
    Ok(out)
}

/// Split a disk region of boundary length `len` (in positions) by chords.
fn split_disk(face: usize, len: usize, cycle: usize, arcs: &[(Pos, Pos)]) -> Result<Vec<Piece>, CurveError> {
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for (i, &(a, b)) in arcs.iter().enumerate() {
        ends.push((a.at, i));
        ends.push((b.at, i));
    }
    ends.sort_unstable();
    if ends.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(CurveError::NotSimple);
    }
    for (i, &(a, b)) in arcs.iter().enumerate() {
        let (lo, hi) = (a.at.min(b.at), a.at.max(b.at));
        for (j, &(c, e)) in arcs.iter().enumerate() {
            if i != j && ((lo < c.at && c.at < hi) != (lo < e.at && e.at < hi)) {
                return Err(CurveError::NotSimple);
            }
        }
    }
    let m = ends.len();
    let partner = |k: usize| -> usize {
        let arc = ends[k].1;
        (0..m).find(|&j| j != k && ends[j].1 == arc).unwrap()
    };
    let mut used = vec![false; m];
    let mut pieces = Vec::new();
    for start in 0..m {
        if used[start] {
            continue;
        }
        let mut segments = Vec::new();
        let mut s = start;
        while !used[s] {
            used[s] = true;
            let next = (s + 1) % m;
            let (a, b) = (ends[s].0, ends[next].0);
            segments.push(Seg { cycle, s: a, t: if b <= a { b + len } else { b }, closed: false });
            s = partner(next);
        }
        pieces.push(Piece { face, euler: 1, whole: false, segments });
    }
    Ok(pieces)
}

fn assemble(
    d: &SurfaceDiagram,
    surface: usize,
    cut_crossing: &[Option<(u8, u8)>],
    cut_edge: &[bool],
    pieces: &[&Piece],
) -> CurveAnalysis {
    let fs = d.faces();
    let n = d.crossing_count();
    let nd = d.dart_count();
    let base_dart = 2 * n;
    let base_piece = base_dart + nd;
    let mut uf = Uf::new(base_piece + pieces.len());

    // Port p of a crossing cut from corner a across `span` ports lies in
    // half 0 when it is one of ports a+1 ..= a+span.
    let half = |x: usize, p: u8| -> usize {
        match cut_crossing[x] {
            None => 0,
            Some((a, span)) => usize::from((p + 4 - a - 1) % 4 >= span),
        }
    };
    for x in 0..n {
        if cut_crossing[x].is_none() {
            uf.union(2 * x, 2 * x + 1);
        }
    }
    for x in 0..nd {
        if !cut_edge[d.edge_of(x)] {
            uf.union(base_dart + x, base_dart + d.mate(x));
        }
        let c = crossing_of(x);
        uf.union(base_dart + x, 2 * c + half(c, port_of(x)));
    }
    for (i, piece) in pieces.iter().enumerate() {
        let node = base_piece + i;
        for &Seg { cycle: cyc, s, t, closed } in &piece.segments {
            let darts = &fs.cycles[cyc];
            let len = 2 * darts.len();
            for q in s..t {
                let qm = q % len;
                let di = darts[qm / 2];
                // unit interval [q, q+1]: first or second half of dart qm/2
                let half_dart = if qm.is_multiple_of(2) { di } else { d.mate(di) };
                uf.union(node, base_dart + half_dart);
                if (q > s || closed) && qm.is_multiple_of(2) {
                    // corner at position qm sits after the previous dart
                    let prev = darts[(qm / 2 + darts.len() - 1) % darts.len()];
                    let m = d.mate(prev);
                    let y = crossing_of(m);
                    let c = port_of(m);
                    let h = match cut_crossing[y] {
                        None => 0,
                        Some((a, span)) => usize::from((c + 4 - a) % 4 > span),
                    };
                    uf.union(node, 2 * y + h);
                }
            }
        }
    }

    let mut roots: Vec<usize> = Vec::new();
    let mut sides: Vec<SideInfo> = Vec::new();
    let side_of = |uf: &mut Uf, node: usize, roots: &mut Vec<usize>, sides: &mut Vec<SideInfo>| -> usize {
        let r = uf.find(node);
        match roots.iter().position(|&x| x == r) {
            Some(i) => i,
            None => {
                roots.push(r);
                sides.push(SideInfo { euler_char: 0, is_disk: false, crossings: vec![], faces: vec![], cut_faces: vec![] });
                roots.len() - 1
            }
        }
    };
    for x in d.crossings_on(surface) {
        if cut_crossing[x].is_none() {
            let s = side_of(&mut uf, 2 * x, &mut roots, &mut sides);
            sides[s].euler_char += 1;
            sides[s].crossings.push(x);
        }
    }
    for x in (0..nd).filter(|&x| d.surface_of_crossing(crossing_of(x)) == surface) {
        let e = d.edge_of(x);
        if cut_edge[e] || d.edges()[e].ends[0] == x {
            let s = side_of(&mut uf, base_dart + x, &mut roots, &mut sides);
            sides[s].euler_char -= 1;
        }
    }
    for (i, piece) in pieces.iter().enumerate() {
        let s = side_of(&mut uf, base_piece + i, &mut roots, &mut sides);
        sides[s].euler_char += piece.euler;
        if piece.whole {
            sides[s].faces.push(piece.face);
        } else if !sides[s].cut_faces.contains(&piece.face) {
            sides[s].cut_faces.push(piece.face);
        }
    }
    let separating = sides.len() > 1;
    for s in &mut sides {
        s.is_disk = separating && s.euler_char == 1;
        s.faces.sort_unstable();
        s.cut_faces.sort_unstable();
    }
    CurveAnalysis { separating, sides }
}
