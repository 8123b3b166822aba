//! How the projection surface sits in the ambient 3-manifold, and the
//! representativity numbers r, r-hat and e.

use crate::diagram::SurfaceDiagram;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// A count that may be infinite; infinity sorts above every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepValue {
    Finite(u32),
    Infinite,
}

impl RepValue {
    pub fn at_least(self, k: u32) -> bool {
        self >= RepValue::Finite(k)
    }

    pub fn greater_than(self, k: u32) -> bool {
        self > RepValue::Finite(k)
    }
}

impl fmt::Display for RepValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepValue::Finite(v) => write!(f, "{v}"),
            RepValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for RepValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RepValue::Finite(v) => s.serialize_u32(*v),
            RepValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RepValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(RepValue::Finite(v)),
            Raw::Text(t) if t == "inf" => Ok(RepValue::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected an integer or \"inf\", got {t:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmbientKind {
    /// Y = F x I, with F at the middle level.
    ThickenedSurface,
    /// F is a Heegaard torus in the 3-sphere.
    HeegaardTorusS3,
    #[default]
    Declared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoroidal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_anannular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary_incompressible: Option<bool>,
    /// Y is the 3-sphere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_s3: Option<bool>,
}

impl AmbientFlags {
    fn is_empty(&self) -> bool {
        *self == AmbientFlags::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryComponent {
    pub euler_char: i64,
    /// Which side of F the component faces.
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredRep {
    /// Surface id; absent means every surface component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<i64>,
    pub minus: RepValue,
    pub plus: RepValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompressingSlopes {
    pub minus: [i64; 2],
    pub plus: [i64; 2],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientContext {
    #[serde(default)]
    pub kind: AmbientKind,
    #[serde(default, skip_serializing_if = "AmbientFlags::is_empty")]
    pub flags: AmbientFlags,
    #[serde(default, rename = "boundary_of_Y", skip_serializing_if = "Vec::is_empty")]
    pub boundary_of_y: Vec<BoundaryComponent>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub declared_representativity: Vec<DeclaredRep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compressing_slopes: Option<CompressingSlopes>,
    /// For a torus in the 3-sphere: is it a Heegaard torus?
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heegaard: Option<bool>,
    /// For a Heegaard torus with an annular region: is the region's core knotted?
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annulus_core_knotted: Option<bool>,
}

impl AmbientContext {
    pub fn thickened() -> Self {
        AmbientContext { kind: AmbientKind::ThickenedSurface, ..Default::default() }
    }

    pub fn heegaard_torus(minus: [i64; 2], plus: [i64; 2]) -> Self {
        AmbientContext {
            kind: AmbientKind::HeegaardTorusS3,
            compressing_slopes: Some(CompressingSlopes { minus, plus }),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Declared,
}

/// A yes/no fact about the ambient manifold, with where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub value: Option<bool>,
    pub provenance: Provenance,
}

impl Fact {
    fn computed(v: bool) -> Fact {
        Fact { value: Some(v), provenance: Provenance::Computed }
    }
    fn declared(v: Option<bool>) -> Fact {
        Fact { value: v, provenance: Provenance::Declared }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientFact {
    Atoroidal,
    BoundaryAnannular,
    BoundaryIncompressible,
    InS3,
    Closed,
    Heegaard,
}

impl AmbientContext {
    /// Resolve a fact: structural kinds and sphere diagrams determine it, declared
    /// contexts echo their flags.
    pub fn fact(&self, d: &SurfaceDiagram, which: AmbientFact) -> Fact {
        let sphere = d.surfaces().len() == 1 && d.surfaces()[0].genus == 0;
        match self.kind {
            AmbientKind::ThickenedSurface => Fact::computed(match which {
                AmbientFact::Atoroidal | AmbientFact::BoundaryAnannular | AmbientFact::BoundaryIncompressible => true,
                AmbientFact::InS3 | AmbientFact::Closed | AmbientFact::Heegaard => false,
            }),
            AmbientKind::HeegaardTorusS3 => Fact::computed(true),
            AmbientKind::Declared if sphere => Fact::computed(match which {
                AmbientFact::Heegaard => false,
                _ => true,
            }),
            AmbientKind::Declared => match which {
                AmbientFact::Atoroidal => Fact::declared(self.flags.atoroidal),
                AmbientFact::BoundaryAnannular => Fact::declared(self.flags.boundary_anannular),
                AmbientFact::BoundaryIncompressible => {
                    if self.boundary_of_y.is_empty() {
                        Fact::declared(Some(true))
                    } else {
                        Fact::declared(self.flags.boundary_incompressible)
                    }
                }
                AmbientFact::InS3 => Fact::declared(self.flags.in_s3),
                AmbientFact::Closed => Fact::declared(Some(self.boundary_of_y.is_empty())),
                AmbientFact::Heegaard => Fact::declared(self.heegaard),
            },
        }
    }

    /// Euler characteristic of the boundary of Y.
    pub fn boundary_euler(&self, d: &SurfaceDiagram) -> i64 {
        match self.kind {
            AmbientKind::ThickenedSurface => 2 * d.euler_char(),
            AmbientKind::HeegaardTorusS3 => 0,
            AmbientKind::Declared => self.boundary_of_y.iter().map(|b| b.euler_char).sum(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("a Heegaard torus context needs a single genus 1 surface, found {0}")]
    NotHeegaardTorus(String),
    #[error("slope search needs a single torus component")]
    NotTorus,
    #[error("slope ({0},{1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("slope (0,0) is not a curve class")]
    ZeroSlope,
    #[error("surface {0}: no declared representativity and it cannot be computed in this context")]
    Undeclared(i64),
    #[error("slope ({0},{1}) crosses a non-disk region; only the region's core slope is supported there")]
    NonDiskRegion(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideRep {
    pub surface: usize,
    pub minus: RepValue,
    pub plus: RepValue,
    pub method: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRep {
    pub value: RepValue,
    /// The value is only a lower bound.
    pub bound_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_face: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_slope: Option<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub per_component: Vec<SideRep>,
    pub r: RepValue,
    pub r_hat: RepValue,
    pub e: EdgeRep,
    pub method: Provenance,
}

/// Minimum over essential curves of the given slope of the number of points
/// where the curve meets the diagram.
pub fn min_slope_intersection(d: &SurfaceDiagram, slope: [i64; 2]) -> Result<u32, RepError> {
    check_torus(d)?;
    check_slope(slope)?;
    if let Some(v) = non_disk_slope(d, slope)? {
        return Ok(v);
    }
    Ok(CoverSearch::new(d).min_for(slope))
}

fn check_torus(d: &SurfaceDiagram) -> Result<(), RepError> {
    if d.surfaces().len() != 1 || d.surfaces()[0].genus != 1 {
        return Err(RepError::NotTorus);
    }
    Ok(())
}

fn check_slope(s: [i64; 2]) -> Result<(), RepError> {
    if s == [0, 0] {
        return Err(RepError::ZeroSlope);
    }
    if crate::diagram::gcd(s[0], s[1]) != 1 {
        return Err(RepError::NotPrimitive(s[0], s[1]));
    }
    Ok(())
}

/// Handles tori with non-disk regions: an annular region realises its core
/// slope with no intersections, a region of positive genus realises every slope.
fn non_disk_slope(d: &SurfaceDiagram, slope: [i64; 2]) -> Result<Option<u32>, RepError> {
    let fs = d.faces();
    let mut any = false;
    for f in fs.faces.iter().filter(|f| !f.is_disk) {
        any = true;
        if f.genus > 0 || f.cycles.is_empty() {
            return Ok(Some(0));
        }
        for &c in &f.cycles {
            let core = cycle_class(d, c);
            if core == slope || core == [-slope[0], -slope[1]] {
                return Ok(Some(0));
            }
        }
    }
    if any {
        return Err(RepError::NonDiskRegion(slope[0], slope[1]));
    }
    Ok(None)
}

fn cycle_class(d: &SurfaceDiagram, c: usize) -> [i64; 2] {
    let mut sum = [0i64; 2];
    for &x in &d.faces().cycles[c] {
        let s = d.dart_shift(x);
        sum[0] += s[0];
        sum[1] += s[1];
    }
    sum
}

/// Breadth-first search in the Z^2 cover of the dual graph of a torus diagram
/// whose regions are all disks.
pub struct CoverSearch {
    bound: i64,
    /// dist[start_face][face][translation index]
    dist: Vec<Vec<Vec<u32>>>,
}

impl CoverSearch {
    pub fn new(d: &SurfaceDiagram) -> CoverSearch {
        let fs = d.faces();
        let off = d.dart_offsets();
        let nd = d.dart_count();
        let trans: Vec<[i64; 2]> = (0..nd)
            .map(|x| {
                let m = d.mate(x);
                let s = d.dart_shift(x);
                [off[x][0] + s[0] - off[m][0], off[x][1] + s[1] - off[m][1]]
            })
            .collect();
        let step = trans.iter().map(|t| t[0].abs().max(t[1].abs())).max().unwrap_or(1).max(1);
        let bound = (d.edges().len() as i64) * step;
        let w = (2 * bound + 1) as usize;
        let idx = |t: [i64; 2]| ((t[0] + bound) as usize) * w + (t[1] + bound) as usize;
        let nf = fs.len();
        let mut dist = Vec::with_capacity(nf);
        for f0 in 0..nf {
            let mut table = vec![vec![u32::MAX; w * w]; nf];
            let mut q = VecDeque::new();
            table[f0][idx([0, 0])] = 0;
            q.push_back((f0, [0i64, 0i64]));
            while let Some((f, t)) = q.pop_front() {
                let dcur = table[f][idx(t)];
                for x in fs.darts(f) {
                    let g = fs.dart_face[d.mate(x)];
                    let u = [t[0] + trans[x][0], t[1] + trans[x][1]];
                    if u[0].abs() > bound || u[1].abs() > bound {
                        continue;
                    }
                    let k = idx(u);
                    if table[g][k] == u32::MAX {
                        table[g][k] = dcur + 1;
                        q.push_back((g, u));
                    }
                }
            }
            dist.push(table);
        }
        CoverSearch { bound, dist }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    fn at(&self, f0: usize, t: [i64; 2]) -> u32 {
        let w = (2 * self.bound + 1) as usize;
        if t[0].abs() > self.bound || t[1].abs() > self.bound {
            return u32::MAX;
        }
        self.dist[f0][f0][((t[0] + self.bound) as usize) * w + (t[1] + self.bound) as usize]
    }

    /// Minimal weight of a closed dual walk in homology class `slope`.
    pub fn min_for(&self, slope: [i64; 2]) -> u32 {
        (0..self.dist.len()).map(|f0| self.at(f0, slope)).min().unwrap_or(u32::MAX)
    }

    /// Minimum over all primitive classes, with the minimising slope.
    pub fn min_primitive(&self) -> Option<(u32, [i64; 2])> {
        let b = self.bound;
        let mut best: Option<(u32, [i64; 2])> = None;
        for a in -b..=b {
            for c in -b..=b {
                if crate::diagram::gcd(a, c) != 1 {
                    continue;
                }
                let v = self.min_for([a, c]);
                if v != u32::MAX && best.is_none_or(|(w, _)| v < w) {
                    best = Some((v, [a, c]));
                }
            }
        }
        best
    }
}

fn surface_has_crossings(d: &SurfaceDiagram, s: usize) -> bool {
    d.crossings_on(s).next().is_some()
}

pub fn edge_representativity(d: &SurfaceDiagram, _ctx: &AmbientContext) -> EdgeRep {
    let mut best = EdgeRep { value: RepValue::Infinite, bound_only: false, witness_face: None, witness_slope: None };
    let fs = d.faces();
    for (s, surf) in d.surfaces().iter().enumerate() {
        let rep = match surf.genus {
            0 => continue,
            1 => torus_edge_rep(d, s),
            _ => {
                let handle = fs.faces.iter().find(|f| f.surface == s && (f.genus > 0 || f.cycles.is_empty()));
                match handle {
                    Some(f) => EdgeRep {
                        value: RepValue::Finite(0),
                        bound_only: false,
                        witness_face: Some(f.id),
                        witness_slope: None,
                    },
                    None => {
                        let annulus = fs.faces.iter().any(|f| f.surface == s && !f.is_disk);
                        EdgeRep {
                            value: RepValue::Finite(if annulus { 0 } else { 1 }),
                            bound_only: true,
                            witness_face: None,
                            witness_slope: None,
                        }
                    }
                }
            }
        };
        if rep.value < best.value || (rep.value == best.value && rep.bound_only) {
            best = rep;
        }
    }
    best
}

fn torus_edge_rep(d: &SurfaceDiagram, s: usize) -> EdgeRep {
    let fs = d.faces();
    for f in fs.faces.iter().filter(|f| f.surface == s && !f.is_disk) {
        let witness = if f.genus > 0 || f.cycles.is_empty() {
            Some(None)
        } else {
            f.cycles.iter().map(|&c| cycle_class(d, c)).find(|v| *v != [0, 0]).map(Some)
        };
        if let Some(slope) = witness {
            return EdgeRep { value: RepValue::Finite(0), bound_only: false, witness_face: Some(f.id), witness_slope: slope };
        }
    }
    if !surface_has_crossings(d, s) {
        return EdgeRep { value: RepValue::Finite(0), bound_only: false, witness_face: None, witness_slope: None };
    }
    if fs.faces.iter().any(|f| f.surface == s && !f.is_disk) || d.surfaces().len() != 1 {
        // Inessential annular regions or several components: only the trivial bound.
        return EdgeRep { value: RepValue::Finite(0), bound_only: true, witness_face: None, witness_slope: None };
    }
    let search = CoverSearch::new(d);
    match search.min_primitive() {
        Some((v, slope)) => EdgeRep { value: RepValue::Finite(v), bound_only: false, witness_face: None, witness_slope: Some(slope) },
        None => EdgeRep { value: RepValue::Finite(0), bound_only: true, witness_face: None, witness_slope: None },
    }
}

pub fn representativity(d: &SurfaceDiagram, ctx: &AmbientContext) -> Result<RepReport, RepError> {
    let mut per = Vec::new();
    match ctx.kind {
        AmbientKind::ThickenedSurface => {
            for s in 0..d.surfaces().len() {
                per.push(SideRep {
                    surface: s,
                    minus: RepValue::Infinite,
                    plus: RepValue::Infinite,
                    method: Provenance::Computed,
                    note: None,
                });
            }
        }
        AmbientKind::HeegaardTorusS3 => {
            if d.surfaces().len() != 1 || d.surfaces()[0].genus != 1 {
                let desc = d.surfaces().iter().map(|s| format!("genus {}", s.genus)).collect::<Vec<_>>().join(", ");
                return Err(RepError::NotHeegaardTorus(desc));
            }
            let (slopes, note) = match ctx.compressing_slopes {
                Some(c) => (c, None),
                None => (
                    CompressingSlopes { minus: [1, 0], plus: [0, 1] },
                    Some("compressing slopes not given; using (1,0) below and (0,1) above".to_string()),
                ),
            };
            per.push(SideRep {
                surface: 0,
                minus: RepValue::Finite(min_slope_intersection(d, slopes.minus)?),
                plus: RepValue::Finite(min_slope_intersection(d, slopes.plus)?),
                method: Provenance::Computed,
                note,
            });
        }
        AmbientKind::Declared => {
            for (s, surf) in d.surfaces().iter().enumerate() {
                if surf.genus == 0 {
                    per.push(SideRep {
                        surface: s,
                        minus: RepValue::Infinite,
                        plus: RepValue::Infinite,
                        method: Provenance::Computed,
                        note: Some("a sphere has no essential curves".into()),
                    });
                    continue;
                }
                let declared = ctx
                    .declared_representativity
                    .iter()
                    .find(|r| r.surface == Some(surf.id))
                    .or_else(|| ctx.declared_representativity.iter().find(|r| r.surface.is_none()));
                if let Some(r) = declared {
                    per.push(SideRep { surface: s, minus: r.minus, plus: r.plus, method: Provenance::Declared, note: r.note.clone() });
                } else if let (1, Some(c), 1) = (surf.genus, ctx.compressing_slopes, d.surfaces().len()) {
                    per.push(SideRep {
                        surface: s,
                        minus: RepValue::Finite(min_slope_intersection(d, c.minus)?),
                        plus: RepValue::Finite(min_slope_intersection(d, c.plus)?),
                        method: Provenance::Computed,
                        note: None,
                    });
                } else {
                    return Err(RepError::Undeclared(surf.id));
                }
            }
        }
    }
    let r = per.iter().map(|p| p.minus.min(p.plus)).min().unwrap_or(RepValue::Infinite);
    let r_hat = per.iter().map(|p| p.minus.max(p.plus)).min().unwrap_or(RepValue::Infinite);
    let method = if per.iter().all(|p| p.method == Provenance::Computed) { Provenance::Computed } else { Provenance::Declared };
    Ok(RepReport { per_component: per, r, r_hat, e: edge_representativity(d, ctx), method })
}
