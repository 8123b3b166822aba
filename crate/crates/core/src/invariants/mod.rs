//! Diagram invariants (twist regions, checkerboard surface counts) and the
//! hypothesis-gated geometric certificates built on them.

mod geometry;

pub use geometry::{
    classify_geometry, guts_euler, not_torus_knot, primeness, surface_geometry, volume_lower_bound, DiagramFacts,
    SurfaceGeometry, V8,
};

use crate::diagram::{crossing_of, SurfaceDiagram};
use crate::validation::{checkerboard_colouring, Colour, ColouringError};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistRegion {
    pub crossings: Vec<usize>,
    pub bigons: Vec<usize>,
}

/// A chain of bigons that closes up on itself, using every crossing it meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigonCycle {
    pub crossings: Vec<usize>,
    pub bigons: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistStructure {
    pub twist_regions: Vec<TwistRegion>,
    pub tw: usize,
    /// Per link component: the number of twist regions its strands enter.
    pub tw_per_component: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bigon_cycle: Option<BigonCycle>,
}

impl TwistStructure {
    /// Vertices of the graph obtained by collapsing each twist region to a
    /// point; a closed bigon cycle collapses to a circle with none.
    pub fn collapsed_vertices(&self) -> usize {
        self.twist_regions.iter().filter(|r| r.bigons.len() < r.crossings.len()).count()
    }
}

/// Group crossings joined through bigon regions into maximal chains.
pub fn twist_structure(d: &SurfaceDiagram) -> TwistStructure {
    let fs = d.faces();
    let n = d.crossing_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let bigons: Vec<usize> = (0..fs.len()).filter(|&f| fs.is_bigon(f)).collect();
    for &b in &bigons {
        let xs: Vec<usize> = fs.darts(b).map(crossing_of).collect();
        let (u, v) = (find(&mut parent, xs[0]), find(&mut parent, xs[1]));
        parent[u] = v;
    }
    let mut index = vec![usize::MAX; n];
    let mut regions: Vec<TwistRegion> = Vec::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        if index[r] == usize::MAX {
            index[r] = regions.len();
            regions.push(TwistRegion { crossings: Vec::new(), bigons: Vec::new() });
        }
        regions[index[r]].crossings.push(x);
    }
    for &b in &bigons {
        let x = fs.darts(b).next().map(crossing_of).unwrap();
        let k = index[find(&mut parent, x)];
        regions[k].bigons.push(b);
    }
    let bigon_cycle = regions
        .iter()
        .find(|r| !r.bigons.is_empty() && r.bigons.len() >= r.crossings.len())
        .map(|r| BigonCycle { crossings: r.crossings.clone(), bigons: r.bigons.clone() });
    let region_of: Vec<usize> = (0..n).map(|x| index[find(&mut parent, x)]).collect();
    let tw_per_component = d
        .strands()
        .iter()
        .map(|k| {
            let mut seen: Vec<usize> = k.passages.iter().map(|p| region_of[p.crossing]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        })
        .collect();
    TwistStructure { tw: regions.len(), twist_regions: regions, tw_per_component, bigon_cycle }
}

/// Counts for the two checkerboard surfaces: the shaded surface and the
/// white one, each built from its regions joined by a twisted band at every
/// crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckerboardStats {
    pub chi_shaded: i64,
    pub chi_white: i64,
    /// Non-bigon shaded regions.
    pub r_shaded: usize,
    /// Non-bigon white regions.
    pub r_white: usize,
    /// Intersection number of the two surfaces' boundaries on the cusps.
    pub i_boundary: usize,
    pub crossings: usize,
    pub surface_euler: i64,
    pub tw: usize,
    /// chi_shaded + chi_white == chi(F) - c
    pub sum_identity: bool,
    /// -tw + r_S + r_W == chi(F), counting non-disk regions by Euler
    /// characteristic. `None` when every region is a bigon: collapsing the
    /// twist regions then leaves no cell structure to count.
    pub twist_identity: Option<bool>,
}

pub fn checkerboard_stats(d: &SurfaceDiagram) -> Result<CheckerboardStats, ColouringError> {
    let col = checkerboard_colouring(d)?;
    let fs = d.faces();
    let c = d.crossing_count() as i64;
    let chi_of = |colour: Colour| -> i64 { col.faces_of(colour).map(|f| fs.faces[f].euler_char).sum::<i64>() - c };
    let non_bigon = |colour: Colour| col.faces_of(colour).filter(|&f| !fs.is_bigon(f)).count();
    let weighted: i64 = (0..fs.len()).filter(|&f| !fs.is_bigon(f)).map(|f| fs.faces[f].euler_char).sum();
    let tw = twist_structure(d);
    let (chi_shaded, chi_white) = (chi_of(Colour::Shaded), chi_of(Colour::White));
    let chi_f = d.euler_char();
    Ok(CheckerboardStats {
        chi_shaded,
        chi_white,
        r_shaded: non_bigon(Colour::Shaded),
        r_white: non_bigon(Colour::White),
        i_boundary: 2 * d.crossing_count(),
        crossings: d.crossing_count(),
        surface_euler: chi_f,
        tw: tw.tw,
        sum_identity: chi_shaded + chi_white == chi_f - c,
        twist_identity: (0..fs.len())
            .any(|f| !fs.is_bigon(f))
            .then(|| -(tw.collapsed_vertices() as i64) + weighted == chi_f),
    })
}
