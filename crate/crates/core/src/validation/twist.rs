//! Weak twist reduction. A curve through two crossings meets the diagram in
//! four points; every disk it cuts off must hold a string of bigons running
//! between the two crossings, or the rest of the surface must hold such a
//! disk at the same two crossings.

use super::curves::{analyse, Cut, SideInfo};
use crate::diagram::SurfaceDiagram;
use serde::Serialize;

/// A disk at two crossings with no bigon string on either side: a flype
/// would bring the crossings together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlypeWitness {
    pub crossings: [usize; 2],
    pub cuts: [Cut; 2],
    pub disk: SideInfo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReducedReport {
    pub twist_reduced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FlypeWitness>,
    pub disks_checked: usize,
}

/// A side holding only bigons, chained from `x` to `y`.
fn bigon_string(d: &SurfaceDiagram, side: &SideInfo, x: usize, y: usize) -> bool {
    let fs = d.faces();
    if !side.is_disk || side.faces.is_empty() || side.faces.len() != side.crossings.len() + 1 {
        return false;
    }
    if !side.faces.iter().all(|&f| fs.is_bigon(f)) {
        return false;
    }
    let touches = |c: usize| side.faces.iter().any(|&f| fs.darts(f).any(|x| crate::diagram::crossing_of(x) == c));
    touches(x) && touches(y)
}

pub fn is_weakly_twist_reduced(d: &SurfaceDiagram) -> TwistReducedReport {
    let n = d.crossing_count();
    let mut checked = 0;
    for x in 0..n {
        for y in x + 1..n {
            if d.surface_of_crossing(x) != d.surface_of_crossing(y) {
                continue;
            }
            let mut good: Vec<SideInfo> = Vec::new();
            let mut bad: Vec<([Cut; 2], SideInfo)> = Vec::new();
            for a in 0..2u8 {
                for b in 0..4u8 {
                    if d.corner_face(x, a) != d.corner_face(y, b) || d.corner_face(x, a + 2) != d.corner_face(y, (b + 2) % 4) {
                        continue;
                    }
                    let cuts = [Cut::Vertex { crossing: x, corner: a }, Cut::Vertex { crossing: y, corner: (b + 2) % 4 }];
                    let Ok(variants) = analyse(d, &cuts) else { continue };
                    for an in variants {
                        for side in an.sides.iter().filter(|s| s.is_disk) {
                            checked += 1;
                            if bigon_string(d, side, x, y) {
                                good.push(side.clone());
                            } else {
                                bad.push((cuts, side.clone()));
                            }
                        }
                    }
                }
            }
            for (cuts, disk) in bad {
                let outside = |g: &SideInfo| {
                    g.faces.iter().all(|f| !disk.faces.contains(f) && !disk.cut_faces.contains(f))
                        && g.crossings.iter().all(|c| !disk.crossings.contains(c))
                };
                if !good.iter().any(outside) {
                    return TwistReducedReport {
                        twist_reduced: false,
                        witness: Some(FlypeWitness { crossings: [x, y], cuts, disk }),
                        disks_checked: checked,
                    };
                }
            }
        }
    }
    TwistReducedReport { twist_reduced: true, witness: None, disks_checked: checked }
}
