//! Diagrammatic hypotheses: alternation, checkerboard colouring, weak
//! primeness, weak twist reduction, and the combined weakly generalised
//! alternating (WGA) check.

pub mod curves;
mod prime;
mod twist;

pub use curves::{analyse, Cut, CurveAnalysis, CurveError, SideInfo};
pub use prime::{is_weakly_prime, no_normal_bigon_violation, PrimeReport, TwoCutCurve};
pub use twist::{is_weakly_twist_reduced, FlypeWitness, TwistReducedReport};

use crate::ambient::{representativity, AmbientContext};
use crate::certificate::{Certificate, Conclusion, Hypothesis};
use crate::diagram::{Dart, SurfaceDiagram};
use serde::Serialize;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternationReport {
    pub alternating: bool,
    /// Verdict of the per-edge test: every edge joins an over end to an under end.
    pub by_edges: bool,
    /// Verdict of the per-boundary-cycle test: every region boundary cycle
    /// can be oriented so its corners run under to over.
    pub by_faces: bool,
    /// An edge whose two ends are both over or both under.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_edge: Option<usize>,
    /// A boundary cycle with corners of both kinds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cycle: Option<usize>,
}

/// Kind of a boundary cycle of an alternating diagram: `true` when each dart
/// leaves its crossing on the over strand (so, walking with the region on the
/// right, each corner goes from under to over). `None` for a mixed cycle.
pub fn cycle_kinds(d: &SurfaceDiagram) -> Vec<Option<bool>> {
    d.faces()
        .cycles
        .iter()
        .map(|cyc| {
            let first = d.is_over(cyc[0]);
            cyc.iter().all(|&x| d.is_over(x) == first).then_some(first)
        })
        .collect()
}

pub fn is_alternating(d: &SurfaceDiagram) -> AlternationReport {
    let witness_edge = d.edges().iter().position(|e| d.is_over(e.ends[0]) == d.is_over(e.ends[1]));
    let witness_cycle = cycle_kinds(d).iter().position(|k| k.is_none());
    let by_edges = witness_edge.is_none();
    let by_faces = witness_cycle.is_none();
    AlternationReport { alternating: by_edges && by_faces, by_edges, by_faces, witness_edge, witness_cycle }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Colour {
    White,
    Shaded,
}

impl Colour {
    pub fn opposite(self) -> Colour {
        match self {
            Colour::White => Colour::Shaded,
            Colour::Shaded => Colour::White,
        }
    }
}

impl std::str::FromStr for Colour {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "white" | "w" => Ok(Colour::White),
            "shaded" | "s" => Ok(Colour::Shaded),
            _ => Err(format!("unknown colour {s:?}; use white or shaded")),
        }
    }
}

/// Checkerboard colouring of the regions. White regions are those whose
/// boundary cycles leave every crossing on the over strand; mirroring the
/// diagram swaps the colours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Colouring {
    pub colours: Vec<Colour>,
}

impl Colouring {
    pub fn of(&self, face: usize) -> Colour {
        self.colours[face]
    }

    pub fn faces_of(&self, c: Colour) -> impl Iterator<Item = usize> + '_ {
        (0..self.colours.len()).filter(move |&f| self.colours[f] == c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ColouringError {
    #[error("the diagram is not alternating (edge {edge})")]
    NotAlternating { edge: usize },
    /// The region adjacency graph has an odd closed walk.
    #[error("regions {faces:?} form an odd cycle of adjacencies")]
    OddWalk { faces: Vec<usize> },
    /// The region adjacency graph is bipartite, but a region has boundary
    /// cycles of both orientations.
    #[error("region {face} has boundary cycles that cannot be oriented consistently")]
    MixedRegion { face: usize },
}

pub fn checkerboard_colouring(d: &SurfaceDiagram) -> Result<Colouring, ColouringError> {
    let alt = is_alternating(d);
    if !alt.alternating {
        return Err(ColouringError::NotAlternating { edge: alt.witness_edge.unwrap_or(0) });
    }
    let kinds = cycle_kinds(d);
    let fs = d.faces();
    let by_orientation: Option<Vec<Colour>> = fs
        .faces
        .iter()
        .map(|f| {
            let k: Vec<bool> = f.cycles.iter().map(|&c| kinds[c].expect("alternating")).collect();
            if k.iter().all(|&v| v == k[0]) {
                Some(if k.first().copied().unwrap_or(true) { Colour::White } else { Colour::Shaded })
            } else {
                None
            }
        })
        .collect();
    let bipartite = bipartite_colouring(d);
    match (by_orientation, bipartite) {
        (Some(colours), Ok(_)) => Ok(Colouring { colours }),
        (_, Err(faces)) => Err(ColouringError::OddWalk { faces }),
        (None, Ok(_)) => {
            let face = fs.faces.iter().position(|f| {
                let k: Vec<bool> = f.cycles.iter().map(|&c| kinds[c].unwrap()).collect();
                k.iter().any(|&v| v != k[0])
            });
            Err(ColouringError::MixedRegion { face: face.unwrap() })
        }
    }
}

/// Two-colour the region adjacency graph (regions adjacent across each edge),
/// or return an odd closed walk of regions.
pub fn bipartite_colouring(d: &SurfaceDiagram) -> Result<Vec<bool>, Vec<usize>> {
    let fs = d.faces();
    let n = fs.len();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut q = VecDeque::from([root]);
        while let Some(f) = q.pop_front() {
            let darts: Vec<Dart> = fs.darts(f).collect();
            for x in darts {
                let g = fs.dart_face[d.mate(x)];
                match side[g] {
                    None => {
                        side[g] = Some(!side[f].unwrap());
                        parent[g] = f;
                        q.push_back(g);
                    }
                    Some(s) if s == side[f].unwrap() => {
                        return Err(odd_walk(&parent, f, g));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap()).collect())
}

fn odd_walk(parent: &[usize], f: usize, g: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (pf, pg) = (path(f), path(g));
    // Trim the common tail back to the lowest common ancestor.
    let mut i = pf.len();
    let mut j = pg.len();
    while i > 1 && j > 1 && pf[i - 2] == pg[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut walk: Vec<usize> = pf[..i].to_vec();
    walk.extend(pg[..j - 1].iter().rev());
    walk
}

/// Check every hypothesis of a weakly generalised alternating diagram, in
/// order, and certify the diagram when all of them hold.
pub fn wga_certificate(d: &SurfaceDiagram, ctx: &AmbientContext) -> Certificate {
    let mut hyps = Vec::new();

    let strands = d.strands();
    let bare: Vec<usize> = strands.iter().filter(|k| k.cr == 0).map(|k| k.id).collect();
    hyps.push(Hypothesis::computed(
        "every link component meets a crossing",
        bare.is_empty(),
        if bare.is_empty() { String::new() } else { format!("components {bare:?} meet no crossing") },
    ));

    let empty: Vec<i64> = (0..d.surfaces().len())
        .filter(|&s| d.crossings_on(s).next().is_none())
        .map(|s| d.surfaces()[s].id)
        .collect();
    hyps.push(Hypothesis::computed(
        "diagram meets every surface component",
        empty.is_empty(),
        if empty.is_empty() { String::new() } else { format!("surfaces {empty:?} carry no crossing") },
    ));

    let prime = is_weakly_prime(d);
    hyps.push(Hypothesis::computed("weakly prime", prime.weakly_prime, prime.reason.clone().unwrap_or_default()));

    let alt = is_alternating(d);
    hyps.push(Hypothesis::computed(
        "alternating",
        alt.alternating,
        match alt.witness_edge {
            Some(e) => format!("edge {e} has two ends of the same kind"),
            None if !alt.by_faces => "a boundary cycle is not alternating".to_string(),
            None => String::new(),
        },
    ));

    let col = if alt.alternating { Some(checkerboard_colouring(d)) } else { None };
    hyps.push(Hypothesis::computed(
        "checkerboard colourable",
        matches!(col, Some(Ok(_))),
        match &col {
            Some(Err(e)) => e.to_string(),
            None => "not alternating".to_string(),
            _ => String::new(),
        },
    ));

    hyps.push(match representativity(d, ctx) {
        Ok(rep) => Hypothesis::computed("representativity r >= 4", rep.r.at_least(4), format!("r = {}", rep.r))
            .with_provenance(rep.method),
        Err(e) => Hypothesis::declared("representativity r >= 4", None, e.to_string()),
    });

    Certificate::new(
        "weakly generalised alternating diagram",
        "a reduced alternating, checkerboard colourable diagram with representativity at least 4",
        hyps,
        Conclusion::WeaklyGeneralisedAlternating,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load, NAMES};

    #[test]
    fn fixture_alternation() {
        for name in NAMES {
            let d = load(name).diagram;
            let a = is_alternating(&d);
            assert_eq!(a.by_edges, a.by_faces, "{name}");
            assert!(a.alternating, "{name}");
        }
    }

    #[test]
    fn flipping_a_crossing_breaks_alternation() {
        let d = load("fig8_s2").diagram.with_flipped_crossing(0);
        let a = is_alternating(&d);
        assert!(!a.alternating && !a.by_faces);
        let e = a.witness_edge.unwrap();
        let ends = d.edges()[e].ends;
        assert_eq!(d.is_over(ends[0]), d.is_over(ends[1]));
    }

    #[test]
    fn colourings() {
        for name in ["fig8_s2", "trefoil_s2", "borromean_s2", "sum_trefoils_s2", "kink_s2", "weave4_t2"] {
            let d = load(name).diagram;
            let c = checkerboard_colouring(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
            for e in d.edges() {
                let fs = d.faces();
                assert_ne!(c.of(fs.dart_face[e.ends[0]]), c.of(fs.dart_face[e.ends[1]]), "{name}");
            }
        }
        let w = checkerboard_colouring(&load("weave4_t2").diagram).unwrap();
        assert_eq!(w.faces_of(Colour::White).count(), 2);
        assert!(checkerboard_colouring(&load("fig2_t2").diagram).is_err());
    }

    #[test]
    fn mirror_swaps_colours() {
        let d = load("fig8_s2").diagram;
        let a = checkerboard_colouring(&d).unwrap();
        let b = checkerboard_colouring(&d.mirror()).unwrap();
        for f in 0..a.colours.len() {
            assert_eq!(a.of(f), b.of(f).opposite());
        }
    }

    #[test]
    fn wga_on_fixtures() {
        let doc = load("weave4_t2");
        let c = wga_certificate(&doc.diagram, &doc.ambient);
        assert!(c.granted(), "{:?}", c.refusal());
        let doc = load("fig2_t2");
        let c = wga_certificate(&doc.diagram, &doc.ambient);
        assert_eq!(c.first_failure().unwrap().name, "checkerboard colourable");
        let doc = load("fig8_s2");
        assert!(wga_certificate(&doc.diagram, &doc.ambient).granted());
    }
}
