//! Weak primeness: every disk whose boundary meets the diagram twice holds a
//! single crossing-free arc.

use super::curves::{analyse, Cut, CurveAnalysis, SideInfo};
use crate::diagram::{Dart, SurfaceDiagram};
use serde::Serialize;

/// A curve crossing two diagram edges, with what it cuts off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCutCurve {
    pub cuts: [Cut; 2],
    /// (region the curve runs through, edge it then crosses), cyclically.
    pub itinerary: [(usize, usize); 2],
    pub bounds_disk: bool,
    pub sides: Vec<SideInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub weakly_prime: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TwoCutCurve>,
    pub curves_checked: usize,
}

/// Does this curve cut off a disk that violates weak primeness? On a sphere
/// both sides are disks and one of them must be crossing-free; elsewhere every
/// disk side must be.
pub(crate) fn violates(genus: u32, an: &CurveAnalysis) -> bool {
    if !an.separating {
        return false;
    }
    if genus == 0 {
        an.sides.iter().all(|s| !s.crossings.is_empty())
    } else {
        an.disk_sides().any(|s| !s.crossings.is_empty())
    }
}

pub fn is_weakly_prime(d: &SurfaceDiagram) -> PrimeReport {
    for (s, surf) in d.surfaces().iter().enumerate() {
        let n = d.crossings_on(s).count();
        if surf.genus == 0 && n < 2 {
            return PrimeReport {
                weakly_prime: false,
                reason: Some(format!("a diagram on the sphere needs at least two crossings, found {n}")),
                witness: None,
                curves_checked: 0,
            };
        }
    }
    let fs = d.faces();
    let mut checked = 0;
    for d1 in 0..d.dart_count() {
        if d1 > d.mate(d1) {
            continue;
        }
        for d2 in 0..d.dart_count() {
            if d.edge_of(d1) == d.edge_of(d2)
                || fs.dart_face[d1] != fs.dart_face[d2]
                || fs.dart_face[d.mate(d1)] != fs.dart_face[d.mate(d2)]
            {
                continue;
            }
            let cuts = [Cut::Edge(d1), Cut::Edge(d.mate(d2))];
            let Ok(variants) = analyse(d, &cuts) else { continue };
            let genus = d.surfaces()[d.surface_of_crossing(crate::diagram::crossing_of(d1))].genus;
            for an in variants {
                checked += 1;
                if violates(genus, &an) {
                    let curve = two_cut(d, cuts, &an);
                    let reason = format!(
                        "a curve crossing edges {} and {} cuts off a disk containing crossings",
                        d.edge_of(d1),
                        d.edge_of(d2)
                    );
                    return PrimeReport { weakly_prime: false, reason: Some(reason), witness: Some(curve), curves_checked: checked };
                }
            }
        }
    }
    PrimeReport { weakly_prime: true, reason: None, witness: None, curves_checked: checked }
}

fn two_cut(d: &SurfaceDiagram, cuts: [Cut; 2], an: &CurveAnalysis) -> TwoCutCurve {
    let fs = d.faces();
    let step = |c: Cut| -> (usize, usize) {
        match c {
            Cut::Edge(x) => (fs.dart_face[x], d.edge_of(x)),
            _ => unreachable!("two-cut curves cross edges"),
        }
    };
    TwoCutCurve {
        cuts,
        itinerary: [step(cuts[0]), step(cuts[1])],
        bounds_disk: an.disk_sides().next().is_some(),
        sides: an.sides.clone(),
    }
}

/// Look for a closed curve crossing at most three edges that cuts off a disk
/// with crossings in it (on the sphere: with crossings on both sides). Weak
/// primeness together with r >= 4 rules such curves out; this searches for
/// them directly.
pub fn no_normal_bigon_violation(d: &SurfaceDiagram) -> Option<Vec<Cut>> {
    let fs = d.faces();
    let nd = d.dart_count();
    let genus_of = |x: Dart| d.surfaces()[d.surface_of_crossing(crate::diagram::crossing_of(x))].genus;
    let bad = |cuts: &[Cut], g: u32| -> bool {
        analyse(d, cuts).map(|v| v.iter().any(|an| violates(g, an))).unwrap_or(false)
    };
    // Crossing edge x moves the curve from face(x) into face(mate x).
    for a in 0..nd {
        let fa = fs.dart_face[a];
        if fs.dart_face[d.mate(a)] == fa && bad(&[Cut::Edge(a)], genus_of(a)) {
            return Some(vec![Cut::Edge(a)]);
        }
        for b in (0..nd).filter(|&b| fs.dart_face[b] == fs.dart_face[d.mate(a)]) {
            if fs.dart_face[d.mate(b)] == fa && bad(&[Cut::Edge(a), Cut::Edge(b)], genus_of(a)) {
                return Some(vec![Cut::Edge(a), Cut::Edge(b)]);
            }
            for c in (0..nd).filter(|&c| fs.dart_face[c] == fs.dart_face[d.mate(b)]) {
                if fs.dart_face[d.mate(c)] == fa && bad(&[Cut::Edge(a), Cut::Edge(b), Cut::Edge(c)], genus_of(a)) {
                    return Some(vec![Cut::Edge(a), Cut::Edge(b), Cut::Edge(c)]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;

    #[test]
    fn fixture_primeness() {
        for name in ["fig8_s2", "trefoil_s2", "borromean_s2", "weave4_t2"] {
            let r = is_weakly_prime(&load(name).diagram);
            assert!(r.weakly_prime, "{name}: {:?}", r.reason);
        }
        let r = is_weakly_prime(&load("sum_trefoils_s2").diagram);
        assert!(!r.weakly_prime);
        let w = r.witness.unwrap();
        assert!(w.bounds_disk);
        assert!(w.sides.iter().all(|s| s.crossings.len() == 3));
        let r = is_weakly_prime(&load("kink_s2").diagram);
        assert!(!r.weakly_prime);
        assert!(r.reason.unwrap().contains("at least two crossings"));
    }

    #[test]
    fn sphere_oracle_no_two_shared_edges() {
        // On the sphere a diagram with at least two crossings is weakly prime
        // exactly when no two regions share two distinct edges.
        for name in ["fig8_s2", "trefoil_s2", "borromean_s2", "sum_trefoils_s2"] {
            let d = load(name).diagram;
            let fs = d.faces();
            let mut shared = false;
            for a in 0..d.dart_count() {
                for b in 0..d.dart_count() {
                    if d.edge_of(a) != d.edge_of(b)
                        && fs.dart_face[a] == fs.dart_face[b]
                        && fs.dart_face[d.mate(a)] == fs.dart_face[d.mate(b)]
                    {
                        shared = true;
                    }
                }
            }
            assert_eq!(is_weakly_prime(&d).weakly_prime, !shared, "{name}");
        }
    }

    #[test]
    fn no_short_curves_cut_off_crossings() {
        for name in ["fig8_s2", "borromean_s2", "weave4_t2"] {
            assert_eq!(no_normal_bigon_violation(&load(name).diagram), None, "{name}");
        }
        assert!(no_normal_bigon_violation(&load("sum_trefoils_s2").diagram).is_some());
    }
}
