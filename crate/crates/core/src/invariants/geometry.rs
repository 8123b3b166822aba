//! Geometric certificates: hyperbolicity, primeness, guts and volume bounds,
//! and the checkerboard surface facts. Each one lists its hypotheses and
//! carries a conclusion only when all of them pass.

use super::{checkerboard_stats, twist_structure, CheckerboardStats, TwistStructure};
use crate::ambient::{representativity, AmbientContext, AmbientFact, RepError, RepReport, RepValue};
use crate::certificate::{Certificate, Conclusion, Hypothesis};
use crate::diagram::SurfaceDiagram;
use crate::validation::{
    checkerboard_colouring, is_weakly_twist_reduced, wga_certificate, Colour, Colouring, TwistReducedReport,
};
use serde::Serialize;

/// Volume of the regular ideal octahedron.
pub const V8: f64 = 3.66386237670887;

/// Everything the certificates look at, computed once per diagram.
pub struct DiagramFacts<'a> {
    pub diagram: &'a SurfaceDiagram,
    pub ctx: &'a AmbientContext,
    pub wga: Certificate,
    pub rep: Result<RepReport, RepError>,
    pub twist_reduced: TwistReducedReport,
    pub twist: TwistStructure,
    pub colouring: Option<Colouring>,
    pub stats: Option<CheckerboardStats>,
    /// A single sphere: the classical setting of alternating links in S^3.
    pub sphere: bool,
    pub knot: bool,
}

impl<'a> DiagramFacts<'a> {
    pub fn new(d: &'a SurfaceDiagram, ctx: &'a AmbientContext) -> DiagramFacts<'a> {
        let wga = wga_certificate(d, ctx);
        let colouring = checkerboard_colouring(d).ok();
        DiagramFacts {
            diagram: d,
            ctx,
            rep: representativity(d, ctx),
            twist_reduced: is_weakly_twist_reduced(d),
            twist: twist_structure(d),
            stats: colouring.as_ref().and_then(|_| checkerboard_stats(d).ok()),
            colouring,
            sphere: d.surfaces().len() == 1 && d.surfaces()[0].genus == 0,
            knot: d.strands().len() == 1,
            wga,
        }
    }

    pub fn wga_hyp(&self) -> Hypothesis {
        Hypothesis::computed("weakly generalised alternating", self.wga.granted(), self.wga.refusal().unwrap_or_default())
    }

    pub fn twist_reduced_hyp(&self) -> Hypothesis {
        let detail = match &self.twist_reduced.witness {
            Some(w) => format!("crossings {:?} could be brought together by a flype", w.crossings),
            None => String::new(),
        };
        Hypothesis::computed("weakly twist-reduced", self.twist_reduced.twist_reduced, detail)
    }

    pub fn genus_hyp(&self) -> Hypothesis {
        let low: Vec<i64> = self.diagram.surfaces().iter().filter(|s| s.genus == 0).map(|s| s.id).collect();
        let detail = if low.is_empty() {
            String::new()
        } else if self.sphere {
            "F is a sphere; this is the classical alternating setting, not covered here".to_string()
        } else {
            format!("surfaces {low:?} are spheres")
        };
        Hypothesis::computed("every component of F has genus >= 1", low.is_empty(), detail)
    }

    /// The genus hypothesis, or on a single sphere the classical setting.
    pub fn genus_or_sphere_hyp(&self) -> Hypothesis {
        if self.sphere {
            let in_s3 = self.ctx.fact(self.diagram, AmbientFact::InS3);
            Hypothesis::from_fact("F is a sphere in the 3-sphere", in_s3)
        } else {
            self.genus_hyp()
        }
    }

    pub fn disks_hyp(&self) -> Hypothesis {
        let fs = self.diagram.faces();
        let bad: Vec<usize> = (0..fs.len()).filter(|&f| !fs.faces[f].is_disk).collect();
        let detail = if bad.is_empty() { String::new() } else { format!("regions {bad:?} are not disks") };
        Hypothesis::computed("every region is a disk", bad.is_empty(), detail)
    }

    fn rep_hyp(&self, name: &str, label: &str, pick: impl Fn(&RepReport) -> RepValue, op: &str, k: u32) -> Hypothesis {
        match &self.rep {
            Ok(rep) => {
                let v = pick(rep);
                let ok = if op == ">" { v.greater_than(k) } else { v.at_least(k) };
                Hypothesis::maybe(name, Some((ok, rep.method)), format!("{label} = {v}, need {label} {op} {k}"))
            }
            Err(e) => Hypothesis::maybe(name, None, e.to_string()),
        }
    }

    pub fn r_gt4_hyp(&self) -> Hypothesis {
        self.rep_hyp("representativity r > 4", "r", |r| r.r, ">", 4)
    }

    pub fn r_at_least4_hyp(&self) -> Hypothesis {
        self.rep_hyp("representativity r >= 4", "r", |r| r.r, ">=", 4)
    }

    pub fn r_hat_gt4_hyp(&self) -> Hypothesis {
        self.rep_hyp("representativity r-hat > 4", "r-hat", |r| r.r_hat, ">", 4)
    }

    pub fn fact_hyp(&self, which: AmbientFact) -> Hypothesis {
        let name = match which {
            AmbientFact::Atoroidal => "Y atoroidal",
            AmbientFact::BoundaryAnannular => "Y boundary-anannular",
            AmbientFact::BoundaryIncompressible => "boundary of Y incompressible",
            AmbientFact::InS3 => "Y is the 3-sphere",
            AmbientFact::Closed => "Y closed",
            AmbientFact::Heegaard => "F is a Heegaard torus",
        };
        Hypothesis::from_fact(name, self.ctx.fact(self.diagram, which))
    }

    pub fn knot_hyp(&self) -> Hypothesis {
        let n = self.diagram.strands().len();
        Hypothesis::computed("L is a knot", self.knot, if self.knot { String::new() } else { format!("{n} components") })
    }

    pub fn no_bigon_cycle_hyp(&self) -> Hypothesis {
        let detail = match &self.twist.bigon_cycle {
            Some(c) => format!("bigon cycle through crossings {:?}", c.crossings),
            None => String::new(),
        };
        Hypothesis::computed("no closed bigon cycle", self.twist.bigon_cycle.is_none(), detail)
    }

    /// Euler characteristic of F.
    pub fn chi_f(&self) -> i64 {
        self.diagram.euler_char()
    }

    pub fn chi_boundary(&self) -> i64 {
        self.ctx.boundary_euler(self.diagram)
    }

    /// Non-bigon regions of the given colour.
    pub fn non_bigon_regions(&self, colour: Colour) -> usize {
        match (&self.stats, colour) {
            (Some(s), Colour::Shaded) => s.r_shaded,
            (Some(s), Colour::White) => s.r_white,
            (None, _) => 0,
        }
    }

    /// The tool's standard hypotheses for results about the complement: WGA,
    /// F of positive genus (or the classical sphere when allowed), disk
    /// regions, r > 4 and the ambient facts.
    fn complement_hyps(&self, allow_sphere: bool) -> Vec<Hypothesis> {
        vec![
            self.wga_hyp(),
            self.twist_reduced_hyp(),
            if allow_sphere { self.genus_or_sphere_hyp() } else { self.genus_hyp() },
            self.disks_hyp(),
            self.r_gt4_hyp(),
            self.fact_hyp(AmbientFact::Atoroidal),
            self.fact_hyp(AmbientFact::BoundaryAnannular),
            self.fact_hyp(AmbientFact::BoundaryIncompressible),
        ]
    }
}

/// Euler characteristic of the guts of the complement cut along the
/// checkerboard surface of `colour`.
pub fn guts_euler(f: &DiagramFacts, colour: Colour) -> Certificate {
    let value = f.chi_f() + f.chi_boundary() / 2 - f.non_bigon_regions(colour.opposite()) as i64;
    let mut c = Certificate::new(
        "guts of a checkerboard surface",
        "the guts of the complement cut along the surface have Euler characteristic chi(F) + chi(dY)/2 minus the number of non-bigon regions of the other colour",
        f.complement_hyps(false),
        Conclusion::GutsEuler { value },
    );
    if f.sphere {
        c = c.with_note("on the sphere this is the classical alternating case, which has its own guts count");
    }
    c
}

/// Lower bound for the volume of the complement from the twist number.
pub fn volume_lower_bound(f: &DiagramFacts) -> Certificate {
    let half_octahedra = f.twist.tw as i64 - f.chi_f() - f.chi_boundary();
    let mut hyps = f.complement_hyps(true);
    hyps.push(f.no_bigon_cycle_hyp());
    let mut c = Certificate::new(
        "twist number volume bound",
        "the complement has volume at least v8/2 times (tw - chi(F) - chi(dY))",
        hyps,
        Conclusion::VolumeAtLeast { half_octahedra, value: V8 / 2.0 * half_octahedra as f64 },
    );
    if f.sphere {
        c = c.with_note("F is a sphere in S^3: the bound is the classical v8/2 (tw - 2) for alternating links");
    }
    c
}

/// Hyperbolicity, satellite structure or refusal.
pub fn classify_geometry(f: &DiagramFacts) -> Certificate {
    let d = f.diagram;
    if f.sphere {
        return Certificate::new(
            "alternating links on the sphere",
            "a prime reduced alternating diagram on the sphere that is not a closed chain of bigons is hyperbolic",
            vec![f.wga_hyp(), f.genus_or_sphere_hyp(), f.no_bigon_cycle_hyp()],
            Conclusion::Hyperbolic,
        )
        .with_note("classical result for reduced alternating diagrams in S^3");
    }
    let in_s3 = f.ctx.fact(d, AmbientFact::InS3);
    let torus = d.surfaces().len() == 1 && d.surfaces()[0].genus == 1;
    if torus && in_s3.value == Some(true) {
        return classify_on_torus(f);
    }
    Certificate::new(
        "hyperbolic complement",
        "the complement of a weakly generalised alternating link with disk regions and r-hat > 4 in an atoroidal, boundary-anannular Y is hyperbolic",
        vec![
            f.wga_hyp(),
            f.genus_hyp(),
            f.disks_hyp(),
            f.r_hat_gt4_hyp(),
            f.fact_hyp(AmbientFact::Atoroidal),
            f.fact_hyp(AmbientFact::BoundaryAnannular),
        ],
        Conclusion::Hyperbolic,
    )
    .with_note("Y - N(L) is toroidal exactly when Y - N(F) is toroidal")
    .with_note("Y - N(L) is annular exactly when Y - N(F) is annular")
}

/// The decision table for a weakly generalised alternating diagram on a torus
/// in the 3-sphere.
fn classify_on_torus(f: &DiagramFacts) -> Certificate {
    let d = f.diagram;
    let in_s3 = f.fact_hyp(AmbientFact::InS3);
    let heegaard = f.ctx.fact(d, AmbientFact::Heegaard);
    let statement_nh = "a weakly generalised alternating link on a torus in S^3 that is not a Heegaard torus is a satellite";
    match heegaard.value {
        Some(false) => {
            return Certificate::new(
                "link on a knotted torus",
                statement_nh,
                vec![
                    f.wga_hyp(),
                    in_s3,
                    Hypothesis::maybe("F is not a Heegaard torus", Some((true, heegaard.provenance)), ""),
                ],
                Conclusion::Satellite { companion: "a core of the solid torus bounded by F".into() },
            )
        }
        None => {
            return Certificate::new(
                "link on a torus in S^3",
                statement_nh,
                vec![f.wga_hyp(), in_s3, Hypothesis::from_fact("F is a Heegaard torus", heegaard)],
                Conclusion::Hyperbolic,
            )
        }
        Some(true) => {}
    }
    let heegaard_hyp = Hypothesis::from_fact("F is a Heegaard torus", heegaard);
    let fs = d.faces();
    let annulus = (0..fs.len()).find(|&r| !fs.faces[r].is_disk && fs.faces[r].euler_char == 0);
    let Some(region) = annulus else {
        return Certificate::new(
            "knot on a Heegaard torus",
            "a weakly generalised alternating knot on a Heegaard torus with disk regions is hyperbolic",
            vec![f.wga_hyp(), in_s3, heegaard_hyp, f.knot_hyp(), f.disks_hyp()],
            Conclusion::Hyperbolic,
        );
    };
    let core = f.ctx.annulus_core_knotted;
    let annulus_hyp = Hypothesis::computed("a region is an annulus", true, format!("region {region}"));
    match core {
        Some(true) => Certificate::new(
            "annular region with knotted core",
            "if the core of an annular region is a nontrivial torus knot, the link is a satellite of it",
            vec![
                f.wga_hyp(),
                in_s3,
                heegaard_hyp,
                annulus_hyp,
                Hypothesis::declared("core of the annulus knotted", Some(true), ""),
            ],
            Conclusion::Satellite { companion: format!("the torus knot carried by the core of region {region}") },
        ),
        _ => Certificate::new(
            "annular region with unknotted core",
            "a weakly generalised alternating knot on a Heegaard torus whose annular region has unknotted core is hyperbolic",
            vec![
                f.wga_hyp(),
                in_s3,
                heegaard_hyp,
                f.knot_hyp(),
                annulus_hyp,
                Hypothesis::declared("core of the annulus unknotted", core.map(|k| !k), ""),
            ],
            Conclusion::Hyperbolic,
        ),
    }
}

/// A knot with a weakly generalised alternating diagram on a surface of
/// positive genus in S^3 is not a torus knot.
pub fn not_torus_knot(f: &DiagramFacts) -> Certificate {
    Certificate::new(
        "not a torus knot",
        "a weakly generalised alternating knot on a surface of positive genus in S^3 is not a torus knot",
        vec![f.wga_hyp(), f.knot_hyp(), f.genus_hyp(), f.fact_hyp(AmbientFact::InS3)],
        Conclusion::NotTorusKnot,
    )
}

pub fn primeness(f: &DiagramFacts) -> Certificate {
    let mut hyps: Vec<Hypothesis> = f
        .wga
        .hypotheses()
        .iter()
        .filter(|h| h.name != "checkerboard colourable" && !h.name.starts_with("representativity"))
        .cloned()
        .collect();
    hyps.push(f.r_at_least4_hyp());
    hyps.push(f.r_hat_gt4_hyp());
    Certificate::new(
        "primeness",
        "a reduced alternating link with r >= 4 and r-hat > 4 is prime",
        hyps,
        Conclusion::Prime,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceStatus {
    Quasifuchsian,
    Partial,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceGeometry {
    pub colour: Colour,
    pub status: SurfaceStatus,
    pub quasifuchsian: Certificate,
    /// Two independent routes; either one suffices.
    pub not_accidental: [Certificate; 2],
    pub not_semi_fiber: Certificate,
    /// Set when the diagram is a closed string of bigons of the other colour,
    /// where the surface can be a semi-fiber.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_fiber_alternative: Option<String>,
}

pub fn surface_geometry(f: &DiagramFacts, colour: Colour) -> SurfaceGeometry {
    let d = f.diagram;
    let fs = d.faces();
    let other = colour.opposite();
    let quasifuchsian = Certificate::new(
        "quasifuchsian checkerboard surface",
        "with disk regions, r-hat > 4 and Y atoroidal and boundary-anannular, each checkerboard surface is quasifuchsian",
        vec![
            f.wga_hyp(),
            f.genus_hyp(),
            f.disks_hyp(),
            f.r_hat_gt4_hyp(),
            f.fact_hyp(AmbientFact::Atoroidal),
            f.fact_hyp(AmbientFact::BoundaryAnannular),
        ],
        Conclusion::Quasifuchsian,
    );
    let by_rep = Certificate::new(
        "no accidental parabolics (representativity)",
        "with r-hat > 4 the checkerboard surface is not accidental",
        vec![f.wga_hyp(), f.r_hat_gt4_hyp()],
        Conclusion::NotAccidental,
    );
    let disk_other = f
        .colouring
        .as_ref()
        .and_then(|c| c.faces_of(other).find(|&r| fs.faces[r].is_disk));
    let by_knot = Certificate::new(
        "no accidental parabolics (knot)",
        "for a knot with a disk region of the other colour the checkerboard surface is not accidental",
        vec![
            f.wga_hyp(),
            f.knot_hyp(),
            Hypothesis::computed(
                format!("some {} region is a disk", colour_name(other)),
                disk_other.is_some(),
                disk_other.map(|r| format!("region {r}")).unwrap_or_default(),
            ),
        ],
        Conclusion::NotAccidental,
    );
    let string_of_other_bigons = match (&f.twist.bigon_cycle, &f.colouring) {
        (Some(cyc), Some(col)) => {
            cyc.crossings.len() == d.crossing_count() && cyc.bigons.iter().all(|&b| col.of(b) == other)
        }
        _ => false,
    };
    let hyperbolic = classify_geometry(f);
    let not_semi_fiber = Certificate::new(
        "not a semi-fiber",
        "in a hyperbolic complement the checkerboard surface is not a semi-fiber unless the diagram is a string of bigons of the other colour",
        vec![
            f.wga_hyp(),
            Hypothesis::computed(
                format!("diagram is not a closed string of {} bigons", colour_name(other)),
                !string_of_other_bigons,
                "",
            ),
            Hypothesis::computed(
                "complement hyperbolic",
                hyperbolic.conclusion() == Some(&Conclusion::Hyperbolic),
                hyperbolic.refusal().unwrap_or_default(),
            ),
        ],
        Conclusion::NotSemiFiber,
    );
    let status = if quasifuchsian.granted() {
        SurfaceStatus::Quasifuchsian
    } else if by_rep.granted() || by_knot.granted() || not_semi_fiber.granted() {
        SurfaceStatus::Partial
    } else {
        SurfaceStatus::Unknown
    };
    SurfaceGeometry {
        colour,
        status,
        quasifuchsian,
        not_accidental: [by_rep, by_knot],
        not_semi_fiber,
        semi_fiber_alternative: string_of_other_bigons.then(|| {
            format!("the diagram is a closed string of {} bigons; the surface may be a semi-fiber", colour_name(other))
        }),
    }
}

fn colour_name(c: Colour) -> &'static str {
    match c {
        Colour::White => "white",
        Colour::Shaded => "shaded",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{DeclaredRep, Side};
    use crate::fixtures::load;

    fn facts(name: &str) -> (SurfaceDiagram, AmbientContext) {
        let doc = load(name);
        (doc.diagram, doc.ambient)
    }

    #[test]
    fn guts_of_weave() {
        let (d, ctx) = facts("weave4_t2");
        let f = DiagramFacts::new(&d, &ctx);
        for colour in [Colour::Shaded, Colour::White] {
            let c = guts_euler(&f, colour);
            assert_eq!(c.conclusion(), Some(&Conclusion::GutsEuler { value: -2 }), "{:?}", c.refusal());
        }
        let (d, ctx) = facts("fig8_s2");
        let c = guts_euler(&DiagramFacts::new(&d, &ctx), Colour::Shaded);
        assert!(c.refusal().unwrap().starts_with("every component of F has genus >= 1"));
    }

    #[test]
    fn declared_r4_refuses_guts() {
        let (d, _) = facts("weave4_t2");
        let ctx = AmbientContext {
            declared_representativity: vec![DeclaredRep {
                surface: None,
                minus: RepValue::Finite(4),
                plus: RepValue::Finite(4),
                note: None,
            }],
            flags: crate::ambient::AmbientFlags { atoroidal: Some(true), boundary_anannular: Some(true), ..Default::default() },
            boundary_of_y: vec![
                crate::ambient::BoundaryComponent { euler_char: 0, side: Side::Minus },
                crate::ambient::BoundaryComponent { euler_char: 0, side: Side::Plus },
            ],
            ..Default::default()
        };
        let f = DiagramFacts::new(&d, &ctx);
        let c = guts_euler(&f, Colour::Shaded);
        assert_eq!(c.refusal(), Some("representativity r > 4: r = 4, need r > 4"));
        assert!(!c.hypothesis("boundary of Y incompressible").unwrap().passed());
        assert!(!primeness(&f).granted());
    }

    #[test]
    fn volume_bounds() {
        let (d, ctx) = facts("borromean_s2");
        let c = volume_lower_bound(&DiagramFacts::new(&d, &ctx));
        match c.conclusion() {
            Some(Conclusion::VolumeAtLeast { half_octahedra, value }) => {
                assert_eq!(*half_octahedra, 4);
                assert!((value - 2.0 * V8).abs() < 1e-12);
            }
            other => panic!("{other:?} {:?}", c.refusal()),
        }
        assert!(!c.notes.is_empty());

        let (d, ctx) = facts("weave4_t2");
        let c = volume_lower_bound(&DiagramFacts::new(&d, &ctx));
        assert!(matches!(c.conclusion(), Some(Conclusion::VolumeAtLeast { half_octahedra: 4, .. })));

        let (d, ctx) = facts("heegaard11_t2");
        let c = volume_lower_bound(&DiagramFacts::new(&d, &ctx));
        assert_eq!(c.refusal(), Some("representativity r > 4: r = 4, need r > 4"));

        let (d, ctx) = facts("trefoil_s2");
        let c = volume_lower_bound(&DiagramFacts::new(&d, &ctx));
        assert!(c.refusal().unwrap().starts_with("no closed bigon cycle: bigon cycle through crossings"));
    }

    #[test]
    fn classification() {
        let (d, ctx) = facts("weave4_t2");
        let f = DiagramFacts::new(&d, &ctx);
        assert_eq!(classify_geometry(&f).conclusion(), Some(&Conclusion::Hyperbolic));
        assert_eq!(primeness(&f).conclusion(), Some(&Conclusion::Prime));

        let (d, ctx) = facts("fig8_s2");
        assert_eq!(classify_geometry(&DiagramFacts::new(&d, &ctx)).conclusion(), Some(&Conclusion::Hyperbolic));
        let (d, ctx) = facts("trefoil_s2");
        assert!(!classify_geometry(&DiagramFacts::new(&d, &ctx)).granted());

        // all four branches of the torus table
        let (d, ctx) = facts("heegaard11_t2");
        assert_eq!(classify_geometry(&DiagramFacts::new(&d, &ctx)).conclusion(), Some(&Conclusion::Hyperbolic));
        let mut knotted_torus = ctx.clone();
        knotted_torus.kind = crate::ambient::AmbientKind::Declared;
        knotted_torus.flags.in_s3 = Some(true);
        knotted_torus.heegaard = Some(false);
        let c = classify_geometry(&DiagramFacts::new(&d, &knotted_torus));
        assert!(matches!(c.conclusion(), Some(Conclusion::Satellite { .. })), "{:?}", c.refusal());

        let (d, mut ctx) = facts("band9_t2");
        assert_eq!(classify_geometry(&DiagramFacts::new(&d, &ctx)).conclusion(), Some(&Conclusion::Hyperbolic));
        ctx.annulus_core_knotted = Some(true);
        let c = classify_geometry(&DiagramFacts::new(&d, &ctx));
        assert!(matches!(c.conclusion(), Some(Conclusion::Satellite { .. })));
        ctx.annulus_core_knotted = None;
        assert_eq!(
            classify_geometry(&DiagramFacts::new(&d, &ctx)).refusal(),
            Some("core of the annulus unknotted: not declared")
        );
    }

    #[test]
    fn torus_knot_exclusion() {
        let (d, ctx) = facts("heegaard11_t2");
        assert_eq!(not_torus_knot(&DiagramFacts::new(&d, &ctx)).conclusion(), Some(&Conclusion::NotTorusKnot));
        let (d, ctx) = facts("fig8_s2");
        assert!(!not_torus_knot(&DiagramFacts::new(&d, &ctx)).granted());
    }

    #[test]
    fn surface_facts() {
        let (d, ctx) = facts("weave4_t2");
        let f = DiagramFacts::new(&d, &ctx);
        for colour in [Colour::Shaded, Colour::White] {
            assert_eq!(surface_geometry(&f, colour).status, SurfaceStatus::Quasifuchsian);
        }
        // r-hat = 4: only the knot route to non-accidentalness is open
        let (d, ctx) = facts("heegaard11_t2");
        let g = surface_geometry(&DiagramFacts::new(&d, &ctx), Colour::Shaded);
        assert!(!g.quasifuchsian.granted() && !g.not_accidental[0].granted());
        assert!(g.not_accidental[1].granted());
        assert_eq!(g.status, SurfaceStatus::Partial);

        let (d, ctx) = facts("trefoil_s2");
        let f = DiagramFacts::new(&d, &ctx);
        let col = f.colouring.clone().unwrap();
        let bigon_colour = col.of(f.twist.bigon_cycle.as_ref().unwrap().bigons[0]);
        let g = surface_geometry(&f, bigon_colour.opposite());
        assert!(g.semi_fiber_alternative.is_some());
        assert!(!g.not_semi_fiber.granted());
    }
}
