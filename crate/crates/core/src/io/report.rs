//! The analysis pipeline behind the `wga` command and its reports.

use crate::ambient::{representativity, AmbientFact, AmbientKind, DeclaredRep, Fact, Provenance, RepValue};
use crate::certificate::{Certificate, Conclusion, Status};
use crate::chunks::{build_bounded_decomposition, build_chunk_decomposition, verify_angled_structure, ChunkDecomposition};
use crate::dehn::{
    combinatorial_length_bound, filled_volume_bound, filling_certificate, geometric_filling_threshold, geometric_threshold,
    harlequin_tiling, slope_length_bounds, FillingReport, HarlequinTiling, Slope, VOLUME_Q,
};
use crate::invariants::{
    classify_geometry, guts_euler, not_torus_knot, primeness, surface_geometry, volume_lower_bound, CheckerboardStats,
    DiagramFacts, SurfaceGeometry, TwistStructure,
};
use crate::io::sld::{parse_document, Document};
use crate::validation::{
    checkerboard_colouring, is_alternating, is_weakly_prime, is_weakly_twist_reduced, AlternationReport, Colour,
    PrimeReport, TwistReducedReport,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Validate,
    Invariants,
    Chunks,
    Classify,
    Dehn,
}

#[derive(Clone, Debug, Default)]
pub struct Request {
    pub analyses: Vec<Analysis>,
    /// Restrict the Dehn filling analysis to one component.
    pub component: Option<usize>,
    /// Slopes as typed, "p/q".
    pub slopes: Vec<String>,
    pub all_thresholds: bool,
}

impl Request {
    pub fn only(a: Analysis) -> Request {
        Request { analyses: vec![a], ..Default::default() }
    }

    fn wants(&self, a: Analysis) -> bool {
        self.analyses.contains(&a)
    }
}

/// A number written exactly and to six decimals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    pub symbolic: String,
    pub decimal: String,
}

impl Quantity {
    fn new(symbolic: impl Into<String>, value: f64) -> Quantity {
        Quantity { symbolic: symbolic.into(), decimal: format!("{value:.6}") }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactEntry {
    pub name: &'static str,
    pub value: Option<bool>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmbientSummary {
    pub kind: AmbientKind,
    pub facts: Vec<FactEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub declared_representativity: Vec<DeclaredRep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annulus_core_knotted: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagramSummary {
    pub crossings: usize,
    pub link_components: usize,
    pub surface_genera: Vec<u32>,
    pub surface_euler: i64,
    pub regions: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepSummary {
    pub r: RepValue,
    pub r_hat: RepValue,
    pub e: RepValue,
    pub e_bound_only: bool,
    pub method: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationSection {
    pub alternation: AlternationReport,
    pub colourable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colouring_error: Option<String>,
    pub weakly_prime: PrimeReport,
    pub twist_reduced: TwistReducedReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representativity: Option<RepSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representativity_error: Option<String>,
    pub wga: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantsSection {
    pub twist: TwistStructure,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkerboard: Option<CheckerboardStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkerboard_error: Option<String>,
    pub guts_shaded: Certificate,
    pub guts_white: Certificate,
    pub volume: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume_bound: Option<Quantity>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unglued: Option<Colour>,
    pub chunks: usize,
    pub interior_faces: usize,
    pub surface_faces: usize,
    pub boundary_squares: usize,
    pub edges: usize,
    pub edge_classes: usize,
    pub class_sizes: Vec<usize>,
    pub class_angle_sums: Vec<String>,
    pub parabolic_edges: usize,
    pub angled: Certificate,
}

impl DecompositionSummary {
    fn of(cd: &ChunkDecomposition) -> DecompositionSummary {
        let surface_faces = cd.faces.iter().filter(|f| f.kind == crate::chunks::FaceKind::Surface).count();
        DecompositionSummary {
            unglued: cd.unglued,
            chunks: cd.chunks.len(),
            interior_faces: cd.faces.len() - surface_faces,
            surface_faces,
            boundary_squares: cd.boundary_faces.iter().filter(|b| b.is_square()).count(),
            edges: cd.edges.len(),
            edge_classes: cd.classes.len(),
            class_sizes: cd.classes.iter().map(|c| c.members.len()).collect(),
            class_angle_sums: cd.classes.iter().map(|c| format!("{}pi", c.angle_sum)).collect(),
            parabolic_edges: cd.parabolic_corners.iter().map(Vec::len).sum(),
            angled: verify_angled_structure(cd),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChunksSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSummary>,
    pub bounded: Vec<DecompositionSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unavailable: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassifySection {
    pub geometry: Certificate,
    pub prime: Certificate,
    pub not_torus_knot: Certificate,
    pub surfaces: Vec<SurfaceGeometry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub component: usize,
    pub tw_k: usize,
    /// |q| > 8 / tw(K).
    pub twist: Quantity,
    pub blanket: Quantity,
    pub geometric: Quantity,
    pub volume: Quantity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeSection {
    pub slope: Slope,
    pub combinatorial_length: Certificate,
    pub filled_volume: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DehnSection {
    pub tilings: Vec<HarlequinTiling>,
    pub slope_lengths: Certificate,
    pub geometric_threshold: Certificate,
    pub filling: FillingReport,
    pub slopes: Vec<SlopeSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub thresholds: Vec<ThresholdRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chunks: Option<ChunksSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassifySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dehn: Option<DehnSection>,
    /// Failures of the run itself. Refused certificates are not errors.
    pub errors: Vec<String>,
}

impl Report {
    fn failed(source: Option<String>, error: String) -> Report {
        Report {
            source,
            name: None,
            diagram: None,
            ambient: None,
            validation: None,
            invariants: None,
            chunks: None,
            classification: None,
            dehn: None,
            errors: vec![error],
        }
    }

    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialise")
    }
}

fn ambient_summary(doc: &Document) -> AmbientSummary {
    let d = &doc.diagram;
    let ctx = &doc.ambient;
    let facts = [
        ("atoroidal", AmbientFact::Atoroidal),
        ("boundary_anannular", AmbientFact::BoundaryAnannular),
        ("boundary_incompressible", AmbientFact::BoundaryIncompressible),
        ("in_s3", AmbientFact::InS3),
        ("closed", AmbientFact::Closed),
        ("heegaard", AmbientFact::Heegaard),
    ]
    .into_iter()
    .map(|(name, which)| {
        let Fact { value, provenance } = ctx.fact(d, which);
        FactEntry { name, value, provenance }
    })
    .collect();
    AmbientSummary {
        kind: ctx.kind,
        facts,
        declared_representativity: ctx.declared_representativity.clone(),
        annulus_core_knotted: ctx.annulus_core_knotted,
    }
}

fn validation(doc: &Document, facts: &DiagramFacts) -> ValidationSection {
    let d = &doc.diagram;
    let col = checkerboard_colouring(d);
    let (representativity, representativity_error) = match representativity(d, &doc.ambient) {
        Ok(r) => (
            Some(RepSummary { r: r.r, r_hat: r.r_hat, e: r.e.value, e_bound_only: r.e.bound_only, method: r.method }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    ValidationSection {
        alternation: is_alternating(d),
        colourable: col.is_ok(),
        colouring_error: col.err().map(|e| e.to_string()),
        weakly_prime: is_weakly_prime(d),
        twist_reduced: is_weakly_twist_reduced(d),
        representativity,
        representativity_error,
        wga: facts.wga.clone(),
    }
}

fn invariants(doc: &Document, facts: &DiagramFacts) -> InvariantsSection {
    let volume = volume_lower_bound(facts);
    let volume_bound = match volume.conclusion() {
        Some(Conclusion::VolumeAtLeast { half_octahedra, value }) => {
            Some(Quantity::new(format!("{half_octahedra} v8/2"), *value))
        }
        _ => None,
    };
    InvariantsSection {
        twist: facts.twist.clone(),
        checkerboard: facts.stats.clone(),
        checkerboard_error: checkerboard_colouring(&doc.diagram).err().map(|e| e.to_string()),
        guts_shaded: guts_euler(facts, Colour::Shaded),
        guts_white: guts_euler(facts, Colour::White),
        volume,
        volume_bound,
    }
}

fn chunks(doc: &Document) -> ChunksSection {
    let mut unavailable = Vec::new();
    let decomposition = match build_chunk_decomposition(&doc.diagram, &doc.ambient) {
        Ok(cd) => Some(DecompositionSummary::of(&cd)),
        Err(e) => {
            unavailable.push(format!("chunk decomposition: {e}"));
            None
        }
    };
    let mut bounded = Vec::new();
    for colour in [Colour::Shaded, Colour::White] {
        match build_bounded_decomposition(&doc.diagram, &doc.ambient, colour) {
            Ok(cd) => bounded.push(DecompositionSummary::of(&cd)),
            Err(e) => unavailable.push(format!("bounded decomposition ({colour:?}): {e}")),
        }
    }
    unavailable.dedup();
    ChunksSection { decomposition, bounded, unavailable }
}

fn classify(facts: &DiagramFacts) -> ClassifySection {
    ClassifySection {
        geometry: classify_geometry(facts),
        prime: primeness(facts),
        not_torus_knot: not_torus_knot(facts),
        surfaces: vec![surface_geometry(facts, Colour::Shaded), surface_geometry(facts, Colour::White)],
    }
}

fn dehn(doc: &Document, facts: &DiagramFacts, req: &Request, errors: &mut Vec<String>) -> DehnSection {
    let d = &doc.diagram;
    let ncomp = d.strands().len();
    let components: Vec<usize> = match req.component {
        Some(k) if k >= ncomp => {
            errors.push(format!("component {k} does not exist; the link has {ncomp}"));
            Vec::new()
        }
        Some(k) => vec![k],
        None => (0..ncomp).collect(),
    };
    let component = req.component.unwrap_or(0);
    let mut slopes = Vec::new();
    for s in &req.slopes {
        match Slope::parse(component, s) {
            Ok(s) if req.component.is_none_or(|k| k < ncomp) => slopes.push(s),
            Ok(_) => {}
            Err(e) => errors.push(e.to_string()),
        }
    }
    let tilings = components.iter().filter_map(|&k| harlequin_tiling(d, k).ok()).collect();
    let c = d.crossing_count().max(1) as i64;
    let chi = d.euler_char();
    let thresholds = if req.all_thresholds {
        components
            .iter()
            .map(|&k| {
                let tw_k = facts.twist.tw_per_component.get(k).copied().unwrap_or(0);
                ThresholdRow {
                    component: k,
                    tw_k,
                    twist: Quantity::new(format!("8/{tw_k}"), 8.0 / tw_k.max(1) as f64),
                    blanket: Quantity::new("4", 4.0),
                    geometric: Quantity::new(format!("5.373 (1 - {chi}/{c})"), geometric_threshold(c, chi)),
                    volume: Quantity::new(format!("5.6267 (1 - {chi}/{c})"), VOLUME_Q * (1.0 - chi as f64 / c as f64)),
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    DehnSection {
        tilings,
        slope_lengths: slope_length_bounds(facts),
        geometric_threshold: geometric_filling_threshold(facts),
        filling: filling_certificate(facts, &slopes),
        slopes: slopes
            .iter()
            .map(|&s| SlopeSection {
                slope: s,
                combinatorial_length: combinatorial_length_bound(facts, s),
                filled_volume: filled_volume_bound(facts, s),
            })
            .collect(),
        thresholds,
    }
}

/// Run the requested analyses on a parsed document.
pub fn run_pipeline(doc: &Document, req: &Request) -> Report {
    let d = &doc.diagram;
    let facts = DiagramFacts::new(d, &doc.ambient);
    let mut errors = Vec::new();
    let dehn_section = req.wants(Analysis::Dehn).then(|| dehn(doc, &facts, req, &mut errors));
    Report {
        source: None,
        name: doc.name.clone(),
        diagram: Some(DiagramSummary {
            crossings: d.crossing_count(),
            link_components: d.strands().len(),
            surface_genera: d.surfaces().iter().map(|s| s.genus).collect(),
            surface_euler: d.euler_char(),
            regions: d.faces().len(),
        }),
        ambient: Some(ambient_summary(doc)),
        validation: req.wants(Analysis::Validate).then(|| validation(doc, &facts)),
        invariants: req.wants(Analysis::Invariants).then(|| invariants(doc, &facts)),
        chunks: req.wants(Analysis::Chunks).then(|| chunks(doc)),
        classification: req.wants(Analysis::Classify).then(|| classify(&facts)),
        dehn: dehn_section,
        errors,
    }
}

/// Parse SLD text and run the pipeline; parse failures become report errors.
pub fn run_text(text: &str, source: Option<String>, req: &Request) -> Report {
    match parse_document(text) {
        Ok(doc) => Report { source, ..run_pipeline(&doc, req) },
        Err(e) => Report::failed(source, e.to_string()),
    }
}

pub fn run_file(path: &Path, req: &Request) -> Report {
    let source = Some(path.display().to_string());
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(&text, source, req),
        Err(e) => Report::failed(source, format!("cannot read {}: {e}", path.display())),
    }
}

// Plain text rendering.

fn describe(c: &Conclusion) -> String {
    match c {
        Conclusion::WeaklyGeneralisedAlternating => "weakly generalised alternating".into(),
        Conclusion::AngledChunkDecomposition => "angled chunk decomposition".into(),
        Conclusion::Hyperbolic => "hyperbolic".into(),
        Conclusion::Satellite { companion } => format!("satellite; companion: {companion}"),
        Conclusion::Prime => "prime".into(),
        Conclusion::NotTorusKnot => "not a torus knot".into(),
        Conclusion::Quasifuchsian => "quasifuchsian".into(),
        Conclusion::NotAccidental => "not accidental".into(),
        Conclusion::NotSemiFiber => "not a semi-fiber".into(),
        Conclusion::GutsEuler { value } => format!("chi(guts) = {value}"),
        Conclusion::VolumeAtLeast { half_octahedra, value } => {
            format!("volume >= {half_octahedra} v8/2 = {value:.6}")
        }
        Conclusion::SlopeLengths { meridian_at_most, longitude_at_most } => {
            let dec = |s: &str| {
                let v: f64 = match s.split_once('/') {
                    Some((a, b)) => a.parse::<f64>().unwrap_or(f64::NAN) / b.parse::<f64>().unwrap_or(f64::NAN),
                    None => s.parse().unwrap_or(f64::NAN),
                };
                format!("{s} = {v:.6}")
            };
            format!("l(meridian) <= {}, l(longitude) <= {}", dec(meridian_at_most), dec(longitude_at_most))
        }
        Conclusion::FillingThreshold { q_above } => format!("hyperbolic filling for |q| > {q_above:.6}"),
        Conclusion::FilledVolumeAtLeast { factor, value } => {
            format!("filled volume >= {factor:.6} x bound = {value:.6}")
        }
        Conclusion::CombinatorialLength { quarter_pis, value } => {
            format!("combinatorial length >= {quarter_pis} pi/4 = {value:.6}")
        }
        Conclusion::HyperbolicFilling { description } => format!("hyperbolic: {description}"),
    }
}

fn cert(out: &mut String, label: &str, c: &Certificate) {
    match (c.conclusion(), c.refusal()) {
        (Some(k), _) => {
            let _ = writeln!(out, "  {label}: {}  [{}]", describe(k), c.result);
        }
        (None, Some(r)) => {
            let _ = writeln!(out, "  {label}: refused ({r})  [{}]", c.result);
        }
        (None, None) => {}
    }
    for h in c.hypotheses() {
        let status = match h.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Undeclared => "undeclared",
        };
        let prov = match h.provenance {
            Provenance::Computed => "computed",
            Provenance::Declared => "declared",
        };
        let detail = if h.detail.is_empty() { String::new() } else { format!(": {}", h.detail) };
        let _ = writeln!(out, "      {status:<10} {} ({prov}){detail}", h.name);
    }
    for n in &c.notes {
        let _ = writeln!(out, "      note: {n}");
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let title = r.name.clone().or(r.source.clone()).unwrap_or_else(|| "diagram".into());
    let _ = writeln!(out, "== {title}");
    for e in &r.errors {
        let _ = writeln!(out, "  error: {e}");
    }
    if let Some(d) = &r.diagram {
        let _ = writeln!(
            out,
            "  {} crossings, {} link components, surface genera {:?} (chi(F) = {}), {} regions",
            d.crossings, d.link_components, d.surface_genera, d.surface_euler, d.regions
        );
    }
    if let Some(a) = &r.ambient {
        let declared: Vec<String> = a
            .facts
            .iter()
            .filter(|f| f.provenance == Provenance::Declared)
            .map(|f| format!("{}={}", f.name, f.value.map_or("undeclared".to_string(), |v| v.to_string())))
            .collect();
        let _ = writeln!(out, "  ambient: {:?}", a.kind);
        if !declared.is_empty() {
            let _ = writeln!(out, "  declared facts: {}", declared.join(", "));
        }
        for rep in &a.declared_representativity {
            let _ = writeln!(out, "  declared representativity: minus {}, plus {}", rep.minus, rep.plus);
        }
        if let Some(k) = a.annulus_core_knotted {
            let _ = writeln!(out, "  declared annulus core knotted: {k}");
        }
    }
    if let Some(v) = &r.validation {
        let _ = writeln!(out, "validation");
        let _ = writeln!(out, "  alternating: {}", yes(v.alternation.alternating));
        let _ = writeln!(
            out,
            "  checkerboard colourable: {}{}",
            yes(v.colourable),
            v.colouring_error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
        );
        let _ = writeln!(
            out,
            "  weakly prime: {}{}",
            yes(v.weakly_prime.weakly_prime),
            v.weakly_prime.reason.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
        );
        let _ = writeln!(out, "  weakly twist-reduced: {}", yes(v.twist_reduced.twist_reduced));
        match (&v.representativity, &v.representativity_error) {
            (Some(rep), _) => {
                let bound = if rep.e_bound_only { " (lower bound)" } else { "" };
                let _ =
                    writeln!(out, "  r = {}, r-hat = {}, e = {}{bound} ({:?})", rep.r, rep.r_hat, rep.e, rep.method);
            }
            (None, Some(e)) => {
                let _ = writeln!(out, "  representativity: {e}");
            }
            _ => {}
        }
        cert(&mut out, "WGA", &v.wga);
    }
    if let Some(i) = &r.invariants {
        let _ = writeln!(out, "invariants");
        let _ = writeln!(out, "  tw = {} (per component {:?})", i.twist.tw, i.twist.tw_per_component);
        if let Some(c) = &i.twist.bigon_cycle {
            let _ = writeln!(out, "  closed bigon cycle through crossings {:?}", c.crossings);
        }
        if let Some(s) = &i.checkerboard {
            let _ = writeln!(
                out,
                "  chi(shaded) = {}, chi(white) = {}, r_S = {}, r_W = {}, i(boundaries) = {}",
                s.chi_shaded, s.chi_white, s.r_shaded, s.r_white, s.i_boundary
            );
        }
        if let Some(e) = &i.checkerboard_error {
            let _ = writeln!(out, "  checkerboard surfaces unavailable: {e}");
        }
        cert(&mut out, "guts (shaded)", &i.guts_shaded);
        cert(&mut out, "guts (white)", &i.guts_white);
        cert(&mut out, "volume", &i.volume);
    }
    if let Some(c) = &r.chunks {
        let _ = writeln!(out, "chunks");
        for e in &c.unavailable {
            let _ = writeln!(out, "  unavailable: {e}");
        }
        let summary = |out: &mut String, label: &str, s: &DecompositionSummary| {
            let _ = writeln!(
                out,
                "  {label}: {} chunks, {} interior + {} surface faces, {} boundary squares, {} edges in {} classes, {} parabolic edges",
                s.chunks, s.interior_faces, s.surface_faces, s.boundary_squares, s.edges, s.edge_classes, s.parabolic_edges
            );
            cert(out, "angle structure", &s.angled);
        };
        if let Some(s) = &c.decomposition {
            summary(&mut out, "decomposition", s);
        }
        for s in &c.bounded {
            let label = format!("bounded, {:?} unglued", s.unglued.unwrap_or(Colour::White));
            summary(&mut out, &label, s);
        }
    }
    if let Some(c) = &r.classification {
        let _ = writeln!(out, "classification");
        cert(&mut out, "geometry", &c.geometry);
        cert(&mut out, "prime", &c.prime);
        cert(&mut out, "torus knot", &c.not_torus_knot);
        for s in &c.surfaces {
            let _ = writeln!(out, "  {:?} surface: {:?}", s.colour, s.status);
            cert(&mut out, "quasifuchsian", &s.quasifuchsian);
            for a in &s.not_accidental {
                cert(&mut out, "accidental", a);
            }
            cert(&mut out, "semi-fiber", &s.not_semi_fiber);
            if let Some(alt) = &s.semi_fiber_alternative {
                let _ = writeln!(out, "    {alt}");
            }
        }
    }
    if let Some(dh) = &r.dehn {
        let _ = writeln!(out, "dehn filling");
        for t in &dh.tilings {
            let _ = writeln!(out, "  component {}: boundary tiling of {} squares", t.component, t.cr);
        }
        cert(&mut out, "slope lengths", &dh.slope_lengths);
        cert(&mut out, "geometric threshold", &dh.geometric_threshold);
        cert(&mut out, "all fillings", &dh.filling.all_nontrivial);
        for s in &dh.filling.slopes {
            let _ = writeln!(
                out,
                "  slope {} on component {}: {}",
                s.slope,
                s.slope.component,
                if s.hyperbolic { "hyperbolic filling certified" } else { "no certificate" }
            );
            cert(&mut out, "by twist number", &s.by_twist);
            cert(&mut out, "by |q| > 4", &s.by_large_q);
        }
        for s in &dh.slopes {
            cert(&mut out, &format!("slope {} length", s.slope), &s.combinatorial_length);
            cert(&mut out, &format!("slope {} volume", s.slope), &s.filled_volume);
        }
        for t in &dh.thresholds {
            let _ = writeln!(
                out,
                "  thresholds on component {} (tw = {}): |q| > {} = {}; |q| > {}; |q| > {} = {}; volume |q| > {} = {}",
                t.component,
                t.tw_k,
                t.twist.symbolic,
                t.twist.decimal,
                t.blanket.symbolic,
                t.geometric.symbolic,
                t.geometric.decimal,
                t.volume.symbolic,
                t.volume.decimal
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load, source};

    fn all() -> Request {
        Request {
            analyses: vec![Analysis::Validate, Analysis::Invariants, Analysis::Chunks, Analysis::Classify, Analysis::Dehn],
            slopes: vec!["1/5".into()],
            all_thresholds: true,
            ..Default::default()
        }
    }

    #[test]
    fn weave_invariants_report() {
        let r = run_pipeline(&load("weave4_t2"), &Request::only(Analysis::Invariants));
        assert!(r.ok());
        let i = r.invariants.as_ref().unwrap();
        assert_eq!(i.twist.tw, 4);
        assert_eq!(i.volume_bound.as_ref().unwrap().symbolic, "4 v8/2");
        assert_eq!(i.volume_bound.as_ref().unwrap().decimal, "7.327725");
    }

    #[test]
    fn weave_dehn_report() {
        let req = Request { component: Some(0), slopes: vec!["1/5".into()], ..Request::only(Analysis::Dehn) };
        let r = run_pipeline(&load("weave4_t2"), &req);
        let s = &r.dehn.as_ref().unwrap().filling.slopes[0];
        assert!(s.hyperbolic && s.by_large_q.granted());
    }

    #[test]
    fn json_is_stable() {
        for name in ["fig8_s2", "fig2_t2", "band9_t2"] {
            let r = run_pipeline(&load(name), &all());
            let text = r.to_json();
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            let again = serde_json::to_string_pretty(&v).unwrap();
            let v2: serde_json::Value = serde_json::from_str(&again).unwrap();
            assert_eq!(v, v2);
            assert!(!render_text(&r).is_empty());
        }
    }

    #[test]
    fn errors_and_refusals() {
        let r = run_text("{\"sld\": 1,", Some("broken.sld".into()), &all());
        assert!(!r.ok());
        assert!(r.errors[0].contains("line"));
        // refusals are not errors
        let r = run_text(source("trefoil_s2").unwrap(), None, &all());
        assert!(r.ok());
        assert!(!r.invariants.unwrap().volume.granted());
        let bad = Request { slopes: vec!["2/4".into()], ..Request::only(Analysis::Dehn) };
        assert!(!run_pipeline(&load("fig8_s2"), &bad).ok());
        let bad = Request { component: Some(3), ..Request::only(Analysis::Dehn) };
        assert!(!run_pipeline(&load("fig8_s2"), &bad).ok());
    }

    #[test]
    fn declared_facts_surface() {
        let r = run_pipeline(&load("band9_t2"), &Request::only(Analysis::Classify));
        let a = r.ambient.unwrap();
        assert!(a.facts.iter().any(|f| f.name == "in_s3" && f.provenance == Provenance::Declared && f.value == Some(true)));
        assert_eq!(a.declared_representativity.len(), 1);
        assert_eq!(a.annulus_core_knotted, Some(false));
    }
}
