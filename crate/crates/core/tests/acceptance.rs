//! Acceptance criteria. Each check prints one PASS or FAIL line; the test
//! fails if any check fails.

mod common;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use wga_core::ambient::{AmbientFlags, AmbientKind, DeclaredRep, RepValue};
use wga_core::certificate::{Certificate, Conclusion, Status};
use wga_core::chunks::{
    build_bounded_decomposition, build_chunk_decomposition, combinatorial_area, enumerate_normal_disks,
    gauss_bonnet_check, vertex_linking_squares, Angle, MINUS, PLUS,
};
use wga_core::dehn::{
    combinatorial_length_bound, filled_volume_bound, filling_certificate, geometric_filling_threshold,
    slope_length_bounds, slope_length_values, Slope,
};
use wga_core::fixtures::{load, NAMES};
use wga_core::invariants::{
    checkerboard_stats, classify_geometry, guts_euler, not_torus_knot, primeness, surface_geometry,
    volume_lower_bound, DiagramFacts, V8,
};
use wga_core::validation::{checkerboard_colouring, is_alternating, is_weakly_prime, wga_certificate, Colour};
use wga_core::ambient::{edge_representativity, representativity};
use wga_core::AmbientContext;

// Tolerances.
const VOLUME_MATCH: f64 = 1e-3;
const FLOAT_EQ: f64 = 1e-9;
/// Census volumes are quoted to nine decimal places.
const CENSUS_ROUNDING: f64 = 1e-9;
const EULER_SUITE_BUDGET: Duration = Duration::from_secs(10);

/// Hyperbolic volume of the Borromean rings complement (census value, as
/// usually quoted to nine places; the true value is 2 v8 = 7.3277247534...).
const BORROMEAN_VOLUME: f64 = 7.327724753;
/// Volume of the 4-crossing square weave complement in T^2 x I: four regular
/// ideal octahedra (external hyperbolic structure computation).
const WEAVE4_VOLUME: f64 = 4.0 * 3.66386237670887;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1_euler_identities() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE1);
    let mut by_genus = [0usize; 3];
    let mut all_bigons = 0;
    for i in 0..1000 {
        let d = common::random_diagram(&mut rng, 12, 2);
        let s = checkerboard_stats(&d).map_err(|e| format!("diagram {i}: {e}"))?;
        let chi = d.euler_char();
        let c = d.crossing_count() as i64;
        ensure(s.sum_identity, format!("diagram {i}: chi_S + chi_W identity"))?;
        match s.twist_identity {
            Some(ok) => ensure(ok, format!("diagram {i}: twist identity"))?,
            None => all_bigons += 1,
        }
        ensure(s.chi_shaded + s.chi_white == chi - c, format!("diagram {i}: chi sum"))?;
        by_genus[d.surfaces()[0].genus as usize] += 1;
    }
    let t = start.elapsed();
    ensure(t < EULER_SUITE_BUDGET, format!("took {t:?}"))?;
    ensure(by_genus.iter().all(|&n| n > 0), format!("genus spread {by_genus:?}"))?;
    Ok(format!("1000 diagrams (genus 0/1/2: {by_genus:?}, {all_bigons} all-bigon Hopf diagrams skip the twist identity) in {t:?}"))
}

fn criterion_2_chunk_invariants() -> Check {
    let two_pi = Angle::from_integer(2);
    let pi = Angle::from_integer(1);
    let mut checked = 0;
    for name in NAMES {
        let doc = load(name);
        let Ok(cd) = build_chunk_decomposition(&doc.diagram, &doc.ambient) else { continue };
        checked += 1;
        ensure(cd.classes.iter().all(|c| c.members.len() == 4), format!("{name}: class size"))?;
        ensure(cd.boundary_faces.iter().all(|b| b.corner_faces.len() == 4 && b.edges.len() == 4), format!("{name}: squares"))?;
        ensure(cd.classes.iter().all(|c| c.angle_sum == two_pi), format!("{name}: interior sums"))?;
        if checkerboard_colouring(&doc.diagram).is_err() {
            continue;
        }
        for colour in [Colour::Shaded, Colour::White] {
            let b = build_bounded_decomposition(&doc.diagram, &doc.ambient, colour).map_err(|e| format!("{name}: {e}"))?;
            for c in &b.classes {
                let want = if c.surface { pi } else { two_pi };
                ensure(c.angle_sum == want, format!("{name} {colour:?}: class {} sums to {}", c.id, c.angle_sum))?;
                ensure(c.members.len() == if c.surface { 2 } else { 4 }, format!("{name}: bounded class size"))?;
            }
            ensure(b.classes.iter().any(|c| c.surface), format!("{name}: no surface edges"))?;
        }
    }
    ensure(checked >= NAMES.len() - 1, format!("only {checked} fixtures decomposed"))?;
    Ok(format!("{checked} fixtures: classes of 4 summing to 2pi, square boundary faces, surface classes sum to pi"))
}

fn criterion_3_gauss_bonnet() -> Check {
    let doc = load("fig8_s2");
    let cd = build_chunk_decomposition(&doc.diagram, &doc.ambient).map_err(|e| e.to_string())?;
    let (pieces, gluings) = vertex_linking_squares(&cd);
    let gb = gauss_bonnet_check(&cd, &pieces, &gluings, 0).map_err(|e| e.to_string())?;
    ensure(gb.holds && gb.total_area == Angle::from_integer(0) && gb.euler_char == 0, format!("{gb:?}"))?;
    let mut total = 0;
    for name in ["fig8_s2", "borromean_s2", "weave4_t2"] {
        let doc = load(name);
        let cd = build_chunk_decomposition(&doc.diagram, &doc.ambient).map_err(|e| e.to_string())?;
        for chunk in [MINUS, PLUS] {
            for p in enumerate_normal_disks(&cd, chunk, 8) {
                let a = combinatorial_area(&cd, &p).map_err(|e| format!("{name}: {e}"))?;
                ensure(a >= Angle::from_integer(0), format!("{name}: area {a} pi"))?;
                // exact in units of pi/2
                ensure((a * 2).is_integer(), format!("{name}: area {a} not a multiple of pi/2"))?;
                total += 1;
            }
        }
    }
    ensure(total > 0, "no normal disks enumerated")?;
    Ok(format!("fig8 boundary tori area 0 = -2 pi chi(T^2); {total} normal disks of length <= 8 all have area >= 0"))
}

fn volume_of(c: &Certificate) -> Option<(i64, f64)> {
    match c.conclusion() {
        Some(Conclusion::VolumeAtLeast { half_octahedra, value }) => Some((*half_octahedra, *value)),
        _ => None,
    }
}

fn criterion_4_volume_bounds() -> Check {
    let doc = load("borromean_s2");
    let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
    let (_, b) = volume_of(&volume_lower_bound(&f)).ok_or("borromean refused")?;
    ensure(b <= BORROMEAN_VOLUME + CENSUS_ROUNDING && (b - BORROMEAN_VOLUME).abs() < VOLUME_MATCH, format!("borromean bound {b}"))?;

    let doc = load("weave4_t2");
    let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
    let (h, w) = volume_of(&volume_lower_bound(&f)).ok_or("weave refused")?;
    ensure(h == 4 && (w - 2.0 * V8).abs() < FLOAT_EQ && w <= WEAVE4_VOLUME, format!("weave bound {w}"))?;

    let doc = load("heegaard11_t2");
    let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
    let c = volume_lower_bound(&f);
    let reason = c.refusal().unwrap_or_default();
    ensure(reason.contains("r = 4, need r > 4"), format!("heegaard11: {reason:?}"))?;
    ensure(f.twist.tw == 10 && doc.diagram.crossing_count() == 11, "heegaard11: tw/c")?;
    Ok(format!("borromean {b:.6} vs {BORROMEAN_VOLUME}; weave {w:.6} <= {WEAVE4_VOLUME:.6}; heegaard11 refused ({reason})"))
}

fn criterion_5_sphere_slope_lengths() -> Check {
    for c in 3..=50i64 {
        let (mu, lambda) = slope_length_values(c, 2);
        ensure(mu == Ratio::from_integer(3) - Ratio::new(6, c), format!("c = {c}: meridian {mu}"))?;
        ensure(lambda == Ratio::from_integer(3 * c - 6), format!("c = {c}: longitude {lambda}"))?;
    }
    Ok("3 - 6/c and 3c - 6 exactly for 3 <= c <= 50".into())
}

fn base_filling_hyps_pass(c: &Certificate) -> bool {
    c.hypotheses().iter().filter(|h| h.name != "F has genus >= 5" && h.name != "L is a knot").all(|h| h.passed())
}

fn criterion_6_filling() -> Check {
    let doc = load("fig8_s2");
    let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
    let q_above = match geometric_filling_threshold(&f).conclusion() {
        Some(Conclusion::FillingThreshold { q_above }) => *q_above,
        _ => return Err("fig8 threshold refused".into()),
    };
    ensure((q_above - 2.6865).abs() < FLOAT_EQ, format!("threshold {q_above}"))?;
    for q in 3..=40i64 {
        ensure(q as f64 > q_above, format!("|q| = {q} not above threshold"))?;
    }

    // monotone in |q|: over fixtures that pass the hypotheses and a grid of q
    let mut grid = 0;
    for name in NAMES {
        let doc = load(name);
        let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
        for k in 0..doc.diagram.strands().len() {
            let slopes: Vec<Slope> = (1..=12).map(|q| Slope::new(k, 1, q).unwrap()).collect();
            let r = filling_certificate(&f, &slopes);
            for w in r.slopes.windows(2) {
                grid += 1;
                ensure(!w[0].hyperbolic || w[1].hyperbolic, format!("{name}: q = {} certified, q = {} not", w[0].slope.q, w[1].slope.q))?;
            }
        }
    }
    for tw in 1..=12usize {
        for q in 1..=12i64 {
            let pass = |q: i64| q as f64 > 8.0 / tw as f64;
            ensure(!pass(q) || pass(q + 1), format!("tw {tw}, q {q}"))?;
        }
    }

    // the genus rule fires exactly for knots on genus >= 5 with the other hypotheses
    let mut cases = Vec::new();
    for name in NAMES {
        let doc = load(name);
        cases.push((name.to_string(), doc.diagram.clone(), doc.ambient.clone()));
    }
    let g5 = load("genus5_knot");
    let mut toroidal = AmbientContext {
        flags: AmbientFlags { atoroidal: Some(false), boundary_anannular: Some(true), ..Default::default() },
        declared_representativity: vec![DeclaredRep { surface: None, minus: RepValue::Infinite, plus: RepValue::Infinite, note: None }],
        ..Default::default()
    };
    cases.push(("genus5 toroidal".into(), g5.diagram.clone(), toroidal.clone()));
    toroidal.flags.atoroidal = Some(true);
    cases.push(("genus5 declared".into(), g5.diagram.clone(), toroidal));
    let mut fired = Vec::new();
    for (name, d, ctx) in &cases {
        let f = DiagramFacts::new(d, ctx);
        let c = filling_certificate(&f, &[]).all_nontrivial;
        let genus = d.surfaces().iter().map(|s| s.genus).min().unwrap_or(0);
        let expected = f.knot && genus >= 5 && base_filling_hyps_pass(&c);
        ensure(c.granted() == expected, format!("{name}: granted {} expected {expected}", c.granted()))?;
        if c.granted() {
            fired.push(name.clone());
        }
    }
    ensure(fired.len() == 2, format!("fired on {fired:?}"))?;
    Ok(format!("fig8 threshold {q_above}; |q| >= 3 certified; {grid} monotone steps; genus rule fired on {fired:?}"))
}

fn criterion_7_validation() -> Check {
    let doc = load("fig2_t2");
    let d = &doc.diagram;
    ensure(is_alternating(d).alternating, "fig2 alternating")?;
    ensure(checkerboard_colouring(d).is_err(), "fig2 colourable")?;
    let e = edge_representativity(d, &doc.ambient).value;
    ensure(e == RepValue::Finite(0), format!("fig2 e = {e}"))?;

    let p = is_weakly_prime(&load("sum_trefoils_s2").diagram);
    ensure(!p.weakly_prime && p.witness.is_some(), "sum_trefoils weakly prime or no witness")?;
    ensure(!is_weakly_prime(&load("kink_s2").diagram).weakly_prime, "kink weakly prime")?;

    let doc = load("weave4_t2");
    ensure(doc.ambient.kind == AmbientKind::ThickenedSurface, "weave ambient")?;
    let c = wga_certificate(&doc.diagram, &doc.ambient);
    let r = representativity(&doc.diagram, &doc.ambient).map_err(|e| e.to_string())?.r;
    ensure(c.granted() && r == RepValue::Infinite, format!("weave: {:?}, r = {r}", c.refusal()))?;
    Ok("fig2 alternating, not colourable, e = 0; sum_trefoils and kink not weakly prime; weave WGA with r = inf".into())
}

fn criterion_8_classification() -> Check {
    let is_sat = |c: &Certificate| matches!(c.conclusion(), Some(Conclusion::Satellite { .. }));
    let is_hyp = |c: &Certificate| c.conclusion() == Some(&Conclusion::Hyperbolic);

    let h11 = load("heegaard11_t2");
    let mut not_heegaard = AmbientContext {
        kind: AmbientKind::Declared,
        flags: AmbientFlags { in_s3: Some(true), ..Default::default() },
        heegaard: Some(false),
        compressing_slopes: h11.ambient.compressing_slopes,
        ..Default::default()
    };
    let c = classify_geometry(&DiagramFacts::new(&h11.diagram, &not_heegaard));
    ensure(is_sat(&c), format!("non-Heegaard: {:?}", c.refusal()))?;
    not_heegaard.heegaard = Some(true);
    let c = classify_geometry(&DiagramFacts::new(&h11.diagram, &not_heegaard));
    ensure(is_hyp(&c), format!("Heegaard, disks: {:?}", c.refusal()))?;

    let band = load("band9_t2");
    let mut ctx = band.ambient.clone();
    ctx.annulus_core_knotted = Some(true);
    let c = classify_geometry(&DiagramFacts::new(&band.diagram, &ctx));
    ensure(is_sat(&c), format!("knotted core: {:?}", c.refusal()))?;
    ctx.annulus_core_knotted = Some(false);
    let c = classify_geometry(&DiagramFacts::new(&band.diagram, &ctx));
    ensure(is_hyp(&c), format!("unknotted core: {:?}", c.refusal()))?;

    let weave = load("weave4_t2");
    let c = classify_geometry(&DiagramFacts::new(&weave.diagram, &weave.ambient));
    ensure(is_hyp(&c), "weave not hyperbolic")?;

    let tre = load("trefoil_s2");
    let f = DiagramFacts::new(&tre.diagram, &tre.ambient);
    let witness = f.twist.bigon_cycle.as_ref().ok_or("trefoil has no bigon cycle")?;
    let s = Slope::new(0, 1, 5).unwrap();
    let tw_certs = [volume_lower_bound(&f), combinatorial_length_bound(&f, s), filling_certificate(&f, &[s]).slopes[0].by_twist.clone()];
    for c in &tw_certs {
        let h = c.first_failure().ok_or("trefoil certificate granted")?;
        ensure(h.name == "no closed bigon cycle" && h.detail.contains("bigon cycle"), format!("trefoil: {}", h.name))?;
    }
    Ok(format!(
        "torus table: non-Heegaard satellite, knotted core satellite, unknotted core hyperbolic, disks hyperbolic; weave hyperbolic; trefoil refused (cycle through {:?})",
        witness.crossings
    ))
}

fn sound(c: &Certificate) -> bool {
    let all_pass = c.hypotheses().iter().all(|h| h.status == Status::Pass);
    c.granted() == all_pass && (c.granted() || c.refusal().is_some())
}

fn criterion_fuzz_certificates() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF022);
    let mut certs = 0;
    let mut granted = 0;
    for round in 0..300 {
        let name = NAMES[rng.gen_range(0..NAMES.len())];
        let doc = load(name);
        let ctx = common::random_ctx(&mut rng);
        let f = DiagramFacts::new(&doc.diagram, &ctx);
        let s = Slope::new(0, 1, rng.gen_range(-7..=7)).unwrap_or(Slope { component: 0, p: 1, q: 1 });
        let mut all = vec![
            f.wga.clone(),
            guts_euler(&f, Colour::Shaded),
            guts_euler(&f, Colour::White),
            volume_lower_bound(&f),
            classify_geometry(&f),
            not_torus_knot(&f),
            primeness(&f),
            slope_length_bounds(&f),
            geometric_filling_threshold(&f),
            filled_volume_bound(&f, s),
            combinatorial_length_bound(&f, s),
        ];
        for colour in [Colour::Shaded, Colour::White] {
            let g = surface_geometry(&f, colour);
            all.push(g.quasifuchsian);
            all.extend(g.not_accidental);
            all.push(g.not_semi_fiber);
        }
        let r = filling_certificate(&f, &[s]);
        all.push(r.all_nontrivial);
        for sf in r.slopes {
            all.push(sf.by_twist);
            all.push(sf.by_large_q);
        }
        for c in &all {
            certs += 1;
            granted += c.granted() as usize;
            ensure(sound(c), format!("round {round} ({name}, {ctx:?}): {} unsound", c.result))?;
        }
    }
    ensure(granted > 0 && granted < certs, format!("degenerate fuzz: {granted}/{certs}"))?;
    Ok(format!("{certs} certificates over random ctx flags, {granted} granted, none with a failed or undeclared hypothesis"))
}

#[test]
fn acceptance() {
    let checks: [Criterion; 9] = [
        ("1 euler identities", criterion_1_euler_identities),
        ("2 chunk invariants", criterion_2_chunk_invariants),
        ("3 gauss-bonnet", criterion_3_gauss_bonnet),
        ("4 volume bounds", criterion_4_volume_bounds),
        ("5 slope-length reduction", criterion_5_sphere_slope_lengths),
        ("6 filling certificates", criterion_6_filling),
        ("7 validation fixtures", criterion_7_validation),
        ("8 classification", criterion_8_classification),
        ("fuzz certificate contract", criterion_fuzz_certificates),
    ];
    let mut failed = Vec::new();
    for (label, check) in checks {
        match check() {
            Ok(msg) => println!("PASS criterion {label}: {msg}"),
            Err(msg) => {
                println!("FAIL criterion {label}: {msg}");
                failed.push(label);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
