//! Dehn filling: slope length bounds, filling thresholds, combinatorial
//! length and the boundary tiling of a knot.

mod tiling;

pub use tiling::{harlequin_tiling, is_skirting, HarlequinTiling, TileSquare, TilingError};

use crate::ambient::AmbientFact;
use crate::certificate::{Certificate, Conclusion, Hypothesis};
use crate::invariants::{volume_lower_bound, DiagramFacts};
use num_rational::Ratio;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Geometric filling threshold constant: |q| above this times (1 - chi/c).
pub const GEOMETRIC_Q: f64 = 5.373;
/// Threshold on |q| for the filled volume bound.
pub const VOLUME_Q: f64 = 5.6267;
/// Lower bound for the area of a maximal cusp.
pub const CUSP_AREA: f64 = 3.35;

/// A slope p/q on one link component, with mu the meridian and lambda the
/// shortest slope meeting it once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    pub component: usize,
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlopeError {
    #[error("slope must look like p/q, got {0:?}")]
    Syntax(String),
    #[error("slope {0}/{1} is not in lowest terms")]
    NotCoprime(i64, i64),
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Slope {
    pub fn new(component: usize, p: i64, q: i64) -> Result<Slope, SlopeError> {
        if gcd(p, q) != 1 {
            return Err(SlopeError::NotCoprime(p, q));
        }
        Ok(Slope { component, p, q })
    }

    /// Parse "p/q"; a bare integer p means p/1.
    pub fn parse(component: usize, s: &str) -> Result<Slope, SlopeError> {
        let bad = || SlopeError::Syntax(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Slope::new(component, p, q)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;
    fn from_str(s: &str) -> Result<Slope, SlopeError> {
        Slope::parse(0, s)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Upper bounds for the meridian and longitude lengths: 3 - 3 chi/c and
/// 3 (c - chi).
pub fn slope_length_values(c: i64, chi: i64) -> (Ratio<i64>, Ratio<i64>) {
    (Ratio::new(3 * c - 3 * chi, c), Ratio::from_integer(3 * (c - chi)))
}

/// |q| above this value guarantees a slope longer than 6.
pub fn geometric_threshold(c: i64, chi: i64) -> f64 {
    GEOMETRIC_Q * (1.0 - chi as f64 / c as f64)
}

/// Lower bound for the length of a slope with the given |q|.
pub fn slope_length_lower(c: i64, chi: i64, q: i64) -> f64 {
    CUSP_AREA * c as f64 * q.unsigned_abs() as f64 / (3.0 * (c - chi) as f64)
}

/// Volume ratio (1 - (2 pi / l)^2)^(3/2) for a slope of length at least
/// l > 2 pi; `None` when l <= 2 pi.
pub fn filled_volume_factor(c: i64, chi: i64, q: i64) -> Option<f64> {
    let l = slope_length_lower(c, chi, q);
    (l > 2.0 * PI).then(|| (1.0 - (2.0 * PI / l).powi(2)).powf(1.5))
}

/// Lower bound |q| tw_K pi/4 on combinatorial length, as a count of pi/4.
pub fn combinatorial_length(q: i64, tw_k: usize) -> (i64, f64) {
    let quarter_pis = q.abs() * tw_k as i64;
    (quarter_pis, quarter_pis as f64 * PI / 4.0)
}

fn fmt_ratio(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn component_hyp(f: &DiagramFacts, k: usize) -> Hypothesis {
    let n = f.diagram.strands().len();
    let ok = k < n && f.diagram.strands()[k].cr > 0;
    Hypothesis::computed("component exists and meets a crossing", ok, format!("component {k} of {n}"))
}

/// Hypotheses for the slope length bounds: a knot with a hyperbolic
/// complement in a closed Y.
fn slope_hyps(f: &DiagramFacts) -> Vec<Hypothesis> {
    let mut h = vec![
        f.wga_hyp(),
        f.knot_hyp(),
        f.fact_hyp(AmbientFact::Closed),
        f.genus_or_sphere_hyp(),
        f.disks_hyp(),
        f.r_hat_gt4_hyp(),
        f.fact_hyp(AmbientFact::Atoroidal),
        f.fact_hyp(AmbientFact::BoundaryAnannular),
    ];
    if f.sphere {
        h.push(f.no_bigon_cycle_hyp());
    }
    h
}

fn sphere_note(c: Certificate, f: &DiagramFacts) -> Certificate {
    if f.sphere {
        c.with_note("F is a sphere: the bounds are the classical 3 - 6/c and 3c - 6 for alternating knots")
    } else {
        c
    }
}

pub fn slope_length_bounds(f: &DiagramFacts) -> Certificate {
    let c = f.diagram.crossing_count() as i64;
    let chi = f.chi_f();
    let (mu, lambda) = if c > 0 { slope_length_values(c, chi) } else { (Ratio::from_integer(0), Ratio::from_integer(0)) };
    let cert = Certificate::new(
        "slope length bounds",
        "the meridian has length at most 3 - 3 chi(F)/c and the shortest longitude at most 3 (c - chi(F))",
        slope_hyps(f),
        Conclusion::SlopeLengths { meridian_at_most: fmt_ratio(mu), longitude_at_most: fmt_ratio(lambda) },
    );
    sphere_note(cert, f)
}

pub fn geometric_filling_threshold(f: &DiagramFacts) -> Certificate {
    let c = f.diagram.crossing_count() as i64;
    let q_above = if c > 0 { geometric_threshold(c, f.chi_f()) } else { f64::INFINITY };
    let cert = Certificate::new(
        "geometric filling threshold",
        "filling along p/q with |q| above 5.373 (1 - chi(F)/c) gives a hyperbolic manifold",
        slope_hyps(f),
        Conclusion::FillingThreshold { q_above },
    );
    sphere_note(cert, f)
}

pub fn filled_volume_bound(f: &DiagramFacts, slope: Slope) -> Certificate {
    let c = f.diagram.crossing_count().max(1) as i64;
    let chi = f.chi_f();
    let need = VOLUME_Q * (1.0 - chi as f64 / c as f64);
    let l = slope_length_lower(c, chi, slope.q);
    let factor = filled_volume_factor(c, chi, slope.q);
    let vol = volume_lower_bound(f);
    let base = match vol.conclusion() {
        Some(Conclusion::VolumeAtLeast { value, .. }) => *value,
        _ => 0.0,
    };
    let mut hyps = slope_hyps(f);
    hyps.push(component_hyp(f, slope.component));
    hyps.push(f.r_gt4_hyp());
    hyps.push(Hypothesis::computed(
        "|q| above the volume threshold",
        slope.q.abs() as f64 > need,
        format!("|q| = {}, need |q| > {:.6}", slope.q.abs(), need),
    ));
    hyps.push(Hypothesis::computed(
        "slope longer than 2 pi",
        factor.is_some(),
        format!("length at least {l:.6}, need more than {:.6}", 2.0 * PI),
    ));
    hyps.push(Hypothesis::computed("volume bound for the unfilled complement", vol.granted(), vol.refusal().unwrap_or_default()));
    let factor = factor.unwrap_or(0.0);
    Certificate::new(
        "volume after filling",
        "the filled manifold has volume at least (1 - (2 pi / l)^2)^(3/2) times the volume bound, with l the slope length lower bound",
        hyps,
        Conclusion::FilledVolumeAtLeast { factor, value: factor * base },
    )
    .with_note("factor computed from the slope length lower bound l = 3.35 c |q| / (3 (c - chi(F))); the closed form without |q| is negative when chi(F) <= 0 and is not used")
}

/// Hypotheses shared by the combinatorial results. The sphere is allowed:
/// there the statements are the classical ones for alternating links.
fn combinatorial_hyps(f: &DiagramFacts) -> Vec<Hypothesis> {
    let mut h = vec![
        f.wga_hyp(),
        f.twist_reduced_hyp(),
        f.fact_hyp(AmbientFact::Atoroidal),
        f.fact_hyp(AmbientFact::BoundaryAnannular),
        f.genus_or_sphere_hyp(),
        f.disks_hyp(),
        f.r_gt4_hyp(),
    ];
    if f.sphere {
        h.push(f.no_bigon_cycle_hyp());
    }
    h
}

fn tw_of(f: &DiagramFacts, k: usize) -> usize {
    f.twist.tw_per_component.get(k).copied().unwrap_or(0)
}

pub fn combinatorial_length_bound(f: &DiagramFacts, slope: Slope) -> Certificate {
    let tw_k = tw_of(f, slope.component);
    let (quarter_pis, value) = combinatorial_length(slope.q, tw_k);
    let mut hyps = combinatorial_hyps(f);
    hyps.push(component_hyp(f, slope.component));
    hyps.push(Hypothesis::computed("q != 0", slope.q != 0, "q = 0 is the trivial filling"));
    Certificate::new(
        "combinatorial length",
        "the combinatorial length of p/q on K is at least |q| tw(K) pi/4",
        hyps,
        Conclusion::CombinatorialLength { quarter_pis, value },
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeFilling {
    pub slope: Slope,
    pub tw_k: usize,
    /// |q| > 8 / tw(K).
    pub by_twist: Certificate,
    /// |q| > 4.
    pub by_large_q: Certificate,
    /// Any one certificate suffices.
    pub hyperbolic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FillingReport {
    pub slopes: Vec<SlopeFilling>,
    /// A knot on a surface of genus at least 5: every q != 0 works.
    pub all_nontrivial: Certificate,
}

fn filling(description: String) -> Conclusion {
    Conclusion::HyperbolicFilling { description }
}

pub fn filling_certificate(f: &DiagramFacts, slopes: &[Slope]) -> FillingReport {
    let min_genus = f.diagram.surfaces().iter().map(|s| s.genus).min().unwrap_or(0);
    let mut genus_hyps: Vec<Hypothesis> = combinatorial_hyps(f)
        .into_iter()
        .filter(|h| h.name != "F is a sphere in the 3-sphere" && h.name != "no closed bigon cycle")
        .collect();
    genus_hyps.push(f.knot_hyp());
    genus_hyps.push(Hypothesis::computed("F has genus >= 5", min_genus >= 5, format!("genus {min_genus}")));
    let all_nontrivial = Certificate::new(
        "fillings of a knot on a high genus surface",
        "a knot on a surface of genus at least 5 has at least 10 twist regions, so every filling with q != 0 is hyperbolic",
        genus_hyps,
        filling("every filling with q != 0".into()),
    );
    let slopes = slopes
        .iter()
        .map(|&s| {
            let tw_k = tw_of(f, s.component);
            let mut base = combinatorial_hyps(f);
            base.push(component_hyp(f, s.component));
            base.push(Hypothesis::computed("q != 0", s.q != 0, "q = 0 is the trivial filling; no claim"));
            let mut tw_h = base.clone();
            let bound = if tw_k > 0 { 8.0 / tw_k as f64 } else { f64::INFINITY };
            tw_h.push(Hypothesis::computed(
                "|q| > 8 / tw(K)",
                (s.q.abs() as f64) > bound,
                format!("|q| = {}, 8/tw(K) = 8/{tw_k}", s.q.abs()),
            ));
            let by_twist = Certificate::new(
                "filling by twist number",
                "filling K along p/q with |q| > 8/tw(K) gives a hyperbolic manifold",
                tw_h,
                filling(format!("filling component {} along {s}", s.component)),
            );
            let mut q_h = base;
            q_h.push(Hypothesis::computed("|q| > 4", s.q.abs() > 4, format!("|q| = {}", s.q.abs())));
            let by_large_q = Certificate::new(
                "filling with |q| > 4",
                "every component meets at least two twist regions, so |q| > 4 suffices",
                q_h,
                filling(format!("filling component {} along {s}", s.component)),
            );
            let hyperbolic = by_twist.granted() || by_large_q.granted() || (all_nontrivial.granted() && s.q != 0);
            SlopeFilling { slope: s, tw_k, by_twist, by_large_q, hyperbolic }
        })
        .collect();
    FillingReport { slopes, all_nontrivial }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;

    #[test]
    fn parse_slopes() {
        assert_eq!("1/5".parse::<Slope>().unwrap(), Slope { component: 0, p: 1, q: 5 });
        assert_eq!("-3".parse::<Slope>().unwrap(), Slope { component: 0, p: -3, q: 1 });
        assert_eq!("1/0".parse::<Slope>().unwrap().q, 0);
        assert_eq!("2/4".parse::<Slope>(), Err(SlopeError::NotCoprime(2, 4)));
        assert!("x/2".parse::<Slope>().is_err());
    }

    #[test]
    fn length_values() {
        let r = |n, d| Ratio::new(n, d);
        assert_eq!(slope_length_values(4, 2), (r(3, 2), r(6, 1)));
        assert_eq!(slope_length_values(4, 0), (r(3, 1), r(12, 1)));
        assert_eq!(slope_length_values(11, 0), (r(3, 1), r(33, 1)));
        assert!((geometric_threshold(4, 2) - 2.6865).abs() < 1e-12);
        assert!((geometric_threshold(3, 2) - 1.791).abs() < 1e-12);
        assert!((slope_length_lower(4, 0, 6) - 6.70).abs() < 1e-12);
        let fac = filled_volume_factor(4, 0, 6).unwrap();
        assert!((fac - 0.041857).abs() < 1e-5, "{fac}");
        assert!(filled_volume_factor(4, 0, 3).is_none());
        assert!(filled_volume_factor(4, 0, 1_000_000).unwrap() > 0.999_999);
        assert_eq!(combinatorial_length(1, 10).0, 10);
        assert_eq!(combinatorial_length(-2, 2).0, 4);
        assert!((combinatorial_length(4, 3).1 - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn fig8_certificates() {
        let doc = load("fig8_s2");
        let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
        let c = slope_length_bounds(&f);
        assert_eq!(
            c.conclusion(),
            Some(&Conclusion::SlopeLengths { meridian_at_most: "3/2".into(), longitude_at_most: "6".into() }),
            "{:?}",
            c.refusal()
        );
        assert!(!c.notes.is_empty());
        match geometric_filling_threshold(&f).conclusion() {
            Some(Conclusion::FillingThreshold { q_above }) => assert!((q_above - 2.6865).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let r = filling_certificate(&f, &[Slope::new(0, 1, 5).unwrap(), Slope::new(0, 1, 0).unwrap()]);
        assert!(r.slopes[0].hyperbolic && r.slopes[0].by_large_q.granted());
        assert!(!r.slopes[1].hyperbolic);
        assert!(!r.all_nontrivial.granted());
    }

    #[test]
    fn weave_fillings() {
        let doc = load("weave4_t2");
        let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
        // Y = T^2 x I is not closed: no slope length statement
        assert_eq!(slope_length_bounds(&f).first_failure().unwrap().name, "L is a knot");
        let r = filling_certificate(&f, &[Slope::new(0, 1, 5).unwrap(), Slope::new(0, 1, 2).unwrap()]);
        assert!(r.slopes[0].by_large_q.granted());
        assert_eq!(r.slopes[1].tw_k, 4);
        // 2 > 8/4 fails, so |q| = 2 is not certified
        assert!(!r.slopes[1].hyperbolic);
        let r = filling_certificate(&f, &[Slope::new(0, 1, 3).unwrap()]);
        assert!(r.slopes[0].by_twist.granted());
        let c = combinatorial_length_bound(&f, Slope::new(1, 1, 2).unwrap());
        assert_eq!(c.conclusion(), Some(&Conclusion::CombinatorialLength { quarter_pis: 8, value: 2.0 * PI }));
    }

    #[test]
    fn high_genus_knot_has_no_exceptional_fillings() {
        let doc = load("genus5_knot");
        let f = DiagramFacts::new(&doc.diagram, &doc.ambient);
        assert_eq!(f.twist.tw, 10);
        let r = filling_certificate(&f, &[Slope::new(0, 7, 1).unwrap(), Slope::new(0, 1, 0).unwrap()]);
        assert!(r.all_nontrivial.granted(), "{:?}", r.all_nontrivial.refusal());
        assert!(r.slopes[0].hyperbolic && !r.slopes[1].hyperbolic);
        // 1 > 8/10 already
        assert!(r.slopes[0].by_twist.granted());
    }
}
