//! Diagrams shipped with the crate, embedded at compile time.

use crate::io::sld::{parse_document, Document};

pub const NAMES: &[&str] = &[
    "fig8_s2",
    "trefoil_s2",
    "borromean_s2",
    "sum_trefoils_s2",
    "kink_s2",
    "weave4_t2",
    "fig2_t2",
    "flype_s2",
    "heegaard11_t2",
    "band9_t2",
    "genus5_knot",
];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig8_s2" => include_str!("../fixtures/fig8_s2.sld"),
        "trefoil_s2" => include_str!("../fixtures/trefoil_s2.sld"),
        "borromean_s2" => include_str!("../fixtures/borromean_s2.sld"),
        "sum_trefoils_s2" => include_str!("../fixtures/sum_trefoils_s2.sld"),
        "kink_s2" => include_str!("../fixtures/kink_s2.sld"),
        "weave4_t2" => include_str!("../fixtures/weave4_t2.sld"),
        "fig2_t2" => include_str!("../fixtures/fig2_t2.sld"),
        "flype_s2" => include_str!("../fixtures/flype_s2.sld"),
        "heegaard11_t2" => include_str!("../fixtures/heegaard11_t2.sld"),
        "band9_t2" => include_str!("../fixtures/band9_t2.sld"),
        "genus5_knot" => include_str!("../fixtures/genus5_knot.sld"),
        _ => return None,
    })
}

/// Parse a shipped fixture. Panics on an unknown name or a broken fixture.
pub fn load(name: &str) -> Document {
    let text = source(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    parse_document(text).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(name: &str) -> Vec<usize> {
        let d = load(name).diagram;
        let mut v: Vec<usize> = d.faces().faces.iter().map(|f| f.degree).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn every_fixture_parses() {
        for n in NAMES {
            let doc = load(n);
            assert_eq!(doc.name.as_deref(), Some(*n));
        }
    }

    #[test]
    fn face_censuses() {
        assert_eq!(degrees("fig8_s2"), vec![2, 2, 3, 3, 3, 3]);
        assert_eq!(degrees("trefoil_s2"), vec![2, 2, 2, 3, 3]);
        assert_eq!(degrees("borromean_s2"), vec![3; 8]);
        assert_eq!(degrees("weave4_t2"), vec![4; 4]);
        assert_eq!(degrees("kink_s2"), vec![1, 1, 2]);
    }
}
