//! SLD ("surface link diagram") documents: UTF-8 JSON, schema version 1.
//!
//! ```json
//! { "sld": 1,
//!   "surfaces": [{"id": 0, "genus": 1}],
//!   "crossings": [{"id": 0, "surface": 0, "over_pair": "02"}],
//!   "edges": [[[0, 0], [0, 2], [1, 0]], [[0, 1], [0, 3], [0, 1]]],
//!   "ambient": {"kind": "thickened_surface"} }
//! ```
//!
//! An edge is two `[crossing id, port]` ends, optionally followed by its
//! translation `[i, j]` on a torus. `regions` groups boundary cycles into a
//! non-disk region; a cycle is named by a `[crossing, port]` dart on it (the
//! region lies to the right of the edge leaving that port). `free_loops` lists
//! link components that meet no crossing.

use crate::ambient::AmbientContext;
use crate::diagram::{crossing_of, dart, port_of, Crossing, DiagramEdge, DiagramError, DiagramParts, OverPair, RegionSpec, SurfaceDiagram};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

pub const SLD_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub id: i64,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingSpec {
    pub id: i64,
    pub surface: i64,
    pub over_pair: OverPair,
}

pub type PortRef = (i64, u8);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeSpec {
    Plain((PortRef, PortRef)),
    Shifted((PortRef, PortRef, [i64; 2])),
}

impl EdgeSpec {
    fn ends(&self) -> (PortRef, PortRef) {
        match self {
            EdgeSpec::Plain((a, b)) | EdgeSpec::Shifted((a, b, _)) => (*a, *b),
        }
    }
    fn shift(&self) -> Option<[i64; 2]> {
        match self {
            EdgeSpec::Plain(_) => None,
            EdgeSpec::Shifted((_, _, s)) => Some(*s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDoc {
    pub boundaries: Vec<PortRef>,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeLoopDoc {
    pub surface: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SldDocument {
    pub sld: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub surfaces: Vec<SurfaceSpec>,
    pub crossings: Vec<CrossingSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free_loops: Vec<FreeLoopDoc>,
    #[serde(default)]
    pub ambient: AmbientContext,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, serde_json::Value>,
}

/// A parsed document: the diagram plus its ambient context and metadata.
#[derive(Clone, Debug)]
pub struct Document {
    pub name: Option<String>,
    pub note: Option<String>,
    pub diagram: SurfaceDiagram,
    pub ambient: AmbientContext,
    pub labels: BTreeMap<String, serde_json::Value>,
}

fn syntax(e: serde_json::Error) -> DiagramError {
    DiagramError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn parse_document(text: &str) -> Result<Document, DiagramError> {
    let raw: SldDocument = serde_json::from_str(text).map_err(syntax)?;
    from_sld(raw)
}

/// Parse only the diagram part of an SLD document.
pub fn parse_diagram(text: &str) -> Result<SurfaceDiagram, DiagramError> {
    parse_document(text).map(|d| d.diagram)
}

pub fn from_sld(raw: SldDocument) -> Result<Document, DiagramError> {
    if raw.sld != SLD_VERSION {
        return Err(DiagramError::Version(raw.sld));
    }
    let mut surf_index = HashMap::new();
    for (i, s) in raw.surfaces.iter().enumerate() {
        if surf_index.insert(s.id, i).is_some() {
            return Err(DiagramError::DuplicateSurface(s.id));
        }
    }
    let mut cross_index = HashMap::new();
    let mut crossings = Vec::with_capacity(raw.crossings.len());
    for (i, c) in raw.crossings.iter().enumerate() {
        if cross_index.insert(c.id, i).is_some() {
            return Err(DiagramError::DuplicateCrossing(c.id));
        }
        let surface = *surf_index
            .get(&c.surface)
            .ok_or(DiagramError::UnknownSurface { crossing: c.id, surface: c.surface })?;
        crossings.push(Crossing { id: c.id, surface, over_pair: c.over_pair });
    }
    let resolve = |edge: usize, (cid, port): PortRef| -> Result<usize, DiagramError> {
        let x = *cross_index.get(&cid).ok_or(DiagramError::UnknownCrossing { edge, crossing: cid })?;
        if port > 3 {
            return Err(DiagramError::BadPort { edge, crossing: cid, port });
        }
        Ok(dart(x, port))
    };
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (i, e) in raw.edges.iter().enumerate() {
        let (a, b) = e.ends();
        edges.push(DiagramEdge { ends: [resolve(i, a)?, resolve(i, b)?], shift: e.shift() });
    }
    let mut regions = Vec::new();
    for (r, reg) in raw.regions.iter().enumerate() {
        let mut boundaries = Vec::new();
        for &p in &reg.boundaries {
            boundaries.push(resolve(usize::MAX, p).map_err(|_| DiagramError::BadRegion {
                region: r,
                message: format!("unknown dart [{}, {}]", p.0, p.1),
            })?);
        }
        regions.push(RegionSpec { boundaries, genus: reg.genus });
    }
    let mut free_loops = Vec::new();
    for l in &raw.free_loops {
        free_loops.push(*surf_index.get(&l.surface).ok_or(DiagramError::BadFreeLoop(l.surface))?);
    }
    let diagram = SurfaceDiagram::new(DiagramParts {
        surfaces: raw.surfaces.iter().map(|s| (s.id, s.genus)).collect(),
        crossings,
        edges,
        regions,
        free_loops,
    })?;
    Ok(Document { name: raw.name, note: raw.note, diagram, ambient: raw.ambient, labels: raw.labels })
}

impl Document {
    pub fn to_sld(&self) -> SldDocument {
        let d = &self.diagram;
        let pref = |x: usize| (d.crossings()[crossing_of(x)].id, port_of(x));
        let sid = |s: usize| d.surfaces()[s].id;
        SldDocument {
            sld: SLD_VERSION,
            name: self.name.clone(),
            note: self.note.clone(),
            surfaces: d.surfaces().iter().map(|s| SurfaceSpec { id: s.id, genus: s.genus }).collect(),
            crossings: d
                .crossings()
                .iter()
                .map(|c| CrossingSpec { id: c.id, surface: sid(c.surface), over_pair: c.over_pair })
                .collect(),
            edges: d
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (pref(e.ends[0]), pref(e.ends[1]));
                    match e.shift {
                        Some(s) => EdgeSpec::Shifted((a, b, s)),
                        None => EdgeSpec::Plain((a, b)),
                    }
                })
                .collect(),
            regions: d
                .regions()
                .iter()
                .map(|r| RegionDoc { boundaries: r.boundaries.iter().map(|&x| pref(x)).collect(), genus: r.genus })
                .collect(),
            free_loops: d.free_loops().iter().map(|&s| FreeLoopDoc { surface: sid(s) }).collect(),
            ambient: self.ambient.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_sld()).expect("SLD documents always serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = r#"{"sld": 1, "surfaces": [{"id": 0, "genus": 0}],
        "crossings": [{"id": 0, "surface": 0, "over_pair": "02"}, {"id": 1, "surface": 0, "over_pair": "13"}],
        "edges": [[[0,0],[1,1]], [[0,1],[1,0]], [[0,2],[1,3]], [[0,3],[1,2]]]}"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = parse_document(HOPF).unwrap();
        assert_eq!(doc.diagram.crossing_count(), 2);
        let again = parse_document(&doc.to_json()).unwrap();
        assert_eq!(again.to_sld(), doc.to_sld());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_document("{\"sld\": 1,\n \"surfaces\": [}").unwrap_err();
        match err {
            DiagramError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_port_rejected() {
        let text = HOPF.replace("[[0,3],[1,2]]", "[[0,3],[1,1]]");
        let err = parse_document(&text).unwrap_err();
        assert!(err.to_string().contains("duplicate port"), "{err}");
    }

    #[test]
    fn dangling_port_rejected() {
        let text = HOPF.replace(", [[0,3],[1,2]]", "");
        let err = parse_document(&text).unwrap_err();
        assert!(err.to_string().contains("dangling port"), "{err}");
    }

    #[test]
    fn bad_port_and_version() {
        let text = HOPF.replace("[[0,3],[1,2]]", "[[0,3],[1,7]]");
        assert!(matches!(parse_document(&text), Err(DiagramError::BadPort { .. })));
        let text = HOPF.replace("\"sld\": 1", "\"sld\": 2");
        assert!(matches!(parse_document(&text), Err(DiagramError::Version(2))));
    }

    #[test]
    fn genus_mismatch_rejected() {
        let text = HOPF.replace("\"genus\": 0", "\"genus\": 1");
        let err = parse_document(&text).unwrap_err();
        assert!(err.to_string().contains("genus mismatch"), "{err}");
    }
}
