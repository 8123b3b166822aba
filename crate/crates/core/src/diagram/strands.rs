use super::{crossing_of, dart, port_of, rot_by, Dart, SurfaceDiagram};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Passage {
    pub crossing: usize,
    /// Port through which the strand enters; it leaves through the opposite one.
    pub entry_port: u8,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkComponent {
    pub id: usize,
    pub surface: usize,
    pub passages: Vec<Passage>,
    /// Number of passages; a self-crossing counts twice.
    pub cr: usize,
    /// Homology class on a torus component, in the diagram's shift basis.
    pub homology: [i64; 2],
}

impl LinkComponent {
    /// Darts along which the strand leaves each passage.
    pub fn exit_darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.passages.iter().map(|p| rot_by(dart(p.crossing, p.entry_port), 2))
    }
}

pub(super) fn trace(d: &SurfaceDiagram) -> Vec<LinkComponent> {
    let n = d.crossing_count();
    // seen[x][pair]: the strand through ports {pair, pair + 2} at x has been walked
    let mut seen = vec![[false; 2]; n];
    let mut out = Vec::new();
    for x in 0..n {
        for pair in 0..2u8 {
            if seen[x][pair as usize] {
                continue;
            }
            let start = dart(x, pair + 2);
            let mut passages = Vec::new();
            let mut homology = [0i64; 2];
            let mut leave = start;
            loop {
                let s = d.dart_shift(leave);
                homology[0] += s[0];
                homology[1] += s[1];
                let enter = d.mate(leave);
                let y = crossing_of(enter);
                let p = port_of(enter);
                seen[y][(p % 2) as usize] = true;
                passages.push(Passage { crossing: y, entry_port: p, over: d.is_over(enter) });
                leave = rot_by(enter, 2);
                if leave == start {
                    break;
                }
            }
            // Rotate so the walk starts at the passage through x.
            passages.rotate_right(1);
            out.push(LinkComponent {
                id: out.len(),
                surface: d.surface_of_crossing(x),
                cr: passages.len(),
                passages,
                homology,
            });
        }
    }
    for &s in d.free_loops() {
        out.push(LinkComponent { id: out.len(), surface: s, passages: Vec::new(), cr: 0, homology: [0, 0] });
    }
    out
}
