use super::{crossing_of, port_of, rot, Crossing, Dart, DiagramError, RegionSpec};
use serde::Serialize;

/// The corner of a region at `crossing`, between ports `from_port` and
/// `from_port + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Corner {
    pub crossing: usize,
    pub from_port: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    pub surface: usize,
    /// Indices into [`FaceSet::cycles`].
    pub cycles: Vec<usize>,
    pub genus: u32,
    /// Number of edge sides over all boundary cycles.
    pub degree: usize,
    pub is_disk: bool,
    pub euler_char: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// Boundary cycles as dart sequences, face on the right.
    pub cycles: Vec<Vec<Dart>>,
    pub cycle_face: Vec<usize>,
    pub dart_cycle: Vec<usize>,
    pub dart_pos: Vec<usize>,
    pub dart_face: Vec<usize>,
}

impl FaceSet {
    pub(super) fn trace(
        crossings: &[Crossing],
        mate: &[Dart],
        nsurf: usize,
        surfaces: &[(i64, u32)],
        regions: &[RegionSpec],
    ) -> Result<FaceSet, DiagramError> {
        let nd = mate.len();
        let mut dart_cycle = vec![usize::MAX; nd];
        let mut dart_pos = vec![0; nd];
        let mut cycles: Vec<Vec<Dart>> = Vec::new();
        for start in 0..nd {
            if dart_cycle[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut d = start;
            loop {
                dart_cycle[d] = id;
                dart_pos[d] = cyc.len();
                cyc.push(d);
                d = rot(mate[d]);
                if d == start {
                    break;
                }
            }
            cycles.push(cyc);
        }

        let mut cycle_group = vec![usize::MAX; cycles.len()];
        for (r, spec) in regions.iter().enumerate() {
            if spec.boundaries.is_empty() {
                return Err(DiagramError::BadRegion { region: r, message: "no boundary cycles".into() });
            }
            let mut surf = None;
            for &d in &spec.boundaries {
                if d >= nd {
                    return Err(DiagramError::BadRegion { region: r, message: "unknown crossing or port".into() });
                }
                let c = dart_cycle[d];
                if cycle_group[c] != usize::MAX {
                    return Err(DiagramError::BadRegion {
                        region: r,
                        message: format!("boundary cycle through dart {d} already belongs to a region"),
                    });
                }
                cycle_group[c] = r;
                let s = crossings[crossing_of(d)].surface;
                if surf.is_some_and(|t| t != s) {
                    return Err(DiagramError::BadRegion { region: r, message: "boundaries on different surfaces".into() });
                }
                surf = Some(s);
            }
            if spec.boundaries.len() == 1 && spec.genus == 0 {
                return Err(DiagramError::BadRegion {
                    region: r,
                    message: "a single boundary cycle of genus 0 is an ordinary disk region".into(),
                });
            }
        }

        // A face is keyed by its smallest cycle so declared regions keep a stable order.
        let mut faces: Vec<Face> = Vec::new();
        let mut cycle_face = vec![usize::MAX; cycles.len()];
        for c in 0..cycles.len() {
            if cycle_face[c] != usize::MAX {
                continue;
            }
            let (members, genus) = match cycle_group[c] {
                usize::MAX => (vec![c], 0),
                r => {
                    let mut m: Vec<usize> = regions[r].boundaries.iter().map(|&d| dart_cycle[d]).collect();
                    m.sort_unstable();
                    (m, regions[r].genus)
                }
            };
            let id = faces.len();
            for &m in &members {
                cycle_face[m] = id;
            }
            let degree = members.iter().map(|&m| cycles[m].len()).sum();
            let b = members.len() as i64;
            faces.push(Face {
                id,
                surface: crossings[crossing_of(cycles[c][0])].surface,
                is_disk: b == 1 && genus == 0,
                euler_char: 2 - 2 * genus as i64 - b,
                cycles: members,
                genus,
                degree,
            });
        }
        for s in 0..nsurf {
            if !crossings.iter().any(|x| x.surface == s) {
                let genus = surfaces[s].1;
                faces.push(Face {
                    id: faces.len(),
                    surface: s,
                    cycles: Vec::new(),
                    genus,
                    degree: 0,
                    is_disk: false,
                    euler_char: 2 - 2 * genus as i64,
                });
            }
        }
        let dart_face = (0..nd).map(|d| cycle_face[dart_cycle[d]]).collect();
        Ok(FaceSet { faces, cycles, cycle_face, dart_cycle, dart_pos, dart_face })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Corner visited right after dart `d` on its boundary cycle.
    pub fn corner_after(&self, mate: impl Fn(Dart) -> Dart, d: Dart) -> Corner {
        let m = mate(d);
        Corner { crossing: crossing_of(m), from_port: port_of(m) }
    }

    /// Degree histogram helper: number of faces with the given degree.
    pub fn count_degree(&self, degree: usize) -> usize {
        self.faces.iter().filter(|f| f.is_disk && f.degree == degree).count()
    }

    /// Darts of face `f` over all its boundary cycles.
    pub fn darts(&self, f: usize) -> impl Iterator<Item = Dart> + '_ {
        self.faces[f].cycles.iter().flat_map(move |&c| self.cycles[c].iter().copied())
    }

    pub fn is_bigon(&self, f: usize) -> bool {
        let face = &self.faces[f];
        face.is_disk && face.degree == 2
    }
}
