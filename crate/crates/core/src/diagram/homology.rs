//! Integer homology coordinates on torus components.
//!
//! Each edge carries a translation in Z^2 (the deck group of the universal
//! abelian cover). Given shifts are checked; missing ones are produced by a
//! tree-cotree construction, which picks a basis of H1 from the two leftover
//! edges.

use super::{crossing_of, Dart, DiagramError, SurfaceDiagram};
use std::collections::VecDeque;

impl SurfaceDiagram {
    pub(super) fn install_shifts(&mut self) -> Result<(), DiagramError> {
        let nd = self.dart_count();
        let mut dart_shift = vec![[0i64; 2]; nd];
        let mut declared_any = false;
        for (s, surf) in self.surfaces.iter().enumerate() {
            let on_s: Vec<usize> = (0..self.edges.len())
                .filter(|&e| self.crossings[crossing_of(self.edges[e].ends[0])].surface == s)
                .collect();
            let given = on_s.iter().filter(|&&e| self.edges[e].shift.is_some()).count();
            if surf.genus != 1 {
                if given > 0 {
                    return Err(DiagramError::BadShift(format!(
                        "surface {} has genus {}; shifts are only meaningful on a torus",
                        surf.id, surf.genus
                    )));
                }
                continue;
            }
            if on_s.is_empty() {
                continue;
            }
            let edge_shift: Vec<[i64; 2]> = if given == on_s.len() {
                declared_any = true;
                on_s.iter().map(|&e| self.edges[e].shift.unwrap()).collect()
            } else if given == 0 {
                let all_disks = self.faces.faces.iter().filter(|f| f.surface == s).all(|f| f.is_disk);
                if !all_disks {
                    return Err(DiagramError::BadShift(format!(
                        "surface {} has non-disk regions; give a shift for every edge",
                        surf.id
                    )));
                }
                self.tree_cotree(s, &on_s)?
            } else {
                return Err(DiagramError::BadShift(format!(
                    "surface {}: {given} of {} edges carry shifts; give all or none",
                    surf.id,
                    on_s.len()
                )));
            };
            for (k, &e) in on_s.iter().enumerate() {
                let [a, b] = self.edges[e].ends;
                let v = edge_shift[k];
                dart_shift[a] = v;
                dart_shift[b] = [-v[0], -v[1]];
            }
            self.check_shifts(s, &dart_shift)?;
        }
        self.dart_shift = dart_shift;
        self.shifts_declared = declared_any;
        Ok(())
    }

    fn check_shifts(&self, s: usize, shift: &[[i64; 2]]) -> Result<(), DiagramError> {
        let fs = &self.faces;
        for f in fs.faces.iter().filter(|f| f.surface == s) {
            let mut total = [0i64; 2];
            for &c in &f.cycles {
                let mut sum = [0i64; 2];
                for &d in &fs.cycles[c] {
                    sum[0] += shift[d][0];
                    sum[1] += shift[d][1];
                }
                if f.is_disk && sum != [0, 0] {
                    return Err(DiagramError::BadShift(format!(
                        "disk region {} has boundary translation {:?}",
                        f.id, sum
                    )));
                }
                total[0] += sum[0];
                total[1] += sum[1];
            }
            if total != [0, 0] {
                return Err(DiagramError::BadShift(format!("region {} has boundary translation {:?}", f.id, total)));
            }
        }
        // With only disk regions the graph carries all of H1, so its cycles
        // must generate Z^2.
        if fs.faces.iter().any(|f| f.surface == s && !f.is_disk) {
            return Ok(());
        }
        let xs: Vec<usize> = self.crossings_on(s).collect();
        let mut pos = vec![None; self.crossing_count()];
        let mut seen = vec![false; self.crossing_count()];
        let mut q = VecDeque::new();
        pos[xs[0]] = Some([0i64, 0]);
        seen[xs[0]] = true;
        q.push_back(xs[0]);
        let mut gens: Vec<[i64; 2]> = Vec::new();
        while let Some(x) = q.pop_front() {
            for p in 0..4u8 {
                let d = super::dart(x, p);
                let y = crossing_of(self.mate[d]);
                let px = pos[x].unwrap();
                let target = [px[0] + shift[d][0], px[1] + shift[d][1]];
                if !seen[y] {
                    seen[y] = true;
                    pos[y] = Some(target);
                    q.push_back(y);
                } else {
                    let py = pos[y].unwrap();
                    gens.push([target[0] - py[0], target[1] - py[1]]);
                }
            }
        }
        let mut g = 0i64;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                g = gcd(g, gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0]);
            }
        }
        if g != 1 {
            return Err(DiagramError::BadShift(format!(
                "cycle translations on surface {} span a sublattice of index {}",
                self.surfaces[s].id,
                if g == 0 { "infinite".to_string() } else { g.to_string() }
            )));
        }
        Ok(())
    }

    fn tree_cotree(&self, s: usize, on_s: &[usize]) -> Result<Vec<[i64; 2]>, DiagramError> {
        let ne = self.edges.len();
        let local: Vec<Option<usize>> = {
            let mut v = vec![None; ne];
            for (k, &e) in on_s.iter().enumerate() {
                v[e] = Some(k);
            }
            v
        };
        // Primal spanning tree.
        let mut in_tree = vec![false; ne];
        let xs: Vec<usize> = self.crossings_on(s).collect();
        let mut seen = vec![false; self.crossing_count()];
        let mut q = VecDeque::from([xs[0]]);
        seen[xs[0]] = true;
        while let Some(x) = q.pop_front() {
            for p in 0..4u8 {
                let d = super::dart(x, p);
                let y = crossing_of(self.mate[d]);
                if !seen[y] {
                    seen[y] = true;
                    in_tree[self.edge_of[d]] = true;
                    q.push_back(y);
                }
            }
        }
        // Dual spanning tree avoiding primal tree edges.
        let fs = &self.faces;
        let faces: Vec<usize> = fs.faces.iter().filter(|f| f.surface == s).map(|f| f.id).collect();
        let mut in_cotree = vec![false; ne];
        let mut parent_edge = vec![usize::MAX; fs.len()];
        let mut order = Vec::new();
        let mut fseen = vec![false; fs.len()];
        let mut q = VecDeque::from([faces[0]]);
        fseen[faces[0]] = true;
        while let Some(f) = q.pop_front() {
            order.push(f);
            let darts: Vec<Dart> = fs.darts(f).collect();
            for d in darts {
                let e = self.edge_of[d];
                if in_tree[e] {
                    continue;
                }
                let g = fs.dart_face[self.mate[d]];
                if !fseen[g] {
                    fseen[g] = true;
                    in_cotree[e] = true;
                    parent_edge[g] = e;
                    q.push_back(g);
                }
            }
        }
        let mut shift: Vec<Option<[i64; 2]>> = vec![None; on_s.len()];
        let mut leftover = 0;
        for &e in on_s {
            let k = local[e].unwrap();
            if in_tree[e] {
                shift[k] = Some([0, 0]);
            } else if !in_cotree[e] {
                let v = match leftover {
                    0 => [1, 0],
                    1 => [0, 1],
                    _ => [0, 0],
                };
                leftover += 1;
                shift[k] = Some(v);
            }
        }
        if leftover != 2 {
            return Err(DiagramError::BadShift(format!(
                "tree-cotree left {leftover} edges on a torus; expected 2"
            )));
        }
        let sign = |d: Dart| if self.edges[self.edge_of[d]].ends[0] == d { 1 } else { -1 };
        for &f in order.iter().rev() {
            let pe = parent_edge[f];
            if pe == usize::MAX {
                continue;
            }
            let mut sum = [0i64; 2];
            let mut coeff = 0i64;
            for d in fs.darts(f) {
                let e = self.edge_of[d];
                if e == pe {
                    coeff += sign(d);
                    continue;
                }
                let v = shift[local[e].unwrap()].expect("cotree leaves are solved first");
                sum[0] += sign(d) * v[0];
                sum[1] += sign(d) * v[1];
            }
            debug_assert!(coeff == 1 || coeff == -1);
            shift[local[pe].unwrap()] = Some([-sum[0] * coeff, -sum[1] * coeff]);
        }
        Ok(shift.into_iter().map(|v| v.unwrap()).collect())
    }

    /// Translation of the origin of each dart within a lift of its region,
    /// measured from the first dart of its boundary cycle.
    pub fn dart_offsets(&self) -> Vec<[i64; 2]> {
        let fs = &self.faces;
        let mut off = vec![[0i64; 2]; self.dart_count()];
        for cyc in &fs.cycles {
            let mut t = [0i64; 2];
            for &d in cyc {
                off[d] = t;
                let s = self.dart_shift[d];
                t = [t[0] + s[0], t[1] + s[1]];
            }
        }
        off
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
