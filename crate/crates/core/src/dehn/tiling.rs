//! The tiling of a knot's boundary torus by boundary squares, one per passage
//! of the knot through a crossing, laid out along the longitude.

use crate::ambient::Side;
use crate::diagram::SurfaceDiagram;
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TileSquare {
    pub crossing: usize,
    pub entry_port: u8,
    pub over: bool,
    /// Chunk holding the square: over passages face the minus chunk.
    pub chunk: Side,
    /// Position in the cover unrolled along the meridian; neighbours differ by 1.
    pub x: i64,
    /// Corners joined by the meridian diagonal, named by their first port.
    pub meridian_diagonal: [u8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarlequinTiling {
    pub component: usize,
    pub cr: usize,
    pub squares: Vec<TileSquare>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("no component {0}")]
    NoComponent(usize),
    #[error("component {0} meets no crossing")]
    NoCrossings(usize),
}

impl HarlequinTiling {
    /// x-coordinate where the lift of k copies of a slope with denominator q,
    /// started at 0, ends.
    pub fn lift_endpoint(&self, k: i64, q: i64) -> i64 {
        k * q.abs() * self.cr as i64
    }

    /// How often the monotone lift from 0 to [`Self::lift_endpoint`] crosses
    /// each square.
    pub fn lift_visits(&self, k: i64, q: i64) -> Vec<i64> {
        let mut v = vec![0; self.cr];
        for x in 0..self.lift_endpoint(k, q) {
            v[x.rem_euclid(self.cr as i64) as usize] += 1;
        }
        v
    }
}

/// An arc in a square skirts a corner when its ends lie on adjacent sides.
pub fn is_skirting(side_a: u8, side_b: u8) -> bool {
    matches!((side_a + 4 - side_b) % 4, 1 | 3)
}

pub fn harlequin_tiling(d: &SurfaceDiagram, component: usize) -> Result<HarlequinTiling, TilingError> {
    let strands = d.strands();
    let k = strands.get(component).ok_or(TilingError::NoComponent(component))?;
    if k.cr == 0 {
        return Err(TilingError::NoCrossings(component));
    }
    let squares = k
        .passages
        .iter()
        .enumerate()
        .map(|(i, p)| TileSquare {
            crossing: p.crossing,
            entry_port: p.entry_port,
            over: p.over,
            chunk: if p.over { Side::Minus } else { Side::Plus },
            x: i as i64,
            meridian_diagonal: [p.entry_port, (p.entry_port + 2) % 4],
        })
        .collect();
    Ok(HarlequinTiling { component, cr: k.cr, squares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load;

    #[test]
    fn fig8_tiling() {
        let d = load("fig8_s2").diagram;
        let t = harlequin_tiling(&d, 0).unwrap();
        assert_eq!(t.squares.len(), 8);
        assert!(t.squares.windows(2).all(|w| w[1].x - w[0].x == 1));
        assert_eq!(t.squares.iter().filter(|s| s.over).count(), 4);
        // alternating: over and under passages interleave
        assert!(t.squares.windows(2).all(|w| w[0].over != w[1].over));
        assert_eq!(t.lift_endpoint(1, 2), 16);
        assert_eq!(t.lift_endpoint(1, 0), 0);
        assert!(t.lift_visits(3, -2).iter().all(|&v| v == 6));
        assert_eq!(harlequin_tiling(&d, 1), Err(TilingError::NoComponent(1)));
    }

    #[test]
    fn skirting_arcs() {
        assert!(is_skirting(0, 1) && is_skirting(3, 0));
        assert!(!is_skirting(0, 2) && !is_skirting(1, 3));
    }
}
