//! Brick cells `h0..h5` at offsets (0,0) (1,0) (2,0) (2,1) (1,1) (0,1), one per
//! lattice position `(x, y)` with `x + y` even, each carrying the chords 14, 24,
//! 35, 36 and 56.

use std::collections::BTreeMap;

use super::{certify, Builder, Construction, ConstructionSpec, Family};
use crate::error::ConstructionError;
use crate::geometry::Point;
use crate::rational::Rational;

pub(crate) const HEX_OFFSETS: [(i64, i64); 6] = [(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1)];
pub(crate) const CHORDS: [(usize, usize); 5] = [(0, 3), (1, 3), (2, 4), (2, 5), (4, 5)];

pub fn gen_c4free_2planar(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    if spec.family != Family::C4Free2Planar {
        return Err(ConstructionError::InvalidSpec(format!("expected c4free-2planar, got {}", spec.family)));
    }
    spec.validate()?;
    let span = 2 * spec.cols as i64;
    let width = spec.wrap.then(|| Rational::from_int(span));
    let mut b = Builder::new(width);
    let mut cells = 0;
    for y in 0..spec.rows as i64 {
        for x in (0..span).filter(|x| (x + y) % 2 == 0) {
            let h: Vec<usize> = HEX_OFFSETS
                .iter()
                .map(|&(dx, dy)| {
                    let gx = if spec.wrap { (x + dx).rem_euclid(span) } else { x + dx };
                    b.vertex(Point::int(gx, y + dy), format!("black@{gx},{}", y + dy))
                })
                .collect();
            for (p, q) in CHORDS {
                b.edge(h[p], h[q]);
            }
            cells += 1;
        }
    }
    let tallies = BTreeMap::from([("cells".to_string(), cells)]);
    Ok(certify(spec, b.finish()?, "brick-chords/1", tallies))
}
