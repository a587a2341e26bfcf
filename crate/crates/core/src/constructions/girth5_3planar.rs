//! Integer points `(i, j)`, red when `i + j` is even.
//!
//! Every `(i, j)` is joined to `(i, j + 1)`; a black point also to `(i + 2, j + 1)`
//! and `(i + 1, j + 3)`; a red point also to the black point `(i + 1, j)`.

use std::collections::BTreeMap;

use super::{certify, Builder, Construction, ConstructionSpec, Family};
use crate::error::ConstructionError;
use crate::geometry::Point;
use crate::rational::Rational;

pub fn gen_girth5_3planar(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    if spec.family != Family::Girth53Planar {
        return Err(ConstructionError::InvalidSpec(format!("expected girth5-3planar, got {}", spec.family)));
    }
    spec.validate()?;
    let (cols, rows) = (spec.cols as i64, spec.rows as i64);
    let width = spec.wrap.then(|| Rational::from_int(cols));
    let mut b = Builder::new(width);
    let red = |i: i64, j: i64| (i + j).rem_euclid(2) == 0;
    for i in 0..cols {
        for j in 0..rows {
            let tag = if red(i, j) { "red" } else { "black" };
            b.vertex(Point::int(i, j), format!("{tag}@{i},{j}"));
        }
    }
    let at = |b: &Builder, i: i64, j: i64| -> Option<usize> {
        if j < 0 || j >= rows || (!spec.wrap && !(0..cols).contains(&i)) {
            return None;
        }
        b.lookup(Point::int(i, j))
    };
    let mut tally = BTreeMap::from([("vertical".to_string(), 0), ("black_long".to_string(), 0), ("red_horizontal".to_string(), 0)]);
    for i in 0..cols {
        for j in 0..rows {
            let me = at(&b, i, j).expect("lattice point");
            let mut targets = vec![("vertical", (i, j + 1))];
            if red(i, j) {
                targets.push(("red_horizontal", (i + 1, j)));
            } else {
                targets.push(("black_long", (i + 2, j + 1)));
                targets.push(("black_long", (i + 1, j + 3)));
            }
            for (kind, (ti, tj)) in targets {
                if let Some(t) = at(&b, ti, tj) {
                    if b.edge(me, t) {
                        *tally.get_mut(kind).expect("known kind") += 1;
                    }
                }
            }
        }
    }
    Ok(certify(spec, b.finish()?, "parity-lattice/1", tally))
}
