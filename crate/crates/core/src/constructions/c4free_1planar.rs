//! Black lattice points `(i, j)`, red points `(i + 1/2, j + 1/2)` for odd `i, j`.
//!
//! Each red point sees its four corners; every square without a red point
//! carries both diagonals; every black point has exactly one axis-parallel
//! partner chosen by a period-4 rule.

use std::collections::BTreeMap;

use super::{certify, Builder, Construction, ConstructionSpec, Family};
use crate::error::ConstructionError;
use crate::geometry::Point;
use crate::rational::Rational;

/// The axis-parallel neighbour of `(i, j)`; an involution on the lattice.
pub fn axis_partner(i: i64, j: i64) -> (i64, i64) {
    let (a, b) = (i.rem_euclid(4), j.rem_euclid(4));
    if b == 1 || b == 2 {
        match a {
            1 => (i + 1, j),
            2 => (i - 1, j),
            _ if b == 1 => (i, j + 1),
            _ => (i, j - 1),
        }
    } else {
        match a {
            3 => (i + 1, j),
            0 => (i - 1, j),
            _ if b == 3 => (i, j + 1),
            _ => (i, j - 1),
        }
    }
}

pub fn gen_c4free_1planar(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    if spec.family != Family::C4Free1Planar {
        return Err(ConstructionError::InvalidSpec(format!("expected c4free-1planar, got {}", spec.family)));
    }
    spec.validate()?;
    let (cols, rows) = (spec.cols as i64, spec.rows as i64);
    let width = spec.wrap.then(|| Rational::from_int(cols));
    let mut b = Builder::new(width);

    let mut black = vec![vec![0usize; rows as usize]; cols as usize];
    for (i, column) in black.iter_mut().enumerate() {
        for (j, slot) in column.iter_mut().enumerate() {
            *slot = b.vertex(Point::int(i as i64, j as i64), format!("black@{i},{j}"));
        }
    }
    let at = |i: i64, j: i64| -> Option<usize> {
        if j < 0 || j >= rows {
            return None;
        }
        let i = if spec.wrap { i.rem_euclid(cols) } else { i };
        (0..cols).contains(&i).then(|| black[i as usize][j as usize])
    };

    let mut red_count = 0;
    let mut diagonals = 0;
    let mut axis = 0;
    for i in 0..cols {
        for j in 0..rows {
            let corners = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            if i % 2 == 1 && j % 2 == 1 {
                if corners.iter().all(Option::is_some) {
                    let half = Rational::new(1, 2);
                    let p = Point::new(Rational::from_int(i) + &half, Rational::from_int(j) + &half);
                    let r = b.vertex(p, format!("red@{i},{j}"));
                    red_count += 1;
                    for c in corners.into_iter().flatten() {
                        b.edge(r, c);
                    }
                }
            } else {
                if let (Some(p), Some(q)) = (corners[0], corners[2]) {
                    diagonals += usize::from(b.edge(p, q));
                }
                if let (Some(p), Some(q)) = (corners[1], corners[3]) {
                    diagonals += usize::from(b.edge(p, q));
                }
            }
            let (pi, pj) = axis_partner(i, j);
            if let (Some(p), Some(q)) = (at(i, j), at(pi, pj)) {
                axis += usize::from(b.edge(p, q));
            }
        }
    }
    let tallies = BTreeMap::from([
        ("black_vertices".to_string(), (cols * rows) as usize),
        ("red_vertices".to_string(), red_count),
        ("diagonal_edges".to_string(), diagonals),
        ("axis_edges".to_string(), axis),
    ]);
    Ok(certify(spec, b.finish()?, "lattice-axis-period4/1", tallies))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partner_is_involution() {
        for i in -8..8 {
            for j in -8..8 {
                let (a, b) = axis_partner(i, j);
                assert_eq!(axis_partner(a, b), (i, j));
                assert_eq!((a - i).abs() + (b - j).abs(), 1);
            }
        }
    }
}
