use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::drawing::{NodeOrigin, Planarization};
use crate::rational::{q, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellTerm {
    pub face: usize,
    /// `||c||`: original vertices plus edge segments on the boundary walk.
    pub cell_size: usize,
    /// `(t - 1)/4 * ||c|| - t`
    pub term: Rational,
}

/// The `t = 3` reading: cells grouped by size, and the credit from
/// `|C_5| <= 2|X|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleSpecialization {
    pub cells_by_size: BTreeMap<usize, usize>,
    /// `3(n-2) + sum_s (3 - s/2)|C_s| - |X|`
    pub rhs: Rational,
    /// Largest number of distinct size-5 cells around one crossing.
    pub max_c5_per_crossing: usize,
    pub c5_within_twice_crossings: bool,
    /// `rhs` with `|C_5|/2 - |X|` replaced by its upper bound 0.
    pub credited_rhs: Rational,
    /// `m <= 3(n-2)`
    pub three_n_bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityFormulaReport {
    pub t: u32,
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub rhs: Rational,
    pub pass: bool,
    pub cell_terms: Vec<CellTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub specialization: Option<TriangleSpecialization>,
}

/// `m <= t(n-2) - sum_c ((t-1)/4 ||c|| - t) - |X|`.
pub fn density_formula_check(p: &Planarization, t: u32) -> DensityFormulaReport {
    assert!(t >= 1, "t must be positive");
    let tr = Rational::from(t as usize);
    let w = (&tr - q(1, 1)) / q(4, 1);
    let cell_terms: Vec<CellTerm> = p
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let size = f.cell_size();
            CellTerm { face: i, cell_size: size, term: &w * Rational::from(size) - &tr }
        })
        .collect();
    let n = p.n_original;
    let x = Rational::from(p.crossings.len());
    let sum: Rational = cell_terms.iter().map(|c| &c.term).sum();
    let rhs = &tr * Rational::from(n as i64 - 2) - sum - &x;
    let m = p.m_original;
    let specialization = (t == 3).then(|| specialize(p, &cell_terms));
    DensityFormulaReport { t, n, m, crossings: p.crossings.len(), pass: Rational::from(m) <= rhs, rhs, cell_terms, specialization }
}

fn specialize(p: &Planarization, cells: &[CellTerm]) -> TriangleSpecialization {
    let mut cells_by_size = BTreeMap::new();
    for c in cells {
        *cells_by_size.entry(c.cell_size).or_insert(0usize) += 1;
    }
    let n = Rational::from(p.n_original as i64 - 2);
    let x = p.crossings.len();
    let gain = |s: usize| q(3, 1) - Rational::from(s) / q(2, 1);
    let rhs = q(3, 1) * &n + cells_by_size.iter().map(|(&s, &c)| gain(s) * Rational::from(c)).sum::<Rational>() - Rational::from(x);
    let credited_rhs = q(3, 1) * &n + cells_by_size.iter().filter(|(&s, _)| s != 5).map(|(&s, &c)| gain(s) * Rational::from(c)).sum::<Rational>();
    let mut max_c5 = 0;
    for (node, origin) in p.origin.iter().enumerate() {
        if matches!(origin, NodeOrigin::Dummy(_)) {
            let around: BTreeSet<usize> =
                p.rotation[node].iter().map(|&d| p.dart_face[d]).filter(|&f| p.faces[f].cell_size() == 5).collect();
            max_c5 = max_c5.max(around.len());
        }
    }
    let c5 = cells_by_size.get(&5).copied().unwrap_or(0);
    TriangleSpecialization {
        cells_by_size,
        rhs,
        max_c5_per_crossing: max_c5,
        c5_within_twice_crossings: c5 <= 2 * x,
        credited_rhs,
        three_n_bound_holds: Rational::from(p.m_original) <= q(3, 1) * n,
    }
}
