//! Periodic lower-bound constructions drawn with exact coordinates.
//!
//! `rows` counts lattice rows (tile rows for the brick families) and `cols`
//! counts lattice columns (tiles per row for the brick families). With `wrap`
//! the pattern is closed horizontally into a cylinder.

mod c4free_1planar;
mod c4free_2planar;
mod girth5_3planar;
mod girth5_tiles;

pub use c4free_1planar::gen_c4free_1planar;
pub use c4free_2planar::gen_c4free_2planar;
pub use girth5_3planar::gen_girth5_3planar;
pub use girth5_tiles::{gen_girth5_1planar, gen_girth5_2planar, TileTemplate, TEMPLATE_VERSION};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::drawing::{DrawnGraph, EdgeSpec};
use crate::error::ConstructionError;
use crate::geometry::{CylinderMetric, Point};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "c4free-1planar")]
    C4Free1Planar,
    #[serde(rename = "girth5-1planar")]
    Girth51Planar,
    #[serde(rename = "c4free-2planar")]
    C4Free2Planar,
    #[serde(rename = "girth5-2planar")]
    Girth52Planar,
    #[serde(rename = "girth5-3planar")]
    Girth53Planar,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::C4Free1Planar, Family::Girth51Planar, Family::C4Free2Planar, Family::Girth52Planar, Family::Girth53Planar];

    pub fn name(self) -> &'static str {
        match self {
            Family::C4Free1Planar => "c4free-1planar",
            Family::Girth51Planar => "girth5-1planar",
            Family::C4Free2Planar => "c4free-2planar",
            Family::Girth52Planar => "girth5-2planar",
            Family::Girth53Planar => "girth5-3planar",
        }
    }

    pub fn expected_k(self) -> usize {
        match self {
            Family::C4Free1Planar | Family::Girth51Planar => 1,
            Family::C4Free2Planar | Family::Girth52Planar => 2,
            Family::Girth53Planar => 3,
        }
    }

    pub fn girth_five(self) -> bool {
        matches!(self, Family::Girth51Planar | Family::Girth52Planar | Family::Girth53Planar)
    }

    /// Horizontal period in `cols` units.
    pub fn period(self) -> usize {
        match self {
            Family::C4Free1Planar => 4,
            Family::Girth51Planar | Family::Girth52Planar => 3,
            Family::C4Free2Planar => 1,
            Family::Girth53Planar => 2,
        }
    }

    /// Smallest `(rows, cols)` accepted, and the smallest `cols` when wrapping.
    pub fn minimum(self) -> (usize, usize, usize) {
        match self {
            Family::C4Free1Planar => (4, 4, 8),
            Family::Girth51Planar | Family::Girth52Planar => (3, 3, 6),
            Family::C4Free2Planar => (2, 2, 5),
            Family::Girth53Planar => (4, 4, 6),
        }
    }

    /// Limit of `m / n` read off one period: vertices and edges per fundamental domain.
    pub fn asymptotic_density(self) -> Rational {
        let (vertices, edges) = self.census();
        Rational::from(edges) / Rational::from(vertices)
    }

    /// Vertex and edge count of one fundamental domain, tallied from the degree census.
    fn census(self) -> (usize, usize) {
        // (count, degree) classes per fundamental domain, degrees without red or blue edges
        let classes: &[(usize, usize)] = match self {
            Family::C4Free1Planar => &[(4, 5), (1, 4)],
            // per tile: 2 hex vertices shared by three tiles, 4 interior vertices
            Family::Girth51Planar => &[(2, 6), (4, 3)],
            Family::C4Free2Planar => &[(2, 5)],
            // one blue vertex of degree 3 per tile on average
            Family::Girth52Planar => &[(2, 6), (4, 3), (1, 3)],
            Family::Girth53Planar => &[(1, 6), (1, 4)],
        };
        // endpoints of red edges (one per tile) and the tile ends of blue edges (three per tile)
        let attached = match self {
            Family::Girth51Planar => 2,
            Family::Girth52Planar => 2 + 3,
            _ => 0,
        };
        let vertices: usize = classes.iter().map(|c| c.0).sum();
        let degree_sum: usize = classes.iter().map(|c| c.0 * c.1).sum::<usize>() + attached;
        (vertices, degree_sum / 2)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ConstructionError::InvalidSpec(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub rows: usize,
    pub cols: usize,
    pub wrap: bool,
}

impl ConstructionSpec {
    pub fn new(family: Family, rows: usize, cols: usize, wrap: bool) -> ConstructionSpec {
        ConstructionSpec { family, rows, cols, wrap }
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let (min_rows, min_cols, min_wrap_cols) = self.family.minimum();
        let bad = |msg: String| Err(ConstructionError::InvalidSpec(msg));
        if self.rows < min_rows {
            return bad(format!("{} needs rows >= {min_rows}", self.family));
        }
        let need = if self.wrap { min_wrap_cols } else { min_cols };
        if self.cols < need {
            return bad(format!("{} needs cols >= {need}{}", self.family, if self.wrap { " when wrapping" } else { "" }));
        }
        if self.wrap && self.cols % self.family.period() != 0 {
            return bad(format!("{} wraps only when cols is a multiple of {}", self.family, self.family.period()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionCertificate {
    pub family: Family,
    pub spec: ConstructionSpec,
    pub expected_k: usize,
    pub expected_girth_min: Option<usize>,
    pub expects_c3_free: bool,
    pub expects_c4_free: bool,
    pub edge_count: usize,
    pub vertex_count: usize,
    pub asymptotic_density: Rational,
    /// `asymptotic_density * n - m`: edges missing because of the finite boundary.
    pub boundary_deficit: Rational,
    pub template: String,
    /// Generator-side counts such as tiles or coloured edges.
    pub tallies: BTreeMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub drawing: DrawnGraph,
    pub certificate: ConstructionCertificate,
}

pub fn generate(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    spec.validate()?;
    match spec.family {
        Family::C4Free1Planar => gen_c4free_1planar(spec),
        Family::Girth51Planar => gen_girth5_1planar(spec),
        Family::C4Free2Planar => gen_c4free_2planar(spec),
        Family::Girth52Planar => gen_girth5_2planar(spec),
        Family::Girth53Planar => gen_girth5_3planar(spec),
    }
}

/// Accumulates vertices keyed by their canonical position.
pub(crate) struct Builder {
    width: Option<Rational>,
    positions: Vec<Point>,
    labels: Vec<Option<String>>,
    index: HashMap<Point, usize>,
    edges: Vec<EdgeSpec>,
    seen: HashSet<(usize, usize)>,
}

impl Builder {
    pub fn new(width: Option<Rational>) -> Builder {
        Builder {
            width,
            positions: Vec::new(),
            labels: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn canon(&self, p: Point) -> Point {
        match &self.width {
            Some(w) => Point::new(p.x.rem_euclid(w), p.y),
            None => p,
        }
    }

    pub fn vertex(&mut self, p: Point, label: String) -> usize {
        let p = self.canon(p);
        if let Some(&id) = self.index.get(&p) {
            return id;
        }
        let id = self.positions.len();
        self.index.insert(p.clone(), id);
        self.positions.push(p);
        self.labels.push(Some(label));
        id
    }

    pub fn lookup(&self, p: Point) -> Option<usize> {
        self.index.get(&self.canon(p)).copied()
    }

    /// Adds `u-v` once; returns whether it was new.
    pub fn edge(&mut self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        if u == v || !self.seen.insert(key) {
            return false;
        }
        self.edges.push(EdgeSpec::straight(u, v));
        true
    }

    pub fn finish(self) -> Result<DrawnGraph, ConstructionError> {
        let metric = self.width.map(CylinderMetric::new).transpose().map_err(crate::error::DrawingError::from)?;
        Ok(DrawnGraph::new(self.positions, self.edges, metric, Some(self.labels))?)
    }
}

pub(crate) fn certify(
    spec: &ConstructionSpec,
    drawing: DrawnGraph,
    template: &str,
    tallies: BTreeMap<String, usize>,
) -> Construction {
    let family = spec.family;
    let density = family.asymptotic_density();
    let n = drawing.n();
    let m = drawing.m();
    let certificate = ConstructionCertificate {
        family,
        spec: *spec,
        expected_k: family.expected_k(),
        expected_girth_min: family.girth_five().then_some(5),
        expects_c3_free: family.girth_five(),
        expects_c4_free: true,
        edge_count: m,
        vertex_count: n,
        boundary_deficit: &density * Rational::from(n) - Rational::from(m),
        asymptotic_density: density,
        template: template.to_string(),
        tallies,
    };
    Construction { drawing, certificate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn densities_from_census() {
        let got: Vec<Rational> = Family::ALL.iter().map(|f| f.asymptotic_density()).collect();
        assert_eq!(got, vec![q(12, 5), q(13, 6), q(5, 2), q(16, 7), q(5, 2)]);
    }

    #[test]
    fn names_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("c5free".parse::<Family>().is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(ConstructionSpec::new(Family::C4Free1Planar, 12, 8, true).validate().is_ok());
        assert!(ConstructionSpec::new(Family::C4Free1Planar, 12, 10, true).validate().is_err());
        assert!(ConstructionSpec::new(Family::C4Free1Planar, 2, 8, false).validate().is_err());
        assert!(ConstructionSpec::new(Family::Girth51Planar, 6, 7, true).validate().is_err());
        assert!(ConstructionSpec::new(Family::Girth53Planar, 6, 4, true).validate().is_err());
        assert!(ConstructionSpec::new(Family::C4Free2Planar, 6, 6, true).validate().is_ok());
    }
}
