//! Hexagonal tiles, each carrying a subdivided Petersen fragment, laid out in
//! brick fashion. The geometry lives in `templates/girth5_tiles.json`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Deserialize;

use super::{certify, Builder, Construction, ConstructionSpec, Family};
use crate::error::ConstructionError;
use crate::geometry::Point;
use crate::rational::Rational;

pub const TEMPLATE_VERSION: &str = "petersen-brick/1";

const TEMPLATE_JSON: &str = include_str!("../../templates/girth5_tiles.json");

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RedPort {
    pub leaf: String,
    pub offset: (i64, i64),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlueSpot {
    /// Offset from the host tile origin, in drawing units.
    pub pos: (Rational, Rational),
    /// `(tile dx, tile dy, role)` of each neighbour.
    pub targets: Vec<(i64, i64, String)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileTemplate {
    pub version: String,
    pub scale: i64,
    pub hex_offsets: Vec<(i64, i64)>,
    pub interior: BTreeMap<String, (Rational, Rational)>,
    pub tile_edges: Vec<(String, String)>,
    pub rotated_colors: Vec<i64>,
    pub red_color: i64,
    pub red_ports: Vec<RedPort>,
    pub blue_host_color: i64,
    pub blue: Vec<BlueSpot>,
}

impl TileTemplate {
    pub fn builtin() -> &'static TileTemplate {
        static CELL: OnceLock<TileTemplate> = OnceLock::new();
        CELL.get_or_init(|| {
            let t: TileTemplate = serde_json::from_str(TEMPLATE_JSON).expect("bundled tile template parses");
            assert_eq!(t.version, TEMPLATE_VERSION);
            t
        })
    }

    /// Colour class of tile `(x, y)`; neighbours along every red port differ.
    pub fn color(x: i64, y: i64) -> i64 {
        ((x - y).div_euclid(2) - y).rem_euclid(3)
    }

    /// Interior position of `role` for a tile of the given colour, relative to the tile origin.
    fn interior_at(&self, role: &str, color: i64) -> (Rational, Rational) {
        let (px, py) = self.interior[role].clone();
        if self.rotated_colors.contains(&color) {
            (Rational::from_int(2 * self.scale) - px, Rational::from_int(self.scale) - py)
        } else {
            (px, py)
        }
    }
}

struct Layout<'a> {
    spec: &'a ConstructionSpec,
    t: &'a TileTemplate,
    span: i64,
    b: Builder,
    roles: HashMap<(i64, i64, String), usize>,
    tiles: usize,
}

impl<'a> Layout<'a> {
    fn new(spec: &'a ConstructionSpec, t: &'a TileTemplate) -> Layout<'a> {
        let span = 2 * spec.cols as i64;
        let width = spec.wrap.then(|| Rational::from_int(span * t.scale));
        Layout { spec, t, span, b: Builder::new(width), roles: HashMap::new(), tiles: 0 }
    }

    fn tile(&self, x: i64, y: i64) -> Option<(i64, i64)> {
        if y < 0 || y >= self.spec.rows as i64 || (x + y).rem_euclid(2) != 0 {
            return None;
        }
        if self.spec.wrap {
            Some((x.rem_euclid(self.span), y))
        } else {
            (0..self.span).contains(&x).then_some((x, y))
        }
    }

    fn tile_list(&self) -> Vec<(i64, i64)> {
        let span = self.span;
        (0..self.spec.rows as i64).flat_map(|y| (0..span).filter(move |x| (x + y) % 2 == 0).map(move |x| (x, y))).collect()
    }

    fn place_tiles(&mut self) {
        let s = self.t.scale;
        for (x, y) in self.tile_list() {
            let color = TileTemplate::color(x, y);
            let mut local: HashMap<String, usize> = HashMap::new();
            for (i, &(dx, dy)) in self.t.hex_offsets.iter().enumerate() {
                let gx = if self.spec.wrap { (x + dx).rem_euclid(self.span) } else { x + dx };
                let id = self.b.vertex(Point::int(gx * s, (y + dy) * s), format!("hex@{gx},{}", y + dy));
                local.insert(format!("h{i}"), id);
            }
            for role in self.t.interior.keys() {
                let (px, py) = self.t.interior_at(role, color);
                let p = Point::new(Rational::from_int(x * s) + px, Rational::from_int(y * s) + py);
                let id = self.b.vertex(p, format!("tile@{x},{y}:{role}"));
                local.insert(role.clone(), id);
                self.roles.insert((x, y, role.clone()), id);
            }
            for (u, v) in &self.t.tile_edges {
                self.b.edge(local[u], local[v]);
            }
            self.tiles += 1;
        }
    }

    fn place_red(&mut self) -> usize {
        let mut red = 0;
        for (x, y) in self.tile_list() {
            if TileTemplate::color(x, y) != self.t.red_color {
                continue;
            }
            for port in &self.t.red_ports {
                let Some((tx, ty)) = self.tile(x + port.offset.0, y + port.offset.1) else { continue };
                let u = self.roles[&(x, y, port.leaf.clone())];
                let v = self.roles[&(tx, ty, port.leaf.clone())];
                red += usize::from(self.b.edge(u, v));
            }
        }
        red
    }

    fn place_blue(&mut self) -> usize {
        let s = self.t.scale;
        let mut blue = 0;
        for (x, y) in self.tile_list() {
            if TileTemplate::color(x, y) != self.t.blue_host_color {
                continue;
            }
            for (i, spot) in self.t.blue.iter().enumerate() {
                let ends: Option<Vec<usize>> = spot
                    .targets
                    .iter()
                    .map(|(dx, dy, role)| {
                        let (tx, ty) = self.tile(x + dx, y + dy)?;
                        self.roles.get(&(tx, ty, role.clone())).copied()
                    })
                    .collect();
                let Some(ends) = ends else { continue };
                let p = Point::new(Rational::from_int(x * s) + &spot.pos.0, Rational::from_int(y * s) + &spot.pos.1);
                let id = self.b.vertex(p, format!("blue@{x},{y}:{i}"));
                for e in ends {
                    self.b.edge(id, e);
                }
                blue += 1;
            }
        }
        blue
    }
}

fn check_family(spec: &ConstructionSpec, want: Family) -> Result<(), ConstructionError> {
    if spec.family != want {
        return Err(ConstructionError::InvalidSpec(format!("expected {want}, got {}", spec.family)));
    }
    spec.validate()
}

pub fn gen_girth5_1planar(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    check_family(spec, Family::Girth51Planar)?;
    let t = TileTemplate::builtin();
    let mut layout = Layout::new(spec, t);
    layout.place_tiles();
    let red = layout.place_red();
    let tallies = BTreeMap::from([("tiles".to_string(), layout.tiles), ("red_edges".to_string(), red)]);
    Ok(certify(spec, layout.b.finish()?, &t.version, tallies))
}

pub fn gen_girth5_2planar(spec: &ConstructionSpec) -> Result<Construction, ConstructionError> {
    check_family(spec, Family::Girth52Planar)?;
    let t = TileTemplate::builtin();
    let mut layout = Layout::new(spec, t);
    layout.place_tiles();
    let red = layout.place_red();
    let blue = layout.place_blue();
    let tallies = BTreeMap::from([
        ("tiles".to_string(), layout.tiles),
        ("red_edges".to_string(), red),
        ("blue_vertices".to_string(), blue),
    ]);
    Ok(certify(spec, layout.b.finish()?, &t.version, tallies))
}
