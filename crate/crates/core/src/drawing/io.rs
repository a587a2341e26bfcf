//! JSON exchange format. Rationals are written as `"p/q"` strings.

use serde::{Deserialize, Serialize};

use super::{DrawnGraph, EdgeSpec};
use crate::error::DrawingError;
use crate::geometry::{CylinderMetric, Point};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub cylinder_width: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub x: Rational,
    pub y: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    #[serde(default)]
    pub bends: Vec<(Rational, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingFile {
    pub metric: Option<MetricRecord>,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl DrawingFile {
    pub fn from_drawing(d: &DrawnGraph) -> DrawingFile {
        DrawingFile {
            metric: d.metric().map(|m| MetricRecord { cylinder_width: m.width().clone() }),
            vertices: (0..d.n())
                .map(|v| VertexRecord {
                    id: v,
                    x: d.position(v).x.clone(),
                    y: d.position(v).y.clone(),
                    label: d.graph().label(v).map(str::to_string),
                })
                .collect(),
            edges: (0..d.m())
                .map(|e| {
                    let (u, v) = d.edge(e);
                    EdgeRecord { u, v, bends: d.bends(e).iter().map(|p| (p.x.clone(), p.y.clone())).collect() }
                })
                .collect(),
        }
    }

    pub fn into_drawing(self) -> Result<DrawnGraph, DrawingError> {
        let n = self.vertices.len();
        let mut positions: Vec<Option<Point>> = vec![None; n];
        let mut labels = vec![None; n];
        for v in self.vertices {
            if v.id >= n || positions[v.id].is_some() {
                return Err(DrawingError::Format(format!("vertex ids must be 0..{} without repeats (saw {})", n, v.id)));
            }
            positions[v.id] = Some(Point::new(v.x, v.y));
            labels[v.id] = v.label;
        }
        let positions: Vec<Point> = positions.into_iter().map(|p| p.expect("all ids present")).collect();
        let metric = self.metric.map(|m| CylinderMetric::new(m.cylinder_width)).transpose()?;
        let edges = self
            .edges
            .into_iter()
            .map(|e| EdgeSpec { u: e.u, v: e.v, bends: e.bends.into_iter().map(|(x, y)| Point::new(x, y)).collect() })
            .collect();
        DrawnGraph::new(positions, edges, metric, Some(labels))
    }
}

pub fn to_json(d: &DrawnGraph) -> String {
    serde_json::to_string_pretty(&DrawingFile::from_drawing(d)).expect("drawing serializes")
}

pub fn from_json(text: &str) -> Result<DrawnGraph, DrawingError> {
    let file: DrawingFile = serde_json::from_str(text).map_err(|e| DrawingError::Format(e.to_string()))?;
    file.into_drawing()
}
