//! Exact-arithmetic toolkit for k-planar graph drawings.

pub mod bounds;
pub mod constructions;
pub mod discharging;
pub mod drawing;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod graph;
pub mod rational;

pub use drawing::{DrawnGraph, EdgeSpec};
pub use geometry::{CylinderMetric, Point, Segment};
pub use graph::Graph;
pub use rational::Rational;
