//! Face charges of a planarization and checks built on them.
//!
//! A face `f` gets `ch(f) = |V(f)| + |f| - 4`, where `|f|` counts every node
//! incidence of its boundary walk and `|V(f)|` only the original vertices. For a
//! ratio `alpha`, the remaining charge is `ch(f) - alpha |V(f)|`; if it can be
//! redistributed so no face ends negative, then `m <= (2/alpha)(n - 2)`.

mod flow;
mod formula;

pub use flow::FlowNetwork;
pub use formula::{density_formula_check, DensityFormulaReport, TriangleSpecialization};

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::drawing::Planarization;
use crate::rational::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceClass {
    /// Triangle on three original vertices.
    Type1Triangle,
    /// Triangle on two original vertices and one crossing.
    Type2Triangle,
    /// Triangle on one original vertex and two crossings.
    OneVertexTriangle,
    ZeroVertexTriangle,
    Quad,
    Big,
    /// Walk of fewer than three nodes, only for graphs with at most one edge.
    Small,
    /// Face around an end of a cylinder.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCharge {
    pub face: usize,
    pub class: FaceClass,
    /// `|f|`
    pub size: usize,
    /// `|V(f)|`
    pub vertices: usize,
    /// `||c||` of the density formula: original vertices plus edge segments.
    pub cell_size: usize,
    pub charge: Rational,
    pub remaining: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChargeLedger {
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub alpha: Rational,
    pub faces: Vec<FaceCharge>,
    /// `|V(f)| >= ceil(|f| / 2)` on every face; checked only for 1-plane inputs.
    pub vbound: Option<bool>,
    #[serde(skip)]
    dual: Vec<Vec<usize>>,
}

fn classify(size: usize, vertices: usize, boundary: bool) -> FaceClass {
    match (boundary, size, vertices) {
        (true, _, _) => FaceClass::Boundary,
        (_, 0..=2, _) => FaceClass::Small,
        (_, 3, 3) => FaceClass::Type1Triangle,
        (_, 3, 2) => FaceClass::Type2Triangle,
        (_, 3, 1) => FaceClass::OneVertexTriangle,
        (_, 3, _) => FaceClass::ZeroVertexTriangle,
        (_, 4, _) => FaceClass::Quad,
        _ => FaceClass::Big,
    }
}

pub fn build_ledger(p: &Planarization, alpha: &Rational) -> ChargeLedger {
    let faces: Vec<FaceCharge> = p
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let vertices = Rational::from(f.original_count);
            let charge = &vertices + Rational::from(f.size) - q(4, 1);
            let remaining = &charge - alpha * &vertices;
            FaceCharge {
                face: i,
                class: classify(f.size, f.original_count, f.boundary),
                size: f.size,
                vertices: f.original_count,
                cell_size: f.cell_size(),
                charge,
                remaining,
            }
        })
        .collect();
    let mut per_edge = vec![0usize; p.m_original];
    for c in &p.crossings {
        per_edge[c.edge_a] += 1;
        per_edge[c.edge_b] += 1;
    }
    let one_plane = per_edge.iter().all(|&c| c <= 1);
    let vbound = one_plane.then(|| faces.iter().all(|f| 2 * f.vertices >= f.size));
    let dual = (0..p.faces.len()).map(|f| p.dual_neighbors(f)).collect();
    ChargeLedger {
        n: p.n_original,
        m: p.m_original,
        crossings: p.crossings.len(),
        alpha: alpha.clone(),
        faces,
        vbound,
        dual,
    }
}

impl ChargeLedger {
    pub fn total_charge(&self) -> Rational {
        self.faces.iter().map(|f| &f.charge).sum()
    }

    pub fn total_remaining(&self) -> Rational {
        self.faces.iter().map(|f| &f.remaining).sum()
    }

    pub fn count(&self, class: FaceClass) -> usize {
        self.faces.iter().filter(|f| f.class == class).count()
    }

    pub fn dual_neighbors(&self, f: usize) -> &[usize] {
        &self.dual[f]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeSumCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

/// Total charge over all faces against `4n - 8`.
pub fn charge_sum_check(ledger: &ChargeLedger) -> ChargeSumCheck {
    let lhs = ledger.total_charge();
    let rhs = Rational::from(4 * ledger.n as i64 - 8);
    ChargeSumCheck { pass: lhs == rhs, lhs, rhs }
}

/// Limits on where charge may travel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleCaps {
    /// Maximum number of dual hops between giver and receiver.
    pub relay_depth: usize,
    /// Only faces with negative remaining charge may pass charge onward.
    pub relay_through_deficit_only: bool,
    /// Maximum amount on a single transfer.
    pub per_transfer_cap: Option<Rational>,
}

impl Default for RuleCaps {
    fn default() -> RuleCaps {
        RuleCaps { relay_depth: 2, relay_through_deficit_only: true, per_transfer_cap: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from_face: usize,
    pub to_face: usize,
    pub amount: Rational,
    /// Dual distance between the two faces.
    pub hops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DischargePlan {
    pub alpha: Rational,
    pub transfers: Vec<Transfer>,
    /// Remaining charge after all transfers, per face.
    pub final_charge: Vec<Rational>,
    /// `m <= (2/alpha)(n - 2)`.
    pub density_bound: Rational,
    pub density_bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Infeasible {
    pub alpha: Rational,
    /// Total demand that could not be routed.
    pub shortfall: Rational,
    /// Deficit faces left below zero by a maximum flow.
    pub unsatisfied: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Feasibility {
    Feasible(DischargePlan),
    Infeasible(Infeasible),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Faces within `depth` dual hops of `from`, with their distance. Boundary faces
/// are never entered.
fn reachable(ledger: &ChargeLedger, from: usize, caps: &RuleCaps) -> Vec<(usize, usize)> {
    let mut dist: HashMap<usize, usize> = HashMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    let mut out = Vec::new();
    while let Some(f) = queue.pop_front() {
        if f != from {
            out.push((f, dist[&f]));
            let relay_ok = !caps.relay_through_deficit_only || ledger.faces[f].remaining.is_negative();
            if !relay_ok {
                continue;
            }
        }
        let d = dist[&f];
        if d == caps.relay_depth {
            continue;
        }
        for &g in &ledger.dual[f] {
            if ledger.faces[g].class != FaceClass::Boundary && !dist.contains_key(&g) {
                dist.insert(g, d + 1);
                queue.push_back(g);
            }
        }
    }
    out
}

fn scale_of(ledger: &ChargeLedger, caps: &RuleCaps) -> num_bigint::BigInt {
    let mut s = ledger.alpha.denom().clone();
    if let Some(c) = &caps.per_transfer_cap {
        s = s.lcm(c.denom());
    }
    for f in &ledger.faces {
        s = s.lcm(f.remaining.denom());
    }
    s
}

fn scaled(r: &Rational, scale: &num_bigint::BigInt) -> i64 {
    (r * Rational::from(scale.clone())).floor().to_i64().expect("charge fits in i64")
}

/// Whether negative remaining charge can be covered by surplus faces nearby.
pub fn discharge_feasibility(ledger: &ChargeLedger, caps: &RuleCaps) -> Feasibility {
    let nf = ledger.faces.len();
    let scale = scale_of(ledger, caps);
    let (source, sink) = (nf, nf + 1);
    let mut net = FlowNetwork::new(nf + 2);
    let active = |f: &FaceCharge| f.class != FaceClass::Boundary;
    let mut demand = 0i64;
    let mut sink_arcs = Vec::new();
    for f in ledger.faces.iter().filter(|f| active(f)) {
        let v = scaled(&f.remaining, &scale);
        if v > 0 {
            net.add_arc(source, f.face, v);
        } else if v < 0 {
            demand -= v;
            sink_arcs.push((f.face, net.add_arc(f.face, sink, -v), -v));
        }
    }
    let cap = caps.per_transfer_cap.as_ref().map_or(flow::INF, |c| scaled(c, &scale));
    let mut transfer_arcs = Vec::new();
    for f in ledger.faces.iter().filter(|f| active(f) && f.remaining.is_positive()) {
        for (g, hops) in reachable(ledger, f.face, caps) {
            if ledger.faces[g].remaining.is_negative() {
                transfer_arcs.push((f.face, g, hops, net.add_arc(f.face, g, cap)));
            }
        }
    }
    let routed = net.max_flow(source, sink);
    let unit = Rational::from_bigs(1.into(), scale);
    if routed < demand {
        let unsatisfied: BTreeSet<usize> = sink_arcs.iter().filter(|&&(_, a, d)| net.flow(a) < d).map(|x| x.0).collect();
        return Feasibility::Infeasible(Infeasible {
            alpha: ledger.alpha.clone(),
            shortfall: Rational::from(demand - routed) * &unit,
            unsatisfied: unsatisfied.into_iter().collect(),
        });
    }
    let mut final_charge: Vec<Rational> = ledger.faces.iter().map(|f| f.remaining.clone()).collect();
    let mut transfers = Vec::new();
    for (from, to, hops, a) in transfer_arcs {
        let x = net.flow(a);
        if x > 0 {
            let amount = Rational::from(x) * &unit;
            final_charge[from] -= &amount;
            final_charge[to] += &amount;
            transfers.push(Transfer { from_face: from, to_face: to, amount, hops });
        }
    }
    let density_bound = q(2, 1) / &ledger.alpha * Rational::from(ledger.n as i64 - 2);
    let density_bound_holds = Rational::from(ledger.m) <= density_bound;
    Feasibility::Feasible(DischargePlan { alpha: ledger.alpha.clone(), transfers, final_charge, density_bound, density_bound_holds })
}
