//! Exact evaluation of edge-density and crossing-number bounds.
//!
//! Every derived constant is computed from a handful of inputs: the density
//! bounds for smaller `k`, the crossing lemma for a hereditary family with
//! `cr(H) >= a*m - b*n`, and the crossing-number upper bounds for 2- and 3-planar
//! graphs. Literature values are carried as text and never recomputed.

mod root;
mod table;

pub use root::{Enclosure, RootConstant, ENCLOSURE_PLACES};
pub use table::{table_report, CellStatus, TableCell, TableReport};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::constructions::Family;
use crate::error::BoundsError;
use crate::rational::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Setting {
    #[serde(rename = "unrestricted")]
    Unrestricted,
    #[serde(rename = "c3free")]
    C3Free,
    #[serde(rename = "c4free")]
    C4Free,
    #[serde(rename = "girth5")]
    Girth5,
}

impl Setting {
    pub const ALL: [Setting; 4] = [Setting::Unrestricted, Setting::C3Free, Setting::C4Free, Setting::Girth5];

    pub fn name(self) -> &'static str {
        match self {
            Setting::Unrestricted => "unrestricted",
            Setting::C3Free => "c3free",
            Setting::C4Free => "c4free",
            Setting::Girth5 => "girth5",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Setting::Unrestricted => "unrestricted",
            Setting::C3Free => "C3-free",
            Setting::C4Free => "C4-free",
            Setting::Girth5 => "girth 5",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Setting {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Setting::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| BoundsError::Unavailable(format!("unknown setting `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    DensityUpper,
    DensityLower,
    CrUpper,
    CrLower,
}

impl FromStr for Direction {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "density_upper" | "density-upper" => Ok(Direction::DensityUpper),
            "density_lower" | "density-lower" => Ok(Direction::DensityLower),
            "cr_upper" | "cr-upper" => Ok(Direction::CrUpper),
            "cr_lower" | "cr-lower" => Ok(Direction::CrLower),
            _ => Err(BoundsError::Unavailable(format!("unknown direction `{s}`"))),
        }
    }
}

/// A concrete `k` or the symbolic general row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KValue {
    Fixed(u32),
    General,
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Fixed(k) => write!(f, "{k}"),
            KValue::General => f.write_str("k"),
        }
    }
}

impl FromStr for KValue {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "k" {
            return Ok(KValue::General);
        }
        s.parse().map(KValue::Fixed).map_err(|_| BoundsError::Unavailable(format!("bad k `{s}`")))
    }
}

impl Serialize for KValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            KValue::Fixed(k) => s.serialize_u32(*k),
            KValue::General => s.serialize_str("k"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoundSpec {
    pub k: KValue,
    pub setting: Setting,
    pub direction: Direction,
}

impl BoundSpec {
    pub fn new(k: KValue, setting: Setting, direction: Direction) -> BoundSpec {
        BoundSpec { k, setting, direction }
    }
}

/// `slope * n + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Affine {
        Affine { slope, intercept }
    }

    pub fn linear(slope: Rational) -> Affine {
        Affine { slope, intercept: Rational::zero() }
    }

    /// `slope * (n - 2)`.
    pub fn euler(slope: Rational) -> Affine {
        let intercept = -(&slope * q(2, 1));
        Affine { slope, intercept }
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        &self.slope * n + &self.intercept
    }
}

impl Affine {
    /// Text such as `3(n-2)` or `2.4n`; `fraction` keeps `33/5` instead of `6.6`.
    pub fn render(&self, fraction: bool) -> String {
        let s = slope_text(&self.slope, fraction);
        if self.intercept.is_zero() {
            format!("{s}n")
        } else if self.intercept == -(&self.slope * q(2, 1)) {
            format!("{s}(n-2)")
        } else if self.intercept.is_negative() {
            format!("{s}n - {}", -self.intercept.clone())
        } else {
            format!("{s}n + {}", self.intercept)
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Renders a rational slope: integers bare, terminating decimals as decimals
/// unless `fraction` is set, everything else as `p/q`.
pub fn slope_text(r: &Rational, fraction: bool) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    match r.terminating_decimal(6) {
        Some(d) if !fraction => d,
        _ => r.to_fraction_string(),
    }
}

/// The numeric part of a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstantKind {
    Rational { value: Rational },
    Root { root: RootConstant, enclosure: Enclosure },
    /// A value quoted from the literature, kept as printed.
    Literature { text: String },
}

impl ConstantKind {
    pub fn rational(value: Rational) -> ConstantKind {
        ConstantKind::Rational { value }
    }

    pub fn root(root: RootConstant) -> ConstantKind {
        let enclosure = root.certified();
        ConstantKind::Root { root, enclosure }
    }
}

/// How the constant enters the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `constant * n`
    TimesN,
    /// `constant * sqrt(k) * n`
    TimesSqrtKN,
    /// `constant * m^3 / n^2`
    CubicLemma,
    /// `Omega(sqrt k) n` or `O(cbrt k) n`, asymptotic only
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Computed here from the crossing lemma, a discharging ratio or a crossing-number bound.
    Derived,
    /// Density of one of the periodic constructions.
    Construction,
    /// Euler's formula for plane graphs of bounded girth.
    Euler,
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub source: Source,
    pub derivation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combination: Option<String>,
}

impl Provenance {
    fn new(source: Source, derivation: impl Into<String>) -> Provenance {
        Provenance { source, derivation: derivation.into(), a: None, b: None, combination: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundConstant {
    #[serde(flatten)]
    pub kind: ConstantKind,
    pub shape: Shape,
    /// The full statement including additive constants, where one is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<Affine>,
    /// The bound applies once `m >= threshold * n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Rational>,
    pub provenance: Provenance,
}

impl BoundConstant {
    fn rational(value: Rational, shape: Shape, provenance: Provenance) -> BoundConstant {
        BoundConstant { kind: ConstantKind::rational(value), shape, affine: None, threshold: None, provenance }
    }

    fn literature(text: &str, shape: Shape) -> BoundConstant {
        BoundConstant {
            kind: ConstantKind::Literature { text: text.to_string() },
            shape,
            affine: None,
            threshold: None,
            provenance: Provenance::new(Source::Cited, "quoted from the literature"),
        }
    }

    fn with_affine(mut self, affine: Affine) -> BoundConstant {
        self.affine = Some(affine);
        self
    }

    /// Exact value of a rational constant.
    pub fn exact(&self) -> Option<&Rational> {
        match &self.kind {
            ConstantKind::Rational { value } => Some(value),
            _ => None,
        }
    }

    pub fn root(&self) -> Option<&RootConstant> {
        match &self.kind {
            ConstantKind::Root { root, .. } => Some(root),
            _ => None,
        }
    }

    /// Bound on `m` at `n` vertices for `TimesN` constants: exact if rational
    /// (using the affine form when present), otherwise the certified upper end.
    pub fn evaluate(&self, n: &Rational) -> Option<Evaluated> {
        if self.shape != Shape::TimesN {
            return None;
        }
        match (&self.kind, &self.affine) {
            (_, Some(a)) => Some(Evaluated::exact(a.eval(n))),
            (ConstantKind::Rational { value }, None) => Some(Evaluated::exact(value * n)),
            (ConstantKind::Root { enclosure, .. }, None) => {
                Some(Evaluated { exact: None, lo: &enclosure.lo * n, hi: &enclosure.hi * n })
            }
            (ConstantKind::Literature { .. }, None) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluated {
    pub exact: Option<Rational>,
    pub lo: Rational,
    pub hi: Rational,
}

impl Evaluated {
    fn exact(v: Rational) -> Evaluated {
        Evaluated { exact: Some(v.clone()), lo: v.clone(), hi: v }
    }
}

/// `cr >= coefficient * m^3 / n^2` once `m >= threshold * n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCoefficient {
    pub a: Rational,
    pub b: Rational,
    pub coefficient: Rational,
    pub threshold: Rational,
}

/// Crossing lemma for a hereditary family with `cr(H) >= a*m - b*n`.
pub fn crossing_lemma_coefficient(a: &Rational, b: &Rational) -> Result<LemmaCoefficient, BoundsError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(BoundsError::NonPositiveCoefficient);
    }
    let coefficient = q(4, 27) * a.pow(3) / b.pow(2);
    let threshold = q(3, 2) * b / a;
    Ok(LemmaCoefficient { a: a.clone(), b: b.clone(), coefficient, threshold })
}

/// `k*m - sum mu_i(n)` for the first `k` entries of `mu`.
pub fn naive_cr_lower(k: usize, mu: &[Affine], n: &Rational, m: &Rational) -> Rational {
    let (a, form) = naive_cr_form(k, mu);
    a * m - form.eval(n)
}

/// Symbolic form of [`naive_cr_lower`]: `(k, sum mu_i)` so that `cr >= k*m - sum`.
pub fn naive_cr_form(k: usize, mu: &[Affine]) -> (Rational, Affine) {
    assert!(k >= 1 && mu.len() >= k, "need mu_0 .. mu_(k-1)");
    let slope = mu[..k].iter().map(|a| &a.slope).sum();
    let intercept = mu[..k].iter().map(|a| &a.intercept).sum();
    (Rational::from(k), Affine::new(slope, intercept))
}

/// Crossing number upper bound for `k`-planar graphs as an affine form in `n`.
pub fn cr_upper_form(k: u32) -> Result<Affine, BoundsError> {
    match k {
        2 => Ok(Affine::new(q(10, 3), q(-20, 3))),
        3 => Ok(Affine::new(q(33, 5), q(-66, 5))),
        _ => Err(BoundsError::Unavailable(format!("no crossing-number bound for k = {k} beyond the trivial km/2"))),
    }
}

pub fn cr_upper(k: u32, n: u64) -> Result<Rational, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Unavailable("n must be at least 2".into()));
    }
    Ok(cr_upper_form(k)?.eval(&Rational::from(n as usize)))
}

/// `c * m^3 / n^2 <= u * n` solved for `m / n`.
pub fn derive_cubic_density(c: &Rational, u: &Rational) -> Result<RootConstant, BoundsError> {
    if !c.is_positive() || !u.is_positive() {
        return Err(BoundsError::NonPositiveCoefficient);
    }
    RootConstant::cbrt(u / c)
}

/// Largest `m / n` for plane graphs of girth at least `g`.
fn euler_slope(g: i64) -> Rational {
    q(g, g - 2)
}

/// Known rational upper bounds `mu_i`, used as inputs to the crossing lemma.
pub fn rational_density_upper(setting: Setting, k: u32) -> Result<(Affine, Provenance), BoundsError> {
    let discharge = |alpha: Rational| {
        let slope = q(2, 1) / &alpha;
        let mut p = Provenance::new(Source::Derived, format!("discharging with ratio alpha = {alpha}: m <= (2/alpha)(n-2)"));
        p.combination = Some("charge 4n-8 redistributed so every face keeps alpha per incident vertex".into());
        (slope, p)
    };
    let (affine, prov) = match (setting, k) {
        (Setting::Unrestricted, 0) => (Affine::euler(euler_slope(3)), Provenance::new(Source::Euler, "plane graphs")),
        (Setting::C3Free, 0) => (Affine::euler(euler_slope(4)), Provenance::new(Source::Euler, "plane graphs of girth 4")),
        (Setting::Girth5, 0) => (Affine::euler(euler_slope(5)), Provenance::new(Source::Euler, "plane graphs of girth 5")),
        (Setting::C4Free, 0) => (Affine::euler(q(15, 7)), Provenance::new(Source::Cited, "C4-free plane graphs")),
        (Setting::C3Free, 1) => {
            let (s, p) = discharge(q(2, 3));
            (Affine::euler(s), p)
        }
        (Setting::C4Free, 1) => {
            let (s, p) = discharge(q(4, 5));
            (Affine::euler(s), p)
        }
        (Setting::Girth5, 1) => {
            let (s, mut p) = discharge(q(5, 6));
            p.derivation.push_str("; stated without the additive constant");
            (Affine::linear(s), p)
        }
        (Setting::C3Free, 2) => {
            let (s, p) = discharge(q(1, 2));
            (Affine::euler(s), p)
        }
        _ => return Err(BoundsError::Unavailable(format!("no rational density bound for {setting}, k = {k}"))),
    };
    Ok((affine, prov))
}

/// `mu_0 .. mu_(k-1)` for `setting`.
pub fn mu_list(setting: Setting, k: u32) -> Result<Vec<Affine>, BoundsError> {
    (0..k).map(|i| rational_density_upper(setting, i).map(|x| x.0)).collect()
}

/// The crossing lemma instance used for `setting`: `a = k0` and `b = sum mu_i`
/// for the largest `k0` with rational `mu_0 .. mu_(k0-1)`.
pub fn lemma_for(setting: Setting) -> Result<LemmaCoefficient, BoundsError> {
    let k0 = match setting {
        Setting::C3Free => 3,
        Setting::C4Free | Setting::Girth5 => 2,
        Setting::Unrestricted => {
            return Err(BoundsError::Unavailable("the unrestricted crossing lemma constant is cited, not derived".into()))
        }
    };
    let (a, sum) = naive_cr_form(k0, &mu_list(setting, k0 as u32)?);
    crossing_lemma_coefficient(&a, &sum.slope)
}

fn lemma_provenance(l: &LemmaCoefficient, combination: String) -> Provenance {
    Provenance {
        source: Source::Derived,
        derivation: format!("crossing lemma with cr(H) >= {}m - {}n", l.a, l.b),
        a: Some(l.a.clone()),
        b: Some(l.b.clone()),
        combination: Some(combination),
    }
}

/// Upper bound on `m / n` for `k`-planar graphs in `setting`.
pub fn density_upper(setting: Setting, k: KValue) -> Result<BoundConstant, BoundsError> {
    let k = match k {
        KValue::General => return density_upper_general_k(setting, 1, None).map(|g| g.constant),
        KValue::Fixed(k) => k,
    };
    if let Ok((affine, prov)) = rational_density_upper(setting, k) {
        return Ok(BoundConstant::rational(affine.slope.clone(), Shape::TimesN, prov).with_affine(affine));
    }
    match (setting, k) {
        (Setting::Unrestricted, 1) => Ok(BoundConstant::literature("4", Shape::TimesN)),
        (Setting::Unrestricted, 2) => Ok(BoundConstant::literature("5", Shape::TimesN)),
        (Setting::Unrestricted, 3) => Ok(BoundConstant::literature("5.5", Shape::TimesN)),
        (Setting::Unrestricted, _) => Err(BoundsError::Unavailable(format!("no unrestricted bound for k = {k}"))),
        (_, 2) | (_, 3) => {
            let lemma = lemma_for(setting)?;
            let u = cr_upper_form(k)?.slope;
            let root = derive_cubic_density(&lemma.coefficient, &u)?;
            let comb = format!("{}m^3/n^2 <= cr <= {}n", lemma.coefficient, u);
            Ok(BoundConstant {
                kind: ConstantKind::root(root),
                shape: Shape::TimesN,
                affine: None,
                threshold: Some(lemma.threshold.clone()),
                provenance: lemma_provenance(&lemma, comb),
            })
        }
        _ => Err(BoundsError::Unavailable(format!("no {setting} upper bound for k = {k}"))),
    }
}

/// Lower bound on the maximum `m / n`.
pub fn density_lower(setting: Setting, k: KValue) -> Result<BoundConstant, BoundsError> {
    let family = |f: Family| {
        let p = Provenance::new(Source::Construction, format!("{f} construction"));
        Ok(BoundConstant::rational(f.asymptotic_density(), Shape::TimesN, p))
    };
    match (setting, k) {
        (_, KValue::Fixed(0)) if setting != Setting::C4Free => {
            let (affine, _) = rational_density_upper(setting, 0)?;
            let p = Provenance::new(Source::Euler, "tight for plane graphs");
            Ok(BoundConstant::rational(affine.slope, Shape::TimesN, p))
        }
        (Setting::C4Free, KValue::Fixed(0)) => Ok(BoundConstant::literature("15/7", Shape::TimesN)),
        (Setting::Unrestricted, KValue::Fixed(1)) => Ok(BoundConstant::literature("4", Shape::TimesN)),
        (Setting::Unrestricted, KValue::Fixed(2)) => Ok(BoundConstant::literature("5", Shape::TimesN)),
        (Setting::Unrestricted, KValue::Fixed(3)) => Ok(BoundConstant::literature("5.5", Shape::TimesN)),
        (Setting::Unrestricted, KValue::General) => Ok(BoundConstant::literature("Ω(√k)", Shape::Asymptotic)),
        (Setting::C3Free, KValue::Fixed(1)) => Ok(BoundConstant::literature("3", Shape::TimesN)),
        (Setting::C3Free, KValue::Fixed(2)) => Ok(BoundConstant::literature("3.5", Shape::TimesN)),
        (Setting::C3Free, KValue::Fixed(3)) => Ok(BoundConstant::literature("4", Shape::TimesN)),
        (Setting::C4Free, KValue::Fixed(1)) => family(Family::C4Free1Planar),
        (Setting::C4Free, KValue::Fixed(2)) => family(Family::C4Free2Planar),
        (Setting::Girth5, KValue::Fixed(1)) => family(Family::Girth51Planar),
        (Setting::Girth5, KValue::Fixed(2)) => family(Family::Girth52Planar),
        (Setting::Girth5, KValue::Fixed(3)) => family(Family::Girth53Planar),
        _ => Err(BoundsError::Unavailable(format!("no {setting} lower bound for k = {k}"))),
    }
}

/// `sqrt(k / (2c)) * n` from `km/2 >= cr >= c m^3 / n^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralKBound {
    pub k: u32,
    /// Constant in front of `sqrt(k) * n`.
    pub constant: BoundConstant,
    /// The whole factor `sqrt(k / (2c))` for this `k`.
    pub at_k: RootConstant,
    pub at_k_enclosure: Enclosure,
    /// Whether the supplied `(n, m)` meets `m >= threshold * n`.
    pub applicable: Option<bool>,
    /// Whether a direct bound for this `k` is already smaller.
    pub weaker_than_direct: Option<bool>,
}

pub fn density_upper_general_k(
    setting: Setting,
    k: u32,
    m_check: Option<(u64, u64)>,
) -> Result<GeneralKBound, BoundsError> {
    if k == 0 {
        return Err(BoundsError::Unavailable("k must be positive".into()));
    }
    if setting == Setting::Unrestricted {
        return Err(BoundsError::Unavailable("the unrestricted 3.81 constant is cited, not derived".into()));
    }
    let lemma = lemma_for(setting)?;
    let root = RootConstant::sqrt((q(2, 1) * &lemma.coefficient).recip())?;
    let at_k = RootConstant::sqrt(&root.radicand * Rational::from(k as usize))?;
    let comb = format!("km/2 >= cr >= {}m^3/n^2", lemma.coefficient);
    let constant = BoundConstant {
        kind: ConstantKind::root(root),
        shape: Shape::TimesSqrtKN,
        affine: None,
        threshold: Some(lemma.threshold.clone()),
        provenance: lemma_provenance(&lemma, comb),
    };
    let applicable = m_check.map(|(n, m)| Rational::from(m as usize) >= &lemma.threshold * Rational::from(n as usize));
    let weaker_than_direct = density_upper(setting, KValue::Fixed(k)).ok().and_then(|d| {
        let at_k_lo = at_k.certified().lo;
        match (&d.kind, d.shape) {
            (ConstantKind::Rational { value }, Shape::TimesN) => Some(&at_k_lo > value),
            (ConstantKind::Root { enclosure, .. }, Shape::TimesN) => Some(at_k_lo > enclosure.hi),
            _ => None,
        }
    });
    let at_k_enclosure = at_k.certified();
    Ok(GeneralKBound { k, constant, at_k, at_k_enclosure, applicable, weaker_than_direct })
}

/// Crossing-number lower bound coefficient `c` in `cr >= c * m^3 / n^2`.
pub fn cr_lower(setting: Setting) -> Result<BoundConstant, BoundsError> {
    if setting == Setting::Unrestricted {
        return Ok(BoundConstant::literature("0.034", Shape::CubicLemma));
    }
    let lemma = lemma_for(setting)?;
    let mut c = BoundConstant::rational(
        lemma.coefficient.clone(),
        Shape::CubicLemma,
        lemma_provenance(&lemma, "probabilistic amplification of the naive bound".into()),
    );
    c.threshold = Some(lemma.threshold);
    Ok(c)
}

/// Dispatch on a full spec.
pub fn bound(spec: &BoundSpec) -> Result<BoundConstant, BoundsError> {
    match spec.direction {
        Direction::DensityUpper => density_upper(spec.setting, spec.k),
        Direction::DensityLower => density_lower(spec.setting, spec.k),
        Direction::CrLower => match spec.k {
            KValue::General => cr_lower(spec.setting),
            KValue::Fixed(k) => Err(BoundsError::Unavailable(format!("no crossing lower bound listed for k = {k}"))),
        },
        Direction::CrUpper => match (spec.setting, spec.k) {
            (Setting::Unrestricted, KValue::Fixed(k)) => {
                let affine = cr_upper_form(k)?;
                let p = Provenance::new(Source::Derived, format!("drawing with at most {affine} crossings"));
                Ok(BoundConstant::rational(affine.slope.clone(), Shape::TimesN, p).with_affine(affine))
            }
            _ => Err(BoundsError::Unavailable("crossing upper bounds are listed for unrestricted k = 2, 3 only".into())),
        },
    }
}

/// A bound evaluated at concrete `n` and optionally `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEvaluation {
    pub n: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Rational>,
    /// Value of the bound, when the shape and inputs allow one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Evaluated>,
    /// Whether `m >= threshold * n`, for bounds with a threshold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_met: Option<bool>,
    /// Whether `m` respects an upper density bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_within: Option<bool>,
}

/// Looks up the bound for `spec` and evaluates it at `n` (and `m`, if given).
pub fn evaluate_bound(spec: &BoundSpec, n: &Rational, m: Option<&Rational>) -> Result<(BoundConstant, BoundEvaluation), BoundsError> {
    if !n.is_positive() || m.is_some_and(|m| m.is_negative()) {
        return Err(BoundsError::Unavailable("n must be positive and m nonnegative".into()));
    }
    let c = bound(spec)?;
    let threshold_met = match (&c.threshold, m) {
        (Some(t), Some(m)) => Some(m >= &(t * n)),
        _ => None,
    };
    let value = match (&c.shape, c.exact(), m) {
        (Shape::CubicLemma, Some(coef), Some(m)) => Some(Evaluated::exact(coef * m.pow(3) / n.pow(2))),
        _ => c.evaluate(n),
    };
    let m_within = match (spec.direction, &value, m) {
        (Direction::DensityUpper, Some(v), Some(m)) => Some(m <= &v.hi),
        _ => None,
    };
    let eval = BoundEvaluation { n: n.clone(), m: m.cloned(), value, threshold_met, m_within };
    Ok((c, eval))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_coefficients() {
        let c = crossing_lemma_coefficient(&q(2, 1), &q(65, 14)).unwrap();
        assert_eq!((c.coefficient, c.threshold), (q(6272, 114075), q(195, 56)));
        let c = crossing_lemma_coefficient(&q(2, 1), &q(61, 15)).unwrap();
        assert_eq!((c.coefficient, c.threshold), (q(800, 11163), q(61, 20)));
        let c = crossing_lemma_coefficient(&q(3, 1), &q(9, 1)).unwrap();
        assert_eq!((c.coefficient, c.threshold), (q(4, 81), q(9, 2)));
        assert_eq!(crossing_lemma_coefficient(&q(0, 1), &q(1, 1)), Err(BoundsError::NonPositiveCoefficient));
    }

    #[test]
    fn naive_bounds() {
        let n = q(100, 1);
        let m = q(300, 1);
        let c4 = [Affine::euler(q(15, 7)), Affine::euler(q(5, 2))];
        let (a, s) = naive_cr_form(2, &c4);
        assert_eq!((a, s.slope.clone()), (q(2, 1), q(65, 14)));
        assert_eq!(s.intercept, q(-30, 7) - q(5, 1));
        assert_eq!(naive_cr_lower(2, &c4, &n, &m), q(600, 1) - q(6500, 14) + q(65, 7));
        let g5 = [Affine::linear(q(5, 3)), Affine::linear(q(12, 5))];
        assert_eq!(naive_cr_lower(2, &g5, &n, &m), q(600, 1) - q(6100, 15));
        let c3 = [Affine::linear(q(2, 1)), Affine::linear(q(3, 1)), Affine::linear(q(4, 1))];
        assert_eq!(naive_cr_lower(3, &c3, &n, &m), q(900, 1) - q(900, 1));
    }

    #[test]
    fn crossing_upper() {
        assert_eq!(cr_upper(2, 20).unwrap(), q(60, 1));
        assert_eq!(cr_upper(3, 2).unwrap(), Rational::zero());
        assert_eq!(cr_upper(2, 2).unwrap(), Rational::zero());
        assert!(matches!(cr_upper(4, 10), Err(BoundsError::Unavailable(_))));
    }

    #[test]
    fn cubic_radicands() {
        assert_eq!(derive_cubic_density(&q(6272, 114075), &q(10, 3)).unwrap().radicand, q(190125, 3136));
        assert_eq!(derive_cubic_density(&q(800, 11163), &q(10, 3)).unwrap().radicand, q(11163, 240));
        assert_eq!(derive_cubic_density(&q(4, 81), &q(33, 5)).unwrap().radicand, q(2673, 20));
    }

    #[test]
    fn upper_cells() {
        let r = |s, k| density_upper(s, KValue::Fixed(k)).unwrap();
        assert_eq!(r(Setting::Girth5, 1).exact(), Some(&q(12, 5)));
        assert_eq!(r(Setting::C4Free, 0).affine, Some(Affine::new(q(15, 7), q(-30, 7))));
        assert_eq!(r(Setting::C4Free, 2).root().unwrap().radicand, q(190125, 3136));
        assert_eq!(r(Setting::Girth5, 3).root().unwrap().radicand, q(368379, 4000));
        assert_eq!(r(Setting::C4Free, 3).root().unwrap().radicand, q(3764475, 31360));
        assert!(density_lower(Setting::C4Free, KValue::Fixed(3)).is_err());
        let e = r(Setting::C4Free, 2).evaluate(&q(10, 1)).unwrap();
        assert!(e.exact.is_none() && e.hi <= q(3929, 100));
        assert_eq!(r(Setting::C3Free, 1).evaluate(&q(10, 1)).unwrap().exact, Some(q(24, 1)));
    }

    #[test]
    fn general_k() {
        let g = density_upper_general_k(Setting::C4Free, 3, Some((100, 349))).unwrap();
        assert_eq!(g.constant.root().unwrap().radicand, q(114075, 12544));
        assert_eq!(g.applicable, Some(true));
        assert_eq!(density_upper_general_k(Setting::C4Free, 3, Some((100, 348))).unwrap().applicable, Some(false));
        let g = density_upper_general_k(Setting::Girth5, 1, None).unwrap();
        assert_eq!(g.weaker_than_direct, Some(true));
        let g = density_upper_general_k(Setting::C3Free, 4, None).unwrap();
        assert_eq!(g.at_k.radicand, q(81, 2));
        assert!(density_upper_general_k(Setting::Unrestricted, 2, None).is_err());
    }

    #[test]
    fn affine_text() {
        assert_eq!(Affine::euler(q(3, 1)).to_string(), "3(n-2)");
        assert_eq!(Affine::euler(q(15, 7)).to_string(), "15/7(n-2)");
        assert_eq!(Affine::linear(q(12, 5)).to_string(), "2.4n");
        assert_eq!(Affine::new(q(10, 3), q(-20, 3)).to_string(), "10/3(n-2)");
        assert_eq!(Affine::new(q(2, 1), q(-5, 1)).to_string(), "2n - 5");
    }
    #[test]
    fn evaluation_at_instance_sizes() {
        let spec = BoundSpec::new(KValue::Fixed(2), Setting::C4Free, Direction::DensityUpper);
        let (c, e) = evaluate_bound(&spec, &q(1000, 1), Some(&q(2500, 1))).unwrap();
        assert_eq!(c.root().unwrap().radicand, q(190125, 3136));
        let v = e.value.unwrap();
        assert!(v.hi < q(3929, 1) && v.lo > q(3928, 1));
        assert_eq!(e.m_within, Some(true));
        let spec = BoundSpec::new(KValue::General, Setting::C3Free, Direction::CrLower);
        let (_, e) = evaluate_bound(&spec, &q(10, 1), Some(&q(90, 1))).unwrap();
        assert_eq!(e.threshold_met, Some(true));
        assert!(e.value.unwrap().exact.is_some());
    }

}
