use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{compute_crossings, crossing_counts, DrawnGraph};
use crate::bounds::{density_upper, ConstantKind, KValue, Setting};
use crate::error::DrawingError;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Girth,
    C3,
    C4,
    Kplanar,
    Density,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Girth, Check::C3, Check::C4, Check::Kplanar, Check::Density];

    pub fn name(self) -> &'static str {
        match self {
            Check::Girth => "girth",
            Check::C3 => "c3",
            Check::C4 => "c4",
            Check::Kplanar => "kplanar",
            Check::Density => "density",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s.trim()).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub k: Option<usize>,
    pub girth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub pass: bool,
    pub value: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub results: Vec<CheckResult>,
    pub pass: bool,
}

/// Strongest listed upper bound on `m` for the classes the graph belongs to.
fn density_cap(d: &DrawnGraph, k: usize) -> Option<(Rational, Setting)> {
    let g = d.graph();
    let girth = g.girth();
    let settings = [
        (Setting::Girth5, girth.is_none_or(|x| x >= 5)),
        (Setting::C4Free, !g.has_c4()),
        (Setting::C3Free, !g.has_c3()),
        (Setting::Unrestricted, true),
    ];
    let n = Rational::from(d.n());
    let mut best: Option<(Rational, Setting)> = None;
    for (s, applies) in settings {
        if !applies {
            continue;
        }
        let Ok(c) = density_upper(s, KValue::Fixed(k as u32)) else { continue };
        let cap = match (c.evaluate(&n), &c.kind) {
            (Some(e), _) => e.hi,
            (None, ConstantKind::Literature { text }) => match text.parse::<Rational>() {
                Ok(r) => r * &n,
                Err(_) => continue,
            },
            _ => continue,
        };
        if best.as_ref().is_none_or(|b| cap < b.0) {
            best = Some((cap, s));
        }
    }
    best
}

pub fn verify_drawing(d: &DrawnGraph, checks: &[Check], expect: Expectations) -> Result<VerifyReport, DrawingError> {
    let crossings = compute_crossings(d)?;
    let lcn = crossing_counts(&crossings, d.m()).into_iter().max().unwrap_or(0);
    let g = d.graph();
    let mut results = Vec::new();
    for &check in checks {
        let r = match check {
            Check::Girth => {
                let girth = g.girth();
                let value = girth.map_or("infinite".to_string(), |x| x.to_string());
                let pass = expect.girth.is_none_or(|want| girth.is_none_or(|x| x >= want));
                let detail = expect.girth.map_or("no expectation".into(), |w| format!("expected girth >= {w}"));
                CheckResult { check, pass, value, detail }
            }
            Check::C3 => {
                let has = g.has_c3();
                CheckResult { check, pass: !has, value: has.to_string(), detail: "graph must be C3-free".into() }
            }
            Check::C4 => {
                let has = g.has_c4();
                CheckResult { check, pass: !has, value: has.to_string(), detail: "graph must be C4-free".into() }
            }
            Check::Kplanar => {
                let pass = expect.k.is_none_or(|k| lcn <= k);
                let detail = expect.k.map_or("no expectation".into(), |k| format!("at most {k} crossings per edge"));
                CheckResult { check, pass, value: lcn.to_string(), detail }
            }
            Check::Density => {
                let k = expect.k.unwrap_or(lcn);
                match density_cap(d, k) {
                    Some((cap, s)) => CheckResult {
                        check,
                        pass: Rational::from(d.m()) <= cap,
                        value: d.m().to_string(),
                        detail: format!("{s} {k}-planar bound at n = {}: m <= {cap}", d.n()),
                    },
                    None => CheckResult {
                        check,
                        pass: true,
                        value: d.m().to_string(),
                        detail: format!("no listed bound for k = {k}"),
                    },
                }
            }
        };
        results.push(r);
    }
    let pass = results.iter().all(|r| r.pass);
    Ok(VerifyReport { n: d.n(), m: d.m(), crossings: crossings.len(), results, pass })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn triangle_fails_c3() {
        let r = verify_drawing(&triangle(), &[Check::C3, Check::C4], Expectations::default()).unwrap();
        assert!(!r.pass);
        assert!(!r.results[0].pass && r.results[1].pass);
    }

    #[test]
    fn k4_is_one_planar_and_dense_enough() {
        let e = Expectations { k: Some(1), girth: None };
        let r = verify_drawing(&k4_crossed(), &Check::ALL, e).unwrap();
        let by = |c: Check| r.results.iter().find(|x| x.check == c).unwrap().clone();
        assert_eq!(by(Check::Kplanar).value, "1");
        assert!(by(Check::Kplanar).pass);
        assert_eq!(by(Check::Girth).value, "3");
        // 6 <= 4 * 4 from the unrestricted 1-planar bound
        assert!(by(Check::Density).pass);
        assert!(!by(Check::C4).pass);
    }
}
