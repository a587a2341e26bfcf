use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use kplanar_core::bounds::{evaluate_bound, table_report, BoundSpec, ConstantKind, Direction, KValue, Setting};
use kplanar_core::constructions::{generate, ConstructionSpec, Family};
use kplanar_core::discharging::{build_ledger, charge_sum_check, density_formula_check, discharge_feasibility, Feasibility, RuleCaps};
use kplanar_core::drawing::{compute_crossings, from_json, planarize, render_svg, to_json, verify_drawing, Check, Expectations, SvgOptions};
use kplanar_core::experiments::{audit_mu_list, removal_audit, sample_induced, SamplingConfig};
use kplanar_core::rational::Rounding;
use kplanar_core::{DrawnGraph, Rational};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "kplanar", version, about = "Drawings, constructions and density bounds for k-planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a periodic construction and write it as drawing JSON.
    Generate(GenerateArgs),
    /// Run structural checks on a drawing.
    Verify(VerifyArgs),
    /// Look up and evaluate one bound.
    Bounds(BoundsArgs),
    /// Print both bound tables.
    Table(TableArgs),
    /// Charge ledger, discharge feasibility and the cell-size density formula.
    Discharge(DischargeArgs),
    /// Random induced subdrawings.
    Sample(SampleArgs),
    /// Compare greedy uncrossing with the naive crossing lower bound.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long)]
    wrap: bool,
    /// Drawing JSON destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Pixels per drawing unit in the SVG.
    #[arg(long, default_value = "40")]
    svg_scale: Rational,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_check, default_value = "girth,c3,c4,kplanar,density")]
    checks: Vec<Check>,
    #[arg(long)]
    expect_k: Option<usize>,
    #[arg(long)]
    expect_girth: Option<usize>,
}

#[derive(Args)]
struct BoundsArgs {
    /// A number, or `k` for the general row.
    #[arg(long, value_parser = parse_k)]
    k: KValue,
    #[arg(long, value_parser = parse_setting)]
    setting: Setting,
    #[arg(long)]
    n: Option<Rational>,
    #[arg(long)]
    m: Option<Rational>,
    /// U, L, crU or crL (or density-upper, density-lower, cr-upper, cr-lower).
    #[arg(long, default_value = "U", value_parser = parse_direction)]
    direction: Direction,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct DischargeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    alpha: Rational,
    /// Also evaluate the cell-size density formula with this `t`.
    #[arg(long)]
    density_formula: Option<u32>,
    #[arg(long, default_value_t = 2)]
    relay_depth: usize,
    /// Let any face relay charge, not only faces in deficit.
    #[arg(long)]
    relay_any: bool,
    #[arg(long)]
    transfer_cap: Option<Rational>,
    /// Include the per-face ledger in the output.
    #[arg(long)]
    ledger: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    p: Rational,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "1/20")]
    crossing_tolerance: Rational,
    #[arg(long, default_value = "1/100")]
    count_tolerance: Rational,
    /// Write per-trial statistics here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = parse_setting)]
    mu_class: Setting,
    #[arg(long)]
    k: u32,
}

enum Failure {
    Usage(String),
    Input(String),
}

type Outcome = Result<(Value, bool), Failure>;

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse()
}

fn parse_k(s: &str) -> Result<KValue, String> {
    match s {
        "general" => Ok(KValue::General),
        _ => s.parse().map_err(|e| format!("{e}")),
    }
}

fn parse_setting(s: &str) -> Result<Setting, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    match s {
        "U" => Ok(Direction::DensityUpper),
        "L" => Ok(Direction::DensityLower),
        "crU" => Ok(Direction::CrUpper),
        "crL" => Ok(Direction::CrLower),
        _ => s.parse().map_err(|e| format!("{e}")),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn read_drawing(path: &Path) -> Result<DrawnGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn run_generate(a: &GenerateArgs) -> Outcome {
    let spec = ConstructionSpec::new(a.family, a.rows, a.cols, a.wrap);
    let c = generate(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = to_json(&c.drawing);
    if let Some(svg) = &a.svg {
        let crossings = compute_crossings(&c.drawing).map_err(|e| Failure::Input(e.to_string()))?;
        let opts = SvgOptions { scale: a.svg_scale.clone(), ..SvgOptions::default() };
        write_file(svg, &render_svg(&c.drawing, &crossings, &opts))?;
    }
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            Ok((envelope("generate", json!({ "out": path, "certificate": to_value(&c.certificate) })), true))
        }
        None => {
            out(&format!("{text}\n"));
            Ok((Value::Null, true))
        }
    }
}

fn run_verify(a: &VerifyArgs) -> Outcome {
    let d = read_drawing(&a.input)?;
    let expect = Expectations { k: a.expect_k, girth: a.expect_girth };
    let r = verify_drawing(&d, &a.checks, expect).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((envelope("verify", to_value(&r)), r.pass))
}

fn bounds_text(c: &kplanar_core::bounds::BoundConstant, e: Option<&kplanar_core::bounds::BoundEvaluation>) -> String {
    let mut out = match &c.kind {
        ConstantKind::Rational { value } => format!("constant: {value}\n"),
        ConstantKind::Root { root, enclosure } => format!(
            "constant: {root} = {} (enclosure [{}, {}])\n",
            root.to_decimal(3, Rounding::Up),
            enclosure.lo.to_decimal(7, Rounding::Down),
            enclosure.hi.to_decimal(7, Rounding::Up)
        ),
        ConstantKind::Literature { text } => format!("constant: {text} (cited)\n"),
    };
    if let Some(a) = &c.affine {
        out.push_str(&format!("form: {a}\n"));
    }
    if let Some(t) = &c.threshold {
        out.push_str(&format!("applies for m >= {}n\n", t));
    }
    out.push_str(&format!("derivation: {}\n", c.provenance.derivation));
    if let Some(e) = e {
        if let Some(v) = &e.value {
            match &v.exact {
                Some(x) => out.push_str(&format!("value at n = {}: {x}\n", e.n)),
                None => out.push_str(&format!(
                    "value at n = {}: between {} and {}\n",
                    e.n,
                    v.lo.to_decimal(3, Rounding::Down),
                    v.hi.to_decimal(3, Rounding::Up)
                )),
            }
        }
        if let Some(t) = e.threshold_met {
            out.push_str(&format!("threshold met: {t}\n"));
        }
        if let Some(w) = e.m_within {
            out.push_str(&format!("m within bound: {w}\n"));
        }
    }
    out
}

fn run_bounds(a: &BoundsArgs) -> Result<(Value, bool, Option<String>), Failure> {
    let spec = BoundSpec::new(a.k, a.setting, a.direction);
    let (c, e) = match &a.n {
        Some(n) => {
            let (c, e) = evaluate_bound(&spec, n, a.m.as_ref()).map_err(|e| Failure::Usage(e.to_string()))?;
            (c, Some(e))
        }
        None if a.m.is_some() => return Err(Failure::Usage("--m needs --n".into())),
        None => (kplanar_core::bounds::bound(&spec).map_err(|e| Failure::Usage(e.to_string()))?, None),
    };
    let pass = e.as_ref().and_then(|e| e.m_within).unwrap_or(true);
    let text = matches!(a.format, Format::Text).then(|| bounds_text(&c, e.as_ref()));
    let body = json!({ "spec": { "k": a.k, "setting": a.setting, "direction": a.direction }, "constant": c, "evaluation": e });
    Ok((envelope("bounds", body), pass, text))
}

fn run_discharge(a: &DischargeArgs) -> Outcome {
    if !a.alpha.is_positive() || a.alpha > Rational::one() {
        return Err(Failure::Usage(format!("alpha = {} is outside (0, 1]", a.alpha)));
    }
    if a.density_formula == Some(0) {
        return Err(Failure::Usage("--density-formula needs t >= 1".into()));
    }
    let d = read_drawing(&a.input)?;
    let p = planarize(&d).map_err(|e| Failure::Input(e.to_string()))?;
    let ledger = build_ledger(&p, &a.alpha);
    let sum = charge_sum_check(&ledger);
    let caps = RuleCaps { relay_depth: a.relay_depth, relay_through_deficit_only: !a.relay_any, per_transfer_cap: a.transfer_cap.clone() };
    let feas = discharge_feasibility(&ledger, &caps);
    let implication = match &feas {
        Feasibility::Feasible(plan) => plan.density_bound_holds,
        Feasibility::Infeasible(_) => true,
    };
    let mut pass = sum.pass && feas.is_feasible() && implication && ledger.vbound != Some(false);
    let mut body = json!({
        "n": ledger.n,
        "m": ledger.m,
        "crossings": ledger.crossings,
        "alpha": a.alpha,
        "charge_sum": sum,
        "vbound": ledger.vbound,
        "rule_caps": caps,
        "feasibility": feas,
    });
    if let Some(t) = a.density_formula {
        let r = density_formula_check(&p, t);
        pass &= r.pass;
        body["density_formula"] = to_value(&r);
    }
    if a.ledger {
        body["ledger"] = to_value(&ledger);
    }
    Ok((envelope("discharge", body), pass))
}

fn run_sample(a: &SampleArgs) -> Outcome {
    let d = read_drawing(&a.input)?;
    let cfg = SamplingConfig {
        p: a.p.clone(),
        trials: a.trials,
        seed: a.seed,
        crossing_tolerance: a.crossing_tolerance.clone(),
        count_tolerance: a.count_tolerance.clone(),
        keep_trials: a.csv.is_some(),
        threads: a.threads,
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let r = sample_induced(&d, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
    if let Some(path) = &a.csv {
        write_file(path, &r.to_csv())?;
    }
    Ok((envelope("sample", to_value(&r)), r.pass))
}

fn run_audit(a: &AuditArgs) -> Outcome {
    if a.mu_class == Setting::Unrestricted || a.k == 0 {
        return Err(Failure::Usage("--mu-class must be c3free, c4free or girth5 and --k positive".into()));
    }
    let mu = audit_mu_list(a.mu_class, a.k).map_err(|e| Failure::Usage(e.to_string()))?;
    let d = read_drawing(&a.input)?;
    let r = removal_audit(&d, a.k as usize, &mu).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((envelope("audit", json!({ "mu_class": a.mu_class, "report": r })), r.pass))
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(v: &Value) {
    if !v.is_null() {
        out(&format!("{}\n", serde_json::to_string_pretty(v).expect("json")));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => run_generate(a),
        Command::Verify(a) => run_verify(a),
        Command::Bounds(a) => run_bounds(a).map(|(v, pass, text)| match text {
            Some(t) => {
                out(&t);
                (Value::Null, pass)
            }
            None => (v, pass),
        }),
        Command::Table(a) => {
            let t = table_report();
            match a.format {
                Format::Text => {
                    out(&t.to_text());
                    Ok((Value::Null, true))
                }
                Format::Json => Ok((envelope("table", json!({ "tables": t, "flags": t.flags() })), true)),
            }
        }
        Command::Discharge(a) => run_discharge(a),
        Command::Sample(a) => run_sample(a),
        Command::Audit(a) => run_audit(a),
    };
    match result {
        Ok((v, pass)) => {
            emit(&v);
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
