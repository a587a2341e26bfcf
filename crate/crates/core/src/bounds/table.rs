use serde::Serialize;

use super::{
    bound, cr_upper_form, slope_text, BoundConstant, BoundSpec, ConstantKind, Direction, KValue, Setting, Shape, Source,
};
use crate::rational::Rounding;

/// Digits shown for root constants when the table does not say otherwise.
const DEFAULT_DIGITS: u32 = 3;

/// Cells whose printed value uses two digits.
fn table_digits(k: KValue, setting: Setting) -> u32 {
    match (k, setting) {
        (KValue::Fixed(2), Setting::C4Free) | (KValue::Fixed(3), Setting::C3Free) | (KValue::General, Setting::C3Free) => 2,
        _ => DEFAULT_DIGITS,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Derived,
    Construction,
    Euler,
    Cited,
    Unavailable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub row: String,
    pub setting: Setting,
    pub column: String,
    pub text: String,
    pub status: CellStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<BoundConstant>,
    /// Rendering with the default number of digits, when the table uses fewer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub long_text: Option<String>,
    /// Set when rounding to nearest would print different digits than the table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub density: Vec<TableCell>,
    pub crossing: Vec<TableCell>,
}

fn status_of(c: &BoundConstant) -> CellStatus {
    match c.provenance.source {
        Source::Derived => CellStatus::Derived,
        Source::Construction => CellStatus::Construction,
        Source::Euler => CellStatus::Euler,
        Source::Cited => CellStatus::Cited,
    }
}

fn suffix(shape: Shape) -> &'static str {
    match shape {
        Shape::TimesN => "n",
        Shape::TimesSqrtKN => "√k n",
        Shape::CubicLemma => " m³/n²",
        Shape::Asymptotic => "n",
    }
}

fn unavailable(row: String, setting: Setting, column: &str, text: &str) -> TableCell {
    TableCell {
        row,
        setting,
        column: column.to_string(),
        text: text.to_string(),
        status: CellStatus::Unavailable,
        constant: None,
        long_text: None,
        flag: None,
        notes: Vec::new(),
    }
}

fn render(
    row: String,
    setting: Setting,
    column: &str,
    c: BoundConstant,
    digits: u32,
    mode: Rounding,
    fraction: bool,
) -> TableCell {
    let tail = suffix(c.shape);
    let mut long_text = None;
    let mut flag = None;
    let text = match &c.kind {
        ConstantKind::Rational { value } if c.shape == Shape::CubicLemma => {
            let shown = value.to_decimal(digits, mode);
            let nearest = value.to_decimal(digits, Rounding::HalfEven);
            if nearest != shown {
                flag = Some(format!("{value} = {}…; conservative {shown}, nearest {nearest}", value.to_decimal(6, Rounding::Down)));
            }
            format!("{shown}{tail}")
        }
        ConstantKind::Rational { value } => {
            let s = slope_text(value, fraction);
            match s.split_once('/') {
                Some((p, d)) => format!("{p}{tail}/{d}"),
                None => format!("{s}{tail}"),
            }
        }
        ConstantKind::Root { root, .. } => {
            let shown = root.to_decimal(digits, mode);
            if digits < DEFAULT_DIGITS {
                long_text = Some(format!("{}{tail}", root.to_decimal(DEFAULT_DIGITS, mode)));
                let nearest = root.to_decimal(digits, Rounding::HalfEven);
                if nearest != shown {
                    flag = Some(format!(
                        "{root}: table prints {shown}, the {DEFAULT_DIGITS}-digit value is {}, nearest rounding gives {nearest}",
                        root.to_decimal(DEFAULT_DIGITS, mode)
                    ));
                }
            }
            format!("{shown}{tail}")
        }
        ConstantKind::Literature { text } => match text.split_once('/') {
            Some((p, d)) => format!("{p}{tail}/{d}"),
            None => format!("{text}{tail}"),
        },
    };
    TableCell { row, setting, column: column.to_string(), text, status: status_of(&c), constant: Some(c), long_text, flag, notes: Vec::new() }
}

fn density_rows() -> Vec<TableCell> {
    let mut cells = Vec::new();
    for k in [KValue::Fixed(0), KValue::Fixed(1), KValue::Fixed(2), KValue::Fixed(3), KValue::General] {
        for setting in Setting::ALL {
            for (column, dir, mode) in
                [("lower", Direction::DensityLower, Rounding::Down), ("upper", Direction::DensityUpper, Rounding::Up)]
            {
                let row = k.to_string();
                let spec = BoundSpec::new(k, setting, dir);
                let cell = match (bound(&spec), k, setting, dir) {
                    (_, KValue::General, Setting::Unrestricted, Direction::DensityUpper) => {
                        let c = super::BoundConstant::literature("3.81", Shape::TimesSqrtKN);
                        render(row, setting, column, c, DEFAULT_DIGITS, mode, false)
                    }
                    (Ok(c), ..) => render(row, setting, column, c, table_digits(k, setting), mode, false),
                    (Err(_), KValue::General, _, Direction::DensityLower) => unavailable(row, setting, column, ""),
                    (Err(_), ..) => unavailable(row, setting, column, "-"),
                };
                cells.push(cell);
            }
        }
    }
    // the k = 2 construction stays valid for k = 3, and the general row has a cited cube-root bound
    let two = cells.iter().find(|c| c.row == "2" && c.setting == Setting::C4Free && c.column == "lower").map(|c| c.text.clone());
    for c in cells.iter_mut() {
        if c.row == "3" && c.setting == Setting::C4Free && c.column == "lower" {
            if let Some(t) = &two {
                c.notes.push(format!("{t} from the k = 2 construction also holds"));
            }
        }
        if c.row == "k" && c.column == "upper" && matches!(c.setting, Setting::C4Free | Setting::Girth5) {
            c.notes.push("O(∛k)n cited".to_string());
        }
    }
    cells
}

fn crossing_rows() -> Vec<TableCell> {
    let mut cells = Vec::new();
    for (row, k) in [("2-planar", KValue::Fixed(2)), ("3-planar", KValue::Fixed(3)), ("general", KValue::General)] {
        let columns = [
            (Setting::Unrestricted, "lower", Direction::CrLower, Rounding::Down),
            (Setting::Unrestricted, "upper", Direction::CrUpper, Rounding::Up),
            (Setting::C3Free, "lower", Direction::CrLower, Rounding::Down),
            (Setting::C4Free, "lower", Direction::CrLower, Rounding::Down),
            (Setting::Girth5, "lower", Direction::CrLower, Rounding::Down),
        ];
        for (setting, column, dir, mode) in columns {
            let cell = match bound(&BoundSpec::new(k, setting, dir)) {
                Ok(c) => render(row.to_string(), setting, column, c, DEFAULT_DIGITS, mode, true),
                Err(_) => unavailable(row.to_string(), setting, column, ""),
            };
            cells.push(cell);
        }
    }
    for c in cells.iter_mut().filter(|c| c.column == "upper") {
        if let (Some(k), Some(_)) = (c.row.strip_suffix("-planar").and_then(|k| k.parse().ok()), &c.constant) {
            if let Ok(a) = cr_upper_form(k) {
                c.notes.push(format!("exact form {}", a.render(true)));
            }
        }
    }
    cells
}

/// Both tables computed from the bound functions.
pub fn table_report() -> TableReport {
    TableReport { density: density_rows(), crossing: crossing_rows() }
}

impl TableReport {
    pub fn find(&self, row: &str, setting: Setting, column: &str) -> Option<&TableCell> {
        self.density.iter().chain(&self.crossing).find(|c| c.row == row && c.setting == setting && c.column == column)
    }

    pub fn flags(&self) -> Vec<&TableCell> {
        self.density.iter().chain(&self.crossing).filter(|c| c.flag.is_some()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("Maximum number of edges (additive constants dropped)\n");
        let mut header = vec!["k".to_string()];
        for s in Setting::ALL {
            header.push(format!("{} lower", s.title()));
            header.push(format!("{} upper", s.title()));
        }
        let mut rows = vec![header];
        for k in ["0", "1", "2", "3", "k"] {
            let mut line = vec![k.to_string()];
            for c in self.density.iter().filter(|c| c.row == k) {
                line.push(cell_text(c));
            }
            rows.push(line);
        }
        out.push_str(&grid(&rows));
        out.push('\n');
        out.push_str("Crossing numbers (additive constants dropped)\n");
        let mut rows = vec![vec![
            "class".to_string(),
            "unrestricted lower".into(),
            "unrestricted upper".into(),
            "C3-free lower".into(),
            "C4-free lower".into(),
            "girth 5 lower".into(),
        ]];
        for r in ["2-planar", "3-planar", "general"] {
            let mut line = vec![r.to_string()];
            line.extend(self.crossing.iter().filter(|c| c.row == r).map(cell_text));
            rows.push(line);
        }
        out.push_str(&grid(&rows));
        out.push_str("\n* cited\n");
        for c in self.density.iter().chain(&self.crossing) {
            let at = format!("[{} / {} {}]", c.row, c.setting.title(), c.column);
            if let Some(l) = &c.long_text {
                out.push_str(&format!("{at} three digits: {l}\n"));
            }
            if let Some(f) = &c.flag {
                out.push_str(&format!("{at} flag: {f}\n"));
            }
            for n in &c.notes {
                out.push_str(&format!("{at} note: {n}\n"));
            }
        }
        out
    }
}

fn cell_text(c: &TableCell) -> String {
    match c.status {
        CellStatus::Cited => format!("{}*", c.text),
        _ => c.text.clone(),
    }
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|i| rows.iter().filter_map(|r| r.get(i)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}", w = *w)).collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    out
}
