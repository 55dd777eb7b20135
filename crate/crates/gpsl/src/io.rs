//! Tables, their CSV and JSON forms, and the input file formats.

use std::collections::BTreeMap;
use std::path::Path;

use gpsl_core::astro_bounds::{NeutronStar, OverlayCurve};
use gpsl_core::regimes::PhysicalConstants;
use gpsl_core::RadialProfile;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Marker written in place of the bounds of a fully excluded cell.
pub const EXCLUDED: &str = "EXCLUDED";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Excluded,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_f64(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Excluded => EXCLUDED.into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => Value::from(*v),
            Cell::Num(v) => Value::from(fmt_f64(*v)),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Excluded => Value::from(EXCLUDED),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

/// A named table written as `<name>.csv` and `<name>.json`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// `columns` are `(name, unit)` pairs; use `"1"` for dimensionless.
    pub fn new(name: &str, columns: &[(&str, &str)]) -> Self {
        Table {
            name: name.into(),
            columns: columns
                .iter()
                .map(|(n, u)| Column {
                    name: (*n).into(),
                    unit: (*u).into(),
                })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width of table {}", self.name);
        self.rows.push(row);
    }

    /// Header cells read `name [unit]`.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)))
            .expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("writing to memory");
        }
        w.into_inner().expect("writing to memory")
    }

    pub fn to_json(&self) -> Vec<u8> {
        let doc = serde_json::json!({
            "name": self.name,
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        let mut out = serde_json::to_vec_pretty(&doc).expect("json of plain values");
        out.push(b'\n');
        out
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn comment_free_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes())
}

/// Two-column `(r, g)` CSV with a header row; metres and m⁻³.
pub fn read_tabulated_profile(path: &Path) -> Result<RadialProfile> {
    let text = read(path)?;
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let (mut r, mut g) = (Vec::new(), Vec::new());
    for (i, rec) in comment_free_reader(&text).records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if i == 0 {
            continue;
        }
        if rec.len() != 2 {
            return Err(bad(format!("line {} needs two columns", i + 1)));
        }
        let parse = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("'{s}' is not a number")));
        r.push(parse(&rec[0])?);
        g.push(parse(&rec[1])?);
    }
    Ok(RadialProfile::tabulated(&r, &g)?)
}

/// Overlay CSV rows `(r_C [m], λ_upper [1/s], label)`, `#` comments and an
/// optional header; one curve per label, in order of first appearance.
pub fn read_overlay(path: &Path) -> Result<Vec<OverlayCurve>> {
    let text = read(path)?;
    parse_overlay(&text).map_err(|msg| CliError::MalformedOverlay {
        path: path.to_path_buf(),
        msg,
    })
}

pub fn parse_overlay(text: &str) -> std::result::Result<Vec<OverlayCurve>, String> {
    let mut order: Vec<String> = Vec::new();
    let mut points: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (i, rec) in comment_free_reader(text).records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != 3 {
            return Err(format!("record {} has {} fields, expected 3", i + 1, rec.len()));
        }
        let (x, y) = match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => (x, y),
            _ if i == 0 => continue,
            _ => return Err(format!("record {} is not numeric", i + 1)),
        };
        let label = rec[2].to_string();
        if label.is_empty() {
            return Err(format!("record {} has an empty label", i + 1));
        }
        if !points.contains_key(&label) {
            order.push(label.clone());
        }
        points.entry(label).or_default().push((x, y));
    }
    order
        .into_iter()
        .map(|label| {
            let pts = points.remove(&label).unwrap_or_default();
            OverlayCurve::new(&label, pts).map_err(|e| e.to_string())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarRecord {
    pub name: String,
    pub radius_m: f64,
    pub mass_kg: f64,
    #[serde(rename = "temperature_K")]
    pub temperature_k: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radiation_power_w: Option<f64>,
}

impl StarRecord {
    pub fn star(&self) -> Result<NeutronStar> {
        let mut s = NeutronStar::new(&self.name, self.radius_m, self.mass_kg, self.temperature_k)?;
        s.radiation_power_override = self.radiation_power_w;
        Ok(s)
    }
}

impl From<&NeutronStar> for StarRecord {
    fn from(s: &NeutronStar) -> Self {
        StarRecord {
            name: s.name.clone(),
            radius_m: s.radius,
            mass_kg: s.mass,
            temperature_k: s.temperature,
            radiation_power_w: s.radiation_power_override,
        }
    }
}

/// The two catalogue stars.
pub fn default_catalog(k: &PhysicalConstants) -> Vec<NeutronStar> {
    vec![NeutronStar::j2144(k), NeutronStar::j1840(k)]
}

/// JSON array of star records.
pub fn read_catalog(path: &Path) -> Result<Vec<NeutronStar>> {
    let text = read(path)?;
    let recs: Vec<StarRecord> = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("star catalog {}: {e}", path.display())))?;
    if recs.is_empty() {
        return Err(CliError::Usage(format!("star catalog {} is empty", path.display())));
    }
    recs.iter().map(StarRecord::star).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new("t", &[("x", "m"), ("y", "1/s"), ("label", "-")]);
        t.push(vec![Cell::Num(0.1), Cell::Excluded, "a".into()]);
        t.push(vec![Cell::Num(1.0 / 3.0), Cell::Num(4.01339763439456e-70), "b,c".into()]);
        let csv = String::from_utf8(t.to_csv()).unwrap();
        assert!(csv.starts_with("x [m],y [1/s],label [-]\n"));
        assert!(csv.contains("1e-1,EXCLUDED,a\n"));
        assert!(csv.contains("\"b,c\""));
        let json: Value = serde_json::from_slice(&t.to_json()).unwrap();
        let third: f64 = csv.lines().nth(2).unwrap().split(',').next().unwrap().parse().unwrap();
        assert_eq!(json["rows"][1][0].as_f64().unwrap(), third);
        assert_eq!(third, 1.0 / 3.0);
        assert_eq!(json["rows"][0][1], EXCLUDED);
    }

    #[test]
    fn overlay_parsing() {
        let text = "# external bounds\nr_C_m,lambda_upper_hz,label\n1e-8,1e3,ligo\n1e-6, 1e9 ,ligo\n# c\n1e-7,1e2,lisa\n";
        let curves = parse_overlay(text).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].label, "ligo");
        assert_eq!(curves[0].points.len(), 2);
        assert!(parse_overlay("1e-8,1e3\n").is_err());
        assert!(parse_overlay("1e-8,1e3,a\n1e-7,x,a\n").is_err());
        assert!(parse_overlay("1e-8,-1,a\n").is_err());
        assert!(parse_overlay("").unwrap().is_empty());
    }
}
