//! Deterministic text output: fixed-precision float rendering and a small
//! table writer that goes byte-identically to a file or stdout.

use std::io::Write;
use std::path::{Path, PathBuf};

/// Fixed-point rendering with the configured number of decimal digits.
/// Negative zero is normalized so identical configs give identical bytes.
pub fn fmt_float(value: f64, precision: usize) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.precision$}")
}

/// A CSV table with a one-line header; cells are preformatted strings.
pub struct Table {
    header: String,
    rows: Vec<Vec<String>>,
    columns: Vec<String>,
}

impl Table {
    pub fn new(columns: &[String]) -> Self {
        Self {
            header: columns.join(","),
            rows: Vec::new(),
            columns: columns.to_vec(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity((self.rows.len() + 1) * (self.header.len() + 8));
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = if let Ok(i) = cell.parse::<i64>() {
                        serde_json::json!(i)
                    } else if let Ok(v) = cell.parse::<f64>() {
                        serde_json::json!(v)
                    } else {
                        serde_json::json!(cell)
                    };
                    obj.insert(name.clone(), value);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&rows).expect("table serializes");
        text.push('\n');
        text
    }
}

/// Writes to the given path, or stdout when no path is configured.
pub fn write_text(path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

/// Sidecar path for the band summary: `bands.csv` -> `bands.summary.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("summary.json")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_fixed_point() {
        assert_eq!(fmt_float(-0.057735026918962576, 12), "-0.057735026919");
        assert_eq!(fmt_float(2.25, 3), "2.250");
        assert_eq!(fmt_float(-0.0, 2), "0.00");
    }

    #[test]
    fn csv_has_single_header_line() {
        let mut t = Table::new(&["a".into(), "b".into()]);
        t.push(vec!["1.0".into(), "2.0".into()]);
        assert_eq!(t.to_csv(), "a,b\n1.0,2.0\n");
    }
}
