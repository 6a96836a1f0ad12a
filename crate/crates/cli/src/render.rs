use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// Header row plus one row per record.
    Csv,
    /// Aligned columns.
    Table,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let text = cell(v);
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text
    }
}

fn keys(records: &[Value]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for r in records {
        if let Value::Object(map) = r {
            for k in map.keys() {
                if !out.contains(k) {
                    out.push(k.clone());
                }
            }
        }
    }
    out
}

pub fn render(records: &[Value], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in records {
                out.push_str(&r.to_string());
                out.push('\n');
            }
        }
        Format::Csv => {
            let header = keys(records);
            out.push_str(&header.join(","));
            out.push('\n');
            for r in records {
                let row: Vec<String> = header.iter().map(|k| csv_cell(r.get(k).unwrap_or(&Value::Null))).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        Format::Table => {
            let header = keys(records);
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| header.iter().map(|k| cell(r.get(k).unwrap_or(&Value::Null))).collect())
                .collect();
            let widths: Vec<usize> = header
                .iter()
                .enumerate()
                .map(|(i, h)| rows.iter().map(|r| r[i].chars().count()).chain([h.chars().count()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&header));
            for r in &rows {
                out.push_str(&line(r));
            }
        }
    }
    out
}
