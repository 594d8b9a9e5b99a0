//! Tabular result output: CSV with a commented metadata header, or JSON.
//!
//! The writers are deliberately deterministic: metadata lines appear in
//! insertion order, numbers print in shortest round-trip form, and nothing
//! environment-dependent (timestamps, host names, worker counts) belongs in
//! a table, so identical runs produce identical bytes.

use std::io::{self, Write};

use serde_json::{json, Value};

use crate::mc::ThroughputStats;

/// Column set of every throughput sweep, simulated or asymptotic.
pub const SWEEP_COLUMNS: [&str; 13] = [
    "protocol",
    "n",
    "k",
    "n_sa",
    "g_nominal",
    "g_realized",
    "frames",
    "i_max",
    "seed",
    "t_mean",
    "t_stderr",
    "plr_mean",
    "plr_stderr",
];

/// An ordered table with key/value metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    meta: Vec<(String, String)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    /// CSV: `# key: value` header lines, a column-name line, then data.
    pub fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// JSON object with `meta`, `columns`, and `rows` (one object per row).
    pub fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        let meta: serde_json::Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => escape_csv(s),
        other => other.to_string(),
    }
}

fn escape_csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders one sweep result as a row under [`SWEEP_COLUMNS`]. Asymptotic
/// results print `n_sa` as `inf` with zero frames and stderr.
pub fn sweep_row(s: &ThroughputStats) -> Vec<Value> {
    let (n, k) = s.protocol.splitting();
    vec![
        Value::from(s.protocol.label()),
        Value::from(n),
        Value::from(k),
        match s.n_sa {
            Some(v) => Value::from(v),
            None => Value::from("inf"),
        },
        Value::from(s.g_nominal),
        Value::from(s.g_realized),
        Value::from(s.frames),
        Value::from(s.i_max),
        Value::from(s.seed),
        Value::from(s.t_mean),
        Value::from(s.t_stderr),
        Value::from(s.plr_mean),
        Value::from(s.plr_stderr),
    ]
}

/// Builds the standard sweep table (no metadata) from a result list.
pub fn sweep_table(stats: &[ThroughputStats]) -> Table {
    let mut t = Table::new(&SWEEP_COLUMNS);
    for s in stats {
        t.push_row(sweep_row(s));
    }
    t
}
