//! Report documents: a config echo, named value rows, and a verification
//! ledger, renderable as json, tsv, or markdown. The json rendering is
//! byte-deterministic for a fixed config and input (fixed field order,
//! fixed decimal rendering).

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Md,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cell {
    pub label: String,
    pub value: String,
    /// Significant decimal digits carried by a numeric cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub version: String,
    pub config: Vec<(String, String)>,
    pub rows: Vec<Row>,
    pub ledger: Vec<LedgerEntry>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>) -> Self {
        ReportDocument {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: Vec::new(),
            rows: Vec::new(),
            ledger: Vec::new(),
        }
    }

    pub fn config(&mut self, k: impl Into<String>, v: impl Into<String>) -> &mut Self {
        self.config.push((k.into(), v.into()));
        self
    }

    pub fn row(&mut self, name: impl Into<String>, cells: Vec<Cell>) -> &mut Self {
        self.rows.push(Row {
            name: name.into(),
            cells,
        });
        self
    }

    pub fn ledger(&mut self, check: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.ledger.push(LedgerEntry {
            check: check.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.ledger.iter().all(|e| e.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable"),
            Format::Tsv => self.render_tsv(),
            Format::Md => self.render_md(),
        }
    }

    fn render_tsv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}\t{v}\n"));
        }
        for row in &self.rows {
            out.push_str(&row.name);
            for c in &row.cells {
                out.push_str(&format!("\t{}={}", c.label, c.value));
            }
            out.push('\n');
        }
        for e in &self.ledger {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                e.check,
                if e.pass { "PASS" } else { "FAIL" },
                e.detail
            ));
        }
        out
    }

    fn render_md(&self) -> String {
        let mut out = format!("## {} (v{})\n\n", self.command, self.version);
        if !self.config.is_empty() {
            for (k, v) in &self.config {
                out.push_str(&format!("- {k}: {v}\n"));
            }
            out.push('\n');
        }
        if !self.rows.is_empty() {
            let labels: Vec<&str> = self.rows[0]
                .cells
                .iter()
                .map(|c| c.label.as_str())
                .collect();
            let uniform = self.rows.iter().all(|r| {
                r.cells.len() == labels.len()
                    && r.cells.iter().zip(&labels).all(|(c, l)| c.label == *l)
            });
            if uniform {
                out.push_str(&format!("| | {} |\n", labels.join(" | ")));
                out.push_str(&format!("|-|{}\n", "-|".repeat(labels.len())));
                for row in &self.rows {
                    let vals: Vec<&str> = row.cells.iter().map(|c| c.value.as_str()).collect();
                    out.push_str(&format!("| {} | {} |\n", row.name, vals.join(" | ")));
                }
            } else {
                for row in &self.rows {
                    let vals: Vec<String> = row
                        .cells
                        .iter()
                        .map(|c| format!("{} = {}", c.label, c.value))
                        .collect();
                    out.push_str(&format!("- {}: {}\n", row.name, vals.join(", ")));
                }
            }
            out.push('\n');
        }
        for e in &self.ledger {
            out.push_str(&format!(
                "- [{}] {}: {}\n",
                if e.pass { "PASS" } else { "FAIL" },
                e.check,
                e.detail
            ));
        }
        out
    }
}

pub fn cell(label: impl Into<String>, value: impl Into<String>) -> Cell {
    Cell {
        label: label.into(),
        value: value.into(),
        precision: None,
    }
}

pub fn num_cell(label: impl Into<String>, value: impl Into<String>, precision: u32) -> Cell {
    Cell {
        label: label.into(),
        value: value.into(),
        precision: Some(precision),
    }
}
