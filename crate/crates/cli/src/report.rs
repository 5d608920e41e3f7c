use serde::Serialize;
use serde_json::Value;

use twisted_leaves::tol::Tolerances;

#[derive(Debug, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub message: String,
}

/// Every command prints one of these.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub parameters: Value,
    pub tolerances: Tolerances,
    pub results: Value,
    pub summary: Summary,
}

impl Envelope {
    pub fn new(
        command: &str,
        parameters: Value,
        tolerances: Tolerances,
        results: Value,
        passed: bool,
        message: String,
    ) -> Self {
        Envelope {
            command: command.into(),
            parameters,
            tolerances,
            results,
            summary: Summary { passed, message },
        }
    }
}

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }
}
