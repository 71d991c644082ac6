use serde::Serialize;

use approxmu_core::Envelope;

/// An aligned text table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table { title: None, headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Table {
        self.title = Some(title.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut w: Vec<usize> = self.headers.iter().map(|h| width(h)).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                w[i] = w[i].max(width(c));
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c}{}", " ".repeat(w[i] - width(c))))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(t);
            out.push('\n');
        }
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = w.iter().map(|&n| "-".repeat(n)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// Everything a command prints, held back until the command has succeeded.
#[derive(Debug, Default)]
pub struct Report {
    records: Vec<String>,
    tables: Vec<Table>,
}

impl Report {
    pub fn record<T: Serialize>(&mut self, kind: &str, body: T) {
        let line = serde_json::to_string(&Envelope::new(kind, body)).expect("records serialize");
        self.records.push(line);
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            let parts: Vec<String> = self.tables.iter().map(Table::render).collect();
            parts.join("\n")
        } else {
            let mut s = self.records.join("\n");
            if !s.is_empty() {
                s.push('\n');
            }
            s
        }
    }
}
