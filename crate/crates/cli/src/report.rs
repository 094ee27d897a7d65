//! Command reports: a JSON document plus aligned text tables.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use galrel_core::exact::Ball;
use galrel_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Reported without a pass/fail verdict.
    Report,
    Unsupported,
    Fail,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Report => "report",
            Status::Unsupported => "unsupported",
            Status::Fail => "fail",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Section {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: &str, columns: &[&str]) -> Section {
        Section { title: title.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub precision: u32,
    pub status: Status,
    pub data: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, subject: &str, precision: u32) -> Report {
        Report {
            command: command.to_string(),
            subject: subject.to_string(),
            precision,
            status: Status::Pass,
            data: Value::Null,
            notes: vec![],
            sections: vec![],
        }
    }

    /// Fold a row status into the overall one; failures dominate.
    pub fn absorb(&mut self, s: Status) {
        self.status = match (self.status, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Unsupported, _) | (_, Status::Unsupported) => Status::Unsupported,
            (a, _) => a,
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Report => 0,
            Status::Fail => 1,
            Status::Unsupported => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "galrel {}: {} (precision {} bits)", self.command, self.subject, self.precision);
        for s in &self.sections {
            let _ = writeln!(out, "\n{}", s.title);
            let mut widths: Vec<usize> = s.columns.iter().map(|c| c.chars().count()).collect();
            for r in &s.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "  {}", line(&s.columns));
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            let _ = writeln!(out, "  {}", rule.join("  "));
            for r in &s.rows {
                let _ = writeln!(out, "  {}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "\nnote: {n}");
        }
        let _ = writeln!(out, "\nstatus: {}", self.status.name());
        out
    }
}

/// `mid ± rad` with enough digits to show the certification.
pub fn fmt_ball(b: &Ball) -> String {
    format!("{:.12e} ± {:.1e}", b.mid, b.rad)
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::NotPositiveDefinite => 2,
        Error::Unsupported(_) | Error::WildCase { .. } | Error::Budget(_) | Error::Precision(_) => 3,
        Error::Numerical(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_dominate() {
        let mut r = Report::new("x", "y", 64);
        r.absorb(Status::Report);
        assert_eq!(r.exit_code(), 0);
        r.absorb(Status::Unsupported);
        assert_eq!(r.exit_code(), 3);
        r.absorb(Status::Fail);
        r.absorb(Status::Pass);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn table_aligns_columns() {
        let mut r = Report::new("relations", "V4", 128);
        let mut s = Section::new("t", &["a", "longer"]);
        s.push(vec!["wide cell".into(), "1".into()]);
        r.sections.push(s);
        let t = r.to_table();
        assert!(t.contains("  a          longer\n"));
        assert!(t.contains("  wide cell  1\n"));
    }
}
