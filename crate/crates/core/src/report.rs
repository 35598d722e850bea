//! Verification reports: one item per checked claim, rendered as JSON or
//! markdown.

use std::fmt::{Display, Write as _};

use serde::Serialize;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Item {
    pub section: String,
    pub id: String,
    pub anchor: String,
    pub computed: String,
    pub expected: String,
    pub status: Status,
}

impl Item {
    /// Passes iff the rendered values agree.
    pub fn compare(
        section: &str,
        id: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Display,
        expected: impl Display,
    ) -> Self {
        let computed = computed.to_string();
        let expected = expected.to_string();
        let status = if computed == expected { Status::Pass } else { Status::Fail };
        Item { section: section.into(), id: id.into(), anchor: anchor.into(), computed, expected, status }
    }

    pub fn with_status(
        section: &str,
        id: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        computed: impl Display,
        expected: impl Display,
    ) -> Self {
        Item {
            section: section.into(),
            id: id.into(),
            anchor: anchor.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    pub fn error(section: &str, id: impl Into<String>, anchor: impl Into<String>, err: &Error) -> Self {
        Item {
            section: section.into(),
            id: id.into(),
            anchor: anchor.into(),
            computed: format!("error: {err}"),
            expected: "no error".into(),
            status: Status::Fail,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub engine: String,
    pub version: String,
    /// Left empty unless the caller asks for one, so that reports are reproducible.
    pub timestamp: Option<String>,
    pub summary: Summary,
    pub items: Vec<Item>,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new()
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            engine: "lieverify".into(),
            version: crate::VERSION.into(),
            timestamp: None,
            summary: Summary::default(),
            items: Vec::new(),
        }
    }

    pub fn from_items(items: Vec<Item>) -> Self {
        let mut r = Self::new();
        r.extend(items);
        r
    }

    pub fn push(&mut self, item: Item) {
        self.summary.total += 1;
        match item.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
        self.items.push(item);
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = Item>) {
        for it in items {
            self.push(it);
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.extend(other.items);
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} {} verification report\n", self.engine, self.version);
        if let Some(t) = &self.timestamp {
            let _ = writeln!(out, "Generated {t}\n");
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail, {} skipped\n",
            s.total, s.pass, s.fail, s.skipped
        );
        let mut current: Option<&str> = None;
        for it in &self.items {
            if current != Some(it.section.as_str()) {
                let _ = writeln!(out, "\n## {}\n", it.section);
                let _ = writeln!(out, "| status | claim | anchor | computed | expected |");
                let _ = writeln!(out, "|---|---|---|---|---|");
                current = Some(&it.section);
            }
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                it.status.as_str(),
                cell(&it.id),
                cell(&it.anchor),
                cell(&it.computed),
                cell(&it.expected)
            );
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let mut r = VerificationReport::new();
        r.push(Item::compare("s", "a", "", 1, 1));
        r.push(Item::compare("s", "b", "", 1, 2));
        assert_eq!(r.summary.pass, 1);
        assert_eq!(r.summary.fail, 1);
        assert!(!r.passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["summary"]["fail"], 1);
        assert!(v["timestamp"].is_null());
        assert!(r.to_markdown().contains("| fail | b |"));
    }
}
