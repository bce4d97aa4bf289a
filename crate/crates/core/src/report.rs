//! Pass/fail reports shared by all checkers.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportItem {
    pub check_id: String,
    pub item: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Records a check; `failure` holds the witness of a violation.
    pub fn record(&mut self, check_id: &str, item: &str, failure: Option<Value>) -> bool {
        let ok = failure.is_none();
        self.items.push(ReportItem {
            check_id: check_id.to_string(),
            item: item.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: failure,
            reason: None,
        });
        ok
    }

    pub fn flag(&mut self, check_id: &str, item: &str, ok: bool) -> bool {
        self.record(check_id, item, if ok { None } else { Some(Value::Null) })
    }

    pub fn skip(&mut self, check_id: &str, item: &str, reason: impl Into<String>) {
        self.items.push(ReportItem {
            check_id: check_id.to_string(),
            item: item.to_string(),
            status: Status::Skipped,
            witness: None,
            reason: Some(reason.into()),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.items.extend(other.items);
    }

    /// Appends `other` with every check id prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        self.items.extend(other.items.into_iter().map(|mut i| {
            i.check_id = format!("{prefix}.{}", i.check_id);
            i
        }));
    }

    /// True when nothing failed. Skipped items do not count as failures.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&ReportItem> {
        self.items.iter().filter(|i| i.status == Status::Fail).collect()
    }

    pub fn get(&self, check_id: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.check_id == check_id)
    }

    pub fn status(&self, check_id: &str) -> Option<Status> {
        self.get(check_id).map(|i| i.status)
    }

    /// Failing items first, then the rest in order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let failing = self.items.iter().filter(|i| i.status == Status::Fail);
        let rest = self.items.iter().filter(|i| i.status != Status::Fail);
        for i in failing.chain(rest) {
            let tag = match i.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("{tag:4}  {:<40} {}", i.check_id, i.item));
            if let Some(r) = &i.reason {
                out.push_str(&format!("  ({r})"));
            }
            if let Some(w) = &i.witness {
                if !w.is_null() {
                    out.push_str(&format!("\n      witness: {w}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Collects up to a fixed number of failing cases into one witness value.
pub(crate) struct Witnesses {
    cases: Vec<Value>,
    count: usize,
}

impl Witnesses {
    const LIMIT: usize = 8;

    pub fn new() -> Witnesses {
        Witnesses { cases: Vec::new(), count: 0 }
    }

    pub fn add(&mut self, w: Value) {
        if self.cases.len() < Self::LIMIT {
            self.cases.push(w);
        }
        self.count += 1;
    }

    pub fn into_failure(self) -> Option<Value> {
        if self.count == 0 {
            None
        } else {
            Some(serde_json::json!({ "count": self.count, "cases": self.cases }))
        }
    }
}
