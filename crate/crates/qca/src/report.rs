//! Check reports: one item per scheduled identity, JSON and text output.

use crate::field::{Verdict, VerifyError, Witness};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Qualifications of a PASS, e.g. "inherited via scalar factor".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub millis: u64,
}

impl Item {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Item { id: id.into(), anchor: anchor.into(), status: Status::Pass, witness: None, note: None, millis: 0 }
    }

    pub fn fail(id: impl Into<String>, anchor: impl Into<String>, witness: Witness) -> Self {
        Item { id: id.into(), anchor: anchor.into(), status: Status::Fail, witness: Some(witness), note: None, millis: 0 }
    }

    /// PASS when `diff` is `None`, otherwise FAIL with the difference.
    pub fn from_diff(id: impl Into<String>, anchor: impl Into<String>, point: Vec<(String, String)>, diff: Option<String>) -> Self {
        match diff {
            None => Item::pass(id, anchor),
            Some(detail) => Item::fail(id, anchor, Witness { point, detail }),
        }
    }

    pub fn from_verdict(id: impl Into<String>, anchor: impl Into<String>, v: Result<Verdict, VerifyError>) -> Self {
        match v {
            Ok(Verdict::Pass { .. }) => Item::pass(id, anchor),
            Ok(Verdict::Fail(w)) => Item::fail(id, anchor, w),
            Err(VerifyError::BoundTooSmall(w)) => {
                let detail = format!("declared degree bound too small: {}", w.detail);
                Item::fail(id, anchor, Witness { point: w.point, detail })
            }
            Err(e) => Item::fail(id, anchor, Witness { point: Vec::new(), detail: e.to_string() }),
        }
    }

    /// FAIL item for a computation that could not be carried out.
    pub fn error(id: impl Into<String>, anchor: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Item::fail(id, anchor, Witness { point: Vec::new(), detail: format!("error: {e}") })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f` and stamps the elapsed time on the produced item.
pub fn timed(f: impl FnOnce() -> Item) -> Item {
    let start = Instant::now();
    let mut item = f();
    item.millis = start.elapsed().as_millis() as u64;
    item
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub items: Vec<Item>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, params: BTreeMap<String, String>) -> Self {
        CheckReport { suite: suite.into(), params, items: Vec::new(), summary: Summary { passed: 0, failed: 0, total: 0 } }
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
        self.refresh();
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = Item>) {
        self.items.extend(items);
        self.refresh();
    }

    /// Appends another report's items, prefixing ids with its suite name.
    pub fn absorb(&mut self, other: CheckReport) {
        let prefix = other.suite.clone();
        self.extend(other.items.into_iter().map(|mut it| {
            it.id = format!("{prefix}/{}", it.id);
            it
        }));
    }

    fn refresh(&mut self) {
        self.items.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = self.items.iter().filter(|i| i.is_pass()).count();
        self.summary = Summary { passed, failed: self.items.len() - passed, total: self.items.len() };
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// The report with every timing zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for it in &mut r.items {
            it.millis = 0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        let w_id = self.items.iter().map(|i| i.id.chars().count()).max().unwrap_or(2).max(2);
        let w_an = self.items.iter().map(|i| i.anchor.chars().count()).max().unwrap_or(6).max(6);
        out.push_str(&format!("{:<w_id$}  {:<4}  {:>8}  {:<w_an$}\n", "id", "stat", "millis", "anchor"));
        for it in &self.items {
            let st = if it.is_pass() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{:<w_id$}  {:<4}  {:>8}  {:<w_an$}\n", it.id, st, it.millis, it.anchor));
            if let Some(n) = &it.note {
                out.push_str(&format!("    note: {n}\n"));
            }
            if let Some(w) = &it.witness {
                let pt: Vec<String> = w.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!("    witness [{}]: {}\n", pt.join(", "), w.detail));
            }
        }
        out.push_str(&format!("summary: {}/{} PASS\n", self.summary.passed, self.summary.total));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_summary() {
        let r = CheckReport::new("empty", BTreeMap::new());
        assert_eq!(r.summary, Summary { passed: 0, failed: 0, total: 0 });
        assert!(r.to_text().contains("summary: 0/0"));
    }

    #[test]
    fn json_roundtrip_and_order() {
        let mut r = CheckReport::new("demo", BTreeMap::from([("n".to_string(), "2".to_string())]));
        r.push(Item::pass("b", "anchor b"));
        r.push(Item::fail("a", "anchor a", Witness { point: vec![("u".into(), "2".into())], detail: "lhs x != rhs y".into() }));
        let j = r.to_json();
        assert_eq!(CheckReport::from_json(&j).unwrap(), r);
        let pos = |k: &str| j.find(k).unwrap();
        assert!(pos("\"suite\"") < pos("\"params\"") && pos("\"params\"") < pos("\"items\"") && pos("\"items\"") < pos("\"summary\""));
        assert!(pos("\"id\"") < pos("\"anchor\"") && pos("\"anchor\"") < pos("\"status\"") && pos("\"witness\"") < pos("\"millis\""));
        assert_eq!(r.items[0].id, "a");
        assert!(!r.all_pass());
    }
}
