//! Verdicts of congruence sweeps and their stable JSON form.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    Lucas,
    Dwork,
    Glc,
    GlcSimple,
    ShiftCombination,
    UnivariateGlc,
    CrossCheck,
    SchemeVerify,
    /// Single-state reducibility; certified on a finite range only.
    SingleStateFiniteRange,
    Sequence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    /// Named indices of the violating tuple, in the sweep's lexicographic order.
    pub at: Vec<(String, i64)>,
    pub expected: Value,
    pub actual: Value,
}

impl Counterexample {
    pub fn new(at: &[(&str, i64)], expected: impl Into<Value>, actual: impl Into<Value>) -> Self {
        Counterexample {
            at: at.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    pub fn index(&self, name: &str) -> Option<i64> {
        self.at.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

/// Outcome of a sweep. A counterexample is present iff the verdict is
/// [`Verdict::Fail`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub kind: ReportKind,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_counterexample")]
    pub counterexample: Option<Counterexample>,
}

fn ser_counterexample<S: serde::Serializer>(
    c: &Option<Counterexample>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let c = c.as_ref().expect("skipped when absent");
    let mut map = s.serialize_map(Some(c.at.len() + 2))?;
    for (k, v) in &c.at {
        map.serialize_entry(k, v)?;
    }
    map.serialize_entry("expected", &c.expected)?;
    map.serialize_entry("actual", &c.actual)?;
    map.end()
}

impl CongruenceReport {
    pub fn new(kind: ReportKind) -> Self {
        CongruenceReport {
            kind,
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            reason: None,
            checked: 0,
            counterexample: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn fail(mut self, c: Counterexample) -> Self {
        self.verdict = Verdict::Fail;
        self.counterexample = Some(c);
        self
    }

    pub fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Inapplicable;
        self.reason = Some(reason.into());
        self.counterexample = None;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Stable one-line JSON, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_report_json() {
        let r = CongruenceReport::new(ReportKind::Lucas).param("p", 3).param("n_max", 10);
        assert_eq!(
            r.to_json(),
            "{\"kind\":\"lucas\",\"params\":{\"n_max\":10,\"p\":3},\"verdict\":\"pass\",\"checked\":0}\n"
        );
    }

    #[test]
    fn fail_report_includes_counterexample() {
        let r = CongruenceReport::new(ReportKind::Lucas)
            .fail(Counterexample::new(&[("n", 1), ("k", 0)], 1, 2));
        let json = r.to_json();
        assert!(json.contains("\"verdict\":\"fail\""));
        assert!(json.contains("\"counterexample\":{\"n\":1,\"k\":0,\"expected\":1,\"actual\":2}"));
        assert_eq!(r.counterexample.unwrap().index("k"), Some(0));
    }

    #[test]
    fn inapplicable_report_has_reason() {
        let r = CongruenceReport::new(ReportKind::GlcSimple).inapplicable("sigma_y = -1");
        let json = r.to_json();
        assert!(json.contains("\"verdict\":\"inapplicable\""));
        assert!(json.contains("\"reason\":\"sigma_y = -1\""));
        assert!(!json.contains("counterexample"));
    }
}
