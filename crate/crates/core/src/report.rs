//! Claim-by-claim reports with human and JSON-lines renderings.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "PAPER")]
    Paper,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "DERIVED")]
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Trivial => "TRIVIAL",
            Provenance::Derived => "DERIVED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimVerdict {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for ClaimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimVerdict::Pass => "pass",
            ClaimVerdict::Inconclusive => "inconclusive",
            ClaimVerdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRow {
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
    pub verdict: ClaimVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Human,
    JsonLines,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub scenario: String,
    /// Canonical inputs, sorted by key.
    pub params: BTreeMap<String, String>,
    pub results: Vec<ClaimRow>,
    pub notes: Vec<String>,
    pub runtime_ms: u64,
    pub toolkit_version: String,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    scenario: &'a str,
    claim: &'a str,
    computed: &'a str,
    expected: &'a str,
    provenance: Provenance,
    verdict: ClaimVerdict,
}

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        ScenarioReport {
            scenario: scenario.into(),
            params: BTreeMap::new(),
            results: Vec::new(),
            notes: Vec::new(),
            runtime_ms: 0,
            toolkit_version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn row(
        &mut self,
        claim: impl Into<String>,
        computed: impl fmt::Display,
        expected: impl fmt::Display,
        provenance: Provenance,
        verdict: ClaimVerdict,
    ) -> &mut Self {
        self.results.push(ClaimRow {
            claim: claim.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            provenance,
            verdict,
        });
        self
    }

    /// A row whose verdict is `pass` exactly when computed equals expected.
    pub fn compare<T: fmt::Display + PartialEq>(
        &mut self,
        claim: impl Into<String>,
        computed: T,
        expected: T,
        provenance: Provenance,
    ) -> &mut Self {
        let verdict = if computed == expected {
            ClaimVerdict::Pass
        } else {
            ClaimVerdict::Fail
        };
        self.row(claim, computed, expected, provenance, verdict)
    }

    /// An error from a module call, as a failing or inconclusive row.
    pub fn error_row(&mut self, claim: impl Into<String>, err: &crate::Error, expected: impl fmt::Display, provenance: Provenance) {
        let verdict = match err {
            crate::Error::UncertifiedIrreducibility(_) | crate::Error::UnsupportedShape(_) | crate::Error::NotCertified => {
                ClaimVerdict::Inconclusive
            }
            _ => ClaimVerdict::Fail,
        };
        self.row(claim, format!("error: {err}"), expected, provenance, verdict);
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Worst verdict over the rows; `pass` when there are none.
    pub fn verdict(&self) -> ClaimVerdict {
        self.results
            .iter()
            .map(|r| r.verdict)
            .max()
            .unwrap_or(ClaimVerdict::Pass)
    }

    /// 0 when everything passes, 1 on any failure, 2 when the only
    /// deviations are inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            ClaimVerdict::Pass => 0,
            ClaimVerdict::Fail => 1,
            ClaimVerdict::Inconclusive => 2,
        }
    }

    pub fn emit(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Human => self.human(),
            OutputMode::JsonLines => self.json_lines(),
        }
    }

    fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let row = JsonRow {
                scenario: &self.scenario,
                claim: &r.claim,
                computed: &r.computed,
                expected: &r.expected,
                provenance: r.provenance,
                verdict: r.verdict,
            };
            out.push_str(&serde_json::to_string(&row).expect("plain strings serialize"));
            out.push('\n');
        }
        out
    }

    fn human(&self) -> String {
        let header = ["claim", "computed", "expected", "provenance", "verdict"];
        let rows: Vec<[String; 5]> = self
            .results
            .iter()
            .map(|r| {
                [
                    r.claim.clone(),
                    r.computed.clone(),
                    r.expected.clone(),
                    r.provenance.to_string(),
                    r.verdict.to_string(),
                ]
            })
            .collect();
        let mut width = header.map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(width)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("{}\n", padded.join(" | ").trim_end())
        };
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("scenario: {}\nparams: {}\n", self.scenario, params.join(" "));
        out.push_str(&line(&header.map(String::from)));
        out.push_str(&format!("{}\n", width.map(|w| "-".repeat(w)).join("-+-")));
        for r in &rows {
            out.push_str(&line(r));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!(
            "verdict: {} ({} ms, socle-lab {})\n",
            self.verdict(),
            self.runtime_ms,
            self.toolkit_version
        ));
        out
    }
}
