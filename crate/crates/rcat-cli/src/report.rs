use crate::campaign::{Config, ModelKind};
use rcat::LawReport;
use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub verdict: Verdict,
    pub laws: Vec<LawReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub campaign: String,
    pub config: Config,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(campaign: String, config: Config, checks: Vec<CheckResult>) -> Report {
        let verdict = if checks.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report {
            campaign,
            config,
            verdict,
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(
            s,
            "campaign {} (model {}, p = {}, depth {}, budget {}, seed {})",
            self.campaign,
            match c.model {
                ModelKind::Finset => "finset",
                ModelKind::Poly => "poly",
            },
            c.prime,
            c.jet_depth,
            c.budget,
            c.seed
        );
        for r in &self.checks {
            let cases: u64 = r.laws.iter().map(|l| l.cases).sum();
            let mut line = format!(
                "{:<7} {} ({} laws, {cases} cases)",
                verdict_str(r.verdict),
                r.id,
                r.laws.len()
            );
            if let Some(ms) = r.millis {
                let _ = write!(line, " {ms} ms");
            }
            let _ = writeln!(s, "{line}");
            if let Some(why) = &r.skipped {
                let _ = writeln!(s, "        skipped: {why}");
            }
            if let Some(e) = &r.error {
                let _ = writeln!(s, "        {}: {}", e.code, e.message);
            }
            for l in r.laws.iter().filter(|l| !l.passed()) {
                let _ = writeln!(s, "        {l}");
            }
            if let Some(out) = &r.output {
                let _ = writeln!(s, "        output: {out}");
            }
        }
        let _ = writeln!(s, "{}", verdict_str(self.verdict));
        s
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Skipped => "SKIPPED",
    }
}
