use serde::{Deserialize, Serialize};
use std::fmt;

/// Stored counterexamples are capped; `failures` keeps the full count.
pub const MAX_STORED_COUNTEREXAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub morphisms: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(morphisms: Vec<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Counterexample {
            morphisms,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

/// How the cases of a law were drawn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Regime {
    /// Every applicable tuple from the sample was evaluated.
    Exhaustive,
    /// A seeded random subset of tuples was evaluated.
    Sampled { seed: u64, drawn: u64 },
    /// Decided by exact polynomial identities, valid at every point.
    Symbolic,
    /// A named finite family of probes stands in for a universal quantifier.
    Probe,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Exhaustive => write!(f, "exhaustive"),
            Regime::Sampled { seed, drawn } => write!(f, "sampled({drawn}, seed {seed})"),
            Regime::Symbolic => write!(f, "symbolic"),
            Regime::Probe => write!(f, "probe"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub cases: u64,
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    pub regime: Regime,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LawReport {
    pub fn new(law: impl Into<String>, regime: Regime) -> Self {
        LawReport {
            law: law.into(),
            cases: 0,
            failures: 0,
            counterexamples: Vec::new(),
            regime,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn case(&mut self, outcome: Option<Counterexample>) {
        self.cases += 1;
        if let Some(c) = outcome {
            self.fail(c);
        }
    }

    /// Record a single boolean case; the closure only runs on failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, c: Counterexample) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
            self.counterexamples.push(c);
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn with_note(mut self, n: impl Into<String>) -> Self {
        self.note(n);
        self
    }

    /// Fold per-case outcomes produced in parallel, keeping their order.
    pub fn absorb(&mut self, outcomes: Vec<Option<Counterexample>>) {
        for o in outcomes {
            self.case(o);
        }
    }

    pub fn single(
        law: impl Into<String>,
        regime: Regime,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        let mut r = LawReport::new(law, regime);
        let detail = detail.into();
        r.check(ok, || {
            Counterexample::new(vec![], detail.clone(), "expected to hold")
        });
        r
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} [{} cases, {}]",
            self.law, self.cases, self.regime
        )?;
        if self.failures > 0 {
            write!(f, " {} failures", self.failures)?;
            if let Some(c) = self.counterexamples.first() {
                write!(
                    f,
                    "; first: {} | lhs = {} | rhs = {}",
                    c.morphisms.join(", "),
                    c.lhs,
                    c.rhs
                )?;
            }
        }
        Ok(())
    }
}

pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::passed)
}
