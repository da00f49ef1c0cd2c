//! Serializable forms of switching traces and verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use shifted_esh::esh::{SwitchStep, SwitchTrace, TraceRow};
use shifted_esh::ktheory::VerificationReport;
use shifted_esh::shifted_core::Instance;

/// How the step-count conjecture is evaluated; recorded in every report.
pub const STEP_CONVENTION: &str =
    "rows = switches + 1 (including the start row); s = value of i when Phase 1 ends; beta_s = 0 when s > len(beta)";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TraceJson {
    /// `forward` for `esh`, `reverse` for `esh⁻¹`.
    pub direction: String,
    pub shape: String,
    pub input: String,
    pub output: String,
    pub transition: u8,
    pub steps: Vec<StepJson>,
    pub rows: Vec<RowJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub phase: String,
    pub label: String,
    pub i: u8,
    pub symbol: String,
    pub index: String,
    pub from: [usize; 2],
    pub to: [usize; 2],
    pub hop: bool,
    pub exceptional: bool,
    pub inverse_exceptional: bool,
    pub adjacent: bool,
    pub before: String,
    pub after: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RowJson {
    pub label: String,
    pub i: u8,
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TraceJson {
    pub fn new(trace: &SwitchTrace, reverse: bool) -> TraceJson {
        TraceJson {
            direction: if reverse { "reverse" } else { "forward" }.into(),
            shape: trace.input.shape().to_string(),
            input: trace.input.reading_word().to_string(),
            output: trace.output.reading_word().to_string(),
            transition: trace.transition,
            steps: trace.steps.iter().map(StepJson::new).collect(),
            rows: trace.rows.iter().map(RowJson::new).collect(),
        }
    }
}

impl StepJson {
    fn new(s: &SwitchStep) -> StepJson {
        StepJson {
            phase: s.phase.code().into(),
            label: s.phase.label().into(),
            i: s.i,
            symbol: s.symbol.to_string(),
            index: s.index.to_string(),
            from: [s.from.0, s.from.1],
            to: [s.to.0, s.to.1],
            hop: s.hop,
            exceptional: s.exceptional,
            inverse_exceptional: s.inverse_exceptional,
            adjacent: s.adjacent,
            before: s.before.to_string(),
            after: s.after.to_string(),
        }
    }
}

impl RowJson {
    fn new(r: &TraceRow) -> RowJson {
        RowJson { label: r.label.clone(), i: r.i, word: r.word.to_string(), note: r.note.clone() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub gamma_c: Vec<usize>,
    pub lr: usize,
    pub k: Option<usize>,
    pub orbits: Option<usize>,
    pub chi: Option<i64>,
    pub words: usize,
    pub theorems: BTreeMap<String, bool>,
    pub conjectures: BTreeMap<String, bool>,
    pub counterexamples: Vec<String>,
    pub step_convention: String,
}

impl ReportJson {
    pub fn new(r: &VerificationReport) -> ReportJson {
        ReportJson {
            alpha: r.instance.alpha.parts().to_vec(),
            beta: r.instance.beta.parts().to_vec(),
            gamma_c: r.instance.gamma_c.parts().to_vec(),
            lr: r.lr,
            k: r.k,
            orbits: r.orbits,
            chi: r.chi,
            words: r.words,
            theorems: r.theorems.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            conjectures: r.conjectures.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            counterexamples: r.counterexamples.clone(),
            step_convention: STEP_CONVENTION.into(),
        }
    }

    pub fn theorems_pass(&self) -> bool {
        self.theorems.values().all(|&b| b)
    }

    pub fn conjectures_pass(&self) -> bool {
        self.conjectures.values().all(|&b| b)
    }
}

/// One line of `summary.csv`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SummaryRow {
    pub alpha: String,
    pub beta: String,
    pub gamma_c: String,
    pub size: usize,
    pub lr: usize,
    pub k: Option<usize>,
    pub orbits: Option<usize>,
    pub chi: Option<i64>,
    pub words: usize,
    pub theorems: String,
    pub conjectures: String,
    pub failures: usize,
}

fn status(map: &BTreeMap<String, bool>) -> String {
    if map.is_empty() {
        String::new()
    } else if map.values().all(|&b| b) {
        "pass".into()
    } else {
        let bad: Vec<&str> = map.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str()).collect();
        format!("fail:{}", bad.join("+"))
    }
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("-")
}

impl SummaryRow {
    pub fn new(r: &ReportJson) -> SummaryRow {
        SummaryRow {
            alpha: join(&r.alpha),
            beta: join(&r.beta),
            gamma_c: join(&r.gamma_c),
            size: r.alpha.iter().sum::<usize>() + r.beta.iter().sum::<usize>(),
            lr: r.lr,
            k: r.k,
            orbits: r.orbits,
            chi: r.chi,
            words: r.words,
            theorems: status(&r.theorems),
            conjectures: status(&r.conjectures),
            failures: r.counterexamples.len(),
        }
    }
}

/// File-name key of an instance, e.g. `a4-2_b2_g5-3-1`.
pub fn instance_key(i: &Instance) -> String {
    let p = |v: &[usize]| if v.is_empty() { "0".to_string() } else { join(v) };
    format!("a{}_b{}_g{}", p(i.alpha.parts()), p(i.beta.parts()), p(i.gamma_c.parts()))
}
