use serde::Serialize;
use serde_json::Value;

use crate::verdict::Verdict;

/// Fixed registry of check anchors. Records cannot carry free-form anchors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    MomentComparison,
    RLogConcavity,
    EnestromKakeya,
    SvAlphaCondition,
    UnitCircleExact,
    UnitCircleNumeric,
    SequenceLogConcavity,
    GurvitsCoefficients,
    EgfLogConcavity,
    GaussPolyMomentBounds,
    ZbClosedForm,
    ZbMonotonicity,
    SchurConcavity,
    GLambdaZeros,
    GhostSpin,
    LeeYang,
    FerroMomentComparison,
    Plumbing,
}

impl Anchor {
    pub const ALL: [Anchor; 18] = [
        Anchor::MomentComparison,
        Anchor::RLogConcavity,
        Anchor::EnestromKakeya,
        Anchor::SvAlphaCondition,
        Anchor::UnitCircleExact,
        Anchor::UnitCircleNumeric,
        Anchor::SequenceLogConcavity,
        Anchor::GurvitsCoefficients,
        Anchor::EgfLogConcavity,
        Anchor::GaussPolyMomentBounds,
        Anchor::ZbClosedForm,
        Anchor::ZbMonotonicity,
        Anchor::SchurConcavity,
        Anchor::GLambdaZeros,
        Anchor::GhostSpin,
        Anchor::LeeYang,
        Anchor::FerroMomentComparison,
        Anchor::Plumbing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Anchor::MomentComparison => "moment-comparison",
            Anchor::RLogConcavity => "r-log-concavity",
            Anchor::EnestromKakeya => "enestrom-kakeya",
            Anchor::SvAlphaCondition => "sv-alpha-condition",
            Anchor::UnitCircleExact => "unit-circle-exact",
            Anchor::UnitCircleNumeric => "unit-circle-numeric",
            Anchor::SequenceLogConcavity => "sequence-log-concavity",
            Anchor::GurvitsCoefficients => "gurvits-coefficients",
            Anchor::EgfLogConcavity => "egf-log-concavity",
            Anchor::GaussPolyMomentBounds => "gausspoly-moment-bounds",
            Anchor::ZbClosedForm => "zb-closed-form",
            Anchor::ZbMonotonicity => "zb-monotonicity",
            Anchor::SchurConcavity => "schur-concavity",
            Anchor::GLambdaZeros => "g-lambda-zeros",
            Anchor::GhostSpin => "ghost-spin",
            Anchor::LeeYang => "lee-yang",
            Anchor::FerroMomentComparison => "ferro-moment-comparison",
            Anchor::Plumbing => "plumbing",
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check: String,
    pub anchor: Anchor,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub overall: Verdict,
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), overall: Verdict::Na, records: Vec::new(), details: Value::Null }
    }

    pub fn push(&mut self, r: Record) {
        self.overall = self.overall.and(r.verdict);
        self.records.push(r);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// 0 pass, 2 refuted, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Verdict::Holds | Verdict::Na => 0,
            Verdict::Fails => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

pub fn exact() -> String {
    "exact".to_string()
}

pub fn precision(digits: u32) -> String {
    format!("precision-{digits}")
}
