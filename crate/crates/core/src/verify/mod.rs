//! Executable checks of the face-number identities and inequalities, a cached
//! per-complex analysis, and seeded corpora.

mod analysis;
mod checks;
mod corpus;

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::field::DEFAULT_PRIME;
use crate::Rational;

pub use analysis::Analysis;
pub use checks::link_sum_rows;
pub use corpus::{run_corpus, suite, suite_names, CorpusReport, CorpusSummary, Instance, Recipe};

macro_rules! check_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum CheckId {
            $($variant),*
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $name),*
                }
            }
        }

        impl FromStr for CheckId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($name => Ok(CheckId::$variant),)*
                    _ => Err(Error::Unknown { kind: "check", name: s.to_string() }),
                }
            }
        }
    };
}

check_ids! {
    DehnSommerville => "dehn_sommerville",
    Graebe => "graebe",
    HAndG => "h_and_g",
    LbtClosed => "lbt_closed",
    Main1 => "main1",
    Main1Equality => "main1_equality",
    H2Corollary => "h2_corollary",
    Main2 => "main2",
    MuLowerBound => "thm55_mu",
    SigmaGBound => "prop52",
    InteriorSigmaBound => "prop61",
    ClosedSigmaBound => "lemma62",
    MuG2Bound => "thm63",
    MissingFacesEquality => "missing_faces_eq",
    CriterionBall => "criterion_ball",
    SharpnessFacetRemoved => "sharpness_facet_removed",
    DualitySigma => "duality_sigma",
    DualityMu => "duality_mu",
    Morse => "morse",
    HochsterOracle => "hochster_oracle",
    Schenzel => "schenzel",
    BallBettiBound => "thm46",
    LinearStrandBound => "thm49",
    EulerKoszul => "prop43_euler",
    BinomialAverage => "lemma53",
    LinkSumG => "lemma54",
    VertexDeletion => "vertex_deletion",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// Serializes as `{"num": "...", "den": "..."}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Exact", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub input: String,
    pub seed: Option<u64>,
    pub field: String,
    pub lhs: Option<Exact>,
    pub rhs: Option<Exact>,
    pub relation: Option<Relation>,
    /// `None` exactly when skipped.
    pub holds: Option<bool>,
    pub skipped_reason: Option<String>,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.holds == Some(true)
    }

    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }

    pub fn skipped(&self) -> bool {
        self.holds.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Prime for Artinian reductions and WLP sampling.
    pub prime: u64,
    pub seed: u64,
    pub wlp_trials: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            seed: 0,
            wlp_trials: 3,
        }
    }
}

/// One instance of a check's formula.
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub label: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
}

impl Row {
    pub fn new(label: impl Into<String>, lhs: impl Into<Rational>, relation: Relation, rhs: impl Into<Rational>) -> Self {
        Self {
            label: label.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            relation,
        }
    }

    pub fn holds(&self) -> bool {
        self.relation.holds(&self.lhs, &self.rhs)
    }
}

/// Outcome of evaluating a check before it is stamped with the input descriptor.
pub(crate) enum Outcome {
    Rows { rows: Vec<Row>, notes: Vec<String> },
    Skipped(String),
}

const MAX_WITNESSES: usize = 20;

pub(crate) fn assemble(check: CheckId, analysis: &Analysis, outcome: Outcome) -> CheckReport {
    let mut report = CheckReport {
        check,
        input: analysis.input.clone(),
        seed: analysis.seed,
        field: analysis.field.to_string(),
        lhs: None,
        rhs: None,
        relation: None,
        holds: None,
        skipped_reason: None,
        witnesses: Vec::new(),
    };
    let (rows, notes) = match outcome {
        Outcome::Skipped(reason) => {
            report.skipped_reason = Some(reason);
            return report;
        }
        Outcome::Rows { rows, notes } => (rows, notes),
    };
    if rows.is_empty() {
        report.skipped_reason = Some("no instances in range".into());
        return report;
    }
    let failing: Vec<&Row> = rows.iter().filter(|r| !r.holds()).collect();
    // A failing instance if there is one, otherwise the one with least slack.
    let shown = match failing.first() {
        Some(r) => *r,
        None => rows
            .iter()
            .min_by(|a, b| (&a.lhs - &a.rhs).abs().cmp(&(&b.lhs - &b.rhs).abs()))
            .expect("nonempty"),
    };
    report.lhs = Some(Exact(shown.lhs.clone()));
    report.rhs = Some(Exact(shown.rhs.clone()));
    report.relation = Some(shown.relation);
    report.holds = Some(shown.holds());
    report.witnesses = if failing.is_empty() {
        vec![shown.label.clone()]
    } else {
        failing.iter().take(MAX_WITNESSES).map(|r| r.label.clone()).collect()
    };
    report.witnesses.extend(notes);
    report
}

/// Runs one check on an analyzed complex. Unmet hypotheses and computations over the
/// size caps produce skipped reports.
pub fn run_check(id: CheckId, analysis: &Analysis, options: &CheckOptions) -> CheckReport {
    let outcome = checks::evaluate(id, analysis, options).unwrap_or_else(|e| Outcome::Skipped(e.to_string()));
    assemble(id, analysis, outcome)
}
