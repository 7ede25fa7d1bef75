//! The JSON report written by every command. Its layout is described by
//! `schema/report.schema.json`; bump [`REPORT_VERSION`] on any field change.

use serde::Serialize;

use khole_core::assignment::{AssignmentClass, AssignmentKind, AssignmentLedger};
use khole_core::visibility::PipelineReport;
use khole_core::LayerDecomposition;

use crate::bench::BenchRow;
use crate::verify::SuiteResult;

pub const REPORT_VERSION: u32 = 1;

/// The published schema, for validation by consumers.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<LayerSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<AssignmentSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<SuiteResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bench: Option<Vec<BenchRow>>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            version: REPORT_VERSION,
            command: command.to_string(),
            input: None,
            counts: None,
            layers: None,
            assignment: None,
            pipeline: None,
            suites: None,
            bench: None,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub source: String,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountEntry {
    pub k: usize,
    pub count: u64,
    pub algorithm: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerSummary {
    pub count: usize,
    pub sizes: Vec<usize>,
    pub k_mid: usize,
    pub block_centers: usize,
}

impl LayerSummary {
    pub fn new(dec: &LayerDecomposition) -> Self {
        LayerSummary {
            count: dec.len(),
            sizes: dec.layers().iter().map(Vec::len).collect(),
            k_mid: dec.k_mid(),
            block_centers: dec.block_centers().len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterAssignment {
    pub center: usize,
    pub layer: usize,
    pub m: usize,
    pub blocks: usize,
    pub good: usize,
    pub distinct_holes: usize,
    pub gaps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssignmentSummary {
    pub five_holes: usize,
    pub centers: usize,
    pub blocks: usize,
    pub good: usize,
    pub distinct_holes: usize,
    pub vertex: usize,
    pub anchored: usize,
    pub good_trustworthy: usize,
    pub good_dubious: usize,
    pub bad: usize,
    pub max_multiplicity_per_center: usize,
    pub max_nonvertex_per_layer: usize,
    pub max_good_centers_per_hole: usize,
    pub per_center: Vec<CenterAssignment>,
}

impl AssignmentSummary {
    pub fn new(ledger: &AssignmentLedger, five_holes: usize) -> Self {
        let count =
            |f: &dyn Fn(&khole_core::assignment::Assignment) -> bool| ledger.assignments().filter(|a| f(a)).count();
        AssignmentSummary {
            five_holes,
            centers: ledger.records().len(),
            blocks: ledger.total_assignments(),
            good: ledger.total_good(),
            distinct_holes: ledger.distinct_holes(),
            vertex: count(&|a| a.kind == AssignmentKind::Vertex),
            anchored: count(&|a| a.kind == AssignmentKind::Anchored),
            good_trustworthy: count(&|a| a.class == AssignmentClass::GoodTrustworthy),
            good_dubious: count(&|a| a.class == AssignmentClass::GoodDubious),
            bad: count(&|a| a.class == AssignmentClass::Bad),
            max_multiplicity_per_center: ledger.max_multiplicity_per_center(),
            max_nonvertex_per_layer: ledger.max_nonvertex_per_layer(),
            max_good_centers_per_hole: ledger.max_good_centers_per_hole(),
            per_center: ledger
                .records()
                .iter()
                .map(|r| CenterAssignment {
                    center: r.center,
                    layer: r.layer,
                    m: r.selection.m,
                    blocks: r.selection.block_count(),
                    good: r.good_count(),
                    distinct_holes: r.distinct_holes().len(),
                    gaps: r.selection.gaps.len(),
                })
                .collect(),
        }
    }
}
