//! Concurrence reports and label-interaction diagrams.
//!
//! Every number in a report is copied from the metric modules; the formatters
//! only round for display. The JSON form keeps full precision and carries a
//! `report_version` field.

pub mod chord;

use std::fmt::Write as _;

use serde::Serialize;

use crate::concurrence::{difficult_labels, ConcurrenceProfile, DifficultLabel};
use crate::dataset::MultiLabelDataset;
use crate::error::Result;
use crate::imbalance::ImbalanceProfile;

pub use chord::{chord_svg, select_labels, write_chord_svg, LabelSelection};

pub const REPORT_VERSION: u32 = 1;

/// Interaction pairs listed in the text report.
const TEXT_INTERACTIONS: usize = 20;

/// Dataset-level characterization, the columns of a dataset summary table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSummary {
    pub relation: String,
    pub instances: usize,
    pub attributes: usize,
    pub labels: usize,
    pub labelsets: usize,
    pub card: f64,
    pub dens: f64,
    pub mean_ir: f64,
    pub max_ir: f64,
    pub scumble: f64,
    pub scumble_cv: Option<f64>,
}

impl DatasetSummary {
    pub fn new(ds: &MultiLabelDataset, imb: &ImbalanceProfile, con: &ConcurrenceProfile) -> Self {
        Self {
            relation: ds.relation_name().to_string(),
            instances: ds.num_instances(),
            attributes: ds.num_features(),
            labels: ds.num_labels(),
            labelsets: ds.distinct_labelsets().len(),
            card: imb.card,
            dens: imb.dens,
            mean_ir: imb.mean_ir,
            max_ir: imb.max_ir,
            scumble: con.scumble,
            scumble_cv: con.scumble_cv,
        }
    }

    pub fn compute(ds: &MultiLabelDataset) -> Result<Self> {
        let (imb, con) = ConcurrenceProfile::analyze(ds)?;
        Ok(Self::new(ds, &imb, &con))
    }

    pub fn to_text(&self) -> String {
        format!(
            "Relation: {}\nInstances: {}\nAttributes: {}\nLabels: {}\nLabelsets: {}\n\
             Card: {:.3}\nDens: {:.3}\nMeanIR: {:.3}\nMaxIR: {:.3}\nSCUMBLE: {:.3}\nSCUMBLE.CV: {}\n",
            self.relation,
            self.instances,
            self.attributes,
            self.labels,
            self.labelsets,
            self.card,
            self.dens,
            self.mean_ir,
            self.max_ir,
            self.scumble,
            fmt_opt(self.scumble_cv),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelRow {
    pub index: usize,
    pub name: String,
    pub count: usize,
    pub irlbl: Option<f64>,
    pub scumble_lbl: Option<f64>,
    pub scumble_lbl_cv: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interaction {
    pub a: usize,
    pub b: usize,
    pub a_name: String,
    pub b_name: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcurrenceReport {
    pub report_version: u32,
    pub summary: DatasetSummary,
    /// Declaration order.
    pub labels: Vec<LabelRow>,
    /// Descending SCUMBLELbl.
    pub difficult_labels: Vec<DifficultLabel>,
    /// Every co-occurring pair, most frequent first.
    pub interactions: Vec<Interaction>,
    pub warnings: Vec<String>,
}

impl ConcurrenceReport {
    pub fn build(ds: &MultiLabelDataset, top_k: usize) -> Result<Self> {
        let (imb, con) = ConcurrenceProfile::analyze(ds)?;
        let names = ds.label_names();
        let labels = (0..ds.num_labels())
            .map(|l| LabelRow {
                index: l,
                name: names[l].clone(),
                count: imb.label_counts[l],
                irlbl: imb.irlbl[l],
                scumble_lbl: con.scumble_lbl[l],
                scumble_lbl_cv: con.scumble_lbl_cv[l],
            })
            .collect();
        let co = ds.co_occurrence();
        let mut interactions = Vec::new();
        for a in 0..ds.num_labels() {
            for b in a + 1..ds.num_labels() {
                let count = co.get(a, b);
                if count > 0 {
                    interactions.push(Interaction {
                        a,
                        b,
                        a_name: names[a].clone(),
                        b_name: names[b].clone(),
                        count,
                    });
                }
            }
        }
        interactions.sort_by(|x, y| y.count.cmp(&x.count).then((x.a, x.b).cmp(&(y.a, y.b))));
        let warnings = imb
            .absent_labels()
            .into_iter()
            .map(|l| format!("label '{}' never occurs; its IRLbl is undefined", names[l]))
            .collect();
        Ok(Self {
            report_version: REPORT_VERSION,
            summary: DatasetSummary::new(ds, &imb, &con),
            labels,
            difficult_labels: difficult_labels(ds, &imb, &con, top_k),
            interactions,
            warnings,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "Concurrence report for '{}'", s.relation);
        let _ = writeln!(out);
        out.push_str(&s.to_text());
        for w in &self.warnings {
            let _ = writeln!(out, "Warning: {w}");
        }

        let _ = writeln!(out);
        let _ = writeln!(out, "Labels");
        let width = self.labels.iter().map(|l| l.name.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(
            out,
            "  {:<width$}  {:>8}  {:>10}  {:>10}  {:>13}",
            "label", "count", "IRLbl", "SCUMBLELbl", "SCUMBLELbl.CV"
        );
        for l in &self.labels {
            let _ = writeln!(
                out,
                "  {:<width$}  {:>8}  {:>10}  {:>10}  {:>13}",
                l.name,
                l.count,
                fmt_opt(l.irlbl),
                fmt_opt(l.scumble_lbl),
                fmt_opt(l.scumble_lbl_cv)
            );
        }

        let _ = writeln!(out);
        let _ = writeln!(out, "Difficult labels (minority labels by SCUMBLELbl)");
        if self.difficult_labels.is_empty() {
            let _ = writeln!(out, "  no difficult labels");
        }
        for d in &self.difficult_labels {
            let _ = writeln!(
                out,
                "  {}  SCUMBLELbl {:.3}  IRLbl {:.3}",
                d.name, d.scumble_lbl, d.irlbl
            );
            if d.partners.is_empty() {
                let _ = writeln!(out, "    interacts with no majority label");
            } else {
                let partners: Vec<String> = d
                    .partners
                    .iter()
                    .map(|p| format!("{} ({})", p.name, p.shared))
                    .collect();
                let _ = writeln!(out, "    interacts with: {}", partners.join(", "));
            }
        }

        let _ = writeln!(out);
        let shown = self.interactions.len().min(TEXT_INTERACTIONS);
        let _ = writeln!(
            out,
            "Label interactions ({shown} of {} co-occurring pairs)",
            self.interactions.len()
        );
        for i in &self.interactions[..shown] {
            let _ = writeln!(out, "  {} - {}: {}", i.a_name, i.b_name, i.count);
        }
        out
    }
}

pub(crate) fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| format!("{x:.3}"))
}
