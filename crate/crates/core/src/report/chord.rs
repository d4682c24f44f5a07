//! Chord diagrams of label co-occurrence, rendered as SVG 1.1.
//!
//! Each selected label is an arc of the ring whose angle is proportional to
//! its instance count (relative to the other selected labels), after a fixed
//! gap per arc. Each co-occurring pair is a ribbon between the two arcs whose
//! angular width at both ends is proportional to the number of shared
//! instances. One scale is used for all ribbons, shrunk if needed so the
//! ribbons of every arc fit inside it.
//!
//! Angles are measured clockwise from twelve o'clock.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use crate::concurrence::{difficult_labels, ConcurrenceProfile};
use crate::dataset::MultiLabelDataset;
use crate::error::{Error, Result};

pub const SIZE: f64 = 800.0;
pub const CENTER: f64 = SIZE / 2.0;
pub const OUTER_RADIUS: f64 = 300.0;
pub const INNER_RADIUS: f64 = 280.0;
const LABEL_RADIUS: f64 = 312.0;
const GAP: f64 = 0.03;
const MAX_GAP_SHARE: f64 = 0.25;

pub const DEFAULT_DIFFICULT: usize = 10;
pub const DEFAULT_MAX_ARCS: usize = 15;

const PALETTE: [&str; 15] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSelection {
    /// The 10 minority labels with highest SCUMBLELbl, each followed by its
    /// majority partners, at most 15 arcs.
    Default,
    All,
    Names(Vec<String>),
}

/// Gap between consecutive arcs, in radians.
pub fn gap_for(n: usize) -> f64 {
    GAP.min(2.0 * PI * MAX_GAP_SHARE / n as f64)
}

/// Selected label indices in declaration order.
pub fn select_labels(ds: &MultiLabelDataset, policy: &LabelSelection) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = match policy {
        LabelSelection::All => (0..ds.num_labels()).collect(),
        LabelSelection::Names(names) => names
            .iter()
            .map(|n| {
                ds.label_index(n)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown label '{n}'")))
            })
            .collect::<Result<_>>()?,
        LabelSelection::Default => {
            let (imb, con) = ConcurrenceProfile::analyze(ds)?;
            let mut out = Vec::new();
            'outer: for d in difficult_labels(ds, &imb, &con, DEFAULT_DIFFICULT) {
                for l in std::iter::once(d.label).chain(d.partners.iter().map(|p| p.label)) {
                    if out.len() == DEFAULT_MAX_ARCS {
                        break 'outer;
                    }
                    if !out.contains(&l) {
                        out.push(l);
                    }
                }
            }
            out
        }
    };
    chosen.sort_unstable();
    chosen.dedup();
    Ok(chosen)
}

fn point(radius: f64, angle: f64) -> (f64, f64) {
    (CENTER + radius * angle.sin(), CENTER - radius * angle.cos())
}

fn p(pt: (f64, f64)) -> String {
    format!("{:.8} {:.8}", pt.0, pt.1)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Layout of one arc: start and end angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpan {
    pub label: usize,
    pub start: f64,
    pub end: f64,
}

/// Renders the diagram for the given label indices.
pub fn chord_svg(ds: &MultiLabelDataset, labels: &[usize]) -> Result<String> {
    if labels.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "a chord diagram needs at least 2 labels, got {}",
            labels.len()
        )));
    }
    if let Some(&bad) = labels.iter().find(|&&l| l >= ds.num_labels()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: ds.num_labels(),
        });
    }
    let counts = ds.label_counts();
    let total: usize = labels.iter().map(|&l| counts[l]).sum();
    if total == 0 {
        return Err(Error::InvalidArgument("selected labels never occur".into()));
    }
    let n = labels.len();
    let gap = gap_for(n);
    let unit = (2.0 * PI - n as f64 * gap) / total as f64;
    let co = ds.co_occurrence();

    let mut arcs = Vec::with_capacity(n);
    let mut angle = gap / 2.0;
    for &l in labels {
        let span = counts[l] as f64 * unit;
        arcs.push(ArcSpan {
            label: l,
            start: angle,
            end: angle + span,
        });
        angle += span + gap;
    }

    // Shared ribbon scale: every arc must hold the ribbons it takes part in.
    let mut scale: f64 = 1.0;
    for &a in labels {
        let shared: usize = labels.iter().filter(|&&b| b != a).map(|&b| co.get(a, b)).sum();
        if shared > counts[a] {
            scale = scale.min(counts[a] as f64 / shared as f64);
        }
    }
    let ribbon_unit = unit * scale;
    let mut cursor: Vec<f64> = arcs.iter().map(|a| a.start).collect();

    let mut svg = String::new();
    let _ = writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(svg, "<title>Label concurrence: {}</title>", escape(ds.relation_name()));

    let _ = writeln!(svg, "<g id=\"ribbons\" fill-opacity=\"0.6\" stroke=\"none\">");
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (labels[i], labels[j]);
            let shared = co.get(a, b);
            if shared == 0 {
                continue;
            }
            let width = shared as f64 * ribbon_unit;
            let (a0, a1) = (cursor[i], cursor[i] + width);
            let (b0, b1) = (cursor[j], cursor[j] + width);
            cursor[i] = a1;
            cursor[j] = b1;
            let large = if width > PI { 1 } else { 0 };
            let r = INNER_RADIUS;
            let c = format!("{CENTER} {CENTER}");
            let _ = writeln!(
                svg,
                "<path class=\"ribbon\" fill=\"{}\" d=\"M {} A {r} {r} 0 {large} 1 {} Q {c} {} A {r} {r} 0 {large} 1 {} Q {c} {} Z\"><title>{} - {}: {}</title></path>",
                PALETTE[i % PALETTE.len()],
                p(point(r, a0)),
                p(point(r, a1)),
                p(point(r, b0)),
                p(point(r, b1)),
                p(point(r, a0)),
                escape(&ds.label_names()[a]),
                escape(&ds.label_names()[b]),
                shared
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, "<g id=\"arcs\" stroke=\"none\">");
    for (i, arc) in arcs.iter().enumerate() {
        let large = if arc.end - arc.start > PI { 1 } else { 0 };
        let (ro, ri) = (OUTER_RADIUS, INNER_RADIUS);
        let _ = writeln!(
            svg,
            "<path class=\"arc\" fill=\"{}\" d=\"M {} A {ro} {ro} 0 {large} 1 {} L {} A {ri} {ri} 0 {large} 0 {} Z\"><title>{}: {}</title></path>",
            PALETTE[i % PALETTE.len()],
            p(point(ro, arc.start)),
            p(point(ro, arc.end)),
            p(point(ri, arc.end)),
            p(point(ri, arc.start)),
            escape(&ds.label_names()[arc.label]),
            counts[arc.label]
        );
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, "<g id=\"names\" font-family=\"sans-serif\" font-size=\"12\">");
    for arc in &arcs {
        let mid = (arc.start + arc.end) / 2.0;
        let (x, y) = point(LABEL_RADIUS, mid);
        let degrees = mid.to_degrees();
        // Text on the left half is flipped so it reads left to right.
        let (rotation, anchor) = if mid <= PI {
            (degrees - 90.0, "start")
        } else {
            (degrees + 90.0, "end")
        };
        let _ = writeln!(
            svg,
            "<text x=\"{x:.3}\" y=\"{y:.3}\" text-anchor=\"{anchor}\" dominant-baseline=\"middle\" transform=\"rotate({rotation:.3} {x:.3} {y:.3})\">{}</text>",
            escape(&ds.label_names()[arc.label])
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

pub fn write_chord_svg(ds: &MultiLabelDataset, policy: &LabelSelection, path: &Path) -> Result<()> {
    let labels = select_labels(ds, policy)?;
    let svg = chord_svg(ds, &labels)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
