//! MULAN and MEKA multilabel file formats.
//!
//! Both are ARFF files. MULAN names the label attributes in a companion XML
//! document; MEKA stores a signed label count (`-C n`) in the relation name.

pub mod arff;
pub mod meka;
pub mod mulan;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

pub use arff::{parse_arff, parse_arff_str, RawAttribute, RawRelation, Style};
pub use meka::{detect_meka_labels, meka_relation_name, strip_meka_designation};
pub use mulan::{mulan_xml_string, parse_mulan_xml};

use crate::dataset::{
    is_binary_domain, Attribute, AttributeKind, Instance, LabelSet, MultiLabelDataset, Value,
};
use crate::error::{Error, ParseError, Result};

/// How label attributes are identified in an ARFF file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelDesignation {
    MulanXml(Vec<String>),
    MekaHeader(i64),
}

/// Label file convention used when writing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelFormat {
    Mulan,
    Meka,
}

fn label_flags(raw: &RawRelation, designation: &LabelDesignation) -> Result<Vec<bool>> {
    let n = raw.attributes.len();
    let mut flags = vec![false; n];
    match designation {
        LabelDesignation::MulanXml(names) => {
            if names.is_empty() {
                return Err(Error::Designation("no labels designated".into()));
            }
            for name in names {
                let idx = raw
                    .attributes
                    .iter()
                    .position(|a| &a.name == name)
                    .ok_or_else(|| {
                        Error::Designation(format!("XML label '{name}' not found among attributes"))
                    })?;
                flags[idx] = true;
            }
        }
        LabelDesignation::MekaHeader(c) => {
            let count = c.unsigned_abs() as usize;
            if *c == 0 || count > n {
                return Err(Error::Designation(format!(
                    "-C {c} is invalid for {n} attributes"
                )));
            }
            let range = if *c > 0 { 0..count } else { n - count..n };
            for f in &mut flags[range] {
                *f = true;
            }
        }
    }
    Ok(flags)
}

/// Applies a label designation to a parsed relation.
///
/// Label attributes must be nominal `{0,1}` (either order). Numeric label
/// attributes are accepted when every value is exactly 0 or 1, and are turned
/// into nominal `{0,1}`. Missing label values are rejected.
pub fn assemble(raw: RawRelation, designation: &LabelDesignation) -> Result<MultiLabelDataset> {
    let flags = label_flags(&raw, designation)?;
    let mut schema = Vec::with_capacity(raw.attributes.len());
    // Per label attribute: the nominal index that means "active", or None for numeric.
    let mut positive: Vec<Option<usize>> = Vec::new();
    for (attr, &is_label) in raw.attributes.iter().zip(&flags) {
        if !is_label {
            schema.push(Attribute {
                name: attr.name.clone(),
                kind: attr.kind.clone(),
                is_label: false,
            });
            continue;
        }
        match &attr.kind {
            AttributeKind::Nominal(values) if is_binary_domain(values) => {
                positive.push(values.iter().position(|v| v == "1"));
                schema.push(Attribute {
                    name: attr.name.clone(),
                    kind: attr.kind.clone(),
                    is_label: true,
                });
            }
            AttributeKind::Numeric => {
                positive.push(None);
                schema.push(Attribute::label(attr.name.clone()));
            }
            _ => {
                return Err(Error::Designation(format!(
                    "label attribute '{}' must be nominal {{0,1}}",
                    attr.name
                )))
            }
        }
    }

    let mut instances = Vec::with_capacity(raw.rows.len());
    for (row, &line) in raw.rows.into_iter().zip(&raw.row_lines) {
        let mut features = Vec::with_capacity(row.len());
        let mut labels = LabelSet::new();
        let mut label_idx = 0;
        for ((value, &is_label), attr) in row.into_iter().zip(&flags).zip(&raw.attributes) {
            if !is_label {
                features.push(value);
                continue;
            }
            let active = match (&value, positive[label_idx]) {
                (Value::Nominal(v), Some(p)) => *v == p,
                (Value::Numeric(x), None) if *x == 0.0 || *x == 1.0 => *x == 1.0,
                (Value::Missing, _) => {
                    return Err(ParseError::new(
                        line,
                        0,
                        format!("missing value for label '{}'", attr.name),
                    )
                    .into())
                }
                _ => {
                    return Err(ParseError::new(
                        line,
                        0,
                        format!("non-binary value {value:?} for label '{}'", attr.name),
                    )
                    .into())
                }
            };
            if active {
                labels.insert(label_idx);
            }
            label_idx += 1;
        }
        instances.push(Instance { features, labels });
    }

    let name = match designation {
        LabelDesignation::MekaHeader(_) => strip_meka_designation(&raw.name),
        LabelDesignation::MulanXml(_) => raw.name,
    };
    MultiLabelDataset::new(name, schema, instances)
}

/// Parses an ARFF document plus optional MULAN XML. Without XML the relation
/// name must carry a MEKA `-C` designation.
pub fn read_dataset_str(arff: &str, xml: Option<&str>) -> Result<MultiLabelDataset> {
    let raw = parse_arff_str(arff)?;
    let designation = match xml {
        Some(x) => LabelDesignation::MulanXml(parse_mulan_xml(x)?),
        None => meka_designation(&raw)?,
    };
    assemble(raw, &designation)
}

fn meka_designation(raw: &RawRelation) -> Result<LabelDesignation> {
    detect_meka_labels(&raw.name)
        .map(LabelDesignation::MekaHeader)
        .ok_or_else(|| {
            Error::Designation(format!(
                "no label XML given and relation '{}' has no MEKA -C header",
                raw.name
            ))
        })
}

pub fn read_dataset(arff_path: &Path, xml_path: Option<&Path>) -> Result<MultiLabelDataset> {
    let file = File::open(arff_path).map_err(|e| Error::io(arff_path, e))?;
    let raw = parse_arff(BufReader::new(file)).map_err(|e| with_path(e, arff_path))?;
    let designation = match xml_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            LabelDesignation::MulanXml(
                parse_mulan_xml(&text).map_err(|e| Error::Xml(format!("{}: {e}", p.display())))?,
            )
        }
        None => meka_designation(&raw)?,
    };
    assemble(raw, &designation).map_err(|e| with_path(e, arff_path))
}

fn with_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Parse(p) => Error::Parse(ParseError {
            message: format!("{}: {}", path.display(), p.message),
            ..p
        }),
        e => e,
    }
}

fn raw_attributes(schema: &[Attribute]) -> Vec<RawAttribute> {
    schema
        .iter()
        .map(|a| RawAttribute {
            name: a.name.clone(),
            kind: a.kind.clone(),
        })
        .collect()
}

fn rows<'a>(
    ds: &'a MultiLabelDataset,
    schema: &'a [Attribute],
) -> impl Iterator<Item = Vec<Value>> + 'a {
    ds.instances().iter().map(move |inst| {
        let mut features = inst.features.iter();
        let mut label = 0;
        schema
            .iter()
            .map(|attr| {
                if attr.is_label {
                    let p = attr.positive_index().expect("validated label attribute");
                    let v = if inst.labels.contains(label) { p } else { 1 - p };
                    label += 1;
                    Value::Nominal(v)
                } else {
                    features.next().cloned().expect("validated feature arity")
                }
            })
            .collect()
    })
}

/// Writes the dataset's ARFF body with its own relation name and schema order.
pub fn write_arff<W: Write>(ds: &MultiLabelDataset, style: Style, out: &mut W) -> std::io::Result<()> {
    arff::write_arff(
        out,
        ds.relation_name(),
        &raw_attributes(ds.schema()),
        rows(ds, ds.schema()),
        style,
    )
}

pub fn to_arff_string(ds: &MultiLabelDataset, style: Style) -> String {
    let mut buf = Vec::new();
    write_arff(ds, style, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ARFF output is UTF-8")
}

/// Schema laid out for MEKA (labels contiguous at the start or end) and the
/// matching signed `-C` count. Non-contiguous labels are moved to the front,
/// preserving the relative order of labels and of features.
pub fn meka_layout(ds: &MultiLabelDataset) -> (Vec<Attribute>, i64) {
    let schema = ds.schema();
    let n_labels = ds.num_labels();
    let prefix = schema.iter().take(n_labels).all(|a| a.is_label);
    let suffix = schema.iter().rev().take(n_labels).all(|a| a.is_label);
    if prefix {
        (schema.to_vec(), n_labels as i64)
    } else if suffix {
        (schema.to_vec(), -(n_labels as i64))
    } else {
        let mut reordered: Vec<Attribute> = ds.label_attributes().cloned().collect();
        reordered.extend(ds.feature_attributes().cloned());
        (reordered, n_labels as i64)
    }
}

pub fn write_meka_arff<W: Write>(
    ds: &MultiLabelDataset,
    style: Style,
    out: &mut W,
) -> std::io::Result<()> {
    let (schema, count) = meka_layout(ds);
    arff::write_arff(
        out,
        &meka_relation_name(ds.relation_name(), count),
        &raw_attributes(&schema),
        rows(ds, &schema),
        style,
    )
}

pub fn to_meka_string(ds: &MultiLabelDataset, style: Style) -> String {
    let mut buf = Vec::new();
    write_meka_arff(ds, style, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ARFF output is UTF-8")
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

/// Writes MULAN files: ARFF data plus the label XML.
pub fn write_dataset(
    ds: &MultiLabelDataset,
    arff_path: &Path,
    xml_path: &Path,
    style: Style,
) -> Result<()> {
    write_file(arff_path, |w| write_arff(ds, style, w))?;
    write_file(xml_path, |w| w.write_all(mulan_xml_string(ds.label_names()).as_bytes()))
}

/// Writes a single MEKA ARFF file.
pub fn write_meka(ds: &MultiLabelDataset, arff_path: &Path, style: Style) -> Result<()> {
    write_file(arff_path, |w| write_meka_arff(ds, style, w))
}
