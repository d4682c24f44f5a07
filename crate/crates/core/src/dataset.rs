//! In-memory multilabel dataset model.
//!
//! Labels are stored sparsely, as a sorted index set per instance. Features are
//! dense, one [`Value`] per non-label attribute in schema order. Label `l`
//! always refers to the `l`-th label attribute in declaration order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeKind {
    Numeric,
    Nominal(Vec<String>),
    String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
    pub is_label: bool,
}

impl Attribute {
    pub fn numeric(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: AttributeKind::Numeric,
            is_label: false,
        }
    }

    pub fn nominal(name: impl Into<String>, values: &[&str]) -> Self {
        Self {
            name: name.into(),
            kind: AttributeKind::Nominal(values.iter().map(|v| v.to_string()).collect()),
            is_label: false,
        }
    }

    pub fn string(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: AttributeKind::String,
            is_label: false,
        }
    }

    /// A binary label attribute declared as `{0,1}`.
    pub fn label(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: AttributeKind::Nominal(vec!["0".into(), "1".into()]),
            is_label: true,
        }
    }

    /// Position of the `"1"` value in a binary nominal domain.
    pub fn positive_index(&self) -> Option<usize> {
        match &self.kind {
            AttributeKind::Nominal(values) if is_binary_domain(values) => {
                values.iter().position(|v| v == "1")
            }
            _ => None,
        }
    }
}

pub(crate) fn is_binary_domain(values: &[String]) -> bool {
    values.len() == 2
        && values.iter().any(|v| v == "0")
        && values.iter().any(|v| v == "1")
}

/// A single feature value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Numeric(f64),
    /// Index into the attribute's nominal domain.
    Nominal(usize),
    Text(String),
    Missing,
}

/// Sorted, duplicate-free set of label indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LabelSet(Vec<usize>);

impl LabelSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn insert(&mut self, label: usize) {
        if let Err(pos) = self.0.binary_search(&label) {
            self.0.insert(pos, label);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Keeps the labels for which `keep` returns true.
    pub fn filtered(&self, mut keep: impl FnMut(usize) -> bool) -> LabelSet {
        LabelSet(self.0.iter().copied().filter(|&l| keep(l)).collect())
    }

    pub fn intersection_len(&self, other: &LabelSet) -> usize {
        self.iter().filter(|&l| other.contains(l)).count()
    }
}

impl FromIterator<usize> for LabelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LabelSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for LabelSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl From<Vec<usize>> for LabelSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub features: Vec<Value>,
    pub labels: LabelSet,
}

impl Instance {
    pub fn new(features: Vec<Value>, labels: impl Into<LabelSet>) -> Self {
        Self {
            features,
            labels: labels.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationRule {
    NoLabels,
    DuplicateAttributeName,
    LabelNotBinary,
    FeatureArity,
    LabelOutOfRange,
    ValueKindMismatch,
    NominalOutOfDomain,
}

/// One broken invariant. `instance` is `None` for schema-level problems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: Option<usize>,
    pub rule: ViolationRule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.instance {
            Some(i) => write!(f, "instance {i}: {}", self.message),
            None => write!(f, "schema: {}", self.message),
        }
    }
}

/// Symmetric label co-occurrence counts; the diagonal holds label counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoOccurrenceMatrix {
    size: usize,
    counts: Vec<usize>,
}

impl CoOccurrenceMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.counts[a * self.size + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.counts[a * self.size..(a + 1) * self.size]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiLabelDataset {
    relation_name: String,
    schema: Vec<Attribute>,
    label_names: Vec<String>,
    instances: Vec<Instance>,
}

impl MultiLabelDataset {
    /// Builds a dataset and rejects it if [`validate`](Self::validate) reports
    /// any violation.
    pub fn new(
        relation_name: impl Into<String>,
        schema: Vec<Attribute>,
        instances: Vec<Instance>,
    ) -> Result<Self> {
        let ds = Self::from_parts(relation_name, schema, instances);
        let violations = ds.validate();
        if let Some(first) = violations.first() {
            return Err(Error::InvalidDataset(if violations.len() == 1 {
                first.to_string()
            } else {
                format!("{first} (and {} more violations)", violations.len() - 1)
            }));
        }
        Ok(ds)
    }

    /// Builds a dataset without checking invariants.
    pub fn from_parts(
        relation_name: impl Into<String>,
        schema: Vec<Attribute>,
        instances: Vec<Instance>,
    ) -> Self {
        let label_names = schema
            .iter()
            .filter(|a| a.is_label)
            .map(|a| a.name.clone())
            .collect();
        Self {
            relation_name: relation_name.into(),
            schema,
            label_names,
            instances,
        }
    }

    /// Label-only dataset: one `{0,1}` attribute per label, no features.
    pub fn from_labelsets(
        relation_name: impl Into<String>,
        label_names: &[&str],
        labelsets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let schema = label_names.iter().map(|n| Attribute::label(*n)).collect();
        let instances = labelsets
            .into_iter()
            .map(|ls| Instance::new(Vec::new(), ls))
            .collect();
        Self::new(relation_name, schema, instances)
    }

    pub fn relation_name(&self) -> &str {
        &self.relation_name
    }

    pub fn schema(&self) -> &[Attribute] {
        &self.schema
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn num_instances(&self) -> usize {
        self.instances.len()
    }

    pub fn num_labels(&self) -> usize {
        self.label_names.len()
    }

    /// Number of non-label attributes.
    pub fn num_features(&self) -> usize {
        self.schema.len() - self.label_names.len()
    }

    pub fn feature_attributes(&self) -> impl Iterator<Item = &Attribute> {
        self.schema.iter().filter(|a| !a.is_label)
    }

    pub fn label_attributes(&self) -> impl Iterator<Item = &Attribute> {
        self.schema.iter().filter(|a| a.is_label)
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.label_names.iter().position(|n| n == name)
    }

    pub fn labelsets(&self) -> impl Iterator<Item = &LabelSet> {
        self.instances.iter().map(|i| &i.labels)
    }

    pub fn into_parts(self) -> (String, Vec<Attribute>, Vec<Instance>) {
        (self.relation_name, self.schema, self.instances)
    }

    /// Same relation and schema, different instances.
    pub fn with_instances(&self, instances: Vec<Instance>) -> Self {
        Self {
            relation_name: self.relation_name.clone(),
            schema: self.schema.clone(),
            label_names: self.label_names.clone(),
            instances,
        }
    }

    pub fn with_relation_name(mut self, name: impl Into<String>) -> Self {
        self.relation_name = name.into();
        self
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        self.with_instances(indices.iter().map(|&i| self.instances[i].clone()).collect())
    }

    /// Appends the instances of `other`, which must share this schema.
    pub fn concat(&self, other: &MultiLabelDataset) -> Result<Self> {
        if self.schema != other.schema {
            return Err(Error::InvalidDataset(
                "cannot concatenate datasets with different schemas".into(),
            ));
        }
        let mut instances = self.instances.clone();
        instances.extend(other.instances.iter().cloned());
        Ok(self.with_instances(instances))
    }

    pub fn push(&mut self, instance: Instance) -> Result<()> {
        let index = self.instances.len();
        let mut violations = Vec::new();
        self.check_instance(index, &instance, &mut violations);
        if let Some(v) = violations.into_iter().next() {
            return Err(Error::InvalidDataset(v.to_string()));
        }
        self.instances.push(instance);
        Ok(())
    }

    /// Lists every broken invariant; an empty list means the dataset is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.label_names.is_empty() {
            out.push(Violation {
                instance: None,
                rule: ViolationRule::NoLabels,
                message: "dataset declares no label attributes".into(),
            });
        }
        let mut seen = HashSet::new();
        for attr in &self.schema {
            if !seen.insert(attr.name.as_str()) {
                out.push(Violation {
                    instance: None,
                    rule: ViolationRule::DuplicateAttributeName,
                    message: format!("attribute name '{}' is declared twice", attr.name),
                });
            }
            if attr.is_label && attr.positive_index().is_none() {
                out.push(Violation {
                    instance: None,
                    rule: ViolationRule::LabelNotBinary,
                    message: format!("label attribute '{}' is not nominal {{0,1}}", attr.name),
                });
            }
        }
        for (i, inst) in self.instances.iter().enumerate() {
            self.check_instance(i, inst, &mut out);
        }
        out
    }

    fn check_instance(&self, index: usize, inst: &Instance, out: &mut Vec<Violation>) {
        let violation = |rule, message: String| Violation {
            instance: Some(index),
            rule,
            message,
        };
        let n_features = self.num_features();
        if inst.features.len() != n_features {
            out.push(violation(
                ViolationRule::FeatureArity,
                format!(
                    "has {} feature values, schema declares {}",
                    inst.features.len(),
                    n_features
                ),
            ));
        } else {
            for (value, attr) in inst.features.iter().zip(self.feature_attributes()) {
                match (value, &attr.kind) {
                    (Value::Missing, _)
                    | (Value::Numeric(_), AttributeKind::Numeric)
                    | (Value::Text(_), AttributeKind::String) => {}
                    (Value::Nominal(v), AttributeKind::Nominal(domain)) => {
                        if *v >= domain.len() {
                            out.push(violation(
                                ViolationRule::NominalOutOfDomain,
                                format!(
                                    "nominal index {v} outside the {} values of '{}'",
                                    domain.len(),
                                    attr.name
                                ),
                            ));
                        }
                    }
                    _ => out.push(violation(
                        ViolationRule::ValueKindMismatch,
                        format!("value {value:?} does not match attribute '{}'", attr.name),
                    )),
                }
            }
        }
        for l in inst.labels.iter() {
            if l >= self.label_names.len() {
                out.push(violation(
                    ViolationRule::LabelOutOfRange,
                    format!(
                        "label index {l} out of range for {} labels",
                        self.label_names.len()
                    ),
                ));
            }
        }
    }

    /// Number of instances containing each label.
    pub fn label_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_labels()];
        for ls in self.labelsets() {
            for l in ls.iter() {
                counts[l] += 1;
            }
        }
        counts
    }

    /// Total number of active-label assignments.
    pub fn label_assignments(&self) -> usize {
        self.labelsets().map(LabelSet::len).sum()
    }

    pub fn co_occurrence(&self) -> CoOccurrenceMatrix {
        let n = self.num_labels();
        let mut counts = vec![0; n * n];
        for ls in self.labelsets() {
            let labels = ls.as_slice();
            for (k, &a) in labels.iter().enumerate() {
                counts[a * n + a] += 1;
                for &b in &labels[k + 1..] {
                    counts[a * n + b] += 1;
                    counts[b * n + a] += 1;
                }
            }
        }
        CoOccurrenceMatrix { size: n, counts }
    }

    /// Frequency of every distinct labelset, the empty one included.
    pub fn distinct_labelsets(&self) -> BTreeMap<LabelSet, usize> {
        let mut freq = BTreeMap::new();
        for ls in self.labelsets() {
            *freq.entry(ls.clone()).or_insert(0) += 1;
        }
        freq
    }

    /// Instances grouped by labelset, groups in order of first appearance.
    pub fn labelset_bags(&self) -> Vec<(LabelSet, Vec<usize>)> {
        let mut position: HashMap<&LabelSet, usize> = HashMap::new();
        let mut bags: Vec<(LabelSet, Vec<usize>)> = Vec::new();
        for (i, ls) in self.labelsets().enumerate() {
            match position.get(ls) {
                Some(&b) => bags[b].1.push(i),
                None => {
                    position.insert(ls, bags.len());
                    bags.push((ls.clone(), vec![i]));
                }
            }
        }
        bags
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> MultiLabelDataset {
        let schema = vec![
            Attribute::numeric("x"),
            Attribute::label("A"),
            Attribute::label("B"),
        ];
        let instances = [vec![0], vec![0], vec![0, 1], vec![0]]
            .into_iter()
            .enumerate()
            .map(|(i, ls)| Instance::new(vec![Value::Numeric(i as f64)], ls))
            .collect();
        MultiLabelDataset::new("toy", schema, instances).unwrap()
    }

    #[test]
    fn toy_is_valid() {
        assert!(toy().validate().is_empty());
    }

    #[test]
    fn out_of_range_label_is_reported() {
        let ds = toy();
        let mut instances = ds.instances().to_vec();
        instances[1].labels.insert(2);
        let bad = ds.with_instances(instances);
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, ViolationRule::LabelOutOfRange);
        assert_eq!(v[0].instance, Some(1));
    }

    #[test]
    fn wrong_arity_is_reported() {
        let ds = toy();
        let mut instances = ds.instances().to_vec();
        instances[3].features.push(Value::Numeric(1.0));
        let v = ds.with_instances(instances).validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, ViolationRule::FeatureArity);
        assert_eq!(v[0].instance, Some(3));
    }

    #[test]
    fn schema_violations() {
        let ds = MultiLabelDataset::from_parts(
            "r",
            vec![
                Attribute::numeric("a"),
                Attribute::numeric("a"),
                Attribute {
                    is_label: true,
                    ..Attribute::nominal("L", &["0", "2"])
                },
            ],
            vec![],
        );
        let rules: Vec<_> = ds.validate().into_iter().map(|v| v.rule).collect();
        assert_eq!(
            rules,
            vec![ViolationRule::DuplicateAttributeName, ViolationRule::LabelNotBinary]
        );
        let none = MultiLabelDataset::from_parts("r", vec![Attribute::numeric("a")], vec![]);
        assert_eq!(none.validate()[0].rule, ViolationRule::NoLabels);
    }

    #[test]
    fn reversed_label_domain_is_binary() {
        let attr = Attribute {
            is_label: true,
            ..Attribute::nominal("L", &["1", "0"])
        };
        assert_eq!(attr.positive_index(), Some(0));
    }

    #[test]
    fn counts_and_co_occurrence() {
        let ds = toy();
        assert_eq!(ds.label_counts(), vec![4, 1]);
        let co = ds.co_occurrence();
        assert_eq!(co.get(0, 1), 1);
        assert_eq!(co.get(1, 0), 1);
        assert_eq!(co.get(0, 0), 4);
        assert_eq!(co.get(1, 1), 1);
    }

    #[test]
    fn triple_contributes_to_each_pair() {
        let ds =
            MultiLabelDataset::from_labelsets("t", &["A", "B", "C"], vec![vec![0, 1, 2]]).unwrap();
        let co = ds.co_occurrence();
        assert_eq!((co.get(0, 1), co.get(0, 2), co.get(1, 2)), (1, 1, 1));
    }

    #[test]
    fn single_label_dataset_has_no_pairs() {
        let ds = MultiLabelDataset::from_labelsets("t", &["A", "B", "C"], vec![vec![0], vec![2]])
            .unwrap();
        let co = ds.co_occurrence();
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert_eq!(co.get(a, b), 0);
                }
            }
        }
    }

    #[test]
    fn empty_dataset_counts_are_zero() {
        let ds = MultiLabelDataset::from_labelsets("e", &["A", "B"], vec![]).unwrap();
        assert_eq!(ds.label_counts(), vec![0, 0]);
        assert!(ds.distinct_labelsets().is_empty());
    }

    #[test]
    fn distinct_labelsets_counts_empty_set() {
        let ds = toy();
        assert_eq!(ds.distinct_labelsets().len(), 2);
        let with_empty =
            MultiLabelDataset::from_labelsets("e", &["A"], vec![vec![], vec![0], vec![]]).unwrap();
        let freq = with_empty.distinct_labelsets();
        assert_eq!(freq.len(), 2);
        assert_eq!(freq[&LabelSet::new()], 2);
    }

    #[test]
    fn push_increments_counts_on_members_only() {
        let mut ds = toy();
        let before = ds.label_counts();
        ds.push(Instance::new(vec![Value::Missing], [1])).unwrap();
        assert_eq!(ds.label_counts(), vec![before[0], before[1] + 1]);
        assert!(ds.push(Instance::new(vec![], [0])).is_err());
    }

    #[test]
    fn bags_keep_first_appearance_order() {
        let bags = toy().labelset_bags();
        assert_eq!(bags[0], (LabelSet::from([0]), vec![0, 1, 3]));
        assert_eq!(bags[1], (LabelSet::from([0, 1]), vec![2]));
    }
}
