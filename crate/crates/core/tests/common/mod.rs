#![allow(dead_code)]

use concur::{Attribute, Instance, MultiLabelDataset, Value};
use proptest::prelude::*;

/// A label count and random labelsets over it; labels may go unused.
pub fn labelsets(max_rows: usize, max_labels: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1..=max_labels).prop_flat_map(move |q| {
        let row = proptest::collection::vec(any::<bool>(), q).prop_map(|bits| {
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect::<Vec<usize>>()
        });
        (Just(q), proptest::collection::vec(row, 1..=max_rows))
    })
}

pub fn label_names(q: usize) -> Vec<String> {
    (0..q).map(|i| format!("L{i}")).collect()
}

pub fn label_dataset(q: usize, sets: Vec<Vec<usize>>) -> MultiLabelDataset {
    let names = label_names(q);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    MultiLabelDataset::from_labelsets("random", &refs, sets).unwrap()
}

/// Dataset with one numeric feature holding the instance position, so that
/// instances are distinguishable.
pub fn featured_dataset(q: usize, sets: Vec<Vec<usize>>) -> MultiLabelDataset {
    let mut schema = vec![Attribute::numeric("pos")];
    schema.extend(label_names(q).into_iter().map(Attribute::label));
    let instances = sets
        .into_iter()
        .enumerate()
        .map(|(i, ls)| Instance::new(vec![Value::Numeric(i as f64)], ls))
        .collect();
    MultiLabelDataset::new("random", schema, instances).unwrap()
}

fn feature_kind() -> impl Strategy<Value = Attribute> {
    prop_oneof![
        Just(Attribute::numeric("")),
        Just(Attribute::nominal("", &["red", "green blue", "it's"])),
        Just(Attribute::string("")),
    ]
}

fn feature_value(attr: &Attribute) -> BoxedStrategy<Value> {
    let missing = Just(Value::Missing);
    match &attr.kind {
        concur::AttributeKind::Numeric => prop_oneof![
            4 => prop_oneof![
                Just(0.0),
                -1e6f64..1e6,
                (-300i32..300).prop_map(|e| 1.5 * 10f64.powi(e)),
            ]
            .prop_map(Value::Numeric),
            1 => missing,
        ]
        .boxed(),
        concur::AttributeKind::Nominal(domain) => prop_oneof![
            4 => (0..domain.len()).prop_map(Value::Nominal),
            1 => missing,
        ]
        .boxed(),
        concur::AttributeKind::String => prop_oneof![
            4 => "[a-z ,'\"%{}?\\\\]{0,6}".prop_map(Value::Text),
            1 => missing,
        ]
        .boxed(),
    }
}

/// Datasets with mixed feature kinds, missing values, and labels placed at
/// arbitrary schema positions.
pub fn mixed_dataset() -> impl Strategy<Value = MultiLabelDataset> {
    (
        proptest::collection::vec(feature_kind(), 0..4),
        1usize..5,
        any::<u64>(),
    )
        .prop_flat_map(|(features, q, order_seed)| {
            let features: Vec<Attribute> = features
                .into_iter()
                .enumerate()
                .map(|(i, mut a)| {
                    a.name = format!("f {i}");
                    a
                })
                .collect();
            let mut schema: Vec<Attribute> = features.clone();
            // Deterministic interleaving of labels among features.
            for (k, name) in label_names(q).into_iter().enumerate() {
                let slot = ((order_seed >> (k * 3)) as usize) % (schema.len() + 1);
                schema.insert(slot, Attribute::label(name));
            }
            let row_values: Vec<BoxedStrategy<Value>> = features.iter().map(feature_value).collect();
            let label_bits = proptest::collection::vec(any::<bool>(), q);
            let row = (row_values, label_bits).prop_map(|(vals, bits)| {
                let labels: Vec<usize> = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| i)
                    .collect();
                Instance::new(vals, labels)
            });
            proptest::collection::vec(row, 0..12)
                .prop_map(move |instances| MultiLabelDataset::new("mixed data", schema.clone(), instances).unwrap())
        })
}
