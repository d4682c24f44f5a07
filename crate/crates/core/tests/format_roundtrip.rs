mod common;

use common::mixed_dataset;
use concur::formats::{
    read_dataset, read_dataset_str, to_arff_string, to_meka_string, write_dataset, write_meka,
    mulan_xml_string, Style,
};
use concur::{Error, MultiLabelDataset};
use proptest::prelude::*;

fn mulan(ds: &MultiLabelDataset, style: Style) -> MultiLabelDataset {
    let arff = to_arff_string(ds, style);
    let xml = mulan_xml_string(ds.label_names());
    read_dataset_str(&arff, Some(&xml)).unwrap_or_else(|e| panic!("{e}\n{arff}"))
}

fn meka(ds: &MultiLabelDataset, style: Style) -> MultiLabelDataset {
    let arff = to_meka_string(ds, style);
    read_dataset_str(&arff, None).unwrap_or_else(|e| panic!("{e}\n{arff}"))
}

/// Same label names, labelsets and per-instance feature values keyed by
/// attribute name, regardless of schema order.
fn semantically_equal(a: &MultiLabelDataset, b: &MultiLabelDataset) -> bool {
    if a.label_names() != b.label_names() || a.num_instances() != b.num_instances() {
        return false;
    }
    let mut fa: Vec<_> = a.feature_attributes().cloned().collect();
    let mut fb: Vec<_> = b.feature_attributes().cloned().collect();
    let order = |attrs: &[concur::Attribute]| {
        let mut idx: Vec<usize> = (0..attrs.len()).collect();
        idx.sort_by(|&x, &y| attrs[x].name.cmp(&attrs[y].name));
        idx
    };
    let (oa, ob) = (order(&fa), order(&fb));
    fa.sort_by(|x, y| x.name.cmp(&y.name));
    fb.sort_by(|x, y| x.name.cmp(&y.name));
    if fa != fb {
        return false;
    }
    a.instances().iter().zip(b.instances()).all(|(x, y)| {
        x.labels == y.labels
            && oa
                .iter()
                .zip(&ob)
                .all(|(&i, &j)| x.features[i] == y.features[j])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn mulan_dense_round_trip(ds in mixed_dataset()) {
        prop_assert_eq!(mulan(&ds, Style::Dense), ds);
    }

    #[test]
    fn mulan_sparse_round_trip(ds in mixed_dataset()) {
        prop_assert_eq!(mulan(&ds, Style::Sparse), ds);
    }

    #[test]
    fn meka_round_trip(ds in mixed_dataset()) {
        for style in [Style::Dense, Style::Sparse] {
            let back = meka(&ds, style);
            prop_assert!(semantically_equal(&back, &ds));
            prop_assert_eq!(back.relation_name(), ds.relation_name());
        }
    }

    #[test]
    fn meka_then_mulan_then_meka(ds in mixed_dataset()) {
        let first = meka(&ds, Style::Dense);
        let second = meka(&mulan(&first, Style::Sparse), Style::Dense);
        prop_assert_eq!(second, first);
    }

    #[test]
    fn encodings_parse_equal(ds in mixed_dataset()) {
        prop_assert_eq!(mulan(&ds, Style::Dense), mulan(&ds, Style::Sparse));
    }

    #[test]
    fn writing_is_deterministic(ds in mixed_dataset()) {
        prop_assert_eq!(to_arff_string(&ds, Style::Sparse), to_arff_string(&ds, Style::Sparse));
        let again = mulan(&ds, Style::Dense);
        prop_assert_eq!(to_arff_string(&again, Style::Dense), to_arff_string(&ds, Style::Dense));
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let ds = MultiLabelDataset::from_labelsets("files", &["a", "b c"], vec![vec![0], vec![0, 1], vec![]])
        .unwrap();
    let (arff, xml) = (dir.path().join("d.arff"), dir.path().join("d.xml"));
    write_dataset(&ds, &arff, &xml, Style::Sparse).unwrap();
    assert_eq!(read_dataset(&arff, Some(&xml)).unwrap(), ds);
    let meka_path = dir.path().join("m.arff");
    write_meka(&ds, &meka_path, Style::Dense).unwrap();
    assert_eq!(read_dataset(&meka_path, None).unwrap(), ds);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let text = "@relation r\n@attribute x numeric\n@attribute L {0,1}\n@data\n1,0\nabc,1\n";
    let xml = mulan_xml_string(&["L".to_string()]);
    let err = read_dataset_str(text, Some(&xml)).unwrap_err();
    match err {
        Error::Parse(p) => assert_eq!(p.line, 6),
        e => panic!("unexpected error {e}"),
    }
}

#[test]
fn missing_label_value_is_rejected() {
    let text = "@relation r\n@attribute L {0,1}\n@attribute M {0,1}\n@data\n1,?\n";
    let xml = mulan_xml_string(&["L".to_string(), "M".to_string()]);
    assert!(read_dataset_str(text, Some(&xml)).is_err());
}

#[test]
fn missing_designation_is_rejected() {
    let text = "@relation plain\n@attribute L {0,1}\n@data\n1\n";
    assert!(matches!(read_dataset_str(text, None), Err(Error::Designation(_))));
}
