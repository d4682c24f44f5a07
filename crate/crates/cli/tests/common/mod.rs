#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use concur::formats::{read_dataset, write_dataset, Style};
use concur::{Attribute, Instance, MultiLabelDataset, Value};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn concur(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concur"))
        .args(args)
        .current_dir(cwd)
        .env_remove("MLD_SEED")
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn toy() -> MultiLabelDataset {
    let schema = vec![Attribute::numeric("x"), Attribute::label("A"), Attribute::label("B")];
    let sets = [vec![0], vec![0], vec![0, 1], vec![0]];
    let instances = sets
        .iter()
        .enumerate()
        .map(|(i, s)| Instance::new(vec![Value::Numeric(i as f64 + 1.0)], s.clone()))
        .collect();
    MultiLabelDataset::new("t1", schema, instances).unwrap()
}

/// Dataset with skewed label frequencies in which rare labels mostly appear
/// alongside frequent ones, giving a high SCUMBLE.
pub fn concurrent(n: usize, q: usize, seed: u64) -> MultiLabelDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut schema: Vec<Attribute> = (0..3).map(|f| Attribute::numeric(format!("f{f}"))).collect();
    schema.extend((0..q).map(|l| Attribute::label(format!("label{l}"))));
    let instances = (0..n)
        .map(|_| {
            let features = (0..3).map(|_| Value::Numeric(rng.random_range(-5.0..5.0))).collect();
            let mut labels = Vec::new();
            for l in 0..q {
                let p = if l < 2 { 0.6 } else { 0.5 / (l as f64 * l as f64) };
                if rng.random_bool(p) {
                    labels.push(l);
                }
            }
            if labels.iter().any(|&l| l >= 2) && !labels.iter().any(|&l| l < 2) {
                labels.insert(0, 0);
            }
            Instance::new(features, labels)
        })
        .collect();
    MultiLabelDataset::new("concurrent", schema, instances).unwrap()
}

/// Writes MULAN files `<stem>.arff` and `<stem>.xml`, returning the ARFF path.
pub fn write(ds: &MultiLabelDataset, dir: &Path, stem: &str) -> PathBuf {
    let arff = dir.join(format!("{stem}.arff"));
    write_dataset(ds, &arff, &dir.join(format!("{stem}.xml")), Style::Dense).unwrap();
    arff
}

pub fn read(dir: &Path, stem: &str) -> MultiLabelDataset {
    read_dataset(&dir.join(format!("{stem}.arff")), Some(&dir.join(format!("{stem}.xml")))).unwrap()
}
