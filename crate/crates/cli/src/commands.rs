use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use concur::evaluation::{
    baseline_predict, evaluate, k_fold_partition, read_predictions_csv, write_predictions_csv,
    LabelMatrix, MetricReport,
};
use concur::formats::{read_dataset, write_dataset, write_meka, Style};
use concur::imbalance::ImbalanceProfile;
use concur::report::{select_labels, write_chord_svg, ConcurrenceReport, DatasetSummary, LabelSelection};
use concur::resampling::{check_percentage, lp_ros, lp_rus, remedial_iterated};
use concur::MultiLabelDataset;
use serde_json::json;

use crate::args::{
    Cli, Command, ConcurrenceArgs, ConvertArgs, EvaluateArgs, FormatArg, InfoArgs, InputArgs,
    Method, PartitionArgs, PredictArgs, RemedialArgs, ResampleArgs, StyleArg, DEFAULT_SEED,
    SEED_ENV,
};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<concur::Error> for Failure {
    fn from(e: concur::Error) -> Self {
        Self::input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

/// Runs one subcommand and returns everything it prints to stdout, so that
/// nothing is printed when it fails.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Info(a) => info(a, cli.json),
        Command::Concurrence(a) => concurrence(a, cli.json),
        Command::Remedial(a) => remedial(a, cli.json),
        Command::Resample(a) => resample(a, cli.json),
        Command::Partition(a) => partition(a, cli.json),
        Command::Predict(a) => predict(a, cli.json),
        Command::Evaluate(a) => evaluate_cmd(a, cli.json),
        Command::Convert(a) => convert(a, cli.json),
    }
}

fn sibling_xml(arff: &Path) -> Option<PathBuf> {
    let xml = arff.with_extension("xml");
    xml.is_file().then_some(xml)
}

fn label_xml(arff: &Path, explicit: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| sibling_xml(arff))
}

fn load(arff: &Path, explicit_xml: Option<&Path>) -> Result<MultiLabelDataset, Failure> {
    let xml = label_xml(arff, explicit_xml);
    Ok(read_dataset(arff, xml.as_deref())?)
}

fn load_input(input: &InputArgs) -> Result<MultiLabelDataset, Failure> {
    load(&input.input, input.xml.as_deref())
}

fn style(s: StyleArg) -> Style {
    match s {
        StyleArg::Dense => Style::Dense,
        StyleArg::Sparse => Style::Sparse,
    }
}

fn seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SEED_ENV}='{v}' is not a 64-bit unsigned seed"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Absolute form of a path that may not exist yet.
fn resolved(path: &Path) -> PathBuf {
    if let Ok(p) = path.canonicalize() {
        return p;
    }
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    match (parent.canonicalize(), path.file_name()) {
        (Ok(dir), Some(name)) => dir.join(name),
        _ => path.to_path_buf(),
    }
}

fn mulan_xml_path(arff: &Path) -> PathBuf {
    arff.with_extension("xml")
}

/// Refuses outputs that would overwrite any input file.
fn check_outputs(input: &InputArgs, outputs: &[&Path]) -> Result<(), Failure> {
    let mut inputs = vec![resolved(&input.input)];
    if let Some(xml) = label_xml(&input.input, input.xml.as_deref()) {
        inputs.push(resolved(&xml));
    }
    for out in outputs {
        let r = resolved(out);
        if inputs.contains(&r) {
            return Err(Failure::usage(format!(
                "refusing to overwrite input file {}",
                out.display()
            )));
        }
    }
    Ok(())
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn info(args: &InfoArgs, json_out: bool) -> Outcome {
    if args.xml.is_some() && args.inputs.len() > 1 {
        return Err(Failure::usage("--xml can only be used with a single input"));
    }
    let mut summaries = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        let ds = load(path, args.xml.as_deref())?;
        summaries.push(DatasetSummary::compute(&ds)?);
    }
    if json_out {
        let value = if summaries.len() == 1 {
            serde_json::to_value(&summaries[0])
        } else {
            serde_json::to_value(&summaries)
        };
        return Ok(pretty(&value.expect("summary serializes")));
    }
    Ok(summaries
        .iter()
        .map(DatasetSummary::to_text)
        .collect::<Vec<_>>()
        .join("\n"))
}

fn chord_selection(value: Option<&str>) -> LabelSelection {
    match value {
        None => LabelSelection::Default,
        Some("all") => LabelSelection::All,
        Some(list) => LabelSelection::Names(
            list.split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        ),
    }
}

fn concurrence(args: &ConcurrenceArgs, json_out: bool) -> Outcome {
    if let Some(svg) = &args.svg {
        check_outputs(&args.input, &[svg])?;
    }
    let ds = load_input(&args.input)?;
    let report = ConcurrenceReport::build(&ds, args.top_k)?;
    let mut out = if json_out {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    if let Some(svg) = &args.svg {
        let selection = chord_selection(args.chord_labels.as_deref());
        let labels = select_labels(&ds, &selection)?;
        if labels.len() < 2 {
            return Err(Failure::input(format!(
                "chord diagram needs at least 2 labels but the selection has {}; \
                 use --chord-labels all or a list of names",
                labels.len()
            )));
        }
        write_chord_svg(&ds, &selection, svg)?;
        if !json_out {
            let _ = writeln!(out, "\nChord diagram with {} labels written to {}", labels.len(), svg.display());
        }
    }
    Ok(out)
}

fn write_mulan(ds: &MultiLabelDataset, arff: &Path, s: StyleArg) -> Result<PathBuf, Failure> {
    let xml = mulan_xml_path(arff);
    write_dataset(ds, arff, &xml, style(s))?;
    Ok(xml)
}

fn remedial(args: &RemedialArgs, json_out: bool) -> Outcome {
    if args.iterations == 0 {
        return Err(Failure::usage("--iterations must be at least 1"));
    }
    check_outputs(&args.input, &[&args.output, &mulan_xml_path(&args.output)])?;
    let ds = load_input(&args.input)?;
    let passes = remedial_iterated(&ds, args.iterations)?;

    let mut rows = Vec::with_capacity(passes.len());
    let mut before = DatasetSummary::compute(&ds)?;
    for (k, pass) in passes.iter().enumerate() {
        let after = DatasetSummary::compute(&pass.dataset)?;
        rows.push((k + 1, before, after.clone(), pass.summary()));
        before = after;
    }
    let result = &passes.last().expect("at least one pass").dataset;
    let xml = write_mulan(result, &args.output, args.style)?;

    if json_out {
        let iterations: Vec<_> = rows
            .iter()
            .map(|(k, b, a, s)| {
                json!({
                    "iteration": k,
                    "before": b,
                    "after": a,
                    "decoupled": s.added,
                    "above_mean": s.decoupled,
                    "unchanged_one_sided": s.dropped_empty,
                })
            })
            .collect();
        return Ok(pretty(&json!({
            "iterations": iterations,
            "output": args.output,
            "xml": xml,
        })));
    }
    let mut out = String::new();
    for (k, b, a, s) in &rows {
        let _ = writeln!(
            out,
            "Iteration {k}: {} instances decoupled ({} above mean SCUMBLE, {} kept whole)",
            s.added, s.decoupled, s.dropped_empty
        );
        let _ = writeln!(out, "  Instances: {} -> {}", b.instances, a.instances);
        let _ = writeln!(out, "  SCUMBLE: {:.3} -> {:.3}", b.scumble, a.scumble);
        let _ = writeln!(out, "  Card: {:.3} -> {:.3}", b.card, a.card);
        let _ = writeln!(out, "  Dens: {:.3} -> {:.3}", b.dens, a.dens);
        let _ = writeln!(out, "  MeanIR: {:.3} -> {:.3}", b.mean_ir, a.mean_ir);
    }
    let _ = writeln!(out, "Wrote {} and {}", args.output.display(), xml.display());
    Ok(out)
}

fn resample(args: &ResampleArgs, json_out: bool) -> Outcome {
    let oversample = args.method == Method::LpRos;
    check_percentage(args.percentage, oversample).map_err(|e| Failure::usage(e.to_string()))?;
    let seed = seed(args.seed)?;
    check_outputs(&args.input, &[&args.output, &mulan_xml_path(&args.output)])?;
    let ds = load_input(&args.input)?;
    let outcome = if oversample {
        lp_ros(&ds, args.percentage, seed)?
    } else {
        lp_rus(&ds, args.percentage, seed)?
    };
    let before = ImbalanceProfile::compute(&ds)?;
    let after = ImbalanceProfile::compute(&outcome.dataset)?;
    let xml = write_mulan(&outcome.dataset, &args.output, args.style)?;
    let name = if oversample { "LP-ROS" } else { "LP-RUS" };

    if json_out {
        return Ok(pretty(&json!({
            "method": name,
            "percentage": args.percentage,
            "seed": seed,
            "instances_before": ds.num_instances(),
            "instances_after": outcome.dataset.num_instances(),
            "added": outcome.added_count,
            "removed": outcome.removed_count,
            "mean_ir_before": before.mean_ir,
            "mean_ir_after": after.mean_ir,
            "max_ir_before": before.max_ir,
            "max_ir_after": after.max_ir,
            "warnings": outcome.warnings,
            "output": args.output,
            "xml": xml,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Method: {name}  Percentage: {}  Seed: {seed}", args.percentage);
    let _ = writeln!(
        out,
        "Instances: {} -> {} (+{} -{})",
        ds.num_instances(),
        outcome.dataset.num_instances(),
        outcome.added_count,
        outcome.removed_count
    );
    let _ = writeln!(out, "{:<8}{:>12}{:>12}", "", "Before", "After");
    let _ = writeln!(out, "{:<8}{:>12.3}{:>12.3}", "MeanIR", before.mean_ir, after.mean_ir);
    let _ = writeln!(out, "{:<8}{:>12.3}{:>12.3}", "MaxIR", before.max_ir, after.max_ir);
    for w in &outcome.warnings {
        let _ = writeln!(out, "Warning: {w}");
    }
    let _ = writeln!(out, "Wrote {} and {}", args.output.display(), xml.display());
    Ok(out)
}

fn partition(args: &PartitionArgs, json_out: bool) -> Outcome {
    if args.folds < 2 {
        return Err(Failure::usage("--folds must be at least 2"));
    }
    if args.reps == 0 {
        return Err(Failure::usage("--reps must be at least 1"));
    }
    let seed = seed(args.seed)?;
    let stem = args
        .input
        .input
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Failure::usage("input path has no file name"))?
        .to_string();
    let xml = args.outdir.join(format!("{stem}.xml"));
    let mut planned = vec![xml.clone()];
    for r in 1..=args.reps {
        for k in 1..=args.folds {
            for part in ["train", "test"] {
                planned.push(args.outdir.join(format!("{stem}-rep{r}-fold{k}-{part}.arff")));
            }
        }
    }
    let refs: Vec<&Path> = planned.iter().map(PathBuf::as_path).collect();
    check_outputs(&args.input, &refs)?;

    let ds = load_input(&args.input)?;
    if ds.num_instances() < args.folds {
        return Err(Failure::input(format!(
            "{} instances cannot be split into {} folds",
            ds.num_instances(),
            args.folds
        )));
    }
    let reps = k_fold_partition(&ds, args.folds, args.reps, seed)?;
    std::fs::create_dir_all(&args.outdir)
        .map_err(|e| Failure::input(format!("{}: {e}", args.outdir.display())))?;
    let mut written = Vec::new();
    let mut files = planned[1..].iter();
    for folds in &reps {
        for fold in folds {
            for indices in [&fold.train, &fold.test] {
                let path = files.next().expect("one planned file per split");
                let part = ds.subset(indices);
                let file = File::create(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                let mut w = BufWriter::new(file);
                concur::formats::write_arff(&part, style(args.style), &mut w)
                    .and_then(|_| std::io::Write::flush(&mut w))
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                written.push(path.clone());
            }
        }
    }
    std::fs::write(&xml, concur::formats::mulan_xml_string(ds.label_names()))
        .map_err(|e| Failure::input(format!("{}: {e}", xml.display())))?;

    if json_out {
        return Ok(pretty(&json!({
            "folds": args.folds,
            "reps": args.reps,
            "seed": seed,
            "xml": xml,
            "files": written,
        })));
    }
    let mut out = format!(
        "{} instances, {} folds x {} repetitions, seed {seed}\n",
        ds.num_instances(),
        args.folds,
        args.reps
    );
    let _ = writeln!(out, "Wrote {} fold files and {} to {}", written.len(), xml.display(), args.outdir.display());
    Ok(out)
}

fn predict(args: &PredictArgs, json_out: bool) -> Outcome {
    for input in [&args.train, &args.test] {
        check_outputs(
            &InputArgs {
                input: input.clone(),
                xml: args.xml.clone(),
            },
            &[&args.out],
        )?;
    }
    let train = load(&args.train, args.xml.as_deref())?;
    let test = load(&args.test, args.xml.as_deref())?;
    let pred = baseline_predict(&train, &test)?;
    let file = File::create(&args.out).map_err(|e| Failure::input(format!("{}: {e}", args.out.display())))?;
    write_predictions_csv(BufWriter::new(file), test.label_names(), &pred)?;
    if json_out {
        return Ok(pretty(&json!({ "rows": pred.rows(), "labels": pred.cols(), "output": args.out })));
    }
    Ok(format!(
        "Wrote {} predictions for {} labels to {}\n",
        pred.rows(),
        pred.cols(),
        args.out.display()
    ))
}

fn metric_line(out: &mut String, name: &str, v: Option<f64>) {
    let shown = v.map_or_else(|| "NA".to_string(), |x| format!("{x:.4}"));
    let _ = writeln!(out, "{name:<14}{shown}");
}

fn evaluate_cmd(args: &EvaluateArgs, json_out: bool) -> Outcome {
    if !(args.threshold > 0.0 && args.threshold < 1.0) {
        return Err(Failure::usage(format!(
            "--threshold must lie in (0, 1), got {}",
            args.threshold
        )));
    }
    let truth_ds = load(&args.truth, args.xml.as_deref())?;
    let file = File::open(&args.pred).map_err(|e| Failure::input(format!("{}: {e}", args.pred.display())))?;
    let pred = read_predictions_csv(file, truth_ds.num_labels(), args.threshold)
        .map_err(|e| Failure::input(format!("{}: {e}", args.pred.display())))?;
    let truth = LabelMatrix::from_dataset(&truth_ds);
    let report: MetricReport = evaluate(&truth, &pred)?;
    if json_out {
        return Ok(pretty(&serde_json::to_value(&report).expect("report serializes")));
    }
    let mut out = String::new();
    metric_line(&mut out, "HammingLoss", Some(report.hamming_loss));
    metric_line(&mut out, "Precision", report.precision);
    metric_line(&mut out, "Recall", report.recall);
    metric_line(&mut out, "F-Measure", report.f_measure);
    metric_line(&mut out, "MacroFM", Some(report.macro_fm));
    metric_line(&mut out, "OneError", Some(report.one_error));
    metric_line(&mut out, "RankingLoss", report.ranking_loss);
    Ok(out)
}

fn convert(args: &ConvertArgs, json_out: bool) -> Outcome {
    let mut outputs = vec![args.output.clone()];
    if args.format == FormatArg::Mulan {
        outputs.push(mulan_xml_path(&args.output));
    }
    let refs: Vec<&Path> = outputs.iter().map(PathBuf::as_path).collect();
    check_outputs(&args.input, &refs)?;
    let ds = load_input(&args.input)?;
    match args.format {
        FormatArg::Mulan => {
            write_mulan(&ds, &args.output, args.style)?;
        }
        FormatArg::Meka => write_meka(&ds, &args.output, style(args.style))?,
    }
    if json_out {
        return Ok(pretty(&json!({ "files": outputs, "instances": ds.num_instances(), "labels": ds.num_labels() })));
    }
    let names: Vec<String> = outputs.iter().map(|p| p.display().to_string()).collect();
    Ok(format!(
        "Converted {} instances with {} labels; wrote {}\n",
        ds.num_instances(),
        ds.num_labels(),
        names.join(" and ")
    ))
}
