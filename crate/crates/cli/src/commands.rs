use std::io::{self, Write};
use std::path::Path;

use dbaug_core::eval::{accuracy, evaluate_windowed};
use dbaug_core::warping::{dtw_distance_windowed, dtw_path_windowed};
use dbaug_core::{
    augment_dataset, dba as dba_average, write_dataset, Error, Label, ProbabilityMatrix, TimeSeries,
};

use crate::failure::{CliResult, Failure};
use crate::files::{read_dataset_file, read_text, read_values, write_all_atomic};
use crate::manifest::{self, ClassCount, RunManifest, RunReport, Sidecar};
use crate::{AugmentArgs, DbaArgs, DtwArgs, EnsembleArgs, EvalArgs};

fn stdout_failure(e: io::Error) -> Failure {
    Failure::io(Path::new("<stdout>"), e)
}

pub fn augment(args: AugmentArgs) -> CliResult<()> {
    let manifest = match &args.manifest {
        Some(path) => {
            let mut m = manifest::load(path)?;
            if let Some(out) = args.out {
                m.out = out;
            }
            m
        }
        None => RunManifest {
            subcommand: "augment".into(),
            train: args.train.expect("clap enforces --train"),
            out: args.out.expect("clap enforces --out"),
            seed: args.seed,
            k: args.k,
            boosted: args.boosted,
            seed_weight: args.seed_weight,
            boosted_weight: args.boosted_weight,
            residual_mass: args.residual_mass,
            multiplier: args.multiplier,
            dba_iters: args.dba.dba_iters,
            dba_tol: args.dba.dba_tol,
            delimiter: args.delimiter,
            window: args.window,
        },
    };
    let meta = args
        .meta
        .unwrap_or_else(|| manifest::sidecar_path(&manifest.out));
    run_augment(&manifest, &meta)
}

fn run_augment(m: &RunManifest, meta: &Path) -> CliResult<()> {
    let policy = m.policy();
    policy.validate()?;
    let (data, delim) = read_dataset_file(&m.train, m.delimiter)?;
    let result = augment_dataset(&data, &policy, &m.dba_params())?;

    let mut body = Vec::new();
    write_dataset(&result.dataset, &mut body, delim)?;

    for skip in &result.skipped {
        eprintln!("dbaug: skipped class `{}`: {}", skip.label, skip.reason);
    }
    let counts = |v: Vec<(Label, usize)>| {
        v.into_iter()
            .map(|(label, count)| ClassCount { label, count })
            .collect()
    };
    let sidecar = Sidecar {
        manifest: m.clone(),
        report: RunReport {
            original: counts(data.class_counts()),
            generated: counts(result.generated),
            skipped: result.skipped,
            total_instances: result.dataset.len(),
            output_delimiter: delim,
        },
    };
    let mut json = serde_json::to_vec_pretty(&sidecar).map_err(|e| Failure::io(meta, e))?;
    json.push(b'\n');

    write_all_atomic(&[(m.out.as_path(), &body), (meta, &json)])
}

fn series_from_file(path: &Path) -> CliResult<TimeSeries> {
    TimeSeries::new(read_values(path)?).map_err(|e| Failure::from(e).in_file(path))
}

fn instance(data: &dbaug_core::LabeledDataset, index: usize) -> CliResult<&TimeSeries> {
    data.instances()
        .get(index)
        .map(|i| &i.series)
        .ok_or_else(|| {
            Error::IndexOutOfRange {
                index,
                len: data.len(),
            }
            .into()
        })
}

pub fn dtw(args: DtwArgs) -> CliResult<()> {
    let (a, b) = match (&args.a, &args.b, &args.train, args.pair) {
        (Some(a), Some(b), _, _) => (series_from_file(a)?, series_from_file(b)?),
        (_, _, Some(train), Some((i, j))) => {
            let (data, _) = read_dataset_file(train, args.delimiter)?;
            (instance(&data, i)?.clone(), instance(&data, j)?.clone())
        }
        _ => {
            return Err(Failure::usage(
                "give either --a and --b, or --train with --pair",
            ))
        }
    };
    let window = manifest::window(args.window);

    let stdout = io::stdout();
    let mut out = stdout.lock();
    if args.path {
        let (path, cost) = dtw_path_windowed(&a, &b, window);
        writeln!(out, "{cost}").map_err(stdout_failure)?;
        for (i, j) in path.steps() {
            writeln!(out, "{i},{j}").map_err(stdout_failure)?;
        }
    } else {
        writeln!(out, "{}", dtw_distance_windowed(&a, &b, window)).map_err(stdout_failure)?;
    }
    Ok(())
}

pub fn dba(args: DbaArgs) -> CliResult<()> {
    let (data, delim) = read_dataset_file(&args.train, args.delimiter)?;
    let selected: Vec<usize> = if let Some(class) = &args.class {
        let members = data.members_of(&Label::new(class.as_str()));
        if members.is_empty() {
            return Err(Error::UnknownLabel(class.clone()).into());
        }
        members
    } else if !args.indices.is_empty() {
        args.indices.clone()
    } else {
        (0..data.len()).collect()
    };

    let subset = selected
        .iter()
        .map(|&i| instance(&data, i).cloned())
        .collect::<CliResult<Vec<_>>>()?;
    let init = instance(&data, args.init.unwrap_or(selected[0]))?;
    let params = dbaug_core::DbaParams {
        max_iters: args.dba.dba_iters,
        rel_tol: args.dba.dba_tol,
        window: manifest::window(args.window),
    };
    let average = dba_average(&subset, init, &params)?;

    let mut line = average
        .values()
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(&delim.to_string());
    line.push('\n');
    match &args.out {
        Some(path) => write_all_atomic(&[(path.as_path(), line.as_bytes())]),
        None => io::stdout()
            .write_all(line.as_bytes())
            .map_err(stdout_failure),
    }
}

pub fn eval(args: EvalArgs) -> CliResult<()> {
    let (train, _) = read_dataset_file(&args.train, args.delimiter)?;
    let (test, _) = read_dataset_file(&args.test, args.delimiter)?;
    let augmented = args
        .augmented
        .as_deref()
        .map(|p| read_dataset_file(p, args.delimiter).map(|(d, _)| d))
        .transpose()?;
    let window = manifest::window(args.window);

    let mut rows = vec![("original", &train)];
    if let Some(aug) = &augmented {
        rows.push(("augmented", aug));
    }
    let mut text = String::from("training_set,train_size,correct,total,accuracy\n");
    for (name, set) in rows {
        let e = evaluate_windowed(set, &test, window)?;
        text.push_str(&format!(
            "{name},{},{},{},{:.6}\n",
            set.len(),
            e.correct,
            test.len(),
            e.accuracy
        ));
    }
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(stdout_failure)
}

fn read_matrix(path: &Path) -> CliResult<ProbabilityMatrix> {
    ProbabilityMatrix::parse(&read_text(path)?).map_err(|e| Failure::from(e).in_file(path))
}

/// First comma- or tab-separated field of every nonempty line.
fn read_truth(path: &Path) -> CliResult<Vec<Label>> {
    Ok(read_text(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Label::new(l.split([',', '\t']).next().unwrap_or("").trim()))
        .collect())
}

pub fn ensemble(args: EnsembleArgs) -> CliResult<()> {
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    let (_, predictions) = dbaug_core::average_posteriors(&a, &b)?;
    let truth = args.truth.as_deref().map(read_truth).transpose()?;

    let mut text = String::new();
    match &truth {
        Some(truth) => {
            let acc = accuracy(&predictions, truth)
                .map_err(|e| Failure::from(e).in_file(args.truth.as_deref().unwrap()))?;
            text.push_str("index,prediction,truth\n");
            for (i, (p, t)) in predictions.iter().zip(truth).enumerate() {
                text.push_str(&format!("{i},{p},{t}\n"));
            }
            text.push_str(&format!("accuracy,{acc:.6}\n"));
        }
        None => {
            text.push_str("index,prediction\n");
            for (i, p) in predictions.iter().enumerate() {
                text.push_str(&format!("{i},{p}\n"));
            }
        }
    }
    io::stdout()
        .write_all(text.as_bytes())
        .map_err(stdout_failure)
}
