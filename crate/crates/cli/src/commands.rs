use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pcm_core::auditors::{
    audit_group_coherence, audit_scale_invariance, audit_single, AuditConfig,
};
use pcm_core::experiment::{run_experiment, SCHEMA_VERSION};
use pcm_core::inconsistency::{consistency_index_with, estimate_random_index};
use pcm_core::weighting::lambda_max;
use pcm_core::{AuditReport, EigenConfig, ExperimentSpec, Method, Property, Verdict};
use serde::Serialize;

use crate::input::{self, Input};
use crate::manifest::RunManifest;
use crate::{AuditArgs, Outcome, RiArgs, SimulateArgs, WeighArgs, RI_CACHE_ENV};

const MANIFEST: &str = "manifest.json";

fn write_file(dir: &Path, name: &str, contents: &str, manifest: &mut RunManifest) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    manifest.outputs.push(name.to_string());
    Ok(())
}

/// Writes to stdout; a reader that stops early (`| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

#[derive(Serialize)]
struct WeighOutput<'a> {
    input: &'a str,
    n: usize,
    lambda_max: f64,
    ci: f64,
    ri: Option<f64>,
    cr: Option<f64>,
    normalization: pcm_core::Normalization,
    weights: BTreeMap<&'static str, Vec<f64>>,
}

pub fn weigh(args: WeighArgs) -> Result<Outcome> {
    let mut inputs = input::load_all(&args.source.files, &args.source.fixtures)?;
    if inputs.len() != 1 {
        bail!("weigh takes exactly one matrix, got {}", inputs.len());
    }
    let Input {
        label,
        matrix: a,
        digest,
    } = inputs.remove(0);
    let (ri_table, ri_digest) = input::ri_table()?;
    let cfg = EigenConfig::default();
    let methods = if args.methods.is_empty() {
        Method::ALL.to_vec()
    } else {
        args.methods.clone()
    };

    let lambda = lambda_max(&a, cfg)?;
    let ci = consistency_index_with(&a, cfg)?;
    let ri = ri_table.get(a.n()).ok();
    let cr = ri.map(|ri| ci / ri);
    let mut weights = BTreeMap::new();
    let mut columns = Vec::new();
    for &m in &methods {
        let w = m
            .weights(&a, cfg)
            .with_context(|| format!("{m} weights"))?
            .normalized(args.norm);
        columns.push((m.name(), w.as_slice().to_vec()));
        weights.insert(m.name(), w.into_vec());
    }
    let out = WeighOutput {
        input: &label,
        n: a.n(),
        lambda_max: lambda,
        ci,
        ri,
        cr,
        normalization: args.norm,
        weights,
    };
    let json = serde_json::to_string(&out)?;

    let mut text = String::new();
    if args.json {
        writeln!(text, "{json}")?;
    } else {
        writeln!(text, "input       {label}")?;
        writeln!(text, "n           {}", a.n())?;
        writeln!(text, "lambda_max  {lambda:.6}")?;
        writeln!(text, "CI          {ci:.6}")?;
        match (cr, ri) {
            (Some(cr), Some(ri)) => writeln!(text, "CR          {cr:.6}  (RI {ri:.6})")?,
            _ => writeln!(text, "CR          n/a  (no random index for n = {})", a.n())?,
        }
        writeln!(text)?;
        write!(text, "{:>5}", "alt")?;
        for (name, _) in &columns {
            write!(text, "{name:>14}")?;
        }
        writeln!(text)?;
        for i in 0..a.n() {
            write!(text, "{:>5}", i + 1)?;
            for (_, w) in &columns {
                write!(text, "{:>14.6}", w[i])?;
            }
            writeln!(text)?;
        }
    }
    emit(&text)?;

    if let Some(dir) = &args.out {
        create_dir(dir)?;
        let mut manifest = RunManifest::new(
            [Some(digest), ri_digest].into_iter().flatten().collect(),
            vec![],
        );
        write_file(dir, "weigh.json", &format!("{json}\n"), &mut manifest)?;
        manifest.write(&dir.join(MANIFEST))?;
    }
    Ok(Outcome::Done)
}

#[derive(Serialize)]
struct AuditRecord<'a> {
    input: &'a str,
    #[serde(flatten)]
    report: &'a AuditReport,
}

#[derive(Serialize)]
struct AuditSummaryRow<'a> {
    schema_version: u32,
    input: &'a str,
    property: Property,
    method: Method,
    verdict: Verdict,
    witnesses: usize,
    cr: Option<f64>,
}

fn parse_properties(s: &str) -> Result<Vec<Property>> {
    if s == "all" {
        Ok(Property::ALL.to_vec())
    } else {
        Ok(vec![s.parse::<Property>()?])
    }
}

pub fn audit(args: AuditArgs) -> Result<Outcome> {
    let properties = parse_properties(&args.property)?;
    let inputs = input::load_all(&args.source.files, &args.source.fixtures)?;
    let (ri, ri_digest) = input::ri_table()?;
    let cfg = AuditConfig {
        normalization: args.norm,
        ri,
        ..AuditConfig::default()
    };
    if args.group_weights.is_some() && !properties.contains(&Property::Group) {
        bail!("--group-weights only applies to the group audit");
    }

    // under `all`, a group audit that cannot apply is skipped with a warning
    let group_problem = if inputs.len() < 2 {
        Some("needs at least two matrices")
    } else if inputs.iter().any(|i| i.matrix.n() != inputs[0].matrix.n()) {
        Some("needs matrices of one order")
    } else {
        None
    };
    let run_group = match group_problem {
        Some(why) if properties.contains(&Property::Group) => {
            if properties.len() == 1 {
                bail!("the group audit {why}");
            }
            eprintln!("pcm: skipping the group audit, which {why}");
            false
        }
        _ => true,
    };

    let mut results: Vec<(String, AuditReport)> = Vec::new();
    for &property in &properties {
        if property == Property::Group && !run_group {
            continue;
        }
        // the asymmetry audit compares eigenvectors and has no method
        let methods = if property == Property::Asymmetry {
            &args.methods[..1]
        } else {
            &args.methods[..]
        };
        for &method in methods {
            if property == Property::Group {
                let matrices: Vec<_> = inputs.iter().map(|i| i.matrix.clone()).collect();
                let label = inputs
                    .iter()
                    .map(|i| i.label.as_str())
                    .collect::<Vec<_>>()
                    .join("+");
                let report =
                    audit_group_coherence(&matrices, method, args.group_weights.as_deref(), &cfg)
                        .with_context(|| format!("group audit of {label}"))?;
                results.push((label, report));
                continue;
            }
            for input in &inputs {
                let report = match (property, &args.alpha_grid) {
                    (Property::Scale, Some(grid)) => {
                        audit_scale_invariance(&input.matrix, grid, method, &cfg)
                    }
                    _ => audit_single(&input.matrix, property, method, &cfg),
                }
                .with_context(|| format!("{property} audit of {}", input.label))?;
                results.push((input.label.clone(), report));
            }
        }
    }

    let mut jsonl = String::new();
    let mut summary = csv::Writer::from_writer(Vec::new());
    for (label, report) in &results {
        jsonl.push_str(&serde_json::to_string(&AuditRecord {
            input: label,
            report,
        })?);
        jsonl.push('\n');
        summary.serialize(AuditSummaryRow {
            schema_version: SCHEMA_VERSION,
            input: label,
            property: report.property,
            method: report.method,
            verdict: report.verdict,
            witnesses: report.witnesses.len(),
            cr: report.cr,
        })?;
    }
    let summary = String::from_utf8(summary.into_inner()?)?;
    emit(&jsonl)?;

    if let Some(dir) = &args.out {
        create_dir(dir)?;
        let digests = inputs
            .iter()
            .map(|i| i.digest.clone())
            .chain(ri_digest)
            .collect();
        let mut manifest = RunManifest::new(digests, vec![]);
        write_file(dir, "audit.jsonl", &jsonl, &mut manifest)?;
        write_file(dir, "audit_summary.csv", &summary, &mut manifest)?;
        manifest.write(&dir.join(MANIFEST))?;
    }

    let verdicts: Vec<Verdict> = results.iter().map(|(_, r)| r.verdict).collect();
    Ok(if verdicts.contains(&Verdict::Violated) {
        Outcome::Violation
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Outcome::Inconclusive
    } else {
        Outcome::Done
    })
}

pub fn simulate(args: SimulateArgs) -> Result<Outcome> {
    let bytes =
        std::fs::read(&args.spec).with_context(|| format!("reading {}", args.spec.display()))?;
    let mut spec: ExperimentSpec = serde_json::from_slice(&bytes)
        .with_context(|| format!("parsing experiment spec {}", args.spec.display()))?;
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(trials) = args.trials {
        spec.trials = trials;
    }
    spec.validate()?;
    let (ri, ri_digest) = input::ri_table()?;
    let output = run_experiment(&spec, &ri)?;

    create_dir(&args.out)?;
    let spec_digest =
        crate::manifest::InputDigest::of_bytes(args.spec.display().to_string(), &bytes);
    let mut manifest = RunManifest::new(
        std::iter::once(spec_digest).chain(ri_digest).collect(),
        vec![spec.seed],
    );
    write_file(
        &args.out,
        "trials.csv",
        &output.records_csv()?,
        &mut manifest,
    )?;
    write_file(
        &args.out,
        "summary.csv",
        &output.summary_csv()?,
        &mut manifest,
    )?;
    manifest.write(&args.out.join(MANIFEST))?;
    emit(&format!(
        "{} trials of {} (n = {}) written to {}\n",
        spec.trials,
        spec.scheme.name(),
        spec.n,
        args.out.display()
    ))?;
    Ok(Outcome::Done)
}

pub fn ri(args: RiArgs) -> Result<Outcome> {
    if args.trials < 1000 {
        eprintln!(
            "warning: {} trials give a standard error far above the pinned table's; use at least 1000",
            args.trials
        );
    }
    let path = args
        .out
        .or_else(|| std::env::var_os(RI_CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("ri_cache.json"));
    let (lo, hi) = args.orders;
    let mut estimates = Vec::new();
    let mut table = format!("{:>4} {:>12} {:>12}\n", "n", "ri", "stderr");
    for n in lo..=hi {
        let e = estimate_random_index(n, args.trials, args.seed)?;
        writeln!(table, "{:>4} {:>12.6} {:>12.2e}", e.n, e.ri, e.stderr)?;
        estimates.push(e);
    }
    emit(&table)?;
    let mut text = serde_json::to_string_pretty(&estimates)?;
    text.push('\n');
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        create_dir(parent)?;
    }
    std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;

    let mut manifest = RunManifest::new(vec![], vec![args.seed]);
    manifest.outputs.push(
        path.file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
    );
    let mut manifest_path = path.clone().into_os_string();
    manifest_path.push(".manifest.json");
    manifest.write(Path::new(&manifest_path))?;
    Ok(Outcome::Done)
}
