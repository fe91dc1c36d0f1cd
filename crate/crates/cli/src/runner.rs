//! Executes a scenario: computes every output in parallel, then writes the
//! files and a manifest in a fixed order.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use toml::{Table, Value};

use eitfwm_core::pulse::{dispersion_curves, measure_delay_gain, propagate_pulse, DelayGain, PulseSpec, TimeGrid};
use eitfwm_core::spectra::{sweep_cw, SpectrumSweep};
use eitfwm_core::{to_hz, DerivedParams, EitError};

use crate::error::{CliError, Result};
use crate::scenario::{ModeBlock, Scenario};
use crate::validate::{validate_cases, ValidationCase};

pub const MANIFEST_NAME: &str = "manifest.toml";

/// One produced file, still in memory.
#[derive(Debug, Clone)]
pub struct Output {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseCase {
    pub file: String,
    pub seed_fraction: f64,
    pub carrier_detuning: f64,
    /// None when the window warning blocked the measurement.
    pub measured: Option<DelayGain>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub output_dir: PathBuf,
    /// (file name, sha256 hex), in write order.
    pub files: Vec<(String, String)>,
    pub pulse_cases: Vec<PulseCase>,
    pub warnings: Vec<String>,
    /// Largest oracle error, for validate-mode scenarios.
    pub validation: Option<(f64, f64)>,
}

enum Job {
    Cw {
        f: f64,
    },
    Pulse {
        j: usize,
        spec: PulseSpec,
        with_trace: bool,
    },
    Validate {
        cases: Vec<ValidationCase>,
    },
}

struct JobResult {
    outputs: Vec<Output>,
    pulse: Option<PulseCase>,
    warnings: Vec<String>,
    validation: Option<(f64, f64)>,
}

fn csv(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to memory cannot fail");
    buf
}

fn compute(err: EitError, context: impl Into<String>) -> CliError {
    CliError::Compute {
        context: context.into(),
        source: err,
    }
}

fn jobs(s: &Scenario) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    match &s.block {
        ModeBlock::Sweep(_) => out.extend(s.seed_fractions.iter().map(|&f| Job::Cw { f })),
        ModeBlock::Pulse(_) => {
            let with_trace = s.mode == crate::scenario::Mode::Pulse;
            for &f in &s.seed_fractions {
                let specs = s.pulse_specs(f).map_err(|e| compute(e, "pulse detunings"))?;
                out.extend(
                    specs
                        .into_iter()
                        .enumerate()
                        .map(|(j, spec)| Job::Pulse { j, spec, with_trace }),
                );
            }
        }
        ModeBlock::Validate(_) => {
            let cases = s
                .seed_fractions
                .iter()
                .map(|&f| ValidationCase {
                    medium: s.medium,
                    rabi: s.rabi,
                    seed_fraction: f,
                })
                .collect();
            out.push(Job::Validate { cases });
        }
    }
    Ok(out)
}

fn run_job(s: &Scenario, job: &Job) -> Result<JobResult> {
    let mut r = JobResult {
        outputs: Vec::new(),
        pulse: None,
        warnings: Vec::new(),
        validation: None,
    };
    match (job, &s.block) {
        (Job::Cw { f }, ModeBlock::Sweep(w)) => {
            let ctx = format!("cw sweep f = {f}");
            let model = s.model(*f).map_err(|e| compute(e, &ctx))?;
            let spec = SpectrumSweep::new(model, w.delta_min, w.delta_max, w.n_points).map_err(|e| compute(e, &ctx))?;
            let result = sweep_cw(&spec).map_err(|e| compute(e, &ctx))?;
            r.outputs.push(Output {
                name: format!("cw_f{f:.4}.csv"),
                bytes: csv(|b| result.write_csv(b)),
            });
        }
        (Job::Pulse { j, spec, with_trace }, ModeBlock::Pulse(p)) => {
            let f = spec.seed_fraction;
            let ctx = format!("pulse case {j}, f = {f}");
            let model = s.model(f).map_err(|e| compute(e, &ctx))?;
            let grid: TimeGrid = p.grid;
            let curves = dispersion_curves(&model, spec, &grid).map_err(|e| compute(e, &ctx))?;
            let mut case = PulseCase {
                file: format!("pulse_d{j}_f{f:.4}.csv"),
                seed_fraction: f,
                carrier_detuning: spec.carrier_detuning,
                measured: None,
            };
            if *with_trace {
                let trace = propagate_pulse(&model, spec, &grid).map_err(|e| compute(e, &ctx))?;
                for w in &trace.warnings {
                    r.warnings.push(format!(
                        "{}: {:.2}% of the {} energy lies near the window edge",
                        case.file,
                        100.0 * w.edge_fraction,
                        w.channel
                    ));
                }
                case.measured = measure_delay_gain(&trace).ok();
                r.outputs.push(Output {
                    name: case.file.clone(),
                    bytes: csv(|b| trace.write_csv(b)),
                });
            }
            r.outputs.push(Output {
                name: format!("dispersion_d{j}_f{f:.4}.csv"),
                bytes: csv(|b| curves.write_csv(b)),
            });
            r.pulse = Some(case);
        }
        (Job::Validate { cases }, ModeBlock::Validate(v)) => {
            let report = validate_cases(cases, v)?;
            r.validation = Some((report.max_error, report.tol));
            r.outputs.push(Output {
                name: "validation.csv".into(),
                bytes: csv(|b| report.write_csv(b)),
            });
        }
        _ => unreachable!("jobs are built from the scenario's own block"),
    }
    Ok(r)
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|source| CliError::Write { path, source })
}

pub fn derived_table(d: &DerivedParams) -> Table {
    let mut t = Table::new();
    for (key, rad) in [("delta_s", d.delta_s), ("delta_r", d.delta_r)] {
        t.insert(format!("{key}_rad_s"), rad.into());
        t.insert(format!("{key}_hz"), to_hz(rad).into());
    }
    t.insert("gamma_0_per_s".into(), d.gamma_0.into());
    t.insert("eit_delay_s".into(), d.eit_delay.into());
    t.insert("vg_over_l_per_s".into(), d.vg_over_l.into());
    t.insert(
        "pi_vg_over_l_hz".into(),
        to_hz(std::f64::consts::PI * d.vg_over_l).into(),
    );
    t
}

fn manifest(s: &Scenario, report: &RunReport) -> Result<String> {
    let derived = s.derived().map_err(|e| compute(e, "derived parameters"))?;
    let mut doc = s.to_table().map_err(|e| compute(e, "manifest"))?;
    doc.insert("derived".into(), derived_table(&derived).into());
    let mut run = Table::new();
    run.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
    run.insert("timestamp".into(), chrono::Utc::now().to_rfc3339().into());
    run.insert(
        "warnings".into(),
        Value::Array(report.warnings.iter().cloned().map(Value::String).collect()),
    );
    doc.insert("run".into(), run.into());
    let files: Table = report
        .files
        .iter()
        .map(|(n, h)| (n.clone(), Value::String(h.clone())))
        .collect();
    doc.insert("files".into(), files.into());
    toml::to_string(&doc).map_err(|e| CliError::config(format!("cannot serialise manifest: {e}")))
}

/// Runs the scenario, writes outputs and the manifest, and prints a summary to `log`.
pub fn run(s: &Scenario, log: &mut dyn Write) -> Result<RunReport> {
    let jobs = jobs(s)?;
    let results = jobs.par_iter().map(|j| run_job(s, j)).collect::<Result<Vec<_>>>()?;

    fs::create_dir_all(&s.output_dir).map_err(|source| CliError::Write {
        path: s.output_dir.clone(),
        source,
    })?;
    let mut report = RunReport {
        output_dir: s.output_dir.clone(),
        files: Vec::new(),
        pulse_cases: Vec::new(),
        warnings: Vec::new(),
        validation: None,
    };
    for r in results {
        for o in r.outputs {
            write_file(&s.output_dir, &o.name, &o.bytes)?;
            report.files.push((o.name, sha256_hex(&o.bytes)));
        }
        report.pulse_cases.extend(r.pulse);
        report.warnings.extend(r.warnings);
        report.validation = report.validation.or(r.validation);
    }
    write_file(&s.output_dir, MANIFEST_NAME, manifest(s, &report)?.as_bytes())?;

    let _ = summarise(&report, log);
    if let Some((max_error, tolerance)) = report.validation {
        if max_error > tolerance {
            return Err(CliError::Validation { max_error, tolerance });
        }
    }
    Ok(report)
}

fn summarise(report: &RunReport, log: &mut dyn Write) -> std::io::Result<()> {
    for c in &report.pulse_cases {
        match &c.measured {
            Some(m) => writeln!(
                log,
                "{}: detuning {:+.3} kHz, delay {:.3} us, gain {:.3}{}",
                c.file,
                to_hz(c.carrier_detuning) / 1e3,
                m.delay * 1e6,
                m.gain,
                if m.multi_peak { " (multi-peaked)" } else { "" }
            )?,
            None => writeln!(log, "{}: not measured, output reaches the window edge", c.file)?,
        }
    }
    for w in &report.warnings {
        writeln!(log, "warning: {w}")?;
    }
    if let Some((max_error, tol)) = report.validation {
        writeln!(log, "max relative error {max_error:.3e} (tolerance {tol:.3e})")?;
    }
    writeln!(
        log,
        "wrote {} files and {} to {}",
        report.files.len(),
        MANIFEST_NAME,
        report.output_dir.display()
    )
}
