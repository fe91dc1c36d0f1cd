//! Scenario files: sectioned TOML with frequencies in Hz (`*_hz`, converted to
//! rad/s on load) or rad/s (`*_rad_s`, taken as is).

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use eitfwm_core::medium::DEFAULT_CG_RATIO;
use eitfwm_core::propagation::MIN_STEPS;
use eitfwm_core::pulse::{PulseSpec, TimeGrid, DEFAULT_CENTER, DEFAULT_SAMPLES, DEFAULT_WINDOW};
use eitfwm_core::spectra::{SpectrumSweep, DEFAULT_SWEEP_HALF_RANGE_HZ, DEFAULT_SWEEP_POINTS};
use eitfwm_core::{derive_params, hz, DerivedParams, DriveParams, MediumParams, Model};
use toml::{Table, Value};

use crate::error::{CliError, Result};

const SECTIONS: [&str; 10] = [
    "scenario", "medium", "drive", "sweep", "pulse", "validate", "info", "derived", "run", "files",
];
/// Sections written into manifests; accepted and ignored on load.
const RECORD_SECTIONS: [&str; 3] = ["derived", "run", "files"];
const MODE_SECTIONS: [&str; 3] = ["sweep", "pulse", "validate"];

pub const DEFAULT_VALIDATE_STEPS: usize = 10_000;
pub const DEFAULT_VALIDATE_TOL: f64 = 1e-6;
pub const DEFAULT_VALIDATE_POINTS: usize = 21;
pub const DEFAULT_VALIDATE_DELTA_SPAN_HZ: f64 = 600e3;
pub const DEFAULT_VALIDATE_OMEGA_SPAN_HZ: f64 = 200e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    CwSweep,
    Pulse,
    Dispersion,
    Validate,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cw_sweep" => Some(Self::CwSweep),
            "pulse" => Some(Self::Pulse),
            "dispersion" => Some(Self::Dispersion),
            "validate" => Some(Self::Validate),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::CwSweep => "cw_sweep",
            Self::Pulse => "pulse",
            Self::Dispersion => "dispersion",
            Self::Validate => "validate",
        }
    }

    fn section(self) -> &'static str {
        match self {
            Self::CwSweep => "sweep",
            Self::Pulse | Self::Dispersion => "pulse",
            Self::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    DeltaS,
    DeltaR,
    AbsDeltaR,
}

/// A carrier detuning, either fixed or a multiple of a derived quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Detuning {
    RadS(f64),
    Scaled { factor: f64, of: Reference },
}

impl Detuning {
    /// Parses `"57e3"` (Hz), `"2*delta_s"`, `"-delta_r"` or `"2*|delta_r|"`.
    pub fn parse(text: &str) -> Option<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Ok(v) = s.parse::<f64>() {
            return v.is_finite().then_some(Self::RadS(hz(v)));
        }
        let (factor, name) = match s.split_once('*') {
            Some((a, b)) => (a.parse::<f64>().ok()?, b),
            None => match s.strip_prefix('-') {
                Some(rest) => (-1.0, rest),
                None => (1.0, s.as_str()),
            },
        };
        let of = match name {
            "delta_s" => Reference::DeltaS,
            "delta_r" => Reference::DeltaR,
            "|delta_r|" => Reference::AbsDeltaR,
            _ => return None,
        };
        factor.is_finite().then_some(Self::Scaled { factor, of })
    }

    pub fn resolve(&self, derived: &DerivedParams) -> f64 {
        match *self {
            Self::RadS(v) => v,
            Self::Scaled { factor, of } => {
                factor
                    * match of {
                        Reference::DeltaS => derived.delta_s,
                        Reference::DeltaR => derived.delta_r,
                        Reference::AbsDeltaR => derived.delta_r.abs(),
                    }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepBlock {
    pub delta_min: f64,
    pub delta_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseBlock {
    pub fwhm: f64,
    pub detunings: Vec<Detuning>,
    pub center: f64,
    pub peak_amplitude: f64,
    pub grid: TimeGrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateBlock {
    pub steps: usize,
    pub tol: f64,
    pub n_delta: usize,
    pub n_omega: usize,
    pub delta_span: f64,
    pub omega_span: f64,
}

impl Default for ValidateBlock {
    fn default() -> Self {
        Self {
            steps: DEFAULT_VALIDATE_STEPS,
            tol: DEFAULT_VALIDATE_TOL,
            n_delta: DEFAULT_VALIDATE_POINTS,
            n_omega: DEFAULT_VALIDATE_POINTS,
            delta_span: hz(DEFAULT_VALIDATE_DELTA_SPAN_HZ),
            omega_span: hz(DEFAULT_VALIDATE_OMEGA_SPAN_HZ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModeBlock {
    Sweep(SweepBlock),
    Pulse(PulseBlock),
    Validate(ValidateBlock),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub mode: Mode,
    pub output_dir: PathBuf,
    pub medium: MediumParams,
    /// Control Rabi frequency Ω, rad/s.
    pub rabi: f64,
    pub seed_fractions: Vec<f64>,
    pub block: ModeBlock,
    /// Free-form metadata copied to the manifest.
    pub info: Table,
}

/// Command-line values that replace file keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed_fraction: Option<f64>,
    pub two_d: Option<f64>,
    pub rabi_hz: Option<f64>,
    pub out: Option<PathBuf>,
}

impl Scenario {
    pub fn derived(&self) -> eitfwm_core::Result<DerivedParams> {
        derive_params(&self.medium, &DriveParams::new(self.rabi, 0.0, 0.0))
    }

    /// Model at δ = 0 for one seed fraction.
    pub fn model(&self, seed_fraction: f64) -> eitfwm_core::Result<Model> {
        Model::new(self.medium, DriveParams::new(self.rabi, 0.0, seed_fraction))
    }

    pub fn pulse_specs(&self, seed_fraction: f64) -> eitfwm_core::Result<Vec<PulseSpec>> {
        let ModeBlock::Pulse(p) = &self.block else {
            return Ok(Vec::new());
        };
        let derived = self.derived()?;
        Ok(p.detunings
            .iter()
            .map(|d| PulseSpec {
                fwhm: p.fwhm,
                carrier_detuning: d.resolve(&derived),
                seed_fraction,
                peak_amplitude: p.peak_amplitude,
                center: p.center,
            })
            .collect())
    }

    /// Fully resolved parameters as a loadable document (rad/s keys).
    pub fn to_table(&self) -> eitfwm_core::Result<Table> {
        let mut doc = Table::new();
        let mut s = Table::new();
        s.insert("name".into(), self.name.clone().into());
        s.insert("mode".into(), self.mode.as_str().into());
        s.insert("output_dir".into(), self.output_dir.display().to_string().into());
        doc.insert("scenario".into(), s.into());

        let m = &self.medium;
        let mut t = Table::new();
        t.insert("two_d".into(), m.two_d.into());
        t.insert("gamma_rad_s".into(), m.gamma.into());
        t.insert("gamma_sg_per_s".into(), m.gamma_sg.into());
        t.insert("delta_hf_rad_s".into(), m.delta_hf.into());
        t.insert("length_m".into(), m.length.into());
        t.insert("cg_ratio".into(), m.cg_ratio.into());
        doc.insert("medium".into(), t.into());

        let mut d = Table::new();
        d.insert("rabi_rad_s".into(), self.rabi.into());
        d.insert("seed_fraction".into(), floats(&self.seed_fractions));
        doc.insert("drive".into(), d.into());

        let mut b = Table::new();
        match &self.block {
            ModeBlock::Sweep(w) => {
                b.insert("delta_min_rad_s".into(), w.delta_min.into());
                b.insert("delta_max_rad_s".into(), w.delta_max.into());
                b.insert("n_points".into(), (w.n_points as i64).into());
            }
            ModeBlock::Pulse(p) => {
                let derived = self.derived()?;
                let resolved: Vec<f64> = p.detunings.iter().map(|d| d.resolve(&derived)).collect();
                b.insert("fwhm_s".into(), p.fwhm.into());
                b.insert("detuning_rad_s".into(), floats(&resolved));
                b.insert("center_s".into(), p.center.into());
                b.insert("peak_amplitude".into(), p.peak_amplitude.into());
                b.insert("n_samples".into(), (p.grid.n_samples as i64).into());
                b.insert("window_s".into(), p.grid.window.into());
            }
            ModeBlock::Validate(v) => {
                b.insert("steps".into(), (v.steps as i64).into());
                b.insert("tol".into(), v.tol.into());
                b.insert("n_delta".into(), (v.n_delta as i64).into());
                b.insert("n_omega".into(), (v.n_omega as i64).into());
                b.insert("delta_span_rad_s".into(), v.delta_span.into());
                b.insert("omega_span_rad_s".into(), v.omega_span.into());
            }
        }
        doc.insert(self.mode.section().into(), b.into());
        if !self.info.is_empty() {
            doc.insert("info".into(), self.info.clone().into());
        }
        Ok(doc)
    }
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| Value::Float(x)).collect())
}

/// Reads one section, remembering which keys were consumed.
struct Section {
    name: &'static str,
    table: Table,
    used: BTreeSet<String>,
    issues: Vec<String>,
}

impl Section {
    fn new(doc: &Table, name: &'static str) -> Self {
        let table = match doc.get(name) {
            Some(Value::Table(t)) => t.clone(),
            _ => Table::new(),
        };
        Self {
            name,
            table,
            used: BTreeSet::new(),
            issues: Vec::new(),
        }
    }

    fn key(&self, key: &str) -> String {
        format!("`{}.{}`", self.name, key)
    }

    fn get(&mut self, key: &str) -> Option<Value> {
        self.used.insert(key.to_string());
        self.table.get(key).cloned()
    }

    fn missing(&mut self, key: &str) {
        let msg = format!("missing key {}", self.key(key));
        self.issues.push(msg);
    }

    fn number(&mut self, key: &str) -> Option<f64> {
        match self.get(key)? {
            Value::Float(v) => Some(v),
            Value::Integer(v) => Some(v as f64),
            _ => {
                let msg = format!("{} must be a number", self.key(key));
                self.issues.push(msg);
                None
            }
        }
    }

    fn required_number(&mut self, key: &str) -> Option<f64> {
        if !self.table.contains_key(key) {
            self.missing(key);
        }
        self.number(key)
    }

    fn count(&mut self, key: &str) -> Option<usize> {
        match self.get(key)? {
            Value::Integer(v) if v >= 0 => Some(v as usize),
            _ => {
                let msg = format!("{} must be a non-negative integer", self.key(key));
                self.issues.push(msg);
                None
            }
        }
    }

    fn string(&mut self, key: &str) -> Option<String> {
        match self.get(key)? {
            Value::String(s) => Some(s),
            _ => {
                let msg = format!("{} must be a string", self.key(key));
                self.issues.push(msg);
                None
            }
        }
    }

    fn required_string(&mut self, key: &str) -> Option<String> {
        if !self.table.contains_key(key) {
            self.missing(key);
        }
        self.string(key)
    }

    /// `<base>_hz` (×2π) or `<base>_rad_s`.
    fn frequency(&mut self, base: &str, required: bool) -> Option<f64> {
        let (k_hz, k_rad) = (format!("{base}_hz"), format!("{base}_rad_s"));
        let (has_hz, has_rad) = (self.table.contains_key(&k_hz), self.table.contains_key(&k_rad));
        match (has_hz, has_rad) {
            (true, true) => {
                let msg = format!("give only one of {} and {}", self.key(&k_hz), self.key(&k_rad));
                self.issues.push(msg);
                self.used.insert(k_hz);
                self.used.insert(k_rad);
                None
            }
            (true, false) => self.number(&k_hz).map(|v| v * TAU),
            (false, true) => self.number(&k_rad),
            (false, false) => {
                if required {
                    let msg = format!("missing key {} (or {})", self.key(&k_hz), self.key(&k_rad));
                    self.issues.push(msg);
                }
                None
            }
        }
    }

    /// A number or an array of numbers.
    fn numbers(&mut self, key: &str) -> Option<Vec<f64>> {
        let bad = format!("{} must be a number or an array of numbers", self.key(key));
        let out = match self.get(key)? {
            Value::Float(v) => Some(vec![v]),
            Value::Integer(v) => Some(vec![v as f64]),
            Value::Array(items) => items
                .iter()
                .map(|v| match v {
                    Value::Float(x) => Some(*x),
                    Value::Integer(x) => Some(*x as f64),
                    _ => None,
                })
                .collect(),
            _ => None,
        };
        if out.is_none() {
            self.issues.push(bad);
        }
        out
    }

    fn finish(self, issues: &mut Vec<String>) {
        issues.extend(self.issues);
        for key in self.table.keys() {
            if !self.used.contains(key) {
                issues.push(format!("unknown key `{}.{}`", self.name, key));
            }
        }
    }
}

fn section_mut<'a>(doc: &'a mut Table, name: &str) -> &'a mut Table {
    let entry = doc
        .entry(name.to_string())
        .or_insert_with(|| Value::Table(Table::new()));
    if !entry.is_table() {
        *entry = Value::Table(Table::new());
    }
    entry.as_table_mut().expect("table")
}

fn apply_overrides(doc: &mut Table, o: &Overrides) {
    if let Some(f) = o.seed_fraction {
        section_mut(doc, "drive").insert("seed_fraction".into(), f.into());
    }
    if let Some(r) = o.rabi_hz {
        let d = section_mut(doc, "drive");
        d.remove("rabi_rad_s");
        d.insert("rabi_hz".into(), r.into());
    }
    if let Some(x) = o.two_d {
        section_mut(doc, "medium").insert("two_d".into(), x.into());
    }
    if let Some(p) = &o.out {
        section_mut(doc, "scenario").insert("output_dir".into(), p.display().to_string().into());
    }
}

pub fn load_scenario(path: &Path, overrides: &Overrides) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text, overrides)
}

pub fn parse_scenario(text: &str, overrides: &Overrides) -> Result<Scenario> {
    let mut doc: Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::config(format!("not a valid scenario file: {}", e.message())))?;
    apply_overrides(&mut doc, overrides);
    let mut issues = Vec::new();

    for (key, value) in &doc {
        if !SECTIONS.contains(&key.as_str()) {
            issues.push(format!("unknown section [{key}]"));
        } else if !value.is_table() {
            issues.push(format!("[{key}] must be a section"));
        }
    }

    let mut s = Section::new(&doc, "scenario");
    let name = s.required_string("name");
    let mode_text = s.required_string("mode");
    let output_dir = s.string("output_dir");
    let mode = mode_text.as_deref().and_then(|m| {
        let mode = Mode::parse(m);
        if mode.is_none() {
            s.issues.push(format!(
                "`scenario.mode` must be one of cw_sweep, pulse, dispersion, validate (got {m:?})"
            ));
        }
        mode
    });
    s.finish(&mut issues);

    let mut m = Section::new(&doc, "medium");
    let two_d = m.required_number("two_d");
    let gamma = m.frequency("gamma", true);
    let gamma_sg = m.required_number("gamma_sg_per_s");
    let delta_hf = m.frequency("delta_hf", true);
    let length = m.required_number("length_m");
    let cg_ratio = m.number("cg_ratio").unwrap_or(DEFAULT_CG_RATIO);
    m.finish(&mut issues);

    let mut d = Section::new(&doc, "drive");
    let rabi = d.frequency("rabi", true);
    if !d.table.contains_key("seed_fraction") {
        d.missing("seed_fraction");
    }
    let seed_fractions = d.numbers("seed_fraction");
    d.finish(&mut issues);

    let mut i = Section::new(&doc, "info");
    i.used.extend(i.table.keys().cloned());
    let info = i.table.clone();
    i.finish(&mut issues);

    for name in RECORD_SECTIONS {
        let mut r = Section::new(&doc, name);
        r.used.extend(r.table.keys().cloned());
        r.finish(&mut issues);
    }

    let block = mode.and_then(|mode| {
        for other in MODE_SECTIONS {
            if other != mode.section() && doc.contains_key(other) {
                issues.push(format!("section [{other}] does not apply to mode {}", mode.as_str()));
            }
        }
        let mut b = Section::new(&doc, mode.section());
        let block = match mode {
            Mode::CwSweep => parse_sweep(&mut b),
            Mode::Pulse | Mode::Dispersion => parse_pulse(&mut b),
            Mode::Validate => parse_validate(&mut b),
        };
        b.finish(&mut issues);
        block
    });

    if !issues.is_empty() {
        return Err(CliError::Config(issues));
    }
    let (Some(name), Some(mode), Some(two_d), Some(gamma), Some(gamma_sg), Some(delta_hf), Some(length)) =
        (name, mode, two_d, gamma, gamma_sg, delta_hf, length)
    else {
        return Err(CliError::config("incomplete scenario"));
    };
    let (Some(rabi), Some(seed_fractions), Some(block)) = (rabi, seed_fractions, block) else {
        return Err(CliError::config("incomplete scenario"));
    };

    let output_dir = output_dir
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new("out").join(&name));
    let scenario = Scenario {
        name,
        mode,
        output_dir,
        medium: MediumParams {
            two_d,
            gamma,
            gamma_sg,
            delta_hf,
            length,
            cg_ratio,
        },
        rabi,
        seed_fractions,
        block,
        info,
    };
    check(&scenario)?;
    Ok(scenario)
}

fn parse_sweep(b: &mut Section) -> Option<ModeBlock> {
    let delta_min = b
        .frequency("delta_min", false)
        .unwrap_or(-hz(DEFAULT_SWEEP_HALF_RANGE_HZ));
    let delta_max = b
        .frequency("delta_max", false)
        .unwrap_or(hz(DEFAULT_SWEEP_HALF_RANGE_HZ));
    let n_points = b.count("n_points").unwrap_or(DEFAULT_SWEEP_POINTS);
    Some(ModeBlock::Sweep(SweepBlock {
        delta_min,
        delta_max,
        n_points,
    }))
}

fn parse_detunings(b: &mut Section) -> Option<Vec<Detuning>> {
    let has_plain = b.table.contains_key("detuning");
    let has_rad = b.table.contains_key("detuning_rad_s");
    if has_plain && has_rad {
        b.used.insert("detuning".into());
        b.used.insert("detuning_rad_s".into());
        b.issues
            .push("give only one of `pulse.detuning` and `pulse.detuning_rad_s`".into());
        return None;
    }
    if has_rad {
        return b
            .numbers("detuning_rad_s")
            .map(|v| v.into_iter().map(Detuning::RadS).collect());
    }
    let value = match b.get("detuning") {
        Some(v) => v,
        None => {
            b.issues
                .push("missing key `pulse.detuning` (or `pulse.detuning_rad_s`)".into());
            return None;
        }
    };
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    let mut out = Vec::new();
    for item in items {
        let parsed = match &item {
            Value::Float(v) => Some(Detuning::RadS(hz(*v))),
            Value::Integer(v) => Some(Detuning::RadS(hz(*v as f64))),
            Value::String(s) => Detuning::parse(s),
            _ => None,
        };
        match parsed {
            Some(d) => out.push(d),
            None => {
                b.issues.push(format!(
                    "`pulse.detuning` entry {item} is neither a number in Hz nor an expression like \"2*delta_s\" or \"2*|delta_r|\""
                ));
                return None;
            }
        }
    }
    Some(out)
}

fn parse_pulse(b: &mut Section) -> Option<ModeBlock> {
    let fwhm = b.required_number("fwhm_s");
    let detunings = parse_detunings(b);
    let center = b.number("center_s").unwrap_or(DEFAULT_CENTER);
    let peak_amplitude = b.number("peak_amplitude").unwrap_or(1.0);
    let n_samples = b.count("n_samples").unwrap_or(DEFAULT_SAMPLES);
    let window = b.number("window_s").unwrap_or(DEFAULT_WINDOW);
    Some(ModeBlock::Pulse(PulseBlock {
        fwhm: fwhm?,
        detunings: detunings?,
        center,
        peak_amplitude,
        grid: TimeGrid { n_samples, window },
    }))
}

fn parse_validate(b: &mut Section) -> Option<ModeBlock> {
    let def = ValidateBlock::default();
    Some(ModeBlock::Validate(ValidateBlock {
        steps: b.count("steps").unwrap_or(def.steps),
        tol: b.number("tol").unwrap_or(def.tol),
        n_delta: b.count("n_delta").unwrap_or(def.n_delta),
        n_omega: b.count("n_omega").unwrap_or(def.n_omega),
        delta_span: b.frequency("delta_span", false).unwrap_or(def.delta_span),
        omega_span: b.frequency("omega_span", false).unwrap_or(def.omega_span),
    }))
}

/// Module-level invariants, all reported together.
fn note(issues: &mut Vec<String>, r: eitfwm_core::Result<()>) {
    if let Err(e) = r {
        issues.push(e.to_string());
    }
}

fn check(s: &Scenario) -> Result<()> {
    let mut issues = Vec::new();
    if s.name.trim().is_empty() {
        note(
            &mut issues,
            Err(eitfwm_core::EitError::Domain(
                "`scenario.name` must not be empty".into(),
            )),
        );
    }
    note(&mut issues, s.medium.validate());
    if s.seed_fractions.is_empty() {
        note(
            &mut issues,
            Err(eitfwm_core::EitError::Domain(
                "`drive.seed_fraction` needs at least one value".into(),
            )),
        );
    }
    for &f in &s.seed_fractions {
        note(&mut issues, DriveParams::new(s.rabi, 0.0, f).validate());
    }
    if !issues.is_empty() {
        return Err(CliError::Config(issues));
    }
    let model = s
        .model(s.seed_fractions[0])
        .map_err(|e| CliError::config(e.to_string()))?;
    match &s.block {
        ModeBlock::Sweep(w) => {
            note(
                &mut issues,
                SpectrumSweep::new(model, w.delta_min, w.delta_max, w.n_points).map(|_| ()),
            );
        }
        ModeBlock::Pulse(p) => {
            if p.detunings.is_empty() {
                note(
                    &mut issues,
                    Err(eitfwm_core::EitError::Domain(
                        "`pulse.detuning` needs at least one value".into(),
                    )),
                );
            }
            match TimeGrid::new(p.grid.n_samples, p.grid.window) {
                Ok(grid) => {
                    note(&mut issues, grid.check_fits(p.fwhm, model.derived.eit_delay));
                    if !(p.center > 0.0 && p.center < grid.window) {
                        note(
                            &mut issues,
                            Err(eitfwm_core::EitError::InvalidParameter {
                                name: "center",
                                value: p.center,
                                reason: "must lie inside the time window",
                            }),
                        );
                    }
                }
                Err(e) => note(&mut issues, Err(e)),
            }
            for spec in s.pulse_specs(s.seed_fractions[0]).unwrap_or_default() {
                note(&mut issues, spec.validate());
            }
        }
        ModeBlock::Validate(v) => {
            if v.steps < MIN_STEPS {
                issues.push(format!("`validate.steps` must be at least {MIN_STEPS}"));
            }
            if !(v.tol > 0.0) {
                issues.push("`validate.tol` must be positive".into());
            }
            if v.n_delta < 1 || v.n_omega < 1 {
                issues.push("`validate.n_delta` and `validate.n_omega` must be at least 1".into());
            }
            if !(v.delta_span >= 0.0 && v.omega_span >= 0.0) {
                issues.push("validation spans must be non-negative".into());
            }
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(CliError::Config(issues))
    }
}
