//! Continuous-wave transmission spectra (ω = 0) versus two-photon detuning,
//! and the EIT/FWM interference pattern they show.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{EitError, Result};
use crate::medium::{hz, to_hz, Model};
use crate::propagation::ApproxValidity;

pub const DEFAULT_SWEEP_HALF_RANGE_HZ: f64 = 600e3;
pub const DEFAULT_SWEEP_POINTS: usize = 2401;

pub const SPECTRUM_CSV_HEADER: &str =
    "delta_hz,delta_tilde_hz,signal_amp,stokes_amp,signal_phase_rad,stokes_phase_rad,approx_valid";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSweep {
    /// Medium, drive and seed fraction; `drive.delta` is replaced per point.
    pub model: Model,
    pub delta_min: f64,
    pub delta_max: f64,
    pub n_points: usize,
}

impl SpectrumSweep {
    pub fn new(model: Model, delta_min: f64, delta_max: f64, n_points: usize) -> Result<Self> {
        let sweep = Self {
            model,
            delta_min,
            delta_max,
            n_points,
        };
        sweep.validate()?;
        Ok(sweep)
    }

    /// ±2π·600 kHz with 2401 points.
    pub fn with_default_range(model: Model) -> Self {
        Self {
            model,
            delta_min: -hz(DEFAULT_SWEEP_HALF_RANGE_HZ),
            delta_max: hz(DEFAULT_SWEEP_HALF_RANGE_HZ),
            n_points: DEFAULT_SWEEP_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_min < self.delta_max) || !self.delta_max.is_finite() || !self.delta_min.is_finite() {
            return Err(EitError::InvalidParameter {
                name: "delta_min",
                value: self.delta_min,
                reason: "must be finite and below delta_max",
            });
        }
        if self.n_points < 2 {
            return Err(EitError::InvalidParameter {
                name: "n_points",
                value: self.n_points as f64,
                reason: "must be at least 2",
            });
        }
        Ok(())
    }

    pub fn delta_at(&self, idx: usize) -> f64 {
        if idx + 1 == self.n_points {
            return self.delta_max;
        }
        let step = (self.delta_max - self.delta_min) / (self.n_points - 1) as f64;
        self.delta_min + idx as f64 * step
    }
}

/// One row of a CW spectrum, amplitudes normalized to E₀ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub delta: f64,
    pub delta_tilde: f64,
    pub signal_amp: f64,
    pub stokes_amp: f64,
    pub signal_phase: f64,
    pub stokes_phase: f64,
    pub approx_valid: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub seed_fraction: f64,
    pub points: Vec<SpectrumPoint>,
}

impl SpectrumResult {
    pub fn deltas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.delta).collect()
    }

    pub fn signal_amps(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.signal_amp).collect()
    }

    pub fn stokes_amps(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.stokes_amp).collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{SPECTRUM_CSV_HEADER}")?;
        for p in &self.points {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                to_hz(p.delta),
                to_hz(p.delta_tilde),
                p.signal_amp,
                p.stokes_amp,
                p.signal_phase,
                p.stokes_phase,
                u8::from(p.approx_valid)
            )?;
        }
        Ok(())
    }
}

fn spectrum_point(model: &Model, delta: f64) -> Result<SpectrumPoint> {
    let at = model.at_delta(delta);
    let out = at.output_fields(0.0).map_err(|e| EitError::AtDetuning {
        delta,
        source: Box::new(e),
    })?;
    let delta_tilde = at.delta_tilde();
    Ok(SpectrumPoint {
        delta,
        delta_tilde,
        signal_amp: out.signal.norm(),
        stokes_amp: out.stokes_conj.norm(),
        signal_phase: out.signal.arg(),
        stokes_phase: out.stokes_conj.arg(),
        approx_valid: ApproxValidity::at(&at, delta_tilde).is_valid(),
    })
}

/// Evaluates the closed-form outputs at ω = 0 for every detuning of the sweep.
/// Points are computed in parallel and returned in detuning order.
pub fn sweep_cw(spec: &SpectrumSweep) -> Result<SpectrumResult> {
    spec.validate()?;
    let points = (0..spec.n_points)
        .into_par_iter()
        .map(|i| spectrum_point(&spec.model, spec.delta_at(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumResult {
        seed_fraction: spec.model.drive.seed_fraction,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Dip,
    Peak,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceExtremum {
    pub n: i32,
    /// δ̃ = nπv_g/L.
    pub delta_tilde: f64,
    pub kind: ExtremumKind,
}

/// Interference orders δ̃ = nπv_g/L: for δ̃ > 0 even n are dips and odd n
/// peaks, for δ̃ < 0 the reverse. `n = 0` is skipped.
pub fn interference_extrema(model: &Model, n_range: RangeInclusive<i32>) -> Vec<InterferenceExtremum> {
    let unit = std::f64::consts::PI * model.derived.vg_over_l;
    n_range
        .filter(|&n| n != 0)
        .map(|n| {
            let even = n % 2 == 0;
            let kind = if even == (n > 0) {
                ExtremumKind::Dip
            } else {
                ExtremumKind::Peak
            };
            InterferenceExtremum {
                n,
                delta_tilde: n as f64 * unit,
                kind,
            }
        })
        .collect()
}

/// Interior local minima (strict on both sides) of a sampled curve.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] < values[i - 1] && values[i] < values[i + 1])
        .collect()
}

/// Interior local maxima (strict on both sides) of a sampled curve.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] > values[i + 1])
        .collect()
}

fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Detunings δ of the local minima of |E(L)| at ω = 0 over the sweep range,
/// located on the sweep grid and refined by golden-section search.
pub fn signal_minima(spec: &SpectrumSweep) -> Result<Vec<f64>> {
    let result = sweep_cw(spec)?;
    let amps = result.signal_amps();
    let step = (spec.delta_max - spec.delta_min) / (spec.n_points - 1) as f64;
    let amp = |delta: f64| {
        spec.model
            .at_delta(delta)
            .signal_transfer(0.0)
            .map(|t| t.norm())
            .unwrap_or(f64::INFINITY)
    };
    Ok(local_minima(&amps)
        .into_iter()
        .map(|i| {
            let centre = result.points[i].delta;
            golden_section_min(amp, centre - step, centre + step, step * 1e-6)
        })
        .collect())
}

/// Fraction of the rising flank's largest slope below which a local slope
/// minimum counts as a knee.
pub const KNEE_SLOPE_FRACTION: f64 = 0.1;

/// Looks for a "knee" in the signal spectrum at negative detuning: a local
/// minimum of d|E|/dδ on the rising flank below the global maximum whose slope
/// falls under [`KNEE_SLOPE_FRACTION`] of the flank's steepest slope.
///
/// Returns the knee detuning δ if present.
pub fn find_knee(result: &SpectrumResult) -> Option<f64> {
    let amps = result.signal_amps();
    let deltas = result.deltas();
    let top = amps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)?;
    let start = local_minima(&amps[..=top]).last().copied().unwrap_or(0);
    let end = (start..=top).take_while(|&i| deltas[i] < 0.0).last()?;
    if end <= start + 2 {
        return None;
    }
    let slopes: Vec<f64> = (start..top)
        .map(|i| (amps[i + 1] - amps[i]) / (deltas[i + 1] - deltas[i]))
        .collect();
    let steepest = slopes.iter().cloned().fold(0.0, f64::max);
    let flank = &slopes[..(end - start).min(slopes.len())];
    local_minima(flank)
        .into_iter()
        .filter(|&j| flank[j] < KNEE_SLOPE_FRACTION * steepest)
        .min_by(|&a, &b| flank[a].total_cmp(&flank[b]))
        .map(|j| 0.5 * (deltas[start + j] + deltas[start + j + 1]))
}

/// Unit-amplitude CW output of the approximate closed form, for plotting
/// against a sweep.
pub fn approx_signal_amp(model: &Model, delta: f64) -> Result<f64> {
    let at = model.at_delta(delta);
    Ok(at
        .propagate_approx(Complex64::new(1.0, 0.0), at.delta_tilde())?
        .fields
        .signal
        .norm())
}
