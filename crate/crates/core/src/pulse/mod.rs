//! Gaussian signal/Stokes pulse pairs propagated in the Fourier domain.
//!
//! Spectra use `E(ω) = Σ E(t) e^{+iωt}` and `E(t) = (1/N) Σ E(ω) e^{−iωt}`,
//! so a transfer phase that grows with ω delays the pulse.

mod dispersion;
mod measure;

pub use dispersion::{dispersion_curves, sigma_delay, DispersionCurves, SigmaDelay, TRANSFER_FLOOR};
pub use measure::{measure_delay_gain, DelayGain, MULTI_PEAK_FRACTION};

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{EitError, Result};
use crate::medium::Model;
use crate::propagation::FieldTransfer;

pub const DEFAULT_SAMPLES: usize = 4096;
pub const DEFAULT_WINDOW: f64 = 160e-6;
pub const DEFAULT_CENTER: f64 = 40e-6;
pub const MIN_SAMPLES: usize = 256;

/// Share of a trace's energy allowed within [`EDGE_BAND`] of either edge.
pub const EDGE_ENERGY_LIMIT: f64 = 1e-3;
/// Width of each edge band as a fraction of the window.
pub const EDGE_BAND: f64 = 0.05;

pub const PULSE_CSV_HEADER: &str =
    "t_s,signal_in_re,signal_in_im,signal_out_re,signal_out_im,stokes_out_re,stokes_out_im";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    /// Intensity FWHM in seconds.
    pub fwhm: f64,
    /// Two-photon detuning δ of the carrier, rad/s.
    pub carrier_detuning: f64,
    pub seed_fraction: f64,
    pub peak_amplitude: f64,
    /// Time of the input peak within the window.
    pub center: f64,
}

impl PulseSpec {
    pub fn new(fwhm: f64, carrier_detuning: f64, seed_fraction: f64) -> Self {
        Self {
            fwhm,
            carrier_detuning,
            seed_fraction,
            peak_amplitude: 1.0,
            center: DEFAULT_CENTER,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, value, reason| Err(EitError::InvalidParameter { name, value, reason });
        if !(self.fwhm > 0.0) || !self.fwhm.is_finite() {
            return bad("fwhm", self.fwhm, "must be positive");
        }
        if !self.carrier_detuning.is_finite() {
            return bad("carrier_detuning", self.carrier_detuning, "must be finite");
        }
        if !(self.seed_fraction >= 0.0) || !self.seed_fraction.is_finite() {
            return bad("seed_fraction", self.seed_fraction, "must be non-negative");
        }
        if !self.peak_amplitude.is_finite() {
            return bad("peak_amplitude", self.peak_amplitude, "must be finite");
        }
        if !self.center.is_finite() {
            return bad("center", self.center, "must be finite");
        }
        Ok(())
    }

    /// Signal envelope amplitude at time `t`.
    pub fn envelope(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.fwhm;
        self.peak_amplitude * (-2.0 * std::f64::consts::LN_2 * x * x).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub n_samples: usize,
    pub window: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            n_samples: DEFAULT_SAMPLES,
            window: DEFAULT_WINDOW,
        }
    }
}

impl TimeGrid {
    pub fn new(n_samples: usize, window: f64) -> Result<Self> {
        if n_samples < MIN_SAMPLES || !n_samples.is_power_of_two() {
            return Err(EitError::InvalidParameter {
                name: "n_samples",
                value: n_samples as f64,
                reason: "must be a power of two and at least 256",
            });
        }
        if !(window > 0.0) || !window.is_finite() {
            return Err(EitError::InvalidParameter {
                name: "window",
                value: window,
                reason: "must be positive",
            });
        }
        Ok(Self { n_samples, window })
    }

    pub fn dt(&self) -> f64 {
        self.window / self.n_samples as f64
    }

    /// Frequency resolution dω = 2π/window.
    pub fn d_omega(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.window
    }

    pub fn times(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..self.n_samples).map(|n| n as f64 * dt).collect()
    }

    /// Angular frequency of FFT bin `k` in storage order.
    pub fn omega_of_bin(&self, k: usize) -> f64 {
        let n = self.n_samples;
        let signed = if k < n / 2 { k as f64 } else { k as f64 - n as f64 };
        signed * self.d_omega()
    }

    /// Requires `window ≥ 8·fwhm + 4·eit_delay`.
    pub fn check_fits(&self, fwhm: f64, eit_delay: f64) -> Result<()> {
        let needed = 8.0 * fwhm + 4.0 * eit_delay;
        if self.window < needed {
            return Err(EitError::WindowTooSmall(format!(
                "window {:.3e} s is shorter than 8·fwhm + 4·eit_delay = {:.3e} s",
                self.window, needed
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowWarning {
    pub channel: &'static str,
    /// Share of that channel's energy found in the edge bands.
    pub edge_fraction: f64,
}

/// Sampled envelopes. `stokes_*` hold the conjugate Stokes envelope E′*(t).
#[derive(Debug, Clone, PartialEq)]
pub struct PulseTrace {
    pub times: Vec<f64>,
    pub signal_in: Vec<Complex64>,
    pub stokes_in: Vec<Complex64>,
    pub signal_out: Vec<Complex64>,
    pub stokes_out: Vec<Complex64>,
    pub warnings: Vec<WindowWarning>,
}

impl PulseTrace {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{PULSE_CSV_HEADER}")?;
        for n in 0..self.times.len() {
            let (a, b, c) = (self.signal_in[n], self.signal_out[n], self.stokes_out[n]);
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                self.times[n], a.re, a.im, b.re, b.im, c.re, c.im
            )?;
        }
        Ok(())
    }
}

/// Σ|x|² over the samples.
pub fn energy(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum()
}

fn edge_fraction(x: &[Complex64]) -> f64 {
    let total = energy(x);
    if total == 0.0 {
        return 0.0;
    }
    let band = ((x.len() as f64 * EDGE_BAND).ceil() as usize).max(1);
    let edges = energy(&x[..band]) + energy(&x[x.len() - band..]);
    edges / total
}

/// `Σ x_n e^{+iω_k t_n}` in FFT storage order.
pub(crate) fn analyse(x: &[Complex64]) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

/// `(1/N) Σ X_k e^{−iω_k t_n}`.
pub(crate) fn synthesise(spectrum: &[Complex64]) -> Vec<Complex64> {
    let mut buf = spectrum.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

fn pulse_model(model: &Model, pulse: &PulseSpec) -> Result<Model> {
    model
        .at_delta(pulse.carrier_detuning)
        .with_seed_fraction(pulse.seed_fraction)
}

/// Full transfer matrix at `z = L` for every bin, in storage order.
pub(crate) fn bin_transfers(model: &Model, grid: &TimeGrid) -> Result<Vec<FieldTransfer>> {
    (0..grid.n_samples)
        .into_par_iter()
        .map(|k| {
            let w = grid.omega_of_bin(k);
            model.transfer_matrix(model.medium.length, w)
        })
        .collect()
}

pub(crate) fn prepare(model: &Model, pulse: &PulseSpec, grid: &TimeGrid) -> Result<Model> {
    pulse.validate()?;
    let at = pulse_model(model, pulse)?;
    grid.check_fits(pulse.fwhm, at.derived.eit_delay)?;
    if !(pulse.center > 0.0 && pulse.center < grid.window) {
        return Err(EitError::InvalidParameter {
            name: "center",
            value: pulse.center,
            reason: "must lie inside the time window",
        });
    }
    Ok(at)
}

pub(crate) fn input_signal(pulse: &PulseSpec, grid: &TimeGrid) -> Vec<Complex64> {
    grid.times()
        .iter()
        .map(|&t| Complex64::new(pulse.envelope(t), 0.0))
        .collect()
}

/// Propagates the seeded pulse pair through the cell.
///
/// The carrier detuning and seed fraction of `pulse` replace those of
/// `model.drive`; derived quantities are kept as given.
pub fn propagate_pulse(model: &Model, pulse: &PulseSpec, grid: &TimeGrid) -> Result<PulseTrace> {
    let at = prepare(model, pulse, grid)?;
    let f = pulse.seed_fraction;
    let signal_in = input_signal(pulse, grid);
    let stokes_in: Vec<Complex64> = signal_in.iter().map(|&e| -f * e).collect();

    let spectrum = analyse(&signal_in);
    let transfers = bin_transfers(&at, grid)?;
    let (sig_spec, sto_spec): (Vec<_>, Vec<_>) = transfers
        .iter()
        .zip(&spectrum)
        .map(|(t, &e)| {
            let out = t.apply(&crate::propagation::FieldPair::seeded(e, f));
            (out.signal, out.stokes_conj)
        })
        .unzip();
    let signal_out = synthesise(&sig_spec);
    let stokes_out = synthesise(&sto_spec);
    if signal_out.iter().chain(&stokes_out).any(|v| !v.is_finite()) {
        return Err(EitError::NonFinite("pulse output"));
    }

    let mut warnings = Vec::new();
    for (channel, trace) in [("signal", &signal_out), ("stokes", &stokes_out)] {
        let edge_fraction = edge_fraction(trace);
        if edge_fraction > EDGE_ENERGY_LIMIT {
            warnings.push(WindowWarning { channel, edge_fraction });
        }
    }

    Ok(PulseTrace {
        times: grid.times(),
        signal_in,
        stokes_in,
        signal_out,
        stokes_out,
        warnings,
    })
}
