use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;

use super::{analyse, bin_transfers, input_signal, prepare, PulseSpec, TimeGrid};
use crate::error::Result;
use crate::medium::{to_hz, Model};

/// Transfer magnitudes below this are treated as zero.
pub const TRANSFER_FLOOR: f64 = 1e-12;

pub const DISPERSION_CSV_HEADER: &str = "omega_hz,delay_s,gain,input_spectrum_amp,valid";

/// Per-bin delay and gain of the signal channel, ordered by increasing ω.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCurves {
    pub omega: Vec<f64>,
    /// d/dω arg[E(L,ω)/E(0,ω)], NaN where invalid.
    pub delay: Vec<f64>,
    /// |E(L,ω)|/|E(0,ω)|.
    pub gain: Vec<f64>,
    pub input_spectrum_amp: Vec<f64>,
    pub valid: Vec<bool>,
}

impl DispersionCurves {
    /// Indices within `half_width` of ω = 0, with the edge rounded to the
    /// nearest bin.
    pub fn band(&self, half_width: f64) -> Vec<usize> {
        let step = self.omega[1] - self.omega[0];
        let edge = (half_width / step).round() + 0.5;
        (0..self.omega.len())
            .filter(|&i| (self.omega[i] / step).abs() <= edge)
            .collect()
    }

    /// Index of the ω = 0 bin.
    pub fn centre(&self) -> usize {
        self.omega.len() / 2
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{DISPERSION_CSV_HEADER}")?;
        for i in 0..self.omega.len() {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{}",
                to_hz(self.omega[i]),
                self.delay[i],
                self.gain[i],
                self.input_spectrum_amp[i],
                u8::from(self.valid[i])
            )?;
        }
        Ok(())
    }
}

/// Adds multiples of 2π so consecutive valid phases differ by at most π.
pub fn unwrap_phase(phase: &mut [f64], valid: &[bool]) {
    let mut last: Option<f64> = None;
    for (p, &ok) in phase.iter_mut().zip(valid) {
        if !ok {
            continue;
        }
        if let Some(prev) = last {
            *p -= 2.0 * PI * ((*p - prev) / (2.0 * PI)).round();
        }
        last = Some(*p);
    }
}

/// Spectral delay and gain of the signal channel over the grid's bins.
pub fn dispersion_curves(model: &Model, pulse: &PulseSpec, grid: &TimeGrid) -> Result<DispersionCurves> {
    let at = prepare(model, pulse, grid)?;
    let f = pulse.seed_fraction;
    let n = grid.n_samples;
    let spectrum = analyse(&input_signal(pulse, grid));
    let transfers = bin_transfers(&at, grid)?;

    // Storage order → ascending ω.
    let order: Vec<usize> = (n / 2..n).chain(0..n / 2).collect();
    let h: Vec<Complex64> = order.iter().map(|&k| transfers[k].t11 - f * transfers[k].t12).collect();
    let omega: Vec<f64> = order.iter().map(|&k| grid.omega_of_bin(k)).collect();
    let input_spectrum_amp: Vec<f64> = order.iter().map(|&k| spectrum[k].norm()).collect();
    let gain: Vec<f64> = h.iter().map(|v| v.norm()).collect();
    let above: Vec<bool> = gain.iter().map(|&g| g >= TRANSFER_FLOOR).collect();

    let mut phase: Vec<f64> = h.iter().map(|v| v.arg()).collect();
    unwrap_phase(&mut phase, &above);

    let dw = grid.d_omega();
    let mut delay = vec![f64::NAN; n];
    let mut valid = vec![false; n];
    for i in 0..n {
        if !above[i] {
            continue;
        }
        let lo = if i > 0 && above[i - 1] { i - 1 } else { i };
        let hi = if i + 1 < n && above[i + 1] { i + 1 } else { i };
        if lo == hi {
            continue;
        }
        delay[i] = (phase[hi] - phase[lo]) / ((hi - lo) as f64 * dw);
        valid[i] = true;
    }

    Ok(DispersionCurves {
        omega,
        delay,
        gain,
        input_spectrum_amp,
        valid,
    })
}

/// Delay from the common phase `Re[σ(ω)]·L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaDelay {
    /// Central difference of `Re σ · L` at ω = 0.
    pub numerical: f64,
    /// dγ/(2Ω²).
    pub closed_form: f64,
}

pub fn sigma_delay(model: &Model) -> Result<SigmaDelay> {
    let h = 1e-4 * model.eit_width();
    let l = model.medium.length;
    let plus = model.response_at(h)?.sigma.re * l;
    let minus = model.response_at(-h)?.sigma.re * l;
    Ok(SigmaDelay {
        numerical: (plus - minus) / (2.0 * h),
        closed_form: 0.5 * model.derived.eit_delay,
    })
}
