use num_complex::Complex64;

use super::PulseTrace;
use crate::error::{EitError, Result};
use crate::spectra::local_maxima;

/// A secondary intensity maximum counts as a separate peak above this share
/// of the global maximum.
pub const MULTI_PEAK_FRACTION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayGain {
    /// Output peak time minus input peak time.
    pub delay: f64,
    /// Output peak amplitude over input peak amplitude.
    pub gain: f64,
    /// Difference of intensity-weighted mean times.
    pub centroid_delay: f64,
    pub multi_peak: bool,
    /// Largest secondary maximum relative to the global one, if any.
    pub secondary_peak_ratio: Option<f64>,
}

fn intensity(x: &[Complex64]) -> Vec<f64> {
    x.iter().map(|v| v.norm_sqr()).collect()
}

/// Peak time and intensity from a parabola through the largest sample and its
/// neighbours.
fn interpolated_peak(times: &[f64], y: &[f64]) -> (f64, f64) {
    let i = y
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    if i == 0 || i + 1 == y.len() {
        return (times[i], y[i]);
    }
    let (a, b, c) = (y[i - 1], y[i], y[i + 1]);
    let curv = a - 2.0 * b + c;
    if curv == 0.0 {
        return (times[i], b);
    }
    let p = 0.5 * (a - c) / curv;
    let dt = times[i + 1] - times[i];
    (times[i] + p * dt, b - 0.25 * (a - c) * p)
}

fn centroid(times: &[f64], y: &[f64]) -> f64 {
    let total: f64 = y.iter().sum();
    times.iter().zip(y).map(|(t, w)| t * w).sum::<f64>() / total
}

/// Delay and gain of the output signal pulse relative to the input.
pub fn measure_delay_gain(trace: &PulseTrace) -> Result<DelayGain> {
    if let Some(w) = trace.warnings.first() {
        return Err(EitError::WindowTooSmall(format!(
            "{} output has {:.2e} of its energy at the window edges",
            w.channel, w.edge_fraction
        )));
    }
    let input = intensity(&trace.signal_in);
    let output = intensity(&trace.signal_out);
    let (t_in, i_in) = interpolated_peak(&trace.times, &input);
    let (t_out, i_out) = interpolated_peak(&trace.times, &output);
    if !(i_in > 0.0) {
        return Err(EitError::Domain("input pulse has no intensity".into()));
    }

    let global = output.iter().cloned().fold(0.0, f64::max);
    let mut maxima: Vec<f64> = local_maxima(&output).into_iter().map(|i| output[i]).collect();
    maxima.sort_by(|a, b| b.total_cmp(a));
    let secondary_peak_ratio = maxima.get(1).map(|v| v / global);
    let multi_peak = secondary_peak_ratio.is_some_and(|r| r > MULTI_PEAK_FRACTION);

    Ok(DelayGain {
        delay: t_out - t_in,
        gain: (i_out / i_in).sqrt(),
        centroid_delay: centroid(&trace.times, &output) - centroid(&trace.times, &input),
        multi_peak,
        secondary_peak_ratio,
    })
}
