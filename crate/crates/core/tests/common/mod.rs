#![allow(dead_code)]

use eitfwm_core::{hz, DerivedParams, DriveParams, MediumParams, Model};

pub const WEAK_SEED: f64 = 0.223_606_797_749_978_96;

pub fn model(two_d: f64, rabi_hz: f64, delta: f64, f: f64) -> Model {
    Model::new(MediumParams::rb87_cell(two_d), DriveParams::new(hz(rabi_hz), delta, f)).unwrap()
}

/// 2d = 110, Ω/2π = 14 MHz.
pub fn slow_light(f: f64) -> Model {
    model(110.0, 14e6, 0.0, f)
}

pub fn case_i(m: &Model) -> f64 {
    2.0 * m.derived.delta_r.abs()
}

pub fn case_ii(m: &Model) -> f64 {
    2.0 * m.derived.delta_s
}

/// Same medium with Δ_hf scaled up, leaving Ω fixed.
pub fn decoupled(two_d: f64, rabi_hz: f64, delta: f64, f: f64, scale: f64) -> Model {
    let medium = MediumParams {
        delta_hf: MediumParams::rb87_cell(two_d).delta_hf * scale,
        ..MediumParams::rb87_cell(two_d)
    };
    Model::new(medium, DriveParams::new(hz(rabi_hz), delta, f)).unwrap()
}

pub fn with_gamma_0(m: &Model, gamma_0: f64) -> Model {
    let derived = DerivedParams { gamma_0, ..m.derived };
    Model::with_derived(m.medium, m.drive, derived).unwrap()
}

pub fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}
