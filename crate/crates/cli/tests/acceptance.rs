//! Acceptance run: one PASS/FAIL line per criterion and a summary line.
//!
//! Reds are reported, not hidden. The process exits 0 so that `cargo test`
//! still runs the remaining targets; set `EITFWM_ACCEPTANCE_STRICT=1` to exit
//! non-zero when any check fails.

use std::f64::consts::PI;
use std::fs;
use std::time::Instant;

use eitfwm_cli::scenario::ValidateBlock;
use eitfwm_cli::validate::{reference_cases, validate_cases};
use eitfwm_cli::{load_preset, run, Overrides, PRESETS};
use eitfwm_core::pulse::{PulseSpec, TimeGrid};
use eitfwm_core::spectra::{signal_minima, SpectrumSweep};
use eitfwm_core::{
    dispersion_curves, hz, measure_delay_gain, propagate_pulse, sigma_delay, to_hz, DerivedParams, DriveParams,
    FieldTransfer, MediumParams, Model, ResponseComponents,
};
use num_complex::Complex64;

// Pinned tolerances.
const ORACLE_TOL: f64 = 1e-8;
const ORACLE_STEPS: usize = 10_000;
const ORACLE_RUNTIME_S: f64 = 30.0;
const DELTA_S_9MHZ_HZ: f64 = 36e3;
const DELTA_S_14MHZ_RANGE_HZ: (f64, f64) = (84e3, 86e3);
const DELTA_R_14MHZ_HZ: f64 = -28e3;
const DERIVED_REL_TOL: f64 = 0.05;
const MINIMA_REL_TOL: f64 = 0.20;
const HALF_DELAY_TOL: f64 = 0.02;
const HALF_DELAY_GAMMA_0: [f64; 3] = [0.0, 100.0, 1000.0];
const PULSE_REL_TOL: f64 = 0.20;
const BAND_HALF_WIDTH_HZ: f64 = 31e3;
const SPREAD_LIMIT: f64 = 0.15;
const DOUBLE_PEAK_FRACTION: f64 = 0.25;
const LINEARITY_EPS: f64 = 4.0 * f64::EPSILON;
const BRANCH_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-10;
const ROUND_TRIP_TOL: f64 = 1e-10;
const DECOUPLE_SCALE: f64 = 1e6;
const DECOUPLE_TOL: f64 = 1e-6;

const FWHM: f64 = 6e-6;
const WEAK: f64 = 0.223_606_797_749_978_96;

struct Tally {
    failed: Vec<String>,
    total: usize,
}

impl Tally {
    fn check(&mut self, id: &str, pass: bool, detail: String) {
        self.total += 1;
        println!("{} {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(id.to_string());
        }
    }
}

fn model(two_d: f64, rabi_hz: f64, delta: f64, f: f64) -> Model {
    Model::new(MediumParams::rb87_cell(two_d), DriveParams::new(hz(rabi_hz), delta, f)).unwrap()
}

fn grid(n: usize, half: f64) -> Vec<f64> {
    (0..n).map(|j| -half + 2.0 * half * j as f64 / (n - 1) as f64).collect()
}

fn near(value: f64, target: f64, rel: f64) -> bool {
    (value / target - 1.0).abs() <= rel
}

fn oracle(t: &mut Tally) {
    let block = ValidateBlock {
        steps: ORACLE_STEPS,
        tol: ORACLE_TOL,
        ..ValidateBlock::default()
    };
    let start = Instant::now();
    let report = validate_cases(&reference_cases(), &block).unwrap();
    let secs = start.elapsed().as_secs_f64();
    t.check(
        "1 oracle equivalence",
        report.max_error < ORACLE_TOL && report.points.len() == 2 * 3 * 21 * 21 && secs < ORACLE_RUNTIME_S,
        format!(
            "{} points, max rel error {:.2e} (< {ORACLE_TOL:e}), {secs:.1} s (< {ORACLE_RUNTIME_S} s)",
            report.points.len(),
            report.max_error
        ),
    );
}

fn derived(t: &mut Tally) {
    let a = model(52.0, 9e6, 0.0, 1.0).derived;
    let b = model(110.0, 14e6, 0.0, 1.0).derived;
    let ds9 = to_hz(a.delta_s);
    t.check(
        "2a light shift at 9 MHz",
        near(ds9, DELTA_S_9MHZ_HZ, DERIVED_REL_TOL),
        format!("δ_s/2π = {:.3} kHz (36 kHz ± 5%)", ds9 / 1e3),
    );
    let ds14 = to_hz(b.delta_s);
    t.check(
        "2b light shift at 14 MHz",
        (DELTA_S_14MHZ_RANGE_HZ.0..=DELTA_S_14MHZ_RANGE_HZ.1).contains(&ds14),
        format!("δ_s/2π = {:.3} kHz (84 to 86 kHz)", ds14 / 1e3),
    );
    let dr14 = to_hz(b.delta_r);
    t.check(
        "2c Raman detuning at 14 MHz",
        near(dr14, DELTA_R_14MHZ_HZ, DERIVED_REL_TOL),
        format!("Δ_R/2π = {:.3} kHz (-28 kHz ± 5%)", dr14 / 1e3),
    );
}

fn minima(t: &mut Tally) {
    let m = model(98.0, 9e6, 0.0, 1.0);
    let unit = PI * m.derived.vg_over_l;
    let found: Vec<f64> = signal_minima(&SpectrumSweep::with_default_range(m))
        .unwrap()
        .into_iter()
        .map(|d| (d - m.derived.delta_s) / unit)
        .collect();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [-3.0, -1.0, 2.0f64] {
        let best = found
            .iter()
            .copied()
            .min_by(|a, b| (a - n).abs().total_cmp(&(b - n).abs()))
            .unwrap_or(f64::NAN);
        ok &= (best - n).abs() <= MINIMA_REL_TOL * n.abs();
        parts.push(format!("n={n}: {best:.3}"));
    }
    t.check(
        "3 interference minima",
        ok,
        format!(
            "δ̃/(πv_g/L) {} (± 20% of n; πv_g/L/2π = {:.3} kHz)",
            parts.join(", "),
            to_hz(unit) / 1e3
        ),
    );
}

fn half_delay(t: &mut Tally) {
    let mut worst: f64 = 0.0;
    for (two_d, rabi) in [(52.0, 9e6), (110.0, 14e6)] {
        let m = model(two_d, rabi, 0.0, 1.0);
        for g0 in HALF_DELAY_GAMMA_0 {
            let d = DerivedParams {
                gamma_0: g0,
                ..m.derived
            };
            let mm = Model::with_derived(m.medium, m.drive, d).unwrap();
            let s = sigma_delay(&mm).unwrap();
            // Independent route to the same target: dγ/(2Ω²) from the raw inputs.
            let target = mm.medium.d() * mm.medium.gamma / (2.0 * mm.drive.omega.powi(2));
            worst = worst.max((s.numerical / target - 1.0).abs());
        }
    }
    t.check(
        "4 half-delay law",
        worst <= HALF_DELAY_TOL,
        format!(
            "max |dReσ/dω·L ÷ dγ/(2Ω²) − 1| = {:.2e} for γ₀ ∈ {{0, 100, 1000}} s⁻¹ (≤ 2%)",
            worst
        ),
    );
}

struct Case {
    delay: f64,
    gain: f64,
    secondary: Option<f64>,
    tau: Vec<f64>,
    gain_centre: f64,
    tau_centre: f64,
}

fn case(delta_of: impl Fn(&DerivedParams) -> f64, f: f64) -> Case {
    let m = model(110.0, 14e6, 0.0, f);
    let spec = PulseSpec::new(FWHM, delta_of(&m.derived), f);
    let g = TimeGrid::default();
    let trace = propagate_pulse(&m, &spec, &g).unwrap();
    let dg = measure_delay_gain(&trace).unwrap();
    let c = dispersion_curves(&m, &spec, &g).unwrap();
    Case {
        delay: dg.delay,
        gain: dg.gain,
        secondary: dg.secondary_peak_ratio,
        tau: c.band(hz(BAND_HALF_WIDTH_HZ)).into_iter().map(|i| c.delay[i]).collect(),
        gain_centre: c.gain[c.centre()],
        tau_centre: c.delay[c.centre()],
    }
}

fn spread(tau: &[f64]) -> f64 {
    let mean = tau.iter().sum::<f64>() / tau.len() as f64;
    let max = tau.iter().copied().fold(f64::MIN, f64::max);
    let min = tau.iter().copied().fold(f64::MAX, f64::min);
    (max - min) / mean
}

fn pulses(t: &mut Tally) {
    let us = |x: f64| x * 1e6;
    let case_i = |d: &DerivedParams| 2.0 * d.delta_r.abs();
    let case_ii = |d: &DerivedParams| 2.0 * d.delta_s;
    let case_iii = |_: &DerivedParams| 0.0;

    let a = case(case_i, WEAK);
    t.check(
        "5a case I, weak seed",
        near(a.gain, 1.5, PULSE_REL_TOL) && near(a.delay, 6e-6, PULSE_REL_TOL),
        format!("gain {:.3} (1.5 ± 20%), delay {:.3} μs (6 ± 20%)", a.gain, us(a.delay)),
    );

    let b = case(case_ii, 1.0);
    let sb = spread(&b.tau);
    t.check(
        "5b case II, full seed",
        near(b.delay, 5e-6, PULSE_REL_TOL) && near(b.gain_centre, 1.8, PULSE_REL_TOL) && sb < SPREAD_LIMIT,
        format!(
            "delay {:.3} μs (5 ± 20%), central gain {:.3} (1.8 ± 20%), τ spread {:.1}% (< 15%)",
            us(b.delay),
            b.gain_centre,
            100.0 * sb
        ),
    );

    let c = case(case_ii, WEAK);
    t.check(
        "5c case II, weak seed",
        near(c.delay, 5.8e-6, PULSE_REL_TOL),
        format!("delay {:.3} μs (5.8 ± 20%)", us(c.delay)),
    );

    let d = case(case_iii, 1.0);
    let edge = d.tau[0].min(d.tau[d.tau.len() - 1]);
    let band_max = d.tau.iter().copied().fold(f64::MIN, f64::max);
    let ratio = d.secondary.unwrap_or(0.0);
    t.check(
        "5d case III, full seed",
        near(d.tau_centre, 14e-6, PULSE_REL_TOL)
            && near(band_max, 14e-6, PULSE_REL_TOL)
            && near(edge, 5e-6, PULSE_REL_TOL)
            && ratio >= DOUBLE_PEAK_FRACTION,
        format!(
            "τ(0) {:.2} μs and band max {:.2} μs (14 ± 20%), τ band edge {:.2} μs (5 ± 20%), second intensity peak {:.3} of max (≥ 0.25)",
            us(d.tau_centre),
            us(band_max),
            us(edge),
            ratio
        ),
    );

    let e = case(case_iii, WEAK);
    let se = spread(&e.tau);
    t.check(
        "5e case III, weak seed",
        near(e.delay, 7e-6, PULSE_REL_TOL) && se < SPREAD_LIMIT && e.gain < 1.0,
        format!(
            "delay {:.3} μs (7 ± 20%), τ spread {:.1}% (< 15%), gain {:.3} (< 1)",
            us(e.delay),
            100.0 * se,
            e.gain
        ),
    );
}

fn single_lambda(m: &Model, w: f64) -> Complex64 {
    let (md, dr, dv) = (&m.medium, &m.drive, &m.derived);
    let f = dr.omega * dr.omega
        + Complex64::new(md.gamma, -(dr.delta - 2.0 * dv.delta_s + w))
            * Complex64::new(dv.gamma_0, -(dr.delta - dv.delta_s + w));
    (Complex64::i() * md.d() * md.gamma / f * Complex64::new(dr.delta - dv.delta_s + w, dv.gamma_0)).exp()
}

fn properties(t: &mut Tally) {
    let sets = [(52.0, 9e6), (110.0, 14e6)];
    let (mut lin, mut branch, mut det): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (two_d, rabi) in sets {
        for f in [0.0, WEAK, 1.0] {
            for delta in grid(21, hz(600e3)) {
                for w in grid(21, hz(200e3)) {
                    let m = model(two_d, rabi, delta, f);
                    let l = m.medium.length;
                    let c = Complex64::new(-1.7, 2.3);
                    let unit = m.propagate_analytic(Complex64::new(1.0, 0.0), l, w).unwrap();
                    let scaled = m.propagate_analytic(c, l, w).unwrap();
                    let expected = unit.scale(c);
                    let dev = (scaled.signal - expected.signal)
                        .norm()
                        .max((scaled.stokes_conj - expected.stokes_conj).norm());
                    lin = lin.max(dev / (f64::EPSILON * expected.norm()));

                    let r = m.response_at(w).unwrap();
                    let flipped = ResponseComponents {
                        beta: -r.beta,
                        xi: -r.xi,
                        ..r
                    };
                    let ta = m.transfer_from_response(&r, l).unwrap();
                    let tb = m.transfer_from_response(&flipped, l).unwrap();
                    branch = branch.max(tb.relative_error(&ta));

                    let target = (2.0 * Complex64::i() * r.sigma * l).exp();
                    det = det.max((ta.det() - target).norm() / target.norm());
                }
            }
        }
    }
    t.check(
        "6a linearity",
        lin * f64::EPSILON <= LINEARITY_EPS,
        format!("max deviation {lin:.2} ε (≤ 4 ε)"),
    );
    t.check(
        "6b branch invariance",
        branch <= BRANCH_TOL,
        format!("max rel {branch:.2e} (≤ 1e-12)"),
    );
    t.check(
        "6c determinant law",
        det <= DET_TOL,
        format!("max rel {det:.2e} (≤ 1e-10)"),
    );

    let medium = MediumParams {
        two_d: 1e-300,
        ..MediumParams::rb87_cell(1.0)
    };
    let mut trip: f64 = 0.0;
    for f in [0.0, WEAK, 1.0] {
        let m = Model::new(medium, DriveParams::new(hz(14e6), 0.0, f)).unwrap();
        let tr = propagate_pulse(&m, &PulseSpec::new(FWHM, 0.0, f), &TimeGrid::default()).unwrap();
        for n in 0..tr.times.len() {
            trip = trip
                .max((tr.signal_out[n] - tr.signal_in[n]).norm())
                .max((tr.stokes_out[n] - tr.stokes_in[n]).norm());
        }
    }
    t.check(
        "6d empty-medium FFT round trip",
        trip <= ROUND_TRIP_TOL,
        format!("max {trip:.2e} (≤ 1e-10)"),
    );

    // Decoupled reference transfer: single-Λ signal, Stokes passed unchanged.
    let (mut matrix, mut sto) = ([0.0f64; 2], [0.0f64; 2]);
    for (k, (two_d, rabi)) in sets.into_iter().enumerate() {
        for f in [WEAK, 1.0] {
            for delta in grid(21, hz(600e3)) {
                for w in grid(21, hz(200e3)) {
                    let base = MediumParams::rb87_cell(two_d);
                    let medium = MediumParams {
                        delta_hf: base.delta_hf * DECOUPLE_SCALE,
                        ..base
                    };
                    let m = Model::new(medium, DriveParams::new(hz(rabi), delta, f)).unwrap();
                    let tm = m.transfer_matrix(m.medium.length, w).unwrap();
                    let reference = FieldTransfer {
                        t11: single_lambda(&m, w),
                        t12: Complex64::new(0.0, 0.0),
                        t21: Complex64::new(0.0, 0.0),
                        t22: Complex64::new(1.0, 0.0),
                    };
                    matrix[k] = matrix[k].max(tm.relative_error(&reference));
                    let out = m.output_fields(w).unwrap();
                    sto[k] = sto[k].max((out.stokes_conj.norm() - f).abs() / f);
                }
            }
        }
    }
    t.check(
        "6e far-hyperfine transfer",
        matrix.iter().all(|&x| x <= DECOUPLE_TOL),
        format!(
            "Δ_hf ×1e6: ‖T − diag(single-Λ, 1)‖/‖diag(single-Λ, 1)‖ = {:.2e} (2d=52) / {:.2e} (2d=110) (≤ 1e-6)",
            matrix[0], matrix[1]
        ),
    );
    t.check(
        "6f far-hyperfine Stokes magnitude",
        sto.iter().all(|&x| x <= DECOUPLE_TOL),
        format!(
            "Δ_hf ×1e6: max ||E′(L)| − f|/f = {:.2e} (2d=52) / {:.2e} (2d=110) over f ∈ {{√0.05, 1}} (≤ 1e-6)",
            sto[0], sto[1]
        ),
    );
}

fn determinism(t: &mut Tally) {
    let tmp = tempfile::tempdir().unwrap();
    let mut mismatched = Vec::new();
    let mut compared = 0;
    for (name, _) in PRESETS {
        let mut dirs = Vec::new();
        for rep in 0..2 {
            let dir = tmp.path().join(format!("{name}_{rep}"));
            let o = Overrides {
                out: Some(dir.clone()),
                ..Overrides::default()
            };
            run(&load_preset(name, &o).unwrap(), &mut std::io::sink()).unwrap();
            dirs.push(dir);
        }
        for entry in fs::read_dir(&dirs[0]).unwrap() {
            let file = entry.unwrap().file_name();
            if file.to_string_lossy().ends_with(".csv") {
                compared += 1;
                if fs::read(dirs[0].join(&file)).unwrap() != fs::read(dirs[1].join(&file)).unwrap() {
                    mismatched.push(format!("{name}/{}", file.to_string_lossy()));
                }
            }
        }
    }
    t.check(
        "7 determinism",
        mismatched.is_empty() && compared > 0,
        format!(
            "{compared} CSV files compared across two runs of every preset, {} differ",
            mismatched.len()
        ),
    );
}

fn main() {
    let mut t = Tally {
        failed: Vec::new(),
        total: 0,
    };
    oracle(&mut t);
    derived(&mut t);
    minima(&mut t);
    half_delay(&mut t);
    pulses(&mut t);
    properties(&mut t);
    determinism(&mut t);
    println!(
        "acceptance: {} of {} checks passed{}",
        t.total - t.failed.len(),
        t.total,
        if t.failed.is_empty() {
            String::new()
        } else {
            format!("; failed: {}", t.failed.join(", "))
        }
    );
    let strict = std::env::var("EITFWM_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !t.failed.is_empty() {
        std::process::exit(1);
    }
}
