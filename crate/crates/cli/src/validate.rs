//! Closed-form propagation checked against the RK4 integrator on a (δ, ω) grid.

use rayon::prelude::*;

use eitfwm_core::{hz, DriveParams, FieldPair, MediumParams, Model};
use num_complex::Complex64;

use crate::error::{CliError, Result};
use crate::scenario::ValidateBlock;

/// (2d, Ω/2π in Hz) for the two reference cells.
pub const REFERENCE_SETS: [(f64, f64); 2] = [(52.0, 9e6), (110.0, 14e6)];

pub const VALIDATION_CSV_HEADER: &str = "two_d,rabi_hz,seed_fraction,delta_hz,omega_hz,rel_error";

pub fn reference_seed_fractions() -> [f64; 3] {
    [0.0, 0.05f64.sqrt(), 1.0]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationCase {
    pub medium: MediumParams,
    pub rabi: f64,
    pub seed_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationPoint {
    pub case: ValidationCase,
    pub delta: f64,
    pub omega: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub points: Vec<ValidationPoint>,
    pub max_error: f64,
    pub tol: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tol
    }

    pub fn worst(&self) -> Option<&ValidationPoint> {
        self.points.iter().max_by(|a, b| a.rel_error.total_cmp(&b.rel_error))
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(CliError::Validation {
                max_error: self.max_error,
                tolerance: self.tol,
            })
        }
    }

    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{VALIDATION_CSV_HEADER}")?;
        for p in &self.points {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                p.case.medium.two_d,
                eitfwm_core::to_hz(p.case.rabi),
                p.case.seed_fraction,
                eitfwm_core::to_hz(p.delta),
                eitfwm_core::to_hz(p.omega),
                p.rel_error
            )?;
        }
        Ok(())
    }
}

/// Reference cells crossed with the three standard seed fractions.
pub fn reference_cases() -> Vec<ValidationCase> {
    REFERENCE_SETS
        .iter()
        .flat_map(|&(two_d, rabi_hz)| {
            reference_seed_fractions().map(|f| ValidationCase {
                medium: MediumParams::rb87_cell(two_d),
                rabi: hz(rabi_hz),
                seed_fraction: f,
            })
        })
        .collect()
}

fn symmetric_grid(n: usize, half: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n).map(|j| -half + 2.0 * half * j as f64 / (n - 1) as f64).collect()
}

pub fn validate_cases(cases: &[ValidationCase], block: &ValidateBlock) -> Result<ValidationReport> {
    let deltas = symmetric_grid(block.n_delta, block.delta_span);
    let omegas = symmetric_grid(block.n_omega, block.omega_span);
    let mut jobs = Vec::with_capacity(cases.len() * deltas.len() * omegas.len());
    for &case in cases {
        for &delta in &deltas {
            jobs.extend(omegas.iter().map(|&omega| (case, delta, omega)));
        }
    }
    let points = jobs
        .into_par_iter()
        .map(|(case, delta, omega)| {
            let context = || {
                format!(
                    "2d = {}, f = {}, δ/2π = {} Hz, ω/2π = {} Hz",
                    case.medium.two_d,
                    case.seed_fraction,
                    eitfwm_core::to_hz(delta),
                    eitfwm_core::to_hz(omega)
                )
            };
            let wrap = |source| CliError::Compute {
                context: context(),
                source,
            };
            let model =
                Model::new(case.medium, DriveParams::new(case.rabi, delta, case.seed_fraction)).map_err(wrap)?;
            let exact = model.output_fields(omega).map_err(wrap)?;
            let input = FieldPair::seeded(Complex64::new(1.0, 0.0), case.seed_fraction);
            let rk4 = model.ode_oracle(&input, omega, block.steps).map_err(wrap)?;
            Ok(ValidationPoint {
                case,
                delta,
                omega,
                rel_error: rk4.relative_error(&exact),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_error = points.iter().map(|p| p.rel_error).fold(0.0, f64::max);
    Ok(ValidationReport {
        points,
        max_error,
        tol: block.tol,
    })
}
