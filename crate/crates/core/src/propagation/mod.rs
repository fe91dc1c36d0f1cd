//! Signal/Stokes propagation through the cell.
//!
//! The coupled system `∂z [E, E′*]ᵀ = M [E, E′*]ᵀ` has constant coefficients, so
//! its solution is `exp(Mz)`. With `A = M − iσI` one has `A² = ξ²I`, which gives
//!
//! ```text
//! exp(Mz) = e^{iσz} [cosh(ξz) I + A sinh(ξz)/ξ]
//! ```
//!
//! When `Re(ξz)` is large the bracket is a difference of two huge terms whose
//! result can be exponentially small (an absorbed signal). In that regime the
//! same expression is evaluated as a sum of the two modes `e^{(iσ±ξ)z}`, with
//! `ξ ± iσ` obtained from `(ξ + iσ)(ξ − iσ) = (kΔ_R)²` so that neither factor is
//! formed by cancellation.

mod approx;
mod oracle;

pub use approx::{ApproxResult, ApproxValidity};
pub use oracle::MIN_STEPS;

use num_complex::Complex64;

use crate::error::{EitError, Result};
use crate::medium::{Model, ResponseComponents};

/// Largest admissible `Re(ξz)` before `cosh`/`sinh` leave double range.
pub const OVERFLOW_LIMIT: f64 = 700.0;

/// Below this `|ξz|` the ratio `sinh(ξz)/ξ` is taken from its Taylor series.
const SERIES_THRESHOLD: f64 = 1e-6;

/// Above this `Re(ξz)` the split-mode evaluation is used.
const SPLIT_THRESHOLD: f64 = 1.0;

/// Complex amplitudes of the signal and the conjugate Stokes field.
///
/// The measured Stokes amplitude is `stokes_conj.norm()`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPair {
    pub signal: Complex64,
    pub stokes_conj: Complex64,
}

impl FieldPair {
    pub fn new(signal: Complex64, stokes_conj: Complex64) -> Self {
        Self { signal, stokes_conj }
    }

    /// Input pair under the seeded boundary condition `E′*(0) = −f E(0)`.
    pub fn seeded(signal: Complex64, seed_fraction: f64) -> Self {
        Self::new(signal, -seed_fraction * signal)
    }

    pub fn norm(&self) -> f64 {
        self.signal.norm().hypot(self.stokes_conj.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.signal.is_finite() && self.stokes_conj.is_finite()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(c * self.signal, c * self.stokes_conj)
    }

    /// `‖self − other‖ / ‖other‖`.
    pub fn relative_error(&self, reference: &FieldPair) -> f64 {
        let diff = FieldPair::new(self.signal - reference.signal, self.stokes_conj - reference.stokes_conj);
        diff.norm() / reference.norm()
    }
}

/// 2×2 transfer matrix mapping `[E(0), E′*(0)]` to `[E(z), E′*(z)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldTransfer {
    pub t11: Complex64,
    pub t12: Complex64,
    pub t21: Complex64,
    pub t22: Complex64,
}

impl FieldTransfer {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            t11: one,
            t12: zero,
            t21: zero,
            t22: one,
        }
    }

    pub fn apply(&self, input: &FieldPair) -> FieldPair {
        FieldPair::new(
            self.t11 * input.signal + self.t12 * input.stokes_conj,
            self.t21 * input.signal + self.t22 * input.stokes_conj,
        )
    }

    pub fn det(&self) -> Complex64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        [self.t11, self.t12, self.t21, self.t22]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius-norm relative difference `‖self − other‖ / ‖other‖`.
    pub fn relative_error(&self, reference: &FieldTransfer) -> f64 {
        let diff = FieldTransfer {
            t11: self.t11 - reference.t11,
            t12: self.t12 - reference.t12,
            t21: self.t21 - reference.t21,
            t22: self.t22 - reference.t22,
        };
        diff.norm() / reference.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.t11.is_finite() && self.t12.is_finite() && self.t21.is_finite() && self.t22.is_finite()
    }
}

/// Per-(z, ω) pieces shared by the matrix and the closed-form field solutions.
struct Modes {
    sigma: Complex64,
    /// ξ on the branch with `Re ξ ≥ 0`.
    xi: Complex64,
    /// β on the branch matching `xi`.
    beta: Complex64,
    /// k·Δ_R (off-diagonal coupling magnitude of M, without the i).
    k_raman: Complex64,
    eval: ModeEval,
}

enum ModeEval {
    /// `e^{iσz}`, `cosh(ξz)`, `sinh(ξz)/ξ`.
    Direct {
        phase: Complex64,
        cosh: Complex64,
        sinh_over_xi: Complex64,
    },
    /// `e^{(iσ+ξ)z}`, `e^{(iσ−ξ)z}`, `ξ+iσ`, `ξ−iσ`.
    Split {
        grow: Complex64,
        decay: Complex64,
        plus: Complex64,
        minus: Complex64,
    },
}

impl Modes {
    fn new(model: &Model, resp: &ResponseComponents, z: f64) -> Result<Self> {
        let i = Complex64::i();
        let (mut xi, mut beta) = (resp.xi, resp.beta);
        let sigma = resp.sigma;
        let k_raman = resp.coupling * model.derived.delta_r;
        // The direct form is even in ξ and uses the branch it is given; the
        // split form needs Re ξ ≥ 0.
        if (xi * z).re.abs() > SPLIT_THRESHOLD && xi.re < 0.0 {
            xi = -xi;
            beta = -beta;
        }
        let xz = xi * z;
        if xz.re > OVERFLOW_LIMIT {
            return Err(EitError::Overflow {
                re_xi_z: xz.re,
                limit: OVERFLOW_LIMIT,
            });
        }

        let eval = if xz.re.abs() <= SPLIT_THRESHOLD {
            let sinh_over_xi = if xz.norm() < SERIES_THRESHOLD {
                let x2 = xz * xz;
                z * (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
            } else {
                xz.sinh() / xi
            };
            ModeEval::Direct {
                phase: (i * sigma * z).exp(),
                cosh: xz.cosh(),
                sinh_over_xi,
            }
        } else {
            let mut plus = xi + i * sigma;
            let mut minus = xi - i * sigma;
            let prod = k_raman * k_raman;
            if plus.norm() < minus.norm() {
                plus = prod / minus;
            } else {
                minus = prod / plus;
            }
            ModeEval::Split {
                grow: ((i * sigma + xi) * z).exp(),
                decay: ((i * sigma - xi) * z).exp(),
                plus,
                minus,
            }
        };
        Ok(Self {
            sigma,
            xi,
            beta,
            k_raman,
            eval,
        })
    }
}

impl Model {
    fn check_depth(&self, z: f64) -> Result<()> {
        if (0.0..=self.medium.length).contains(&z) {
            Ok(())
        } else {
            Err(EitError::InvalidParameter {
                name: "z",
                value: z,
                reason: "must lie in [0, length]",
            })
        }
    }

    /// `exp(Mz)` at depth `z` and Fourier offset `omega_fourier`.
    pub fn transfer_matrix(&self, z: f64, omega_fourier: f64) -> Result<FieldTransfer> {
        self.transfer_from_response(&self.response_at(omega_fourier)?, z)
    }

    /// [`Model::transfer_matrix`] from precomputed response components. Either
    /// sign of (β, ξ) may be supplied.
    pub fn transfer_from_response(&self, resp: &ResponseComponents, z: f64) -> Result<FieldTransfer> {
        self.check_depth(z)?;
        let modes = Modes::new(self, resp, z)?;
        let i = Complex64::i();
        let coupling = i * modes.k_raman;

        let t = match modes.eval {
            ModeEval::Direct {
                phase,
                cosh,
                sinh_over_xi,
            } => {
                let a11 = i * modes.sigma * sinh_over_xi;
                let off = coupling * sinh_over_xi;
                FieldTransfer {
                    t11: phase * (cosh + a11),
                    t12: phase * off,
                    t21: -phase * off,
                    t22: phase * (cosh - a11),
                }
            }
            ModeEval::Split {
                grow,
                decay,
                plus,
                minus,
            } => {
                let two_xi = 2.0 * modes.xi;
                let off = coupling * (grow - decay) / two_xi;
                FieldTransfer {
                    t11: (grow * plus + decay * minus) / two_xi,
                    t12: off,
                    t21: -off,
                    t22: (grow * minus + decay * plus) / two_xi,
                }
            }
        };
        if !t.is_finite() {
            return Err(EitError::NonFinite("transfer matrix"));
        }
        Ok(t)
    }

    /// Closed-form signal and conjugate-Stokes amplitudes at depth `z` for a
    /// signal input `input_signal` and Stokes seed `−f·input_signal`.
    ///
    /// The Stokes bracket is written with `f` distributed,
    /// `−f[cosh − i(σ/ξ) sinh] − i(2Δ_R/β) sinh`, so `f = 0` needs no special case.
    pub fn propagate_analytic(&self, input_signal: Complex64, z: f64, omega_fourier: f64) -> Result<FieldPair> {
        self.propagate_from_response(&self.response_at(omega_fourier)?, input_signal, z)
    }

    /// [`Model::propagate_analytic`] from precomputed response components.
    /// Either sign of (β, ξ) may be supplied.
    pub fn propagate_from_response(
        &self,
        resp: &ResponseComponents,
        input_signal: Complex64,
        z: f64,
    ) -> Result<FieldPair> {
        self.check_depth(z)?;
        let modes = Modes::new(self, resp, z)?;
        let i = Complex64::i();
        let f = self.drive.seed_fraction;
        let raman_over_beta = 2.0 * self.derived.delta_r / modes.beta;

        let (signal, stokes) = match modes.eval {
            ModeEval::Direct {
                phase,
                cosh,
                sinh_over_xi,
            } => {
                // sinh(ξz)·(σ/ξ) and sinh(ξz)·(2Δ_R/β) without dividing by ξ or β.
                let sigma_sinh = modes.sigma * sinh_over_xi;
                let raman_sinh = modes.k_raman * sinh_over_xi;
                let signal = phase * (cosh + i * (sigma_sinh - f * raman_sinh));
                let stokes = phase * (-f * (cosh - i * sigma_sinh) - i * raman_sinh);
                (signal, stokes)
            }
            ModeEval::Split {
                grow,
                decay,
                plus,
                minus,
            } => {
                // e^{iσz}cosh = (grow + decay)/2, e^{iσz}sinh = (grow − decay)/2,
                // e^{iσz}(cosh ± iσ/ξ sinh) = (grow·(ξ±iσ) + decay·(ξ∓iσ)) / 2ξ.
                let xi = modes.xi;
                let sinh_part = 0.5 * (grow - decay);
                let signal = (grow * plus + decay * minus) / (2.0 * xi) - i * f * raman_over_beta * sinh_part;
                let stokes = -f * (grow * minus + decay * plus) / (2.0 * xi) - i * raman_over_beta * sinh_part;
                (signal, stokes)
            }
        };
        let out = FieldPair::new(input_signal * signal, input_signal * stokes);
        if !out.is_finite() {
            return Err(EitError::NonFinite("propagated fields"));
        }
        Ok(out)
    }

    /// Signal transfer `E(L, ω)/E(0, ω)` under the seeded boundary condition.
    pub fn signal_transfer(&self, omega_fourier: f64) -> Result<Complex64> {
        Ok(self
            .propagate_analytic(Complex64::new(1.0, 0.0), self.medium.length, omega_fourier)?
            .signal)
    }

    /// Both output fields at `z = L` per unit signal input.
    pub fn output_fields(&self, omega_fourier: f64) -> Result<FieldPair> {
        self.propagate_analytic(Complex64::new(1.0, 0.0), self.medium.length, omega_fourier)
    }
}
