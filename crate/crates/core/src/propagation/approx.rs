//! Closed-form CW output amplitudes in the regime `2|Δ_R| ≪ |δ̃| ≪ Ω`,
//! `|δ̃| ≫ γ₀`, where `β ≈ iδ̃` and
//! `2iσL ≈ iδ̃/(Ω²/dγ) − δ̃²/[Ω²/(√d γ)]²`.
//!
//! In that regime `E(L) ≈ E₀[e − f c (1 − e)]` and
//! `E′*(L) ≈ −E₀[f + c (1 − e)]` with `e = e^{2iσL}`, `c = Ω²/(Δ_hf δ̃)`.

use num_complex::Complex64;

use super::FieldPair;
use crate::error::{EitError, Result};
use crate::medium::Model;

/// Ratio at or beyond which `a ≫ b` is considered to hold.
pub const STRONG_INEQUALITY: f64 = 3.0;

/// Ratios that decide whether the approximation applies at a given δ̃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxValidity {
    /// |δ̃| / (2|Δ_R|), should be ≫ 1.
    pub raman_ratio: f64,
    /// |δ̃| / Ω, should be ≪ 1.
    pub rabi_ratio: f64,
    /// |δ̃| / γ₀, should be ≫ 1.
    pub decay_ratio: f64,
    /// |δ̃| / (Ω²/(√d γ)); the quadratic phase expansion needs this ≲ 1.
    pub width_ratio: f64,
}

impl ApproxValidity {
    pub fn at(model: &Model, delta_tilde: f64) -> Self {
        let a = delta_tilde.abs();
        Self {
            raman_ratio: a / (2.0 * model.derived.delta_r.abs()),
            rabi_ratio: a / model.drive.omega,
            decay_ratio: a / model.derived.gamma_0,
            width_ratio: a / model.eit_width(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.raman_ratio >= STRONG_INEQUALITY
            && self.rabi_ratio <= 1.0 / STRONG_INEQUALITY
            && self.decay_ratio >= STRONG_INEQUALITY
            && self.width_ratio <= 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxResult {
    pub fields: FieldPair,
    pub validity: ApproxValidity,
}

impl Model {
    /// Approximate CW outputs at light-shifted detuning `delta_tilde`.
    ///
    /// Only the magnitudes are meaningful; phases carry the approximation's
    /// dropped terms.
    pub fn propagate_approx(&self, input_signal: Complex64, delta_tilde: f64) -> Result<ApproxResult> {
        if delta_tilde == 0.0 {
            return Err(EitError::Domain(
                "approximate solution has a pole at delta_tilde = 0".into(),
            ));
        }
        let om2 = self.drive.omega * self.drive.omega;
        let d = self.medium.d();
        let gamma = self.medium.gamma;
        let phase = Complex64::new(
            -delta_tilde * delta_tilde * d * gamma * gamma / (om2 * om2),
            delta_tilde * d * gamma / om2,
        );
        let e = phase.exp();
        let c = om2 / (self.medium.delta_hf * delta_tilde);
        let f = self.drive.seed_fraction;
        let mixing = c * (1.0 - e);
        let fields = FieldPair::new(input_signal * (e - f * mixing), -input_signal * (f + mixing));
        Ok(ApproxResult {
            fields,
            validity: ApproxValidity::at(self, delta_tilde),
        })
    }
}
