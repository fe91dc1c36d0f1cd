//! Physical parameters of the vapor cell and drive, and the scalar response
//! functions `F`, `beta`, `sigma`, `xi` every propagation result is built on.
//!
//! All frequencies and rates are angular (rad/s). Use [`hz`] to convert
//! ordinary frequencies.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{check, EitError, Result};

/// Converts an ordinary frequency in Hz to an angular frequency in rad/s.
#[inline]
pub fn hz(f: f64) -> f64 {
    2.0 * PI * f
}

/// Converts rad/s back to Hz.
#[inline]
pub fn to_hz(w: f64) -> f64 {
    w / (2.0 * PI)
}

/// Default ratio |Ω′|²/|Ω|² for the Rb D1 transitions used in the experiment.
pub const DEFAULT_CG_RATIO: f64 = 3.0;

/// Vapor cell constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    /// Optical depth 2d (intensity attenuation exponent without EIT).
    pub two_d: f64,
    /// Optical polarization decay rate γ.
    pub gamma: f64,
    /// Ground-state coherence decay rate γ_sg.
    pub gamma_sg: f64,
    /// Hyperfine splitting Δ_hf.
    pub delta_hf: f64,
    /// Cell length in meters.
    pub length: f64,
    /// |Ω′|²/|Ω|².
    pub cg_ratio: f64,
}

impl MediumParams {
    /// Hot 87Rb cell with 30 Torr Ne: 2γ = 2π·290 MHz, Δ_hf = 2π·6.835 GHz,
    /// L = 75 mm, 1/(2γ_sg) = 500 μs.
    pub fn rb87_cell(two_d: f64) -> Self {
        Self {
            two_d,
            gamma: hz(145e6),
            gamma_sg: 1.0e3,
            delta_hf: hz(6.835e9),
            length: 0.075,
            cg_ratio: DEFAULT_CG_RATIO,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(self.two_d > 0.0, "two_d", self.two_d, "must be > 0")?;
        check(self.gamma > 0.0, "gamma", self.gamma, "must be > 0")?;
        check(self.gamma_sg >= 0.0, "gamma_sg", self.gamma_sg, "must be >= 0")?;
        if self.delta_hf == 0.0 {
            return Err(EitError::Domain(
                "delta_hf = 0: light shift and Raman detuning are undefined".into(),
            ));
        }
        check(self.delta_hf > 0.0, "delta_hf", self.delta_hf, "must be > 0")?;
        check(self.length > 0.0, "length", self.length, "must be > 0")?;
        check(self.cg_ratio > 0.0, "cg_ratio", self.cg_ratio, "must be > 0")?;
        Ok(())
    }

    /// d = 2d / 2.
    #[inline]
    pub fn d(&self) -> f64 {
        0.5 * self.two_d
    }
}

/// Control field and seeding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    /// Control Rabi frequency Ω (real, z-independent).
    pub omega: f64,
    /// Two-photon detuning δ.
    pub delta: f64,
    /// Stokes seed amplitude fraction f; the Stokes input is `-f` times the signal.
    pub seed_fraction: f64,
}

impl DriveParams {
    pub fn new(omega: f64, delta: f64, seed_fraction: f64) -> Self {
        Self {
            omega,
            delta,
            seed_fraction,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(self.omega > 0.0, "omega", self.omega, "must be > 0")?;
        check(self.delta.is_finite(), "delta", self.delta, "must be finite")?;
        check(
            (0.0..=1.0).contains(&self.seed_fraction),
            "seed_fraction",
            self.seed_fraction,
            "must lie in [0, 1]",
        )
    }

    pub fn with_delta(self, delta: f64) -> Self {
        Self { delta, ..self }
    }

    pub fn with_seed_fraction(self, seed_fraction: f64) -> Self {
        Self { seed_fraction, ..self }
    }
}

/// Quantities that follow from the medium and control field alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Light shift δ_s = cg_ratio·Ω²/Δ_hf.
    pub delta_s: f64,
    /// Raman detuning Δ_R = −Ω²/Δ_hf.
    pub delta_r: f64,
    /// Effective ground-state decay γ₀ = γ_sg + γ·cg_ratio·Ω²/Δ_hf².
    pub gamma_0: f64,
    /// Full single-Λ EIT group delay dγ/Ω² in seconds.
    pub eit_delay: f64,
    /// v_g/L = Ω²/(dγ) in 1/s.
    pub vg_over_l: f64,
}

/// Computes [`DerivedParams`] from validated inputs.
pub fn derive_params(medium: &MediumParams, drive: &DriveParams) -> Result<DerivedParams> {
    medium.validate()?;
    drive.validate()?;
    Ok(derive_unchecked(medium, drive))
}

fn derive_unchecked(medium: &MediumParams, drive: &DriveParams) -> DerivedParams {
    let om2 = drive.omega * drive.omega;
    let delta_r = -om2 / medium.delta_hf;
    let d_gamma = medium.d() * medium.gamma;
    DerivedParams {
        delta_s: -medium.cg_ratio * delta_r,
        delta_r,
        gamma_0: medium.gamma_sg + medium.gamma * medium.cg_ratio * om2 / (medium.delta_hf * medium.delta_hf),
        eit_delay: d_gamma / om2,
        vg_over_l: om2 / d_gamma,
    }
}

/// F, β, σ, ξ at one Fourier offset ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseComponents {
    /// F(ω) = Ω² + [γ − i(δ−2δ_s+ω)][γ₀ − i(δ−δ_s+ω)].
    pub f_denom: Complex64,
    /// β(ω), principal square-root branch.
    pub beta: Complex64,
    /// σ(ω) in 1/m.
    pub sigma: Complex64,
    /// ξ(ω) in 1/m.
    pub xi: Complex64,
    /// Common prefactor k = dγ/(F L), 1/(m·s⁻¹).
    pub coupling: Complex64,
}

/// Medium, drive and derived quantities bundled together.
///
/// The derived block is stored rather than recomputed so callers can study
/// the response with an adjusted γ₀ or δ_s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub medium: MediumParams,
    pub drive: DriveParams,
    pub derived: DerivedParams,
}

impl Model {
    pub fn new(medium: MediumParams, drive: DriveParams) -> Result<Self> {
        let derived = derive_params(&medium, &drive)?;
        Ok(Self { medium, drive, derived })
    }

    /// Uses `derived` as given. Inputs are still validated.
    pub fn with_derived(medium: MediumParams, drive: DriveParams, derived: DerivedParams) -> Result<Self> {
        medium.validate()?;
        drive.validate()?;
        Ok(Self { medium, drive, derived })
    }

    /// Same model at another two-photon detuning. Derived quantities do not
    /// depend on δ, so they are carried over unchanged.
    pub fn at_delta(&self, delta: f64) -> Self {
        Self {
            drive: self.drive.with_delta(delta),
            ..*self
        }
    }

    pub fn with_seed_fraction(&self, f: f64) -> Result<Self> {
        let drive = self.drive.with_seed_fraction(f);
        drive.validate()?;
        Ok(Self { drive, ..*self })
    }

    /// Light-shifted detuning δ̃ = δ − δ_s.
    #[inline]
    pub fn delta_tilde(&self) -> f64 {
        self.drive.delta - self.derived.delta_s
    }

    /// Width Ω²/(√d γ) of the EIT transparency window.
    pub fn eit_width(&self) -> f64 {
        self.drive.omega * self.drive.omega / (self.medium.d().sqrt() * self.medium.gamma)
    }

    pub fn response_at(&self, omega_fourier: f64) -> Result<ResponseComponents> {
        response_at(&self.medium, &self.drive, &self.derived, omega_fourier)
    }
}

/// Evaluates the response functions at Fourier offset `omega_fourier`.
pub fn response_at(
    medium: &MediumParams,
    drive: &DriveParams,
    derived: &DerivedParams,
    omega_fourier: f64,
) -> Result<ResponseComponents> {
    let i = Complex64::i();
    let w = omega_fourier;
    let detuning = drive.delta - derived.delta_s + w;
    let optical = Complex64::new(medium.gamma, -(drive.delta - 2.0 * derived.delta_s + w));
    let ground = Complex64::new(derived.gamma_0, -detuning);

    let f_denom = drive.omega * drive.omega + optical * ground;
    if !(f_denom.norm() > 0.0) || !f_denom.is_finite() {
        return Err(EitError::Domain(format!(
            "F(ω) = {f_denom} is zero or non-finite at ω = {w}"
        )));
    }

    let beta = (ground * ground + 4.0 * derived.delta_r * derived.delta_r).sqrt();
    let coupling = medium.d() * medium.gamma / (f_denom * medium.length);
    let sigma = 0.5 * coupling * (detuning + i * derived.gamma_0);
    let xi = 0.5 * coupling * beta;

    Ok(ResponseComponents {
        f_denom,
        beta,
        sigma,
        xi,
        coupling,
    })
}
