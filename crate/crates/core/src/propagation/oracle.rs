//! Fixed-step RK4 integration of the coupled propagation equations.
//!
//! Independent of the closed forms: the coefficient matrix is assembled here
//! straight from F and the drive, and no σ/ξ/β quantity is used.

use num_complex::Complex64;

use super::FieldPair;
use crate::error::{EitError, Result};
use crate::medium::Model;

pub const MIN_STEPS: usize = 1000;

type Mat2 = [[Complex64; 2]; 2];

fn mul(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

impl Model {
    /// Coefficient matrix `M` of `∂z [E, E′*]ᵀ = M [E, E′*]ᵀ` at offset ω.
    fn coefficient_matrix(&self, omega_fourier: f64) -> Mat2 {
        let i = Complex64::i();
        let (m, drv, der) = (&self.medium, &self.drive, &self.derived);
        let w = omega_fourier;
        let om2 = drv.omega * drv.omega;
        let f = om2
            + Complex64::new(m.gamma, -(drv.delta - 2.0 * der.delta_s + w))
                * Complex64::new(der.gamma_0, -(drv.delta - der.delta_s + w));
        let pre = i * (m.two_d / 2.0) * m.gamma / (f * m.length);
        let zero = Complex64::new(0.0, 0.0);
        [
            [
                pre * Complex64::new(drv.delta - der.delta_s + w, der.gamma_0),
                pre * (-om2 / m.delta_hf),
            ],
            [pre * (om2 / m.delta_hf), zero],
        ]
    }

    /// Integrates from `z = 0` to `z = L` with `steps` RK4 steps.
    pub fn ode_oracle(&self, input: &FieldPair, omega_fourier: f64, steps: usize) -> Result<FieldPair> {
        if steps < MIN_STEPS {
            return Err(EitError::InvalidParameter {
                name: "steps",
                value: steps as f64,
                reason: "RK4 oracle needs at least 1000 steps",
            });
        }
        let m = self.coefficient_matrix(omega_fourier);
        let h = self.medium.length / steps as f64;
        let mut y = [input.signal, input.stokes_conj];
        for _ in 0..steps {
            let k1 = mul(&m, y);
            let k2 = mul(&m, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
            let k3 = mul(&m, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
            let k4 = mul(&m, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            for j in 0..2 {
                y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            }
        }
        let out = FieldPair::new(y[0], y[1]);
        if !out.is_finite() {
            return Err(EitError::NonFinite("RK4 oracle"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::{hz, DriveParams, MediumParams};

    #[test]
    fn vanishing_depth_is_identity() {
        let medium = MediumParams {
            two_d: 1e-300,
            ..MediumParams::rb87_cell(1.0)
        };
        let m = Model::new(medium, DriveParams::new(hz(9e6), hz(1e5), 1.0)).unwrap();
        let input = FieldPair::seeded(Complex64::new(0.7, 0.1), 1.0);
        let out = m.ode_oracle(&input, hz(5e4), 1000).unwrap();
        assert!(out.relative_error(&input) < 1e-12);
    }

    #[test]
    fn too_few_steps() {
        let m = Model::new(MediumParams::rb87_cell(52.0), DriveParams::new(hz(9e6), 0.0, 1.0)).unwrap();
        let input = FieldPair::seeded(Complex64::new(1.0, 0.0), 1.0);
        assert!(m.ode_oracle(&input, 0.0, 999).is_err());
    }
}
