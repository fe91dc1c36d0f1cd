//! Signal and Stokes propagation through a double-Λ medium where
//! electromagnetically induced transparency and four-wave mixing coexist.
//!
//! Frequencies are angular (rad/s) throughout; [`hz`] converts from Hz.
//!
//! ```
//! use eitfwm_core::{hz, DriveParams, MediumParams, Model};
//!
//! let model = Model::new(MediumParams::rb87_cell(98.0), DriveParams::new(hz(9e6), 0.0, 1.0))?;
//! let out = model.output_fields(0.0)?;
//! assert!(out.signal.norm() < 1.0);
//! # Ok::<(), eitfwm_core::EitError>(())
//! ```

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod medium;
pub mod propagation;
pub mod pulse;
pub mod spectra;

pub use error::{EitError, Result};
pub use medium::{
    derive_params, hz, response_at, to_hz, DerivedParams, DriveParams, MediumParams, Model, ResponseComponents,
};
pub use propagation::{ApproxResult, ApproxValidity, FieldPair, FieldTransfer};
pub use pulse::{
    dispersion_curves, measure_delay_gain, propagate_pulse, sigma_delay, DelayGain, DispersionCurves, PulseSpec,
    PulseTrace, SigmaDelay, TimeGrid,
};
pub use spectra::{interference_extrema, sweep_cw, ExtremumKind, InterferenceExtremum, SpectrumResult, SpectrumSweep};
