//! Exact quasi-exactly-solvable spectrum of the sextic (doubly anharmonic)
//! oscillator V(r) = ωr² + λr⁴ + ηr⁶ in an elastic medium with a screw
//! dislocation, and an independent finite-difference check of every exact
//! energy.
//!
//! The dislocation enters only through the effective angular number
//! γ = l − χk. Polynomial (biconfluent Heun) solutions exist when λ takes the
//! value fixed by [`quantization::lambda_constraint`]; the allowed energies
//! are the roots of the last non-vanishing Heun coefficient.
//!
//! ```
//! use qes_core::{ground_energies, Channel, PhysicalConfig};
//!
//! let cfg = PhysicalConfig::new(1.0, 0.0, 0.0, 0.5, 0.0).unwrap();
//! let sol = ground_energies(&cfg, &Channel::new(0, 0.0, 1).unwrap()).unwrap();
//! assert!((sol.energy_roots[0] - 2.192752634).abs() < 1e-8);
//! ```

// Guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod heun;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod quantization;
pub mod tridiag;
pub mod verify;
pub mod wavefunction;

pub use error::{Error, Result};
pub use heun::{coefficients, HeunCoefficientSequence, HeunParams};
pub use oracle::{convergence_study, default_r_max, spectrum, OracleSpectrum, RadialGrid};
pub use params::{effective_gamma, r_of_xi, to_dimensionless, xi_of_r, Channel, DimensionlessSet, PhysicalConfig};
pub use quantization::{
    closed_form, degeneracy_report, energy_roots_general, ground_energies, lambda_constraint, Branch, ExactSolution,
};
pub use verify::{verify, VerificationReport, VerifySettings};
pub use wavefunction::{assemble, BoundState, SampleRow};
