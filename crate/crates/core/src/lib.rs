//! Schrödinger equation with a delta potential on superspace `R^{m|2n}`.
//!
//! The crate provides an exact Grassmann algebra with Berezin integration,
//! the super Laplacian and super Dirac distribution, fermionic and radial
//! Fourier transforms, the closed-form bound-state energy as a function of
//! the super-dimension `M = m − 2n`, the explicit `m = 1` wave function, and
//! the spectrum of the purely fermionic (`m = 0`) Hamiltonian.

pub mod bound_state;
pub mod eigen;
pub mod error;
pub mod fermionic;
pub mod fourier;
pub mod grassmann;
pub mod output;
pub mod quadrature;
pub mod special;
pub mod superspace;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use grassmann::{GrassmannElement, PiScaled, Rational, Scalar};
pub use superspace::{ModelParams, RadialExpPoly, SuperWaveFunction1D};
pub use symbolic::Symbolic;
