//! Propagation of the Gaussian class of quasi-distribution functions
//! (Wigner, P, Q, standard, Kirkwood–Rihaczek, s-ordered) under quadratic
//! Hamiltonians with optional reservoir damping.
//!
//! The equation of motion ∂F/∂t = Σ aᵢ Ŝᵢ F closes on a nine-generator Lie
//! algebra, so the propagator factors into a product of single-generator
//! exponentials whose coefficients obey a closed ODE system. Propagation of
//! a sampled distribution then reduces to one spectral multiplication (the
//! diffusion factors) and one affine resampling (the drift factors).
//!
//! Modules:
//! - [`ordering`]: the Gaussian ordering kernel and its parameterizations;
//! - [`model`]: Hamiltonian and damping declarations;
//! - [`eom`]: assembly of the equation-of-motion coefficients;
//! - [`weinorman`]: the factor-coefficient ODE integrator;
//! - [`phasegrid`]: grids, transforms, and the factored propagator;
//! - [`states`]: initial-state constructors;
//! - [`oracle`]: truncated-Fock evolution and closed-form solutions;
//! - [`gridfile`]: the on-disk grid format.

pub mod eom;
pub mod error;
pub mod gridfile;
pub mod hermite;
mod interp;
pub mod model;
pub mod oracle;
pub mod ordering;
pub mod phasegrid;
pub mod states;
pub mod weinorman;

pub use error::{Error, Result};
