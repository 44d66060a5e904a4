//! Physical problem declaration: quadratic Hamiltonians and reservoir damping.
//!
//! A Hamiltonian is given either in `q, p` form,
//!
//! ```text
//! H = k1 q̂² + k2 p̂² + k3 (q̂p̂ + p̂q̂)/2 + k4 q̂ + k5 p̂,
//! ```
//!
//! with each coefficient a sum of real exponentials in time, or in coherent
//! form `H = ω(â†â + 1/2) + (Vâ† + V*â) + (Ââ†â† + A*ââ)` with constant ω, V,
//! A. Units are fixed to ħ = m = 1 throughout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// A real function of time of the form Σ amplitude · e^(rate · t).
///
/// Serialized as a list of `[amplitude, rate]` pairs. The closed form keeps
/// the equation-of-motion coefficients exactly evaluable at arbitrary
/// integration nodes; no tabulation is involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoefficientFn {
    pub terms: Vec<(f64, f64)>,
}

impl CoefficientFn {
    pub fn new(terms: Vec<(f64, f64)>) -> Self {
        Self { terms }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        if c == 0.0 {
            Self::zero()
        } else {
            Self {
                terms: vec![(c, 0.0)],
            }
        }
    }

    /// Single term `amplitude · e^(rate t)`.
    pub fn exponential(amplitude: f64, rate: f64) -> Self {
        Self {
            terms: vec![(amplitude, rate)],
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|&(a, r)| a * (r * t).exp()).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(a, r)| (a * factor, r)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self { terms }
    }

    /// The function t ↦ self(t0 + t), still a sum of exponentials.
    pub fn shift(&self, t0: f64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|&(a, r)| (a * (r * t0).exp(), r))
                .collect(),
        }
    }

    /// `Some(value)` if the function is constant in time.
    pub fn as_constant(&self) -> Option<f64> {
        if self.terms.iter().all(|&(a, r)| r == 0.0 || a == 0.0) {
            Some(self.terms.iter().map(|&(a, _)| a).sum())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|&(a, _)| a == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.terms
            .iter()
            .all(|&(a, r)| a.is_finite() && r.is_finite())
    }
}

/// Evaluate a [`CoefficientFn`] at time `t`.
pub fn eval_coefficient(c: &CoefficientFn, t: f64) -> f64 {
    c.eval(t)
}

/// Quadratic Hamiltonian in `q, p` form. All five coefficients are
/// real-valued functions of time (Hermiticity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QPHamiltonian {
    pub k1: CoefficientFn,
    pub k2: CoefficientFn,
    pub k3: CoefficientFn,
    pub k4: CoefficientFn,
    pub k5: CoefficientFn,
}

impl QPHamiltonian {
    pub fn from_constants(k: [f64; 5]) -> Self {
        Self {
            k1: CoefficientFn::constant(k[0]),
            k2: CoefficientFn::constant(k[1]),
            k3: CoefficientFn::constant(k[2]),
            k4: CoefficientFn::constant(k[3]),
            k5: CoefficientFn::constant(k[4]),
        }
    }

    /// H = p̂²/2.
    pub fn free_particle() -> Self {
        Self::from_constants([0.0, 0.5, 0.0, 0.0, 0.0])
    }

    /// H = q̂²/2 + p̂²/2.
    pub fn harmonic_oscillator() -> Self {
        Self::from_constants([0.5, 0.5, 0.0, 0.0, 0.0])
    }

    /// Oscillator with exponentially varying mass and a scaling term:
    /// H = ε e^(−2δt) q̂² + ε e^(2δt) p̂² + (δ/2)(q̂p̂ + p̂q̂).
    pub fn exponential_mass(epsilon: f64, delta: f64) -> Self {
        Self {
            k1: CoefficientFn::exponential(epsilon, -2.0 * delta),
            k2: CoefficientFn::exponential(epsilon, 2.0 * delta),
            k3: CoefficientFn::constant(delta),
            k4: CoefficientFn::zero(),
            k5: CoefficientFn::zero(),
        }
    }

    pub fn eval(&self, t: f64) -> [f64; 5] {
        [
            self.k1.eval(t),
            self.k2.eval(t),
            self.k3.eval(t),
            self.k4.eval(t),
            self.k5.eval(t),
        ]
    }

    /// Shift the time origin of every coefficient.
    pub fn shift(&self, t0: f64) -> Self {
        Self {
            k1: self.k1.shift(t0),
            k2: self.k2.shift(t0),
            k3: self.k3.shift(t0),
            k4: self.k4.shift(t0),
            k5: self.k5.shift(t0),
        }
    }
}

/// Quadratic Hamiltonian in coherent form:
/// H = ω(â†â + 1/2) + (Vâ† + V*â) + (Ââ†â† + A*ââ).
///
/// `drive` is V = R + iU and `squeeze` is A = Ax + iAy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentHamiltonian {
    pub omega: f64,
    pub drive: Complex64,
    pub squeeze: Complex64,
}

impl CoherentHamiltonian {
    pub fn new(omega: f64, drive: Complex64, squeeze: Complex64) -> Self {
        Self {
            omega,
            drive,
            squeeze,
        }
    }

    pub fn oscillator(omega: f64) -> Self {
        Self::new(omega, Complex64::ZERO, Complex64::ZERO)
    }
}

/// Reservoir parameters of the weak-coupling master equation: decay rate γ,
/// thermal occupation N, and squeezed correlation M = K + iL.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingSpec {
    pub gamma: f64,
    pub n_thermal: f64,
    pub m_squeeze: Complex64,
}

impl DampingSpec {
    pub fn new(gamma: f64, n_thermal: f64, m_squeeze: Complex64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::Config(format!(
                "damping.gamma must be >= 0, got {gamma}"
            )));
        }
        if !(n_thermal.is_finite() && n_thermal >= 0.0) {
            return Err(Error::Config(format!(
                "damping.N must be >= 0, got {n_thermal}"
            )));
        }
        let spec = Self {
            gamma,
            n_thermal,
            m_squeeze,
        };
        // |M|² <= N(N+1) is the physical reservoir bound; values outside it
        // are still accepted so the equations can be exercised unrestricted.
        if !spec.is_physical() {
            log::warn!(
                "damping spec violates |M|^2 <= N(N+1): |M|^2 = {:.6e}, N(N+1) = {:.6e}",
                m_squeeze.norm_sqr(),
                n_thermal * (n_thermal + 1.0)
            );
        }
        Ok(spec)
    }

    pub fn is_physical(&self) -> bool {
        self.m_squeeze.norm_sqr() <= self.n_thermal * (self.n_thermal + 1.0) + 1e-12
    }
}

/// A full problem statement: Hamiltonian plus optional damping.
///
/// The coherent form is retained when the model was built from one, because
/// damping corrections are assembled in ω, Ax, Ay form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModel {
    pub hamiltonian: QPHamiltonian,
    pub coherent_part: Option<CoherentHamiltonian>,
    pub damping: Option<DampingSpec>,
}

impl QuadraticModel {
    pub fn from_qp(hamiltonian: QPHamiltonian) -> Self {
        Self {
            hamiltonian,
            coherent_part: None,
            damping: None,
        }
    }

    pub fn from_coherent(h: CoherentHamiltonian) -> Self {
        Self {
            hamiltonian: coherent_to_qp(&h),
            coherent_part: Some(h),
            damping: None,
        }
    }

    pub fn with_damping(mut self, damping: DampingSpec) -> Result<Self> {
        // Damping assembly needs the coherent form; fail fast if it cannot
        // exist for this Hamiltonian.
        self.damping = Some(damping);
        self.coherent()?;
        Ok(self)
    }

    /// The coherent form: either as supplied, or derived from constant
    /// quadratic coefficients.
    pub fn coherent(&self) -> Result<CoherentHamiltonian> {
        match self.coherent_part {
            Some(h) => Ok(h),
            None => qp_to_coherent(&self.hamiltonian),
        }
    }
}

/// Expand the coherent-form Hamiltonian into `q, p` coefficients.
///
/// With â = (q̂ + ip̂)/√2:
/// ω(â†â + 1/2) = ω(q̂² + p̂²)/2,
/// Vâ† + V*â = √2 (R q̂ + U p̂),
/// Ââ†â† + A*ââ = Ax(q̂² − p̂²) + Ay(q̂p̂ + p̂q̂),
/// so k1 = ω/2 + Ax, k2 = ω/2 − Ax, k3 = 2Ay, k4 = √2 R, k5 = √2 U.
pub fn coherent_to_qp(h: &CoherentHamiltonian) -> QPHamiltonian {
    let (ax, ay) = (h.squeeze.re, h.squeeze.im);
    let (r, u) = (h.drive.re, h.drive.im);
    QPHamiltonian::from_constants([
        0.5 * h.omega + ax,
        0.5 * h.omega - ax,
        2.0 * ay,
        SQRT_2 * r,
        SQRT_2 * u,
    ])
}

/// Recover the coherent form from constant `q, p` coefficients.
/// Exact inverse of [`coherent_to_qp`]. Errors if k1..k3 vary in time.
pub fn qp_to_coherent(h: &QPHamiltonian) -> Result<CoherentHamiltonian> {
    let grab = |c: &CoefficientFn, name: &str| {
        c.as_constant().ok_or_else(|| {
            Error::Representation(format!(
                "coherent form requires a constant {name}; damping corrections are \
                 stated for constant quadratic coefficients"
            ))
        })
    };
    let k1 = grab(&h.k1, "k1")?;
    let k2 = grab(&h.k2, "k2")?;
    let k3 = grab(&h.k3, "k3")?;
    // k4, k5 may stay time dependent in the model; the coherent drive is
    // only consumed by code paths that never look at it when it varies.
    let k4 = h.k4.as_constant().unwrap_or(f64::NAN);
    let k5 = h.k5.as_constant().unwrap_or(f64::NAN);
    Ok(CoherentHamiltonian {
        omega: k1 + k2,
        squeeze: Complex64::new(0.5 * (k1 - k2), 0.5 * k3),
        drive: Complex64::new(k4 / SQRT_2, k5 / SQRT_2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn coefficient_eval() {
        let c = CoefficientFn::exponential(0.3, 0.2);
        assert_abs_diff_eq!(eval_coefficient(&c, 0.0), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(
            eval_coefficient(&c, 1.0),
            0.3 * 0.2f64.exp(),
            epsilon = 1e-15
        );
        let one = CoefficientFn::constant(1.0);
        assert_eq!(eval_coefficient(&one, -17.0), 1.0);
        assert_eq!(eval_coefficient(&one, 42.0), 1.0);
    }

    #[test]
    fn coefficient_shift() {
        let c = CoefficientFn::new(vec![(0.3, 0.2), (-1.1, -0.7)]);
        let s = c.shift(0.9);
        for &t in &[0.0, 0.4, 2.0] {
            assert_abs_diff_eq!(s.eval(t), c.eval(0.9 + t), epsilon = 1e-14);
        }
    }

    #[test]
    fn oscillator_map() {
        let h = coherent_to_qp(&CoherentHamiltonian::oscillator(1.0));
        assert_eq!(h.eval(0.0), [0.5, 0.5, 0.0, 0.0, 0.0]);
        let zero = coherent_to_qp(&CoherentHamiltonian::oscillator(0.0));
        assert_eq!(zero.eval(0.0), [0.0; 5]);
    }

    #[test]
    fn squeeze_map() {
        // Real squeeze amplitude reweights q̂² against p̂².
        let h = coherent_to_qp(&CoherentHamiltonian::new(
            1.0,
            Complex64::ZERO,
            Complex64::new(0.3, 0.0),
        ));
        let k = h.eval(0.0);
        assert_abs_diff_eq!(k[0], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(k[1], 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(k[2], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_map() {
        let h = QPHamiltonian::from_constants([0.8, 0.2, 0.0, 0.0, 0.0]);
        let c = qp_to_coherent(&h).unwrap();
        assert_abs_diff_eq!(c.omega, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.squeeze.re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(c.squeeze.im, 0.0, epsilon = 1e-15);

        let h = QPHamiltonian::from_constants([0.5, 0.5, 0.0, SQRT_2, 0.0]);
        let c = qp_to_coherent(&h).unwrap();
        assert_abs_diff_eq!(c.omega, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.drive.re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.drive.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn time_dependent_rejected() {
        let h = QPHamiltonian::exponential_mass(0.3, 0.1);
        assert!(matches!(qp_to_coherent(&h), Err(Error::Representation(_))));
    }

    #[test]
    fn exponential_mass_coefficients() {
        let h = QPHamiltonian::exponential_mass(0.3, 0.1);
        for &t in &[0.0, 0.7, 1.3] {
            let k = h.eval(t);
            assert_abs_diff_eq!(k[0], 0.3 * (-0.2 * t).exp(), epsilon = 1e-15);
            assert_abs_diff_eq!(k[1], 0.3 * (0.2 * t).exp(), epsilon = 1e-15);
            assert_abs_diff_eq!(k[2], 0.1, epsilon = 1e-15);
        }
    }

    #[test]
    fn unphysical_damping_is_warning_not_error() {
        // |M|² > N(N+1) is accepted.
        let d = DampingSpec::new(0.4, 0.0, Complex64::new(1.0, 0.0)).unwrap();
        assert!(!d.is_physical());
        assert!(DampingSpec::new(-0.1, 0.0, Complex64::ZERO).is_err());
        assert!(DampingSpec::new(0.1, -2.0, Complex64::ZERO).is_err());
    }

    proptest! {
        #[test]
        fn coherent_round_trip(
            omega in -3.0..3.0f64,
            r in -2.0..2.0f64, u in -2.0..2.0f64,
            ax in -1.0..1.0f64, ay in -1.0..1.0f64,
        ) {
            let h = CoherentHamiltonian::new(
                omega,
                Complex64::new(r, u),
                Complex64::new(ax, ay),
            );
            let back = qp_to_coherent(&coherent_to_qp(&h)).unwrap();
            prop_assert!((back.omega - h.omega).abs() < 1e-13);
            prop_assert!((back.drive - h.drive).norm() < 1e-13);
            prop_assert!((back.squeeze - h.squeeze).norm() < 1e-13);
        }
    }
}
