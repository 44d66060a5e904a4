//! Assembly of the nine Lie-algebra coefficients of the equation of motion
//! ∂F/∂t = Σ aᵢ Ŝᵢ F in the `q, p` representation.
//!
//! The generators are
//!
//! ```text
//! Ŝ1 = p ∂q          Ŝ2 = q ∂p          Ŝ3 = ∂q q − ∂p p
//! Ŝ4 = ∂q q + ∂p p   Ŝ5 = ∂q            Ŝ6 = ∂p
//! Ŝ7 = ∂²/∂q²        Ŝ8 = ∂²/∂p²        Ŝ9 = ∂²/∂q∂p
//! ```
//!
//! a1..a6 multiply the first-order (drift) generators, a7..a9 the diffusion
//! generators. Each coefficient is kept as a closed-form exponential sum so
//! the factorization ODEs can evaluate it exactly at any quadrature node.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{CoefficientFn, QPHamiltonian, QuadraticModel};
use crate::ordering::OrderingParams;

/// A complex-valued function of time stored as a pair of real
/// [`CoefficientFn`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCoeff {
    pub re: CoefficientFn,
    pub im: CoefficientFn,
}

impl ComplexCoeff {
    pub fn zero() -> Self {
        Self {
            re: CoefficientFn::zero(),
            im: CoefficientFn::zero(),
        }
    }

    pub fn real(re: CoefficientFn) -> Self {
        Self {
            re,
            im: CoefficientFn::zero(),
        }
    }

    pub fn imaginary(im: CoefficientFn) -> Self {
        Self {
            re: CoefficientFn::zero(),
            im,
        }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        Complex64::new(self.re.eval(t), self.im.eval(t))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn shift(&self, t0: f64) -> Self {
        Self {
            re: self.re.shift(t0),
            im: self.im.shift(t0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// The nine coefficients a1..a9, indexed 0..9.
#[derive(Debug, Clone, PartialEq)]
pub struct LieCoefficients {
    pub a: [ComplexCoeff; 9],
}

impl LieCoefficients {
    pub fn zero() -> Self {
        Self {
            a: std::array::from_fn(|_| ComplexCoeff::zero()),
        }
    }

    pub fn eval(&self, t: f64) -> [Complex64; 9] {
        std::array::from_fn(|i| self.a[i].eval(t))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: std::array::from_fn(|i| self.a[i].add(&other.a[i])),
        }
    }

    /// Coefficients with the time origin moved to `t0`.
    pub fn shift(&self, t0: f64) -> Self {
        Self {
            a: std::array::from_fn(|i| self.a[i].shift(t0)),
        }
    }

    /// Drop the diffusion coefficients a7..a9, keeping the drift.
    fn drift_only(mut self) -> Self {
        for i in 6..9 {
            self.a[i] = ComplexCoeff::zero();
        }
        self
    }
}

/// Coefficients of the undamped equation of motion for a quadratic
/// Hamiltonian and a Gaussian ordering:
///
/// a1 = −2k2, a2 = 2k1, a3 = −k3, a4 = 0, a5 = −k5, a6 = k4,
/// a7 = 2k3 g2 − 4i k2 g3, a8 = −2k3 g1 + 4i k1 g3, a9 = −4k1 g2 + 4k2 g1.
pub fn hamiltonian_lie_coeffs(h: &QPHamiltonian, g: OrderingParams) -> LieCoefficients {
    let a = [
        ComplexCoeff::real(h.k2.scale(-2.0)),
        ComplexCoeff::real(h.k1.scale(2.0)),
        ComplexCoeff::real(h.k3.scale(-1.0)),
        ComplexCoeff::zero(),
        ComplexCoeff::real(h.k5.scale(-1.0)),
        ComplexCoeff::real(h.k4.clone()),
        ComplexCoeff {
            re: h.k3.scale(2.0 * g.g2),
            im: h.k2.scale(-4.0 * g.g3),
        },
        ComplexCoeff {
            re: h.k3.scale(-2.0 * g.g1),
            im: h.k1.scale(4.0 * g.g3),
        },
        ComplexCoeff::real(h.k1.scale(-4.0 * g.g2).add(&h.k2.scale(4.0 * g.g1))),
    ];
    LieCoefficients { a }
}

/// Additive contribution of reservoir damping plus the ordering corrections
/// of the damped equation, stated in the coherent parameters ω, Ax, Ay:
///
/// γ terms: a4 += γ/2, a7 += (γ/2)(N+1/2) − (γ/2)K, a8 += (γ/2)(N+1/2) + (γ/2)K,
/// a9 += −γL, with M = K + iL;
///
/// ordering corrections:
/// a7 += −2iω g3 − γ g2 + 4i Ax g3 + 4Ay g2,
/// a8 += +2iω g3 − γ g1 + 4i Ax g3 − 4Ay g1,
/// a9 += 2ω(g1−g2) − 4Ax(g1+g2) + 2iγ g3.
///
/// The drift produced by ω, V, A is *not* included here — it is already
/// carried by [`hamiltonian_lie_coeffs`] through the coherent-to-qp map and
/// must not be counted twice. On the γ = 0 overlap this contribution equals
/// the a7..a9 ordering terms of [`hamiltonian_lie_coeffs`] exactly.
pub fn damping_lie_coeffs(model: &QuadraticModel, g: OrderingParams) -> Result<LieCoefficients> {
    let damping = model.damping.as_ref().ok_or_else(|| {
        Error::Representation("damping_lie_coeffs called on a model without damping".into())
    })?;
    let coh = model.coherent()?;
    let gamma = damping.gamma;
    let n = damping.n_thermal;
    let (kk, ll) = (damping.m_squeeze.re, damping.m_squeeze.im);
    let omega = coh.omega;
    let (ax, ay) = (coh.squeeze.re, coh.squeeze.im);

    let mut c = LieCoefficients::zero();
    c.a[3] = ComplexCoeff::real(CoefficientFn::constant(0.5 * gamma));
    c.a[6] = ComplexCoeff {
        re: CoefficientFn::constant(
            0.5 * gamma * (n + 0.5) - 0.5 * gamma * kk - gamma * g.g2 + 4.0 * ay * g.g2,
        ),
        im: CoefficientFn::constant(-2.0 * omega * g.g3 + 4.0 * ax * g.g3),
    };
    c.a[7] = ComplexCoeff {
        re: CoefficientFn::constant(
            0.5 * gamma * (n + 0.5) + 0.5 * gamma * kk - gamma * g.g1 - 4.0 * ay * g.g1,
        ),
        im: CoefficientFn::constant(2.0 * omega * g.g3 + 4.0 * ax * g.g3),
    };
    c.a[8] = ComplexCoeff {
        re: CoefficientFn::constant(
            -gamma * ll + 2.0 * omega * (g.g1 - g.g2) - 4.0 * ax * (g.g1 + g.g2),
        ),
        im: CoefficientFn::constant(2.0 * gamma * g.g3),
    };
    Ok(c)
}

/// Full equation-of-motion coefficients for a model and an ordering.
///
/// Without damping this is [`hamiltonian_lie_coeffs`] alone. With damping,
/// the drift comes from the Hamiltonian path and all second-order terms
/// (ordering corrections and reservoir diffusion) from
/// [`damping_lie_coeffs`]; the two routes agree exactly on their γ = 0
/// overlap.
pub fn assemble(model: &QuadraticModel, g: OrderingParams) -> Result<LieCoefficients> {
    let hamiltonian = hamiltonian_lie_coeffs(&model.hamiltonian, g);
    match model.damping {
        None => Ok(hamiltonian),
        Some(_) => Ok(hamiltonian.drift_only().add(&damping_lie_coeffs(model, g)?)),
    }
}
