//! Integration of the coupled ODE system for the factor coefficients of the
//! product propagator U(t, 0) = e^(w1 Ŝ1) e^(w2 Ŝ2) ··· e^(w9 Ŝ9).
//!
//! The factors are ordered left to right by generator index, which places the
//! diffusion factors rightmost (they act first on the initial function). With
//! that ordering the coefficients obey
//!
//! ```text
//! ẇ1 = a1 − 2 a3 w1 − a2 w1²
//! ẇ2 = a2 + 2 a2 w1 w2 + 2 a3 w2
//! ẇ3 = a3 + a2 w1
//! ẇ4 = a4
//! ẇ5 = (a6 w1 + a5) e^(w3 + w4)
//! ẇ6 = (a6 w1 w2 + a5 w2 + a6) e^(w4 − w3)
//! ẇ7 = (a8 w1² + a9 w1 + a7) e^(2 w4 + 2 w3)
//! ẇ8 = [a9 (w2 + w1 w2²) + a8 (1 + 2 w1 w2 + w1² w2²) + a7 w2²] e^(2 w4 − 2 w3)
//! ẇ9 = [a9 (1 + 2 w1 w2) + 2 a8 (w1 + w1² w2) + 2 a7 w2] e^(2 w4)
//! ```
//!
//! with wᵢ(0) = 0. The w1 equation is a Riccati equation and can diverge in
//! finite time (e.g. w1 = −tan t for the harmonic oscillator, pole at π/2);
//! past such a pole this factor ordering ceases to exist and the integrator
//! reports a blow-up instead of continuing. Piecewise propagation of the
//! grid (see the phasegrid module) is the remedy.

use num_complex::Complex64;

use crate::eom::LieCoefficients;
use crate::error::{Error, Result};

/// Factor coefficients w1..w9 at time `t` (`w[0]` is w1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiNormanState {
    pub t: f64,
    pub w: [Complex64; 9],
}

impl WeiNormanState {
    pub fn initial() -> Self {
        Self {
            t: 0.0,
            w: [Complex64::ZERO; 9],
        }
    }

    /// Largest coefficient magnitude, used for blow-up detection.
    pub fn max_norm(&self) -> f64 {
        self.w.iter().map(|w| w.norm()).fold(0.0, f64::max)
    }
}

/// Fixed-step integrator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub blowup_threshold: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            blowup_threshold: 1e8,
            max_steps: 50_000_000,
        }
    }
}

impl IntegratorConfig {
    /// Default step for a run of duration `t_final`: `t_final`/10000,
    /// capped at 1e-3.
    pub fn for_duration(t_final: f64) -> Self {
        let dt = (t_final / 1e4).min(1e-3);
        Self {
            dt: if dt > 0.0 { dt } else { 1e-3 },
            ..Self::default()
        }
    }

    pub fn with_dt(dt: f64) -> Self {
        Self {
            dt,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!(
                "time.dt must be > 0, got {}",
                self.dt
            )));
        }
        Ok(())
    }
}

/// Right-hand sides of the nine factor-coefficient equations.
pub fn rhs(a: &LieCoefficients, w: &[Complex64; 9], t: f64) -> [Complex64; 9] {
    let av = a.eval(t);
    rhs_values(&av, w)
}

fn rhs_values(a: &[Complex64; 9], w: &[Complex64; 9]) -> [Complex64; 9] {
    let (a1, a2, a3) = (a[0], a[1], a[2]);
    let (a4, a5, a6) = (a[3], a[4], a[5]);
    let (a7, a8, a9) = (a[6], a[7], a[8]);
    let (w1, w2, w3, w4) = (w[0], w[1], w[2], w[3]);
    let e34 = (w3 + w4).exp();
    let e4m3 = (w4 - w3).exp();
    let e2 = (2.0 * (w4 + w3)).exp();
    let e2m = (2.0 * (w4 - w3)).exp();
    let e24 = (2.0 * w4).exp();
    let w1w2 = w1 * w2;
    [
        a1 - 2.0 * a3 * w1 - a2 * w1 * w1,
        a2 + 2.0 * a2 * w1w2 + 2.0 * a3 * w2,
        a3 + a2 * w1,
        a4,
        (a6 * w1 + a5) * e34,
        (a6 * w1w2 + a5 * w2 + a6) * e4m3,
        (a8 * w1 * w1 + a9 * w1 + a7) * e2,
        (a9 * (w2 + w1w2 * w2) + a8 * (Complex64::ONE + 2.0 * w1w2 + w1w2 * w1w2) + a7 * w2 * w2)
            * e2m,
        (a9 * (Complex64::ONE + 2.0 * w1w2) + 2.0 * a8 * (w1 + w1 * w1w2) + 2.0 * a7 * w2) * e24,
    ]
}

/// Integrated trajectory, with one state per step from t = 0 to the end
/// time inclusive.
#[derive(Debug, Clone)]
pub struct WnTrajectory {
    pub states: Vec<WeiNormanState>,
}

impl WnTrajectory {
    pub fn last(&self) -> &WeiNormanState {
        self.states
            .last()
            .expect("trajectory holds at least the initial state")
    }
}

/// Integrate the factor-coefficient equations from wᵢ(0) = 0 to `t_final`
/// with classic fixed-step fourth-order Runge–Kutta.
///
/// The final step is shortened to land exactly on `t_final`. Deterministic
/// for a fixed configuration. Fails with [`Error::Blowup`] once any
/// coefficient magnitude exceeds the configured threshold.
pub fn integrate(
    a: &LieCoefficients,
    t_final: f64,
    cfg: &IntegratorConfig,
) -> Result<WnTrajectory> {
    cfg.validate()?;
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::Config(format!("time.T must be >= 0, got {t_final}")));
    }
    let mut states = Vec::with_capacity((t_final / cfg.dt).ceil() as usize + 2);
    let mut state = WeiNormanState::initial();
    states.push(state);
    let mut steps = 0usize;
    while state.t < t_final {
        let dt = cfg.dt.min(t_final - state.t);
        if dt <= f64::EPSILON * t_final {
            break;
        }
        state = rk4_step(a, &state, dt);
        check_blowup(&state, cfg.blowup_threshold)?;
        states.push(state);
        steps += 1;
        if steps >= cfg.max_steps {
            return Err(Error::Config(format!(
                "integration exceeded max_steps = {}",
                cfg.max_steps
            )));
        }
    }
    // Pin the final time exactly.
    if let Some(last) = states.last_mut() {
        if (last.t - t_final).abs() <= 1e-12 * t_final.max(1.0) {
            last.t = t_final;
        }
    }
    Ok(WnTrajectory { states })
}

fn rk4_step(a: &LieCoefficients, state: &WeiNormanState, dt: f64) -> WeiNormanState {
    let t = state.t;
    let y = &state.w;
    let k1 = rhs(a, y, t);
    let k2 = rhs(a, &advance(y, &k1, 0.5 * dt), t + 0.5 * dt);
    let k3 = rhs(a, &advance(y, &k2, 0.5 * dt), t + 0.5 * dt);
    let k4 = rhs(a, &advance(y, &k3, dt), t + dt);
    let w = std::array::from_fn(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    WeiNormanState { t: t + dt, w }
}

fn advance(y: &[Complex64; 9], k: &[Complex64; 9], h: f64) -> [Complex64; 9] {
    std::array::from_fn(|i| y[i] + h * k[i])
}

fn check_blowup(state: &WeiNormanState, threshold: f64) -> Result<()> {
    for (i, w) in state.w.iter().enumerate() {
        let n = w.norm();
        if !n.is_finite() || n > threshold {
            return Err(Error::Blowup {
                index: i + 1,
                t: state.t,
                threshold,
            });
        }
    }
    Ok(())
}
