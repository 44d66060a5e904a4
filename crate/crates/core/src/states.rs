//! Initial quasi-distribution grids for the reference states.
//!
//! Gaussian states (ground, coherent, cat) are sampled from closed forms
//! obtained by analytic Fourier transform of their characteristic functions,
//! so the fixtures stay independent of the numerical transform machinery
//! they are later used to test. The standard-ordered constructor for
//! arbitrary wavefunctions builds F(q, p) = (2π)^(-1/2) e^(iqp) ψ*(q) ψ̃(p).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::hermite_functions;
use crate::ordering::OrderingParams;
use crate::phasegrid::{convert_ordering, GridSpec, PhaseGrid};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const PI: f64 = std::f64::consts::PI;

/// Displacements closer than this to a grid edge trigger a margin warning.
const DISPLACEMENT_MARGIN: f64 = 3.0;

/// Reference initial states. `alpha` is the coherent amplitude A + iB with
/// (q0, p0) = √2 (A, B).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    Ground,
    Coherent { alpha: (f64, f64) },
    Cat { alpha: (f64, f64) },
    Superposition01,
}

impl StateSpec {
    pub fn alpha(&self) -> Option<Complex64> {
        match *self {
            StateSpec::Coherent { alpha } | StateSpec::Cat { alpha } => {
                Some(Complex64::new(alpha.0, alpha.1))
            }
            _ => None,
        }
    }
}

/// One Gaussian characteristic-function term
/// exp(−a u² − b v² + 2i g3 uv + λu + μv), transformed analytically:
/// F(q, p) = amp/(4π √det) · exp[(b c1² + a c2² + 2i g3 c1 c2)/(4 det)]
/// with c1 = λ + ip, c2 = μ − iq, det = ab + g3².
#[derive(Debug, Clone, Copy)]
struct GaussianTerm {
    a: f64,
    b: f64,
    g3: f64,
    lambda: Complex64,
    mu: Complex64,
    amp: Complex64,
}

impl GaussianTerm {
    fn eval(&self, q: f64, p: f64) -> Complex64 {
        let det = self.a * self.b + self.g3 * self.g3;
        let c1 = self.lambda + Complex64::new(0.0, p);
        let c2 = self.mu - Complex64::new(0.0, q);
        let quad =
            self.b * c1 * c1 + self.a * c2 * c2 + Complex64::new(0.0, 2.0 * self.g3) * c1 * c2;
        self.amp / (4.0 * PI * det.sqrt()) * (quad / (4.0 * det)).exp()
    }
}

/// Kernel-adjusted Gaussian widths for ordering `g`; fails when the
/// characteristic function would not decay (g1 or g2 >= 1/4, e.g. the
/// P function of a minimum-uncertainty state, which is distributional).
fn gaussian_widths(g: OrderingParams) -> Result<(f64, f64)> {
    let a = 0.25 - g.g1;
    let b = 0.25 - g.g2;
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::State(format!(
            "characteristic function does not decay for ordering \
             (g1, g2, g3) = ({}, {}, {}); need g1 < 1/4 and g2 < 1/4",
            g.g1, g.g2, g.g3
        )));
    }
    Ok((a, b))
}

fn sample_terms(spec: GridSpec, terms: &[GaussianTerm]) -> PhaseGrid {
    PhaseGrid::from_fn(spec, |q, p| terms.iter().map(|t| t.eval(q, p)).sum())
}

fn warn_on_margin(spec: &GridSpec, q0: f64, p0: f64) {
    if q0 < spec.qmin + DISPLACEMENT_MARGIN
        || q0 > spec.qmax - DISPLACEMENT_MARGIN
        || p0 < spec.pmin + DISPLACEMENT_MARGIN
        || p0 > spec.pmax - DISPLACEMENT_MARGIN
    {
        log::warn!(
            "displacement (q0, p0) = ({q0:.3}, {p0:.3}) is within {DISPLACEMENT_MARGIN} \
             units of the grid edge; tails will be clipped"
        );
    }
}

/// Ground-state distribution for ordering `g`, by analytic transform of
/// f(u, v) · e^(−(u²+v²)/4).
pub fn qdf_ground(g: OrderingParams, spec: GridSpec) -> Result<PhaseGrid> {
    qdf_coherent(g, Complex64::ZERO, spec)
}

/// Coherent-state distribution for ordering `g`: the ground-state Gaussian
/// displaced to (q0, p0) = (√2 Re α, √2 Im α).
pub fn qdf_coherent(g: OrderingParams, alpha: Complex64, spec: GridSpec) -> Result<PhaseGrid> {
    let (a, b) = gaussian_widths(g)?;
    let (q0, p0) = (SQRT_2 * alpha.re, SQRT_2 * alpha.im);
    warn_on_margin(&spec, q0, p0);
    let term = GaussianTerm {
        a,
        b,
        g3: g.g3,
        lambda: Complex64::new(0.0, -p0),
        mu: Complex64::new(0.0, q0),
        amp: Complex64::ONE,
    };
    Ok(sample_terms(spec, &[term]))
}

/// Wigner function of a coherent state.
pub fn wigner_coherent(alpha: Complex64, spec: GridSpec) -> Result<PhaseGrid> {
    qdf_coherent(OrderingParams::wigner(), alpha, spec)
}

/// Even cat state (|α⟩ + |−α⟩), normalized by 1/√(2(1 + e^(−2|α|²))),
/// for any decaying ordering. The four characteristic-function terms (two
/// displaced Gaussians and two interference terms) transform in closed form.
pub fn qdf_cat(g: OrderingParams, alpha: Complex64, spec: GridSpec) -> Result<PhaseGrid> {
    let (a, b) = gaussian_widths(g)?;
    let (big_a, big_b) = (alpha.re, alpha.im);
    let (q0, p0) = (SQRT_2 * big_a, SQRT_2 * big_b);
    warn_on_margin(&spec, q0, p0);
    let norm = 1.0 / (2.0 * (1.0 + (-2.0 * alpha.norm_sqr()).exp()));
    let cross_amp = Complex64::new(norm * (-2.0 * alpha.norm_sqr()).exp(), 0.0);
    let diag_amp = Complex64::new(norm, 0.0);
    let terms = [
        GaussianTerm {
            a,
            b,
            g3: g.g3,
            lambda: Complex64::new(0.0, -p0),
            mu: Complex64::new(0.0, q0),
            amp: diag_amp,
        },
        GaussianTerm {
            a,
            b,
            g3: g.g3,
            lambda: Complex64::new(0.0, p0),
            mu: Complex64::new(0.0, -q0),
            amp: diag_amp,
        },
        GaussianTerm {
            a,
            b,
            g3: g.g3,
            lambda: Complex64::new(-SQRT_2 * big_a, 0.0),
            mu: Complex64::new(-SQRT_2 * big_b, 0.0),
            amp: cross_amp,
        },
        GaussianTerm {
            a,
            b,
            g3: g.g3,
            lambda: Complex64::new(SQRT_2 * big_a, 0.0),
            mu: Complex64::new(SQRT_2 * big_b, 0.0),
            amp: cross_amp,
        },
    ];
    Ok(sample_terms(spec, &terms))
}

/// Standard-ordered distribution from position and momentum wavefunction
/// samples on the grid axes: F(q_j, p_k) = (2π)^(-1/2) e^(i q_j p_k)
/// ψ*(q_j) ψ̃(p_k). `psi_q` must hold nq samples and `psi_p` np samples.
pub fn standard_from_wavefunctions(
    psi_q: &[Complex64],
    psi_p: &[Complex64],
    spec: GridSpec,
) -> Result<PhaseGrid> {
    if psi_q.len() != spec.nq || psi_p.len() != spec.np {
        return Err(Error::Grid(format!(
            "wavefunction sample counts ({}, {}) do not match the grid ({}, {})",
            psi_q.len(),
            psi_p.len(),
            spec.nq,
            spec.np
        )));
    }
    let scale = 1.0 / (2.0 * PI).sqrt();
    let mut values = Vec::with_capacity(spec.nq * spec.np);
    for (j, psi) in psi_q.iter().enumerate() {
        let q = spec.q_at(j);
        let psi_conj = psi.conj();
        for (k, psi_t) in psi_p.iter().enumerate() {
            let p = spec.p_at(k);
            values.push(scale * Complex64::new(0.0, q * p).exp() * psi_conj * psi_t);
        }
    }
    Ok(PhaseGrid { spec, values })
}

/// Standard-ordered distribution of a position wavefunction given as a
/// closure; the momentum wavefunction ψ̃(p) = (2π)^(-1/2) ∫ ψ(q) e^(−iqp) dq
/// is computed by quadrature on a 4x oversampled axis.
pub fn standard_from_position_wavefunction(
    psi: impl Fn(f64) -> Complex64,
    spec: GridSpec,
) -> Result<PhaseGrid> {
    let psi_q: Vec<Complex64> = (0..spec.nq).map(|j| psi(spec.q_at(j))).collect();
    let fine = 4 * spec.nq;
    let dq_fine = (spec.qmax - spec.qmin) / fine as f64;
    let fine_samples: Vec<(f64, Complex64)> = (0..fine)
        .map(|l| {
            let q = spec.qmin + l as f64 * dq_fine;
            (q, psi(q))
        })
        .collect();
    let scale = dq_fine / (2.0 * PI).sqrt();
    let psi_p: Vec<Complex64> = (0..spec.np)
        .map(|k| {
            let p = spec.p_at(k);
            fine_samples
                .iter()
                .map(|&(q, v)| v * Complex64::new(0.0, -q * p).exp())
                .sum::<Complex64>()
                * scale
        })
        .collect();
    standard_from_wavefunctions(&psi_q, &psi_p, spec)
}

/// Standard-ordered distribution of (|0⟩ + |1⟩)/√2 from exact oscillator
/// eigenfunction samples. The momentum wavefunction uses the eigenfunction
/// transform phases (−i)^n.
pub fn standard_superposition01(spec: GridSpec) -> PhaseGrid {
    let psi_q: Vec<Complex64> = (0..spec.nq)
        .map(|j| {
            let phi = hermite_functions(1, spec.q_at(j));
            Complex64::new((phi[0] + phi[1]) / SQRT_2, 0.0)
        })
        .collect();
    let psi_p: Vec<Complex64> = (0..spec.np)
        .map(|k| {
            let phi = hermite_functions(1, spec.p_at(k));
            (Complex64::new(phi[0], 0.0) + Complex64::new(0.0, -1.0) * phi[1]) / SQRT_2
        })
        .collect();
    standard_from_wavefunctions(&psi_q, &psi_p, spec).expect("sample counts match by construction")
}

/// Build the initial grid for a state in ordering `g`. Gaussian states use
/// their closed forms directly; the 0/1 superposition is constructed in
/// standard ordering and converted when another ordering is requested.
pub fn initial_grid(state: &StateSpec, g: OrderingParams, spec: GridSpec) -> Result<PhaseGrid> {
    match *state {
        StateSpec::Ground => qdf_ground(g, spec),
        StateSpec::Coherent { .. } => qdf_coherent(g, state.alpha().unwrap(), spec),
        StateSpec::Cat { .. } => qdf_cat(g, state.alpha().unwrap(), spec),
        StateSpec::Superposition01 => {
            let standard = standard_superposition01(spec);
            if g == OrderingParams::standard() {
                Ok(standard)
            } else {
                convert_ordering(&standard, OrderingParams::standard(), g)
            }
        }
    }
}
