//! Grid representation of quasi-distribution functions and application of
//! the factored propagator.
//!
//! The transform pair is fixed as
//!
//! ```text
//! F(q, p) = (1/4π²) ∬ χ(u, v) e^(−ivq + iup) du dv
//! χ(u, v) =        ∬ F(q, p) e^(+ivq − iup) dq dp
//! ```
//!
//! so that under the transform ∂/∂q ↦ −iv and ∂/∂p ↦ +iu. The diffusion
//! factors e^(w7 ∂²q) e^(w8 ∂²p) e^(w9 ∂²qp) therefore act on χ as the
//! pointwise multiplier exp(−w7 v² − w8 u² + w9 uv); they commute, so one
//! multiplication applies all three. The first-order factors act as a single
//! composed affine coordinate map with prefactor e^(2 w4), resampled in one
//! bicubic interpolation pass.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::eom::assemble;
use crate::error::{Error, Result};
use crate::interp::Bicubic;
use crate::model::QuadraticModel;
use crate::ordering::OrderingParams;
use crate::weinorman::{integrate, IntegratorConfig, WeiNormanState};

/// Default cap on spectral amplification (output characteristic peak over
/// input characteristic peak).
pub const DEFAULT_STABILITY_CAP: f64 = 1e6;

/// A multiplied characteristic function must decay at the edge of its
/// support; values there may not exceed this fraction of its peak.
const BOUNDARY_DECAY_TOL: f64 = 1e-6;

/// Characteristic values below this fraction of the input peak are treated
/// as transform roundoff and zeroed before a multiplier is applied. The
/// measured to_char/from_char noise floor is ~3e-16 of the peak; amplifying
/// kernels (P-ward conversions) would otherwise blow the noise at the far
/// dual-grid corners up by hundreds of orders of magnitude. The clip radius
/// also bounds how well an attenuating conversion can be undone, so it sits
/// as close to the floor as a safe margin allows.
const CHAR_NOISE_CLIP: f64 = 8e-16;

/// Boundary-mass fraction above which resampling warns about escaping mass.
const BOUNDARY_MASS_TOL: f64 = 1e-10;

/// Geometry of a uniform periodic phase-space grid. Sample points are
/// `q_j = qmin + j (qmax−qmin)/nq` (endpoint excluded), likewise for p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nq: usize,
    pub np: usize,
    pub qmin: f64,
    pub qmax: f64,
    pub pmin: f64,
    pub pmax: f64,
}

impl GridSpec {
    pub fn new(nq: usize, np: usize, qmin: f64, qmax: f64, pmin: f64, pmax: f64) -> Result<Self> {
        let spec = Self {
            nq,
            np,
            qmin,
            qmax,
            pmin,
            pmax,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Square grid over [-bound, bound)².
    pub fn square(n: usize, bound: f64) -> Result<Self> {
        Self::new(n, n, -bound, bound, -bound, bound)
    }

    pub fn validate(&self) -> Result<()> {
        for (n, name) in [(self.nq, "nq"), (self.np, "np")] {
            if n < 8 || !n.is_power_of_two() {
                return Err(Error::Grid(format!(
                    "{name} must be a power of two >= 8, got {n}"
                )));
            }
        }
        let finite = [self.qmin, self.qmax, self.pmin, self.pmax]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.qmax <= self.qmin || self.pmax <= self.pmin {
            return Err(Error::Grid(format!(
                "invalid bounds q in [{}, {}), p in [{}, {})",
                self.qmin, self.qmax, self.pmin, self.pmax
            )));
        }
        Ok(())
    }

    pub fn dq(&self) -> f64 {
        (self.qmax - self.qmin) / self.nq as f64
    }

    pub fn dp(&self) -> f64 {
        (self.pmax - self.pmin) / self.np as f64
    }

    pub fn q_at(&self, j: usize) -> f64 {
        self.qmin + j as f64 * self.dq()
    }

    pub fn p_at(&self, k: usize) -> f64 {
        self.pmin + k as f64 * self.dp()
    }
}

/// Complex-valued samples of a quasi-distribution function.
/// `values[j * np + k]` is F(q_j, p_k): q outer, p inner.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub spec: GridSpec,
    pub values: Vec<Complex64>,
}

impl PhaseGrid {
    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            values: vec![Complex64::ZERO; spec.nq * spec.np],
            spec,
        }
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(f64, f64) -> Complex64) -> Self {
        let mut values = Vec::with_capacity(spec.nq * spec.np);
        for j in 0..spec.nq {
            let q = spec.q_at(j);
            for k in 0..spec.np {
                values.push(f(q, spec.p_at(k)));
            }
        }
        Self { spec, values }
    }

    pub fn at(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.spec.np + k]
    }

    /// Rectangle-rule normalization sum Σ F Δq Δp; ≈ 1 for a physical state.
    pub fn normalization(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.spec.dq() * self.spec.dp()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Continuum L2 distance sqrt(Σ |a−b|² Δq Δp).
    pub fn l2_diff(&self, other: &Self) -> f64 {
        let sum: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (sum * self.spec.dq() * self.spec.dp()).sqrt()
    }

    fn max_abs_boundary(&self) -> f64 {
        let (nq, np) = (self.spec.nq, self.spec.np);
        let mut m = 0.0f64;
        for j in 0..nq {
            for k in 0..np {
                if j == 0 || j == nq - 1 || k == 0 || k == np - 1 {
                    m = m.max(self.values[j * np + k].norm());
                }
            }
        }
        m
    }
}

/// Samples of a characteristic function on the dual grid of a [`GridSpec`].
///
/// v is dual to q and u is dual to p: `values[m * nu + n]` is χ(u_n, v_m)
/// with `v_m = (m − nv/2)·2π/(nq Δq)` and `u_n = (n − nu/2)·2π/(np Δp)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharGrid {
    pub source: GridSpec,
    pub values: Vec<Complex64>,
}

impl CharGrid {
    pub fn nv(&self) -> usize {
        self.source.nq
    }

    pub fn nu(&self) -> usize {
        self.source.np
    }

    pub fn dv(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.source.nq as f64 * self.source.dq())
    }

    pub fn du(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.source.np as f64 * self.source.dp())
    }

    pub fn v_at(&self, m: usize) -> f64 {
        (m as f64 - (self.nv() / 2) as f64) * self.dv()
    }

    pub fn u_at(&self, n: usize) -> f64 {
        (n as f64 - (self.nu() / 2) as f64) * self.du()
    }

    /// χ(0, 0) = Σ F Δq Δp, the normalization of the source distribution.
    pub fn origin(&self) -> Complex64 {
        self.values[(self.nv() / 2) * self.nu() + self.nu() / 2]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn transpose(rows: usize, cols: usize, data: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; data.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = data[r * cols + c];
        }
    }
    out
}

fn fft_rows(data: &mut [Complex64], len: usize, forward: bool) {
    let mut planner = FftPlanner::new();
    let fft = if forward {
        planner.plan_fft_forward(len)
    } else {
        planner.plan_fft_inverse(len)
    };
    let mut scratch = vec![Complex64::ZERO; fft.get_inplace_scratch_len()];
    for row in data.chunks_exact_mut(len) {
        fft.process_with_scratch(row, &mut scratch);
    }
}

/// Forward transform of a distribution to its characteristic function:
/// χ(u, v) = ∬ F e^(+ivq − iup) dq dp, evaluated by DFT with continuous
/// normalization Δq Δp.
pub fn to_char(grid: &PhaseGrid) -> CharGrid {
    let spec = grid.spec;
    let (nq, np) = (spec.nq, spec.np);
    let mut buf = grid.values.clone();
    // Forward DFT along p (inner index) for Σ_k F e^(−iu p_k) up to phases.
    fft_rows(&mut buf, np, true);
    // Unnormalized inverse DFT along q for Σ_j F e^(+iv q_j).
    let mut tbuf = transpose(nq, np, &buf); // [n_fft * nq + j]
    fft_rows(&mut tbuf, nq, false); // -> [n_fft * nq + m_fft]
    let scale = spec.dq() * spec.dp();
    let mut out = CharGrid {
        source: spec,
        values: vec![Complex64::ZERO; nq * np],
    };
    for n_fft in 0..np {
        let n_nat = (n_fft + np / 2) % np;
        let u = out.u_at(n_nat);
        for m_fft in 0..nq {
            let m_nat = (m_fft + nq / 2) % nq;
            let v = out.v_at(m_nat);
            let phase = Complex64::new(0.0, v * spec.qmin - u * spec.pmin).exp();
            out.values[m_nat * np + n_nat] = tbuf[n_fft * nq + m_fft] * phase * scale;
        }
    }
    out
}

/// Inverse transform back to the distribution:
/// F(q, p) = (1/4π²) ∬ χ e^(−ivq + iup) du dv. Exact inverse of [`to_char`]
/// up to roundoff.
pub fn from_char(chi: &CharGrid) -> PhaseGrid {
    let spec = chi.source;
    let (nq, np) = (spec.nq, spec.np);
    // Undo natural ordering and boundary phases: [n_fft * nq + m_fft].
    let mut tbuf = vec![Complex64::ZERO; nq * np];
    for n_fft in 0..np {
        let n_nat = (n_fft + np / 2) % np;
        let u = chi.u_at(n_nat);
        for m_fft in 0..nq {
            let m_nat = (m_fft + nq / 2) % nq;
            let v = chi.v_at(m_nat);
            let phase = Complex64::new(0.0, -(v * spec.qmin) + u * spec.pmin).exp();
            tbuf[n_fft * nq + m_fft] = chi.values[m_nat * np + n_nat] * phase;
        }
    }
    // Forward DFT over the v index, inverse over the u index.
    fft_rows(&mut tbuf, nq, true); // -> [n_fft * nq + j]
    let mut buf = transpose(np, nq, &tbuf); // [j * np + n_fft]
    fft_rows(&mut buf, np, false); // -> [j * np + k]
    let scale = 1.0 / (nq as f64 * np as f64 * spec.dq() * spec.dp());
    for v in buf.iter_mut() {
        *v *= scale;
    }
    PhaseGrid { spec, values: buf }
}

/// Multiply a characteristic function by exp(exponent(u, v)) under two
/// stability guards: no surviving value may exceed `cap` times the input
/// peak, and the output must decay at the edge of its support (the dual-grid
/// boundary or the noise-clip boundary). `blame` names the factor
/// responsible at an offending point.
///
/// Input values at the roundoff floor are zeroed first; without the clip an
/// amplifying kernel turns far-corner transform noise into astronomically
/// large garbage. A genuinely non-decaying target (a distributional P
/// function, say) then shows up as an output that is still at its peak
/// magnitude where the clip truncated it, which the support-edge check
/// rejects.
fn multiply_char_guarded(
    chi: &mut CharGrid,
    cap: f64,
    exponent: impl Fn(f64, f64) -> Complex64,
    blame: impl Fn(f64, f64) -> String,
) -> Result<()> {
    let max_in = chi.max_abs();
    if max_in == 0.0 {
        return Ok(());
    }
    let clip = CHAR_NOISE_CLIP * max_in;
    let ln_limit = max_in.ln() + cap.ln();
    let (nv, nu) = (chi.nv(), chi.nu());
    let mut clipped = vec![false; nv * nu];
    for m in 0..nv {
        let v = chi.v_at(m);
        for n in 0..nu {
            let u = chi.u_at(n);
            let idx = m * nu + n;
            let value = chi.values[idx];
            let mag = value.norm();
            if mag <= clip {
                chi.values[idx] = Complex64::ZERO;
                clipped[idx] = true;
                continue;
            }
            let xi = exponent(u, v);
            if mag.ln() + xi.re > ln_limit {
                return Err(Error::Stability {
                    factor: blame(u, v),
                    detail: format!(
                        "amplification beyond {cap:.1e} x input peak at (u, v) = \
                         ({u:.3}, {v:.3})"
                    ),
                });
            }
            chi.values[idx] = value * xi.exp();
        }
    }
    // Support-edge decay check: every surviving sample sitting next to a
    // clipped sample or on the grid boundary must be small against the peak.
    let peak = chi.max_abs();
    let (mut worst, mut wu, mut wv) = (0.0f64, 0.0, 0.0);
    for m in 0..nv {
        for n in 0..nu {
            let idx = m * nu + n;
            if clipped[idx] {
                continue;
            }
            let at_edge = m == 0
                || m == nv - 1
                || n == 0
                || n == nu - 1
                || clipped[idx - nu]
                || clipped[idx + nu]
                || clipped[idx - 1]
                || clipped[idx + 1];
            if at_edge {
                let a = chi.values[idx].norm();
                if a > worst {
                    worst = a;
                    wu = chi.u_at(n);
                    wv = chi.v_at(m);
                }
            }
        }
    }
    if worst > BOUNDARY_DECAY_TOL * peak {
        return Err(Error::Stability {
            factor: blame(wu, wv),
            detail: format!(
                "characteristic function does not decay on the dual grid \
                 (support edge/peak = {:.3e} at (u, v) = ({wu:.3}, {wv:.3}))",
                worst / peak
            ),
        });
    }
    Ok(())
}

fn blame_diffusion(w7: Complex64, w8: Complex64, w9: Complex64) -> impl Fn(f64, f64) -> String {
    move |u: f64, v: f64| {
        let contributions = [
            ("w7", -(w7.re) * v * v),
            ("w8", -(w8.re) * u * u),
            ("w9", w9.re * u * v),
        ];
        contributions
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(name, _)| (*name).to_owned())
            .unwrap_or_else(|| "w7".to_owned())
    }
}

/// Apply the three diffusion factors e^(w7 Ŝ7) e^(w8 Ŝ8) e^(w9 Ŝ9)
/// spectrally. Exact for these factors (they commute pairwise).
pub fn apply_diffusion(
    grid: &PhaseGrid,
    w7: Complex64,
    w8: Complex64,
    w9: Complex64,
) -> Result<PhaseGrid> {
    apply_diffusion_with_cap(grid, w7, w8, w9, DEFAULT_STABILITY_CAP)
}

pub fn apply_diffusion_with_cap(
    grid: &PhaseGrid,
    w7: Complex64,
    w8: Complex64,
    w9: Complex64,
    cap: f64,
) -> Result<PhaseGrid> {
    if w7 == Complex64::ZERO && w8 == Complex64::ZERO && w9 == Complex64::ZERO {
        return Ok(grid.clone());
    }
    let mut chi = to_char(grid);
    multiply_char_guarded(
        &mut chi,
        cap,
        |u, v| -w7 * v * v - w8 * u * u + w9 * u * v,
        blame_diffusion(w7, w8, w9),
    )?;
    Ok(from_char(&chi))
}

/// Convert a distribution from one Gaussian ordering to another by
/// reweighting its characteristic function with the kernel ratio
/// f_to(u, v) / f_from(u, v).
pub fn convert_ordering(
    grid: &PhaseGrid,
    g_from: OrderingParams,
    g_to: OrderingParams,
) -> Result<PhaseGrid> {
    convert_ordering_with_cap(grid, g_from, g_to, DEFAULT_STABILITY_CAP)
}

pub fn convert_ordering_with_cap(
    grid: &PhaseGrid,
    g_from: OrderingParams,
    g_to: OrderingParams,
    cap: f64,
) -> Result<PhaseGrid> {
    let d1 = g_to.g1 - g_from.g1;
    let d2 = g_to.g2 - g_from.g2;
    let d3 = g_to.g3 - g_from.g3;
    if d1 == 0.0 && d2 == 0.0 && d3 == 0.0 {
        return Ok(grid.clone());
    }
    let mut chi = to_char(grid);
    multiply_char_guarded(
        &mut chi,
        cap,
        |u, v| Complex64::new(d1 * u * u + d2 * v * v, 2.0 * d3 * u * v),
        move |u, v| {
            if d1 * u * u >= d2 * v * v {
                "g1".to_owned()
            } else {
                "g2".to_owned()
            }
        },
    )?;
    Ok(from_char(&chi))
}

/// Tolerance for treating an integrated factor coefficient as real.
fn real_part_checked(w: Complex64, index: usize) -> Result<f64> {
    if w.im.abs() > 1e-9 * (1.0 + w.re.abs()) {
        return Err(Error::Representation(format!(
            "factor coefficient w{index} = {w} is complex; first-order factors support \
             only the real coefficients produced by Hermitian models"
        )));
    }
    Ok(w.re)
}

/// Apply the six first-order factors as one composed affine map:
/// output(x) = e^(2 w4) · input(T6 T5 T4 T3 T2 T1 · x), with
/// T1: (q,p) → (q + w1 p, p), T2: (q,p) → (q, p + w2 q),
/// T3: (q,p) → (e^w3 q, e^−w3 p), T4: (q,p) → (e^w4 q, e^w4 p),
/// T5: (q,p) → (q + w5, p), T6: (q,p) → (q, p + w6).
///
/// The sample point is read from the input grid by bicubic interpolation;
/// out-of-domain points are zero-filled with a boundary-mass warning when
/// the input carries weight at its edge.
pub fn apply_affine(grid: &PhaseGrid, w: &[Complex64; 6]) -> Result<PhaseGrid> {
    let w: [f64; 6] = {
        let mut out = [0.0; 6];
        for i in 0..6 {
            out[i] = real_part_checked(w[i], i + 1)?;
        }
        out
    };
    if w == [0.0; 6] {
        return Ok(grid.clone());
    }
    let (w1, w2, w3, w4, w5, w6) = (w[0], w[1], w[2], w[3], w[4], w[5]);
    // Linear part of T4 T3 T2 T1 and the trailing shifts (w5, w6).
    let s = w4.exp();
    let (e3, em3) = (w3.exp(), (-w3).exp());
    let m = [
        [s * e3, s * e3 * w1],
        [s * em3 * w2, s * em3 * (1.0 + w1 * w2)],
    ];
    let prefactor = (2.0 * w4).exp();

    let boundary = grid.max_abs_boundary();
    let peak = grid.max_abs();
    if peak > 0.0 && boundary > BOUNDARY_MASS_TOL * peak {
        log::warn!(
            "apply_affine: input carries boundary mass (boundary/peak = {:.3e}); \
             zero-fill outside the domain will clip it",
            boundary / peak
        );
    }

    let spec = grid.spec;
    let interp = Bicubic::new(spec.nq, spec.np, &grid.values);
    let (dq, dp) = (spec.dq(), spec.dp());
    let mut out = PhaseGrid::zeros(spec);
    for j in 0..spec.nq {
        let q = spec.q_at(j);
        for k in 0..spec.np {
            let p = spec.p_at(k);
            let qs = m[0][0] * q + m[0][1] * p + w5;
            let ps = m[1][0] * q + m[1][1] * p + w6;
            let row = (qs - spec.qmin) / dq;
            let col = (ps - spec.pmin) / dp;
            out.values[j * spec.np + k] = prefactor * interp.eval(row, col);
        }
    }
    Ok(out)
}

/// Apply the full factored propagator for the factor coefficients `w`:
/// diffusion factors first (they sit rightmost in the product), then the
/// composed affine map.
pub fn propagate(grid: &PhaseGrid, w: &WeiNormanState) -> Result<PhaseGrid> {
    let diffused = apply_diffusion(grid, w.w[6], w.w[7], w.w[8])?;
    apply_affine(
        &diffused,
        &w.w[..6].try_into().expect("six affine coefficients"),
    )
}

/// Propagate over [0, T] in `slices` sub-intervals, re-deriving the factor
/// coefficients on each sub-interval from zero initial conditions with
/// time-shifted equation coefficients. Composition across a Riccati pole of
/// the single-shot factorization reproduces the flow where one-shot
/// integration blows up.
pub fn propagate_piecewise(
    grid: &PhaseGrid,
    model: &QuadraticModel,
    g: OrderingParams,
    t_final: f64,
    slices: usize,
    cfg: &IntegratorConfig,
) -> Result<PhaseGrid> {
    propagate_piecewise_trace(grid, model, g, t_final, slices, cfg).map(|(out, _)| out)
}

/// [`propagate_piecewise`] but also returning the factor-coefficient
/// trajectory of every slice (each starting from zero at its slice origin).
pub fn propagate_piecewise_trace(
    grid: &PhaseGrid,
    model: &QuadraticModel,
    g: OrderingParams,
    t_final: f64,
    slices: usize,
    cfg: &IntegratorConfig,
) -> Result<(PhaseGrid, Vec<crate::weinorman::WnTrajectory>)> {
    if slices == 0 {
        return Err(Error::Config("time.slices must be >= 1".into()));
    }
    let coeffs = assemble(model, g)?;
    let mut current = grid.clone();
    let mut trajectories = Vec::with_capacity(slices);
    for s in 0..slices {
        let t0 = t_final * s as f64 / slices as f64;
        let t1 = t_final * (s + 1) as f64 / slices as f64;
        let shifted = coeffs.shift(t0);
        let trajectory = integrate(&shifted, t1 - t0, cfg)?;
        current = propagate(&current, trajectory.last())?;
        trajectories.push(trajectory);
    }
    Ok((current, trajectories))
}

/// Rectangle-rule phase-space moment ⟨q^m p^n⟩ = Σ q^m p^n F Δq Δp.
/// Accuracy degrades with order; m + n is capped at 4.
pub fn moment(grid: &PhaseGrid, m: u32, n: u32) -> Complex64 {
    assert!(m + n <= 4, "moment order m + n must be <= 4");
    let spec = grid.spec;
    let mut sum = Complex64::ZERO;
    for j in 0..spec.nq {
        let qm = spec.q_at(j).powi(m as i32);
        for k in 0..spec.np {
            let pn = spec.p_at(k).powi(n as i32);
            sum += qm * pn * grid.values[j * spec.np + k];
        }
    }
    sum * spec.dq() * spec.dp()
}

/// A quadratic observable symbol k1 q² + k2 p² + k3 qp + k4 q + k5 p + k0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticSymbol {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
    pub k0: f64,
}

impl QuadraticSymbol {
    /// The oscillator energy (q² + p²)/2.
    pub fn energy() -> Self {
        Self {
            k1: 0.5,
            k2: 0.5,
            k3: 0.0,
            k4: 0.0,
            k5: 0.0,
            k0: 0.0,
        }
    }
}

/// Expectation value of a quadratic observable over an f-ordered
/// distribution. The observable symbol for ordering `g` gains the additive
/// constant 2 g2 k1 + 2 g1 k2 − 2i g3 k3 relative to its symmetric symbol.
pub fn expectation_quadratic(
    grid: &PhaseGrid,
    sym: &QuadraticSymbol,
    g: OrderingParams,
) -> Complex64 {
    let correction = Complex64::new(
        2.0 * g.g2 * sym.k1 + 2.0 * g.g1 * sym.k2,
        -2.0 * g.g3 * sym.k3,
    );
    let norm = moment(grid, 0, 0);
    sym.k1 * moment(grid, 2, 0)
        + sym.k2 * moment(grid, 0, 2)
        + sym.k3 * moment(grid, 1, 1)
        + sym.k4 * moment(grid, 1, 0)
        + sym.k5 * moment(grid, 0, 1)
        + (sym.k0 + correction) * norm
}
