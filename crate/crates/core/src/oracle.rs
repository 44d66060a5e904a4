//! Independent ground truth: truncated-Fock-space density-matrix evolution
//! of the master equation, its mapping onto quasi-distribution grids, and
//! the closed-form propagated solutions for the reference problems.
//!
//! Nothing here shares code with the factored-propagator pipeline, so grid
//! comparisons between the two constitute an end-to-end cross-check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermite::hermite_functions;
use crate::model::{CoherentHamiltonian, QuadraticModel};
use crate::ordering::OrderingParams;
use crate::phasegrid::{from_char, CharGrid, GridSpec, PhaseGrid};
use crate::states::StateSpec;

const PI: f64 = std::f64::consts::PI;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Population allowed in the top Fock level before the truncation is
/// considered leaky.
pub const LEAKAGE_THRESHOLD: f64 = 1e-10;

/// Density matrix on the lowest `dim` Fock levels, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    pub dim: usize,
    pub entries: Vec<Complex64>,
}

impl FockDensityMatrix {
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    /// ρ = |ψ⟩⟨ψ| from state amplitudes, renormalized after truncation.
    pub fn pure(dim: usize, amplitudes: &[Complex64]) -> Self {
        let mut psi = vec![Complex64::ZERO; dim];
        for (i, a) in amplitudes.iter().take(dim).enumerate() {
            psi[i] = *a;
        }
        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in psi.iter_mut() {
            *a /= norm;
        }
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = psi[i] * psi[j].conj();
            }
        }
        Self { dim, entries }
    }

    pub fn ground(dim: usize) -> Self {
        Self::pure(dim, &[Complex64::ONE])
    }

    /// Coherent state amplitudes c_n = e^(−|α|²/2) αⁿ/√(n!).
    pub fn coherent(dim: usize, alpha: Complex64) -> Self {
        Self::pure(dim, &coherent_amplitudes(dim, alpha))
    }

    /// Even cat state (|α⟩ + |−α⟩), normalized.
    pub fn cat(dim: usize, alpha: Complex64) -> Self {
        let plus = coherent_amplitudes(dim, alpha);
        let minus = coherent_amplitudes(dim, -alpha);
        let sum: Vec<Complex64> = plus.iter().zip(&minus).map(|(a, b)| a + b).collect();
        Self::pure(dim, &sum)
    }

    pub fn superposition01(dim: usize) -> Self {
        Self::pure(dim, &[Complex64::ONE, Complex64::ONE])
    }

    pub fn from_state(state: &StateSpec, dim: usize) -> Self {
        match *state {
            StateSpec::Ground => Self::ground(dim),
            StateSpec::Coherent { .. } => Self::coherent(dim, state.alpha().unwrap()),
            StateSpec::Cat { .. } => Self::cat(dim, state.alpha().unwrap()),
            StateSpec::Superposition01 => Self::superposition01(dim),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn top_population(&self) -> f64 {
        self.at(self.dim - 1, self.dim - 1).re
    }

    fn check_leakage(&self) -> Result<()> {
        let population = self.top_population();
        if population.abs() > LEAKAGE_THRESHOLD {
            return Err(Error::CutoffLeakage {
                population,
                threshold: LEAKAGE_THRESHOLD,
            });
        }
        Ok(())
    }
}

fn coherent_amplitudes(dim: usize, alpha: Complex64) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(dim);
    let mut term = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    c.push(term);
    for n in 1..dim {
        term *= alpha / (n as f64).sqrt();
        c.push(term);
    }
    c
}

/// Matrix of the annihilation operator: a[n−1, n] = √n.
pub fn annihilation_matrix(dim: usize) -> Vec<Complex64> {
    let mut a = vec![Complex64::ZERO; dim * dim];
    for n in 1..dim {
        a[(n - 1) * dim + n] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

fn dagger(dim: usize, m: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            out[j * dim + i] = m[i * dim + j].conj();
        }
    }
    out
}

fn matmul(dim: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == Complex64::ZERO {
                continue;
            }
            let row = &b[k * dim..(k + 1) * dim];
            let orow = &mut out[i * dim..(i + 1) * dim];
            for (o, &bv) in orow.iter_mut().zip(row) {
                *o += aik * bv;
            }
        }
    }
    out
}

/// Truncated matrix of the coherent-form Hamiltonian
/// ω(â†â + 1/2) + Vâ† + V*â + Ââ†â† + A*ââ.
pub fn coherent_hamiltonian_matrix(dim: usize, h: &CoherentHamiltonian) -> Vec<Complex64> {
    let a = annihilation_matrix(dim);
    let ad = dagger(dim, &a);
    let mut out = vec![Complex64::ZERO; dim * dim];
    let ada = matmul(dim, &ad, &a);
    let adad = matmul(dim, &ad, &ad);
    let aa = matmul(dim, &a, &a);
    for i in 0..dim * dim {
        out[i] = h.omega * ada[i]
            + h.drive * ad[i]
            + h.drive.conj() * a[i]
            + h.squeeze * adad[i]
            + h.squeeze.conj() * aa[i];
    }
    for i in 0..dim {
        out[i * dim + i] += 0.5 * h.omega;
    }
    out
}

/// Truncated matrix of k1 q̂² + k2 p̂² + k3 (q̂p̂+p̂q̂)/2 + k4 q̂ + k5 p̂ built
/// from position and momentum matrices q̂ = (â+â†)/√2, p̂ = i(â†−â)/√2.
pub fn qp_hamiltonian_matrix(dim: usize, k: [f64; 5]) -> Vec<Complex64> {
    let a = annihilation_matrix(dim);
    let ad = dagger(dim, &a);
    let mut q = vec![Complex64::ZERO; dim * dim];
    let mut p = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim * dim {
        q[i] = (a[i] + ad[i]) / SQRT_2;
        p[i] = Complex64::new(0.0, 1.0) * (ad[i] - a[i]) / SQRT_2;
    }
    let qq = matmul(dim, &q, &q);
    let pp = matmul(dim, &p, &p);
    let qp = matmul(dim, &q, &p);
    let pq = matmul(dim, &p, &q);
    let mut out = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim * dim {
        out[i] =
            k[0] * qq[i] + k[1] * pp[i] + 0.5 * k[2] * (qp[i] + pq[i]) + k[3] * q[i] + k[4] * p[i];
    }
    out
}

/// Ladder-sandwich helpers. Each is O(dim²) thanks to the single-band
/// structure of a and a†.
struct Ladder {
    dim: usize,
}

impl Ladder {
    fn sqrt_n(&self, n: usize) -> f64 {
        (n as f64).sqrt()
    }

    /// out += c · a ρ a†
    fn add_a_rho_ad(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 0..d - 1 {
            let si = self.sqrt_n(i + 1);
            for j in 0..d - 1 {
                out[i * d + j] += c * si * self.sqrt_n(j + 1) * rho[(i + 1) * d + (j + 1)];
            }
        }
    }

    /// out += c · a† ρ a
    fn add_ad_rho_a(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 1..d {
            let si = self.sqrt_n(i);
            for j in 1..d {
                out[i * d + j] += c * si * self.sqrt_n(j) * rho[(i - 1) * d + (j - 1)];
            }
        }
    }

    /// out += c · a† ρ a†
    fn add_ad_rho_ad(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 1..d {
            let si = self.sqrt_n(i);
            for j in 0..d - 1 {
                out[i * d + j] += c * si * self.sqrt_n(j + 1) * rho[(i - 1) * d + (j + 1)];
            }
        }
    }

    /// out += c · a ρ a
    fn add_a_rho_a(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 0..d - 1 {
            let si = self.sqrt_n(i + 1);
            for j in 1..d {
                out[i * d + j] += c * si * self.sqrt_n(j) * rho[(i + 1) * d + (j - 1)];
            }
        }
    }

    /// out += c · (a†a ρ + ρ a†a): a†a is diagonal with entries n.
    fn add_anticommutator_number(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] += c * (i + j) as f64 * rho[i * d + j];
            }
        }
    }

    /// out += c · (aa† ρ + ρ aa†): aa† is diagonal with entries n + 1.
    fn add_anticommutator_number_plus(
        &self,
        c: Complex64,
        rho: &[Complex64],
        out: &mut [Complex64],
    ) {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] += c * (i + j + 2) as f64 * rho[i * d + j];
            }
        }
    }

    /// out += c · (a†a† ρ + ρ a†a†)
    fn add_anticommutator_adad(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 2..d {
            let s = self.sqrt_n(i) * self.sqrt_n(i - 1);
            for j in 0..d {
                out[i * d + j] += c * s * rho[(i - 2) * d + j];
            }
        }
        // (ρ a†a†)[i, j] = √((j+1)(j+2)) ρ[i, j+2]
        for j in 0..d.saturating_sub(2) {
            let s = self.sqrt_n(j + 1) * self.sqrt_n(j + 2);
            for i in 0..d {
                out[i * d + j] += c * s * rho[i * d + (j + 2)];
            }
        }
    }

    /// out += c · (aa ρ + ρ aa)
    fn add_anticommutator_aa(&self, c: Complex64, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        for i in 0..d.saturating_sub(2) {
            let s = self.sqrt_n(i + 1) * self.sqrt_n(i + 2);
            for j in 0..d {
                out[i * d + j] += c * s * rho[(i + 2) * d + j];
            }
        }
        // (ρ aa)[i, j] = √(j(j-1)) ρ[i, j-2]
        for j in 2..d {
            let s = self.sqrt_n(j) * self.sqrt_n(j - 1);
            for i in 0..d {
                out[i * d + j] += c * s * rho[i * d + (j - 2)];
            }
        }
    }
}

struct MasterEquation {
    dim: usize,
    h: Vec<Complex64>,
    gamma: f64,
    n_thermal: f64,
    m_squeeze: Complex64,
    ladder: Ladder,
}

impl MasterEquation {
    fn rhs(&self, rho: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        let h_rho = matmul(d, &self.h, rho);
        let rho_h = matmul(d, rho, &self.h);
        let mut out: Vec<Complex64> = (0..d * d)
            .map(|i| Complex64::new(0.0, -1.0) * (h_rho[i] - rho_h[i]))
            .collect();
        if self.gamma > 0.0 {
            let g = self.gamma;
            let n = self.n_thermal;
            let down = Complex64::new(g * (n + 1.0), 0.0);
            let up = Complex64::new(g * n, 0.0);
            self.ladder.add_a_rho_ad(down, rho, &mut out);
            self.ladder
                .add_anticommutator_number(-0.5 * down, rho, &mut out);
            if n > 0.0 {
                self.ladder.add_ad_rho_a(up, rho, &mut out);
                self.ladder
                    .add_anticommutator_number_plus(-0.5 * up, rho, &mut out);
            }
            let m = self.m_squeeze;
            if m != Complex64::ZERO {
                self.ladder.add_ad_rho_ad(g * m, rho, &mut out);
                self.ladder
                    .add_anticommutator_adad(-0.5 * g * m, rho, &mut out);
                self.ladder.add_a_rho_a(g * m.conj(), rho, &mut out);
                self.ladder
                    .add_anticommutator_aa(-0.5 * g * m.conj(), rho, &mut out);
            }
        }
        out
    }
}

/// Evolve a density matrix under the master equation with the model's
/// coherent-form Hamiltonian, by fixed-step fourth-order Runge–Kutta.
///
/// Requires constant coefficients (the coherent form must exist) and a
/// cutoff large enough that the top-level population stays below
/// [`LEAKAGE_THRESHOLD`].
pub fn evolve_rho(
    rho0: &FockDensityMatrix,
    model: &QuadraticModel,
    t_final: f64,
    dt: f64,
) -> Result<FockDensityMatrix> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Config(format!("oracle dt must be > 0, got {dt}")));
    }
    let coh = model.coherent()?;
    if !(coh.drive.re.is_finite() && coh.drive.im.is_finite()) {
        return Err(Error::Representation(
            "fock evolution requires constant drive coefficients".into(),
        ));
    }
    rho0.check_leakage()?;
    let dim = rho0.dim;
    let (gamma, n_thermal, m_squeeze) = match model.damping {
        Some(d) => (d.gamma, d.n_thermal, d.m_squeeze),
        None => (0.0, 0.0, Complex64::ZERO),
    };
    let eq = MasterEquation {
        dim,
        h: coherent_hamiltonian_matrix(dim, &coh),
        gamma,
        n_thermal,
        m_squeeze,
        ladder: Ladder { dim },
    };
    let mut rho = rho0.entries.clone();
    let mut t = 0.0;
    while t < t_final {
        let step = dt.min(t_final - t);
        if step <= f64::EPSILON * t_final {
            break;
        }
        let k1 = eq.rhs(&rho);
        let k2 = eq.rhs(&axpy(&rho, &k1, 0.5 * step));
        let k3 = eq.rhs(&axpy(&rho, &k2, 0.5 * step));
        let k4 = eq.rhs(&axpy(&rho, &k3, step));
        for i in 0..rho.len() {
            rho[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += step;
    }
    let out = FockDensityMatrix { dim, entries: rho };
    out.check_leakage()?;
    Ok(out)
}

fn axpy(y: &[Complex64], k: &[Complex64], h: f64) -> Vec<Complex64> {
    y.iter().zip(k).map(|(a, b)| a + h * b).collect()
}

/// Map a density matrix to a quasi-distribution grid for ordering `g`.
///
/// The symmetric characteristic function is evaluated from the
/// position-basis kernel, χ(u, v) = ∫ ⟨q′ − u/2| ρ |q′ + u/2⟩ e^(ivq′) dq′,
/// with the position kernel built from Hermite functions and the q′
/// integral done on the grid's own q axis (one DFT per u column). The
/// ordering kernel multiplies χ before the inverse transform.
pub fn rho_to_qdf(rho: &FockDensityMatrix, g: OrderingParams, spec: GridSpec) -> Result<PhaseGrid> {
    use rustfft::FftPlanner;
    let dim = rho.dim;
    let (nq, np) = (spec.nq, spec.np);
    let mut chi = CharGrid {
        source: spec,
        values: vec![Complex64::ZERO; nq * np],
    };
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_inverse(nq);
    let mut scratch = vec![Complex64::ZERO; fft.get_inplace_scratch_len()];
    let dq = spec.dq();
    let mut column = vec![Complex64::ZERO; nq];
    for n in 0..np {
        let u = chi.u_at(n);
        // Position kernel along the q axis for this u.
        for (j, slot) in column.iter_mut().enumerate() {
            let q = spec.q_at(j);
            let phi_left = hermite_functions(dim - 1, q - 0.5 * u);
            let phi_right = hermite_functions(dim - 1, q + 0.5 * u);
            let mut acc = Complex64::ZERO;
            for (pl, row) in phi_left.iter().zip(rho.entries.chunks_exact(dim)) {
                if *pl == 0.0 {
                    continue;
                }
                let mut inner = Complex64::ZERO;
                for (rv, pv) in row.iter().zip(&phi_right) {
                    inner += rv * *pv;
                }
                acc += *pl * inner;
            }
            *slot = acc;
        }
        fft.process_with_scratch(&mut column, &mut scratch);
        for (m_fft, value) in column.iter().enumerate() {
            let m_nat = (m_fft + nq / 2) % nq;
            let v = chi.v_at(m_nat);
            let phase = Complex64::new(0.0, v * spec.qmin).exp();
            chi.values[m_nat * np + n] = value * phase * dq * g.kernel_value(u, v);
        }
    }
    // The ordered characteristic function must decay on the dual grid.
    let peak = chi.max_abs();
    let boundary = {
        let mut worst = 0.0f64;
        for m in 0..nq {
            for n in 0..np {
                if m == 0 || m == nq - 1 || n == 0 || n == np - 1 {
                    worst = worst.max(chi.values[m * np + n].norm());
                }
            }
        }
        worst
    };
    if peak > 0.0 && boundary > 1e-6 * peak {
        return Err(Error::State(format!(
            "ordered characteristic function does not decay for \
             (g1, g2, g3) = ({}, {}, {}) (boundary/peak = {:.3e})",
            g.g1,
            g.g2,
            g.g3,
            boundary / peak
        )));
    }
    Ok(from_char(&chi))
}

/// Closed-form propagated solutions for the reference problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticCase {
    /// Free-particle Wigner function of a coherent state: a shear.
    FreeWigner { alpha: Complex64 },
    /// Free-particle standard function of the ground state.
    FreeStandardGround,
    /// Free-particle antinormal function of the ground state.
    FreeQGround,
    /// Oscillator rotation map applied to a coherent-state Wigner function.
    HoWignerMap { alpha: Complex64 },
    /// Oscillator standard function of (|0⟩ + |1⟩)/√2.
    HoStandard01,
    /// Oscillator standard function of a cat state.
    HoStandardCat { alpha: Complex64 },
    /// Oscillator rotation map applied to a coherent-state antinormal
    /// function (for equal quadratic coefficients the normal and antinormal
    /// functions rotate rigidly, like the Wigner function).
    HoAnMap { alpha: Complex64 },
    /// Exponential-mass model: standard function of the ground state.
    TdepStandardGround { epsilon: f64, delta: f64 },
}

impl AnalyticCase {
    /// Parse a case id as accepted by the CLI.
    pub fn parse(id: &str, alpha: Complex64, epsilon: f64, delta: f64) -> Result<Self> {
        match id.to_ascii_lowercase().as_str() {
            "free-wigner" => Ok(Self::FreeWigner { alpha }),
            "free-standard-ground" => Ok(Self::FreeStandardGround),
            "free-q-ground" => Ok(Self::FreeQGround),
            "ho-wigner-map" => Ok(Self::HoWignerMap { alpha }),
            "ho-standard-01" => Ok(Self::HoStandard01),
            "ho-standard-cat" => Ok(Self::HoStandardCat { alpha }),
            "ho-nan-map" => Ok(Self::HoAnMap { alpha }),
            "tdep-standard-ground" => Ok(Self::TdepStandardGround { epsilon, delta }),
            other => Err(Error::Config(format!("unknown analytic case {other:?}"))),
        }
    }

    /// Sample the closed form at time `t`.
    pub fn sample(&self, spec: GridSpec, t: f64) -> PhaseGrid {
        match *self {
            Self::FreeWigner { alpha } => {
                let (q0, p0) = (SQRT_2 * alpha.re, SQRT_2 * alpha.im);
                PhaseGrid::from_fn(spec, |q, p| {
                    let qs = q - p * t;
                    Complex64::new((-(qs - q0).powi(2) - (p - p0).powi(2)).exp() / PI, 0.0)
                })
            }
            Self::FreeStandardGround => {
                let c = 1.0 / ((2.0 * PI).sqrt() * PI.sqrt());
                let one_minus_it = Complex64::new(1.0, -t);
                let prefactor = c / one_minus_it.sqrt();
                PhaseGrid::from_fn(spec, |q, p| {
                    let phase = Complex64::new(0.0, q * p).exp();
                    let gq = (-(q * q) / (2.0 * one_minus_it)).exp();
                    let gp = (Complex64::new(-0.5 * p * p, 0.0) * Complex64::new(1.0, t)).exp();
                    prefactor * phase * gq * gp
                })
            }
            Self::FreeQGround => {
                let denom = 4.0 + t * t;
                let c = 1.0 / (PI * denom.sqrt());
                PhaseGrid::from_fn(spec, |q, p| {
                    let e = -(2.0 * q * q + 2.0 * p * p + p * p * t * t - 2.0 * q * p * t) / denom;
                    Complex64::new(c * e.exp(), 0.0)
                })
            }
            Self::HoWignerMap { alpha } => {
                let (q0, p0) = (SQRT_2 * alpha.re, SQRT_2 * alpha.im);
                let (ct, st) = (t.cos(), t.sin());
                PhaseGrid::from_fn(spec, |q, p| {
                    let qr = ct * q - st * p;
                    let pr = st * q + ct * p;
                    Complex64::new((-(qr - q0).powi(2) - (pr - p0).powi(2)).exp() / PI, 0.0)
                })
            }
            Self::HoStandard01 => {
                let c = 0.5 / ((2.0 * PI).sqrt() * PI.sqrt());
                let eit = Complex64::new(0.0, t).exp();
                PhaseGrid::from_fn(spec, |q, p| {
                    let envelope = (-(q * q + p * p) / 2.0).exp();
                    let bracket = Complex64::ONE + SQRT_2 * q * eit
                        - Complex64::new(0.0, SQRT_2 * p) * eit.conj()
                        - Complex64::new(0.0, 2.0 * q * p);
                    c * envelope * Complex64::new(0.0, q * p).exp() * bracket
                })
            }
            Self::HoStandardCat { alpha } => sample_cat_standard(spec, alpha, t),
            Self::HoAnMap { alpha } => {
                let (q0, p0) = (SQRT_2 * alpha.re, SQRT_2 * alpha.im);
                let (ct, st) = (t.cos(), t.sin());
                PhaseGrid::from_fn(spec, |q, p| {
                    let qr = ct * q - st * p;
                    let pr = st * q + ct * p;
                    Complex64::new(
                        (-0.5 * ((qr - q0).powi(2) + (pr - p0).powi(2))).exp() / (2.0 * PI),
                        0.0,
                    )
                })
            }
            Self::TdepStandardGround { delta, .. } => {
                let c = 1.0 / ((2.0 * PI).sqrt() * PI.sqrt());
                let wq = (-2.0 * delta * t).exp();
                let wp = (2.0 * delta * t).exp();
                PhaseGrid::from_fn(spec, |q, p| {
                    c * Complex64::new(-0.5 * q * q * wq - 0.5 * p * p * wp, q * p).exp()
                })
            }
        }
    }
}

/// Standard-ordered cat-state distribution at time `t` under the
/// oscillator: the t = 0 four-Gaussian form with rotated displacement
/// parameters N = A cos t + B sin t, M = B cos t − A sin t and the
/// accumulated interference phases.
fn sample_cat_standard(spec: GridSpec, alpha: Complex64, t: f64) -> PhaseGrid {
    let (a, b) = (alpha.re, alpha.im);
    let big_n = a * t.cos() + b * t.sin();
    let big_m = b * t.cos() - a * t.sin();
    let norm = 1.0 / (2.0 + 2.0 * (-2.0 * alpha.norm_sqr()).exp());
    let prefactor = norm / ((2.0 * PI).sqrt() * PI.sqrt())
        * Complex64::new(
            0.0,
            2.0 * a * b * (2.0 * t.cos().powi(2) - 1.0) + (b * b - a * a) * (2.0 * t).sin(),
        )
        .exp();
    let (qn, pm) = (SQRT_2 * big_n, SQRT_2 * big_m);
    PhaseGrid::from_fn(spec, |q, p| {
        let phase = Complex64::new(0.0, q * p).exp();
        let term = |sq: f64, sp: f64| -> Complex64 {
            // Sign pattern of the displaced Gaussians and their phases.
            Complex64::new(
                -0.5 * (q - sq * qn).powi(2) - 0.5 * (p - sp * pm).powi(2),
                SQRT_2 * (-(sq) * q * big_m - sp * big_n * p),
            )
            .exp()
        };
        prefactor * phase * (term(1.0, 1.0) + term(1.0, -1.0) + term(-1.0, 1.0) + term(-1.0, -1.0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DampingSpec;
    use crate::phasegrid::moment;
    use crate::states;

    #[test]
    fn density_matrix_invariants() {
        let rho = FockDensityMatrix::cat(40, Complex64::new(1.5, 0.0));
        assert!((rho.trace() - Complex64::ONE).norm() < 1e-12);
        assert!(rho.hermiticity_defect() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!(rho.top_population() < 1e-12);
    }

    #[test]
    fn coherent_rotation_under_oscillator() {
        // γ = 0, H = ω(a†a + 1/2): a coherent state stays coherent with
        // α(t) = α e^{−iωt}.
        let dim = 30;
        let alpha = Complex64::new(1.0, 0.2);
        let rho0 = FockDensityMatrix::coherent(dim, alpha);
        let model = QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(1.0));
        let t = 0.9;
        let rho = evolve_rho(&rho0, &model, t, 1e-3).unwrap();
        let expect = FockDensityMatrix::coherent(dim, alpha * Complex64::new(0.0, -t).exp());
        // Fidelity ⟨α(t)|ρ|α(t)⟩ = Tr(ρ |α(t)⟩⟨α(t)|).
        let overlap: Complex64 = (0..dim * dim)
            .map(|i| rho.entries[i] * expect.entries[i].conj())
            .sum();
        assert!(
            (overlap.re - 1.0).abs() < 1e-6,
            "fidelity defect {}",
            1.0 - overlap.re
        );
        assert!((rho.trace() - Complex64::ONE).norm() < 1e-9);
        assert!((rho.purity() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn damped_occupation_decay() {
        // γ > 0, N = M = 0, ω = 0: ⟨a†a⟩(T) = ⟨a†a⟩(0) e^{−γT}.
        let dim = 25;
        let alpha = Complex64::new(1.2, 0.0);
        let rho0 = FockDensityMatrix::coherent(dim, alpha);
        let model = QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(0.0))
            .with_damping(DampingSpec::new(0.5, 0.0, Complex64::ZERO).unwrap())
            .unwrap();
        let t = 0.8;
        let rho = evolve_rho(&rho0, &model, t, 1e-3).unwrap();
        let occupation: f64 = (0..dim).map(|n| n as f64 * rho.at(n, n).re).sum();
        let expect = alpha.norm_sqr() * (-0.5 * t).exp();
        assert!((occupation - expect).abs() < 1e-6);
        assert!(rho.hermiticity_defect() < 1e-9);
    }

    #[test]
    fn zero_time_is_identity() {
        let rho0 = FockDensityMatrix::superposition01(12);
        let model = QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(1.0));
        let rho = evolve_rho(&rho0, &model, 0.0, 1e-3).unwrap();
        assert_eq!(rho, rho0);
    }

    #[test]
    fn ground_wigner_from_rho() {
        let spec = GridSpec::square(128, 8.0).unwrap();
        let rho = FockDensityMatrix::ground(20);
        let w = rho_to_qdf(&rho, OrderingParams::wigner(), spec).unwrap();
        let expect = PhaseGrid::from_fn(spec, |q, p| {
            Complex64::new((-(q * q) - p * p).exp() / PI, 0.0)
        });
        assert!(w.max_abs_diff(&expect) < 1e-9);
        assert!((w.at(64, 64) - Complex64::new(1.0 / PI, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn rho_to_qdf_matches_state_constructors() {
        let spec = GridSpec::square(128, 8.0).unwrap();
        let rho = FockDensityMatrix::ground(20);
        for g in [
            OrderingParams::wigner(),
            OrderingParams::antinormal(),
            OrderingParams::standard(),
            OrderingParams::antistandard(),
            OrderingParams::s_ordered(-0.6),
        ] {
            let via_rho = rho_to_qdf(&rho, g, spec).unwrap();
            let closed = states::qdf_ground(g, spec).unwrap();
            assert!(
                via_rho.max_abs_diff(&closed) < 1e-8,
                "mismatch for g = ({}, {}, {})",
                g.g1,
                g.g2,
                g.g3
            );
        }
    }

    #[test]
    fn rho_to_qdf_normalization() {
        let spec = GridSpec::square(128, 8.0).unwrap();
        let rho = FockDensityMatrix::cat(40, Complex64::new(1.5, 0.0));
        let w = rho_to_qdf(&rho, OrderingParams::wigner(), spec).unwrap();
        assert!((moment(&w, 0, 0) - Complex64::ONE).norm() < 1e-8);
    }

    #[test]
    fn trace_and_purity_conservation() {
        let dim = 30;
        let rho0 = FockDensityMatrix::cat(dim, Complex64::new(1.2, 0.0));
        let model = QuadraticModel::from_coherent(CoherentHamiltonian::new(
            1.0,
            Complex64::new(0.3, 0.0),
            Complex64::new(0.1, 0.05),
        ));
        let rho = evolve_rho(&rho0, &model, 2.0, 1e-3).unwrap();
        assert!((rho.trace() - Complex64::ONE).norm() < 1e-9);
        assert!(rho.hermiticity_defect() < 1e-9);
        assert!((rho.purity() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn squeezed_reservoir_second_moment_rate() {
        // Under the M terms alone, d⟨a²⟩/dt gains the constant −γM.
        let dim = 25;
        let gamma = 0.4;
        let m = Complex64::new(0.3, -0.2);
        let rho0 = FockDensityMatrix::ground(dim);
        let model = QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(0.0))
            .with_damping(DampingSpec::new(gamma, 1.0, m).unwrap())
            .unwrap();
        let dt = 1e-4;
        let rho = evolve_rho(&rho0, &model, dt, dt).unwrap();
        assert!((rho.trace() - Complex64::ONE).norm() < 1e-12);
        assert!(rho.hermiticity_defect() < 1e-12);
        // ⟨a²⟩ = Tr(ρ a²) = Σ_n √((n+1)(n+2)) ρ[n+2, n]
        let expect_a2 = |r: &FockDensityMatrix| -> Complex64 {
            (0..dim - 2)
                .map(|n| ((n + 1) as f64 * (n + 2) as f64).sqrt() * r.at(n + 2, n))
                .sum()
        };
        // One-sided difference carries an O(dt) bias from the moment's
        // second derivative.
        let rate = (expect_a2(&rho) - expect_a2(&rho0)) / dt;
        assert!(
            (rate - (-gamma * m)).norm() < 1e-5,
            "d<a^2>/dt = {rate}, expected {}",
            -gamma * m
        );
    }

    #[test]
    fn analytic_case_parsing() {
        let a = Complex64::new(1.0, 0.0);
        assert!(AnalyticCase::parse("HO-Wigner-Map", a, 0.0, 0.0).is_ok());
        assert!(AnalyticCase::parse("ho-NAN-map", a, 0.0, 0.0).is_ok());
        assert!(AnalyticCase::parse("nope", a, 0.0, 0.0).is_err());
    }

    #[test]
    fn cat_standard_at_time_zero_matches_constructor() {
        // Two independent derivations of the same function: the χ-route
        // constructor and the four-Gaussian wavefunction product.
        let spec = GridSpec::square(128, 8.0).unwrap();
        let alpha = Complex64::new(1.2, 0.4);
        let case = AnalyticCase::HoStandardCat { alpha };
        let sampled = case.sample(spec, 0.0);
        let constructed = states::qdf_cat(OrderingParams::standard(), alpha, spec).unwrap();
        assert!(sampled.max_abs_diff(&constructed) < 1e-10);
    }

    #[test]
    fn superposition_standard_at_time_zero_matches_constructor() {
        let spec = GridSpec::square(128, 8.0).unwrap();
        let sampled = AnalyticCase::HoStandard01.sample(spec, 0.0);
        let constructed = states::standard_superposition01(spec);
        assert!(sampled.max_abs_diff(&constructed) < 1e-10);
    }

    #[test]
    fn free_q_ground_fixed_values() {
        let spec = GridSpec::square(128, 8.0).unwrap();
        let f0 = AnalyticCase::FreeQGround.sample(spec, 0.0);
        assert!((f0.at(64, 64) - Complex64::new(1.0 / (2.0 * PI), 0.0)).norm() < 1e-12);
        let f2 = AnalyticCase::FreeQGround.sample(spec, 2.0);
        let expect = 1.0 / (PI * 8.0f64.sqrt());
        assert!((f2.at(64, 64) - Complex64::new(expect, 0.0)).norm() < 1e-12);
        // The spread state has ~4e-6 of mass beyond the ±8 window.
        assert!((moment(&f2, 0, 0) - Complex64::ONE).norm() < 1e-5);
    }
}
