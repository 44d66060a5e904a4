//! Harmonic-oscillator eigenfunctions ⟨q|n⟩ in ħ = m = ω = 1 units.

/// All Hermite functions φ_0(x) .. φ_{n_max}(x), by the stable normalized
/// three-term recurrence
/// φ_{n+1} = √(2/(n+1)) x φ_n − √(n/(n+1)) φ_{n−1},
/// φ_0 = π^{-1/4} e^{-x²/2}.
pub fn hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut phi = Vec::with_capacity(n_max + 1);
    let phi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    phi.push(phi0);
    if n_max == 0 {
        return phi;
    }
    phi.push(std::f64::consts::SQRT_2 * x * phi0);
    for n in 1..n_max {
        let next = (2.0 / (n as f64 + 1.0)).sqrt() * x * phi[n]
            - (n as f64 / (n as f64 + 1.0)).sqrt() * phi[n - 1];
        phi.push(next);
    }
    phi
}
