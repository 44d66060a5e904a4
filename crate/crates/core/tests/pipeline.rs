//! End-to-end pipeline tests beyond the acceptance gate: propagated
//! fixtures, oracle cross-checks with drive and squeezed reservoirs, and
//! symmetry preservation under propagation.

use num_complex::Complex64;

use qprop::eom::assemble;
use qprop::model::{CoherentHamiltonian, DampingSpec, QPHamiltonian, QuadraticModel};
use qprop::oracle::{evolve_rho, rho_to_qdf, AnalyticCase, FockDensityMatrix};
use qprop::ordering::OrderingParams;
use qprop::phasegrid::{propagate, GridSpec, PhaseGrid};
use qprop::states;
use qprop::weinorman::{integrate, IntegratorConfig};

fn grid256() -> GridSpec {
    GridSpec::square(256, 8.0).unwrap()
}

fn run_pipeline(
    initial: &PhaseGrid,
    model: &QuadraticModel,
    g: OrderingParams,
    t: f64,
) -> PhaseGrid {
    let coeffs = assemble(model, g).unwrap();
    let trajectory = integrate(&coeffs, t, &IntegratorConfig::with_dt(1e-4)).unwrap();
    propagate(initial, trajectory.last()).unwrap()
}

#[test]
fn superposition_standard_fixture() {
    // (|0⟩ + |1⟩)/√2 under the oscillator in standard ordering, against the
    // propagated closed form.
    let spec = grid256();
    let t = 0.8;
    let model = QuadraticModel::from_qp(QPHamiltonian::harmonic_oscillator());
    let initial = states::standard_superposition01(spec);
    let result = run_pipeline(&initial, &model, OrderingParams::standard(), t);
    let expect = AnalyticCase::HoStandard01.sample(spec, t);
    let linf = result.max_abs_diff(&expect);
    assert!(linf < 1e-3, "Linf = {linf:.3e}");
}

#[test]
fn driven_damped_oscillator_against_fock_oracle() {
    // Drive and a squeezed reservoir exercise every coefficient family:
    // a4 (scaling), a5/a6 (shifts), and all three diffusion channels.
    let spec = GridSpec::square(128, 8.0).unwrap();
    let g = OrderingParams::wigner();
    let alpha = Complex64::new(0.8, 0.0);
    let t = 0.7;
    let model = QuadraticModel::from_coherent(CoherentHamiltonian::new(
        1.0,
        Complex64::new(0.4, 0.2),
        Complex64::ZERO,
    ))
    .with_damping(DampingSpec::new(0.3, 0.2, Complex64::new(0.1, 0.05)).unwrap())
    .unwrap();

    let initial = states::qdf_coherent(g, alpha, spec).unwrap();
    let result = run_pipeline(&initial, &model, g, t);

    let rho0 = FockDensityMatrix::coherent(30, alpha);
    let rho = evolve_rho(&rho0, &model, t, 1e-3).unwrap();
    let reference = rho_to_qdf(&rho, g, spec).unwrap();

    let l2 = result.l2_diff(&reference);
    assert!(l2 < 1e-3, "L2 = {l2:.3e}");
    let drift = (result.normalization() - initial.normalization()).norm();
    assert!(drift < 1e-6, "normalization drift {drift:.3e}");
}

#[test]
fn squeezed_hamiltonian_against_fock_oracle() {
    // A complex squeeze amplitude in the Hamiltonian itself (k3 ≠ 0 via the
    // imaginary part) — the dictionary sign test at the grid level.
    let spec = GridSpec::square(128, 8.0).unwrap();
    let g = OrderingParams::wigner();
    let t = 0.5;
    let model = QuadraticModel::from_coherent(CoherentHamiltonian::new(
        1.0,
        Complex64::ZERO,
        Complex64::new(0.15, 0.2),
    ));
    let initial = states::qdf_ground(g, spec).unwrap();
    let result = run_pipeline(&initial, &model, g, t);

    let rho0 = FockDensityMatrix::ground(30);
    let rho = evolve_rho(&rho0, &model, t, 1e-3).unwrap();
    let reference = rho_to_qdf(&rho, g, spec).unwrap();
    let l2 = result.l2_diff(&reference);
    assert!(l2 < 1e-3, "L2 = {l2:.3e}");
}

#[test]
fn antinormal_oscillator_rotation() {
    // For equal quadratic coefficients the antinormal function follows the
    // same rotation map as the Wigner function.
    let spec = grid256();
    let g = OrderingParams::antinormal();
    let alpha = Complex64::new(1.0, -0.3);
    let t = 0.9;
    let model = QuadraticModel::from_qp(QPHamiltonian::harmonic_oscillator());
    let initial = states::qdf_coherent(g, alpha, spec).unwrap();
    let result = run_pipeline(&initial, &model, g, t);
    let expect = AnalyticCase::HoAnMap { alpha }.sample(spec, t);
    let rel = result.max_abs_diff(&expect) / expect.max_abs();
    assert!(rel < 1e-3, "relative Linf = {rel:.3e}");
}

#[test]
fn conjugacy_preserved_under_propagation() {
    // Propagating the standard function with standard-ordering coefficients
    // and the antistandard one with its own coefficients keeps the pair
    // complex conjugate.
    let spec = GridSpec::square(128, 8.0).unwrap();
    let alpha = Complex64::new(1.2, 0.3);
    let t = 0.5;
    let model = QuadraticModel::from_qp(QPHamiltonian::harmonic_oscillator());
    let s = run_pipeline(
        &states::qdf_cat(OrderingParams::standard(), alpha, spec).unwrap(),
        &model,
        OrderingParams::standard(),
        t,
    );
    let a = run_pipeline(
        &states::qdf_cat(OrderingParams::antistandard(), alpha, spec).unwrap(),
        &model,
        OrderingParams::antistandard(),
        t,
    );
    let worst = s
        .values
        .iter()
        .zip(&a.values)
        .map(|(x, y)| (x - y.conj()).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-9, "conjugacy violated by {worst:.3e}");
}

#[test]
fn s_ordered_family_interpolates() {
    // s = -1 must coincide with the antinormal construction and
    // propagation en route.
    let spec = GridSpec::square(128, 8.0).unwrap();
    let t = 0.4;
    let model = QuadraticModel::from_qp(QPHamiltonian::harmonic_oscillator());
    let via_s = run_pipeline(
        &states::qdf_ground(OrderingParams::s_ordered(-1.0), spec).unwrap(),
        &model,
        OrderingParams::s_ordered(-1.0),
        t,
    );
    let via_an = run_pipeline(
        &states::qdf_ground(OrderingParams::antinormal(), spec).unwrap(),
        &model,
        OrderingParams::antinormal(),
        t,
    );
    assert!(via_s.max_abs_diff(&via_an) < 1e-14);
}

#[test]
fn free_particle_momentum_marginal_is_static() {
    // The free flow shears q only; momentum moments are conserved.
    let spec = grid256();
    let g = OrderingParams::wigner();
    let alpha = Complex64::new(0.5, 0.7);
    let model = QuadraticModel::from_qp(QPHamiltonian::free_particle());
    let initial = states::qdf_coherent(g, alpha, spec).unwrap();
    let result = run_pipeline(&initial, &model, g, 1.5);
    // Tolerances reflect the resampling error folded into the moments.
    for (m, n) in [(0u32, 1u32), (0, 2)] {
        let before = qprop::phasegrid::moment(&initial, m, n);
        let after = qprop::phasegrid::moment(&result, m, n);
        assert!(
            (before - after).norm() < 1e-4,
            "moment ({m},{n}) moved: {before} -> {after}"
        );
    }
    // ⟨q⟩ advances by ⟨p⟩ t.
    let q0 = qprop::phasegrid::moment(&initial, 1, 0);
    let p0 = qprop::phasegrid::moment(&initial, 0, 1);
    let q1 = qprop::phasegrid::moment(&result, 1, 0);
    assert!((q1 - (q0 + p0 * 1.5)).norm() < 1e-4);
}
