//! Acceptance suite. One test per criterion; each prints a pass line with
//! its measured figures (visible with `--nocapture`) and asserts the stated
//! tolerance.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use qprop::eom::{assemble, damping_lie_coeffs, hamiltonian_lie_coeffs};
use qprop::model::{CoherentHamiltonian, DampingSpec, QPHamiltonian, QuadraticModel};
use qprop::oracle::{evolve_rho, rho_to_qdf, AnalyticCase, FockDensityMatrix};
use qprop::ordering::OrderingParams;
use qprop::phasegrid::{from_char, propagate, propagate_piecewise, to_char, GridSpec, PhaseGrid};
use qprop::states;
use qprop::weinorman::{integrate, IntegratorConfig, WnTrajectory};

const PI: f64 = std::f64::consts::PI;

fn report(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS ({detail})");
}

fn grid256() -> GridSpec {
    GridSpec::square(256, 8.0).unwrap()
}

fn ho_model() -> QuadraticModel {
    QuadraticModel::from_qp(QPHamiltonian::harmonic_oscillator())
}

fn run_single(
    initial: &PhaseGrid,
    model: &QuadraticModel,
    g: OrderingParams,
    t: f64,
    dt: f64,
) -> PhaseGrid {
    let coeffs = assemble(model, g).unwrap();
    let trajectory = integrate(&coeffs, t, &IntegratorConfig::with_dt(dt)).unwrap();
    propagate(initial, trajectory.last()).unwrap()
}

/// Worst deviation of selected trajectory components from closed forms,
/// over every output node.
fn trajectory_error(
    trajectory: &WnTrajectory,
    expected: impl Fn(f64) -> Vec<(usize, Complex64)>,
) -> f64 {
    let mut worst = 0.0f64;
    for state in &trajectory.states {
        for (index, value) in expected(state.t) {
            worst = worst.max((state.w[index] - value).norm());
        }
    }
    worst
}

#[test]
fn criterion_01_oscillator_wigner_factor_coefficients() {
    let start = Instant::now();
    let coeffs = hamiltonian_lie_coeffs(
        &QPHamiltonian::harmonic_oscillator(),
        OrderingParams::wigner(),
    );
    let trajectory = integrate(&coeffs, 1.2, &IntegratorConfig::with_dt(1e-4)).unwrap();
    let err = trajectory_error(&trajectory, |t| {
        vec![
            (0, Complex64::new(-t.tan(), 0.0)),
            (1, Complex64::new(t.sin() * t.cos(), 0.0)),
            (2, Complex64::new(t.cos().ln(), 0.0)),
        ]
    });
    let elapsed = start.elapsed();
    assert!(err <= 1e-8, "max error {err:.3e}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    report(
        "01",
        format!("max |w - closed form| = {err:.3e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_oscillator_standard_factor_coefficients() {
    let coeffs = hamiltonian_lie_coeffs(
        &QPHamiltonian::harmonic_oscillator(),
        OrderingParams::standard(),
    );
    let trajectory = integrate(&coeffs, 1.2, &IntegratorConfig::with_dt(1e-4)).unwrap();
    let err = trajectory_error(&trajectory, |t| {
        vec![
            (0, Complex64::new(-t.tan(), 0.0)),
            (1, Complex64::new(t.sin() * t.cos(), 0.0)),
            (2, Complex64::new(t.cos().ln(), 0.0)),
            (6, Complex64::new(0.0, -0.25 * (2.0 * t).sin())),
            (7, Complex64::new(0.0, 0.25 * (2.0 * t).sin())),
            (8, Complex64::new(0.0, 0.5 * ((2.0 * t).cos() - 1.0))),
        ]
    });
    assert!(err <= 1e-8, "max error {err:.3e}");
    report("02", format!("max |w - closed form| = {err:.3e}"));
}

#[test]
fn criterion_03_exponential_mass_factor_coefficients() {
    let (eps, delta) = (0.3, 0.1);
    let model = QuadraticModel::from_qp(QPHamiltonian::exponential_mass(eps, delta));
    let coeffs = assemble(&model, OrderingParams::standard()).unwrap();
    let trajectory = integrate(&coeffs, 1.0, &IntegratorConfig::with_dt(1e-4)).unwrap();
    let err = trajectory_error(&trajectory, |t| {
        let phase = 2.0 * eps * t;
        vec![
            (
                0,
                Complex64::new(-phase.tan() * (2.0 * delta * t).exp(), 0.0),
            ),
            (
                1,
                Complex64::new((-2.0 * delta * t).exp() * phase.sin() * phase.cos(), 0.0),
            ),
            (2, Complex64::new(-delta * t + phase.cos().ln(), 0.0)),
            (6, Complex64::new(0.0, -0.25 * (2.0 * phase).sin())),
            (7, Complex64::new(0.0, 0.25 * (2.0 * phase).sin())),
            (8, Complex64::new(0.0, 0.5 * ((2.0 * phase).cos() - 1.0))),
        ]
    });
    assert!(err <= 1e-7, "max error {err:.3e}");
    report("03", format!("max |w - closed form| = {err:.3e}"));
}

#[test]
fn criterion_04_end_to_end_rotation() {
    let alpha = Complex64::new(1.0, 0.5);
    let g = OrderingParams::wigner();
    let t = PI / 6.0;
    let initial = states::qdf_coherent(g, alpha, grid256()).unwrap();
    let start = Instant::now();
    let result = run_single(&initial, &ho_model(), g, t, 1e-4);
    let elapsed = start.elapsed();
    let reference = AnalyticCase::HoWignerMap { alpha }.sample(grid256(), t);
    let rel = result.max_abs_diff(&reference) / reference.max_abs();
    assert!(rel <= 1e-3, "relative Linf {rel:.3e}");
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    report("04", format!("relative Linf = {rel:.3e}, {elapsed:?}"));
}

#[test]
fn criterion_05_free_particle_fixtures() {
    let model = QuadraticModel::from_qp(QPHamiltonian::free_particle());
    let spec = grid256();

    let standard = states::qdf_ground(OrderingParams::standard(), spec).unwrap();
    let got_standard = run_single(&standard, &model, OrderingParams::standard(), 1.0, 1e-4);
    let expect_standard = AnalyticCase::FreeStandardGround.sample(spec, 1.0);
    let linf_s = got_standard.max_abs_diff(&expect_standard);
    assert!(linf_s <= 1e-3, "standard Linf {linf_s:.3e}");

    let antinormal = states::qdf_ground(OrderingParams::antinormal(), spec).unwrap();
    let got_an = run_single(&antinormal, &model, OrderingParams::antinormal(), 2.0, 1e-4);
    let expect_an = AnalyticCase::FreeQGround.sample(spec, 2.0);
    let linf_a = got_an.max_abs_diff(&expect_an);
    assert!(linf_a <= 1e-3, "antinormal Linf {linf_a:.3e}");

    // Spot value at the origin after t = 2.
    let spot = got_an.at(128, 128);
    let expect_spot = 1.0 / (PI * 8.0f64.sqrt());
    assert!(
        (spot - Complex64::new(expect_spot, 0.0)).norm() <= 1e-6,
        "spot {spot} vs {expect_spot}"
    );
    report(
        "05",
        format!(
            "standard Linf = {linf_s:.3e}, antinormal Linf = {linf_a:.3e}, \
             F(0,0,2) = {:.6} vs {expect_spot:.6}",
            spot.re
        ),
    );
}

#[test]
fn criterion_06_cat_state_propagation() {
    let alpha = Complex64::new(1.5, 0.0);
    let g = OrderingParams::standard();
    let t = 0.5;
    let initial = states::qdf_cat(g, alpha, grid256()).unwrap();
    let result = run_single(&initial, &ho_model(), g, t, 1e-4);
    let reference = AnalyticCase::HoStandardCat { alpha }.sample(grid256(), t);
    let linf = result.max_abs_diff(&reference);
    assert!(linf <= 1e-3, "Linf {linf:.3e}");
    report("06", format!("Linf = {linf:.3e}"));
}

#[test]
fn criterion_07_exponential_mass_end_to_end() {
    let (eps, delta) = (0.3, 0.1);
    let g = OrderingParams::standard();
    let model = QuadraticModel::from_qp(QPHamiltonian::exponential_mass(eps, delta));
    let initial = states::qdf_ground(g, grid256()).unwrap();
    let result = run_single(&initial, &model, g, 1.0, 1e-4);
    let reference = AnalyticCase::TdepStandardGround {
        epsilon: eps,
        delta,
    }
    .sample(grid256(), 1.0);
    let linf = result.max_abs_diff(&reference);
    assert!(linf <= 1e-3, "Linf {linf:.3e}");
    report("07", format!("Linf = {linf:.3e}"));
}

#[test]
fn criterion_08_coefficient_path_equivalence() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(88);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let omega = rng.gen_range(0.1..3.0);
        let g = OrderingParams::new(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        );
        let model = QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(omega))
            .with_damping(DampingSpec::new(0.0, 0.0, Complex64::ZERO).unwrap())
            .unwrap();
        let via_damping = damping_lie_coeffs(&model, g).unwrap().eval(0.0);
        let via_hamiltonian = hamiltonian_lie_coeffs(&model.hamiltonian, g).eval(0.0);
        let symbolic = [
            Complex64::new(0.0, -2.0 * omega * g.g3),
            Complex64::new(0.0, 2.0 * omega * g.g3),
            Complex64::new(2.0 * omega * (g.g1 - g.g2), 0.0),
        ];
        for i in 6..9 {
            worst = worst.max((via_damping[i] - via_hamiltonian[i]).norm());
            worst = worst.max((via_damping[i] - symbolic[i - 6]).norm());
        }
    }
    assert!(worst <= 1e-12, "worst mismatch {worst:.3e}");
    report(
        "08",
        format!("100 draws, worst |route A - route B| = {worst:.3e}"),
    );
}

#[test]
fn criterion_09_fock_oracle_damped_cat() {
    let start = Instant::now();
    let alpha = Complex64::new(1.5, 0.0);
    let g = OrderingParams::wigner();
    let t = 0.8;
    let model = QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(1.0))
        .with_damping(DampingSpec::new(0.2, 0.5, Complex64::ZERO).unwrap())
        .unwrap();
    let spec = grid256();

    let initial = states::qdf_cat(g, alpha, spec).unwrap();
    let result = run_single(&initial, &model, g, t, 1e-4);

    let rho0 = FockDensityMatrix::cat(40, alpha);
    let rho = evolve_rho(&rho0, &model, t, 1e-3).unwrap();
    let reference = rho_to_qdf(&rho, g, spec).unwrap();

    let l2 = result.l2_diff(&reference);
    let elapsed = start.elapsed();
    assert!(l2 <= 1e-3, "L2 {l2:.3e}");
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    report("09", format!("L2 = {l2:.3e}, {elapsed:?}"));
}

#[test]
fn criterion_10_property_suite() {
    let spec = grid256();
    let mut details = Vec::new();

    // Normalization drift under every grid propagation of the suite. The
    // freely spreading states get a wider window: conservation can only be
    // measured while the state stays inside it (at ±8 the t = 2 state
    // genuinely carries ~4e-6 of its mass past the boundary).
    let wide = GridSpec::square(256, 12.0).unwrap();
    let mut worst_drift = 0.0f64;
    let mut wigner_imag = 0.0f64;
    {
        let cases: Vec<(PhaseGrid, QuadraticModel, OrderingParams, f64, bool)> = vec![
            (
                states::qdf_coherent(OrderingParams::wigner(), Complex64::new(1.0, 0.5), spec)
                    .unwrap(),
                ho_model(),
                OrderingParams::wigner(),
                PI / 6.0,
                true,
            ),
            (
                states::qdf_ground(OrderingParams::standard(), wide).unwrap(),
                QuadraticModel::from_qp(QPHamiltonian::free_particle()),
                OrderingParams::standard(),
                1.0,
                false,
            ),
            (
                states::qdf_ground(OrderingParams::antinormal(), wide).unwrap(),
                QuadraticModel::from_qp(QPHamiltonian::free_particle()),
                OrderingParams::antinormal(),
                2.0,
                false,
            ),
            (
                states::qdf_cat(OrderingParams::standard(), Complex64::new(1.5, 0.0), spec)
                    .unwrap(),
                ho_model(),
                OrderingParams::standard(),
                0.5,
                false,
            ),
            (
                states::qdf_ground(OrderingParams::standard(), spec).unwrap(),
                QuadraticModel::from_qp(QPHamiltonian::exponential_mass(0.3, 0.1)),
                OrderingParams::standard(),
                1.0,
                false,
            ),
            (
                states::qdf_cat(OrderingParams::wigner(), Complex64::new(1.5, 0.0), spec).unwrap(),
                QuadraticModel::from_coherent(CoherentHamiltonian::oscillator(1.0))
                    .with_damping(DampingSpec::new(0.2, 0.5, Complex64::ZERO).unwrap())
                    .unwrap(),
                OrderingParams::wigner(),
                0.8,
                true,
            ),
        ];
        for (initial, model, g, t, is_wigner) in cases {
            let result = run_single(&initial, &model, g, t, 1e-4);
            let drift = (result.normalization() - initial.normalization()).norm();
            worst_drift = worst_drift.max(drift);
            if is_wigner {
                let imag = result.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
                wigner_imag = wigner_imag.max(imag);
            }
        }
    }
    assert!(worst_drift < 1e-6, "normalization drift {worst_drift:.3e}");
    details.push(format!("normalization drift {worst_drift:.3e}"));
    assert!(
        wigner_imag <= 1e-9,
        "Wigner imaginary part {wigner_imag:.3e}"
    );
    details.push(format!("Wigner |Im| {wigner_imag:.3e}"));

    // Standard/antistandard conjugacy at t = 0.
    let s = states::qdf_cat(OrderingParams::standard(), Complex64::new(1.5, 0.0), spec).unwrap();
    let a = states::qdf_cat(
        OrderingParams::antistandard(),
        Complex64::new(1.5, 0.0),
        spec,
    )
    .unwrap();
    let conj = s
        .values
        .iter()
        .zip(&a.values)
        .map(|(x, y)| (x - y.conj()).norm())
        .fold(0.0, f64::max);
    assert!(conj <= 1e-10, "conjugacy defect {conj:.3e}");
    details.push(format!("conjugacy {conj:.3e}"));

    // Transform round trip on a random grid.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
    let random = PhaseGrid {
        spec: GridSpec::square(128, 8.0).unwrap(),
        values: (0..128 * 128)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    };
    let rt = random.max_abs_diff(&from_char(&to_char(&random)));
    assert!(rt <= 1e-12, "transform round trip {rt:.3e}");
    details.push(format!("transform round trip {rt:.3e}"));

    // Fourth-order convergence on the criterion-1 fixture.
    let coeffs = hamiltonian_lie_coeffs(
        &QPHamiltonian::harmonic_oscillator(),
        OrderingParams::wigner(),
    );
    let closed_err = |dt: f64| {
        let trajectory = integrate(&coeffs, 1.2, &IntegratorConfig::with_dt(dt)).unwrap();
        let w = trajectory.last().w;
        let t: f64 = 1.2;
        [
            (w[0] - Complex64::new(-t.tan(), 0.0)).norm(),
            (w[1] - Complex64::new(t.sin() * t.cos(), 0.0)).norm(),
            (w[2] - Complex64::new(t.cos().ln(), 0.0)).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    };
    let ratio = closed_err(4e-3) / closed_err(2e-3);
    assert!((ratio - 16.0).abs() <= 3.0, "convergence ratio {ratio:.2}");
    details.push(format!("RK4 ratio {ratio:.2}"));

    report("10", details.join("; "));
}

#[test]
fn criterion_11_piecewise_through_pole() {
    let alpha = Complex64::new(1.0, 0.5);
    let g = OrderingParams::wigner();
    let spec = grid256();
    let initial = states::qdf_coherent(g, alpha, spec).unwrap();
    let result = propagate_piecewise(
        &initial,
        &ho_model(),
        g,
        PI,
        8,
        &IntegratorConfig::with_dt(1e-4),
    )
    .unwrap();
    // Half a period inverts phase space: F(q, p, π) = F(-q, -p, 0).
    let reference = AnalyticCase::HoWignerMap { alpha }.sample(spec, PI);
    let linf = result.max_abs_diff(&reference);
    assert!(linf <= 2e-3, "Linf {linf:.3e}");
    report("11", format!("Linf = {linf:.3e}"));
}
