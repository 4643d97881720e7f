use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use uamo::cocycle::{propagate_solution, rotation_number, CocycleSpec, Family};
use uamo::duality::*;
use uamo::error::Error;
use uamo::linalg::torus_dist;
use uamo::model::{Couplings, Frequency, Phase};
use uamo::spectrum::{band_arcs, band_arcs_at_phase, BandOptions};

const GOLDEN: f64 = 0.618_033_988_749_894_9;

fn c(l1: f64, l2: f64) -> Couplings {
    Couplings::new(l1, l2).unwrap()
}

fn fr(p: i64, q: i64) -> Frequency {
    Frequency::rational(p, q).unwrap()
}

#[test]
fn dual_parameters_swap_the_couplings() {
    assert_eq!(dual_params(&c(0.6, 0.8)), c(0.8, 0.6));
    for (a, b) in [(0.1, 0.9), (0.5, 0.5), (0.0, 1.0)] {
        assert_eq!(dual_params(&dual_params(&c(a, b))), c(a, b));
        assert_eq!(dual_params(&c(a, b)) == c(a, b), a == b);
    }
}

#[test]
fn isospectrality() {
    let o = BandOptions::default();
    assert!(isospectrality_check(&c(0.6, 0.8), &fr(2, 5), &o).unwrap() < 1e-8);
    assert_eq!(isospectrality_check(&c(0.7, 0.7), &fr(2, 5), &o).unwrap(), 0.0);
    // λ1 = 0 removes the shift and the two-step map degenerates
    assert!(matches!(isospectrality_check(&c(0.6, 0.0), &fr(2, 5), &o), Err(Error::SingularCocycle { .. })));
}

#[test]
fn rotation_numbers_match_without_coin_coupling() {
    // the dual cocycle divides by λ2, so the constant case is approached from λ2 = 1e-9
    assert!(rotation_match_check(&c(0.6, 0.0), &Frequency::real(GOLDEN).unwrap(), 1.2, 1000, 0.0).is_err());
    let cc = c(0.6, 1e-9);
    for zeta in [0.3, 1.2, 2.0, 4.4] {
        let d = rotation_match_check(&cc, &Frequency::real(GOLDEN).unwrap(), zeta, 100_000, 0.0).unwrap();
        assert!(d < 1e-4, "ζ = {zeta}: {d}");
    }
}

#[test]
fn rotation_numbers_match_at_the_golden_mean() {
    let f = Frequency::real(GOLDEN).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for cc in [c(0.6, 0.8), c(0.8, 0.6), c(0.7, 0.7)] {
        for _ in 0..16 {
            let zeta = rng.gen_range(0.0..TAU);
            let d = rotation_match_check(&cc, &f, zeta, 100_000, 0.0).unwrap();
            assert!(d < 1e-3, "{cc:?} ζ = {zeta}: {d}");
        }
    }
}

#[test]
fn both_rotation_numbers_sit_on_the_gap_plateau() {
    let cc = c(0.6, 0.8);
    let f = fr(2, 5);
    // gap midpoints with integrated density m/10 from eigenvalue counting
    for (mid, m) in [(0.737_631_072, 1), (1.904_074_375, 3), (std::f64::consts::PI, 5)] {
        for fam in [Family::TwoStep, Family::DualTwoStep] {
            let rot = rotation_number(&CocycleSpec::new(fam, cc, f, mid), 100_000, 0.0).unwrap();
            assert!(torus_dist(rot - m as f64 / 10.0) < 1e-4, "{fam:?} at {mid}: {rot}");
        }
    }
}

#[test]
fn transform_examples() {
    let phi = FourierVector::new(0, vec![C::new(1.0, 0.0)], vec![C::new(0.0, 0.0)]).unwrap();
    let psi = duality_transform(&phi);
    assert!((psi.plus[0] - FRAC_1_SQRT_2).norm() < 1e-15);
    assert!((psi.minus[0] - C::new(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
    assert!(FourierVector::new(0, vec![C::new(1.0, 0.0)], vec![]).is_err());
}

fn fourier_vector() -> impl Strategy<Value = FourierVector> {
    (-10i64..10, prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0), 1..12)).prop_map(|(lo, v)| {
        let plus = v.iter().map(|t| C::new(t.0, t.1)).collect();
        let minus = v.iter().map(|t| C::new(t.2, t.3)).collect();
        FourierVector::new(lo, plus, minus).unwrap()
    })
}

proptest! {
    #[test]
    fn transform_is_unitary(phi in fourier_vector()) {
        let psi = duality_transform(&phi);
        prop_assert!((psi.norm() - phi.norm()).abs() < 1e-14 * phi.norm().max(1.0));
        for (a, b) in psi.plus.iter().zip(&psi.minus) {
            let (x, y) = ((a + C::new(0.0, 1.0) * b) * FRAC_1_SQRT_2, (C::new(0.0, 1.0) * a + b) * FRAC_1_SQRT_2);
            prop_assert!(x.norm().is_finite() && y.norm().is_finite());
        }
        let back = inverse_duality_transform(&psi);
        for m in phi.lo..=phi.hi() {
            let (p, q) = (phi.coeff(m), back.coeff(m));
            prop_assert!((p[0] - q[0]).norm() < 1e-15 && (p[1] - q[1]).norm() < 1e-15);
        }
    }

    #[test]
    fn transform_commutes_with_index_shift(phi in fourier_vector(), k in -20i64..20) {
        let a = duality_transform(&phi.shifted(k));
        let b = duality_transform(&phi).shifted(k);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn closed_form_wave_without_coin_coupling() {
    // For λ2 = 0 the dual operator acts site by site through
    // K = [[−s, c], [−c̄, −s]], c = λ1 cos a + iλ1', s = λ1 sin a, with
    // eigenvalues −s ± i|c|. A wave supported on the orbit point ξ solves it.
    let cc = c(0.6, 0.0);
    let f = fr(1, 3);
    let xi = 0.17;
    let a = TAU * xi;
    let coin = C::new(0.6 * a.cos(), 0.8);
    let s = 0.6 * a.sin();
    for sign in [1.0, -1.0] {
        let z = C::new(-s, sign * coin.norm());
        let v = [coin, C::new(0.0, sign * coin.norm())];
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let zero = [C::new(0.0, 0.0); 2];
        let phi = FourierVector::interpolate(&f, xi, &[[v[0] / n, v[1] / n], zero, zero]).unwrap();
        let r = duality_residual(&cc, &f, 0.37, z, &phi, xi, 30).unwrap();
        assert!(r.input_residual < 1e-12 && r.residual < 1e-10, "{r:?}");
    }
}

#[test]
fn floquet_waves_map_to_eigenfunctions() {
    let cc = c(0.6, 0.8);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut waves = 0;
    for f in [fr(1, 3), fr(2, 5)] {
        for xi in [0.0, 0.21, 0.3] {
            let arcs = band_arcs_at_phase(&cc.swapped(), &f, xi, &BandOptions::default()).unwrap();
            for arc in &arcs.arcs {
                let w = dual_floquet_wave(&cc, &f, xi, arc.mid()).unwrap();
                let r = duality_residual(&cc, &f, w.theta.0, w.z, &w.base, xi, 30).unwrap();
                assert!(r.residual < 1e-8, "{r:?}");

                // a wave with a measurable residual: the transform must not amplify it
                let mut noisy = w.base.clone();
                for x in noisy.plus.iter_mut().chain(noisy.minus.iter_mut()) {
                    *x += C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * 1e-10;
                }
                let r = duality_residual(&cc, &f, w.theta.0, w.z, &noisy, xi, 30).unwrap();
                assert!(r.input_residual > 1e-12 && r.residual <= 10.0 * r.input_residual, "{r:?}");
                waves += 1;
            }
        }
    }
    assert_eq!(waves, 3 * 6 + 3 * 10);
}

#[test]
fn degenerate_and_invalid_waves() {
    let cc = c(0.6, 0.8);
    let f = fr(2, 5);
    let z = C::from_polar(1.0, 1.0);
    let zero = FourierVector::new(0, vec![C::new(0.0, 0.0); 3], vec![C::new(0.0, 0.0); 3]).unwrap();
    let r = duality_residual(&cc, &f, 0.1, z, &zero, 0.2, 10).unwrap();
    assert!(r.degenerate && r.residual == 0.0);
    let bogus = FourierVector::new(-1, vec![C::new(1.0, 0.5); 3], vec![C::new(-0.3, 0.2); 3]).unwrap();
    assert!(matches!(duality_residual(&cc, &f, 0.1, z, &bogus, 0.2, 10), Err(Error::Precondition { .. })));
    assert!(dual_floquet_wave(&cc, &Frequency::real(GOLDEN).unwrap(), 0.1, 1.0).is_err());
}

#[test]
fn wronskian_of_a_solution_with_itself_vanishes() {
    let cc = c(0.6, 0.8);
    let f = Frequency::real(GOLDEN).unwrap();
    let u = propagate_solution(&cc, &f, Phase::new(0.3), 1.1, [C::new(0.4, 0.1), C::new(-0.2, 0.7)], -50, 50).unwrap();
    for n in -50..=50 {
        assert_eq!(wronskian(&u, &u, n).unwrap(), C::new(0.0, 0.0));
    }
    assert!(wronskian(&u, &u, 51).is_err());
}

#[test]
fn free_wronskian_is_the_initial_determinant() {
    // λ1 = 1, λ2 = 0 gives α ≡ 0, ρ ≡ 1
    let cc = c(1.0, 0.0);
    let f = Frequency::real(GOLDEN).unwrap();
    let (a, b) = ([C::new(0.3, -1.0), C::new(0.5, 0.2)], [C::new(-0.7, 0.1), C::new(0.0, 1.3)]);
    let u = propagate_solution(&cc, &f, Phase::new(0.0), 0.9, a, -1000, 1000).unwrap();
    let v = propagate_solution(&cc, &f, Phase::new(0.0), 0.9, b, -1000, 1000).unwrap();
    let det = a[0] * b[1] - a[1] * b[0];
    for n in (-1000..=1000).step_by(37) {
        assert!((wronskian(&u, &v, n).unwrap() - det).norm() < 1e-12);
    }
}

#[test]
fn wronskian_is_constant_for_bounded_solutions() {
    // subcritical couplings at the golden mean, ζ at band centres of the 34/55 approximant
    let cc = c(0.8, 0.6);
    let f = Frequency::real(GOLDEN).unwrap();
    let bs = band_arcs(&cc, &fr(34, 55), &BandOptions::default()).unwrap();
    for arc in bs.arcs.iter().step_by(22) {
        let u = propagate_solution(&cc, &f, Phase::new(0.0), arc.mid(), [C::new(1.0, 0.0), C::new(0.0, 0.0)], -1000, 1000).unwrap();
        let v = propagate_solution(&cc, &f, Phase::new(0.0), arc.mid(), [C::new(0.0, 0.0), C::new(1.0, 0.0)], -1000, 1000).unwrap();
        let d = wronskian_drift(&u, &v).unwrap();
        assert!(d < 1e-9, "ζ = {}: {d}", arc.mid());
    }
}

#[test]
fn relative_wronskian_drift_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (e1, e2) = ([C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(1.0, 0.0)]);
    for _ in 0..100 {
        let cc = c(rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
        let f = Frequency::real(rng.gen_range(0.0..1.0)).unwrap();
        let ph = Phase::new(rng.gen_range(0.0..1.0));
        let zeta = rng.gen_range(0.0..TAU);
        let d = wronskian_pair_drift(&cc, &f, ph, zeta, e1, e2, -1000, 1000).unwrap();
        assert!(d < 1e-9, "{cc:?}: {d}");

        // on a short range the stored samples stay finite and give the same number
        let u = propagate_solution(&cc, &f, ph, zeta, e1, -30, 30).unwrap();
        let v = propagate_solution(&cc, &f, ph, zeta, e2, -30, 30).unwrap();
        let short = wronskian_pair_drift(&cc, &f, ph, zeta, e1, e2, -30, 30).unwrap();
        let stored = wronskian_relative_drift(&u, &v).unwrap();
        assert!((short - stored).abs() < 1e-13, "{short:e} {stored:e}");
    }
}
