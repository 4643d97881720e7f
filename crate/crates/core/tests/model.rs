use num_complex::Complex64 as C;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uamo::model::*;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

type Dense = Vec<Vec<C>>;

fn zeros(n: usize) -> Dense {
    vec![vec![C::new(0.0, 0.0); n]; n]
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn matvec(a: &Dense, v: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Walk on sites lo..lo+len as a dense matrix; index 2(n−lo) is the + component.
fn dense_walk(c: &Couplings, phi: f64, theta: f64, lo: i64, len: usize) -> Dense {
    let dim = 2 * len;
    let mut coin = zeros(dim);
    let (l2, l2p) = (c.lambda2, (1.0 - c.lambda2 * c.lambda2).sqrt());
    for k in 0..len {
        let n = lo + k as i64;
        let a = std::f64::consts::TAU * (n as f64 * phi + theta);
        let (s, co) = a.sin_cos();
        coin[2 * k][2 * k] = C::new(l2 * co, l2p);
        coin[2 * k][2 * k + 1] = C::new(-l2 * s, 0.0);
        coin[2 * k + 1][2 * k] = C::new(l2 * s, 0.0);
        coin[2 * k + 1][2 * k + 1] = C::new(l2 * co, -l2p);
    }
    let mut shift = zeros(dim);
    let (l1, l1p) = (c.lambda1, (1.0 - c.lambda1 * c.lambda1).sqrt());
    for k in 0..len {
        // column of δ_n^+ : λ δ_{n+1}^+ + λ' δ_n^-
        if k + 1 < len {
            shift[2 * (k + 1)][2 * k] += C::new(l1, 0.0);
        }
        shift[2 * k + 1][2 * k] += C::new(l1p, 0.0);
        // column of δ_n^- : λ δ_{n-1}^- − λ' δ_n^+
        if k > 0 {
            shift[2 * (k - 1) + 1][2 * k + 1] += C::new(l1, 0.0);
        }
        shift[2 * k][2 * k + 1] += C::new(-l1p, 0.0);
    }
    matmul(&shift, &coin)
}

fn random_state(rng: &mut ChaCha8Rng, sites: usize) -> Vec<[C; 2]> {
    let mut v: Vec<[C; 2]> = (0..sites)
        .map(|_| {
            [
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ]
        })
        .collect();
    let norm = v.iter().map(|p| p[0].norm_sqr() + p[1].norm_sqr()).sum::<f64>().sqrt();
    for p in v.iter_mut() {
        p[0] /= norm;
        p[1] /= norm;
    }
    v
}

#[test]
fn walk_matches_dense_block_product() {
    let c = Couplings::new(0.6, 0.8).unwrap();
    let theta = 0.1;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let state = random_state(&mut rng, 64);
    let (lo, pad) = (-32i64, 4usize);
    let out = walk_apply(&c, &Frequency::real(GOLDEN).unwrap(), Phase::new(theta), &StateWindow::new(lo, state.clone()));

    let dense_lo = lo - pad as i64;
    let len = 64 + 2 * pad;
    let w = dense_walk(&c, GOLDEN, theta, dense_lo, len);
    let mut v = vec![C::new(0.0, 0.0); 2 * len];
    for (k, p) in state.iter().enumerate() {
        v[2 * (k + pad)] = p[0];
        v[2 * (k + pad) + 1] = p[1];
    }
    let expected = matvec(&w, &v);
    for k in 0..len {
        let n = dense_lo + k as i64;
        let got = out.get(n);
        assert!((got[0] - expected[2 * k]).norm() < 1e-13, "site {n} +");
        assert!((got[1] - expected[2 * k + 1]).norm() < 1e-13, "site {n} -");
    }
    assert!((out.interior_norm() - 1.0).abs() < 1e-12);
}

#[test]
fn walk_without_coin_coupling_is_shift_after_diagonal_coin() {
    let c = Couplings::new(0.6, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let state = random_state(&mut rng, 10);
    let f = Frequency::real(GOLDEN).unwrap();
    let i = C::new(0.0, 1.0);
    let coined: Vec<[C; 2]> = state.iter().map(|p| [i * p[0], -i * p[1]]).collect();
    let expected = shift_apply(0.6, &StateWindow::new(-5, coined));
    let got = walk_apply(&c, &f, Phase::new(0.37), &StateWindow::new(-5, state));
    for n in got.lo..=got.hi() {
        for s in 0..2 {
            assert!((got.get(n)[s] - expected.get(n)[s]).norm() < 1e-15);
        }
    }
}

#[test]
fn free_walk_moves_plus_component_right() {
    let c = Couplings::new(1.0, 1.0).unwrap();
    let out = walk_apply(&c, &Frequency::rational(0, 1).unwrap(), Phase::new(0.0), &StateWindow::delta(0, true));
    for n in out.lo..=out.hi() {
        let want = if n == 1 { [C::new(1.0, 0.0), C::new(0.0, 0.0)] } else { [C::new(0.0, 0.0); 2] };
        assert!((out.get(n)[0] - want[0]).norm() < 1e-15 && (out.get(n)[1] - want[1]).norm() < 1e-15);
    }
}

fn random_pair(rng: &mut ChaCha8Rng) -> VerblunskyPair {
    let r: f64 = rng.gen_range(0.0..0.95);
    let alpha = C::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
    let rho = C::from_polar((1.0 - r * r).sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
    VerblunskyPair { alpha, rho }
}

/// Entry (i, j) of ℰ = ℒℳ read off the two-row stencil.
fn displayed_entry(a: &dyn Fn(i64) -> C, r: &dyn Fn(i64) -> C, i: i64, j: i64) -> C {
    let k = i.div_euclid(2);
    let zero = C::new(0.0, 0.0);
    if i % 2 == 0 {
        let k2 = 2 * k;
        match j - k2 {
            -1 => (a(k2) * r(k2 - 1)).conj(),
            0 => -a(k2).conj() * a(k2 - 1),
            1 => a(k2 + 1).conj() * r(k2),
            2 => r(k2 + 1) * r(k2),
            _ => zero,
        }
    } else {
        let k2 = 2 * k;
        match j - k2 {
            -1 => (r(k2) * r(k2 - 1)).conj(),
            0 => -r(k2).conj() * a(k2 - 1),
            1 => -a(k2 + 1).conj() * a(k2),
            2 => -r(k2 + 1) * a(k2),
            _ => zero,
        }
    }
}

#[test]
fn gecmv_matches_displayed_matrix_on_random_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let lo = 2 * rng.gen_range(-5i64..5);
        let pairs: Vec<VerblunskyPair> = (0..8).map(|_| random_pair(&mut rng)).collect();
        let w = CmvWindow::new(lo, pairs.clone()).unwrap();
        let a = |j: i64| pairs[(j - lo) as usize].alpha;
        let r = |j: i64| pairs[(j - lo) as usize].rho;
        let v: Vec<C> = (0..8).map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let out = gecmv_apply(&w, &v).unwrap();
        let mut checked = 0;
        for i in 0..8i64 {
            let row = lo + i;
            // rows 2k and 2k+1 read indices 2k−1..=2k+2
            let k2 = 2 * row.div_euclid(2);
            if k2 - 1 < lo || k2 + 2 > lo + 7 {
                continue;
            }
            assert!(out.valid[i as usize], "row {row} should be valid");
            let want: C = (0..8).map(|j| displayed_entry(&a, &r, row, lo + j) * v[j as usize]).sum();
            assert!((out.values[i as usize] - want).norm() < 1e-14, "row {row}");
            checked += 1;
        }
        assert_eq!(checked, 4);
    }
}

#[test]
fn gecmv_rows_are_orthonormal_away_from_the_edges() {
    let c = Couplings::new(0.6, 0.8).unwrap();
    let f = Frequency::real(GOLDEN).unwrap();
    let w = CmvWindow::uamo(&c, &f, Phase::new(0.2), -20, 21, false).unwrap();
    let e = gecmv_dense(&w).unwrap();
    let n = e.len();
    for i in 6..n - 6 {
        for j in 6..n - 6 {
            let s: C = (0..n).map(|k| e[i][k] * e[j][k].conj()).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((s - want).norm() < 1e-13);
        }
    }
}

#[test]
fn walk_and_cmv_coincide_under_detected_interleaving() {
    let cases = [
        (Couplings::new(0.6, 0.0).unwrap(), Frequency::real(GOLDEN).unwrap(), 0.3, 1e-12, false),
        (Couplings::new(1.0, 1.0).unwrap(), Frequency::rational(0, 1).unwrap(), 0.0, 1e-12, false),
        (Couplings::new(0.6, 0.8).unwrap(), Frequency::real(GOLDEN).unwrap(), 0.1, 1e-10, true),
    ];
    for (c, f, theta, tol, unique) in cases {
        let m = gecmv_vs_walk_check(&c, &f, Phase::new(theta), 64).unwrap();
        assert!(m.deviation < tol, "{c:?}: {}", m.deviation);
        // degenerate couplings admit several interleavings
        if unique {
            assert_eq!(m.interleaving, UAMO_INTERLEAVING);
        }
    }
}

#[test]
fn verblunsky_coefficients_follow_the_uamo_rule() {
    let c = Couplings::new(0.6, 0.8).unwrap();
    let f = Frequency::real(GOLDEN).unwrap();
    let raw = verblunsky_raw(&c, &f, Phase::new(0.0), -1);
    assert!((raw.alpha - 0.0).norm() < 1e-15);
    assert!((raw.rho - C::new(0.8, -0.6)).norm() < 1e-15);
    for n in [-4i64, 0, 6] {
        for theta in [0.0, 0.3] {
            let p = verblunsky_raw(&c, &f, Phase::new(theta), n);
            assert_eq!((p.alpha, p.rho), (C::new(0.8, 0.0), C::new(0.6, 0.0)));
        }
    }
    let g = verblunsky_gauged(&c, &f, Phase::new(0.0), -1);
    assert!((g.rho - 1.0).norm() < 1e-15);
    let edge = verblunsky_gauged(&Couplings::new(0.5, 1.0).unwrap(), &Frequency::rational(0, 1).unwrap(), Phase::new(0.25), 1);
    assert!((edge.alpha - 1.0).norm() < 1e-15 && edge.rho.norm() < 1e-15);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(Couplings::new(-0.1, 0.5).is_err());
    assert!(Couplings::new(0.5, 1.5).is_err());
    assert!(Frequency::rational(1, 0).is_err());
    assert!(CmvWindow::new(1, vec![]).is_err());
    let off = VerblunskyPair { alpha: C::new(0.9, 0.0), rho: C::new(0.9, 0.0) };
    assert!(CmvWindow::new(0, vec![off]).is_err());
    let w = CmvWindow::new(0, vec![VerblunskyPair { alpha: C::new(0.0, 0.0), rho: C::new(1.0, 0.0) }; 4]).unwrap();
    assert!(gecmv_apply(&w, &[C::new(1.0, 0.0); 3]).is_err());
}

proptest! {
    #[test]
    fn verblunsky_pairs_lie_on_the_sphere(l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0, phi in 0.0f64..1.0, theta in 0.0f64..1.0, n in -1000i64..1000) {
        let c = Couplings::new(l1, l2).unwrap();
        let f = Frequency::real(phi).unwrap();
        let raw = verblunsky_raw(&c, &f, Phase::new(theta), n);
        let g = verblunsky_gauged(&c, &f, Phase::new(theta), n);
        prop_assert!(raw.sphere_defect() < 1e-14);
        prop_assert!(g.sphere_defect() < 1e-14);
        prop_assert!(g.rho.im == 0.0 && g.rho.re >= 0.0 && g.alpha.im == 0.0);
        prop_assert!((g.alpha - raw.alpha).norm() == 0.0);
    }

    #[test]
    fn walk_preserves_norm(l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0, theta in 0.0f64..1.0, seed in any::<u64>()) {
        let c = Couplings::new(l1, l2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let state = random_state(&mut rng, 16);
        let out = walk_apply(&c, &Frequency::real(GOLDEN).unwrap(), Phase::new(theta), &StateWindow::new(3, state));
        prop_assert!((out.norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn coin_is_unitary_with_unit_determinant(l in 0.0f64..=1.0, a in -10.0f64..10.0) {
        let q = coin_matrix(l, a).unwrap();
        prop_assert!((q.det() - 1.0).norm() < 1e-14);
        let p = q * q.adjoint();
        prop_assert!(p.sub(&uamo::linalg::Mat2::identity()).max_abs() < 1e-14);
    }
}
