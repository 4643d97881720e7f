use proptest::prelude::*;
use uamo::arithmetic::*;
use uamo::model::Couplings;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Partial quotients of the float x taken as the exact dyadic rational m/2^k.
fn exact_quotients(x: f64, count: usize) -> Vec<i64> {
    let k = 60u32;
    let (mut num, mut den) = ((x * 2f64.powi(k as i32)) as i128, 1i128 << k);
    let mut out = Vec::new();
    while out.len() < count && den != 0 {
        out.push(num.div_euclid(den) as i64);
        (num, den) = (den, num.rem_euclid(den));
    }
    out
}

#[test]
fn inverse_pi_matches_exact_expansion() {
    let x = 1.0 / std::f64::consts::PI;
    let cf = continued_fraction(x, 6).unwrap();
    assert_eq!(cf.partial_quotients, exact_quotients(x, 7));
    assert_eq!(&cf.partial_quotients[..5], &[0, 3, 7, 15, 1]);
    assert_eq!(cf.convergents[4], (113, 355));
}

#[test]
fn golden_and_rational_inputs() {
    let cf = continued_fraction(GOLDEN, 30).unwrap();
    assert!(cf.partial_quotients[1..].iter().all(|&a| a == 1));
    let fib: Vec<(i64, i64)> = cf.convergents.windows(2).map(|w| w[1]).collect();
    for w in fib.windows(2) {
        assert_eq!(w[1].1, w[0].0 + w[0].1);
    }
    let half = continued_fraction(0.5, 10).unwrap();
    assert!(half.rational);
    assert_eq!(half.partial_quotients, vec![0, 2]);
    assert!(continued_fraction(f64::NAN, 3).is_err());
    assert!(continued_fraction(0.3, 41).is_err());
}

#[test]
fn diophantine_examples() {
    let p = DiophantineParams { kappa: 0.2, tau: 1.01, horizon: 10_000 };
    assert!(diophantine_check(GOLDEN, p).unwrap().pass);
    let r = diophantine_check(5.0 / 8.0 + 1e-12, p).unwrap();
    assert!(!r.pass);
    assert_eq!(r.worst_n, 8);
    assert!(diophantine_check(GOLDEN, DiophantineParams { tau: 1.0, ..p }).is_err());
}

#[test]
fn nonresonance_examples() {
    assert!(nonresonance_check(0.0, GOLDEN, 1.5, 10_000, None).unwrap().pass);
    assert!(nonresonance_check(0.25, GOLDEN, 1.5, 10_000, None).unwrap().pass);
    // θ = −100Φ is hit exactly at n = 100
    let r = nonresonance_check(-100.0 * GOLDEN, GOLDEN, 1.5, 10_000, None).unwrap();
    assert!(!r.pass);
    assert!(r.violations.contains(&100));
}

#[test]
fn floor_examples() {
    let f = lyapunov_floor(&Couplings::new(0.6, 0.8).unwrap()).unwrap();
    assert!((f - 1.5f64.ln()).abs() < 1e-15);
    assert_eq!(lyapunov_floor(&Couplings::new(0.4, 0.4).unwrap()).unwrap(), 0.0);
    assert!(lyapunov_floor(&Couplings::new(0.0, 0.4).unwrap()).is_err());
}

fn couplings() -> impl Strategy<Value = Couplings> {
    (0.01f64..1.0, 0.01f64..1.0).prop_map(|(a, b)| Couplings::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn convergents_alternate_and_approximate(x in 0.001f64..0.999) {
        let cf = continued_fraction(x, 12).unwrap();
        let mut last_q = 0;
        // beyond q ~ 1e6 the error is below the precision of x
        for (k, &(p, q)) in cf.convergents.iter().enumerate().take_while(|(_, c)| c.1 < 1_000_000) {
            prop_assert!(q > last_q || (k == 1 && q == last_q));
            last_q = q;
            let err = x - p as f64 / q as f64;
            prop_assert!(err.abs() <= 1.0 / (q as f64).powi(2) + 1e-15);
            if k % 2 == 0 && err.abs() > 1e-12 {
                prop_assert!(err > 0.0);
            } else if err.abs() > 1e-12 {
                prop_assert!(err < 0.0);
            }
        }
    }

    #[test]
    fn diophantine_is_monotone(x in 0.001f64..0.999, kappa in 1e-4f64..1.0, horizon in 10u64..2000) {
        let p = DiophantineParams { kappa, tau: 1.5, horizon };
        let base = diophantine_check(x, p).unwrap().pass;
        let smaller = diophantine_check(x, DiophantineParams { kappa: kappa / 2.0, ..p }).unwrap().pass;
        let longer = diophantine_check(x, DiophantineParams { horizon: 2 * horizon, ..p }).unwrap().pass;
        prop_assert!(!base || smaller);
        prop_assert!(base || !longer);
    }

    #[test]
    fn nonresonance_is_even_in_theta(theta in 0.0f64..1.0, x in 0.01f64..0.99) {
        let a = nonresonance_check(theta, x, 1.5, 500, None).unwrap();
        let b = nonresonance_check(-theta, x, 1.5, 500, None).unwrap();
        let mut neg: Vec<i64> = b.violations.iter().map(|n| -n).collect();
        neg.sort();
        prop_assert_eq!(a.pass, b.pass);
        prop_assert_eq!(a.violations, neg);
    }

    #[test]
    fn floor_is_antisymmetric_and_signs_the_regime(c in couplings()) {
        let f = lyapunov_floor(&c).unwrap();
        prop_assert!((f + lyapunov_floor(&c.swapped()).unwrap()).abs() < 1e-12);
        match phase_classify(&c) {
            Regime::Supercritical => prop_assert!(f > 0.0),
            Regime::Subcritical => prop_assert!(f < 0.0),
            Regime::Critical => prop_assert!(f.abs() < 1e-11),
        }
    }
}
