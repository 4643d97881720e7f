//! Continued fractions, Diophantine and nonresonance scans, the Lyapunov
//! floor and the coupling phase diagram.

use crate::error::{Error, Result};
use crate::linalg::torus_dist;
use crate::model::Couplings;
use serde::Serialize;
use std::f64::consts::TAU;

/// Continued fraction expansion x = [a0; a1, a2, ...].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuedFraction {
    pub x: f64,
    pub partial_quotients: Vec<i64>,
    /// Convergent k is p_k/q_k built from a0..ak.
    pub convergents: Vec<(i64, i64)>,
    /// Set when the expansion terminated because x is rational to machine precision.
    pub rational: bool,
}

impl ContinuedFraction {
    pub fn convergent(&self, depth: usize) -> Option<(i64, i64)> {
        self.convergents.get(depth).copied()
    }
}

/// Expansion up to index `depth` (at most 40).
pub fn continued_fraction(x: f64, depth: usize) -> Result<ContinuedFraction> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("cannot expand {x}")));
    }
    if depth > 40 {
        return Err(Error::Domain(format!("depth {depth} exceeds 40")));
    }
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    let (mut p_prev, mut q_prev, mut p, mut q) = (0i64, 0i64, 1i64, 0i64);
    // (p_{-2}, q_{-2}) = (0, 1), (p_{-1}, q_{-1}) = (1, 0)
    q_prev += 1;
    let mut r = x;
    let mut rational = false;
    for _ in 0..=depth {
        let a = r.floor();
        let ai = a as i64;
        quotients.push(ai);
        let (pn, qn) = (ai * p + p_prev, ai * q + q_prev);
        (p_prev, q_prev, p, q) = (p, q, pn, qn);
        convergents.push((p, q));
        let frac = r - a;
        if frac < 1e-15 {
            rational = true;
            break;
        }
        r = 1.0 / frac;
    }
    Ok(ContinuedFraction { x, partial_quotients: quotients, convergents, rational })
}

/// Constants of the Diophantine condition ‖nΦ‖ ≥ κ/|n|^{τ+2}, scanned up to `horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiophantineParams {
    pub kappa: f64,
    pub tau: f64,
    pub horizon: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiophantineReport {
    /// No violation found for 0 < |n| ≤ horizon.
    pub pass: bool,
    pub worst_n: i64,
    /// ‖nΦ‖·|n|^{τ+2}/κ at the worst n; below 1 means violated.
    pub worst_ratio: f64,
}

pub fn diophantine_check(phi: f64, params: DiophantineParams) -> Result<DiophantineReport> {
    if params.kappa <= 0.0 || params.tau <= 1.0 || params.horizon == 0 {
        return Err(Error::Domain(format!("invalid Diophantine parameters {params:?}")));
    }
    let mut worst = DiophantineReport { pass: true, worst_n: 1, worst_ratio: f64::INFINITY };
    for n in 1..=params.horizon {
        let nf = n as f64;
        let ratio = torus_dist(nf * phi) * nf.powf(params.tau + 2.0) / params.kappa;
        if ratio < worst.worst_ratio {
            worst.worst_ratio = ratio;
            worst.worst_n = n as i64;
        }
    }
    worst.pass = worst.worst_ratio >= 1.0;
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonresonanceReport {
    pub pass: bool,
    /// All 0 < |n| ≤ N with |sin 2π(θ+nΦ)| < exp(−|n|^{1/(2τ)}).
    pub violations: Vec<i64>,
    pub n_floor: i64,
}

/// Default floor below which violations are tolerated: ⌊√N⌋.
pub fn default_n_floor(horizon: i64) -> i64 {
    (horizon.max(0) as f64).sqrt().floor() as i64
}

/// Scans 0 < |n| ≤ N; `n_floor` defaults to [`default_n_floor`].
pub fn nonresonance_check(theta: f64, phi: f64, tau: f64, horizon: i64, n_floor: Option<i64>) -> Result<NonresonanceReport> {
    let n_floor = n_floor.unwrap_or_else(|| default_n_floor(horizon));
    if tau <= 0.0 {
        return Err(Error::Domain(format!("tau = {tau} must be positive")));
    }
    let mut violations = Vec::new();
    for n in -horizon..=horizon {
        if n == 0 {
            continue;
        }
        let x = n as f64 * phi;
        let t = theta + (x - x.floor());
        let s = (TAU * (t - t.floor())).sin().abs();
        if s < (-(n.unsigned_abs() as f64).powf(1.0 / (2.0 * tau))).exp() {
            violations.push(n);
        }
    }
    let pass = violations.iter().all(|n| n.abs() <= n_floor);
    Ok(NonresonanceReport { pass, violations, n_floor })
}

/// log[λ2(1+λ1')/(λ1(1+λ2'))].
pub fn lyapunov_floor(c: &Couplings) -> Result<f64> {
    if c.lambda1 == 0.0 || c.lambda2 == 0.0 {
        return Err(Error::Domain(format!(
            "floor is infinite for couplings ({}, {})",
            c.lambda1, c.lambda2
        )));
    }
    Ok((c.lambda2 * (1.0 + c.lambda1p) / (c.lambda1 * (1.0 + c.lambda2p))).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

pub fn phase_classify(c: &Couplings) -> Regime {
    let d = c.lambda1 - c.lambda2;
    if d.abs() <= 1e-12 {
        Regime::Critical
    } else if d > 0.0 {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    }
}
