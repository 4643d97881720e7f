//! Aubry–André duality between W_{λ1,λ2} and W^♯_{λ1,λ2} = W^⊤_{λ2,λ1}.
//!
//! A dual solution of the form φ_n = e^{2πinθ} φ̌(ξ + nΦ) is mapped to a
//! solution ψ of Wψ = zψ at phase θ by rotating (φ̌⁺, φ̌⁻) with
//! (1/√2)[[1, −i], [−i, 1]] and taking Fourier coefficients with respect to
//! x = ξ + nΦ. At Φ = p/q the orbit of ξ is the finite coset ξ + Z/q and the
//! coefficients are the normalized discrete transform over it.

use crate::cocycle::{eigen_transfer, rotation_number, CocycleSpec, Family, SolutionSamples};
use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64, I, ZERO};
use crate::model::{walk_apply, Couplings, Frequency, Phase, StateWindow};
use crate::spectrum::{band_arcs, hausdorff, BandOptions};
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

/// Trigonometric polynomial pair Σ_m (c⁺_m, c⁻_m) e^{2πimx}, m = lo..lo+len.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierVector {
    pub lo: i64,
    pub plus: Vec<C64>,
    pub minus: Vec<C64>,
}

impl FourierVector {
    pub fn new(lo: i64, plus: Vec<C64>, minus: Vec<C64>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::Domain("coefficient vectors differ in length".into()));
        }
        Ok(FourierVector { lo, plus, minus })
    }

    pub fn zero() -> Self {
        FourierVector { lo: 0, plus: vec![], minus: vec![] }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.plus.len() as i64 - 1
    }

    /// Coefficient pair at frequency m (zero outside the support).
    pub fn coeff(&self, m: i64) -> [C64; 2] {
        if m < self.lo || m > self.hi() {
            [ZERO; 2]
        } else {
            let k = (m - self.lo) as usize;
            [self.plus[k], self.minus[k]]
        }
    }

    pub fn eval(&self, x: f64) -> [C64; 2] {
        let mut out = [ZERO; 2];
        for (k, (a, b)) in self.plus.iter().zip(&self.minus).enumerate() {
            let m = self.lo + k as i64;
            let e = C64::from_polar(1.0, TAU * frac_product(m, x));
            out[0] += a * e;
            out[1] += b * e;
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.plus.iter().chain(&self.minus).map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|c| *c == ZERO)
    }

    /// Coefficients moved up by k frequencies.
    pub fn shifted(&self, k: i64) -> Self {
        FourierVector { lo: self.lo + k, ..self.clone() }
    }

    /// Interpolates samples[n] = φ̌(ξ + nΦ), n = 0..q, by the trigonometric
    /// polynomial with frequencies centred on zero.
    pub fn interpolate(freq: &Frequency, xi: f64, samples: &[[C64; 2]]) -> Result<Self> {
        let (_, q) = rational(freq)?;
        if samples.len() != q as usize {
            return Err(Error::Domain(format!("need {q} samples, got {}", samples.len())));
        }
        let lo = -(q - 1) / 2;
        let mut plus = vec![ZERO; q as usize];
        let mut minus = vec![ZERO; q as usize];
        for (n, s) in samples.iter().enumerate() {
            let x = xi + freq.orbit(n as i64);
            for k in 0..q as usize {
                let e = C64::from_polar(1.0, -TAU * frac_product(lo + k as i64, x)) / q as f64;
                plus[k] += s[0] * e;
                minus[k] += s[1] * e;
            }
        }
        FourierVector::new(lo, plus, minus)
    }
}

/// Fractional part of m·x, computed to keep precision for large m.
fn frac_product(m: i64, x: f64) -> f64 {
    let xf = x - x.floor();
    (m as f64 * xf).rem_euclid(1.0)
}

fn rational(freq: &Frequency) -> Result<(i64, i64)> {
    freq.as_rational().ok_or_else(|| Error::Domain("needs a rational frequency".into()))
}

/// A dual solution φ_n = e^{2πinθ} φ̌(ξ + nΦ) at spectral parameter z.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochWave {
    pub base: FourierVector,
    pub theta: Phase,
    pub xi: Phase,
    pub z: C64,
}

impl BlochWave {
    pub fn at(&self, freq: &Frequency, n: i64) -> [C64; 2] {
        let v = self.base.eval(self.xi.0 + freq.orbit(n));
        let e = C64::from_polar(1.0, TAU * frac_product(n, self.theta.0));
        [v[0] * e, v[1] * e]
    }
}

pub fn dual_params(c: &Couplings) -> Couplings {
    c.swapped()
}

/// Hausdorff distance between the band structures of c and its dual.
pub fn isospectrality_check(c: &Couplings, freq: &Frequency, opts: &BandOptions) -> Result<f64> {
    let dual = dual_params(c);
    if dual == *c {
        return Ok(0.0);
    }
    let a = band_arcs(c, freq, opts)?;
    let b = band_arcs(&dual, freq, opts)?;
    Ok(hausdorff(&a.arcs, &b.arcs))
}

/// |rot(TwoStep) − rot(DualTwoStep)| at the same ζ, measured on the torus.
pub fn rotation_match_check(c: &Couplings, freq: &Frequency, zeta: f64, n: u64, theta: f64) -> Result<f64> {
    let a = rotation_number(&CocycleSpec::new(Family::TwoStep, *c, *freq, zeta), n, theta)?;
    let b = rotation_number(&CocycleSpec::new(Family::DualTwoStep, *c, *freq, zeta), n, theta)?;
    Ok(crate::linalg::torus_dist(a - b))
}

/// ψ̌ = (1/√2)[[1, −i], [−i, 1]] φ̌, coefficientwise.
pub fn duality_transform(phi: &FourierVector) -> FourierVector {
    let (plus, minus) = phi
        .plus
        .iter()
        .zip(&phi.minus)
        .map(|(a, b)| ((a - I * b) * FRAC_1_SQRT_2, (-I * a + b) * FRAC_1_SQRT_2))
        .unzip();
    FourierVector { lo: phi.lo, plus, minus }
}

/// Inverse of [`duality_transform`].
pub fn inverse_duality_transform(psi: &FourierVector) -> FourierVector {
    let (plus, minus) = psi
        .plus
        .iter()
        .zip(&psi.minus)
        .map(|(a, b)| ((a + I * b) * FRAC_1_SQRT_2, (I * a + b) * FRAC_1_SQRT_2))
        .unzip();
    FourierVector { lo: psi.lo, plus, minus }
}

/// Dual coin entries at site n: (λ1 cos a + iλ1', λ1 sin a), a = 2π(nΦ + ξ).
fn dual_coin(c: &Couplings, freq: &Frequency, xi: f64, n: i64) -> (C64, f64) {
    let (s, co) = (TAU * (freq.orbit(n) + xi)).sin_cos();
    (C64::new(c.lambda1 * co, c.lambda1p), c.lambda1 * s)
}

/// (W^♯φ)_n from the coordinate form Q^⊤_{λ1} S^⊤_{λ2} at phase ξ.
pub fn dual_apply_at(c: &Couplings, freq: &Frequency, xi: f64, phi: &dyn Fn(i64) -> [C64; 2], n: i64) -> [C64; 2] {
    let (cc, s) = dual_coin(c, freq, xi, n);
    let (l2, l2p) = (c.lambda2, c.lambda2p);
    let a = l2 * phi(n + 1)[0] + l2p * phi(n)[1];
    let b = -l2p * phi(n)[0] + l2 * phi(n - 1)[1];
    [cc * a + s * b, -s * a + cc.conj() * b]
}

/// Transfer (φ_n⁺, φ_{n−1}⁻) ↦ (φ_{n+1}⁺, φ_n⁻) of W^♯φ = zφ, with φ_n⁻ as a by-product.
pub fn dual_transfer(c: &Couplings, freq: &Frequency, xi: f64, n: i64, z: C64) -> Result<Mat2> {
    let (cc, s) = dual_coin(c, freq, xi, n);
    if c.lambda2 == 0.0 || cc.norm() < 1e-14 {
        return Err(Error::SingularCocycle { step: n, reason: "dual transfer needs λ2 > 0 and a nonzero coin diagonal".into() });
    }
    let (l2, l2p) = (c.lambda2, c.lambda2p);
    // b = B·state, a = (z φ⁺ − s b)/cc, φ⁻ = (−s a + c̄c b)/z, φ⁺_{n+1} = (a − λ2' φ⁻)/λ2
    let b = [C64::from(-l2p), C64::from(l2)];
    let a = [(z - s * b[0]) / cc, -s * b[1] / cc];
    let m = [(-s * a[0] + cc.conj() * b[0]) / z, (-s * a[1] + cc.conj() * b[1]) / z];
    let p = [(a[0] - l2p * m[0]) / l2, (a[1] - l2p * m[1]) / l2];
    Ok(Mat2::new(p[0], p[1], m[0], m[1]))
}

/// Floquet solution of W^♯φ = zφ at Φ = p/q and phase ξ, from the 2×2 monodromy.
pub fn dual_floquet_wave(c: &Couplings, freq: &Frequency, xi: f64, zeta: f64) -> Result<BlochWave> {
    let (_, q) = rational(freq)?;
    let z = C64::from_polar(1.0, zeta);
    let steps = (0..q).map(|n| dual_transfer(c, freq, xi, n, z)).collect::<Result<Vec<_>>>()?;
    let mono = steps.iter().fold(Mat2::identity(), |acc, t| *t * acc);
    let (tr, det) = (mono.trace(), mono.det());
    let disc = (tr * tr - 4.0 * det).sqrt();
    let mus = [(tr + disc) / 2.0, (tr - disc) / 2.0];
    let mu = if (mus[0].norm() - 1.0).abs() <= (mus[1].norm() - 1.0).abs() { mus[0] } else { mus[1] };
    if (mu.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("z is outside the dual band at this phase: |μ| = {}", mu.norm())));
    }
    let [[m00, m01], [m10, m11]] = mono.0;
    let v = if (m01.norm() + (mu - m00).norm()) >= ((mu - m11).norm() + m10.norm()) {
        [m01, mu - m00]
    } else {
        [mu - m11, m10]
    };
    let scale = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let mut state = [v[0] / scale, v[1] / scale];
    let theta = wrap_unit(mu.arg() / (TAU * q as f64));
    let mut samples = Vec::with_capacity(q as usize);
    for (n, t) in steps.iter().enumerate() {
        let next = t.apply(state);
        let e = C64::from_polar(1.0, -TAU * frac_product(n as i64, theta));
        samples.push([state[0] * e, next[1] * e]);
        state = next;
    }
    Ok(BlochWave { base: FourierVector::interpolate(freq, xi, &samples)?, theta: Phase::new(theta), xi: Phase::new(xi), z })
}

fn wrap_unit(x: f64) -> f64 {
    x - x.floor()
}

/// ψ_m: plain coefficients for irrational Φ, the normalized transform over
/// the orbit ξ + j/q for Φ = p/q.
pub fn orbit_coefficients(psi: &FourierVector, freq: &Frequency, xi: f64, m: i64) -> [C64; 2] {
    match freq.as_rational() {
        None => psi.coeff(m),
        Some((_, q)) => {
            let mut out = [ZERO; 2];
            for j in 0..q {
                let x = xi + j as f64 / q as f64;
                let v = psi.eval(x);
                let e = C64::from_polar(1.0, -TAU * frac_product(m, x)) / q as f64;
                out[0] += v[0] * e;
                out[1] += v[1] * e;
            }
            out
        }
    }
}

/// Residuals of the duality map; both are relative to the largest amplitude on the window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityResidual {
    pub residual: f64,
    pub input_residual: f64,
    /// The input was zero, so the pass carries no information.
    pub degenerate: bool,
}

pub const INPUT_RESIDUAL_TOL: f64 = 1e-8;

fn max_amp(v: &[[C64; 2]]) -> f64 {
    v.iter().map(|a| a[0].norm().max(a[1].norm())).fold(0.0, f64::max)
}

/// Residual of W^♯φ = zφ on |n| ≤ window for φ_n = e^{2πinθ} φ̌(ξ + nΦ).
pub fn dual_residual(c: &Couplings, freq: &Frequency, theta: f64, z: C64, phi: &FourierVector, xi: f64, window: i64) -> f64 {
    let wave = BlochWave { base: phi.clone(), theta: Phase(theta), xi: Phase(xi), z };
    let vals: Vec<[C64; 2]> = (-window - 1..=window + 1).map(|n| wave.at(freq, n)).collect();
    let get = |n: i64| vals[(n + window + 1) as usize];
    let scale = max_amp(&vals);
    if scale == 0.0 {
        return 0.0;
    }
    (-window..=window)
        .map(|n| {
            let w = dual_apply_at(c, freq, xi, &get, n);
            let v = get(n);
            (w[0] - z * v[0]).norm().max((w[1] - z * v[1]).norm())
        })
        .fold(0.0, f64::max)
        / scale
}

/// Builds ψ from the transformed coefficients of φ̌ and measures Wψ − zψ at
/// phase θ over |m| ≤ window.
pub fn duality_residual(c: &Couplings, freq: &Frequency, theta: f64, z: C64, phi: &FourierVector, xi: f64, window: i64) -> Result<DualityResidual> {
    if phi.is_zero() {
        return Ok(DualityResidual { residual: 0.0, input_residual: 0.0, degenerate: true });
    }
    let input_residual = dual_residual(c, freq, theta, z, phi, xi, window);
    if input_residual > INPUT_RESIDUAL_TOL {
        return Err(Error::Precondition { residual: input_residual });
    }
    let psi_hat = duality_transform(phi);
    let lo = -window - 1;
    let amps: Vec<[C64; 2]> = (lo..=window + 1).map(|m| orbit_coefficients(&psi_hat, freq, xi, m)).collect();
    let scale = max_amp(&amps);
    let state = StateWindow::truncated(lo, amps);
    let image = walk_apply(c, freq, Phase::new(theta), &state);
    let residual = (-window..=window)
        .map(|m| {
            let (w, v) = (image.get(m), state.get(m));
            (w[0] - z * v[0]).norm().max((w[1] - z * v[1]).norm())
        })
        .fold(0.0, f64::max)
        / scale;
    Ok(DualityResidual { residual, input_residual, degenerate: false })
}

/// det [[u_{2n+1}, u_{2n}], [v_{2n+1}, v_{2n}]].
pub fn wronskian(u: &SolutionSamples, v: &SolutionSamples, n: i64) -> Result<C64> {
    let missing = || Error::Domain(format!("n = {n} is outside the solution samples"));
    let a = u.get(n).ok_or_else(missing)?;
    let b = v.get(n).ok_or_else(missing)?;
    Ok(a[0] * b[1] - a[1] * b[0])
}

/// Largest |W(n) − W(n_lo)| over the common sample range.
pub fn wronskian_drift(u: &SolutionSamples, v: &SolutionSamples) -> Result<f64> {
    let lo = u.n_lo.max(v.n_lo);
    let hi = u.n_hi().min(v.n_hi());
    let w0 = wronskian(u, v, lo)?;
    (lo..=hi).map(|n| wronskian(u, v, n).map(|w| (w - w0).norm())).try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))
}

/// Drift measured against the rounding scale max(1, |u_n|·|v_n|), for
/// solutions that grow exponentially off the spectrum.
pub fn wronskian_relative_drift(u: &SolutionSamples, v: &SolutionSamples) -> Result<f64> {
    let lo = u.n_lo.max(v.n_lo);
    let hi = u.n_hi().min(v.n_hi());
    let size = |p: [C64; 2]| (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
    let mut pts = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    for n in lo..=hi {
        let w = wronskian(u, v, n)?;
        let scale = (size(u.get(n).expect("in range")) * size(v.get(n).expect("in range"))).max(1.0);
        if !(w.norm().is_finite() && scale.is_finite()) {
            return Err(Error::Domain(format!("solutions overflow at n = {n}")));
        }
        pts.push((w, scale));
    }
    // reference at the best-conditioned sample
    let &(w0, _) = pts
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Domain("no common samples".into()))?;
    Ok(pts.iter().map(|(w, s)| (w - w0).norm() / s).fold(0.0, f64::max))
}

/// Relative Wronskian drift of two solutions started from (u_{−1}, u_{−2}) = `u0`
/// and `v0`, propagated jointly over n_lo..=n_hi with a common rescaling so that
/// growing solutions stay finite. Same quantity as [`wronskian_relative_drift`].
#[allow(clippy::too_many_arguments)]
pub fn wronskian_pair_drift(c: &Couplings, f: &Frequency, ph: Phase, zeta: f64, u0: [C64; 2], v0: [C64; 2], n_lo: i64, n_hi: i64) -> Result<f64> {
    if n_lo > -1 || n_hi < -1 {
        return Err(Error::Domain("range must contain n = −1".into()));
    }
    let z = C64::from_polar(1.0, zeta);
    let det = |a: [C64; 2], b: [C64; 2]| a[0] * b[1] - a[1] * b[0];
    let size = |p: [C64; 2]| (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
    let w0 = det(u0, v0);
    let mut worst = 0.0f64;
    let mut sweep = |steps: &mut dyn Iterator<Item = Result<Mat2>>| -> Result<()> {
        let (mut u, mut v, mut inv2) = (u0, v0, 1.0f64);
        for m in steps {
            let m = m?;
            u = m.apply(u);
            v = m.apply(v);
            let r = size(u).max(size(v));
            if r > 1e100 {
                u = [u[0] / r, u[1] / r];
                v = [v[0] / r, v[1] / r];
                inv2 /= r * r;
            }
            let dev = (det(u, v) - w0 * inv2).norm() / (size(u) * size(v)).max(inv2);
            if !dev.is_finite() {
                return Err(Error::Domain("solutions are not finite".into()));
            }
            worst = worst.max(dev);
        }
        Ok(())
    };
    sweep(&mut (0..=n_hi).map(|n| eigen_transfer(c, f, ph, n, z)))?;
    sweep(&mut (n_lo + 1..=-1).rev().map(|n| {
        eigen_transfer(c, f, ph, n, z)?.inverse().ok_or(Error::SingularPair { index: Some(2 * n) })
    }))?;
    Ok(worst)
}
