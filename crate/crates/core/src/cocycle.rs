//! SU(1,1) algebra, Szegő and eigenfunction transfer cocycles, iteration with
//! renormalization, Lyapunov exponents, fibered rotation numbers and
//! hyperbolicity probes.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64, I, ONE, ZERO};
use crate::model::{verblunsky_gauged, Couplings, Frequency, Phase, VerblunskyPair};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;

/// [[a, b], [b̄, ā]] with |a|² − |b|² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SU11Matrix {
    pub a: C64,
    pub b: C64,
}

impl SU11Matrix {
    pub fn identity() -> Self {
        SU11Matrix { a: ONE, b: ZERO }
    }

    /// Extracts (a, b) from a dense matrix, checking the SU(1,1) pattern.
    pub fn from_mat2(m: &Mat2, tol: f64) -> Result<Self> {
        let e = m.0;
        let s = SU11Matrix { a: e[0][0], b: e[0][1] };
        let pattern = (e[1][0] - e[0][1].conj()).norm().max((e[1][1] - e[0][0].conj()).norm());
        let scale = 1.0 + s.a.norm_sqr();
        if pattern > tol * scale.sqrt() || s.defect() > tol * scale {
            return Err(Error::Domain(format!(
                "matrix is not in SU(1,1): pattern {pattern:e}, determinant defect {:e}",
                s.defect()
            )));
        }
        Ok(s)
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::new(self.a, self.b, self.b.conj(), self.a.conj())
    }

    /// ||a|² − |b|² − 1|.
    pub fn defect(&self) -> f64 {
        (self.a.norm_sqr() - self.b.norm_sqr() - 1.0).abs()
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.a.re
    }

    pub fn mul(&self, o: &SU11Matrix) -> SU11Matrix {
        SU11Matrix {
            a: self.a * o.a + self.b * o.b.conj(),
            b: self.a * o.b + self.b * o.a.conj(),
        }
    }

    pub fn inverse(&self) -> SU11Matrix {
        SU11Matrix { a: self.a.conj(), b: -self.b }
    }

    pub fn neg(&self) -> SU11Matrix {
        SU11Matrix { a: -self.a, b: -self.b }
    }
}

fn unit_z(z: C64) -> Result<()> {
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("|z| = {} is not 1", z.norm())));
    }
    Ok(())
}

/// z^{1/2} with arg z taken in [0, 2π).
fn half_power(z: C64) -> C64 {
    let mut arg = z.arg();
    if arg < 0.0 {
        arg += TAU;
    }
    C64::from_polar(z.norm().sqrt(), arg / 2.0)
}

/// (z^{−1/2}/ρ)·[[z, −ᾱ], [−αz, 1]] for a gauged pair.
pub fn szego_step(pair: &VerblunskyPair, z: C64) -> Result<SU11Matrix> {
    unit_z(z)?;
    if pair.rho.im.abs() > 1e-14 || pair.rho.re < 0.0 {
        return Err(Error::Domain(format!("rho = {} is not real and nonnegative", pair.rho)));
    }
    if pair.rho.re == 0.0 {
        return Err(Error::SingularPair { index: None });
    }
    let h = half_power(z);
    let r = pair.rho.re;
    Ok(SU11Matrix { a: h / r, b: -pair.alpha.conj() * h.conj() / r })
}

fn two_step_raw(l1: f64, l1p: f64, l2: f64, z: C64, s: f64) -> Result<SU11Matrix> {
    let den2 = 1.0 - l2 * l2 * s * s;
    if l1 == 0.0 || den2 <= 0.0 {
        return Err(Error::SingularCocycle {
            step: 0,
            reason: format!("normalizer λ·√(1 − λ'² sin²) vanishes (λ = {l1}, sin = {s})"),
        });
    }
    let d = l1 * den2.sqrt();
    Ok(SU11Matrix {
        a: (z + l1p * l2 * s) / d,
        b: (-l1p * z.conj() - l2 * s) / d,
    })
}

/// Two-step Szegő map S⁺_z(θ).
pub fn two_step_map(c: &Couplings, z: C64, theta: f64) -> Result<SU11Matrix> {
    unit_z(z)?;
    two_step_raw(c.lambda1, c.lambda1p, c.lambda2, z, (TAU * theta).sin())
}

/// Dual two-step map S♯_z(θ): the two-step map with λ1 and λ2 exchanged.
pub fn dual_two_step_map(c: &Couplings, z: C64, theta: f64) -> Result<SU11Matrix> {
    two_step_map(&c.swapped(), z, theta)
}

/// Analytic continuation of the two-step map to complex phases.
pub fn two_step_matrix_complex(c: &Couplings, z: C64, theta: C64) -> Result<Mat2> {
    let s = (TAU * theta).sin();
    let den2 = ONE - c.lambda2 * c.lambda2 * s * s;
    if c.lambda1 == 0.0 || den2.norm() == 0.0 {
        return Err(Error::SingularCocycle { step: 0, reason: "vanishing normalizer".into() });
    }
    let d = c.lambda1 * den2.sqrt();
    let k = c.lambda1p * c.lambda2;
    Ok(Mat2::new(
        z + k * s,
        -c.lambda1p * z.inv() - c.lambda2 * s,
        -c.lambda1p * z - c.lambda2 * s,
        z.inv() + k * s,
    )
    .scale(d.inv()))
}

/// A_{n,z} from pairs at indices 2n−2, 2n−1, 2n; maps (u_{2n−1}, u_{2n−2}) to (u_{2n+1}, u_{2n}).
pub fn eigen_transfer_from_pairs(p0: &VerblunskyPair, p1: &VerblunskyPair, p2: &VerblunskyPair, z: C64) -> Result<Mat2> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("z = 0".into()));
    }
    if p1.rho.norm() == 0.0 || p2.rho.norm() == 0.0 {
        return Err(Error::SingularPair { index: None });
    }
    let (a0, a1, a2) = (p0.alpha, p1.alpha, p2.alpha);
    let (r0, r2) = (p0.rho, p2.rho);
    let m = Mat2::new(
        z.inv() + a2 * a1.conj() + a1 * a0.conj() + a2 * a0.conj() * z,
        -r0.conj() * a1 - r0.conj() * a2 * z,
        -r2 * a1.conj() - r2 * a0.conj() * z,
        r2 * r0.conj() * z,
    );
    Ok(m.scale((p2.rho * p1.rho).inv()))
}

fn gauged_triplet(c: &Couplings, f: &Frequency, ph: Phase, n: i64) -> [VerblunskyPair; 3] {
    [
        verblunsky_gauged(c, f, ph, 2 * n - 2),
        verblunsky_gauged(c, f, ph, 2 * n - 1),
        verblunsky_gauged(c, f, ph, 2 * n),
    ]
}

/// Eigenfunction transfer matrix A_{n,z} with gauged UAMO coefficients.
pub fn eigen_transfer(c: &Couplings, f: &Frequency, ph: Phase, n: i64, z: C64) -> Result<Mat2> {
    let [p0, p1, p2] = gauged_triplet(c, f, ph, n);
    eigen_transfer_from_pairs(&p0, &p1, &p2, z).map_err(|e| match e {
        Error::SingularPair { .. } => Error::SingularPair { index: Some(if p1.rho.norm() == 0.0 { 2 * n - 1 } else { 2 * n }) },
        other => other,
    })
}

/// R_n = [[1, 0], [−ᾱ_n, ρ_n]].
pub fn r_matrix(p: &VerblunskyPair) -> Mat2 {
    Mat2::new(ONE, ZERO, -p.alpha.conj(), p.rho)
}

pub fn j_matrix() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

/// ‖A_{n,z} − R_{2n}^{−1} J S⁺ J R_{2n−2}‖ with S⁺ = S_{2n}S_{2n−1}, minimized over the sign of S⁺.
pub fn conjugation_residual(c: &Couplings, f: &Frequency, ph: Phase, n: i64, z: C64) -> Result<f64> {
    let [p0, p1, p2] = gauged_triplet(c, f, ph, n);
    let a = eigen_transfer_from_pairs(&p0, &p1, &p2, z)?;
    let s_plus = szego_step(&p2, z)?.mul(&szego_step(&p1, z)?).to_mat2();
    let r2_inv = r_matrix(&p2).inverse().ok_or(Error::SingularPair { index: Some(2 * n) })?;
    let j = j_matrix();
    let rhs = r2_inv * j * s_plus * j * r_matrix(&p0);
    let plus = a.sub(&rhs).op_norm();
    let minus = a.sub(&rhs.scale(-ONE)).op_norm();
    Ok(plus.min(minus))
}

/// The constant unitary M = (1/(1+i))·[[1, −i], [1, i]].
pub fn m_matrix() -> Mat2 {
    Mat2::new(ONE, -I, ONE, I).scale((ONE + I).inv())
}

/// M^{−1} m M, a real matrix of determinant 1.
pub fn to_sl2r(m: &SU11Matrix) -> Result<[[f64; 2]; 2]> {
    if m.defect() > 1e-10 * (1.0 + m.a.norm_sqr()) {
        return Err(Error::Domain(format!("not in SU(1,1): defect {:e}", m.defect())));
    }
    let mm = m_matrix();
    let r = mm.inverse().expect("M is unitary") * m.to_mat2() * mm;
    let imag = r.0.iter().flatten().map(|x| x.im.abs()).fold(0.0, f64::max);
    if imag > 1e-10 * r.max_abs().max(1.0) {
        return Err(Error::Domain(format!("conjugate has imaginary part {imag:e}")));
    }
    Ok([[r.0[0][0].re, r.0[0][1].re], [r.0[1][0].re, r.0[1][1].re]])
}

/// Cocycle families over the rotation θ ↦ θ + Φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TwoStep,
    DualTwoStep,
    EigenTransfer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CocycleSpec {
    pub family: Family,
    pub couplings: Couplings,
    pub freq: Frequency,
    /// Spectral angle, z = e^{iζ}.
    pub zeta: f64,
}

impl CocycleSpec {
    pub fn new(family: Family, couplings: Couplings, freq: Frequency, zeta: f64) -> Self {
        CocycleSpec { family, couplings, freq, zeta: crate::linalg::wrap_angle(zeta) }
    }

    pub fn z(&self) -> C64 {
        C64::from_polar(1.0, self.zeta)
    }

    /// Phase of step k from θ: θ + kΦ mod 1.
    pub fn phase_at(&self, theta: f64, k: i64) -> f64 {
        let t = theta + self.freq.orbit(k);
        t - t.floor()
    }

    /// Constant conjugator J·R with A = (JR)^{−1} S⁺ (JR).
    fn jr(&self) -> Mat2 {
        let p = verblunsky_gauged(&self.couplings, &self.freq, Phase(0.0), 0);
        j_matrix() * r_matrix(&p)
    }

    /// One step of the cocycle at a real phase.
    pub fn step(&self, theta: f64) -> Result<Mat2> {
        match self.family {
            Family::TwoStep => Ok(two_step_map(&self.couplings, self.z(), theta)?.to_mat2()),
            Family::DualTwoStep => Ok(dual_two_step_map(&self.couplings, self.z(), theta)?.to_mat2()),
            Family::EigenTransfer => eigen_transfer(&self.couplings, &self.freq, Phase::new(theta), 0, self.z()),
        }
    }

    /// One step as an SU(1,1) matrix; the eigenfunction family is conjugated by JR.
    pub fn su11_step(&self, theta: f64) -> Result<SU11Matrix> {
        match self.family {
            Family::TwoStep => two_step_map(&self.couplings, self.z(), theta),
            Family::DualTwoStep => dual_two_step_map(&self.couplings, self.z(), theta),
            Family::EigenTransfer => {
                let jr = self.jr();
                let inv = jr.inverse().ok_or(Error::SingularPair { index: Some(0) })?;
                SU11Matrix::from_mat2(&(jr * self.step(theta)? * inv), 1e-9)
            }
        }
    }

    /// One step at a complex phase θ + iy.
    pub fn step_complex(&self, theta: C64) -> Result<Mat2> {
        match self.family {
            Family::TwoStep => two_step_matrix_complex(&self.couplings, self.z(), theta),
            Family::DualTwoStep => two_step_matrix_complex(&self.couplings.swapped(), self.z(), theta),
            Family::EigenTransfer => {
                let jr = self.jr();
                let inv = jr.inverse().ok_or(Error::SingularPair { index: Some(0) })?;
                Ok(inv * two_step_matrix_complex(&self.couplings, self.z(), theta)? * jr)
            }
        }
    }

    /// Coupling in the denominator of the step map.
    fn denominator_coupling(&self) -> f64 {
        match self.family {
            Family::TwoStep | Family::EigenTransfer => self.couplings.lambda2,
            Family::DualTwoStep => self.couplings.lambda1,
        }
    }
}

/// Iterate data behind Lyapunov exponents and rotation numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitStats {
    pub steps: u64,
    /// Sum of the logs of the per-step renormalization factors.
    pub log_norm_sum: f64,
    /// Lifted angular displacement of the projective action, radians.
    pub angle_winding: f64,
}

/// Angle increment of the lifted projective action of `g` at boundary angle `t`.
///
/// On the invariant circle {(w, 1) : |w| = 1} the map is
/// w ↦ e^{2i arg a}·w·(1 + βw̄)/conj(1 + βw̄) with β = b/a and |β| < 1, so
/// arg a + arg(1 + βe^{−it}) is a lift continuous in g. The returned value is
/// half the boundary displacement, i.e. the displacement of a vector direction.
pub fn lift_increment(g: &SU11Matrix, t: f64) -> f64 {
    let beta = g.b / g.a;
    g.a.arg() + (ONE + beta * C64::from_polar(1.0, -t)).arg()
}

/// log‖A^n(θ)‖ = log_norm_sum + log‖normalized‖.
pub fn cocycle_product(spec: &CocycleSpec, theta: f64, n: i64) -> Result<(Mat2, OrbitStats)> {
    let mut m = Mat2::identity();
    let mut stats = OrbitStats { steps: n.unsigned_abs(), log_norm_sum: 0.0, angle_winding: 0.0 };
    let mut t = 0.0f64;
    let ks: Box<dyn Iterator<Item = i64>> = if n >= 0 { Box::new(0..n) } else { Box::new((n..0).rev()) };
    for k in ks {
        let phase = spec.phase_at(theta, k);
        let wrap = |e: Error| match e {
            Error::SingularCocycle { reason, .. } => Error::SingularCocycle { step: k, reason },
            other => other,
        };
        let step = spec.step(phase).map_err(wrap)?;
        let g = spec.su11_step(phase).map_err(wrap)?;
        if n >= 0 {
            m = step * m;
            let inc = lift_increment(&g, t);
            stats.angle_winding += inc;
            t = (t + 2.0 * inc).rem_euclid(TAU);
        } else {
            let inv = step.inverse().ok_or_else(|| Error::SingularCocycle { step: k, reason: "non-invertible step".into() })?;
            m = inv * m;
            let gi = g.inverse();
            let inc = lift_increment(&gi, t);
            stats.angle_winding += inc;
            t = (t + 2.0 * inc).rem_euclid(TAU);
        }
        let s = m.op_norm();
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::SingularCocycle { step: k, reason: format!("norm {s}") });
        }
        m = m.scale(C64::from(1.0 / s));
        stats.log_norm_sum += s.ln();
    }
    Ok((m, stats))
}

/// log‖A^k(θ)‖ for k = 1..=n at a complex phase.
fn log_norm_trace(n: usize, mut step: impl FnMut(i64) -> Result<Mat2>) -> Result<Vec<f64>> {
    let mut m = Mat2::identity();
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(n);
    for k in 0..n as i64 {
        m = step(k)? * m;
        let s = m.op_norm();
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::SingularCocycle { step: k, reason: format!("norm {s}") });
        }
        m = m.scale(C64::from(1.0 / s));
        acc += s.ln();
        out.push(acc);
    }
    Ok(out)
}

/// Least-squares slope of log‖A^k‖ against k over k ∈ [n/2, n].
fn tail_slope(logs: &[f64]) -> f64 {
    let n = logs.len();
    let start = n / 2;
    let pts: Vec<(f64, f64)> = (start..n).map(|i| ((i + 1) as f64, logs[i])).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn sample_phases(samples: usize) -> Vec<f64> {
    (0..samples).map(|j| (j as f64 + 0.5) / samples as f64).collect()
}

pub const DEFAULT_THETA_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    /// Phase average of log‖A^n(θ)‖/n, clamped at 0.
    pub value: f64,
    /// max − min over the sampled phases.
    pub spread: f64,
    pub samples: usize,
    pub steps: u64,
}

pub fn lyapunov_exponent(spec: &CocycleSpec, n: u64, theta_samples: usize) -> Result<LyapunovEstimate> {
    if n == 0 || theta_samples == 0 {
        return Err(Error::Domain("need n ≥ 1 and at least one phase".into()));
    }
    let rates = sample_phases(theta_samples)
        .into_par_iter()
        .map(|th| {
            let (m, st) = cocycle_product(spec, th, n as i64)?;
            Ok((st.log_norm_sum + m.op_norm().ln()) / n as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = rates.iter().sum::<f64>() / rates.len() as f64;
    let (lo, hi) = rates.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    Ok(LyapunovEstimate { value: mean.max(0.0), spread: hi - lo, samples: theta_samples, steps: n })
}

/// Sign fixing the orientation of the lift so that rot increases with ζ.
pub const ROTATION_ORIENTATION: f64 = 1.0;

/// Fibered rotation number in [0, 1), from the lifted projective action.
pub fn rotation_number(spec: &CocycleSpec, n: u64, theta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("need n ≥ 1".into()));
    }
    let mut t = 0.0f64;
    let mut winding = 0.0f64;
    for k in 0..n as i64 {
        let g = spec.su11_step(spec.phase_at(theta, k)).map_err(|e| match e {
            Error::SingularCocycle { reason, .. } => Error::SingularCocycle { step: k, reason },
            other => other,
        })?;
        let inc = lift_increment(&g, t);
        winding += inc;
        t = (t + 2.0 * inc).rem_euclid(TAU);
    }
    let r = (ROTATION_ORIENTATION * winding / (TAU * n as f64)).rem_euclid(1.0);
    Ok(if r >= 1.0 { 0.0 } else { r })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperbolicityVerdict {
    UniformlyHyperbolic,
    NotUniformlyHyperbolic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicityReport {
    pub verdict: HyperbolicityVerdict,
    pub min_slope: f64,
    pub slopes: Vec<f64>,
}

pub const DEFAULT_GROWTH_THRESHOLD: f64 = 1e-3;

/// Growth fit over phases; UH when every slope exceeds the threshold and the
/// minimal norm over phases grows from n/2 to n.
pub fn hyperbolicity_probe(spec: &CocycleSpec, n: usize, theta_samples: usize, threshold: f64) -> Result<HyperbolicityReport> {
    if n < 4 || theta_samples == 0 {
        return Err(Error::Domain("need n ≥ 4 and at least one phase".into()));
    }
    let traces = sample_phases(theta_samples)
        .into_par_iter()
        .map(|th| log_norm_trace(n, |k| spec.step(spec.phase_at(th, k))))
        .collect::<Result<Vec<_>>>()?;
    let slopes: Vec<f64> = traces.iter().map(|l| tail_slope(l)).collect();
    let min_slope = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let min_half = traces.iter().map(|l| l[n / 2 - 1]).fold(f64::INFINITY, f64::min);
    let min_full = traces.iter().map(|l| l[n - 1]).fold(f64::INFINITY, f64::min);
    let verdict = if min_slope > threshold && min_full > min_half {
        HyperbolicityVerdict::UniformlyHyperbolic
    } else {
        HyperbolicityVerdict::NotUniformlyHyperbolic
    };
    Ok(HyperbolicityReport { verdict, min_slope, slopes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubcriticalityVerdict {
    Subcritical,
    SupercriticalOrCritical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubcriticalityReport {
    pub verdict: SubcriticalityVerdict,
    /// (y, fitted growth rate) over the strip grid.
    pub rates: Vec<(f64, f64)>,
    pub critical_y: f64,
}

/// Half-width of the strip on which the step map stays analytic.
pub fn critical_strip_width(lambda: f64) -> f64 {
    if lambda == 0.0 {
        f64::INFINITY
    } else {
        (1.0 / lambda).acosh() / TAU
    }
}

/// Growth rates at complex phases θ + iy, |y| < strip_eps, on a grid of
/// 2·half_grid + 1 heights.
pub fn subcriticality_probe(spec: &CocycleSpec, strip_eps: f64, n: usize, half_grid: usize, theta_samples: usize, threshold: f64) -> Result<SubcriticalityReport> {
    let critical_y = critical_strip_width(spec.denominator_coupling());
    if strip_eps <= 0.0 || strip_eps >= critical_y {
        return Err(Error::StripTooWide { eps: strip_eps, critical_y });
    }
    if n < 4 || theta_samples == 0 {
        return Err(Error::Domain("need n ≥ 4 and at least one phase".into()));
    }
    let hs: Vec<f64> = (-(half_grid as i64)..=half_grid as i64)
        .map(|k| strip_eps * k as f64 / (half_grid as f64 + 1.0))
        .collect();
    let rates = hs
        .par_iter()
        .map(|&y| {
            let mut total = 0.0;
            for th in sample_phases(theta_samples) {
                let logs = log_norm_trace(n, |k| spec.step_complex(C64::new(spec.phase_at(th, k), y)))?;
                total += tail_slope(&logs);
            }
            Ok((y, total / theta_samples as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if rates.iter().all(|r| r.1 < threshold) {
        SubcriticalityVerdict::Subcritical
    } else {
        SubcriticalityVerdict::SupercriticalOrCritical
    };
    Ok(SubcriticalityReport { verdict, rates, critical_y })
}

/// Solution of ℰu = zu, stored as (u_{2n+1}, u_{2n}) for n in n_lo..=n_hi.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSamples {
    pub n_lo: i64,
    pub pairs: Vec<[C64; 2]>,
    pub zeta: f64,
}

impl SolutionSamples {
    pub fn n_hi(&self) -> i64 {
        self.n_lo + self.pairs.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<[C64; 2]> {
        if n < self.n_lo || n > self.n_hi() {
            None
        } else {
            Some(self.pairs[(n - self.n_lo) as usize])
        }
    }

    /// u_j for any index covered by the samples.
    pub fn value(&self, j: i64) -> Option<C64> {
        let n = j.div_euclid(2);
        self.get(n).map(|p| if j.rem_euclid(2) == 1 { p[0] } else { p[1] })
    }
}

/// Propagates (u_{−1}, u_{−2}) = `init` with A_{n,z} forward and backward.
pub fn propagate_solution(c: &Couplings, f: &Frequency, ph: Phase, zeta: f64, init: [C64; 2], n_lo: i64, n_hi: i64) -> Result<SolutionSamples> {
    if n_lo > -1 || n_hi < -1 {
        return Err(Error::Domain("range must contain n = −1".into()));
    }
    let z = C64::from_polar(1.0, zeta);
    let mut fwd = vec![init];
    for n in 0..=n_hi {
        let prev = *fwd.last().expect("nonempty");
        fwd.push(eigen_transfer(c, f, ph, n, z)?.apply(prev));
    }
    let mut back = Vec::new();
    let mut cur = init;
    for n in (n_lo + 1..=-1).rev() {
        let inv = eigen_transfer(c, f, ph, n, z)?.inverse().ok_or(Error::SingularPair { index: Some(2 * n) })?;
        cur = inv.apply(cur);
        back.push(cur);
    }
    back.reverse();
    back.extend(fwd);
    Ok(SolutionSamples { n_lo, pairs: back, zeta })
}

/// Rotation of a vector direction by angle r: the SL(2,R) reference used in tests.
pub fn rotation_sl2r(r: f64) -> [[f64; 2]; 2] {
    let (s, c) = r.sin_cos();
    [[c, -s], [s, c]]
}
