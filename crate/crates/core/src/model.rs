//! UAMO parameters, the split-step walk on finite windows, Verblunsky
//! coefficients and the generalized extended CMV matrix.

use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64, ZERO};
use serde::Serialize;
use std::f64::consts::TAU;

/// Coupling constants with their complements λ' = √(1−λ²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Couplings {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda1p: f64,
    pub lambda2p: f64,
}

fn complement(l: f64) -> f64 {
    (1.0 - l * l).max(0.0).sqrt()
}

fn check_unit(name: &str, l: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&l) {
        return Err(Error::Domain(format!("{name} = {l} is outside [0, 1]")));
    }
    Ok(())
}

impl Couplings {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        check_unit("lambda1", lambda1)?;
        check_unit("lambda2", lambda2)?;
        Ok(Couplings {
            lambda1,
            lambda2,
            lambda1p: complement(lambda1),
            lambda2p: complement(lambda2),
        })
    }

    /// The pair with λ1 and λ2 exchanged.
    pub fn swapped(&self) -> Self {
        Couplings {
            lambda1: self.lambda2,
            lambda2: self.lambda1,
            lambda1p: self.lambda2p,
            lambda2p: self.lambda1p,
        }
    }
}

/// Rotation frequency Φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Frequency {
    Rational { p: i64, q: i64 },
    Real { value: f64 },
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Frequency {
    /// Reduced p/q with 0 ≤ p < q.
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(Error::Domain(format!("denominator {q} must be positive")));
        }
        let p = p.rem_euclid(q);
        let g = gcd(p, q).max(1);
        Ok(Frequency::Rational { p: p / g, q: q / g })
    }

    pub fn real(value: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&value) {
            return Err(Error::Domain(format!("frequency {value} is outside [0, 1)")));
        }
        Ok(Frequency::Real { value })
    }

    pub fn value(&self) -> f64 {
        match *self {
            Frequency::Rational { p, q } => p as f64 / q as f64,
            Frequency::Real { value } => value,
        }
    }

    pub fn as_rational(&self) -> Option<(i64, i64)> {
        match *self {
            Frequency::Rational { p, q } => Some((p, q)),
            Frequency::Real { .. } => None,
        }
    }

    /// Fractional part of nΦ, exact for rationals.
    pub fn orbit(&self, n: i64) -> f64 {
        match *self {
            Frequency::Rational { p, q } => (n * p).rem_euclid(q) as f64 / q as f64,
            Frequency::Real { value } => {
                let x = n as f64 * value;
                x - x.floor()
            }
        }
    }
}

/// A point of the torus R/Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Phase(pub f64);

impl Phase {
    pub fn new(theta: f64) -> Self {
        let t = theta - theta.floor();
        Phase(if t >= 1.0 { 0.0 } else { t })
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Coin angle 2π(nΦ + θ) at site n.
pub fn site_angle(freq: &Frequency, phase: Phase, n: i64) -> f64 {
    TAU * (freq.orbit(n) + phase.0)
}

/// Q_{λ,a} = [[λcos a + iλ', −λ sin a], [λ sin a, λcos a − iλ']].
pub fn coin_matrix(lambda: f64, angle: f64) -> Result<Mat2> {
    check_unit("lambda", lambda)?;
    let lp = complement(lambda);
    let (s, c) = angle.sin_cos();
    Ok(Mat2::new(
        C64::new(lambda * c, lp),
        C64::from(-lambda * s),
        C64::from(lambda * s),
        C64::new(lambda * c, -lp),
    ))
}

/// Finite window of a state in ℓ²(Z)⊗C², sites lo..lo+len.
///
/// `margin` counts untrusted sites at each edge. Windows built with
/// [`StateWindow::new`] hold the full support of the state, so images stay
/// exact; [`StateWindow::truncated`] marks a cut-out piece of a larger state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateWindow {
    pub lo: i64,
    pub amps: Vec<[C64; 2]>,
    pub truncated: bool,
    pub margin: usize,
}

impl StateWindow {
    pub fn new(lo: i64, amps: Vec<[C64; 2]>) -> Self {
        StateWindow { lo, amps, truncated: false, margin: 0 }
    }

    pub fn truncated(lo: i64, amps: Vec<[C64; 2]>) -> Self {
        StateWindow { lo, amps, truncated: true, margin: 0 }
    }

    /// δ_n^+ (`plus = true`) or δ_n^-.
    pub fn delta(n: i64, plus: bool) -> Self {
        let mut v = [ZERO; 2];
        v[if plus { 0 } else { 1 }] = C64::from(1.0);
        StateWindow::new(n, vec![v])
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.amps.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> [C64; 2] {
        if n < self.lo || n > self.hi() {
            [ZERO; 2]
        } else {
            self.amps[(n - self.lo) as usize]
        }
    }

    /// Trusted site range.
    pub fn interior(&self) -> std::ops::RangeInclusive<i64> {
        self.lo + self.margin as i64..=self.hi() - self.margin as i64
    }

    pub fn interior_norm(&self) -> f64 {
        self.interior()
            .map(|n| {
                let v = self.get(n);
                v[0].norm_sqr() + v[1].norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|v| v[0].norm_sqr() + v[1].norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Conditional shift: δ_n^± ↦ λδ_{n±1}^± ± λ'δ_n^∓.
pub fn shift_apply(lambda1: f64, state: &StateWindow) -> StateWindow {
    let lp = complement(lambda1);
    let lo = state.lo - 1;
    let len = state.amps.len() + 2;
    let amps = (0..len as i64)
        .map(|k| {
            let m = lo + k;
            let (prev, here, next) = (state.get(m - 1), state.get(m), state.get(m + 1));
            [lambda1 * prev[0] - lp * here[1], lambda1 * next[1] + lp * here[0]]
        })
        .collect();
    StateWindow {
        lo,
        amps,
        truncated: state.truncated,
        margin: if state.truncated { state.margin + 2 } else { 0 },
    }
}

/// Site-wise coin layer Q_{λ2, 2π(nΦ+θ)}.
pub fn coin_apply(lambda2: f64, freq: &Frequency, phase: Phase, state: &StateWindow) -> StateWindow {
    let amps = state
        .amps
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let n = state.lo + k as i64;
            // lambda2 was validated by Couplings
            coin_matrix(lambda2, site_angle(freq, phase, n)).expect("valid coupling").apply(*v)
        })
        .collect();
    StateWindow { amps, ..state.clone() }
}

/// W = S_{λ1} Q_{λ2} applied to a window.
pub fn walk_apply(c: &Couplings, freq: &Frequency, phase: Phase, state: &StateWindow) -> StateWindow {
    shift_apply(c.lambda1, &coin_apply(c.lambda2, freq, phase, state))
}

/// A Verblunsky pair (α, ρ) with |α|² + |ρ|² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerblunskyPair {
    pub alpha: C64,
    pub rho: C64,
}

impl VerblunskyPair {
    pub fn sphere_defect(&self) -> f64 {
        (self.alpha.norm_sqr() + self.rho.norm_sqr() - 1.0).abs()
    }

    /// Θ(α, ρ) = [[ᾱ, ρ], [ρ̄, −α]].
    pub fn theta_block(&self) -> Mat2 {
        Mat2::new(self.alpha.conj(), self.rho, self.rho.conj(), -self.alpha)
    }
}

/// Coefficients of the UAMO as a GECMV matrix, complex ρ on odd indices.
pub fn verblunsky_raw(c: &Couplings, freq: &Frequency, phase: Phase, index: i64) -> VerblunskyPair {
    if index.rem_euclid(2) == 0 {
        return VerblunskyPair { alpha: C64::from(c.lambda1p), rho: C64::from(c.lambda1) };
    }
    let n = (index + 1) / 2;
    let (s, co) = site_angle(freq, phase, n).sin_cos();
    VerblunskyPair {
        alpha: C64::from(c.lambda2 * s),
        rho: C64::new(c.lambda2 * co, -c.lambda2p),
    }
}

/// Gauged coefficients: odd ρ replaced by √(1 − λ2² sin²) ≥ 0.
pub fn verblunsky_gauged(c: &Couplings, freq: &Frequency, phase: Phase, index: i64) -> VerblunskyPair {
    let raw = verblunsky_raw(c, freq, phase, index);
    if index.rem_euclid(2) == 0 {
        return raw;
    }
    let a = raw.alpha.re;
    VerblunskyPair { alpha: raw.alpha, rho: C64::from((1.0 - a * a).max(0.0).sqrt()) }
}

/// Contiguous Verblunsky pairs with indices lo..lo+len, lo even.
#[derive(Debug, Clone, PartialEq)]
pub struct CmvWindow {
    pub lo: i64,
    pub pairs: Vec<VerblunskyPair>,
}

/// Result of applying ℰ on a window; rows whose stencil leaves the window
/// are marked invalid.
#[derive(Debug, Clone, PartialEq)]
pub struct GecmvOutput {
    pub values: Vec<C64>,
    pub valid: Vec<bool>,
}

impl GecmvOutput {
    /// True when some invalid row carries a nonzero input stencil.
    pub fn touches_boundary(&self, input: &[C64]) -> bool {
        let n = input.len();
        (0..n).any(|i| !self.valid[i] && input[i.saturating_sub(2)..(i + 3).min(n)].iter().any(|x| x.norm() > 0.0))
    }
}

impl CmvWindow {
    pub fn new(lo: i64, pairs: Vec<VerblunskyPair>) -> Result<Self> {
        if lo.rem_euclid(2) != 0 {
            return Err(Error::Domain(format!("CMV window must start at an even index, got {lo}")));
        }
        if let Some(p) = pairs.iter().find(|p| p.sphere_defect() > 1e-12) {
            return Err(Error::Domain(format!("pair {p:?} is off the unit sphere")));
        }
        Ok(CmvWindow { lo, pairs })
    }

    /// UAMO coefficients on indices lo..=hi.
    pub fn uamo(c: &Couplings, freq: &Frequency, phase: Phase, lo: i64, hi: i64, gauged: bool) -> Result<Self> {
        let gen = if gauged { verblunsky_gauged } else { verblunsky_raw };
        CmvWindow::new(lo, (lo..=hi).map(|j| gen(c, freq, phase, j)).collect())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.pairs.len() as i64 - 1
    }

    pub fn pair(&self, index: i64) -> Option<VerblunskyPair> {
        if index < self.lo || index > self.hi() {
            None
        } else {
            Some(self.pairs[(index - self.lo) as usize])
        }
    }
}

/// One block layer: blocks Θ(α_s, ρ_s) on sites (s, s+1) for s of the given parity.
fn block_layer(w: &CmvWindow, v: &[C64], valid_in: &[bool], parity: i64) -> (Vec<C64>, Vec<bool>) {
    let n = v.len();
    let mut out = vec![ZERO; n];
    let mut valid = vec![false; n];
    for k in 0..n {
        let idx = w.lo + k as i64;
        let s = if idx.rem_euclid(2) == parity { idx } else { idx - 1 };
        let (ks, kt) = (s - w.lo, s + 1 - w.lo);
        if ks < 0 || kt >= n as i64 {
            continue;
        }
        let Some(p) = w.pair(s) else { continue };
        let (ks, kt) = (ks as usize, kt as usize);
        let th = p.theta_block().0;
        let row = if idx == s { 0 } else { 1 };
        out[k] = th[row][0] * v[ks] + th[row][1] * v[kt];
        valid[k] = valid_in[ks] && valid_in[kt];
    }
    (out, valid)
}

/// ℰv with ℰ = ℒℳ, for v indexed like the window.
pub fn gecmv_apply(window: &CmvWindow, v: &[C64]) -> Result<GecmvOutput> {
    if v.len() != window.pairs.len() {
        return Err(Error::Domain(format!(
            "vector length {} does not match window length {}",
            v.len(),
            window.pairs.len()
        )));
    }
    let all = vec![true; v.len()];
    let (mv, mvalid) = block_layer(window, v, &all, 1);
    let (values, valid) = block_layer(window, &mv, &mvalid, 0);
    Ok(GecmvOutput { values, valid })
}

/// Identification δ_n^+ ↔ δ_{2n+plus}, δ_n^- ↔ δ_{2n+minus}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interleaving {
    pub plus: i64,
    pub minus: i64,
}

impl Interleaving {
    pub fn index(&self, n: i64, plus: bool) -> i64 {
        2 * n + if plus { self.plus } else { self.minus }
    }
}

/// Interleaving under which the walk and the raw-coefficient GECMV matrix coincide.
pub const UAMO_INTERLEAVING: Interleaving = Interleaving { plus: -1, minus: 0 };

/// Candidate interleavings scanned by [`gecmv_vs_walk_check`].
pub fn interleaving_candidates() -> Vec<Interleaving> {
    let mut out = Vec::new();
    for plus in -2..=2i64 {
        for minus in [plus - 1, plus + 1] {
            if (-2..=2).contains(&minus) {
                out.push(Interleaving { plus, minus });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkCmvMatch {
    pub deviation: f64,
    pub interleaving: Interleaving,
}

fn interleaving_deviation(c: &Couplings, freq: &Frequency, phase: Phase, half: i64, il: Interleaving) -> Result<f64> {
    let window = CmvWindow::uamo(c, freq, phase, 2 * (-half - 3), 2 * (half + 3) + 1, false)?;
    let len = window.pairs.len();
    let mut worst: f64 = 0.0;
    for n in -half + 2..=half - 2 {
        for plus in [true, false] {
            let image = walk_apply(c, freq, phase, &StateWindow::delta(n, plus));
            let mut expected = vec![ZERO; len];
            for m in image.lo..=image.hi() {
                let v = image.get(m);
                expected[(il.index(m, true) - window.lo) as usize] += v[0];
                expected[(il.index(m, false) - window.lo) as usize] += v[1];
            }
            let mut e = vec![ZERO; len];
            e[(il.index(n, plus) - window.lo) as usize] = C64::from(1.0);
            let out = gecmv_apply(&window, &e)?;
            for ((valid, got), want) in out.valid.iter().zip(&out.values).zip(&expected) {
                if *valid {
                    worst = worst.max((got - want).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// Compares the walk with the GECMV matrix built from raw coefficients under
/// every candidate interleaving and returns the best match.
pub fn gecmv_vs_walk_check(c: &Couplings, freq: &Frequency, phase: Phase, window_size: usize) -> Result<WalkCmvMatch> {
    if window_size < 8 {
        return Err(Error::Domain(format!("window size {window_size} is below 8")));
    }
    let half = window_size as i64 / 2;
    let mut best = WalkCmvMatch { deviation: f64::INFINITY, interleaving: UAMO_INTERLEAVING };
    for il in interleaving_candidates() {
        let d = interleaving_deviation(c, freq, phase, half, il)?;
        if d < best.deviation {
            best = WalkCmvMatch { deviation: d, interleaving: il };
        }
    }
    if best.deviation > 1e-8 {
        return Err(Error::StructuralMismatch { deviation: best.deviation });
    }
    Ok(best)
}

/// Deviation of one interleaving, used to report how the rejected
/// candidates fare.
pub fn interleaving_deviation_for(c: &Couplings, freq: &Frequency, phase: Phase, window_size: usize, il: Interleaving) -> Result<f64> {
    interleaving_deviation(c, freq, phase, window_size as i64 / 2, il)
}

/// Dense matrix of ℰ on a window, used by tests and the walk check.
pub fn gecmv_dense(window: &CmvWindow) -> Result<Vec<Vec<C64>>> {
    let n = window.pairs.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![ZERO; n];
        e[j] = C64::from(1.0);
        cols.push(gecmv_apply(window, &e)?.values);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}
