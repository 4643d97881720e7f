//! Band structures on the unit circle at rational frequencies, gaps and gap
//! labels, rational approximants of irrational spectra, butterfly sweeps and
//! symmetry checks.
//!
//! For Φ = p/q the unnormalized monodromy trace F(ζ, θ) = tr ∏ B_j splits as
//! P(ζ) + G(θ), and the periodic operator at phase θ has spectrum
//! |F(ζ, θ)| ≤ 2N(θ), N being the product of the step normalizers. The union
//! over all θ is therefore the level set lo ≤ P(ζ) ≤ hi with
//! lo = min_θ(−2N − G) and hi = max_θ(2N − G). Only the harmonic e^{±2πiqθ}
//! survives in G, with coefficient (2i)^{−q} e^{iπp(q−1)} tr(B¹)^q where
//! B¹ = [[λ1'λ2, −λ2], [−λ2, λ1'λ2]].
//!
//! The edges P = hi and P = lo are the eigenvalues of the 2q×2q Floquet CMV
//! matrix at the extremal phases with periodic and antiperiodic boundary
//! conditions; bisection on the trace is kept as an independent solver.

use crate::arithmetic::continued_fraction;
use crate::cocycle::{rotation_number, two_step_map, CocycleSpec, Family, SU11Matrix};
use crate::error::{Error, Result};
use crate::linalg::{torus_dist, wrap_angle, C64, I, ONE};
use crate::model::{verblunsky_gauged, Couplings, Frequency, Phase};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Arc {e^{iζ} : lo ≤ ζ ≤ hi} with lo ∈ [0, 2π) and lo ≤ hi ≤ lo + 2π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub lo: f64,
    pub hi: f64,
}

impl Arc {
    pub fn new(lo: f64, hi: f64) -> Self {
        let len = (hi - lo).clamp(0.0, TAU);
        let lo = wrap_angle(lo);
        Arc { lo, hi: lo + len }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }

    pub fn contains(&self, zeta: f64) -> bool {
        let d = (zeta - self.lo).rem_euclid(TAU);
        d <= self.len() || self.len() >= TAU
    }

    pub fn mid(&self) -> f64 {
        wrap_angle(self.lo + self.len() / 2.0)
    }

    /// Circular distance from ζ to the arc.
    pub fn dist(&self, zeta: f64) -> f64 {
        if self.contains(zeta) {
            return 0.0;
        }
        circ_dist(zeta, self.lo).min(circ_dist(zeta, self.hi))
    }
}

fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// The θ-extremes bounding P(ζ) on the union of the periodic spectra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub lo: f64,
    pub hi: f64,
    pub theta_lo: f64,
    pub theta_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandStructure {
    pub arcs: Vec<Arc>,
    /// Positions where two bands touch (collapsed gaps).
    pub closed_gaps: Vec<f64>,
    pub freq: Frequency,
    pub couplings: Couplings,
    pub theta_grid: usize,
    /// Convergent used for an irrational frequency.
    pub convergent: Option<(i64, i64)>,
    pub envelope: Envelope,
    pub warnings: Vec<String>,
}

impl BandStructure {
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(Arc::len).sum()
    }

    pub fn contains(&self, zeta: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(zeta))
    }
}

/// Unnormalized period product for Φ = p/q.
#[derive(Debug, Clone, Copy)]
struct Periodic {
    c: Couplings,
    p: i64,
    q: i64,
}

impl Periodic {
    fn sines(&self, theta: f64) -> impl Iterator<Item = f64> + '_ {
        (0..self.q).map(move |j| {
            let t = theta + ((j * self.p).rem_euclid(self.q)) as f64 / self.q as f64;
            (TAU * t).sin()
        })
    }

    /// (a, b) of ∏ B_j with B_j = [[z + λ1'λ2 s, −λ1' z̄ − λ2 s], [conj, conj]],
    /// and their ζ-derivatives.
    fn product(&self, zeta: f64, theta: f64) -> (C64, C64, C64, C64) {
        let z = C64::from_polar(1.0, zeta);
        let (l1p, l2) = (self.c.lambda1p, self.c.lambda2);
        let k = l1p * l2;
        let (da_j, db_j) = (I * z, I * l1p * z.conj());
        let (mut a, mut b, mut da, mut db) = (ONE, C64::from(0.0), C64::from(0.0), C64::from(0.0));
        for s in self.sines(theta) {
            let aj = z + k * s;
            let bj = -l1p * z.conj() - l2 * s;
            let na = aj * a + bj * b.conj();
            let nb = aj * b + bj * a.conj();
            let nda = da_j * a + aj * da + db_j * b.conj() + bj * db.conj();
            let ndb = da_j * b + aj * db + db_j * a.conj() + bj * da.conj();
            (a, b, da, db) = (na, nb, nda, ndb);
        }
        (a, b, da, db)
    }

    /// F(ζ, θ) with the factors multiplied in cyclic order starting at `start`.
    fn trace_from(&self, zeta: f64, theta: f64, start: i64) -> f64 {
        let z = C64::from_polar(1.0, zeta);
        let (l1p, l2) = (self.c.lambda1p, self.c.lambda2);
        let sines: Vec<f64> = self.sines(theta).collect();
        let (mut a, mut b) = (ONE, C64::from(0.0));
        for j in 0..self.q {
            let s = sines[((start + j).rem_euclid(self.q)) as usize];
            let aj = z + l1p * l2 * s;
            let bj = -l1p * z.conj() - l2 * s;
            (a, b) = (aj * a + bj * b.conj(), aj * b + bj * a.conj());
        }
        2.0 * a.re
    }

    /// Empirical rounding noise of F: spread over cyclic reorderings of the product.
    fn noise(&self, zeta: f64, theta: f64) -> f64 {
        let vals: Vec<f64> = (0..5).map(|k| self.trace_from(zeta, theta, k * self.q / 5 + k)).collect();
        let (lo, hi) = vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        hi - lo
    }

    /// F(ζ, θ) and ∂F/∂ζ.
    fn trace(&self, zeta: f64, theta: f64) -> (f64, f64) {
        let (a, _, da, _) = self.product(zeta, theta);
        (2.0 * a.re, 2.0 * da.re)
    }

    fn normalizer(&self, theta: f64) -> f64 {
        let l = self.c.lambda2;
        self.sines(theta).map(|s| self.c.lambda1 * (1.0 - l * l * s * s).max(0.0).sqrt()).product()
    }

    /// Coefficient of e^{2πiqθ} in F(ζ, θ).
    fn harmonic(&self) -> C64 {
        let (l1p, l2, q) = (self.c.lambda1p, self.c.lambda2, self.q as i32);
        let tr = (l2 * (1.0 + l1p)).powi(q) + (l2 * (l1p - 1.0)).powi(q);
        let sign = if (self.p * (self.q - 1)) % 2 == 0 { 1.0 } else { -1.0 };
        (C64::new(0.0, 2.0)).powi(-q) * sign * tr
    }

    /// G(θ) = F(ζ, θ) − F(ζ, 0).
    fn g(&self, theta: f64) -> f64 {
        let e = C64::from_polar(1.0, TAU * self.q as f64 * theta) - ONE;
        2.0 * (self.harmonic() * e).re
    }
}

/// Trace of the normalized q-step product of two-step maps at z = e^{iζ}.
pub fn monodromy_trace(c: &Couplings, freq: &Frequency, theta: f64, zeta: f64) -> Result<f64> {
    let (p, q) = freq
        .as_rational()
        .ok_or_else(|| Error::Domain("monodromy needs a rational frequency".into()))?;
    let z = C64::from_polar(1.0, zeta);
    let mut m = SU11Matrix::identity();
    for j in 0..q {
        let t = theta + ((j * p).rem_euclid(q)) as f64 / q as f64;
        let step = two_step_map(c, z, t - t.floor()).map_err(|e| match e {
            Error::SingularCocycle { reason, .. } => Error::SingularCocycle { step: j, reason },
            other => other,
        })?;
        m = step.mul(&m);
    }
    Ok(m.trace())
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
        if b - a < 1e-15 {
            break;
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum of a 1/q-periodic function: grid scan plus golden-section refinement.
fn periodic_max(f: &dyn Fn(f64) -> f64, period: f64, grid: usize) -> (f64, f64) {
    let h = period / grid as f64;
    let vals: Vec<f64> = (0..grid).map(|i| f(i as f64 * h)).collect();
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..grid {
        let prev = vals[(i + grid - 1) % grid];
        let next = vals[(i + 1) % grid];
        if vals[i] >= prev && vals[i] >= next {
            let x0 = i as f64 * h;
            let r = golden_max(f, x0 - h, x0 + h);
            let cand = if r.1 >= vals[i] { r } else { (x0, vals[i]) };
            if cand.1 > best.1 {
                best = cand;
            }
        }
    }
    (best.0.rem_euclid(1.0), best.1)
}

fn rational_parts(freq: &Frequency) -> Result<(i64, i64)> {
    freq.as_rational().ok_or_else(|| Error::Domain("band computation needs a rational frequency".into()))
}

fn check_nonsingular(c: &Couplings) -> Result<()> {
    if c.lambda1 == 0.0 || c.lambda2 >= 1.0 {
        return Err(Error::SingularCocycle {
            step: 0,
            reason: format!("couplings ({}, {}) make the two-step map singular", c.lambda1, c.lambda2),
        });
    }
    Ok(())
}

fn envelope(per: &Periodic, theta_grid: usize) -> Envelope {
    let period = 1.0 / per.q as f64;
    let grid = theta_grid.max(16);
    let upper = |t: f64| 2.0 * per.normalizer(t) - per.g(t);
    let lower = |t: f64| 2.0 * per.normalizer(t) + per.g(t);
    let (theta_hi, hi) = periodic_max(&upper, period, grid);
    let (theta_lo, neg_lo) = periodic_max(&lower, period, grid);
    Envelope { lo: -neg_lo, hi, theta_lo, theta_hi }
}

fn fixed_envelope(per: &Periodic, theta: f64) -> Envelope {
    let n2 = 2.0 * per.normalizer(theta);
    let g = per.g(theta);
    Envelope { lo: -n2 - g, hi: n2 - g, theta_lo: theta, theta_hi: theta }
}

/// Floquet CMV matrix on indices 0..2q with u_{j+2q} = twist·u_j.
pub fn floquet_cmv(c: &Couplings, freq: &Frequency, theta: f64, twist: f64) -> Result<DMatrix<C64>> {
    let (_, q) = rational_parts(freq)?;
    let n = 2 * q as usize;
    let ph = Phase::new(theta);
    let pair = |j: i64| verblunsky_gauged(c, freq, ph, j);
    let mut l = DMatrix::<C64>::zeros(n, n);
    let mut m = DMatrix::<C64>::zeros(n, n);
    for k in 0..q as usize {
        let th = pair(2 * k as i64).theta_block().0;
        let (a, b) = (2 * k, 2 * k + 1);
        l[(a, a)] = th[0][0];
        l[(a, b)] = th[0][1];
        l[(b, a)] = th[1][0];
        l[(b, b)] = th[1][1];
        let th = pair(2 * k as i64 + 1).theta_block().0;
        let (a, b) = (2 * k + 1, (2 * k + 2) % n);
        // the block straddling the cell boundary picks up the twist
        let t = if 2 * k + 2 == n { twist } else { 1.0 };
        m[(a, a)] += th[0][0];
        m[(a, b)] += th[0][1] * t;
        m[(b, a)] += th[1][0] * t;
        m[(b, b)] += th[1][1];
    }
    Ok(l * m)
}

/// Eigenvalue angles of the Floquet CMV matrix, sorted in [0, 2π).
pub fn floquet_angles(c: &Couplings, freq: &Frequency, theta: f64, twist: f64) -> Result<Vec<f64>> {
    let m = floquet_cmv(c, freq, theta, twist)?;
    let ev = nalgebra::linalg::Schur::new(m)
        .eigenvalues()
        .ok_or_else(|| Error::Domain("Schur decomposition did not triangularize".into()))?;
    if let Some(bad) = ev.iter().find(|z| (z.norm() - 1.0).abs() > 1e-9) {
        return Err(Error::Domain(format!("Floquet eigenvalue off the unit circle: |z| = {}", bad.norm())));
    }
    let mut a: Vec<f64> = ev.iter().map(|z| wrap_angle(z.arg())).collect();
    a.sort_by(f64::total_cmp);
    Ok(a)
}

/// Pairs the sorted edges (periodic = upper level, antiperiodic = lower level)
/// into bands, each joining one edge of either kind.
fn pair_edges(upper: &[f64], lower: &[f64]) -> (Vec<Arc>, usize) {
    let mut edges: Vec<(f64, bool)> = upper.iter().map(|&a| (a, true)).chain(lower.iter().map(|&a| (a, false))).collect();
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));
    let n = edges.len();
    if n == 0 {
        return (vec![], 0);
    }
    let mixed = |o: usize| (0..n / 2).filter(|&i| edges[(o + 2 * i) % n].1 != edges[(o + 2 * i + 1) % n].1).count();
    let offset = if mixed(0) >= mixed(1) { 0 } else { 1 };
    let bad = n / 2 - mixed(offset);
    let arcs = (0..n / 2)
        .map(|i| {
            let (a, b) = (edges[(offset + 2 * i) % n].0, edges[(offset + 2 * i + 1) % n].0);
            Arc::new(a, if b < a { b + TAU } else { b })
        })
        .collect::<Vec<_>>();
    let mut arcs = arcs;
    arcs.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    (arcs, bad)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Inside,
    Tangent,
    Outside,
}

#[derive(Debug, Clone, Copy)]
struct Extremum {
    pos: f64,
    val: f64,
    is_max: bool,
}

fn bisect(mut a: f64, mut b: f64, mut pos_at_a: bool, g: impl Fn(f64) -> f64) -> f64 {
    // g changes sign on [a, b]; pos_at_a says g(a) > 0
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if (gm > 0.0) == pos_at_a {
            a = m;
            pos_at_a = gm > 0.0;
        } else {
            b = m;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    0.5 * (a + b)
}

/// Extrema of a smooth 2π-periodic function from derivative sign changes on an n-grid.
fn find_extrema(f: &(dyn Fn(f64) -> (f64, f64) + Sync), n: usize) -> (Vec<Extremum>, f64) {
    let h = TAU / n as f64;
    let samples: Vec<(f64, f64)> = (0..n).into_par_iter().map(|i| f(i as f64 * h)).collect();
    let found: Vec<Option<Extremum>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (d0, d1) = (samples[i].1, samples[(i + 1) % n].1);
            let a = i as f64 * h;
            if d0 == 0.0 {
                let dprev = samples[(i + n - 1) % n].1;
                if dprev != 0.0 {
                    return Some(Extremum { pos: a, val: samples[i].0, is_max: dprev > 0.0 });
                }
                return None;
            }
            if d1 == 0.0 || (d0 > 0.0) == (d1 > 0.0) {
                return None;
            }
            let x = bisect(a, a + h, d0 > 0.0, |t| f(t).1);
            Some(Extremum { pos: wrap_angle(x), val: f(x).0, is_max: d0 > 0.0 })
        })
        .collect();
    let mut ext: Vec<Extremum> = found.into_iter().flatten().collect();
    ext.sort_by(|a, b| a.pos.total_cmp(&b.pos));
    (ext, samples[0].0)
}

/// Level set {ζ : lo ≤ P(ζ) ≤ hi} of a smooth 2π-periodic function.
fn level_set(f: &(dyn Fn(f64) -> (f64, f64) + Sync), lo: f64, hi: f64, n: usize, tol: &dyn Fn(f64) -> f64) -> Result<(Vec<Arc>, Vec<f64>)> {
    let (ext, v0) = find_extrema(f, n);
    if ext.is_empty() {
        return Ok((if v0 >= lo && v0 <= hi { vec![Arc { lo: 0.0, hi: TAU }] } else { vec![] }, vec![]));
    }
    let m = ext.len();
    if m % 2 == 1 || (0..m).any(|k| ext[k].is_max == ext[(k + 1) % m].is_max) {
        return Err(Error::Domain(format!("extrema of the discriminant do not alternate ({m} found)")));
    }
    let kind: Vec<Kind> = ext
        .iter()
        .map(|e| {
            let edge = if e.is_max { e.val - hi } else { lo - e.val };
            if edge.abs() <= tol(e.pos) {
                Kind::Tangent
            } else if edge < 0.0 && e.val >= lo && e.val <= hi {
                Kind::Inside
            } else {
                Kind::Outside
            }
        })
        .collect();
    // band interval on each monotone piece [e_k, e_{k+1}]
    let pieces: Vec<Option<(f64, f64)>> = (0..m)
        .map(|k| {
            let (e0, e1) = (ext[k], ext[(k + 1) % m]);
            let (a, b) = (e0.pos, if k + 1 == m { e1.pos + TAU } else { e1.pos });
            let clamp_val = |e: &Extremum, kd: Kind| {
                if kd == Kind::Tangent {
                    if e.is_max { hi } else { lo }
                } else {
                    e.val
                }
            };
            let (v0, v1) = (clamp_val(&e0, kind[k]), clamp_val(&e1, kind[(k + 1) % m]));
            let (low_end, high_end, rising) = if v0 < v1 { (v0, v1, true) } else { (v1, v0, false) };
            if high_end < lo || low_end > hi {
                return None;
            }
            let root = |level: f64| bisect(a, b, f(a).0 - level > 0.0, |t| f(t).0 - level);
            let enter_low = if low_end >= lo { None } else { Some(root(lo)) };
            let exit_high = if high_end <= hi { None } else { Some(root(hi)) };
            let (s, t) = if rising {
                (enter_low.unwrap_or(a), exit_high.unwrap_or(b))
            } else {
                (exit_high.unwrap_or(a), enter_low.unwrap_or(b))
            };
            if t < s {
                None
            } else {
                Some((s, t))
            }
        })
        .collect();
    let closed: Vec<f64> = (0..m).filter(|&k| kind[k] == Kind::Tangent).map(|k| ext[k].pos).collect();
    if kind.iter().all(|k| *k == Kind::Inside) {
        return Ok((vec![Arc { lo: 0.0, hi: TAU }], closed));
    }
    // start right after an extremum that is not inside, so no arc wraps the loop
    let start = (0..m).find(|&k| kind[k] != Kind::Inside).expect("some break");
    let mut arcs = Vec::new();
    let mut cur: Option<(f64, f64)> = None;
    for step in 0..m {
        let k = (start + step) % m;
        let shift = if k < start { TAU } else { 0.0 };
        let joins = kind[k] == Kind::Inside;
        match pieces[k] {
            None => {
                if let Some(c) = cur.take() {
                    arcs.push(c);
                }
            }
            Some((s, t)) => {
                let (s, t) = (s + shift, t + shift);
                match cur {
                    Some((cs, _)) if joins => cur = Some((cs, t)),
                    _ => {
                        if let Some(c) = cur.take() {
                            arcs.push(c);
                        }
                        cur = Some((s, t));
                    }
                }
            }
        }
    }
    if let Some(c) = cur {
        arcs.push(c);
    }
    let mut arcs: Vec<Arc> = arcs.into_iter().filter(|(s, t)| t > s).map(|(s, t)| Arc::new(s, t)).collect();
    arcs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut closed = closed;
    closed.sort_by(f64::total_cmp);
    Ok((arcs, closed))
}

/// Tolerance at ζ under which the trace counts as touching the envelope: a
/// multiple of the empirical rounding noise of F plus the error of the level.
fn tangency_tol(env: &Envelope, per: &Periodic, zeta: f64) -> f64 {
    let level = env.hi.abs() + env.lo.abs() + 4.0 * per.harmonic().norm();
    8.0 * per.noise(zeta, 0.0) + 4.0 * f64::EPSILON * per.q as f64 * level
}

fn default_resolution(q: i64, res: usize) -> usize {
    res.max(64 * q as usize).max(256)
}

/// How band edges are located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeSolver {
    /// Eigenvalues of the Floquet CMV matrix at the extremal phases.
    FloquetEigen,
    /// Sign changes of the discriminant on a ζ grid, refined by bisection.
    TraceBisection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandOptions {
    /// Phase grid per period 1/q for locating the envelope (refined afterwards).
    pub theta_grid: usize,
    /// ζ grid for the bisection solver; 0 picks max(64q, 256).
    pub zeta_resolution: usize,
    pub solver: EdgeSolver,
}

impl Default for BandOptions {
    fn default() -> Self {
        BandOptions { theta_grid: 16, zeta_resolution: 0, solver: EdgeSolver::FloquetEigen }
    }
}

/// Gaps narrower than this are tested for tangency against the trace.
const TANGENCY_WIDTH: f64 = 1e-6;

/// Closes gaps where the trace only grazes the envelope. An O(ε) error in the
/// level opens a double root by O(√ε), so narrow gaps are decided by the
/// excess of F over the level at the gap midpoint.
fn snap_tangencies(mut arcs: Vec<Arc>, per: &Periodic, env: &Envelope) -> (Vec<Arc>, Vec<f64>) {
    let n = arcs.len();
    let mut closed = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let end = arcs[i].hi;
        let next = if j == 0 { arcs[0].lo + TAU } else { arcs[j].lo };
        let width = next - end;
        if n < 2 || width > TANGENCY_WIDTH {
            continue;
        }
        let mid = 0.5 * (end + next);
        let f = per.trace(mid, 0.0).0;
        if (f - env.hi).max(env.lo - f) <= tangency_tol(env, per, mid) {
            arcs[i].hi = mid;
            if j == 0 {
                arcs[0].lo = mid - TAU;
            } else {
                arcs[j].lo = mid;
            }
            closed.push(wrap_angle(mid));
        }
    }
    // keep lo in [0, 2π) after snapping across zero
    for a in arcs.iter_mut() {
        if a.lo < 0.0 {
            *a = Arc::new(a.lo + TAU, a.hi + TAU);
        }
    }
    arcs.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    closed.sort_by(f64::total_cmp);
    (arcs, closed)
}

fn build(c: &Couplings, freq: &Frequency, opts: &BandOptions, fixed_theta: Option<f64>) -> Result<BandStructure> {
    check_nonsingular(c)?;
    let (p, q) = rational_parts(freq)?;
    let per = Periodic { c: *c, p, q };
    let env = match fixed_theta {
        None => envelope(&per, opts.theta_grid),
        Some(t) => fixed_envelope(&per, t),
    };
    let mut warnings = Vec::new();
    let (arcs, closed) = match opts.solver {
        EdgeSolver::FloquetEigen => {
            let upper = floquet_angles(c, freq, env.theta_hi, 1.0)?;
            let lower = floquet_angles(c, freq, env.theta_lo, -1.0)?;
            let (arcs, bad) = pair_edges(&upper, &lower);
            if bad > 0 {
                warnings.push(format!("{bad} bands join two edges of the same kind"));
            }
            snap_tangencies(arcs, &per, &env)
        }
        EdgeSolver::TraceBisection => {
            let tol = |z: f64| tangency_tol(&env, &per, z);
            let f = |z: f64| per.trace(z, 0.0);
            let mut n = default_resolution(q, opts.zeta_resolution);
            let mut out = level_set(&f, env.lo, env.hi, n, &tol)?;
            if out.0.len() != 2 * q as usize {
                n *= 4;
                out = level_set(&f, env.lo, env.hi, n, &tol)?;
            }
            out
        }
    };
    if arcs.len() != 2 * q as usize {
        warnings.push(format!("band count {} differs from 2q = {}", arcs.len(), 2 * q));
    }
    Ok(BandStructure {
        arcs,
        closed_gaps: closed,
        freq: *freq,
        couplings: *c,
        theta_grid: opts.theta_grid,
        convergent: None,
        envelope: env,
        warnings,
    })
}

/// Union over all phases of the periodic spectra at Φ = p/q.
pub fn band_arcs(c: &Couplings, freq: &Frequency, opts: &BandOptions) -> Result<BandStructure> {
    build(c, freq, opts, None)
}

/// Spectrum of the periodic operator at one phase θ.
pub fn band_arcs_at_phase(c: &Couplings, freq: &Frequency, theta: f64, opts: &BandOptions) -> Result<BandStructure> {
    build(c, freq, opts, Some(theta))
}

/// Band structure at the depth-th continued-fraction convergent of φ.
pub fn spectrum_approx(c: &Couplings, phi: f64, depth: usize, opts: &BandOptions) -> Result<BandStructure> {
    let cf = continued_fraction(phi, depth)?;
    let (p, q) = match cf.convergent(depth) {
        Some(pq) => pq,
        None => *cf.convergents.last().expect("at least one convergent"),
    };
    let freq = Frequency::rational(p, q)?;
    let mut bs = band_arcs(c, &freq, opts)?;
    bs.convergent = Some((p, q));
    if cf.rational {
        bs.warnings.push(format!("frequency {phi} is rational ({p}/{q}); bands are exact"));
    }
    Ok(bs)
}

/// A spectral gap; labels are filled in by [`gap_labels`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapRecord {
    pub arc: Arc,
    pub width: f64,
    pub label: Option<i64>,
    pub ids: Option<f64>,
    pub residual: Option<f64>,
}

pub const DEFAULT_WIDTH_FLOOR: f64 = 1e-9;

/// Complementary arcs wider than `width_floor`, sorted by position.
pub fn gaps(bs: &BandStructure, width_floor: f64) -> Vec<GapRecord> {
    let arcs = &bs.arcs;
    let mk = |lo: f64, hi: f64| GapRecord { arc: Arc::new(lo, hi), width: hi - lo, label: None, ids: None, residual: None };
    if arcs.is_empty() {
        return vec![mk(0.0, TAU)];
    }
    let mut out = Vec::new();
    for i in 0..arcs.len() {
        let end = arcs[i].hi;
        let next = if i + 1 < arcs.len() { arcs[i + 1].lo } else { arcs[0].lo + TAU };
        if next - end > width_floor {
            out.push(mk(end, next));
        }
    }
    out.sort_by(|a, b| a.arc.lo.total_cmp(&b.arc.lo));
    out
}

pub const LABEL_RESIDUAL_MAX: f64 = 1e-3;

/// k minimizing ‖2·ids − kΦ‖ over |k| ≤ k_max; ties go to smaller |k|, then smaller k.
pub fn fit_label(ids: f64, phi: f64, k_max: i64) -> (i64, f64) {
    let mut best = (0i64, f64::INFINITY);
    for k in -k_max..=k_max {
        let r = torus_dist(2.0 * ids - k as f64 * phi);
        let better = r < best.1 - 1e-12
            || ((r - best.1).abs() <= 1e-12 && (k.abs(), k) < (best.0.abs(), best.0));
        if better {
            best = (k, r);
        }
    }
    best
}

/// Rotation numbers at gap midpoints and fitted labels. `k_max` defaults to
/// 2q for rational frequencies and 50 otherwise.
pub fn gap_labels(c: &Couplings, freq: &Frequency, gaps: &[GapRecord], rot_iters: u64, k_max: Option<i64>) -> Result<Vec<GapRecord>> {
    let k_max = k_max.unwrap_or(match freq.as_rational() {
        Some((_, q)) => 2 * q,
        None => 50,
    });
    let phi = freq.value();
    gaps.par_iter()
        .map(|g| {
            let spec = CocycleSpec::new(Family::TwoStep, *c, *freq, g.arc.mid());
            let ids = rotation_number(&spec, rot_iters, 0.0)?;
            let (k, r) = fit_label(ids, phi, k_max);
            Ok(GapRecord {
                ids: Some(ids),
                residual: Some(r),
                label: if r <= LABEL_RESIDUAL_MAX { Some(k) } else { None },
                ..*g
            })
        })
        .collect()
}

/// One frequency of a butterfly sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ButterflyRecord {
    pub p: i64,
    pub q: i64,
    pub result: std::result::Result<BandStructure, String>,
}

/// Reduced fractions p/q with 2 ≤ q ≤ q_max, ordered by (q, p).
pub fn butterfly_frequencies(q_max: i64) -> Vec<(i64, i64)> {
    (2..=q_max)
        .flat_map(|q| (0..q).filter(move |&p| crate::model::gcd(p, q) == 1).map(move |p| (p, q)))
        .collect()
}

pub fn butterfly(c: &Couplings, q_max: i64, opts: &BandOptions) -> Result<Vec<ButterflyRecord>> {
    if q_max < 2 {
        return Err(Error::Domain(format!("q_max = {q_max} must be at least 2")));
    }
    Ok(butterfly_frequencies(q_max)
        .into_par_iter()
        .map(|(p, q)| {
            let result = Frequency::rational(p, q)
                .and_then(|f| band_arcs(c, &f, opts))
                .map_err(|e| e.to_string());
            ButterflyRecord { p, q, result }
        })
        .collect())
}

/// Largest distance from a point of `a` to the set `b`.
fn directed_hausdorff(a: &[Arc], b: &[Arc]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    let dist_b = |x: f64| b.iter().map(|arc| arc.dist(x)).fold(f64::INFINITY, f64::min);
    let mut worst: f64 = 0.0;
    for arc in a {
        worst = worst.max(dist_b(arc.lo)).max(dist_b(arc.hi));
    }
    // interior points of `a` lying in gaps of `b`: the farthest is the gap midpoint clipped to the arc
    let mut sorted = b.to_vec();
    sorted.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    for i in 0..sorted.len() {
        let g_lo = sorted[i].hi;
        let g_hi = if i + 1 < sorted.len() { sorted[i + 1].lo } else { sorted[0].lo + TAU };
        if g_hi <= g_lo {
            continue;
        }
        let mid = 0.5 * (g_lo + g_hi);
        for arc in a {
            for shift in [-TAU, 0.0, TAU] {
                let (lo, hi) = ((arc.lo + shift).max(g_lo), (arc.hi + shift).min(g_hi));
                if lo <= hi {
                    worst = worst.max(dist_b(wrap_angle(mid.clamp(lo, hi))));
                }
            }
        }
    }
    worst
}

/// Hausdorff distance between two arc sets on the circle.
pub fn hausdorff(a: &[Arc], b: &[Arc]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryDeviation {
    /// Distance to the image under ζ ↦ −ζ.
    pub conjugation: f64,
    /// Distance to the image under ζ ↦ ζ + π.
    pub negation: f64,
}

pub fn reflect_arcs(arcs: &[Arc]) -> Vec<Arc> {
    arcs.iter().map(|a| Arc::new(-a.hi, -a.lo)).collect()
}

pub fn rotate_arcs(arcs: &[Arc], angle: f64) -> Vec<Arc> {
    arcs.iter().map(|a| Arc::new(a.lo + angle, a.hi + angle)).collect()
}

pub fn symmetry_check(bs: &BandStructure) -> SymmetryDeviation {
    SymmetryDeviation {
        conjugation: hausdorff(&bs.arcs, &reflect_arcs(&bs.arcs)),
        negation: hausdorff(&bs.arcs, &rotate_arcs(&bs.arcs, PI)),
    }
}
