//! Quadrature backbone: global adaptive Gauss-Kronrod on finite and infinite
//! intervals, tanh-sinh for endpoint singularities, the trapezoid rule on
//! circles for residues, and a centred uniform-grid Fourier transform.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SchemeHint {
    #[default]
    AdaptiveDefault,
    TanhSinhEndpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub scheme_hint: SchemeHint,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
            scheme_hint: SchemeHint::AdaptiveDefault,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                reason: "must be positive".into(),
            });
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                reason: "must be positive".into(),
            });
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter {
                name: "max_subdivisions",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_hint(mut self, hint: SchemeHint) -> Self {
        self.scheme_hint = hint;
        self
    }
}

/// Value of a quadrature together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub err_estimate: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208814811340,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    let mut res_k = fc * WGK[10];
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_abs = fc.norm() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    if !res_k.re.is_finite() || !res_k.im.is_finite() {
        return Err(Error::Evaluation {
            at: Complex64::new(center, 0.0),
        });
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment {
        a,
        b,
        value,
        err,
        abs: res_abs,
    })
}

/// Global adaptive Gauss-Kronrod (21 point) starting from the partition given
/// by the sorted `points` (at least two).
pub fn integrate_partitioned<F>(f: F, points: &[f64], cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    for w in points.windows(2) {
        if w[1] > w[0] {
            let s = kronrod21(&f, w[0], w[1])?;
            total += s.value;
            total_err += s.err;
            total_abs += s.abs;
            heap.push(s);
        }
    }
    let initial = heap.len().max(1);
    let mut count = heap.len();
    loop {
        // below the rounding floor of the rule no refinement can help
        let tol = cfg
            .abs_tol
            .max(cfg.rel_tol * total.norm())
            .max(64.0 * f64::EPSILON * total_abs);
        if total_err <= tol || heap.is_empty() {
            return Ok(Integral {
                value: total,
                err_estimate: total_err,
            });
        }
        if count >= cfg.max_subdivisions.max(initial) + initial {
            return Err(Error::Accuracy {
                achieved: total_err,
                partial: total,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution; keep it and stop refining it
            return if total_err <= 10.0 * tol {
                Ok(Integral {
                    value: total,
                    err_estimate: total_err,
                })
            } else {
                Err(Error::Accuracy {
                    achieved: total_err,
                    partial: total,
                })
            };
        }
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_abs += left.abs + right.abs - worst.abs;
        heap.push(left);
        heap.push(right);
        count += 1;
        if count % 64 == 0 {
            // resum to shed accumulated rounding in the running totals
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.err).sum();
            total_abs = heap.iter().map(|s| s.abs).sum();
        }
    }
}

/// `∫_lo^hi f(x) dx`; either bound may be infinite.
///
/// Half-infinite ranges use `x = lo + t/(1-t)`; the doubly infinite range is
/// split at zero.
pub fn integrate<F>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    if lo.is_nan() || hi.is_nan() || !(lo < hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => match cfg.scheme_hint {
            SchemeHint::AdaptiveDefault => integrate_partitioned(f, &[lo, hi], cfg),
            SchemeHint::TanhSinhEndpoint => tanh_sinh(f, lo, hi, cfg),
        },
        (true, false) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(lo + t / s) / (s * s)
            };
            integrate_partitioned(
                g,
                &[0.0, 0.5, 0.75, 0.875, 1.0],
                &cfg.with_hint(SchemeHint::AdaptiveDefault),
            )
        }
        (false, true) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(hi - t / s) / (s * s)
            };
            integrate_partitioned(
                g,
                &[0.0, 0.5, 0.75, 0.875, 1.0],
                &cfg.with_hint(SchemeHint::AdaptiveDefault),
            )
        }
        (false, false) => {
            let f: &dyn Fn(f64) -> Complex64 = &f;
            let left = integrate(f, f64::NEG_INFINITY, 0.0, cfg)?;
            let right = integrate(f, 0.0, f64::INFINITY, cfg)?;
            Ok(Integral {
                value: left.value + right.value,
                err_estimate: left.err_estimate + right.err_estimate,
            })
        }
    }
}

/// Breakpoints splitting `[lo, hi]` into pieces spanning at most one period of
/// `e^{i ω x}` (capped at `max_pieces`).
pub fn period_breaks(lo: f64, hi: f64, omega: f64, max_pieces: usize) -> Vec<f64> {
    let width = hi - lo;
    let pieces = if omega == 0.0 {
        1
    } else {
        ((width * omega.abs() / (2.0 * PI)).ceil() as usize).clamp(1, max_pieces.max(1))
    };
    (0..=pieces)
        .map(|j| {
            if j == pieces {
                hi
            } else {
                lo + width * j as f64 / pieces as f64
            }
        })
        .collect()
}

/// Oscillatory integral: the interval is first cut at the periods of
/// `e^{i ω x}` and the adaptive rule then refines globally.
pub fn integrate_oscillatory<F>(
    f: F,
    lo: f64,
    hi: f64,
    omega: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    if !(lo < hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let breaks = period_breaks(lo, hi, omega, 4096);
    integrate_partitioned(f, &breaks, cfg)
}

/// Tanh-sinh (double exponential) rule on a finite interval; suited to
/// integrable endpoint singularities.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < b) {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    let half = 0.5 * (b - a);
    // abscissa from t, evaluated against the nearer endpoint
    let node = |t: f64| -> Option<(f64, f64)> {
        let u = 0.5 * PI * t.sinh();
        let cu = u.cosh();
        let w = half * 0.5 * PI * t.cosh() / (cu * cu);
        // distance from the nearer endpoint is (b-a)/(1+e^{2|u|})
        let d = (b - a) / (1.0 + (2.0 * u.abs()).exp());
        let x = if u < 0.0 { a + d } else { b - d };
        if d <= 0.0 || x <= a || x >= b || w < 1e-300 {
            None
        } else {
            Some((x, w))
        }
    };
    let t_max = 6.5;
    let mut h = 1.0;
    let mut sum = f(a + half);
    if !sum.re.is_finite() || !sum.im.is_finite() {
        return Err(Error::Evaluation {
            at: Complex64::new(a + half, 0.0),
        });
    }
    sum *= half * 0.5 * PI;
    let add_nodes = |step: f64, start: f64, sum: &mut Complex64| -> Result<()> {
        let mut t = start;
        while t <= t_max {
            for s in [t, -t] {
                if let Some((x, w)) = node(s) {
                    let fx = f(x);
                    if !fx.re.is_finite() || !fx.im.is_finite() {
                        return Err(Error::Evaluation {
                            at: Complex64::new(x, 0.0),
                        });
                    }
                    *sum += fx * w;
                }
            }
            t += step;
        }
        Ok(())
    };
    add_nodes(1.0, 1.0, &mut sum)?;
    let mut estimate = sum * h;
    let mut err = f64::INFINITY;
    for _level in 0..12 {
        h *= 0.5;
        add_nodes(2.0 * h, h, &mut sum)?;
        let next = sum * h;
        err = (next - estimate).norm();
        estimate = next;
        let tol = cfg.abs_tol.max(cfg.rel_tol * estimate.norm());
        if err <= tol {
            return Ok(Integral {
                value: estimate,
                err_estimate: err,
            });
        }
    }
    Err(Error::Accuracy {
        achieved: err,
        partial: estimate,
    })
}

/// Circle in the complex plane for residue extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub node_count: usize,
}

impl Contour {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Contour {
            center,
            radius,
            node_count: 64,
        }
    }

    pub fn with_nodes(mut self, node_count: usize) -> Self {
        self.node_count = node_count;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::InvalidParameter {
                name: "radius",
                reason: "contour radius must be positive".into(),
            });
        }
        if self.node_count < 16 {
            return Err(Error::InvalidParameter {
                name: "node_count",
                reason: "at least 16 nodes are required".into(),
            });
        }
        Ok(())
    }

    pub fn node(&self, j: usize, count: usize) -> Complex64 {
        let theta = 2.0 * PI * j as f64 / count as f64;
        self.center + Complex64::from_polar(self.radius, theta)
    }
}

/// Largest node count used by [`contour_integral`].
pub const MAX_CONTOUR_NODES: usize = 1024;

/// `(1/2πi) ∮ g(z) dz` with exactly `c.node_count` trapezoid nodes.
pub fn contour_trapezoid<G>(g: G, c: &Contour) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64> + Sync,
{
    c.validate()?;
    contour_sum(&g, c, 0, 1, c.node_count).map(|s| s / c.node_count as f64)
}

// sum of g(z_j)(z_j - center) over j = start, start+stride, ... < count
fn contour_sum<G>(g: &G, c: &Contour, start: usize, stride: usize, count: usize) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let terms: Vec<Result<Complex64>> = (start..count)
        .step_by(stride)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|j| {
            let z = c.node(j, count);
            let v = g(z)?;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Evaluation { at: z });
            }
            Ok(v * (z - c.center))
        })
        .collect();
    terms.into_iter().sum()
}

/// Self-validating residue integral `(1/2πi) ∮ g(z) dz`: starts at
/// `c.node_count` nodes and doubles until two successive trapezoid sums agree
/// to `1e-10` (relative to `max(1, |value|)`), up to [`MAX_CONTOUR_NODES`].
pub fn contour_integral<G>(g: G, c: &Contour) -> Result<Complex64>
where
    G: Fn(Complex64) -> Result<Complex64> + Sync,
{
    c.validate()?;
    let mut count = c.node_count;
    let mut sum = contour_sum(&g, c, 0, 1, count)?;
    let mut value = sum / count as f64;
    loop {
        if count * 2 > MAX_CONTOUR_NODES.max(c.node_count) {
            return Err(Error::Accuracy {
                achieved: f64::NAN,
                partial: value,
            });
        }
        // the odd nodes of the doubled rule are the new ones
        let extra = contour_sum(&g, c, 1, 2, count * 2)?;
        sum += extra;
        count *= 2;
        let next = sum / count as f64;
        let diff = (next - value).norm();
        value = next;
        if diff < 1e-10 * value.norm().max(1.0) {
            return Ok(value);
        }
    }
}

/// Centred grid helper: the sample `j` of a length-`n` sequence sits at
/// `(j - n/2) * spacing`.
pub fn centered_grid(n: usize, spacing: f64) -> Vec<f64> {
    let half = (n / 2) as f64;
    (0..n).map(|j| (j as f64 - half) * spacing).collect()
}

/// Discrete approximation of `(1/√2π) ∫ e^{ikx} f(x) dx`.
///
/// Samples live on the centred grid `x_j = (j - n/2) h`; the result is on the
/// conjugate grid `k_m = (m - n/2) 2π/(n h)`.
pub fn uniform_dft(samples: &[Complex64], spacing: f64) -> Result<Vec<Complex64>> {
    transform(samples, spacing, 1.0)
}

/// Inverse of [`uniform_dft`]; `spacing` is the spacing of the original
/// x-grid.
pub fn uniform_idft(spectrum: &[Complex64], spacing: f64) -> Result<Vec<Complex64>> {
    let n = spectrum.len();
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "at least two samples are required".into(),
        });
    }
    let dk = 2.0 * PI / (n as f64 * spacing);
    transform(spectrum, dk, -1.0)
}

/// Conjugate grid of [`uniform_dft`].
pub fn conjugate_grid(n: usize, spacing: f64) -> Vec<f64> {
    centered_grid(n, 2.0 * PI / (n as f64 * spacing))
}

fn transform(samples: &[Complex64], spacing: f64, sign: f64) -> Result<Vec<Complex64>> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: "at least two samples are required".into(),
        });
    }
    let half = n / 2;
    // shift so the sample at x = 0 lands on index 0 of the FFT input
    let mut buf: Vec<Complex64> = (0..n).map(|j| samples[(j + half) % n]).collect();
    let mut planner = FftPlanner::new();
    let fft = if sign > 0.0 {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    fft.process(&mut buf);
    let scale = spacing / (2.0 * PI).sqrt();
    Ok((0..n).map(|m| buf[(m + n - half) % n] * scale).collect())
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n <= 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
