//! Regularized one-sided powers `x^λ_±`, the boundary values `(k ± i0)^α`,
//! `δ^(n)`, and the Fourier-transform formulas of power distributions.
//!
//! All pairings here are bilinear: `⟨T, φ⟩ = ∫ T(x) φ(x) dx` with no complex
//! conjugation. [`pair_power_hermitian`] is the conjugating variant.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::factorial;
use crate::quad::{self, QuadratureConfig, SchemeHint};
use crate::specfn;
use crate::testfn::{Support, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// `x^λ_+` (supported on `x ≥ 0`) or `x^λ_-` (`|x|^λ` on `x < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDistribution {
    pub lambda: Complex64,
    pub side: Side,
}

impl PowerDistribution {
    pub fn new(lambda: Complex64, side: Side) -> Self {
        PowerDistribution { lambda, side }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundarySign {
    PlusI0,
    MinusI0,
}

impl BoundarySign {
    pub fn sign(self) -> f64 {
        match self {
            BoundarySign::PlusI0 => 1.0,
            BoundarySign::MinusI0 => -1.0,
        }
    }
}

/// `(k ± i0)^α = k^α_+ + e^{±iαπ} k^α_-`, defined for every complex `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPower {
    pub alpha: Complex64,
    pub sign: BoundarySign,
}

impl BoundaryPower {
    pub fn new(alpha: Complex64, sign: BoundarySign) -> Self {
        BoundaryPower { alpha, sign }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Which boundary value the Fourier transform of `x^λ_-` carries.
///
/// `SideMatched` pairs `x^λ_±` with `(k ± i0)`; `PlusForBoth` uses `(k + i0)`
/// on both sides. Only `SideMatched` satisfies transform duality for the
/// minus side (see the tests).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BoundaryConvention {
    #[default]
    SideMatched,
    PlusForBoth,
}

impl BoundaryConvention {
    pub fn boundary_sign(self, side: Side) -> BoundarySign {
        match (self, side) {
            (BoundaryConvention::SideMatched, Side::Minus) => BoundarySign::MinusI0,
            _ => BoundarySign::PlusI0,
        }
    }
}

/// Distance below which a direct pairing is treated as sitting on a pole.
pub const POLE_EPS: f64 = 1e-10;
/// Distance from a negative integer below which `(k ± i0)^α` switches to the
/// analytic limit path.
pub const BOUNDARY_LIMIT_RADIUS: f64 = 0.05;

/// Subtraction order used by [`pair_power`]: `max(0, ⌊-Re λ⌋) + 1`.
pub fn subtraction_order(lambda: Complex64) -> usize {
    let f = (-lambda.re).floor();
    if f > 0.0 {
        f as usize + 1
    } else {
        1
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

// Pieces of the plus-side regularization of ⟨x^λ_+, g⟩ with n subtracted
// Taylor terms: value = integral + Σ_{k=1}^{n} taylor[k-1]/(λ+k).
struct Regularized {
    integral: Complex64,
    taylor: Vec<Complex64>,
}

impl Regularized {
    fn value(&self, lambda: Complex64) -> Complex64 {
        self.integral
            + self
                .taylor
                .iter()
                .enumerate()
                .map(|(k, a)| a / (lambda + (k + 1) as f64))
                .sum::<Complex64>()
    }

    // the value with the pole term at λ = -m removed
    fn regular_part(&self, lambda: Complex64, m: usize) -> Complex64 {
        self.integral
            + self
                .taylor
                .iter()
                .enumerate()
                .filter(|(k, _)| k + 1 != m)
                .map(|(k, a)| a / (lambda + (k + 1) as f64))
                .sum::<Complex64>()
    }
}

fn x_pow(x: f64, lambda: Complex64) -> Complex64 {
    (lambda * x.ln()).exp()
}

// geometric breakpoints on [a, b] (a > 0) resolving the phase Im λ · ln x,
// merged with `extra`
fn log_breaks(a: f64, b: f64, im_lambda: f64, extra: &[f64]) -> Vec<f64> {
    let ratio = (b / a).ln();
    let by_phase = (im_lambda.abs() * ratio / PI).ceil();
    let by_scale = (ratio / 2f64.ln()).ceil();
    let pieces = by_phase.max(by_scale).clamp(1.0, 4096.0) as usize;
    let mut pts: Vec<f64> = (0..=pieces)
        .map(|j| {
            if j == pieces {
                b
            } else {
                a * (ratio * j as f64 / pieces as f64).exp()
            }
        })
        .collect();
    pts.extend(extra.iter().copied().filter(|&e| e > a && e < b));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn support_edges(g: &TestFunction) -> Vec<f64> {
    match g.support() {
        Support::Compact { lo, hi } => vec![lo, hi],
        Support::RapidDecay => vec![],
    }
}

// ∫_1^∞ x^λ g(x) dx over the support of g
fn far_part(g: &TestFunction, lambda: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    let integrand = |x: f64| x_pow(x, lambda) * g.eval(x);
    match g.support() {
        Support::Compact { lo, hi } => {
            let a = lo.max(1.0);
            if a >= hi {
                return Ok(c(0.0));
            }
            let pts = log_breaks(a, hi, lambda.im, &[]);
            Ok(quad::integrate_partitioned(integrand, &pts, cfg)?.value)
        }
        Support::RapidDecay => {
            // dyadic blocks until the integrand is negligible on two in a row
            let mut total = c(0.0);
            let mut quiet = 0;
            let mut a = 1.0;
            for _ in 0..60 {
                let b = 2.0 * a;
                let pts = log_breaks(a, b, lambda.im, &[]);
                total += quad::integrate_partitioned(integrand, &pts, cfg)?.value;
                let bound = (0..=16)
                    .map(|j| integrand(a + (b - a) * j as f64 / 16.0).norm())
                    .fold(0.0, f64::max)
                    * (b - a);
                if bound < 1e-3 * cfg.abs_tol {
                    quiet += 1;
                    if quiet >= 2 {
                        return Ok(total);
                    }
                } else {
                    quiet = 0;
                }
                a = b;
            }
            Err(Error::Accuracy {
                achieved: f64::NAN,
                partial: total,
            })
        }
    }
}

fn regularized_plus(
    g: &TestFunction,
    lambda: Complex64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Regularized> {
    if n > 0 && n - 1 > g.max_order() {
        return Err(Error::Capability {
            requested: n - 1,
            max: g.max_order(),
        });
    }
    let radius = g.analytic_radius_at_zero();
    let delta = if radius > 0.0 {
        (radius / 4.0).min(0.25)
    } else {
        0.0
    };
    let jet_order = if delta > 0.0 {
        g.max_order().max(n.saturating_sub(1))
    } else {
        n.saturating_sub(1)
    };
    let coeffs = if delta > 0.0 || n > 0 {
        g.jet(0.0, jet_order)?.into_coeffs()
    } else {
        Vec::new()
    };
    let taylor: Vec<Complex64> = coeffs.iter().take(n).copied().collect();

    // ∫_0^δ x^λ Σ_{j ≥ n} c_j x^j dx, term by term
    let mut series = c(0.0);
    if delta > 0.0 {
        let ln_delta = delta.ln();
        for (j, cj) in coeffs.iter().enumerate().skip(n) {
            if *cj == c(0.0) {
                continue;
            }
            let p = lambda + (j + 1) as f64;
            series += cj * (p * ln_delta).exp() / p;
        }
    }

    let remainder = |x: f64| {
        let poly = taylor.iter().rev().fold(c(0.0), |acc, a| acc * x + a);
        x_pow(x, lambda) * (g.eval(x) - poly)
    };
    let near = if delta > 0.0 {
        let pts = log_breaks(delta, 1.0, lambda.im, &support_edges(g));
        quad::integrate_partitioned(remainder, &pts, cfg)?.value
    } else {
        quad::integrate(remainder, 0.0, 1.0, &cfg.with_hint(SchemeHint::TanhSinhEndpoint))?.value
    };
    let far = far_part(g, lambda, cfg)?;
    Ok(Regularized {
        integral: series + near + far,
        taylor,
    })
}

fn oriented(phi: &TestFunction, side: Side) -> TestFunction {
    match side {
        Side::Plus => phi.clone(),
        Side::Minus => phi.reflect(),
    }
}

fn support_misses(phi: &TestFunction, side: Side) -> bool {
    match (phi.support(), side) {
        (Support::Compact { hi, .. }, Side::Plus) => hi <= 0.0,
        (Support::Compact { lo, .. }, Side::Minus) => lo >= 0.0,
        _ => false,
    }
}

fn nearest_pole(lambda: Complex64, n: usize) -> Option<usize> {
    (1..=n).find(|&k| (lambda + k as f64).norm() < POLE_EPS)
}

/// Regularized `⟨x^λ_±, φ⟩` with the default subtraction order.
pub fn pair_power(phi: &TestFunction, d: &PowerDistribution, cfg: &QuadratureConfig) -> Result<Complex64> {
    pair_power_with_order(phi, d, subtraction_order(d.lambda), cfg)
}

/// Regularized `⟨x^λ_±, φ⟩` subtracting `n` Taylor terms on `[0, 1]`; valid
/// for `Re λ > -n-1` away from `λ ∈ {-1, …, -n}`.
pub fn pair_power_with_order(
    phi: &TestFunction,
    d: &PowerDistribution,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if !(d.lambda.re > -(n as f64) - 1.0) {
        return Err(Error::Domain(format!(
            "subtraction order {n} covers Re λ > {}, got λ = {}",
            -(n as f64) - 1.0,
            d.lambda
        )));
    }
    if let Some(k) = nearest_pole(d.lambda, n) {
        return Err(Error::Pole {
            what: "power distribution pole",
            location: d.lambda,
            index: k,
            residue: residue_power(phi, k, d.side).ok(),
        });
    }
    if support_misses(phi, d.side) {
        return Ok(c(0.0));
    }
    let g = oriented(phi, d.side);
    Ok(regularized_plus(&g, d.lambda, n, cfg)?.value(d.lambda))
}

/// Hermitian pairing `∫ conj(x^λ_±) φ dx = ⟨x^{λ̄}_±, φ⟩`.
pub fn pair_power_hermitian(
    phi: &TestFunction,
    d: &PowerDistribution,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    pair_power(phi, &PowerDistribution::new(d.lambda.conj(), d.side), cfg)
}

/// Residue of `λ ↦ ⟨x^λ_±, φ⟩` at `λ = -k`: `φ^(k-1)(0)/(k-1)!` on the plus
/// side, `(-1)^(k-1) φ^(k-1)(0)/(k-1)!` on the minus side.
pub fn residue_power(phi: &TestFunction, k: usize, side: Side) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "poles sit at negative integers, k must be at least 1".into(),
        });
    }
    let coeff = phi.jet(0.0, k - 1)?.coeffs()[k - 1];
    Ok(match side {
        Side::Plus => coeff,
        Side::Minus if (k - 1) % 2 == 1 => -coeff,
        Side::Minus => coeff,
    })
}

/// `⟨|x|^λ, φ⟩` (even) or `⟨sign(x)|x|^λ, φ⟩` (odd).
pub fn pair_abs_power(
    phi: &TestFunction,
    lambda: Complex64,
    parity: Parity,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let p = pair_power(phi, &PowerDistribution::new(lambda, Side::Plus), cfg)?;
    let m = pair_power(phi, &PowerDistribution::new(lambda, Side::Minus), cfg)?;
    Ok(match parity {
        Parity::Even => p + m,
        Parity::Odd => p - m,
    })
}

// (1 - e^{iσπh})/h, entire in h
fn cancellation_factor(h: Complex64, sigma: f64) -> Complex64 {
    let a = Complex64::new(0.0, sigma * PI);
    if h.norm() < 0.5 {
        // -Σ_{j≥1} a^j h^{j-1}/j!
        let mut term = a;
        let mut sum = term;
        for j in 2..40 {
            term *= a * h / j as f64;
            sum += term;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        -sum
    } else {
        (c(1.0) - (a * h).exp()) / h
    }
}

fn nearest_negative_integer(alpha: Complex64) -> Option<usize> {
    let m = (-alpha.re).round();
    if m >= 1.0 && (alpha + m).norm() <= BOUNDARY_LIMIT_RADIUS {
        Some(m as usize)
    } else {
        None
    }
}

/// `e^{w} ⟨(k ± i0)^α, φ⟩`, combining the weight with the boundary phase in
/// log space so that large `|Im α|` neither overflows nor underflows.
pub(crate) fn boundary_power_weighted(
    phi: &TestFunction,
    b: &BoundaryPower,
    log_weight: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let alpha = b.alpha;
    let sigma = b.sign.sign();
    let phase = Complex64::new(0.0, sigma * PI) * alpha;
    match nearest_negative_integer(alpha) {
        None => {
            let p = pair_power(phi, &PowerDistribution::new(alpha, Side::Plus), cfg)?;
            let m = pair_power(phi, &PowerDistribution::new(alpha, Side::Minus), cfg)?;
            Ok(log_weight.exp() * p + (log_weight + phase).exp() * m)
        }
        Some(m) => {
            // pole parts of k^α_+ and e^{±iπα} k^α_- cancel at α = -m
            let n = m;
            let plus = if support_misses(phi, Side::Plus) {
                None
            } else {
                Some(regularized_plus(phi, alpha, n, cfg)?)
            };
            let minus = if support_misses(phi, Side::Minus) {
                None
            } else {
                Some(regularized_plus(&phi.reflect(), alpha, n, cfg)?)
            };
            let p_reg = plus.as_ref().map_or(c(0.0), |r| r.regular_part(alpha, m));
            let m_reg = minus.as_ref().map_or(c(0.0), |r| r.regular_part(alpha, m));
            let residue = phi.jet(0.0, m - 1)?.coeffs()[m - 1];
            let h = alpha + m as f64;
            let value = p_reg + phase.exp() * m_reg + residue * cancellation_factor(h, sigma);
            Ok(log_weight.exp() * value)
        }
    }
}

/// `⟨(k ± i0)^α, φ⟩` for any complex `α`.
pub fn pair_boundary_power(
    phi: &TestFunction,
    b: &BoundaryPower,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    boundary_power_weighted(phi, b, c(0.0), cfg)
}

/// Finite-part pairing `⟨k^{-m}, φ⟩` for `m ≥ 1`: the `α → -m` limit of
/// `(k ± i0)^α` with its `δ^(m-1)` contribution removed (the same for both
/// signs).
pub fn pair_finite_part(phi: &TestFunction, m: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: "finite part is defined for negative integer powers".into(),
        });
    }
    let alpha = c(-(m as f64));
    let p_reg = if support_misses(phi, Side::Plus) {
        c(0.0)
    } else {
        regularized_plus(phi, alpha, m, cfg)?.regular_part(alpha, m)
    };
    let m_reg = if support_misses(phi, Side::Minus) {
        c(0.0)
    } else {
        regularized_plus(&phi.reflect(), alpha, m, cfg)?.regular_part(alpha, m)
    };
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(p_reg + m_reg * sign)
}

/// `⟨δ^(n), φ⟩ = (-1)^n φ^(n)(0)`.
pub fn pair_delta_derivative(phi: &TestFunction, n: usize) -> Result<Complex64> {
    let d = phi.derivative_at(0.0, n)?;
    Ok(if n.is_multiple_of(2) { d } else { -d })
}

/// Log of the prefactor `±(i/√2π) e^{±iλπ/2} Γ(λ+1)` of `F[x^λ_±]`.
pub(crate) fn fourier_power_log_prefactor(lambda: Complex64, side: Side) -> Result<Complex64> {
    let z = lambda + 1.0;
    let ln_gamma = specfn::ln_gamma(z).map_err(|e| match e {
        Error::Pole { index, .. } => Error::Pole {
            what: "Fourier transform of power distribution (gamma pole)",
            location: lambda,
            index: index + 1,
            residue: None,
        },
        other => other,
    })?;
    let s = side.sign();
    let lead = Complex64::new(0.0, s / (2.0 * PI).sqrt()).ln();
    Ok(lead + Complex64::new(0.0, s * PI / 2.0) * lambda + ln_gamma)
}

/// `⟨F[x^λ_±], φ⟩` from the closed form
/// `F[x^λ_±](k) = ±(i/√2π) e^{±iλπ/2} Γ(λ+1) (k ± i0)^{-λ-1}`.
pub fn fourier_power_pairing(
    phi: &TestFunction,
    lambda: Complex64,
    side: Side,
    convention: BoundaryConvention,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let log_pref = fourier_power_log_prefactor(lambda, side)?;
    let b = BoundaryPower::new(-lambda - 1.0, convention.boundary_sign(side));
    boundary_power_weighted(phi, &b, log_pref, cfg)
}

/// `⟨F[xⁿ_±], φ⟩ = (1/√2π)[(±i)^{n+1} n! ⟨k^{-n-1}, φ⟩ + (∓i)ⁿ π ⟨δ^(n), φ⟩]`.
pub fn fourier_power_integer_pairing(
    phi: &TestFunction,
    n: usize,
    side: Side,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let unit = Complex64::new(0.0, side.sign());
    let fp = pair_finite_part(phi, n + 1, cfg)?;
    let delta = pair_delta_derivative(phi, n)?;
    let value = unit.powu(n as u32 + 1) * factorial(n) * fp + (-unit).powu(n as u32) * PI * delta;
    Ok(value / (2.0 * PI).sqrt())
}
