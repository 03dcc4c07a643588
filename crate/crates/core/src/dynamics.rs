//! Dilation evolution `U(t)`, its semigroup restrictions on resonance
//! expansions, probability concentration, the discrete symmetries, and the
//! classical Hamiltonian embedding of a first-order flow.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::ModelParams;
use crate::error::{Error, Result};
use crate::quad::QuadratureConfig;
use crate::spectral::{Basis, ResonanceExpansion};
use crate::testfn::TestFunction;

/// `U(t)φ(x) = e^{γt/2} φ(e^{γt} x)`, applied exactly.
pub fn evolve(phi: &TestFunction, t: f64, p: &ModelParams) -> Result<TestFunction> {
    let factor = (p.gamma * t).exp();
    Ok(phi
        .dilate(factor, factor.sqrt())?
        .with_description(format!("U({t})[{}]", phi.description())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub t: f64,
    pub enforce_semigroup: bool,
}

impl EvolutionConfig {
    pub fn unrestricted(t: f64) -> Self {
        EvolutionConfig {
            t,
            enforce_semigroup: false,
        }
    }

    pub fn semigroup(t: f64) -> Self {
        EvolutionConfig {
            t,
            enforce_semigroup: true,
        }
    }
}

/// `c_n ↦ e^{-γ(n+1/2)t} c_n` on the `f^-_n` basis (forward semigroup, `t ≥ 0`)
/// and `c_n ↦ e^{+γ(n+1/2)t} c_n` on the `f^+_n` basis (backward, `t ≤ 0`).
pub fn evolve_expansion(e: &ResonanceExpansion, cfg: &EvolutionConfig) -> Result<ResonanceExpansion> {
    let t = cfg.t;
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("time must be finite, got {t}"),
        });
    }
    let sign = match e.basis {
        Basis::MinusBasis => {
            if cfg.enforce_semigroup && t < 0.0 {
                return Err(Error::Domain(format!(
                    "the moment-basis semigroup U_-(t) is defined for t ≥ 0, got t = {t}"
                )));
            }
            -1.0
        }
        Basis::PlusBasis => {
            if cfg.enforce_semigroup && t > 0.0 {
                return Err(Error::Domain(format!(
                    "the Taylor-basis semigroup U_+(t) is defined for t ≤ 0, got t = {t}"
                )));
            }
            1.0
        }
    };
    let coeffs = e
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * (sign * e.gamma * (n as f64 + 0.5) * t).exp())
        .collect();
    Ok(ResonanceExpansion { coeffs, ..e.clone() })
}

/// `∫_{-ε}^{ε} |φ_t|² / ‖φ‖²`, computed as `∫_{-εe^{γt}}^{εe^{γt}} |φ|² / ‖φ‖²`.
pub fn concentration_probability(
    phi: &TestFunction,
    t: f64,
    epsilon: f64,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            reason: format!("window half-width must be positive, got {epsilon}"),
        });
    }
    let total = phi.norm_squared(cfg)?;
    if !(total > 0.0) {
        return Err(Error::Domain("concentration of the zero function".into()));
    }
    let w = epsilon * (p.gamma * t).exp();
    let (lo, hi) = phi.support_bounds();
    let (a, b) = (lo.max(-w), hi.min(w));
    if a >= b {
        return Ok(0.0);
    }
    let inside = phi.norm_squared_on((a, b), cfg)?;
    Ok((inside / total).clamp(0.0, 1.0))
}

/// `Tφ = F[φ]`.
pub fn time_reverse(phi: &TestFunction, cfg: &QuadratureConfig) -> Result<TestFunction> {
    phi.fourier_transform(cfg)
}

/// `Pφ(x) = φ(-x)`.
pub fn parity(phi: &TestFunction) -> TestFunction {
    phi.reflect()
}

/// `Cφ = φ̄`.
pub fn conjugation(phi: &TestFunction) -> TestFunction {
    phi.conjugate()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    pub x: f64,
    pub p: f64,
}

/// `(x, p) ↦ (e^{-γt}x, e^{γt}p)`.
pub fn classical_flow(s: &ClassicalState, t: f64, p: &ModelParams) -> ClassicalState {
    let e = (p.gamma * t).exp();
    ClassicalState {
        x: s.x / e,
        p: s.p * e,
    }
}

/// A smooth vector field `X: ℝⁿ → ℝⁿ`.
pub trait VectorField: Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> Vec<f64>;

    /// `J[l][k] = ∂X^l/∂x^k`, by central differences unless overridden.
    fn jacobian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut jac = vec![vec![0.0; n]; n];
        let mut probe = x.to_vec();
        for k in 0..n {
            let h = 1e-6 * x[k].abs().max(1.0);
            probe[k] = x[k] + h;
            let up = self.eval(&probe);
            probe[k] = x[k] - h;
            let down = self.eval(&probe);
            probe[k] = x[k];
            for l in 0..n {
                jac[l][k] = (up[l] - down[l]) / (2.0 * h);
            }
        }
        jac
    }
}

/// `X(x) = A x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearField {
    pub matrix: Vec<Vec<f64>>,
}

impl LinearField {
    /// The damping field `X(x) = -γx` in one dimension.
    pub fn damping(p: &ModelParams) -> Self {
        LinearField {
            matrix: vec![vec![-p.gamma]],
        }
    }
}

impl VectorField for LinearField {
    fn dim(&self) -> usize {
        self.matrix.len()
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn jacobian(&self, _x: &[f64]) -> Vec<Vec<f64>> {
        self.matrix.clone()
    }
}

/// `X(x) = c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantField {
    pub value: Vec<f64>,
}

impl VectorField for ConstantField {
    fn dim(&self) -> usize {
        self.value.len()
    }

    fn eval(&self, _x: &[f64]) -> Vec<f64> {
        self.value.clone()
    }

    fn jacobian(&self, _x: &[f64]) -> Vec<Vec<f64>> {
        vec![vec![0.0; self.value.len()]; self.value.len()]
    }
}

/// A field given by a closure; the Jacobian uses central differences.
pub struct FnField<F> {
    pub dim: usize,
    pub f: F,
}

impl<F: Fn(&[f64]) -> Vec<f64> + Sync> VectorField for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        (self.f)(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub times: Vec<f64>,
    /// `x(t)` from the Hamilton equations of `H = Σ p_k X^k(x)`.
    pub x_hamiltonian: Vec<Vec<f64>>,
    pub p_hamiltonian: Vec<Vec<f64>>,
    /// `x(t)` from `ẋ = X(x)` with the same integrator.
    pub x_direct: Vec<Vec<f64>>,
    pub energy: Vec<f64>,
    pub max_trajectory_deviation: f64,
    /// `max_t |H(t) - H(0)|`.
    pub energy_drift: f64,
}

fn axpy(y: &[f64], a: f64, d: &[f64]) -> Vec<f64> {
    y.iter().zip(d).map(|(y, d)| y + a * d).collect()
}

fn rk4_step(f: &dyn Fn(&[f64]) -> Vec<f64>, y: &[f64], h: f64) -> Vec<f64> {
    let k1 = f(y);
    let k2 = f(&axpy(y, h / 2.0, &k1));
    let k3 = f(&axpy(y, h / 2.0, &k2));
    let k4 = f(&axpy(y, h, &k3));
    y.iter()
        .enumerate()
        .map(|(i, y)| y + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Integrates `ẋ = ∂H/∂p = X(x)`, `ṗ_k = -∂H/∂x^k = -Σ_l p_l ∂X^l/∂x^k`
/// with classical RK4 and compares against the direct flow of `X`.
pub fn hamiltonian_embedding_check(
    field: &dyn VectorField,
    x0: &[f64],
    p0: &[f64],
    t: f64,
    steps: usize,
) -> Result<EmbeddingReport> {
    let n = field.dim();
    if x0.len() != n || p0.len() != n {
        return Err(Error::InvalidParameter {
            name: "state",
            reason: format!("field has dimension {n}, state has ({}, {})", x0.len(), p0.len()),
        });
    }
    if steps == 0 || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "steps",
            reason: "need a finite horizon and at least one step".into(),
        });
    }
    let h = t / steps as f64;
    let hamilton = |y: &[f64]| -> Vec<f64> {
        let (x, p) = y.split_at(n);
        let jac = field.jacobian(x);
        let mut out = field.eval(x);
        out.extend((0..n).map(|k| -(0..n).map(|l| p[l] * jac[l][k]).sum::<f64>()));
        out
    };
    let direct = |x: &[f64]| field.eval(x);
    let energy = |y: &[f64]| -> f64 {
        let (x, p) = y.split_at(n);
        field.eval(x).iter().zip(p).map(|(a, b)| a * b).sum()
    };

    let mut y: Vec<f64> = x0.iter().chain(p0).copied().collect();
    let mut xd = x0.to_vec();
    let h0 = energy(&y);
    let mut report = EmbeddingReport {
        times: vec![0.0],
        x_hamiltonian: vec![x0.to_vec()],
        p_hamiltonian: vec![p0.to_vec()],
        x_direct: vec![x0.to_vec()],
        energy: vec![h0],
        max_trajectory_deviation: 0.0,
        energy_drift: 0.0,
    };
    for step in 1..=steps {
        y = rk4_step(&hamilton, &y, h);
        xd = rk4_step(&direct, &xd, h);
        if y.iter().chain(&xd).any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "trajectory left the finite range at t = {}; reduce the step or horizon",
                step as f64 * h
            )));
        }
        let e = energy(&y);
        let dev = y[..n]
            .iter()
            .zip(&xd)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        report.max_trajectory_deviation = report.max_trajectory_deviation.max(dev);
        report.energy_drift = report.energy_drift.max((e - h0).abs());
        report.times.push(step as f64 * h);
        report.x_hamiltonian.push(y[..n].to_vec());
        report.p_hamiltonian.push(y[n..].to_vec());
        report.x_direct.push(xd.clone());
        report.energy.push(e);
    }
    Ok(report)
}

/// `∫ φ̄ χ`, the Hilbert-space inner product used by the symmetry checks.
pub fn inner_product(phi: &TestFunction, chi: &TestFunction, cfg: &QuadratureConfig) -> Result<Complex64> {
    phi.conjugate().pair(chi, cfg)
}
