//! Resonance expansions in the `f^±_n` bases, the action of `Ĥ` on them, and
//! reconstruction of a function from the real-energy eigenfunctions.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{self, Branch, ModelParams, ResonantState};
use crate::error::{Error, Result};
use crate::jet::factorial;
use crate::quad::{self, QuadratureConfig};
use crate::testfn::{FunctionClass, TestFunction};

pub const DEFAULT_TRUNCATION: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// Coefficients multiply `f^+_n = xⁿ/√n!`.
    PlusBasis,
    /// Coefficients multiply `f^-_n = (-1)ⁿ δ^(n)/√n!`.
    MinusBasis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceExpansion {
    pub gamma: f64,
    pub basis: Basis,
    pub coeffs: Vec<Complex64>,
    pub origin: String,
}

impl ResonanceExpansion {
    pub fn new(gamma: f64, basis: Basis, coeffs: Vec<Complex64>, origin: impl Into<String>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter {
                name: "coeffs",
                reason: "an expansion needs at least one coefficient".into(),
            });
        }
        ModelParams::new(gamma)?;
        Ok(ResonanceExpansion {
            gamma,
            basis,
            coeffs,
            origin: origin.into(),
        })
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn map_coeffs(&self, f: impl Fn(usize, Complex64) -> Complex64) -> ResonanceExpansion {
        ResonanceExpansion {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| f(n, *c)).collect(),
            ..self.clone()
        }
    }
}

fn require_class(phi: &TestFunction, class: FunctionClass, what: &str) -> Result<()> {
    if phi.class() == class {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} needs a class {class:?} function, got {:?} ({})",
            phi.class(),
            phi.description()
        )))
    }
}

/// `c_n = ⟨f^-_n, φ⟩ = φ^(n)(0)/√n!` in the `f^+_n` basis.
pub fn taylor_expand(phi: &TestFunction, n: usize, p: &ModelParams) -> Result<ResonanceExpansion> {
    require_class(phi, FunctionClass::Z, "Taylor expansion")?;
    let jet = phi.jet(0.0, n)?;
    let coeffs = jet
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * factorial(k).sqrt())
        .collect();
    ResonanceExpansion::new(p.gamma, Basis::PlusBasis, coeffs, phi.description())
}

/// `c_n = ⟨f^+_n, φ⟩ = m_n(φ)/√n!` in the `f^-_n` basis.
pub fn moment_expand(
    phi: &TestFunction,
    n: usize,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<ResonanceExpansion> {
    require_class(phi, FunctionClass::D, "moment expansion")?;
    let coeffs = (0..=n)
        .map(|k| eigen::pair_resonant(phi, &ResonantState::plus(k), cfg))
        .collect::<Result<Vec<_>>>()?;
    ResonanceExpansion::new(p.gamma, Basis::MinusBasis, coeffs, phi.description())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlusEvaluation {
    pub value: Complex64,
    /// Estimate of `Σ_{n>N} |c_n||x|ⁿ/√n!` from the geometric decay of the
    /// last terms; infinite when the terms are not decaying.
    pub tail_estimate: f64,
}

/// `Σ_{n≤N} c_n xⁿ/√n!`.
pub fn eval_plus_expansion(e: &ResonanceExpansion, x: f64) -> Result<PlusEvaluation> {
    if e.basis != Basis::PlusBasis {
        return Err(Error::Domain(
            "the δ-derivative series has no pointwise values; pair it with pair_minus_expansion".into(),
        ));
    }
    let terms: Vec<Complex64> = e
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * x.powi(n as i32) / factorial(n).sqrt())
        .collect();
    let value = terms.iter().sum();
    Ok(PlusEvaluation {
        value,
        tail_estimate: geometric_tail(&terms),
    })
}

fn geometric_tail(terms: &[Complex64]) -> f64 {
    let mags: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
    let last = *mags.last().unwrap_or(&0.0);
    if mags.len() < 4 {
        return if last == 0.0 { 0.0 } else { f64::INFINITY };
    }
    // parity-aware: compare terms two apart so even/odd functions are handled
    let window = &mags[mags.len() - 4..];
    let tail_peak = window.iter().cloned().fold(0.0, f64::max);
    if tail_peak == 0.0 {
        return 0.0;
    }
    let (a, b) = (window[0].max(window[1]), window[2].max(window[3]));
    if a == 0.0 || b >= a {
        return f64::INFINITY;
    }
    let ratio = (b / a).sqrt();
    tail_peak * ratio / (1.0 - ratio)
}

/// `Σ_{n≤N} c_n ⟨f^-_n, χ⟩ = Σ c_n χ^(n)(0)/√n!`.
pub fn pair_minus_expansion(e: &ResonanceExpansion, chi: &TestFunction) -> Result<Complex64> {
    if e.basis != Basis::MinusBasis {
        return Err(Error::Domain(
            "pair_minus_expansion expects a MinusBasis expansion".into(),
        ));
    }
    let jet = chi.jet(0.0, e.truncation())?;
    Ok(e.coeffs
        .iter()
        .zip(jet.coeffs())
        .enumerate()
        .map(|(n, (c, d))| c * d * factorial(n).sqrt())
        .sum())
}

/// `Ĥ` on coefficients: `-iγ(n+1/2)` on the `f^-_n` basis, `+iγ(n+1/2)` on
/// the `f^+_n` basis.
pub fn apply_h(e: &ResonanceExpansion) -> ResonanceExpansion {
    let p = ModelParams { gamma: e.gamma };
    let sign = match e.basis {
        Basis::PlusBasis => 1.0,
        Basis::MinusBasis => -1.0,
    };
    e.map_coeffs(|n, c| c * p.resonance(n) * sign)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionConfig {
    pub e_max: f64,
    /// Total number of energy nodes, rounded up to whole 16-point panels
    /// with a multiple of four panels per half-line.
    pub e_nodes: usize,
    pub x_samples: Vec<f64>,
    /// When set, a tail estimate above this value is an accuracy error.
    #[serde(default)]
    pub tail_tolerance: Option<f64>,
}

impl ReconstructionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.e_max > 0.0 && self.e_max.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "e_max",
                reason: format!("must be positive, got {}", self.e_max),
            });
        }
        if self.e_nodes < 16 {
            return Err(Error::InvalidParameter {
                name: "e_nodes",
                reason: format!("needs at least 16 nodes, got {}", self.e_nodes),
            });
        }
        if let Some(x) = self.x_samples.iter().find(|x| **x == 0.0 || !x.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "x_samples",
                reason: format!("samples must be finite and nonzero, got {x}"),
            });
        }
        Ok(())
    }

    fn panels_per_side(&self) -> usize {
        let panels = self.e_nodes.div_ceil(16).div_ceil(2);
        panels.div_ceil(4) * 4
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionSample {
    pub x: f64,
    pub value: Complex64Pair,
    /// `|R(E_max) - R(3E_max/4)|`.
    pub tail_estimate: f64,
}

/// Complex value with named parts, serialized as `{re, im}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Complex64Pair {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Pair {
    fn from(z: Complex64) -> Self {
        Complex64Pair { re: z.re, im: z.im }
    }
}

impl From<Complex64Pair> for Complex64 {
    fn from(z: Complex64Pair) -> Self {
        Complex64::new(z.re, z.im)
    }
}

struct EnergyNode {
    energy: f64,
    weight: f64,
    inner: bool,
}

fn energy_nodes(rc: &ReconstructionConfig) -> Vec<EnergyNode> {
    let per_side = rc.panels_per_side();
    let inner_panels = per_side * 3 / 4;
    let (gx, gw) = quad::gauss_legendre(16);
    let h = rc.e_max / per_side as f64;
    let mut nodes = Vec::with_capacity(2 * per_side * 16);
    for side in [-1.0, 1.0] {
        for panel in 0..per_side {
            let lo = panel as f64 * h;
            for (x, w) in gx.iter().zip(&gw) {
                nodes.push(EnergyNode {
                    energy: side * (lo + 0.5 * h * (x + 1.0)),
                    weight: 0.5 * h * w,
                    inner: panel < inner_panels,
                });
            }
        }
    }
    nodes
}

type Kernel<'a> = dyn Fn(f64, f64, Branch) -> Result<Complex64> + Sync + 'a;
type Coefficient<'a> = dyn Fn(f64, Branch) -> Result<Complex64> + Sync + 'a;

fn reconstruct_with(
    rc: &ReconstructionConfig,
    branches: &[Branch],
    coefficient: &Coefficient<'_>,
    kernel: &Kernel<'_>,
) -> Result<Vec<ReconstructionSample>> {
    rc.validate()?;
    let nodes = energy_nodes(rc);
    // one pairing per (node, branch), reused for every sample point
    let coeffs: Vec<Vec<Complex64>> = nodes
        .par_iter()
        .map(|node| {
            branches
                .iter()
                .map(|b| coefficient(node.energy, *b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut samples = Vec::with_capacity(rc.x_samples.len());
    for &x in &rc.x_samples {
        let mut full = Complex64::new(0.0, 0.0);
        let mut inner = Complex64::new(0.0, 0.0);
        for (node, c) in nodes.iter().zip(&coeffs) {
            for (b, cb) in branches.iter().zip(c) {
                if *cb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let term = kernel(x, node.energy, *b)? * cb * node.weight;
                full += term;
                if node.inner {
                    inner += term;
                }
            }
        }
        let tail_estimate = (full - inner).norm();
        if let Some(tol) = rc.tail_tolerance {
            if tail_estimate > tol {
                return Err(Error::Accuracy {
                    achieved: tail_estimate,
                    partial: full,
                });
            }
        }
        samples.push(ReconstructionSample {
            x,
            value: full.into(),
            tail_estimate,
        });
    }
    Ok(samples)
}

fn branches_needed(phi: &TestFunction) -> Vec<Branch> {
    let (lo, hi) = phi.support_bounds();
    let mut out = Vec::new();
    if hi > 0.0 {
        out.push(Branch::Plus);
    }
    if lo < 0.0 {
        out.push(Branch::Minus);
    }
    out
}

/// `φ(x) ≈ Σ_± ∫_{-E_max}^{E_max} ψ^E_±(x) ⟨ψ^E_±|φ⟩ dE`.
pub fn reconstruct_continuum(
    phi: &TestFunction,
    rc: &ReconstructionConfig,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Vec<ReconstructionSample>> {
    let branches = branches_needed(phi);
    reconstruct_with(
        rc,
        &branches,
        &|e, b| eigen::pair_psi_hermitian(phi, e, b, p, cfg),
        &|x, e, b| eigen::psi_pointwise(x, Complex64::new(e, 0.0), b, p),
    )
}

/// `φ(x) ≈ Σ_± ∫_{-E_max}^{E_max} F[ψ^{-E}_±](x) ⟨F[ψ^{-E}_±]|φ⟩ dE`.
pub fn reconstruct_continuum_fourier(
    phi: &TestFunction,
    rc: &ReconstructionConfig,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Vec<ReconstructionSample>> {
    reconstruct_with(
        rc,
        &[Branch::Plus, Branch::Minus],
        &|e, b| eigen::pair_f_psi_hermitian(phi, e, b, p, cfg),
        &|x, e, b| eigen::f_psi_pointwise(x, Complex64::new(e, 0.0), b, p),
    )
}
