//! Generalized energy eigenfunctions `ψ^E_±`, their Fourier partners, the
//! resonant families `f^±_n` and residue extraction at `E = ∓E_n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dist::{self, BoundaryConvention, BoundaryPower, Parity, PowerDistribution};
use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use crate::quad::{self, Contour, QuadratureConfig};
use crate::testfn::TestFunction;

pub use crate::dist::Side as Branch;

/// Distance in `E` below which a pairing is treated as sitting on a pole.
pub const ENERGY_POLE_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub gamma: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { gamma: 1.0 }
    }
}

impl ModelParams {
    pub fn new(gamma: f64) -> Result<Self> {
        let p = ModelParams { gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma > 0.0 && self.gamma.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: "gamma",
                reason: format!("damping constant must be positive and finite, got {}", self.gamma),
            })
        }
    }

    /// `E_n = iγ(n + 1/2)`.
    pub fn resonance(&self, n: usize) -> Complex64 {
        Complex64::new(0.0, self.gamma * (n as f64 + 0.5))
    }

    fn norm(&self) -> f64 {
        1.0 / (2.0 * PI * self.gamma).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyKind {
    Psi,
    FPsi,
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub energy: Complex64,
    pub branch: Branch,
    pub kind: EnergyKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `f^+_n = xⁿ/√n!`
    PlusFamily,
    /// `f^-_n = (-1)ⁿ δ^(n)/√n!`
    MinusFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResonantState {
    pub n: usize,
    pub family: Family,
}

impl ResonantState {
    pub fn plus(n: usize) -> Self {
        ResonantState {
            n,
            family: Family::PlusFamily,
        }
    }

    pub fn minus(n: usize) -> Self {
        ResonantState {
            n,
            family: Family::MinusFamily,
        }
    }

    /// `+E_n` for the plus family, `-E_n` for the minus family.
    pub fn eigenvalue(&self, p: &ModelParams) -> Complex64 {
        match self.family {
            Family::PlusFamily => p.resonance(self.n),
            Family::MinusFamily => -p.resonance(self.n),
        }
    }
}

// exponent of ψ^E_±: x^{-(iE/γ + 1/2)}
fn psi_exponent(e: Complex64, p: &ModelParams) -> Complex64 {
    -(Complex64::i() * e / p.gamma + 0.5)
}

fn pole_index(e: Complex64, p: &ModelParams, sign: f64) -> Option<usize> {
    // poles at E = sign·E_n
    let n = (sign * e.im / p.gamma - 0.5).round();
    if n < 0.0 {
        return None;
    }
    let n = n as usize;
    ((e - p.resonance(n) * sign).norm() < ENERGY_POLE_EPS).then_some(n)
}

/// Bilinear `⟨ψ^E_±, φ⟩ = (2πγ)^{-1/2} ⟨x^{-(iE/γ+1/2)}_±, φ⟩`, meromorphic in
/// `E` with simple poles at `E = -E_n`.
pub fn pair_psi_bilinear(
    phi: &TestFunction,
    e: Complex64,
    branch: Branch,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if let Some(n) = pole_index(e, p, -1.0) {
        return Err(Error::Pole {
            what: "energy eigenfunction pairing",
            location: e,
            index: n,
            residue: residue_psi_closed_form(phi, n, branch, p).ok(),
        });
    }
    let d = PowerDistribution::new(psi_exponent(e, p), branch);
    Ok(p.norm() * dist::pair_power(phi, &d, cfg)?)
}

/// `∫ conj(ψ^E_±) φ dx` for real `E`.
pub fn pair_psi_hermitian(
    phi: &TestFunction,
    e: f64,
    branch: Branch,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let d = PowerDistribution::new(psi_exponent(Complex64::new(e, 0.0), p).conj(), branch);
    Ok(p.norm() * dist::pair_power(phi, &d, cfg)?)
}

/// Bilinear pairing with the definite-parity combinations
/// `(2√(πγ))^{-1} |x|^{-(iE/γ+1/2)}` and its `sign(x)` counterpart.
pub fn pair_psi_parity(
    phi: &TestFunction,
    e: Complex64,
    parity: Parity,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let norm = 1.0 / (2.0 * (PI * p.gamma).sqrt());
    Ok(norm * dist::pair_abs_power(phi, psi_exponent(e, p), parity, cfg)?)
}

/// Dispatches on the kind of the energy point.
pub fn pair_energy_point(
    phi: &TestFunction,
    point: &EnergyPoint,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    match point.kind {
        EnergyKind::Psi => pair_psi_bilinear(phi, point.energy, point.branch, p, cfg),
        EnergyKind::FPsi => pair_f_psi(phi, point.energy, point.branch, p, cfg),
        EnergyKind::Even => pair_psi_parity(phi, point.energy, Parity::Even, p, cfg),
        EnergyKind::Odd => pair_psi_parity(phi, point.energy, Parity::Odd, p, cfg),
    }
}

/// `ψ^E_±(x)` away from `x = 0`.
pub fn psi_pointwise(x: f64, e: Complex64, branch: Branch, p: &ModelParams) -> Result<Complex64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!(
            "ψ^E is a distribution at x = 0, got x = {x}"
        )));
    }
    if (x > 0.0) != (branch == Branch::Plus) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(p.norm() * (psi_exponent(e, p) * x.abs().ln()).exp())
}

fn f_psi_lambda(e: Complex64, p: &ModelParams) -> Complex64 {
    // F[ψ^{-E}] transforms x^λ with λ = iE/γ - 1/2
    Complex64::i() * e / p.gamma - 0.5
}

fn f_psi_pole_check(phi: &TestFunction, e: Complex64, branch: Branch, p: &ModelParams) -> Result<()> {
    match pole_index(e, p, 1.0) {
        Some(n) => Err(Error::Pole {
            what: "Fourier partner pairing",
            location: e,
            index: n,
            residue: residue_f_psi_closed_form(phi, n, branch, p, &QuadratureConfig::default()).ok(),
        }),
        None => Ok(()),
    }
}

/// Bilinear `⟨F[ψ^{-E}_±], φ⟩` from
/// `F[ψ^{-E}_±] = ±(i/2π√γ) e^{±(iπ/2)(iE/γ-1/2)} Γ(iE/γ+1/2) (k ± i0)^{-(iE/γ+1/2)}`,
/// with poles at `E = +E_n`.
pub fn pair_f_psi(
    phi: &TestFunction,
    e: Complex64,
    branch: Branch,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    pair_f_psi_with(phi, e, branch, BoundaryConvention::SideMatched, p, cfg)
}

/// [`pair_f_psi`] with an explicit boundary convention for the minus branch.
pub fn pair_f_psi_with(
    phi: &TestFunction,
    e: Complex64,
    branch: Branch,
    convention: BoundaryConvention,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    f_psi_pole_check(phi, e, branch, p)?;
    Ok(p.norm() * dist::fourier_power_pairing(phi, f_psi_lambda(e, p), branch, convention, cfg)?)
}

/// `∫ conj(F[ψ^{-E}_±](k)) φ(k) dk` for real `E`.
pub fn pair_f_psi_hermitian(
    phi: &TestFunction,
    e: f64,
    branch: Branch,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let lambda = f_psi_lambda(Complex64::new(e, 0.0), p);
    let log_pref = dist::fourier_power_log_prefactor(lambda, branch)? + p.norm().ln();
    // conj(C (k ± i0)^α) = conj(C) (k ∓ i0)^{conj α}
    let flipped = match branch {
        Branch::Plus => dist::BoundarySign::MinusI0,
        Branch::Minus => dist::BoundarySign::PlusI0,
    };
    let b = BoundaryPower::new((-lambda - 1.0).conj(), flipped);
    dist::boundary_power_weighted(phi, &b, log_pref.conj(), cfg)
}

/// `F[ψ^{-E}_±](k)` away from `k = 0`.
pub fn f_psi_pointwise(k: f64, e: Complex64, branch: Branch, p: &ModelParams) -> Result<Complex64> {
    if k == 0.0 || !k.is_finite() {
        return Err(Error::Domain(format!(
            "F[ψ] is a distribution at k = 0, got k = {k}"
        )));
    }
    let lambda = f_psi_lambda(e, p);
    let alpha = -lambda - 1.0;
    let mut log_value =
        dist::fourier_power_log_prefactor(lambda, branch)? + p.norm().ln() + alpha * k.abs().ln();
    if k < 0.0 {
        log_value += Complex64::new(0.0, branch.sign() * PI) * alpha;
    }
    Ok(log_value.exp())
}

/// Bilinear `⟨f^±_n, φ⟩`: `m_n(φ)/√n!` or `φ^(n)(0)/√n!`.
pub fn pair_resonant(phi: &TestFunction, r: &ResonantState, cfg: &QuadratureConfig) -> Result<Complex64> {
    let norm = factorial(r.n).sqrt();
    match r.family {
        Family::PlusFamily => Ok(phi.moment(r.n, cfg)? / norm),
        Family::MinusFamily => Ok(phi.derivative_at(0.0, r.n)? / norm),
    }
}

/// `⟨f^+_n, f^-_m⟩` for `n, m ≤ n_max`, evaluated as `(-1)^m ⟨δ^(m), xⁿ⟩ / √(n! m!)`
/// with the monomial differentiated as a jet.
pub fn resonant_gram(n_max: usize) -> Vec<Vec<f64>> {
    (0..=n_max)
        .map(|n| {
            (0..=n_max)
                .map(|m| {
                    let monomial = Jet::variable(0.0, m).powi(n as u32);
                    // (-1)^m from f^-_m times (-1)^m from the δ^(m) pairing
                    monomial.derivative(m).re / (factorial(n) * factorial(m)).sqrt()
                })
                .collect()
        })
        .collect()
}

/// `Ĥφ = iγ(xφ' + φ/2)`, consuming one jet order.
pub fn h_action(phi: &TestFunction, p: &ModelParams) -> TestFunction {
    phi.h_action(p.gamma)
}

/// Contour used for residue extraction in the energy plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueContour {
    /// Radius as a fraction of `γ`; must stay below 1/2 to isolate one pole.
    pub radius_over_gamma: f64,
    pub initial_nodes: usize,
}

impl Default for ResidueContour {
    fn default() -> Self {
        ResidueContour {
            radius_over_gamma: 0.25,
            initial_nodes: 64,
        }
    }
}

impl ResidueContour {
    pub fn around(&self, center: Complex64, p: &ModelParams) -> Result<Contour> {
        if !(self.radius_over_gamma > 0.0 && self.radius_over_gamma < 0.5) {
            return Err(Error::Config(format!(
                "contour radius {}γ does not isolate a single pole (pole spacing is γ)",
                self.radius_over_gamma
            )));
        }
        let c = Contour::new(center, self.radius_over_gamma * p.gamma).with_nodes(self.initial_nodes);
        c.validate()?;
        Ok(c)
    }
}

/// `(1/2πi)∮ ⟨ψ^E_±, φ⟩ dE` around `center`.
pub fn contour_psi_pairing(
    phi: &TestFunction,
    center: Complex64,
    branch: Branch,
    p: &ModelParams,
    contour: &ResidueContour,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let c = contour.around(center, p)?;
    quad::contour_integral(|e| pair_psi_bilinear(phi, e, branch, p, cfg), &c)
}

/// `(1/2πi)∮ ⟨F[ψ^{-E}_±], φ⟩ dE` around `center`.
pub fn contour_f_psi_pairing(
    phi: &TestFunction,
    center: Complex64,
    branch: Branch,
    p: &ModelParams,
    contour: &ResidueContour,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let c = contour.around(center, p)?;
    quad::contour_integral(|e| pair_f_psi(phi, e, branch, p, cfg), &c)
}

/// Residue of `E ↦ ⟨ψ^E_±, φ⟩` at `-E_n`, extracted by contour integration.
pub fn residue_psi_pairing(
    phi: &TestFunction,
    n: usize,
    branch: Branch,
    p: &ModelParams,
    contour: &ResidueContour,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    contour_psi_pairing(phi, -p.resonance(n), branch, p, contour, cfg)
}

/// Residue of `E ↦ ⟨F[ψ^{-E}_±], φ⟩` at `+E_n`, extracted by contour integration.
pub fn residue_f_psi_pairing(
    phi: &TestFunction,
    n: usize,
    branch: Branch,
    p: &ModelParams,
    contour: &ResidueContour,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    contour_f_psi_pairing(phi, p.resonance(n), branch, p, contour, cfg)
}

/// `⟨i(∓1)ⁿ √(γ/2π) δ^(n)/n!, φ⟩ = i √(γ/2π) s_n φ^(n)(0)/n!`, `s_n = 1` on
/// the plus branch and `(-1)ⁿ` on the minus branch.
pub fn residue_psi_closed_form(
    phi: &TestFunction,
    n: usize,
    branch: Branch,
    p: &ModelParams,
) -> Result<Complex64> {
    let sign = match branch {
        Branch::Minus if n % 2 == 1 => -1.0,
        _ => 1.0,
    };
    let scale = (p.gamma / (2.0 * PI)).sqrt() * sign / factorial(n);
    Ok(Complex64::i() * scale * phi.derivative_at(0.0, n)?)
}

/// `⟨±(√γ/2π)(∓i)^{n+1}((-1)ⁿ/n!) xⁿ, φ⟩`.
pub fn residue_f_psi_closed_form(
    phi: &TestFunction,
    n: usize,
    branch: Branch,
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let s = branch.sign();
    let parity = if n % 2 == 1 { -1.0 } else { 1.0 };
    let unit = Complex64::new(0.0, -s).powu(n as u32 + 1);
    let scale = s * p.gamma.sqrt() / (2.0 * PI) * parity / factorial(n);
    Ok(unit * scale * phi.moment(n, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{make_bump, make_gauss_hermite};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn p1() -> ModelParams {
        ModelParams::default()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn model_params_validation() {
        assert!(ModelParams::new(0.0).is_err());
        assert!(ModelParams::new(-1.0).is_err());
        assert!(ModelParams::new(f64::NAN).is_err());
        assert_eq!(
            ModelParams::new(2.0).unwrap().resonance(1),
            Complex64::new(0.0, 3.0)
        );
    }

    #[test]
    fn disjoint_branch_vanishes() {
        let b = make_bump(1.0, 2.0, 1.0).unwrap();
        let v = pair_psi_bilinear(&b, Complex64::new(0.3, 0.1), Branch::Minus, &p1(), &cfg()).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn psi_at_zero_energy_by_quadrature() {
        let b = make_bump(1.0, 2.0, 1.0).unwrap();
        let (x, w) = quad::gauss_legendre(40);
        let oracle: f64 = (0..50)
            .map(|panel| {
                let lo = 1.0 + panel as f64 / 50.0;
                x.iter()
                    .zip(&w)
                    .map(|(x, w)| {
                        let s = lo + (x + 1.0) / 100.0;
                        w * s.powf(-0.5) * b.eval(s).re / 100.0
                    })
                    .sum::<f64>()
            })
            .sum::<f64>()
            / (2.0 * PI).sqrt();
        let v = pair_psi_bilinear(&b, Complex64::new(0.0, 0.0), Branch::Plus, &p1(), &cfg()).unwrap();
        assert!((v.re - oracle).abs() < 1e-10 && v.im.abs() < 1e-14);
    }

    #[test]
    fn hermitian_flips_energy_for_real_functions() {
        let b = make_bump(-0.7, 1.6, 1.0).unwrap();
        for e in [-2.0, 0.4, 3.0] {
            for branch in [Branch::Plus, Branch::Minus] {
                let h = pair_psi_hermitian(&b, e, branch, &p1(), &cfg()).unwrap();
                let bl = pair_psi_bilinear(&b, Complex64::new(-e, 0.0), branch, &p1(), &cfg()).unwrap();
                assert!(close(h, bl, 1e-13));
            }
        }
    }

    #[test]
    fn hermitian_is_stable_across_tolerances() {
        let b = make_bump(1.0, 2.0, 1.0).unwrap();
        let fine = cfg().with_tolerances(1e-15, 1e-13);
        let coarse = cfg().with_tolerances(1e-11, 1e-9);
        let a = pair_psi_hermitian(&b, 3.0, Branch::Plus, &p1(), &fine).unwrap();
        let c = pair_psi_hermitian(&b, 3.0, Branch::Plus, &p1(), &coarse).unwrap();
        assert!((a - c).norm() < 1e-9);
    }

    #[test]
    fn parity_combinations_match_branches() {
        let b = make_bump(-0.9, 1.4, 1.0).unwrap();
        let e = Complex64::new(-1.3, 0.0);
        let plus = pair_psi_bilinear(&b, e, Branch::Plus, &p1(), &cfg()).unwrap();
        let minus = pair_psi_bilinear(&b, e, Branch::Minus, &p1(), &cfg()).unwrap();
        let even = pair_psi_parity(&b, e, Parity::Even, &p1(), &cfg()).unwrap();
        let odd = pair_psi_parity(&b, e, Parity::Odd, &p1(), &cfg()).unwrap();
        // (2√(πγ))^{-1} = (2πγ)^{-1/2} / √2
        let r = 1.0 / 2f64.sqrt();
        assert!(close(even, (plus + minus) * r, 1e-10));
        assert!(close(odd, (plus - minus) * r, 1e-10));
    }

    #[test]
    fn pointwise_values() {
        let p = p1();
        let n = 1.0 / (2.0 * PI).sqrt();
        let v = psi_pointwise(1.0, Complex64::new(3.7, -0.2), Branch::Plus, &p).unwrap();
        assert!((v - n).norm() < 1e-15);
        let v = psi_pointwise(std::f64::consts::E, Complex64::new(1.0, 0.0), Branch::Plus, &p).unwrap();
        assert!((v.norm() - n * (-0.5f64).exp()).abs() < 1e-15);
        assert!((v.arg() + 1.0).abs() < 1e-14);
        assert_eq!(
            psi_pointwise(-2.0, Complex64::new(1.0, 0.0), Branch::Plus, &p).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert!(psi_pointwise(0.0, Complex64::new(1.0, 0.0), Branch::Plus, &p).is_err());
    }

    #[test]
    fn poles_are_reported() {
        let g = make_gauss_hermite(1.0, 0).unwrap();
        let p = p1();
        assert!(matches!(
            pair_psi_bilinear(&g, -p.resonance(2), Branch::Plus, &p, &cfg()),
            Err(Error::Pole { index: 2, .. })
        ));
        assert!(matches!(
            pair_f_psi(&g, p.resonance(1), Branch::Minus, &p, &cfg()),
            Err(Error::Pole { index: 1, .. })
        ));
        // the Fourier partner is regular where ψ has poles
        assert!(pair_f_psi(&g, -p.resonance(1), Branch::Plus, &p, &cfg()).is_ok());
    }

    #[test]
    fn f_psi_composition_at_zero_energy() {
        let g = make_gauss_hermite(1.0, 0).unwrap();
        let v = pair_f_psi(&g, Complex64::new(0.0, 0.0), Branch::Plus, &p1(), &cfg()).unwrap();
        // (i/2π) e^{-iπ/4} √π ⟨(k+i0)^{-1/2}, φ⟩
        let b = dist::pair_boundary_power(
            &g,
            &BoundaryPower::new(Complex64::new(-0.5, 0.0), dist::BoundarySign::PlusI0),
            &cfg(),
        )
        .unwrap();
        let expected =
            Complex64::new(0.0, 1.0 / (2.0 * PI)) * Complex64::from_polar(1.0, -PI / 4.0) * PI.sqrt() * b;
        assert!(close(v, expected, 1e-10));
    }

    #[test]
    fn f_psi_hermitian_is_conjugate_for_real_functions() {
        let b = make_bump(-0.7, 1.6, 1.0).unwrap();
        for e in [-4.0, 0.0, 2.5] {
            for branch in [Branch::Plus, Branch::Minus] {
                let h = pair_f_psi_hermitian(&b, e, branch, &p1(), &cfg()).unwrap();
                let bl = pair_f_psi(&b, Complex64::new(e, 0.0), branch, &p1(), &cfg()).unwrap();
                assert!(close(h, bl.conj(), 1e-12), "{h} vs {bl}");
            }
        }
    }

    #[test]
    fn f_psi_pointwise_matches_weak_form_on_narrow_bump() {
        // a narrow normalized bump approximates δ(k - k0)
        let k0 = 1.3;
        let width = 1e-3;
        let bump = make_bump(k0 - width, k0 + width, 1.0).unwrap();
        let mass = bump.moment(0, &cfg()).unwrap();
        let e = Complex64::new(0.8, 0.0);
        let weak = pair_f_psi(&bump, e, Branch::Minus, &p1(), &cfg()).unwrap() / mass;
        let point = f_psi_pointwise(k0, e, Branch::Minus, &p1()).unwrap();
        assert!((weak - point).norm() < 1e-5 * point.norm());
    }

    #[test]
    fn gram_matrix_is_identity() {
        let g = resonant_gram(12);
        for (n, row) in g.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                let expect = if n == m { 1.0 } else { 0.0 };
                assert!((v - expect).abs() <= 1e-12, "({n},{m}) = {v}");
            }
        }
    }

    #[test]
    fn resonant_pairings() {
        let g = make_gauss_hermite(1.0, 0).unwrap();
        assert!(
            pair_resonant(&g, &ResonantState::minus(1), &cfg())
                .unwrap()
                .norm()
                < 1e-15
        );
        let b = make_bump(1.0, 2.0, 1.0).unwrap();
        let m2 = b
            .integrate_weighted(|x| Complex64::new(x * x, 0.0), &cfg())
            .unwrap();
        let v = pair_resonant(&b, &ResonantState::plus(2), &cfg()).unwrap();
        assert!(close(v, m2 / 2f64.sqrt(), 1e-13));
    }

    #[test]
    fn h_action_eigen_relations() {
        let p = ModelParams::new(0.7).unwrap();
        let b = make_bump(-0.8, 1.3, 1.0).unwrap();
        let hb = h_action(&b, &p);
        for n in 0..=8 {
            for r in [ResonantState::plus(n), ResonantState::minus(n)] {
                let lhs = pair_resonant(&hb, &r, &cfg()).unwrap();
                let rhs = -r.eigenvalue(&p) * pair_resonant(&b, &r, &cfg()).unwrap();
                assert!(close(lhs, rhs, 1e-10), "{r:?}: {lhs} vs {rhs}");
            }
        }
        let g = make_gauss_hermite(1.0, 0).unwrap();
        let hg = h_action(&g, &p);
        assert!((hg.eval(0.0) - Complex64::new(0.0, 0.35)).norm() < 1e-15);
    }

    #[test]
    fn residues_match_closed_forms() {
        let p = p1();
        let rc = ResidueContour::default();
        let g = make_gauss_hermite(1.0, 0).unwrap();
        let r0 = residue_psi_pairing(&g, 0, Branch::Plus, &p, &rc, &cfg()).unwrap();
        assert!(close(r0, Complex64::new(0.0, 1.0 / (2.0 * PI).sqrt()), 1e-8));
        let r2 = residue_psi_pairing(&g, 2, Branch::Minus, &p, &rc, &cfg()).unwrap();
        let c2 = residue_psi_closed_form(&g, 2, Branch::Minus, &p).unwrap();
        assert!(close(r2, c2, 1e-8) && (r2 - c2).norm() <= 1e-8 * c2.norm());
        let f0 = residue_f_psi_pairing(&g, 0, Branch::Plus, &p, &rc, &cfg()).unwrap();
        let expect = Complex64::new(0.0, -1.0 / (2.0 * PI)) * (2.0 * PI).sqrt();
        assert!((f0 - expect).norm() <= 1e-8 * expect.norm(), "{f0} vs {expect}");
    }

    #[test]
    fn flat_functions_have_no_psi_residues() {
        let b = make_bump(1.0, 2.0, 1.0).unwrap();
        let rc = ResidueContour::default();
        for n in 0..3 {
            let r = residue_psi_pairing(&b, n, Branch::Plus, &p1(), &rc, &cfg()).unwrap();
            assert!(r.norm() < 1e-10);
        }
    }

    #[test]
    fn oversized_contour_is_rejected() {
        let g = make_gauss_hermite(1.0, 0).unwrap();
        let rc = ResidueContour {
            radius_over_gamma: 0.6,
            ..Default::default()
        };
        assert!(matches!(
            residue_psi_pairing(&g, 0, Branch::Plus, &p1(), &rc, &cfg()),
            Err(Error::Config(_))
        ));
    }
}
