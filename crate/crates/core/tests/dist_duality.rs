//! Transform duality `⟨F[x^λ_±], φ⟩ = ⟨x^λ_±, F[φ]⟩` against a direct oracle.
//!
//! The right side is computed here with composite Gauss-Legendre only: `F[φ]`
//! from its defining integral, then the outer integral against `x^λ`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use damped_rhs::dist::{fourier_power_integer_pairing, fourier_power_pairing, BoundaryConvention, Side};
use damped_rhs::quad::{gauss_legendre, QuadratureConfig};
use damped_rhs::testfn::{make_bump, make_gauss_hermite};
use num_complex::Complex64;

const OUTER_CUTOFF: f64 = 1200.0;

struct Oracle {
    // (weight, x, F[φ](x), F[φ](-x)) on (0, OUTER_CUTOFF], weights include
    // the substitution x = t^20 on the first unit
    near: Vec<(f64, f64, f64, Complex64, Complex64)>,
    far: Vec<(f64, f64, Complex64, Complex64)>,
}

fn transform_at(inner: &[(f64, f64, f64)], k: f64) -> Complex64 {
    inner
        .iter()
        .map(|&(w, s, b)| w * b * Complex64::new(0.0, k * s).exp())
        .sum::<Complex64>()
        / (2.0 * PI).sqrt()
}

fn oracle() -> &'static Oracle {
    static ORACLE: OnceLock<Oracle> = OnceLock::new();
    ORACLE.get_or_init(|| {
        let phi = make_bump(-1.0, 1.0, 1.0).unwrap();
        let (gx, gw) = gauss_legendre(20);
        let panels = |a: f64, b: f64, count: usize| {
            let h = (b - a) / count as f64;
            let mut pts = Vec::with_capacity(count * gx.len());
            for p in 0..count {
                let lo = a + p as f64 * h;
                for (x, w) in gx.iter().zip(&gw) {
                    pts.push((0.5 * h * w, lo + 0.5 * h * (x + 1.0)));
                }
            }
            pts
        };
        let inner: Vec<(f64, f64, f64)> = panels(-1.0, 1.0, 500)
            .into_iter()
            .map(|(w, s)| (w, s, phi.eval(s).re))
            .collect();
        let near = panels(0.0, 1.0, 8)
            .into_iter()
            .map(|(w, t)| {
                let x = t.powi(20);
                (
                    w * 20.0 * t.powi(19),
                    t,
                    x,
                    transform_at(&inner, x),
                    transform_at(&inner, -x),
                )
            })
            .collect();
        let far = panels(1.0, OUTER_CUTOFF, 2400)
            .into_iter()
            .map(|(w, x)| (w, x, transform_at(&inner, x), transform_at(&inner, -x)))
            .collect();
        Oracle { near, far }
    })
}

// ⟨x^λ_±, F[φ]⟩ with φ = bump(-1, 1, 1); `power(x)` is the kernel on x > 0
fn pair_with_transform(power: impl Fn(f64) -> Complex64, side: Side) -> Complex64 {
    let o = oracle();
    let pick = |p: Complex64, m: Complex64| if side == Side::Plus { p } else { m };
    let near: Complex64 = o
        .near
        .iter()
        .map(|&(w, _, x, p, m)| w * power(x) * pick(p, m))
        .sum();
    let far: Complex64 = o.far.iter().map(|&(w, x, p, m)| w * power(x) * pick(p, m)).sum();
    near + far
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn duality_in_the_strip() {
    let phi = make_bump(-1.0, 1.0, 1.0).unwrap();
    let lambdas = [
        Complex64::new(0.3, 0.0),
        Complex64::new(-0.5, 0.4),
        Complex64::new(1.2, -0.7),
        Complex64::new(-0.85, 0.0),
        Complex64::new(1.9, 0.2),
    ];
    for lambda in lambdas {
        for side in [Side::Plus, Side::Minus] {
            let lhs =
                fourier_power_pairing(&phi, lambda, side, BoundaryConvention::SideMatched, &cfg()).unwrap();
            let rhs = pair_with_transform(|x| (lambda * x.ln()).exp(), side);
            assert!(
                (lhs - rhs).norm() < 1e-8,
                "λ={lambda} {side:?}: closed form {lhs} vs direct {rhs}"
            );
        }
    }
}

#[test]
fn plus_boundary_on_minus_side_breaks_duality() {
    let phi = make_bump(-1.0, 1.0, 1.0).unwrap();
    let lambda = Complex64::new(0.3, 0.0);
    let rhs = pair_with_transform(|x| x.powf(0.3).into(), Side::Minus);
    let literal =
        fourier_power_pairing(&phi, lambda, Side::Minus, BoundaryConvention::PlusForBoth, &cfg()).unwrap();
    assert!((literal - rhs).norm() > 1e-2, "{literal} vs {rhs}");
}

#[test]
fn integer_power_duality() {
    let phi = make_bump(-1.0, 1.0, 1.0).unwrap();
    for side in [Side::Plus, Side::Minus] {
        let lhs = fourier_power_integer_pairing(&phi, 2, side, &cfg()).unwrap();
        let rhs = pair_with_transform(|x| (x * x).into(), side);
        assert!((lhs - rhs).norm() < 1e-7, "{side:?}: {lhs} vs {rhs}");
    }
}

#[test]
fn sides_agree_on_real_even_functions() {
    let g = make_gauss_hermite(1.0, 0).unwrap();
    let lambda = Complex64::new(0.5, 0.0);
    let p = fourier_power_pairing(&g, lambda, Side::Plus, BoundaryConvention::SideMatched, &cfg()).unwrap();
    let m = fourier_power_pairing(&g, lambda, Side::Minus, BoundaryConvention::SideMatched, &cfg()).unwrap();
    assert!((p - m.conj()).norm() < 1e-10, "{p} vs {m}");
    assert!(p.im.abs() < 1e-10);
    // ∫_0^∞ x^{1/2} e^{-x²/2} dx = 2^{-1/4} Γ(3/4)
    let gamma_3_4 = 1.225_416_702_465_177_6;
    assert!((p.re - 2f64.powf(-0.25) * gamma_3_4).abs() < 1e-10);
}
