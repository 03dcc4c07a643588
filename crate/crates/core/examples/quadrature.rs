//! Adaptive, oscillatory, tanh-sinh and contour quadrature on integrals with
//! known values.

use damped_rhs::quad::{
    contour_integral, integrate, integrate_oscillatory, tanh_sinh, Contour, QuadratureConfig,
};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> damped_rhs::Result<()> {
    let cfg = QuadratureConfig::default();
    let c = |v: f64| Complex64::new(v, 0.0);

    let r = integrate(|x| c((-x * x).exp()), -8.0, 8.0, &cfg)?;
    println!(
        "∫ e^(-x²)        = {:.15} (√π = {:.15}, est {:.1e})",
        r.value.re,
        PI.sqrt(),
        r.err_estimate
    );

    let omega = 40.0;
    let r = integrate_oscillatory(|x| Complex64::new(0.0, omega * x).exp(), 0.0, 1.0, omega, &cfg)?;
    let exact = (Complex64::new(0.0, omega).exp() - 1.0) / Complex64::new(0.0, omega);
    println!("∫₀¹ e^(40ix)      = {:.12} (exact {:.12})", r.value, exact);

    // endpoint singularity
    let r = tanh_sinh(|x| c(1.0 / x.sqrt()), 0.0, 1.0, &cfg)?;
    println!("∫₀¹ x^(-1/2)      = {:.14} (exact 2)", r.value.re);

    let pole = Complex64::new(0.3, -0.2);
    let v = contour_integral(|z| Ok((z * z).exp() / (z - pole)), &Contour::new(pole, 0.25))?;
    println!("res e^(z²)/(z-a) = {:.14} (exact {:.14})", v, (pole * pole).exp());
    Ok(())
}
