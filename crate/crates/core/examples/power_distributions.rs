//! Regularized pairings with `x^λ_±`: continuation in `λ`, pole residues, and
//! two routes to the Fourier transform at an integer exponent.

use damped_rhs::dist::{
    fourier_power_integer_pairing, fourier_power_pairing, pair_power, residue_power, BoundaryConvention,
    PowerDistribution, Side,
};
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::testfn::make_gauss_hermite;
use damped_rhs::Error;
use num_complex::Complex64;

fn main() -> damped_rhs::Result<()> {
    let cfg = QuadratureConfig::default();
    let phi = make_gauss_hermite(1.0, 0)?;

    println!("⟨x^λ_+, e^(-x²/2)⟩ across the continuation");
    for re in [1.0, 0.0, -0.5, -1.5, -2.5, -3.7] {
        let d = PowerDistribution::new(Complex64::new(re, 0.2), Side::Plus);
        println!("  λ = {re:+.1}+0.2i  {:.12}", pair_power(&phi, &d, &cfg)?);
    }

    for k in 1..=3 {
        let d = PowerDistribution::new(Complex64::new(-(k as f64), 0.0), Side::Minus);
        match pair_power(&phi, &d, &cfg) {
            Err(Error::Pole { residue: Some(r), .. }) => {
                println!("  pole λ = -{k} (minus side): residue {:.12}", r);
            }
            other => println!("  λ = -{k}: {other:?}"),
        }
        println!("    closed form {:.12}", residue_power(&phi, k, Side::Minus)?);
    }

    // integer exponent as a limit of the generic closed form
    for side in [Side::Plus, Side::Minus] {
        let exact = fourier_power_integer_pairing(&phi, 2, side, &cfg)?;
        let near = fourier_power_pairing(
            &phi,
            Complex64::new(2.0 + 1e-6, 0.0),
            side,
            BoundaryConvention::SideMatched,
            &cfg,
        )?;
        println!("  ⟨F[x²_{side:?}], φ⟩ = {exact:.10}, λ = 2+1e-6 gives {near:.10}");
    }
    Ok(())
}
