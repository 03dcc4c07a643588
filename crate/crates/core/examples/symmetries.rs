//! Time reversal, parity and conjugation: unitarity and how each one acts on
//! the generator.

use damped_rhs::dynamics::{conjugation, inner_product, parity, time_reverse};
use damped_rhs::eigen::{h_action, ModelParams};
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::testfn::{make_bump, make_gauss_hermite};

fn main() -> damped_rhs::Result<()> {
    let p = ModelParams::default();
    let cfg = QuadratureConfig::default();
    let phi = make_bump(-0.4, 1.3, 1.0)?;
    let chi = make_gauss_hermite(0.8, 1)?;

    let base = inner_product(&phi, &chi, &cfg)?;
    let t = inner_product(&time_reverse(&phi, &cfg)?, &time_reverse(&chi, &cfg)?, &cfg)?;
    let pr = inner_product(&parity(&phi), &parity(&chi), &cfg)?;
    let cj = inner_product(&conjugation(&phi), &conjugation(&chi), &cfg)?;
    println!("⟨φ,χ⟩ = {base:.12}");
    println!("⟨Tφ,Tχ⟩ = {t:.12}");
    println!("⟨Pφ,Pχ⟩ = {pr:.12}");
    println!("⟨Cφ,Cχ⟩ = {cj:.12} (conjugate)");

    // P commutes with Ĥ; T anticommutes.
    let x = 0.37;
    let hp = h_action(&parity(&phi), &p).eval(x);
    let ph = parity(&h_action(&phi, &p)).eval(x);
    println!("ĤPφ({x}) = {hp:.12}, PĤφ({x}) = {ph:.12}");
    let ht = h_action(&time_reverse(&phi, &cfg)?, &p).eval(x);
    let th = time_reverse(&h_action(&phi, &p), &cfg)?.eval(x);
    println!("ĤTφ({x}) = {ht:.12}, TĤφ({x}) = {th:.12}");
    Ok(())
}
