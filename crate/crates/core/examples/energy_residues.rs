//! Residues of the energy pairings at the resonances, by contour integration
//! and in closed form.

use damped_rhs::eigen::{
    residue_f_psi_closed_form, residue_f_psi_pairing, residue_psi_closed_form, residue_psi_pairing, Branch,
    ModelParams, ResidueContour,
};
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::testfn::{make_gauss_hermite, TestFunction};

fn main() -> damped_rhs::Result<()> {
    let p = ModelParams::default();
    let cfg = QuadratureConfig::default();
    let contour = ResidueContour::default();
    let phi: TestFunction = make_gauss_hermite(1.0, 0)?
        .add(&make_gauss_hermite(0.7, 1)?)
        .add(&make_gauss_hermite(1.3, 2)?);

    println!("{}", phi.description());
    for branch in [Branch::Plus, Branch::Minus] {
        for n in 0..4 {
            let a = residue_psi_pairing(&phi, n, branch, &p, &contour, &cfg)?;
            let b = residue_psi_closed_form(&phi, n, branch, &p)?;
            let c = residue_f_psi_pairing(&phi, n, branch, &p, &contour, &cfg)?;
            let d = residue_f_psi_closed_form(&phi, n, branch, &p, &cfg)?;
            println!(
                "  {branch:?} n = {n}: ψ at -E_n {a:.10} (closed {:.1e} off), Fψ at +E_n {c:.10} (closed {:.1e} off)",
                (a - b).norm(),
                (c - d).norm()
            );
        }
    }
    Ok(())
}
