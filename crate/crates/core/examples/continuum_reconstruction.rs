//! Rebuild a bump from its real-energy eigenfunction coefficients, with both
//! the `ψ^E` family and its Fourier partners, for growing energy cutoffs.

use damped_rhs::eigen::ModelParams;
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::spectral::{reconstruct_continuum, reconstruct_continuum_fourier, ReconstructionConfig};
use damped_rhs::testfn::make_bump;
use num_complex::Complex64;

fn main() -> damped_rhs::Result<()> {
    let phi = make_bump(1.0, 2.0, 1.0)?;
    let p = ModelParams::default();
    let cfg = QuadratureConfig::default();
    let xs = vec![0.5, 1.2, 1.5, 1.8, 2.5];

    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>12} {:>10}",
        "E_max", "x", "target", "err psi", "err F psi", "tail"
    );
    for e_max in [40.0, 80.0, 120.0] {
        let rc = ReconstructionConfig {
            e_max,
            e_nodes: (e_max * 12.0) as usize,
            x_samples: xs.clone(),
            tail_tolerance: None,
        };
        let direct = reconstruct_continuum(&phi, &rc, &p, &cfg)?;
        let fourier = reconstruct_continuum_fourier(&phi, &rc, &p, &cfg)?;
        for (a, b) in direct.iter().zip(&fourier) {
            let target = phi.eval(a.x);
            let ea = (Complex64::from(a.value) - target).norm();
            let eb = (Complex64::from(b.value) - target).norm();
            println!(
                "{e_max:>6} {:>6} {:>12.8} {ea:>12.3e} {eb:>12.3e} {:>10.2e}",
                a.x, target.re, a.tail_estimate
            );
        }
    }
    Ok(())
}
