//! Expansions on the two resonant families and the generator acting on
//! coefficients.

use damped_rhs::eigen::ModelParams;
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::spectral::{
    apply_h, eval_plus_expansion, moment_expand, pair_minus_expansion, taylor_expand,
};
use damped_rhs::testfn::{make_bump, make_fourier_of, make_gauss_hermite};

fn main() -> damped_rhs::Result<()> {
    let p = ModelParams::default();
    let cfg = QuadratureConfig::default();

    let z = make_fourier_of(&make_bump(-1.0, 1.0, 1.0)?, &cfg)?;
    println!("Taylor series of {} on the f^+ family", z.description());
    for n in [4, 8, 16, 24] {
        let e = taylor_expand(&z, n, &p)?;
        let v = eval_plus_expansion(&e, 0.5)?;
        println!(
            "  N = {n:>2}: value {:.12}, |err| {:.2e}, tail estimate {:.2e}",
            v.value,
            (v.value - z.eval(0.5)).norm(),
            v.tail_estimate
        );
    }

    let phi = make_bump(1.0, 2.0, 1.0)?;
    let chi = make_gauss_hermite(0.7, 0)?;
    let e = moment_expand(&phi, 30, &p, &cfg)?;
    let direct = damped_rhs::dynamics::inner_product(&chi, &phi, &cfg)?;
    println!(
        "⟨χ, φ⟩ from 31 moments {:.10}, direct {:.10}",
        pair_minus_expansion(&e, &chi)?,
        direct
    );

    let h = apply_h(&e);
    for n in 0..3 {
        println!("  n = {n}: c_n {:.6}  (Ĥc)_n {:.6}", e.coeffs[n], h.coeffs[n]);
    }
    Ok(())
}
