//! Unitary dilation flow, coefficient decay under the forward semigroup, and
//! concentration of probability at the origin.

use damped_rhs::dynamics::{concentration_probability, evolve, evolve_expansion, EvolutionConfig};
use damped_rhs::eigen::ModelParams;
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::spectral::moment_expand;
use damped_rhs::testfn::make_bump;

fn main() -> damped_rhs::Result<()> {
    let p = ModelParams::default();
    let cfg = QuadratureConfig::default();
    let phi = make_bump(0.3, 0.8, 1.0)?;
    let e = moment_expand(&phi, 4, &p, &cfg)?;

    println!("   t    ‖φ_t‖²      P(|x|<0.1)   |c_0(t)|     |c_4(t)|");
    for t in [0.0, 0.5, 1.0, 2.0, 3.0, 4.0] {
        let norm = evolve(&phi, t, &p)?.norm_squared(&cfg)?;
        let conc = concentration_probability(&phi, t, 0.1, &p, &cfg)?;
        let c = evolve_expansion(&e, &EvolutionConfig::semigroup(t))?;
        println!(
            "  {t:.1}  {norm:.10}  {conc:.8}   {:.4e}  {:.4e}",
            c.coeffs[0].norm(),
            c.coeffs[4].norm()
        );
    }

    match evolve_expansion(&e, &EvolutionConfig::semigroup(-1.0)) {
        Err(err) => println!("backward step on the moment basis: {err}"),
        Ok(_) => println!("backward step unexpectedly allowed"),
    }
    Ok(())
}
