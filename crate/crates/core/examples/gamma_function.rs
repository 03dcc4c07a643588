//! Complex Gamma: values, the log-scaled representation, and pole residues.

use damped_rhs::specfn::{gamma, gamma_residue, ln_gamma};
use damped_rhs::Error;
use num_complex::Complex64;

fn main() -> damped_rhs::Result<()> {
    for z in [
        Complex64::new(0.5, 0.0),
        Complex64::new(5.0, 0.0),
        Complex64::new(-2.5, 0.0),
        Complex64::new(0.5, 3.0),
        Complex64::new(1.0, -10.0),
    ] {
        let g = gamma(z)?;
        println!("Γ({z:>9}) = {:.12}", g.value);
    }

    let big = gamma(Complex64::new(200.0, 1.0))?;
    println!(
        "Γ(200+i) log-scaled: {}, ln Γ = {:.10}",
        big.log_scale_flag,
        big.ln()
    );
    println!("ln Γ(0.5+50i) = {:.10}", ln_gamma(Complex64::new(0.5, 50.0))?);

    for n in 0..4 {
        let z = Complex64::new(-(n as f64), 0.0);
        match gamma(z) {
            Err(Error::Pole { residue, .. }) => {
                println!(
                    "pole at {}: residue {:?} (closed form {})",
                    -(n as i64),
                    residue.map(|r| r.re),
                    gamma_residue(n)
                )
            }
            other => println!("unexpected at {z}: {other:?}"),
        }
    }
    Ok(())
}
