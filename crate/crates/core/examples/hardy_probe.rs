//! Hardy-class diagnostics for energy pairings of a few test functions, plus
//! the synthetic calibration set.

use damped_rhs::eigen::{Branch, ModelParams};
use damped_rhs::hardy::{hardy_diagnostic, sample_energy_pairing, HalfPlane, PairingFamily};
use damped_rhs::quad::{centered_grid, QuadratureConfig};
use damped_rhs::testfn::{make_bump, make_gauss_hermite, TestFunction};
use num_complex::Complex64;

fn main() -> damped_rhs::Result<()> {
    let n = 1024;
    let h = 120.0 / n as f64;
    let grid = centered_grid(n, h);
    let i = Complex64::i();

    println!("synthetic calibration");
    type Sample = Box<dyn Fn(f64) -> Complex64>;
    let synthetic: [(&str, Sample); 3] = [
        ("1/(E+i)^2", Box::new(move |e| (e + i).powi(-2))),
        ("1/(E-i)^2", Box::new(move |e| (e - i).powi(-2))),
        (
            "exp(-E^2)",
            Box::new(|e: f64| Complex64::new((-e * e).exp(), 0.0)),
        ),
    ];
    for (name, f) in &synthetic {
        let s: Vec<Complex64> = grid.iter().map(|&e| f(e)).collect();
        let r = hardy_diagnostic(&s, h, HalfPlane::Upper)?;
        println!(
            "  {name:<12} {:?} (upper mass {:.4})",
            r.classification, r.halfline_mass_ratio
        );
    }

    let p = ModelParams::default();
    let cfg = QuadratureConfig::default();
    let suite: Vec<TestFunction> = vec![
        make_bump(1.0, 2.0, 1.0)?,
        make_bump(0.3, 0.8, 1.0)?,
        make_bump(-1.0, 1.0, 1.0)?,
        make_gauss_hermite(1.0, 0)?,
    ];
    println!("energy pairings (n = {n}, E in [-60, 60))");
    for phi in &suite {
        for family in [PairingFamily::Psi, PairingFamily::FPsi] {
            for branch in [Branch::Plus, Branch::Minus] {
                let s = sample_energy_pairing(phi, family, branch, &grid, &p, &cfg)?;
                if s.iter().all(|z| z.norm() == 0.0) {
                    continue;
                }
                let r = hardy_diagnostic(&s, h, HalfPlane::Upper)?;
                println!(
                    "  {:<24} {family:?}/{branch:?}: {:?} upper mass {:.4} fits ({:+.3}, {:+.3})",
                    phi.description(),
                    r.classification,
                    r.halfline_mass_ratio,
                    r.decay_fit_upper,
                    r.decay_fit_lower
                );
            }
        }
    }
    Ok(())
}
