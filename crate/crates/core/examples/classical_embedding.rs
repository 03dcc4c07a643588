//! The damped classical flow and its Hamiltonian embedding `H = p·X(x)`.

use damped_rhs::dynamics::{
    classical_flow, hamiltonian_embedding_check, ClassicalState, FnField, LinearField,
};
use damped_rhs::eigen::ModelParams;

fn main() -> damped_rhs::Result<()> {
    let p = ModelParams::default();
    let s0 = ClassicalState { x: 1.0, p: 1.0 };
    for t in [0.0, 0.5, 1.0, 2.0] {
        let s = classical_flow(&s0, t, &p);
        println!(
            "t = {t:.1}: x = {:.8}, p = {:.8}, xp = {:.15}",
            s.x,
            s.p,
            s.x * s.p
        );
    }

    let r = hamiltonian_embedding_check(&LinearField::damping(&p), &[1.0], &[1.0], 1.0, 1000)?;
    println!(
        "damping field: trajectory deviation {:.2e}, energy drift {:.2e}",
        r.max_trajectory_deviation, r.energy_drift
    );

    // nonlinear planar field: a limit-cycle oscillator
    let vdp = FnField {
        dim: 2,
        f: |x: &[f64]| vec![x[1], (1.0 - x[0] * x[0]) * x[1] - x[0]],
    };
    let r = hamiltonian_embedding_check(&vdp, &[0.5, 0.0], &[0.2, -0.1], 5.0, 5000)?;
    println!(
        "van der Pol field: trajectory deviation {:.2e}, energy drift {:.2e}",
        r.max_trajectory_deviation, r.energy_drift
    );
    Ok(())
}
