//! Invariants checked on randomly drawn test functions and parameters.

use damped_rhs::dist::{pair_power, pair_power_hermitian, PowerDistribution, Side};
use damped_rhs::dynamics::{evolve, evolve_expansion, time_reverse, EvolutionConfig};
use damped_rhs::eigen::{h_action, pair_f_psi, pair_psi_bilinear, Branch, ModelParams};
use damped_rhs::quad::QuadratureConfig;
use damped_rhs::report::{Check, Comparison, Environment, TargetSource, VerificationReport};
use damped_rhs::spectral::{apply_h, moment_expand, taylor_expand};
use damped_rhs::testfn::{make_bump, make_fourier_of, make_gauss_hermite, TestFunction};
use num_complex::Complex64;
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

fn bump() -> impl Strategy<Value = TestFunction> {
    (-1.5f64..1.0, 0.3f64..1.5, 0.5f64..2.0).prop_map(|(lo, w, a)| make_bump(lo, lo + w, a).unwrap())
}

fn gaussian() -> impl Strategy<Value = TestFunction> {
    (0.6f64..1.5, 0u32..3).prop_map(|(s, k)| make_gauss_hermite(s, k).unwrap())
}

fn gamma() -> impl Strategy<Value = ModelParams> {
    (0.3f64..3.0).prop_map(|g| ModelParams::new(g).unwrap())
}

fn branch() -> impl Strategy<Value = Branch> {
    prop_oneof![Just(Branch::Plus), Just(Branch::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jet_value_matches_evaluator(phi in prop_oneof![bump(), gaussian()], u in 0.05f64..0.95) {
        let (lo, hi) = phi.support_bounds();
        let (x, h) = if lo.is_finite() { (lo + (hi - lo) * u, 1e-5 * (hi - lo)) } else { (6.0 * u - 3.0, 1e-3) };
        let j = phi.jet(x, 4).unwrap();
        prop_assert!(close(j.value(), phi.eval(x), 1e-13));
        // first derivative against a fourth-order central difference; step tracks the support width
        let fd = (phi.eval(x - 2.0 * h) - phi.eval(x + 2.0 * h) + 8.0 * (phi.eval(x + h) - phi.eval(x - h))) / (12.0 * h);
        prop_assert!((j.derivative(1) - fd).norm() < 1e-5 * (1.0 + fd.norm()), "{} vs {}", j.derivative(1), fd);
    }

    #[test]
    fn evolution_group_law(phi in prop_oneof![bump(), gaussian()], p in gamma(), s in -2.0f64..2.0, t in -2.0f64..2.0, u in 0.0f64..1.0) {
        let a = evolve(&evolve(&phi, s, &p).unwrap(), t, &p).unwrap();
        let b = evolve(&phi, s + t, &p).unwrap();
        let (lo, hi) = b.support_bounds();
        let x = if lo.is_finite() { lo + (hi - lo) * u } else { 4.0 * u - 2.0 };
        prop_assert!(close(a.eval(x), b.eval(x), 1e-12));
    }

    #[test]
    fn evolution_is_unitary(phi in prop_oneof![bump(), gaussian()], p in gamma(), t in -2.0f64..2.0) {
        let n0 = phi.norm_squared(&cfg()).unwrap();
        let nt = evolve(&phi, t, &p).unwrap().norm_squared(&cfg()).unwrap();
        prop_assert!((nt - n0).abs() <= 1e-10 * n0);
    }

    #[test]
    fn moment_coefficients_decay_forward(phi in bump(), p in gamma(), t0 in 0.0f64..1.5, dt in 0.0f64..1.5) {
        let e = moment_expand(&phi, 8, &p, &cfg()).unwrap();
        let a = evolve_expansion(&e, &EvolutionConfig::semigroup(t0)).unwrap();
        let b = evolve_expansion(&e, &EvolutionConfig::semigroup(t0 + dt)).unwrap();
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            prop_assert!(y.norm() <= x.norm());
        }
    }

    #[test]
    fn generator_on_moment_expansions(phi in bump(), p in gamma()) {
        let lhs = moment_expand(&h_action(&phi, &p), 10, &p, &cfg()).unwrap();
        let rhs = apply_h(&moment_expand(&phi, 10, &p, &cfg()).unwrap());
        let scale = rhs.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
            prop_assert!((a - b).norm() <= 1e-9 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn generator_on_taylor_expansions(src in bump(), p in gamma()) {
        let z = make_fourier_of(&src, &cfg()).unwrap();
        let lhs = taylor_expand(&h_action(&z, &p), 10, &p).unwrap();
        let rhs = apply_h(&taylor_expand(&z, 10, &p).unwrap());
        for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
            prop_assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn time_reversal_intertwines_semigroups(phi in bump(), p in gamma(), t in 0.0f64..2.0) {
        // T U(t) = U_+(-t) T on Taylor coefficients of the transform
        let lhs = taylor_expand(&time_reverse(&evolve(&phi, t, &p).unwrap(), &cfg()).unwrap(), 12, &p).unwrap();
        let base = taylor_expand(&time_reverse(&phi, &cfg()).unwrap(), 12, &p).unwrap();
        let rhs = evolve_expansion(&base, &EvolutionConfig::semigroup(-t)).unwrap();
        let scale = base.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (a, b) in lhs.coeffs.iter().zip(&rhs.coeffs) {
            prop_assert!((a - b).norm() <= 1e-8 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn reflection_swaps_sides(phi in prop_oneof![bump(), gaussian()], re in -2.5f64..2.0, im in -1.0f64..1.0) {
        let l = Complex64::new(re, im);
        prop_assume!((l.re - l.re.round()).abs() > 0.05 || l.re > -0.5 || l.im.abs() > 0.05);
        let a = pair_power(&phi.reflect(), &PowerDistribution::new(l, Side::Minus), &cfg()).unwrap();
        let b = pair_power(&phi, &PowerDistribution::new(l, Side::Plus), &cfg()).unwrap();
        prop_assert!(close(a, b, 1e-9));
    }

    #[test]
    fn conjugate_exponent_for_real_functions(phi in prop_oneof![bump(), gaussian()], re in -2.5f64..2.0, im in -1.0f64..1.0) {
        let l = Complex64::new(re, im);
        prop_assume!((l.re - l.re.round()).abs() > 0.05 || l.re > -0.5 || l.im.abs() > 0.05);
        let d = PowerDistribution::new(l, Side::Plus);
        let h = pair_power_hermitian(&phi, &d, &cfg()).unwrap();
        let b = pair_power(&phi, &d, &cfg()).unwrap();
        prop_assert!(close(h, b.conj(), 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energy_eigenfunctions_are_eigenvectors(phi in gaussian(), p in gamma(), b in branch(), re in -4.0f64..4.0, im in -0.4f64..0.4) {
        // ⟨ψ^E, Ĥφ⟩ = -E ⟨ψ^E, φ⟩ since Ĥ is antisymmetric for the bilinear pairing
        let e = Complex64::new(re, im * p.gamma);
        let lhs = pair_psi_bilinear(&h_action(&phi, &p), e, b, &p, &cfg()).unwrap();
        let rhs = -e * pair_psi_bilinear(&phi, e, b, &p, &cfg()).unwrap();
        prop_assert!(close(lhs, rhs, 1e-8), "{lhs} vs {rhs}");
    }

    #[test]
    fn transformed_eigenfunctions_are_eigenvectors(phi in gaussian(), p in gamma(), b in branch(), e in -4.0f64..4.0) {
        let e = Complex64::new(e, 0.0);
        let lhs = pair_f_psi(&h_action(&phi, &p), e, b, &p, &cfg()).unwrap();
        let rhs = -e * pair_f_psi(&phi, e, b, &p, &cfg()).unwrap();
        prop_assert!(close(lhs, rhs, 1e-8), "{lhs} vs {rhs}");
    }

    #[test]
    fn report_summary_is_consistent(errs in prop::collection::vec((0.0f64..2.0, 0.1f64..1.5), 0..40), scale in 0.5f64..2.0) {
        let checks: Vec<Check> = errs
            .iter()
            .enumerate()
            .map(|(i, (e, tol))| {
                Check::real(format!("c{:03}", 40 - i), "x", 0.0, TargetSource::Exact, *e, *tol, Comparison::Absolute)
            })
            .collect();
        let env = Environment { version: "t".into(), seed: 0, jobs: 1, tolerance_scale: scale, timestamp: 0 };
        let r = VerificationReport::assemble("verify", &checks, vec![], vec![], env);
        prop_assert_eq!(r.summary.total, checks.len());
        prop_assert_eq!(r.summary.passed + r.summary.failed, r.summary.total);
        prop_assert_eq!(r.summary.passed, r.entries.iter().filter(|e| e.pass).count());
        for e in &r.entries {
            prop_assert_eq!(e.pass, e.abs_err <= e.tolerance);
        }
        prop_assert!(r.entries.windows(2).all(|w| w[0].check_id <= w[1].check_id));
    }
}
