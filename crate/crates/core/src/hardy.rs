//! Numerical probes of Hardy-class membership for energy pairings.
//!
//! A function analytic and decaying in the upper half-plane is
//! `f(E) = ∫_0^∞ a(τ) e^{iEτ} dτ`; under the transform `(1/√2π)∫ e^{ikE} f dE`
//! its spectrum lives on `k < 0`. Lower-half-plane functions have spectra on
//! `k > 0`. Continuation to `E ± is` multiplies the spectrum by `e^{±sk}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{self, Branch, ModelParams};
use crate::error::{Error, Result};
use crate::quad::{self, QuadratureConfig};
use crate::testfn::TestFunction;

pub const MIN_SAMPLES: usize = 256;
/// Half-line mass fraction at or above which a half-plane is declared likely.
pub const MASS_THRESHOLD: f64 = 0.99;
/// Ray offsets `s` used by the decay fits.
pub const RAY_WINDOW: (f64, f64) = (0.1, 1.0);
const RAY_POINTS: usize = 10;
// fraction of the grid tapered at each end before transforming
const TAPER_FRACTION: f64 = 0.2;
// spectral mass fraction allowed near the Nyquist edge
const ALIAS_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairingFamily {
    /// `E ↦ ⟨ψ^E_±|φ⟩`
    Psi,
    /// `E ↦ ⟨F[ψ^{-E}_±]|φ⟩`
    FPsi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfPlane {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    UpperLikely,
    LowerLikely,
    Neither,
    Inconclusive,
}

impl Classification {
    /// Whether `self` and `other` are opposite definite verdicts.
    pub fn opposes(self, other: Classification) -> bool {
        matches!(
            (self, other),
            (Classification::UpperLikely, Classification::LowerLikely)
                | (Classification::LowerLikely, Classification::UpperLikely)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyReport {
    pub classification: Classification,
    /// `-d log‖f(· + is)‖/ds` over the ray window; positive means decay.
    pub decay_fit_upper: f64,
    /// `-d log‖f(· - is)‖/ds` over the ray window; positive means decay.
    pub decay_fit_lower: f64,
    /// Spectral mass fraction on the half-line tied to the requested half-plane.
    pub halfline_mass_ratio: f64,
    pub grid_meta: String,
}

/// Hermitian pairings on a uniform real energy grid.
pub fn sample_energy_pairing(
    phi: &TestFunction,
    family: PairingFamily,
    branch: Branch,
    e_grid: &[f64],
    p: &ModelParams,
    cfg: &QuadratureConfig,
) -> Result<Vec<Complex64>> {
    check_uniform(e_grid)?;
    e_grid
        .par_iter()
        .map(|&e| match family {
            PairingFamily::Psi => eigen::pair_psi_hermitian(phi, e, branch, p, cfg),
            PairingFamily::FPsi => eigen::pair_f_psi_hermitian(phi, e, branch, p, cfg),
        })
        .collect()
}

fn check_uniform(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidParameter {
            name: "e_grid",
            reason: "need at least two energies".into(),
        });
    }
    let h = grid[1] - grid[0];
    let uniform = h > 0.0
        && grid
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1.0));
    if uniform {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "e_grid",
            reason: "energy grid must be uniform and increasing".into(),
        })
    }
}

// C^∞ step: 0 for t ≤ 0, 1 for t ≥ 1
fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / t).exp();
    let b = (-1.0 / (1.0 - t)).exp();
    a / (a + b)
}

fn taper(n: usize) -> Vec<f64> {
    let edge = (TAPER_FRACTION * n as f64).max(1.0);
    (0..n)
        .map(|j| {
            let from_end = (j as f64).min((n - 1 - j) as f64);
            smooth_step(from_end / edge)
        })
        .collect()
}

struct Spectrum {
    k: Vec<f64>,
    power: Vec<f64>,
    k_max: f64,
}

fn spectrum(samples: &[Complex64], spacing: f64) -> Result<Spectrum> {
    let n = samples.len();
    let w = taper(n);
    let tapered: Vec<Complex64> = samples.iter().zip(&w).map(|(s, w)| s * w).collect();
    let s = quad::uniform_dft(&tapered, spacing)?;
    let k = quad::conjugate_grid(n, spacing);
    let k_max = k.iter().fold(0.0, |m: f64, k| m.max(k.abs()));
    Ok(Spectrum {
        power: s.iter().map(|z| z.norm_sqr()).collect(),
        k,
        k_max,
    })
}

struct Measurements {
    mass_upper: f64,
    mass_lower: f64,
    decay_upper: f64,
    decay_lower: f64,
    aliased: bool,
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn measure(sp: &Spectrum) -> Measurements {
    let total: f64 = sp.power.iter().sum();
    let mut upper = 0.0;
    let mut edge = 0.0;
    for (k, p) in sp.k.iter().zip(&sp.power) {
        if *k < 0.0 {
            upper += p;
        } else if *k == 0.0 {
            upper += 0.5 * p;
        }
        if k.abs() > 0.9 * sp.k_max {
            edge += p;
        }
    }
    let (mass_upper, mass_lower) = if total > 0.0 {
        (upper / total, 1.0 - upper / total)
    } else {
        (0.5, 0.5)
    };
    // ray proxies only over the well-resolved half of the spectrum
    let k_fit = 0.5 * sp.k_max;
    let ss: Vec<f64> = (0..RAY_POINTS)
        .map(|j| RAY_WINDOW.0 + (RAY_WINDOW.1 - RAY_WINDOW.0) * j as f64 / (RAY_POINTS - 1) as f64)
        .collect();
    let log_norm = |s: f64, dir: f64| -> f64 {
        let v: f64 =
            sp.k.iter()
                .zip(&sp.power)
                .filter(|(k, _)| k.abs() <= k_fit)
                .map(|(k, p)| p * (2.0 * dir * s * k).exp())
                .sum();
        0.5 * v.max(f64::MIN_POSITIVE).ln()
    };
    let up: Vec<f64> = ss.iter().map(|&s| log_norm(s, 1.0)).collect();
    let low: Vec<f64> = ss.iter().map(|&s| log_norm(s, -1.0)).collect();
    Measurements {
        mass_upper,
        mass_lower,
        decay_upper: -slope(&ss, &up),
        decay_lower: -slope(&ss, &low),
        aliased: total > 0.0 && edge / total > ALIAS_LIMIT,
    }
}

fn verdict(m: &Measurements) -> Classification {
    if m.aliased {
        return Classification::Inconclusive;
    }
    if m.mass_upper >= MASS_THRESHOLD {
        if m.decay_upper >= 0.0 && m.decay_lower < 0.0 {
            Classification::UpperLikely
        } else {
            Classification::Inconclusive
        }
    } else if m.mass_lower >= MASS_THRESHOLD {
        if m.decay_lower >= 0.0 && m.decay_upper < 0.0 {
            Classification::LowerLikely
        } else {
            Classification::Inconclusive
        }
    } else if m.decay_upper < 0.0 && m.decay_lower < 0.0 {
        Classification::Neither
    } else {
        Classification::Inconclusive
    }
}

/// Classifies uniformly spaced samples of `f(E)` on a real grid.
///
/// The verdict is repeated on every other sample (doubled spacing); any
/// disagreement, or spectral mass near the Nyquist edge, yields
/// `Inconclusive` rather than a definite answer.
pub fn hardy_diagnostic(samples: &[Complex64], spacing: f64, halfplane: HalfPlane) -> Result<HardyReport> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InvalidParameter {
            name: "samples",
            reason: format!("need at least {MIN_SAMPLES} samples, got {}", samples.len()),
        });
    }
    if !(spacing > 0.0) {
        return Err(Error::InvalidParameter {
            name: "spacing",
            reason: format!("must be positive, got {spacing}"),
        });
    }
    let full = measure(&spectrum(samples, spacing)?);
    let coarse_samples: Vec<Complex64> = samples.iter().step_by(2).copied().collect();
    let coarse = measure(&spectrum(&coarse_samples, 2.0 * spacing)?);
    let fine_verdict = verdict(&full);
    let coarse_verdict = verdict(&coarse);
    let stable = fine_verdict == coarse_verdict;
    let classification = if stable {
        fine_verdict
    } else {
        Classification::Inconclusive
    };
    let halfline_mass_ratio = match halfplane {
        HalfPlane::Upper => full.mass_upper,
        HalfPlane::Lower => full.mass_lower,
    }
    .clamp(0.0, 1.0);
    Ok(HardyReport {
        classification,
        decay_fit_upper: full.decay_upper,
        decay_fit_lower: full.decay_lower,
        halfline_mass_ratio,
        grid_meta: format!(
            "n={} spacing={spacing} taper={TAPER_FRACTION} rays s∈[{}, {}] aliased={} subsample_verdict={coarse_verdict:?}",
            samples.len(),
            RAY_WINDOW.0,
            RAY_WINDOW.1,
            full.aliased,
        ),
    })
}
