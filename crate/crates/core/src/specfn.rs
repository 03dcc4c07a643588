//! Complex Gamma function (Lanczos, g = 7, nine coefficients) with the
//! reflection formula on the left half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(z)` or, when `log_scale_flag` is set, `ln Γ(z)` (any branch).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub value: Complex64,
    pub log_scale_flag: bool,
}

impl GammaValue {
    /// `ln Γ(z)` regardless of representation.
    pub fn ln(&self) -> Complex64 {
        if self.log_scale_flag {
            self.value
        } else {
            self.value.ln()
        }
    }
}

const POLE_DISTANCE: f64 = 1e-12;

fn check_pole(z: Complex64) -> Result<()> {
    if z.re <= 0.5 {
        let nearest = z.re.round();
        if nearest <= 0.0 && (z - Complex64::new(nearest, 0.0)).norm() < POLE_DISTANCE {
            return Err(Error::Pole {
                what: "gamma function pole",
                location: z,
                index: (-nearest) as usize,
                residue: Some(Complex64::new(gamma_residue((-nearest) as usize), 0.0)),
            });
        }
    }
    Ok(())
}

// ln Γ(z) for Re z >= 1/2
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, p) in LANCZOS.iter().enumerate().skip(1) {
        a += *p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

// sin(πz) with the integer part of Re z removed first
fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let s = (PI * (z - n)).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `ln Γ(z)` on some branch; finite away from the poles.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re < 0.5 {
        Ok(PI.ln() - sin_pi(z).ln() - ln_gamma_right(1.0 - z))
    } else {
        Ok(ln_gamma_right(z))
    }
}

/// Complex Gamma function.
///
/// Returns the log-scaled form when `|Γ(z)|` would overflow.
pub fn gamma(z: Complex64) -> Result<GammaValue> {
    check_pole(z)?;
    if z.re >= 0.5 {
        let l = ln_gamma_right(z);
        return Ok(from_ln(l));
    }
    // reflection: Γ(z) = π / (sin(πz) Γ(1-z))
    let l = ln_gamma_right(1.0 - z);
    if l.re > 700.0 || l.re < -700.0 {
        return Ok(from_ln(PI.ln() - sin_pi(z).ln() - l));
    }
    let value = PI / (sin_pi(z) * l.exp());
    if value.re.is_finite() && value.im.is_finite() {
        Ok(GammaValue {
            value,
            log_scale_flag: false,
        })
    } else {
        Ok(from_ln(PI.ln() - sin_pi(z).ln() - l))
    }
}

fn from_ln(l: Complex64) -> GammaValue {
    if l.re > 700.0 {
        GammaValue {
            value: l,
            log_scale_flag: true,
        }
    } else {
        GammaValue {
            value: l.exp(),
            log_scale_flag: false,
        }
    }
}

/// Residue of `Γ` at `z = -n`: `(-1)^n / n!`.
pub fn gamma_residue(n: usize) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / crate::jet::factorial(n)
}
