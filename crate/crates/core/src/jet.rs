//! Truncated Taylor series ("jets") with complex coefficients.
//!
//! A jet of order `n` at `x0` stores `f^(k)(x0) / k!` for `k = 0..=n`. All
//! arithmetic is truncated at the smaller order of the operands, so derivatives
//! of composite closed forms come out exact up to rounding.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base_point: f64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    pub fn new(base_point: f64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { base_point, coeffs }
    }

    pub fn constant(base_point: f64, value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Jet { base_point, coeffs }
    }

    /// The identity map `x ↦ x` expanded at `base_point`.
    pub fn variable(base_point: f64, order: usize) -> Self {
        let mut jet = Jet::constant(base_point, Complex64::new(base_point, 0.0), order);
        if order >= 1 {
            jet.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        jet
    }

    pub fn zero(base_point: f64, order: usize) -> Self {
        Jet::constant(base_point, Complex64::new(0.0, 0.0), order)
    }

    pub fn base_point(&self) -> f64 {
        self.base_point
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `f^(k)(x0)`, i.e. `k!` times the stored coefficient.
    pub fn derivative(&self, k: usize) -> Complex64 {
        self.coeffs[k] * factorial(k)
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = order.min(self.order());
        Jet::new(self.base_point, self.coeffs[..=n].to_vec())
    }

    pub fn scale(&self, c: Complex64) -> Jet {
        Jet::new(self.base_point, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Jet of `f'` (one order lower).
    pub fn differentiate(&self) -> Jet {
        if self.order() == 0 {
            return Jet::zero(self.base_point, 0);
        }
        let coeffs = (1..=self.order()).map(|k| self.coeffs[k] * k as f64).collect();
        Jet::new(self.base_point, coeffs)
    }

    /// Jet of `exp(f)`.
    pub fn exp(&self) -> Jet {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = self.coeffs[0].exp();
        for m in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=m {
                acc += self.coeffs[k] * out[m - k] * k as f64;
            }
            out[m] = acc / m as f64;
        }
        Jet::new(self.base_point, out)
    }

    /// Jet of `1/f`; requires `f(x0) != 0`.
    pub fn recip(&self) -> Jet {
        let n = self.order();
        let a0 = self.coeffs[0];
        let inv = a0.inv();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = inv;
        for m in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=m {
                acc += self.coeffs[k] * out[m - k];
            }
            out[m] = -acc * inv;
        }
        Jet::new(self.base_point, out)
    }

    pub fn powi(&self, k: u32) -> Jet {
        let mut out = Jet::constant(self.base_point, Complex64::new(1.0, 0.0), self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Sums the truncated Taylor polynomial at `x`.
    pub fn eval_polynomial(&self, x: f64) -> Complex64 {
        let h = x - self.base_point;
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * h + c)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        Jet::new(
            self.base_point,
            (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        )
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        Jet::new(
            self.base_point,
            (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        )
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|m| (0..=m).map(|k| self.coeffs[k] * rhs.coeffs[m - k]).sum())
            .collect();
        Jet::new(self.base_point, coeffs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
