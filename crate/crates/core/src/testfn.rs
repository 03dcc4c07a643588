//! Test functions in the classes D (compact support), Z (Fourier images of D)
//! and S (Schwartz), each with an evaluator and an exact jet oracle.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::{factorial, Jet};
use crate::quad::{self, QuadratureConfig};

/// Default highest jet order available from built-in families.
pub const DEFAULT_MAX_ORDER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Compact { lo: f64, hi: f64 },
    RapidDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionClass {
    D,
    Z,
    S,
}

type EvalFn = dyn Fn(f64) -> Complex64 + Send + Sync;
type JetFn = dyn Fn(f64, usize) -> Jet + Send + Sync;

enum Node {
    Bump {
        lo: f64,
        hi: f64,
        amplitude: f64,
    },
    GaussHermite {
        sigma: f64,
        k: u32,
    },
    // closed-form transform of x^k e^{-x^2/(2σ^2)}: (-i)^k σ d^k/dy^k e^{-σ^2 y^2/2}
    GaussFourier {
        sigma: f64,
        k: u32,
    },
    Fourier {
        source: TestFunction,
        lo: f64,
        hi: f64,
        // Taylor coefficients at 0: i^n m_n / (n! √2π)
        taylor_at_zero: Vec<Complex64>,
        cfg: QuadratureConfig,
    },
    Sum(TestFunction, TestFunction),
    Scale(Complex64, TestFunction),
    Reflect(TestFunction),
    Conj(TestFunction),
    Dilate {
        inner: TestFunction,
        factor: f64,
        amplitude: f64,
    },
    HAction {
        inner: TestFunction,
        gamma: f64,
    },
    Custom {
        eval: Arc<EvalFn>,
        jet: Arc<JetFn>,
        analytic_radius: f64,
    },
}

/// An evaluable, exactly differentiable test function.
///
/// Values are immutable and cheap to clone (shared behind an `Arc`).
#[derive(Clone)]
pub struct TestFunction {
    node: Arc<Node>,
    support: Support,
    class: FunctionClass,
    max_order: usize,
    description: String,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("description", &self.description)
            .field("support", &self.support)
            .field("class", &self.class)
            .field("max_order", &self.max_order)
            .finish()
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => c(1.0),
        1 => Complex64::i(),
        2 => c(-1.0),
        _ => -Complex64::i(),
    }
}

/// `amplitude · exp(-1/(1-u²))` with `u` the affine image of `[lo, hi]` on
/// `[-1, 1]`, zero outside.
pub fn make_bump(lo: f64, hi: f64, amplitude: f64) -> Result<TestFunction> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInterval { lo, hi });
    }
    if amplitude == 0.0 || !amplitude.is_finite() {
        return Err(Error::InvalidParameter {
            name: "amplitude",
            reason: "must be finite and non-zero".into(),
        });
    }
    Ok(TestFunction {
        node: Arc::new(Node::Bump { lo, hi, amplitude }),
        support: Support::Compact { lo, hi },
        class: FunctionClass::D,
        max_order: DEFAULT_MAX_ORDER,
        description: format!("bump({lo},{hi},{amplitude})"),
    })
}

/// `x^k e^{-x²/(2σ²)}`.
pub fn make_gauss_hermite(sigma: f64, k: u32) -> Result<TestFunction> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "sigma",
            reason: format!("must be positive, got {sigma}"),
        });
    }
    Ok(TestFunction {
        node: Arc::new(Node::GaussHermite { sigma, k }),
        support: Support::RapidDecay,
        class: FunctionClass::S,
        max_order: DEFAULT_MAX_ORDER,
        description: format!("gauss_hermite({sigma},{k})"),
    })
}

/// The unitary Fourier transform `(1/√2π) ∫ e^{ikx} f(x) dx` of a compactly
/// supported `f`, evaluated by quadrature; the jet at 0 comes from the
/// moments of `f`.
pub fn make_fourier_of(f: &TestFunction, cfg: &QuadratureConfig) -> Result<TestFunction> {
    let (lo, hi) = match f.support {
        Support::Compact { lo, hi } => (lo, hi),
        Support::RapidDecay => {
            return Err(Error::ClassViolation(format!(
                "Fourier images in Z need a compactly supported source, got {}",
                f.description
            )))
        }
    };
    let norm = (2.0 * PI).sqrt();
    let taylor_at_zero = (0..=f.max_order)
        .map(|n| Ok(i_pow(n) * f.moment(n, cfg)? / (factorial(n) * norm)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TestFunction {
        node: Arc::new(Node::Fourier {
            source: f.clone(),
            lo,
            hi,
            taylor_at_zero,
            cfg: *cfg,
        }),
        support: Support::RapidDecay,
        class: FunctionClass::Z,
        max_order: f.max_order,
        description: format!("F[{}]", f.description),
    })
}

impl TestFunction {
    /// Wraps user-provided closures. `analytic_radius` is the radius around 0
    /// on which the Taylor series at 0 converges (0 when unknown).
    pub fn from_fns<E, J>(
        eval: E,
        jet: J,
        support: Support,
        class: FunctionClass,
        analytic_radius: f64,
        description: impl Into<String>,
    ) -> Result<TestFunction>
    where
        E: Fn(f64) -> Complex64 + Send + Sync + 'static,
        J: Fn(f64, usize) -> Jet + Send + Sync + 'static,
    {
        check_class(support, class)?;
        Ok(TestFunction {
            node: Arc::new(Node::Custom {
                eval: Arc::new(eval),
                jet: Arc::new(jet),
                analytic_radius,
            }),
            support,
            class,
            max_order: DEFAULT_MAX_ORDER,
            description: description.into(),
        })
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn class(&self) -> FunctionClass {
        self.class
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Caps the available jet order.
    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.support, Support::Compact { .. })
    }

    /// Support interval, `(-∞, ∞)` for rapidly decaying functions.
    pub fn support_bounds(&self) -> (f64, f64) {
        match self.support {
            Support::Compact { lo, hi } => (lo, hi),
            Support::RapidDecay => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if let Support::Compact { lo, hi } = self.support {
            if x <= lo || x >= hi {
                return c(0.0);
            }
        }
        match &*self.node {
            Node::Bump { lo, hi, amplitude } => {
                let u = (2.0 * x - (lo + hi)) / (hi - lo);
                let q = 1.0 - u * u;
                if q <= 0.0 {
                    c(0.0)
                } else {
                    c(amplitude * (-1.0 / q).exp())
                }
            }
            Node::GaussHermite { sigma, k } => c(x.powi(*k as i32) * (-x * x / (2.0 * sigma * sigma)).exp()),
            Node::GaussFourier { .. } => self.jet_unchecked(x, 0).value(),
            Node::Fourier {
                source, lo, hi, cfg, ..
            } => {
                let integrand = |s: f64| source.eval(s) * Complex64::new(0.0, x * s).exp();
                let value = match quad::integrate_oscillatory(integrand, *lo, *hi, x, cfg) {
                    Ok(r) => r.value,
                    Err(Error::Accuracy { partial, .. }) => partial,
                    Err(_) => Complex64::new(f64::NAN, f64::NAN),
                };
                value / (2.0 * PI).sqrt()
            }
            Node::Sum(a, b) => a.eval(x) + b.eval(x),
            Node::Scale(s, f) => f.eval(x) * s,
            Node::Reflect(f) => f.eval(-x),
            Node::Conj(f) => f.eval(x).conj(),
            Node::Dilate {
                inner,
                factor,
                amplitude,
            } => inner.eval(factor * x) * *amplitude,
            Node::HAction { inner, gamma } => {
                let j = inner.jet_unchecked(x, 1);
                Complex64::new(0.0, *gamma) * (j.coeffs()[1] * x + j.coeffs()[0] * 0.5)
            }
            Node::Custom { eval, .. } => eval(x),
        }
    }

    /// Jet of order `order` at `x`.
    pub fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        if order > self.max_order {
            return Err(Error::Capability {
                requested: order,
                max: self.max_order,
            });
        }
        Ok(self.jet_unchecked(x, order))
    }

    /// `f^(n)(x)`.
    pub fn derivative_at(&self, x: f64, n: usize) -> Result<Complex64> {
        Ok(self.jet(x, n)?.derivative(n))
    }

    fn jet_unchecked(&self, x: f64, order: usize) -> Jet {
        if let Support::Compact { lo, hi } = self.support {
            if x <= lo || x >= hi {
                return Jet::zero(x, order);
            }
        }
        match &*self.node {
            Node::Bump { lo, hi, amplitude } => {
                let scale = 2.0 / (hi - lo);
                let u0 = (2.0 * x - (lo + hi)) / (hi - lo);
                let mut u = Jet::constant(x, c(u0), order);
                if order >= 1 {
                    let mut coeffs = u.into_coeffs();
                    coeffs[1] = c(scale);
                    u = Jet::new(x, coeffs);
                }
                let one = Jet::constant(x, c(1.0), order);
                let q = &one - &(&u * &u);
                if q.value().re <= 0.0 {
                    return Jet::zero(x, order);
                }
                (-&q.recip()).exp().scale(c(*amplitude))
            }
            Node::GaussHermite { sigma, k } => {
                let var = Jet::variable(x, order);
                let expo = (&var * &var).scale(c(-1.0 / (2.0 * sigma * sigma))).exp();
                &var.powi(*k) * &expo
            }
            Node::GaussFourier { sigma, k } => {
                let k = *k as usize;
                let var = Jet::variable(x, order + k);
                let g = (&var * &var).scale(c(-sigma * sigma / 2.0)).exp();
                let mut d = g;
                for _ in 0..k {
                    d = d.differentiate();
                }
                let mut pre = c(*sigma);
                for _ in 0..k {
                    pre *= -Complex64::i();
                }
                d.scale(pre)
            }
            Node::Fourier {
                source,
                lo,
                hi,
                taylor_at_zero,
                cfg,
            } => {
                if x == 0.0 && order < taylor_at_zero.len() {
                    return Jet::new(0.0, taylor_at_zero[..=order].to_vec());
                }
                let norm = (2.0 * PI).sqrt();
                let coeffs = (0..=order)
                    .map(|n| {
                        let integrand =
                            |s: f64| source.eval(s) * Complex64::new(0.0, x * s).exp() * s.powi(n as i32);
                        let v = match quad::integrate_oscillatory(integrand, *lo, *hi, x, cfg) {
                            Ok(r) => r.value,
                            Err(Error::Accuracy { partial, .. }) => partial,
                            Err(_) => Complex64::new(f64::NAN, f64::NAN),
                        };
                        v * i_pow(n) / (factorial(n) * norm)
                    })
                    .collect();
                Jet::new(x, coeffs)
            }
            Node::Sum(a, b) => &a.jet_unchecked(x, order) + &b.jet_unchecked(x, order),
            Node::Scale(s, f) => f.jet_unchecked(x, order).scale(*s),
            Node::Reflect(f) => {
                let j = f.jet_unchecked(-x, order);
                let coeffs = j
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, a)| if k % 2 == 0 { *a } else { -a })
                    .collect();
                Jet::new(x, coeffs)
            }
            Node::Conj(f) => {
                let j = f.jet_unchecked(x, order);
                Jet::new(x, j.coeffs().iter().map(|a| a.conj()).collect())
            }
            Node::Dilate {
                inner,
                factor,
                amplitude,
            } => {
                let j = inner.jet_unchecked(factor * x, order);
                let mut s = *amplitude;
                let coeffs = j
                    .coeffs()
                    .iter()
                    .map(|a| {
                        let v = a * s;
                        s *= factor;
                        v
                    })
                    .collect();
                Jet::new(x, coeffs)
            }
            Node::HAction { inner, gamma } => {
                let j = inner.jet_unchecked(x, order + 1);
                let d = j.differentiate();
                let var = Jet::variable(x, order);
                let body = &(&var * &d) + &j.truncate(order).scale(c(0.5));
                body.scale(Complex64::new(0.0, *gamma))
            }
            Node::Custom { jet, .. } => jet(x, order),
        }
    }

    /// Radius around 0 on which the Taylor series at 0 represents the function.
    pub(crate) fn analytic_radius_at_zero(&self) -> f64 {
        match &*self.node {
            Node::Bump { lo, hi, .. } => lo.abs().min(hi.abs()),
            Node::GaussHermite { .. } | Node::GaussFourier { .. } | Node::Fourier { .. } => f64::INFINITY,
            Node::Sum(a, b) => a.analytic_radius_at_zero().min(b.analytic_radius_at_zero()),
            Node::Scale(_, f) | Node::Reflect(f) | Node::Conj(f) => f.analytic_radius_at_zero(),
            Node::Dilate { inner, factor, .. } => inner.analytic_radius_at_zero() / factor,
            Node::HAction { inner, .. } => inner.analytic_radius_at_zero(),
            Node::Custom { analytic_radius, .. } => *analytic_radius,
        }
    }

    /// `∫ xⁿ f(x) dx`.
    ///
    /// For Fourier images the moment is read off the source's derivative at
    /// zero: `∫ xⁿ F[g](x) dx = √(2π) iⁿ g⁽ⁿ⁾(0)`.
    pub fn moment(&self, n: usize, cfg: &QuadratureConfig) -> Result<Complex64> {
        if let Node::Fourier { source, .. } = &*self.node {
            return Ok(source.derivative_at(0.0, n)? * i_pow(n) * (2.0 * PI).sqrt());
        }
        let p = n as i32;
        self.integrate_weighted(|x| c(x.powi(p)), cfg)
    }

    /// `∫ w(x) f(x) dx` over the support.
    pub fn integrate_weighted<W>(&self, w: W, cfg: &QuadratureConfig) -> Result<Complex64>
    where
        W: Fn(f64) -> Complex64,
    {
        let integrand = |x: f64| w(x) * self.eval(x);
        match self.support {
            Support::Compact { lo, hi } => {
                let pts: Vec<f64> = (0..=8).map(|j| lo + (hi - lo) * j as f64 / 8.0).collect();
                Ok(quad::integrate_partitioned(integrand, &pts, cfg)?.value)
            }
            Support::RapidDecay => {
                Ok(quad::integrate(integrand, f64::NEG_INFINITY, f64::INFINITY, cfg)?.value)
            }
        }
    }

    /// `∫ |f|² dx`.
    pub fn norm_squared(&self, cfg: &QuadratureConfig) -> Result<f64> {
        self.norm_squared_on(self.support_bounds(), cfg)
    }

    /// `∫_a^b |f|² dx` restricted to the support.
    pub fn norm_squared_on(&self, (a, b): (f64, f64), cfg: &QuadratureConfig) -> Result<f64> {
        let (lo, hi) = self.support_bounds();
        let a = a.max(lo);
        let b = b.min(hi);
        if !(a < b) {
            return Ok(0.0);
        }
        let integrand = |x: f64| c(self.eval(x).norm_sqr());
        let r = if a.is_finite() && b.is_finite() {
            let pts: Vec<f64> = (0..=8).map(|j| a + (b - a) * j as f64 / 8.0).collect();
            quad::integrate_partitioned(integrand, &pts, cfg)?
        } else {
            quad::integrate(integrand, a, b, cfg)?
        };
        Ok(r.value.re)
    }

    /// Bilinear pairing `∫ f g dx` (no conjugation).
    pub fn pair(&self, other: &TestFunction, cfg: &QuadratureConfig) -> Result<Complex64> {
        let (a0, b0) = self.support_bounds();
        let (a1, b1) = other.support_bounds();
        let a = a0.max(a1);
        let b = b0.min(b1);
        if !(a < b) {
            return Ok(c(0.0));
        }
        let integrand = |x: f64| self.eval(x) * other.eval(x);
        if a.is_finite() && b.is_finite() {
            let pts: Vec<f64> = (0..=16).map(|j| a + (b - a) * j as f64 / 16.0).collect();
            Ok(quad::integrate_partitioned(integrand, &pts, cfg)?.value)
        } else {
            Ok(quad::integrate(integrand, a, b, cfg)?.value)
        }
    }

    pub fn add(&self, other: &TestFunction) -> TestFunction {
        let support = match (self.support, other.support) {
            (Support::Compact { lo: a, hi: b }, Support::Compact { lo: c, hi: d }) => Support::Compact {
                lo: a.min(c),
                hi: b.max(d),
            },
            _ => Support::RapidDecay,
        };
        let class = match (self.class, other.class) {
            (FunctionClass::D, FunctionClass::D) => FunctionClass::D,
            (FunctionClass::Z, FunctionClass::Z) => FunctionClass::Z,
            _ => FunctionClass::S,
        };
        TestFunction {
            node: Arc::new(Node::Sum(self.clone(), other.clone())),
            support,
            class,
            max_order: self.max_order.min(other.max_order),
            description: format!("({} + {})", self.description, other.description),
        }
    }

    pub fn scale(&self, factor: Complex64) -> TestFunction {
        TestFunction {
            node: Arc::new(Node::Scale(factor, self.clone())),
            support: self.support,
            class: self.class,
            max_order: self.max_order,
            description: format!("{}*{}", factor, self.description),
        }
    }

    pub fn sub(&self, other: &TestFunction) -> TestFunction {
        self.add(&other.scale(c(-1.0)))
    }

    /// `x ↦ f(-x)`.
    pub fn reflect(&self) -> TestFunction {
        let support = match self.support {
            Support::Compact { lo, hi } => Support::Compact { lo: -hi, hi: -lo },
            Support::RapidDecay => Support::RapidDecay,
        };
        TestFunction {
            node: Arc::new(Node::Reflect(self.clone())),
            support,
            class: self.class,
            max_order: self.max_order,
            description: format!("P[{}]", self.description),
        }
    }

    /// `x ↦ conj(f(x))`.
    pub fn conjugate(&self) -> TestFunction {
        TestFunction {
            node: Arc::new(Node::Conj(self.clone())),
            support: self.support,
            class: self.class,
            max_order: self.max_order,
            description: format!("C[{}]", self.description),
        }
    }

    /// `x ↦ amplitude · f(factor · x)` for `factor > 0`.
    pub fn dilate(&self, factor: f64, amplitude: f64) -> Result<TestFunction> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::InvalidParameter {
                name: "factor",
                reason: format!("dilation factor must be positive, got {factor}"),
            });
        }
        let support = match self.support {
            Support::Compact { lo, hi } => Support::Compact {
                lo: lo / factor,
                hi: hi / factor,
            },
            Support::RapidDecay => Support::RapidDecay,
        };
        Ok(TestFunction {
            node: Arc::new(Node::Dilate {
                inner: self.clone(),
                factor,
                amplitude,
            }),
            support,
            class: self.class,
            max_order: self.max_order,
            description: format!("{amplitude}*{}({factor}x)", self.description),
        })
    }

    /// `iγ (x f'(x) + f(x)/2)`; one jet order is consumed.
    pub(crate) fn h_action(&self, gamma: f64) -> TestFunction {
        TestFunction {
            node: Arc::new(Node::HAction {
                inner: self.clone(),
                gamma,
            }),
            support: self.support,
            class: self.class,
            max_order: self.max_order.saturating_sub(1),
            description: format!("H[{}]", self.description),
        }
    }

    /// Closed-form or quadrature-backed unitary Fourier transform, when the
    /// structure of `self` allows one.
    pub(crate) fn fourier_transform(&self, cfg: &QuadratureConfig) -> Result<TestFunction> {
        if self.is_compact() {
            return make_fourier_of(self, cfg);
        }
        let out = match &*self.node {
            Node::GaussHermite { sigma, k } => TestFunction {
                node: Arc::new(Node::GaussFourier { sigma: *sigma, k: *k }),
                support: Support::RapidDecay,
                class: FunctionClass::S,
                max_order: self.max_order,
                description: format!("F[{}]", self.description),
            },
            Node::Sum(a, b) => a.fourier_transform(cfg)?.add(&b.fourier_transform(cfg)?),
            Node::Scale(s, f) => f.fourier_transform(cfg)?.scale(*s),
            Node::Reflect(f) => f.fourier_transform(cfg)?.reflect(),
            // F[f̄](k) = conj(F[f](-k))
            Node::Conj(f) => f.fourier_transform(cfg)?.conjugate().reflect(),
            Node::Dilate {
                inner,
                factor,
                amplitude,
            } => inner
                .fourier_transform(cfg)?
                .dilate(1.0 / factor, amplitude / factor)?,
            _ => {
                return Err(Error::ClassViolation(format!(
                    "no Fourier representation available for {}",
                    self.description
                )))
            }
        };
        Ok(out.with_description(format!("F[{}]", self.description)))
    }
}

fn check_class(support: Support, class: FunctionClass) -> Result<()> {
    match (class, support) {
        (FunctionClass::D, Support::RapidDecay) => {
            Err(Error::ClassViolation("class D requires compact support".into()))
        }
        (FunctionClass::Z, Support::Compact { .. }) => Err(Error::ClassViolation(
            "class Z functions cannot be compactly supported".into(),
        )),
        _ => Ok(()),
    }
}

/// Declarative description of a test function, as read from run
/// configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunctionSpec {
    Bump {
        lo: f64,
        hi: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    GaussHermite {
        sigma: f64,
        #[serde(default)]
        k: u32,
    },
    FourierOfBump {
        lo: f64,
        hi: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    Sum {
        terms: Vec<TestFunctionSpec>,
    },
    Scale {
        re: f64,
        #[serde(default)]
        im: f64,
        of: Box<TestFunctionSpec>,
    },
    Reflect {
        of: Box<TestFunctionSpec>,
    },
}

fn one() -> f64 {
    1.0
}

impl TestFunctionSpec {
    pub fn build(&self, cfg: &QuadratureConfig) -> Result<TestFunction> {
        match self {
            TestFunctionSpec::Bump { lo, hi, amplitude } => make_bump(*lo, *hi, *amplitude),
            TestFunctionSpec::GaussHermite { sigma, k } => make_gauss_hermite(*sigma, *k),
            TestFunctionSpec::FourierOfBump { lo, hi, amplitude } => {
                make_fourier_of(&make_bump(*lo, *hi, *amplitude)?, cfg)
            }
            TestFunctionSpec::Sum { terms } => {
                let mut it = terms.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Config("sum needs at least one term".into()))?
                    .build(cfg)?;
                it.try_fold(first, |acc, t| Ok(acc.add(&t.build(cfg)?)))
            }
            TestFunctionSpec::Scale { re, im, of } => Ok(of.build(cfg)?.scale(Complex64::new(*re, *im))),
            TestFunctionSpec::Reflect { of } => Ok(of.build(cfg)?.reflect()),
        }
    }
}
