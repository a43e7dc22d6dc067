//! Tanh-sinh (double exponential) quadrature.
//!
//! Nodes are generated as distances from the nearer endpoint, so integrands
//! with algebraic endpoint behaviour are sampled without cancellation in
//! `x - a`. Levels halve the step and reuse every previous node.

use core::f64::consts::FRAC_PI_2;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Integral estimate with its level-difference error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

/// Tanh-sinh rule settings.
#[derive(Debug, Clone, Copy)]
pub struct TanhSinh {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_level: u32,
}

impl Default for TanhSinh {
    fn default() -> Self {
        TanhSinh { abs_tol: 1e-12, rel_tol: 1e-12, max_level: 11 }
    }
}

const T_MAX: f64 = 4.0;

impl TanhSinh {
    /// `int_a^b f(x) dx`; `f` is never called at the endpoints.
    pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(&self, mut f: F, a: f64, b: f64) -> Result<Quadrature<T>> {
        if !(b > a) {
            return if a == b {
                Ok(Quadrature { value: T::zero(), error: 0.0, evaluations: 0 })
            } else {
                Err(Error::Domain { op: "tanh_sinh", value: b - a })
            };
        }
        let width = b - a;
        let half = 0.5 * width;
        let mut evaluations = 0usize;
        let node = |t: f64, f: &mut F| -> T {
            let u = FRAC_PI_2 * libm::sinh(t.abs());
            let e = libm::exp(-2.0 * u);
            let d = width * e / (1.0 + e);
            if d == 0.0 {
                return T::zero();
            }
            let w = half * FRAC_PI_2 * libm::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
            let x = if t > 0.0 {
                b - d
            } else if t < 0.0 {
                a + d
            } else {
                a + half
            };
            f(x) * w
        };

        // Level 0: unit step.
        let mut sum = T::zero();
        let mut k = -(T_MAX as i32);
        while k <= T_MAX as i32 {
            sum = sum + node(k as f64, &mut f);
            evaluations += 1;
            k += 1;
        }
        let mut h = 1.0;
        let mut estimate = sum * h;
        let mut error = f64::INFINITY;
        for level in 1..=self.max_level {
            h *= 0.5;
            let count = (T_MAX / h) as i64;
            let mut j = 1i64;
            while j <= count {
                let t = j as f64 * h;
                sum = sum + node(t, &mut f) + node(-t, &mut f);
                evaluations += 2;
                j += 2;
            }
            let next = sum * h;
            error = (next - estimate).magnitude();
            estimate = next;
            let m = estimate.magnitude();
            if !m.is_finite() {
                return Err(Error::Quadrature { op: "tanh_sinh", estimate: m, error });
            }
            if level >= 3 && error <= self.abs_tol.max(self.rel_tol * m) {
                return Ok(Quadrature { value: estimate, error, evaluations });
            }
        }
        Err(Error::Quadrature { op: "tanh_sinh", estimate: estimate.magnitude(), error })
    }

    /// `int_0^b s^mu g(s) ds` for `mu > -1` and `g` smooth on `[0, b]`.
    ///
    /// For `mu < 0` the singular part `g(0) s^mu` is integrated exactly and
    /// only the bounded remainder `s^mu (g(s) - g(0))` goes to quadrature.
    pub fn integrate_algebraic<T: QuadValue, F: FnMut(f64) -> T>(
        &self,
        mu: f64,
        g0: T,
        mut g: F,
        b: f64,
    ) -> Result<Quadrature<T>> {
        if !(mu > -1.0) {
            return Err(Error::Domain { op: "integrate_algebraic", value: mu });
        }
        if mu >= 0.0 {
            return self.integrate(|s| g(s) * libm::pow(s, mu), 0.0, b);
        }
        let exact = g0 * (libm::pow(b, 1.0 + mu) / (1.0 + mu));
        let q = self.integrate(|s| (g(s) - g0) * libm::pow(s, mu), 0.0, b)?;
        Ok(Quadrature { value: exact + q.value, error: q.error, evaluations: q.evaluations })
    }
}
