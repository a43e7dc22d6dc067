//! Maclaurin coefficients `A_n(alpha, beta, w)` of `(1 + w z)^alpha (1 - z)^(-beta)`,
//! the scaled terminating hypergeometric function `w_n`, and the Laplace
//! representation of `w_n` used by the lower-bound chain.

use core::f64::consts::PI;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::quad::{QuadValue, TanhSinh};
use crate::specfun::{binom_alpha, factorial, gamma, pochhammer, pochhammer_over_factorial, principal_pow, rgamma, sin_pi};
use crate::{Error, Result};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sign_pow(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `A_n` by collecting coefficients of the two binomial series.
///
/// The gamma ratio `Gamma(m + beta) / (Gamma(beta) m!)` is the product
/// `(beta)_m / m!`, so `beta = 0` is covered continuously.
pub fn a_n(alpha: f64, beta: f64, omega: Complex64, n: u32) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut wk = c(1.0);
    for k in 0..=n {
        let coef = binom_alpha(alpha, k) * pochhammer_over_factorial(beta, n - k);
        sum += wk * coef;
        wk *= omega;
    }
    sum
}

/// `A_n` through the terminating series
/// `(beta)_n / n! * 2F1(-n, -alpha; 1 - beta - n; -w)`.
pub fn a_n_via_2f1(alpha: f64, beta: f64, omega: Complex64, n: u32) -> Result<Complex64> {
    if !(beta > 0.0) {
        return Err(Error::Domain { op: "a_n_via_2f1", value: beta });
    }
    let z = -omega;
    let nf = n as f64;
    let mut term = c(1.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        let ratio = (kf - nf) * (kf - alpha) / ((1.0 - beta - nf + kf) * (kf + 1.0));
        term = term * z * ratio;
        sum += term;
    }
    Ok(sum * pochhammer_over_factorial(beta, n))
}

/// Scaled hypergeometric function
/// `w_n = Gamma(n - alpha) Gamma(1 + alpha) sin(pi alpha) / n! * 2F1(beta, -n; alpha - n + 1; x)`,
/// with the closed-form limits at `alpha = 0` and `alpha = 1`.
pub fn w_n(alpha: f64, beta: f64, x: Complex64, n: u32) -> Complex64 {
    let nf = n as f64;
    let xn = x.powu(n);
    if alpha == 0.0 {
        return -xn * (PI * pochhammer_over_factorial(beta, n));
    }
    if alpha == 1.0 {
        let xn1 = x.powu(n - 1);
        let k = PI * pochhammer(beta, n - 1) / factorial(n);
        return xn1 * (c(nf) - x * (beta + nf - 1.0)) * k;
    }
    let mut term = c(1.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        let ratio = (beta + kf) * (kf - nf) / ((alpha - nf + 1.0 + kf) * (kf + 1.0));
        term = term * x * ratio;
        sum += term;
    }
    let g1 = gamma(nf - alpha).unwrap_or(f64::NAN);
    let g2 = gamma(1.0 + alpha).unwrap_or(f64::NAN);
    sum * (g1 * g2 * sin_pi(alpha) / factorial(n))
}

/// `A_n(w)` recovered from `w_n(-1/w)`: `(-1)^(n+1) / pi * w^n * w_n(-1/w)`.
pub fn a_n_from_w(alpha: f64, beta: f64, omega: Complex64, n: u32) -> Complex64 {
    let x = -omega.inv();
    omega.powu(n) * w_n(alpha, beta, x, n) * (sign_pow(n + 1) / PI)
}

fn s_over_expm1(s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        s / libm::expm1(s)
    }
}

fn cexp_minus(s: f64, z: Complex64) -> Complex64 {
    // e^s - z
    Complex64::new(libm::exp(s) - z.re, -z.im)
}

/// `w_n` through its Laplace representation, by quadrature.
///
/// The first term carries `sin(pi beta)` times an integral with an `s^-beta`
/// endpoint singularity. At `beta = 1` the product tends to
/// `(-1)^(n+1) pi (-x)^(n-alpha) (1-x)^alpha`, which is used directly.
pub fn w_n_laplace(alpha: f64, beta: f64, x: Complex64, n: u32) -> Result<Complex64> {
    if x.im == 0.0 && x.re >= 0.0 {
        return Err(Error::Domain { op: "w_n_laplace", value: x.re });
    }
    let nf = n as f64;
    let rate = nf - alpha + beta;
    if !(rate > 0.0) {
        return Err(Error::Domain { op: "w_n_laplace", value: rate });
    }
    let upper = (46.0 / rate).max(1.0);
    let ts = TanhSinh::default();
    let neg_x = -x;
    let one_minus_x = c(1.0) - x;

    let first = if beta == 0.0 {
        Complex64::zero()
    } else {
        let lead = principal_pow(neg_x, nf - alpha)? * sign_pow(n + 1);
        if beta == 1.0 {
            lead * principal_pow(one_minus_x, alpha)? * PI
        } else {
            let g0 = principal_pow(one_minus_x, alpha)?;
            let g = |s: f64| {
                let p = principal_pow(cexp_minus(s, x), alpha).unwrap_or(c(f64::NAN));
                p * (libm::pow(s_over_expm1(s), beta) * libm::exp(-nf * s))
            };
            let q = ts.integrate_algebraic(-beta, g0, g, upper)?;
            lead * q.value * sin_pi(beta)
        }
    };

    let second = if alpha == 0.0 {
        Complex64::zero()
    } else {
        let inv_x = x.inv();
        let g = |s: f64| {
            let p = principal_pow(cexp_minus(s, inv_x), -beta).unwrap_or(c(f64::NAN));
            p * (libm::pow(1.0 / s_over_expm1(s), alpha) * libm::exp(-nf * s))
        };
        let g0 = principal_pow(c(1.0) - inv_x, -beta)?;
        let q = ts.integrate_algebraic(alpha, g0, g, upper)?;
        principal_pow(neg_x, -beta)? * q.value * sin_pi(alpha)
    };
    Ok(first + second)
}

/// Brannan margin `A_n(alpha, beta, 1) - |A_n(alpha, beta, e^(i theta))|`.
pub fn brannan_margin(alpha: f64, beta: f64, theta: f64, n: u32) -> f64 {
    let at_one = a_n(alpha, beta, c(1.0), n);
    debug_assert!(at_one.im.abs() <= 1e-12);
    let (sn, cs) = libm::sincos(theta);
    at_one.re - a_n(alpha, beta, Complex64::new(cs, sn), n).norm()
}

/// Closed form of `A_n(alpha, beta, -1) = Gamma(n - alpha + beta) / (Gamma(beta - alpha) n!)`
/// for `alpha <= beta`.
pub fn a_n_at_minus_one(alpha: f64, beta: f64, n: u32) -> Result<f64> {
    Ok(gamma(n as f64 - alpha + beta)? * rgamma(beta - alpha) / factorial(n))
}

/// Margin at `theta = pi` as twice the odd-index part of the coefficient sum.
pub fn margin_at_pi_odd_sum(alpha: f64, beta: f64, n: u32) -> f64 {
    2.0 * (1..=n)
        .step_by(2)
        .map(|k| binom_alpha(alpha, k) * pochhammer_over_factorial(beta, n - k))
        .sum::<f64>()
}

/// The coefficients of `A_n` as a polynomial in `w`, for evaluating one
/// `(alpha, beta, n)` at many points of the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub terms: Vec<f64>,
}

impl Coefficients {
    /// `C(alpha, k) (beta)_(n-k) / (n-k)!`, the same products [`a_n`] sums.
    pub fn direct(alpha: f64, beta: f64, n: u32) -> Self {
        let terms = (0..=n).map(|k| binom_alpha(alpha, k) * pochhammer_over_factorial(beta, n - k)).collect();
        Coefficients { terms }
    }

    /// The terminating-series coefficients of [`a_n_via_2f1`], with `(-1)^k` folded in.
    pub fn via_2f1(alpha: f64, beta: f64, n: u32) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::Domain { op: "Coefficients::via_2f1", value: beta });
        }
        let nf = n as f64;
        let scale = pochhammer_over_factorial(beta, n);
        let mut term = 1.0;
        let mut terms = Vec::with_capacity(n as usize + 1);
        terms.push(scale);
        for k in 0..n {
            let kf = k as f64;
            term *= -(kf - nf) * (kf - alpha) / ((1.0 - beta - nf + kf) * (kf + 1.0));
            terms.push(term * scale);
        }
        Ok(Coefficients { terms })
    }

    /// `A_n(w)`; bit-identical to [`a_n`] for [`direct`](Self::direct) coefficients.
    pub fn at(&self, omega: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut wk = c(1.0);
        for &coef in &self.terms {
            sum += wk * coef;
            wk *= omega;
        }
        sum
    }

    /// `A_n(1) - |A_n(e^(i theta))|`.
    pub fn margin(&self, theta: f64) -> f64 {
        let (sn, cs) = libm::sincos(theta);
        self.at(c(1.0)).re - self.at(Complex64::new(cs, sn)).norm()
    }
}
