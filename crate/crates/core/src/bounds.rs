//! Lower-bound machinery: the integrals `I1, I2`, the scaled difference `H`
//! with its split `H = H2 + E0 + Einf`, the explicit lower bound `P_n` with
//! its multiplier `Q_n`, and the monotonicity functions `J, g, F1, F2, F`.
//!
//! `|m0|` and `|m_inf|` enter as explicit inputs ([`Infima`]), so the
//! formulas can be certified separately from the constants.

use core::f64::consts::{LN_10, LN_2, PI};

use crate::kernels::{a1_minus_a2, a1_with, a2_with, NU_SMALL, c1_over_alpha, g1_over_alpha_with, g2_over_beta_with, Angle, KernelCtx, STerms};
use crate::quad::TanhSinh;
use crate::specfun::{gamma_unchecked, rgamma, sin_pi, upper_incomplete_gamma, EULER_GAMMA};
use crate::{Error, Result};

/// The two kernel infima feeding the remainder bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Infima {
    /// Infimum of `L0` over `s` in `[0, 1]` (negative).
    pub m0: f64,
    /// Infimum of `Linf` over `s >= 1` (negative).
    pub minf: f64,
}

impl Infima {
    pub fn new(m0: f64, minf: f64) -> Self {
        Infima { m0, minf }
    }
}

/// `nu = alpha + beta`
pub fn nu(alpha: f64, beta: f64) -> f64 {
    alpha + beta
}

/// `c1 = (alpha - beta)(1 - beta) / 2`
pub fn c1_coef(alpha: f64, beta: f64) -> f64 {
    0.5 * (alpha - beta) * (1.0 - beta)
}

/// `c2 = (alpha - beta)(1 + alpha) / 2`
pub fn c2_coef(alpha: f64, beta: f64) -> f64 {
    0.5 * (alpha - beta) * (1.0 + alpha)
}

/// Semi-infinite Laplace integrals are cut at `a + TAIL / rate`, where the
/// integrand has decayed below `e^-TAIL` of its scale.
const TAIL: f64 = 60.0;

fn quad() -> TanhSinh {
    TanhSinh::default()
}

fn check_n(n: f64, op: &'static str) -> Result<()> {
    if n > 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { op, value: n })
    }
}

/// `I1 / alpha` with `I1 = Delta^-2 int_0^inf (e^s-1)^-beta [(e^s+1)^alpha - R^alpha] e^(-ns) ds`.
///
/// Requires `beta < 1` (the integral diverges at `beta = 1`).
pub fn i1_over_alpha(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    check_n(n, "i1")?;
    if !(beta < 1.0) {
        return Err(Error::Domain { op: "i1", value: beta });
    }
    let ang = Angle::new(phi);
    let head_fn = |s: f64| {
        let st = STerms::new(s, &ang);
        g1_over_alpha_with(alpha, beta, &ang, &st) * libm::exp(beta * st.ln_s - n * s)
    };
    let q = quad();
    let head = q.integrate_algebraic(-beta, c1_over_alpha(alpha, &ang), head_fn, 1.0)?;
    let tail = q.integrate(
        |s: f64| g1_over_alpha_with(alpha, beta, &ang, &STerms::new(s, &ang)) * libm::exp(-n * s),
        1.0,
        1.0 + TAIL / n,
    )?;
    Ok(head.value + tail.value)
}

/// `I2 / beta` with `I2 = Delta^-2 int_0^inf (e^s-1)^alpha [(e^s+1)^-beta - R^-beta] e^(-ns) ds`.
pub fn i2_over_beta(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    check_n(n, "i2")?;
    let ang = Angle::new(phi);
    let f = |s: f64| g2_over_beta_with(alpha, beta, &ang, &STerms::new(s, &ang)) * libm::exp(-n * s);
    let q = quad();
    let head = q.integrate(f, 0.0, 1.0)?;
    let tail = q.integrate(f, 1.0, 1.0 + TAIL / n)?;
    Ok(head.value + tail.value)
}

/// `I1 >= 0`.
pub fn i1(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    Ok(alpha * i1_over_alpha(alpha, beta, phi, n)?)
}

/// `I2 <= 0`.
pub fn i2(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    Ok(beta * i2_over_beta(alpha, beta, phi, n)?)
}

/// `h = sin(pi beta) I1 + sin(pi alpha) I2`; at `beta = 1` the first term is `pi C1`.
pub fn h(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    let ang = Angle::new(phi);
    let first = if beta == 1.0 {
        PI * alpha * c1_over_alpha(alpha, &ang)
    } else {
        sin_pi(beta) * i1(alpha, beta, phi, n)?
    };
    Ok(first + sin_pi(alpha) * i2(alpha, beta, phi, n)?)
}

/// The scaled difference
/// `H = (1 - alpha) n^(1+alpha-beta) h / (nu sin(pi alpha) sin(pi beta) Gamma(1-beta) Gamma(1+alpha))`,
/// evaluated through `I1/alpha` and `I2/beta` so that the edges are finite.
pub fn h_scaled(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    let v = nu(alpha, beta);
    if !(v > 0.0) {
        return Err(Error::Domain { op: "h_scaled", value: v });
    }
    let ang = Angle::new(phi);
    // Gamma(1 - beta)^-1 I1 / alpha, whose beta -> 1 limit is C1 / alpha
    let t1 = if beta == 1.0 {
        c1_over_alpha(alpha, &ang)
    } else {
        rgamma(1.0 - beta) * i1_over_alpha(alpha, beta, phi, n)?
    };
    let t2 = if alpha == 1.0 {
        0.0
    } else {
        (1.0 - alpha) * gamma_unchecked(1.0 + beta) * rgamma(1.0 + alpha) * i2_over_beta(alpha, beta, phi, n)?
    };
    let scale = libm::pow(n, 1.0 + alpha - beta) / v;
    Ok(scale * (gamma_unchecked(2.0 - alpha) * t1 + t2) / PI)
}

/// Two-term part `H2` of `H`; at `(0, 0)` its limit
/// `A1(0, phi) [ln n + gamma - ln(csc(phi/2) / 4) / 2]`.
pub fn h2_main(alpha: f64, beta: f64, phi: f64, n: f64) -> f64 {
    let ang = Angle::new(phi);
    let v = nu(alpha, beta);
    if v == 0.0 {
        let a = a1_with(0.0, &ang);
        return a * (libm::log(n) + EULER_GAMMA - 0.5 * (ang.ln_csc() - 2.0 * LN_2));
    }
    let a1 = a1_with(alpha, &ang);
    let a2 = a2_with(alpha, beta, &ang);
    let (c1, c2) = (c1_coef(alpha, beta), c2_coef(alpha, beta));
    if v < NU_SMALL {
        let na = libm::pow(n, alpha);
        let split = -libm::expm1(-v * libm::log(n)) + (c1 - libm::pow(n, -v) * c2) / n;
        return na * (a1_minus_a2(alpha, beta, &ang) * (1.0 + c1 / n) + a2 * split) / v;
    }
    (a1 * libm::pow(n, alpha) * (1.0 + c1 / n) - a2 * libm::pow(n, -beta) * (1.0 + c2 / n)) / v
}

/// `E0 = n^(1+alpha-beta) int_0^1 L e^(-ns) ds`.
pub fn e0(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    check_n(n, "e0")?;
    let ctx = KernelCtx::new(alpha, beta, phi);
    let q = quad().integrate(|s: f64| ctx.l(s) * libm::exp(-n * s), 0.0, 1.0)?;
    Ok(libm::pow(n, 1.0 + alpha - beta) * q.value)
}

/// `Einf = n^(1+alpha-beta) int_1^inf L e^(-ns) ds`.
pub fn einf(alpha: f64, beta: f64, phi: f64, n: f64) -> Result<f64> {
    check_n(n, "einf")?;
    let ctx = KernelCtx::new(alpha, beta, phi);
    let q = quad().integrate(|s: f64| ctx.l(s) * libm::exp(-n * s), 1.0, 1.0 + TAIL / n)?;
    Ok(libm::pow(n, 1.0 + alpha - beta) * q.value)
}

/// `Gamma(a, x)` for the `a >= 3` arguments used here; the series and
/// continued fraction converge there, so failure is not expected.
fn upper_gamma(a: f64, x: f64) -> f64 {
    upper_incomplete_gamma(a, x).unwrap_or(f64::NAN)
}

/// Lower bound for `E0`: `m0 Gamma(2 - beta) n^(alpha - 1)`.
pub fn e0_bound(alpha: f64, beta: f64, n: f64, m0: f64) -> f64 {
    m0 * gamma_unchecked(2.0 - beta) * libm::pow(n, alpha - 1.0)
}

/// Lower bound for `Einf`: `m_inf Gamma(3 + alpha, n) n^(-2 - beta)`.
pub fn einf_bound(alpha: f64, beta: f64, n: f64, minf: f64) -> f64 {
    minf * upper_gamma(3.0 + alpha, n) * libm::pow(n, -2.0 - beta)
}

/// Which closed form evaluates `P_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnForm {
    Generic,
    Corner01,
    Corner10,
    Corner11,
    Corner00,
}

impl PnForm {
    pub fn select(alpha: f64, beta: f64, phi: f64) -> Self {
        let pi = phi == PI;
        if alpha == 0.0 && beta == 0.0 {
            return PnForm::Corner00;
        }
        if pi {
            return PnForm::Generic;
        }
        match (alpha == 1.0, beta == 1.0, alpha == 0.0, beta == 0.0) {
            (false, true, true, false) => PnForm::Corner01,
            (true, false, false, true) => PnForm::Corner10,
            (true, true, _, _) => PnForm::Corner11,
            _ => PnForm::Generic,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PnForm::Generic => "generic",
            PnForm::Corner01 => "corner (0,1)",
            PnForm::Corner10 => "corner (1,0)",
            PnForm::Corner11 => "corner (1,1)",
            PnForm::Corner00 => "corner (0,0)",
        }
    }
}

/// `P_n` exactly as the general display: `H2` minus the two remainder bounds.
pub fn p_n_generic(alpha: f64, beta: f64, phi: f64, n: f64, inf: &Infima) -> f64 {
    h2_main(alpha, beta, phi, n) + e0_bound(alpha, beta, n, -inf.m0.abs()) + einf_bound(alpha, beta, n, -inf.minf.abs())
}

/// The explicit lower bound `P_n(alpha, beta, phi)`, with the displayed
/// closed forms on the corners of the `(alpha, beta)` square.
pub fn p_n(alpha: f64, beta: f64, phi: f64, n: f64, inf: &Infima) -> f64 {
    let (m0, mi) = (inf.m0.abs(), inf.minf.abs());
    let ang = Angle::new(phi);
    let d2 = ang.delta * ang.delta;
    let en = libm::exp(-n);
    match PnForm::select(alpha, beta, phi) {
        PnForm::Generic => p_n_generic(alpha, beta, phi, n, inf),
        PnForm::Corner01 => {
            (ang.ln_csc() - ang.csc_minus_one() / (2.0 * n) * (1.0 - 0.5 / n)) / (PI * d2)
                - m0 / n
                - mi * en / n * (1.0 + 2.0 / n + 2.0 / (n * n))
        }
        PnForm::Corner10 => {
            n * (2.0 + 1.0 / n) * 2.0 * ang.sin2_quarter / (PI * d2)
                - m0
                - n * mi * en * (1.0 + 3.0 / n + 6.0 / (n * n) + 6.0 / (n * n * n))
        }
        PnForm::Corner11 => {
            n * 2.0 * ang.sin2_quarter / (PI * d2) - m0 - mi * en * (1.0 + 3.0 / n + 6.0 / (n * n) + 6.0 / (n * n * n))
        }
        PnForm::Corner00 => h2_main(0.0, 0.0, phi, n) - m0 / n - mi * en * (1.0 + 2.0 / n + 2.0 / (n * n)),
    }
}

/// `sin(pi alpha) / (1 - alpha)`, equal to `pi` at `alpha = 1`.
fn sin_pi_over_one_minus(alpha: f64) -> f64 {
    let t = 1.0 - alpha;
    if t == 0.0 {
        PI
    } else {
        sin_pi(t) / t
    }
}

/// Multiplier `Q_n = pi nu sin(pi alpha) Gamma(1+alpha) Delta^2 / ((1-alpha) Gamma(beta) n^(1+alpha-beta)) >= 0`.
pub fn q_n(alpha: f64, beta: f64, phi: f64, n: f64) -> f64 {
    let d = PI - phi;
    PI * nu(alpha, beta) * sin_pi_over_one_minus(alpha) * gamma_unchecked(1.0 + alpha) * d * d * rgamma(beta)
        / libm::pow(n, 1.0 + alpha - beta)
}

/// `g(n) = Gamma(3 + alpha, n) n^(-1 - nu)`.
pub fn g_fn(alpha: f64, beta: f64, n: f64) -> f64 {
    upper_gamma(3.0 + alpha, n) * libm::pow(n, -1.0 - nu(alpha, beta))
}

/// `g'(n) = -(1 + nu) n^(-2-nu) Gamma(3+alpha, n) - n^(1-beta) e^(-n)`.
pub fn g_prime(alpha: f64, beta: f64, n: f64) -> f64 {
    let v = nu(alpha, beta);
    -(1.0 + v) * libm::pow(n, -2.0 - v) * upper_gamma(3.0 + alpha, n) - libm::pow(n, 1.0 - beta) * libm::exp(-n)
}

/// `J = n^(1 - alpha) P_n`, through its expanded form.
pub fn j_fn(alpha: f64, beta: f64, phi: f64, n: f64, inf: &Infima) -> f64 {
    let v = nu(alpha, beta);
    if v == 0.0 {
        return n * p_n(0.0, 0.0, phi, n, inf);
    }
    let ang = Angle::new(phi);
    let a1 = a1_with(alpha, &ang);
    let a2 = a2_with(alpha, beta, &ang);
    let (c1, c2) = (c1_coef(alpha, beta), c2_coef(alpha, beta));
    let main = if v < NU_SMALL {
        let split = -n * libm::expm1(-v * libm::log(n)) + c1 - libm::pow(n, -v) * c2;
        (a1_minus_a2(alpha, beta, &ang) * (n + c1) + a2 * split) / v
    } else {
        (a1 * (n + c1) - libm::pow(n, -v) * a2 * (n + c2)) / v
    };
    main - inf.m0.abs() * gamma_unchecked(2.0 - beta)
        - inf.minf.abs() * g_fn(alpha, beta, n)
}

/// `dJ/dn` in closed form.
pub fn j_derivative(alpha: f64, beta: f64, phi: f64, n: f64, inf: &Infima) -> f64 {
    let v = nu(alpha, beta);
    let ang = Angle::new(phi);
    let tail = -inf.minf.abs() * g_prime(alpha, beta, n);
    if v == 0.0 {
        let a = a1_with(0.0, &ang);
        return a * (libm::log(n) + 1.0 + EULER_GAMMA - 0.5 * (ang.ln_csc() - 2.0 * LN_2)) + tail;
    }
    let a1 = a1_with(alpha, &ang);
    let a2 = a2_with(alpha, beta, &ang);
    let last = a2 * c2_coef(alpha, beta) * libm::pow(n, -1.0 - v) + tail;
    if v < NU_SMALL {
        return (a1_minus_a2(alpha, beta, &ang) + a2 * one_minus_shrink(v, n)) / v + last;
    }
    a1 / v - (1.0 - v) * a2 * libm::pow(n, -v) / v + last
}

/// `F1 = [A1 - max(1 - nu, 0) 5^-nu A2] / nu`, the bound on `dJ/dn` for `alpha >= beta`.
pub fn f1(alpha: f64, beta: f64, phi: f64) -> f64 {
    let ang = Angle::new(phi);
    let v = nu(alpha, beta);
    if v == 0.0 {
        return f00(&ang);
    }
    if alpha == 1.0 && beta == 1.0 && phi != PI {
        return 2.0 * ang.sin2_quarter / (PI * ang.delta * ang.delta);
    }
    let a2 = a2_with(alpha, beta, &ang);
    if v < NU_SMALL {
        return (a1_minus_a2(alpha, beta, &ang) + a2 * one_minus_shrink(v, 5.0)) / v;
    }
    let a1 = a1_with(alpha, &ang);
    (a1 - (1.0 - v).max(0.0) * libm::pow(5.0, -v) * a2) / v
}

/// `1 - (1 - nu) n^-nu`, accurate for small `nu`.
fn one_minus_shrink(v: f64, n: f64) -> f64 {
    -libm::expm1(libm::log1p(-v) - v * libm::log(n))
}

/// `F2 = [A1 - 5^-nu (|1 - nu| + nu |c2| / 5) A2] / nu`, the bound on `dJ/dn` for `alpha < beta`.
pub fn f2(alpha: f64, beta: f64, phi: f64) -> f64 {
    let ang = Angle::new(phi);
    let v = nu(alpha, beta);
    if v == 0.0 {
        return f00(&ang);
    }
    let a1 = a1_with(alpha, &ang);
    if beta == 1.0 && phi != PI {
        let c2_1 = ang.csc_minus_one() / (2.0 * ang.delta * ang.delta);
        let k = alpha + 0.1 * (1.0 + alpha) * (1.0 + alpha) * (1.0 - alpha);
        return (a1 - (1.0 - alpha) * c2_1 / (libm::pow(5.0, 1.0 + alpha) * PI) * k) / (1.0 + alpha);
    }
    let a2 = a2_with(alpha, beta, &ang);
    if v < NU_SMALL {
        let last = libm::pow(5.0, -v) * c2_coef(alpha, beta).abs() / 5.0 * a2;
        return (a1_minus_a2(alpha, beta, &ang) + a2 * one_minus_shrink(v, 5.0)) / v - last;
    }
    (a1 - libm::pow(5.0, -v) * ((1.0 - v).abs() + v * c2_coef(alpha, beta).abs() / 5.0) * a2) / v
}

/// Common `(0, 0)` limit of `F1` and `F2`:
/// `ln csc(phi/2) [2(1 + gamma + ln 10) + ln sin(phi/2)] / (2 pi Delta^2)`.
fn f00(ang: &Angle) -> f64 {
    a1_with(0.0, ang) * (1.0 + EULER_GAMMA + LN_10 + 0.25 * ang.l0)
}

/// `F = F1` for `alpha >= beta`, `F2` otherwise.
pub fn f_combined(alpha: f64, beta: f64, phi: f64) -> f64 {
    if alpha >= beta {
        f1(alpha, beta, phi)
    } else {
        f2(alpha, beta, phi)
    }
}
