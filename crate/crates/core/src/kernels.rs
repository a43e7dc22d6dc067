//! Watson-expansion coefficients `C1, C2, A1, A2` and remainder kernels
//! `K1, K2, G1, G2, L, L0, Linf`, with their boundary limits.
//!
//! Everything is expressed through `q = cos^2(phi/2)`, `sigma = sech^2(s/2)`
//! and `u = q sigma`, using `R^2 = (e^s + 1)^2 (1 - u)`. Differences of
//! powers of `R` and `e^s + 1` become `expm1(a ln(1 - u))`, which stays
//! accurate near `phi = pi`, near `s = 0` and (in logarithmic form) for
//! arbitrarily large `s`.
//!
//! Boundary dispatch is by exact equality: `alpha, beta` in `{0, 1}` and
//! `phi = pi`.

use core::f64::consts::{LN_2, PI};

use crate::specfun::{gamma_unchecked, ln_gamma1p_small, rgamma};

/// The angular margin `phi_0`.
pub const PHI0: f64 = 0.061;

/// Below this `nu = alpha + beta` the `1/nu` forms are evaluated as divided
/// differences; the direct forms lose about `eps / nu`.
pub const NU_SMALL: f64 = 0.05;

/// Switch from positive- to negative-exponent evaluation.
pub const S_STAR: f64 = 1.0;

/// Angle-dependent quantities.
#[derive(Debug, Clone, Copy)]
pub struct Angle {
    pub phi: f64,
    /// `pi - phi`
    pub delta: f64,
    /// `cos^2(phi/2) = sin^2(delta/2)`
    pub q: f64,
    /// `sin^2(phi/2)`
    pub p: f64,
    /// `sin(phi/2)`
    pub sin_half: f64,
    /// `sin^2(delta/4)`, so that `1 - sin(phi/2) = 2 sin^2(delta/4)`
    pub sin2_quarter: f64,
    /// `ln sin^2(phi/2) = ln(1 - q)`
    pub l0: f64,
    pub ln_q: f64,
}

impl Angle {
    pub fn new(phi: f64) -> Self {
        let delta = PI - phi;
        let sin_half = libm::sin(0.5 * phi);
        let cos_half = libm::sin(0.5 * delta);
        let q = cos_half * cos_half;
        let p = sin_half * sin_half;
        let l0 = if q < 0.5 { libm::log1p(-q) } else { 2.0 * libm::log(sin_half) };
        let sq = libm::sin(0.25 * delta);
        Angle { phi, delta, q, p, sin_half, sin2_quarter: sq * sq, l0, ln_q: 2.0 * libm::log(cos_half) }
    }

    pub fn is_pi(&self) -> bool {
        self.phi == PI
    }

    /// `ln csc(phi/2)`
    pub fn ln_csc(&self) -> f64 {
        -0.5 * self.l0
    }

    /// `csc(phi/2) - 1`
    pub fn csc_minus_one(&self) -> f64 {
        2.0 * self.sin2_quarter / self.sin_half
    }
}

/// `(s, phi)`-dependent quantities shared by all kernels.
#[derive(Debug, Clone, Copy)]
pub struct STerms {
    pub s: f64,
    pub ln_s: f64,
    /// `ln(s / (e^s - 1))`
    pub ln_a: f64,
    /// `ln((e^s + 1) / 2)`
    pub ln_b: f64,
    /// `tanh^2(s/2)`
    pub t2: f64,
    pub ln_t2: f64,
    /// `sech^2(s/2)`
    pub sigma: f64,
    pub ln_sigma: f64,
    /// `u = q sigma`
    pub u: f64,
    pub ln_u: f64,
    /// `ln(1 - u) = 2 ln(R / (e^s + 1))`
    pub l: f64,
    /// `l - l0 = ln(1 + q tanh^2(s/2) / p)`
    pub d: f64,
    /// `ln(sinh(s/2) / (s/2))`
    pub ln_sinhc: f64,
    /// `ln cosh(s/2)`
    pub ln_cosh: f64,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

/// `ln(sinh x / x)` for `x >= 0`.
pub fn ln_sinhc(x: f64) -> f64 {
    if x < 0.5 {
        const C: [f64; 10] = [
            1.0 / 6.0,
            -1.0 / 180.0,
            1.0 / 2835.0,
            -1.0 / 37800.0,
            1.0 / 467_775.0,
            -691.0 / 3_831_077_250.0,
            2.0 / 127_702_575.0,
            -3617.0 / 2_605_132_530_000.0,
            43867.0 / 350_813_659_321_125.0,
            -174_611.0 / 15_313_294_652_906_250.0,
        ];
        let x2 = x * x;
        x2 * horner(&C, x2)
    } else {
        x + libm::log1p(-libm::exp(-2.0 * x)) - LN_2 - libm::log(x)
    }
}

/// `expm1(x) - x`.
pub fn expm1_minus_x(x: f64) -> f64 {
    if x.abs() < 0.5 {
        let mut term = 0.5 * x * x;
        let mut sum = term;
        for k in 3..=18 {
            term *= x / k as f64;
            sum += term;
        }
        sum
    } else {
        libm::expm1(x) - x
    }
}

/// `ln(expm1(z) / z)`, with absolute error a few ulps of `|z|`.
pub fn ln_expm1_ratio(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else {
        libm::log1p(expm1_minus_x(z) / z)
    }
}

/// `tanh x - x` for `x >= 0`.
pub fn tanh_minus_x(x: f64) -> f64 {
    if x < 0.2 {
        const C: [f64; 9] = [
            -1.0 / 3.0,
            2.0 / 15.0,
            -17.0 / 315.0,
            62.0 / 2835.0,
            -1382.0 / 155_925.0,
            21844.0 / 6_081_075.0,
            -929_569.0 / 638_512_875.0,
            6_404_582.0 / 10_854_718_875.0,
            -443_861_162.0 / 1_856_156_927_625.0,
        ];
        let x2 = x * x;
        x * x2 * horner(&C, x2)
    } else {
        libm::tanh(x) - x
    }
}

impl STerms {
    /// Requires `s > 0`.
    pub fn new(s: f64, ang: &Angle) -> Self {
        let ln_s = libm::log(s);
        let x = 0.5 * s;
        let lsc = ln_sinhc(x);
        let (lch, t2, ln_t2);
        if s < S_STAR {
            let sh = libm::sinh(x);
            lch = 0.5 * libm::log1p(sh * sh);
            let t = libm::tanh(x);
            t2 = t * t;
            ln_t2 = 2.0 * libm::log(t);
        } else {
            let e = libm::exp(-s);
            lch = x + libm::log1p(e) - LN_2;
            ln_t2 = 2.0 * (libm::log1p(-e) - libm::log1p(e));
            t2 = libm::exp(ln_t2);
        }
        let ln_sigma = -2.0 * lch;
        let sigma = libm::exp(ln_sigma);
        let u = ang.q * sigma;
        let ln_u = ang.ln_q + ln_sigma;
        let l = if u < 0.5 { libm::log1p(-u) } else { libm::log(ang.p + ang.q * t2) };
        let d = libm::log1p(ang.q * t2 / ang.p);
        STerms {
            s,
            ln_s,
            ln_a: -x - lsc,
            ln_b: x + lch,
            t2,
            ln_t2,
            sigma,
            ln_sigma,
            u,
            ln_u,
            l,
            d,
            ln_sinhc: lsc,
            ln_cosh: lch,
        }
    }

    /// `ln |expm1(a l)|`, or `ln(-l)` for `a = 0`.
    fn ln_abs_em1(&self, a: f64) -> f64 {
        if self.ln_u < -36.0 {
            // expm1(a ln(1-u)) = -a u (1 + O(u))
            return if a == 0.0 { self.ln_u } else { libm::log(a.abs()) + self.ln_u };
        }
        if a == 0.0 {
            libm::log(-self.l)
        } else {
            libm::log(libm::expm1(a * self.l).abs())
        }
    }

    /// `ln((e^s + 1) (1 - e^(l/2)))`, i.e. `ln(e^s + 1 - R)`.
    fn ln_gap(&self) -> f64 {
        self.ln_b + LN_2 + self.ln_abs_em1(0.5)
    }

    /// `ln(tanh(s/2) / (s/2))`
    fn ln_tanh_ratio(&self) -> f64 {
        self.ln_sinhc - self.ln_cosh
    }
}

/// `C1 / alpha`, continuous at `alpha = 0` and at `phi = pi`.
pub fn c1_over_alpha(alpha: f64, ang: &Angle) -> f64 {
    if ang.delta == 0.0 {
        return libm::exp2(alpha) / 8.0;
    }
    let d2 = ang.delta * ang.delta;
    if alpha == 0.0 {
        -ang.l0 / (2.0 * d2)
    } else {
        libm::exp2(alpha) * -libm::expm1(0.5 * alpha * ang.l0) / (alpha * d2)
    }
}

/// `C2 / beta`, continuous at `beta = 0` and at `phi = pi`.
pub fn c2_over_beta(beta: f64, ang: &Angle) -> f64 {
    if ang.delta == 0.0 {
        return libm::exp2(-beta) / 8.0;
    }
    let d2 = ang.delta * ang.delta;
    if beta == 0.0 {
        -ang.l0 / (2.0 * d2)
    } else {
        libm::exp2(-beta) * libm::expm1(-0.5 * beta * ang.l0) / (beta * d2)
    }
}

/// `C1(alpha, phi) = [2^alpha - (2 sin(phi/2))^alpha] / (pi - phi)^2`.
pub fn c1(alpha: f64, phi: f64) -> f64 {
    alpha * c1_over_alpha(alpha, &Angle::new(phi))
}

/// `C2(beta, phi) = [(2 sin(phi/2))^-beta - 2^-beta] / (pi - phi)^2`.
pub fn c2(beta: f64, phi: f64) -> f64 {
    beta * c2_over_beta(beta, &Angle::new(phi))
}

/// `A1 = (1 - alpha) C1 / (sin(pi alpha) Gamma(1 + alpha)) = Gamma(2 - alpha) (C1/alpha) / pi`.
pub fn a1_with(alpha: f64, ang: &Angle) -> f64 {
    if ang.is_pi() {
        return libm::exp2(alpha) * gamma_unchecked(2.0 - alpha) / (8.0 * PI);
    }
    let d2 = ang.delta * ang.delta;
    if alpha == 0.0 {
        ang.ln_csc() / (PI * d2)
    } else if alpha == 1.0 {
        4.0 * ang.sin2_quarter / (PI * d2)
    } else {
        gamma_unchecked(2.0 - alpha) * c1_over_alpha(alpha, ang) / PI
    }
}

/// `A2 = (1 - alpha) Gamma(beta) C2 / pi = (1 - alpha) Gamma(1 + beta) (C2/beta) / pi`.
pub fn a2_with(alpha: f64, beta: f64, ang: &Angle) -> f64 {
    if ang.is_pi() {
        return (1.0 - alpha) * gamma_unchecked(1.0 + beta) / (8.0 * PI * libm::exp2(beta));
    }
    let d2 = ang.delta * ang.delta;
    if beta == 0.0 {
        (1.0 - alpha) * ang.ln_csc() / (PI * d2)
    } else if beta == 1.0 {
        (1.0 - alpha) * ang.csc_minus_one() / (2.0 * PI * d2)
    } else {
        (1.0 - alpha) * gamma_unchecked(1.0 + beta) * c2_over_beta(beta, ang) / PI
    }
}

/// `A1(alpha) - A2(alpha, beta)` for `nu < NU_SMALL`, to full relative accuracy.
///
/// With `g(x) = Gamma(1 - x) C1(x)/x`, `A1 = (1 - alpha) g(alpha) / pi` and
/// `A2 = (1 - alpha) g(-beta) / pi`; the difference is taken through
/// `ln g(alpha) - ln g(-beta)`, every piece of which is small.
pub fn a1_minus_a2(alpha: f64, beta: f64, ang: &Angle) -> f64 {
    let nu = alpha + beta;
    let (k0, hd) = if ang.delta == 0.0 {
        (0.125, 0.0)
    } else {
        let z = 0.5 * ang.l0;
        (-z / (ang.delta * ang.delta), ln_expm1_ratio(alpha * z) - ln_expm1_ratio(-beta * z))
    };
    let ln_g_beta = ln_gamma1p_small(beta) - beta * LN_2 + if ang.delta == 0.0 { 0.0 } else { ln_expm1_ratio(-0.5 * beta * ang.l0) };
    let dg = ln_gamma1p_small(-alpha) - ln_gamma1p_small(beta) + nu * LN_2 + hd;
    (1.0 - alpha) / PI * k0 * libm::exp(ln_g_beta) * libm::expm1(dg)
}

pub fn a1_coef(alpha: f64, phi: f64) -> f64 {
    a1_with(alpha, &Angle::new(phi))
}

pub fn a2_coef(alpha: f64, beta: f64, phi: f64) -> f64 {
    a2_with(alpha, beta, &Angle::new(phi))
}

/// Which closed form evaluates `L` at a given `(alpha, beta, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Generic Watson remainder, including every `phi = pi` composition.
    Generic,
    /// `(0, 0)`, `phi < pi`: log-difference form.
    Corner00,
    /// `(0, 0, pi)`.
    Corner00Pi,
    /// `(0, 1)`, `phi < pi`.
    Corner01,
    /// `(1, 0)`, `phi < pi`.
    Corner10,
    /// `(1, 1)`: `L` vanishes identically.
    Zero,
    /// `0 < nu < NU_SMALL`: the generic form as a divided difference.
    NearOrigin,
}

impl Formula {
    pub fn select(alpha: f64, beta: f64, phi: f64) -> Self {
        let pi = phi == PI;
        match (alpha, beta) {
            (a, b) if a == 1.0 && b == 1.0 => Formula::Zero,
            (a, b) if a == 0.0 && b == 0.0 => {
                if pi {
                    Formula::Corner00Pi
                } else {
                    Formula::Corner00
                }
            }
            (a, b) if a == 0.0 && b == 1.0 && !pi => Formula::Corner01,
            (a, b) if a == 1.0 && b == 0.0 && !pi => Formula::Corner10,
            (a, b) if a + b < NU_SMALL => Formula::NearOrigin,
            _ => Formula::Generic,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Formula::Generic => "generic",
            Formula::Corner00 => "corner (0,0) log-difference form",
            Formula::Corner00Pi => "corner (0,0,pi)",
            Formula::Corner01 => "corner (0,1)",
            Formula::Corner10 => "corner (1,0)",
            Formula::Zero => "corner (1,1): identically zero",
            Formula::NearOrigin => "generic, divided-difference form",
        }
    }
}

/// Everything about `L(alpha, beta, phi; .)` that does not depend on `s`.
#[derive(Debug, Clone, Copy)]
pub struct KernelCtx {
    pub alpha: f64,
    pub beta: f64,
    pub angle: Angle,
    pub formula: Formula,
    /// `A1 / (nu Gamma(1 - beta))`
    w1: f64,
    /// `A2 / (nu Gamma(1 + alpha))`
    w2: f64,
    ln_den1: f64,
    ln_den2: f64,
    /// `e^(a l0) / expm1(a l0)` (or `1 / l0` at `a = 0`) for `a = alpha/2, -beta/2`
    pre1: f64,
    pre2: f64,
}

fn ratio_prefactor(a: f64, l0: f64) -> (f64, f64) {
    if a == 0.0 {
        (libm::log(-l0), 1.0 / l0)
    } else {
        let em1 = libm::expm1(a * l0);
        (libm::log(em1.abs()), libm::exp(a * l0) / em1)
    }
}

impl KernelCtx {
    pub fn new(alpha: f64, beta: f64, phi: f64) -> Self {
        let angle = Angle::new(phi);
        let formula = Formula::select(alpha, beta, phi);
        let nu = alpha + beta;
        let (mut w1, mut w2) = (0.0, 0.0);
        if matches!(formula, Formula::Generic | Formula::NearOrigin) {
            w1 = a1_with(alpha, &angle) * rgamma(1.0 - beta) / nu;
            w2 = a2_with(alpha, beta, &angle) * rgamma(1.0 + alpha) / nu;
        }
        let l0 = angle.l0;
        let (ln_den1, pre1) = ratio_prefactor(0.5 * alpha, l0);
        let (ln_den2, pre2) = ratio_prefactor(-0.5 * beta, l0);
        KernelCtx { alpha, beta, angle, formula, w1, w2, ln_den1, ln_den2, pre1, pre2 }
    }

    pub fn s_terms(&self, s: f64) -> STerms {
        STerms::new(s, &self.angle)
    }

    /// `ln` of `(R^a - (e^s+1)^a) / ((2 sin(phi/2))^a - 2^a)` for `a = alpha` (index 1)
    /// or `a = -beta` (index 2); tends to `sigma` at `phi = pi`.
    ///
    /// Below `S_STAR` the ratio is `1 + e^(a l0) expm1(a d) / expm1(a l0)`,
    /// which keeps its distance from 1 to full relative accuracy.
    fn ln_ratio(&self, st: &STerms, a_half: f64, ln_den: f64, pre: f64) -> f64 {
        if self.angle.q == 0.0 {
            st.ln_sigma
        } else if st.s < S_STAR {
            let e = if a_half == 0.0 { st.d } else { libm::expm1(a_half * st.d) };
            libm::log1p(pre * e)
        } else {
            st.ln_abs_em1(a_half) - ln_den
        }
    }

    /// `X - 1 - h` given `ln X = h + r`, with `h = (alpha - beta) s / 2`.
    fn x_minus_linear(&self, st: &STerms, r: f64) -> f64 {
        let h = 0.5 * (self.alpha - self.beta) * st.s;
        if st.s < S_STAR {
            expm1_minus_x(h) + libm::exp(h) * libm::expm1(r)
        } else {
            libm::expm1(h + r) - h
        }
    }

    /// `s^2 K1 = X1 - 1 - (alpha - beta) s / 2`.
    pub fn s2k1(&self, st: &STerms) -> f64 {
        let lr = self.ln_ratio(st, 0.5 * self.alpha, self.ln_den1, self.pre1);
        self.x_minus_linear(st, -self.beta * st.ln_sinhc + self.alpha * st.ln_cosh + lr)
    }

    /// `s^2 K2 = X2 - 1 - (alpha - beta) s / 2`.
    pub fn s2k2(&self, st: &STerms) -> f64 {
        let lr = self.ln_ratio(st, -0.5 * self.beta, self.ln_den2, self.pre2);
        self.x_minus_linear(st, self.alpha * st.ln_sinhc - self.beta * st.ln_cosh + lr)
    }

    /// `L` from precomputed `s`-terms, split as `(s^-beta-part, s^alpha-part)`
    /// so callers can apply their own power of `s`.
    fn generic_parts(&self, st: &STerms) -> (f64, f64) {
        (self.w1 * self.s2k1(st), self.w2 * self.s2k2(st))
    }

    fn corner00(&self, st: &STerms) -> f64 {
        let ang = &self.angle;
        let c = 0.5 * ang.l0;
        let delta = -0.5 * st.d;
        let t = 2.0 * st.ln_tanh_ratio();
        let b = -2.0 * st.ln_s * delta - delta * (t + delta - 2.0 * LN_2 - 2.0 * c) + c * t;
        b / (2.0 * PI * ang.delta * ang.delta)
    }

    fn corner00_pi(&self, st: &STerms) -> f64 {
        (st.t2 * (st.ln_s - LN_2) - st.sigma * st.ln_tanh_ratio()) / (8.0 * PI)
    }

    fn corner01(&self, st: &STerms) -> f64 {
        let ang = &self.angle;
        if st.s < S_STAR {
            // with e^(-l/2) = e^(-d/2) / sin(phi/2) and (1 - s/2) - 2/(e^s+1) = tanh(s/2) - s/2
            let inner = ang.sin2_quarter * tanh_minus_x(0.5 * st.s) - libm::expm1(-0.5 * st.d) * libm::exp(-(st.ln_b + LN_2));
            return inner / (ang.sin_half * PI * ang.delta * ang.delta);
        }
        // -1/R + 1/(e^s+1) = -expm1(-l/2) / (e^s + 1)
        let tail = libm::expm1(-0.5 * st.l) * libm::exp(-(st.ln_b + LN_2));
        let lead = ang.sin2_quarter / ang.sin_half * (1.0 - 0.5 * st.s);
        (lead - tail) / (PI * ang.delta * ang.delta)
    }

    fn corner10(&self, st: &STerms) -> f64 {
        let ang = &self.angle;
        if st.s < S_STAR {
            // 1 - e^(l/2) = 2 sin^2(delta/4) - sin(phi/2) expm1(d/2)
            let ep1 = libm::exp(st.ln_b + LN_2);
            let inner = 2.0 * ang.sin2_quarter * expm1_minus_x(st.s) - ep1 * ang.sin_half * libm::expm1(0.5 * st.d);
            return inner / (PI * ang.delta * ang.delta);
        }
        // sin(phi/2)(s+2) - R + e^s - s - 1 = (e^s + 1 - R) - 2 sin^2(delta/4)(s+2)
        let gap = libm::exp(st.ln_gap());
        (gap - 2.0 * ang.sin2_quarter * (st.s + 2.0)) / (PI * ang.delta * ang.delta)
    }

    /// `L = (T1 - T2) / nu` with `T1 = A1 s^-beta s^2K1 / Gamma(1 - beta)` and
    /// `T2 = A2 s^alpha s^2K2 / Gamma(1 + alpha)`, expanding `T1 - T2` factor
    /// by factor so that each difference is formed from small logarithms.
    fn near_origin(&self, st: &STerms) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let nu = a + b;
        let ang = &self.angle;
        let p2 = a2_with(a, b, ang);
        let (lg1, lg2) = (ln_gamma1p_small(-b), ln_gamma1p_small(a));
        let (q1, q2) = (libm::exp(-lg1), libm::exp(-lg2));
        let (s1, s2) = (libm::exp(-b * st.ln_s), libm::exp(a * st.ln_s));
        let r1 = -b * st.ln_sinhc + a * st.ln_cosh + self.ln_ratio(st, 0.5 * a, self.ln_den1, self.pre1);
        let r2 = a * st.ln_sinhc - b * st.ln_cosh + self.ln_ratio(st, -0.5 * b, self.ln_den2, self.pre2);
        let m1 = self.x_minus_linear(st, r1);

        let dp = a1_minus_a2(a, b, ang);
        let dq = q2 * libm::expm1(lg2 - lg1);
        let ds = s2 * libm::expm1(-nu * st.ln_s);
        let dh = |z: f64| ln_expm1_ratio(0.5 * a * z) - ln_expm1_ratio(-0.5 * b * z);
        let dlr = if ang.q == 0.0 { 0.0 } else { dh(st.l) - dh(ang.l0) };
        let x2 = libm::exp(0.5 * (a - b) * st.s + r2);
        let dm = x2 * libm::expm1(-nu * st.ln_tanh_ratio() + dlr);
        (dp * q1 * s1 * m1 + p2 * dq * s1 * m1 + p2 * q2 * ds * m1 + p2 * q2 * s2 * dm) / nu
    }

    /// `L(alpha, beta, phi; s)` for `s > 0` from precomputed terms.
    pub fn l_terms(&self, st: &STerms) -> f64 {
        match self.formula {
            Formula::Generic => {
                let (p1, p2) = self.generic_parts(st);
                p1 * libm::exp(-self.beta * st.ln_s) - p2 * libm::exp(self.alpha * st.ln_s)
            }
            Formula::Corner00 => self.corner00(st),
            Formula::Corner00Pi => self.corner00_pi(st),
            Formula::Corner01 => self.corner01(st),
            Formula::Corner10 => self.corner10(st),
            Formula::Zero => 0.0,
            Formula::NearOrigin => self.near_origin(st),
        }
    }

    /// `L0 = s^(beta - 1) L` from precomputed terms.
    pub fn l0_terms(&self, st: &STerms) -> f64 {
        match self.formula {
            Formula::Generic => {
                let (p1, p2) = self.generic_parts(st);
                p1 / st.s - p2 * libm::exp((self.alpha + self.beta - 1.0) * st.ln_s)
            }
            _ => self.l_terms(st) * libm::exp((self.beta - 1.0) * st.ln_s),
        }
    }

    /// `Linf = s^(-2 - alpha) L` from precomputed terms.
    pub fn linf_terms(&self, st: &STerms) -> f64 {
        match self.formula {
            Formula::Generic => {
                let (p1, p2) = self.generic_parts(st);
                p1 * libm::exp(-(2.0 + self.alpha + self.beta) * st.ln_s) - p2 / (st.s * st.s)
            }
            _ => self.l_terms(st) * libm::exp(-(2.0 + self.alpha) * st.ln_s),
        }
    }

    pub fn l(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        self.l_terms(&self.s_terms(s))
    }

    pub fn l0(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        self.l0_terms(&self.s_terms(s))
    }

    pub fn linf(&self, s: f64) -> f64 {
        self.linf_terms(&self.s_terms(s))
    }
}

/// `K1(alpha, beta, phi; s)`, `s > 0`.
pub fn k1(alpha: f64, beta: f64, phi: f64, s: f64) -> crate::Result<f64> {
    check_s(s, "k1")?;
    let ctx = KernelCtx::new(alpha, beta, phi);
    Ok(ctx.s2k1(&ctx.s_terms(s)) / (s * s))
}

/// `K2(alpha, beta, phi; s)`, `s > 0`.
pub fn k2(alpha: f64, beta: f64, phi: f64, s: f64) -> crate::Result<f64> {
    check_s(s, "k2")?;
    let ctx = KernelCtx::new(alpha, beta, phi);
    Ok(ctx.s2k2(&ctx.s_terms(s)) / (s * s))
}

fn check_s(s: f64, op: &'static str) -> crate::Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(crate::Error::Domain { op, value: s })
    }
}

/// `ln(e^s + 1)` and `ln(e^s - 1)`.
fn ln_pm(st: &STerms) -> (f64, f64) {
    (st.ln_b + LN_2, st.ln_s - st.ln_a)
}

/// `G1 / alpha`, finite at `alpha = 0` (where it is `ln((e^s+1)/R) / (Delta^2 (e^s-1)^beta)`).
pub fn g1_over_alpha_with(alpha: f64, beta: f64, ang: &Angle, st: &STerms) -> f64 {
    let (ln_p, ln_m) = ln_pm(st);
    let scale = libm::exp(alpha * ln_p - beta * ln_m);
    if ang.delta == 0.0 {
        return scale * st.sigma / 8.0;
    }
    let d2 = ang.delta * ang.delta;
    if alpha == 0.0 {
        scale * 0.5 * libm::exp(st.ln_abs_em1(0.0)) / d2
    } else {
        scale * libm::exp(st.ln_abs_em1(0.5 * alpha)) / (alpha * d2)
    }
}

/// `G2 / beta`, finite at `beta = 0`.
pub fn g2_over_beta_with(alpha: f64, beta: f64, ang: &Angle, st: &STerms) -> f64 {
    let (ln_p, ln_m) = ln_pm(st);
    let scale = libm::exp(alpha * ln_m - beta * ln_p);
    if ang.delta == 0.0 {
        return -scale * st.sigma / 8.0;
    }
    let d2 = ang.delta * ang.delta;
    if beta == 0.0 {
        -scale * 0.5 * libm::exp(st.ln_abs_em1(0.0)) / d2
    } else {
        -scale * libm::exp(st.ln_abs_em1(-0.5 * beta)) / (beta * d2)
    }
}

/// `G1 = [(e^s+1)^alpha - R^alpha] / (Delta^2 (e^s-1)^beta)`, with its `phi = pi` limit.
pub fn g1(alpha: f64, beta: f64, phi: f64, s: f64) -> crate::Result<f64> {
    check_s(s, "g1")?;
    let ang = Angle::new(phi);
    Ok(alpha * g1_over_alpha_with(alpha, beta, &ang, &STerms::new(s, &ang)))
}

/// `G2 = (e^s-1)^alpha [(e^s+1)^-beta - R^-beta] / Delta^2`, with its `phi = pi` limit.
pub fn g2(alpha: f64, beta: f64, phi: f64, s: f64) -> crate::Result<f64> {
    check_s(s, "g2")?;
    let ang = Angle::new(phi);
    Ok(beta * g2_over_beta_with(alpha, beta, &ang, &STerms::new(s, &ang)))
}

/// `L(alpha, beta, phi; s)`; `L(., ., .; 0) = 0`.
pub fn l_kernel(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
    KernelCtx::new(alpha, beta, phi).l(s)
}

/// `L0 = s^(beta - 1) L` on `s` in `[0, 1]`, with `L0(., ., .; 0) = 0`.
pub fn l0(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
    KernelCtx::new(alpha, beta, phi).l0(s)
}

/// `Linf = s^(-2 - alpha) L` on `s >= 1`.
pub fn linf(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
    KernelCtx::new(alpha, beta, phi).linf(s)
}

/// Literal transcriptions of the kernel definitions, with no rewriting.
///
/// They lose accuracy near `phi = pi`, near `s = 0` and overflow for large
/// `s`; they exist only to cross-check the stable forms where both are valid.
pub mod naive {
    use core::f64::consts::PI;

    use crate::specfun::{gamma_unchecked, r_dist, rgamma};

    fn two_sin(phi: f64) -> f64 {
        2.0 * libm::sin(0.5 * phi)
    }

    pub fn c1(alpha: f64, phi: f64) -> f64 {
        let d = PI - phi;
        (libm::exp2(alpha) - libm::pow(two_sin(phi), alpha)) / (d * d)
    }

    pub fn c2(beta: f64, phi: f64) -> f64 {
        let d = PI - phi;
        (libm::pow(two_sin(phi), -beta) - libm::exp2(-beta)) / (d * d)
    }

    pub fn a1(alpha: f64, phi: f64) -> f64 {
        (1.0 - alpha) * c1(alpha, phi) / (libm::sin(PI * alpha) * gamma_unchecked(1.0 + alpha))
    }

    pub fn a2(alpha: f64, beta: f64, phi: f64) -> f64 {
        (1.0 - alpha) * c2(beta, phi) / (libm::sin(PI * beta) * gamma_unchecked(1.0 - beta))
    }

    pub fn k1(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
        let e = libm::exp(s);
        let r = r_dist(s, phi);
        let num = libm::pow(e + 1.0, alpha) - libm::pow(r, alpha);
        let den = libm::exp2(alpha) - libm::pow(two_sin(phi), alpha);
        (libm::pow(s / (e - 1.0), beta) * num / den - 1.0 - 0.5 * (alpha - beta) * s) / (s * s)
    }

    pub fn k2(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
        let e = libm::exp(s);
        let r = r_dist(s, phi);
        let num = libm::pow(r, -beta) - libm::pow(e + 1.0, -beta);
        let den = libm::pow(two_sin(phi), -beta) - libm::exp2(-beta);
        (libm::pow((e - 1.0) / s, alpha) * num / den - 1.0 - 0.5 * (alpha - beta) * s) / (s * s)
    }

    pub fn g1(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
        let d = PI - phi;
        let e = libm::exp(s);
        (libm::pow(e + 1.0, alpha) - libm::pow(r_dist(s, phi), alpha)) / (d * d * libm::pow(e - 1.0, beta))
    }

    pub fn g2(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
        let d = PI - phi;
        let e = libm::exp(s);
        libm::pow(e - 1.0, alpha) * (libm::pow(e + 1.0, -beta) - libm::pow(r_dist(s, phi), -beta)) / (d * d)
    }

    /// Interior `L`, for `alpha, beta` in `(0, 1)` and `phi < pi`.
    pub fn l(alpha: f64, beta: f64, phi: f64, s: f64) -> f64 {
        let t1 = a1(alpha, phi) * k1(alpha, beta, phi, s) * rgamma(1.0 - beta) * libm::pow(s, -beta);
        let t2 = libm::pow(s, alpha) * a2(alpha, beta, phi) * k2(alpha, beta, phi, s) * rgamma(1.0 + alpha);
        s * s / (alpha + beta) * (t1 - t2)
    }

    /// `L(0, 0, phi; s)` as the displayed log form.
    pub fn l00(phi: f64, s: f64) -> f64 {
        let e = libm::exp(s);
        let r = r_dist(s, phi);
        let sh = libm::sin(0.5 * phi);
        let lr = libm::log(r);
        let lp = libm::log(e + 1.0);
        let bracket = 2.0 * libm::log(r / (e + 1.0)) * libm::log(e - 1.0) + lp * lp - lr * lr
            + libm::log(sh) * libm::log(4.0 * sh / (s * s));
        let d = PI - phi;
        bracket / (2.0 * PI * d * d)
    }

    /// `L(0, 0, pi; s)` as displayed.
    pub fn l00_pi(s: f64) -> f64 {
        let ch = libm::cosh(0.5 * s);
        (libm::log(1.0 / libm::tanh(0.5 * s)) / (ch * ch) + libm::log(0.5 * s)) / (8.0 * PI)
    }

    /// `L(0, 1, phi; s)` as displayed.
    pub fn l01(phi: f64, s: f64) -> f64 {
        let d = PI - phi;
        let csc = 1.0 / libm::sin(0.5 * phi);
        ((csc - 1.0) / 2.0 * (1.0 - 0.5 * s) - 1.0 / r_dist(s, phi) + 1.0 / (libm::exp(s) + 1.0)) / (PI * d * d)
    }

    /// `L(1, 0, phi; s)` as displayed.
    pub fn l10(phi: f64, s: f64) -> f64 {
        let d = PI - phi;
        let e = libm::exp(s);
        (libm::sin(0.5 * phi) * (s + 2.0) - r_dist(s, phi) + e - s - 1.0) / (PI * d * d)
    }
}

#[cfg(test)]
mod tests;
