//! Real and complex special-function primitives.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * libm::round(x * 0.5);
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = if r <= 0.25 {
        libm::sin(PI * r)
    } else if r <= 0.75 {
        libm::cos(PI * (r - 0.5))
    } else {
        libm::sin(PI * (1.0 - r))
    };
    sign * v
}

const LANCZOS_G: f64 = 7.0;
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

fn gamma_lanczos(x: f64) -> f64 {
    // Valid for x >= 0.5.
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // Split the power to keep t^(x+1/2) finite up to the overflow threshold.
    let half = libm::pow(t, 0.5 * (x + 0.5));
    libm::sqrt(2.0 * PI) * half * (half * libm::exp(-t)) * acc
}

/// The gamma function on `(0, inf)` and at negative non-integers.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() || (x <= 0.0 && x == libm::floor(x)) {
        return Err(Error::Domain { op: "gamma", value: x });
    }
    Ok(gamma_unchecked(x))
}

pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    if x >= 0.5 {
        gamma_lanczos(x)
    } else if x > 0.0 {
        gamma_lanczos(x + 1.0) / x
    } else {
        PI / (sin_pi(x) * gamma_unchecked(1.0 - x))
    }
}

/// `1 / Gamma(x)`, an entire function: zero at the poles of gamma.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == libm::floor(x) {
        return 0.0;
    }
    1.0 / gamma_unchecked(x)
}

/// `ln Gamma(1 + t)` for `|t| <= 0.1` by its zeta series, with absolute
/// error a few ulps of `|t|` (the generic routes lose that near `t = 0`).
pub fn ln_gamma1p_small(t: f64) -> f64 {
    const ZETA: [f64; 18] = [
        1.644_934_066_848_226_4,
        1.202_056_903_159_594_3,
        1.082_323_233_711_138_2,
        1.036_927_755_143_369_9,
        1.017_343_061_984_449_1,
        1.008_349_277_381_922_8,
        1.004_077_356_197_944_3,
        1.002_008_392_826_082_2,
        1.000_994_575_127_818_1,
        1.000_494_188_604_119_5,
        1.000_246_086_553_308_0,
        1.000_122_713_347_578_5,
        1.000_061_248_135_058_7,
        1.000_030_588_236_307_0,
        1.000_015_282_259_408_7,
        1.000_007_637_197_637_9,
        1.000_003_817_293_265_0,
        1.000_001_908_212_716_6,
    ];
    debug_assert!(t.abs() <= 0.1);
    let mut terms = [0.0; 18];
    let mut pw = -t;
    for (k, z) in ZETA.iter().enumerate() {
        pw *= -t;
        terms[k] = z * pw / (k + 2) as f64;
    }
    terms.iter().rev().sum::<f64>() - EULER_GAMMA * t
}

/// `n!` as a float.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Upper incomplete gamma `Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt`.
///
/// Series for `x < a + 1`, continued fraction (modified Lentz) otherwise.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(x >= 0.0) || !a.is_finite() || !x.is_finite() {
        return Err(Error::Domain { op: "upper_incomplete_gamma", value: if a > 0.0 { x } else { a } });
    }
    let ga = gamma_unchecked(a);
    if x == 0.0 {
        return Ok(ga);
    }
    let prefactor = libm::exp(-x + a * libm::log(x));
    if x < a + 1.0 {
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut k = 1.0;
        while term > sum * 1e-17 {
            term *= x / (a + k);
            sum += term;
            k += 1.0;
        }
        Ok(ga - prefactor * sum)
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(prefactor * h)
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)` by direct product.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// `(a)_k / k!` by a running product, finite for every real `a`.
pub fn pochhammer_over_factorial(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64) / (j as f64 + 1.0))
}

/// Generalised binomial coefficient `binom(alpha, k)` for `alpha` in `[0, 1]`.
///
/// Uses the reflected form `(-1)^(k+1) Gamma(1+a) Gamma(k-a) sin(pi a) / (pi k!)`.
pub fn binom_alpha(alpha: f64, k: u32) -> f64 {
    match k {
        0 => 1.0,
        1 => alpha,
        _ => {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let s = sin_pi(alpha);
            if s == 0.0 {
                return 0.0;
            }
            sign * gamma_unchecked(1.0 + alpha) * gamma_unchecked(k as f64 - alpha) * s
                / (PI * factorial(k))
        }
    }
}

/// Principal argument in `(-pi, pi]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = libm::atan2(z.im, z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

/// Principal power `z^p = exp(p (ln|z| + i Arg z))`.
pub fn principal_pow(z: Complex64, p: f64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return if p > 0.0 { Ok(Complex64::new(0.0, 0.0)) } else { Err(Error::Domain { op: "principal_pow", value: p }) };
    }
    let ln_abs = libm::log(libm::hypot(z.re, z.im));
    let arg = principal_arg(z);
    let m = libm::exp(p * ln_abs);
    let (sn, cs) = libm::sincos(p * arg);
    Ok(Complex64::new(m * cs, m * sn))
}

/// `R(s, phi) = |e^s - e^(i phi)|`.
///
/// Written as `sqrt(expm1(s)^2 + 4 e^s sin^2(phi/2))`, factored through `e^s`
/// for `s >= 1`; this avoids the cancellation of the textbook form at small
/// `phi`. Overflows to infinity beyond `s ~ 709`.
pub fn r_dist(s: f64, phi: f64) -> f64 {
    let sh = libm::sin(0.5 * phi);
    if s < 1.0 {
        let em1 = libm::expm1(s);
        libm::sqrt(em1 * em1 + 4.0 * libm::exp(s) * sh * sh)
    } else {
        let e = libm::exp(-s);
        let d = -libm::expm1(-s);
        libm::exp(s) * libm::sqrt(d * d + 4.0 * e * sh * sh)
    }
}
