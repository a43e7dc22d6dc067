use super::*;
use crate::rng::Lcg;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn c1_c2_values_and_limits() {
    // (2 - 2 sin(phi0/2)) / (pi - phi0)^2
    let direct = (2.0 - 2.0 * libm::sin(0.5 * PHI0)) / ((PI - PHI0) * (PI - PHI0));
    assert!(rel(c1(1.0, PHI0), direct) < 1e-14);
    assert!((c1(1.0, PHI0) - 0.20434).abs() < 5e-5);
    assert!(rel(c1(1.0, PHI0), PI * a1_coef(1.0, PHI0)) < 1e-14);
    for &a in &[0.1, 0.5, 0.9, 1.0] {
        assert!(rel(c1(a, PI), libm::exp2(a) * a / 8.0) < 1e-15);
        assert!(rel(c2(a, PI), libm::exp2(-a) * a / 8.0) < 1e-15);
    }
    for &phi in &[PHI0, 1.0, 2.5, 3.1] {
        let d = PI - phi;
        let expect = (1.0 / libm::sin(0.5 * phi) - 1.0) / (2.0 * d * d);
        assert!(rel(c2(1.0, phi), expect) < 1e-13);
        assert_eq!(c1(0.0, phi), 0.0);
        assert_eq!(c2(0.0, phi), 0.0);
    }
}

#[test]
fn coefficients_match_literal_definitions() {
    let mut rng = Lcg::new(41);
    for _ in 0..200 {
        let a = rng.uniform(0.01, 0.99);
        let b = rng.uniform(0.01, 0.99);
        let phi = rng.uniform(PHI0, 3.0);
        assert!(rel(c1(a, phi), naive::c1(a, phi)) < 1e-12);
        assert!(rel(c2(b, phi), naive::c2(b, phi)) < 1e-12);
        assert!(rel(a1_coef(a, phi), naive::a1(a, phi)) < 1e-12);
        assert!(rel(a2_coef(a, b, phi), naive::a2(a, b, phi)) < 1e-12);
    }
}

#[test]
fn a1_a2_boundary_formulas() {
    for &phi in &[PHI0, 0.7, 2.0, 3.0] {
        let d = PI - phi;
        let csc = 1.0 / libm::sin(0.5 * phi);
        assert!(rel(a1_coef(0.0, phi), libm::log(csc) / (PI * d * d)) < 1e-12);
        let s4 = libm::sin(0.25 * d);
        assert!(rel(a1_coef(1.0, phi), 4.0 * s4 * s4 / (PI * d * d)) < 1e-14);
        assert!(rel(a2_coef(0.4, 1.0, phi), 0.6 * (csc - 1.0) / (2.0 * PI * d * d)) < 1e-13);
        assert!(rel(a2_coef(0.4, 0.0, phi), 0.6 * libm::log(csc) / (PI * d * d)) < 1e-12);
        assert_eq!(a2_coef(1.0, 0.3, phi), 0.0);
        // edges are the limits of interior values
        assert!(rel(a1_coef(1e-7, phi), a1_coef(0.0, phi)) < 1e-6);
        assert!(rel(a1_coef(1.0 - 1e-7, phi), a1_coef(1.0, phi)) < 1e-6);
        assert!(rel(a2_coef(0.4, 1e-7, phi), a2_coef(0.4, 0.0, phi)) < 1e-6);
        assert!(rel(a2_coef(0.4, 1.0 - 1e-7, phi), a2_coef(0.4, 1.0, phi)) < 1e-6);
    }
    for &a in &[0.0, 0.3, 1.0] {
        let g = crate::specfun::gamma(2.0 - a).unwrap();
        assert!(rel(a1_coef(a, PI), libm::exp2(a) * g / (8.0 * PI)) < 1e-14);
    }
    // corner composition: the phi = pi form evaluated at beta = 1
    assert!(rel(a2_coef(0.25, 1.0, PI), 0.75 / (16.0 * PI)) < 1e-15);
    assert!(rel(a2_coef(0.25, 1.0, PI - 1e-6), a2_coef(0.25, 1.0, PI)) < 1e-9);
}

// The literal forms difference `(e^s+1)^a - R^a`, whose relative size is
// about `e^-s`; beyond s = 12 they lose more than 1e-10 on their own.
#[test]
fn k1_k2_agree_with_literal_form() {
    let mut rng = Lcg::new(3);
    for _ in 0..300 {
        let a = rng.uniform(0.02, 0.98);
        let b = rng.uniform(0.02, 0.98);
        let phi = rng.uniform(PHI0, 2.8);
        let s = rng.uniform(1.0, 12.0);
        let (k1s, k2s) = (k1(a, b, phi, s).unwrap(), k2(a, b, phi, s).unwrap());
        assert!(rel(k1s, naive::k1(a, b, phi, s)) < 1e-10, "{a} {b} {phi} {s}");
        assert!(rel(k2s, naive::k2(a, b, phi, s)) < 1e-10, "{a} {b} {phi} {s}");
    }
}

#[test]
fn k_joint_limit_at_origin() {
    for &phi in &[PHI0, 0.5, 1.7, 3.0] {
        let csc = 1.0 / libm::sin(0.5 * phi);
        for &s in &[0.05, 0.5, 2.0, 9.0] {
            let a = k1(0.0, 0.0, phi, s).unwrap();
            let b = k2(0.0, 0.0, phi, s).unwrap();
            assert!(rel(a, b) < 1e-13);
            let r = crate::specfun::r_dist(s, phi);
            let literal = (libm::log((libm::exp(s) + 1.0) / r) / libm::log(csc) - 1.0) / (s * s);
            assert!(rel(a, literal) < 1e-9, "{phi} {s}: {a} vs {literal}");
        }
    }
}

#[test]
fn k_at_antipode_matches_display() {
    for &(a, b) in &[(0.3, 0.6), (0.9, 0.1), (0.0, 0.5), (1.0, 1.0)] {
        for &s in &[0.2, 1.0, 4.0, 15.0] {
            let e = libm::exp(s);
            let mid = 4.0 * e / ((e + 1.0) * (e + 1.0));
            let d1 = libm::pow(s / (e - 1.0), b) * mid * libm::pow(0.5 * (e + 1.0), a) - 1.0 - 0.5 * (a - b) * s;
            let d2 = libm::pow((e - 1.0) / s, a) * mid * libm::pow(2.0 / (e + 1.0), b) - 1.0 - 0.5 * (a - b) * s;
            assert!(rel(k1(a, b, PI, s).unwrap(), d1 / (s * s)) < 1e-11);
            assert!(rel(k2(a, b, PI, s).unwrap(), d2 / (s * s)) < 1e-11);
        }
    }
}

#[test]
fn k1_large_s_asymptotic() {
    let (a, b, s) = (0.3, 0.6, 25.0);
    for &phi in &[PHI0, 1.0, PI] {
        let resid = k1(a, b, phi, s).unwrap() + (a - b) / (2.0 * s) + 1.0 / (s * s);
        assert!(resid.abs() <= 10.0 * libm::pow(s, b - 2.0) * libm::exp(-(1.0 - a + b) * s), "{resid}");
    }
}

#[test]
fn k_rejects_nonpositive_s() {
    assert!(k1(0.3, 0.3, 1.0, 0.0).is_err());
    assert!(k2(0.3, 0.3, 1.0, -1.0).is_err());
    assert!(g1(0.3, 0.3, 1.0, f64::NAN).is_err());
}

#[test]
fn k_bounded_near_zero() {
    for &phi in &[PHI0, 1.0, 3.0, PI] {
        let k_small = k1(0.4, 0.7, phi, 1e-6).unwrap();
        let k_tiny = k1(0.4, 0.7, phi, 1e-7).unwrap();
        assert!(k_small.is_finite() && (k_small - k_tiny).abs() < 1e-3 * k_small.abs().max(1.0));
    }
}

#[test]
fn g_decomposition_identity() {
    let mut rng = Lcg::new(99);
    for _ in 0..100 {
        let a = rng.uniform(0.01, 0.99);
        let b = rng.uniform(0.01, 0.99);
        let phi = rng.uniform(PHI0, PI);
        // beyond s ~ 5 the right-hand side cancels to e^-s of its terms
        let s = rng.uniform(1e-6, 5.0);
        let g = g1(a, b, phi, s).unwrap();
        let rhs = c1(a, phi) * libm::pow(s, -b) * (1.0 + 0.5 * (a - b) * s + s * s * k1(a, b, phi, s).unwrap());
        assert!(rel(rhs, g) < 1e-12, "{a} {b} {phi} {s}");
        let g = g2(a, b, phi, s).unwrap();
        let rhs = -c2(b, phi) * libm::pow(s, a) * (1.0 + 0.5 * (a - b) * s + s * s * k2(a, b, phi, s).unwrap());
        assert!(rel(rhs, g) < 1e-12, "{a} {b} {phi} {s}");
    }
}

#[test]
fn g_literal_and_antipode() {
    for &(a, b, phi, s) in &[(0.3, 0.6, 1.0, 0.5), (0.8, 0.2, 2.0, 3.0), (0.5, 0.9, PHI0, 1.5)] {
        assert!(rel(g1(a, b, phi, s).unwrap(), naive::g1(a, b, phi, s)) < 1e-11);
        assert!(rel(g2(a, b, phi, s).unwrap(), naive::g2(a, b, phi, s)) < 1e-11);
    }
    // phi = pi: R = e^s + 1 and the quotient is the derivative in Delta^2
    let (a, b, s) = (0.4, 0.7, 1.3);
    let near = g1(a, b, PI - 1e-5, s).unwrap();
    assert!(rel(g1(a, b, PI, s).unwrap(), near) < 1e-8);
    let near = g2(a, b, PI - 1e-5, s).unwrap();
    assert!(rel(g2(a, b, PI, s).unwrap(), near) < 1e-8);
}

#[test]
fn l_interior_high_precision_references() {
    // 60-digit evaluations of the defining expression
    let cases = [
        (0.3, 0.6, 1.0, 0.5, 0.000_080_956_494_758_340_596),
        (0.3, 0.6, 3.1, 20.0, -0.092_489_684_281_807_608),
        (0.7, 0.2, PHI0, 0.001, -2.120_443_203_832_627_7e-6),
        (0.5, 0.5, 1.0, 200.0, 0.306_179_895_278_909_79),
        (0.9, 0.05, 2.5, 1e-5, -7.221_111_447_667_579_3e-13),
        (0.2, 0.9, PHI0, 3.0, -0.021_082_806_054_170_573),
        (0.901_634_075_278_448_5, 0.162_295_822_083_602_16, 1.699_437_225_897_425_3, 27.074_647_567_998_877, 0.400_753_753_312_995_03),
    ];
    for &(a, b, phi, s, v) in &cases {
        let got = l_kernel(a, b, phi, s);
        assert!(rel(got, v) < 1e-9, "{a} {b} {phi} {s}: {got} vs {v}");
    }
}

#[test]
fn l_corner_high_precision_references() {
    let c00 = [
        (PHI0, 0.021_592_3, -0.002_108_231_056_029_429_5),
        (PHI0, 1e-6, -4.962_020_991_050_751_5e-11),
        (1.5, 5.0, 0.050_163_516_783_641_445),
        (3.0, 0.3, -0.001_386_048_944_824_047_1),
        (3.14159, 0.5, -0.002_540_674_090_552_031),
        (PHI0, 40.0, 0.554_988_132_507_031_37),
    ];
    for &(phi, s, v) in &c00 {
        assert!(rel(l_kernel(0.0, 0.0, phi, s), v) < 1e-10, "(0,0) {phi} {s}");
    }
    let c00pi = [
        (1e-6, -1.410_045_593_135_588_7e-13),
        (0.05, -0.000_083_413_763_447_616_352),
        (0.3, -0.001_382_957_042_749_367_7),
        (2.0, 0.004_550_893_516_133_81),
        (40.0, 0.119_196_399_879_009_92),
    ];
    for &(s, v) in &c00pi {
        assert!(rel(l_kernel(0.0, 0.0, PI, s), v) < 1e-12, "(0,0,pi) {s}");
    }
    let c01 = [
        (PHI0, 3.999_154_909, -0.532_971_293_254_844_27),
        (0.5, 0.01, 0.000_017_577_905_768_668_089),
        (3.1, 2.0, -0.001_991_894_571_507_821_8),
        (PHI0, 30.0, -7.464_436_787_832_882_5),
    ];
    for &(phi, s, v) in &c01 {
        assert!(rel(l_kernel(0.0, 1.0, phi, s), v) < 1e-11, "(0,1) {phi} {s}");
    }
    let c10 = [
        (2.0, 0.5, -0.000_931_891_393_677_357_14),
        (PHI0, 1e-4, -2.584_703_939_554_440_8e-9),
        (3.1, 3.0, -0.047_348_521_318_608_806),
        (1.0, 50.0, -1.771_821_164_814_541),
    ];
    for &(phi, s, v) in &c10 {
        assert!(rel(l_kernel(1.0, 0.0, phi, s), v) < 1e-10, "(1,0) {phi} {s}");
    }
}

#[test]
fn l_corners_match_displayed_forms() {
    for &phi in &[PHI0, 0.8, 2.2, 3.0] {
        for &s in &[0.1, 0.7, 2.5, 9.0] {
            assert!(rel(l_kernel(0.0, 0.0, phi, s), naive::l00(phi, s)) < 1e-8, "{phi} {s}");
            assert!(rel(l_kernel(0.0, 1.0, phi, s), naive::l01(phi, s)) < 1e-9, "{phi} {s}");
            assert!(rel(l_kernel(1.0, 0.0, phi, s), naive::l10(phi, s)) < 1e-8, "{phi} {s}");
        }
    }
    for &s in &[0.1, 1.0, 7.0] {
        assert!(rel(l_kernel(0.0, 0.0, PI, s), naive::l00_pi(s)) < 1e-12);
    }
    for &phi in &[PHI0, 1.0, PI] {
        for &s in &[0.0, 0.3, 11.0] {
            assert_eq!(l_kernel(1.0, 1.0, phi, s), 0.0);
        }
    }
}

#[test]
fn l_interior_matches_literal_form() {
    let mut rng = Lcg::new(8);
    for _ in 0..200 {
        let a = rng.uniform(0.05, 0.95);
        let b = rng.uniform(0.05, 0.95);
        let phi = rng.uniform(PHI0, 2.8);
        let s = rng.uniform(1.0, 12.0);
        let st = l_kernel(a, b, phi, s);
        let nv = naive::l(a, b, phi, s);
        let scale = (naive::l(a, b, phi, s) - st).abs() / st.abs().max(1e-6 * s * s);
        assert!(scale < 1e-10, "{a} {b} {phi} {s}: {st} vs {nv}");
    }
}

fn shrinking(residuals: &[f64]) -> bool {
    residuals.windows(2).all(|w| w[1] < w[0]) && residuals[residuals.len() - 1] < 1e-4
}

#[test]
fn boundary_limits_are_continuous() {
    let offsets = [1e-4, 1e-5, 1e-6];
    let (phi, s) = (1.3, 0.8);
    let targets: [(f64, f64, f64, f64); 4] = [(0.0, 0.0, 1.0, 1.0), (0.0, 1.0, 1.0, -1.0), (1.0, 0.0, -1.0, 1.0), (0.0, 0.5, 1.0, 0.0)];
    for &(a0, b0, da, db) in &targets {
        let edge = l_kernel(a0, b0, phi, s);
        let res: Vec<f64> = offsets
            .iter()
            .map(|&h| (l_kernel(a0 + da * h, b0 + db * h, phi, s) - edge).abs())
            .collect();
        assert!(shrinking(&res), "({a0},{b0}): {res:?}");
    }
    // phi -> pi for the generic and the (0, 0) form
    for &(a, b) in &[(0.0, 0.0), (0.4, 0.3), (0.0, 1.0), (1.0, 0.0)] {
        let edge = l_kernel(a, b, PI, s);
        let res: Vec<f64> = offsets.iter().map(|&h| (l_kernel(a, b, PI - h, s) - edge).abs()).collect();
        assert!(shrinking(&res), "({a},{b},pi): {res:?}");
    }
}

#[test]
fn corner_at_pi_is_order_independent() {
    for &s in &[0.05, 0.6, 3.0, 25.0] {
        let sigma = 1.0 / (libm::cosh(0.5 * s) * libm::cosh(0.5 * s));
        let e = libm::exp(s);
        // phi -> pi taken after the alpha, beta limit
        let l01 = ((1.0 - 0.5 * s) / 16.0 - sigma / (8.0 * (e + 1.0))) / PI;
        let l10 = (4.0 * e / (e + 1.0) - s - 2.0) / (8.0 * PI);
        // alpha, beta limit taken after phi -> pi
        assert!((l_kernel(0.0, 1.0, PI, s) - l01).abs() <= 1e-10 * l01.abs().max(1.0), "{s}");
        assert!((l_kernel(1.0, 0.0, PI, s) - l10).abs() <= 1e-10 * l10.abs().max(1.0), "{s}");
        assert!((l_kernel(1e-9, 1.0, PI, s) - l01).abs() <= 1e-7);
    }
}

#[test]
fn large_s_asymptotic_law() {
    let (phi, s) = (1.0, 200.0);
    for &(a, b) in &[(0.6, 0.3), (0.3, 0.6)] {
        let lead = (a - b) / (2.0 * (a + b))
            * (a2_coef(a, b, phi) * rgamma(1.0 + a) * libm::pow(s, 1.0 + a)
                - a1_coef(a, phi) * rgamma(1.0 - b) * libm::pow(s, 1.0 - b));
        assert!(rel(l_kernel(a, b, phi, s), lead) < 0.05);
    }
    // at alpha = beta the leading coefficient vanishes and the next order takes over
    let (a, b) = (0.5, 0.5);
    let next = (a2_coef(a, b, phi) * rgamma(1.0 + a) * libm::pow(s, a) - a1_coef(a, phi) * rgamma(1.0 - b) * libm::pow(s, -b)) / (a + b);
    assert!(rel(l_kernel(a, b, phi, s), next) < 0.05);
}

#[test]
fn l0_linf_scalings() {
    for &(a, b, phi) in &[(0.3, 0.6, 1.0), (0.0, 0.0, PHI0), (0.0, 1.0, 2.0), (1.0, 0.0, PI), (0.7, 0.2, PI)] {
        assert_eq!(l0(a, b, phi, 0.0), 0.0);
        for &s in &[0.01, 0.5, 1.0] {
            let v = l_kernel(a, b, phi, s) * libm::pow(s, b - 1.0);
            assert!((l0(a, b, phi, s) - v).abs() <= 1e-13 * v.abs().max(1e-6));
        }
        for &s in &[1.0, 7.0, 300.0] {
            let v = l_kernel(a, b, phi, s) * libm::pow(s, -2.0 - a);
            assert!((linf(a, b, phi, s) - v).abs() <= 1e-13 * v.abs().max(1e-9));
        }
    }
    // Linf = O(1/s)
    let big = linf(0.4, 0.5, 1.0, 1e6) * 1e6;
    let bigger = linf(0.4, 0.5, 1.0, 1e7) * 1e7;
    assert!(big.is_finite() && rel(big, bigger) < 1e-3);
}

#[test]
fn headline_spot_values() {
    // location and value of the large-s infimum
    assert!((linf(0.0, 1.0, PHI0, 3.999_154_909) + 0.033_324_785_58).abs() <= 1e-9);
    assert!((linf(0.0, 1.0, PHI0, 30.0) + 0.008_293_818_653).abs() <= 1e-9);
    assert!((linf(0.0, 1.0, PHI0, 1e5) + 0.266_581_696_4e-5).abs() <= 1e-13);
    // small-s corner value, checked against a 60-digit evaluation of the (0, 0) display
    assert!((l0(0.0, 0.0, PHI0, 0.021_592_302_46) + 0.097_638_095_804_0).abs() <= 1e-12);
}

#[test]
fn small_s_corner_stays_accurate() {
    // (0, 0) approaches its s^2 ln s law without cancellation
    let phi = 1.0;
    let c = (1.0 + libm::cos(phi)) / (8.0 * PI * (1.0 - libm::cos(phi)) * (PI - phi) * (PI - phi));
    let ratios: Vec<f64> = [1e-3, 1e-5, 1e-7, 1e-9]
        .iter()
        .map(|&s: &f64| l_kernel(0.0, 0.0, phi, s) / (c * s * s * libm::log(s)))
        .collect();
    assert!(ratios.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()), "{ratios:?}");
    assert!((l_kernel(0.0, 0.0, PI, 1e-8) / (1e-16 * libm::log(1e-8) / (32.0 * PI)) - 1.0).abs() < 0.1);
}

proptest! {
    #[test]
    fn coefficient_signs(a in 0.001f64..0.999, b in 0.001f64..0.999, phi in PHI0..PI) {
        prop_assert!(c1(a, phi) > 0.0);
        prop_assert!(c2(b, phi) > 0.0);
        prop_assert!(a1_coef(a, phi) > 0.0);
        prop_assert!(a2_coef(a, b, phi) > 0.0);
        prop_assert_eq!(a2_coef(1.0, b, phi), 0.0);
    }

    #[test]
    fn g2_negative(a in 0.0f64..1.0, b in 0.01f64..1.0, phi in PHI0..3.14, s in 0.001f64..50.0) {
        prop_assert!(g2(a, b, phi, s).unwrap() < 0.0);
    }

    #[test]
    fn kernels_finite(a in 0.0f64..=1.0, b in 0.0f64..=1.0, phi in PHI0..=PI, ls in -8.0f64..6.0) {
        let s = libm::pow(10.0, ls);
        let ctx = KernelCtx::new(a, b, phi);
        prop_assert!(ctx.l(s).is_finite());
        prop_assert!(ctx.linf(s).is_finite());
        if s <= 1.0 {
            prop_assert!(ctx.l0(s).is_finite());
        }
    }
}

#[test]
fn near_origin_high_precision_references() {
    // 60-digit evaluations of the literal definition
    let cases = [
        (1e-8, 2e-8, PHI0, 0.0215923, -0.002_108_231_059_771_568_5),
        (1e-6, 0.0, 1.0, 3.0, 0.039_766_319_955_080_29),
        (0.01, 0.02, 2.0, 0.5, -0.002_748_033_300_450_055),
        (1e-10, 3e-10, 3.0, 1.0, -0.003_420_927_470_534_190_4),
        (0.03, 0.015, PHI0, 25.0, 0.587_022_179_543_077_1),
        (0.0, 0.04, 0.5, 0.1, -0.001_319_697_873_425_892_3),
    ];
    for (a, b, phi, s, want) in cases {
        assert_eq!(Formula::select(a, b, phi), Formula::NearOrigin);
        let got = l_kernel(a, b, phi, s);
        assert!(rel(got, want) < 1e-12, "({a}, {b}, {phi}, {s}): {got} vs {want}");
    }
}

#[test]
fn near_origin_matches_generic_where_both_hold() {
    let mut rng = Lcg::new(11);
    for _ in 0..300 {
        let nu = rng.uniform(0.01, NU_SMALL);
        let a = nu * rng.next_f64();
        let phi = rng.uniform(PHI0, PI);
        let s = libm::exp(rng.uniform(-6.0, 4.0));
        let ctx = KernelCtx::new(a, nu - a, phi);
        let mut generic = ctx;
        generic.formula = Formula::Generic;
        let st = ctx.s_terms(s);
        let (x, y) = (ctx.l_terms(&st), generic.l_terms(&st));
        // the generic route carries about eps / nu of cancellation
        assert!((x - y).abs() <= 2e-15 / nu, "{a} {} {phi} {s}: {x} vs {y}", nu - a);
    }
}

#[test]
fn a1_minus_a2_matches_direct_difference() {
    let mut rng = Lcg::new(12);
    for _ in 0..200 {
        let nu = rng.uniform(0.005, NU_SMALL);
        let a = nu * rng.next_f64();
        let phi = if rng.next_f64() < 0.2 { PI } else { rng.uniform(PHI0, PI) };
        let ang = Angle::new(phi);
        let direct = a1_with(a, &ang) - a2_with(a, nu - a, &ang);
        let d = a1_minus_a2(a, nu - a, &ang);
        assert!((d - direct).abs() <= 1e-14 * a1_with(a, &ang), "{a} {phi}: {d} vs {direct}");
    }
}

#[test]
fn near_origin_tends_to_corner() {
    for &(phi, s) in &[(PHI0, 0.0215923), (1.0, 3.0), (PI, 0.4), (2.0, 40.0)] {
        let corner = l_kernel(0.0, 0.0, phi, s);
        let res: Vec<f64> = [1e-3, 1e-5, 1e-7, 1e-9].iter().map(|&e| (l_kernel(e, 2.0 * e, phi, s) - corner).abs()).collect();
        assert!(shrinking(&res), "{phi} {s}: {res:?}");
        assert!(res[3] < 1e-7, "{res:?}");
    }
}
