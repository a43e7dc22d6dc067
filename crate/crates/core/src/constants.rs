//! Frozen reference constants, to all published digits.
//!
//! Bounds and suites can run against these instead of re-minimizing; the
//! table is versioned so any change to a digit is visible.

use core::f64::consts::PI;

use crate::bounds::Infima;
use crate::kernels::PHI0;

pub const TABLE_VERSION: u32 = 1;

/// `m0 = inf L0`.
pub const M0: f64 = -0.097_638_227_1;
/// Location in `s` of `m0`, at `(0, 0, phi0)`.
pub const M0_S: f64 = 0.021_592_335_0;
/// `m_inf = inf Linf` over `s >= 1`.
pub const MINF: f64 = -0.033_324_785_58;
/// Location in `s` of `m_inf`, at `(0, 1, phi0)`.
pub const MINF_S: f64 = 3.999_154_909;
/// `Linf(0, 1, phi0; 30)`, the minimum of the tail `s >= 30`.
pub const TAIL_MIN: f64 = -0.008_293_818_653;
/// `Linf(0, 1, phi0; 1e5)`.
pub const TAIL_SPOT: f64 = -0.266_581_696_4e-5;
/// `inf P5` over the box, at `(0, 1, phi0)`.
pub const P5: f64 = 0.001_500_310_752;
/// `inf P5(., ., pi)`, at `(0, 1)`.
pub const P5_PI: f64 = 0.016_215_752_75;
/// `inf F1` over `alpha >= beta`, at `(1, 1, phi0)`.
pub const F1: f64 = 0.032_518_575_15;
/// `inf F2` over `alpha < beta`, at `(F2_ALPHA, 1, phi0)`.
pub const F2: f64 = 0.032_040_474_07;
pub const F2_ALPHA: f64 = 0.858_387_277_9;
/// `inf F1(., ., pi) = 1 / (8 pi)`, at `(1, 1)`.
pub const F1_PI: f64 = 1.0 / (8.0 * PI);
/// `inf F2(., ., pi)`, at `(F2_PI_ALPHA, 1)`.
pub const F2_PI: f64 = 0.032_876_932_88;
pub const F2_PI_ALPHA: f64 = 0.485_239_360_2;

pub const FROZEN_INFIMA: Infima = Infima { m0: M0, minf: MINF };

/// One row of the constants table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    pub key: &'static str,
    pub value: f64,
    /// Acceptance tolerance on the value.
    pub tol: f64,
    /// `(alpha, beta, phi, inner)` location; `inner` is `s` where present.
    pub at: [Option<f64>; 4],
    /// Acceptance tolerance on the located inner or free coordinate.
    pub at_tol: f64,
}

pub const TABLE: [Constant; 10] = [
    Constant { key: "m0", value: M0, tol: 1e-8, at: [Some(0.0), Some(0.0), Some(PHI0), Some(M0_S)], at_tol: 1e-6 },
    Constant { key: "minf", value: MINF, tol: 1e-9, at: [Some(0.0), Some(1.0), Some(PHI0), Some(MINF_S)], at_tol: 1e-5 },
    Constant { key: "tail", value: TAIL_MIN, tol: 1e-9, at: [Some(0.0), Some(1.0), Some(PHI0), Some(30.0)], at_tol: 0.0 },
    Constant { key: "tail_spot", value: TAIL_SPOT, tol: 1e-13, at: [Some(0.0), Some(1.0), Some(PHI0), Some(1e5)], at_tol: 0.0 },
    Constant { key: "p5", value: P5, tol: 1e-9, at: [Some(0.0), Some(1.0), Some(PHI0), None], at_tol: 0.0 },
    Constant { key: "f1", value: F1, tol: 1e-10, at: [Some(1.0), Some(1.0), Some(PHI0), None], at_tol: 0.0 },
    Constant { key: "f2", value: F2, tol: 1e-9, at: [Some(F2_ALPHA), Some(1.0), Some(PHI0), None], at_tol: 1e-6 },
    Constant { key: "p5_pi", value: P5_PI, tol: 1e-9, at: [Some(0.0), Some(1.0), Some(PI), None], at_tol: 0.0 },
    Constant { key: "f1_pi", value: F1_PI, tol: 1e-12, at: [Some(1.0), Some(1.0), Some(PI), None], at_tol: 0.0 },
    Constant { key: "f2_pi", value: F2_PI, tol: 1e-9, at: [Some(F2_PI_ALPHA), Some(1.0), Some(PI), None], at_tol: 1e-6 },
];

pub fn lookup(key: &str) -> Option<&'static Constant> {
    TABLE.iter().find(|c| c.key == key)
}
