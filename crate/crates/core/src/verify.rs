//! End-to-end certification suites.
//!
//! Each suite evaluates a list of points, records one or more [`Check`]s per
//! point and folds them into a [`VerificationReport`]. Points are generated
//! deterministically (fixed grids plus [`Lcg`] samples) and the fold runs in
//! point order, so reports do not depend on the executor.
//!
//! [`verify_brannan_direct`] touches only [`coeffs`](crate::coeffs) and
//! [`specfun`](crate::specfun); the other suites certify the lower-bound chain.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::bounds::{self, Infima};
use crate::coeffs::{self, Coefficients};
use crate::kernels::PHI0;
use crate::rng::{Lcg, DEFAULT_SEED};
use crate::{Error, Executor, ParameterPoint};

/// Relative tolerance of the cross-representation suite.
pub const REPRESENTATION_TOL: f64 = 1e-8;
/// Relative tolerance of the decomposition identity, against `max(1, |H|)`.
pub const DECOMPOSITION_TOL: f64 = 1e-8;
/// Rounding allowance on the inequality chain.
pub const CHAIN_SLACK: f64 = -1e-10;
/// Rounding allowance on the direct margin.
pub const MARGIN_SLACK: f64 = -1e-12;
/// Margins below this are genuine violations rather than rounding.
pub const GENUINE_VIOLATION: f64 = -1e-9;
/// Allowance on `dJ/dn >= F` for the finite-difference derivative.
pub const MONOTONICITY_SLACK: f64 = -1e-8;
/// Relative agreement of the closed-form `dJ/dn` with its finite difference.
pub const DERIVATIVE_TOL: f64 = 1e-6;
/// Above this `beta` the Laplace route is not compared; its `s^-beta`
/// endpoint weight is multiplied by a vanishing `sin(pi beta)`.
pub const LAPLACE_BETA_MAX: f64 = 0.99;
/// The 2F1 cross-path of the direct suite needs `beta` at least this large.
pub const CROSS_PATH_BETA_MIN: f64 = 1e-3;

/// Direction of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `value >= bound`
    AtLeast,
    /// `value <= bound`
    AtMost,
    /// `value > bound`
    Above,
    /// `value < bound`
    Below,
}

impl Sense {
    fn holds(self, v: f64, bound: f64) -> bool {
        match self {
            Sense::AtLeast => v >= bound,
            Sense::AtMost => v <= bound,
            Sense::Above => v > bound,
            Sense::Below => v < bound,
        }
    }

    fn worse(self, v: f64, than: f64) -> bool {
        if than.is_nan() {
            return false;
        }
        if v.is_nan() {
            return true;
        }
        match self {
            Sense::AtLeast | Sense::Above => v < than,
            Sense::AtMost | Sense::Below => v > than,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sense::AtLeast => ">=",
            Sense::AtMost => "<=",
            Sense::Above => ">",
            Sense::Below => "<",
        }
    }
}

/// One inequality recorded over every point of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub sense: Sense,
    pub bound: f64,
    /// Worst recorded value; `NaN` if any value was non-finite.
    pub worst: f64,
    pub at: Option<ParameterPoint>,
    pub records: usize,
    pub failures: usize,
}

impl Check {
    pub fn new(name: &'static str, sense: Sense, bound: f64) -> Self {
        Check { name, sense, bound, worst: f64::NAN, at: None, records: 0, failures: 0 }
    }

    fn record(&mut self, v: f64, at: ParameterPoint) {
        if self.records == 0 || self.sense.worse(v, self.worst) {
            self.worst = v;
            self.at = Some(at);
        }
        self.records += 1;
        if !self.sense.holds(v, self.bound) {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: &'static str,
    /// Number of evaluation points.
    pub samples: usize,
    /// Worst value of the primary (first) check: a residual or a margin.
    pub worst_value: f64,
    pub worst_location: ParameterPoint,
    /// All checks held and no evaluation failed.
    pub passed: bool,
    pub cfg_echo: Vec<(&'static str, String)>,
    pub checks: Vec<Check>,
    /// Evaluation failures, at most one per point.
    pub errors: Vec<(ParameterPoint, Error)>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Human-readable multi-line rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} ({} samples), worst {:e} at {}\n",
            self.suite,
            if self.passed { "passed" } else { "FAILED" },
            self.samples,
            self.worst_value,
            self.worst_location
        );
        for c in &self.checks {
            let at = c.at.map(|p| format!("{p}")).unwrap_or_else(|| String::from("-"));
            out += &format!(
                "  {:<16} {} {:e}: worst {:e} at {} ({}/{} failed)\n",
                c.name,
                c.sense.symbol(),
                c.bound,
                c.worst,
                at,
                c.failures,
                c.records
            );
        }
        for (p, e) in &self.errors {
            out += &format!("  error at {p}: {e}\n");
        }
        let echo: Vec<String> = self.cfg_echo.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out += &format!("  cfg: {}\n", echo.join(" "));
        out
    }
}

/// Per-point output: `(check index, value)` pairs at one location.
struct Outcome {
    at: ParameterPoint,
    values: Vec<(usize, f64, ParameterPoint)>,
    error: Option<Error>,
}

impl Outcome {
    fn new(at: ParameterPoint) -> Self {
        Outcome { at, values: Vec::new(), error: None }
    }

    fn push(&mut self, check: usize, v: f64) {
        self.values.push((check, v, self.at));
    }

    fn push_at(&mut self, check: usize, v: f64, at: ParameterPoint) {
        self.values.push((check, v, at));
    }
}

fn fold(suite: &'static str, mut checks: Vec<Check>, outcomes: Vec<Outcome>, cfg_echo: Vec<(&'static str, String)>) -> VerificationReport {
    let samples = outcomes.len();
    let mut errors = Vec::new();
    for o in outcomes {
        for (i, v, at) in o.values {
            checks[i].record(v, at);
        }
        if let Some(e) = o.error {
            errors.push((o.at, e));
        }
    }
    let passed = errors.is_empty() && checks.iter().all(Check::passed);
    let primary = &checks[0];
    let worst_location = primary.at.or_else(|| errors.first().map(|e| e.0)).unwrap_or_default();
    VerificationReport { suite, samples, worst_value: primary.worst, worst_location, passed, cfg_echo, checks, errors }
}

fn list_text<T: core::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| format!("{x}")).collect();
    parts.join(",")
}

fn unit(angle: f64) -> Complex64 {
    let (s, c) = libm::sincos(angle);
    Complex64::new(c, s)
}

/// Evenly spaced nodes on `[a, b]`, endpoints exact.
fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    let m = (count - 1) as f64;
    (0..count).map(|i| if i + 1 == count { b } else { a + (b - a) * (i as f64 / m) }).collect()
}

/// Sampling parameters of the random-plus-structured suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Degrees to sample; `None` takes each suite's default list.
    pub n_list: Option<Vec<u32>>,
    /// Pin `beta` for a stress slice.
    pub beta: Option<f64>,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 200, seed: DEFAULT_SEED, n_list: None, beta: None }
    }
}

impl SampleConfig {
    fn degrees(&self, default: &[u32]) -> Vec<u32> {
        self.n_list.clone().unwrap_or_else(|| default.to_vec())
    }

    fn echo(&self, n_list: &[u32]) -> Vec<(&'static str, String)> {
        let mut e = vec![
            ("samples", format!("{}", self.samples)),
            ("seed", format!("{:#x}", self.seed)),
            ("n_list", list_text(n_list)),
        ];
        if let Some(b) = self.beta {
            e.push(("beta", format!("{b}")));
        }
        e
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    alpha: f64,
    beta: f64,
    phi: f64,
    n: u32,
}

impl Sample {
    fn point(&self) -> ParameterPoint {
        ParameterPoint::new(self.alpha, self.beta).with_phi(self.phi).with_n(self.n as f64)
    }
}

const REPRESENTATION_DEGREES: [u32; 3] = [3, 5, 7];

/// Cross-checks the representations of `A_n` and `w_n` at `x = e^(i phi)`,
/// `w = -1/x`: direct sum against the terminating 2F1, `A_n` against its
/// recovery from `w_n`, and `w_n` against its Laplace representation.
///
/// Residuals are relative to the larger magnitude of the pair.
pub fn verify_representations<E: Executor>(cfg: &SampleConfig, exec: &E) -> VerificationReport {
    let n_list = cfg.degrees(&REPRESENTATION_DEGREES);
    let mut rng = Lcg::new(cfg.seed);
    let (lo, hi) = (0.02, 0.98);
    let mut pts = Vec::new();
    for &a in &[0.05, 0.5, 0.95] {
        for &b in &[0.05, 0.5, 0.95] {
            for &phi in &[PHI0, 0.5 * PI, PI] {
                for &n in &n_list {
                    pts.push(Sample { alpha: a, beta: cfg.beta.unwrap_or(b), phi, n });
                }
            }
        }
    }
    for _ in 0..cfg.samples {
        let alpha = rng.uniform(lo, hi);
        let beta = rng.uniform(lo, hi);
        let phi = rng.uniform(PHI0, PI);
        let n = rng.pick(&n_list);
        pts.push(Sample { alpha, beta: cfg.beta.unwrap_or(beta), phi, n });
    }
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE);
    let outcomes = exec.map(&pts, |p| {
        let mut o = Outcome::new(p.point());
        let x = unit(p.phi);
        let omega = -x.inv();
        let direct = coeffs::a_n(p.alpha, p.beta, omega, p.n);
        match coeffs::a_n_via_2f1(p.alpha, p.beta, omega, p.n) {
            Ok(v) => o.push(0, rel(direct, v)),
            Err(e) => o.error = Some(e),
        }
        o.push(1, rel(direct, coeffs::a_n_from_w(p.alpha, p.beta, omega, p.n)));
        if p.beta < LAPLACE_BETA_MAX {
            match coeffs::w_n_laplace(p.alpha, p.beta, x, p.n) {
                Ok(v) => o.push(2, rel(coeffs::w_n(p.alpha, p.beta, x, p.n), v)),
                Err(e) => o.error = Some(e),
            }
        }
        o
    });
    let checks = vec![
        Check::new("a_n_vs_2f1", Sense::AtMost, REPRESENTATION_TOL),
        Check::new("round_trip", Sense::AtMost, REPRESENTATION_TOL),
        Check::new("w_n_vs_laplace", Sense::AtMost, REPRESENTATION_TOL),
    ];
    let mut echo = cfg.echo(&n_list);
    echo.push(("tol", format!("{REPRESENTATION_TOL:e}")));
    let mut report = fold("representations", checks, outcomes, echo);
    // the primary check is the largest residual of any pair
    if let Some(worst) = report.checks.iter().filter(|c| c.records > 0).max_by(|a, b| a.worst.total_cmp(&b.worst)) {
        report.worst_value = worst.worst;
        report.worst_location = worst.at.unwrap_or_default();
    }
    report
}

/// Fixed points of the decomposition suite, `(alpha, beta, phi, n)`.
pub const DECOMPOSITION_POINTS: [(f64, f64, f64, f64); 5] =
    [(0.3, 0.7, 2.0, 5.0), (0.9, 0.2, PHI0, 7.0), (0.5, 0.5, PI, 5.0), (0.1, 0.9, PHI0, 9.0), (0.7, 0.3, 1.5, 11.0)];

/// Checks `H = H2 + E0 + Einf` with residual `|H - sum| / max(1, |H|)` on
/// the fixed points, edge points of the square, and `cfg.samples / 4`
/// random points with real `n` in `[5, 15]`.
pub fn verify_decomposition<E: Executor>(cfg: &SampleConfig, exec: &E) -> VerificationReport {
    let mut pts: Vec<(f64, f64, f64, f64)> = DECOMPOSITION_POINTS.to_vec();
    for &(a, b) in &[(0.0, 0.6), (0.6, 0.0), (1.0, 0.4), (0.4, 1.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        for &phi in &[PHI0, PI] {
            pts.push((a, b, phi, 5.0));
        }
    }
    let mut rng = Lcg::new(cfg.seed);
    for _ in 0..cfg.samples / 4 {
        let a = rng.uniform(0.0, 1.0);
        let b = rng.uniform(0.0, 1.0);
        let phi = rng.uniform(PHI0, PI);
        pts.push((a, cfg.beta.unwrap_or(b), phi, rng.uniform(5.0, 15.0)));
    }
    let outcomes = exec.map(&pts, |&(a, b, phi, n)| {
        let mut o = Outcome::new(ParameterPoint::new(a, b).with_phi(phi).with_n(n));
        let parts = (|| {
            let hs = bounds::h_scaled(a, b, phi, n)?;
            let sum = bounds::h2_main(a, b, phi, n) + bounds::e0(a, b, phi, n)? + bounds::einf(a, b, phi, n)?;
            Ok::<_, Error>((hs, sum))
        })();
        match parts {
            Ok((hs, sum)) => o.push(0, (hs - sum).abs() / hs.abs().max(1.0)),
            Err(e) => o.error = Some(e),
        }
        o
    });
    let checks = vec![Check::new("residual", Sense::AtMost, DECOMPOSITION_TOL)];
    let mut echo = vec![("samples", format!("{}", cfg.samples / 4)), ("seed", format!("{:#x}", cfg.seed))];
    echo.push(("tol", format!("{DECOMPOSITION_TOL:e}")));
    fold("decomposition", checks, outcomes, echo)
}

const CHAIN_DEGREES: [u32; 4] = [5, 7, 9, 11];

/// The 16 corners `{0, 1}^2 x {phi0, pi} x {5, 7}`.
pub fn chain_corners() -> Vec<(f64, f64, f64, u32)> {
    let mut v = Vec::new();
    for &a in &[0.0, 1.0] {
        for &b in &[0.0, 1.0] {
            for &phi in &[PHI0, PI] {
                for &n in &[5u32, 7] {
                    v.push((a, b, phi, n));
                }
            }
        }
    }
    v
}

/// `H`, with its `(0, 0)` value taken from the decomposition.
fn h_value(a: f64, b: f64, phi: f64, n: f64) -> crate::Result<f64> {
    if bounds::nu(a, b) == 0.0 {
        Ok(bounds::h2_main(a, b, phi, n) + bounds::e0(a, b, phi, n)? + bounds::einf(a, b, phi, n)?)
    } else {
        bounds::h_scaled(a, b, phi, n)
    }
}

/// Slacks of the lower-bound chain at one point: the primary `H - P_n`,
/// the triangle step `W - Delta^2 h` with
/// `W = w_n(-1) - |w_n(e^(i phi))|`, the two remainder bounds, and the
/// composed `W - Q_n P_n`.
fn chain_slacks(a: f64, b: f64, phi: f64, n: u32, inf: &Infima) -> crate::Result<[f64; 5]> {
    let nf = n as f64;
    let w = coeffs::w_n(a, b, Complex64::new(-1.0, 0.0), n).re - coeffs::w_n(a, b, unit(phi), n).norm();
    let d = PI - phi;
    let triangle = w - d * d * bounds::h(a, b, phi, nf)?;
    let e0 = bounds::e0(a, b, phi, nf)? - bounds::e0_bound(a, b, nf, -inf.m0.abs());
    let einf = bounds::einf(a, b, phi, nf)? - bounds::einf_bound(a, b, nf, -inf.minf.abs());
    let pn = bounds::p_n(a, b, phi, nf, inf);
    let h_pn = h_value(a, b, phi, nf)? - pn;
    let composed = w - bounds::q_n(a, b, phi, nf) * pn;
    Ok([h_pn, triangle, e0, einf, composed])
}

/// Checks the chain `w_n(-1) - |w_n(e^(i phi))| >= Delta^2 h = Q_n H >= Q_n P_n`
/// and the remainder bounds behind `H >= P_n`, at random points over the
/// closed box and at [`chain_corners`].
///
/// The primary slack is `H - P_n`: on `alpha = 0` both `Q_n` and the
/// `w`-difference vanish identically, so the composed form carries no
/// information there.
pub fn verify_inequality_chain<E: Executor>(cfg: &SampleConfig, inf: &Infima, exec: &E) -> VerificationReport {
    let n_list = cfg.degrees(&CHAIN_DEGREES);
    let mut pts = chain_corners();
    let mut rng = Lcg::new(cfg.seed);
    for _ in 0..cfg.samples {
        let a = rng.uniform(0.0, 1.0);
        let b = rng.uniform(0.0, 1.0);
        let phi = rng.uniform(PHI0, PI);
        let n = rng.pick(&n_list);
        pts.push((a, cfg.beta.unwrap_or(b), phi, n));
    }
    let outcomes = exec.map(&pts, |&(a, b, phi, n)| {
        let mut o = Outcome::new(ParameterPoint::new(a, b).with_phi(phi).with_n(n as f64));
        match chain_slacks(a, b, phi, n, inf) {
            Ok(s) => {
                for (i, v) in s.iter().enumerate() {
                    o.push(i, *v);
                }
            }
            Err(e) => o.error = Some(e),
        }
        o
    });
    let checks = vec![
        Check::new("h_minus_pn", Sense::AtLeast, CHAIN_SLACK),
        Check::new("triangle", Sense::AtLeast, CHAIN_SLACK),
        Check::new("e0_bound", Sense::AtLeast, CHAIN_SLACK),
        Check::new("einf_bound", Sense::AtLeast, CHAIN_SLACK),
        Check::new("w_minus_qp", Sense::AtLeast, CHAIN_SLACK),
    ];
    let mut echo = cfg.echo(&n_list);
    echo.push(("corners", String::from("16")));
    echo.push(("m0", format!("{:e}", inf.m0)));
    echo.push(("minf", format!("{:e}", inf.minf)));
    echo.push(("slack", format!("{CHAIN_SLACK:e}")));
    fold("chain", checks, outcomes, echo)
}

/// Grid of the direct suite.
#[derive(Debug, Clone, PartialEq)]
pub struct BrannanGrid {
    /// Nodes per axis of the `(alpha, beta)` square.
    pub ab_nodes: usize,
    /// Nodes of `theta` on `[0, pi - phi0]`.
    pub theta_nodes: usize,
    /// Degrees of the `theta = pi`, `alpha <= beta` slice.
    pub pi_n_list: Vec<u32>,
}

impl Default for BrannanGrid {
    fn default() -> Self {
        BrannanGrid { ab_nodes: 41, theta_nodes: 181, pi_n_list: vec![4, 5] }
    }
}

impl BrannanGrid {
    pub fn coarse() -> Self {
        BrannanGrid { ab_nodes: 11, theta_nodes: 46, pi_n_list: vec![4, 5] }
    }
}

/// Odd degrees `3, 5, ..., 21`.
pub fn default_brannan_degrees() -> Vec<u32> {
    (3..=21).step_by(2).collect()
}

/// Direct evaluation of `A_n(1) - |A_n(e^(i theta))|` on the grid, for odd
/// `n` in `n_list` and `theta` in `[0, pi - phi0]`, by the binomial sum and,
/// for `beta >= 1e-3`, by the terminating 2F1 as well. On `theta = pi` the
/// slice `alpha <= beta` is covered for `grid.pi_n_list` by the sum, the
/// odd-index form and the closed form of `A_n(-1)`; there the margin must
/// be strictly positive whenever `0 < alpha < beta` (on `alpha = 0` the
/// coefficient does not depend on `theta` and the margin is exactly 0).
///
/// Locations report `phi = pi - theta`.
pub fn verify_brannan_direct<E: Executor>(n_list: &[u32], grid: &BrannanGrid, exec: &E) -> VerificationReport {
    let ab = linspace(0.0, 1.0, grid.ab_nodes);
    let thetas = linspace(0.0, PI - PHI0, grid.theta_nodes);
    let mut pairs = Vec::with_capacity(ab.len() * ab.len());
    for &a in &ab {
        for &b in &ab {
            pairs.push((a, b));
        }
    }
    let outcomes = exec.map(&pairs, |&(a, b)| {
        let mut o = Outcome::new(ParameterPoint::new(a, b));
        for &n in n_list {
            let direct = Coefficients::direct(a, b, n);
            let via = if b >= CROSS_PATH_BETA_MIN { Coefficients::via_2f1(a, b, n).ok() } else { None };
            for &th in &thetas {
                let at = ParameterPoint::new(a, b).with_phi(PI - th).with_n(n as f64);
                let m = direct.margin(th);
                o.push_at(0, m, at);
                o.push_at(1, m, at);
                if let Some(v) = &via {
                    o.push_at(2, v.margin(th), at);
                }
            }
        }
        if a <= b {
            for &n in &grid.pi_n_list {
                let at = ParameterPoint::new(a, b).with_phi(0.0).with_n(n as f64);
                let direct = Coefficients::direct(a, b, n).margin(PI);
                let odd = coeffs::margin_at_pi_odd_sum(a, b, n);
                let m = match coeffs::a_n_at_minus_one(a, b, n) {
                    Ok(minus) => {
                        let closed = coeffs::a_n(a, b, Complex64::new(1.0, 0.0), n).re - minus.abs();
                        direct.min(odd).min(closed)
                    }
                    Err(e) => {
                        o.error = Some(e);
                        direct.min(odd)
                    }
                };
                o.push_at(3, m, at);
                if a > 0.0 && a < b {
                    o.push_at(4, m, at);
                }
            }
        }
        o
    });
    let checks = vec![
        Check::new("margin", Sense::AtLeast, MARGIN_SLACK),
        Check::new("genuine", Sense::AtLeast, GENUINE_VIOLATION),
        Check::new("margin_2f1", Sense::AtLeast, MARGIN_SLACK),
        Check::new("pi_slice", Sense::AtLeast, MARGIN_SLACK),
        Check::new("pi_slice_strict", Sense::Above, 0.0),
    ];
    let echo = vec![
        ("n_list", list_text(n_list)),
        ("ab_nodes", format!("{}", grid.ab_nodes)),
        ("theta_nodes", format!("{}", grid.theta_nodes)),
        ("theta_max", format!("{}", PI - PHI0)),
        ("pi_n_list", list_text(&grid.pi_n_list)),
        ("slack", format!("{MARGIN_SLACK:e}")),
    ];
    fold("brannan_direct", checks, outcomes, echo)
}

/// Which part of the square the monotonicity suite covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    /// Whole square, against `F`.
    Both,
    /// `alpha >= beta`, against `F1`.
    F1,
    /// `alpha < beta`, against `F2`.
    F2,
}

impl Half {
    pub fn name(self) -> &'static str {
        match self {
            Half::Both => "both",
            Half::F1 => "f1",
            Half::F2 => "f2",
        }
    }

    pub fn parse(s: &str) -> Option<Half> {
        match s {
            "both" => Some(Half::Both),
            "f1" => Some(Half::F1),
            "f2" => Some(Half::F2),
            _ => None,
        }
    }
}

/// Grid of the monotonicity suite.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityGrid {
    pub ab_nodes: usize,
    /// Nodes of `phi` on `[phi0, pi]`.
    pub phi_nodes: usize,
    /// Degrees of the derivative checks.
    pub n_points: Vec<f64>,
    /// `J` is checked non-decreasing on `n_lo, n_lo + n_step, ..., n_hi`.
    pub n_lo: f64,
    pub n_hi: f64,
    pub n_step: f64,
    /// Central-difference half step.
    pub fd_step: f64,
    pub half: Half,
}

impl Default for MonotonicityGrid {
    fn default() -> Self {
        MonotonicityGrid {
            ab_nodes: 20,
            phi_nodes: 10,
            n_points: vec![5.0, 10.0, 20.0],
            n_lo: 5.0,
            n_hi: 30.0,
            n_step: 0.5,
            fd_step: 1e-3,
            half: Half::Both,
        }
    }
}

impl MonotonicityGrid {
    pub fn coarse() -> Self {
        MonotonicityGrid { ab_nodes: 6, phi_nodes: 4, ..Default::default() }
    }
}

/// Checks, on the `(alpha, beta, phi)` grid, that the central difference of
/// `J` in `n` dominates `F` at each of `grid.n_points`, that the closed-form
/// `dJ/dn` agrees with it, that `g' < 0`, and that `J` is non-decreasing
/// along the `n` path.
pub fn verify_monotonicity<E: Executor>(grid: &MonotonicityGrid, inf: &Infima, exec: &E) -> VerificationReport {
    let ab = linspace(0.0, 1.0, grid.ab_nodes);
    let phis = linspace(PHI0, PI, grid.phi_nodes);
    let mut pts = Vec::new();
    for &a in &ab {
        for &b in &ab {
            let keep = match grid.half {
                Half::Both => true,
                Half::F1 => a >= b,
                Half::F2 => a < b,
            };
            if keep {
                for &phi in &phis {
                    pts.push((a, b, phi));
                }
            }
        }
    }
    let steps = libm::round((grid.n_hi - grid.n_lo) / grid.n_step) as usize;
    let path: Vec<f64> = (0..=steps).map(|k| grid.n_lo + grid.n_step * k as f64).collect();
    let h = grid.fd_step;
    let outcomes = exec.map(&pts, |&(a, b, phi)| {
        let mut o = Outcome::new(ParameterPoint::new(a, b).with_phi(phi));
        let f = match grid.half {
            Half::Both => bounds::f_combined(a, b, phi),
            Half::F1 => bounds::f1(a, b, phi),
            Half::F2 => bounds::f2(a, b, phi),
        };
        let j = |n: f64| bounds::j_fn(a, b, phi, n, inf);
        for &n in &grid.n_points {
            let at = o.at.with_n(n);
            let fd = (j(n + h) - j(n - h)) / (2.0 * h);
            let closed = bounds::j_derivative(a, b, phi, n, inf);
            o.push_at(0, fd - f, at);
            o.push_at(1, (closed - fd).abs() / closed.abs(), at);
            o.push_at(2, bounds::g_prime(a, b, n), at);
        }
        let mut prev = j(path[0]);
        for &n in &path[1..] {
            let next = j(n);
            o.push_at(3, next - prev, o.at.with_n(n));
            prev = next;
        }
        o
    });
    let checks = vec![
        Check::new("fd_minus_f", Sense::AtLeast, MONOTONICITY_SLACK),
        Check::new("closed_vs_fd", Sense::AtMost, DERIVATIVE_TOL),
        Check::new("g_prime", Sense::Below, 0.0),
        Check::new("j_increment", Sense::AtLeast, 0.0),
    ];
    let echo = vec![
        ("half", String::from(grid.half.name())),
        ("ab_nodes", format!("{}", grid.ab_nodes)),
        ("phi_nodes", format!("{}", grid.phi_nodes)),
        ("n_points", list_text(&grid.n_points)),
        ("n_path", format!("{}:{}:{}", grid.n_lo, grid.n_hi, grid.n_step)),
        ("fd_step", format!("{:e}", grid.fd_step)),
        ("m0", format!("{:e}", inf.m0)),
        ("minf", format!("{:e}", inf.minf)),
    ];
    fold("monotonicity", checks, outcomes, echo)
}

/// The implication drawn from a full run.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub p5: f64,
    pub f1: f64,
    pub f2: f64,
    pub chain_passed: bool,
}

impl Summary {
    pub fn certified(&self) -> bool {
        self.p5 > 0.0 && self.f1 > 0.0 && self.f2 > 0.0 && self.chain_passed
    }

    pub fn statement(&self) -> String {
        if self.certified() {
            return format!(
                "certified: |A_n(alpha, beta, e^(i theta))| <= A_n(alpha, beta, 1) for all alpha, beta in [0, 1], \
                 theta in [0, pi - phi0] (phi in [phi0, pi], phi0 = {PHI0}), odd n >= 5"
            );
        }
        let mut missing = Vec::new();
        for (name, v) in [("inf P5", self.p5), ("inf F1", self.f1), ("inf F2", self.f2)] {
            if !(v > 0.0) {
                missing.push(format!("{name} = {v:e} is not positive"));
            }
        }
        if !self.chain_passed {
            missing.push(String::from("the inequality chain failed"));
        }
        format!("not certified: {}", missing.join("; "))
    }
}
