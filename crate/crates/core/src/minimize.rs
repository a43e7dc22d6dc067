//! Deterministic box minimization: edge-biased outer grids, one-dimensional
//! scan-and-refine along an inner axis, cell refinement, and the headline
//! infima `m0`, `m_inf`, `inf P5`, `inf F1`, `inf F2` and their `phi = pi`
//! slices.
//!
//! Every reduction compares `(value, lexicographic coordinates)`, so results
//! do not depend on evaluation order or on the [`Executor`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;

use crate::bounds::{self, Infima, PnForm};
use crate::kernels::{Formula, KernelCtx, STerms, PHI0};
use crate::{Error, Executor, ParameterPoint, Result};

/// Geometric ratio of successive spacings toward an endpoint.
pub const EDGE_RATIO: f64 = 0.7;
/// Number of geometric steps before the spacing is capped.
const EDGE_STEPS: i32 = 10;
/// Smallest spacing an edge-biased grid may have.
pub const MIN_SPACING: f64 = 1e-6;

/// Upper end of the `m_inf` search in `s`.
pub const S_MID: f64 = 30.0;
/// Upper end of the tail audit in `s`.
pub const S_TAIL: f64 = 1e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Alpha,
    Beta,
    Phi,
    S,
    N,
}

impl Axis {
    pub const ALL: [Axis; 5] = [Axis::Alpha, Axis::Beta, Axis::Phi, Axis::S, Axis::N];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::Beta => "beta",
            Axis::Phi => "phi",
            Axis::S => "s",
            Axis::N => "n",
        }
    }

    pub fn parse(name: &str) -> Option<Axis> {
        Axis::ALL.iter().copied().find(|a| a.name().eq_ignore_ascii_case(name))
    }
}

/// Coordinates indexed by [`Axis::index`].
pub type Coords = [f64; 5];

/// The functions a search can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionId {
    L,
    L0,
    Linf,
    Pn,
    F1,
    F2,
    F,
    /// `(s - 0.3)^2`, for exercising the machinery.
    SmokeQuad,
}

impl FunctionId {
    pub fn name(self) -> &'static str {
        match self {
            FunctionId::L => "L",
            FunctionId::L0 => "L0",
            FunctionId::Linf => "Linf",
            FunctionId::Pn => "P",
            FunctionId::F1 => "F1",
            FunctionId::F2 => "F2",
            FunctionId::F => "F",
            FunctionId::SmokeQuad => "smoke-quad",
        }
    }

    /// Accepts the names above case-insensitively, plus `P5` / `Pn`.
    pub fn parse(name: &str) -> Option<FunctionId> {
        let all = [
            FunctionId::L,
            FunctionId::L0,
            FunctionId::Linf,
            FunctionId::Pn,
            FunctionId::F1,
            FunctionId::F2,
            FunctionId::F,
            FunctionId::SmokeQuad,
        ];
        if name.eq_ignore_ascii_case("p5") || name.eq_ignore_ascii_case("pn") {
            return Some(FunctionId::Pn);
        }
        all.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    /// Coordinates the function depends on.
    pub fn axes(self) -> &'static [Axis] {
        match self {
            FunctionId::L | FunctionId::L0 | FunctionId::Linf => &[Axis::Alpha, Axis::Beta, Axis::Phi, Axis::S],
            FunctionId::Pn => &[Axis::Alpha, Axis::Beta, Axis::Phi, Axis::N],
            FunctionId::F1 | FunctionId::F2 | FunctionId::F => &[Axis::Alpha, Axis::Beta, Axis::Phi],
            FunctionId::SmokeQuad => &[Axis::S],
        }
    }

    /// Values used for coordinates a caller leaves unset.
    pub fn defaults(self) -> Coords {
        [0.0, 0.0, PHI0, 0.0, 5.0]
    }

    fn is_kernel(self) -> bool {
        matches!(self, FunctionId::L | FunctionId::L0 | FunctionId::Linf)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A function together with the infima `P_n` needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub fid: FunctionId,
    pub infima: Infima,
}

impl Target {
    pub fn new(fid: FunctionId) -> Self {
        Target { fid, infima: crate::constants::FROZEN_INFIMA }
    }

    pub fn with_infima(fid: FunctionId, infima: Infima) -> Self {
        Target { fid, infima }
    }

    pub fn eval(&self, c: &Coords) -> f64 {
        let (a, b, phi, s, n) = (c[0], c[1], c[2], c[3], c[4]);
        match self.fid {
            FunctionId::L => KernelCtx::new(a, b, phi).l(s),
            FunctionId::L0 => KernelCtx::new(a, b, phi).l0(s),
            FunctionId::Linf => KernelCtx::new(a, b, phi).linf(s),
            FunctionId::Pn => bounds::p_n(a, b, phi, n, &self.infima),
            FunctionId::F1 => bounds::f1(a, b, phi),
            FunctionId::F2 => bounds::f2(a, b, phi),
            FunctionId::F => bounds::f_combined(a, b, phi),
            FunctionId::SmokeQuad => (s - 0.3) * (s - 0.3),
        }
    }

    /// Name of the closed form that evaluates the target at `c`.
    pub fn formula(&self, c: &Coords) -> &'static str {
        let (a, b, phi) = (c[0], c[1], c[2]);
        let f_form = |beta_one: bool| {
            if a == 0.0 && b == 0.0 {
                "corner (0,0) limit"
            } else if beta_one {
                "edge limit"
            } else {
                "generic"
            }
        };
        match self.fid {
            FunctionId::L | FunctionId::L0 | FunctionId::Linf => Formula::select(a, b, phi).name(),
            FunctionId::Pn => PnForm::select(a, b, phi).name(),
            FunctionId::F1 => f_form(a == 1.0 && b == 1.0 && phi != PI),
            FunctionId::F2 => f_form(b == 1.0 && phi != PI),
            FunctionId::F => {
                if a >= b {
                    f_form(a == 1.0 && b == 1.0 && phi != PI)
                } else {
                    f_form(b == 1.0 && phi != PI)
                }
            }
            FunctionId::SmokeQuad => "quadratic",
        }
    }

    pub fn point(&self, c: &Coords) -> ParameterPoint {
        let axes = self.fid.axes();
        let has = |a: Axis| axes.contains(&a);
        let mut p = ParameterPoint::new(
            if has(Axis::Alpha) { c[0] } else { 0.0 },
            if has(Axis::Beta) { c[1] } else { 0.0 },
        );
        if has(Axis::Phi) {
            p.phi = Some(c[2]);
        }
        if has(Axis::S) {
            p.s = Some(c[3]);
        }
        if has(Axis::N) {
            p.n = Some(c[4]);
        }
        p
    }

    fn node_ctx(&self, outer: &Coords, inner: Option<Axis>) -> NodeCtx {
        if self.fid.is_kernel() && inner == Some(Axis::S) {
            NodeCtx::Kernel(KernelCtx::new(outer[0], outer[1], outer[2]))
        } else {
            NodeCtx::Plain
        }
    }

    /// Same arithmetic as [`eval`](Self::eval) with the inner coordinate set to `x`.
    fn eval_at(&self, ctx: &NodeCtx, outer: &Coords, axis: Axis, x: f64) -> f64 {
        match ctx {
            NodeCtx::Kernel(k) => match self.fid {
                FunctionId::L => k.l(x),
                FunctionId::L0 => k.l0(x),
                _ => k.linf(x),
            },
            NodeCtx::Plain => {
                let mut c = *outer;
                c[axis.index()] = x;
                self.eval(&c)
            }
        }
    }

    /// Kernel value from cached `s`-terms; bit-identical to `eval_at`.
    fn eval_terms(&self, k: &KernelCtx, st: &Option<STerms>) -> f64 {
        match (self.fid, st) {
            (FunctionId::L | FunctionId::L0, None) => 0.0,
            (FunctionId::L, Some(st)) => k.l_terms(st),
            (FunctionId::L0, Some(st)) => k.l0_terms(st),
            (_, Some(st)) => k.linf_terms(st),
            (_, None) => k.linf(0.0),
        }
    }
}

enum NodeCtx {
    Kernel(KernelCtx),
    Plain,
}

// ---------------------------------------------------------------------------
// Configuration

/// Search density and tolerances; serialized as `key=value` lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub nodes_alpha: usize,
    pub nodes_beta: usize,
    pub nodes_phi: usize,
    /// Scan nodes along the inner axis of a grid search.
    pub scan_s: usize,
    pub refine_depth: u32,
    /// Abscissa tolerance of the inner refinement, relative to the interval.
    pub tol_abscissa: f64,
    /// Skip refining cells that cannot approach the current minimum.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            nodes_alpha: 60,
            nodes_beta: 60,
            nodes_phi: 40,
            scan_s: 64,
            refine_depth: 1,
            tol_abscissa: 1e-10,
            prune: true,
        }
    }
}

impl SearchConfig {
    pub const KEYS: [&'static str; 7] =
        ["nodes_alpha", "nodes_beta", "nodes_phi", "scan_s", "refine_depth", "tol_abscissa", "prune"];

    /// `(key, value)` pairs in [`KEYS`](Self::KEYS) order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("nodes_alpha", format!("{}", self.nodes_alpha)),
            ("nodes_beta", format!("{}", self.nodes_beta)),
            ("nodes_phi", format!("{}", self.nodes_phi)),
            ("scan_s", format!("{}", self.scan_s)),
            ("refine_depth", format!("{}", self.refine_depth)),
            ("tol_abscissa", format!("{:e}", self.tol_abscissa)),
            ("prune", format!("{}", self.prune as u8)),
        ]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.entries() {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    pub fn set(&mut self, key: &str, value: &str) -> core::result::Result<(), String> {
        let bad = || format!("invalid value for {key}: {value:?}");
        let count = |min: usize| -> core::result::Result<usize, String> {
            let v: usize = value.trim().parse().map_err(|_| bad())?;
            if v < min {
                return Err(format!("{key} must be at least {min}"));
            }
            Ok(v)
        };
        match key.trim() {
            "nodes_alpha" => self.nodes_alpha = count(2)?,
            "nodes_beta" => self.nodes_beta = count(2)?,
            "nodes_phi" => self.nodes_phi = count(2)?,
            "scan_s" => self.scan_s = count(3)?,
            "refine_depth" => self.refine_depth = value.trim().parse().map_err(|_| bad())?,
            "tol_abscissa" => {
                let t: f64 = value.trim().parse().map_err(|_| bad())?;
                if !(t > 0.0 && t < 1.0) {
                    return Err(bad());
                }
                self.tol_abscissa = t;
            }
            "prune" => {
                self.prune = match value.trim() {
                    "1" | "true" => true,
                    "0" | "false" => false,
                    _ => return Err(bad()),
                }
            }
            _ => return Err(format!("unknown cfg key {key:?}")),
        }
        Ok(())
    }

    /// Parses a block of `key=value` lines (blank lines ignored).
    pub fn from_text(text: &str) -> core::result::Result<Self, String> {
        let mut cfg = SearchConfig::default();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| format!("expected key=value, got {line:?}"))?;
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }
}

// ---------------------------------------------------------------------------
// Node lists

/// `count` nodes on `[a, b]` whose spacing shrinks by [`EDGE_RATIO`] per step
/// toward either endpoint, capped after ten steps. Endpoints are exact.
pub fn biased_nodes(a: f64, b: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && b > a);
    let m = count - 1;
    let w: Vec<f64> = (0..m)
        .map(|i| {
            let k = i.min(m - 1 - i).min(EDGE_STEPS as usize) as i32;
            libm::pow(EDGE_RATIO, -(k as f64))
        })
        .collect();
    let total: f64 = w.iter().sum();
    let mut nodes = Vec::with_capacity(count);
    let mut cum = 0.0;
    nodes.push(a);
    for wi in &w[..m - 1] {
        cum += wi;
        nodes.push(a + (b - a) * (cum / total));
    }
    nodes.push(b);
    nodes
}

/// `count` equally spaced nodes on `[a, b]`, endpoints exact.
pub fn uniform_nodes(a: f64, b: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    let m = (count - 1) as f64;
    let mut nodes: Vec<f64> = (0..count).map(|k| a + (b - a) * (k as f64 / m)).collect();
    nodes[count - 1] = b;
    nodes
}

/// `count` nodes equally spaced in `ln x` on `[a, b]`, `a > 0`, endpoints exact.
pub fn log_nodes(a: f64, b: f64, count: usize) -> Vec<f64> {
    let (la, lb) = (libm::log(a), libm::log(b));
    let mut nodes: Vec<f64> = uniform_nodes(la, lb, count).into_iter().map(libm::exp).collect();
    nodes[0] = a;
    nodes[count - 1] = b;
    nodes
}

/// Inserts two equally spaced points into every cell.
pub fn refine_nodes(nodes: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(3 * nodes.len());
    for w in nodes.windows(2) {
        let h = w[1] - w[0];
        out.push(w[0]);
        out.push(w[0] + h / 3.0);
        out.push(w[0] + 2.0 * h / 3.0);
    }
    out.extend(nodes.last());
    out
}

// ---------------------------------------------------------------------------
// One-dimensional minimization

/// Outcome of a one-dimensional minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Min1d {
    pub x: f64,
    pub value: f64,
    pub at_endpoint: bool,
    pub evaluations: u64,
}

/// Scan in `x` or in `ln x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    Uniform,
    Log,
}

pub fn scan_nodes(a: f64, b: f64, count: usize, kind: ScanKind) -> Vec<f64> {
    match kind {
        ScanKind::Uniform => uniform_nodes(a, b, count),
        ScanKind::Log => log_nodes(a, b, count),
    }
}

const CGOLD: f64 = 0.381_966_011_250_105_1;

/// Brent's parabolic/golden minimization on `[lo, hi]` started from an
/// interior point `x0` with `f(x0) <= f(lo), f(hi)`. Returns the best point,
/// its value and the number of evaluations, or the first non-finite abscissa.
fn brent<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    x0: f64,
    f0: f64,
    tol: f64,
) -> core::result::Result<(f64, f64, u64), f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (f0, f0, f0);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    let mut evals = 0;
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = tol + 2.0 * f64::EPSILON * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            if !(p.abs() >= (0.5 * q * etemp).abs() || p <= q * (a - x) || p >= q * (b - x)) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        evals += 1;
        if !fu.is_finite() {
            return Err(u);
        }
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx, evals))
}

fn better(v1: f64, x1: f64, v2: f64, x2: f64) -> bool {
    match v1.total_cmp(&v2) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => x1 < x2,
    }
}

/// Minimum over the endpoints and every refined local minimum of a scan.
///
/// `xs` are the scan nodes, `vs` the (finite) values there. Each discrete
/// local minimum, where the forward-difference slope turns from negative
/// to non-negative, is refined by [`brent`] inside its two neighbouring
/// cells. Log scans are refined in `ln x`.
fn minimize_scanned<F: FnMut(f64) -> f64>(
    xs: &[f64],
    vs: &[f64],
    mut f: F,
    kind: ScanKind,
    tol_rel: f64,
) -> core::result::Result<Min1d, f64> {
    let m = xs.len();
    let (a, b) = (xs[0], xs[m - 1]);
    let (mut bx, mut bv) = (a, vs[0]);
    if better(vs[m - 1], b, bv, bx) {
        bx = b;
        bv = vs[m - 1];
    }
    let mut evals = m as u64;
    for i in 1..m - 1 {
        if !(vs[i] < vs[i - 1] && vs[i] <= vs[i + 1]) {
            continue;
        }
        let (x, v) = match kind {
            ScanKind::Uniform => {
                let (x, v, n) = brent(&mut f, xs[i - 1], xs[i + 1], xs[i], vs[i], tol_rel * (b - a))?;
                evals += n;
                (x, v)
            }
            ScanKind::Log => {
                let mut g = |t: f64| f(libm::exp(t));
                let (lo, hi) = (libm::log(xs[i - 1]), libm::log(xs[i + 1]));
                let tol = tol_rel * (libm::log(b) - libm::log(a));
                let (t, v, n) = brent(&mut g, lo, hi, libm::log(xs[i]), vs[i], tol)?;
                evals += n;
                // the scan node itself keeps its exact abscissa
                if t == libm::log(xs[i]) {
                    (xs[i], v)
                } else {
                    (libm::exp(t), v)
                }
            }
        };
        if better(v, x, bv, bx) {
            bx = x;
            bv = v;
        }
    }
    Ok(Min1d { x: bx, value: bv, at_endpoint: bx == a || bx == b, evaluations: evals })
}

/// Minimizes `f` on `[a, b]` by a `scan`-node scan plus Brent refinement of
/// every bracketed local minimum to `tol_rel * (b - a)` in the abscissa.
pub fn minimize_1d_with<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    scan: usize,
    kind: ScanKind,
    tol_rel: f64,
) -> core::result::Result<Min1d, f64> {
    let xs = scan_nodes(a, b, scan.max(3), kind);
    let mut vs = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = f(x);
        if !v.is_finite() {
            return Err(x);
        }
        vs.push(v);
    }
    minimize_scanned(&xs, &vs, f, kind, tol_rel)
}

/// Default scan density of [`minimize_1d`].
pub const SCAN_1D: usize = 2048;

/// Minimizes `f(s)` on `[a, b]` with a 2048-node scan and `1e-10` relative
/// abscissa tolerance. A non-finite value is reported at the offending `s`.
pub fn minimize_1d<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64) -> Result<MinimizationResult> {
    let m = minimize_1d_with(f, a, b, SCAN_1D, ScanKind::Uniform, 1e-10).map_err(|s| Error::NonFinite {
        op: "minimize_1d",
        at: ParameterPoint::new(0.0, 0.0).with_s(s),
    })?;
    Ok(MinimizationResult {
        value: m.value,
        coords: [0.0, 0.0, 0.0, m.x, 0.0],
        argmin: ParameterPoint::new(0.0, 0.0).with_s(m.x),
        classification: if m.at_endpoint { Classification::AxisEndpoint } else { Classification::InteriorCritical },
        formula: "scalar",
        evaluations: m.evaluations,
        coverage: Coverage::default(),
    })
}

// ---------------------------------------------------------------------------
// Grid search

/// One outer axis with its base nodes (exact endpoints, strictly increasing).
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub axis: Axis,
    pub nodes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axes: Vec<GridAxis>,
    pub refine_depth: u32,
}

/// Axis minimized per outer node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerAxis {
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub kind: ScanKind,
}

/// Feasible part of the `(alpha, beta)` square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    All,
    AlphaGeBeta,
    AlphaLeBeta,
}

impl Region {
    fn contains(self, c: &Coords) -> bool {
        match self {
            Region::All => true,
            Region::AlphaGeBeta => c[0] >= c[1],
            Region::AlphaLeBeta => c[0] <= c[1],
        }
    }
}

/// A complete search problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Search {
    pub target: Target,
    pub grid: GridSpec,
    pub inner: Option<InnerAxis>,
    pub region: Region,
    /// Values of coordinates that are neither grid axes nor inner.
    pub fixed: Coords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    InteriorCritical,
    AxisEndpoint,
    BoxCorner,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::InteriorCritical => "interior-critical",
            Classification::AxisEndpoint => "axis-endpoint",
            Classification::BoxCorner => "box-corner",
        }
    }
}

/// Evaluated outer nodes by boundary signature: for each outer axis the node
/// is at the lower end (0), upper end (1) or inside (2); `counts` is indexed
/// by the base-3 number of the signature.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coverage {
    pub dims: usize,
    pub counts: Vec<u64>,
}

impl Coverage {
    /// Boundary signatures (faces, edges, corners) with no evaluated node.
    pub fn missing(&self) -> usize {
        self.counts.iter().enumerate().filter(|&(i, &c)| c == 0 && has_boundary(i, self.dims)).count()
    }

    /// Number of boundary signatures.
    pub fn faces(&self) -> usize {
        (0..self.counts.len()).filter(|&i| has_boundary(i, self.dims)).count()
    }
}

fn has_boundary(mut sig: usize, dims: usize) -> bool {
    for _ in 0..dims {
        if sig % 3 != 2 {
            return true;
        }
        sig /= 3;
    }
    false
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizationResult {
    pub value: f64,
    pub coords: Coords,
    pub argmin: ParameterPoint,
    pub classification: Classification,
    pub formula: &'static str,
    pub evaluations: u64,
    pub coverage: Coverage,
}

#[derive(Debug, Clone, Copy)]
struct NodeVal {
    value: f64,
    x: f64,
    at_endpoint: bool,
    evals: u64,
}

type Key = [u32; 3];

struct Engine<'a> {
    search: &'a Search,
    cfg: &'a SearchConfig,
    levels: Vec<Vec<Vec<f64>>>,
    scan: Vec<f64>,
    cache_axis: Option<usize>,
}

/// Scan-node `s`-terms shared by every node with the same `phi`.
type SliceCache = Vec<Option<STerms>>;

impl<'a> Engine<'a> {
    fn new(search: &'a Search, cfg: &'a SearchConfig) -> Self {
        let mut levels = vec![search.grid.axes.iter().map(|a| a.nodes.clone()).collect::<Vec<_>>()];
        for _ in 0..search.grid.refine_depth {
            let next = levels.last().unwrap().iter().map(|n| refine_nodes(n)).collect();
            levels.push(next);
        }
        let scan = match &search.inner {
            Some(i) => scan_nodes(i.lo, i.hi, cfg.scan_s.max(3), i.kind),
            None => Vec::new(),
        };
        let cache_axis = match search.inner {
            Some(i) if i.axis == Axis::S && search.target.fid.is_kernel() => {
                search.grid.axes.iter().position(|a| a.axis == Axis::Phi)
            }
            _ => None,
        };
        Engine { search, cfg, levels, scan, cache_axis }
    }

    fn dims(&self) -> usize {
        self.search.grid.axes.len()
    }

    fn coords(&self, level: usize, key: &Key) -> Coords {
        let mut c = self.search.fixed;
        for (k, ax) in self.search.grid.axes.iter().enumerate() {
            c[ax.axis.index()] = self.levels[level][k][key[k] as usize];
        }
        c
    }

    fn slice_cache(&self, level: usize, key: &Key) -> Option<SliceCache> {
        let k = self.cache_axis?;
        let phi = self.levels[level][k][key[k] as usize];
        let ang = crate::kernels::Angle::new(phi);
        Some(self.scan.iter().map(|&s| if s == 0.0 { None } else { Some(STerms::new(s, &ang)) }).collect())
    }

    fn eval_node(&self, c: &Coords, cache: Option<&SliceCache>) -> Result<NodeVal> {
        let target = &self.search.target;
        let non_finite = |x: Option<(Axis, f64)>| {
            let mut at = *c;
            if let Some((ax, v)) = x {
                at[ax.index()] = v;
            }
            Error::NonFinite { op: "grid_min", at: target.point(&at) }
        };
        let Some(inner) = self.search.inner else {
            let v = target.eval(c);
            if !v.is_finite() {
                return Err(non_finite(None));
            }
            return Ok(NodeVal { value: v, x: f64::NAN, at_endpoint: true, evals: 1 });
        };
        let ctx = target.node_ctx(c, Some(inner.axis));
        let mut vs = Vec::with_capacity(self.scan.len());
        for (j, &x) in self.scan.iter().enumerate() {
            let v = match (&ctx, cache) {
                (NodeCtx::Kernel(k), Some(cache)) => target.eval_terms(k, &cache[j]),
                _ => target.eval_at(&ctx, c, inner.axis, x),
            };
            if !v.is_finite() {
                return Err(non_finite(Some((inner.axis, x))));
            }
            vs.push(v);
        }
        let f = |x: f64| target.eval_at(&ctx, c, inner.axis, x);
        let m = minimize_scanned(&self.scan, &vs, f, inner.kind, self.cfg.tol_abscissa)
            .map_err(|x| non_finite(Some((inner.axis, x))))?;
        Ok(NodeVal { value: m.value, x: m.x, at_endpoint: m.at_endpoint, evals: m.evaluations })
    }

    /// Evaluates `keys` (sorted) at `level`, grouping by the cached axis.
    fn eval_keys<E: Executor>(&self, level: usize, keys: &[Key], exec: &E) -> Result<Vec<NodeVal>> {
        let mut out = Vec::with_capacity(keys.len());
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        match self.cache_axis {
            Some(k) => {
                for (i, key) in keys.iter().enumerate() {
                    groups.entry(key[k]).or_default().push(i);
                }
            }
            None if keys.is_empty() => {}
            None => {
                groups.insert(0, (0..keys.len()).collect());
            }
        }
        let mut slots: Vec<Option<NodeVal>> = vec![None; keys.len()];
        for idx in groups.values() {
            let cache = self.slice_cache(level, &keys[idx[0]]);
            let res = exec.map(idx, |&i| self.eval_node(&self.coords(level, &keys[i]), cache.as_ref()));
            for (&i, r) in idx.iter().zip(res) {
                slots[i] = Some(r?);
            }
        }
        out.extend(slots.into_iter().map(|s| s.unwrap()));
        Ok(out)
    }

    fn all_keys(&self) -> Vec<Key> {
        let lens: Vec<usize> = self.levels[0].iter().map(Vec::len).collect();
        let mut keys = Vec::new();
        let mut key = [0u32; 3];
        let total: usize = lens.iter().product();
        for mut flat in 0..total {
            for k in (0..lens.len()).rev() {
                key[k] = (flat % lens[k]) as u32;
                flat /= lens[k];
            }
            if self.search.region.contains(&self.coords(0, &key)) {
                keys.push(key);
            }
        }
        keys
    }

    fn run<E: Executor>(&self, exec: &E) -> Result<(BTreeMap<Key, NodeVal>, usize)> {
        let dims = self.dims();
        let keys = self.all_keys();
        let vals = self.eval_keys(0, &keys, exec)?;
        let mut map: BTreeMap<Key, NodeVal> = keys.into_iter().zip(vals).collect();
        for level in 0..self.levels.len() - 1 {
            let best = map.values().map(|n| n.value).fold(f64::INFINITY, f64::min);
            let lens: Vec<usize> = self.levels[level + 1].iter().map(Vec::len).collect();
            let mut fresh: BTreeSet<Key> = BTreeSet::new();
            for key in map.keys() {
                if (0..dims).any(|k| key[k] as usize + 1 >= self.levels[level][k].len()) {
                    continue;
                }
                let (mut lo, mut hi, mut count) = (f64::INFINITY, f64::NEG_INFINITY, 0);
                for corner in 0..1usize << dims {
                    let mut c = *key;
                    for (k, ck) in c.iter_mut().enumerate().take(dims) {
                        *ck += ((corner >> k) & 1) as u32;
                    }
                    if let Some(n) = map.get(&c) {
                        lo = lo.min(n.value);
                        hi = hi.max(n.value);
                        count += 1;
                    }
                }
                if count < 2 || (self.cfg.prune && lo - (hi - lo) > best) {
                    continue;
                }
                for off in 0..4usize.pow(dims as u32) {
                    let mut c = [0u32; 3];
                    let mut coarse = true;
                    let mut o = off;
                    for k in 0..dims {
                        let d = (o % 4) as u32;
                        o /= 4;
                        coarse &= d % 3 == 0;
                        c[k] = 3 * key[k] + d;
                    }
                    if coarse || (0..dims).any(|k| c[k] as usize >= lens[k]) {
                        continue;
                    }
                    if self.search.region.contains(&self.coords(level + 1, &c)) {
                        fresh.insert(c);
                    }
                }
            }
            let mut next: BTreeMap<Key, NodeVal> = BTreeMap::new();
            for (key, v) in map {
                let mut c = key;
                for ck in c.iter_mut().take(dims) {
                    *ck *= 3;
                }
                next.insert(c, v);
            }
            let fresh: Vec<Key> = fresh.into_iter().collect();
            let vals = self.eval_keys(level + 1, &fresh, exec)?;
            next.extend(fresh.into_iter().zip(vals));
            map = next;
        }
        Ok((map, self.levels.len() - 1))
    }

    fn coverage(&self, map: &BTreeMap<Key, NodeVal>, level: usize) -> Coverage {
        let dims = self.dims();
        let mut counts = vec![0u64; 3usize.pow(dims as u32)];
        for key in map.keys() {
            let mut sig = 0;
            for k in (0..dims).rev() {
                let last = self.levels[level][k].len() as u32 - 1;
                let t = if key[k] == 0 {
                    0
                } else if key[k] == last {
                    1
                } else {
                    2
                };
                sig = sig * 3 + t;
            }
            counts[sig] += 1;
        }
        Coverage { dims, counts }
    }
}

fn lex_cmp(a: &Coords, b: &Coords) -> Ordering {
    for i in 0..5 {
        match a[i].total_cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn key_cmp(va: f64, ca: &Coords, vb: f64, cb: &Coords) -> Ordering {
    va.total_cmp(&vb).then_with(|| lex_cmp(ca, cb))
}

impl Search {
    fn bounds(&self, axis: Axis) -> Option<(f64, f64)> {
        if let Some(g) = self.grid.axes.iter().find(|g| g.axis == axis) {
            return Some((g.nodes[0], *g.nodes.last().unwrap()));
        }
        match self.inner {
            Some(i) if i.axis == axis => Some((i.lo, i.hi)),
            _ => None,
        }
    }

    fn classify(&self, c: &Coords) -> Classification {
        let at_end = |axis: Axis| {
            let (lo, hi) = self.bounds(axis).unwrap();
            c[axis.index()] == lo || c[axis.index()] == hi
        };
        let outer_corner = self.grid.axes.iter().all(|g| at_end(g.axis));
        let inner_end = self.inner.map_or(true, |i| at_end(i.axis));
        match (outer_corner, inner_end) {
            (true, true) => Classification::BoxCorner,
            (_, false) => Classification::InteriorCritical,
            (false, true) => Classification::AxisEndpoint,
        }
    }

    fn result(&self, value: f64, c: Coords, evaluations: u64, coverage: Coverage) -> MinimizationResult {
        MinimizationResult {
            value,
            coords: c,
            argmin: self.search_point(&c),
            classification: self.classify(&c),
            formula: self.target.formula(&c),
            evaluations,
            coverage,
        }
    }

    fn search_point(&self, c: &Coords) -> ParameterPoint {
        self.target.point(c)
    }

    /// Minimum of the inner axis at fixed outer coordinates.
    fn inner_min(&self, outer: &Coords, cfg: &SearchConfig) -> Result<(f64, Coords, u64)> {
        let search = Search { grid: GridSpec { axes: Vec::new(), refine_depth: 0 }, fixed: *outer, ..self.clone() };
        let engine = Engine::new(&search, cfg);
        let n = engine.eval_node(outer, None)?;
        let mut c = *outer;
        if let Some(i) = self.inner {
            c[i.axis.index()] = n.x;
        }
        Ok((n.value, c, n.evals))
    }
}

/// Grid search: full evaluation of the base grid, then per refinement level
/// two interior points per cell per axis. With `cfg.prune`, a cell is only
/// refined when `min - (max - min)` over its evaluated corners does not
/// exceed the current best value.
pub fn grid_min<E: Executor>(search: &Search, cfg: &SearchConfig, exec: &E) -> Result<MinimizationResult> {
    let engine = Engine::new(search, cfg);
    let (map, level) = engine.run(exec)?;
    let mut best: Option<(f64, Coords)> = None;
    let mut evaluations = 0;
    for (key, n) in &map {
        evaluations += n.evals;
        let mut c = engine.coords(level, key);
        if let Some(i) = search.inner {
            c[i.axis.index()] = n.x;
        }
        let _ = n.at_endpoint;
        if best.map_or(true, |(bv, bc)| key_cmp(n.value, &c, bv, &bc) == Ordering::Less) {
            best = Some((n.value, c));
        }
    }
    let (value, c) = best.ok_or(Error::Domain { op: "grid_min: empty grid", value: 0.0 })?;
    Ok(search.result(value, c, evaluations, engine.coverage(&map, level)))
}

/// Local polish of a grid argmin: cyclic one-dimensional minimization along
/// each outer axis within the neighbouring cells of the finest grid, each
/// trial re-solving the inner axis. Only strict improvements are accepted.
pub fn polish(search: &Search, start: &MinimizationResult, cfg: &SearchConfig) -> Result<MinimizationResult> {
    let mut best = start.clone();
    let finest: Vec<Vec<f64>> = search
        .grid
        .axes
        .iter()
        .map(|g| {
            let mut n = g.nodes.clone();
            for _ in 0..search.grid.refine_depth {
                n = refine_nodes(&n);
            }
            n
        })
        .collect();
    let ab = [Axis::Alpha, Axis::Beta].map(|a| search.grid.axes.iter().position(|g| g.axis == a));
    let mut dirs: Vec<Option<usize>> = (0..search.grid.axes.len()).map(Some).collect();
    if search.region != Region::All && ab[0].is_some() && ab[1].is_some() {
        // `None` moves along the diagonal `alpha = beta`
        dirs.push(None);
    }
    for _sweep in 0..8 {
        let before = best.value;
        for &dir in &dirs {
            let (k, idxs) = match dir {
                Some(k) => (k, vec![search.grid.axes[k].axis.index()]),
                None if best.coords[0] == best.coords[1] => (ab[0].unwrap(), vec![0, 1]),
                None => continue,
            };
            let axis = search.grid.axes[k].axis;
            let x0 = best.coords[idxs[0]];
            let nodes = &finest[k];
            let pos = nodes.partition_point(|&v| v < x0);
            let mut lo = nodes[pos.saturating_sub(1)];
            let mut hi = nodes[(pos + 1).min(nodes.len() - 1)];
            if dir.is_some() {
                match (axis, search.region) {
                    (Axis::Alpha, Region::AlphaGeBeta) | (Axis::Beta, Region::AlphaLeBeta) => {
                        lo = lo.max(best.coords[1 - axis.index()])
                    }
                    (Axis::Alpha, Region::AlphaLeBeta) | (Axis::Beta, Region::AlphaGeBeta) => {
                        hi = hi.min(best.coords[1 - axis.index()])
                    }
                    _ => {}
                }
            }
            if !(hi > lo) {
                continue;
            }
            let mut err = None;
            let mut evals = 0;
            let mut seen: Vec<(f64, Coords)> = Vec::new();
            let m = minimize_1d_with(
                |t| {
                    let mut c = best.coords;
                    for &i in &idxs {
                        c[i] = t;
                    }
                    let r = match search.inner_min(&c, cfg) {
                        Ok((v, c, n)) => {
                            evals += n;
                            (v, c)
                        }
                        Err(e) => {
                            err.get_or_insert(e);
                            (f64::NAN, c)
                        }
                    };
                    seen.push(r);
                    r.0
                },
                lo,
                hi,
                17,
                ScanKind::Uniform,
                cfg.tol_abscissa,
            );
            if let Some(e) = err {
                return Err(e);
            }
            let m = m.map_err(|_| Error::NonFinite { op: "polish", at: best.argmin })?;
            let (v, c) = *seen.iter().find(|(v, c)| *v == m.value && c[idxs[0]] == m.x).unwrap();
            best.evaluations += evals;
            if v < best.value {
                best = search.result(v, c, best.evaluations, best.coverage.clone());
            }
        }
        if !(best.value < before) {
            break;
        }
    }
    Ok(best)
}

/// Compass search over every coordinate of the search (outer and inner)
/// from `start`, evaluating the target directly. Returns the best value
/// found; used to cross-check grid results.
pub fn coordinate_search(search: &Search, start: &Coords) -> (f64, Coords) {
    let mut axes: Vec<(usize, f64, f64)> = Vec::new();
    for g in &search.grid.axes {
        axes.push((g.axis.index(), g.nodes[0], *g.nodes.last().unwrap()));
    }
    if let Some(i) = search.inner {
        axes.push((i.axis.index(), i.lo, i.hi));
    }
    let diagonal = search.region != Region::All;
    let mut c = *start;
    let mut v = search.target.eval(&c);
    let mut step = 1e-2;
    while step > 1e-10 {
        let mut moved = false;
        let moves = axes.iter().map(|&(i, lo, hi)| (i, i, lo, hi));
        let diag = axes.iter().filter(|a| diagonal && a.0 == 0).map(|&(_, lo, hi)| (0, 1, lo, hi));
        for (idx, idx2, lo, hi) in moves.chain(diag).collect::<Vec<_>>() {
            for dir in [-1.0, 1.0] {
                let mut t = c;
                t[idx] = (c[idx] + dir * step * (hi - lo)).clamp(lo, hi);
                t[idx2] = (c[idx2] + dir * step * (hi - lo)).clamp(lo, hi);
                if t == c || !search.region.contains(&t) {
                    continue;
                }
                let tv = search.target.eval(&t);
                if tv < v {
                    v = tv;
                    c = t;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (v, c)
}

// ---------------------------------------------------------------------------
// Headline searches

fn ab_axes(cfg: &SearchConfig) -> Vec<GridAxis> {
    vec![
        GridAxis { axis: Axis::Alpha, nodes: biased_nodes(0.0, 1.0, cfg.nodes_alpha) },
        GridAxis { axis: Axis::Beta, nodes: biased_nodes(0.0, 1.0, cfg.nodes_beta) },
    ]
}

/// Kernel search over `alpha, beta in [0,1]`, `phi in [phi0, pi]`, inner `s`.
pub fn kernel_search(fid: FunctionId, s_lo: f64, s_hi: f64, kind: ScanKind, cfg: &SearchConfig) -> Search {
    let mut axes = ab_axes(cfg);
    axes.push(GridAxis { axis: Axis::Phi, nodes: uniform_nodes(PHI0, PI, cfg.nodes_phi) });
    Search {
        target: Target::new(fid),
        grid: GridSpec { axes, refine_depth: cfg.refine_depth },
        inner: Some(InnerAxis { axis: Axis::S, lo: s_lo, hi: s_hi, kind }),
        region: Region::All,
        fixed: fid.defaults(),
    }
}

/// Search over `alpha, beta in [0,1]` with inner `phi in [phi0, pi]`.
pub fn coefficient_search(target: Target, region: Region, cfg: &SearchConfig) -> Search {
    Search {
        target,
        grid: GridSpec { axes: ab_axes(cfg), refine_depth: cfg.refine_depth },
        inner: Some(InnerAxis { axis: Axis::Phi, lo: PHI0, hi: PI, kind: ScanKind::Uniform }),
        region,
        fixed: target.fid.defaults(),
    }
}

/// Search over `alpha, beta in [0,1]` at `phi = pi`.
pub fn pi_slice_search(target: Target, region: Region, cfg: &SearchConfig) -> Search {
    let mut fixed = target.fid.defaults();
    fixed[Axis::Phi.index()] = PI;
    Search {
        target,
        grid: GridSpec { axes: ab_axes(cfg), refine_depth: cfg.refine_depth },
        inner: None,
        region,
        fixed,
    }
}

/// Grid search followed by [`polish`].
pub fn search_min<E: Executor>(search: &Search, cfg: &SearchConfig, exec: &E) -> Result<MinimizationResult> {
    let grid = grid_min(search, cfg, exec)?;
    polish(search, &grid, cfg)
}

/// `m0 = inf L0` over `alpha, beta in [0,1]`, `phi in [phi0, pi]`, `s in [0,1]`.
pub fn compute_m0<E: Executor>(cfg: &SearchConfig, exec: &E) -> Result<MinimizationResult> {
    search_min(&kernel_search(FunctionId::L0, 0.0, 1.0, ScanKind::Uniform, cfg), cfg, exec)
}

/// The tail audit accompanying `m_inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailAudit {
    /// `inf Linf` over the base grid with `s in [30, 1e5]` on a log scan.
    pub tail: MinimizationResult,
    /// `Linf(0, 1, phi0; 1e5)`.
    pub spot: f64,
}

/// `m_inf = inf Linf` over the box with `s in [1, 30]`, plus the tail audit
/// on `s in [30, 1e5]`, which must stay strictly above `m_inf`.
pub fn compute_minf<E: Executor>(cfg: &SearchConfig, exec: &E) -> Result<(MinimizationResult, TailAudit)> {
    let main = search_min(&kernel_search(FunctionId::Linf, 1.0, S_MID, ScanKind::Uniform, cfg), cfg, exec)?;
    let tail_cfg = SearchConfig { refine_depth: 0, ..*cfg };
    let tail_search = kernel_search(FunctionId::Linf, S_MID, S_TAIL, ScanKind::Log, &tail_cfg);
    let tail = grid_min(&tail_search, &tail_cfg, exec)?;
    if !(tail.value > main.value) {
        return Err(Error::Certification { what: "tail audit: inf Linf on [30, 1e5]", value: tail.value, at: tail.argmin });
    }
    let spot = crate::kernels::linf(0.0, 1.0, PHI0, S_TAIL);
    Ok((main, TailAudit { tail, spot }))
}

fn positive(r: MinimizationResult, what: &'static str) -> Result<MinimizationResult> {
    if r.value > 0.0 {
        Ok(r)
    } else {
        Err(Error::Certification { what, value: r.value, at: r.argmin })
    }
}

/// `inf P5` over `alpha, beta in [0,1]`, `phi in [phi0, pi]`; must be positive.
pub fn compute_inf_p5<E: Executor>(infima: Infima, cfg: &SearchConfig, exec: &E) -> Result<MinimizationResult> {
    let s = coefficient_search(Target::with_infima(FunctionId::Pn, infima), Region::All, cfg);
    positive(search_min(&s, cfg, exec)?, "inf P5")
}

/// `inf F1` over `alpha >= beta`; must be positive.
pub fn compute_inf_f1<E: Executor>(cfg: &SearchConfig, exec: &E) -> Result<MinimizationResult> {
    let s = coefficient_search(Target::new(FunctionId::F1), Region::AlphaGeBeta, cfg);
    positive(search_min(&s, cfg, exec)?, "inf F1")
}

/// `inf F2` over `alpha <= beta`; must be positive.
pub fn compute_inf_f2<E: Executor>(cfg: &SearchConfig, exec: &E) -> Result<MinimizationResult> {
    let s = coefficient_search(Target::new(FunctionId::F2), Region::AlphaLeBeta, cfg);
    positive(search_min(&s, cfg, exec)?, "inf F2")
}

/// Infimum of `P5`, `F1` or `F2` over the `(alpha, beta)` square at `phi = pi`
/// (`F1` on `alpha >= beta`, `F2` on `alpha <= beta`).
pub fn pi_slice_inf<E: Executor>(
    fid: FunctionId,
    infima: Infima,
    cfg: &SearchConfig,
    exec: &E,
) -> Result<MinimizationResult> {
    let region = match fid {
        FunctionId::F1 => Region::AlphaGeBeta,
        FunctionId::F2 => Region::AlphaLeBeta,
        _ => Region::All,
    };
    search_min(&pi_slice_search(Target::with_infima(fid, infima), region, cfg), cfg, exec)
}

#[cfg(test)]
mod tests;
