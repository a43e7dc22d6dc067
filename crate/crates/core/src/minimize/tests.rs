use super::*;
use crate::constants;
use crate::Sequential;
use proptest::prelude::*;

/// Evaluates in reverse order, to expose any order dependence.
struct Reversed;

impl Executor for Reversed {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        let mut out: Vec<R> = items.iter().rev().map(f).collect();
        out.reverse();
        out
    }
}

/// Spreads items over four OS threads in interleaved order.
struct Threads;

impl Executor for Threads {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        let f = &f;
        let parts: Vec<Vec<(usize, R)>> = std::thread::scope(|sc| {
            let hs: Vec<_> = (0..4)
                .map(|w| {
                    sc.spawn(move || {
                        items.iter().enumerate().filter(|(i, _)| i % 4 == w).map(|(i, x)| (i, f(x))).collect::<Vec<_>>()
                    })
                })
                .collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut all: Vec<(usize, R)> = parts.into_iter().flatten().collect();
        all.sort_by_key(|p| p.0);
        all.into_iter().map(|p| p.1).collect()
    }
}

fn small() -> SearchConfig {
    SearchConfig { nodes_alpha: 14, nodes_beta: 14, nodes_phi: 8, scan_s: 32, ..SearchConfig::default() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

// `L0(0, 0, phi0; s)` minimized in 60-digit arithmetic.
const M0_ORACLE: f64 = -0.097_638_095_804_0;
const M0_S_ORACLE: f64 = 0.021_592_302_46;
// `min over alpha = beta of 2^alpha Gamma(2 - alpha) / (16 pi alpha)`, 30 digits.
const F1_PI_ORACLE: f64 = 0.039_242_130_377_048_996;
const F1_PI_ALPHA_ORACLE: f64 = 0.897_830_135_445_557_2;

#[test]
fn quadratic_smoke() {
    let r = minimize_1d(|s| (s - 0.3) * (s - 0.3), 0.0, 1.0).unwrap();
    assert!((r.argmin.s.unwrap() - 0.3).abs() <= 1e-9, "{r:?}");
    assert!(r.value <= 1e-18);
    assert_eq!(r.classification, Classification::InteriorCritical);
}

#[test]
fn inner_axis_only_search() {
    // no outer axes: refinement levels have nothing to add
    let search = Search {
        target: Target::new(FunctionId::SmokeQuad),
        grid: GridSpec { axes: Vec::new(), refine_depth: 2 },
        inner: Some(InnerAxis { axis: Axis::S, lo: 0.0, hi: 1.0, kind: ScanKind::Uniform }),
        region: Region::All,
        fixed: FunctionId::SmokeQuad.defaults(),
    };
    let r = search_min(&search, &SearchConfig::default(), &Sequential).unwrap();
    assert!((r.argmin.s.unwrap() - 0.3).abs() <= 1e-9, "{r:?}");
    assert_eq!(r.classification, Classification::InteriorCritical);
}

#[test]
fn endpoint_minimum_is_exact() {
    let r = minimize_1d(|s| s, 0.25, 1.0).unwrap();
    assert_eq!(r.argmin.s, Some(0.25));
    assert_eq!(r.classification, Classification::AxisEndpoint);
    let r = minimize_1d(|s| -s * s, -1.0, 0.5).unwrap();
    assert_eq!(r.argmin.s, Some(-1.0));
}

#[test]
fn finds_the_lower_of_two_wells() {
    let f = |s: f64| (1.0 - (s - 0.2) * (s - 0.2) * 400.0).min(0.0) * 0.5 + (s - 0.7) * (s - 0.7) - 0.25;
    let r = minimize_1d(f, 0.0, 1.0).unwrap();
    let g = minimize_1d_with(f, 0.0, 1.0, 20_000, ScanKind::Uniform, 1e-12).unwrap();
    assert!((r.value - g.value).abs() < 1e-12);
    assert!((r.argmin.s.unwrap() - g.x).abs() < 1e-6);
}

#[test]
fn non_finite_node_is_named() {
    let err = minimize_1d(|s| if s > 0.7 { f64::NAN } else { s }, 0.0, 1.0).unwrap_err();
    let Error::NonFinite { at, .. } = err else { panic!("{err:?}") };
    let s = at.s.unwrap();
    assert!(s > 0.7 && s < 0.7 + 1.0 / 2047.0);
}

#[test]
fn l0_corner_minimum_one_dimensional() {
    let ctx = KernelCtx::new(0.0, 0.0, PHI0);
    let r = minimize_1d(|s| ctx.l0(s), 0.0, 1.0).unwrap();
    assert!((r.value - M0_ORACLE).abs() < 1e-12, "{}", r.value);
    assert!((r.argmin.s.unwrap() - M0_S_ORACLE).abs() < 1e-6);
}

#[test]
fn linf_corner_minimum_one_dimensional() {
    let ctx = KernelCtx::new(0.0, 1.0, PHI0);
    let r = minimize_1d(|s| ctx.linf(s), 1.0, 30.0).unwrap();
    assert!((r.value - constants::MINF).abs() < 1e-9, "{}", r.value);
    assert!((r.argmin.s.unwrap() - constants::MINF_S).abs() < 1e-5);
}

#[test]
fn log_scan_refines_in_log_variable() {
    let m = minimize_1d_with(|s: f64| (libm::log(s) - 3.0).powi(2), 1.0, 1e4, 64, ScanKind::Log, 1e-10).unwrap();
    assert!((m.x - libm::exp(3.0)).abs() < 1e-6);
    assert!(!m.at_endpoint);
}

#[test]
fn biased_nodes_shape() {
    let n = biased_nodes(0.0, 1.0, 60);
    assert_eq!(n.len(), 60);
    assert_eq!((n[0], n[59]), (0.0, 1.0));
    let h: Vec<f64> = n.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(rel(h[1] / h[0], 1.0 / EDGE_RATIO) < 1e-12);
    assert!(rel(h[57] / h[58], 1.0 / EDGE_RATIO) < 1e-12);
    assert!(rel(h[29] / h[0], libm::pow(EDGE_RATIO, -10.0)) < 1e-12);
    assert!(h.iter().all(|&x| x >= MIN_SPACING));
}

#[test]
fn uniform_and_refined_nodes() {
    let u = uniform_nodes(PHI0, PI, 40);
    assert_eq!((u[0], u[39]), (PHI0, PI));
    let r = refine_nodes(&[0.0, 0.3, 1.0]);
    assert_eq!(r.len(), 7);
    assert_eq!((r[0], r[3], r[6]), (0.0, 0.3, 1.0));
    assert!((r[1] - 0.1).abs() < 1e-16 && (r[5] - (0.3 + 1.4 / 3.0)).abs() < 1e-16);
    let l = log_nodes(30.0, 1e5, 64);
    assert_eq!((l[0], l[63]), (30.0, 1e5));
}

#[test]
fn cfg_text_round_trip() {
    let cfg = SearchConfig { nodes_alpha: 11, scan_s: 99, tol_abscissa: 1e-9, prune: false, ..SearchConfig::default() };
    let text = cfg.to_text();
    assert!(text.starts_with("nodes_alpha=11\nnodes_beta=60\n"));
    assert_eq!(SearchConfig::from_text(&text).unwrap(), cfg);
    assert!(SearchConfig::from_text("bogus=1").is_err());
    assert!(SearchConfig::from_text("nodes_phi=1").is_err());
    assert!(SearchConfig::from_text("tol_abscissa=x").is_err());
}

#[test]
fn function_names_parse() {
    for f in [FunctionId::L0, FunctionId::Linf, FunctionId::F1, FunctionId::F, FunctionId::SmokeQuad] {
        assert_eq!(FunctionId::parse(f.name()), Some(f));
    }
    assert_eq!(FunctionId::parse("p5"), Some(FunctionId::Pn));
    assert_eq!(FunctionId::parse("LINF"), Some(FunctionId::Linf));
    assert_eq!(FunctionId::parse("nope"), None);
    assert_eq!(Axis::parse("Phi"), Some(Axis::Phi));
}

#[test]
fn constant_function_returns_smallest_node() {
    let cfg = small();
    let mut search = kernel_search(FunctionId::L0, 0.0, 1.0, ScanKind::Uniform, &cfg);
    search.target = Target::new(FunctionId::SmokeQuad);
    let r = grid_min(&search, &cfg, &Sequential).unwrap();
    assert_eq!((r.coords[0], r.coords[1], r.coords[2]), (0.0, 0.0, PHI0));
    assert!((r.coords[3] - 0.3).abs() < 1e-9);
}

#[test]
fn worker_order_does_not_matter() {
    let cfg = small();
    let s = kernel_search(FunctionId::L0, 0.0, 1.0, ScanKind::Uniform, &cfg);
    let a = grid_min(&s, &cfg, &Sequential).unwrap();
    assert_eq!(grid_min(&s, &cfg, &Reversed).unwrap(), a);
    assert_eq!(grid_min(&s, &cfg, &Threads).unwrap(), a);
    let p = coefficient_search(Target::new(FunctionId::Pn), Region::All, &cfg);
    assert_eq!(search_min(&p, &cfg, &Sequential).unwrap(), search_min(&p, &cfg, &Threads).unwrap());
}

#[test]
fn pruning_agrees_with_full_refinement() {
    let cfg = small();
    let full = SearchConfig { prune: false, ..cfg };
    for (fid, lo, hi) in [(FunctionId::L0, 0.0, 1.0), (FunctionId::Linf, 1.0, 30.0)] {
        let s = kernel_search(fid, lo, hi, ScanKind::Uniform, &cfg);
        let a = grid_min(&s, &cfg, &Sequential).unwrap();
        let b = grid_min(&s, &full, &Sequential).unwrap();
        assert_eq!((a.value, a.coords), (b.value, b.coords));
        assert!(a.evaluations < b.evaluations);
    }
}

#[test]
fn refinement_is_monotone() {
    let base = small();
    let searches = |cfg: &SearchConfig| {
        vec![
            kernel_search(FunctionId::L0, 0.0, 1.0, ScanKind::Uniform, cfg),
            kernel_search(FunctionId::Linf, 1.0, 30.0, ScanKind::Uniform, cfg),
            coefficient_search(Target::new(FunctionId::Pn), Region::All, cfg),
            coefficient_search(Target::new(FunctionId::F1), Region::AlphaGeBeta, cfg),
            coefficient_search(Target::new(FunctionId::F2), Region::AlphaLeBeta, cfg),
            pi_slice_search(Target::new(FunctionId::F2), Region::AlphaLeBeta, cfg),
        ]
    };
    let mut prev: Option<Vec<f64>> = None;
    for depth in 0..3 {
        let cfg = SearchConfig { refine_depth: depth, ..base };
        let vals: Vec<f64> = searches(&cfg).iter().map(|s| grid_min(s, &cfg, &Sequential).unwrap().value).collect();
        if let Some(p) = &prev {
            for (a, b) in p.iter().zip(&vals) {
                assert!(b <= a, "depth {depth}: {b} > {a}");
            }
        }
        prev = Some(vals);
    }
}

#[test]
fn coverage_counts_every_face() {
    let cfg = small();
    let s = kernel_search(FunctionId::L0, 0.0, 1.0, ScanKind::Uniform, &cfg);
    let r = grid_min(&s, &cfg, &Sequential).unwrap();
    assert_eq!(r.coverage.faces(), 26);
    assert_eq!(r.coverage.missing(), 0);
    // corner (0, 0, phi0): signature (lo, lo, lo)
    assert!(r.coverage.counts[0] >= 1);
    let t = coefficient_search(Target::new(FunctionId::F1), Region::AlphaGeBeta, &cfg);
    let r = grid_min(&t, &cfg, &Sequential).unwrap();
    // alpha = 0 forces beta = 0 and beta = 1 forces alpha = 1
    assert_eq!(r.coverage.missing(), 3);
}

#[test]
fn grid_errors_carry_coordinates() {
    let cfg = SearchConfig { nodes_alpha: 3, nodes_beta: 3, nodes_phi: 2, scan_s: 8, refine_depth: 0, ..small() };
    // Linf on s in [0, 1] hits s = 0, where it is undefined
    let s = kernel_search(FunctionId::Linf, 0.0, 1.0, ScanKind::Uniform, &cfg);
    let Err(Error::NonFinite { at, .. }) = grid_min(&s, &cfg, &Sequential) else { panic!() };
    assert_eq!(at.s, Some(0.0));
    assert!(at.phi.is_some());
}

struct Headline {
    search: Search,
    result: MinimizationResult,
}

fn headlines() -> Vec<(&'static str, Headline)> {
    let cfg = SearchConfig::default();
    let inf = constants::FROZEN_INFIMA;
    let run = |search: Search| {
        let result = search_min(&search, &cfg, &Sequential).unwrap();
        Headline { search, result }
    };
    vec![
        ("m0", run(kernel_search(FunctionId::L0, 0.0, 1.0, ScanKind::Uniform, &cfg))),
        ("minf", run(kernel_search(FunctionId::Linf, 1.0, S_MID, ScanKind::Uniform, &cfg))),
        ("p5", run(coefficient_search(Target::with_infima(FunctionId::Pn, inf), Region::All, &cfg))),
        ("f1", run(coefficient_search(Target::new(FunctionId::F1), Region::AlphaGeBeta, &cfg))),
        ("f2", run(coefficient_search(Target::new(FunctionId::F2), Region::AlphaLeBeta, &cfg))),
        ("f1_pi", run(pi_slice_search(Target::new(FunctionId::F1), Region::AlphaGeBeta, &cfg))),
        ("f2_pi", run(pi_slice_search(Target::new(FunctionId::F2), Region::AlphaLeBeta, &cfg))),
        ("p5_pi", run(pi_slice_search(Target::with_infima(FunctionId::Pn, inf), Region::All, &cfg))),
    ]
}

#[test]
fn headline_searches() {
    let h = headlines();
    let get = |k: &str| &h.iter().find(|(n, _)| *n == k).unwrap().1.result;

    let m0 = get("m0");
    assert!((m0.value - M0_ORACLE).abs() < 1e-12, "{}", m0.value);
    assert_eq!(&m0.coords[..3], &[0.0, 0.0, PHI0]);
    assert!((m0.coords[3] - M0_S_ORACLE).abs() < 1e-6);
    assert_eq!(m0.classification, Classification::InteriorCritical);
    assert_eq!(m0.formula, "corner (0,0) log-difference form");

    let mi = get("minf");
    assert!((mi.value - constants::MINF).abs() < 1e-9);
    assert_eq!(&mi.coords[..3], &[0.0, 1.0, PHI0]);
    assert!((mi.coords[3] - constants::MINF_S).abs() < 1e-5);

    let p5 = get("p5");
    assert!((p5.value - constants::P5).abs() < 1e-9);
    assert_eq!(&p5.coords[..3], &[0.0, 1.0, PHI0]);
    assert_eq!(p5.classification, Classification::BoxCorner);
    let closed = bounds::p_n(0.0, 1.0, PHI0, 5.0, &constants::FROZEN_INFIMA);
    assert!((p5.value - closed).abs() <= 1e-12);

    let f1 = get("f1");
    assert!((f1.value - constants::F1).abs() < 1e-10);
    assert_eq!(&f1.coords[..3], &[1.0, 1.0, PHI0]);

    let f2 = get("f2");
    assert!((f2.value - constants::F2).abs() < 1e-9);
    assert!((f2.coords[0] - constants::F2_ALPHA).abs() < 1e-6);
    assert_eq!(&f2.coords[1..3], &[1.0, PHI0]);
    assert_eq!(f2.classification, Classification::AxisEndpoint);

    let f2pi = get("f2_pi");
    assert!((f2pi.value - constants::F2_PI).abs() < 1e-9);
    assert!((f2pi.coords[0] - constants::F2_PI_ALPHA).abs() < 1e-6);
    assert_eq!(f2pi.coords[1], 1.0);

    let f1pi = get("f1_pi");
    assert!((f1pi.value - F1_PI_ORACLE).abs() < 1e-12, "{}", f1pi.value);
    assert!((f1pi.coords[0] - F1_PI_ALPHA_ORACLE).abs() < 1e-6);
    assert_eq!(f1pi.coords[0], f1pi.coords[1]);
    assert!(f1pi.value < constants::F1_PI);

    // general P_n at phi = pi, (0, 1): 91 / (800 pi) - |m0| / 5 - 37 |m_inf| / (125 e^5)
    let inf = constants::FROZEN_INFIMA;
    let oracle = 91.0 / (800.0 * PI) - inf.m0.abs() / 5.0 - 37.0 * inf.minf.abs() / (125.0 * libm::exp(5.0));
    let p5pi = get("p5_pi");
    assert!((p5pi.value - oracle).abs() < 1e-12);
    assert_eq!(&p5pi.coords[..2], &[0.0, 1.0]);

    for (name, hl) in &h {
        let r = &hl.result;
        let again = hl.search.target.eval(&r.coords);
        assert!(rel(again, r.value) <= 1e-13, "{name}: {again} vs {}", r.value);
        let (cs, _) = coordinate_search(&hl.search, &r.coords);
        assert!(r.value - cs <= 1e-9, "{name}: descent improves {} to {cs}", r.value);
        assert!(r.evaluations > 0);
    }
}

#[test]
fn tail_audit() {
    let (main, audit) = compute_minf(&SearchConfig::default(), &Sequential).unwrap();
    assert!(audit.tail.value > main.value);
    assert!((audit.tail.value - constants::TAIL_MIN).abs() < 1e-9);
    assert_eq!(audit.tail.coords[..4], [0.0, 1.0, PHI0, 30.0]);
    assert!((audit.spot - constants::TAIL_SPOT).abs() < 1e-13);
}

#[test]
fn nonpositive_infimum_is_a_certification_failure() {
    let cfg = small();
    let r = compute_inf_p5(Infima::new(-10.0, -1.0), &cfg, &Sequential);
    assert!(matches!(r, Err(Error::Certification { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn biased_nodes_are_increasing(count in 2usize..400, a in -2.0f64..2.0, w in 1e-3f64..10.0) {
        let n = biased_nodes(a, a + w, count);
        prop_assert_eq!(n.len(), count);
        prop_assert_eq!(n[0], a);
        prop_assert_eq!(n[count - 1], a + w);
        prop_assert!(n.windows(2).all(|p| p[1] > p[0]));
        prop_assert!(n.windows(2).all(|p| p[1] - p[0] >= MIN_SPACING * w));
    }

    #[test]
    fn shifted_quadratics(c in 0.001f64..0.999, k in 0.1f64..100.0) {
        let r = minimize_1d(|s| k * (s - c) * (s - c), 0.0, 1.0).unwrap();
        prop_assert!((r.argmin.s.unwrap() - c).abs() < 1e-7);
        prop_assert!(r.value <= k * 1e-14);
    }
}
