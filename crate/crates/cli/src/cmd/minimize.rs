//! `minimize`: box minimization of any target.

use brannan_core::minimize::{
    self, biased_nodes, uniform_nodes, Axis, FunctionId, GridAxis, GridSpec, InnerAxis, Region, ScanKind, Search, Target,
};
use serde_json::json;

use super::{search_cfg, CliError, Exit, Output};
use crate::args::{MinimizeArgs, RegionArg, ScanArg};
use crate::exec::Pool;
use crate::format;

/// Outer grid axes supported by the engine.
const MAX_OUTER: usize = 3;

pub fn build(args: &MinimizeArgs, cfg: &minimize::SearchConfig) -> Result<Search, CliError> {
    let fid = args.func;
    if args.boxes.is_empty() {
        return Err(CliError::usage("at least one --box is required"));
    }
    let mut seen = Vec::new();
    for &(axis, _, _) in &args.boxes {
        if !fid.axes().contains(&axis) {
            return Err(CliError::usage(format!("{fid} does not depend on {}", axis.name())));
        }
        if seen.contains(&axis) {
            return Err(CliError::usage(format!("{} boxed twice", axis.name())));
        }
        seen.push(axis);
    }
    let inner_axis = match args.inner {
        Some(a) if !seen.contains(&a) => return Err(CliError::usage(format!("--inner {} has no --box", a.name()))),
        Some(a) => Some(a),
        None if args.boxes.len() == 1 => Some(args.boxes[0].0),
        None => None,
    };
    let mut fixed = fid.defaults();
    for &(axis, v) in &args.fix {
        if seen.contains(&axis) {
            return Err(CliError::usage(format!("{} is both fixed and boxed", axis.name())));
        }
        fixed[axis.index()] = v;
    }
    let mut outer = Vec::new();
    let mut inner = None;
    for &(axis, lo, hi) in &args.boxes {
        if Some(axis) == inner_axis {
            let kind = match args.scan {
                ScanArg::Uniform => ScanKind::Uniform,
                ScanArg::Log if lo > 0.0 => ScanKind::Log,
                ScanArg::Log => return Err(CliError::usage("a log scan needs a positive lower end")),
                ScanArg::Auto if lo > 0.0 && hi / lo >= 100.0 => ScanKind::Log,
                ScanArg::Auto => ScanKind::Uniform,
            };
            inner = Some(InnerAxis { axis, lo, hi, kind });
            continue;
        }
        let nodes = match axis {
            Axis::Alpha => biased_nodes(lo, hi, cfg.nodes_alpha),
            Axis::Beta => biased_nodes(lo, hi, cfg.nodes_beta),
            _ => uniform_nodes(lo, hi, cfg.nodes_phi),
        };
        outer.push(GridAxis { axis, nodes });
    }
    if outer.len() > MAX_OUTER {
        return Err(CliError::usage(format!("at most {MAX_OUTER} outer axes; make one of them --inner")));
    }
    let both = seen.contains(&Axis::Alpha) && seen.contains(&Axis::Beta);
    let region = match args.region {
        Some(RegionArg::All) => Region::All,
        Some(RegionArg::Ge) => Region::AlphaGeBeta,
        Some(RegionArg::Le) => Region::AlphaLeBeta,
        None if both && fid == FunctionId::F1 => Region::AlphaGeBeta,
        None if both && fid == FunctionId::F2 => Region::AlphaLeBeta,
        None => Region::All,
    };
    Ok(Search {
        target: Target::new(fid),
        grid: GridSpec { axes: outer, refine_depth: cfg.refine_depth },
        inner,
        region,
        fixed,
    })
}

pub fn run(args: &MinimizeArgs, pool: &Pool) -> Result<Output, CliError> {
    let cfg = search_cfg(&args.cfg)?;
    let search = build(args, &cfg)?;
    let r = minimize::search_min(&search, &cfg, pool)?;
    let stdout = if args.json {
        let mut v = json!({ "func": args.func.name() });
        if let (Some(o), Some(res)) = (v.as_object_mut(), format::minimization(&r).as_object()) {
            o.extend(res.clone());
            o.insert("cfg".into(), format::search_cfg(&cfg));
        }
        format::to_string(&v)
    } else {
        let cfg_line: Vec<String> = cfg.entries().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{}: min {:+.15e} at {}\n  {} ({}), {} evaluations, boundary faces covered {}/{}\n  cfg {}\n",
            args.func,
            r.value,
            r.argmin,
            r.classification.name(),
            r.formula,
            r.evaluations,
            r.coverage.faces() - r.coverage.missing(),
            r.coverage.faces(),
            cfg_line.join(" ")
        )
    };
    Ok(Output { stdout, exit: Exit::Pass })
}
