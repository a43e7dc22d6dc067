//! `surface`: a function tabulated over two axes, as CSV.

use brannan_core::minimize::{Axis, Coords, FunctionId, Target};
use brannan_core::Executor;

use super::{CliError, Exit, Output};
use crate::args::SurfaceArgs;
use crate::exec::Pool;
use crate::format::csv_number;

/// Evenly spaced nodes with exact endpoints.
pub fn nodes(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let m = (count - 1) as f64;
    (0..count).map(|i| if i + 1 == count { hi } else { lo + (hi - lo) * (i as f64 / m) }).collect()
}

fn check_axis(fid: FunctionId, axis: Axis) -> Result<(), CliError> {
    if fid.axes().contains(&axis) {
        Ok(())
    } else {
        Err(CliError::usage(format!("{fid} does not depend on {}", axis.name())))
    }
}

/// Renders the CSV document; `Err` on usage errors or a non-finite value.
pub fn render(args: &SurfaceArgs, pool: &Pool) -> Result<String, CliError> {
    let fid = args.func;
    if fid == FunctionId::SmokeQuad {
        return Err(CliError::usage("smoke-quad has a single axis"));
    }
    if args.axes.len() != 2 {
        return Err(CliError::usage(format!("expected exactly 2 --axes, got {}", args.axes.len())));
    }
    let (a1, a2) = (args.axes[0], args.axes[1]);
    if a1.0 == a2.0 {
        return Err(CliError::usage("the two axes must differ"));
    }
    let mut base: Coords = fid.defaults();
    for &(axis, v) in &args.fix {
        check_axis(fid, axis)?;
        if axis == a1.0 || axis == a2.0 {
            return Err(CliError::usage(format!("{} is both fixed and free", axis.name())));
        }
        base[axis.index()] = v;
    }
    check_axis(fid, a1.0)?;
    check_axis(fid, a2.0)?;
    let xs = nodes(a1.1, a1.2, a1.3);
    let ys = nodes(a2.1, a2.2, a2.3);
    let target = Target::new(fid);
    let rows: Vec<Result<String, CliError>> = pool.map(&xs, |&x| {
        let mut line = String::new();
        for &y in &ys {
            let mut c = base;
            c[a1.0.index()] = x;
            c[a2.0.index()] = y;
            let v = target.eval(&c);
            if !v.is_finite() {
                return Err(CliError {
                    exit: Exit::Numerical,
                    message: format!("{fid} is not finite at {}", target.point(&c)),
                });
            }
            line += &format!("{},{},{}\n", csv_number(x), csv_number(y), csv_number(v));
        }
        Ok(line)
    });
    let mut out = format!("{},{},value\n", a1.0.name(), a2.0.name());
    for r in rows {
        out += &r?;
    }
    Ok(out)
}

pub fn run(args: &SurfaceArgs, pool: &Pool) -> Result<Output, CliError> {
    let csv = render(args, pool)?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Output { stdout: String::new(), exit: Exit::Pass })
        }
        None => Ok(Output { stdout: csv, exit: Exit::Pass }),
    }
}
