//! `constants`: rerun the headline searches and compare with the frozen table.

use brannan_core::constants::{self, Constant, FROZEN_INFIMA};
use brannan_core::kernels::PHI0;
use brannan_core::minimize::{self, FunctionId, MinimizationResult, S_TAIL};
use brannan_core::bounds::Infima;
use brannan_core::ParameterPoint;
use serde_json::{json, Map, Value};

use super::{search_cfg, CliError, Exit, Output};
use crate::args::{ConstantsArgs, Which};
use crate::exec::Pool;
use crate::format;

/// One computed constant next to its table entry.
#[derive(Debug, Clone)]
pub struct Row {
    pub reference: &'static Constant,
    pub value: f64,
    pub argmin: Option<ParameterPoint>,
    /// `(axis name, computed coordinate, table index)` for located constants.
    pub located: Option<(&'static str, f64, usize)>,
    pub classification: Option<&'static str>,
    pub formula: Option<&'static str>,
    pub evaluations: Option<u64>,
}

impl Row {
    fn from_result(key: &str, r: &MinimizationResult) -> Self {
        let reference = constants::lookup(key).expect("table key");
        let located = match key {
            "m0" | "minf" => Some(("s", r.coords[3], 3)),
            "f2" | "f2_pi" => Some(("alpha", r.coords[0], 0)),
            _ => None,
        };
        Row {
            reference,
            value: r.value,
            argmin: Some(r.argmin),
            located,
            classification: Some(r.classification.name()),
            formula: Some(r.formula),
            evaluations: Some(r.evaluations),
        }
    }

    pub fn abs_diff(&self) -> f64 {
        (self.value - self.reference.value).abs()
    }

    fn located_diff(&self) -> Option<f64> {
        self.located.map(|(_, v, i)| (v - self.reference.at[i].unwrap_or(f64::NAN)).abs())
    }

    pub fn within(&self) -> bool {
        self.abs_diff() <= self.reference.tol && self.located_diff().map_or(true, |d| d <= self.reference.at_tol)
    }

    fn json(&self) -> Value {
        let located = match self.located {
            Some((axis, v, i)) => json!({
                "axis": axis,
                "value": v,
                "reference": self.reference.at[i],
                "tol": self.reference.at_tol,
            }),
            None => Value::Null,
        };
        json!({
            "value": self.value,
            "reference": self.reference.value,
            "abs_diff": self.abs_diff(),
            "tol": self.reference.tol,
            "within_tol": self.within(),
            "argmin": self.argmin.as_ref().map(format::point),
            "located": located,
            "classification": self.classification,
            "formula": self.formula,
            "evaluations": self.evaluations,
        })
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{:<10} {:+.12e}  ref {:+.12e}  |diff| {:.2e}  tol {:.0e}  {}\n",
            self.reference.key,
            self.value,
            self.reference.value,
            self.abs_diff(),
            self.reference.tol,
            if self.within() { "ok" } else { "MISS" }
        );
        if let Some(p) = &self.argmin {
            s += &format!("{:<10} at {p}", "");
            if let (Some(c), Some(f)) = (self.classification, self.formula) {
                s += &format!(" [{c}; {f}]");
            }
            s.push('\n');
        }
        if let (Some((axis, v, i)), Some(d)) = (self.located, self.located_diff()) {
            s += &format!(
                "{:<10} {axis} = {v:.12}  ref {:.12}  |diff| {d:.2e}  tol {:.0e}\n",
                "",
                self.reference.at[i].unwrap_or(f64::NAN),
                self.reference.at_tol
            );
        }
        s
    }
}

/// Computed rows grouped as reported: `(group key, rows)`.
pub struct Table {
    pub groups: Vec<(&'static str, Vec<Row>)>,
    pub infima: Infima,
    pub recomputed: bool,
}

impl Table {
    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.groups.iter().flat_map(|(_, r)| r.iter())
    }

    pub fn row(&self, key: &str) -> Option<&Row> {
        self.rows().find(|r| r.reference.key == key)
    }

    pub fn all_within(&self) -> bool {
        self.rows().all(Row::within)
    }

    pub fn json(&self) -> Value {
        let mut top = Map::new();
        for (group, rows) in &self.groups {
            let v = match *group {
                "minf" => {
                    let mut o = rows[0].json();
                    o["tail"] = rows[1].json();
                    o["tail_spot"] = rows[2].json();
                    o
                }
                "p5" => {
                    let mut o = rows[0].json();
                    o["infima"] = json!({
                        "source": if self.recomputed { "recomputed" } else { "frozen" },
                        "m0": self.infima.m0,
                        "minf": self.infima.minf,
                    });
                    o
                }
                "pi_slice" => json!({ "p5": rows[0].json(), "f1": rows[1].json(), "f2": rows[2].json() }),
                _ => rows[0].json(),
            };
            top.insert(group.to_string(), v);
        }
        Value::Object(top)
    }
}

fn wants(which: Which, group: Which) -> bool {
    which == Which::All || which == group
}

/// Runs the searches behind `which`.
pub fn compute(which: Which, recompute: bool, cfg: &minimize::SearchConfig, pool: &Pool) -> Result<Table, CliError> {
    let needs_p5 = wants(which, Which::P5) || wants(which, Which::PiSlice);
    let mut groups = Vec::new();
    let mut infima = FROZEN_INFIMA;
    let mut m0 = None;
    if wants(which, Which::M0) || (recompute && needs_p5) {
        let r = minimize::compute_m0(cfg, pool)?;
        infima.m0 = r.value;
        m0 = Some(r);
    }
    let mut minf = None;
    if wants(which, Which::Minf) || (recompute && needs_p5) {
        let (r, audit) = minimize::compute_minf(cfg, pool)?;
        infima.minf = r.value;
        minf = Some((r, audit));
    }
    if !recompute {
        infima = FROZEN_INFIMA;
    }
    if wants(which, Which::M0) {
        groups.push(("m0", vec![Row::from_result("m0", m0.as_ref().unwrap())]));
    }
    if wants(which, Which::Minf) {
        let (r, audit) = minf.as_ref().unwrap();
        let spot = Row {
            reference: constants::lookup("tail_spot").unwrap(),
            value: audit.spot,
            argmin: Some(ParameterPoint::new(0.0, 1.0).with_phi(PHI0).with_s(S_TAIL)),
            located: None,
            classification: None,
            formula: None,
            evaluations: None,
        };
        groups.push(("minf", vec![Row::from_result("minf", r), Row::from_result("tail", &audit.tail), spot]));
    }
    if wants(which, Which::P5) {
        let r = minimize::compute_inf_p5(infima, cfg, pool)?;
        groups.push(("p5", vec![Row::from_result("p5", &r)]));
    }
    if wants(which, Which::F1) {
        groups.push(("f1", vec![Row::from_result("f1", &minimize::compute_inf_f1(cfg, pool)?)]));
    }
    if wants(which, Which::F2) {
        groups.push(("f2", vec![Row::from_result("f2", &minimize::compute_inf_f2(cfg, pool)?)]));
    }
    if wants(which, Which::PiSlice) {
        let mut rows = Vec::new();
        for (fid, key) in [(FunctionId::Pn, "p5_pi"), (FunctionId::F1, "f1_pi"), (FunctionId::F2, "f2_pi")] {
            rows.push(Row::from_result(key, &minimize::pi_slice_inf(fid, infima, cfg, pool)?));
        }
        groups.push(("pi_slice", rows));
    }
    Ok(Table { groups, infima, recomputed: recompute })
}

pub fn run(args: &ConstantsArgs, pool: &Pool) -> Result<Output, CliError> {
    let cfg = search_cfg(&args.cfg)?;
    let table = compute(args.which, args.recompute, &cfg, pool)?;
    let exit = if table.all_within() { Exit::Pass } else { Exit::Fail };
    if args.json {
        return Ok(Output { stdout: format::to_string(&table.json()), exit });
    }
    let mut out = String::new();
    for row in table.rows() {
        out += &row.text();
    }
    let within = table.rows().filter(|r| r.within()).count();
    out += &format!(
        "infima {}: m0 = {:+.12e}, minf = {:+.12e}\n",
        if table.recomputed { "recomputed" } else { "frozen" },
        table.infima.m0,
        table.infima.minf
    );
    let cfg_line: Vec<String> = cfg.entries().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    out += &format!("cfg {} (table v{})\n", cfg_line.join(" "), constants::TABLE_VERSION);
    out += &format!("{within} of {} within tolerance\n", table.rows().count());
    Ok(Output { stdout: out, exit })
}
