//! JSON and CSV renderings.
//!
//! JSON objects keep insertion order, so every document has a fixed key
//! order; floats use the shortest round-trip representation and non-finite
//! values become `null`.

use brannan_core::minimize::{MinimizationResult, SearchConfig};
use brannan_core::verify::VerificationReport;
use brannan_core::ParameterPoint;
use serde_json::{json, Map, Value};

pub fn point(p: &ParameterPoint) -> Value {
    json!({ "alpha": p.alpha, "beta": p.beta, "phi": p.phi, "s": p.s, "n": p.n })
}

pub fn search_cfg(cfg: &SearchConfig) -> Value {
    let mut m = Map::new();
    for (k, v) in cfg.entries() {
        m.insert(k.to_string(), Value::String(v));
    }
    Value::Object(m)
}

pub fn minimization(r: &MinimizationResult) -> Value {
    json!({
        "value": r.value,
        "argmin": point(&r.argmin),
        "classification": r.classification.name(),
        "formula": r.formula,
        "evaluations": r.evaluations,
        "coverage": { "faces": r.coverage.faces(), "missing": r.coverage.missing() },
    })
}

/// The report schema: `suite, passed, samples, worst_value, worst_location, cfg_echo`.
pub fn report(r: &VerificationReport) -> Value {
    let mut echo = Map::new();
    for (k, v) in &r.cfg_echo {
        echo.insert(k.to_string(), Value::String(v.clone()));
    }
    json!({
        "suite": r.suite,
        "passed": r.passed,
        "samples": r.samples,
        "worst_value": r.worst_value,
        "worst_location": point(&r.worst_location),
        "cfg_echo": echo,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// 17 significant digits in scientific notation.
pub fn csv_number(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers_round_trip() {
        for v in [0.1, -0.097_638_227_1, 1e5, 0.0, std::f64::consts::PI, 5e-324] {
            let s = csv_number(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17, "{s}");
        }
    }

    #[test]
    fn point_keys_in_order_and_nulls() {
        let p = ParameterPoint::new(0.5, 1.0).with_phi(2.0);
        let s = serde_json::to_string(&point(&p)).unwrap();
        assert_eq!(s, r#"{"alpha":0.5,"beta":1.0,"phi":2.0,"s":null,"n":null}"#);
    }

    #[test]
    fn json_round_trips() {
        let v = json!({ "b": 0.1, "a": [1e-300, -0.0976382271], "c": { "z": null, "y": "x" } });
        let s = to_string(&v);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(to_string(&back), s);
    }
}
