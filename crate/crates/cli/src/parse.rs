//! Flag value parsers. Reals accept the literals `pi` and `phi0`.

use std::f64::consts::PI;

use brannan_core::kernels::PHI0;
use brannan_core::minimize::Axis;

pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let v = match body.to_ascii_lowercase().as_str() {
        "pi" => PI,
        "phi0" => PHI0,
        _ => return t.parse::<f64>().map_err(|_| format!("not a number: {s:?}")).and_then(finite),
    };
    Ok(sign * v)
}

fn finite(v: f64) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: {v}"))
    }
}

pub fn axis(s: &str) -> Result<Axis, String> {
    Axis::parse(s.trim()).ok_or_else(|| format!("unknown axis {s:?} (expected alpha, beta, phi, s or n)"))
}

/// `name=value`
pub fn fix(s: &str) -> Result<(Axis, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    Ok((axis(k)?, real(v)?))
}

/// `name:min:max`
pub fn range(s: &str) -> Result<(Axis, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected axis:min:max, got {s:?}"));
    }
    let (lo, hi) = (real(parts[1])?, real(parts[2])?);
    if !(lo < hi) {
        return Err(format!("empty range in {s:?}"));
    }
    Ok((axis(parts[0])?, lo, hi))
}

/// `name:min:max:count`
pub fn sweep(s: &str) -> Result<(Axis, f64, f64, usize), String> {
    let (head, count) = s.rsplit_once(':').ok_or_else(|| format!("expected axis:min:max:count, got {s:?}"))?;
    let count: usize = count.trim().parse().map_err(|_| format!("bad node count in {s:?}"))?;
    if count < 2 {
        return Err(format!("need at least 2 nodes in {s:?}"));
    }
    let (ax, lo, hi) = range(head).map_err(|_| format!("expected axis:min:max:count, got {s:?}"))?;
    Ok((ax, lo, hi, count))
}

/// Comma-separated positive integers.
pub fn n_list(s: &str) -> Result<Vec<u32>, String> {
    let v: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
    match v {
        Ok(v) if !v.is_empty() && v.iter().all(|&n| n > 0) => Ok(v),
        _ => Err(format!("expected a list like 3,5,7, got {s:?}")),
    }
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let r = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => t.parse(),
    };
    r.map_err(|_| format!("bad seed {s:?}"))
}

/// `key=value`, split only.
pub fn key_value(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(real("pi").unwrap(), PI);
        assert_eq!(real("PHI0").unwrap(), PHI0);
        assert_eq!(real("-pi").unwrap(), -PI);
        assert_eq!(real("0.25").unwrap(), 0.25);
        assert!(real("nan").is_err());
        assert!(real("x").is_err());
    }

    #[test]
    fn compound_flags() {
        assert_eq!(fix("phi=phi0").unwrap(), (Axis::Phi, PHI0));
        assert_eq!(range("s:30:1e5").unwrap(), (Axis::S, 30.0, 1e5));
        assert!(range("s:1:1").is_err());
        assert_eq!(sweep("alpha:0:1:101").unwrap(), (Axis::Alpha, 0.0, 1.0, 101));
        assert!(sweep("alpha:0:1").is_err());
        assert!(sweep("alpha:0:1:1").is_err());
        assert!(sweep("gamma:0:1:5").is_err());
        assert_eq!(n_list("3, 5,7").unwrap(), vec![3, 5, 7]);
        assert!(n_list("3,,5").is_err());
        assert_eq!(seed("0xB4A22A2").unwrap(), 0xB4A_22A2);
        assert_eq!(seed("17").unwrap(), 17);
    }
}
