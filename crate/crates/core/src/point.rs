use core::fmt;

/// Universal evaluation coordinate `(alpha, beta, phi, s, n)`.
///
/// Unused coordinates are `None`; `phi` is `None` for functions of
/// `(alpha, beta)` only.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParameterPoint {
    pub alpha: f64,
    pub beta: f64,
    pub phi: Option<f64>,
    pub s: Option<f64>,
    pub n: Option<f64>,
}

impl ParameterPoint {
    pub fn new(alpha: f64, beta: f64) -> Self {
        ParameterPoint { alpha, beta, ..Default::default() }
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = Some(phi);
        self
    }

    pub fn with_s(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_n(mut self, n: f64) -> Self {
        self.n = Some(n);
        self
    }

    /// Lexicographic key `(alpha, beta, phi, s, n)` used for tie-breaking.
    pub fn lex_key(&self) -> [f64; 5] {
        let o = |v: Option<f64>| v.unwrap_or(f64::NEG_INFINITY);
        [self.alpha, self.beta, o(self.phi), o(self.s), o(self.n)]
    }

    /// Total lexicographic order on [`lex_key`](Self::lex_key).
    pub fn lex_cmp(&self, other: &Self) -> core::cmp::Ordering {
        let (a, b) = (self.lex_key(), other.lex_key());
        for i in 0..5 {
            match a[i].total_cmp(&b[i]) {
                core::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        core::cmp::Ordering::Equal
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, beta={}", self.alpha, self.beta)?;
        if let Some(phi) = self.phi {
            write!(f, ", phi={phi}")?;
        }
        if let Some(s) = self.s {
            write!(f, ", s={s}")?;
        }
        if let Some(n) = self.n {
            write!(f, ", n={n}")?;
        }
        write!(f, ")")
    }
}
