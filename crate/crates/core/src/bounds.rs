//! Leading terms of the known bounds on the maximum rainbow count, as exact
//! rationals. Error terms are carried as symbolic flags only; no constant is
//! ever attached to them.

use serde_json::json;

use crate::coloring::mod_coloring;
use crate::counting::count_rainbow_fast;
use crate::enumeration::{modular_count_formula, total_quads_formula};
use crate::error::{Error, Result};
use crate::Rational;

/// A leading term together with the order of the error term it omits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    /// Coefficient of `n³`.
    pub coefficient: Rational,
    /// e.g. `"+O_k(n^2)"`; empty for bounds that hold exactly.
    pub error_term: &'static str,
}

impl Bound {
    fn cubic(coefficient: Rational, n: usize, error_term: &'static str) -> Self {
        let n = n as i128;
        Self { value: coefficient * Rational::from_integer(n * n * n), coefficient, error_term }
    }

    pub fn is_exact(&self) -> bool {
        self.error_term.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    /// Exact number of Sidon 4-sets in `[n]`.
    pub total_exact: u64,
    /// `n³/12 − 3n²/8 + 5n/12`, valid for every coloring.
    pub ub_trivial: Rational,
    /// `(1/12 − 1/(24k)) n³ + O_k(n²)`.
    pub ub_general: Bound,
    /// `3n³/96 + O(n²)`, only for `k = 4`.
    pub ub_k4: Option<Bound>,
    /// `(1/12 − 1/(3k) + θ/k²) n³ − O_k(n²)`.
    pub lb_construction: Bound,
    /// `θ` of the lower bound: `1/3` for even `k`, `1/4` for odd `k`.
    pub theta_lb: Rational,
    /// `3n³/64` over `Z_n`, exact, only for `k = 4`.
    pub cyclic_ub_k4: Option<Bound>,
    /// `n³/32` over `Z_n`, exact, only for `k = 4` with `4 | n`.
    pub cyclic_lb_k4: Option<Bound>,
    /// `|S(k)|`.
    pub s_k: u64,
}

pub fn theta_lb(k: usize) -> Rational {
    if k.is_multiple_of(2) { Rational::new(1, 3) } else { Rational::new(1, 4) }
}

/// `1/12 − 1/(3k) + θ/k²`.
pub fn lb_coefficient(k: usize) -> Rational {
    let k = k as i128;
    Rational::new(1, 12) - Rational::new(1, 3 * k) + theta_lb(k as usize) / (k * k)
}

/// `1/12 − 1/(24k)`.
pub fn ub_general_coefficient(k: usize) -> Rational {
    Rational::new(1, 12) - Rational::new(1, 24 * k as i128)
}

/// `2|S(k)| / (3k³)`, the mod-k construction's density written through `|S(k)|`.
pub fn construction_coefficient(k: usize) -> Result<Rational> {
    let s = modular_count_formula(k)? as i128;
    let k = k as i128;
    Ok(Rational::new(2 * s, 3 * k * k * k))
}

/// The trivial bound `n³/12 − 3n²/8 + 5n/12`.
pub fn ub_trivial(n: usize) -> Rational {
    let n = n as i128;
    Rational::new(n * n * n, 12) - Rational::new(3 * n * n, 8) + Rational::new(5 * n, 12)
}

pub fn bounds_report(n: usize, k: usize) -> Result<BoundsReport> {
    if k < 4 || n < k {
        return Err(Error::InvalidParameter(format!("need n >= k >= 4, got n = {n}, k = {k}")));
    }
    let k4 = k == 4;
    Ok(BoundsReport {
        n,
        k,
        total_exact: total_quads_formula(n),
        ub_trivial: ub_trivial(n),
        ub_general: Bound::cubic(ub_general_coefficient(k), n, "+O_k(n^2)"),
        ub_k4: k4.then(|| Bound::cubic(Rational::new(3, 96), n, "+O(n^2)")),
        lb_construction: Bound::cubic(lb_coefficient(k), n, "-O_k(n^2)"),
        theta_lb: theta_lb(k),
        cyclic_ub_k4: k4.then(|| Bound::cubic(Rational::new(3, 64), n, "")),
        cyclic_lb_k4: (k4 && n.is_multiple_of(4)).then(|| Bound::cubic(Rational::new(1, 32), n, "")),
        s_k: modular_count_formula(k)?,
    })
}

/// `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Decimal rendering with six significant digits.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl BoundsReport {
    fn rows(&self) -> Vec<(&'static str, Rational, &'static str)> {
        let mut rows = vec![
            ("total_exact", Rational::from_integer(self.total_exact as i128), ""),
            ("ub_trivial", self.ub_trivial, ""),
            ("ub_general", self.ub_general.value, self.ub_general.error_term),
        ];
        if let Some(b) = &self.ub_k4 {
            rows.push(("ub_k4", b.value, b.error_term));
        }
        rows.push(("lb_construction", self.lb_construction.value, self.lb_construction.error_term));
        if let Some(b) = &self.cyclic_ub_k4 {
            rows.push(("cyclic_ub_k4", b.value, b.error_term));
        }
        if let Some(b) = &self.cyclic_lb_k4 {
            rows.push(("cyclic_lb_k4", b.value, b.error_term));
        }
        rows
    }

    /// Aligned columns: name, exact value, six-digit decimal, error term.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, k = {}, |S(k)| = {}\n", self.n, self.k, self.s_k);
        let rows: Vec<_> = self
            .rows()
            .into_iter()
            .map(|(name, v, err)| {
                let flag = if err.is_empty() { "exact".to_string() } else { err.to_string() };
                (name, format_rational(&v), format_sig6(rational_to_f64(&v)), flag)
            })
            .collect();
        let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
        let w2 = rows.iter().map(|r| r.2.len()).max().unwrap_or(0);
        for (name, exact, decimal, flag) in rows {
            out.push_str(&format!("{name:<w0$}  {exact:>w1$}  {decimal:>w2$}  {flag}\n"));
        }
        out.push_str(&format!(
            "coefficients: ub_general {}  lb_construction {}  (theta = {})\n",
            format_rational(&self.ub_general.coefficient),
            format_rational(&self.lb_construction.coefficient),
            format_rational(&self.theta_lb),
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let bound = |b: &Bound| {
            json!({
                "value": format_rational(&b.value),
                "coefficient": format_rational(&b.coefficient),
                "error_term": if b.is_exact() { None } else { Some(b.error_term) },
            })
        };
        json!({
            "n": self.n,
            "k": self.k,
            "total_exact": self.total_exact,
            "ub_trivial": format_rational(&self.ub_trivial),
            "ub_general": bound(&self.ub_general),
            "ub_k4": self.ub_k4.as_ref().map(bound),
            "lb_construction": bound(&self.lb_construction),
            "theta_lb": format_rational(&self.theta_lb),
            "cyclic_ub_k4": self.cyclic_ub_k4.as_ref().map(bound),
            "cyclic_lb_k4": self.cyclic_lb_k4.as_ref().map(bound),
            "s_k": self.s_k,
        })
    }
}

/// Exact rainbow count of the mod-k coloring against its predicted density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionCheck {
    pub n: usize,
    pub k: usize,
    pub rainbow: u64,
    /// `rainbow / n³`
    pub ratio: Rational,
    /// `2|S(k)|/(3k³)`
    pub coefficient: Rational,
}

impl ConstructionCheck {
    /// `(coefficient − ratio) · n`; bounded if the deficit is `O(n²)`.
    pub fn scaled_gap(&self) -> Rational {
        (self.coefficient - self.ratio) * Rational::from_integer(self.n as i128)
    }
}

pub fn check_construction_vs_lb(n: usize, k: usize) -> Result<ConstructionCheck> {
    if k < 4 || n < k || !n.is_multiple_of(k) {
        return Err(Error::InvalidParameter(format!(
            "need k >= 4 dividing n, got n = {n}, k = {k}"
        )));
    }
    let rainbow = count_rainbow_fast(&mod_coloring(n, k)?)?;
    let cube = (n as i128).pow(3);
    Ok(ConstructionCheck {
        n,
        k,
        rainbow,
        ratio: Rational::new(rainbow as i128, cube),
        coefficient: construction_coefficient(k)?,
    })
}
