//! Nonnegative trigonometric polynomials as additive symbols, and the
//! geometric mean `G(f) = exp ∫₀¹ ln f(t) dt`.

use std::f64::consts::TAU;

use serde::Serialize;

use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::rational::CRational;

/// `f(t) = c₀ + 2 Σ_{k≥1} Re(c_k e^{2πikt})`.
#[derive(Debug, Clone)]
pub struct TrigPoly {
    coeffs: Vec<(f64, f64)>,
    exact: Vec<CRational>,
}

impl TrigPoly {
    pub fn new(coeffs: Vec<CRational>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs[0].is_real() {
            return Err(Error::Toeplitz("symbol needs a real constant coefficient".into()));
        }
        Ok(TrigPoly { coeffs: coeffs.iter().map(CRational::to_f64_pair).collect(), exact: coeffs })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut s = self.coeffs[0].0;
        for (k, &(re, im)) in self.coeffs.iter().enumerate().skip(1) {
            let (sn, cs) = (TAU * k as f64 * t).sin_cos();
            s += 2.0 * (re * cs - im * sn);
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ |c_k|` over all `k ∈ ℤ`: a bound for `|f|`.
    pub fn scale(&self) -> f64 {
        self.coeffs[0].0.abs() + 2.0 * self.coeffs[1..].iter().map(|&(r, i)| r.hypot(i)).sum::<f64>()
    }

    /// The additive kernel with `c₀(k) = c_k`.
    pub fn kernel(&self) -> Kernel {
        Kernel::additive(self.exact.clone())
    }

    /// Sampled minimum, refined locally by golden-section search.
    pub fn minimum(&self) -> (f64, f64) {
        let m = (64 * (self.degree() + 1)).max(4096);
        let (mut tb, mut fb) = (0.0, self.eval(0.0));
        for i in 1..m {
            let t = i as f64 / m as f64;
            let v = self.eval(t);
            if v < fb {
                tb = t;
                fb = v;
            }
        }
        let h = 1.0 / m as f64;
        let (mut lo, mut hi) = (tb - h, tb + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let a = hi - g * (hi - lo);
            let b = lo + g * (hi - lo);
            if self.eval(a) < self.eval(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        let t = 0.5 * (lo + hi);
        let v = self.eval(t);
        if v < fb {
            (t.rem_euclid(1.0), v)
        } else {
            (tb, fb)
        }
    }

    /// `∫₀¹ ln f` by the periodic trapezoid rule, doubling the node count
    /// until successive values agree; returns `(value, error estimate)`.
    pub fn log_integral(&self) -> (f64, f64) {
        let mut n = 16usize;
        let mut sum: f64 = (0..n).map(|i| self.eval(i as f64 / n as f64).ln()).sum();
        let mut prev = sum / n as f64;
        loop {
            // midpoints of the current grid
            let mids: f64 = (0..n).map(|i| self.eval((i as f64 + 0.5) / n as f64).ln()).sum();
            sum += mids;
            n *= 2;
            let cur = sum / n as f64;
            let err = (cur - prev).abs();
            if err <= 1e-14 * cur.abs().max(1.0) || n >= 1 << 22 {
                return (cur, err);
            }
            prev = cur;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SzegoReport {
    pub coefficients: Vec<String>,
    pub kernel: String,
    pub min_value: f64,
    pub min_at: f64,
    /// `min f > 0`, so the first-order limit `Δ_n^{1/n} → G(f)` applies.
    pub limit_applicable: bool,
    pub geometric_mean: Option<f64>,
    pub ln_geometric_mean: Option<f64>,
    pub quadrature_error: Option<f64>,
}

/// Relative size below which `min f` is treated as zero.
pub const ZERO_MIN: f64 = 1e-12;

/// Validates `f ≥ 0`, returns the additive symbol and, when `min f > 0`,
/// the geometric mean `G(f)`.
pub fn szego_symbol_tools(coeffs: Vec<CRational>) -> Result<SzegoReport> {
    let f = TrigPoly::new(coeffs)?;
    let (t, m) = f.minimum();
    let tol = ZERO_MIN * f.scale();
    if m < -tol {
        return Err(Error::NegativeSymbol { t, value: m });
    }
    let ok = m > tol;
    let (ln_g, err) = if ok {
        let (v, e) = f.log_integral();
        (Some(v), Some(e))
    } else {
        (None, None)
    };
    Ok(SzegoReport {
        coefficients: f.exact.iter().map(|c| c.to_string()).collect(),
        kernel: f.kernel().to_string(),
        min_value: m,
        min_at: t,
        limit_applicable: ok,
        geometric_mean: ln_g.map(f64::exp),
        ln_geometric_mean: ln_g,
        quadrature_error: err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toeplitz::kernel::parse_complex;

    fn coeffs(s: &[&str]) -> Vec<CRational> {
        s.iter().map(|x| parse_complex(x).unwrap()).collect()
    }

    #[test]
    fn constant_symbol() {
        let r = szego_symbol_tools(coeffs(&["1"])).unwrap();
        assert_eq!(r.geometric_mean, Some(1.0));
        assert_eq!(r.kernel, "additive:coeffs=1");
    }

    #[test]
    fn two_plus_cosine() {
        // ∫ ln(a + cos 2πt) = ln((a + √(a²-1)) / 2)
        let r = szego_symbol_tools(coeffs(&["2", "1/2"])).unwrap();
        let want = (2.0 + 3f64.sqrt()) / 2.0;
        assert!((r.geometric_mean.unwrap() - want).abs() < 1e-13);
        assert!(r.quadrature_error.unwrap() < 1e-13);
        assert!((r.min_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_and_negative_symbols() {
        let r = szego_symbol_tools(coeffs(&["2", "1"])).unwrap();
        assert!(!r.limit_applicable && r.geometric_mean.is_none());
        assert!(r.min_value.abs() < 1e-12 && (r.min_at - 0.5).abs() < 1e-6);
        assert_eq!(r.coefficients, vec!["2", "1"]);
        assert!(matches!(szego_symbol_tools(coeffs(&["1", "1"])), Err(Error::NegativeSymbol { .. })));
    }

    #[test]
    fn complex_coefficient_shifts_phase() {
        // 2 + 2 Re(i/2 e^{2πit}) = 2 - sin 2πt
        let f = TrigPoly::new(coeffs(&["2", "1/2i"])).unwrap();
        assert!((f.eval(0.25) - 1.0).abs() < 1e-15);
        let (v, _) = f.log_integral();
        assert!((v - ((2.0 + 3f64.sqrt()) / 2.0).ln()).abs() < 1e-13);
    }
}
