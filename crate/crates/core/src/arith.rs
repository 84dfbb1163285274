//! Tabulated arithmetic functions: Dirichlet convolution, Bougaïef
//! derivative and integral, multiplicative monotonicity, envelopes.
//!
//! All divisor-pair work uses the harmonic loop (for each `d`, visit its
//! multiples), for `O(N log N)` total work.

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rational::{format_rational, parse_rational, to_f64};
use crate::sets::IntegerSet;
use crate::sieve;

pub use crate::sieve::mobius;

/// Values of a tabulated function on `1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Exact(Vec<BigRational>),
    /// Floating values. Storage is `f64`; `precision_bits` records the
    /// precision the values were computed at and drives comparison tolerances.
    Float { values: Vec<f64>, precision_bits: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedFunction {
    values: Values,
    pub provenance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl TabulatedFunction {
    pub fn exact(values: Vec<BigRational>, provenance: impl Into<String>) -> Self {
        TabulatedFunction { values: Values::Exact(values), provenance: provenance.into() }
    }

    pub fn float(values: Vec<f64>, precision_bits: u32, provenance: impl Into<String>) -> Self {
        TabulatedFunction {
            values: Values::Float { values, precision_bits },
            provenance: provenance.into(),
        }
    }

    pub fn from_ints(values: &[i64], provenance: impl Into<String>) -> Self {
        let v = values.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        Self::exact(v, provenance)
    }

    /// Exact tabulation of `f` on `1..=n`.
    pub fn from_fn_exact(n: usize, provenance: &str, f: impl Fn(u64) -> BigRational) -> Self {
        Self::exact((1..=n as u64).map(f).collect(), provenance)
    }

    pub fn from_fn_int(n: usize, provenance: &str, f: impl Fn(u64) -> i64) -> Self {
        Self::from_fn_exact(n, provenance, |k| BigRational::from_integer(f(k).into()))
    }

    pub fn from_fn_float(n: usize, bits: u32, provenance: &str, f: impl Fn(u64) -> f64) -> Self {
        Self::float((1..=n as u64).map(f).collect(), bits, provenance)
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Self::from_fn_int(n, &format!("const:{c}"), |_| c)
    }

    /// The unit ε of Dirichlet convolution.
    pub fn epsilon(n: usize) -> Self {
        Self::from_fn_int(n, "epsilon", |k| i64::from(k == 1))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn_int(n, "id", |k| k as i64)
    }

    pub fn mobius_function(n: usize) -> Self {
        let mu = sieve::mobius_table(n);
        Self::from_fn_int(n, "mobius", |k| mu[k as usize] as i64)
    }

    pub fn limit(&self) -> usize {
        match &self.values {
            Values::Exact(v) => v.len(),
            Values::Float { values, .. } => values.len(),
        }
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, Values::Exact(_))
    }

    pub fn precision_bits(&self) -> Option<u32> {
        match self.values {
            Values::Exact(_) => None,
            Values::Float { precision_bits, .. } => Some(precision_bits),
        }
    }

    fn check_index(&self, n: u64) -> Result<usize> {
        if n == 0 || n as usize > self.limit() {
            return Err(Error::OutOfRange { index: n, limit: self.limit() as u64 });
        }
        Ok(n as usize - 1)
    }

    /// `f(n)` as a float.
    pub fn get_f64(&self, n: u64) -> Result<f64> {
        let i = self.check_index(n)?;
        Ok(match &self.values {
            Values::Exact(v) => to_f64(&v[i]),
            Values::Float { values, .. } => values[i],
        })
    }

    /// `f(n)` exactly, when the tabulation is exact.
    pub fn get_exact(&self, n: u64) -> Result<Option<&BigRational>> {
        let i = self.check_index(n)?;
        Ok(match &self.values {
            Values::Exact(v) => Some(&v[i]),
            Values::Float { .. } => None,
        })
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match &self.values {
            Values::Exact(v) => v.iter().map(to_f64).collect(),
            Values::Float { values, .. } => values.clone(),
        }
    }

    pub fn to_float(&self, bits: u32) -> Self {
        Self::float(self.to_f64_vec(), bits, self.provenance.clone())
    }

    /// Restriction to `1..=n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.limit() {
            return Err(Error::OutOfRange { index: n as u64, limit: self.limit() as u64 });
        }
        let values = match &self.values {
            Values::Exact(v) => Values::Exact(v[..n].to_vec()),
            Values::Float { values, precision_bits } => {
                Values::Float { values: values[..n].to_vec(), precision_bits: *precision_bits }
            }
        };
        Ok(TabulatedFunction { values, provenance: self.provenance.clone() })
    }

    /// Writes `n,value` rows under a `n,value` header.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["n", "value"])?;
        match &self.values {
            Values::Exact(v) => {
                for (i, x) in v.iter().enumerate() {
                    wtr.write_record([(i + 1).to_string(), format_rational(x)])?;
                }
            }
            Values::Float { values, .. } => {
                for (i, x) in values.iter().enumerate() {
                    wtr.write_record([(i + 1).to_string(), format!("{x:?}")])?;
                }
            }
        }
        wtr.flush()?;
        Ok(())
    }

    /// Reads the `n,value` format. Lines starting with `#` are skipped.
    /// Exact mode is chosen when every value is an integer or `p/q`.
    pub fn read_csv<R: Read>(r: R, provenance: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(r);
        let headers = rdr.headers()?.clone();
        if headers.len() < 2 || &headers[0] != "n" || &headers[1] != "value" {
            return Err(Error::Table(format!("expected header `n,value`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut raw = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let n: u64 = rec[0].parse().map_err(|_| Error::Table(format!("bad index `{}`", &rec[0])))?;
            if n != i as u64 + 1 {
                return Err(Error::Table(format!("rows must list n = 1, 2, ...; found {n} at row {}", i + 1)));
            }
            raw.push(rec[1].to_string());
        }
        let looks_float = |s: &str| s.contains(['.', 'e', 'E']) || s.contains("inf") || s.contains("NaN");
        if raw.iter().any(|s| looks_float(s)) {
            let v = raw
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| Error::Table(format!("bad value `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Self::float(v, 53, provenance))
        } else {
            let v = raw.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            Ok(Self::exact(v, provenance))
        }
    }
}

fn check_same(f: &TabulatedFunction, g: &TabulatedFunction) -> Result<()> {
    if f.limit() != g.limit() {
        return Err(Error::LengthMismatch { left: f.limit(), right: g.limit() });
    }
    Ok(())
}

fn convolve_exact(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
    let n = f.len();
    let mut out = vec![BigRational::zero(); n];
    for d in 1..=n {
        let fd = &f[d - 1];
        if fd.is_zero() {
            continue;
        }
        for m in 1..=n / d {
            let gm = &g[m - 1];
            if !gm.is_zero() {
                out[d * m - 1] += fd * gm;
            }
        }
    }
    out
}

fn convolve_float(f: &[f64], g: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    for d in 1..=n {
        let fd = f[d - 1];
        for m in 1..=n / d {
            out[d * m - 1] += fd * g[m - 1];
        }
    }
    out
}

/// `(f * g)(n) = Σ_{d | n} f(d) g(n/d)`. Mixed exact/float inputs give a
/// float result at the lower precision.
pub fn dirichlet_convolve(f: &TabulatedFunction, g: &TabulatedFunction) -> Result<TabulatedFunction> {
    check_same(f, g)?;
    let prov = format!("({})*({})", f.provenance, g.provenance);
    Ok(match (&f.values, &g.values) {
        (Values::Exact(a), Values::Exact(b)) => TabulatedFunction::exact(convolve_exact(a, b), prov),
        _ => {
            let bits = f.precision_bits().unwrap_or(u32::MAX).min(g.precision_bits().unwrap_or(u32::MAX));
            TabulatedFunction::float(convolve_float(&f.to_f64_vec(), &g.to_f64_vec()), bits, prov)
        }
    })
}

/// `Df = f * μ`.
pub fn bougaief_derivative(f: &TabulatedFunction) -> TabulatedFunction {
    let n = f.limit();
    let mu = sieve::mobius_table(n);
    let prov = format!("D({})", f.provenance);
    match &f.values {
        Values::Exact(v) => {
            let mut out = vec![BigRational::zero(); n];
            for d in 1..=n {
                let fd = &v[d - 1];
                if fd.is_zero() {
                    continue;
                }
                for m in 1..=n / d {
                    match mu[m] {
                        1 => out[d * m - 1] += fd,
                        -1 => out[d * m - 1] -= fd,
                        _ => {}
                    }
                }
            }
            TabulatedFunction::exact(out, prov)
        }
        Values::Float { values, precision_bits } => {
            let muf: Vec<f64> = mu[1..].iter().map(|&x| x as f64).collect();
            TabulatedFunction::float(convolve_float(values, &muf), *precision_bits, prov)
        }
    }
}

/// `n ↦ Σ_{d | n} g(d)`, the inverse of [`bougaief_derivative`].
pub fn bougaief_integral(g: &TabulatedFunction) -> TabulatedFunction {
    let n = g.limit();
    let prov = format!("I({})", g.provenance);
    match &g.values {
        Values::Exact(v) => {
            let mut out = vec![BigRational::zero(); n];
            for d in 1..=n {
                let gd = &v[d - 1];
                if gd.is_zero() {
                    continue;
                }
                for m in (d..=n).step_by(d) {
                    out[m - 1] += gd;
                }
            }
            TabulatedFunction::exact(out, prov)
        }
        Values::Float { values, precision_bits } => {
            let ones = vec![1.0; n];
            TabulatedFunction::float(convolve_float(values, &ones), *precision_bits, prov)
        }
    }
}

/// Result of a multiplicative monotonicity scan over all pairs `k | n ≤ N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneVerdict {
    pub direction: Direction,
    pub limit: u64,
    /// Lexicographically smallest violating pair as `(k, n)`, ordered by `n`
    /// then `k`.
    pub violation: Option<(u64, u64)>,
    /// Smallest signed slack over all pairs: `f(n) - f(k)` when increasing,
    /// `f(k) - f(n)` when decreasing. `+inf` when no pair exists.
    #[serde(serialize_with = "crate::interval::ser_extended")]
    pub worst_margin: f64,
    pub worst_pair: Option<(u64, u64)>,
}

impl MonotoneVerdict {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Float tolerance `2^{-p/2} · max(1, |f(k)|)`, with `p` capped at the
/// 53 bits actually stored.
pub fn float_tolerance(bits: u32, fk: f64) -> f64 {
    let p = bits.min(53) as i32;
    2f64.powi(-p / 2) * fk.abs().max(1.0)
}

#[derive(Clone, Copy)]
struct BlockScan {
    violation: Option<(u64, u64)>,
    worst: f64,
    worst_pair: Option<(u64, u64)>,
}

const SCAN_BLOCK: usize = 4096;

fn scan_pairs<F>(n: usize, exec: Exec, slack: F) -> BlockScan
where
    F: Fn(usize, usize) -> (f64, bool) + Sync + Send,
{
    let blocks = n.div_ceil(SCAN_BLOCK);
    let per_block = exec.map_range(blocks, |b| {
        let mut acc = BlockScan { violation: None, worst: f64::INFINITY, worst_pair: None };
        let lo = b * SCAN_BLOCK + 1;
        let hi = ((b + 1) * SCAN_BLOCK).min(n);
        for k in lo..=hi {
            for m in (2 * k..=n).step_by(k) {
                let (margin, violated) = slack(k, m);
                if margin < acc.worst {
                    acc.worst = margin;
                    acc.worst_pair = Some((k as u64, m as u64));
                }
                if violated {
                    let cand = (k as u64, m as u64);
                    acc.violation = Some(match acc.violation {
                        Some(v) if (v.1, v.0) <= (cand.1, cand.0) => v,
                        _ => cand,
                    });
                    break;
                }
            }
        }
        acc
    });
    let mut out = BlockScan { violation: None, worst: f64::INFINITY, worst_pair: None };
    for b in per_block {
        if b.worst < out.worst {
            out.worst = b.worst;
            out.worst_pair = b.worst_pair;
        }
        if let Some(c) = b.violation {
            out.violation = Some(match out.violation {
                Some(v) if (v.1, v.0) <= (c.1, c.0) => v,
                _ => c,
            });
        }
    }
    out
}

/// Checks `k | n ⇒ f(k) ≤ f(n)` (or `≥`) for all `n ≤ N`.
///
/// The `worst_margin` is exact over all pairs only when the scan finds no
/// violation; after a violation each `k` stops at its first bad multiple.
pub fn is_mult_monotone(f: &TabulatedFunction, direction: Direction, exec: Exec) -> MonotoneVerdict {
    let n = f.limit();
    let sign = match direction {
        Direction::Increasing => 1.0,
        Direction::Decreasing => -1.0,
    };
    let scan = match &f.values {
        Values::Exact(v) => {
            let fl: Vec<f64> = v.iter().map(to_f64).collect();
            scan_pairs(n, exec, |k, m| {
                let violated = match direction {
                    Direction::Increasing => v[k - 1] > v[m - 1],
                    Direction::Decreasing => v[k - 1] < v[m - 1],
                };
                (sign * (fl[m - 1] - fl[k - 1]), violated)
            })
        }
        Values::Float { values, precision_bits } => scan_pairs(n, exec, |k, m| {
            let (fk, fm) = (values[k - 1], values[m - 1]);
            let tau = float_tolerance(*precision_bits, fk);
            let margin = sign * (fm - fk);
            (margin, margin < -tau)
        }),
    };
    MonotoneVerdict {
        direction,
        limit: n as u64,
        violation: scan.violation,
        worst_margin: scan.worst,
        worst_pair: scan.worst_pair,
    }
}

/// `g(n) = max_{d | n} f(d)`, the smallest multiplicatively increasing
/// majorant of `f`.
pub fn mult_increasing_envelope(f: &TabulatedFunction) -> TabulatedFunction {
    let n = f.limit();
    let prov = format!("env({})", f.provenance);
    match &f.values {
        Values::Exact(v) => {
            let mut g = v.clone();
            for d in 1..=n {
                for m in (2 * d..=n).step_by(d) {
                    if v[d - 1] > g[m - 1] {
                        g[m - 1] = v[d - 1].clone();
                    }
                }
            }
            TabulatedFunction::exact(g, prov)
        }
        Values::Float { values, precision_bits } => {
            let mut g = values.clone();
            for d in 1..=n {
                for m in (2 * d..=n).step_by(d) {
                    if values[d - 1] > g[m - 1] {
                        g[m - 1] = values[d - 1];
                    }
                }
            }
            TabulatedFunction::float(g, *precision_bits, prov)
        }
    }
}

/// 0/1 tabulation of `M(A)` on `1..=N`.
pub fn set_of_multiples_indicator(a: &IntegerSet, n: usize) -> Result<TabulatedFunction> {
    let members = a.enumerate(n as u64)?;
    let mut ind = vec![false; n + 1];
    for &x in &members {
        let x = x as usize;
        if ind[x] {
            continue;
        }
        for m in (x..=n).step_by(x) {
            ind[m] = true;
        }
    }
    let one = BigRational::one();
    let v = (1..=n).map(|k| if ind[k] { one.clone() } else { BigRational::zero() }).collect();
    Ok(TabulatedFunction::exact(v, format!("M({})", a.spec_string())))
}

/// Pointwise `max(f, g)`; both must have the same bound.
pub fn pointwise_max(f: &TabulatedFunction, g: &TabulatedFunction) -> Result<TabulatedFunction> {
    check_same(f, g)?;
    let prov = format!("max({},{})", f.provenance, g.provenance);
    Ok(match (&f.values, &g.values) {
        (Values::Exact(a), Values::Exact(b)) => TabulatedFunction::exact(
            a.iter().zip(b).map(|(x, y)| if x >= y { x.clone() } else { y.clone() }).collect(),
            prov,
        ),
        _ => TabulatedFunction::float(
            f.to_f64_vec().iter().zip(g.to_f64_vec()).map(|(x, y)| x.max(y)).collect(),
            f.precision_bits().unwrap_or(53).min(g.precision_bits().unwrap_or(53)),
            prov,
        ),
    })
}

/// `λ f + μ g` for exact tabulations and rational coefficients.
pub fn linear_combination(
    lambda: &BigRational,
    f: &TabulatedFunction,
    mu: &BigRational,
    g: &TabulatedFunction,
) -> Result<TabulatedFunction> {
    check_same(f, g)?;
    match (&f.values, &g.values) {
        (Values::Exact(a), Values::Exact(b)) => Ok(TabulatedFunction::exact(
            a.iter().zip(b).map(|(x, y)| lambda * x + mu * y).collect(),
            "lincomb",
        )),
        _ => Err(Error::Table("linear_combination needs exact tabulations".into())),
    }
}

/// True when every exact value is `≥ 0` (floats use the float tolerance).
pub fn is_nonnegative(f: &TabulatedFunction) -> bool {
    match &f.values {
        Values::Exact(v) => v.iter().all(|x| !x.is_negative()),
        Values::Float { values, precision_bits } => {
            values.iter().all(|&x| x >= -float_tolerance(*precision_bits, x))
        }
    }
}

/// Integer-valued exact tabulation helper used by tests and the CLI.
pub fn integer_values(f: &TabulatedFunction) -> Option<Vec<BigInt>> {
    match &f.values {
        Values::Exact(v) => v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect(),
        Values::Float { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{IntegerSet, SetSpec};

    fn ints(f: &TabulatedFunction) -> Vec<i64> {
        integer_values(f).unwrap().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn convolution_examples() {
        let one = TabulatedFunction::constant(12, 1);
        let d = dirichlet_convolve(&one, &one).unwrap();
        assert_eq!(d.get_f64(6).unwrap(), 4.0);
        assert_eq!(d.get_f64(12).unwrap(), 6.0);
        let mu = TabulatedFunction::mobius_function(12);
        let e = dirichlet_convolve(&mu, &one).unwrap();
        assert_eq!(ints(&e), ints(&TabulatedFunction::epsilon(12)));
        assert!(dirichlet_convolve(&mu, &TabulatedFunction::constant(11, 1)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let d1 = bougaief_derivative(&TabulatedFunction::constant(30, 1));
        assert_eq!(ints(&d1), ints(&TabulatedFunction::epsilon(30)));

        let a = IntegerSet::new(SetSpec::List(vec![2, 3]));
        let ind = set_of_multiples_indicator(&a, 12).unwrap();
        let d = bougaief_derivative(&ind);
        assert_eq!(d.get_f64(6).unwrap(), -1.0);

        let id = bougaief_derivative(&TabulatedFunction::identity(6));
        // Euler φ(6)
        assert_eq!(id.get_f64(6).unwrap(), 2.0);
    }

    #[test]
    fn integral_examples() {
        let i = bougaief_integral(&TabulatedFunction::epsilon(20));
        assert_eq!(ints(&i), vec![1; 20]);
        let d = bougaief_integral(&TabulatedFunction::constant(12, 1));
        assert_eq!(d.get_f64(12).unwrap(), 6.0);
    }

    #[test]
    fn monotone_examples() {
        let ln = TabulatedFunction::from_fn_float(200, 53, "ln", |n| (n as f64).ln());
        assert!(is_mult_monotone(&ln, Direction::Increasing, Exec::Sequential).holds());

        let only2 = TabulatedFunction::from_fn_int(10, "1_{2}", |n| i64::from(n == 2));
        let v = is_mult_monotone(&only2, Direction::Increasing, Exec::Sequential);
        assert_eq!(v.violation, Some((2, 4)));

        let div = dirichlet_convolve(&TabulatedFunction::constant(1000, 1), &TabulatedFunction::constant(1000, 1)).unwrap();
        assert!(is_mult_monotone(&div, Direction::Increasing, Exec::Parallel).holds());
    }

    #[test]
    fn smallest_violation_is_lexicographic_in_n() {
        // f(3) = 5 > f(9), f(2) = 5 > f(6); smallest n is 6 with k = 2, but
        // also k = 3 divides 6. Both (2,6) and (3,6) violate; k = 2 wins.
        let f = TabulatedFunction::from_fn_int(20, "t", |n| match n {
            2 | 3 => 5,
            _ => 1,
        });
        let v = is_mult_monotone(&f, Direction::Increasing, Exec::Parallel);
        assert_eq!(v.violation, Some((2, 4)));
        let g = TabulatedFunction::from_fn_int(20, "t", |n| match n {
            3 => 5,
            5 => 9,
            _ => i64::from(n > 5) * 10,
        });
        let v = is_mult_monotone(&g, Direction::Increasing, Exec::Sequential);
        assert_eq!(v.violation, None);
        let h = TabulatedFunction::from_fn_int(30, "t", |n| match n {
            3 => 5,
            5 => 9,
            _ => 0,
        });
        let v = is_mult_monotone(&h, Direction::Increasing, Exec::Sequential);
        assert_eq!(v.violation, Some((3, 6)));
    }

    #[test]
    fn decreasing_direction() {
        let f = TabulatedFunction::from_fn_int(50, "neg-omega", |n| -(crate::sieve::factor(n).len() as i64));
        assert!(is_mult_monotone(&f, Direction::Decreasing, Exec::Sequential).holds());
        assert!(!is_mult_monotone(&f, Direction::Increasing, Exec::Sequential).holds());
    }

    #[test]
    fn float_tolerance_absorbs_rounding() {
        let f = TabulatedFunction::float(vec![0.0, 1.0, 0.5, 1.0 - 1e-12], 53, "t");
        assert!(is_mult_monotone(&f, Direction::Increasing, Exec::Sequential).holds());
        let g = TabulatedFunction::float(vec![0.0, 1.0, 0.5, 1.0 - 1e-6], 53, "t");
        assert_eq!(is_mult_monotone(&g, Direction::Increasing, Exec::Sequential).violation, Some((2, 4)));
    }

    #[test]
    fn envelope_examples() {
        let ind = TabulatedFunction::from_fn_int(40, "1_{2,3}", |n| i64::from(n == 2 || n == 3));
        let g = mult_increasing_envelope(&ind);
        let m = set_of_multiples_indicator(&IntegerSet::new(SetSpec::List(vec![2, 3])), 40).unwrap();
        assert_eq!(g.values(), m.values());
        assert_eq!(g.get_f64(6).unwrap(), 1.0);

        let c = TabulatedFunction::constant(30, 7);
        assert_eq!(mult_increasing_envelope(&c).values(), c.values());

        let neg = TabulatedFunction::from_fn_int(30, "-n", |n| -(n as i64));
        assert_eq!(ints(&mult_increasing_envelope(&neg)), vec![-1; 30]);
    }

    #[test]
    fn multiples_examples() {
        let a = IntegerSet::new(SetSpec::List(vec![2, 3]));
        let m = set_of_multiples_indicator(&a, 10).unwrap();
        assert_eq!(ints(&m), vec![0, 1, 1, 1, 0, 1, 0, 1, 1, 1]);
        let one = set_of_multiples_indicator(&IntegerSet::new(SetSpec::List(vec![1])), 10).unwrap();
        assert_eq!(ints(&one), vec![1; 10]);
        let empty = set_of_multiples_indicator(&IntegerSet::new(SetSpec::List(vec![])), 10).unwrap();
        assert_eq!(ints(&empty), vec![0; 10]);
        assert!(is_mult_monotone(&m, Direction::Increasing, Exec::Sequential).holds());
    }

    #[test]
    fn csv_round_trip() {
        let f = TabulatedFunction::exact(
            vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into())],
            "t",
        );
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "n,value\n1,1/2\n2,-3\n");
        let back = TabulatedFunction::read_csv(&buf[..], "t").unwrap();
        assert_eq!(back.values(), f.values());

        let g = TabulatedFunction::float(vec![0.1, 2.5e-30], 53, "t");
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = format!("# comment\n{}", String::from_utf8(buf).unwrap());
        let back = TabulatedFunction::read_csv(text.as_bytes(), "t").unwrap();
        assert_eq!(back.values(), g.values());

        assert!(TabulatedFunction::read_csv("n,value\n2,1\n".as_bytes(), "t").is_err());
        assert!(TabulatedFunction::read_csv("k,v\n1,1\n".as_bytes(), "t").is_err());
    }
}
