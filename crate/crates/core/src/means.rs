//! Mean values of arithmetic functions.
//!
//! `α(f; y) = ∏_{p≤y}(1 - 1/p) · Σ_{a∈S(y)} f(a)/a` is computed as an
//! interval: the sum over `S(y)` is truncated at `X`, and the missing mass
//! `Σ_{a∈S(y), a>X} 1/a` is known exactly from the Euler product, so the
//! tail is enclosed by `[m, M]` times that mass, where `m ≤ f ≤ M`.
//!
//! Limits over `x → ∞` are not computable; finite-`x` quantities are
//! reported as proxies and labelled so.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arith::{bougaief_derivative, is_mult_monotone, Direction, TabulatedFunction};
use crate::dfactor::{euler_factor, DirectFactorPair};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::functions::ArithFn;
use crate::interval::{ser_extended, Interval};
use crate::rational::to_f64;
use crate::sieve;

pub const DEFAULT_Y_GRID: [f64; 6] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0];
/// Target for the `S(y)` tail mass when choosing `X` automatically.
pub const TAIL_TARGET: f64 = 1e-6;
/// Largest truncation tried by the automatic rule.
pub const MAX_TRUNCATION: u64 = 1_000_000_000_000_000;
/// Largest number of `S(y)` elements the automatic rule will enumerate.
pub const MAX_TERMS: usize = 20_000_000;

/// `∏_{p ≤ y} (1 - 1/p)`, exact.
pub fn mertens_product(y: f64) -> Result<BigRational> {
    if y < 2.0 {
        return Err(Error::Means(format!("mertens product needs y >= 2, got {y}")));
    }
    Ok(sieve::primes_le(y)
        .into_iter()
        .map(|p| BigRational::new(BigInt::from(p - 1), BigInt::from(p)))
        .fold(BigRational::one(), |a, b| a * b))
}

fn exact_interval(r: &BigRational) -> Interval {
    let v = to_f64(r);
    Interval::around(v, v.abs() * f64::EPSILON)
}

/// Elements of `S(primes)` up to `x`, or `None` past `max_terms`.
fn friable_upto(primes: &[u64], x: u64, max_terms: usize) -> Option<Vec<u64>> {
    let mut out = vec![1u64];
    for &p in primes {
        let len = out.len();
        for i in 0..len {
            let mut v = out[i];
            while let Some(w) = v.checked_mul(p) {
                if w > x {
                    break;
                }
                out.push(w);
                if out.len() > max_terms {
                    return None;
                }
                v = w;
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

/// An enclosure of `α(f; y)` or `α(f; A)` with its truncation data.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaEstimate {
    /// `y` for friable estimates; `None` for direct-factor estimates.
    pub y: Option<f64>,
    pub truncation: u64,
    pub terms: usize,
    pub alpha: Interval,
    /// Enclosure of the reciprocal mass beyond the truncation.
    pub tail_mass: Interval,
    #[serde(serialize_with = "ser_extended")]
    pub lower_bound_used: f64,
    #[serde(serialize_with = "ser_extended")]
    pub upper_bound_used: f64,
}

struct Partial {
    sum: Interval,
    recip: Interval,
}

fn partial_sums(f: &dyn ArithFn, members: &[u64]) -> Result<Partial> {
    let mut s = 0.0f64;
    let mut abs = 0.0f64;
    let mut r = 0.0f64;
    for &a in members.iter().rev() {
        let v = f.value(a)? / a as f64;
        s += v;
        abs += v.abs();
        r += 1.0 / a as f64;
    }
    let k = members.len() as f64 + 2.0;
    Ok(Partial {
        sum: Interval::around(s, k * f64::EPSILON * abs),
        recip: Interval::around(r, k * f64::EPSILON * r),
    })
}

fn resolve_lower(f: &dyn ArithFn, lower: Option<f64>) -> Result<f64> {
    lower.or_else(|| f.lower_bound()).ok_or_else(|| {
        Error::Means(format!("a lower bound for `{}` is required (tail control)", f.name()))
    })
}

/// Encloses `α(f; y)`. `truncation = None` picks `X` so that the `S(y)`
/// tail mass is below [`TAIL_TARGET`], within the function's domain.
pub fn alpha_friable(f: &dyn ArithFn, y: f64, truncation: Option<u64>, lower: Option<f64>) -> Result<AlphaEstimate> {
    let m = resolve_lower(f, lower)?;
    let big_m = f.upper_bound().unwrap_or(f64::INFINITY);
    let mertens = mertens_product(y)?;
    let primes = sieve::primes_le(y);
    let total = exact_interval(&euler_factor(&primes));
    let limit = f.domain().unwrap_or(MAX_TRUNCATION).min(MAX_TRUNCATION);

    let (x, members) = match truncation {
        Some(x) => {
            if x > limit {
                return Err(Error::Means(format!("truncation {x} exceeds the domain {limit} of `{}`", f.name())));
            }
            let members = friable_upto(&primes, x, usize::MAX).expect("unbounded enumeration");
            (x, members)
        }
        None => {
            let mut x = (1u64 << 16).min(limit);
            let mut best = (x, friable_upto(&primes, x, MAX_TERMS).unwrap_or_else(|| vec![1]));
            loop {
                let r: f64 = best.1.iter().rev().map(|&a| 1.0 / a as f64).sum();
                if total.hi - r < TAIL_TARGET || x >= limit {
                    break;
                }
                x = x.saturating_mul(64).min(limit);
                match friable_upto(&primes, x, MAX_TERMS) {
                    Some(v) => best = (x, v),
                    None => break,
                }
            }
            best
        }
    };
    let partial = partial_sums(f, &members)?;
    let tail = Interval::new((total.lo - partial.recip.hi).max(0.0), (total.hi - partial.recip.lo).max(0.0)).widen();
    let tail_value = Interval::new(m, big_m).mul(tail);
    let sum = partial.sum.add(tail_value);
    let alpha = exact_interval(&mertens).mul(sum);
    Ok(AlphaEstimate {
        y: Some(y),
        truncation: x,
        terms: members.len(),
        alpha,
        tail_mass: tail,
        lower_bound_used: m,
        upper_bound_used: big_m,
    })
}

/// Encloses `α(f; A) = λ Σ_{a∈A} f(a)/a`, `λ = (Σ_{a∈A} 1/a)^{-1}`.
pub fn alpha_direct_factor(
    f: &dyn ArithFn,
    pair: &DirectFactorPair,
    truncation: u64,
    lower: Option<f64>,
) -> Result<AlphaEstimate> {
    let m = resolve_lower(f, lower)?;
    let big_m = f.upper_bound().unwrap_or(f64::INFINITY);
    if let Some(d) = f.domain() {
        if truncation > d {
            return Err(Error::Means(format!("truncation {truncation} exceeds the domain {d} of `{}`", f.name())));
        }
    }
    let members = pair.a.enumerate(truncation)?;
    let partial = partial_sums(f, &members)?;
    let inv = pair.inv_sum_a.interval();
    let tail = Interval::new((inv.lo - partial.recip.hi).max(0.0), (inv.hi - partial.recip.lo).max(0.0)).widen();
    let sum = partial.sum.add(Interval::new(m, big_m).mul(tail));
    let alpha = pair.lambda().mul(sum);
    Ok(AlphaEstimate {
        y: None,
        truncation,
        terms: members.len(),
        alpha,
        tail_mass: tail,
        lower_bound_used: m,
        upper_bound_used: big_m,
    })
}

/// Prefix traces of the Cesàro and logarithmic means of a tabulation.
#[derive(Debug, Clone)]
pub struct MeanTraces {
    values: Vec<f64>,
    prefix: Vec<f64>,
    prefix_log: Vec<f64>,
}

impl MeanTraces {
    pub fn new(values: Vec<f64>) -> Self {
        let mut prefix = Vec::with_capacity(values.len() + 1);
        let mut prefix_log = Vec::with_capacity(values.len() + 1);
        prefix.push(0.0);
        prefix_log.push(0.0);
        let (mut s, mut sl) = (0.0, 0.0);
        for (i, v) in values.iter().enumerate() {
            s += v;
            sl += v / (i + 1) as f64;
            prefix.push(s);
            prefix_log.push(sl);
        }
        MeanTraces { values, prefix, prefix_log }
    }

    pub fn limit(&self) -> usize {
        self.values.len()
    }

    /// `x^{-1} Σ_{n≤x} f(n)`.
    pub fn cesaro(&self, x: f64) -> f64 {
        let k = (x.floor() as usize).min(self.limit());
        self.prefix[k] / x
    }

    /// `(ln x)^{-1} Σ_{n≤x} f(n)/n`.
    pub fn logmean(&self, x: f64) -> f64 {
        let k = (x.floor() as usize).min(self.limit());
        self.prefix_log[k] / x.ln()
    }

    /// `(min, max)` of `g(x)` over integers `x ∈ (N/10, N]`.
    fn last_decade(&self, g: impl Fn(f64) -> f64) -> (f64, f64) {
        let n = self.limit();
        let start = (n / 10 + 1).max(2);
        (start..=n).map(|x| g(x as f64)).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }
}

/// Finite-`x` stand-ins for `liminf`/`limsup`: extremes over the last decade
/// `(N/10, N]` of the tabulation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Proxies {
    pub cesaro_liminf_proxy: f64,
    pub cesaro_limsup_proxy: f64,
    pub logmean_liminf_proxy: f64,
    pub logmean_limsup_proxy: f64,
    pub decade_start: u64,
    pub decade_end: u64,
}

fn proxies(t: &MeanTraces) -> Proxies {
    let (cl, ch) = t.last_decade(|x| t.cesaro(x));
    let (ll, lh) = t.last_decade(|x| t.logmean(x));
    Proxies {
        cesaro_liminf_proxy: cl,
        cesaro_limsup_proxy: ch,
        logmean_liminf_proxy: ll,
        logmean_limsup_proxy: lh,
        decade_start: (t.limit() / 10 + 1) as u64,
        decade_end: t.limit() as u64,
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TracePoint {
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanReport {
    pub function: String,
    pub direction: Direction,
    pub tabulated_to: u64,
    pub f1: f64,
    pub cesaro: Vec<TracePoint>,
    pub logmean: Vec<TracePoint>,
    pub alpha_y: Vec<AlphaEstimate>,
    /// Whether the `α(f; y)` intervals are consistent with monotonicity in
    /// `y` (each later interval reaches at least the earlier lower end).
    pub alpha_y_nondecreasing: bool,
    /// `sup_y` of the lower ends of `α(f; y)`: a lower bound for `α(f)`.
    #[serde(serialize_with = "ser_extended")]
    pub alpha_lower_bound: f64,
    /// `[sup_y α(f;y).lo, sup f]`; the upper end is `inf` when `f` is not
    /// known to be bounded.
    pub alpha_limit: Interval,
    pub proxies: Proxies,
}

impl MeanReport {
    fn negate(mut self) -> Self {
        for p in self.cesaro.iter_mut().chain(self.logmean.iter_mut()) {
            p.value = -p.value;
        }
        for a in &mut self.alpha_y {
            a.alpha = a.alpha.neg();
            let (l, u) = (a.lower_bound_used, a.upper_bound_used);
            a.lower_bound_used = -u;
            a.upper_bound_used = -l;
        }
        self.f1 = -self.f1;
        self.alpha_lower_bound = -self.alpha_lower_bound;
        self.alpha_limit = self.alpha_limit.neg();
        let p = self.proxies;
        self.proxies = Proxies {
            cesaro_liminf_proxy: -p.cesaro_limsup_proxy,
            cesaro_limsup_proxy: -p.cesaro_liminf_proxy,
            logmean_liminf_proxy: -p.logmean_limsup_proxy,
            logmean_limsup_proxy: -p.logmean_liminf_proxy,
            ..p
        };
        self
    }
}

struct NegRef<'a>(&'a dyn ArithFn);

impl ArithFn for NegRef<'_> {
    fn value(&self, n: u64) -> Result<f64> {
        Ok(-self.0.value(n)?)
    }
    fn lower_bound(&self) -> Option<f64> {
        self.0.upper_bound().map(|u| -u)
    }
    fn upper_bound(&self) -> Option<f64> {
        self.0.lower_bound().map(|l| -l)
    }
    fn domain(&self) -> Option<u64> {
        self.0.domain()
    }
    fn name(&self) -> String {
        format!("-{}", self.0.name())
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        Ok(self.0.tabulate(n)?.into_iter().map(|x| -x).collect())
    }
}

fn monotone_direction(values: &[f64], exec: Exec) -> std::result::Result<Direction, (u64, u64)> {
    let t = TabulatedFunction::float(values.to_vec(), 53, "f");
    let inc = is_mult_monotone(&t, Direction::Increasing, exec);
    if inc.holds() {
        return Ok(Direction::Increasing);
    }
    if is_mult_monotone(&t, Direction::Decreasing, exec).holds() {
        return Ok(Direction::Decreasing);
    }
    Err(inc.violation.expect("violation recorded"))
}

fn alpha_y_consistent(a: &[AlphaEstimate]) -> bool {
    a.windows(2).all(|w| w[1].alpha.hi >= w[0].alpha.lo)
}

fn increasing_report(
    f: &dyn ArithFn,
    values: Vec<f64>,
    y_grid: &[f64],
    x_grid: &[f64],
    exec: Exec,
) -> Result<MeanReport> {
    let f1 = values[0];
    let alpha_y = exec.try_map(y_grid, |&y| alpha_friable(f, y, None, Some(f1)))?;
    let lower = alpha_y.iter().map(|a| a.alpha.lo).fold(f1, f64::max);
    let upper = f.upper_bound().unwrap_or(f64::INFINITY);
    let traces = MeanTraces::new(values);
    Ok(MeanReport {
        function: f.name(),
        direction: Direction::Increasing,
        tabulated_to: traces.limit() as u64,
        f1,
        cesaro: x_grid.iter().map(|&x| TracePoint { x, value: traces.cesaro(x) }).collect(),
        logmean: x_grid.iter().map(|&x| TracePoint { x, value: traces.logmean(x) }).collect(),
        alpha_y_nondecreasing: alpha_y_consistent(&alpha_y),
        alpha_y,
        alpha_lower_bound: lower,
        alpha_limit: Interval::new(lower, upper.max(lower)),
        proxies: proxies(&traces),
    })
}

fn grid_limit(x_grid: &[f64]) -> Result<usize> {
    let n = x_grid.iter().cloned().fold(0.0, f64::max).floor() as usize;
    if n < 2 {
        return Err(Error::Means("x grid must reach at least 2".into()));
    }
    Ok(n)
}

/// Builds a [`MeanReport`] for a multiplicatively monotone `f`: `α(f; y)`
/// along `y_grid`, Cesàro and logarithmic traces along `x_grid`, and the
/// `sup_y` lower bound. Decreasing functions are handled through `-f`.
pub fn alpha_limit_estimate(f: &dyn ArithFn, y_grid: &[f64], x_grid: &[f64], exec: Exec) -> Result<MeanReport> {
    let n = grid_limit(x_grid)?;
    let values = f.tabulate(n)?;
    match monotone_direction(&values, exec) {
        Ok(Direction::Increasing) => increasing_report(f, values, y_grid, x_grid, exec),
        Ok(Direction::Decreasing) => {
            let g = NegRef(f);
            let neg = values.into_iter().map(|v| -v).collect();
            let mut r = increasing_report(&g, neg, y_grid, x_grid, exec)?.negate();
            r.direction = Direction::Decreasing;
            r.function = f.name();
            Ok(r)
        }
        Err((k, n)) => Err(Error::NotMonotone { k, n }),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapRow {
    pub x: f64,
    pub cesaro: f64,
    pub logmean: f64,
    #[serde(serialize_with = "ser_extended")]
    pub alpha_lowerbound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub function: String,
    pub multiplicatively_increasing: bool,
    pub rows: Vec<GapRow>,
    pub proxies: Proxies,
    /// Whether `Df ≥ 0` on the tabulation.
    pub derivative_nonnegative: bool,
    /// `Σ_{m≤N} Df(m)/m`, reported when `Df ≥ 0`.
    pub closed_form_mean: Option<f64>,
    /// `|cesaro(N) - Σ_{m≤N} Df(m)/m|`, reported when `Df ≥ 0`.
    pub closed_form_gap: Option<f64>,
}

/// Side-by-side Cesàro mean, logarithmic mean and the `α` lower bound, plus
/// the closed-form mean `Σ Df(m)/m` when the Bougaïef derivative is `≥ 0`.
pub fn mean_gap_diagnostics(f: &dyn ArithFn, x_grid: &[f64], y_grid: &[f64], exec: Exec) -> Result<GapReport> {
    let n = grid_limit(x_grid)?;
    let values = f.tabulate(n)?;
    let tab = TabulatedFunction::float(values.clone(), 53, f.name());
    let increasing = is_mult_monotone(&tab, Direction::Increasing, exec).holds();
    let alpha_lb = if increasing {
        let f1 = values[0];
        exec.try_map(y_grid, |&y| alpha_friable(f, y, None, Some(f1)))?
            .iter()
            .map(|a| a.alpha.lo)
            .fold(f1, f64::max)
    } else {
        f64::NAN
    };
    let traces = MeanTraces::new(values);
    let rows = x_grid
        .iter()
        .map(|&x| GapRow { x, cesaro: traces.cesaro(x), logmean: traces.logmean(x), alpha_lowerbound: alpha_lb })
        .collect();
    let df = bougaief_derivative(&tab).to_f64_vec();
    // the float derivative of an integer-valued table is exact up to rounding
    let nonneg = df.iter().all(|&d| d >= -1e-9);
    let (closed, gap) = if nonneg {
        let s: f64 = df.iter().enumerate().rev().map(|(i, d)| d / (i + 1) as f64).sum();
        (Some(s), Some((traces.cesaro(n as f64) - s).abs()))
    } else {
        (None, None)
    };
    Ok(GapReport {
        function: f.name(),
        multiplicatively_increasing: increasing,
        rows,
        proxies: proxies(&traces),
        derivative_nonnegative: nonneg,
        closed_form_mean: closed,
        closed_form_gap: gap,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMember {
    pub name: String,
    /// `α(f_k; y_max)`.
    pub alpha_at_ymax: Interval,
    /// `sup_y α(f_k; y).lo`.
    #[serde(serialize_with = "ser_extended")]
    pub alpha_lower_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub members: Vec<FamilyMember>,
    /// First `(k, n)` with `f_k(n) > f_{k+1}(n)` (1-based `k`).
    pub monotone_in_k_violation: Option<(usize, u64)>,
    /// Whether the `α(f_k; y_max)` intervals are consistent with `α(f_k)`
    /// nondecreasing in `k`.
    pub alpha_nondecreasing: bool,
    pub sup: Option<FamilyMember>,
    /// Midpoint gaps `α(f; y_max) - α(f_k; y_max)`.
    pub gaps_to_sup: Vec<f64>,
}

/// `α(f_k)` along an increasing family of multiplicatively increasing
/// functions, and its approach to `α(sup f_k)`.
pub fn monotone_family_alpha(
    family: &[&dyn ArithFn],
    sup: Option<&dyn ArithFn>,
    y_grid: &[f64],
    check_to: usize,
    exec: Exec,
) -> Result<FamilyReport> {
    if y_grid.is_empty() {
        return Err(Error::Means("y grid is empty".into()));
    }
    let tabs = family.iter().map(|f| f.tabulate(check_to)).collect::<Result<Vec<_>>>()?;
    let mut violation = None;
    'outer: for (k, w) in tabs.windows(2).enumerate() {
        for (i, (a, b)) in w[0].iter().zip(&w[1]).enumerate() {
            if a > b {
                violation = Some((k + 1, i as u64 + 1));
                break 'outer;
            }
        }
    }
    let member = |f: &dyn ArithFn| -> Result<FamilyMember> {
        let f1 = f.value(1)?;
        let est = y_grid.iter().map(|&y| alpha_friable(f, y, None, Some(f1))).collect::<Result<Vec<_>>>()?;
        Ok(FamilyMember {
            name: f.name(),
            alpha_at_ymax: est.last().expect("nonempty grid").alpha,
            alpha_lower_bound: est.iter().map(|a| a.alpha.lo).fold(f1, f64::max),
        })
    };
    let members = exec.try_map(family, |f| member(*f))?;
    let sup = sup.map(member).transpose()?;
    let alpha_nondecreasing = members.windows(2).all(|w| w[1].alpha_at_ymax.hi >= w[0].alpha_at_ymax.lo);
    let gaps_to_sup = match &sup {
        Some(s) => members.iter().map(|m| s.alpha_at_ymax.mid() - m.alpha_at_ymax.mid()).collect(),
        None => Vec::new(),
    };
    Ok(FamilyReport { members, monotone_in_k_violation: violation, alpha_nondecreasing, sup, gaps_to_sup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{Constant, MultiplesIndicator};
    use crate::sets::IntegerSet;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn mertens_examples() {
        assert_eq!(mertens_product(3.0).unwrap(), q(1, 3));
        assert_eq!(mertens_product(10.0).unwrap(), q(8, 35));
        assert_eq!(mertens_product(2.0).unwrap(), q(1, 2));
        assert!(mertens_product(1.5).is_err());
    }

    #[test]
    fn alpha_of_constant_is_exact() {
        for y in [2.0, 3.0, 7.0, 13.0] {
            let a = alpha_friable(&Constant(1.0), y, None, None).unwrap();
            assert!(a.alpha.contains(1.0), "{y}: {:?}", a.alpha);
            assert!(a.alpha.width() < 1e-8, "{y}: {:?}", a.alpha);
        }
    }

    #[test]
    fn alpha_even_indicator() {
        let f = MultiplesIndicator(vec![2]);
        let a = alpha_friable(&f, 2.0, Some(1 << 20), None).unwrap();
        assert!(a.alpha.contains(0.5));
        assert!(a.alpha.width() < 1e-6);
    }

    #[test]
    fn alpha_needs_lower_bound() {
        let t = TabulatedFunction::constant(100, 1);
        assert!(alpha_friable(&t, 2.0, Some(64), None).is_err());
        assert!(alpha_friable(&t, 2.0, Some(64), Some(0.0)).is_ok());
        assert!(alpha_friable(&t, 2.0, Some(128), Some(0.0)).is_err());
    }

    #[test]
    fn direct_factor_alpha_examples() {
        let sq = DirectFactorPair::with_complement(IntegerSet::parse("squares").unwrap(), 1000).unwrap();
        let a = alpha_direct_factor(&Constant(1.0), &sq, 1_000_000, None).unwrap();
        assert!(a.alpha.contains(1.0) && a.alpha.width() < 1e-5, "{:?}", a.alpha);

        let p2 = DirectFactorPair::with_complement(IntegerSet::parse("powers:2").unwrap(), 1000).unwrap();
        let id = crate::functions::FnArith::new("id", Some(1.0), None, |n| n as f64);
        let a = alpha_direct_factor(&id, &p2, 1 << 40, None).unwrap();
        assert!(a.alpha.hi.is_infinite());

        let inv = crate::functions::FnArith::new("1/n", Some(0.0), Some(1.0), |n| 1.0 / n as f64);
        let a = alpha_direct_factor(&inv, &p2, 1 << 40, None).unwrap();
        assert!(a.alpha.contains(2.0 / 3.0) && a.alpha.width() < 1e-9, "{:?}", a.alpha);
    }

    #[test]
    fn constant_report() {
        let r = alpha_limit_estimate(&Constant(2.5), &[2.0, 3.0], &[100.0, 1000.0], Exec::Sequential).unwrap();
        for a in &r.alpha_y {
            assert!(a.alpha.contains(2.5));
        }
        assert!(r.cesaro.iter().all(|p| (p.value - 2.5).abs() < 1e-12));
        assert!(r.alpha_limit.contains(2.5));
    }

    #[test]
    fn multiples_of_seven() {
        let f = MultiplesIndicator(vec![7]);
        let r = alpha_limit_estimate(&f, &[7.0, 11.0], &[1e4, 1e5], Exec::Parallel).unwrap();
        for a in &r.alpha_y {
            assert!(a.alpha.contains(1.0 / 7.0), "{:?}", a.alpha);
        }
    }

    #[test]
    fn decreasing_function_uses_negation() {
        let f = crate::functions::FnArith::new("-M(2)", Some(-1.0), Some(0.0), |n| -((n % 2 == 0) as i32 as f64));
        let r = alpha_limit_estimate(&f, &[2.0, 3.0], &[1000.0], Exec::Sequential).unwrap();
        assert_eq!(r.direction, Direction::Decreasing);
        assert!(r.alpha_y[0].alpha.contains(-0.5));
        assert!(r.alpha_limit.hi <= 0.0);
    }

    #[test]
    fn non_monotone_rejected() {
        let f = crate::functions::FnArith::new("1{2}", Some(0.0), Some(1.0), |n| (n == 2) as i32 as f64);
        match alpha_limit_estimate(&f, &[2.0], &[100.0], Exec::Sequential) {
            Err(Error::NotMonotone { k: 2, n: 4 }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gap_for_multiples_of_two() {
        let f = MultiplesIndicator(vec![2]);
        let r = mean_gap_diagnostics(&f, &[1e3, 1e4], &[2.0, 3.0], Exec::Sequential).unwrap();
        assert!(r.derivative_nonnegative);
        assert!((r.closed_form_mean.unwrap() - 0.5).abs() < 1e-12);
        assert!(r.closed_form_gap.unwrap() < 1e-3);
        let c = mean_gap_diagnostics(&Constant(1.0), &[1e3], &[2.0], Exec::Sequential).unwrap();
        assert!((c.rows[0].cesaro - 1.0).abs() < 1e-12);
        assert!((c.closed_form_mean.unwrap() - 1.0).abs() < 1e-12);
        assert!(c.rows[0].alpha_lowerbound >= 1.0 - 1e-12);
    }
}
