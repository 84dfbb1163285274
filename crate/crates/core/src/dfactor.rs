//! Direct factors of the positive integers.
//!
//! A pair `(A, B)` is a direct-factor pair when every `n ≥ 1` is uniquely
//! `a·b` with `a ∈ A`, `b ∈ B`. The friable/sifted split `(S(y), E(y))` is
//! the basic example. This module verifies pairs to a finite bound, builds
//! complements, reduces functions to their `A`-part, and compares the
//! empirical density of `B` with `(Σ_{a∈A} 1/a)^{-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arith::{TabulatedFunction, Values};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::interval::Interval;
use crate::rational::to_f64;
use crate::sets::{IntegerSet, SetSpec};
use crate::sieve;

/// `(a, b)` with `a` the `y`-friable part of `n` and `b = n / a`.
pub fn friable_split(n: u64, y: f64) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let a = sieve::factor(n)
        .into_iter()
        .filter(|&(p, _)| p as f64 <= y)
        .map(|(p, k)| p.pow(k))
        .product::<u64>();
    Ok((a, n / a))
}

/// Friable/sifted split of every `n ≤ N`.
#[derive(Debug, Clone)]
pub struct FriableIndex {
    pub y: f64,
    pub limit: usize,
    friable: Vec<u64>,
}

impl FriableIndex {
    pub fn new(y: f64, limit: usize) -> Result<Self> {
        if y <= 1.0 {
            return Err(Error::DirectFactor(format!("friability bound must exceed 1, got {y}")));
        }
        let spf = sieve::spf_table(limit);
        let mut friable = vec![0u64; limit + 1];
        for n in 1..=limit {
            friable[n] = sieve::factor_with(&spf, n)
                .into_iter()
                .filter(|&(p, _)| p as f64 <= y)
                .map(|(p, k)| p.pow(k))
                .product();
        }
        Ok(FriableIndex { y, limit, friable })
    }

    pub fn split(&self, n: u64) -> (u64, u64) {
        let a = self.friable[n as usize];
        (a, n / a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FriableWindow {
    /// `S(y)`.
    Friable,
    /// `E(y)`.
    Sifted,
    /// `S(y, z)`, `z ≥ y`.
    Between(f64),
}

pub fn enumerate_friable(y: f64, x: u64, window: FriableWindow) -> Result<Vec<u64>> {
    if y <= 1.0 {
        return Err(Error::DirectFactor(format!("friability bound must exceed 1, got {y}")));
    }
    let spec = match window {
        FriableWindow::Friable => SetSpec::Friable(y),
        FriableWindow::Sifted => SetSpec::Sifted(y),
        FriableWindow::Between(z) => {
            if z < y {
                return Err(Error::DirectFactor(format!("window needs z >= y, got y={y}, z={z}")));
            }
            SetSpec::Window(y, z)
        }
    };
    IntegerSet::new(spec).enumerate(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DirectFactorVerdict {
    Holds { to: u64 },
    Counterexample { n: u64, representations: u32 },
}

impl DirectFactorVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DirectFactorVerdict::Holds { .. })
    }
}

/// Representation counts `#{(a, b) : a b = n}` for `n ≤ N`.
fn representation_counts(a: &[u64], b: &[u64], n: u64) -> Vec<u32> {
    let mut counts = vec![0u32; n as usize + 1];
    for &x in a {
        for &y in b {
            match x.checked_mul(y) {
                Some(p) if p <= n => counts[p as usize] += 1,
                _ => break,
            }
        }
    }
    counts
}

/// Exhaustive check that each `n ≤ N` has exactly one representation.
pub fn verify_direct_factor(a: &IntegerSet, b: &IntegerSet, n: u64) -> Result<DirectFactorVerdict> {
    let am = a.enumerate(n)?;
    let bm = b.enumerate(n)?;
    let counts = representation_counts(&am, &bm, n);
    for (k, &c) in counts.iter().enumerate().skip(1) {
        if c != 1 {
            return Ok(DirectFactorVerdict::Counterexample { n: k as u64, representations: c });
        }
    }
    Ok(DirectFactorVerdict::Holds { to: n })
}

/// The complement `B` of `A` on `1..=N`: `n ∈ B` iff `n` has no
/// representation `a·b` with `1 < a ∈ A`, `b ∈ B`.
pub fn complement_set(a: &IntegerSet, n: u64) -> Result<IntegerSet> {
    let am: Vec<u64> = a.enumerate(n)?.into_iter().filter(|&x| x > 1).collect();
    let mut hits = vec![0u32; n as usize + 1];
    let mut members = Vec::new();
    for k in 1..=n {
        if hits[k as usize] > 0 {
            continue;
        }
        members.push(k);
        for &x in &am {
            match x.checked_mul(k) {
                Some(p) if p <= n => hits[p as usize] += 1,
                _ => break,
            }
        }
    }
    Ok(IntegerSet::explicit(members, n))
}

/// Enclosure of `Σ_{a∈A} 1/a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReciprocalSum {
    pub lo: f64,
    /// `+inf` when no finite upper bound is known.
    #[serde(serialize_with = "crate::interval::ser_extended")]
    pub hi: f64,
    /// True when the upper bound rests on an extrapolated (unproven) tail.
    pub heuristic: bool,
    /// Largest element included in the partial sum.
    pub truncated_at: u64,
}

impl ReciprocalSum {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    /// `λ = (Σ 1/a)^{-1}`, in `[0, 1]`.
    pub fn lambda(&self) -> Interval {
        let lo = if self.hi.is_infinite() { 0.0 } else { (1.0 / self.hi).next_down().max(0.0) };
        let hi = (1.0 / self.lo).next_up().min(1.0);
        Interval::new(lo, hi)
    }
}

fn partial_reciprocal(members: &[u64]) -> (f64, f64) {
    // smallest terms first
    let s: f64 = members.iter().rev().map(|&a| 1.0 / a as f64).sum();
    let err = (members.len() as f64 + 1.0) * f64::EPSILON * s;
    (s, err)
}

/// `∏_{p ∈ primes} p / (p - 1)`, exact.
pub fn euler_factor(primes: &[u64]) -> BigRational {
    primes
        .iter()
        .map(|&p| BigRational::new(BigInt::from(p), BigInt::from(p - 1)))
        .fold(BigRational::one(), |acc, x| acc * x)
}

/// Default truncation used for reciprocal sums that need a partial sum.
pub const RECIPROCAL_TRUNCATION: u64 = 1_000_000;

/// Encloses `Σ_{a∈A} 1/a` using closed forms where the set has one, a
/// rigorous integral bound for squares, and otherwise a dyadic-block
/// extrapolation flagged as heuristic.
pub fn reciprocal_sum(a: &IntegerSet, truncation: u64) -> Result<ReciprocalSum> {
    let t = truncation.min(a.enumeration_cap);
    let exact = |r: BigRational| {
        let v = to_f64(&r);
        let i = Interval::around(v, v * f64::EPSILON);
        ReciprocalSum { lo: i.lo, hi: i.hi, heuristic: false, truncated_at: u64::MAX }
    };
    Ok(match &a.spec {
        SetSpec::Powers(m) => exact(BigRational::new(BigInt::from(*m), BigInt::from(m - 1))),
        SetSpec::Friable(y) => exact(euler_factor(&sieve::primes_le(*y))),
        SetSpec::Window(y, z) => {
            let ps: Vec<u64> = sieve::primes_le(*z).into_iter().filter(|&p| p as f64 > *y).collect();
            exact(euler_factor(&ps))
        }
        SetSpec::List(v) => {
            let r = v.iter().fold(BigRational::from_integer(0.into()), |acc, &x| {
                acc + BigRational::new(BigInt::one(), BigInt::from(x))
            });
            exact(r)
        }
        SetSpec::Squares => {
            let k = ((t as f64).sqrt() as u64).max(1);
            let members: Vec<u64> = (1..=k).map(|j| j * j).collect();
            let (s, err) = partial_reciprocal(&members);
            let tail = Interval::new(1.0 / (k as f64 + 1.0), 1.0 / k as f64).widen();
            let i = Interval::around(s, err).add(tail);
            ReciprocalSum { lo: i.lo, hi: i.hi, heuristic: false, truncated_at: k * k }
        }
        SetSpec::Squarefree | SetSpec::Sifted(_) | SetSpec::Multiples(_) | SetSpec::All => {
            let members = a.enumerate(t)?;
            if members.is_empty() {
                return Ok(exact(BigRational::from_integer(0.into())));
            }
            let (s, err) = partial_reciprocal(&members);
            // only the partial sum is a bound here; no finite upper end
            ReciprocalSum { lo: (s - err).next_down(), hi: f64::INFINITY, heuristic: false, truncated_at: t }
        }
        SetSpec::Explicit { members, bound } => {
            let m: Vec<u64> = members.iter().copied().filter(|&x| x <= t.min(*bound)).collect();
            heuristic_tail(&m, t.min(*bound))
        }
    })
}

/// Partial sum plus a tail extrapolated from the last two dyadic blocks.
fn heuristic_tail(members: &[u64], bound: u64) -> ReciprocalSum {
    let (s, err) = partial_reciprocal(members);
    let block = |lo: u64, hi: u64| -> f64 {
        members.iter().filter(|&&a| a > lo && a <= hi).map(|&a| 1.0 / a as f64).sum()
    };
    let last = block(bound / 2, bound);
    let prev = block(bound / 4, bound / 2);
    let hi = if last == 0.0 {
        s + err
    } else if prev > 0.0 && last < prev {
        let ratio = last / prev;
        s + err + last * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    ReciprocalSum { lo: (s - err).max(0.0), hi: hi.next_up(), heuristic: true, truncated_at: bound }
}

/// A verified direct-factor pair.
#[derive(Debug, Clone)]
pub struct DirectFactorPair {
    pub a: IntegerSet,
    pub b: IntegerSet,
    pub verified_to: u64,
    pub inv_sum_a: ReciprocalSum,
}

impl DirectFactorPair {
    /// Verifies `(A, B)` up to `n`.
    pub fn new(a: IntegerSet, b: IntegerSet, n: u64) -> Result<Self> {
        match verify_direct_factor(&a, &b, n)? {
            DirectFactorVerdict::Holds { .. } => {}
            DirectFactorVerdict::Counterexample { n: bad, representations } => {
                return Err(Error::DirectFactor(format!(
                    "({}, {}) is not a direct-factor pair: {bad} has {representations} representations",
                    a.spec_string(),
                    b.spec_string()
                )))
            }
        }
        let inv_sum_a = reciprocal_sum(&a, RECIPROCAL_TRUNCATION)?;
        Ok(DirectFactorPair { a, b, verified_to: n, inv_sum_a })
    }

    /// `A` with its computed complement on `1..=n`.
    pub fn with_complement(a: IntegerSet, n: u64) -> Result<Self> {
        let b = complement_set(&a, n)?;
        Self::new(a, b, n)
    }

    /// `(S(y), E(y))`.
    pub fn friable(y: f64, n: u64) -> Result<Self> {
        Self::new(IntegerSet::new(SetSpec::Friable(y)), IntegerSet::new(SetSpec::Sifted(y)), n)
    }

    /// Replaces the reciprocal-sum enclosure with a caller-proven tail bound:
    /// `Σ_{a∈A, a > truncation} 1/a ≤ tail`.
    pub fn with_proven_tail(mut self, truncation: u64, tail: f64) -> Result<Self> {
        let members = self.a.enumerate(truncation)?;
        let (s, err) = partial_reciprocal(&members);
        self.inv_sum_a = ReciprocalSum {
            lo: (s - err).next_down(),
            hi: (s + err + tail).next_up(),
            heuristic: false,
            truncated_at: truncation,
        };
        Ok(self)
    }

    /// `A`-part of every `n ≤ verified_to`; index 0 unused.
    pub fn a_parts(&self) -> Result<Vec<u64>> {
        let n = self.verified_to;
        let am = self.a.enumerate(n)?;
        let bm = self.b.enumerate(n)?;
        let mut part = vec![0u64; n as usize + 1];
        for &x in &am {
            for &y in &bm {
                match x.checked_mul(y) {
                    Some(p) if p <= n => part[p as usize] = x,
                    _ => break,
                }
            }
        }
        Ok(part)
    }

    pub fn lambda(&self) -> Interval {
        self.inv_sum_a.lambda()
    }
}

/// `f(n; A) = f(a)` where `n = a b`.
pub fn reduce_by_factor(f: &TabulatedFunction, pair: &DirectFactorPair) -> Result<TabulatedFunction> {
    let n = f.limit();
    if (n as u64) > pair.verified_to {
        return Err(Error::DirectFactor(format!(
            "pair verified to {} but f is tabulated to {n}",
            pair.verified_to
        )));
    }
    let part = pair.a_parts()?;
    let prov = format!("{}(.;{})", f.provenance, pair.a.spec_string());
    Ok(match f.values() {
        Values::Exact(v) => {
            TabulatedFunction::exact((1..=n).map(|k| v[part[k] as usize - 1].clone()).collect(), prov)
        }
        Values::Float { values, precision_bits } => TabulatedFunction::float(
            (1..=n).map(|k| values[part[k] as usize - 1]).collect(),
            *precision_bits,
            prov,
        ),
    })
}

/// `f(n; y)`, the friable reduction.
pub fn friable_reduction(f: &TabulatedFunction, y: f64) -> Result<TabulatedFunction> {
    let pair = DirectFactorPair::friable(y, f.limit() as u64)?;
    reduce_by_factor(f, &pair)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityRow {
    pub x: f64,
    pub empirical: f64,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub heuristic_tail: bool,
    /// Set when the lower end of `Σ 1/a` exceeds the divergence cap.
    pub lambda_to_zero: bool,
}

pub const DEFAULT_X_GRID: [f64; 4] = [1e3, 1e4, 1e5, 1e6];
/// `Σ 1/a` lower bounds above this are reported as the `λ → 0` case.
pub const DEFAULT_DIVERGENCE_CAP: f64 = 10.0;

/// Empirical density `#{b ∈ B : b ≤ x} / x` against `λ = (Σ_{a∈A} 1/a)^{-1}`.
pub fn esv_density(pair: &DirectFactorPair, x_grid: &[f64], divergence_cap: f64, exec: Exec) -> Result<Vec<DensityRow>> {
    let xmax = x_grid.iter().cloned().fold(0.0, f64::max).floor() as u64;
    let b = pair.b.enumerate(xmax)?;
    let lambda = pair.lambda();
    let to_zero = pair.inv_sum_a.lo > divergence_cap;
    Ok(exec.map(x_grid, |&x| {
        let count = b.partition_point(|&m| (m as f64) <= x);
        DensityRow {
            x,
            empirical: count as f64 / x,
            lambda_lo: lambda.lo,
            lambda_hi: lambda.hi,
            heuristic_tail: pair.inv_sum_a.heuristic,
            lambda_to_zero: to_zero,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        assert_eq!(friable_split(12, 2.0).unwrap(), (4, 3));
        assert_eq!(friable_split(35, 10.0).unwrap(), (35, 1));
        assert_eq!(friable_split(22, 3.0).unwrap(), (2, 11));
        assert_eq!(friable_split(1, 2.0).unwrap(), (1, 1));
        assert!(friable_split(0, 2.0).is_err());
    }

    #[test]
    fn index_matches_single_split() {
        let idx = FriableIndex::new(5.0, 2000).unwrap();
        for n in 1..=2000 {
            assert_eq!(idx.split(n), friable_split(n, 5.0).unwrap());
        }
    }

    #[test]
    fn split_composition() {
        for (y, z) in [(2.0, 5.0), (3.0, 10.0)] {
            let iy = FriableIndex::new(y, 10_000).unwrap();
            let iz = FriableIndex::new(z, 10_000).unwrap();
            for n in 1..=10_000u64 {
                let (az, _) = iz.split(n);
                assert_eq!(iy.split(n).0, iy.split(az).0, "n={n}");
                assert_eq!(az % iy.split(n).0, 0);
            }
        }
    }

    #[test]
    fn enumerate_windows() {
        assert_eq!(enumerate_friable(2.0, 20, FriableWindow::Friable).unwrap(), vec![1, 2, 4, 8, 16]);
        assert_eq!(enumerate_friable(2.0, 10, FriableWindow::Sifted).unwrap(), vec![1, 3, 5, 7, 9]);
        assert_eq!(enumerate_friable(2.0, 10, FriableWindow::Between(3.0)).unwrap(), vec![1, 3, 9]);
        assert!(enumerate_friable(3.0, 10, FriableWindow::Between(2.0)).is_err());
    }

    #[test]
    fn verify_examples() {
        let p2 = IntegerSet::parse("powers:2").unwrap();
        let odd = IntegerSet::parse("sifted:2").unwrap();
        assert!(verify_direct_factor(&p2, &odd, 10_000).unwrap().holds());

        let sq = IntegerSet::parse("squares").unwrap();
        let sf = IntegerSet::parse("squarefree").unwrap();
        assert!(verify_direct_factor(&sq, &sf, 10_000).unwrap().holds());

        let l = IntegerSet::parse("list:1,2").unwrap();
        let all = IntegerSet::parse("all").unwrap();
        assert_eq!(
            verify_direct_factor(&l, &all, 100).unwrap(),
            DirectFactorVerdict::Counterexample { n: 2, representations: 2 }
        );
    }

    #[test]
    fn friable_pairs_verify() {
        for y in [2.0, 3.0, 5.0, 10.0] {
            assert!(DirectFactorPair::friable(y, 10_000).is_ok());
        }
    }

    #[test]
    fn complement_recovers_known_pairs() {
        let c = complement_set(&IntegerSet::parse("powers:2").unwrap(), 500).unwrap();
        assert_eq!(c.enumerate(500).unwrap(), IntegerSet::parse("sifted:2").unwrap().enumerate(500).unwrap());
        let c = complement_set(&IntegerSet::parse("squares").unwrap(), 500).unwrap();
        assert_eq!(c.enumerate(500).unwrap(), IntegerSet::parse("squarefree").unwrap().enumerate(500).unwrap());
        let c = complement_set(&IntegerSet::parse("friable:3").unwrap(), 500).unwrap();
        assert_eq!(c.enumerate(500).unwrap(), IntegerSet::parse("sifted:3").unwrap().enumerate(500).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let pair = DirectFactorPair::friable(2.0, 500).unwrap();
        let id = TabulatedFunction::identity(500);
        let r = reduce_by_factor(&id, &pair).unwrap();
        assert_eq!(r.get_f64(12).unwrap(), 4.0);
        for a in [1u64, 2, 4, 8, 256] {
            assert_eq!(r.get_f64(a).unwrap(), a as f64);
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let f = TabulatedFunction::from_fn_int(500, "t", |n| ((n * 7919) % 31) as i64 - 15);
        let g = friable_reduction(&f, 3.0).unwrap();
        let gz = friable_reduction(&g, 10.0).unwrap();
        assert_eq!(g.values(), gz.values());
        let gg = friable_reduction(&g, 3.0).unwrap();
        assert_eq!(g.values(), gg.values());
    }

    #[test]
    fn reciprocal_sums() {
        let r = reciprocal_sum(&IntegerSet::parse("powers:2").unwrap(), 1000).unwrap();
        assert!(r.interval().contains(2.0) && r.width_ok(1e-15));
        let r = reciprocal_sum(&IntegerSet::parse("squares").unwrap(), 1_000_000).unwrap();
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!(r.interval().contains(z2), "{r:?}");
        assert!(r.hi - r.lo < 1e-5);
        let r = reciprocal_sum(&IntegerSet::parse("friable:3").unwrap(), 10).unwrap();
        assert!(r.interval().contains(3.0));
        let r = reciprocal_sum(&IntegerSet::parse("squarefree").unwrap(), 10_000).unwrap();
        assert!(r.hi.is_infinite() && r.lo > 5.0);
        assert_eq!(r.lambda().lo, 0.0);
    }

    impl ReciprocalSum {
        fn width_ok(&self, w: f64) -> bool {
            self.hi - self.lo <= w * self.hi.abs().max(1.0)
        }
    }

    #[test]
    fn density_examples() {
        let pair = DirectFactorPair::with_complement(IntegerSet::parse("powers:2").unwrap(), 100_000).unwrap();
        let rows = esv_density(&pair, &[1e5], DEFAULT_DIVERGENCE_CAP, Exec::Sequential).unwrap();
        assert!((rows[0].empirical - 0.5).abs() < 1e-3);
        assert!(rows[0].lambda_lo <= 0.5 && 0.5 <= rows[0].lambda_hi);

        let pair = DirectFactorPair::friable(3.0, 100_000).unwrap();
        let rows = esv_density(&pair, &[1e5], DEFAULT_DIVERGENCE_CAP, Exec::Sequential).unwrap();
        assert!((rows[0].empirical - 1.0 / 3.0).abs() < 1e-3);
    }

    #[test]
    fn density_parallel_matches_sequential() {
        let pair = DirectFactorPair::with_complement(IntegerSet::parse("squares").unwrap(), 10_000).unwrap();
        let grid = [1e3, 2e3, 5e3, 1e4];
        let a = esv_density(&pair, &grid, 10.0, Exec::Sequential).unwrap();
        let b = esv_density(&pair, &grid, 10.0, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
