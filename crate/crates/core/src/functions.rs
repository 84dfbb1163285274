//! Arithmetic functions given by a rule rather than a finite table.
//!
//! Mean-value computations need `f` on friable numbers far beyond any
//! tabulation bound, so they take an [`ArithFn`]. A [`TabulatedFunction`]
//! is also an `ArithFn`, restricted to its domain.

use std::sync::Arc;

use crate::arith::TabulatedFunction;
use crate::dfactor::friable_split;
use crate::error::{Error, Result};
use crate::sets::IntegerSet;
use crate::sieve;

pub trait ArithFn: Send + Sync {
    fn value(&self, n: u64) -> Result<f64>;

    /// A proven `inf_n f(n)`, when known.
    fn lower_bound(&self) -> Option<f64>;

    /// A proven `sup_n f(n)`; `None` when unknown or unbounded.
    fn upper_bound(&self) -> Option<f64>;

    /// Largest `n` the function is defined at; `None` for all `n`.
    fn domain(&self) -> Option<u64> {
        None
    }

    fn name(&self) -> String;

    /// `f(1), ..., f(n)`.
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        (1..=n as u64).map(|k| self.value(k)).collect()
    }
}

impl<T: ArithFn + ?Sized> ArithFn for Arc<T> {
    fn value(&self, n: u64) -> Result<f64> {
        (**self).value(n)
    }
    fn lower_bound(&self) -> Option<f64> {
        (**self).lower_bound()
    }
    fn upper_bound(&self) -> Option<f64> {
        (**self).upper_bound()
    }
    fn domain(&self) -> Option<u64> {
        (**self).domain()
    }
    fn name(&self) -> String {
        (**self).name()
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        (**self).tabulate(n)
    }
}

pub fn tabulate_fn(f: &dyn ArithFn, n: usize) -> Result<TabulatedFunction> {
    Ok(TabulatedFunction::float(f.tabulate(n)?, 53, f.name()))
}

#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl ArithFn for Constant {
    fn value(&self, _n: u64) -> Result<f64> {
        Ok(self.0)
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(self.0)
    }
    fn upper_bound(&self) -> Option<f64> {
        Some(self.0)
    }
    fn name(&self) -> String {
        format!("const:{}", self.0)
    }
}

/// Indicator of `M(A)` for a finite generating set `A`.
#[derive(Debug, Clone)]
pub struct MultiplesIndicator(pub Vec<u64>);

impl ArithFn for MultiplesIndicator {
    fn value(&self, n: u64) -> Result<f64> {
        Ok(if self.0.iter().any(|&a| n.is_multiple_of(a)) { 1.0 } else { 0.0 })
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn upper_bound(&self) -> Option<f64> {
        Some(1.0)
    }
    fn name(&self) -> String {
        format!("M({})", self.0.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        let mut v = vec![0.0; n];
        for &a in &self.0 {
            for m in (a as usize..=n).step_by(a as usize) {
                v[m - 1] = 1.0;
            }
        }
        Ok(v)
    }
}

/// Indicator of an [`IntegerSet`].
#[derive(Debug, Clone)]
pub struct SetIndicator(pub IntegerSet);

impl ArithFn for SetIndicator {
    fn value(&self, n: u64) -> Result<f64> {
        Ok(if self.0.contains(n) { 1.0 } else { 0.0 })
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn upper_bound(&self) -> Option<f64> {
        Some(1.0)
    }
    fn name(&self) -> String {
        format!("1[{}]", self.0.spec_string())
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        let mut v = vec![0.0; n];
        for m in self.0.enumerate(n as u64)? {
            v[m as usize - 1] = 1.0;
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Ln;

impl ArithFn for Ln {
    fn value(&self, n: u64) -> Result<f64> {
        Ok((n as f64).ln())
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn upper_bound(&self) -> Option<f64> {
        None
    }
    fn name(&self) -> String {
        "ln".into()
    }
}

/// `ω(n)`, the number of distinct prime divisors.
#[derive(Debug, Clone, Copy)]
pub struct Omega;

impl ArithFn for Omega {
    fn value(&self, n: u64) -> Result<f64> {
        Ok(sieve::factor(n).len() as f64)
    }
    fn lower_bound(&self) -> Option<f64> {
        Some(0.0)
    }
    fn upper_bound(&self) -> Option<f64> {
        None
    }
    fn name(&self) -> String {
        "omega".into()
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        Ok(sieve::omega_table(n)[1..].iter().map(|&w| w as f64).collect())
    }
}

/// `min(f, cap)`.
#[derive(Clone)]
pub struct Capped {
    pub inner: Arc<dyn ArithFn>,
    pub cap: f64,
}

impl ArithFn for Capped {
    fn value(&self, n: u64) -> Result<f64> {
        Ok(self.inner.value(n)?.min(self.cap))
    }
    fn lower_bound(&self) -> Option<f64> {
        self.inner.lower_bound().map(|m| m.min(self.cap))
    }
    fn upper_bound(&self) -> Option<f64> {
        Some(self.inner.upper_bound().map_or(self.cap, |u| u.min(self.cap)))
    }
    fn domain(&self) -> Option<u64> {
        self.inner.domain()
    }
    fn name(&self) -> String {
        format!("min({},{})", self.inner.name(), self.cap)
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        Ok(self.inner.tabulate(n)?.into_iter().map(|x| x.min(self.cap)).collect())
    }
}

/// `f(n; y) = f(a)` with `a` the `y`-friable part of `n`.
#[derive(Clone)]
pub struct FriableReduced {
    pub inner: Arc<dyn ArithFn>,
    pub y: f64,
}

impl ArithFn for FriableReduced {
    fn value(&self, n: u64) -> Result<f64> {
        self.inner.value(friable_split(n, self.y)?.0)
    }
    fn lower_bound(&self) -> Option<f64> {
        self.inner.lower_bound()
    }
    fn upper_bound(&self) -> Option<f64> {
        self.inner.upper_bound()
    }
    fn domain(&self) -> Option<u64> {
        self.inner.domain()
    }
    fn name(&self) -> String {
        format!("{}(.;{})", self.inner.name(), self.y)
    }
}

/// `-f`.
#[derive(Clone)]
pub struct Negated(pub Arc<dyn ArithFn>);

impl ArithFn for Negated {
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

/// A closure with declared bounds.
pub struct FnArith<F> {
    pub f: F,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub label: String,
}

impl<F: Fn(u64) -> f64 + Send + Sync> FnArith<F> {
    pub fn new(label: &str, lower: Option<f64>, upper: Option<f64>, f: F) -> Self {
        FnArith { f, lower, upper, label: label.into() }
    }
}

impl<F: Fn(u64) -> f64 + Send + Sync> ArithFn for FnArith<F> {
    fn value(&self, n: u64) -> Result<f64> {
        Ok((self.f)(n))
    }
    fn lower_bound(&self) -> Option<f64> {
        self.lower
    }
    fn upper_bound(&self) -> Option<f64> {
        self.upper
    }
    fn name(&self) -> String {
        self.label.clone()
    }
}

/// A finite table; bounds describe the tabulated values only.
impl ArithFn for TabulatedFunction {
    fn value(&self, n: u64) -> Result<f64> {
        self.get_f64(n)
    }
    fn lower_bound(&self) -> Option<f64> {
        None
    }
    fn upper_bound(&self) -> Option<f64> {
        None
    }
    fn domain(&self) -> Option<u64> {
        Some(self.limit() as u64)
    }
    fn name(&self) -> String {
        self.provenance.clone()
    }
    fn tabulate(&self, n: usize) -> Result<Vec<f64>> {
        if n > self.limit() {
            return Err(Error::OutOfRange { index: n as u64, limit: self.limit() as u64 });
        }
        Ok(self.to_f64_vec()[..n].to_vec())
    }
}

/// Parses a function name: `one`, `const:c`, `id`, `ln`, `omega`,
/// `divisors`, `min-ln:k`, `min-omega:k`.
pub fn parse_function(s: &str) -> Result<Arc<dyn ArithFn>> {
    let err = || Error::Means(format!("unknown function `{s}`"));
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    let num = |a: Option<&str>| a.and_then(|x| x.parse::<f64>().ok()).ok_or_else(err);
    Ok(match head {
        "one" => Arc::new(Constant(1.0)),
        "const" => Arc::new(Constant(num(arg)?)),
        "id" => Arc::new(FnArith::new("id", Some(1.0), None, |n| n as f64)),
        "ln" => Arc::new(Ln),
        "omega" => Arc::new(Omega),
        "divisors" => Arc::new(FnArith::new("divisors", Some(1.0), None, |n| {
            sieve::factor(n).iter().map(|&(_, k)| (k + 1) as f64).product()
        })),
        "min-ln" => Arc::new(Capped { inner: Arc::new(Ln), cap: num(arg)? }),
        "min-omega" => Arc::new(Capped { inner: Arc::new(Omega), cap: num(arg)? }),
        _ => return Err(err()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulations_match_values() {
        let fs: Vec<Arc<dyn ArithFn>> = vec![
            Arc::new(MultiplesIndicator(vec![2, 3])),
            Arc::new(Omega),
            Arc::new(Capped { inner: Arc::new(Omega), cap: 2.0 }),
            Arc::new(SetIndicator(IntegerSet::parse("squarefree").unwrap())),
            Arc::new(Negated(Arc::new(Ln))),
        ];
        for f in fs {
            let t = f.tabulate(500).unwrap();
            for n in 1..=500u64 {
                assert_eq!(t[n as usize - 1], f.value(n).unwrap(), "{} at {n}", f.name());
            }
        }
    }

    #[test]
    fn friable_reduction_of_rule() {
        let f = FriableReduced { inner: Arc::new(FnArith::new("id", Some(1.0), None, |n| n as f64)), y: 2.0 };
        assert_eq!(f.value(12).unwrap(), 4.0);
        assert_eq!(f.value(7).unwrap(), 1.0);
    }

    #[test]
    fn parses_names() {
        for s in ["one", "const:2.5", "id", "ln", "omega", "divisors", "min-ln:3", "min-omega:2"] {
            assert!(parse_function(s).is_ok(), "{s}");
        }
        assert!(parse_function("zeta").is_err());
        assert_eq!(parse_function("divisors").unwrap().value(12).unwrap(), 6.0);
        assert_eq!(parse_function("min-omega:2").unwrap().value(30).unwrap(), 2.0);
    }
}
