//! Enumerable sets of positive integers and their spec mini-grammar.
//!
//! Grammar: `powers:m`, `squares`, `squarefree`, `friable:y`, `sifted:y`,
//! `window:y,z` (all prime factors in `(y, z]`), `list:a,b,...`,
//! `multiples:a,b,...`, `all`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sieve;

/// Default enumeration cap for sets that are enumerated by sieving.
pub const SIEVE_CAP: u64 = 100_000_000;
/// Default enumeration cap for sets that are enumerated by generation.
pub const GENERATED_CAP: u64 = 1_000_000_000_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum SetSpec {
    /// `{1, m, m², ...}`.
    Powers(u64),
    Squares,
    Squarefree,
    /// `S(y)`: all prime factors `≤ y`.
    Friable(f64),
    /// `E(y)`: all prime factors `> y`.
    Sifted(f64),
    /// `S(y, z)`: all prime factors `p` with `y < p ≤ z`.
    Window(f64, f64),
    List(Vec<u64>),
    Multiples(Vec<u64>),
    All,
    /// Explicit ascending member list, complete up to `bound`.
    Explicit { members: Arc<Vec<u64>>, bound: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegerSet {
    pub spec: SetSpec,
    pub enumeration_cap: u64,
}

fn parse_real(s: &str, whole: &str) -> Result<f64> {
    s.trim().parse::<f64>().ok().filter(|y| y.is_finite()).ok_or_else(|| Error::SetSpec(whole.into()))
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().ok().filter(|&x| x >= 1).ok_or_else(|| Error::SetSpec(whole.into())))
        .collect()
}

impl SetSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let err = || Error::SetSpec(s.into());
        let spec = match (head, arg) {
            ("powers", Some(a)) => {
                let m: u64 = a.trim().parse().map_err(|_| err())?;
                if m < 2 {
                    return Err(err());
                }
                SetSpec::Powers(m)
            }
            ("squares", None) => SetSpec::Squares,
            ("squarefree", None) => SetSpec::Squarefree,
            ("all", None) => SetSpec::All,
            ("friable", Some(a)) => {
                let y = parse_real(a, s)?;
                if y <= 1.0 {
                    return Err(err());
                }
                SetSpec::Friable(y)
            }
            ("sifted", Some(a)) => {
                let y = parse_real(a, s)?;
                if y <= 1.0 {
                    return Err(err());
                }
                SetSpec::Sifted(y)
            }
            ("window", Some(a)) => {
                let (y, z) = a.split_once(',').ok_or_else(err)?;
                let (y, z) = (parse_real(y, s)?, parse_real(z, s)?);
                if y <= 1.0 || z < y {
                    return Err(err());
                }
                SetSpec::Window(y, z)
            }
            ("list", Some(a)) => {
                let mut v = parse_list(a, s)?;
                v.sort_unstable();
                v.dedup();
                SetSpec::List(v)
            }
            ("multiples", Some(a)) => {
                let mut v = parse_list(a, s)?;
                v.sort_unstable();
                v.dedup();
                SetSpec::Multiples(v)
            }
            _ => return Err(err()),
        };
        Ok(spec)
    }

    fn default_cap(&self) -> u64 {
        match self {
            SetSpec::Powers(_) | SetSpec::Squares | SetSpec::Friable(_) | SetSpec::Window(..) | SetSpec::List(_) => {
                GENERATED_CAP
            }
            SetSpec::Explicit { bound, .. } => *bound,
            _ => SIEVE_CAP,
        }
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            SetSpec::Powers(m) => write!(f, "powers:{m}"),
            SetSpec::Squares => write!(f, "squares"),
            SetSpec::Squarefree => write!(f, "squarefree"),
            SetSpec::Friable(y) => write!(f, "friable:{y}"),
            SetSpec::Sifted(y) => write!(f, "sifted:{y}"),
            SetSpec::Window(y, z) => write!(f, "window:{y},{z}"),
            SetSpec::List(v) => write!(f, "list:{}", join(v)),
            SetSpec::Multiples(v) => write!(f, "multiples:{}", join(v)),
            SetSpec::All => write!(f, "all"),
            SetSpec::Explicit { bound, members } => write!(f, "explicit[{} members <= {bound}]", members.len()),
        }
    }
}

fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).any(|s| s.checked_mul(s) == Some(n))
}

/// All products of the given primes that are `≤ x`, ascending.
pub fn products_of_primes(primes: &[u64], x: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    if x == 0 {
        return Vec::new();
    }
    for &p in primes {
        let len = out.len();
        for i in 0..len {
            let mut v = out[i];
            while let Some(w) = v.checked_mul(p) {
                if w > x {
                    break;
                }
                out.push(w);
                v = w;
            }
        }
    }
    out.sort_unstable();
    out
}

impl IntegerSet {
    pub fn new(spec: SetSpec) -> Self {
        let cap = spec.default_cap();
        IntegerSet { spec, enumeration_cap: cap }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(SetSpec::parse(s)?))
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.enumeration_cap = cap;
        self
    }

    /// Ascending explicit set, complete up to `bound`.
    pub fn explicit(mut members: Vec<u64>, bound: u64) -> Self {
        members.sort_unstable();
        members.dedup();
        Self::new(SetSpec::Explicit { members: Arc::new(members), bound })
    }

    pub fn spec_string(&self) -> String {
        self.spec.to_string()
    }

    /// Membership test. Explicit sets answer only below their bound.
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match &self.spec {
            SetSpec::Powers(m) => {
                let mut v = n;
                while v.is_multiple_of(*m) {
                    v /= m;
                }
                v == 1
            }
            SetSpec::Squares => is_perfect_square(n),
            SetSpec::Squarefree => sieve::factor(n).iter().all(|&(_, k)| k == 1),
            SetSpec::Friable(y) => (sieve::largest_prime_factor(n) as f64) <= *y || n == 1,
            SetSpec::Sifted(y) => n == 1 || sieve::smallest_prime_factor(n) as f64 > *y,
            SetSpec::Window(y, z) => sieve::factor(n).iter().all(|&(p, _)| (p as f64) > *y && (p as f64) <= *z),
            SetSpec::List(v) => v.binary_search(&n).is_ok(),
            SetSpec::Multiples(v) => v.iter().any(|&a| n.is_multiple_of(a)),
            SetSpec::All => true,
            SetSpec::Explicit { members, .. } => members.binary_search(&n).is_ok(),
        }
    }

    /// Members `≤ x`, ascending. Fails when `x` exceeds the enumeration cap.
    pub fn enumerate(&self, x: u64) -> Result<Vec<u64>> {
        if x > self.enumeration_cap {
            return Err(Error::CapExceeded { cap: self.enumeration_cap, requested: x });
        }
        Ok(match &self.spec {
            SetSpec::Powers(m) => {
                let mut out = vec![];
                let mut v = 1u64;
                while v <= x {
                    out.push(v);
                    match v.checked_mul(*m) {
                        Some(w) => v = w,
                        None => break,
                    }
                }
                out
            }
            SetSpec::Squares => (1u64..).map(|k| k * k).take_while(|&s| s <= x).collect(),
            SetSpec::Squarefree => {
                let mu = sieve::mobius_table(x as usize);
                (1..=x).filter(|&n| mu[n as usize] != 0).collect()
            }
            SetSpec::Friable(y) => products_of_primes(&sieve::primes_le(*y), x),
            SetSpec::Window(y, z) => {
                let ps: Vec<u64> = sieve::primes_le(*z).into_iter().filter(|&p| p as f64 > *y).collect();
                products_of_primes(&ps, x)
            }
            SetSpec::Sifted(y) => {
                let n = x as usize;
                let mut keep = vec![true; n + 1];
                for p in sieve::primes_le(*y) {
                    let p = p as usize;
                    for m in (p..=n).step_by(p) {
                        keep[m] = false;
                    }
                }
                (1..=x).filter(|&k| keep[k as usize]).collect()
            }
            SetSpec::List(v) => v.iter().copied().filter(|&a| a <= x).collect(),
            SetSpec::Multiples(v) => {
                let n = x as usize;
                let mut hit = vec![false; n + 1];
                for &a in v {
                    let a = a as usize;
                    if a <= n && !hit[a] {
                        for m in (a..=n).step_by(a) {
                            hit[m] = true;
                        }
                    }
                }
                (1..=x).filter(|&k| hit[k as usize]).collect()
            }
            SetSpec::All => (1..=x).collect(),
            SetSpec::Explicit { members, .. } => members.iter().copied().take_while(|&m| m <= x).collect(),
        })
    }

    /// Whether `1 ∈ A` and `a, a' ∈ A, a a' ≤ bound ⇒ a a' ∈ A`, checked on
    /// the enumeration up to `bound`.
    pub fn is_multiplicatively_closed(&self, bound: u64) -> Result<bool> {
        let m = self.enumerate(bound)?;
        if m.first() != Some(&1) {
            return Ok(false);
        }
        for (i, &a) in m.iter().enumerate().skip(1) {
            for &b in &m[i..] {
                match a.checked_mul(b) {
                    Some(ab) if ab <= bound => {
                        if m.binary_search(&ab).is_err() {
                            return Ok(false);
                        }
                    }
                    _ => break,
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(SetSpec::parse("powers:2").unwrap(), SetSpec::Powers(2));
        assert_eq!(SetSpec::parse("squares").unwrap(), SetSpec::Squares);
        assert_eq!(SetSpec::parse("friable:3").unwrap(), SetSpec::Friable(3.0));
        assert_eq!(SetSpec::parse("list:5,2,3").unwrap(), SetSpec::List(vec![2, 3, 5]));
        assert_eq!(SetSpec::parse("multiples:2,3").unwrap(), SetSpec::Multiples(vec![2, 3]));
        assert_eq!(SetSpec::parse("list:").unwrap(), SetSpec::List(vec![]));
        for bad in ["nope", "powers:1", "friable:1", "window:3,2", "list:0", "squares:2", "sifted:x"] {
            assert!(SetSpec::parse(bad).is_err(), "{bad}");
        }
        for s in ["powers:2", "squares", "squarefree", "friable:3", "sifted:2", "list:2,3,5", "multiples:2,3", "all"] {
            assert_eq!(SetSpec::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn enumeration_examples() {
        let s2 = IntegerSet::parse("friable:2").unwrap();
        assert_eq!(s2.enumerate(20).unwrap(), vec![1, 2, 4, 8, 16]);
        let e2 = IntegerSet::parse("sifted:2").unwrap();
        assert_eq!(e2.enumerate(10).unwrap(), vec![1, 3, 5, 7, 9]);
        let w = IntegerSet::parse("window:2,3").unwrap();
        assert_eq!(w.enumerate(10).unwrap(), vec![1, 3, 9]);
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let specs = [
            "powers:3", "squares", "squarefree", "friable:5", "sifted:3", "window:2,7", "list:2,3,10",
            "multiples:4,6", "all",
        ];
        for s in specs {
            let set = IntegerSet::parse(s).unwrap();
            let e = set.enumerate(3000).unwrap();
            let by_pred: Vec<u64> = (1..=3000).filter(|&n| set.contains(n)).collect();
            assert_eq!(e, by_pred, "{s}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s = IntegerSet::parse("squarefree").unwrap().with_cap(100);
        assert!(matches!(s.enumerate(101), Err(Error::CapExceeded { .. })));
        assert!(s.enumerate(100).is_ok());
    }

    #[test]
    fn closure_under_products() {
        assert!(IntegerSet::parse("powers:2").unwrap().is_multiplicatively_closed(1000).unwrap());
        assert!(IntegerSet::parse("friable:3").unwrap().is_multiplicatively_closed(1000).unwrap());
        assert!(!IntegerSet::parse("list:1,2").unwrap().is_multiplicatively_closed(1000).unwrap());
        assert!(!IntegerSet::parse("squarefree").unwrap().is_multiplicatively_closed(100).unwrap());
    }
}
