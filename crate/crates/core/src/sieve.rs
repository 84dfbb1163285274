//! Sieves over 1..=n: primes, smallest prime factors, Möbius and ω.

use crate::error::{Error, Result};

/// Primes up to and including `n`, by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes `p` with `p <= y` for real `y`.
pub fn primes_le(y: f64) -> Vec<u64> {
    if y < 2.0 {
        return Vec::new();
    }
    primes_up_to(y.floor() as u64)
}

/// Smallest-prime-factor table, `spf[0] = spf[1] = 0`.
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Factorization `[(p, k)]` of `n` using an spf table covering `n`.
pub fn factor_with(spf: &[u32], mut n: usize) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n] as usize;
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        out.push((p as u64, k));
    }
    out
}

/// Factorization of a single integer by trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// μ(n) for a single `n`.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::NonPositive(0));
    }
    let f = factor(n);
    if f.iter().any(|&(_, k)| k > 1) {
        Ok(0)
    } else if f.len().is_multiple_of(2) {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// μ(1..=n); index 0 is unused and set to 0.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    mu[0] = 0;
    let mut is_comp = vec![false; n + 1];
    for p in 2..=n {
        if is_comp[p] {
            continue;
        }
        let mut j = p;
        while j <= n {
            if j > p {
                is_comp[j] = true;
            }
            mu[j] = -mu[j];
            j += p;
        }
        if let Some(sq) = p.checked_mul(p) {
            let mut j = sq;
            while j <= n {
                mu[j] = 0;
                j += sq;
            }
        }
    }
    mu
}

/// ω(1..=n), number of distinct prime divisors; index 0 unused.
pub fn omega_table(n: usize) -> Vec<u32> {
    let mut w = vec![0u32; n + 1];
    for p in 2..=n {
        if w[p] == 0 {
            let mut j = p;
            while j <= n {
                w[j] += 1;
                j += p;
            }
        }
    }
    w
}

/// Largest prime factor of `n` (1 for `n = 1`).
pub fn largest_prime_factor(n: u64) -> u64 {
    factor(n).last().map(|&(p, _)| p).unwrap_or(1)
}

/// Smallest prime factor of `n` (`u64::MAX` for `n = 1`).
pub fn smallest_prime_factor(n: u64) -> u64 {
    factor(n).first().map(|&(p, _)| p).unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn table_matches_single() {
        let t = mobius_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(t[n as usize], mobius(n).unwrap(), "n={n}");
        }
        let w = omega_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(w[n as usize] as usize, factor(n).len());
        }
    }

    #[test]
    fn prime_counts() {
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
        assert_eq!(primes_le(10.5), vec![2, 3, 5, 7]);
        assert!(primes_le(1.5).is_empty());
    }

    #[test]
    fn spf_factorization() {
        let spf = spf_table(1000);
        for n in 2..=1000 {
            assert_eq!(factor_with(&spf, n), factor(n as u64));
        }
    }
}
