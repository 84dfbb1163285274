//! The per-prime product formula for Hilberdink kernels and the limit
//! `L = ∏_p (1 - |σ(p)|²)^{1/p}` in the completely multiplicative case.
//!
//! `Δ_k(p)` is the determinant of the `k × k` section of the matrix on the
//! indices `1, p, p², …`, whose entries `c(p^{i-j})` form an additive
//! Toeplitz matrix. With `ρ_k = Δ_k / Δ_{k-1}`,
//!
//! ```text
//! D_n = ∏_p ∏_{k≥1} (ρ_{k+1}(p) / ρ_k(p))^{⌊n/p^k⌋}.
//! ```

use serde::Serialize;

use super::cholesky::cholesky_on_indices;
use super::kernel::{Kernel, Sigma};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::interval::{ser_extended, Interval};
use crate::sieve;

/// `ln ρ_1(p), …, ln ρ_{levels}(p)`.
pub fn prime_levels(sigma: &Sigma, p: u64, levels: usize, bits: u32) -> Result<Vec<f64>> {
    let mut idx = Vec::with_capacity(levels);
    let mut q = 1u64;
    for _ in 0..levels {
        idx.push(q);
        q = q.saturating_mul(p);
    }
    let kernel = Kernel::hilberdink(sigma.clone());
    match cholesky_on_indices(&kernel, &idx, bits) {
        Ok(seq) => Ok(seq.ln_r),
        Err(Error::NotPositiveDefinite { n, .. }) => Err(Error::PrimeNotPositive { p, k: n }),
        Err(e) => Err(e),
    }
}

/// Largest `K` with `p^K ≤ n`.
fn max_level(p: u64, n: u64) -> usize {
    let mut k = 0;
    let mut q = p;
    while q <= n {
        k += 1;
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    k
}

struct Levels {
    p: u64,
    ln_rho: Vec<f64>,
}

fn all_levels(sigma: &Sigma, n: u64, bits: u32, exec: Exec) -> Result<Vec<Levels>> {
    let primes = sieve::primes_up_to(n);
    exec.try_map(&primes, |&p| {
        let levels = max_level(p, n) + 1;
        Ok(Levels { p, ln_rho: prime_levels(sigma, p, levels, bits)? })
    })
}

fn ln_d_from_levels(levels: &[Levels], n: u64) -> f64 {
    let mut acc = 0.0;
    for lv in levels.iter().take_while(|lv| lv.p <= n) {
        let mut q = lv.p;
        let mut k = 1;
        while q <= n {
            acc += (n / q) as f64 * (lv.ln_rho[k] - lv.ln_rho[k - 1]);
            k += 1;
            q = match q.checked_mul(lv.p) {
                Some(x) => x,
                None => break,
            };
        }
    }
    acc
}

/// `ln D_n` from the product formula.
pub fn hilberdink_product_formula(sigma: &Sigma, n: u64, bits: u32, exec: Exec) -> Result<f64> {
    if n == 0 {
        return Err(Error::Toeplitz("n must be positive".into()));
    }
    Ok(ln_d_from_levels(&all_levels(sigma, n, bits, exec)?, n))
}

/// `ln D_1, …, ln D_N` from the product formula, sharing the per-prime work.
pub fn product_formula_sequence(sigma: &Sigma, n: u64, bits: u32, exec: Exec) -> Result<Vec<f64>> {
    let levels = all_levels(sigma, n, bits, exec)?;
    Ok((1..=n).map(|m| ln_d_from_levels(&levels, m)).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct CmLimit {
    /// Primes up to this cutoff are summed exactly.
    pub prime_cutoff: u64,
    /// `Σ_{p≤P} ln(1 - |σ(p)|²) / p`.
    pub ln_truncated: f64,
    /// Bound on `|Σ_{p>P} ln(1 - |σ(p)|²) / p|`; `inf` when none is known.
    #[serde(serialize_with = "ser_extended")]
    pub tail_bound: f64,
    pub ln_interval: Interval,
    pub interval: Interval,
    /// No decay envelope was available, so the lower end is not controlled.
    pub heuristic_tail: bool,
    /// `|σ(p)|` is bounded away from 0, so `Σ 1/p` diverges and `L = 0`;
    /// the finite interval is evidence only.
    pub asymptotic_zero: bool,
}

/// Encloses `L = ∏_p (1 - |σ(p)|²)^{1/p}` for completely multiplicative `σ`.
///
/// With an envelope `|σ(p)| ≤ C p^{-θ}`, `θ > 0`, and `x₀ = C² P^{-2θ} < 1`,
/// the tail is bounded by `x₀ / (2θ (1 - x₀))`. The envelope defaults to the
/// one implied by the `σ` family.
pub fn cm_limit(sigma: &Sigma, cutoff: u64, envelope: Option<(f64, f64)>) -> Result<CmLimit> {
    if !sigma.is_completely_multiplicative() {
        return Err(Error::Toeplitz("the limit formula needs a completely multiplicative sigma".into()));
    }
    let cutoff = match sigma.prime_limit() {
        Some(l) => cutoff.min(l),
        None => cutoff,
    };
    let primes = sieve::primes_up_to(cutoff);
    let mut sum = 0.0f64;
    let mut abs = 0.0f64;
    for &p in primes.iter().rev() {
        let s = sigma.abs_prime(p)?;
        let x = s * s;
        if x >= 1.0 {
            return Err(Error::Toeplitz(format!("|sigma({p})| = {s} is not below 1")));
        }
        let t = (-x).ln_1p() / p as f64;
        sum += t;
        abs += t.abs();
    }
    let err = (primes.len() as f64 + 2.0) * f64::EPSILON * abs;
    let envelope = envelope.or_else(|| sigma.envelope());
    let (tail_bound, heuristic, zero) = match envelope {
        Some((0.0, _)) => (0.0, false, false),
        Some((c, theta)) if theta > 0.0 => {
            let x0 = c * c * (cutoff as f64).powf(-2.0 * theta);
            if x0 < 1.0 {
                (x0 / (2.0 * theta) / (1.0 - x0), false, false)
            } else {
                (f64::INFINITY, false, false)
            }
        }
        Some(_) => (f64::INFINITY, false, true),
        None => (f64::INFINITY, true, false),
    };
    let ln_interval = Interval::new((sum - err - tail_bound).next_down(), (sum + err).next_up());
    let interval = ln_interval.exp();
    Ok(CmLimit {
        prime_cutoff: cutoff,
        ln_truncated: sum,
        tail_bound,
        ln_interval,
        interval,
        heuristic_tail: heuristic,
        asymptotic_zero: zero,
    })
}
