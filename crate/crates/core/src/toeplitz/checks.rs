//! Checks on determinant sequences: ratio monotonicity along divisibility,
//! the logarithmic mean of `(1/k) ln r_k`, and the direct-factor
//! factorization of `D_n`.

use serde::Serialize;

use super::cholesky::{cholesky_on_indices, incremental_cholesky_dets, DeterminantSequence};
use super::kernel::Kernel;
use crate::arith::{is_mult_monotone, Direction, MonotoneVerdict, TabulatedFunction};
use crate::dfactor::{complement_set, DirectFactorPair};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::means::TracePoint;

fn require_plain(seq: &DeterminantSequence) -> Result<()> {
    if seq.indices.iter().zip(1..).any(|(&i, k)| i != k) {
        return Err(Error::Toeplitz("expected a sequence over 1..=N".into()));
    }
    Ok(())
}

/// `k | n ⇒ r_n ≤ r_k`, checked as multiplicative increase of `-ln r_n`
/// with the float tolerance of the sequence's precision.
pub fn check_ratio_mult_monotone(seq: &DeterminantSequence, exec: Exec) -> Result<MonotoneVerdict> {
    require_plain(seq)?;
    let f = TabulatedFunction::float(seq.ln_r.iter().map(|x| -x).collect(), seq.precision_bits, "-ln r");
    Ok(is_mult_monotone(&f, Direction::Increasing, exec))
}

/// Allowed slack in the `ln c(1)` bound.
pub const PROP29_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct Prop29Report {
    pub n: usize,
    pub ln_c1: f64,
    /// `(ln M)^{-1} Σ_{k≤M} (1/k) ln r_k` at `M = 2, 4, 8, …, N`.
    pub logmean_trace: Vec<TracePoint>,
    /// The log-mean at `M = N`: the finite-`N` proxy for `α`.
    pub alpha_proxy: f64,
    pub exp_alpha_proxy: f64,
    /// `D_M^{1/M}` at the trace points.
    pub d_root_trace: Vec<TracePoint>,
    /// `max D_M^{1/M}` over `M ∈ (N/10, N]`: the finite-`N` proxy for the
    /// `limsup`.
    pub d_root_decade_max: f64,
    /// `ln c(1)`, or `ln c(1) · H_N / ln N` when `c(1) > 1` (the finite-`N`
    /// log-mean is only bounded by the latter).
    pub bound: f64,
    pub bound_holds: bool,
}

fn trace_points(n: usize) -> Vec<usize> {
    let mut pts: Vec<usize> = std::iter::successors(Some(2usize), |m| m.checked_mul(2)).take_while(|&m| m <= n).collect();
    if pts.last() != Some(&n) {
        pts.push(n);
    }
    pts
}

/// Finite-`N` diagnostics for `(1/k) ln r_k`; `ln c(1)` is read off `r_1`.
pub fn prop29_summary(seq: &DeterminantSequence) -> Result<Prop29Report> {
    require_plain(seq)?;
    let n = seq.len();
    if n < 2 {
        return Err(Error::Toeplitz("prop29 needs N >= 2".into()));
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut h = Vec::with_capacity(n + 1);
    h.push(0.0);
    for (k, l) in seq.ln_r.iter().enumerate() {
        prefix.push(prefix[k] + l / (k + 1) as f64);
        h.push(h[k] + 1.0 / (k + 1) as f64);
    }
    let logmean = |m: usize| prefix[m] / (m as f64).ln();
    let pts = trace_points(n);
    let alpha = logmean(n);
    let ln_c1 = seq.ln_r[0];
    let bound = if ln_c1 > 0.0 { ln_c1 * (h[n] / (n as f64).ln()).max(1.0) } else { ln_c1 };
    let bound_holds = pts.iter().all(|&m| {
        let b = if ln_c1 > 0.0 { ln_c1 * (h[m] / (m as f64).ln()).max(1.0) } else { ln_c1 };
        logmean(m) <= b + PROP29_TOLERANCE
    });
    Ok(Prop29Report {
        n,
        ln_c1,
        logmean_trace: pts.iter().map(|&m| TracePoint { x: m as f64, value: logmean(m) }).collect(),
        alpha_proxy: alpha,
        exp_alpha_proxy: alpha.exp(),
        d_root_trace: pts.iter().map(|&m| TracePoint { x: m as f64, value: seq.d_root(m) }).collect(),
        d_root_decade_max: (n / 10 + 1..=n).map(|m| seq.d_root(m)).fold(f64::NEG_INFINITY, f64::max),
        bound,
        bound_holds,
    })
}

/// Tolerance of the factorization identities.
pub const PROP30_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct Prop30Report {
    pub n: usize,
    pub a: String,
    pub b_count: usize,
    /// `max |c(i/j)|` over pairs whose `B`-parts differ.
    pub orthogonality_max: f64,
    /// `max_n |ln D_n - Σ_{b∈B, b≤n} ln Gram(e_a : a ∈ A, a ≤ n/b)|`.
    pub block_identity_max: f64,
    pub block_identity_worst_n: usize,
    /// `max_n |ln r_n - ln r_α|`, `n = αβ`.
    pub ratio_identity_max: f64,
    pub ratio_identity_worst_n: usize,
    pub tolerance: f64,
    pub holds: bool,
}

/// Checks the factorization of `D_n` for a direct-factor kernel on `A`.
pub fn prop30_factorization_check(kernel: &Kernel, n: usize, bits: u32) -> Result<Prop30Report> {
    let Kernel::DirectFactor { a, .. } = kernel else {
        return Err(Error::Toeplitz("the factorization check needs a dfactor kernel".into()));
    };
    let nn = n as u64;
    if !a.is_multiplicatively_closed(nn)? {
        return Err(Error::Toeplitz(format!("{} is not closed under multiplication up to {n}", a.spec_string())));
    }
    let b = complement_set(a, nn)?;
    let pair = DirectFactorPair::new(a.clone(), b, nn)?;
    let am = pair.a.enumerate(nn)?;
    let bm = pair.b.enumerate(nn)?;

    // n = α β
    let mut parts = vec![(0u64, 0u64); n + 1];
    for &beta in &bm {
        for &alpha in &am {
            match alpha.checked_mul(beta) {
                Some(m) if m <= nn => parts[m as usize] = (alpha, beta),
                _ => break,
            }
        }
    }

    let mut orth = 0.0f64;
    for i in 1..=nn {
        for j in 1..i {
            if parts[i as usize].1 != parts[j as usize].1 {
                let (re, im) = match kernel.exact(i, j)? {
                    Some(v) => v.to_f64_pair(),
                    None => (f64::NAN, f64::NAN),
                };
                orth = orth.max(re.hypot(im));
            }
        }
    }

    let full = incremental_cholesky_dets(kernel, n, bits)?;
    let gram = cholesky_on_indices(kernel, &am, bits)?;
    // ln Gram of the first j elements of A
    let mut ln_gram = vec![0.0];
    ln_gram.extend(gram.ln_d.iter().copied());

    let (mut block, mut block_n) = (0.0f64, 1);
    let (mut ratio, mut ratio_n) = (0.0f64, 1);
    for m in 1..=n {
        let mu = m as u64;
        let s: f64 = bm
            .iter()
            .take_while(|&&beta| beta <= mu)
            .map(|&beta| ln_gram[am.partition_point(|&x| x <= mu / beta)])
            .sum();
        let e = (full.ln_d[m - 1] - s).abs();
        if e > block {
            block = e;
            block_n = m;
        }
        let alpha = parts[m].0 as usize;
        let e = (full.ln_r[m - 1] - full.ln_r[alpha - 1]).abs();
        if e > ratio {
            ratio = e;
            ratio_n = m;
        }
    }
    let holds = orth <= PROP30_TOLERANCE && block <= PROP30_TOLERANCE && ratio <= PROP30_TOLERANCE;
    Ok(Prop30Report {
        n,
        a: pair.a.spec_string(),
        b_count: bm.len(),
        orthogonality_max: orth,
        block_identity_max: block,
        block_identity_worst_n: block_n,
        ratio_identity_max: ratio,
        ratio_identity_worst_n: ratio_n,
        tolerance: PROP30_TOLERANCE,
        holds,
    })
}
