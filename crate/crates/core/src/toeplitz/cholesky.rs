//! Incremental `LDLᴴ` factorization. The `m`-th pivot `d_m` is
//! `D_m / D_{m-1}`, the squared distance from `e_m` to the span of
//! `e_1, …, e_{m-1}`.

use std::io::{Read, Write};

use serde::Serialize;

use super::kernel::{Kernel, Prepared};
use super::scalar::{Arith, Cx, F64Arith, MpArith, Re, Scalar};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Precision escalations after the requested precision.
pub const MAX_ESCALATIONS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminantSequence {
    /// Matrix indices the sequence runs over (`1..=N` for the plain case).
    pub indices: Vec<u64>,
    /// `ln D_1, …, ln D_N`.
    pub ln_d: Vec<f64>,
    /// `r_n = D_n / D_{n-1}`, `r_1 = D_1`.
    pub r: Vec<f64>,
    pub ln_r: Vec<f64>,
    pub precision_bits: u32,
    /// Smallest `r_n / max_{k≤n} r_k` met.
    pub pivot_floor: f64,
    pub escalations: u32,
}

impl DeterminantSequence {
    /// A sequence from given ratios over `1..=N`.
    pub fn from_ratios(r: Vec<f64>, precision_bits: u32) -> Self {
        let ln_r: Vec<f64> = r.iter().map(|x| x.ln()).collect();
        Self::from_ln_ratios((1..=r.len() as u64).collect(), ln_r, precision_bits)
    }

    fn from_ln_ratios(indices: Vec<u64>, ln_r: Vec<f64>, precision_bits: u32) -> Self {
        let mut ln_d = Vec::with_capacity(ln_r.len());
        let mut acc = 0.0;
        let mut floor = 1.0f64;
        let mut max = f64::NEG_INFINITY;
        for &l in &ln_r {
            acc += l;
            ln_d.push(acc);
            max = max.max(l);
            floor = floor.min((l - max).exp());
        }
        let r = ln_r.iter().map(|l| l.exp()).collect();
        DeterminantSequence { indices, ln_d, r, ln_r, precision_bits, pivot_floor: floor, escalations: 0 }
    }

    pub fn len(&self) -> usize {
        self.ln_r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_r.is_empty()
    }

    /// `D_n`, reconstructed from the log (may underflow to 0).
    pub fn d(&self, n: usize) -> f64 {
        self.ln_d[n - 1].exp()
    }

    /// `D_n^{1/n}`.
    pub fn d_root(&self, n: usize) -> f64 {
        (self.ln_d[n - 1] / n as f64).exp()
    }

    /// Writes `n,ln_D,r,ln_r,precision_bits` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["n", "ln_D", "r", "ln_r", "precision_bits"])?;
        for k in 0..self.len() {
            wtr.write_record([
                self.indices[k].to_string(),
                format!("{:?}", self.ln_d[k]),
                format!("{:?}", self.r[k]),
                format!("{:?}", self.ln_r[k]),
                self.precision_bits.to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Reads what [`write_csv`](Self::write_csv) writes; `#` lines are skipped.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
        let mut indices = Vec::new();
        let mut ln_r = Vec::new();
        let mut bits = 53;
        for rec in rdr.records() {
            let rec = rec?;
            let field = |i: usize| -> Result<&str> {
                rec.get(i).ok_or_else(|| Error::Table(format!("short determinant row: {rec:?}")))
            };
            let bad = |s: &str| Error::Table(format!("bad determinant field `{s}`"));
            indices.push(field(0)?.parse().map_err(|_| bad(field(0).unwrap_or("")))?);
            ln_r.push(field(3)?.parse().map_err(|_| bad(field(3).unwrap_or("")))?);
            bits = field(4)?.parse().map_err(|_| bad(field(4).unwrap_or("")))?;
        }
        Ok(Self::from_ln_ratios(indices, ln_r, bits))
    }
}

enum Stop {
    /// Scaled pivot below `2^{-bits/2}`.
    Small,
    NonPositive(usize),
}

/// Pivots `d_1, …` of the matrix `(c(i/j))_{i,j ∈ idx}`, as `ln d_m`.
fn pivots<A: Arith, S: Scalar<A>>(a: &A, prep: &Prepared<A>, idx: &[u64], accept_small: bool) -> std::result::Result<Vec<f64>, Stop> {
    let n = idx.len();
    let threshold = 2f64.powf(-(a.bits() as f64) / 2.0);
    let mut l_rows: Vec<Vec<S>> = Vec::with_capacity(n);
    let mut d: Vec<A::R> = Vec::with_capacity(n);
    let mut ln_d = Vec::with_capacity(n);
    let mut dmax = 0.0f64;
    for m in 0..n {
        let mut u: Vec<S> = Vec::with_capacity(m);
        let mut l: Vec<S> = Vec::with_capacity(m + 1);
        for j in 0..m {
            let (re, im) = prep.entry(a, idx[m], idx[j]);
            let mut w = S::from_parts(a, re, im);
            let lj = &l_rows[j];
            for k in 0..j {
                w = w.sub(&u[k].mul_conj(&lj[k], a), a);
            }
            l.push(w.div_real(&d[j], a));
            u.push(w);
        }
        let (re, im) = prep.entry(a, idx[m], idx[m]);
        let mut w = S::from_parts(a, re, im);
        for k in 0..m {
            w = w.sub(&u[k].mul_conj(&l[k], a), a);
        }
        let dm = w.re().clone();
        if !a.is_positive(&dm) {
            return Err(Stop::NonPositive(m + 1));
        }
        let dm_f = a.to_f64(&dm);
        dmax = dmax.max(dm_f);
        if !accept_small && dm_f < threshold * dmax {
            return Err(Stop::Small);
        }
        ln_d.push(a.ln_f64(&dm));
        d.push(dm);
        l_rows.push(l);
    }
    Ok(ln_d)
}

fn run_at<A: Arith>(a: &A, kernel: &Kernel, idx: &[u64], accept_small: bool) -> Result<std::result::Result<Vec<f64>, Stop>> {
    let prep = kernel.prepare(a, idx)?;
    Ok(if kernel.is_real() {
        pivots::<A, Re<A::R>>(a, &prep, idx, accept_small)
    } else {
        pivots::<A, Cx<A::R>>(a, &prep, idx, accept_small)
    })
}

/// Determinant sequence of the leading sections of `(c(i/j))_{i,j ∈ idx}`.
///
/// Starts at `bits`; a scaled pivot below `2^{-bits/2}` doubles the
/// precision and restarts, at most [`MAX_ESCALATIONS`] times. A
/// non-positive pivot at the final precision is reported with its index.
pub fn cholesky_on_indices(kernel: &Kernel, idx: &[u64], bits: u32) -> Result<DeterminantSequence> {
    if bits < 53 {
        return Err(Error::Toeplitz(format!("precision must be at least 53 bits, got {bits}")));
    }
    if idx.is_empty() || idx.contains(&0) {
        return Err(Error::Toeplitz("index sequence must be nonempty and positive".into()));
    }
    let mut p = bits;
    for esc in 0..=MAX_ESCALATIONS {
        let last = esc == MAX_ESCALATIONS;
        let out = if p == 53 { run_at(&F64Arith, kernel, idx, last)? } else { run_at(&MpArith::new(p), kernel, idx, last)? };
        match out {
            Ok(ln_r) => {
                let mut seq = DeterminantSequence::from_ln_ratios(idx.to_vec(), ln_r, p);
                seq.escalations = esc;
                return Ok(seq);
            }
            Err(Stop::NonPositive(m)) if last => return Err(Error::NotPositiveDefinite { n: m, bits: p }),
            Err(_) => p *= 2,
        }
    }
    unreachable!("the last rung accepts small pivots")
}

/// `D_1, …, D_N` for `(c(i/j))_{1≤i,j≤N}`.
pub fn incremental_cholesky_dets(kernel: &Kernel, n: usize, bits: u32) -> Result<DeterminantSequence> {
    let idx: Vec<u64> = (1..=n as u64).collect();
    cholesky_on_indices(kernel, &idx, bits)
}

/// Additive Toeplitz determinants `Δ_n = det(c₀(i-j))`.
pub fn additive_toeplitz_dets(c0: Vec<crate::rational::CRational>, n: usize, bits: u32) -> Result<DeterminantSequence> {
    incremental_cholesky_dets(&Kernel::additive(c0), n, bits)
}

/// Independent kernels, one sequence each, in input order.
pub fn det_sequences(kernels: &[Kernel], n: usize, bits: u32, exec: Exec) -> Vec<Result<DeterminantSequence>> {
    exec.map(kernels, |k| incremental_cholesky_dets(k, n, bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toeplitz::kernel::{parse_kernel, Sigma};

    #[test]
    fn recip_small_values() {
        let k = Kernel::hilberdink(Sigma::recip());
        let s = incremental_cholesky_dets(&k, 4, 53).unwrap();
        let want = [1.0, 0.75, 2.0 / 3.0, 0.5];
        for (n, w) in want.iter().enumerate() {
            assert!((s.d(n + 1) - w).abs() < 1e-14, "D_{} = {}", n + 1, s.d(n + 1));
        }
        assert!((s.r[3] - 0.75).abs() < 1e-14);
    }

    #[test]
    fn identity_is_flat() {
        let s = incremental_cholesky_dets(&Kernel::identity(), 50, 53).unwrap();
        assert!(s.ln_d.iter().all(|&x| x == 0.0));
        assert!(s.r.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn additive_two_by_two() {
        let k = parse_kernel("additive:coeffs=2,0.5").unwrap();
        let s = incremental_cholesky_dets(&k, 2, 53).unwrap();
        assert!((s.d(1) - 2.0).abs() < 1e-15);
        assert!((s.d(2) - 3.75).abs() < 1e-14);
    }

    #[test]
    fn precisions_agree() {
        let k = parse_kernel("hilberdink:sigma=cm,s=0.7").unwrap();
        let a = incremental_cholesky_dets(&k, 40, 53).unwrap();
        let b = incremental_cholesky_dets(&k, 40, 128).unwrap();
        assert_eq!(b.precision_bits, 128);
        for (x, y) in a.ln_r.iter().zip(&b.ln_r) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_kernel_runs() {
        let k = parse_kernel("additive:coeffs=3,1/2+1/2i,1/4i").unwrap();
        let s = incremental_cholesky_dets(&k, 20, 53).unwrap();
        assert!(s.r.iter().all(|&x| x > 0.0));
        // 2x2: 9 - |1/2+1/2i|^2
        assert!((s.d(2) - 8.5).abs() < 1e-13);
    }

    #[test]
    fn not_positive_definite_names_index() {
        // [[1, 2], [2, 1]] has determinant -3
        let k = parse_kernel("additive:coeffs=1,2").unwrap();
        match incremental_cholesky_dets(&k, 3, 53) {
            Err(Error::NotPositiveDefinite { n: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn escalates_on_tiny_pivots() {
        // KMS with q close to 1: pivots 1 - q^2 ≈ 2e-12 sit below 2^-26.5
        let q = crate::rational::parse_rational("0.999999999999").unwrap();
        let c = (0..6).map(|k| crate::rational::CRational::real(num_traits::pow(q.clone(), k))).collect();
        let k = Kernel::additive(c);
        let s = incremental_cholesky_dets(&k, 6, 53).unwrap();
        assert!(s.escalations >= 1 && s.precision_bits >= 106);
        let q: f64 = 0.999999999999;
        assert!((s.ln_r[3] - (1.0 - q * q).ln()).abs() < 1e-3);
    }

    #[test]
    fn csv_round_trip() {
        let s = incremental_cholesky_dets(&Kernel::hilberdink(Sigma::recip()), 30, 53).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let back = DeterminantSequence::read_csv(&buf[..]).unwrap();
        assert_eq!(back.ln_r, s.ln_r);
        for (x, y) in back.ln_d.iter().zip(&s.ln_d) {
            assert_eq!(x, y);
        }
    }
}
