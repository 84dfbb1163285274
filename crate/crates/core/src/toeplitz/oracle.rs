//! Exact dense determinants over complex rationals, for small `n`.

use super::kernel::Kernel;
use crate::error::{Error, Result};
use crate::rational::CRational;

/// Largest size the dense oracle accepts.
pub const ORACLE_MAX: usize = 16;

/// `det M` by Gaussian elimination with row exchanges.
pub fn exact_det(mut m: Vec<Vec<CRational>>) -> CRational {
    let n = m.len();
    let mut det = CRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return CRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -&det;
        }
        let inv = m[col][col].inv().expect("nonzero pivot");
        det = &det * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

/// The matrix `(c(i/j))_{1≤i,j≤n}`, or `None` when the kernel is irrational.
pub fn exact_matrix(kernel: &Kernel, n: usize) -> Result<Option<Vec<Vec<CRational>>>> {
    let mut m = Vec::with_capacity(n);
    for i in 1..=n as u64 {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n as u64 {
            match kernel.exact(i, j)? {
                Some(v) => row.push(v),
                None => return Ok(None),
            }
        }
        m.push(row);
    }
    Ok(Some(m))
}

/// `D_1, …, D_n`, each leading minor computed separately.
pub fn exact_minors(kernel: &Kernel, n: usize) -> Result<Option<Vec<CRational>>> {
    if n > ORACLE_MAX {
        return Err(Error::Toeplitz(format!("dense oracle is limited to n <= {ORACLE_MAX}, got {n}")));
    }
    let Some(m) = exact_matrix(kernel, n)? else {
        return Ok(None);
    };
    Ok(Some(
        (1..=n).map(|k| exact_det(m[..k].iter().map(|row| row[..k].to_vec()).collect())).collect(),
    ))
}

/// Exact pivots `D_n / D_{n-1}`; `None` if irrational or a minor vanishes.
pub fn exact_ratios(kernel: &Kernel, n: usize) -> Result<Option<Vec<CRational>>> {
    let Some(d) = exact_minors(kernel, n)? else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(n);
    let mut prev = CRational::one();
    for x in d {
        let Some(inv) = prev.inv() else {
            return Ok(None);
        };
        out.push(&x * &inv);
        prev = x;
    }
    Ok(Some(out))
}
