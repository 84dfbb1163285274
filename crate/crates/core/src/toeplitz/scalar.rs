//! Working-precision arithmetic: `f64` at 53 bits, `astro-float` above.

use std::fmt::Debug;
use std::sync::Mutex;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::rational::CRational;

const RM: RoundingMode = RoundingMode::ToEven;

/// A real field at fixed precision. Operations take `&self` so that
/// multi-precision contexts can carry the precision and constant cache.
pub trait Arith: Send + Sync {
    type R: Clone + Send + Sync + Debug;

    fn bits(&self) -> u32;
    fn zero(&self) -> Self::R;
    fn from_f64(&self, x: f64) -> Self::R;
    fn from_rational(&self, q: &BigRational) -> Self::R;
    fn add(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn sub(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn mul(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn div(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn neg(&self, a: &Self::R) -> Self::R;
    /// `n^{-s}`.
    fn pow_neg(&self, n: u64, s: &BigRational) -> Self::R;
    fn to_f64(&self, a: &Self::R) -> f64;
    /// `ln a` rounded to `f64`, computed at working precision.
    fn ln_f64(&self, a: &Self::R) -> f64;
    fn is_positive(&self, a: &Self::R) -> bool;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct F64Arith;

impl Arith for F64Arith {
    type R = f64;

    fn bits(&self) -> u32 {
        53
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn from_f64(&self, x: f64) -> f64 {
        x
    }
    fn from_rational(&self, q: &BigRational) -> f64 {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn add(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn sub(&self, a: &f64, b: &f64) -> f64 {
        a - b
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn div(&self, a: &f64, b: &f64) -> f64 {
        a / b
    }
    fn neg(&self, a: &f64) -> f64 {
        -a
    }
    fn pow_neg(&self, n: u64, s: &BigRational) -> f64 {
        (n as f64).powf(-s.to_f64().unwrap_or(f64::NAN))
    }
    fn to_f64(&self, a: &f64) -> f64 {
        *a
    }
    fn ln_f64(&self, a: &f64) -> f64 {
        a.ln()
    }
    fn is_positive(&self, a: &f64) -> bool {
        *a > 0.0
    }
}

pub struct MpArith {
    bits: u32,
    consts: Mutex<Consts>,
}

impl MpArith {
    pub fn new(bits: u32) -> Self {
        MpArith { bits, consts: Mutex::new(Consts::new().expect("astro-float constant cache")) }
    }

    fn p(&self) -> usize {
        self.bits as usize
    }

    fn from_bigint(&self, n: &BigInt) -> BigFloat {
        match n.to_i64() {
            Some(v) => BigFloat::from_i64(v, self.p()),
            None => {
                let mut cc = self.consts.lock().expect("consts lock");
                BigFloat::parse(&n.to_string(), Radix::Dec, self.p(), RM, &mut cc)
            }
        }
    }
}

impl Debug for MpArith {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MpArith({})", self.bits)
    }
}

/// Nearest-ish `f64` from the top two mantissa words.
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let k = words.len();
    if k == 0 || words[k - 1] == 0 {
        return 0.0;
    }
    let top = words[k - 1] as f64;
    let next = if k >= 2 { words[k - 2] as f64 } else { 0.0 };
    let frac = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
    let v = scale2(frac, e as i64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn scale2(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl Arith for MpArith {
    type R = BigFloat;

    fn bits(&self) -> u32 {
        self.bits
    }
    fn zero(&self) -> BigFloat {
        BigFloat::from_f64(0.0, self.p())
    }
    fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p())
    }
    fn from_rational(&self, q: &BigRational) -> BigFloat {
        self.from_bigint(q.numer()).div(&self.from_bigint(q.denom()), self.p(), RM)
    }
    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p(), RM)
    }
    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p(), RM)
    }
    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p(), RM)
    }
    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p(), RM)
    }
    fn neg(&self, a: &BigFloat) -> BigFloat {
        a.neg()
    }
    fn pow_neg(&self, n: u64, s: &BigRational) -> BigFloat {
        if n == 1 {
            return BigFloat::from_f64(1.0, self.p());
        }
        let mut cc = self.consts.lock().expect("consts lock");
        let ln_n = BigFloat::from_u64(n, self.p()).ln(self.p(), RM, &mut cc);
        drop(cc);
        let e = self.mul(&ln_n, &self.from_rational(s)).neg();
        let mut cc = self.consts.lock().expect("consts lock");
        e.exp(self.p(), RM, &mut cc)
    }
    fn to_f64(&self, a: &BigFloat) -> f64 {
        bigfloat_to_f64(a)
    }
    fn ln_f64(&self, a: &BigFloat) -> f64 {
        let mut cc = self.consts.lock().expect("consts lock");
        bigfloat_to_f64(&a.ln(self.p(), RM, &mut cc))
    }
    fn is_positive(&self, a: &BigFloat) -> bool {
        a.is_positive() && !a.is_zero()
    }
}

/// Matrix element over an [`Arith`]: real, or a complex pair.
pub trait Scalar<A: Arith>: Clone + Send + Sync {
    fn zero(a: &A) -> Self;
    fn from_parts(a: &A, re: A::R, im: A::R) -> Self;
    fn add(&self, o: &Self, a: &A) -> Self;
    fn sub(&self, o: &Self, a: &A) -> Self;
    /// `self · conj(o)`.
    fn mul_conj(&self, o: &Self, a: &A) -> Self;
    fn mul(&self, o: &Self, a: &A) -> Self;
    fn div_real(&self, d: &A::R, a: &A) -> Self;
    fn re(&self) -> &A::R;
}

#[derive(Debug, Clone)]
pub struct Re<T>(pub T);

#[derive(Debug, Clone)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

impl<A: Arith> Scalar<A> for Re<A::R> {
    fn zero(a: &A) -> Self {
        Re(a.zero())
    }
    fn from_parts(_: &A, re: A::R, _im: A::R) -> Self {
        Re(re)
    }
    fn add(&self, o: &Self, a: &A) -> Self {
        Re(a.add(&self.0, &o.0))
    }
    fn sub(&self, o: &Self, a: &A) -> Self {
        Re(a.sub(&self.0, &o.0))
    }
    fn mul_conj(&self, o: &Self, a: &A) -> Self {
        Re(a.mul(&self.0, &o.0))
    }
    fn mul(&self, o: &Self, a: &A) -> Self {
        Re(a.mul(&self.0, &o.0))
    }
    fn div_real(&self, d: &A::R, a: &A) -> Self {
        Re(a.div(&self.0, d))
    }
    fn re(&self) -> &A::R {
        &self.0
    }
}

impl<A: Arith> Scalar<A> for Cx<A::R> {
    fn zero(a: &A) -> Self {
        Cx { re: a.zero(), im: a.zero() }
    }
    fn from_parts(_: &A, re: A::R, im: A::R) -> Self {
        Cx { re, im }
    }
    fn add(&self, o: &Self, a: &A) -> Self {
        Cx { re: a.add(&self.re, &o.re), im: a.add(&self.im, &o.im) }
    }
    fn sub(&self, o: &Self, a: &A) -> Self {
        Cx { re: a.sub(&self.re, &o.re), im: a.sub(&self.im, &o.im) }
    }
    fn mul_conj(&self, o: &Self, a: &A) -> Self {
        let re = a.add(&a.mul(&self.re, &o.re), &a.mul(&self.im, &o.im));
        let im = a.sub(&a.mul(&self.im, &o.re), &a.mul(&self.re, &o.im));
        Cx { re, im }
    }
    fn mul(&self, o: &Self, a: &A) -> Self {
        let re = a.sub(&a.mul(&self.re, &o.re), &a.mul(&self.im, &o.im));
        let im = a.add(&a.mul(&self.im, &o.re), &a.mul(&self.re, &o.im));
        Cx { re, im }
    }
    fn div_real(&self, d: &A::R, a: &A) -> Self {
        Cx { re: a.div(&self.re, d), im: a.div(&self.im, d) }
    }
    fn re(&self) -> &A::R {
        &self.re
    }
}

/// A complex value at working precision, as `(re, im)`.
pub type Pair<A> = (<A as Arith>::R, <A as Arith>::R);

pub fn pair_from_crational<A: Arith>(a: &A, c: &CRational) -> Pair<A> {
    (a.from_rational(&c.re), a.from_rational(&c.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigfloat_conversion() {
        let m = MpArith::new(128);
        for x in [1.0, 0.75, 3.0, -2.5e-10, 1e-300, 123456.789] {
            assert_eq!(m.to_f64(&m.from_f64(x)), x);
        }
        let third = m.from_rational(&BigRational::new(1.into(), 3.into()));
        assert!((m.to_f64(&third) - 1.0 / 3.0).abs() < 1e-17);
        let big = BigRational::new(BigInt::from(10).pow(30), BigInt::from(7));
        assert!((m.to_f64(&m.from_rational(&big)) / (1e30 / 7.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn backends_agree() {
        let m = MpArith::new(200);
        let s = BigRational::new(7.into(), 10.into());
        for n in [1u64, 2, 17, 1000] {
            let a = m.to_f64(&m.pow_neg(n, &s));
            assert!((a - F64Arith.pow_neg(n, &s)).abs() < 1e-15, "{n}");
        }
        assert!((m.ln_f64(&m.from_f64(2.0)) - 2f64.ln()).abs() < 1e-16);
    }

    #[test]
    fn complex_products() {
        let a = F64Arith;
        let x = Cx { re: 1.0, im: 2.0 };
        let y = Cx { re: 3.0, im: -1.0 };
        let p = Scalar::<F64Arith>::mul_conj(&x, &y, &a);
        // (1+2i)(3+i) = 1 + 7i
        assert_eq!((p.re, p.im), (1.0, 7.0));
        let q = Scalar::<F64Arith>::mul(&x, &y, &a);
        assert_eq!((q.re, q.im), (5.0, 5.0));
    }
}
