//! Closed real intervals with outward rounding. `hi` may be `+inf`.

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "ser_extended")]
    pub lo: f64,
    #[serde(serialize_with = "ser_extended")]
    pub hi: f64,
}

/// Serializes finite values as numbers and non-finite ones as the strings
/// `"inf"`, `"-inf"`, `"nan"` (JSON has no literal for them).
pub fn ser_extended<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

fn down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

fn up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// `[x - err, x + err]`, rounded outward.
    pub fn around(x: f64, err: f64) -> Self {
        Interval { lo: down(x - err), hi: up(x + err) }
    }

    /// Widens by one ulp on each side.
    pub fn widen(self) -> Self {
        Interval { lo: down(self.lo), hi: up(self.hi) }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        if self.hi.is_infinite() {
            self.hi
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }

    pub fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    /// Product with a scalar interval; `0 * inf` is taken as 0.
    pub fn mul(self, o: Interval) -> Interval {
        let prod = |a: f64, b: f64| if a == 0.0 || b == 0.0 { 0.0 } else { a * b };
        let c = [prod(self.lo, o.lo), prod(self.lo, o.hi), prod(self.hi, o.lo), prod(self.hi, o.hi)];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval { lo: down(lo), hi: up(hi) }
    }

    /// Reciprocal of a strictly positive interval.
    pub fn recip_positive(self) -> Interval {
        debug_assert!(self.lo > 0.0);
        let hi = if self.lo > 0.0 { up(1.0 / self.lo) } else { f64::INFINITY };
        let lo = if self.hi.is_infinite() { 0.0 } else { down(1.0 / self.hi) };
        Interval { lo, hi }
    }

    pub fn exp(self) -> Interval {
        Interval { lo: down(self.lo.exp()).max(0.0), hi: up(self.hi.exp()) }
    }

    pub fn ln(self) -> Interval {
        Interval { lo: down(self.lo.ln()), hi: up(self.hi.ln()) }
    }

    pub fn hull(self, o: Interval) -> Interval {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(-1.0, 3.0);
        let s = a.add(b);
        assert!(s.lo <= 0.0 && s.hi >= 5.0);
        let p = a.mul(b);
        assert!(p.lo <= -2.0 && p.hi >= 6.0);
        let r = Interval::new(2.0, 4.0).recip_positive();
        assert!(r.contains(0.25) && r.contains(0.5));
    }

    #[test]
    fn infinite_upper_end() {
        let a = Interval::new(0.5, f64::INFINITY);
        let p = a.mul(Interval::point(2.0));
        assert_eq!(p.hi, f64::INFINITY);
        assert!(p.lo <= 1.0);
        let z = Interval::point(0.0).mul(a);
        assert!(z.contains(0.0) && z.hi.is_finite());
    }
}
