//! Kernels `c` on positive rationals and their matrix entries `c(i/j)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{pair_from_crational, Arith, Pair};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, CRational};
use crate::sets::IntegerSet;
use crate::sieve;

/// A multiplicative `σ` with `σ(1) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum Sigma {
    /// `σ(n) = n^{-s}`, completely multiplicative.
    Power(BigRational),
    /// `σ(p) = prime` for every prime; `σ(p^k) = higher` for `k ≥ 2`, or
    /// `prime^k` when `higher` is `None`.
    PrimeRule { prime: CRational, higher: Option<CRational> },
    /// Values on prime powers. When `completely_multiplicative`, only
    /// `k = 1` is stored.
    Table { values: BTreeMap<(u64, u32), CRational>, completely_multiplicative: bool },
}

impl Sigma {
    pub fn recip() -> Self {
        Sigma::Power(BigRational::one())
    }

    pub fn is_completely_multiplicative(&self) -> bool {
        match self {
            Sigma::Power(_) => true,
            Sigma::PrimeRule { higher, .. } => higher.is_none(),
            Sigma::Table { completely_multiplicative, .. } => *completely_multiplicative,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Sigma::Power(_) => true,
            Sigma::PrimeRule { prime, higher } => prime.is_real() && higher.as_ref().is_none_or(|h| h.is_real()),
            Sigma::Table { values, .. } => values.values().all(CRational::is_real),
        }
    }

    /// `σ(p^k)` exactly; `None` when it is irrational.
    pub fn prime_power(&self, p: u64, k: u32) -> Result<Option<CRational>> {
        if k == 0 {
            return Ok(Some(CRational::one()));
        }
        match self {
            Sigma::Power(s) => {
                if !s.is_integer() {
                    return Ok(None);
                }
                let e = s.to_integer().to_i64().unwrap_or(i64::MAX).saturating_mul(k as i64);
                let base = BigRational::from_integer(p.into());
                let v = if e >= 0 {
                    num_traits::pow(base.recip(), e as usize)
                } else {
                    num_traits::pow(base, (-e) as usize)
                };
                Ok(Some(CRational::real(v)))
            }
            Sigma::PrimeRule { prime, higher } => Ok(Some(match (k, higher) {
                (1, _) => prime.clone(),
                (_, Some(h)) => h.clone(),
                (_, None) => prime.pow(k),
            })),
            Sigma::Table { values, completely_multiplicative } => {
                if *completely_multiplicative {
                    values.get(&(p, 1)).map(|v| Some(v.pow(k))).ok_or(Error::SigmaRange { p, k: 1 })
                } else {
                    values.get(&(p, k)).map(|v| Some(v.clone())).ok_or(Error::SigmaRange { p, k })
                }
            }
        }
    }

    /// `σ(n)` exactly; `None` when irrational.
    pub fn value_exact(&self, n: u64) -> Result<Option<CRational>> {
        let mut acc = CRational::one();
        for (p, k) in sieve::factor(n) {
            match self.prime_power(p, k)? {
                Some(v) => acc = &acc * &v,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// `σ(1), ..., σ(n)` at working precision.
    pub fn values<A: Arith>(&self, a: &A, n: usize) -> Result<Vec<Pair<A>>> {
        if let Sigma::Power(s) = self {
            if !s.is_integer() {
                return Ok((1..=n as u64).map(|m| (a.pow_neg(m, s), a.zero())).collect());
            }
        }
        (1..=n as u64)
            .map(|m| {
                let v = self.value_exact(m)?.expect("rational sigma");
                Ok(pair_from_crational(a, &v))
            })
            .collect()
    }

    /// `σ(n)` at working precision.
    pub fn value_at<A: Arith>(&self, a: &A, n: u64) -> Result<Pair<A>> {
        match self.value_exact(n)? {
            Some(v) => Ok(pair_from_crational(a, &v)),
            None => match self {
                Sigma::Power(s) => Ok((a.pow_neg(n, s), a.zero())),
                _ => unreachable!("only powers are irrational"),
            },
        }
    }

    /// `|σ(p)|` in `f64`.
    pub fn abs_prime(&self, p: u64) -> Result<f64> {
        if let Sigma::Power(s) = self {
            return Ok((p as f64).powf(-s.to_f64().unwrap_or(f64::NAN)));
        }
        let v = self.prime_power(p, 1)?.expect("rational sigma");
        Ok(v.norm_sqr().to_f64().unwrap_or(f64::NAN).sqrt())
    }

    /// A proven envelope `|σ(p)| ≤ C p^{-θ}` as `(C, θ)`, when the family
    /// determines one.
    pub fn envelope(&self) -> Option<(f64, f64)> {
        match self {
            Sigma::Power(s) => Some((1.0, s.to_f64()?)),
            Sigma::PrimeRule { prime, .. } => Some((prime.norm_sqr().to_f64()?.sqrt(), 0.0)),
            Sigma::Table { .. } => None,
        }
    }

    /// Largest prime with a stored value; `None` for rule-based families.
    pub fn prime_limit(&self) -> Option<u64> {
        match self {
            Sigma::Table { values, .. } => values.keys().map(|&(p, _)| p).max(),
            _ => None,
        }
    }

    /// Reads `n,re,im` or `n,value` rows at prime powers `n`. A table with
    /// only primes is taken as completely multiplicative.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let rows = read_rows(path, &["n"])?;
        let mut values = BTreeMap::new();
        for (keys, v) in rows {
            let n = keys[0];
            if n == 1 {
                if v != CRational::one() {
                    return Err(Error::KernelSpec(format!("sigma(1) must be 1, got {v}")));
                }
                continue;
            }
            let f = sieve::factor(n);
            if f.len() != 1 {
                return Err(Error::KernelSpec(format!("sigma table row n={n} is not a prime power")));
            }
            values.insert(f[0], v);
        }
        let cm = values.keys().all(|&(_, k)| k == 1);
        Ok(Sigma::Table { values, completely_multiplicative: cm })
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Power(s) if s.is_one() => write!(f, "sigma=recip"),
            Sigma::Power(s) => write!(f, "sigma=cm,s={}", format_rational(s)),
            Sigma::PrimeRule { prime, higher: None } => write!(f, "sigma=prime,value={prime}"),
            Sigma::PrimeRule { prime, higher: Some(h) } => write!(f, "sigma=prime,value={prime},higher={h}"),
            Sigma::Table { values, completely_multiplicative } => {
                write!(f, "sigma=table[{} entries{}]", values.len(), if *completely_multiplicative { ",cm" } else { "" })
            }
        }
    }
}

/// Kernel values for a direct-factor kernel, supported on `R = A/A`.
#[derive(Debug, Clone, PartialEq)]
pub enum DfValues {
    /// `c(u/v) = q^{Ω(u)+Ω(v)}` on `R`.
    Q(BigRational),
    /// Values on reduced fractions in `R`; missing fractions are 0.
    Table(HashMap<(u64, u64), CRational>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `c = ε`: 1 at 1, else 0.
    Identity,
    /// `c(i/j) = σ(i/(i,j)) · conj σ(j/(i,j))`.
    Hilberdink(Sigma),
    DirectFactor { a: IntegerSet, values: DfValues },
    /// Additive Toeplitz symbol: entry `(i, j)` is `c₀(i - j)` with
    /// `c₀(-k) = conj c₀(k)`; unspecified coefficients are 0.
    Additive(Vec<CRational>),
    /// Explicit values on reduced fractions `num/den`; `c(den/num)` defaults
    /// to the conjugate, missing fractions are 0.
    Table(Arc<HashMap<(u64, u64), CRational>>),
    /// `λ c`, `λ > 0`.
    Scaled(BigRational, Box<Kernel>),
}

/// Search depth for `u/v ∈ A/A`: a witness `t` with `ut, vt ∈ A`.
const RATIO_SEARCH: u64 = 4096;

/// Whether the reduced fraction `u/v` lies in `A/A`.
pub fn in_ratio_set(a: &IntegerSet, u: u64, v: u64) -> bool {
    (1..=RATIO_SEARCH).any(|t| match (u.checked_mul(t), v.checked_mul(t)) {
        (Some(x), Some(y)) => a.contains(x) && a.contains(y),
        _ => false,
    })
}

/// Above this many members of `A ∩ [1, n·RATIO_SEARCH]`, pairwise
/// enumeration gives way to a per-fraction search.
const PAIRWISE_LIMIT: usize = 4096;

/// The reduced fractions `u/v ∈ A/A` with `u, v ≤ n`, i.e. those with a
/// witness `t ≤ RATIO_SEARCH`, `ut, vt ∈ A`.
fn ratio_support(a: &IntegerSet, n: u64) -> Result<HashSet<(u64, u64)>> {
    let bound = n.saturating_mul(RATIO_SEARCH);
    let members = if bound <= a.enumeration_cap { a.enumerate(bound)? } else { Vec::new() };
    let mut out = HashSet::new();
    if bound <= a.enumeration_cap && members.len() <= PAIRWISE_LIMIT {
        // u/v = x/y reduced, with witness t = gcd(x, y)
        for &x in &members {
            for &y in &members {
                let t = x.gcd(&y);
                if t <= RATIO_SEARCH && x / t <= n && y / t <= n {
                    out.insert((x / t, y / t));
                }
            }
        }
    } else {
        for u in 1..=n {
            for v in 1..=n {
                if u.gcd(&v) == 1 && in_ratio_set(a, u, v) {
                    out.insert((u, v));
                }
            }
        }
    }
    Ok(out)
}

fn big_omega(n: u64) -> u32 {
    sieve::factor(n).iter().map(|&(_, k)| k).sum()
}

fn reduce(i: u64, j: u64) -> (u64, u64) {
    let g = i.gcd(&j);
    (i / g, j / g)
}

impl Kernel {
    pub fn identity() -> Self {
        Kernel::Identity
    }

    pub fn hilberdink(sigma: Sigma) -> Self {
        Kernel::Hilberdink(sigma)
    }

    pub fn additive(coeffs: Vec<CRational>) -> Self {
        Kernel::Additive(coeffs)
    }

    /// A direct-factor kernel; the table is checked for hermitian symmetry
    /// and for support inside `A/A`.
    pub fn direct_factor(a: IntegerSet, values: DfValues) -> Result<Self> {
        if let DfValues::Table(t) = &values {
            check_hermitian(t)?;
            for &(u, v) in t.keys() {
                if !t[&(u, v)].is_zero() && !in_ratio_set(&a, u, v) {
                    return Err(Error::SupportLeak { num: u, den: v });
                }
            }
        }
        Ok(Kernel::DirectFactor { a, values })
    }

    pub fn table(values: HashMap<(u64, u64), CRational>) -> Result<Self> {
        check_hermitian(&values)?;
        Ok(Kernel::Table(Arc::new(values)))
    }

    pub fn scaled(self, lambda: BigRational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::KernelSpec(format!("scale must be positive, got {lambda}")));
        }
        Ok(Kernel::Scaled(lambda, Box::new(self)))
    }

    /// Whether entries depend on `i/j` (rather than `i - j`).
    pub fn is_multiplicative(&self) -> bool {
        match self {
            Kernel::Additive(_) => false,
            Kernel::Scaled(_, k) => k.is_multiplicative(),
            _ => true,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Kernel::Identity => true,
            Kernel::Hilberdink(s) => s.is_real(),
            Kernel::DirectFactor { values: DfValues::Q(_), .. } => true,
            Kernel::DirectFactor { values: DfValues::Table(t), .. } => t.values().all(CRational::is_real),
            Kernel::Additive(c) => c.iter().all(CRational::is_real),
            Kernel::Table(t) => t.values().all(CRational::is_real),
            Kernel::Scaled(_, k) => k.is_real(),
        }
    }

    /// The diagonal value `c(1)`.
    pub fn c1(&self) -> Result<f64> {
        let v = match self.exact(1, 1)? {
            Some(v) => v.re.to_f64().unwrap_or(f64::NAN),
            None => 1.0,
        };
        Ok(v)
    }

    /// Entry `(i, j)` exactly; `None` when the kernel is irrational.
    pub fn exact(&self, i: u64, j: u64) -> Result<Option<CRational>> {
        let (u, v) = reduce(i, j);
        Ok(match self {
            Kernel::Identity => Some(if u == 1 && v == 1 { CRational::one() } else { CRational::zero() }),
            Kernel::Hilberdink(s) => match (s.value_exact(u)?, s.value_exact(v)?) {
                (Some(x), Some(y)) => Some(&x * &y.conj()),
                _ => None,
            },
            Kernel::DirectFactor { a, values } => {
                if !in_ratio_set(a, u, v) {
                    Some(CRational::zero())
                } else {
                    match values {
                        DfValues::Q(q) => {
                            Some(CRational::real(num_traits::pow(q.clone(), (big_omega(u) + big_omega(v)) as usize)))
                        }
                        DfValues::Table(t) => Some(lookup(t, u, v).unwrap_or_else(CRational::zero)),
                    }
                }
            }
            Kernel::Additive(c) => Some(additive_coeff(c, i as i64 - j as i64)),
            Kernel::Table(t) => Some(lookup(t, u, v).unwrap_or_else(CRational::zero)),
            Kernel::Scaled(l, k) => k.exact(i, j)?.map(|x| &x * &CRational::real(l.clone())),
        })
    }

    /// Precomputes what is needed to evaluate entries with indices in `idx`.
    pub fn prepare<A: Arith>(&self, a: &A, idx: &[u64]) -> Result<Prepared<A>> {
        let n = idx.iter().copied().max().unwrap_or(1);
        let kind = match self {
            Kernel::Identity => PKind::Identity,
            Kernel::Hilberdink(s) if idx.iter().zip(1..).all(|(&i, k)| i == k) => {
                PKind::Sigma(s.values(a, n as usize)?)
            }
            Kernel::Hilberdink(s) => {
                let mut vals = HashMap::new();
                for &i in idx {
                    for &j in idx {
                        let (u, _) = reduce(i, j);
                        if let std::collections::hash_map::Entry::Vacant(e) = vals.entry(u) {
                            e.insert(s.value_at(a, u)?);
                        }
                    }
                }
                PKind::SparseSigma(vals)
            }
            Kernel::DirectFactor { a: set, values } => {
                let mut map = HashMap::new();
                for (u, v) in ratio_support(set, n)? {
                    let c = match values {
                        DfValues::Q(q) => {
                            CRational::real(num_traits::pow(q.clone(), (big_omega(u) + big_omega(v)) as usize))
                        }
                        DfValues::Table(t) => lookup(t, u, v).unwrap_or_else(CRational::zero),
                    };
                    if !c.is_zero() {
                        map.insert((u, v), pair_from_crational(a, &c));
                    }
                }
                PKind::Map(map)
            }
            Kernel::Additive(c) => PKind::Additive(c.iter().map(|x| pair_from_crational(a, x)).collect()),
            Kernel::Table(t) => {
                let mut map = HashMap::new();
                for (&(u, v), c) in t.iter() {
                    if u <= n && v <= n {
                        map.insert((u, v), pair_from_crational(a, c));
                        map.entry((v, u)).or_insert_with(|| pair_from_crational(a, &c.conj()));
                    }
                }
                PKind::Map(map)
            }
            Kernel::Scaled(l, k) => {
                let inner = k.prepare(a, idx)?;
                let s = a.from_rational(l);
                let scale = match inner.scale {
                    Some(t) => a.mul(&t, &s),
                    None => s,
                };
                return Ok(Prepared { kind: inner.kind, scale: Some(scale) });
            }
        };
        Ok(Prepared { kind, scale: None })
    }
}

fn lookup(t: &HashMap<(u64, u64), CRational>, u: u64, v: u64) -> Option<CRational> {
    t.get(&(u, v)).cloned().or_else(|| t.get(&(v, u)).map(CRational::conj))
}

fn additive_coeff(c: &[CRational], d: i64) -> CRational {
    match c.get(d.unsigned_abs() as usize) {
        Some(x) if d >= 0 => x.clone(),
        Some(x) => x.conj(),
        None => CRational::zero(),
    }
}

fn check_hermitian(t: &HashMap<(u64, u64), CRational>) -> Result<()> {
    for (&(u, v), c) in t {
        if u.gcd(&v) != 1 {
            return Err(Error::KernelSpec(format!("fraction {u}/{v} is not reduced")));
        }
        if u == v && !c.is_real() {
            return Err(Error::NotHermitian { num: u, den: v });
        }
        if let Some(d) = t.get(&(v, u)) {
            if *d != c.conj() {
                return Err(Error::NotHermitian { num: u, den: v });
            }
        }
    }
    Ok(())
}

enum PKind<A: Arith> {
    Identity,
    Sigma(Vec<Pair<A>>),
    SparseSigma(HashMap<u64, Pair<A>>),
    Map(HashMap<(u64, u64), Pair<A>>),
    Additive(Vec<Pair<A>>),
}

/// A kernel bound to one working precision.
pub struct Prepared<A: Arith> {
    kind: PKind<A>,
    scale: Option<A::R>,
}

impl<A: Arith> Prepared<A> {
    /// Entry `(i, j)` as `(re, im)`.
    pub fn entry(&self, a: &A, i: u64, j: u64) -> Pair<A> {
        let (re, im) = match &self.kind {
            PKind::Identity => {
                if i == j {
                    (a.from_f64(1.0), a.zero())
                } else {
                    (a.zero(), a.zero())
                }
            }
            PKind::Sigma(s) => {
                let (u, v) = reduce(i, j);
                mul_conj(a, &s[u as usize - 1], &s[v as usize - 1])
            }
            PKind::SparseSigma(s) => {
                let (u, v) = reduce(i, j);
                mul_conj(a, &s[&u], &s[&v])
            }
            PKind::Map(m) => m.get(&reduce(i, j)).cloned().unwrap_or_else(|| (a.zero(), a.zero())),
            PKind::Additive(c) => {
                let d = i as i64 - j as i64;
                match c.get(d.unsigned_abs() as usize) {
                    Some((re, im)) if d >= 0 => (re.clone(), im.clone()),
                    Some((re, im)) => (re.clone(), a.neg(im)),
                    None => (a.zero(), a.zero()),
                }
            }
        };
        match &self.scale {
            Some(s) => (a.mul(&re, s), a.mul(&im, s)),
            None => (re, im),
        }
    }
}

fn mul_conj<A: Arith>(a: &A, x: &Pair<A>, y: &Pair<A>) -> Pair<A> {
    let re = a.add(&a.mul(&x.0, &y.0), &a.mul(&x.1, &y.1));
    let im = a.sub(&a.mul(&x.1, &y.0), &a.mul(&x.0, &y.1));
    (re, im)
}

/// Reads CSV rows `key₁,…,re[,im]` or `key₁,…,value`; `#` lines are comments.
fn read_rows(path: &Path, keys: &[&str]) -> Result<Vec<(Vec<u64>, CRational)>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_path(path)?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let key_cols = keys
        .iter()
        .map(|k| col(k).ok_or_else(|| Error::KernelSpec(format!("{}: missing column `{k}`", path.display()))))
        .collect::<Result<Vec<_>>>()?;
    let re_col = col("re")
        .or_else(|| col("value"))
        .ok_or_else(|| Error::KernelSpec(format!("{}: missing column `re` or `value`", path.display())))?;
    let im_col = col("im");
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let ks = key_cols
            .iter()
            .map(|&c| {
                rec[c].parse::<u64>().map_err(|_| Error::KernelSpec(format!("{}: bad index `{}`", path.display(), &rec[c])))
            })
            .collect::<Result<Vec<_>>>()?;
        if ks.contains(&0) {
            return Err(Error::KernelSpec(format!("{}: indices must be positive", path.display())));
        }
        out.push((ks, CRational::parse_parts(&rec[re_col], im_col.map(|c| &rec[c]))?));
    }
    Ok(out)
}

/// Reads `num,den,re[,im]` rows, reducing each fraction.
pub fn read_fraction_table(path: &Path) -> Result<HashMap<(u64, u64), CRational>> {
    let mut t = HashMap::new();
    for (k, v) in read_rows(path, &["num", "den"])? {
        let key = reduce(k[0], k[1]);
        if let Some(old) = t.insert(key, v.clone()) {
            if old != v {
                return Err(Error::KernelSpec(format!("conflicting values at {}/{}", key.0, key.1)));
            }
        }
    }
    Ok(t)
}

/// Parses the kernel grammar:
///
/// ```text
/// identity
/// hilberdink:sigma=recip
/// hilberdink:sigma=cm,s=<rational>
/// hilberdink:sigma=prime,value=<c>[,higher=<c>]
/// hilberdink:sigma=table,<FILE>
/// dfactor:A=<set>,q=<rational>
/// dfactor:A=<set>,table=<FILE>
/// additive:coeffs=<c0>,<c1>,...
/// table:<FILE>
/// ```
///
/// A `,scale=<rational>` suffix multiplies any kernel by a positive constant.
pub fn parse_kernel(spec: &str) -> Result<Kernel> {
    let bad = |msg: &str| Error::KernelSpec(format!("`{spec}`: {msg}"));
    let (body, scale) = match spec.rfind(",scale=") {
        Some(i) => (&spec[..i], Some(parse_rational(&spec[i + 7..]).map_err(|_| bad("bad scale"))?)),
        None => (spec, None),
    };
    let (head, rest) = match body.split_once(':') {
        Some((h, r)) => (h, r),
        None => (body, ""),
    };
    let kernel = match head {
        "identity" if rest.is_empty() => Kernel::Identity,
        "hilberdink" => {
            let rest = rest.strip_prefix("sigma=").ok_or_else(|| bad("expected `sigma=`"))?;
            let (kind, args) = rest.split_once(',').unwrap_or((rest, ""));
            let sigma = match kind {
                "recip" if args.is_empty() => Sigma::recip(),
                "cm" => {
                    let s = args.strip_prefix("s=").ok_or_else(|| bad("expected `s=`"))?;
                    Sigma::Power(parse_rational(s).map_err(|_| bad("bad exponent"))?)
                }
                "prime" => {
                    let mut prime = None;
                    let mut higher = None;
                    for kv in args.split(',') {
                        match kv.split_once('=') {
                            Some(("value", v)) => prime = Some(parse_complex(v).map_err(|_| bad("bad value"))?),
                            Some(("higher", v)) => higher = Some(parse_complex(v).map_err(|_| bad("bad value"))?),
                            _ => return Err(bad(&format!("unknown key `{kv}`"))),
                        }
                    }
                    Sigma::PrimeRule { prime: prime.ok_or_else(|| bad("missing `value=`"))?, higher }
                }
                "table" if !args.is_empty() => Sigma::read_csv(Path::new(args))?,
                other => return Err(bad(&format!("unknown sigma `{other}`"))),
            };
            Kernel::Hilberdink(sigma)
        }
        "dfactor" => {
            let rest = rest.strip_prefix("A=").ok_or_else(|| bad("expected `A=`"))?;
            if let Some(i) = rest.rfind(",q=") {
                let a = IntegerSet::parse(&rest[..i])?;
                let q = parse_rational(&rest[i + 3..]).map_err(|_| bad("bad q"))?;
                Kernel::direct_factor(a, DfValues::Q(q))?
            } else if let Some(i) = rest.rfind(",table=") {
                let a = IntegerSet::parse(&rest[..i])?;
                Kernel::direct_factor(a, DfValues::Table(read_fraction_table(Path::new(&rest[i + 7..]))?))?
            } else {
                return Err(bad("expected `,q=` or `,table=`"));
            }
        }
        "additive" => {
            let rest = rest.strip_prefix("coeffs=").ok_or_else(|| bad("expected `coeffs=`"))?;
            let c = rest.split(',').map(parse_complex).collect::<Result<Vec<_>>>().map_err(|_| bad("bad coefficient"))?;
            if c.is_empty() || !c[0].is_real() {
                return Err(bad("c0(0) must be real"));
            }
            Kernel::Additive(c)
        }
        "table" if !rest.is_empty() => Kernel::table(read_fraction_table(Path::new(rest))?)?,
        _ => return Err(Error::KernelSpec(format!("unknown kernel `{head}`"))),
    };
    match scale {
        Some(l) => kernel.scaled(l),
        None => Ok(kernel),
    }
}

/// `a`, `a+bi`, `a-bi`, `bi` with rational parts.
pub fn parse_complex(s: &str) -> Result<CRational> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(CRational::real(parse_rational(s)?));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        x => parse_rational(x.strip_prefix('+').unwrap_or(x))?,
    };
    Ok(CRational::new(re, im))
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Identity => write!(f, "identity"),
            Kernel::Hilberdink(s) => write!(f, "hilberdink:{s}"),
            Kernel::DirectFactor { a, values: DfValues::Q(q) } => {
                write!(f, "dfactor:A={},q={}", a.spec_string(), format_rational(q))
            }
            Kernel::DirectFactor { a, values: DfValues::Table(t) } => {
                write!(f, "dfactor:A={},table[{} entries]", a.spec_string(), t.len())
            }
            Kernel::Additive(c) => {
                write!(f, "additive:coeffs={}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
            Kernel::Table(t) => write!(f, "table[{} entries]", t.len()),
            Kernel::Scaled(l, k) => write!(f, "{k},scale={}", format_rational(l)),
        }
    }
}
