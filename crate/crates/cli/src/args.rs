use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multmono::functions::{parse_function, ArithFn};
use multmono::rational::CRational;
use multmono::sets::IntegerSet;
use multmono::toeplitz::kernel::parse_complex;
use multmono::toeplitz::{parse_kernel, Kernel};

const GRAMMAR: &str = "\
SET grammar (--set, --A, --B):
  powers:m  squares  squarefree  friable:y  sifted:y  window:y,z
  list:a,b,...  multiples:a,b,...  all

FUNCTION grammar (--function):
  one  const:c  id  ln  omega  divisors  min-ln:k  min-omega:k

KERNEL grammar (--kernel):
  identity
  hilberdink:sigma=recip
  hilberdink:sigma=cm,s=S
  hilberdink:sigma=prime,value=V[,higher=W]
  hilberdink:sigma=table,FILE          (n,re,im or n,value rows)
  dfactor:A=SET,q=Q
  dfactor:A=SET,table=FILE             (num,den,re[,im] rows)
  additive:coeffs=c0,c1,...
  table:FILE                           (num,den,re[,im] rows)
  any kernel may end in ,scale=L (L > 0 rational)
  complex values are written a, bi or a+bi with rational a, b

Exit status: 0 success, 1 runtime failure, 2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "multmono", version, about = "Multiplicatively monotone functions and Toeplitz-multiplicative determinants", after_long_help = GRAMMAR)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Run batch work on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    Increasing,
    Decreasing,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bougaïef derivative Df = f * μ (or the integral with --integral).
    Derive(DeriveArgs),
    /// Check k | n => f(k) <= f(n) (or >=) for all n <= N.
    Monotone(MonotoneArgs),
    /// Empirical density of B against (Σ_{a∈A} 1/a)^{-1}.
    Density(DensityArgs),
    /// α(f; y) along a y grid with Cesàro and logarithmic traces.
    Alpha(AlphaArgs),
    /// D_n, r_n by incremental Cholesky.
    Det(DetArgs),
    /// ln D_n from the per-prime product formula (Hilberdink kernels).
    Product(ProductArgs),
    /// Logarithmic mean of (1/k) ln r_k against ln c(1).
    Prop29(KernelArgs),
    /// Direct-factor factorization of D_n.
    Prop30(KernelArgs),
    /// Trigonometric symbol, its geometric mean and Δ_n^{1/n}.
    Szego(SzegoArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Indicator of a set.
    #[arg(long, value_parser = set_arg, value_name = "SET")]
    pub set: Option<IntegerSet>,
    /// A named function.
    #[arg(long, value_parser = function_arg, value_name = "FUNCTION")]
    pub function: Option<Func>,
    /// An `n,value` table.
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub source: Source,
    /// Tabulation bound; defaults to the table length.
    #[arg(long, value_parser = count_arg)]
    pub n: Option<u64>,
    /// Compute Σ_{d|n} f(d) instead.
    #[arg(long)]
    pub integral: bool,
}

#[derive(Debug, Args)]
pub struct MonotoneArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_parser = count_arg)]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value_t = Dir::Increasing)]
    pub direction: Dir,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// The factor A.
    #[arg(long = "A", value_parser = set_arg, value_name = "SET")]
    pub a: IntegerSet,
    /// The cofactor B; computed from A when omitted.
    #[arg(long = "B", value_parser = set_arg, value_name = "SET")]
    pub b: Option<IntegerSet>,
    #[arg(long, value_parser = grid_arg, default_value = "1e3,1e4,1e5,1e6")]
    pub xgrid: Grid,
    /// Lower ends of Σ 1/a above this are reported as λ -> 0.
    #[arg(long, value_parser = positive_arg, default_value = "10")]
    pub divergence_cap: f64,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_parser = grid_arg, default_value = "2,3,5,7,11,13")]
    pub ygrid: Grid,
    #[arg(long, value_parser = grid_arg, default_value = "1e3,1e4,1e5,1e6")]
    pub xgrid: Grid,
    /// Emit the Cesàro / log-mean gap table instead.
    #[arg(long)]
    pub gap: bool,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_parser = kernel_arg, value_name = "KERNEL")]
    pub kernel: KernelSpec,
    #[arg(long, value_parser = count_arg)]
    pub n: u64,
    /// Working precision in bits.
    #[arg(long, value_parser = clap::value_parser!(u32).range(53..=65536), default_value_t = 53)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct DetArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Prime cutoff P for the limit enclosure.
    #[arg(long, value_parser = count_arg, default_value = "100000")]
    pub cutoff: u64,
    /// Decay envelope |σ(p)| <= C p^{-θ}, given as C,θ.
    #[arg(long, value_parser = envelope_arg, value_name = "C,THETA")]
    pub envelope: Option<(f64, f64)>,
    /// Add incremental Cholesky values for comparison.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct SzegoArgs {
    /// Fourier coefficients c0, c1, ... of f.
    #[arg(long, value_parser = coeffs_arg, value_name = "C0,C1,...")]
    pub coeffs: Coeffs,
    #[arg(long, value_parser = count_arg, default_value = "128")]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(53..=65536), default_value_t = 53)]
    pub precision: u32,
}

#[derive(Clone)]
pub struct Func(pub Arc<dyn ArithFn>);

impl std::fmt::Debug for Func {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.name())
    }
}

#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub kernel: Kernel,
    pub normalized: String,
}

#[derive(Debug, Clone)]
pub struct Grid(pub Vec<f64>);

#[derive(Debug, Clone)]
pub struct Coeffs(pub Vec<CRational>);

fn set_arg(s: &str) -> Result<IntegerSet, String> {
    IntegerSet::parse(s).map_err(|e| e.to_string())
}

fn function_arg(s: &str) -> Result<Func, String> {
    parse_function(s).map(Func).map_err(|e| e.to_string())
}

fn kernel_arg(s: &str) -> Result<KernelSpec, String> {
    let kernel = parse_kernel(s).map_err(|e| e.to_string())?;
    // table kernels print a summary, so keep the file reference instead
    let normalized = kernel.to_string();
    let normalized = if normalized.contains('[') { s.trim().to_string() } else { normalized };
    Ok(KernelSpec { kernel, normalized })
}

/// A positive integer, also accepted in exponent form such as `1e6`.
pub fn count_arg(s: &str) -> Result<u64, String> {
    let n = match s.parse::<u64>() {
        Ok(n) => n,
        Err(_) => {
            let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a positive integer"))?;
            if !(x.fract() == 0.0 && x > 0.0 && x <= 9007199254740992.0) {
                return Err(format!("`{s}` is not a positive integer"));
            }
            x as u64
        }
    };
    if n == 0 {
        return Err("bounds must be positive".into());
    }
    Ok(n)
}

fn positive_arg(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn grid_arg(s: &str) -> Result<Grid, String> {
    let v = s.split(',').map(|t| positive_arg(t.trim())).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty grid".into());
    }
    Ok(Grid(v))
}

fn envelope_arg(s: &str) -> Result<(f64, f64), String> {
    let (c, t) = s.split_once(',').ok_or_else(|| format!("expected C,THETA, got `{s}`"))?;
    let c: f64 = c.trim().parse().ok().filter(|c: &f64| c.is_finite() && *c >= 0.0).ok_or_else(|| format!("bad C `{c}`"))?;
    let t: f64 = t.trim().parse().ok().filter(|t: &f64| t.is_finite() && *t >= 0.0).ok_or_else(|| format!("bad THETA `{t}`"))?;
    Ok((c, t))
}

fn coeffs_arg(s: &str) -> Result<Coeffs, String> {
    s.split(',')
        .map(|t| parse_complex(t.trim()).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(Coeffs)
}
