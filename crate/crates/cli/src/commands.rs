use std::fs::File;
use std::sync::Arc;

use multmono::arith::{
    bougaief_derivative, bougaief_integral, is_mult_monotone, Direction, MonotoneVerdict, TabulatedFunction, Values,
};
use multmono::dfactor::{esv_density, DirectFactorPair};
use multmono::functions::{ArithFn, SetIndicator};
use multmono::means::{alpha_limit_estimate, mean_gap_diagnostics};
use multmono::rational::format_rational;
use multmono::toeplitz::{
    additive_toeplitz_dets, check_ratio_mult_monotone, cm_limit, incremental_cholesky_dets, prop29_summary,
    prop30_factorization_check, product_formula_sequence, szego_symbol_tools, DeterminantSequence, Kernel,
};
use multmono::Exec;
use serde::Serialize;

use crate::args::{Command, Common, Dir, Grid, KernelArgs, Source};
use crate::output::{num, opt, render, render_raw, Config, Table};
use crate::Failure;

fn runtime(e: multmono::Error) -> Failure {
    Failure::Runtime(e.to_string())
}

fn grid(g: &Grid) -> String {
    g.0.iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
}

fn exec(common: &Common) -> Exec {
    if common.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn size(n: u64) -> Result<usize, Failure> {
    usize::try_from(n).map_err(|_| Failure::Usage(format!("bound {n} is too large")))
}

/// `(key, value)` naming the source in the header.
fn source_entry(src: &Source) -> (&'static str, String) {
    if let Some(s) = &src.set {
        ("set", s.spec_string())
    } else if let Some(f) = &src.function {
        ("function", f.0.name())
    } else {
        ("table", src.table.as_ref().map(|p| p.display().to_string()).unwrap_or_default())
    }
}

fn read_table(path: &std::path::Path) -> Result<TabulatedFunction, Failure> {
    let file = File::open(path).map_err(|e| Failure::Runtime(format!("io: {}: {e}", path.display())))?;
    TabulatedFunction::read_csv(file, &path.display().to_string()).map_err(runtime)
}

/// Exact when every value is a small integer.
fn tabulate(src: &Source, n: Option<u64>) -> Result<TabulatedFunction, Failure> {
    if let Some(path) = &src.table {
        let t = read_table(path)?;
        return match n {
            Some(n) => t.truncate(size(n)?).map_err(runtime),
            None => Ok(t),
        };
    }
    let n = size(n.ok_or_else(|| Failure::Usage("--n is required unless --table is given".into()))?)?;
    if let Some(set) = &src.set {
        return Ok(TabulatedFunction::from_fn_int(n, &set.spec_string(), |k| set.contains(k) as i64));
    }
    let f = &src.function.as_ref().expect("source group is required").0;
    let v = f.tabulate(n).map_err(runtime)?;
    if v.iter().all(|x| x.fract() == 0.0 && x.abs() < 9.0e15) {
        let ints: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        Ok(TabulatedFunction::from_ints(&ints, f.name()))
    } else {
        Ok(TabulatedFunction::float(v, 53, f.name()))
    }
}

fn arith_fn(src: &Source) -> Result<Arc<dyn ArithFn>, Failure> {
    if let Some(set) = &src.set {
        Ok(Arc::new(SetIndicator(set.clone())))
    } else if let Some(f) = &src.function {
        Ok(f.0.clone())
    } else {
        Ok(Arc::new(read_table(src.table.as_ref().expect("source group is required"))?))
    }
}

fn value_strings(f: &TabulatedFunction) -> Vec<String> {
    match f.values() {
        Values::Exact(v) => v.iter().map(format_rational).collect(),
        Values::Float { values, .. } => values.iter().map(|&x| num(x)).collect(),
    }
}

#[derive(Serialize)]
struct Row {
    n: u64,
    value: String,
}

fn kernel_config(cmd: &'static str, k: &KernelArgs) -> Config {
    Config::new(cmd).set("kernel", &k.kernel.normalized).set("n", k.n).set("precision", k.precision)
}

fn seq_table(seq: &DeterminantSequence) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    seq.write_csv(&mut buf).map_err(runtime)?;
    Ok(buf)
}

fn verdict_row(t: &mut Table, v: &MonotoneVerdict) {
    t.push(vec![
        v.limit.to_string(),
        format!("{:?}", v.direction).to_lowercase(),
        v.holds().to_string(),
        opt(v.violation.map(|p| p.0)),
        opt(v.violation.map(|p| p.1)),
        num(v.worst_margin),
        opt(v.worst_pair.map(|p| p.0)),
        opt(v.worst_pair.map(|p| p.1)),
    ]);
}

const VERDICT_COLUMNS: [&str; 8] =
    ["N", "direction", "holds", "violation_k", "violation_n", "worst_margin", "worst_k", "worst_n"];

/// Runs one subcommand and returns the rendered artifact.
pub fn run(command: &Command, common: &Common) -> Result<String, Failure> {
    let ex = exec(common);
    let fmt = common.format;
    let mode = if ex.is_parallel() { "parallel" } else { "sequential" };
    match command {
        Command::Derive(a) => {
            let f = tabulate(&a.source, a.n)?;
            let (k, v) = source_entry(&a.source);
            let cfg = Config::new("derive").set(k, v).set("n", f.limit()).set("integral", a.integral);
            let g = if a.integral { bougaief_integral(&f) } else { bougaief_derivative(&f) };
            match fmt {
                crate::args::Format::Csv => {
                    let mut buf = Vec::new();
                    g.write_csv(&mut buf).map_err(runtime)?;
                    Ok(render_raw(&cfg, &buf))
                }
                crate::args::Format::Json => {
                    let rows: Vec<Row> =
                        value_strings(&g).into_iter().zip(1..).map(|(value, n)| Row { n, value }).collect();
                    render(&cfg, fmt, || Table::new(&[]), rows)
                }
            }
        }
        Command::Monotone(a) => {
            let f = tabulate(&a.source, a.n)?;
            let (k, v) = source_entry(&a.source);
            let dir = match a.direction {
                Dir::Increasing => Direction::Increasing,
                Dir::Decreasing => Direction::Decreasing,
            };
            let cfg = Config::new("monotone")
                .set(k, v)
                .set("n", f.limit())
                .set("direction", format!("{dir:?}").to_lowercase())
                .set("exec", mode);
            let verdict = is_mult_monotone(&f, dir, ex);
            render(
                &cfg,
                fmt,
                || {
                    let mut t = Table::new(&VERDICT_COLUMNS);
                    verdict_row(&mut t, &verdict);
                    t
                },
                &verdict,
            )
        }
        Command::Density(a) => {
            let cfg = Config::new("density")
                .set("A", a.a.spec_string())
                .set("B", a.b.as_ref().map(|b| b.spec_string()).unwrap_or_else(|| "complement".into()))
                .set("xgrid", grid(&a.xgrid))
                .set("divergence_cap", num(a.divergence_cap))
                .set("exec", mode);
            let xmax = a.xgrid.0.iter().cloned().fold(1.0, f64::max).ceil() as u64;
            let pair = match &a.b {
                Some(b) => DirectFactorPair::new(a.a.clone(), b.clone(), xmax),
                None => DirectFactorPair::with_complement(a.a.clone(), xmax),
            }
            .map_err(runtime)?;
            let rows = esv_density(&pair, &a.xgrid.0, a.divergence_cap, ex).map_err(runtime)?;
            render(
                &cfg,
                fmt,
                || {
                    let mut t =
                        Table::new(&["x", "empirical", "lambda_lo", "lambda_hi", "heuristic_tail", "lambda_to_zero"]);
                    for r in &rows {
                        t.push(vec![
                            num(r.x),
                            num(r.empirical),
                            num(r.lambda_lo),
                            num(r.lambda_hi),
                            r.heuristic_tail.to_string(),
                            r.lambda_to_zero.to_string(),
                        ]);
                    }
                    t
                },
                &rows,
            )
        }
        Command::Alpha(a) => {
            let f = arith_fn(&a.source)?;
            let (k, v) = source_entry(&a.source);
            let cfg = Config::new("alpha")
                .set(k, v)
                .set("ygrid", grid(&a.ygrid))
                .set("xgrid", grid(&a.xgrid))
                .set("gap", a.gap)
                .set("exec", mode);
            if a.gap {
                let r = mean_gap_diagnostics(f.as_ref(), &a.xgrid.0, &a.ygrid.0, ex).map_err(runtime)?;
                return render(
                    &cfg,
                    fmt,
                    || {
                        let mut t = Table::new(&["x", "cesaro", "logmean", "alpha_lowerbound", "closed_form_mean"]);
                        for row in &r.rows {
                            t.push(vec![
                                num(row.x),
                                num(row.cesaro),
                                num(row.logmean),
                                num(row.alpha_lowerbound),
                                opt(r.closed_form_mean.map(num)),
                            ]);
                        }
                        t
                    },
                    &r,
                );
            }
            let r = alpha_limit_estimate(f.as_ref(), &a.ygrid.0, &a.xgrid.0, ex).map_err(runtime)?;
            render(
                &cfg,
                fmt,
                || {
                    let mut t = Table::new(&["y", "alpha_lo", "alpha_hi", "truncation", "terms"]);
                    for e in &r.alpha_y {
                        t.push(vec![
                            opt(e.y.map(num)),
                            num(e.alpha.lo),
                            num(e.alpha.hi),
                            e.truncation.to_string(),
                            e.terms.to_string(),
                        ]);
                    }
                    t
                },
                &r,
            )
        }
        Command::Det(a) => {
            let k = &a.kernel;
            let cfg = kernel_config("det", k);
            let seq = incremental_cholesky_dets(&k.kernel.kernel, size(k.n)?, k.precision).map_err(runtime)?;
            match fmt {
                crate::args::Format::Csv => Ok(render_raw(&cfg, &seq_table(&seq)?)),
                crate::args::Format::Json => {
                    #[derive(Serialize)]
                    struct Det<'a> {
                        sequence: &'a DeterminantSequence,
                        ratio_mult_monotone: MonotoneVerdict,
                    }
                    let verdict = check_ratio_mult_monotone(&seq, ex).map_err(runtime)?;
                    render(&cfg, fmt, || Table::new(&[]), Det { sequence: &seq, ratio_mult_monotone: verdict })
                }
            }
        }
        Command::Product(a) => {
            let k = &a.kernel;
            let Kernel::Hilberdink(sigma) = &k.kernel.kernel else {
                return Err(Failure::Usage(format!(
                    "product needs a hilberdink kernel, got `{}`",
                    k.kernel.normalized
                )));
            };
            let mut cfg = kernel_config("product", k).set("cutoff", a.cutoff).set("compare", a.compare);
            if let Some((c, t)) = a.envelope {
                cfg = cfg.set("envelope", format!("{},{}", num(c), num(t)));
            }
            cfg = cfg.set("exec", mode);
            let ln_d = product_formula_sequence(sigma, k.n, k.precision, ex).map_err(runtime)?;
            let chol = if a.compare {
                Some(incremental_cholesky_dets(&k.kernel.kernel, size(k.n)?, k.precision).map_err(runtime)?.ln_d)
            } else {
                None
            };
            let limit = if sigma.is_completely_multiplicative() {
                Some(cm_limit(sigma, a.cutoff, a.envelope).map_err(runtime)?)
            } else {
                None
            };
            #[derive(Serialize)]
            struct Product<'a> {
                ln_d: &'a [f64],
                ln_d_cholesky: Option<&'a [f64]>,
                limit: Option<&'a multmono::toeplitz::CmLimit>,
            }
            render(
                &cfg,
                fmt,
                || {
                    let mut cols = vec!["n", "ln_D", "ln_D_root"];
                    if chol.is_some() {
                        cols.extend(["ln_D_cholesky", "rel_diff"]);
                    }
                    if limit.is_some() {
                        cols.extend(["ln_L_lo", "ln_L_hi"]);
                    }
                    let mut t = Table::new(&cols);
                    for (i, &v) in ln_d.iter().enumerate() {
                        let n = i + 1;
                        let mut row = vec![n.to_string(), num(v), num(v / n as f64)];
                        if let Some(c) = &chol {
                            row.push(num(c[i]));
                            row.push(num((v - c[i]).abs() / c[i].abs().max(1.0)));
                        }
                        if let Some(l) = &limit {
                            row.push(num(l.ln_interval.lo));
                            row.push(num(l.ln_interval.hi));
                        }
                        t.push(row);
                    }
                    t
                },
                Product { ln_d: &ln_d, ln_d_cholesky: chol.as_deref(), limit: limit.as_ref() },
            )
        }
        Command::Prop29(k) => {
            let cfg = kernel_config("prop29", k);
            let seq = incremental_cholesky_dets(&k.kernel.kernel, size(k.n)?, k.precision).map_err(runtime)?;
            let r = prop29_summary(&seq).map_err(runtime)?;
            render(
                &cfg,
                fmt,
                || {
                    let mut t = Table::new(&["M", "logmean", "d_root"]);
                    for (l, d) in r.logmean_trace.iter().zip(&r.d_root_trace) {
                        t.push(vec![num(l.x), num(l.value), num(d.value)]);
                    }
                    t
                },
                &r,
            )
        }
        Command::Prop30(k) => {
            let cfg = kernel_config("prop30", k);
            let r = prop30_factorization_check(&k.kernel.kernel, size(k.n)?, k.precision).map_err(runtime)?;
            render(
                &cfg,
                fmt,
                || {
                    let mut t = Table::new(&[
                        "N",
                        "A",
                        "b_count",
                        "orthogonality_max",
                        "block_identity_max",
                        "block_identity_worst_n",
                        "ratio_identity_max",
                        "ratio_identity_worst_n",
                        "tolerance",
                        "holds",
                    ]);
                    t.push(vec![
                        r.n.to_string(),
                        r.a.clone(),
                        r.b_count.to_string(),
                        num(r.orthogonality_max),
                        num(r.block_identity_max),
                        r.block_identity_worst_n.to_string(),
                        num(r.ratio_identity_max),
                        r.ratio_identity_worst_n.to_string(),
                        num(r.tolerance),
                        r.holds.to_string(),
                    ]);
                    t
                },
                &r,
            )
        }
        Command::Szego(a) => {
            let coeffs = &a.coeffs.0;
            let cfg = Config::new("szego")
                .set("coeffs", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
                .set("n", a.n)
                .set("precision", a.precision);
            let report = szego_symbol_tools(coeffs.clone()).map_err(runtime)?;
            let seq = additive_toeplitz_dets(coeffs.clone(), size(a.n)?, a.precision).map_err(runtime)?;
            #[derive(Serialize)]
            struct Szego<'a> {
                symbol: &'a multmono::toeplitz::SzegoReport,
                d_root: Vec<f64>,
            }
            let roots: Vec<f64> = (1..=seq.len()).map(|m| seq.d_root(m)).collect();
            render(
                &cfg,
                fmt,
                || {
                    let mut t = Table::new(&["n", "ln_D", "d_root", "geometric_mean"]);
                    for (i, r) in roots.iter().enumerate() {
                        t.push(vec![(i + 1).to_string(), num(seq.ln_d[i]), num(*r), opt(report.geometric_mean.map(num))]);
                    }
                    t
                },
                Szego { symbol: &report, d_root: roots.clone() },
            )
        }
    }
}
