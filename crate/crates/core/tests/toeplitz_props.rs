use multmono::rational::{from_f64, CRational};
use multmono::toeplitz::oracle::exact_ratios;
use multmono::toeplitz::{
    check_ratio_mult_monotone, incremental_cholesky_dets, parse_kernel, prop29_summary, Kernel, Sigma,
};
use multmono::Exec;
use num_rational::BigRational;
use proptest::prelude::*;

/// Coefficients of `|g(t)|² + eps` for `g = Σ g_j e^{2πijt}`: a symbol with
/// nonnegative spectrum.
fn autocorrelation(g: &[(f64, f64)], eps: f64) -> Vec<CRational> {
    let m = g.len();
    (0..m)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for j in 0..m - k {
                // g_{j+k} · conj g_j
                let (a, b) = g[j + k];
                let (c, d) = g[j];
                re += a * c + b * d;
                im += b * c - a * d;
            }
            if k == 0 {
                re += eps;
                im = 0.0;
            }
            CRational::new(from_f64(re).unwrap(), from_f64(im).unwrap())
        })
        .collect()
}

fn coeff() -> impl Strategy<Value = (f64, f64)> {
    (-1.0f64..1.0, -1.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fekete_ratios_nonincreasing(g in prop::collection::vec(coeff(), 1..5), eps in 0.05f64..1.0) {
        let k = Kernel::additive(autocorrelation(&g, eps));
        let s = incremental_cholesky_dets(&k, 64, 53).unwrap();
        for w in s.r.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-9), "{} > {}", w[1], w[0]);
        }
    }

    #[test]
    fn scale_covariance(num in 1i64..20, den in 1i64..20) {
        let lambda = BigRational::new(num.into(), den.into());
        let l = (num as f64 / den as f64).ln();
        let base = Kernel::hilberdink(Sigma::recip());
        let a = incremental_cholesky_dets(&base, 48, 53).unwrap();
        let b = incremental_cholesky_dets(&base.clone().scaled(lambda).unwrap(), 48, 53).unwrap();
        for n in 0..48 {
            prop_assert!((b.ln_r[n] - a.ln_r[n] - l).abs() < 1e-12);
            prop_assert!((b.ln_d[n] - a.ln_d[n] - (n + 1) as f64 * l).abs() < 1e-10);
        }
        let va = check_ratio_mult_monotone(&a, Exec::Sequential).unwrap();
        let vb = check_ratio_mult_monotone(&b, Exec::Sequential).unwrap();
        prop_assert_eq!(va.holds(), vb.holds());
    }

    #[test]
    fn hilberdink_ratios_monotone(num in 1i64..10, den in 2i64..20) {
        prop_assume!(num < den);
        let v = CRational::real(BigRational::new(num.into(), den.into()));
        let k = Kernel::hilberdink(Sigma::PrimeRule { prime: v, higher: None });
        let s = incremental_cholesky_dets(&k, 256, 53).unwrap();
        prop_assert!(check_ratio_mult_monotone(&s, Exec::Parallel).unwrap().holds());
        prop_assert!(prop29_summary(&s).unwrap().bound_holds);
    }
}

#[test]
fn pivots_match_dense_oracle() {
    for spec in [
        "hilberdink:sigma=recip",
        "hilberdink:sigma=cm,s=2",
        "hilberdink:sigma=prime,value=1/2,higher=0",
        "hilberdink:sigma=prime,value=1/3+1/4i",
        "dfactor:A=powers:2,q=1/2",
        "dfactor:A=friable:3,q=1/3",
        "additive:coeffs=2,1/2",
        "additive:coeffs=3,1/2-1/3i,1/5",
        "identity",
        "hilberdink:sigma=recip,scale=5/2",
    ] {
        let k = parse_kernel(spec).unwrap();
        let exact = exact_ratios(&k, 12).unwrap().unwrap();
        for bits in [53, 128] {
            let s = incremental_cholesky_dets(&k, 12, bits).unwrap();
            for (n, (e, got)) in exact.iter().zip(&s.r).enumerate() {
                assert!(e.is_real());
                let want = multmono::rational::to_f64(&e.re);
                assert!((got - want).abs() <= 1e-12 * want.abs(), "{spec} bits={bits} n={}: {got} vs {want}", n + 1);
            }
        }
    }
}
