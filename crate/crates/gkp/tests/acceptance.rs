//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities (run with `--nocapture` to see them).
//!
//! Expected values tagged as derived were computed from independent oracles
//! in this file (closed-form binomial/Stirling/Eulerian formulas, brute-force
//! convolutions, quadrature) rather than from the code under test.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use gkp::dist::{exact_moments, pmf_at};
use gkp::regime::{classify, GaussianCase, Regime};
use gkp::scalar::{rat, rat_int, Rat};
use gkp::triangle::build_triangle;
use gkp::verify::{convergence_report, BackendChoice};
use gkp::{
    consistency_check, nb_exact_moments, nb_s_sequence, pde_residual, quasi_power_moments,
    real_rooted, singularity_data, GkpParams, SaddleContext,
};

fn factorial(n: usize) -> BigInt {
    (1..=n)
        .map(BigInt::from)
        .product::<BigInt>()
        .max(BigInt::one())
}

fn choose(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Stirling numbers of the second kind by inclusion-exclusion:
/// `S(n,k) = (1/k!) Σ_j (-1)^j C(k,j) (k-j)^n`.
fn stirling2(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = choose(k, j) * BigInt::from(k - j).pow(n as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / factorial(k)
}

/// Eulerian numbers by the explicit alternating sum:
/// `A(n,k) = Σ_j (-1)^j C(n+1,j) (k+1-j)^n`.
fn eulerian(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = choose(n + 1, j) * BigInt::from(k + 1 - j).pow(n as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

type EntryOracle = fn(usize, usize) -> BigInt;

#[test]
fn acceptance_01_exact_triangle_oracles() {
    let cases: [(&str, GkpParams, EntryOracle); 3] = [
        ("pascal", GkpParams::from_ints(0, 0, 1, 0, 0, 1), choose),
        (
            "stirling-2",
            GkpParams::from_ints(0, 1, 0, 0, 0, 1),
            stirling2,
        ),
        (
            "eulerian",
            GkpParams::from_ints(0, 1, 1, 1, -1, 0),
            eulerian,
        ),
    ];
    for (name, params, oracle) in cases {
        let table = build_triangle::<Rat>(&params, 10).unwrap();
        for n in 0..=10 {
            let row = table.row(n).unwrap();
            for (k, entry) in row.iter().enumerate() {
                let expected = Rat::from_integer(oracle(n, k));
                assert_eq!(entry, &expected, "{name} |{n} {k}|");
            }
        }
    }
    println!("acceptance 01 (exact triangle oracles, n <= 10): PASS");
}

fn regime_representatives() -> Vec<(GkpParams, &'static str)> {
    vec![
        (GkpParams::from_ints(1, 1, 0, 0, 1, 1), "GaussianLinear.i"),
        (GkpParams::from_ints(0, 1, 0, 0, 1, 1), "GaussianLinear.ii"),
        (GkpParams::from_ints(1, 0, 1, 0, 1, 1), "GaussianLinear.iii"),
        (
            GkpParams::from_ints(0, 0, 1, 0, 1, 0),
            "NBConditionedPoisson",
        ),
        (GkpParams::from_ints(0, 0, 0, 0, 1, 1), "DegenerateAtN"),
        (GkpParams::from_ints(0, 1, 1, 0, 0, 0), "DegenerateAtZero"),
        (GkpParams::from_ints(0, 0, 2, 0, 0, 1), "BinomialExact"),
        (GkpParams::from_ints(1, 0, 1, 0, 0, 1), "GaussianLogN"),
        (GkpParams::from_ints(0, 1, 0, 0, 0, 1), "GaussianNOverLogN"),
        (
            GkpParams::from_ints(1, 1, 0, 0, 0, 1),
            "GaussianStretchedPower",
        ),
        (GkpParams::from_ints(0, 0, 1, 1, 1, 0), "PoissonComplement"),
        (GkpParams::from_ints(0, 0, 0, 1, 1, 0), "DegenerateAtN"),
        (GkpParams::from_ints(2, 0, 0, 1, 0, 0), "IndicatorSum"),
    ]
}

#[test]
fn acceptance_02_bgf_consistency_and_pde() {
    let xs = [rat(1, 3), rat(1, 2), rat_int(1), rat_int(2)];
    for (params, tag) in regime_representatives() {
        assert_eq!(classify(&params).tag(), tag, "{params}");
        let report = consistency_check(&params, 20, &xs).unwrap();
        assert!(
            report.is_exact_zero(),
            "{params} ({tag}): discrepancy {}",
            report.max_abs
        );
    }
    // assorted rational points, including α′ ≠ 0 and negative entries
    let pde_points = [
        GkpParams::from_ints(1, 0, 1, 1, 1, 1),
        GkpParams::from_ints(0, 1, 1, 1, -1, 0),
        GkpParams::parse("1/2,-1/3,2,1,1/2,3").unwrap(),
        GkpParams::parse("2,1,-1,1/3,0,1").unwrap(),
        GkpParams::parse("3/5,7/3,1/2,2,5/2,1/7").unwrap(),
    ];
    for params in pde_points {
        let report = pde_residual(&params, 20, &xs).unwrap();
        assert!(
            report.is_exact_zero(),
            "{params}: residual {}",
            report.max_abs
        );
    }
    println!("acceptance 02 (generating function consistency and differential residual): PASS");
}

#[test]
fn acceptance_03_exact_law_identities() {
    let grid: Vec<usize> = (1..=50).collect();
    let points = [
        GkpParams::from_ints(0, 0, 1, 0, 1, 0),
        GkpParams::from_ints(0, 0, 2, 0, 1, 1),
        GkpParams::from_ints(0, 0, 2, 0, 0, 1),
        GkpParams::from_ints(2, 0, 0, 1, 0, 0),
        GkpParams::from_ints(0, 1, 1, 0, 0, 0),
        GkpParams::from_ints(0, 0, 0, 0, 1, 1),
    ];
    for params in points {
        let report = convergence_report(&params, &grid, BackendChoice::Exact).unwrap();
        for row in &report.rows {
            let tv = row.tv_exact.as_ref().expect("exact TV");
            assert!(
                tv.is_zero(),
                "{params} ({}) at n = {}: TV = {tv}",
                report.regime,
                row.n
            );
        }
    }
    // β = β′ = 0 points whose classified tag is Gaussian (α′ = 0) still obey
    // the exact Bernoulli-convolution identity; check it directly
    for params in [
        GkpParams::from_ints(1, 0, 0, 0, 0, 1),
        GkpParams::from_ints(2, 0, 0, 1, 0, 0),
    ] {
        let table = build_triangle::<Rat>(&params, 50).unwrap();
        for n in 1..=50 {
            let probs = gkp::indicator_probabilities(&params, n).unwrap();
            let conv = gkp::bernoulli_convolution(&probs);
            let direct = pmf_at(&table, n).unwrap();
            let tv = gkp::tv_distance(&conv, &direct);
            assert!(tv.is_zero(), "{params} at n = {n}: TV = {tv}");
        }
    }
    println!("acceptance 03 (exact-law identities, rational zero TV for n <= 50): PASS");
}

#[test]
fn acceptance_04_linear_gaussian_constants() {
    let n = 2000usize;
    for params in [
        GkpParams::from_ints(1, 1, 0, 0, 1, 1),
        GkpParams::from_ints(0, 1, 0, 0, 1, 1),
        GkpParams::from_ints(1, 0, 1, 0, 1, 1),
    ] {
        let s = singularity_data(&params).unwrap();
        let table = build_triangle::<f64>(&params, n).unwrap();
        let m = exact_moments(&pmf_at(&table, n).unwrap());
        let mean_ratio = m.mean_f64() / n as f64;
        let var_ratio = m.variance_f64() / n as f64;
        assert!(
            (mean_ratio + s.mean_coef).abs() <= 0.01,
            "{params}: mean/n = {mean_ratio}, -m = {}",
            -s.mean_coef
        );
        assert!(
            (var_ratio + s.var_coef).abs() <= 0.02,
            "{params}: var/n = {var_ratio}, -v = {}",
            -s.var_coef
        );
        println!(
            "  {params}: mean/n = {mean_ratio:.6} vs {:.6}, var/n = {var_ratio:.6} vs {:.6}",
            -s.mean_coef, -s.var_coef
        );
    }
    // the frozen decimal targets for the three cases
    let s1 = singularity_data(&GkpParams::from_ints(1, 1, 0, 0, 1, 1)).unwrap();
    assert!((s1.mean_coef + 0.5).abs() < 1e-12 && (s1.var_coef + 0.25).abs() < 1e-12);
    let s2 = singularity_data(&GkpParams::from_ints(0, 1, 0, 0, 1, 1)).unwrap();
    assert!((s2.mean_coef + 0.72135).abs() < 1e-5 && (s2.var_coef + 0.15967).abs() < 1e-5);
    let s3 = singularity_data(&GkpParams::from_ints(1, 0, 1, 0, 1, 1)).unwrap();
    assert!((s3.mean_coef + 0.58198).abs() < 1e-5 && (s3.var_coef + 0.33870).abs() < 1e-5);
    println!("acceptance 04 (linear Gaussian mean/variance constants at n = 2000): PASS");
}

#[test]
fn acceptance_05_conditioned_nb_moments() {
    let params = GkpParams::from_ints(0, 0, 1, 0, 1, 0);
    let m200 = nb_exact_moments(&params, 200).unwrap();
    let mean = m200.mean_f64();
    let var = m200.variance_f64();
    assert!((mean - 199.0).abs() <= 0.05, "mean {mean}");
    assert!((var - 1.0).abs() <= 0.05, "variance {var}");

    // exact agreement with the direct row moments for n <= 50
    let table = build_triangle::<Rat>(&params, 50).unwrap();
    let seq = nb_s_sequence(&params, 50).unwrap();
    for n in 2..=50 {
        let direct = exact_moments(&pmf_at(&table, n).unwrap());
        let via = gkp::nb::nb_moments_from_sequence(&params, &seq, n).unwrap();
        assert_eq!(direct.mean, via.mean, "n = {n}");
        assert_eq!(direct.variance, via.variance, "n = {n}");
    }
    println!(
        "acceptance 05 (conditioned NB moments: mean {mean:.4} ~ 199, var {var:.4} ~ 1): PASS"
    );
}

#[test]
fn acceptance_06_clt_distances() {
    // linear Gaussian point: fast O(n^{-1/2}) decay
    let report = convergence_report(
        &GkpParams::from_ints(1, 1, 0, 0, 1, 1),
        &[100, 400, 1600],
        BackendChoice::Float,
    )
    .unwrap();
    let ks: Vec<f64> = report.rows.iter().map(|r| r.ks.unwrap()).collect();
    println!("  (1,1,0,0,1,1) KS on {{100,400,1600}}: {ks:?}");
    assert!(
        ks[1] < ks[0] && ks[2] < ks[1],
        "not strictly decreasing: {ks:?}"
    );
    for w in ks.windows(2) {
        let ratio = w[1] / w[0];
        assert!((0.3..=0.8).contains(&ratio), "step ratio {ratio}");
    }
    assert!(ks[2] <= 0.08, "KS(1600) = {}", ks[2]);

    // log-n regime converges slowly; relaxed ratio band
    let report = convergence_report(
        &GkpParams::from_ints(1, 0, 1, 0, 0, 1),
        &[400, 1600, 6400],
        BackendChoice::Float,
    )
    .unwrap();
    let ks: Vec<f64> = report.rows.iter().map(|r| r.ks.unwrap()).collect();
    println!("  (1,0,1,0,0,1) KS on {{400,1600,6400}}: {ks:?}");
    assert!(
        ks[1] < ks[0] && ks[2] < ks[1],
        "not strictly decreasing: {ks:?}"
    );
    for w in ks.windows(2) {
        let ratio = w[1] / w[0];
        assert!((0.4..=0.95).contains(&ratio), "step ratio {ratio}");
    }
    assert!(ks[2] <= 0.1, "KS(6400) = {}", ks[2]);
    println!("acceptance 06 (Kolmogorov distances to the normal limit): PASS");
}

#[test]
fn acceptance_07_log_and_stretched_scalings() {
    // blocks-style point: mean·ln n/n in [0.7, 1.5] and trending to 1
    let params = GkpParams::from_ints(0, 1, 0, 0, 0, 1);
    let mut ratios = Vec::new();
    let table = build_triangle::<f64>(&params, 2000).unwrap();
    for n in [500usize, 1000, 2000] {
        let m = exact_moments(&pmf_at(&table, n).unwrap());
        ratios.push(m.mean_f64() * (n as f64).ln() / n as f64);
    }
    println!("  (0,1,0,0,0,1) mean·ln n/n on {{500,1000,2000}}: {ratios:?}");
    assert!(
        (0.7..=1.5).contains(&ratios[2]),
        "ratio at 2000: {}",
        ratios[2]
    );
    assert!(
        (ratios[0] - 1.0).abs() > (ratios[1] - 1.0).abs()
            && (ratios[1] - 1.0).abs() > (ratios[2] - 1.0).abs(),
        "trend not monotone toward 1: {ratios:?}"
    );

    // stretched-power point at n = 4000
    let params = GkpParams::from_ints(1, 1, 0, 0, 0, 1);
    let n = 4000usize;
    let table = build_triangle::<f64>(&params, n).unwrap();
    let m = exact_moments(&pmf_at(&table, n).unwrap());
    let root = (n as f64).sqrt();
    let mean_ratio = m.mean_f64() / root;
    let var_ratio = m.variance_f64() / (root / 2.0);
    println!(
        "  (1,1,0,0,0,1) at 4000: mean/sqrt(n) = {mean_ratio:.4}, var/(sqrt(n)/2) = {var_ratio:.4}"
    );
    assert!((mean_ratio - 1.0).abs() <= 0.15, "mean ratio {mean_ratio}");
    assert!((var_ratio - 1.0).abs() <= 0.2, "variance ratio {var_ratio}");

    // saddle-point prediction against the exact mean
    let q = quasi_power_moments(&params, n).unwrap();
    let rel = (q.predicted_mean() - m.mean_f64()).abs() / m.mean_f64();
    println!(
        "  saddle h1 = {:.4} vs exact mean {:.4} (rel {rel:.4})",
        q.h1,
        m.mean_f64()
    );
    assert!(rel <= 0.10, "saddle prediction off by {rel}");

    // solver residual contract on a spread of n and x
    let ctx = SaddleContext::new(&params).unwrap();
    for x in [0.5, 1.0, 2.0] {
        for nn in [1usize, 10, 100, 4000, 1_000_000] {
            let r = ctx.solve(x, nn).unwrap();
            let residual = (ctx.saddle_equation(r, x) - nn as f64).abs() / nn as f64;
            assert!(
                residual <= 1e-12,
                "residual {residual} at n = {nn}, x = {x}"
            );
        }
    }
    println!("acceptance 07 (log-n and stretched-power scalings, saddle residuals): PASS");
}

#[test]
fn acceptance_08_poisson_complement() {
    let params = GkpParams::from_ints(0, 0, 1, 1, 1, 0);
    let report = convergence_report(&params, &[100, 400], BackendChoice::Float).unwrap();
    assert!(matches!(report.regime, Regime::PoissonComplement { .. }));
    let tv100 = report.rows[0].tv.unwrap();
    let tv400 = report.rows[1].tv.unwrap();
    println!("  TV(law(n - X_n), Pois(1)): n=100 -> {tv100:.5}, n=400 -> {tv400:.5}");
    assert!(tv400 < tv100, "no decay: {tv100} -> {tv400}");
    assert!(tv400 <= 0.1, "TV(400) = {tv400}");
    println!("acceptance 08 (Poisson complement total variation): PASS");
}

#[test]
fn acceptance_09_real_rootedness_grid() {
    let vals = [rat_int(0), rat(1, 2), rat_int(2)];
    let gps = [rat(1, 2), rat_int(2)]; // γ′ = 0 column excluded (constant rows only)
    let mut checked = 0usize;
    for a in &vals {
        for b in &vals {
            for g in &vals {
                for gp in &gps {
                    let params = GkpParams::new(
                        a.clone(),
                        b.clone(),
                        g.clone(),
                        Rat::zero(),
                        Rat::zero(),
                        gp.clone(),
                    );
                    let table = build_triangle::<Rat>(&params, 12).unwrap();
                    for n in 1..=12 {
                        let poly = table.row_polynomial(n).unwrap();
                        let (ok, _) = real_rooted(&poly).unwrap();
                        assert!(ok, "{params} row {n} is not real-rooted");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(checked, 27 * 2 * 12);
    println!("acceptance 09 (real-rootedness on the 54-point grid, n <= 12): PASS");
}

#[test]
fn acceptance_10_limit_consistency_of_constants() {
    // case ii constants equal the α → 0 limit of case i
    let eps = GkpParams::parse("1/1000000,1,0,0,1,1").unwrap();
    let limit = singularity_data(&eps).unwrap();
    assert!(matches!(
        classify(&eps),
        Regime::GaussianLinear(GaussianCase::I)
    ));
    let exact = singularity_data(&GkpParams::from_ints(0, 1, 0, 0, 1, 1)).unwrap();
    assert!(
        (limit.mean_coef - exact.mean_coef).abs() <= 1e-4,
        "mean: {} vs {}",
        limit.mean_coef,
        exact.mean_coef
    );
    assert!(
        (limit.var_coef - exact.var_coef).abs() <= 1e-4,
        "var: {} vs {}",
        limit.var_coef,
        exact.var_coef
    );

    // case iii constants equal the β → 0 limit of case i
    let eps = GkpParams::parse("1,1/1000000,1,0,1,1").unwrap();
    let limit = singularity_data(&eps).unwrap();
    let exact = singularity_data(&GkpParams::from_ints(1, 0, 1, 0, 1, 1)).unwrap();
    assert!((limit.mean_coef - exact.mean_coef).abs() <= 1e-4);
    assert!((limit.var_coef - exact.var_coef).abs() <= 1e-4);
    println!("acceptance 10 (case ii/iii constants are the case i limits): PASS");
}
