//! Cross-module invariants: the entrywise recurrence against the polynomial
//! recurrence, exact against scaled-float backends, and predicted centerings
//! against exact moments.

use proptest::prelude::*;

use gkp::dist::{exact_moments, pmf_at};
use gkp::polynomial::{polynomial_rows, GenPolynomial};
use gkp::scalar::{rat, rat_to_f64, Rat};
use gkp::triangle::build_triangle;
use gkp::{asymptotic_law, pgf_eval, GkpParams};

use num_traits::{One, Signed, Zero};

fn fixed_points() -> Vec<GkpParams> {
    vec![
        GkpParams::from_ints(0, 0, 1, 0, 0, 1),
        GkpParams::from_ints(0, 1, 0, 0, 0, 1),
        GkpParams::from_ints(0, 1, 1, 1, -1, 0),
        GkpParams::from_ints(1, 1, 0, 0, 1, 1),
        GkpParams::from_ints(0, 0, 1, 0, 1, 0),
        GkpParams::from_ints(1, 1, 0, 0, 0, 1),
        GkpParams::parse("1/2,2,0,1/3,0,2").unwrap(),
    ]
}

#[test]
fn tables_and_distributions_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<gkp::TriangleTable<Rat>>();
    assert_send_sync::<gkp::TriangleTable<f64>>();
    assert_send_sync::<gkp::RowDistribution<Rat>>();
    assert_send_sync::<gkp::RowDistribution<f64>>();
    assert_send_sync::<gkp::AsymptoticLaw>();

    // identical bits from concurrent reads of one shared table
    let params = GkpParams::from_ints(1, 1, 0, 0, 1, 1);
    let table = std::sync::Arc::new(build_triangle::<f64>(&params, 120).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let t = table.clone();
            std::thread::spawn(move || {
                let m = exact_moments(&pmf_at(&t, 120).unwrap());
                m.mean_f64().to_bits()
            })
        })
        .collect();
    let bits: Vec<u64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(bits.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn triangle_rows_equal_polynomial_iteration_to_thirty() {
    for params in fixed_points() {
        let table = build_triangle::<Rat>(&params, 30).unwrap();
        let polys = polynomial_rows::<Rat>(&params, 30);
        for (n, poly) in polys.iter().enumerate() {
            assert_eq!(
                table.row(n).unwrap(),
                poly.coeffs(),
                "{params} row {n} disagrees with the polynomial route"
            );
            let row_sum: Rat = table
                .row(n)
                .unwrap()
                .iter()
                .cloned()
                .fold(Rat::zero(), |a, b| a + b);
            assert_eq!(poly.eval(&Rat::one()), row_sum);
        }
    }
}

#[test]
fn float_backend_agrees_with_exact_to_two_hundred() {
    for params in fixed_points() {
        let exact = build_triangle::<Rat>(&params, 200).unwrap();
        let float = build_triangle::<f64>(&params, 200).unwrap();
        for n in [1usize, 10, 50, 125, 200] {
            let er = exact.row(n).unwrap();
            let sum: Rat = er.iter().cloned().fold(Rat::zero(), |a, b| a + b);
            if sum.is_zero() {
                continue;
            }
            let fd = pmf_at(&float, n).unwrap();
            for (k, e) in er.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let exact_p = rat_to_f64(&(e / &sum));
                if exact_p < f64::MIN_POSITIVE {
                    // below the double-precision range entirely (a single row
                    // can span more than 600 decimal orders); nothing to compare
                    continue;
                }
                let float_p = fd.prob(k);
                let rel = ((float_p - exact_p) / exact_p).abs();
                assert!(rel <= 1e-10, "{params} p({n},{k}): rel error {rel}");
            }
        }
    }
}

#[test]
fn predicted_centerings_track_exact_means() {
    // regimes whose centering a_n is an honest leading term: the ratio
    // μ_n/a_n approaches 1 along a geometric grid
    let points = [
        GkpParams::from_ints(1, 1, 0, 0, 1, 1),
        GkpParams::from_ints(0, 0, 1, 0, 1, 0),
        GkpParams::from_ints(1, 1, 0, 0, 0, 1),
        GkpParams::from_ints(0, 0, 1, 1, 1, 0),
    ];
    for params in points {
        let law = asymptotic_law(&params).unwrap();
        let table = build_triangle::<f64>(&params, 1024).unwrap();
        let mut gaps = Vec::new();
        for n in [64usize, 256, 1024] {
            let m = exact_moments(&pmf_at(&table, n).unwrap());
            let a = law.center(n);
            let b = law.scale(n);
            gaps.push((m.mean_f64() / a - 1.0).abs());
            let standardized = (a - m.mean_f64()).abs() / b;
            assert!(
                standardized <= 5.0,
                "{params} at n = {n}: |a - mean|/b = {standardized}"
            );
        }
        assert!(
            *gaps.last().unwrap() <= gaps.first().unwrap() + 1e-12,
            "{params}: |mean/a - 1| grew along the grid: {gaps:?}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn recurrence_consistency_random_rationals(
        raw in proptest::collection::vec((-4i64..=4, 1i64..=3), 6),
    ) {
        let v: Vec<Rat> = raw.iter().map(|&(n, d)| rat(n, d)).collect();
        let params = GkpParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone(), v[5].clone());
        let table = build_triangle::<Rat>(&params, 10).unwrap();
        let polys = polynomial_rows::<Rat>(&params, 10);
        for (n, poly) in polys.iter().enumerate() {
            prop_assert_eq!(table.row(n).unwrap(), poly.coeffs());
        }
    }

    #[test]
    fn nonnegative_parameters_give_nonnegative_rows(
        raw in proptest::collection::vec((0i64..=4, 1i64..=3), 6),
    ) {
        let v: Vec<Rat> = raw.iter().map(|&(n, d)| rat(n, d)).collect();
        let params = GkpParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone(), v[5].clone());
        let table = build_triangle::<Rat>(&params, 12).unwrap();
        for n in 0..=12 {
            for e in table.row(n).unwrap() {
                prop_assert!(!e.is_negative());
            }
        }
    }

    #[test]
    fn pgf_at_one_is_one(
        raw in proptest::collection::vec((0i64..=3, 1i64..=2), 6),
        n in 1usize..8,
    ) {
        let v: Vec<Rat> = raw.iter().map(|&(nu, d)| rat(nu, d)).collect();
        let params = GkpParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone(), v[5].clone());
        let table = build_triangle::<Rat>(&params, n).unwrap();
        if let Ok(dist) = pmf_at(&table, n) {
            prop_assert_eq!(pgf_eval(&dist, &Rat::one()), Rat::one());
        }
    }

    #[test]
    fn products_of_linear_factors_are_real_rooted(
        roots in proptest::collection::vec((-5i64..=5, 1i64..=3), 1..6),
    ) {
        // build Π (x - r_i) and check the detector agrees
        let mut coeffs = vec![Rat::one()];
        for &(n, d) in &roots {
            let r = rat(n, d);
            let mut next = vec![Rat::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c;
                next[i] = next[i].clone() - c.clone() * &r;
            }
            coeffs = next;
        }
        let poly = GenPolynomial::new(coeffs);
        let (ok, distinct) = gkp::real_rooted(&poly).unwrap();
        prop_assert!(ok);
        let mut unique: Vec<Rat> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
        unique.sort();
        unique.dedup();
        prop_assert_eq!(distinct, unique.len());
    }

    #[test]
    fn squares_plus_positive_are_never_real_rooted(
        a in 1i64..=5,
        b in -4i64..=4,
        c in 1i64..=5,
    ) {
        // a·x² + b·x + c with negative discriminant
        if b * b < 4 * a * c {
            let poly = GenPolynomial::new(vec![rat(c, 1), rat(b, 1), rat(a, 1)]);
            let (ok, distinct) = gkp::real_rooted(&poly).unwrap();
            prop_assert!(!ok);
            prop_assert_eq!(distinct, 0);
        }
    }
}
