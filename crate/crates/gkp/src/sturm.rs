//! Exact real-rootedness checks through Sturm sequences over the rationals.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::GenPolynomial;
use crate::scalar::Rat;

fn trim(mut coeffs: Vec<Rat>) -> Vec<Rat> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn degree(p: &[Rat]) -> usize {
    p.len() - 1
}

fn is_zero_poly(p: &[Rat]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() == 1 {
        return vec![Rat::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rat::from_integer(k.into()) * c)
            .collect(),
    )
}

/// Normalizes by the absolute value of the leading coefficient. Dividing by a
/// positive scalar keeps every sign, which is all Sturm sequences care about,
/// and keeps coefficient growth in check.
fn normalize(p: Vec<Rat>) -> Vec<Rat> {
    let p = trim(p);
    let lc = p.last().unwrap().clone().abs();
    if lc.is_zero() || lc.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &lc).collect()
}

/// Euclidean remainder of `a` by `b` over the rationals.
fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let b = trim(b.to_vec());
    let db = degree(&b);
    let lb = b.last().unwrap().clone();
    let mut r = trim(a.to_vec());
    while !is_zero_poly(&r) && degree(&r) >= db {
        let shift = degree(&r) - db;
        let factor = r.last().unwrap().clone() / &lb;
        for i in 0..=db {
            let delta = factor.clone() * &b[i];
            r[i + shift] = r[i + shift].clone() - delta;
        }
        // the leading term cancels exactly, so the degree strictly drops
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = normalize(a.to_vec());
    let mut y = normalize(b.to_vec());
    if is_zero_poly(&y) {
        return x;
    }
    loop {
        let r = poly_rem(&x, &y);
        if is_zero_poly(&r) {
            return y;
        }
        x = y;
        y = normalize(r);
    }
}

/// Exact quotient `a / b` when `b` divides `a`.
fn poly_exact_div(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let da = degree(a);
    let db = degree(b);
    assert!(da >= db);
    let mut r = a.to_vec();
    let mut q = vec![Rat::zero(); da - db + 1];
    let lb = b.last().unwrap();
    for shift in (0..=da - db).rev() {
        let coef = r[shift + db].clone() / lb;
        if !coef.is_zero() {
            for i in 0..=db {
                let delta = coef.clone() * &b[i];
                r[i + shift] = r[i + shift].clone() - delta;
            }
        }
        q[shift] = coef;
    }
    debug_assert!(is_zero_poly(&r), "division was not exact");
    trim(q)
}

fn square_free_part(p: &[Rat]) -> Vec<Rat> {
    let d = derivative(p);
    if is_zero_poly(&d) {
        // constant
        return trim(p.to_vec());
    }
    let g = poly_gcd(p, &d);
    if degree(&g) == 0 {
        return trim(p.to_vec());
    }
    normalize(poly_exact_div(&trim(p.to_vec()), &g))
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for s in signs.filter(|s| *s != 0) {
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of distinct real roots of a square-free polynomial, by sign
/// variations of its Sturm chain at −∞ and +∞.
fn distinct_real_roots_square_free(p: &[Rat]) -> usize {
    if degree(p) == 0 {
        return 0;
    }
    let mut chain = vec![normalize(p.to_vec()), normalize(derivative(p))];
    loop {
        let n = chain.len();
        let r = poly_rem(&chain[n - 2], &chain[n - 1]);
        if is_zero_poly(&r) {
            break;
        }
        chain.push(normalize(r.into_iter().map(|c| -c).collect()));
    }
    let at_pos_inf = sign_changes(chain.iter().map(|q| sign_of(q.last().unwrap())));
    let at_neg_inf = sign_changes(chain.iter().map(|q| {
        let s = sign_of(q.last().unwrap());
        if degree(q) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    at_neg_inf - at_pos_inf
}

/// Whether a polynomial has only real roots, plus its number of distinct real
/// roots.
///
/// Factors out `x^m`, reduces the rest to its square-free part, and compares
/// the Sturm root count of that part with its degree. A nonzero constant has
/// no roots and counts as (vacuously) real-rooted.
pub fn real_rooted(poly: &GenPolynomial<Rat>) -> Result<(bool, usize)> {
    let coeffs = trim(poly.coeffs().to_vec());
    if is_zero_poly(&coeffs) {
        return Err(Error::InvalidInput(
            "the zero polynomial has no root structure".into(),
        ));
    }
    let zero_multiplicity = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced: Vec<Rat> = coeffs[zero_multiplicity..].to_vec();
    let sf = square_free_part(&reduced);
    let count = distinct_real_roots_square_free(&sf);
    let all_real = count == degree(&sf);
    let distinct = count + usize::from(zero_multiplicity > 0);
    Ok((all_real, distinct))
}
