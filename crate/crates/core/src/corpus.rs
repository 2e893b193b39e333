//! Deterministic test corpora of Weil polynomials.

use num_bigint::BigInt;
use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::weil_poly::{validate, PrimePower, WeilPolynomial};
use crate::IntPoly;

/// Field sizes used throughout the corpora.
pub const SMALL_QS: [u64; 7] = [2, 3, 4, 5, 7, 9, 25];

/// `t^2 - a t + q`.
pub fn quadratic(a: i64, q: u64) -> IntPoly {
    IntPoly::from_i64(&[q as i64, -a, 1])
}

fn weil(poly: IntPoly, q: u64) -> WeilPolynomial {
    let q = PrimePower::from_q(q).expect("corpus q is a prime power");
    validate(poly.coeffs(), q).expect("corpus polynomial is Weil")
}

/// Traces `a` with `t^2 - a t + q` a Weil polynomial.
pub fn quadratic_traces(q: u64) -> impl Iterator<Item = i64> {
    let b = (4 * q).sqrt() as i64;
    -b..=b
}

/// Traces of quadratic factors with all roots of unity times `sqrt(q)`.
pub fn supersingular_traces(q: u64) -> Vec<i64> {
    let mut out = vec![0];
    for k in [1, 2, 3, 4] {
        let s = (k * q).sqrt();
        if s * s == k * q {
            out.push(s as i64);
            out.push(-(s as i64));
        }
    }
    out.sort();
    out
}

/// Product of `g` random quadratic factors over a random `q`.
pub fn random_quadratic_product<R: Rng>(rng: &mut R, g: usize) -> WeilPolynomial {
    let q = SMALL_QS[rng.gen_range(0..SMALL_QS.len())];
    let traces: Vec<i64> = quadratic_traces(q).collect();
    let poly = (0..g).fold(IntPoly::one(), |acc, _| {
        &acc * &quadratic(traces[rng.gen_range(0..traces.len())], q)
    });
    weil(poly, q)
}

/// Random Weil quartic (by rejection on the coefficient box).
pub fn random_quartic<R: Rng>(rng: &mut R) -> WeilPolynomial {
    let q = SMALL_QS[rng.gen_range(0..SMALL_QS.len())];
    let qi = q as i64;
    let b1 = (16 * q).sqrt() as i64;
    loop {
        let a1 = rng.gen_range(-b1..=b1);
        let a2 = rng.gen_range(-2 * qi..=6 * qi);
        let coeffs = [qi * qi, qi * a1, a2, a1, 1].map(BigInt::from);
        if let Ok(p) = validate(&coeffs, PrimePower::from_q(q).expect("prime power")) {
            return p;
        }
    }
}

/// Random product of supersingular quadratic factors; these fields are
/// typically small.
pub fn random_small_field<R: Rng>(rng: &mut R, g: usize) -> WeilPolynomial {
    let q = SMALL_QS[rng.gen_range(0..SMALL_QS.len())];
    let traces = supersingular_traces(q);
    let poly = (0..g).fold(IntPoly::one(), |acc, _| {
        &acc * &quadratic(traces[rng.gen_range(0..traces.len())], q)
    });
    weil(poly, q)
}

/// `(p, t, k)`: `pi` is a root of `x^2 - t x + p` (with `p` split) and the
/// field size is `p^k`.
const SPLIT_PRIMES: [(u64, i64, u32); 6] = [(2, 1, 3), (2, 1, 4), (2, 1, 5), (3, 1, 3), (3, 2, 3), (5, 2, 3)];

/// Trace of `p^j pi^(k - 2j)`.
fn related_trace(p: u64, t: i64, k: u32, j: u32) -> i64 {
    let p = p as i64;
    let n = (k - 2 * j) as usize;
    let mut s = vec![2, t];
    for i in 2..=n {
        s.push(t * s[i - 1] - p * s[i - 2]);
    }
    p.pow(j) * s[n]
}

/// Product of `g >= 2` quadratic factors with roots `±p^j pi^(k-2j)` for a
/// single `pi` of norm `p`. The first two factors use different `j`, so the
/// roots satisfy a nontrivial relation over every extension.
pub fn random_related_product<R: Rng>(rng: &mut R, g: usize) -> WeilPolynomial {
    assert!(g >= 2);
    let (p, t, k) = SPLIT_PRIMES[rng.gen_range(0..SPLIT_PRIMES.len())];
    let q = p.pow(k);
    let js = k.div_ceil(2);
    let first = rng.gen_range(0..js);
    let poly = (0..g).fold(IntPoly::one(), |acc, i| {
        let j = match i {
            0 => first,
            1 => (first + rng.gen_range(1..js)) % js,
            _ => rng.gen_range(0..js),
        };
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        &acc * &quadratic(sign * related_trace(p, t, k, j), q)
    });
    weil(poly, q)
}

/// Mixed corpus of `size` instances with `g <= max_g`: quadratic products,
/// quartics, supersingular products and related products in proportion
/// 2:1:1:1.
pub fn corpus(seed: u64, size: usize, max_g: usize) -> Vec<WeilPolynomial> {
    assert!(max_g >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|k| {
            let g = rng.gen_range(1..=max_g);
            match k % 5 {
                0 | 1 => random_quadratic_product(&mut rng, g),
                2 if max_g >= 2 => random_quartic(&mut rng),
                4 if max_g >= 2 => random_related_product(&mut rng, g.max(2)),
                _ => random_small_field(&mut rng, g),
            }
        })
        .collect()
}

/// Every quartic `Q1 Q2` with supersingular quadratic factors over `q`.
pub fn supersingular_pairs(q: u64) -> Vec<WeilPolynomial> {
    let t = supersingular_traces(q);
    let mut out = Vec::new();
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i..] {
            out.push(weil(&quadratic(a, q) * &quadratic(b, q), q));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        assert_eq!(corpus(7, 40, 3), corpus(7, 40, 3));
        assert!(corpus(7, 40, 3).iter().all(|p| (1..=3).contains(&p.g())));
    }

    #[test]
    fn traces() {
        assert_eq!(supersingular_traces(5), vec![0]);
        assert_eq!(supersingular_traces(4), vec![-4, -2, 0, 2, 4]);
        assert_eq!(supersingular_traces(2), vec![-2, 0, 2]);
        assert_eq!(supersingular_traces(3), vec![-3, 0, 3]);
        assert_eq!(quadratic_traces(5).count(), 9);
        // pi = 1 + 2i: pi^3 = -11 - 2i and 5 pi = 5 + 10i
        assert_eq!(related_trace(5, 2, 3, 0), -22);
        assert_eq!(related_trace(5, 2, 3, 1), 10);
    }
}
