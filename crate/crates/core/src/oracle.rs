//! Brute-force model of Tate forms on self-powers.
//!
//! An eigenbasis `B` of the dual Frobenius module of `X^n` has `n * mult_i`
//! vectors over each root `alpha_i`. Wedges `y_C` of `2d`-subsets `C` form
//! an eigenbasis of the degree-`2d` exterior power, with eigenvalue the
//! product of the roots under `C`, so Tate forms are spanned by the `y_C`
//! whose fingerprint `e_C` (the count of slots per root) is admissible of
//! degree `d`. Dimensions are counted per fingerprint with binomial
//! weights.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::binomial;
use crate::eigensystem::EigenvalueSystem;
use crate::linalg::Matrix;
use crate::relations::classify;

/// Largest `|B|` accepted by the explicit-matrix mode.
pub const EXPLICIT_MAX_SLOTS: usize = 12;

/// Calls `visit` on every `e` with `0 <= e_i <= caps_i` and `sum e = total`.
pub fn for_each_in_box(caps: &[i64], total: i64, visit: &mut dyn FnMut(&[i64])) {
    fn go(j: usize, rem: i64, caps: &[i64], suffix: &[i64], e: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        if j == caps.len() {
            if rem == 0 {
                visit(e);
            }
            return;
        }
        let lo = (rem - suffix[j + 1]).max(0);
        for x in lo..=rem.min(caps[j]) {
            e[j] = x;
            go(j + 1, rem - x, caps, suffix, e, visit);
        }
        e[j] = 0;
    }
    if total < 0 {
        return;
    }
    let mut suffix = vec![0i64; caps.len() + 1];
    for j in (0..caps.len()).rev() {
        suffix[j] = suffix[j + 1] + caps[j];
    }
    let mut e = vec![0i64; caps.len()];
    go(0, total, caps, &suffix, &mut e, visit);
}

fn box_caps(sys: &EigenvalueSystem, n: usize) -> Vec<i64> {
    sys.mult().iter().map(|&k| (n * k) as i64).collect()
}

/// Admissible fingerprints of weight `2d` with `e <= n * mult`.
pub fn admissible_fingerprints(sys: &EigenvalueSystem, n: usize, d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for_each_in_box(&box_caps(sys, n), 2 * d as i64, &mut |e| {
        if sys.verify_relation(e, d as i64) {
            out.push(e.to_vec());
        }
    });
    out
}

fn multiplicity(sys: &EigenvalueSystem, n: usize, e: &[i64]) -> u128 {
    sys.mult()
        .iter()
        .zip(e)
        .map(|(&k, &x)| binomial((n * k) as u64, x as u64))
        .product()
}

fn fits(t: &[i64], e: &[i64]) -> bool {
    t.iter().zip(e).all(|(a, b)| a <= b)
}

/// Dimension of the degree-`2d` Tate forms on `X^n`.
pub fn tate_space_dim(sys: &EigenvalueSystem, n: usize, d: usize) -> u128 {
    assert!(d >= 1 && d <= n * sys.g(), "d out of range");
    admissible_fingerprints(sys, n, d).iter().map(|e| multiplicity(sys, n, e)).sum()
}

/// Dimension of the image of (degree `2d - 2`) ∧ (degree 2) Tate forms.
pub fn wedge_image_dim(sys: &EigenvalueSystem, n: usize, d: usize) -> u128 {
    assert!(d >= 2 && d <= n * sys.g(), "d out of range");
    let pairs = admissible_fingerprints(sys, n, 1);
    admissible_fingerprints(sys, n, d)
        .iter()
        .filter(|e| pairs.iter().any(|t| fits(t, e)))
        .map(|e| multiplicity(sys, n, e))
        .sum()
}

pub fn exceptional_oracle(sys: &EigenvalueSystem, n: usize, d: usize) -> bool {
    tate_space_dim(sys, n, d) > wedge_image_dim(sys, n, d)
}

/// Every admissible fingerprint of weight `2m` splits as `f1 + f2` with both
/// parts admissible and `2 <= weight(f2) <= h` (`f1 = 0` allowed).
pub fn bounded_generation_oracle(sys: &EigenvalueSystem, n: usize, m: usize, h: usize) -> bool {
    assert!(m >= 1 && m <= n * sys.g() && h >= 2 && h.is_multiple_of(2), "arguments out of range");
    let small: Vec<(usize, Vec<i64>)> = (1..=(h / 2).min(m))
        .flat_map(|j| admissible_fingerprints(sys, n, j).into_iter().map(move |t| (j, t)))
        .collect();
    admissible_fingerprints(sys, n, m).iter().all(|e| {
        small.iter().any(|(j, f2)| {
            if !fits(f2, e) {
                return false;
            }
            let f1: Vec<i64> = e.iter().zip(f2).map(|(a, b)| a - b).collect();
            sys.verify_relation(&f1, (m - j) as i64)
        })
    })
}

/// All admissible `e` with `0 <= e <= n * mult` and even weight
/// `<= weight_bound`, the zero vector included.
pub fn exhaustive_admissible(sys: &EigenvalueSystem, n: usize, weight_bound: usize) -> Vec<Vec<i64>> {
    (0..=weight_bound / 2).flat_map(|d| admissible_fingerprints(sys, n, d)).collect()
}

/// All reduced admissible functions of weight `<= weight_bound` with
/// entries capped by `caps` (by root, `None` for no cap), enumerated over
/// the reduced support patterns and tested one by one.
pub fn exhaustive_reduced(
    sys: &EigenvalueSystem,
    weight_bound: usize,
    caps: Option<&[i64]>,
) -> Vec<Vec<i64>> {
    let m = sys.m();
    let iota = sys.iota();
    let mut out = Vec::new();
    // each orbit picks a side; fixed roots are capped at 1
    let orbits: Vec<usize> = (0..m).filter(|&i| !sys.is_fixed(i) && i < iota[i]).collect();
    for mask in 0u32..(1 << orbits.len()) {
        let mut root_caps = vec![0i64; m];
        for (k, &i) in orbits.iter().enumerate() {
            let side = if mask >> k & 1 == 0 { i } else { iota[i] };
            root_caps[side] = weight_bound as i64;
        }
        for &i in sys.fixed() {
            root_caps[i] = 1;
        }
        if let Some(c) = caps {
            for (r, &x) in root_caps.iter_mut().zip(c) {
                *r = (*r).min(x);
            }
        }
        for d in 1..=weight_bound / 2 {
            for_each_in_box(&root_caps, 2 * d as i64, &mut |e| {
                // the all-zero choice on an orbit is shared by both sides
                let canonical = orbits.iter().enumerate().all(|(k, &i)| {
                    mask >> k & 1 == 0 || e[iota[i]] != 0
                });
                if canonical && sys.verify_relation(e, d as i64) {
                    out.push(e.to_vec());
                }
            });
        }
    }
    debug_assert!(out.iter().all(|e| classify(sys, e).reduced));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sign of the permutation sorting the concatenation of two sorted,
/// disjoint index lists.
fn shuffle_sign(s: &[usize], t: &[usize]) -> i64 {
    let inversions: usize = s.iter().map(|a| t.iter().filter(|b| *b < a).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Tate dimension and wedge image dimension computed from explicit wedge
/// products `y_S ∧ y_T` in the basis `{y_C}`, ranked over the rationals.
/// Returns `None` when `|B| = 2 g n` exceeds [`EXPLICIT_MAX_SLOTS`].
pub fn explicit_dims(sys: &EigenvalueSystem, n: usize, d: usize) -> Option<(usize, usize)> {
    let slots: Vec<usize> = sys
        .mult()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, n * k))
        .collect();
    if slots.len() > EXPLICIT_MAX_SLOTS || d < 2 || 2 * d > slots.len() {
        return None;
    }
    let mut cache: HashMap<Vec<i64>, bool> = HashMap::new();
    let mut admissible = |c: &[usize]| {
        let mut e = vec![0i64; sys.m()];
        for &x in c {
            e[slots[x]] += 1;
        }
        let deg = c.len() as i64 / 2;
        *cache.entry(e.clone()).or_insert_with(|| sys.verify_relation(&e, deg))
    };
    let tate: Vec<Vec<usize>> =
        subsets(slots.len(), 2 * d).into_iter().filter(|c| admissible(c)).collect();
    let index: HashMap<&Vec<usize>, usize> = tate.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let lower: Vec<Vec<usize>> =
        subsets(slots.len(), 2 * d - 2).into_iter().filter(|c| admissible(c)).collect();
    let pairs: Vec<Vec<usize>> = subsets(slots.len(), 2).into_iter().filter(|c| admissible(c)).collect();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in &lower {
        for t in &pairs {
            if t.iter().any(|x| s.contains(x)) {
                continue;
            }
            let mut c: Vec<usize> = s.iter().chain(t).copied().collect();
            c.sort_unstable();
            let k = index[&c];
            let sign = shuffle_sign(s, t);
            if !seen.insert((k, sign)) {
                continue;
            }
            let mut row = vec![BigRational::zero(); tate.len()];
            row[k] = BigRational::from_integer(BigInt::from(sign));
            rows.push(row);
        }
    }
    let rank = Matrix::new(rows, tate.len()).rank();
    Some((tate.len(), rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil_poly::validate_i64;

    fn sys(c: &[i64], q: u64) -> EigenvalueSystem {
        EigenvalueSystem::build(&validate_i64(c, q).unwrap()).unwrap()
    }

    fn four_root() -> EigenvalueSystem {
        sys(&[25, 0, 6, 0, 1], 5)
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(tate_space_dim(&sys(&[25, 10, 1], 25), 1, 1), 1);
        assert_eq!(tate_space_dim(&sys(&[5, -2, 1], 5), 1, 1), 1);
        let s = four_root();
        assert_eq!(tate_space_dim(&s, 2, 2), 20);
        assert_eq!(wedge_image_dim(&s, 2, 2), 18);
        assert_eq!(wedge_image_dim(&s, 1, 2), 1);
        assert_eq!(tate_space_dim(&s, 1, 2), 1);
        let p = sys(&[25, 10, 1], 25);
        assert_eq!(wedge_image_dim(&p, 2, 2), tate_space_dim(&p, 2, 2));
    }

    #[test]
    fn exceptional_examples() {
        let s = four_root();
        assert!(exceptional_oracle(&s, 2, 2));
        assert!(!exceptional_oracle(&s, 1, 2));
        assert!(!exceptional_oracle(&sys(&[5, -2, 1], 5), 3, 2));
    }

    #[test]
    fn bounded_generation_examples() {
        let s = four_root();
        assert!(bounded_generation_oracle(&s, 2, 2, 4));
        assert!(bounded_generation_oracle(&s, 2, 3, 4));
        assert!(!bounded_generation_oracle(&s, 2, 2, 2));
        // weight-6 fingerprints inside the box 2 * mult all shed (1,1,0,0)
        // or (0,0,1,1)
        assert!(bounded_generation_oracle(&s, 2, 3, 2));
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(exhaustive_admissible(&sys(&[5, -2, 1], 5), 1, 2), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(exhaustive_admissible(&sys(&[25, 10, 1], 25), 1, 2), vec![vec![0], vec![2]]);
        let mut a = exhaustive_admissible(&four_root(), 1, 2);
        a.sort();
        assert_eq!(a, vec![vec![0, 0, 0, 0], vec![0, 0, 1, 1], vec![1, 1, 0, 0]]);
        let mut r = exhaustive_reduced(&four_root(), 4, None);
        r.sort();
        assert_eq!(r, vec![vec![0, 2, 0, 2], vec![2, 0, 2, 0]]);
        assert!(exhaustive_reduced(&sys(&[5, -2, 1], 5), 12, None).is_empty());
    }

    #[test]
    fn explicit_matrix_agrees() {
        let s = four_root();
        assert_eq!(explicit_dims(&s, 2, 2), Some((20, 18)));
        assert_eq!(explicit_dims(&s, 1, 2), Some((1, 1)));
        let e = sys(&[5, -2, 1], 5);
        for d in 2..=3 {
            let (t, i) = explicit_dims(&e, 3, d).unwrap();
            assert_eq!(t as u128, tate_space_dim(&e, 3, d));
            assert_eq!(i as u128, wedge_image_dim(&e, 3, d));
        }
    }
}
