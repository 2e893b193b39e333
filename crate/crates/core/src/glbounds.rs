//! Element orders in `GL(n, F_l)` and the torsion exponent `D(g)` that
//! annihilates every root of unity generated by Weil numbers of a
//! `g`-dimensional abelian variety.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::{ceil_log, is_prime, Factored};

/// Largest partition size enumerated.
pub const MAX_N: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionBounds {
    pub g: u32,
    /// Largest element order in `GL(2g, F_2)`.
    pub e2: u64,
    /// Largest element order in `GL(2g, F_3)`.
    pub e3: u64,
    pub exp2: Factored,
    pub exp3: Factored,
    pub d: Factored,
}

impl TorsionBounds {
    /// `D(g)` as a machine integer (fits for `g <= 8`).
    pub fn d_u64(&self) -> u64 {
        self.d.to_u64().expect("D(g) fits u64 for supported g")
    }
}

fn pow_minus_one(l: u64, d: u32) -> Factored {
    Factored::from_u64(l.pow(d) - 1)
}

fn unipotent_order(l: u64, s: u32) -> Factored {
    if s == 0 {
        Factored::one()
    } else {
        Factored::from_u64(l.pow(ceil_log(l, u64::from(s))))
    }
}

fn partitions(n: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=n.min(max_part)).rev() {
        current.push(part);
        partitions(n - part, part, current, out);
        current.pop();
    }
}

/// Maximal element order in `GL(n, F_l)` over decompositions
/// `n = s + sum d_i`: a unipotent block of size `s` and semisimple blocks of
/// degrees `d_i`.
pub fn max_order(l: u64, n: u32) -> u64 {
    assert!(is_prime(l) && (1..=MAX_N).contains(&n));
    let mut best = 1u64;
    for s in 0..=n {
        let mut parts = Vec::new();
        partitions(n - s, n - s, &mut Vec::new(), &mut parts);
        for p in parts {
            let order = p
                .iter()
                .fold(unipotent_order(l, s), |acc, &d| acc.lcm(&pow_minus_one(l, d)));
            best = best.max(order.to_u64().expect("order in GL(16) fits u64"));
        }
    }
    best
}

/// Exponent of `GL(n, F_l)`: `l^ceil(log_l n) * lcm_{d <= n}(l^d - 1)`.
pub fn exponent(l: u64, n: u32) -> Factored {
    assert!(is_prime(l) && (1..=MAX_N).contains(&n));
    (1..=n).fold(unipotent_order(l, n), |acc, d| acc.lcm(&pow_minus_one(l, d)))
}

/// `D(g) = lcm(2 exp_2(2g), exp_3(2g))` with the supporting constants.
pub fn torsion_bound_d(g: u32) -> TorsionBounds {
    static CACHE: OnceLock<Mutex<HashMap<u32, TorsionBounds>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(tb) = cache.lock().expect("cache poisoned").get(&g) {
        return tb.clone();
    }
    assert!(g >= 1 && 2 * g <= MAX_N);
    let n = 2 * g;
    let exp2 = exponent(2, n);
    let exp3 = exponent(3, n);
    let d = exp2.mul(&Factored::from_u64(2)).lcm(&exp3);
    let tb = TorsionBounds { g, e2: max_order(2, n), e3: max_order(3, n), exp2, exp3, d };
    cache.lock().expect("cache poisoned").insert(g, tb.clone());
    tb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(max_order(2, 2), 3);
        assert_eq!(max_order(3, 2), 8);
        assert_eq!(max_order(2, 1), 1);
        assert_eq!(exponent(2, 2).to_u64(), Some(6));
        assert_eq!(exponent(3, 2).to_u64(), Some(24));
        assert_eq!(exponent(2, 1).to_u64(), Some(1));
    }

    #[test]
    fn d_values() {
        let t = torsion_bound_d(1);
        assert_eq!(t.d_u64(), 24);
        assert_eq!(t.e2, 3);
        assert_eq!(torsion_bound_d(2).d_u64(), 65520);
        for g in 1..=4 {
            let t = torsion_bound_d(g);
            assert!(Factored::from_u64(2 * t.e2).divides(&t.d));
            assert!(Factored::from_u64(t.e3).divides(&t.d));
            assert!(Factored::from_u64(t.e2).divides(&t.exp2));
            assert!(Factored::from_u64(t.e3).divides(&t.exp3));
        }
    }
}
