//! Small exact integer helpers: primality, factorization, valuations,
//! binomials and divisor enumeration.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization by trial division, as an ordered map `p -> exponent`.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut m = n.abs();
    loop {
        let (quo, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        m = quo;
        v += 1;
    }
}

/// Binomial coefficient as `u128`; callers keep the arguments small.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Smallest `k >= 0` with `base^k >= n`, i.e. `ceil(log_base n)` for `n >= 1`.
pub fn ceil_log(base: u64, n: u64) -> u32 {
    let mut k = 0u32;
    let mut pow = 1u128;
    while pow < u128::from(n) {
        pow *= u128::from(base);
        k += 1;
    }
    k
}

/// A positive integer kept in factored form. Used for the torsion bounds,
/// whose values overflow machine integers quickly as `g` grows.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factored {
    pub primes: BTreeMap<u64, u32>,
}

impl Factored {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(n: u64) -> Self {
        assert!(n >= 1, "Factored::from_u64 needs a positive integer");
        Self { primes: factorize(n) }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut primes = self.primes.clone();
        for (&p, &e) in &other.primes {
            let slot = primes.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { primes }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut primes = self.primes.clone();
        for (&p, &e) in &other.primes {
            *primes.entry(p).or_insert(0) += e;
        }
        Self { primes }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.primes
            .iter()
            .all(|(p, &e)| other.primes.get(p).copied().unwrap_or(0) >= e)
    }

    pub fn value(&self) -> BigUint {
        self.primes
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    /// All positive divisors in increasing order. Only sensible when the
    /// divisor count is moderate.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut divs = vec![BigUint::one()];
        for (&p, &e) in &self.primes {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for d in &divs {
                let mut pk = BigUint::one();
                for _ in 0..=e {
                    next.push(d * &pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), BTreeMap::from([(2, 3), (3, 2), (5, 1)]));
        assert!(factorize(1).is_empty());
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(-50), 5), Some(2));
        assert_eq!(valuation(&BigInt::from(7), 5), Some(0));
        assert_eq!(valuation(&BigInt::zero(), 5), None);
    }

    #[test]
    fn binomials_and_logs() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(3, 9), 2);
        assert_eq!(ceil_log(3, 10), 3);
    }

    #[test]
    fn factored_divisors() {
        let f = Factored::from_u64(24);
        let divs: Vec<u64> = f.divisors().iter().map(|d| d.to_u64().unwrap()).collect();
        assert_eq!(divs, vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert!(Factored::from_u64(6).divides(&f));
        assert!(!Factored::from_u64(16).divides(&f));
        assert_eq!(f.lcm(&Factored::from_u64(10)).to_u64(), Some(120));
    }
}
