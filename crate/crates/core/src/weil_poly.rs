//! Weil q-polynomials: exact validation, square-free structure, base change
//! and Newton polygon slopes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{is_prime, valuation};
use crate::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has odd degree {0}")]
    OddDegree(usize),
    #[error("polynomial has degree 0")]
    DegreeTooSmall,
    #[error("functional equation fails at coefficient {index}")]
    FunctionalEquationFails { index: usize },
    #[error("some root does not have absolute value sqrt(q)")]
    RootsOffCircle,
    #[error("{0} is not a prime power")]
    NotPrimePower(String),
}

/// `q = p^a` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub a: u32,
}

impl PrimePower {
    pub fn new(p: u64, a: u32) -> Result<Self, WeilError> {
        let bad = || WeilError::NotPrimePower(format!("{p}^{a}"));
        if a == 0 || !is_prime(p) {
            return Err(bad());
        }
        Ok(Self { p, a })
    }

    pub fn from_q(q: u64) -> Result<Self, WeilError> {
        let factors = crate::arith::factorize(q);
        match factors.into_iter().collect::<Vec<_>>()[..] {
            [(p, a)] => Self::new(p, a),
            _ => Err(WeilError::NotPrimePower(q.to_string())),
        }
    }

    pub fn big(&self) -> BigInt {
        BigInt::from(self.p).pow(self.a)
    }

    /// `q` as a machine integer, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.p.checked_pow(self.a)
    }

    /// `q^m`, used by base change.
    pub fn power(&self, m: u32) -> Self {
        Self { p: self.p, a: self.a * m }
    }

    /// Integer square root when `q` is a perfect square.
    pub fn sqrt(&self) -> Option<BigInt> {
        self.a.is_multiple_of(2).then(|| BigInt::from(self.p).pow(self.a / 2))
    }
}

impl FromStr for PrimePower {
    type Err = WeilError;

    /// Accepts `"p^a"` or a plain integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeilError::NotPrimePower(s.to_string());
        match s.trim().split_once('^') {
            Some((p, a)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let a = a.trim().parse().map_err(|_| bad())?;
                Self::new(p, a)
            }
            None => Self::from_q(s.trim().parse().map_err(|_| bad())?),
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.a)
    }
}

/// A validated Weil q-polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPolynomial {
    poly: IntPoly,
    q: PrimePower,
    g: usize,
    factors: Vec<(IntPoly, usize)>,
}

/// Square-free part of a Weil polynomial together with its Yun factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeStructure {
    pub radical: IntPoly,
    /// `(a_i, i)`: the roots of `a_i` have multiplicity `i`.
    pub factors: Vec<(IntPoly, usize)>,
}

impl SquarefreeStructure {
    /// Multiplicity of every distinct root, in decreasing order.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(a, i)| std::iter::repeat_n(*i, a.degree().unwrap_or(0)))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// Newton polygon slopes, normalized so that `ord(q) = 1`, ascending, with
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeMultiset {
    pub slopes: Vec<(Ratio<i64>, usize)>,
}

impl SlopeMultiset {
    /// Every slope repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Ratio<i64>> {
        self.slopes
            .iter()
            .flat_map(|(s, n)| std::iter::repeat_n(*s, *n))
            .collect()
    }
}

/// Validates coefficients listed lowest degree first.
pub fn validate(coeffs: &[BigInt], q: PrimePower) -> Result<WeilPolynomial, WeilError> {
    let poly = IntPoly::new(coeffs.to_vec());
    if !poly.is_monic() {
        return Err(WeilError::NotMonic);
    }
    let n = poly.degree().expect("monic is nonzero");
    if n % 2 == 1 {
        return Err(WeilError::OddDegree(n));
    }
    if n == 0 {
        return Err(WeilError::DegreeTooSmall);
    }
    let g = n / 2;
    let qb = q.big();
    for j in 0..=g {
        if poly.coeff(j) != qb.pow((g - j) as u32) * poly.coeff(2 * g - j) {
            return Err(WeilError::FunctionalEquationFails { index: j });
        }
    }
    let h = real_polynomial(&poly, &qb);
    if !roots_in_range(&h, &qb) {
        return Err(WeilError::RootsOffCircle);
    }
    let factors = poly
        .to_rational()
        .squarefree_decomposition()
        .into_iter()
        .map(|(a, i)| (a.to_integer().expect("monic factor of a monic integer polynomial"), i))
        .collect();
    Ok(WeilPolynomial { poly, q, g, factors })
}

/// The polynomial `h` of degree `g` with `P(t) = t^g h(t + q/t)`.
pub fn real_polynomial(poly: &IntPoly, q: &BigInt) -> IntPoly {
    let g = poly.degree().unwrap_or(0) / 2;
    let x = IntPoly::from_i64(&[0, 1]);
    let mut prev = IntPoly::constant(BigInt::from(2));
    let mut cur = x.clone();
    let mut h = IntPoly::constant(poly.coeff(g));
    for j in 1..=g {
        h = &h + &cur.scale(&poly.coeff(g + j));
        let next = &(&x * &cur) - &prev.scale(q);
        prev = cur;
        cur = next;
    }
    h
}

/// True iff `h` is real-rooted with every root in `[-2 sqrt q, 2 sqrt q]`.
fn roots_in_range(h: &IntPoly, q: &BigInt) -> bool {
    let hr = h.to_rational();
    let sqfree = squarefree_part(&hr);
    let distinct = sqfree.degree().unwrap_or(0);
    if sqfree.count_real_roots() != distinct {
        return false;
    }
    // k(x^2) = h(x) h(-x): its roots are the squares of the roots of h
    let even = &hr * &hr.reflect();
    let k = crate::RatPoly::new(even.coeffs().iter().step_by(2).cloned().collect());
    let bound = BigRational::from_integer(BigInt::from(4) * q);
    squarefree_part(&k).count_roots_above(&bound) == 0
}

fn squarefree_part(p: &crate::RatPoly) -> crate::RatPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    p.div_rem(&p.gcd(&p.derivative())).0
}

impl WeilPolynomial {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// Coefficients lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Number of distinct roots.
    pub fn distinct_roots(&self) -> usize {
        self.factors.iter().map(|(a, _)| a.degree().unwrap_or(0)).sum()
    }

    pub fn squarefree_structure(&self) -> SquarefreeStructure {
        let radical = self
            .factors
            .iter()
            .fold(IntPoly::one(), |acc, (a, _)| &acc * a);
        SquarefreeStructure { radical, factors: self.factors.clone() }
    }

    /// Yun factors `(a_i, i)`.
    pub fn factors(&self) -> &[(IntPoly, usize)] {
        &self.factors
    }

    /// The Weil polynomial over `q^m` whose roots are the `m`-th powers of
    /// the roots of `self`, computed through Newton power sums.
    pub fn base_change(&self, m: u32) -> WeilPolynomial {
        if m == 1 {
            return self.clone();
        }
        let poly = power_roots(&self.poly, m as usize);
        let q = self.q.power(m);
        validate(poly.coeffs(), q).expect("base change of a Weil polynomial is a Weil polynomial")
    }

    pub fn newton_polygon(&self) -> SlopeMultiset {
        let n = 2 * self.g;
        let p = self.q.p;
        let a = i64::from(self.q.a);
        let points: Vec<(i64, i64)> = (0..=n)
            .filter_map(|i| {
                valuation(&self.poly.coeff(n - i), p).map(|v| (i as i64, i64::from(v)))
            })
            .collect();
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for &pt in &points {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // drop the middle point unless it lies strictly below the chord
                if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let slopes = hull
            .windows(2)
            .map(|w| {
                let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                (Ratio::new(dy, dx * a), dx as usize)
            })
            .collect();
        SlopeMultiset { slopes }
    }
}

impl fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over q={}", self.poly, self.q.big())
    }
}

/// Monic polynomial whose roots are the `m`-th powers of the roots of the
/// monic polynomial `poly`.
pub fn power_roots(poly: &IntPoly, m: usize) -> IntPoly {
    let n = poly.degree().expect("nonzero polynomial");
    // elementary symmetric functions: c_{n-k} = (-1)^k e_k
    let e: Vec<BigInt> = (0..=n)
        .map(|k| if k % 2 == 0 { poly.coeff(n - k) } else { -poly.coeff(n - k) })
        .collect();
    let top = n * m;
    let mut s = vec![BigInt::zero(); top + 1];
    for k in 1..=top {
        let mut acc = BigInt::zero();
        for i in 1..k.min(n + 1) {
            let term = &e[i] * &s[k - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if k <= n {
            let term = BigInt::from(k) * &e[k];
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s[k] = acc;
    }
    let big_s: Vec<BigInt> = (0..=n).map(|j| s[j * m].clone()).collect();
    let mut big_e = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &big_e[k - i] * &big_s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (quo, rem) = acc.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero());
        big_e[k] = quo;
    }
    let coeffs = (0..=n)
        .map(|i| {
            let k = n - i;
            if k.is_multiple_of(2) {
                big_e[k].clone()
            } else {
                -&big_e[k]
            }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Convenience: validate coefficients given as machine integers, lowest
/// degree first.
pub fn validate_i64(coeffs: &[i64], q: u64) -> Result<WeilPolynomial, WeilError> {
    let q = PrimePower::from_q(q)?;
    let coeffs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    validate(&coeffs, q)
}
