//! Dense univariate polynomials over a generic scalar.
//!
//! Coefficients are stored lowest degree first and kept normalized (no
//! trailing zeros; the zero polynomial has no coefficients). Integer
//! polynomials use `BigInt`, exact field work (gcd, Yun, Sturm) uses
//! `BigRational`, and the numeric starting guesses use `f64`/`Complex64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Scalar bound for polynomial coefficients.
pub trait Scalar: Clone + Num + FromPrimitive + fmt::Debug {}
impl<T: Clone + Num + FromPrimitive + fmt::Debug> Scalar for T {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds from coefficients listed lowest degree first.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`
    pub fn linear(root: T) -> Self {
        Self::new(vec![T::zero() - root, T::one()])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_usize(i).expect("degree fits scalar"))
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// `p(-t)`
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { T::zero() - c.clone() } else { c.clone() })
            .collect();
        Self::new(coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division; `divisor` must be nonzero and `T` a field.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![T::zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    /// Monic greatest common divisor over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c.clone() / lead.clone()).collect())
    }

    /// Yun's square-free decomposition over a field of characteristic zero:
    /// returns `(a_i, i)` with `self = lc * prod a_i^i`, each `a_i` monic,
    /// square-free, pairwise coprime and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.make_monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }
}

impl<T: Scalar + Signed> Poly<T> {
    /// Sturm sequence `p, p', -rem(p, p'), ...` over an ordered field.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(-&r);
        }
        seq.pop();
        seq
    }

    fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    fn sign_of(x: &T) -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Number of distinct real roots in the half-open interval `(a, +inf)`.
    pub fn count_roots_above(&self, a: &T) -> usize {
        let seq = self.sturm_sequence();
        let at_a = Self::sign_changes(seq.iter().map(|p| Self::sign_of(&p.eval(a))));
        let at_inf = Self::sign_changes(seq.iter().map(|p| Self::sign_of(&p.leading())));
        at_a - at_inf
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        let at_neg = Self::sign_changes(seq.iter().map(|p| {
            let s = Self::sign_of(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }));
        let at_pos = Self::sign_changes(seq.iter().map(|p| Self::sign_of(&p.leading())));
        at_neg - at_pos
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl Poly<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl Poly<BigRational> {
    /// Converts back to integer coefficients if every coefficient is integral.
    pub fn to_integer(&self) -> Option<Poly<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntPoly, RatPoly};

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = ip(&[5, -2, 1]);
        let b = ip(&[5, 2, 1]);
        let prod = &a * &b;
        assert_eq!(prod, ip(&[25, 0, 6, 0, 1]));
        assert_eq!(prod.eval(&BigInt::from(1)), BigInt::from(32));
        assert_eq!(ip(&[1, 2, 3]).derivative(), ip(&[2, 6]));
        assert_eq!(ip(&[1, 2, 3]).reflect(), ip(&[1, -2, 3]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        let a = ip(&[5, -2, 1]).to_rational();
        let b = ip(&[5, 2, 1]).to_rational();
        let p = &(&a * &a) * &b;
        let (q, r) = p.div_rem(&a);
        assert!(r.is_zero());
        assert_eq!(q, &a * &b);
        assert_eq!(p.gcd(&p.derivative()), a);
    }

    #[test]
    fn yun_decomposition() {
        let a = ip(&[5, -2, 1]).to_rational();
        let b = ip(&[5, 2, 1]).to_rational();
        let p = &(&a * &a) * &b;
        let parts = p.squarefree_decomposition();
        assert_eq!(parts, vec![(b, 1), (a, 2)]);
        let c = ip(&[5, 1]).to_rational();
        assert_eq!(c.pow(3).squarefree_decomposition(), vec![(c, 3)]);
    }

    #[test]
    fn sturm_counts() {
        // (t - 1)(t - 2)(t^2 + 1)
        let p: RatPoly = (&ip(&[2, -3, 1]) * &ip(&[1, 0, 1])).to_rational();
        assert_eq!(p.count_real_roots(), 2);
        let half = BigRational::new(3.into(), 2.into());
        assert_eq!(p.count_roots_above(&half), 1);
        // root exactly at the endpoint is excluded
        assert_eq!(p.count_roots_above(&BigRational::from_integer(1.into())), 1);
        assert_eq!(p.count_roots_above(&BigRational::from_integer(2.into())), 0);
    }
}
