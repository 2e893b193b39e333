//! Certified isolation of the roots of a square-free monic integer
//! polynomial.
//!
//! Starting points come from a double-precision Aberth iteration. They are
//! polished by the Weierstrass (Durand-Kerner) iteration in exact
//! fixed-point Gaussian integer arithmetic, and each approximation `z_i`
//! gets the inclusion radius `n |W_i|` where `W_i` is the Weierstrass
//! correction. When those discs are pairwise disjoint each contains exactly
//! one root.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::ball::CBall;
use crate::{IntPoly, Poly};

/// Gaussian integer.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Gauss {
    re: BigInt,
    im: BigInt,
}

impl Gauss {
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Nearest Gaussian integer to `self / o`.
    fn div_round(&self, o: &Gauss) -> Gauss {
        let n = o.norm();
        let num_re = &self.re * &o.re + &self.im * &o.im;
        let num_im = &self.im * &o.re - &self.re * &o.im;
        let two_n: BigInt = &n * BigInt::from(2);
        let round = |x: BigInt| -> BigInt { (x * BigInt::from(2) + &n).div_floor(&two_n) };
        Gauss { re: round(num_re), im: round(num_im) }
    }
}

/// Double-precision Aberth iteration; returns approximations to all roots.
pub fn aberth_f64(poly: &IntPoly) -> Vec<Complex64> {
    let n = poly.degree().expect("nonzero polynomial");
    let coeffs: Vec<Complex64> = poly
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::MAX), 0.0))
        .collect();
    let p = Poly::new(coeffs);
    let dp = p.derivative();
    let radius = (p.coeff(0).norm() / p.leading().norm()).powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let f = p.eval(&z[i]);
            let df = dp.eval(&z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn to_fixed(z: Complex64, prec: u32) -> Gauss {
    let conv = |x: f64| {
        // split to keep all 53 bits regardless of prec
        let (m, e) = frexp(x);
        let mant = BigInt::from((m * (1u64 << 53) as f64) as i64);
        let shift = e - 53 + prec as i64;
        if shift >= 0 {
            mant << shift as u32
        } else {
            mant >> (-shift) as u32
        }
    };
    Gauss { re: conv(z.re), im: conv(z.im) }
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (0.0, 0);
    }
    let e = x.abs().log2().floor() as i64 + 1;
    (x / (e as f64).exp2(), e)
}

/// `F = sum c_k Z^k S^(n-k)` with `S = 2^prec`: the value `p(Z / S) S^n`.
fn eval_homog(poly: &IntPoly, z: &Gauss, prec: u32) -> Gauss {
    let n = poly.degree().expect("nonzero polynomial");
    let mut acc = Gauss { re: poly.coeff(n), im: BigInt::zero() };
    for k in (0..n).rev() {
        acc = acc.mul(z);
        acc.re += poly.coeff(k) << (prec as usize * (n - k));
    }
    acc
}

/// Weierstrass corrections `W_i` as exact pairs `(F_i, Pi_i)` with
/// `W_i = F_i / (2^prec Pi_i)`.
fn weierstrass(poly: &IntPoly, z: &[Gauss], prec: u32) -> Vec<(Gauss, Gauss)> {
    let lc = Gauss { re: poly.leading(), im: BigInt::zero() };
    (0..z.len())
        .map(|i| {
            let f = eval_homog(poly, &z[i], prec);
            let pi = (0..z.len())
                .filter(|&j| j != i)
                .fold(lc.clone(), |acc, j| acc.mul(&z[i].sub(&z[j])));
            (f, pi)
        })
        .collect()
}

/// Certified radius `n |W_i|` in ulps, or `None` if two approximations
/// coincide.
fn inclusion_radius(n: usize, f: &Gauss, pi: &Gauss) -> Option<BigInt> {
    if pi.is_zero() {
        return None;
    }
    let num = f.norm() * BigInt::from(n * n);
    let den = pi.norm();
    let ratio = num.div_ceil(&den);
    Some(ratio.sqrt() + 1u32)
}

fn pairwise_disjoint(balls: &[CBall]) -> bool {
    (0..balls.len()).all(|i| (i + 1..balls.len()).all(|j| !balls[i].overlaps(&balls[j])))
}

/// Isolates all roots of the square-free monic integer polynomial `poly` at
/// `prec` fractional bits. `start` optionally provides previous enclosures
/// (in the same order) to polish; the output keeps that order and each new
/// disc lies inside the corresponding old one.
pub fn isolate(poly: &IntPoly, prec: u32, start: Option<&[CBall]>) -> Option<Vec<CBall>> {
    let n = poly.degree().expect("nonzero polynomial");
    assert!(poly.is_monic());
    if n == 1 {
        let root = CBall::from_int(&-poly.coeff(0), prec);
        return Some(vec![root]);
    }
    let mut z: Vec<Gauss> = match start {
        Some(balls) => balls
            .iter()
            .map(|b| {
                let c = b.with_prec(prec);
                Gauss { re: c.re, im: c.im }
            })
            .collect(),
        None => aberth_f64(poly).into_iter().map(|c| to_fixed(c, prec)).collect(),
    };
    let max_iter = 200 + prec.ilog2() as usize;
    for _ in 0..max_iter {
        let w = weierstrass(poly, &z, prec);
        if w.iter().any(|(_, pi)| pi.is_zero()) {
            // coincident approximations: nudge and retry
            for (k, zi) in z.iter_mut().enumerate() {
                zi.im += BigInt::from(k + 1) << (prec / 2);
            }
            continue;
        }
        let corrections: Vec<Gauss> = w.iter().map(|(f, pi)| f.div_round(pi)).collect();
        let small = corrections
            .iter()
            .all(|c| c.re.abs_le_small(2) && c.im.abs_le_small(2));
        if small {
            let balls: Option<Vec<CBall>> = z
                .iter()
                .zip(&w)
                .map(|(zi, (f, pi))| {
                    let rad = inclusion_radius(n, f, pi)?;
                    Some(CBall { re: zi.re.clone(), im: zi.im.clone(), rad, prec })
                })
                .collect();
            let balls = balls?;
            if !pairwise_disjoint(&balls) {
                return None;
            }
            if let Some(old) = start {
                for (o, b) in old.iter().zip(&balls) {
                    let o = o.with_prec(prec);
                    if !o.contains_ball(b) {
                        return None;
                    }
                }
            }
            return Some(balls);
        }
        for (zi, c) in z.iter_mut().zip(&corrections) {
            *zi = zi.sub(c);
        }
    }
    None
}

trait AbsLeSmall {
    fn abs_le_small(&self, k: i64) -> bool;
}

impl AbsLeSmall for BigInt {
    fn abs_le_small(&self, k: i64) -> bool {
        self.to_i64().is_some_and(|v| v.abs() <= k)
    }
}
