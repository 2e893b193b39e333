//! Fixed-point complex balls and certified angles.
//!
//! A ball at precision `p` stores integers `re, im, rad` meaning the closed
//! disc of radius `rad * 2^-p` around `(re + i im) * 2^-p`. Every operation
//! returns a ball that contains all possible results.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CBall {
    pub re: BigInt,
    pub im: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    // x >= 0
    if k == 0 {
        return x.clone();
    }
    let mask = (BigInt::one() << k) - 1u32;
    let q: BigInt = x >> k;
    if (x & &mask).is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// `ceil(sqrt(n))` for `n >= 0`.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1u32
    }
}

impl CBall {
    pub fn exact(re: BigInt, im: BigInt, prec: u32) -> Self {
        Self { re, im, rad: BigInt::zero(), prec }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Self::exact(n << prec, BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(&BigInt::one(), prec)
    }

    /// Upper bound on `|center|` in ulps.
    pub fn center_abs_upper(&self) -> BigInt {
        ceil_sqrt(&(&self.re * &self.re + &self.im * &self.im))
    }

    /// Upper bound on every `|z|` in the ball, in ulps.
    pub fn abs_upper(&self) -> BigInt {
        self.center_abs_upper() + &self.rad
    }

    /// Lower bound on every `|z|` in the ball, in ulps (zero if the ball
    /// meets the origin).
    pub fn abs_lower(&self) -> BigInt {
        let c = (&self.re * &self.re + &self.im * &self.im).sqrt();
        let d = c - &self.rad;
        if d.is_negative() {
            BigInt::zero()
        } else {
            d
        }
    }

    pub fn contains_zero(&self) -> bool {
        &self.re * &self.re + &self.im * &self.im <= &self.rad * &self.rad
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im, rad: self.rad.clone(), prec: self.prec }
    }

    /// Re-expresses the ball at another precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let k = prec - self.prec;
            Self { re: &self.re << k, im: &self.im << k, rad: &self.rad << k, prec }
        } else {
            let k = self.prec - prec;
            Self {
                re: &self.re >> k,
                im: &self.im >> k,
                rad: ceil_shr(&self.rad, k) + 2u32,
                prec,
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec;
        let re = (&self.re * &o.re - &self.im * &o.im) >> p;
        let im = (&self.re * &o.im + &self.im * &o.re) >> p;
        let err = self.center_abs_upper() * &o.rad
            + o.center_abs_upper() * &self.rad
            + &self.rad * &o.rad;
        // two ulps cover the truncation of both components
        let rad = ceil_shr(&err, p) + 2u32;
        Self { re, im, rad, prec: p }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// True if the two discs intersect.
    pub fn overlaps(&self, o: &Self) -> bool {
        debug_assert_eq!(self.prec, o.prec);
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let r = &self.rad + &o.rad;
        &dr * &dr + &di * &di <= &r * &r
    }

    /// True if `o` lies entirely inside `self`.
    pub fn contains_ball(&self, o: &Self) -> bool {
        debug_assert_eq!(self.prec, o.prec);
        if o.rad > self.rad {
            return false;
        }
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let r = &self.rad - &o.rad;
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let scale = (self.prec as f64).exp2();
        let f = |x: &BigInt| {
            let bits = x.bits();
            if bits > 1000 {
                let k = bits - 1000;
                num_traits::ToPrimitive::to_f64(&(x >> k)).unwrap_or(0.0) * (k as f64).exp2() / scale
            } else {
                num_traits::ToPrimitive::to_f64(x).unwrap_or(0.0) / scale
            }
        };
        (f(&self.re), f(&self.im))
    }
}

/// `atan(1/n)` at `w` fractional bits (error below `w/4 + 2` ulps).
fn atan_inv(n: u32, w: u32) -> BigInt {
    let n2 = BigInt::from(n) * n;
    let mut term = (BigInt::one() << w) / n;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        let t = &term / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &n2;
        k += 1;
    }
    sum
}

/// `pi * 2^prec`, rounded down, with error below one ulp.
pub fn pi_fixed(prec: u32) -> BigInt {
    static CACHE: Mutex<Option<(u32, BigInt)>> = Mutex::new(None);
    let mut guard = CACHE.lock().expect("pi cache poisoned");
    if let Some((p, v)) = guard.as_ref() {
        if *p >= prec {
            return v >> (p - prec);
        }
    }
    let w = prec.max(256) + 64;
    let pi = BigInt::from(16) * atan_inv(5, w) - BigInt::from(4) * atan_inv(239, w);
    *guard = Some((w, pi.clone()));
    pi >> (w - prec)
}

/// `atan(t)` for `0 <= t <= 1` at `w` fractional bits.
fn atan_unit(t: &BigInt, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let mut t = t.clone();
    // three argument halvings: atan t = 2 atan(t / (1 + sqrt(1 + t^2)))
    for _ in 0..3 {
        let t2 = (&t * &t) >> w;
        let s = ((&one + t2) << w).sqrt();
        t = (&t << w) / (&one + s);
    }
    let t2 = (&t * &t) >> w;
    let mut term = t;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        let x = &term / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += x;
        } else {
            sum -= x;
        }
        term = (&term * &t2) >> w;
        k += 1;
    }
    sum << 3
}

/// Fraction of a full turn, `arg(x + i y) / (2 pi)` reduced into `[0, 1)`,
/// returned in units of `2^-prec`. The point must be nonzero. The error is
/// below two ulps for the exact input point.
pub fn turns(x: &BigInt, y: &BigInt, prec: u32) -> BigInt {
    assert!(!(x.is_zero() && y.is_zero()), "turns of the origin");
    let w = prec + 64;
    let one = BigInt::one() << w;
    let pi = pi_fixed(w);
    let (ax, ay) = (x.abs(), y.abs());
    let base = if ay <= ax {
        atan_unit(&((&ay << w) / &ax), w)
    } else {
        (&pi >> 1) - atan_unit(&((&ax << w) / &ay), w)
    };
    let theta = match (x.is_negative(), y.is_negative()) {
        (false, false) => base,
        (false, true) => -base,
        (true, false) => &pi - base,
        (true, true) => base - &pi,
    };
    // theta / (2 pi) in units of 2^-w, then into [0, 1)
    let two_pi: BigInt = &pi << 1;
    let mut frac: BigInt = (theta << w) / two_pi;
    if frac.is_negative() {
        frac += &one;
    }
    if frac >= one {
        frac -= &one;
    }
    frac >> 64
}
