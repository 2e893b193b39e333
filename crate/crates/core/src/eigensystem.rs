//! Distinct Frobenius eigenvalues as certified complex enclosures, the
//! involution `alpha -> q/alpha`, and exact decisions of multiplicative
//! identities `prod alpha_i^e_i = q^d`.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ball::{turns, CBall};
use crate::glbounds::{torsion_bound_d, TorsionBounds};
use crate::isolate::isolate;
use crate::relations::{default_weight_bound, torsion_orders};
use crate::weil_poly::{PrimePower, WeilPolynomial};
use crate::IntPoly;

/// Default cap, in bits, for the precision used while isolating roots.
pub const DEFAULT_PRECISION_CAP: u32 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EigenError {
    #[error("root isolation failed below the precision cap of {0} bits")]
    IsolationFailure(u32),
}

/// Liouville-type bound used by exact verification: a nonzero algebraic
/// integer whose conjugates are all bounded by `m_bound` has absolute value
/// at least `m_bound^-(dl - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationBound {
    /// Degree bound `2^g g!` for the splitting field.
    pub dl: u64,
    /// `M = 2 q^E`.
    pub m_bound: BigInt,
    /// `-log2(epsilon)` rounded up: `|gamma| < 2^-eps_bits` forces zero.
    pub eps_bits: u64,
}

/// Angles of the roots as fractions of a turn, in units of `2^-prec`, with
/// error bounds in the same units.
#[derive(Debug, Clone)]
pub struct Angles {
    pub prec: u32,
    pub values: Vec<BigInt>,
    pub errs: Vec<BigInt>,
}

/// `scale * angle mod 1` as 128-bit fractions with error bounds.
#[derive(Debug, Clone)]
pub struct FastAngles {
    pub values: Vec<u128>,
    pub errs: Vec<u128>,
}

#[derive(Default)]
struct Cache {
    roots: BTreeMap<u32, Arc<Vec<CBall>>>,
    angles: BTreeMap<u32, Arc<Angles>>,
    fast: HashMap<BigInt, Arc<FastAngles>>,
}

pub struct EigenvalueSystem {
    poly: WeilPolynomial,
    /// Yun factor and position inside that factor's isolation output, per
    /// root in canonical order.
    slot: Vec<(usize, usize)>,
    mult: Vec<usize>,
    iota: Vec<usize>,
    fixed: Vec<usize>,
    /// For fixed roots: `Some(false)` for `+sqrt q`, `Some(true)` for `-sqrt q`.
    negative_fixed: Vec<Option<bool>>,
    torsion: TorsionBounds,
    precision_cap: u32,
    cache: Mutex<Cache>,
}

impl Clone for EigenvalueSystem {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache poisoned");
        Self {
            poly: self.poly.clone(),
            slot: self.slot.clone(),
            mult: self.mult.clone(),
            iota: self.iota.clone(),
            fixed: self.fixed.clone(),
            negative_fixed: self.negative_fixed.clone(),
            torsion: self.torsion.clone(),
            precision_cap: self.precision_cap,
            cache: Mutex::new(Cache {
                roots: cache.roots.clone(),
                angles: cache.angles.clone(),
                fast: cache.fast.clone(),
            }),
        }
    }
}

impl fmt::Debug for EigenvalueSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EigenvalueSystem")
            .field("poly", &self.poly)
            .field("roots", &self.roots_f64())
            .field("mult", &self.mult)
            .field("iota", &self.iota)
            .field("fixed", &self.fixed)
            .finish()
    }
}

impl EigenvalueSystem {
    pub fn build(poly: &WeilPolynomial) -> Result<Self, EigenError> {
        Self::build_with_cap(poly, DEFAULT_PRECISION_CAP)
    }

    pub fn build_with_cap(poly: &WeilPolynomial, cap: u32) -> Result<Self, EigenError> {
        let factors = poly.factors();
        let q = poly.q();
        let radical = poly.squarefree_structure().radical;
        let fixed_values = fixed_root_values(&radical, q);
        let mut prec = 64u32;
        loop {
            if prec > cap.max(64) {
                return Err(EigenError::IsolationFailure(cap));
            }
            if let Some(sys) = Self::try_build(poly, factors, &fixed_values, prec, cap) {
                return Ok(sys);
            }
            prec *= 2;
        }
    }

    fn try_build(
        poly: &WeilPolynomial,
        factors: &[(IntPoly, usize)],
        fixed_values: &[bool],
        prec: u32,
        cap: u32,
    ) -> Option<Self> {
        let mut balls = Vec::new();
        let mut slots = Vec::new();
        for (fi, (a, _)) in factors.iter().enumerate() {
            let iso = isolate(a, prec, None)?;
            for (pos, b) in iso.into_iter().enumerate() {
                balls.push(b);
                slots.push((fi, pos));
            }
        }
        let n = balls.len();
        for i in 0..n {
            for j in i + 1..n {
                if balls[i].overlaps(&balls[j]) {
                    return None;
                }
            }
        }
        // fixed roots are real: locate the unique ball meeting the real axis
        // on the required side
        let mut fixed_of: Vec<Option<bool>> = vec![None; n];
        for &neg in fixed_values {
            let hits: Vec<usize> = (0..n)
                .filter(|&i| {
                    let b = &balls[i];
                    b.im.abs() <= b.rad && b.re.abs() > b.rad && b.re.is_negative() == neg
                })
                .collect();
            match hits[..] {
                [i] => fixed_of[i] = Some(neg),
                _ => return None,
            }
        }
        let mut iota = vec![usize::MAX; n];
        for i in 0..n {
            if fixed_of[i].is_some() {
                iota[i] = i;
                continue;
            }
            let c = balls[i].conj();
            let hits: Vec<usize> = (0..n)
                .filter(|&j| j != i && slots[j].0 == slots[i].0 && balls[j].overlaps(&c))
                .collect();
            match hits[..] {
                [j] => iota[i] = j,
                _ => return None,
            }
            // a non-real root must be separated from the real axis
            if balls[i].im.abs() <= balls[i].rad {
                return None;
            }
        }
        if (0..n).any(|i| iota[iota[i]] != i) {
            return None;
        }
        // canonical order by (re, im)
        let mut less = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if iota[i] == j {
                    less[i][j] = balls[i].im < balls[j].im;
                    continue;
                }
                let (a, b) = (&balls[i], &balls[j]);
                if &a.re + &a.rad < &b.re - &b.rad {
                    less[i][j] = true;
                } else if &b.re + &b.rad < &a.re - &a.rad {
                    less[i][j] = false;
                } else {
                    return None;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            if i == j {
                std::cmp::Ordering::Equal
            } else if less[i][j] {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let mut inverse = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            inverse[i] = k;
        }
        let slot: Vec<(usize, usize)> = order.iter().map(|&i| slots[i]).collect();
        let mult: Vec<usize> = order.iter().map(|&i| factors[slots[i].0].1).collect();
        let iota_c: Vec<usize> = order.iter().map(|&i| inverse[iota[i]]).collect();
        let negative_fixed: Vec<Option<bool>> = order.iter().map(|&i| fixed_of[i]).collect();
        let fixed: Vec<usize> = (0..n).filter(|&k| negative_fixed[k].is_some()).collect();
        let sorted_balls: Vec<CBall> = order.iter().map(|&i| balls[i].clone()).collect();
        let mut cache = Cache::default();
        cache.roots.insert(prec, Arc::new(sorted_balls));
        let g = u32::try_from(poly.g()).expect("g fits u32");
        Some(Self {
            poly: poly.clone(),
            slot,
            mult,
            iota: iota_c,
            fixed,
            negative_fixed,
            torsion: torsion_bound_d(g),
            precision_cap: cap,
            cache: Mutex::new(cache),
        })
    }

    pub fn poly(&self) -> &WeilPolynomial {
        &self.poly
    }

    pub fn q(&self) -> PrimePower {
        self.poly.q()
    }

    pub fn g(&self) -> usize {
        self.poly.g()
    }

    /// Number of distinct roots.
    pub fn m(&self) -> usize {
        self.mult.len()
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    pub fn iota(&self) -> &[usize] {
        &self.iota
    }

    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.negative_fixed[i].is_some()
    }

    /// Number of two-element orbits of the involution.
    pub fn r(&self) -> usize {
        (self.m() - self.fixed.len()) / 2
    }

    pub fn torsion_bounds(&self) -> &TorsionBounds {
        &self.torsion
    }

    pub fn precision_cap(&self) -> u32 {
        self.precision_cap
    }

    /// Double-precision approximations of the roots, for display.
    pub fn roots_f64(&self) -> Vec<(f64, f64)> {
        let cache = self.cache.lock().expect("cache poisoned");
        let (_, balls) = cache.roots.iter().next().expect("roots isolated at build");
        balls.iter().map(CBall::to_f64).collect()
    }

    /// One representative per two-element orbit (the smaller index).
    pub fn orbit_reps(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| !self.is_fixed(i) && i < self.iota[i]).collect()
    }

    /// The system of `m`-th powers over `q^m` (roots that collide merge).
    pub fn base_change(&self, m: u32) -> Result<EigenvalueSystem, EigenError> {
        Self::build_with_cap(&self.poly.base_change(m), self.precision_cap)
    }

    /// Enclosures of the roots at (at least) `prec` fractional bits.
    pub fn roots_at(&self, prec: u32) -> Arc<Vec<CBall>> {
        let bucket = prec.max(64).next_power_of_two();
        let start = {
            let cache = self.cache.lock().expect("cache poisoned");
            if let Some((_, r)) = cache.roots.range(bucket..).next() {
                return r.clone();
            }
            cache.roots.iter().next_back().map(|(_, r)| r.clone()).expect("initial roots")
        };
        let refined = self.refine(&start, bucket);
        let refined = Arc::new(refined);
        self.cache
            .lock()
            .expect("cache poisoned")
            .roots
            .insert(bucket, refined.clone());
        refined
    }

    fn refine(&self, start: &[CBall], prec: u32) -> Vec<CBall> {
        let mut out: Vec<Option<CBall>> = vec![None; self.m()];
        for (fi, (a, _)) in self.poly.factors().iter().enumerate() {
            let mut idx: Vec<(usize, usize)> = self
                .slot
                .iter()
                .enumerate()
                .filter(|(_, s)| s.0 == fi)
                .map(|(k, s)| (s.1, k))
                .collect();
            idx.sort_unstable();
            let old: Vec<CBall> = idx.iter().map(|&(_, k)| start[k].clone()).collect();
            let mut p = prec;
            let new = loop {
                if let Some(v) = isolate(a, p, Some(&old)) {
                    break v;
                }
                // the polish failed to nest; more bits always succeed
                p *= 2;
            };
            for (&(_, k), b) in idx.iter().zip(new) {
                out[k] = Some(if b.prec == prec { b } else { b.with_prec(prec) });
            }
        }
        out.into_iter().map(|b| b.expect("every root refined")).collect()
    }

    /// Angles of all roots, `arg(alpha) / 2 pi` in `[0, 1)`. Conjugate roots
    /// get exactly opposite values and fixed roots get exact `0` or `1/2`.
    pub fn angles(&self, prec: u32) -> Arc<Angles> {
        let bucket = prec.max(64).next_power_of_two();
        {
            let cache = self.cache.lock().expect("cache poisoned");
            if let Some((_, a)) = cache.angles.range(bucket..).next() {
                return a.clone();
            }
        }
        let pr = bucket + 16;
        let roots = self.roots_at(pr);
        let rp = roots[0].prec;
        let one = BigInt::one() << bucket;
        let mut values = vec![BigInt::zero(); self.m()];
        let mut errs = vec![BigInt::zero(); self.m()];
        for i in 0..self.m() {
            if let Some(neg) = self.negative_fixed[i] {
                values[i] = if neg { &one >> 1 } else { BigInt::zero() };
                continue;
            }
            let j = self.iota[i];
            if roots[i].im.is_negative() {
                continue;
            }
            let b = &roots[i];
            let t = turns(&b.re, &b.im, bucket);
            // |arg change| / 2 pi <= rad / (4 |center|) and |center| >= 1
            let e = (&b.rad >> (rp - bucket)) + 4u32;
            values[j] = if t.is_zero() { BigInt::zero() } else { &one - &t };
            values[i] = t;
            errs[i] = e.clone();
            errs[j] = e;
        }
        let a = Arc::new(Angles { prec: bucket, values, errs });
        self.cache
            .lock()
            .expect("cache poisoned")
            .angles
            .insert(bucket, a.clone());
        a
    }

    /// `scale * angle mod 1` for every root as 128-bit fractions.
    pub fn fast_angles(&self, scale: &BigInt) -> Arc<FastAngles> {
        if let Some(f) = self.cache.lock().expect("cache poisoned").fast.get(scale) {
            return f.clone();
        }
        let sbits = u32::try_from(scale.bits()).expect("scale size");
        let prec = 192 + sbits;
        let ang = self.angles(prec);
        let shift = ang.prec - 128;
        let modulus = BigInt::one() << ang.prec;
        let s = scale;
        let mut values = Vec::with_capacity(self.m());
        let mut errs = Vec::with_capacity(self.m());
        for (v, e) in ang.values.iter().zip(&ang.errs) {
            let scaled = (v * s).mod_floor(&modulus) >> shift;
            values.push(scaled.to_u128().expect("fits 128 bits"));
            let err = if e.is_zero() {
                0u128
            } else {
                ((e * s) >> shift).to_u128().unwrap_or(u128::MAX / 4).saturating_add(2)
            };
            errs.push(err);
        }
        let f = Arc::new(FastAngles { values, errs });
        self.cache.lock().expect("cache poisoned").fast.insert(scale.clone(), f.clone());
        f
    }

    /// Centered distance of `sum e_i * scale * angle_i` from the nearest
    /// integer (as a 128-bit fraction) and the error bound on that value.
    pub fn angle_residual(&self, e: &[i64], scale: &BigInt) -> (u128, u128) {
        let fa = self.fast_angles(scale);
        let mut sum = 0u128;
        let mut err = 0u128;
        for ((&c, &v), &ev) in e.iter().zip(&fa.values).zip(&fa.errs) {
            if c == 0 {
                continue;
            }
            sum = sum.wrapping_add((i128::from(c) as u128).wrapping_mul(v));
            err = err.saturating_add(ev.saturating_mul(u128::from(c.unsigned_abs())));
        }
        (sum.min(sum.wrapping_neg()), err)
    }

    /// True when the angle test alone proves `scale * sum e_i angle_i` is
    /// not an integer.
    pub fn angle_excludes(&self, e: &[i64], scale: &BigInt) -> bool {
        let (dist, err) = self.angle_residual(e, scale);
        err < u128::MAX / 8 && dist > err
    }

    pub fn separation_bound(&self, e: &[i64], d: i64) -> SeparationBound {
        let g = self.g() as u64;
        let dl = (1..=g).product::<u64>() << g;
        let a = (-d).max(0) as u64;
        let b = d.max(0) as u64;
        let wp: u64 = e.iter().filter(|&&x| x > 0).map(|&x| x as u64).sum();
        let wm: u64 = e.iter().filter(|&&x| x < 0).map(|&x| x.unsigned_abs()).sum();
        let twice = (wp + 2 * a).max(wm + 2 * b);
        let exp = twice.div_ceil(2);
        let q = self.q().big();
        let qbits = (&q - 1u32).bits().max(1);
        let m_bound = BigInt::from(2) * q.pow(exp as u32);
        let log_m = 1 + exp * qbits;
        SeparationBound { dl, m_bound, eps_bits: (dl - 1) * log_m }
    }

    /// Decides exactly whether `prod alpha_i^e_i = q^d`.
    pub fn verify_relation(&self, e: &[i64], d: i64) -> bool {
        assert_eq!(e.len(), self.m(), "exponent vector has the wrong length");
        let total: i64 = e.iter().sum();
        if total != 2 * d {
            return false;
        }
        if e.iter().all(|&x| x == 0) {
            return true;
        }
        if self.angle_excludes(e, &BigInt::one()) {
            return false;
        }
        self.verify_exact(e, d)
    }

    fn verify_exact(&self, e: &[i64], d: i64) -> bool {
        let sep = self.separation_bound(e, d);
        let mag = sep.m_bound.bits();
        let w: u64 = e.iter().map(|x| x.unsigned_abs()).sum();
        let wbits = 64 - w.leading_zeros() as u64;
        let mut prec = u32::try_from(sep.eps_bits + mag + 2 * wbits + 64)
            .expect("verification precision fits u32");
        let q = self.q().big();
        let a = (-d).max(0) as u64;
        let b = d.max(0) as u64;
        loop {
            let roots = self.roots_at(prec + 16);
            let p = roots[0].prec;
            let mut lhs = CBall::from_int(&q, p).pow(a);
            let mut rhs = CBall::from_int(&q, p).pow(b);
            for (root, &x) in roots.iter().zip(e) {
                if x > 0 {
                    lhs = lhs.mul(&root.pow(x as u64));
                } else if x < 0 {
                    rhs = rhs.mul(&root.pow(x.unsigned_abs()));
                }
            }
            let gamma = lhs.sub(&rhs);
            if !gamma.contains_zero() {
                return false;
            }
            let limit = BigInt::one() << (u64::from(p) - sep.eps_bits.min(u64::from(p)));
            if u64::from(p) > sep.eps_bits && gamma.abs_upper() < limit {
                return true;
            }
            prec = p * 2;
        }
    }

    /// Order of `alpha_i / alpha_j` if it is a root of unity.
    pub fn ratio_torsion_order(&self, i: usize, j: usize) -> Option<u64> {
        if i == j {
            return Some(1);
        }
        let mut e = vec![0i64; self.m()];
        e[i] = 1;
        e[j] = -1;
        self.torsion_order(&e)
    }

    /// Smallest `b >= 1` with `b * sum e_i angle_i` an integer, when
    /// `sum e_i` is even and such `b` exists; `None` otherwise. The order
    /// always divides `D(g)`; the candidate is read off the angles at scale
    /// `D(g)` and then confirmed by exact verification.
    pub fn torsion_order(&self, e: &[i64]) -> Option<u64> {
        let total: i64 = e.iter().sum();
        if total % 2 != 0 {
            return None;
        }
        let dg = self.torsion.d.value().into();
        if self.angle_excludes(e, &dg) {
            return None;
        }
        let sbits = u32::try_from(dg.bits()).expect("D(g) size");
        let mut prec = 192 + sbits;
        loop {
            let ang = self.angles(prec);
            let mut sum = BigInt::zero();
            let mut err = BigInt::zero();
            for ((&c, v), ev) in e.iter().zip(&ang.values).zip(&ang.errs) {
                sum += v * c;
                err += ev * c.unsigned_abs();
            }
            let modulus = BigInt::one() << ang.prec;
            let scaled = sum.mod_floor(&modulus) * &dg;
            let err = err * &dg;
            // nearest integer to scaled / 2^prec
            let half = BigInt::one() << (ang.prec - 1);
            let n = (&scaled + &half) >> ang.prec;
            let dist = (&scaled - (&n << ang.prec)).abs();
            if err >= half {
                prec *= 2;
                continue;
            }
            if dist > err {
                return None;
            }
            let n = n.mod_floor(&dg);
            let b = (&dg / n.gcd(&dg)).to_u64()?;
            let bi = i64::try_from(b).ok()?;
            let scaled_e: Vec<i64> = e.iter().map(|&x| x.checked_mul(bi)).collect::<Option<_>>()?;
            let d = scaled_e.iter().sum::<i64>() / 2;
            return self.verify_relation(&scaled_e, d).then_some(b);
        }
    }

    pub fn is_small(&self) -> bool {
        (0..self.m()).any(|i| (i + 1..self.m()).any(|j| self.ratio_torsion_order(i, j).is_some()))
    }

    /// Exponent of the torsion found in the eigenvalue group among relations
    /// of weight `<= weight_bound`: the smallest base-change degree that
    /// removes it.
    pub fn torsion_exponent(&self, weight_bound: u64) -> u64 {
        torsion_orders(self, weight_bound).into_iter().fold(1, |acc, b| acc.lcm(&b))
    }

    /// No roots of unity other than 1 among the relations of weight up to
    /// the default search bound.
    pub fn is_sufficiently_large(&self) -> bool {
        self.is_sufficiently_large_within(default_weight_bound(self.g()))
    }

    pub fn is_sufficiently_large_within(&self, weight_bound: u64) -> bool {
        !self.is_small() && self.torsion_exponent(weight_bound) == 1
    }

    /// Base change by the exponent of the torsion subgroup, which is the
    /// least degree after which the group is torsion-free. Returns the new
    /// system and the degree used.
    pub fn ensure_sufficiently_large(&self) -> Result<(EigenvalueSystem, u64), EigenError> {
        self.ensure_sufficiently_large_within(default_weight_bound(self.g()))
    }

    pub fn ensure_sufficiently_large_within(
        &self,
        weight_bound: u64,
    ) -> Result<(EigenvalueSystem, u64), EigenError> {
        let mut exp = self.torsion_exponent(weight_bound);
        if exp == 1 {
            return Ok((self.clone(), 1));
        }
        loop {
            let degree = u32::try_from(exp).expect("base change degree fits u32");
            let sys = self.base_change(degree)?;
            let more = sys.torsion_exponent(weight_bound);
            if more == 1 {
                return Ok((sys, exp));
            }
            exp *= more;
        }
    }
}

/// Which of `+sqrt q`, `-sqrt q` are roots, decided exactly; `true` marks
/// the negative one.
fn fixed_root_values(radical: &IntPoly, q: PrimePower) -> Vec<bool> {
    match q.sqrt() {
        Some(s) => {
            let mut out = Vec::new();
            if radical.eval(&s).is_zero() {
                out.push(false);
            }
            if radical.eval(&-s).is_zero() {
                out.push(true);
            }
            out
        }
        None => {
            let t2q = IntPoly::new(vec![-q.big(), BigInt::zero(), BigInt::one()]).to_rational();
            let (_, rem) = radical.to_rational().div_rem(&t2q);
            if rem.is_zero() {
                vec![false, true]
            } else {
                Vec::new()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil_poly::validate_i64;

    pub(crate) fn sys(c: &[i64], q: u64) -> EigenvalueSystem {
        EigenvalueSystem::build(&validate_i64(c, q).unwrap()).unwrap()
    }

    fn four_root() -> EigenvalueSystem {
        sys(&[25, 0, 6, 0, 1], 5)
    }

    #[test]
    fn build_examples() {
        let s = sys(&[5, 0, 1], 5);
        assert_eq!(s.m(), 2);
        assert_eq!(s.iota(), &[1, 0]);
        assert!(s.fixed().is_empty());
        assert_eq!(s.r(), 1);
        let r = s.roots_f64();
        assert!(r[0].1 < 0.0 && r[1].1 > 0.0);

        let s = sys(&[25, 10, 1], 25);
        assert_eq!(s.m(), 1);
        assert_eq!(s.iota(), &[0]);
        assert_eq!(s.fixed(), &[0]);
        assert_eq!(s.r(), 0);
        assert_eq!(s.mult(), &[2]);

        let s = four_root();
        assert_eq!(s.m(), 4);
        let r: Vec<(i64, i64)> =
            s.roots_f64().iter().map(|(a, b)| (a.round() as i64, b.round() as i64)).collect();
        assert_eq!(r, vec![(-1, -2), (-1, 2), (1, -2), (1, 2)]);
        assert_eq!(s.iota(), &[1, 0, 3, 2]);
        assert_eq!(s.r(), 2);

        // (t^2 - 5)^2: both square roots of q are fixed
        let s = sys(&[25, 0, -10, 0, 1], 5);
        assert_eq!(s.fixed(), &[0, 1]);
        assert_eq!(s.mult(), &[2, 2]);
    }

    #[test]
    fn verify_examples() {
        let s = sys(&[5, 0, 1], 5);
        assert!(s.verify_relation(&[1, 1], 1));
        assert!(!s.verify_relation(&[2, 0], 1));
        assert!(s.verify_relation(&[4, 0], 2));
        assert!(!s.verify_relation(&[1, 1], 2));
        let s = four_root();
        assert!(s.verify_relation(&[1, 1, 1, 1], 2));
        // (1+2i)(-1+2i) = -5
        assert!(!s.verify_relation(&[0, 1, 0, 1], 1));
        assert!(s.verify_relation(&[0, 2, 0, 2], 2));
        assert!(s.verify_relation(&[2, 0, 2, 0], 2));
        assert!(s.verify_relation(&[1, 0, 0, 1], 1) == s.verify_relation(&[0, 1, 1, 0], 1));
    }

    #[test]
    fn exact_path_agrees_with_angle_filter() {
        let s = four_root();
        for e in [[1i64, -1, 0, 0], [2, 0, 2, 0], [0, 2, 0, 2], [1, 0, 1, 0], [3, 1, 2, 0]] {
            let total: i64 = e.iter().sum();
            if total % 2 == 0 {
                assert_eq!(s.verify_exact(&e, total / 2), s.verify_relation(&e, total / 2));
            }
        }
    }

    #[test]
    fn torsion_examples() {
        let s = sys(&[5, 0, 1], 5);
        assert_eq!(s.ratio_torsion_order(0, 1), Some(2));
        assert_eq!(s.ratio_torsion_order(1, 1), Some(1));
        assert!(s.is_small());
        let s = sys(&[5, -2, 1], 5);
        assert_eq!(s.ratio_torsion_order(0, 1), None);
        assert!(!s.is_small());
        let s = four_root();
        assert!(s.is_small());
        // (-1+2i) / (1-2i) = -1
        assert_eq!(s.ratio_torsion_order(1, 2), Some(2));
        // t^2 + q over q = 2: roots i sqrt 2, ratio -1; t^2 + 2t + 2: 1 +- i, ratio i
        let s = sys(&[2, 2, 1], 2);
        assert_eq!(s.ratio_torsion_order(0, 1), Some(4));
    }

    #[test]
    fn sufficiently_large_examples() {
        let s = sys(&[25, 10, 1], 25);
        assert!(s.is_sufficiently_large());
        assert!(!sys(&[5, 0, 1], 5).is_sufficiently_large());
        assert!(sys(&[5, -2, 1], 5).is_sufficiently_large());

        let (big, m) = sys(&[5, 0, 1], 5).ensure_sufficiently_large().unwrap();
        assert_eq!(m, 2);
        assert_eq!(big.poly().coeffs(), validate_i64(&[25, 10, 1], 25).unwrap().coeffs());
        let (same, m) = sys(&[5, -2, 1], 5).ensure_sufficiently_large().unwrap();
        assert_eq!((m, same.m()), (1, 2));
        let (big, m) = four_root().ensure_sufficiently_large().unwrap();
        assert_eq!(m, 2);
        assert_eq!(big.m(), 2);
        assert_eq!(big.mult(), &[2, 2]);
        assert_eq!(big.q().to_u64(), Some(25));
        let r: Vec<(i64, i64)> =
            big.roots_f64().iter().map(|(a, b)| (a.round() as i64, b.round() as i64)).collect();
        assert_eq!(r, vec![(-3, -4), (-3, 4)]);
    }

    #[test]
    fn mult_is_admissible() {
        for (c, q) in [
            (vec![5, 0, 1], 5u64),
            (vec![25, 10, 1], 25),
            (vec![25, 0, 6, 0, 1], 5),
            (vec![25, 0, -10, 0, 1], 5),
        ] {
            let s = sys(&c, q);
            let mult: Vec<i64> = s.mult().iter().map(|&x| x as i64).collect();
            assert!(s.verify_relation(&mult, s.g() as i64));
        }
    }
}
