//! Integer lattices (Hermite normal form, kernels, saturation, LLL) and
//! rank over a field.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Scalar;

/// Dense row-major matrix over a generic scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: Vec<Vec<T>>,
    pub ncols: usize,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: Vec<Vec<T>>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Self { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Rank by Gaussian elimination; `T` must be a field with exact zero
    /// tests.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank][col].clone();
            for i in rank + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let factor = rows[i][col].clone() / pivot.clone();
                for j in col..self.ncols {
                    let delta = factor.clone() * rows[rank][j].clone();
                    rows[i][j] = rows[i][j].clone() - delta;
                }
            }
            rank += 1;
        }
        rank
    }
}

pub type IntRow = Vec<BigInt>;

pub fn to_big(v: &[i64]) -> IntRow {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Integer row echelon form of `rows`, pivoting only in the first
/// `pivot_cols` columns but carrying every column along. Pivots are
/// positive and entries above a pivot are reduced into `[0, pivot)`.
/// Rows whose pivot part vanished are returned after the echelon rows.
/// Returns `(rows, rank)`.
pub fn echelon(mut rows: Vec<IntRow>, pivot_cols: usize) -> (Vec<IntRow>, usize) {
    let mut rank = 0;
    for col in 0..pivot_cols {
        loop {
            let mut best: Option<usize> = None;
            for i in rank..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(rank, b);
            let mut done = true;
            for i in rank + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let quo = rows[i][col].div_floor(&rows[rank][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[rank], &quo);
                if !tail[0][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[rank][col].is_negative() {
                    for x in rows[rank].iter_mut() {
                        *x = -&*x;
                    }
                }
                for i in 0..rank {
                    let quo = rows[i][col].div_floor(&rows[rank][col]);
                    if !quo.is_zero() {
                        let (head, tail) = rows.split_at_mut(rank);
                        sub_multiple(&mut head[i], &tail[0], &quo);
                    }
                }
                rank += 1;
                break;
            }
        }
        if rank == rows.len() {
            break;
        }
    }
    (rows, rank)
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= k * s;
        }
    }
}

/// Hermite normal form basis (nonzero rows only) of the lattice spanned by
/// `rows`.
pub fn hnf(rows: &[IntRow], ncols: usize) -> Vec<IntRow> {
    let (mut out, rank) = echelon(rows.to_vec(), ncols);
    out.truncate(rank);
    out
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}` where `A` has the
/// given rows of length `n`.
pub fn kernel(rows: &[IntRow], n: usize) -> Vec<IntRow> {
    let r = rows.len();
    let aug: Vec<IntRow> = (0..n)
        .map(|i| {
            let mut row: IntRow = rows.iter().map(|a| a[i].clone()).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let (ech, rank) = echelon(aug, r);
    let basis: Vec<IntRow> = ech[rank..].iter().map(|row| row[r..].to_vec()).collect();
    hnf(&basis, n)
}

/// Saturation `(L ⊗ Q) ∩ Z^n` of the lattice spanned by `rows`.
pub fn saturate(rows: &[IntRow], n: usize) -> Vec<IntRow> {
    let k = kernel(rows, n);
    if k.is_empty() {
        return identity(n);
    }
    kernel(&k, n)
}

pub fn identity(n: usize) -> Vec<IntRow> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect()
}

/// A sublattice of `Z^n` kept in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
    pub basis: Vec<IntRow>,
    pivots: Vec<usize>,
    small: Option<Vec<Vec<i128>>>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Self::from_generators(&[], dim)
    }

    pub fn from_generators(rows: &[IntRow], dim: usize) -> Self {
        let basis = hnf(rows, dim);
        let pivots = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero HNF row"))
            .collect();
        let small = basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_i128().filter(|v| v.abs() < 1 << 60)).collect())
            .collect::<Option<Vec<Vec<i128>>>>();
        Self { dim, basis, pivots, small }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn with(&self, extra: &[IntRow]) -> Self {
        let mut rows = self.basis.clone();
        rows.extend_from_slice(extra);
        Self::from_generators(&rows, self.dim)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let (quo, rem) = w[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return false;
            }
            sub_multiple(&mut w, row, &quo);
        }
        w.iter().all(Zero::is_zero)
    }

    /// Membership for machine-size vectors; falls back to `BigInt` when the
    /// basis entries are large.
    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let Some(small) = &self.small else {
            return self.contains(&to_big(v));
        };
        let mut w: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
        for (row, &p) in small.iter().zip(&self.pivots) {
            if w[p] == 0 {
                continue;
            }
            if w[p] % row[p] != 0 {
                return false;
            }
            let quo = w[p] / row[p];
            for (x, r) in w.iter_mut().zip(row) {
                match r.checked_mul(quo).and_then(|t| x.checked_sub(t)) {
                    Some(y) => *x = y,
                    None => return self.contains(&to_big(v)),
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn saturation(&self) -> Lattice {
        Lattice::from_generators(&saturate(&self.basis, self.dim), self.dim)
    }
}

/// Integral LLL reduction with parameter 3/4 on linearly independent rows.
/// Exact over `BigInt` (no rational Gram-Schmidt).
pub fn lll(rows: &[IntRow]) -> Vec<IntRow> {
    let n = rows.len();
    if n <= 1 {
        return rows.to_vec();
    }
    // 1-based bookkeeping: b[1..=n], d[0..=n], lam[k][j] for j < k.
    let mut b: Vec<IntRow> = std::iter::once(Vec::new()).chain(rows.iter().cloned()).collect();
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    let dot = |x: &IntRow, y: &IntRow| -> BigInt { x.iter().zip(y).map(|(a, c)| a * c).sum() };

    d[0] = BigInt::one();
    d[1] = dot(&b[1], &b[1]);
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll: rows are linearly dependent");
                    d[k] = u;
                }
            }
        }
        loop {
            redi(&mut b, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(4) * &d[k] * &d[k - 2];
            let rhs = BigInt::from(3) * &d[k - 1] * &d[k - 1]
                - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                // swap k and k-1
                b.swap(k, k - 1);
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    redi(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    b.remove(0);
    b
}

fn redi(b: &mut [IntRow], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let two_lam = BigInt::from(2) * &lam[k][l];
    if two_lam.abs() <= d[l] {
        return;
    }
    // nearest integer to lam/d
    let q = (&two_lam + &d[l]).div_floor(&(BigInt::from(2) * &d[l]));
    let (head, tail) = b.split_at_mut(k);
    sub_multiple(&mut tail[0], &head[l], &q);
    lam[k][l] -= &q * &d[l];
    for i in 1..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Vec<IntRow> {
        rows.iter().map(|r| to_big(r)).collect()
    }

    #[test]
    fn hnf_and_membership() {
        let l = Lattice::from_generators(&m(&[&[2, 4, 6], &[0, 3, 3], &[2, 7, 9]]), 3);
        assert_eq!(l.rank(), 2);
        assert!(l.contains_i64(&[2, 1, 3]));
        assert!(!l.contains_i64(&[1, 2, 3]));
        assert!(l.contains_i64(&[0, 0, 0]));
    }

    #[test]
    fn kernel_and_saturation() {
        let k = kernel(&m(&[&[1, 1, -1]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1] - &v[2]).is_zero());
        }
        let l = Lattice::from_generators(&m(&[&[2, 0], &[0, 4]]), 2);
        assert_eq!(l.saturation(), Lattice::from_generators(&identity(2), 2));
        let l = Lattice::from_generators(&m(&[&[2, 2, 0]]), 3);
        assert!(l.saturation().contains_i64(&[1, 1, 0]));
        assert!(!l.contains_i64(&[1, 1, 0]));
    }

    #[test]
    fn field_rank() {
        let q = |a: i64| BigRational::from_integer(a.into());
        let mat = Matrix::new(vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]], 2);
        assert_eq!(mat.rank(), 2);
    }

    fn gram_schmidt(rows: &[IntRow]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = rows.len();
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational {
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        };
        let mut star: Vec<Vec<BigRational>> = Vec::new();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let bi: Vec<BigRational> = rows[i].iter().map(q).collect();
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = dot(&bi, &star[j]) / dot(&star[j], &star[j]);
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            star.push(v);
        }
        let norms = star.iter().map(|v| dot(v, v)).collect();
        (mu, norms)
    }

    #[test]
    fn lll_output_is_reduced_basis() {
        let rows = m(&[&[1, 0, 0, 1345], &[0, 1, 0, 35], &[0, 0, 1, 154]]);
        let red = lll(&rows);
        assert_eq!(Lattice::from_generators(&rows, 4), Lattice::from_generators(&red, 4));
        let (mu, norms) = gram_schmidt(&red);
        let half = BigRational::new(1.into(), 2.into());
        let three_quarters = BigRational::new(3.into(), 4.into());
        for i in 0..red.len() {
            for j in 0..i {
                assert!(mu[i][j].abs() <= half);
            }
            if i > 0 {
                let lhs = &norms[i] + &mu[i][i - 1] * &mu[i][i - 1] * &norms[i - 1];
                assert!(lhs >= &three_quarters * &norms[i - 1]);
            }
        }
        // (0, 22, -5, 0) is in the lattice; the first vector can be no longer
        // than 2 times its length
        let norm = |r: &IntRow| r.iter().map(|x| x * x).sum::<BigInt>();
        assert!(norm(&red[0]) <= BigInt::from(2 * 509));
    }
}
