//! Hilbert basis of the semigroup of nonnegative admissible functions and
//! decompositions over it.
//!
//! The semigroup is `L ∩ N^m` for the exponent lattice `L`. Its Hilbert
//! basis is the set of nonnegative elements of the Graver basis of `L`
//! (the conformally minimal nonzero lattice vectors), computed by
//! completion: sums of pairs are reduced by conformal subtraction and
//! nonzero remainders are added until every sum reduces to zero.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::eigensystem::EigenvalueSystem;
use crate::linalg::{to_i64, Lattice};
use crate::relations::RelationLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("the base field is not sufficiently large")]
    NotSufficientlyLarge,
    #[error("vector {0:?} is not in the semigroup")]
    NotInSemigroup(Vec<i64>),
    #[error("weight {weight} does not exceed H = {h}")]
    WeightNotAboveH { weight: u64, h: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    /// Generators by increasing weight, ties in decreasing lexicographic
    /// order.
    pub generators: Vec<Vec<i64>>,
    /// Largest generator weight.
    pub h: u64,
}

fn weight(v: &[i64]) -> u64 {
    v.iter().map(|x| x.unsigned_abs()).sum()
}

/// `a ⊑ b`: same sign pattern where `a` is nonzero and `|a_i| <= |b_i|`.
fn conformal_le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || (x.signum() == y.signum() && x.abs() <= y.abs()))
}

fn normal_form(mut v: Vec<i64>, g: &[Vec<i64>]) -> Vec<i64> {
    loop {
        if v.iter().all(|&x| x == 0) {
            return v;
        }
        let Some(h) = g.iter().find(|h| conformal_le(h, &v)) else { return v };
        for (x, y) in v.iter_mut().zip(h) {
            *x -= y;
        }
    }
}

/// Conformally minimal nonzero vectors of the lattice.
pub fn graver_basis(lattice: &Lattice) -> Vec<Vec<i64>> {
    let mut g: Vec<Vec<i64>> = Vec::new();
    for b in &lattice.basis {
        let b = to_i64(b).expect("lattice basis fits i64");
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        g.push(b);
        g.push(neg);
    }
    let mut seen: HashSet<Vec<i64>> = g.iter().cloned().collect();
    let mut queue: VecDeque<(usize, usize)> =
        (0..g.len()).flat_map(|i| (i + 1..g.len()).map(move |j| (i, j))).collect();
    while let Some((i, j)) = queue.pop_front() {
        let s: Vec<i64> = g[i].iter().zip(&g[j]).map(|(a, b)| a + b).collect();
        let r = normal_form(s, &g);
        if r.iter().all(|&x| x == 0) || !seen.insert(r.clone()) {
            continue;
        }
        let k = g.len();
        g.push(r);
        queue.extend((0..k).map(|i| (i, k)));
    }
    let minimal: Vec<Vec<i64>> = g
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| !g.iter().any(|h| h != *v && h.iter().any(|&x| x != 0) && conformal_le(h, v)))
        .cloned()
        .collect();
    minimal
}

fn canonical_sort(v: &mut [Vec<i64>]) {
    v.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| b.cmp(a)));
}

/// Largest box enumerated by [`full_rank_hilbert_basis`].
const BOX_LIMIT: u128 = 1 << 22;

/// Hilbert basis of `L ∩ N^m` for a lattice of full rank. Each axis meets
/// `L` in `k_i Z`; any other generator lies in the box `0 <= e_i < k_i`
/// (otherwise subtracting `k_i e_i` splits it), so the generators are the
/// box points with no smaller generator below them, plus the `k_i e_i`.
/// `None` when the box holds too many lattice points.
fn full_rank_hilbert_basis(lat: &Lattice) -> Option<Vec<Vec<i64>>> {
    let m = lat.dim;
    let rows: Vec<Vec<i64>> = lat.basis.iter().map(|r| to_i64(r)).collect::<Option<_>>()?;
    let det: u128 = (0..m).map(|j| rows[j][j].unsigned_abs() as u128).product();
    let k: Vec<i64> = (0..m)
        .map(|i| {
            let mut e = vec![0i64; m];
            (1..=det as i64).find(|&k| {
                e[i] = k;
                lat.contains_i64(&e)
            })
        })
        .collect::<Option<_>>()?;
    let volume: u128 = k.iter().map(|&x| x as u128).product();
    if volume / det > BOX_LIMIT {
        return None;
    }
    // lattice points c * rows in the box, column by column (rows are in
    // echelon form with pivot j in row j)
    fn go(j: usize, rows: &[Vec<i64>], k: &[i64], e: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = k.len();
        if j == m {
            out.push(e.clone());
            return;
        }
        let d = rows[j][j];
        let lo = (-e[j]).div_euclid(d) + i64::from((-e[j]).rem_euclid(d) != 0);
        let hi = (k[j] - 1 - e[j]).div_euclid(d);
        for c in lo..=hi {
            for (x, y) in e[j..].iter_mut().zip(&rows[j][j..]) {
                *x += c * y;
            }
            go(j + 1, rows, k, e, out);
            for (x, y) in e[j..].iter_mut().zip(&rows[j][j..]) {
                *x -= c * y;
            }
        }
    }
    let mut points = Vec::new();
    go(0, &rows, &k, &mut vec![0i64; m], &mut points);
    points.retain(|p| p.iter().any(|&x| x != 0));
    for (i, &ki) in k.iter().enumerate() {
        let mut e = vec![0i64; m];
        e[i] = ki;
        points.push(e);
    }
    canonical_sort(&mut points);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for p in points {
        if !basis.iter().any(|h| h.iter().zip(&p).all(|(a, b)| a <= b)) {
            basis.push(p);
        }
    }
    Some(basis)
}

/// Hilbert basis of `L ∩ N^m` for the exponent lattice `L`, with no
/// precondition on the field.
pub fn hilbert_basis_formal(lattice: &RelationLattice) -> HilbertBasis {
    let lat = lattice.exponent_lattice();
    let full = if lat.rank() == lat.dim { full_rank_hilbert_basis(&lat) } else { None };
    let mut generators: Vec<Vec<i64>> = full.unwrap_or_else(|| {
        graver_basis(&lat).into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect()
    });
    canonical_sort(&mut generators);
    let h = generators.iter().map(|v| weight(v)).max().unwrap_or(0);
    HilbertBasis { generators, h }
}

/// Hilbert basis of the semigroup of nonnegative admissible functions of a
/// sufficiently large system.
pub fn hilbert_basis(
    sys: &EigenvalueSystem,
    lattice: &RelationLattice,
) -> Result<HilbertBasis, ConeError> {
    if !sys.is_sufficiently_large() {
        return Err(ConeError::NotSufficientlyLarge);
    }
    Ok(hilbert_basis_formal(lattice))
}

/// Writes `e` as a sum of generators (greedy in canonical order, with
/// backtracking).
pub fn decompose(e: &[i64], basis: &HilbertBasis) -> Result<Vec<Vec<i64>>, ConeError> {
    fn go(
        rest: &mut Vec<i64>,
        start: usize,
        gens: &[Vec<i64>],
        out: &mut Vec<usize>,
        dead: &mut HashSet<(Vec<i64>, usize)>,
    ) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return true;
        }
        if dead.contains(&(rest.clone(), start)) {
            return false;
        }
        for k in start..gens.len() {
            if gens[k].iter().zip(rest.iter()).all(|(g, r)| g <= r) {
                for (r, g) in rest.iter_mut().zip(&gens[k]) {
                    *r -= g;
                }
                out.push(k);
                if go(rest, k, gens, out, dead) {
                    return true;
                }
                out.pop();
                for (r, g) in rest.iter_mut().zip(&gens[k]) {
                    *r += g;
                }
            }
        }
        dead.insert((rest.clone(), start));
        false
    }
    if e.iter().any(|&x| x < 0) {
        return Err(ConeError::NotInSemigroup(e.to_vec()));
    }
    let mut rest = e.to_vec();
    let mut out = Vec::new();
    if go(&mut rest, 0, &basis.generators, &mut out, &mut HashSet::new()) {
        Ok(out.into_iter().map(|k| basis.generators[k].clone()).collect())
    } else {
        Err(ConeError::NotInSemigroup(e.to_vec()))
    }
}

/// `e = f1 + f2` with `f2` the first generator of the decomposition of `e`.
pub fn split_heavy(
    e: &[i64],
    basis: &HilbertBasis,
) -> Result<(Vec<i64>, Vec<i64>), ConeError> {
    let w = weight(e);
    if w <= basis.h {
        return Err(ConeError::WeightNotAboveH { weight: w, h: basis.h });
    }
    let parts = decompose(e, basis)?;
    let f2 = parts[0].clone();
    let f1: Vec<i64> = e.iter().zip(&f2).map(|(a, b)| a - b).collect();
    Ok((f1, f2))
}

/// True when no splitting `u = a + b` into nonzero nonnegative vectors has
/// both parts in the semigroup.
pub fn is_minimal(u: &[i64], lattice: &Lattice) -> bool {
    let m = u.len();
    let mut a = vec![0i64; m];
    loop {
        let mut k = 0;
        while k < m {
            if a[k] < u[k] {
                a[k] += 1;
                break;
            }
            a[k] = 0;
            k += 1;
        }
        if k == m {
            return true;
        }
        if a == u {
            continue;
        }
        let b: Vec<i64> = u.iter().zip(&a).map(|(x, y)| x - y).collect();
        if lattice.contains_i64(&a) && lattice.contains_i64(&b) {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::discover;
    use crate::weil_poly::validate_i64;

    fn lattice(c: &[i64], q: u64) -> (EigenvalueSystem, RelationLattice) {
        let s = EigenvalueSystem::build(&validate_i64(c, q).unwrap()).unwrap();
        let l = discover(&s, 8);
        (s, l)
    }

    fn four_root_basis() -> HilbertBasis {
        hilbert_basis_formal(&lattice(&[25, 0, 6, 0, 1], 5).1)
    }

    #[test]
    fn basis_examples() {
        let (s, l) = lattice(&[25, 10, 1], 25);
        let hb = hilbert_basis(&s, &l).unwrap();
        assert_eq!(hb.generators, vec![vec![2]]);
        assert_eq!(hb.h, 2);
        let (s, l) = lattice(&[5, -2, 1], 5);
        let hb = hilbert_basis(&s, &l).unwrap();
        assert_eq!(hb.generators, vec![vec![1, 1]]);
        let hb = four_root_basis();
        assert_eq!(
            hb.generators,
            vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![2, 0, 2, 0], vec![0, 2, 0, 2]]
        );
        assert_eq!(hb.h, 4);
        let (s, l) = lattice(&[25, 0, 6, 0, 1], 5);
        assert_eq!(hilbert_basis(&s, &l), Err(ConeError::NotSufficientlyLarge));
    }

    #[test]
    fn decompositions() {
        let hb = four_root_basis();
        assert_eq!(decompose(&[3, 1, 2, 0], &hb).unwrap(), vec![vec![1, 1, 0, 0], vec![2, 0, 2, 0]]);
        assert_eq!(decompose(&[1, 1, 1, 1], &hb).unwrap(), vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        assert!(decompose(&[0, 0, 0, 0], &hb).unwrap().is_empty());
        assert!(matches!(decompose(&[1, 0, 1, 0], &hb), Err(ConeError::NotInSemigroup(_))));
        assert_eq!(split_heavy(&[3, 1, 2, 0], &hb).unwrap(), (vec![2, 0, 2, 0], vec![1, 1, 0, 0]));
        assert_eq!(split_heavy(&[2, 2, 1, 1], &hb).unwrap(), (vec![1, 1, 1, 1], vec![1, 1, 0, 0]));
        assert_eq!(
            split_heavy(&[1, 1, 0, 0], &hb),
            Err(ConeError::WeightNotAboveH { weight: 2, h: 4 })
        );
    }

    #[test]
    fn generators_are_minimal() {
        let (_, l) = lattice(&[25, 0, 6, 0, 1], 5);
        let lat = l.exponent_lattice();
        for u in four_root_basis().generators {
            assert!(is_minimal(&u, &lat));
        }
        assert!(!is_minimal(&[2, 2, 0, 0], &lat));
    }

    #[test]
    fn full_rank_paths_agree() {
        // {x in Z^3 : x_1 + 2 x_2 + 3 x_3 = 0 mod 6}
        let lat = Lattice::from_generators(
            &[crate::linalg::to_big(&[6, 0, 0]), crate::linalg::to_big(&[4, 1, 0]), crate::linalg::to_big(&[3, 0, 1])],
            3,
        );
        let mut a = full_rank_hilbert_basis(&lat).unwrap();
        let mut b: Vec<Vec<i64>> =
            graver_basis(&lat).into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect();
        canonical_sort(&mut a);
        canonical_sort(&mut b);
        assert_eq!(a, b);
        assert!(a.contains(&vec![6, 0, 0]) && a.contains(&vec![0, 3, 0]) && a.contains(&vec![0, 0, 2]));
    }

    #[test]
    fn graver_of_parity_lattice() {
        // {x in Z^2 : x_1 + x_2 even}
        let lat = Lattice::from_generators(&[crate::linalg::to_big(&[1, 1]), crate::linalg::to_big(&[0, 2])], 2);
        let mut g = graver_basis(&lat);
        g.sort();
        assert_eq!(
            g,
            vec![vec![-2, 0], vec![-1, -1], vec![-1, 1], vec![0, -2], vec![0, 2], vec![1, -1], vec![1, 1], vec![2, 0]]
        );
    }
}
