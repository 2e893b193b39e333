//! Verdicts on exotic Tate classes assembled from relations, the cone and
//! the eigenbasis model.

use std::fmt;

use thiserror::Error;

use crate::cone::{hilbert_basis, hilbert_basis_formal, ConeError, HilbertBasis};
use crate::eigensystem::{EigenError, EigenvalueSystem, DEFAULT_PRECISION_CAP};
use crate::relations::{
    default_weight_bound, discover, minimal_reduced_within, rank_decision, reduce_nontrivial,
    reduced_functions, small_field_reduced, AdmissibleFunction, RankDecision, ReducedSpace,
    RelationError, RelationLattice,
};
use crate::linalg::to_i64;
use crate::weil_poly::WeilPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeatVerdict {
    Neat,
    NotNeat,
    /// No reduced function of weight up to the bound over any field checked.
    NeatUpToBound(u64),
}

impl fmt::Display for NeatVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Neat => f.write_str("Neat"),
            Self::NotNeat => f.write_str("NotNeat"),
            Self::NeatUpToBound(w) => write!(f, "NeatUpToBound({w})"),
        }
    }
}

/// A reduced admissible function over the extension of the given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub function: AdmissibleFunction,
    pub base_change: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExoticVerdict {
    pub exists: bool,
    pub witness: Option<Witness>,
    /// True when absence was proved exactly rather than up to the weight
    /// bound.
    pub certified: bool,
    pub searched_weight: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Search weight; `2 (2g)^2` when `None`.
    pub weight_bound: Option<u64>,
    /// Report the minimal exotic power only when it is at most this value.
    pub max_power: Option<u64>,
    pub precision_cap: u32,
    /// Also compute the formal Hilbert basis over the base field.
    pub base_field_basis: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            weight_bound: None,
            max_power: None,
            precision_cap: DEFAULT_PRECISION_CAP,
            base_field_basis: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateReport {
    pub poly: WeilPolynomial,
    /// Degree of the extension making the field sufficiently large.
    pub base_change: u64,
    /// Distinct roots after base change.
    pub m: usize,
    /// Their multiplicities, in canonical root order.
    pub mult: Vec<usize>,
    pub r: usize,
    pub gamma_rank: usize,
    pub rank: RankDecision,
    pub weight_bound: u64,
    pub certified_weight: u64,
    pub lattice: RelationLattice,
    pub minimal_reduced: Option<Witness>,
    pub minimal_exotic_power: Option<u64>,
    pub power_bound: Option<u64>,
    /// Hilbert basis over the sufficiently large field.
    pub hilbert_basis: HilbertBasis,
    /// Formal Hilbert basis of the relations over the base field, when
    /// requested.
    pub base_field_hilbert_basis: Option<HilbertBasis>,
    pub neat: NeatVerdict,
}

/// A reduced admissible function of weight `2d` with `e <= n * mult`, the
/// lexicographically largest if several exist.
pub fn exceptional_witness(sys: &EigenvalueSystem, n: usize, d: usize) -> Option<AdmissibleFunction> {
    assert!(d >= 2 && d <= n * sys.g(), "d out of range");
    let caps: Vec<i64> = sys.mult().iter().map(|&k| (n * k) as i64).collect();
    reduced_functions(sys, 2 * d as u64, Some(&caps))
        .into_iter()
        .filter(|f| f.weight == 2 * d as u64)
        .max_by(|a, b| a.e.cmp(&b.e))
}

/// An exceptional Tate form of degree `2d` exists on `X^n`.
pub fn exceptional_exists(sys: &EigenvalueSystem, n: usize, d: usize) -> bool {
    exceptional_witness(sys, n, d).is_some()
}

/// Reduced functions can only be missed by a bounded search when the
/// system has two or more orbits, or one orbit over a small field.
fn search_is_complete(sys: &EigenvalueSystem) -> bool {
    sys.r() == 0 || (sys.r() == 1 && !sys.is_small())
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Looks for a reduced function over every extension of degree dividing the
/// torsion exponent, starting with the base field. Over a small field the
/// torsion-ratio construction is tried when the search comes up empty; over
/// the sufficiently large field a nontrivial lattice vector is reduced.
fn witness_chain(
    sys: &EigenvalueSystem,
    big: &EigenvalueSystem,
    m: u64,
    lattice: &RelationLattice,
    weight_bound: u64,
) -> Result<ExoticVerdict, TateError> {
    let mut certified = true;
    let mut searched = weight_bound;
    let found = |function, base_change, searched| ExoticVerdict {
        exists: true,
        witness: Some(Witness { function, base_change }),
        certified: true,
        searched_weight: searched,
    };
    for j in divisors(m).into_iter().filter(|&j| j < m) {
        let sj = if j == 1 { sys.clone() } else { sys.base_change(j as u32)? };
        if !sj.is_small() {
            // nontrivial relations here persist over the larger field
            continue;
        }
        let (f, w) = minimal_reduced_within(&sj, weight_bound);
        if let Some(f) = f {
            return Ok(found(f, j, w));
        }
        if let Ok(f) = small_field_reduced(&sj) {
            return Ok(found(f, j, w));
        }
        searched = searched.min(w);
        certified &= search_is_complete(&sj) && w == weight_bound;
    }
    let (f, w) = minimal_reduced_within(big, weight_bound);
    if let Some(f) = f {
        return Ok(found(f, m, w));
    }
    let space = ReducedSpace::new(big);
    let nontrivial = lattice.reduced().basis.iter().find_map(|f| {
        let f = to_i64(f).expect("reduced basis fits i64");
        f[..space.n_orbits()].iter().any(|&x| x != 0).then(|| space.lift_signed(&f))
    });
    if let Some(e) = nontrivial {
        let f = reduce_nontrivial(big, &e)?;
        return Ok(found(f, m, w));
    }
    searched = searched.min(w).min(lattice.certified_weight);
    certified &= search_is_complete(big);
    Ok(ExoticVerdict { exists: false, witness: None, certified, searched_weight: searched })
}

/// Some self-power over some finite extension carries an exotic class.
pub fn exotic_exists_any_power(sys: &EigenvalueSystem) -> Result<ExoticVerdict, TateError> {
    let w = default_weight_bound(sys.g());
    let (big, m) = sys.ensure_sufficiently_large_within(w)?;
    let lattice = discover(&big, w);
    witness_chain(sys, &big, m, &lattice, w)
}

/// Least `n` such that some reduced function of weight `<= cap` fits under
/// `n * mult`.
pub fn minimal_exotic_power(sys: &EigenvalueSystem, cap: u64) -> Option<u64> {
    assert!(cap >= 4, "weight cap must be at least 4");
    reduced_functions(sys, cap, None)
        .iter()
        .map(|f| {
            f.e.iter()
                .zip(sys.mult())
                .map(|(&x, &k)| (x as u64).div_ceil(k as u64))
                .max()
                .unwrap_or(0)
        })
        .min()
}

/// Twice the degree of the minimal reduced function within the default
/// search weight.
pub fn power_bound(sys: &EigenvalueSystem) -> Option<u64> {
    let (f, _) = minimal_reduced_within(sys, default_weight_bound(sys.g()));
    f.map(|f| 2 * f.degree as u64)
}

/// Largest Hilbert basis generator weight of a sufficiently large system.
pub fn degree_bound_h(sys: &EigenvalueSystem, lattice: &RelationLattice) -> Result<u64, ConeError> {
    Ok(hilbert_basis(sys, lattice)?.h)
}

/// Same as [`degree_bound_h`] with the precondition dropped.
pub fn degree_bound_h_formal(lattice: &RelationLattice) -> u64 {
    hilbert_basis_formal(lattice).h
}

pub fn neat_decision(poly: &WeilPolynomial) -> Result<TateReport, TateError> {
    neat_decision_with(poly, &AnalysisOptions::default())
}

pub fn neat_decision_with(
    poly: &WeilPolynomial,
    opts: &AnalysisOptions,
) -> Result<TateReport, TateError> {
    let w = opts.weight_bound.unwrap_or_else(|| default_weight_bound(poly.g()));
    let sys = EigenvalueSystem::build_with_cap(poly, opts.precision_cap)?;
    let (big, m) = sys.ensure_sufficiently_large_within(w)?;
    let lattice = discover(&big, w).require_torsion_free()?;
    let rank = rank_decision(&big, &lattice)?;
    let basis = hilbert_basis_formal(&lattice);
    let base_basis = match (opts.base_field_basis, m) {
        (false, _) => None,
        (true, 1) => Some(basis.clone()),
        (true, _) => Some(hilbert_basis_formal(&discover(&sys, w))),
    };
    let verdict = witness_chain(&sys, &big, m, &lattice, w)?;
    let neat = match (&verdict.witness, verdict.certified) {
        (Some(_), _) => NeatVerdict::NotNeat,
        (None, true) => NeatVerdict::Neat,
        (None, false) => NeatVerdict::NeatUpToBound(verdict.searched_weight),
    };
    let exotic_power = if w >= 4 { minimal_exotic_power(&sys, w) } else { None };
    let exotic_power = exotic_power.filter(|&p| opts.max_power.is_none_or(|cap| p <= cap));
    Ok(TateReport {
        poly: poly.clone(),
        base_change: m,
        m: big.m(),
        mult: big.mult().to_vec(),
        r: big.r(),
        gamma_rank: lattice.gamma_rank,
        rank,
        weight_bound: w,
        certified_weight: lattice.certified_weight,
        power_bound: verdict.witness.as_ref().map(|x| 2 * x.function.degree as u64),
        minimal_reduced: verdict.witness,
        minimal_exotic_power: exotic_power,
        hilbert_basis: basis,
        base_field_hilbert_basis: base_basis,
        lattice,
        neat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil_poly::validate_i64;

    fn sys(c: &[i64], q: u64) -> EigenvalueSystem {
        EigenvalueSystem::build(&validate_i64(c, q).unwrap()).unwrap()
    }

    #[test]
    fn exceptional_examples() {
        let s = sys(&[25, 0, 6, 0, 1], 5);
        assert_eq!(exceptional_witness(&s, 2, 2).unwrap().e, vec![2, 0, 2, 0]);
        assert!(!exceptional_exists(&s, 1, 2));
        assert!(!exceptional_exists(&sys(&[25, 10, 1], 25), 2, 2));
    }

    #[test]
    fn exotic_examples() {
        let v = exotic_exists_any_power(&sys(&[25, 0, 6, 0, 1], 5)).unwrap();
        assert!(v.exists);
        assert_eq!(v.witness.unwrap().function.e, vec![2, 0, 2, 0]);
        let v = exotic_exists_any_power(&sys(&[5, -2, 1], 5)).unwrap();
        assert!(!v.exists && v.certified);
        let v = exotic_exists_any_power(&sys(&[5, 0, 1], 5)).unwrap();
        assert_eq!(v.witness.unwrap().function.e, vec![4, 0]);
    }

    #[test]
    fn power_examples() {
        let four = sys(&[25, 0, 6, 0, 1], 5);
        assert_eq!(minimal_exotic_power(&four, 16), Some(2));
        assert_eq!(minimal_exotic_power(&sys(&[5, 0, 1], 5), 8), Some(4));
        assert_eq!(minimal_exotic_power(&sys(&[5, -2, 1], 5), 8), None);
        assert_eq!(power_bound(&four), Some(4));
        assert_eq!(power_bound(&sys(&[5, 0, 1], 5)), Some(4));
        assert_eq!(power_bound(&sys(&[5, -2, 1], 5)), None);
    }

    #[test]
    fn degree_bounds() {
        let four = sys(&[25, 0, 6, 0, 1], 5);
        assert_eq!(degree_bound_h_formal(&discover(&four, 8)), 4);
        let e = sys(&[5, -2, 1], 5);
        assert_eq!(degree_bound_h(&e, &discover(&e, 8)), Ok(2));
        let p = sys(&[25, 10, 1], 25);
        assert_eq!(degree_bound_h(&p, &discover(&p, 8)), Ok(2));
        assert_eq!(degree_bound_h(&four, &discover(&four, 8)), Err(ConeError::NotSufficientlyLarge));
    }

    #[test]
    fn neat_examples() {
        let r = neat_decision(&validate_i64(&[5, -2, 1], 5).unwrap()).unwrap();
        assert_eq!((r.neat, r.base_change, r.hilbert_basis.h), (NeatVerdict::Neat, 1, 2));
        let opts = AnalysisOptions { base_field_basis: true, ..Default::default() };
        let r = neat_decision_with(&validate_i64(&[25, 0, 6, 0, 1], 5).unwrap(), &opts).unwrap();
        assert_eq!(r.neat, NeatVerdict::NotNeat);
        let w = r.minimal_reduced.unwrap();
        assert_eq!((w.function.e, w.base_change), (vec![2, 0, 2, 0], 1));
        assert_eq!(r.minimal_exotic_power, Some(2));
        assert_eq!(r.base_change, 2);
        assert_eq!(r.hilbert_basis.generators, vec![vec![1, 1]]);
        assert_eq!(r.base_field_hilbert_basis.unwrap().h, 4);
        // a small field: (i sqrt 5)^4 = 25 gives an exotic class on X^4
        let r = neat_decision(&validate_i64(&[5, 0, 1], 5).unwrap()).unwrap();
        assert_eq!((r.neat, r.base_change, r.m), (NeatVerdict::NotNeat, 2, 1));
        // (t^2 - 5)^2: no reduced function over F_5 or F_25
        let r = neat_decision(&validate_i64(&[25, 0, -10, 0, 1], 5).unwrap()).unwrap();
        assert_eq!(r.neat, NeatVerdict::Neat);
        assert_eq!(r.base_change, 2);
    }
}
