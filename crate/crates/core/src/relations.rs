//! Multiplicative relations among the eigenvalues: classification,
//! discovery of the relation lattice, and the passage from nontrivial to
//! reduced admissible functions.
//!
//! Discovery works in reduced coordinates. Modulo the trivial relations
//! `alpha * (q / alpha) = q`, an exponent vector `e` is determined by
//! `f_o = e_i - e_iota(i)` for one representative `i` of each two-element
//! orbit, together with the exponents on the fixed roots. With `phi` the
//! angle of a root in turns, `e` is admissible exactly when `sum f` is even
//! and `sum f_j phi_j` is an integer.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::eigensystem::EigenvalueSystem;
use crate::linalg::{lll, to_big, to_i64, IntRow, Lattice};

/// Cap on enumeration nodes per search.
pub const ENUMERATION_BUDGET: u64 = 40_000_000;

/// Default search weight `2 (2g)^2`.
pub fn default_weight_bound(g: usize) -> u64 {
    let n = 2 * g as u64;
    2 * n * n
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("the base field is small for this system")]
    SmallField,
    #[error("the base field is not small for this system")]
    NotSmall,
    #[error("input is not a nontrivial admissible function")]
    NotNontrivial,
    #[error("saturation vector {0:?} fails exact verification over a sufficiently large field")]
    InconsistentTorsion(Vec<i64>),
    #[error("no torsion ratio yields a reduced function (only the two square roots of q are related)")]
    NoReducedWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleFunction {
    pub e: Vec<i64>,
    pub degree: i64,
    pub weight: u64,
}

impl AdmissibleFunction {
    fn new(e: Vec<i64>) -> Self {
        let degree = e.iter().sum::<i64>() / 2;
        let weight = e.iter().map(|x| x.unsigned_abs()).sum();
        Self { e, degree, weight }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub admissible: Option<i64>,
    pub trivial: bool,
    pub reduced: bool,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    /// Rows `(e, -d)` spanning the relation lattice in `Z^(m+1)`, in Hermite
    /// normal form.
    pub basis: Vec<Vec<BigInt>>,
    /// Every relation of weight at most this bound lies in the lattice.
    pub certified_weight: u64,
    pub gamma_rank: usize,
    /// Saturation vectors that failed verification: they witness roots of
    /// unity in the eigenvalue group.
    pub torsion: Vec<Vec<i64>>,
    reduced: Lattice,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The lattice of reduced coordinates.
    pub fn reduced(&self) -> &Lattice {
        &self.reduced
    }

    /// Membership of `(e, -d)` with `d = sum(e) / 2`.
    pub fn contains(&self, e: &[i64]) -> bool {
        let total: i64 = e.iter().sum();
        if total % 2 != 0 {
            return false;
        }
        let mut v = to_big(e);
        v.push(BigInt::from(-total / 2));
        Lattice::from_generators(&self.basis, v.len()).contains(&v)
    }

    /// The exponent parts `e` of the basis rows, spanning the lattice of
    /// exponent vectors with `prod alpha^e = q^(sum(e)/2)`.
    pub fn exponent_lattice(&self) -> Lattice {
        let m = self.basis.first().map_or(0, |r| r.len() - 1);
        let rows: Vec<IntRow> = self.basis.iter().map(|r| r[..m].to_vec()).collect();
        Lattice::from_generators(&rows, m)
    }

    /// Fails with `InconsistentTorsion` when a saturation vector did not
    /// verify; used once the field is known to be sufficiently large.
    pub fn require_torsion_free(self) -> Result<Self, RelationError> {
        match self.torsion.first() {
            Some(v) => Err(RelationError::InconsistentTorsion(v.clone())),
            None => Ok(self),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankDecision {
    pub has_nontrivial: bool,
    pub has_reduced: bool,
    pub gamma_rank: usize,
    pub threshold: usize,
}

/// Coordinates modulo trivial relations: one per two-element orbit, then
/// one per fixed root.
#[derive(Debug, Clone)]
pub struct ReducedSpace {
    m: usize,
    reps: Vec<usize>,
    fixed: Vec<usize>,
    iota: Vec<usize>,
}

impl ReducedSpace {
    pub fn new(sys: &EigenvalueSystem) -> Self {
        Self {
            m: sys.m(),
            reps: sys.orbit_reps(),
            fixed: sys.fixed().to_vec(),
            iota: sys.iota().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len() + self.fixed.len()
    }

    pub fn n_orbits(&self) -> usize {
        self.reps.len()
    }

    /// Root index behind each reduced coordinate.
    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.reps.iter().chain(&self.fixed).copied()
    }

    /// Reduced-shape exponent vector: positive parts on representatives,
    /// negative parts moved to the conjugate root. Fixed coordinates must be
    /// nonnegative.
    pub fn lift(&self, f: &[i64]) -> Vec<i64> {
        let mut e = vec![0; self.m];
        for (&i, &v) in self.reps.iter().zip(f) {
            if v > 0 {
                e[i] = v;
            } else {
                e[self.iota[i]] = -v;
            }
        }
        for (&i, &v) in self.fixed.iter().zip(&f[self.reps.len()..]) {
            e[i] = v;
        }
        e
    }

    /// Lift placing each orbit coordinate on its representative (signed).
    pub fn lift_signed(&self, f: &[i64]) -> Vec<i64> {
        let mut e = vec![0; self.m];
        for (i, v) in self.roots().zip(f) {
            e[i] = *v;
        }
        e
    }

    pub fn project(&self, e: &[i64]) -> Vec<i64> {
        let mut f: Vec<i64> = self.reps.iter().map(|&i| e[i] - e[self.iota[i]]).collect();
        f.extend(self.fixed.iter().map(|&i| e[i]));
        f
    }
}

/// Which angle multiple a search tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Scale {
    /// Relations: `sum f phi` integral.
    One,
    /// Torsion: `D(g) sum f phi` integral.
    Torsion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Collect {
    /// Every member.
    All,
    /// Every member of the lightest weight that has one.
    First,
    /// Only members outside the span of earlier ones; they generate the
    /// lattice of all members found.
    Span,
}

pub(crate) struct SearchOutcome {
    pub members: Vec<Vec<i64>>,
    /// All weights up to this value were fully enumerated.
    pub completed_weight: u64,
}

struct Dfs<'a> {
    vals: Vec<u128>,
    errs: Vec<u128>,
    n_orbits: usize,
    caps: Option<&'a [i64]>,
    f: Vec<i64>,
    nodes: u64,
    budget: u64,
    hits: Vec<Vec<i64>>,
}

impl Dfs<'_> {
    fn cap(&self, j: usize, rem: i64) -> i64 {
        let structural = if j < self.n_orbits { rem } else { rem.min(1) };
        match self.caps {
            Some(c) => structural.min(c[j]),
            None => structural,
        }
    }

    /// Maximal weight the coordinates from `j` on can still absorb.
    fn capacity(&self, j: usize) -> i64 {
        let n = self.vals.len();
        let fixed = (n - j.max(self.n_orbits)) as i64;
        let orbit: i64 = match self.caps {
            Some(c) => c[j.min(self.n_orbits)..self.n_orbits].iter().sum(),
            None if j < self.n_orbits => i64::MAX / 4,
            None => 0,
        };
        orbit + fixed
    }

    fn run(&mut self, j: usize, rem: i64, sum: u128, err: u128) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let n = self.vals.len();
        if j == n {
            if rem == 0 {
                let dist = sum.min(sum.wrapping_neg());
                if err >= u128::MAX / 8 || dist <= err {
                    self.hits.push(self.f.clone());
                }
            }
            return true;
        }
        if rem > self.capacity(j) {
            return true;
        }
        let k = self.cap(j, rem);
        let (v, e) = (self.vals[j], self.errs[j]);
        let lo = if j < self.n_orbits { -k } else { 0 };
        let mut s = sum.wrapping_add((i128::from(lo) as u128).wrapping_mul(v));
        for x in lo..=k {
            self.f[j] = x;
            let ex = err.saturating_add(e.saturating_mul(u128::from(x.unsigned_abs())));
            if !self.run(j + 1, rem - x.abs(), s, ex) {
                return false;
            }
            s = s.wrapping_add(v);
        }
        self.f[j] = 0;
        true
    }
}

/// Membership of a reduced coordinate vector at the given scale.
pub(crate) fn is_member(sys: &EigenvalueSystem, space: &ReducedSpace, f: &[i64], scale: Scale) -> bool {
    let e = space.lift_signed(f);
    let total: i64 = e.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    match scale {
        Scale::One => sys.verify_relation(&e, total / 2),
        Scale::Torsion => sys.torsion_order(&e).is_some(),
    }
}

/// Enumerates reduced coordinate vectors (fixed coordinates in `{0, 1}`) of
/// even weight in `2..=max_weight`, keeping exact members. Members form a
/// lattice, so candidates in the span of verified members skip exact
/// verification.
pub(crate) fn search(
    sys: &EigenvalueSystem,
    space: &ReducedSpace,
    scale: Scale,
    max_weight: u64,
    caps: Option<&[i64]>,
    collect: Collect,
) -> SearchOutcome {
    let n = space.dim();
    let mut out = SearchOutcome { members: Vec::new(), completed_weight: max_weight };
    if n == 0 {
        return out;
    }
    let s = match scale {
        Scale::One => BigInt::one(),
        Scale::Torsion => sys.torsion_bounds().d.value().into(),
    };
    let fa = sys.fast_angles(&s);
    let mut dfs = Dfs {
        vals: space.roots().map(|i| fa.values[i]).collect(),
        errs: space.roots().map(|i| fa.errs[i]).collect(),
        n_orbits: space.n_orbits(),
        caps,
        f: vec![0; n],
        nodes: 0,
        budget: ENUMERATION_BUDGET,
        hits: Vec::new(),
    };
    let mut span = Lattice::zero(n);
    for w in (2..=max_weight).step_by(2) {
        dfs.hits.clear();
        let finished = dfs.run(0, w as i64, 0, 0);
        for f in std::mem::take(&mut dfs.hits) {
            if span.contains_i64(&f) {
                if collect != Collect::Span {
                    out.members.push(f);
                }
            } else if is_member(sys, space, &f, scale) {
                span = span.with(&[to_big(&f)]);
                out.members.push(f);
            }
        }
        if !finished {
            out.completed_weight = w - 2;
            break;
        }
        if collect == Collect::First && !out.members.is_empty() {
            out.completed_weight = w;
            break;
        }
    }
    out
}

/// Candidate relations from lattice reduction on the angle vector at
/// escalating precision, each confirmed exactly. Candidates heavier than
/// `max_weight` are dropped: near-relations at the working precision can
/// have huge coefficients and exact verification cost grows with weight.
fn lll_candidates(sys: &EigenvalueSystem, space: &ReducedSpace, max_weight: u64) -> Vec<Vec<i64>> {
    let n = space.dim();
    if n == 0 {
        return Vec::new();
    }
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut last_rank = usize::MAX;
    let roots: Vec<usize> = space.roots().collect();
    for bits in [64u32, 128, 256, 512, 1024] {
        let ang = sys.angles(bits + 16);
        let shift = ang.prec - bits;
        let big = BigInt::one() << bits;
        let mut rows: Vec<IntRow> = roots
            .iter()
            .enumerate()
            .map(|(j, &i)| {
                let mut row = vec![BigInt::zero(); n + 2];
                row[j] = BigInt::one();
                row[n] = &ang.values[i] >> shift;
                row[n + 1] = &big >> 1u32;
                row
            })
            .collect();
        let mut shift_row = vec![BigInt::zero(); n + 2];
        shift_row[n] = big.clone();
        rows.push(shift_row);
        let mut parity_row = vec![BigInt::zero(); n + 2];
        parity_row[n + 1] = big.clone();
        rows.push(parity_row);
        for row in lll(&rows) {
            if !row[n + 1].is_zero() {
                continue;
            }
            let Some(f) = to_i64(&row[..n]) else { continue };
            let l1: i64 = f.iter().map(|x| x.saturating_abs()).fold(0, i64::saturating_add);
            if l1 == 0 || l1 as u64 > max_weight || row[n].abs() > BigInt::from(l1 + 1) {
                continue;
            }
            if is_member(sys, space, &f, Scale::One) {
                found.insert(f);
            }
        }
        let rank = Lattice::from_generators(
            &found.iter().map(|f| to_big(f)).collect::<Vec<_>>(),
            n,
        )
        .rank();
        if rank == last_rank && bits >= 128 {
            break;
        }
        last_rank = rank;
    }
    found.into_iter().collect()
}

pub fn classify(sys: &EigenvalueSystem, e: &[i64]) -> Classification {
    assert_eq!(e.len(), sys.m(), "exponent vector has the wrong length");
    let total: i64 = e.iter().sum();
    let weight = e.iter().map(|x| x.unsigned_abs()).sum();
    let admissible = (total % 2 == 0 && sys.verify_relation(e, total / 2)).then_some(total / 2);
    let iota = sys.iota();
    let trivial = (0..e.len()).all(|i| e[i] == e[iota[i]])
        && sys.fixed().iter().all(|&i| e[i] % 2 == 0);
    let reduced = admissible.is_some_and(|d| d >= 1)
        && e.iter().all(|&x| x >= 0)
        && (0..e.len()).all(|i| sys.is_fixed(i) || e[i] == 0 || e[iota[i]] == 0)
        && sys.fixed().iter().all(|&i| e[i] <= 1);
    Classification { admissible, trivial, reduced, weight }
}

/// Relation lattice with every relation of weight `<= weight_bound` (up to
/// the enumeration budget), lattice-reduction candidates, and saturation
/// completion.
pub fn discover(sys: &EigenvalueSystem, weight_bound: u64) -> RelationLattice {
    assert!(weight_bound >= 2, "weight bound must be at least 2");
    let space = ReducedSpace::new(sys);
    let n = space.dim();
    let m = sys.m();
    let outcome = search(sys, &space, Scale::One, weight_bound, None, Collect::Span);
    let mut gens: Vec<IntRow> = outcome.members.iter().map(|f| to_big(f)).collect();
    gens.extend(lll_candidates(sys, &space, 4 * weight_bound).iter().map(|f| to_big(f)));
    for k in space.n_orbits()..n {
        let mut f = vec![0i64; n];
        f[k] = 2;
        gens.push(to_big(&f));
    }
    let mut reduced = Lattice::from_generators(&gens, n);

    let full_rows = |reduced: &Lattice| -> Vec<IntRow> {
        let mut rows: Vec<IntRow> = sys
            .orbit_reps()
            .iter()
            .map(|&i| {
                let mut e = vec![0i64; m + 1];
                e[i] = 1;
                e[sys.iota()[i]] = 1;
                e[m] = -1;
                to_big(&e)
            })
            .collect();
        for f in &reduced.basis {
            let f = to_i64(f).expect("reduced basis fits i64");
            let mut e = space.lift_signed(&f);
            let total: i64 = e.iter().sum();
            e.push(-total / 2);
            rows.push(to_big(&e));
        }
        rows
    };
    let mut full = Lattice::from_generators(&full_rows(&reduced), m + 1);
    let mut torsion = Vec::new();
    for v in full.saturation().basis {
        if full.contains(&v) {
            continue;
        }
        let v = to_i64(&v).expect("saturation vector fits i64");
        let (e, d) = (&v[..m], -v[m]);
        if sys.verify_relation(e, d) {
            reduced = reduced.with(&[to_big(&space.project(e))]);
            full = Lattice::from_generators(&full_rows(&reduced), m + 1);
        } else {
            torsion.push(v);
        }
    }
    RelationLattice {
        gamma_rank: m + 1 - full.rank(),
        basis: full.basis,
        certified_weight: outcome.completed_weight,
        torsion,
        reduced,
    }
}

pub fn rank_decision(
    sys: &EigenvalueSystem,
    lattice: &RelationLattice,
) -> Result<RankDecision, RelationError> {
    if sys.is_small() {
        return Err(RelationError::SmallField);
    }
    let threshold = sys.m() / 2;
    let yes = lattice.gamma_rank <= threshold;
    Ok(RankDecision { has_nontrivial: yes, has_reduced: yes, gamma_rank: lattice.gamma_rank, threshold })
}

/// Builds a reduced function from a nontrivial admissible one: drop the
/// fixed roots, double, and keep the positive differences
/// `h(alpha) - h(q/alpha)` on the side where they are positive.
pub fn reduce_nontrivial(
    sys: &EigenvalueSystem,
    e: &[i64],
) -> Result<AdmissibleFunction, RelationError> {
    let c = classify(sys, e);
    if c.admissible.is_none() || c.trivial {
        return Err(RelationError::NotNontrivial);
    }
    if sys.is_small() {
        return Err(RelationError::SmallField);
    }
    let iota = sys.iota();
    let h2: Vec<i64> = (0..e.len()).map(|i| if sys.is_fixed(i) { 0 } else { 2 * e[i] }).collect();
    let f: Vec<i64> = (0..e.len())
        .map(|i| if h2[i] > h2[iota[i]] { h2[i] - h2[iota[i]] } else { 0 })
        .collect();
    let out = AdmissibleFunction::new(f);
    debug_assert!(classify(sys, &out.e).reduced);
    Ok(out)
}

/// Reduced function from a pair of roots whose ratio is a root of unity of
/// order `k`: `alpha_2^k (q/alpha_1)^k = q^k`, or `alpha_1^(2k) = q^k` when
/// `alpha_2 = q/alpha_1`. Pairs are scanned in canonical order and the
/// first one giving a reduced function is used.
pub fn small_field_reduced(sys: &EigenvalueSystem) -> Result<AdmissibleFunction, RelationError> {
    let m = sys.m();
    let mut any = false;
    for i in 0..m {
        for j in i + 1..m {
            let Some(k) = sys.ratio_torsion_order(i, j) else { continue };
            any = true;
            let k = i64::try_from(k).expect("torsion order fits i64");
            for (a1, a2) in [(i, j), (j, i)] {
                let mut e = vec![0i64; m];
                let conj = sys.iota()[a1];
                if a2 == conj {
                    e[a1] = 2 * k;
                } else {
                    e[a2] += k;
                    e[conj] += k;
                }
                if classify(sys, &e).reduced {
                    return Ok(AdmissibleFunction::new(e));
                }
            }
        }
    }
    Err(if any { RelationError::NoReducedWitness } else { RelationError::NotSmall })
}

/// Minimum-weight reduced function with weight `<= cap`, together with the
/// weight up to which the search was exhaustive. Ties go to the
/// lexicographically largest exponent vector.
pub fn minimal_reduced_within(
    sys: &EigenvalueSystem,
    cap: u64,
) -> (Option<AdmissibleFunction>, u64) {
    let space = ReducedSpace::new(sys);
    let outcome = search(sys, &space, Scale::One, cap, None, Collect::First);
    let best = outcome
        .members
        .iter()
        .map(|f| space.lift(f))
        .max_by(|a, b| a.cmp(b))
        .map(AdmissibleFunction::new);
    (best, outcome.completed_weight)
}

pub fn minimal_reduced(sys: &EigenvalueSystem, cap: u64) -> Option<AdmissibleFunction> {
    assert!(cap >= 2, "weight cap must be at least 2");
    minimal_reduced_within(sys, cap).0
}

/// All reduced functions of weight `<= cap` whose entries respect `caps`
/// (indexed by root).
pub fn reduced_functions(
    sys: &EigenvalueSystem,
    cap: u64,
    root_caps: Option<&[i64]>,
) -> Vec<AdmissibleFunction> {
    let space = ReducedSpace::new(sys);
    let caps: Option<Vec<i64>> = root_caps.map(|c| space.roots().map(|i| c[i]).collect());
    search(sys, &space, Scale::One, cap, caps.as_deref(), Collect::All)
        .members
        .iter()
        .map(|f| AdmissibleFunction::new(space.lift(f)))
        .collect()
}

/// Orders (greater than one) of the roots of unity `prod alpha^e /
/// q^(sum(e)/2)` for a generating set of the torsion relations of weight
/// `<= weight_bound`. Their lcm is the exponent of the torsion found.
pub(crate) fn torsion_orders(sys: &EigenvalueSystem, weight_bound: u64) -> Vec<u64> {
    let space = ReducedSpace::new(sys);
    let outcome = search(sys, &space, Scale::Torsion, weight_bound, None, Collect::Span);
    outcome
        .members
        .iter()
        .filter_map(|f| sys.torsion_order(&space.lift_signed(f)))
        .filter(|&b| b > 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil_poly::validate_i64;

    fn sys(c: &[i64], q: u64) -> EigenvalueSystem {
        EigenvalueSystem::build(&validate_i64(c, q).unwrap()).unwrap()
    }

    fn four_root() -> EigenvalueSystem {
        sys(&[25, 0, 6, 0, 1], 5)
    }

    fn row(v: &[i64]) -> Vec<BigInt> {
        to_big(v)
    }

    #[test]
    fn classify_examples() {
        let s = sys(&[25, 10, 1], 25);
        let c = classify(&s, &[2]);
        assert_eq!(c.admissible, Some(1));
        assert!(c.trivial && !c.reduced);
        let c = classify(&s, &[0]);
        assert_eq!(c.admissible, Some(0));
        assert!(c.trivial && !c.reduced);
        let c = classify(&s, &[1]);
        assert_eq!(c.admissible, None);
        let s = four_root();
        let c = classify(&s, &[2, 0, 2, 0]);
        assert!(c.reduced && !c.trivial);
        assert_eq!(c.admissible, Some(2));
        let c = classify(&s, &[1, 1, 1, 1]);
        assert!(c.trivial);
    }

    #[test]
    fn discover_examples() {
        let s = sys(&[5, -2, 1], 5);
        let lat = discover(&s, 8);
        assert_eq!(lat.basis, vec![row(&[1, 1, -1])]);
        assert_eq!(lat.gamma_rank, 2);
        assert!(lat.torsion.is_empty());

        let s = sys(&[25, 10, 1], 25);
        let lat = discover(&s, 8);
        assert_eq!(lat.basis, vec![row(&[2, -1])]);
        assert_eq!(lat.gamma_rank, 1);

        let s = four_root();
        let lat = discover(&s, 8);
        assert_eq!(lat.gamma_rank, 2);
        for v in [[1, 1, 0, 0], [0, 0, 1, 1], [2, 0, 2, 0]] {
            assert!(lat.contains(&v));
        }
        assert!(!lat.contains(&[1, 0, 1, 0]));
        // -1 is in the eigenvalue group: saturation exposes it
        assert!(!lat.torsion.is_empty());
    }

    #[test]
    fn rank_decisions() {
        let s = sys(&[5, -2, 1], 5);
        let r = rank_decision(&s, &discover(&s, 8)).unwrap();
        assert!(!r.has_nontrivial && r.gamma_rank == 2 && r.threshold == 1);
        let s = sys(&[25, 10, 1], 25);
        let r = rank_decision(&s, &discover(&s, 8)).unwrap();
        assert!(!r.has_reduced && r.gamma_rank == 1 && r.threshold == 0);
        // roots -3 +- 4i over q = 25, each twice
        let s = sys(&[625, 300, 86, 12, 1], 25);
        assert_eq!(s.mult(), &[2, 2]);
        let r = rank_decision(&s, &discover(&s, 8)).unwrap();
        assert!(!r.has_nontrivial && r.gamma_rank == 2);
        let s = four_root();
        assert_eq!(rank_decision(&s, &discover(&s, 8)), Err(RelationError::SmallField));
    }

    #[test]
    fn reduce_construction() {
        // The field is small here, so the construction is exercised directly.
        let s = four_root();
        assert_eq!(reduce_nontrivial(&s, &[1, -1, 1, -1]), Err(RelationError::SmallField));
        assert_eq!(reduce_nontrivial(&s, &[1, 1, 1, 1]), Err(RelationError::NotNontrivial));
    }

    #[test]
    fn small_field_examples() {
        let s = sys(&[5, 0, 1], 5);
        let f = small_field_reduced(&s).unwrap();
        assert_eq!(f.weight, 4);
        assert_eq!(f.degree, 2);
        assert!(f.e == vec![4, 0] || f.e == vec![0, 4]);
        let s = four_root();
        let f = small_field_reduced(&s).unwrap();
        assert!(classify(&s, &f.e).reduced);
        assert!(f.weight <= 4);
        let s = sys(&[5, -2, 1], 5);
        assert_eq!(small_field_reduced(&s), Err(RelationError::NotSmall));
        // (t^2 - 5)^2: the only torsion ratio relates the two fixed roots
        let s = sys(&[25, 0, -10, 0, 1], 5);
        assert_eq!(small_field_reduced(&s), Err(RelationError::NoReducedWitness));
    }

    #[test]
    fn minimal_reduced_examples() {
        let s = four_root();
        let f = minimal_reduced(&s, 8).unwrap();
        assert_eq!(f.e, vec![2, 0, 2, 0]);
        assert_eq!((f.weight, f.degree), (4, 2));
        assert_eq!(minimal_reduced(&sys(&[5, -2, 1], 5), 12), None);
        assert_eq!(minimal_reduced(&sys(&[25, 10, 1], 25), 12), None);
        assert_eq!(minimal_reduced(&sys(&[5, 0, 1], 5), 12).unwrap().e, vec![4, 0]);
    }

    #[test]
    fn torsion_detection() {
        assert!(torsion_orders(&sys(&[5, -2, 1], 5), 8).is_empty());
        assert!(torsion_orders(&sys(&[25, 10, 1], 25), 8).is_empty());
        let t = torsion_orders(&four_root(), 8);
        assert!(!t.is_empty() && t.iter().all(|&b| b == 2));
    }
}
