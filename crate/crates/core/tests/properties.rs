use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weil_core::cone::hilbert_basis_formal;
use weil_core::corpus::{
    random_quadratic_product, random_quartic, random_related_product, random_small_field,
};
use weil_core::eigensystem::EigenvalueSystem;
use weil_core::linalg::to_i64;
use weil_core::oracle::{tate_space_dim, wedge_image_dim};
use weil_core::relations::{classify, discover, reduce_nontrivial, RelationLattice};
use weil_core::weil_poly::WeilPolynomial;

fn instance(seed: u64, max_g: usize) -> WeilPolynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = 1 + (seed % max_g as u64) as usize;
    match seed % 4 {
        0 => random_quadratic_product(&mut rng, g),
        1 if max_g >= 2 => random_quartic(&mut rng),
        2 if max_g >= 2 => random_related_product(&mut rng, g.max(2)),
        _ => random_small_field(&mut rng, g),
    }
}

fn system(seed: u64, max_g: usize) -> EigenvalueSystem {
    EigenvalueSystem::build(&instance(seed, max_g)).unwrap()
}

/// Exponent parts and degrees of the lattice basis rows.
fn relations(l: &RelationLattice) -> Vec<(Vec<i64>, i64)> {
    l.basis
        .iter()
        .map(|r| {
            let v = to_i64(r).unwrap();
            let m = v.len() - 1;
            (v[..m].to_vec(), -v[m])
        })
        .collect()
}

/// Position of each `alpha^k` among the roots of the base change, when the
/// powers stay distinct.
fn power_map(sys: &EigenvalueSystem, big: &EigenvalueSystem, k: u32) -> Option<Vec<usize>> {
    if big.m() != sys.m() {
        return None;
    }
    let targets: Vec<Complex64> =
        big.roots_f64().into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
    let map: Vec<usize> = sys
        .roots_f64()
        .into_iter()
        .map(|(re, im)| {
            let z = Complex64::new(re, im).powu(k);
            (0..targets.len())
                .min_by(|&a, &b| (targets[a] - z).norm().total_cmp(&(targets[b] - z).norm()))
                .unwrap()
        })
        .collect();
    let mut seen = map.clone();
    seen.sort();
    seen.dedup();
    (seen.len() == map.len()).then_some(map)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicity_vector_is_a_relation(seed in any::<u64>()) {
        let p = instance(seed, 3);
        let sys = EigenvalueSystem::build(&p).unwrap();
        let mult: Vec<i64> = sys.mult().iter().map(|&k| k as i64).collect();
        prop_assert!(sys.verify_relation(&mult, p.g() as i64));
    }

    #[test]
    fn base_change_composes(seed in any::<u64>(), a in 1u32..=6, b in 1u32..=6) {
        let p = instance(seed, 2);
        prop_assert_eq!(p.base_change(a).base_change(b), p.base_change(a * b));
    }

    #[test]
    fn slopes_stable_under_base_change(seed in any::<u64>(), k in 1u32..=6) {
        let p = instance(seed, 3);
        prop_assert_eq!(p.newton_polygon().expanded(), p.base_change(k).newton_polygon().expanded());
    }

    #[test]
    fn conjugate_relations(seed in any::<u64>(), e in prop::collection::vec(-3i64..=3, 6)) {
        let sys = system(seed, 3);
        let iota = sys.iota().to_vec();
        let conj = |e: &[i64]| -> Vec<i64> { (0..e.len()).map(|i| e[iota[i]]).collect() };
        for (e, d) in relations(&discover(&sys, 8)) {
            prop_assert!(sys.verify_relation(&conj(&e), d));
        }
        let e = &e[..sys.m().min(6)];
        if e.len() == sys.m() {
            let total: i64 = e.iter().sum();
            if total % 2 == 0 {
                let d = total / 2;
                prop_assert_eq!(sys.verify_relation(e, d), sys.verify_relation(&conj(e), d));
            }
        }
    }

    #[test]
    fn relations_survive_base_change(seed in any::<u64>(), k in 2u32..=4) {
        let sys = system(seed, 2);
        let big = sys.base_change(k).unwrap();
        let Some(map) = power_map(&sys, &big, k) else { return Ok(()) };
        let push = |e: &[i64]| -> Vec<i64> {
            let mut out = vec![0i64; e.len()];
            for (i, &x) in e.iter().enumerate() {
                out[map[i]] = x;
            }
            out
        };
        for (e, d) in relations(&discover(&sys, 8)) {
            // degrees are measured in powers of the new q = q^k
            prop_assert!(big.verify_relation(&push(&e), d));
        }
        for i in 0..sys.m() {
            let mut e = vec![0i64; sys.m()];
            e[i] = 2;
            prop_assert_eq!(sys.verify_relation(&e, 1), big.verify_relation(&push(&e), 1));
        }
    }

    #[test]
    fn decisions_independent_of_precision(seed in any::<u64>(), e in prop::collection::vec(-4i64..=4, 6)) {
        let p = instance(seed, 3);
        let fresh = EigenvalueSystem::build(&p).unwrap();
        let refined = EigenvalueSystem::build(&p).unwrap();
        let _ = refined.roots_at(4096);
        let e = &e[..fresh.m().min(6)];
        if e.len() == fresh.m() {
            let total: i64 = e.iter().sum();
            if total % 2 == 0 {
                prop_assert_eq!(fresh.verify_relation(e, total / 2), refined.verify_relation(e, total / 2));
            }
        }
        for (e, d) in relations(&discover(&fresh, 8)) {
            prop_assert!(refined.verify_relation(&e, d));
        }
    }

    #[test]
    fn nontrivial_relations_reduce(seed in any::<u64>(), c in prop::collection::vec(-2i64..=2, 8)) {
        let sys = system(seed, 3);
        if sys.is_small() {
            return Ok(());
        }
        let rows = relations(&discover(&sys, 8));
        let mut e = vec![0i64; sys.m()];
        for ((row, _), &k) in rows.iter().zip(&c) {
            for (x, y) in e.iter_mut().zip(row) {
                *x += k * y;
            }
        }
        let cl = classify(&sys, &e);
        prop_assert!(cl.admissible.is_some());
        if cl.trivial {
            return Ok(());
        }
        // a nontrivial relation needs a root off the real axis
        prop_assert!(sys.fixed().len() < sys.m());
        for k in [2i64, -3] {
            let scaled: Vec<i64> = e.iter().map(|x| k * x).collect();
            let c = classify(&sys, &scaled);
            prop_assert!(c.admissible.is_some() && !c.trivial);
        }
        let f = reduce_nontrivial(&sys, &e).unwrap();
        prop_assert!(classify(&sys, &f.e).reduced);
        prop_assert!(f.weight <= 2 * cl.weight);
    }

    #[test]
    fn hilbert_generators_have_even_weight(seed in any::<u64>()) {
        let sys = system(seed, 2);
        for u in hilbert_basis_formal(&discover(&sys, 8)).generators {
            prop_assert_eq!(u.iter().sum::<i64>() % 2, 0);
        }
    }

    #[test]
    fn tate_dimensions(seed in any::<u64>(), n in 1usize..=2, d in 1usize..=4) {
        let sys = system(seed, 2);
        let top = n * sys.g();
        if d >= top {
            return Ok(());
        }
        if d >= 2 {
            prop_assert!(wedge_image_dim(&sys, n, d) <= tate_space_dim(&sys, n, d));
        }
        if sys.fixed().is_empty() {
            prop_assert_eq!(tate_space_dim(&sys, n, d), tate_space_dim(&sys, n, top - d));
        }
    }
}
