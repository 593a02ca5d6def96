use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torsion_core::residue::{orbit_stabilizer_bruteforce, vectors};
use torsion_core::subgroup::{
    composita_check, fixed_points, random_subgroup, random_subgroup_of, FiniteGroupHandle,
};
use torsion_core::{Budget, FactoredIdeal, Generator, ResidueRing, RingSpec};

fn gl(ring: RingSpec, g: Generator, r: usize) -> FiniteGroupHandle {
    let a = FactoredIdeal::from_generator(ring, &g).unwrap();
    FiniteGroupHandle::full_gl(Arc::new(ResidueRing::new(&a).unwrap()), r, Budget::DEFAULT).unwrap()
}

#[test]
fn fixers_match_orbits_over_polynomial_rings() {
    let f2 = RingSpec::polynomials_over(2).unwrap();
    // A/a = F_2[T]/(T^2), a local ring with 4 elements
    let g = gl(f2, Generator::Poly(vec![0, 0, 1]), 2);
    assert_eq!(g.order(), 96);
    for v in vectors(g.ring(), 2) {
        let fix = g.fixer_of(std::slice::from_ref(&v));
        let (orbit, _) = orbit_stabilizer_bruteforce(g.ring(), 2, &v, Budget::DEFAULT).unwrap();
        assert_eq!(fix.index_in(&g).unwrap(), orbit);
        let fixed = fixed_points(&fix, Budget::DEFAULT).unwrap();
        for w in g.ring().span(&v.coords) {
            assert!(fixed.points.iter().any(|p| p.coords == w));
        }
    }
}

#[test]
fn composita_inequality_on_random_towers() {
    let g = gl(RingSpec::Integers, Generator::Int(4), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let inner: Vec<_> = (0..3).map(|_| random_subgroup(&g, &mut rng).unwrap()).collect();
        let outer: Vec<_> = inner.iter().map(|u| random_subgroup_of(u, &mut rng, 2).unwrap()).collect();
        let rep = composita_check(&g, &inner, &outer).unwrap();
        assert!(rep.holds, "{rep:?}");
    }
}

#[test]
fn fixed_modules_have_consistent_structure() {
    let g = gl(RingSpec::Integers, Generator::Int(6), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let h = random_subgroup(&g, &mut rng).unwrap();
        let fixed = fixed_points(&h, Budget::DEFAULT).unwrap();
        let product: u64 = fixed.structure.iter().map(|a| a.norm_u64().unwrap()).product();
        assert_eq!(product as usize, fixed.len());
        assert!(fixed.structure.windows(2).all(|w| w[0].divides(&w[1])));
    }
}
