//! Finite subgroups of GL_r(A/a) standing in for Galois images.
//!
//! The translation layer is the Galois correspondence read backwards: a
//! finite extension L/K is a subgroup U of the image G, its degree [L:K] is
//! the index [G:U], a compositum of fields is an intersection of subgroups
//! and an intersection of fields is the subgroup generated by both. The field
//! K(H) generated by a set of points H corresponds to the fixer Fix_G(H).

mod galois;
mod scan;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::residue::{enumerate_gl, vectors, Budget, Elem, Matrix, ModuleVector, ResidueRing};
use crate::ring::FactoredIdeal;

pub use galois::{composita_check, intersection_degree, join_degree, CompositaReport, IntersectionReport};
pub use scan::{
    canonical_composita_instances, canonical_family, empirical_bound_scan,
    random_composita_instances, random_subgroup, random_subgroup_of, FamilyMember, ScanGroup,
    ScanReport, ScanSample,
};

/// Default cap on the size of a generated subgroup.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

/// An explicitly enumerated finite matrix group over a residue ring.
#[derive(Clone, Debug)]
pub struct FiniteGroupHandle {
    ring: Arc<ResidueRing>,
    r: usize,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    generators: Vec<Matrix>,
}

impl FiniteGroupHandle {
    /// Closure of `generators` under multiplication, breadth-first from the
    /// identity.
    pub fn generate(
        ring: Arc<ResidueRing>,
        r: usize,
        generators: Vec<Matrix>,
        budget: usize,
    ) -> Result<Self> {
        for g in &generators {
            if g.rank() != r {
                return Err(Error::DimensionMismatch { expected: r, got: g.rank() });
            }
            if !g.is_invertible(&ring) {
                return Err(Error::NotInvertible);
            }
        }
        let identity = Matrix::identity(&ring, r);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = elements[i].mul(&ring, g);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= budget {
                    return Err(Error::BudgetExceeded {
                        required: elements.len() as u128 + 1,
                        budget: budget as u128,
                    });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
        Ok(FiniteGroupHandle { ring, r, elements, index, generators })
    }

    /// All of GL_r(A/a) by enumeration. The recorded generators are the
    /// elementary transvections and the diagonal unit matrices.
    pub fn full_gl(ring: Arc<ResidueRing>, r: usize, budget: Budget) -> Result<Self> {
        let elements = enumerate_gl(&ring, r, budget)?;
        let mut generators = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    generators.push(Matrix::transvection(&ring, r, i, j, ring.one()));
                }
            }
        }
        for u in ring.elements().filter(|&u| ring.is_unit(u) && u != ring.one()) {
            let mut d = Matrix::identity(&ring, r).entries().to_vec();
            d[0] = u;
            generators.push(Matrix::from_entries(r, d)?);
        }
        Self::from_elements(ring, r, elements, generators)
    }

    /// Wraps an explicit element list, checking that it is a group.
    pub fn from_elements(
        ring: Arc<ResidueRing>,
        r: usize,
        elements: Vec<Matrix>,
        generators: Vec<Matrix>,
    ) -> Result<Self> {
        let index: HashMap<Matrix, usize> =
            elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        if !index.contains_key(&Matrix::identity(&ring, r)) {
            return Err(Error::Containment("identity missing from element list".into()));
        }
        // a finite subset closed under products is a subgroup
        for a in &elements {
            for b in &elements {
                if !index.contains_key(&a.mul(&ring, b)) {
                    return Err(Error::Containment("element list is not closed".into()));
                }
            }
        }
        Ok(FiniteGroupHandle { ring, r, elements, index, generators })
    }

    /// Elements of `self` satisfying `keep`; the caller guarantees the result
    /// is a subgroup, which is then checked.
    pub fn filter(&self, keep: impl Fn(&Matrix) -> bool) -> Result<Self> {
        let elements: Vec<Matrix> = self.elements.iter().filter(|m| keep(m)).cloned().collect();
        Self::from_elements(self.ring.clone(), self.r, elements.clone(), elements)
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> &FactoredIdeal {
        self.ring.modulus()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroupHandle) -> bool {
        self.elements.iter().all(|m| other.contains(m))
    }

    /// Index [other : self]; requires self ⊆ other.
    pub fn index_in(&self, other: &FiniteGroupHandle) -> Result<u64> {
        if !self.is_subgroup_of(other) {
            return Err(Error::Containment("not a subgroup of the parent".into()));
        }
        Ok((other.order() / self.order()) as u64)
    }

    pub fn intersection(&self, other: &FiniteGroupHandle) -> FiniteGroupHandle {
        let elements: Vec<Matrix> =
            self.elements.iter().filter(|m| other.contains(m)).cloned().collect();
        let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        FiniteGroupHandle {
            ring: self.ring.clone(),
            r: self.r,
            generators: elements.clone(),
            elements,
            index,
        }
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &FiniteGroupHandle, budget: usize) -> Result<FiniteGroupHandle> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::generate(self.ring.clone(), self.r, gens, budget)
    }

    /// Fix_G(points): elements fixing every given point.
    pub fn fixer_of(&self, points: &[ModuleVector]) -> FiniteGroupHandle {
        let ring = &self.ring;
        self.filter(|m| points.iter().all(|p| m.apply(ring, &p.coords) == p.coords))
            .expect("a pointwise stabilizer is a subgroup")
    }

    /// Stab_G(⟨v⟩): elements mapping the cyclic submodule ⟨v⟩ to itself.
    pub fn stabilizer_of_span(&self, v: &ModuleVector) -> FiniteGroupHandle {
        let ring = &self.ring;
        let span = ring.span(&v.coords);
        self.filter(|m| {
            span.iter().all(|w| span.binary_search(&m.apply(ring, w)).is_ok())
        })
        .expect("a setwise stabilizer is a subgroup")
    }

    /// Every element's action on `v`.
    pub fn orbit(&self, v: &ModuleVector) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> =
            self.elements.iter().map(|m| m.apply(&self.ring, &v.coords)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// The points of (A/a)^r fixed by a subgroup, with their invariant factors.
#[derive(Clone, Debug, Serialize)]
pub struct FixedSubmodule {
    pub subgroup_order: usize,
    pub points: Vec<ModuleVector>,
    /// a_1 | a_2 | ... | a_r with H ≅ ⊕ A/a_i (unit ideals pad to length r)
    pub structure: Vec<FactoredIdeal>,
}

impl FixedSubmodule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Checks that `points` is closed under addition and the scalar action.
fn is_submodule(ring: &ResidueRing, points: &[ModuleVector]) -> bool {
    let mut sorted: Vec<&[Elem]> = points.iter().map(|p| p.coords.as_slice()).collect();
    sorted.sort();
    let has = |v: &[Elem]| sorted.binary_search(&v).is_ok();
    points.iter().all(|a| {
        ring.elements().all(|c| has(&ring.scale(c, &a.coords)))
            && points.iter().all(|b| has(&ring.add_vectors(&a.coords, &b.coords)))
    })
}

/// Invariant factors of a submodule H of (A/a)^r. For each prime p | a the
/// number of cyclic summands with p-exponent at least k is
/// log_|p| (|H[p^k]| / |H[p^{k-1}]|).
pub fn invariant_factors(ring: &ResidueRing, r: usize, points: &[ModuleVector]) -> Result<Vec<FactoredIdeal>> {
    let modulus = ring.modulus();
    let mut exponents: Vec<Vec<(crate::ring::PrimeIdeal, u32)>> = vec![Vec::new(); r];
    for (p, e) in modulus.factors() {
        let g = ring.embed(p.generator())?;
        let norm = p.norm();
        let mut prev = 1usize;
        let mut at_least = Vec::new();
        for k in 1..=e {
            let gk = ring.pow(g, k);
            let killed = points
                .iter()
                .filter(|v| ring.scale(gk, &v.coords).iter().all(|&x| x == 0))
                .count();
            let mut step = killed / prev;
            let mut count = 0usize;
            while step > 1 {
                step /= norm as usize;
                count += 1;
            }
            at_least.push(count);
            prev = killed;
        }
        for j in 0..r {
            let exp = at_least.iter().filter(|&&m| m > j).count() as u32;
            if exp > 0 {
                exponents[r - 1 - j].push((p.clone(), exp));
            }
        }
    }
    exponents
        .into_iter()
        .map(|f| FactoredIdeal::from_factors(modulus.ring(), f))
        .collect()
}

/// All vectors fixed by every element of the group.
pub fn fixed_points(group: &FiniteGroupHandle, budget: Budget) -> Result<FixedSubmodule> {
    let ring = group.ring();
    let r = group.rank();
    let count = (ring.size() as u128).pow(r as u32);
    budget.check(count)?;
    let gens: &[Matrix] = if group.generators().is_empty() && group.order() > 1 {
        group.elements()
    } else {
        group.generators()
    };
    let points: Vec<ModuleVector> = vectors(ring, r)
        .filter(|v| gens.iter().all(|m| m.apply(ring, &v.coords) == v.coords))
        .collect();
    if !is_submodule(ring, &points) {
        return Err(Error::Containment("fixed points are not a submodule".into()));
    }
    let structure = invariant_factors(ring, r, &points)?;
    Ok(FixedSubmodule { subgroup_order: group.order(), points, structure })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ring::{Generator, RingSpec};

    pub(crate) fn zn(n: u64) -> Arc<ResidueRing> {
        let a = FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(n)).unwrap();
        Arc::new(ResidueRing::new(&a).unwrap())
    }

    pub(crate) fn gl(n: u64, r: usize) -> FiniteGroupHandle {
        FiniteGroupHandle::full_gl(zn(n), r, Budget::DEFAULT).unwrap()
    }

    fn norms(structure: &[FactoredIdeal]) -> Vec<String> {
        structure.iter().map(|a| a.norm().to_string()).collect()
    }

    #[test]
    fn closure_examples() {
        let z2 = zn(2);
        let t01 = Matrix::transvection(&z2, 2, 0, 1, 1);
        let t10 = Matrix::transvection(&z2, 2, 1, 0, 1);
        let g = FiniteGroupHandle::generate(z2.clone(), 2, vec![t01, t10], DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(g.order(), 6);
        let trivial = FiniteGroupHandle::generate(z2, 2, vec![], DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(trivial.order(), 1);
        let z3 = zn(3);
        let minus = Matrix::scalar(&z3, 2, 2);
        let g = FiniteGroupHandle::generate(z3, 2, vec![minus], DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn closure_errors() {
        let z4 = zn(4);
        let singular = Matrix::from_entries(2, vec![2, 0, 0, 1]).unwrap();
        assert_eq!(
            FiniteGroupHandle::generate(z4.clone(), 2, vec![singular], 10).unwrap_err(),
            Error::NotInvertible
        );
        let t = Matrix::transvection(&z4, 2, 0, 1, 1);
        let err = FiniteGroupHandle::generate(z4, 2, vec![t], 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn recorded_generators_generate_full_gl() {
        for (n, r) in [(2u64, 2usize), (4, 2), (6, 2), (2, 3)] {
            let g = gl(n, r);
            let closure = FiniteGroupHandle::generate(
                g.ring().clone(),
                r,
                g.generators().to_vec(),
                DEFAULT_CLOSURE_BUDGET,
            )
            .unwrap();
            assert_eq!(closure.order(), g.order(), "Z/{n}, r = {r}");
        }
    }

    #[test]
    fn fixed_point_examples() {
        let g4 = gl(4, 2);
        let trivial = FiniteGroupHandle::generate(g4.ring().clone(), 2, vec![], 10).unwrap();
        let fixed = fixed_points(&trivial, Budget::DEFAULT).unwrap();
        assert_eq!(fixed.len(), 16);
        assert_eq!(norms(&fixed.structure), vec!["4", "4"]);

        let g2 = gl(2, 2);
        let fixed = fixed_points(&g2, Budget::DEFAULT).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(norms(&fixed.structure), vec!["1", "1"]);

        let fix = g4.fixer_of(&[ModuleVector::new(vec![1, 0])]);
        assert_eq!(fix.order(), 8);
        let fixed = fixed_points(&fix, Budget::DEFAULT).unwrap();
        assert_eq!(fixed.len(), 4);
        assert_eq!(norms(&fixed.structure), vec!["1", "4"]);
    }

    #[test]
    fn invariant_factors_of_mixed_submodule() {
        // H = ⟨(2, 0), (0, 1)⟩ in (Z/4)^2 is Z/2 ⊕ Z/4
        let z4 = zn(4);
        let mut pts = Vec::new();
        for a in [0u16, 2] {
            for b in 0..4u16 {
                pts.push(ModuleVector::new(vec![a, b]));
            }
        }
        assert!(is_submodule(&z4, &pts));
        let s = invariant_factors(&z4, 2, &pts).unwrap();
        assert_eq!(norms(&s), vec!["2", "4"]);
        // (Z/6)^2 ⊇ ⟨(3, 0), (0, 2)⟩ ≅ Z/2 ⊕ Z/3 ≅ Z/6
        let z6 = zn(6);
        let pts: Vec<_> = [0u16, 3]
            .iter()
            .flat_map(|&a| [0u16, 2, 4].map(|b| ModuleVector::new(vec![a, b])))
            .collect();
        let s = invariant_factors(&z6, 2, &pts).unwrap();
        assert_eq!(norms(&s), vec!["1", "6"]);
    }

    #[test]
    fn fixer_index_is_orbit_size() {
        use crate::residue::orbit_stabilizer_bruteforce;
        for n in [2u64, 3, 4, 6] {
            let g = gl(n, 2);
            for v in vectors(g.ring(), 2) {
                let fix = g.fixer_of(std::slice::from_ref(&v));
                let (orbit, stab) =
                    orbit_stabilizer_bruteforce(g.ring(), 2, &v, Budget::DEFAULT).unwrap();
                assert_eq!(fix.index_in(&g).unwrap(), orbit);
                assert_eq!(fix.order() as u64, stab);
                assert_eq!(g.orbit(&v).len() as u64, orbit);
                // the field K(v) contains K(⟨v⟩): Fix(v) fixes the whole span
                let fixed = fixed_points(&fix, Budget::DEFAULT).unwrap();
                for w in g.ring().span(&v.coords) {
                    assert!(fixed.points.iter().any(|p| p.coords == w));
                }
            }
        }
    }

    #[test]
    fn span_stabilizer_matches_formula() {
        use crate::residue::stab_cyclic_order_formula;
        let g = gl(4, 2);
        let s = g.stabilizer_of_span(&ModuleVector::new(vec![1, 0]));
        assert_eq!(
            num_bigint::BigUint::from(s.order()),
            stab_cyclic_order_formula(2, g.modulus()).unwrap()
        );
    }
}
