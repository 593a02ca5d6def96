//! Residue rings A/a with table-driven arithmetic, the matrix groups
//! GL_r(A/a), closed-form group orders and the enumeration oracles that check
//! them.

mod formula;
mod matrix;
mod oracle;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{poly, FactoredIdeal, Generator, RingSpec};

pub use formula::{
    exact_order_count, fix_vector_order_formula, gl_order_formula, stab_cyclic_order_formula,
    unit_group_order, GroupCount, GroupKind,
};
pub use matrix::Matrix;
pub use oracle::{
    cyclic_submodules, enumerate_gl, gl_order_bruteforce, line_stabilizer_bruteforce,
    orbit_census, orbit_stabilizer_bruteforce, vectors, Budget, OrbitRecord,
};

/// A residue class, encoded as an index in `0..size`.
pub type Elem = u16;

/// Largest residue ring for which addition and multiplication tables are built.
pub const MAX_RESIDUE_SIZE: u64 = 1024;

#[derive(Clone, Debug)]
enum Encoding {
    /// Residue k stands for the integer k.
    Int { n: u64 },
    /// Residue k stands for Σ c_i T^i with k = Σ c_i q^i.
    Poly { q: u64, modulus: Vec<u64> },
}

/// The finite ring A/a with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: FactoredIdeal,
    size: usize,
    encoding: Encoding,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    unit: Vec<bool>,
}

impl ResidueRing {
    pub fn new(modulus: &FactoredIdeal) -> Result<Self> {
        let size = match modulus.norm_u64() {
            Ok(s) if s <= MAX_RESIDUE_SIZE => s as usize,
            _ => {
                return Err(Error::ResidueRingTooLarge {
                    size: modulus.norm().to_string(),
                    limit: MAX_RESIDUE_SIZE,
                })
            }
        };
        let encoding = match (modulus.ring(), modulus.generator()?) {
            (RingSpec::Integers, Generator::Int(n)) => Encoding::Int { n },
            (RingSpec::PolynomialsOverFq { q }, Generator::Poly(f)) => {
                Encoding::Poly { q, modulus: f }
            }
            _ => return Err(Error::RingMismatch),
        };
        let mut ring = ResidueRing {
            modulus: modulus.clone(),
            size,
            encoding,
            add: vec![0; size * size],
            mul: vec![0; size * size],
            neg: vec![0; size],
            unit: vec![false; size],
        };
        ring.build_tables();
        Ok(ring)
    }

    fn build_tables(&mut self) {
        let n = self.size;
        let decoded: Vec<Vec<u64>> = (0..n).map(|k| self.decode(k as Elem)).collect();
        for a in 0..n {
            for b in 0..n {
                let (s, p) = match &self.encoding {
                    Encoding::Int { n: m } => {
                        let (x, y) = (a as u64, b as u64);
                        (((x + y) % m) as Elem, ((x * y) % m) as Elem)
                    }
                    Encoding::Poly { q, modulus } => {
                        let (x, y) = (&decoded[a], &decoded[b]);
                        let len = x.len().max(y.len());
                        let sum: Vec<u64> = (0..len)
                            .map(|i| (x.get(i).unwrap_or(&0) + y.get(i).unwrap_or(&0)) % q)
                            .collect();
                        let prod = poly::rem(&poly::mul(x, y, *q), modulus, *q);
                        (self.encode(&poly::trim(sum)), self.encode(&prod))
                    }
                };
                self.add[a * n + b] = s;
                self.mul[a * n + b] = p;
            }
        }
        let one = self.one();
        for a in 0..n {
            self.neg[a] = (0..n).find(|&b| self.add[a * n + b] == 0).unwrap() as Elem;
            self.unit[a] = (0..n).any(|b| self.mul[a * n + b] == one);
        }
    }

    fn encode(&self, coeffs: &[u64]) -> Elem {
        match &self.encoding {
            Encoding::Int { .. } => coeffs.first().copied().unwrap_or(0) as Elem,
            Encoding::Poly { q, .. } => {
                coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c) as Elem
            }
        }
    }

    /// Coefficients of the canonical representative (constant term first).
    pub fn decode(&self, e: Elem) -> Vec<u64> {
        match &self.encoding {
            Encoding::Int { .. } => vec![e as u64],
            Encoding::Poly { q, .. } => {
                let mut k = e as u64;
                let mut out = Vec::new();
                while k > 0 {
                    out.push(k % q);
                    k /= q;
                }
                out
            }
        }
    }

    pub fn label(&self, e: Elem) -> String {
        match &self.encoding {
            Encoding::Int { .. } => e.to_string(),
            Encoding::Poly { .. } => poly::format(&self.decode(e)),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.modulus.ring()
    }

    pub fn modulus(&self) -> &FactoredIdeal {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(|k| k as Elem)
    }

    pub fn zero(&self) -> Elem {
        0
    }

    /// The identity; equals zero in the trivial ring A/A.
    pub fn one(&self) -> Elem {
        if self.size == 1 {
            0
        } else {
            1
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.unit[a as usize]
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        let one = self.one();
        self.elements().find(|&b| self.mul(a, b) == one)
    }

    pub fn pow(&self, a: Elem, exp: u32) -> Elem {
        (0..exp).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    /// Image of a ring element under A -> A/a.
    pub fn embed(&self, g: &Generator) -> Result<Elem> {
        match (&self.encoding, g) {
            (Encoding::Int { n }, Generator::Int(k)) => Ok((k % n) as Elem),
            (Encoding::Poly { q, modulus }, Generator::Poly(c)) => {
                let reduced = poly::rem(&poly::reduce_coeffs(c, *q), modulus, *q);
                Ok(self.encode(&reduced))
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn scale(&self, c: Elem, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&x| self.mul(c, x)).collect()
    }

    pub fn add_vectors(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    /// The annihilator of `v`: the smallest ideal b with b·v = 0. Computed one
    /// prime at a time: strip the other primary parts with the cofactor, then
    /// count how many multiplications by the prime are needed to kill v.
    pub fn element_order(&self, v: &ModuleVector) -> Result<FactoredIdeal> {
        let ring = self.ring();
        let gens: Vec<(Elem, u32)> = self
            .modulus
            .factors()
            .map(|(p, e)| Ok((self.embed(p.generator())?, e)))
            .collect::<Result<_>>()?;
        let mut order = Vec::new();
        for (i, (p, e)) in self.modulus.factors().enumerate() {
            let cofactor = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(self.one(), |acc, (_, &(g, f))| self.mul(acc, self.pow(g, f)));
            let mut w = self.scale(cofactor, &v.coords);
            let mut k = 0;
            while w.iter().any(|&x| x != 0) {
                w = self.scale(gens[i].0, &w);
                k += 1;
                debug_assert!(k <= e);
            }
            if k > 0 {
                order.push((p.clone(), k));
            }
        }
        FactoredIdeal::from_factors(ring, order)
    }

    /// The cyclic submodule generated by `v`, as a sorted list of vectors.
    pub fn span(&self, v: &[Elem]) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = self.elements().map(|c| self.scale(c, v)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// A point of (A/a)^r, stored as residue indices of the ambient [`ResidueRing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuleVector {
    pub coords: Vec<Elem>,
}

impl ModuleVector {
    pub fn new(coords: Vec<Elem>) -> Self {
        ModuleVector { coords }
    }

    pub fn zero(r: usize) -> Self {
        ModuleVector { coords: vec![0; r] }
    }

    /// The i-th standard basis vector of (A/a)^r.
    pub fn basis(ring: &ResidueRing, r: usize, i: usize) -> Self {
        let mut coords = vec![0; r];
        coords[i] = ring.one();
        ModuleVector { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl From<Vec<Elem>> for ModuleVector {
    fn from(coords: Vec<Elem>) -> Self {
        ModuleVector { coords }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn zn(n: u64) -> ResidueRing {
        let a = FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(n)).unwrap();
        ResidueRing::new(&a).unwrap()
    }

    pub(crate) fn f2_mod(coeffs: &[u64]) -> ResidueRing {
        let f2 = RingSpec::polynomials_over(2).unwrap();
        let a = FactoredIdeal::from_generator(f2, &Generator::Poly(coeffs.to_vec())).unwrap();
        ResidueRing::new(&a).unwrap()
    }

    fn order_norm(ring: &ResidueRing, v: Vec<Elem>) -> String {
        ring.element_order(&ModuleVector::new(v)).unwrap().norm().to_string()
    }

    #[test]
    fn ring_axioms_spot_checks() {
        for ring in [zn(6), zn(9), f2_mod(&[0, 1, 1]), f2_mod(&[1, 1, 1])] {
            let els: Vec<Elem> = ring.elements().collect();
            for &a in &els {
                assert_eq!(ring.add(a, ring.zero()), a);
                assert_eq!(ring.mul(a, ring.one()), a);
                assert_eq!(ring.add(a, ring.neg(a)), 0);
                for &b in &els {
                    assert_eq!(ring.add(a, b), ring.add(b, a));
                    assert_eq!(ring.mul(a, b), ring.mul(b, a));
                    for &c in &els {
                        assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
                        assert_eq!(
                            ring.mul(a, ring.add(b, c)),
                            ring.add(ring.mul(a, b), ring.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn units() {
        let z4 = zn(4);
        let units: Vec<Elem> = z4.elements().filter(|&a| z4.is_unit(a)).collect();
        assert_eq!(units, vec![1, 3]);
        // F_2[T]/(T^2+T+1) is the field with four elements
        let f4 = f2_mod(&[1, 1, 1]);
        assert_eq!(f4.elements().filter(|&a| f4.is_unit(a)).count(), 3);
        let t2t = f2_mod(&[0, 1, 1]);
        assert_eq!(t2t.elements().filter(|&a| t2t.is_unit(a)).count(), 1);
    }

    #[test]
    fn element_orders_in_z4_squared() {
        let z4 = zn(4);
        assert_eq!(order_norm(&z4, vec![0, 0]), "1");
        assert_eq!(order_norm(&z4, vec![2, 0]), "2");
        assert_eq!(order_norm(&z4, vec![1, 2]), "4");
        let z6 = zn(6);
        assert_eq!(order_norm(&z6, vec![3, 0]), "2");
        assert_eq!(order_norm(&z6, vec![2, 4]), "3");
        assert_eq!(order_norm(&z6, vec![3, 2]), "6");
    }

    #[test]
    fn element_orders_over_f2t() {
        // A/(T^2): T has order (T), 1 has order (T^2)
        let ring = f2_mod(&[0, 0, 1]);
        let t = ring.embed(&Generator::Poly(vec![0, 1])).unwrap();
        let order = ring.element_order(&ModuleVector::new(vec![t])).unwrap();
        assert_eq!(order.norm().to_string(), "2");
        let order = ring.element_order(&ModuleVector::new(vec![ring.one()])).unwrap();
        assert_eq!(order.norm().to_string(), "4");
    }

    #[test]
    fn oversized_ring_rejected() {
        let a = FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(5000)).unwrap();
        assert!(matches!(ResidueRing::new(&a), Err(Error::ResidueRingTooLarge { .. })));
    }

    #[test]
    fn trivial_ring() {
        let unit = ResidueRing::new(&FactoredIdeal::unit(RingSpec::Integers)).unwrap();
        assert_eq!(unit.size(), 1);
        assert!(unit.is_unit(unit.one()));
    }
}
