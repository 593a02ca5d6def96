use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{enumerate_primes, poly, smallest_prime_factor, Generator, PrimeIdeal, RingSpec};
use crate::error::{Error, Result};

/// A nonzero ideal of A held as a map prime -> exponent, with its norm |A/a|
/// cached as a big integer. The empty map is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactoredIdeal {
    ring: RingSpec,
    #[serde(serialize_with = "serialize_factors")]
    factors: BTreeMap<PrimeIdeal, u32>,
    #[serde(serialize_with = "crate::serialize_decimal")]
    norm: BigUint,
}

#[derive(Serialize)]
struct FactorEntry<'a> {
    prime: &'a PrimeIdeal,
    exponent: u32,
}

fn serialize_factors<S: serde::Serializer>(
    factors: &BTreeMap<PrimeIdeal, u32>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(factors.iter().map(|(prime, &exponent)| FactorEntry { prime, exponent }))
}

impl FactoredIdeal {
    pub fn unit(ring: RingSpec) -> Self {
        FactoredIdeal { ring, factors: BTreeMap::new(), norm: BigUint::one() }
    }

    pub fn prime_power(prime: PrimeIdeal, exponent: u32) -> Self {
        let ring = prime.ring();
        let mut ideal = Self::unit(ring);
        if exponent > 0 {
            ideal.norm = BigUint::from(prime.norm()).pow(exponent);
            ideal.factors.insert(prime, exponent);
        }
        ideal
    }

    /// Product of the given prime powers. Zero exponents are dropped and
    /// repeated primes accumulate.
    pub fn from_factors(
        ring: RingSpec,
        factors: impl IntoIterator<Item = (PrimeIdeal, u32)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<PrimeIdeal, u32> = BTreeMap::new();
        for (p, e) in factors {
            if p.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        let norm = norm_of(&map);
        Ok(FactoredIdeal { ring, factors: map, norm })
    }

    /// The ideal generated by `g`, factored by trial division. Intended for
    /// small user-supplied moduli, not as a general factoring routine.
    pub fn from_generator(ring: RingSpec, g: &Generator) -> Result<Self> {
        match (ring, g) {
            (RingSpec::Integers, Generator::Int(n)) => {
                if *n == 0 {
                    return Err(Error::InvalidGenerator("0".into()));
                }
                let mut rest = *n;
                let mut factors = Vec::new();
                while rest > 1 {
                    let p = smallest_prime_factor(rest);
                    let mut e = 0;
                    while rest % p == 0 {
                        rest /= p;
                        e += 1;
                    }
                    factors.push((PrimeIdeal::new_unchecked(ring, Generator::Int(p), p), e));
                }
                Self::from_factors(ring, factors)
            }
            (RingSpec::PolynomialsOverFq { q }, Generator::Poly(coeffs)) => {
                let f = poly::reduce_coeffs(coeffs, q);
                if f.is_empty() {
                    return Err(Error::InvalidGenerator(format!("{coeffs:?}")));
                }
                let mut rest = poly::make_monic(&f, q);
                let deg = rest.len() - 1;
                let cap = q
                    .checked_pow(deg as u32)
                    .ok_or(Error::Overflow("modulus norm"))?;
                let mut factors = Vec::new();
                if deg > 0 {
                    for p in enumerate_primes(ring, cap)? {
                        let Generator::Poly(g) = p.generator() else { unreachable!() };
                        let mut e = 0;
                        while rest.len() > 1 && poly::divides(g, &rest, q) {
                            rest = poly::div_exact(&rest, g, q);
                            e += 1;
                        }
                        if e > 0 {
                            factors.push((p, e));
                        }
                        if rest.len() == 1 {
                            break;
                        }
                    }
                }
                Self::from_factors(ring, factors)
            }
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn norm(&self) -> &BigUint {
        &self.norm
    }

    pub fn norm_u64(&self) -> Result<u64> {
        self.norm.to_u64().ok_or(Error::Overflow("ideal norm"))
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl ExactSizeIterator<Item = (&PrimeIdeal, u32)> {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn exponent_of(&self, p: &PrimeIdeal) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// Exponent-wise sum of the factorizations.
    pub fn multiply(&self, other: &FactoredIdeal) -> Result<FactoredIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut factors = self.factors.clone();
        for (p, &e) in &other.factors {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        Ok(FactoredIdeal { ring: self.ring, factors, norm: &self.norm * &other.norm })
    }

    /// Distinct primes dividing the ideal, in canonical order.
    pub fn radical_primes(&self) -> Vec<PrimeIdeal> {
        self.factors.keys().cloned().collect()
    }

    pub fn radical(&self) -> FactoredIdeal {
        FactoredIdeal::from_factors(self.ring, self.factors.keys().map(|p| (p.clone(), 1)))
            .expect("radical stays in the same ring")
    }

    pub fn is_coprime_to(&self, other: &FactoredIdeal) -> bool {
        self.factors.keys().all(|p| !other.factors.contains_key(p))
    }

    /// True when `self` divides `other` (i.e. `other ⊆ self`).
    pub fn divides(&self, other: &FactoredIdeal) -> bool {
        self.ring == other.ring && self.factors.iter().all(|(p, &e)| other.exponent_of(p) >= e)
    }

    /// Canonical generator of the ideal: the positive integer, or the monic
    /// polynomial. Fails if an integer generator does not fit in 64 bits.
    pub fn generator(&self) -> Result<Generator> {
        match self.ring {
            RingSpec::Integers => Ok(Generator::Int(self.norm_u64()?)),
            RingSpec::PolynomialsOverFq { q } => {
                let mut acc = vec![1u64];
                for (p, &e) in &self.factors {
                    let Generator::Poly(g) = p.generator() else { unreachable!() };
                    for _ in 0..e {
                        acc = poly::mul(&acc, g, q);
                    }
                }
                Ok(Generator::Poly(acc))
            }
        }
    }

    /// Recomputes the norm from the factors (used by invariant checks).
    pub fn recomputed_norm(&self) -> BigUint {
        norm_of(&self.factors)
    }
}

fn norm_of(factors: &BTreeMap<PrimeIdeal, u32>) -> BigUint {
    factors
        .iter()
        .map(|(p, &e)| BigUint::from(p.norm()).pow(e))
        .product()
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, &e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FactoredIdeal {
        FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(n)).unwrap()
    }

    #[test]
    fn integer_products() {
        let six = z(2).multiply(&z(3)).unwrap();
        assert_eq!(six.norm(), &BigUint::from(6u32));
        assert_eq!(six, z(6));
        let unit = FactoredIdeal::unit(RingSpec::Integers);
        assert_eq!(six.multiply(&unit).unwrap(), six);
        assert!(z(1).is_unit());
    }

    #[test]
    fn polynomial_products() {
        let f2 = RingSpec::polynomials_over(2).unwrap();
        let t = FactoredIdeal::from_generator(f2, &Generator::Poly(vec![0, 1])).unwrap();
        let t2 = t.multiply(&t).unwrap();
        assert_eq!(t2.norm(), &BigUint::from(4u32));
        assert_eq!(t2.factors().map(|(_, e)| e).collect::<Vec<_>>(), vec![2]);
        assert_eq!(t2.generator().unwrap(), Generator::Poly(vec![0, 0, 1]));
    }

    #[test]
    fn factoring_polynomial_moduli() {
        let f2 = RingSpec::polynomials_over(2).unwrap();
        // T^2 + T = T (T + 1)
        let a = FactoredIdeal::from_generator(f2, &Generator::Poly(vec![0, 1, 1])).unwrap();
        let labels: Vec<_> = a.radical_primes().iter().map(|p| p.generator().clone()).collect();
        assert_eq!(labels, vec![Generator::Poly(vec![0, 1]), Generator::Poly(vec![1, 1])]);
        // non-monic input over F_3 is normalised: 2T^2 + 2 = 2 (T^2 + 1)
        let f3 = RingSpec::polynomials_over(3).unwrap();
        let b = FactoredIdeal::from_generator(f3, &Generator::Poly(vec![2, 0, 2])).unwrap();
        assert_eq!(b.norm(), &BigUint::from(9u32));
        assert_eq!(b.factors().count(), 1);
        let unit = FactoredIdeal::from_generator(f3, &Generator::Poly(vec![2])).unwrap();
        assert!(unit.is_unit());
    }

    #[test]
    fn radicals() {
        assert_eq!(
            z(12).radical_primes().iter().map(|p| p.norm()).collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert!(FactoredIdeal::unit(RingSpec::Integers).radical_primes().is_empty());
        assert_eq!(z(12).radical(), z(6));
    }

    #[test]
    fn ring_mismatch_rejected() {
        let f2 = RingSpec::polynomials_over(2).unwrap();
        let t = FactoredIdeal::from_generator(f2, &Generator::Poly(vec![0, 1])).unwrap();
        assert_eq!(z(2).multiply(&t), Err(Error::RingMismatch));
    }

    #[test]
    fn divisibility_and_coprimality() {
        assert!(z(2).divides(&z(12)));
        assert!(!z(8).divides(&z(12)));
        assert!(z(4).is_coprime_to(&z(9)));
        assert!(!z(6).is_coprime_to(&z(9)));
    }
}
