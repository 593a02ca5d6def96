//! The two Dedekind domains in scope: the rational integers and F_q[T] for
//! prime q. Both are principal, so every prime has a canonical generator.

mod ideal;
pub mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ideal::FactoredIdeal;

/// Which Dedekind domain A we are working in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub enum RingSpec {
    Integers,
    PolynomialsOverFq { q: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "ring")]
enum RingRepr {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Fq")]
    Fq { q: u64 },
}

impl TryFrom<RingRepr> for RingSpec {
    type Error = Error;

    fn try_from(repr: RingRepr) -> Result<Self> {
        match repr {
            RingRepr::Z => Ok(RingSpec::Integers),
            RingRepr::Fq { q } => RingSpec::polynomials_over(q),
        }
    }
}

impl From<RingSpec> for RingRepr {
    fn from(ring: RingSpec) -> Self {
        match ring {
            RingSpec::Integers => RingRepr::Z,
            RingSpec::PolynomialsOverFq { q } => RingRepr::Fq { q },
        }
    }
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec::Integers
    }

    /// F_q[T]. Rejects q that is not a prime power, and proper prime powers
    /// (extension-field coefficients are not supported).
    pub fn polynomials_over(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidFieldSize(q));
        }
        let p = smallest_prime_factor(q);
        if p == q {
            return Ok(RingSpec::PolynomialsOverFq { q });
        }
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        if rest == 1 {
            Err(Error::PrimePowerUnsupported(q))
        } else {
            Err(Error::InvalidFieldSize(q))
        }
    }

    /// Characteristic of the coefficient field, if any.
    pub fn field_size(self) -> Option<u64> {
        match self {
            RingSpec::Integers => None,
            RingSpec::PolynomialsOverFq { q } => Some(q),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::PolynomialsOverFq { q } => write!(f, "F{q}[T]"),
        }
    }
}

/// Canonical generator of a principal ideal: a positive integer, or a monic
/// polynomial stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generator {
    Int(u64),
    Poly(Vec<u64>),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Int(n) => write!(f, "{n}"),
            Generator::Poly(c) => write!(f, "{}", poly::format(c)),
        }
    }
}

/// A nonzero prime of A together with its norm |A/p|.
///
/// Ordering is by norm, then by generator: numeric for integers, and for
/// polynomials of equal norm (hence equal degree) lexicographic on the
/// coefficients with the constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    ring: RingSpec,
    norm: u64,
    generator: Generator,
}

impl PrimeIdeal {
    /// Validates the generator (primality / monic irreducibility).
    pub fn new(ring: RingSpec, generator: Generator) -> Result<Self> {
        match (ring, &generator) {
            (RingSpec::Integers, Generator::Int(n)) => {
                if *n < 2 || smallest_prime_factor(*n) != *n {
                    return Err(Error::NotPrime(n.to_string()));
                }
                Ok(PrimeIdeal { ring, norm: *n, generator })
            }
            (RingSpec::PolynomialsOverFq { q }, Generator::Poly(c)) => {
                if c.iter().any(|&x| x >= q) || c.last() != Some(&1) {
                    return Err(Error::InvalidGenerator(format!("{c:?}")));
                }
                if !poly::is_irreducible(c, q) {
                    return Err(Error::NotPrime(poly::format(c)));
                }
                let norm = checked_norm(q, c.len() - 1)?;
                Ok(PrimeIdeal { ring, norm, generator })
            }
            _ => Err(Error::RingMismatch),
        }
    }

    /// Construct without the primality check. Callers guarantee primality.
    pub(crate) fn new_unchecked(ring: RingSpec, generator: Generator, norm: u64) -> Self {
        PrimeIdeal { ring, norm, generator }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }
}

/// Serialized as its generator alone: an integer, or a coefficient array.
impl Serialize for PrimeIdeal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.generator.serialize(serializer)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

fn checked_norm(q: u64, degree: usize) -> Result<u64> {
    u32::try_from(degree)
        .ok()
        .and_then(|d| q.checked_pow(d))
        .ok_or(Error::Overflow("prime norm"))
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Sieve of Eratosthenes: all rational primes `<= limit`, ascending.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Monic irreducibles over F_q of each degree up to `max_degree`, in
/// canonical order. Each candidate is tested against the irreducibles of
/// degree at most half its own.
fn irreducibles_up_to(q: u64, max_degree: usize) -> Vec<Vec<Vec<u64>>> {
    let mut by_degree: Vec<Vec<Vec<u64>>> = vec![Vec::new(); max_degree + 1];
    for d in 1..=max_degree {
        let found: Vec<Vec<u64>> = poly::monic_of_degree(d, q)
            .filter(|f| {
                by_degree[1..=d / 2]
                    .iter()
                    .flatten()
                    .all(|g| !poly::divides(g, f, q))
            })
            .collect();
        by_degree[d] = found;
    }
    by_degree
}

fn max_degree_for(q: u64, max_norm: u64) -> usize {
    let mut d = 0usize;
    let mut norm = 1u64;
    while let Some(next) = norm.checked_mul(q) {
        if next > max_norm {
            break;
        }
        norm = next;
        d += 1;
    }
    d
}

/// Every prime of norm `<= max_norm`, once each, sorted by (norm, label).
pub fn enumerate_primes(ring: RingSpec, max_norm: u64) -> Result<Vec<PrimeIdeal>> {
    if max_norm == 0 {
        return Err(Error::ZeroNorm);
    }
    match ring {
        RingSpec::Integers => Ok(sieve(max_norm)
            .into_iter()
            .map(|p| PrimeIdeal::new_unchecked(ring, Generator::Int(p), p))
            .collect()),
        RingSpec::PolynomialsOverFq { q } => {
            let max_degree = max_degree_for(q, max_norm);
            let mut out = Vec::new();
            for (d, polys) in irreducibles_up_to(q, max_degree).into_iter().enumerate() {
                let norm = checked_norm(q, d)?;
                out.extend(
                    polys
                        .into_iter()
                        .map(|f| PrimeIdeal::new_unchecked(ring, Generator::Poly(f), norm)),
                );
            }
            Ok(out)
        }
    }
}

/// Norms of all primes with norm `<= max_norm`, ascending with multiplicity.
/// Cheaper than [`enumerate_primes`] when only norms matter.
pub fn prime_norms(ring: RingSpec, max_norm: u64) -> Result<Vec<u64>> {
    if max_norm == 0 {
        return Err(Error::ZeroNorm);
    }
    match ring {
        RingSpec::Integers => Ok(sieve(max_norm)),
        RingSpec::PolynomialsOverFq { q } => {
            let max_degree = max_degree_for(q, max_norm);
            let mut out = Vec::new();
            for d in 1..=max_degree {
                let count = irreducible_count(q, d);
                let norm = checked_norm(q, d)?;
                out.extend(std::iter::repeat_n(norm, count as usize));
            }
            Ok(out)
        }
    }
}

/// Number of monic irreducibles of degree `m` over F_q, by the Möbius
/// (necklace) formula (1/m) Σ_{d | m} μ(d) q^{m/d}.
pub fn irreducible_count(q: u64, m: usize) -> u64 {
    assert!(m >= 1);
    let mut total: i128 = 0;
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let mu = mobius(d as u64);
        if mu != 0 {
            total += mu as i128 * (q as i128).pow((m / d) as u32);
        }
    }
    (total / m as i128) as u64
}

pub(crate) fn mobius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Squarefree product of all primes of norm `<= n`.
pub fn primorial_ideal(ring: RingSpec, n: u64) -> Result<FactoredIdeal> {
    if n == 0 {
        return Err(Error::ZeroNorm);
    }
    let primes = enumerate_primes(ring, n)?;
    FactoredIdeal::from_factors(ring, primes.into_iter().map(|p| (p, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect()
    }

    #[test]
    fn integer_primes_small() {
        let ps = enumerate_primes(RingSpec::Integers, 10).unwrap();
        let gens: Vec<_> = ps.iter().map(|p| p.norm()).collect();
        assert_eq!(gens, vec![2, 3, 5, 7]);
        assert_eq!(gens, trial_division_primes(10));
        assert!(enumerate_primes(RingSpec::Integers, 1).unwrap().is_empty());
        assert_eq!(enumerate_primes(RingSpec::Integers, 0), Err(Error::ZeroNorm));
    }

    #[test]
    fn polynomial_primes_over_f2() {
        let f2 = RingSpec::polynomials_over(2).unwrap();
        let ps = enumerate_primes(f2, 4).unwrap();
        let gens: Vec<_> = ps.iter().map(|p| (p.generator().clone(), p.norm())).collect();
        assert_eq!(
            gens,
            vec![
                (Generator::Poly(vec![0, 1]), 2),
                (Generator::Poly(vec![1, 1]), 2),
                (Generator::Poly(vec![1, 1, 1]), 4),
            ]
        );
        let deg3: Vec<_> = enumerate_primes(f2, 8)
            .unwrap()
            .into_iter()
            .filter(|p| p.norm() == 8)
            .map(|p| p.generator().clone())
            .collect();
        assert_eq!(
            deg3,
            vec![Generator::Poly(vec![1, 0, 1, 1]), Generator::Poly(vec![1, 1, 0, 1])]
        );
        assert_eq!(irreducible_count(2, 3), (8 - 2) / 3);
    }

    #[test]
    fn exhaustive_irreducibility_matches_enumeration() {
        for q in [2u64, 3, 5] {
            let ring = RingSpec::polynomials_over(q).unwrap();
            let cap = q.pow(if q == 2 { 8 } else { 4 });
            let fast: Vec<_> = enumerate_primes(ring, cap)
                .unwrap()
                .into_iter()
                .map(|p| p.generator().clone())
                .collect();
            let mut slow = Vec::new();
            for d in 1..=max_degree_for(q, cap) {
                for f in poly::monic_of_degree(d, q) {
                    if poly::is_irreducible(&f, q) {
                        slow.push(Generator::Poly(f));
                    }
                }
            }
            assert_eq!(fast, slow, "q = {q}");
        }
    }

    #[test]
    fn ring_validation() {
        assert!(RingSpec::polynomials_over(7).is_ok());
        assert_eq!(RingSpec::polynomials_over(4), Err(Error::PrimePowerUnsupported(4)));
        assert_eq!(RingSpec::polynomials_over(6), Err(Error::InvalidFieldSize(6)));
        assert_eq!(RingSpec::polynomials_over(1), Err(Error::InvalidFieldSize(1)));
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeIdeal::new(RingSpec::Integers, Generator::Int(7)).is_ok());
        assert!(PrimeIdeal::new(RingSpec::Integers, Generator::Int(9)).is_err());
        let f2 = RingSpec::polynomials_over(2).unwrap();
        let p = PrimeIdeal::new(f2, Generator::Poly(vec![1, 1, 1])).unwrap();
        assert_eq!(p.norm(), 4);
        assert!(PrimeIdeal::new(f2, Generator::Poly(vec![1, 0, 1])).is_err());
        assert!(PrimeIdeal::new(f2, Generator::Int(2)).is_err());
    }

    #[test]
    fn serialization_formats() {
        let z = serde_json::to_string(&RingSpec::Integers).unwrap();
        assert_eq!(z, r#"{"ring":"Z"}"#);
        let f2 = RingSpec::polynomials_over(2).unwrap();
        assert_eq!(serde_json::to_string(&f2).unwrap(), r#"{"ring":"Fq","q":2}"#);
        let back: RingSpec = serde_json::from_str(r#"{"ring":"Fq","q":3}"#).unwrap();
        assert_eq!(back, RingSpec::PolynomialsOverFq { q: 3 });
        assert!(serde_json::from_str::<RingSpec>(r#"{"ring":"Fq","q":4}"#).is_err());
        let g = serde_json::to_string(&Generator::Poly(vec![1, 1, 1])).unwrap();
        assert_eq!(g, "[1,1,1]");
        assert_eq!(serde_json::to_string(&Generator::Int(7)).unwrap(), "7");
    }

    #[test]
    fn primorials() {
        assert_eq!(primorial_ideal(RingSpec::Integers, 10).unwrap().norm().to_string(), "210");
        assert!(primorial_ideal(RingSpec::Integers, 1).unwrap().is_unit());
        let f2 = RingSpec::polynomials_over(2).unwrap();
        assert_eq!(primorial_ideal(f2, 4).unwrap().norm().to_string(), "16");
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (n, &mu) in (1..=10).zip(expected.iter()) {
            assert_eq!(mobius(n), mu, "mu({n})");
        }
    }
}
