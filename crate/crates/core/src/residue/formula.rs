//! Closed-form orders of GL_r(A/a) and of the stabilizers that appear in the
//! degree computations. All products are exact; nothing passes through
//! floating point.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::FactoredIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    FullGL,
    FixOfVector,
    StabOfCyclicSubmodule,
    UnitGroup,
}

/// A group order tagged with what was counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCount {
    pub what: GroupKind,
    pub r: usize,
    pub modulus: FactoredIdeal,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub order: BigUint,
}

impl GroupCount {
    pub fn new(what: GroupKind, r: usize, modulus: &FactoredIdeal) -> Result<Self> {
        let order = match what {
            GroupKind::FullGL => gl_order_formula(r, modulus),
            GroupKind::FixOfVector => fix_vector_order_formula(r, modulus),
            GroupKind::StabOfCyclicSubmodule => stab_cyclic_order_formula(r, modulus)?,
            GroupKind::UnitGroup => unit_group_order(modulus),
        };
        Ok(GroupCount { what, r, modulus: modulus.clone(), order })
    }

    /// The order as a machine integer, refusing rather than wrapping.
    pub fn order_u64(&self) -> Result<u64> {
        self.order.to_u64().ok_or(Error::Overflow("group order"))
    }
}

fn big_pow(base: u64, exp: usize) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// |GL_r(A/p)| = ∏_{j<r} (N^r - N^j) for a prime of norm N.
fn gl_over_residue_field(r: usize, norm: u64) -> BigUint {
    let nr = big_pow(norm, r);
    (0..r).map(|j| &nr - big_pow(norm, j)).product()
}

/// |GL_r(A/a)| = |a|^{r²} ∏_{p|a} (1 - |p|^{-1}) ⋯ (1 - |p|^{-r}), evaluated
/// per prime power as |p|^{(e-1) r²} |GL_r(A/p)|. r = 0 gives 1.
pub fn gl_order_formula(r: usize, a: &FactoredIdeal) -> BigUint {
    a.factors()
        .map(|(p, e)| big_pow(p.norm(), (e as usize - 1) * r * r) * gl_over_residue_field(r, p.norm()))
        .product()
}

/// |(A/a)^×| = |a| ∏_{p|a} (1 - 1/|p|).
pub fn unit_group_order(a: &FactoredIdeal) -> BigUint {
    a.factors()
        .map(|(p, e)| big_pow(p.norm(), e as usize - 1) * BigUint::from(p.norm() - 1))
        .product()
}

/// Order of the fixer of a point of exact order a: |a|^{r-1} |GL_{r-1}(A/a)|.
pub fn fix_vector_order_formula(r: usize, a: &FactoredIdeal) -> BigUint {
    if r == 0 {
        return BigUint::one();
    }
    a.norm().pow((r - 1) as u32) * gl_order_formula(r - 1, a)
}

/// Order of the stabilizer of a cyclic submodule H ≅ A/a:
/// |(A/a)^×| · |a|^{r-1} · |GL_{r-1}(A/a)|. Needs r >= 2.
pub fn stab_cyclic_order_formula(r: usize, a: &FactoredIdeal) -> Result<BigUint> {
    if r < 2 {
        return Err(Error::RankTooSmall { r, min: 2 });
    }
    Ok(unit_group_order(a) * fix_vector_order_formula(r, a))
}

/// Number of points of exact order a in (A/a)^r: |a|^r ∏_{p|a} (1 - |p|^{-r}).
pub fn exact_order_count(r: usize, a: &FactoredIdeal) -> BigUint {
    a.factors()
        .map(|(p, e)| {
            big_pow(p.norm(), (e as usize - 1) * r) * (big_pow(p.norm(), r) - BigUint::one())
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Generator, RingSpec};

    fn z(n: u64) -> FactoredIdeal {
        FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(n)).unwrap()
    }

    fn f2(coeffs: &[u64]) -> FactoredIdeal {
        let ring = RingSpec::polynomials_over(2).unwrap();
        FactoredIdeal::from_generator(ring, &Generator::Poly(coeffs.to_vec())).unwrap()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    // Expected values below come from brute-force enumeration (see oracle.rs
    // tests) and are frozen here.
    #[test]
    fn gl_orders() {
        assert_eq!(gl_order_formula(2, &z(2)), n(6));
        assert_eq!(gl_order_formula(2, &z(4)), n(96));
        assert_eq!(gl_order_formula(1, &z(4)), n(2));
        assert_eq!(gl_order_formula(2, &f2(&[0, 1])), n(6));
        assert_eq!(gl_order_formula(2, &z(3)), n(48));
        assert_eq!(gl_order_formula(1, &z(1)), n(1));
        assert_eq!(gl_order_formula(3, &z(2)), n(168));
    }

    #[test]
    fn unit_orders() {
        assert_eq!(unit_group_order(&z(4)), n(2));
        assert_eq!(unit_group_order(&z(1)), n(1));
        assert_eq!(unit_group_order(&f2(&[0, 1, 1])), n(1));
        assert_eq!(unit_group_order(&z(210)), n(48));
    }

    #[test]
    fn fixer_and_stabilizer_orders() {
        assert_eq!(fix_vector_order_formula(2, &z(2)), n(2));
        assert_eq!(fix_vector_order_formula(2, &z(4)), n(8));
        assert_eq!(fix_vector_order_formula(1, &z(12)), n(1));
        assert_eq!(stab_cyclic_order_formula(2, &z(2)).unwrap(), n(2));
        assert_eq!(stab_cyclic_order_formula(2, &z(3)).unwrap(), n(12));
        assert_eq!(stab_cyclic_order_formula(3, &z(2)).unwrap(), n(24));
        assert_eq!(
            stab_cyclic_order_formula(1, &z(2)),
            Err(Error::RankTooSmall { r: 1, min: 2 })
        );
        // orbit sizes: 96 / 8 = 12 points of exact order 4 in (Z/4)^2
        assert_eq!(exact_order_count(2, &z(4)), n(12));
        assert_eq!(exact_order_count(3, &z(2)), n(7));
    }

    #[test]
    fn overflow_is_reported() {
        let huge = GroupCount::new(GroupKind::FullGL, 4, &z(1_000_003)).unwrap();
        assert_eq!(huge.order_u64(), Err(Error::Overflow("group order")));
        let small = GroupCount::new(GroupKind::FullGL, 2, &z(4)).unwrap();
        assert_eq!(small.order_u64(), Ok(96));
    }

    #[test]
    fn serialized_order_is_a_decimal_string() {
        let c = GroupCount::new(GroupKind::FullGL, 2, &z(4)).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["order"], "96");
        assert_eq!(json["what"], "FullGL");
    }
}
