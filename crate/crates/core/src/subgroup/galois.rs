//! Field-degree statements checked in their group-theoretic translation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::{FiniteGroupHandle, DEFAULT_CLOSURE_BUDGET};
use crate::arith::{big_rational_to_f64, theta};
use crate::error::{Error, Result};
use crate::residue::ModuleVector;
use crate::ring::FactoredIdeal;

/// Both sides of ∏[K_i:K] / [K_1⋯K_n:K] ≤ ∏[L_i:K] / [L_1⋯L_n:K] with
/// K_i ↔ inner[i] and L_i ↔ outer[i].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositaReport {
    pub factors: usize,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub left: BigRational,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub right: BigRational,
    pub holds: bool,
}

fn side(g: &FiniteGroupHandle, subgroups: &[FiniteGroupHandle]) -> Result<BigRational> {
    let mut product = BigRational::one();
    let mut meet = g.clone();
    for u in subgroups {
        product *= BigRational::from_integer(BigInt::from(u.index_in(g)?));
        meet = meet.intersection(u);
    }
    let meet_index = BigInt::from(meet.index_in(g)?);
    Ok(product / BigRational::from_integer(meet_index))
}

pub fn composita_check(
    g: &FiniteGroupHandle,
    inner: &[FiniteGroupHandle],
    outer: &[FiniteGroupHandle],
) -> Result<CompositaReport> {
    if inner.len() != outer.len() {
        return Err(Error::DimensionMismatch { expected: inner.len(), got: outer.len() });
    }
    for (i, (u, v)) in inner.iter().zip(outer).enumerate() {
        if !u.is_subgroup_of(g) {
            return Err(Error::Containment(format!("inner[{i}] is not contained in G")));
        }
        if !v.is_subgroup_of(u) {
            return Err(Error::Containment(format!("outer[{i}] is not contained in inner[{i}]")));
        }
    }
    let left = side(g, inner)?;
    let right = side(g, outer)?;
    let holds = left <= right;
    Ok(CompositaReport { factors: inner.len(), left, right, holds })
}

/// [K(x_1) ∩ K(x_2) : K] realized as [G : ⟨Fix(x_1), Fix(x_2)⟩].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntersectionReport {
    pub degree: u64,
    pub order: FactoredIdeal,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub theta: BigRational,
    /// degree / θ(a): the constant this instance demands
    pub ratio: f64,
}

pub fn intersection_degree(
    g: &FiniteGroupHandle,
    x1: &ModuleVector,
    x2: &ModuleVector,
) -> Result<IntersectionReport> {
    let ring = g.ring();
    let order = ring.element_order(x1)?;
    if ring.element_order(x2)? != order {
        return Err(Error::Hypothesis("points have different orders".into()));
    }
    if order.is_unit() {
        return Err(Error::Hypothesis("points must be nonzero".into()));
    }
    let s1 = ring.span(&x1.coords);
    let s2 = ring.span(&x2.coords);
    if s1.iter().any(|w| w.iter().any(|&c| c != 0) && s2.binary_search(w).is_ok()) {
        return Err(Error::Hypothesis("cyclic submodules intersect nontrivially".into()));
    }
    let f1 = g.fixer_of(std::slice::from_ref(x1));
    let f2 = g.fixer_of(std::slice::from_ref(x2));
    join_degree(g, &f1, &f2, order)
}

/// [G : ⟨U_1, U_2⟩] for given subgroups, reported against θ(order).
pub fn join_degree(
    g: &FiniteGroupHandle,
    u1: &FiniteGroupHandle,
    u2: &FiniteGroupHandle,
    order: FactoredIdeal,
) -> Result<IntersectionReport> {
    let joined = u1.join(u2, DEFAULT_CLOSURE_BUDGET)?;
    let degree = joined.index_in(g)?;
    let theta = theta(&order);
    let ratio = degree as f64 / big_rational_to_f64(&theta);
    Ok(IntersectionReport { degree, order, theta, ratio })
}
