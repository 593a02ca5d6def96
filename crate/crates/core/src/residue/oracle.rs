//! Brute-force enumeration over all r×r matrices with entries in A/a. These
//! are the independent oracles for the closed forms in `formula.rs`; they
//! never consult those formulas.
//!
//! The candidate space is cut into fixed-size index ranges that are scanned
//! in parallel and reduced in range order, so results do not depend on the
//! thread count.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::matrix::{apply_raw, det_raw};
use super::{Elem, Matrix, ModuleVector, ResidueRing};
use crate::error::{Error, Result};
use crate::ring::FactoredIdeal;

/// Maximum number of candidate matrices an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget(pub u128);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded { required, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

const CHUNK: u64 = 1 << 14;

fn candidate_count(ring: &ResidueRing, r: usize) -> u128 {
    (ring.size() as u128)
        .checked_pow((r * r) as u32)
        .unwrap_or(u128::MAX)
}

/// Scans every matrix whose determinant is a unit, folding per chunk and
/// returning the chunk accumulators in index order.
fn scan_invertible<A, I, F>(
    ring: &ResidueRing,
    r: usize,
    budget: Budget,
    init: I,
    visit: F,
) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[Elem]) + Sync,
{
    let total = candidate_count(ring, r);
    budget.check(total)?;
    let total = total as u64;
    let n = ring.size() as u64;
    let len = r * r;
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut acc = init();
            // odometer: the last entry is the least significant digit
            let mut digits = vec![0 as Elem; len];
            let mut k = start;
            for slot in digits.iter_mut().rev() {
                *slot = (k % n) as Elem;
                k /= n;
            }
            for _ in start..end {
                if ring.is_unit(det_raw(ring, r, &digits)) {
                    visit(&mut acc, &digits);
                }
                for slot in digits.iter_mut().rev() {
                    *slot += 1;
                    if (*slot as u64) < n {
                        break;
                    }
                    *slot = 0;
                }
            }
            acc
        })
        .collect())
}

/// Counts invertible r×r matrices over A/a by testing every candidate's
/// determinant.
pub fn gl_order_bruteforce(ring: &ResidueRing, r: usize, budget: Budget) -> Result<u64> {
    let parts = scan_invertible(ring, r, budget, || 0u64, |acc, _| *acc += 1)?;
    Ok(parts.into_iter().sum())
}

/// All of GL_r(A/a), in candidate-index order.
pub fn enumerate_gl(ring: &ResidueRing, r: usize, budget: Budget) -> Result<Vec<Matrix>> {
    let parts = scan_invertible(ring, r, budget, Vec::new, |acc: &mut Vec<Matrix>, m| {
        acc.push(Matrix::from_entries(r, m.to_vec()).expect("r*r entries"))
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Index of a vector in the enumeration order of [`vectors`].
fn vector_index(ring: &ResidueRing, v: &[Elem]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * ring.size() + x as usize)
}

/// Every vector of (A/a)^r, lexicographically.
pub fn vectors(ring: &ResidueRing, r: usize) -> impl Iterator<Item = ModuleVector> + '_ {
    let n = ring.size();
    let count = n.pow(r as u32);
    (0..count).map(move |mut k| {
        let mut coords = vec![0 as Elem; r];
        for slot in coords.iter_mut().rev() {
            *slot = (k % n) as Elem;
            k /= n;
        }
        ModuleVector::new(coords)
    })
}

/// Orbit of `v` under GL_r(A/a) and the order of its stabilizer.
pub fn orbit_stabilizer_bruteforce(
    ring: &ResidueRing,
    r: usize,
    v: &ModuleVector,
    budget: Budget,
) -> Result<(u64, u64)> {
    if v.rank() != r {
        return Err(Error::DimensionMismatch { expected: r, got: v.rank() });
    }
    let parts = scan_invertible(
        ring,
        r,
        budget,
        || (BTreeSet::new(), 0u64),
        |(orbit, stab), m| {
            let w = apply_raw(ring, r, m, &v.coords);
            if w == v.coords {
                *stab += 1;
            }
            orbit.insert(w);
        },
    )?;
    let mut orbit = BTreeSet::new();
    let mut stab = 0;
    for (o, s) in parts {
        orbit.extend(o);
        stab += s;
    }
    Ok((orbit.len() as u64, stab))
}

/// Orbit/stabilizer data for one vector of (A/a)^r.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub vector: ModuleVector,
    pub order: FactoredIdeal,
    pub orbit_size: u64,
    pub stabilizer_size: u64,
}

/// Orbit and stabilizer sizes for every vector of (A/a)^r in one pass over
/// the group.
pub fn orbit_census(ring: &ResidueRing, r: usize, budget: Budget) -> Result<Vec<OrbitRecord>> {
    let all: Vec<ModuleVector> = vectors(ring, r).collect();
    let count = all.len();
    let words = count.div_ceil(64);
    let parts = scan_invertible(
        ring,
        r,
        budget,
        || (vec![0u64; count], vec![0u64; count * words]),
        |(stab, seen), m| {
            for (i, v) in all.iter().enumerate() {
                let w = apply_raw(ring, r, m, &v.coords);
                let j = vector_index(ring, &w);
                if j == i {
                    stab[i] += 1;
                }
                seen[i * words + j / 64] |= 1 << (j % 64);
            }
        },
    )?;
    let mut stab = vec![0u64; count];
    let mut seen = vec![0u64; count * words];
    for (s, b) in parts {
        stab.iter_mut().zip(s).for_each(|(x, y)| *x += y);
        seen.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
    }
    all.into_iter()
        .enumerate()
        .map(|(i, vector)| {
            let orbit_size = seen[i * words..(i + 1) * words]
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum();
            Ok(OrbitRecord {
                order: ring.element_order(&vector)?,
                vector,
                orbit_size,
                stabilizer_size: stab[i],
            })
        })
        .collect()
}

/// Cyclic submodules ⟨v⟩ ≅ A/a of (A/a)^r, each given by its smallest
/// generator (in vector order) together with its sorted member list.
pub fn cyclic_submodules(ring: &ResidueRing, r: usize) -> Result<Vec<(ModuleVector, Vec<Vec<Elem>>)>> {
    let full = ring.modulus();
    let mut seen: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    let mut out = Vec::new();
    for v in vectors(ring, r) {
        if &ring.element_order(&v)? != full {
            continue;
        }
        let span = ring.span(&v.coords);
        if seen.insert(span.clone()) {
            out.push((v, span));
        }
    }
    Ok(out)
}

/// For each cyclic submodule (given by a generator), the number of g in
/// GL_r(A/a) with g⟨v⟩ = ⟨v⟩. Since g preserves orders, g⟨v⟩ = ⟨v⟩ exactly
/// when g·v ∈ ⟨v⟩.
pub fn line_stabilizer_bruteforce(
    ring: &ResidueRing,
    r: usize,
    generators: &[ModuleVector],
    budget: Budget,
) -> Result<Vec<u64>> {
    let count = ring.size().pow(r as u32);
    let members: Vec<Vec<bool>> = generators
        .iter()
        .map(|g| {
            let mut mask = vec![false; count];
            for w in ring.span(&g.coords) {
                mask[vector_index(ring, &w)] = true;
            }
            mask
        })
        .collect();
    let parts = scan_invertible(
        ring,
        r,
        budget,
        || vec![0u64; generators.len()],
        |acc, m| {
            for (k, g) in generators.iter().enumerate() {
                let w = apply_raw(ring, r, m, &g.coords);
                if members[k][vector_index(ring, &w)] {
                    acc[k] += 1;
                }
            }
        },
    )?;
    let mut out = vec![0u64; generators.len()];
    for p in parts {
        out.iter_mut().zip(p).for_each(|(x, y)| *x += y);
    }
    Ok(out)
}
