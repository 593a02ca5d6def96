//! Subgroup sampling: a deterministic canonical family plus seeded random
//! generator sets, and the empirical constant they measure.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{composita_check, fixed_points, CompositaReport, FiniteGroupHandle, DEFAULT_CLOSURE_BUDGET};
use crate::arith::guarded_loglog;
use crate::bounds::ModuleScenario;
use crate::error::{Error, Result};
use crate::residue::{cyclic_submodules, vectors, Budget, Matrix, ResidueRing};
use crate::ring::FactoredIdeal;

/// A labelled member of the canonical family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub label: String,
    pub group: FiniteGroupHandle,
}

/// Trivial and full subgroups, the fixer of every nonzero vector and the
/// stabilizer of every cyclic submodule of full order, without repeats.
pub fn canonical_family(g: &FiniteGroupHandle) -> Result<Vec<FamilyMember>> {
    let ring = g.ring().clone();
    let r = g.rank();
    let identity = Matrix::identity(&ring, r);
    let mut out = vec![
        FamilyMember { label: "trivial".into(), group: g.filter(|m| *m == identity)? },
        FamilyMember { label: "full".into(), group: g.clone() },
    ];
    for v in vectors(&ring, r).filter(|v| !v.is_zero()) {
        let label = format!("fix{:?}", v.coords);
        out.push(FamilyMember { label, group: g.fixer_of(std::slice::from_ref(&v)) });
    }
    for (v, _) in cyclic_submodules(&ring, r)? {
        let label = format!("stab<{:?}>", v.coords);
        out.push(FamilyMember { label, group: g.stabilizer_of_span(&v) });
    }
    let mut seen = BTreeSet::new();
    out.retain(|m| {
        let mut key = m.group.elements().to_vec();
        key.sort();
        seen.insert(key)
    });
    Ok(out)
}

/// Subgroup generated by 1..=max_gens uniformly drawn elements of `parent`.
pub fn random_subgroup_of<R: Rng>(
    parent: &FiniteGroupHandle,
    rng: &mut R,
    max_gens: usize,
) -> Result<FiniteGroupHandle> {
    let k = rng.random_range(1..=max_gens.max(1));
    let gens = (0..k)
        .map(|_| parent.elements()[rng.random_range(0..parent.order())].clone())
        .collect();
    FiniteGroupHandle::generate(parent.ring().clone(), parent.rank(), gens, DEFAULT_CLOSURE_BUDGET)
}

/// Random subgroup of `g` from at most three generators.
pub fn random_subgroup<R: Rng>(g: &FiniteGroupHandle, rng: &mut R) -> Result<FiniteGroupHandle> {
    random_subgroup_of(g, rng, 3)
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `count` composita instances with two or three factors: each inner
/// subgroup is random in `g`, each outer one random inside its inner one.
pub fn random_composita_instances(
    g: &FiniteGroupHandle,
    count: usize,
    seed: u64,
) -> Result<Vec<CompositaReport>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let k = rng.random_range(2..=3);
            let mut inner = Vec::with_capacity(k);
            let mut outer = Vec::with_capacity(k);
            for _ in 0..k {
                let u = random_subgroup(g, &mut rng)?;
                outer.push(random_subgroup_of(&u, &mut rng, 2)?);
                inner.push(u);
            }
            composita_check(g, &inner, &outer)
        })
        .collect()
}

/// Every two-factor instance built from the canonical family, with outer
/// members drawn from the family as well.
pub fn canonical_composita_instances(g: &FiniteGroupHandle) -> Result<Vec<CompositaReport>> {
    let family = canonical_family(g)?;
    let mut pairs = Vec::new();
    for u in &family {
        for v in &family {
            if v.group.is_subgroup_of(&u.group) {
                pairs.push((u, v));
            }
        }
    }
    let mut jobs = Vec::new();
    for a in 0..pairs.len() {
        for b in a..pairs.len() {
            jobs.push((a, b));
        }
    }
    jobs.into_par_iter()
        .map(|(a, b)| {
            let inner = [pairs[a].0.group.clone(), pairs[b].0.group.clone()];
            let outer = [pairs[a].1.group.clone(), pairs[b].1.group.clone()];
            composita_check(g, &inner, &outer)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSample {
    pub family: String,
    pub subgroup_order: usize,
    pub index: u64,
    pub fixed_count: usize,
    pub structure: Vec<FactoredIdeal>,
    /// |H| / (index · loglog index)^exponent
    pub ratio: f64,
    pub small_regime: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanGroup {
    pub r: usize,
    pub modulus: FactoredIdeal,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub group: ScanGroup,
    pub exponent: f64,
    pub seed: u64,
    pub samples: Vec<ScanSample>,
    /// max ratio over samples whose index is at least e^e
    pub measured_constant: Option<f64>,
    pub argmax: Option<String>,
    /// max ratio over all samples, floor-guarded log log included
    pub measured_constant_all: f64,
}

fn sample(
    g: &FiniteGroupHandle,
    family: String,
    h: &FiniteGroupHandle,
    exponent: f64,
) -> Result<ScanSample> {
    let fixed = fixed_points(h, Budget::DEFAULT)?;
    let index = h.index_in(g)?;
    let ll = guarded_loglog(index as f64);
    let ratio = fixed.len() as f64 / (index as f64 * ll.value).powf(exponent);
    Ok(ScanSample {
        family,
        subgroup_order: h.order(),
        index,
        fixed_count: fixed.len(),
        structure: fixed.structure,
        ratio,
        small_regime: ll.small_regime,
    })
}

/// Measures max |H(L)| / ([L:K] loglog [L:K])^γ over subgroups of the full
/// image GL_r(A/a): the canonical family first, then `sample_size` random
/// subgroups.
pub fn empirical_bound_scan(
    scenario: &ModuleScenario,
    a: &FactoredIdeal,
    sample_size: usize,
    seed: u64,
    budget: Budget,
) -> Result<ScanReport> {
    if a.ring() != scenario.ring {
        return Err(Error::RingMismatch);
    }
    let ring = Arc::new(ResidueRing::new(a)?);
    let g = FiniteGroupHandle::full_gl(ring, scenario.r, budget)?;
    let exponent = scenario.exponent();
    let mut samples: Vec<ScanSample> = canonical_family(&g)?
        .into_par_iter()
        .map(|m| sample(&g, m.label, &m.group, exponent))
        .collect::<Result<_>>()?;
    let random: Vec<ScanSample> = (0..sample_size as u64)
        .into_par_iter()
        .map(|i| {
            let h = random_subgroup(&g, &mut stream_rng(seed, i))?;
            sample(&g, format!("random#{i}"), &h, exponent)
        })
        .collect::<Result<_>>()?;
    samples.extend(random);

    let mut best: Option<(f64, &str)> = None;
    let mut all = 0f64;
    for s in &samples {
        all = all.max(s.ratio);
        if !s.small_regime && best.is_none_or(|(b, _)| s.ratio > b) {
            best = Some((s.ratio, &s.family));
        }
    }
    let (measured_constant, argmax) = match best {
        Some((c, label)) => (Some(c), Some(label.to_string())),
        None => (None, None),
    };
    Ok(ScanReport {
        group: ScanGroup { r: g.rank(), modulus: a.clone(), order: g.order() },
        exponent,
        seed,
        samples,
        measured_constant,
        argmax,
        measured_constant_all: all,
    })
}
