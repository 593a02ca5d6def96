//! Field-degree intervals for torsion points, the torsion and isogeny bounds
//! as functions of [L:K], and the extremal towers that show the bounds are
//! attained up to a constant.
//!
//! Every constant reported here is measured; none is assumed.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    big_rational_to_f64, guarded_loglog, guarded_loglog_ln, ln_big, theta, zeta_partial,
    GuardedLogLog,
};
use crate::error::{Error, Result};
use crate::residue::{exact_order_count, gl_order_formula};
use crate::ring::{enumerate_primes, sieve, FactoredIdeal, PrimeIdeal, RingSpec};

/// Truncation cutoff (largest prime norm) for ζ_A values inside bound chains.
pub const ZETA_CUTOFF: u64 = 10_000;

/// A simulated (G_K, A)-module: rank, a uniform bound C₀ on the index of the
/// Galois image in GL_r(A/a), and an optional growth exponent γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleScenario {
    pub ring: RingSpec,
    pub r: usize,
    pub index_bound: u64,
    #[serde(serialize_with = "serialize_gamma")]
    pub gamma: Option<Rational64>,
}

fn serialize_gamma<S: serde::Serializer>(g: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match g {
        Some(g) => s.collect_str(g),
        None => s.serialize_none(),
    }
}

impl ModuleScenario {
    pub fn new(ring: RingSpec, r: usize, index_bound: u64, gamma: Option<Rational64>) -> Result<Self> {
        if r == 0 {
            return Err(Error::RankTooSmall { r, min: 1 });
        }
        if index_bound == 0 {
            return Err(Error::InvalidParameter("index bound must be >= 1".into()));
        }
        if let Some(g) = gamma {
            if g <= Rational64::zero() || g > Rational64::one() {
                return Err(Error::InvalidParameter(format!("gamma = {g} is not in (0, 1]")));
            }
        }
        Ok(ModuleScenario { ring, r, index_bound, gamma })
    }

    /// Full image (index 1), exponent 1/r.
    pub fn full_image(ring: RingSpec, r: usize) -> Result<Self> {
        Self::new(ring, r, 1, None)
    }

    /// γ if supplied, else 1/r.
    pub fn exponent(&self) -> f64 {
        match self.gamma {
            Some(g) => *g.numer() as f64 / *g.denom() as f64,
            None => 1.0 / self.r as f64,
        }
    }

    fn index(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.index_bound))
    }
}

fn big_ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// The admissible range of [K(x):K] for a point x of order a.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeInterval {
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub lower: BigRational,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub upper: BigRational,
}

/// [K(x):K] = (1/C) |a|^r ∏_{p|a} (1 - |p|^{-r}) with 1 ≤ C ≤ C₀.
pub fn degree_of_point(scenario: &ModuleScenario, a: &FactoredIdeal) -> Result<DegreeInterval> {
    if a.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let upper = to_rational(&exact_order_count(scenario.r, a));
    let lower = &upper / scenario.index();
    Ok(DegreeInterval { lower, upper })
}

/// Upper bounds for ∏[K(x_i):K] / [K(M[a]):K] over a basis x_1..x_r.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndepBound {
    /// C₀ ∏_{p|a} (1-|p|^{-r})^{r-1} ∏_{j<r} (1-|p|^{-j})^{-1}, exact.
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub exact: BigRational,
    /// C₀ ζ_A(2)⋯ζ_A(r-1) θ(a), with each ζ truncated at `zeta_cutoff`.
    pub zeta_form: f64,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub theta: BigRational,
    pub zeta_cutoff: u64,
}

pub fn indep_ratio_bound(scenario: &ModuleScenario, a: &FactoredIdeal) -> Result<IndepBound> {
    let r = scenario.r;
    if r < 2 {
        return Err(Error::RankTooSmall { r, min: 2 });
    }
    let mut exact = scenario.index();
    for (p, _) in a.factors() {
        let n = BigUint::from(p.norm());
        let nr = n.pow(r as u32);
        // (1 - N^{-r}) = (N^r - 1) / N^r
        let top = big_ratio(&(&nr - 1u32), &nr);
        for _ in 0..r - 1 {
            exact *= &top;
        }
        for j in 1..r {
            let nj = n.pow(j as u32);
            exact *= big_ratio(&nj, &(&nj - 1u32));
        }
    }
    let th = theta(a);
    let mut zeta_form = scenario.index_bound as f64 * big_rational_to_f64(&th);
    for s in 2..r {
        zeta_form *= zeta_partial(scenario.ring, s as u32, ZETA_CUTOFF)?;
    }
    Ok(IndepBound { exact, zeta_form, theta: th, zeta_cutoff: ZETA_CUTOFF })
}

/// A bound value together with the log-log guard status that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub ln_value: f64,
    pub small_regime: bool,
}

fn require_degree(degree: &BigUint) -> Result<()> {
    if degree < &BigUint::from(2u32) {
        return Err(Error::InvalidParameter(format!("degree must be >= 2, got {degree}")));
    }
    Ok(())
}

/// C ([L:K] log log [L:K])^γ, γ defaulting to 1/r.
pub fn torsion_upper_bound(
    scenario: &ModuleScenario,
    degree: &BigUint,
    constant: f64,
) -> Result<BoundValue> {
    require_degree(degree)?;
    let ln_d = ln_big(degree);
    let GuardedLogLog { value: ll, small_regime } = guarded_loglog_ln(ln_d);
    let ln_value = constant.ln() + scenario.exponent() * (ln_d + ll.ln());
    Ok(BoundValue { value: ln_value.exp(), ln_value, small_regime })
}

/// C [L:K]^γ for the p-primary part; no log log factor.
pub fn p_primary_bound(
    scenario: &ModuleScenario,
    _p: &PrimeIdeal,
    degree: &BigUint,
    constant: f64,
) -> Result<BoundValue> {
    require_degree(degree)?;
    let ln_value = constant.ln() + scenario.exponent() * ln_big(degree);
    Ok(BoundValue { value: ln_value.exp(), ln_value, small_regime: false })
}

/// C [L:K]^{1/(r-1)}: bound on |H| for an L-rational cyclic submodule H.
pub fn isogeny_degree_bound(
    scenario: &ModuleScenario,
    degree: &BigUint,
    constant: f64,
) -> Result<BoundValue> {
    let r = scenario.r;
    if r < 2 {
        return Err(Error::RankTooSmall { r, min: 2 });
    }
    require_degree(degree)?;
    let ln_value = constant.ln() + ln_big(degree) / (r - 1) as f64;
    Ok(BoundValue { value: ln_value.exp(), ln_value, small_regime: false })
}

/// Lower bound on [K(H):K] for a cyclic submodule H ≅ A/a:
/// |a|^{r-1} ∏_{p|a} (1 - |p|^{-r}) / C₀. Since ∏_{p|a}(1 - |p|^{-r}) ≥ 1/ζ_A(r)
/// this implies the ζ form |a|^{r-1} / (C₀ ζ_A(r)).
pub fn isogeny_field_degree_lower(scenario: &ModuleScenario, a: &FactoredIdeal) -> Result<BigRational> {
    let r = scenario.r;
    if r < 2 {
        return Err(Error::RankTooSmall { r, min: 2 });
    }
    let mut out = to_rational(&a.norm().pow((r - 1) as u32)) / scenario.index();
    for (p, _) in a.factors() {
        let nr = BigUint::from(p.norm()).pow(r as u32);
        out *= big_ratio(&(&nr - 1u32), &nr);
    }
    Ok(out)
}

/// One rung L_n = K(M[a_n]) of the primorial tower.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerRow {
    pub n: u64,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub ideal_norm: BigUint,
    /// |M[a_n]| = |a_n|^r
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub torsion_count: BigUint,
    /// |GL_r(A/a_n)|, i.e. [L_n:K] at index 1
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree_upper: BigUint,
    /// |GL_r(A/a_n)| / C₀
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree_lower: BigRational,
    /// torsion / (degree_upper · loglog degree_upper)^{1/r}; `None` on the
    /// trivial rung.
    pub ratio: Option<f64>,
    /// the same ratio at `degree_lower`
    pub ratio_at_lower: Option<f64>,
    pub small_regime: bool,
    pub trivial: bool,
}

fn tower_ratio(r: usize, ln_torsion: f64, ln_degree: f64) -> (f64, bool) {
    let ll = guarded_loglog_ln(ln_degree);
    ((ln_torsion - (ln_degree + ll.value.ln()) / r as f64).exp(), ll.small_regime)
}

fn tower_row(scenario: &ModuleScenario, n: u64, a: &FactoredIdeal) -> TowerRow {
    let r = scenario.r;
    let torsion_count = a.norm().pow(r as u32);
    let degree_upper = gl_order_formula(r, a);
    let degree_lower = to_rational(&degree_upper) / scenario.index();
    let trivial = a.is_unit();
    let ln_t = ln_big(&torsion_count);
    let ln_up = ln_big(&degree_upper);
    let (ratio, small_regime) = if trivial {
        (None, true)
    } else {
        let (x, small) = tower_ratio(r, ln_t, ln_up);
        (Some(x), small)
    };
    let ratio_at_lower = if trivial {
        None
    } else {
        let ln_low = ln_up - (scenario.index_bound as f64).ln();
        Some(tower_ratio(r, ln_t, ln_low).0)
    };
    TowerRow {
        n,
        ideal_norm: a.norm().clone(),
        torsion_count,
        degree_upper,
        degree_lower,
        ratio,
        ratio_at_lower,
        small_regime,
        trivial,
    }
}

/// Rows for the primorial ideals a_n = ∏_{|p| ≤ n} p: one at n = 1, one at
/// each n where a new prime norm is admitted, and one at `max_n`.
pub fn tower_table(scenario: &ModuleScenario, max_n: u64) -> Result<Vec<TowerRow>> {
    if max_n < 1 {
        return Err(Error::ZeroNorm);
    }
    let primes = enumerate_primes(scenario.ring, max_n)?;
    let mut cutoffs: Vec<u64> = std::iter::once(1).chain(primes.iter().map(|p| p.norm())).collect();
    cutoffs.push(max_n);
    cutoffs.dedup();
    let mut rows = Vec::with_capacity(cutoffs.len());
    let mut admitted = 0;
    for n in cutoffs {
        while admitted < primes.len() && primes[admitted].norm() <= n {
            admitted += 1;
        }
        let a = FactoredIdeal::from_factors(
            scenario.ring,
            primes[..admitted].iter().map(|p| (p.clone(), 1)),
        )?;
        rows.push(tower_row(scenario, n, &a));
    }
    Ok(rows)
}

/// One rung L_n = K(M[p^n]) of the p-primary tower.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PPrimaryRow {
    pub n: u32,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub torsion_count: BigUint,
    #[serde(serialize_with = "crate::serialize_decimal")]
    pub degree: BigUint,
    /// |p^n|^r / degree^{1/r}
    pub ratio: f64,
}

/// p-primary tower at index 1 for n = 1..=max_n.
pub fn p_primary_tower(scenario: &ModuleScenario, p: &PrimeIdeal, max_n: u32) -> Result<Vec<PPrimaryRow>> {
    if p.ring() != scenario.ring {
        return Err(Error::RingMismatch);
    }
    let r = scenario.r;
    (1..=max_n)
        .map(|n| {
            let a = FactoredIdeal::prime_power(p.clone(), n);
            let torsion_count = a.norm().pow(r as u32);
            let degree = gl_order_formula(r, &a);
            let ratio = (ln_big(&torsion_count) - ln_big(&degree) / r as f64).exp();
            Ok(PPrimaryRow { n, torsion_count, degree, ratio })
        })
        .collect()
}

/// Roots of unity in Q(ζ_n) against the degree φ(n).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclotomicRow {
    pub n: u64,
    /// φ(n) = [Q(ζ_n):Q]
    pub degree: u64,
    /// lcm(2, n): every root of unity in Q(ζ_n), including -1
    pub roots_of_unity: u64,
    /// roots / (degree · guarded loglog degree)
    pub ratio: f64,
    pub small_regime: bool,
    pub is_primorial: bool,
    /// maximum ratio over rows outside the small regime so far
    pub running_max: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclotomicReport {
    pub rows: Vec<CyclotomicRow>,
    /// max ratio outside the small regime
    pub measured_constant: Option<f64>,
    pub argmax: Option<u64>,
    pub argmax_is_primorial: bool,
    /// max ratio over primorial n outside the small regime
    pub primorial_max: Option<f64>,
    pub convention: &'static str,
}

/// Euler's totient for 0..=n by a sieve.
pub fn totients(n: u64) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n).collect();
    for p in sieve(n) {
        let mut k = p;
        while k <= n {
            phi[k as usize] -= phi[k as usize] / p;
            k += p;
        }
    }
    phi
}

pub fn cyclotomic_report(max_n: u64) -> Result<CyclotomicReport> {
    if max_n < 1 {
        return Err(Error::ZeroNorm);
    }
    let phi = totients(max_n);
    let mut primorials = std::collections::BTreeSet::from([1u64]);
    let mut acc = 1u64;
    for p in sieve(max_n) {
        match acc.checked_mul(p) {
            Some(next) if next <= max_n => {
                acc = next;
                primorials.insert(acc);
            }
            _ => break,
        }
    }
    let mut rows = Vec::with_capacity(max_n as usize);
    let mut best: Option<(f64, u64)> = None;
    let mut primorial_max: Option<f64> = None;
    for n in 1..=max_n {
        let degree = phi[n as usize];
        let roots = if n % 2 == 0 { n } else { 2 * n };
        let ll = guarded_loglog(degree as f64);
        let ratio = roots as f64 / (degree as f64 * ll.value);
        let is_primorial = primorials.contains(&n);
        if !ll.small_regime {
            if best.is_none_or(|(b, _)| ratio > b) {
                best = Some((ratio, n));
            }
            if is_primorial && primorial_max.is_none_or(|b| ratio > b) {
                primorial_max = Some(ratio);
            }
        }
        rows.push(CyclotomicRow {
            n,
            degree,
            roots_of_unity: roots,
            ratio,
            small_regime: ll.small_regime,
            is_primorial,
            running_max: best.map(|(b, _)| b),
        });
    }
    Ok(CyclotomicReport {
        rows,
        measured_constant: best.map(|(b, _)| b),
        argmax: best.map(|(_, n)| n),
        argmax_is_primorial: best.is_some_and(|(_, n)| primorials.contains(&n)),
        primorial_max,
        convention: "all roots of unity in Q(zeta_n): lcm(2, n) of them",
    })
}
