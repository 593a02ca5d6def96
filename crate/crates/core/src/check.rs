//! Closed forms checked against enumeration, case by case. Every record
//! carries both sides as strings so reports stay exact.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{big_rational_to_f64, mertens_table, theta, zeta_partial, zeta_polynomial_closed_form};
use crate::error::Result;
use crate::residue::{
    cyclic_submodules, exact_order_count, fix_vector_order_formula, gl_order_bruteforce,
    gl_order_formula, line_stabilizer_bruteforce, orbit_census, stab_cyclic_order_formula, Budget,
    ResidueRing,
};
use crate::ring::{enumerate_primes, irreducible_count, poly, primorial_ideal, FactoredIdeal, Generator, RingSpec};
use crate::subgroup::{canonical_composita_instances, random_composita_instances, FiniteGroupHandle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub case: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl CheckRecord {
    fn new(suite: &str, case: String, expected: impl ToString, observed: impl ToString) -> Self {
        let expected = expected.to_string();
        let observed = observed.to_string();
        let pass = expected == observed;
        CheckRecord { suite: suite.into(), case, expected, observed, pass }
    }

    fn holds(suite: &str, case: String, statement: String, pass: bool) -> Self {
        CheckRecord { suite: suite.into(), case, expected: statement, observed: pass.to_string(), pass }
    }
}

/// Every nonzero ideal of norm ≤ max_norm, by generator: 1..=max_norm over
/// the integers, all monic polynomials of small enough degree over F_q.
pub fn ideals_up_to(ring: RingSpec, max_norm: u64) -> Result<Vec<FactoredIdeal>> {
    let gens: Vec<Generator> = match ring {
        RingSpec::Integers => (1..=max_norm).map(Generator::Int).collect(),
        RingSpec::PolynomialsOverFq { q } => {
            let mut out = Vec::new();
            let mut d = 0u32;
            while q.checked_pow(d).is_some_and(|n| n <= max_norm) {
                out.extend(poly::monic_of_degree(d as usize, q).map(Generator::Poly));
                d += 1;
            }
            out
        }
    };
    gens.iter().map(|g| FactoredIdeal::from_generator(ring, g)).collect()
}

fn case(ring: RingSpec, r: usize, a: &FactoredIdeal) -> String {
    format!("{ring} r={r} a={a}")
}

/// (ring, max norm, ranks) caps shared by the GL and orbit suites.
pub fn standard_caps() -> Result<Vec<(RingSpec, u64, Vec<usize>)>> {
    let f2 = RingSpec::polynomials_over(2)?;
    Ok(vec![
        (RingSpec::Integers, 9, vec![1, 2]),
        (f2, 8, vec![1, 2]),
        (RingSpec::Integers, 4, vec![3]),
        (f2, 4, vec![3]),
    ])
}

/// |GL_r(A/a)| by formula and by enumeration.
pub fn gl_order_checks(budget: Budget) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (ring, max_norm, ranks) in standard_caps()? {
        for a in ideals_up_to(ring, max_norm)? {
            let rr = ResidueRing::new(&a)?;
            for &r in &ranks {
                let brute = gl_order_bruteforce(&rr, r, budget)?;
                out.push(CheckRecord::new("gl_order", case(ring, r, &a), gl_order_formula(r, &a), brute));
            }
        }
    }
    Ok(out)
}

/// Orbit-stabilizer identities for every vector, the stabilizer of a point
/// of exact order a, and the number of such points.
pub fn orbit_checks(budget: Budget) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (ring, max_norm, ranks) in standard_caps()? {
        for a in ideals_up_to(ring, max_norm)? {
            let rr = ResidueRing::new(&a)?;
            for &r in &ranks {
                let c = case(ring, r, &a);
                let gl = gl_order_formula(r, &a);
                let census = orbit_census(&rr, r, budget)?;
                let bad = census
                    .iter()
                    .filter(|rec| BigUint::from(rec.orbit_size * rec.stabilizer_size) != gl)
                    .count();
                out.push(CheckRecord::new("orbit_times_stabilizer", c.clone(), 0, bad));
                let exact: Vec<_> = census.iter().filter(|rec| rec.order == a).collect();
                out.push(CheckRecord::new("exact_order_count", c.clone(), exact_order_count(r, &a), exact.len()));
                let fix = fix_vector_order_formula(r, &a);
                let wrong = exact.iter().filter(|rec| BigUint::from(rec.stabilizer_size) != fix).count();
                out.push(CheckRecord::new("fix_vector_order", c, 0, wrong));
            }
        }
    }
    Ok(out)
}

/// Setwise stabilizers of the cyclic submodules ⟨v⟩ ≅ A/a, for r ∈ {2, 3}
/// and |a| ≤ 5.
pub fn line_stabilizer_checks(budget: Budget) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for ring in [RingSpec::Integers, RingSpec::polynomials_over(2)?] {
        for a in ideals_up_to(ring, 5)?.into_iter().filter(|a| !a.is_unit()) {
            let rr = ResidueRing::new(&a)?;
            for r in [2, 3] {
                let gens: Vec<_> = cyclic_submodules(&rr, r)?.into_iter().map(|(g, _)| g).collect();
                let counts = line_stabilizer_bruteforce(&rr, r, &gens, budget)?;
                let formula = stab_cyclic_order_formula(r, &a)?;
                let wrong = counts.iter().filter(|&&c| BigUint::from(c) != formula).count();
                let c = format!("{} lines={}", case(ring, r, &a), gens.len());
                out.push(CheckRecord::new("stab_cyclic_order", c, 0, wrong));
            }
        }
    }
    Ok(out)
}

/// The composita inequality on seeded random instances in GL_2(Z/6) and on
/// every canonical-family instance in GL_2(Z/2), GL_2(Z/3).
pub fn composita_checks(seed: u64, random_count: usize, budget: Budget) -> Result<Vec<CheckRecord>> {
    let gl2 = |n: u64| -> Result<FiniteGroupHandle> {
        let a = FactoredIdeal::from_generator(RingSpec::Integers, &Generator::Int(n))?;
        FiniteGroupHandle::full_gl(Arc::new(ResidueRing::new(&a)?), 2, budget)
    };
    let mut out = Vec::new();
    let random = random_composita_instances(&gl2(6)?, random_count, seed)?;
    let violations = random.iter().filter(|r| !r.holds).count();
    out.push(CheckRecord::new("composita", format!("GL2(Z/6) random n={} seed={seed}", random.len()), 0, violations));
    for n in [2u64, 3] {
        let reps = canonical_composita_instances(&gl2(n)?)?;
        let violations = reps.iter().filter(|r| !r.holds).count();
        out.push(CheckRecord::new("composita", format!("GL2(Z/{n}) canonical n={}", reps.len()), 0, violations));
    }
    Ok(out)
}

/// θ of a primorial against the Mertens product, the Möbius count of
/// irreducibles, and ζ over F_q[T] against its closed form.
pub fn arithmetic_checks() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let f2 = RingSpec::polynomials_over(2)?;
    let f3 = RingSpec::polynomials_over(3)?;
    for (ring, max_n) in [(RingSpec::Integers, 1000), (f2, 256), (f3, 243)] {
        for row in mertens_table(ring, max_n, max_n / 4)? {
            let th = big_rational_to_f64(&theta(&primorial_ideal(ring, row.n)?));
            let rel = (row.product - th).abs() / th;
            out.push(CheckRecord::holds(
                "mertens_product_is_theta",
                format!("{ring} n={}", row.n),
                "relative error < 1e-12".into(),
                rel < 1e-12,
            ));
        }
    }
    for (ring, q) in [(f2, 2u64), (f3, 3)] {
        for m in 1..=5u32 {
            let primes = enumerate_primes(ring, q.pow(m))?;
            let of_degree = primes.iter().filter(|p| p.norm() == q.pow(m)).count();
            out.push(CheckRecord::new(
                "irreducible_count",
                format!("F{q}[T] degree {m}"),
                irreducible_count(q, m as usize),
                of_degree,
            ));
        }
        let z = zeta_partial(ring, 2, q.pow(12))?;
        let closed = zeta_polynomial_closed_form(q, 2);
        out.push(CheckRecord::holds(
            "zeta_closed_form",
            format!("F{q}[T] s=2 degree<=12"),
            "truncated product within 1e-3 of 1/(1-q^-1), from below".into(),
            z <= closed && closed - z < 1e-3,
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Number of random composita instances in the default suite.
pub const RANDOM_COMPOSITA: usize = 200;

pub fn run_all(seed: u64, budget: Budget) -> Result<CheckReport> {
    let mut records = gl_order_checks(budget)?;
    records.extend(orbit_checks(budget)?);
    records.extend(line_stabilizer_checks(budget)?);
    records.extend(composita_checks(seed, RANDOM_COMPOSITA, budget)?);
    records.extend(arithmetic_checks()?);
    let passed = records.iter().filter(|r| r.pass).count();
    Ok(CheckReport { passed, failed: records.len() - passed, records })
}
