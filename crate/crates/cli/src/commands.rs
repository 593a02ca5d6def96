use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::{BigRational, Rational64};
use serde::Serialize;
use serde_json::{json, Value};
use torsion_core::arith::{
    big_rational_to_f64, mertens_table, theta, zeta_partial, zeta_polynomial_closed_form,
    LOGLOG_FLOOR, SMALL_REGIME_LIMIT,
};
use torsion_core::bounds::{
    cyclotomic_report, degree_of_point, indep_ratio_bound, isogeny_degree_bound,
    isogeny_field_degree_lower, p_primary_bound, p_primary_tower, torsion_upper_bound, tower_table,
    ModuleScenario, ZETA_CUTOFF,
};
use torsion_core::check::run_all;
use torsion_core::residue::{
    gl_order_bruteforce, line_stabilizer_bruteforce, orbit_census, orbit_stabilizer_bruteforce,
    GroupCount, GroupKind,
};
use torsion_core::subgroup::{empirical_bound_scan, intersection_degree, FiniteGroupHandle, DEFAULT_CLOSURE_BUDGET};
use torsion_core::{enumerate_primes, Budget, FactoredIdeal, Generator, ModuleVector, PrimeIdeal, ResidueRing, RingSpec};

use crate::args::{Cli, Command, Common, GroupArg, RingArg};
use crate::error::{CliError, Result};
use crate::output::{Budgets, Meta, OutputEnvelope, Truncation};

/// A finished command: the envelope and whether every internal check held.
pub struct Outcome {
    pub envelope: OutputEnvelope,
    pub ok: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn ring_spec(c: &Common) -> Result<RingSpec> {
    match c.ring {
        RingArg::Z => Ok(RingSpec::Integers),
        RingArg::Fq => {
            let q = c.q.ok_or_else(|| usage("--ring Fq needs --q"))?;
            Ok(RingSpec::polynomials_over(q)?)
        }
    }
}

fn parse_generator(ring: RingSpec, text: &str) -> Result<Generator> {
    let bad = || usage(format!("cannot parse ring element {text:?}"));
    match ring {
        RingSpec::Integers => text.trim().parse().map(Generator::Int).map_err(|_| bad()),
        RingSpec::PolynomialsOverFq { .. } => text
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()
            .map(Generator::Poly),
    }
}

fn modulus(c: &Common, ring: RingSpec) -> Result<FactoredIdeal> {
    let text = c.modulus.as_deref().ok_or_else(|| usage("this command needs --modulus"))?;
    Ok(FactoredIdeal::from_generator(ring, &parse_generator(ring, text)?)?)
}

fn prime(ring: RingSpec, text: &str) -> Result<PrimeIdeal> {
    Ok(PrimeIdeal::new(ring, parse_generator(ring, text)?)?)
}

fn gamma(c: &Common) -> Result<Option<Rational64>> {
    c.gamma
        .as_deref()
        .map(|g| g.trim().parse::<Rational64>().map_err(|_| usage(format!("cannot parse --gamma {g:?}"))))
        .transpose()
}

fn scenario(c: &Common, ring: RingSpec) -> Result<ModuleScenario> {
    Ok(ModuleScenario::new(ring, c.r, c.index_bound, gamma(c)?)?)
}

fn big(text: &str) -> Result<BigUint> {
    text.trim().parse().map_err(|_| usage(format!("cannot parse integer {text:?}")))
}

fn vector(text: &str, r: usize, ring: &ResidueRing) -> Result<ModuleVector> {
    let coords = text
        .split(',')
        .map(|x| match x.trim().parse::<u16>() {
            Ok(v) if (v as usize) < ring.size() => Ok(v),
            _ => Err(usage(format!("coordinate {x:?} is not a residue index below {}", ring.size()))),
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != r {
        return Err(usage(format!("vector {text:?} has {} coordinates, expected {r}", coords.len())));
    }
    Ok(ModuleVector::new(coords))
}

fn coords(v: &ModuleVector) -> String {
    v.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn exact(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rows<T: Serialize>(items: impl IntoIterator<Item = T>) -> Result<Vec<Value>> {
    items.into_iter().map(|x| Ok(serde_json::to_value(x)?)).collect()
}

fn required(v: Option<u64>, flag: &str) -> Result<u64> {
    v.ok_or_else(|| usage(format!("this command needs {flag}")))
}

fn residue_ring(a: &FactoredIdeal) -> Result<Arc<ResidueRing>> {
    Ok(Arc::new(ResidueRing::new(a)?))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let ring = ring_spec(c)?;
    let budget = Budget(c.budget);
    let mut truncation = Truncation {
        loglog_floor: LOGLOG_FLOOR,
        small_regime_limit: SMALL_REGIME_LIMIT,
        ..Default::default()
    };
    let mut seed = None;
    let mut summary = None;
    let mut ok = true;

    let (name, rows) = match &cli.command {
        Command::Primes => {
            let max = required(c.max_norm, "--max-norm")?;
            truncation.max_norm = Some(max);
            let primes = enumerate_primes(ring, max)?;
            let out = primes
                .iter()
                .map(|p| json!({"prime": p.to_string(), "generator": p.generator(), "norm": p.norm()}))
                .collect();
            ("primes", out)
        }
        Command::GlOrder { group, verify } => {
            let a = modulus(c, ring)?;
            let kind = match group {
                GroupArg::Gl => GroupKind::FullGL,
                GroupArg::Fix => GroupKind::FixOfVector,
                GroupArg::Stab => GroupKind::StabOfCyclicSubmodule,
                GroupArg::Units => GroupKind::UnitGroup,
            };
            let count = GroupCount::new(kind, c.r, &a)?;
            let row = |order: String, method: &str| {
                json!({"what": kind, "r": c.r, "modulus": a.to_string(), "order": order, "method": method})
            };
            let mut out = vec![row(count.order.to_string(), "formula")];
            if *verify {
                let rr = residue_ring(&a)?;
                let e1 = ModuleVector::basis(&rr, c.r, 0);
                let brute = match kind {
                    GroupKind::FullGL => gl_order_bruteforce(&rr, c.r, budget)?,
                    GroupKind::FixOfVector => orbit_stabilizer_bruteforce(&rr, c.r, &e1, budget)?.1,
                    GroupKind::StabOfCyclicSubmodule => {
                        line_stabilizer_bruteforce(&rr, c.r, std::slice::from_ref(&e1), budget)?[0]
                    }
                    GroupKind::UnitGroup => rr.elements().filter(|&x| rr.is_unit(x)).count() as u64,
                };
                ok = BigUint::from(brute) == count.order;
                out.push(row(brute.to_string(), "bruteforce"));
                summary = Some(json!({"agree": ok}));
            }
            ("gl-order", out)
        }
        Command::Orbit { vector: v } => {
            let a = modulus(c, ring)?;
            let rr = residue_ring(&a)?;
            let out = match v {
                Some(text) => {
                    let v = vector(text, c.r, &rr)?;
                    let (orbit, stab) = orbit_stabilizer_bruteforce(&rr, c.r, &v, budget)?;
                    vec![json!({
                        "vector": coords(&v),
                        "order": rr.element_order(&v)?.to_string(),
                        "orbit_size": orbit,
                        "stabilizer_size": stab,
                    })]
                }
                None => orbit_census(&rr, c.r, budget)?
                    .into_iter()
                    .map(|rec| {
                        json!({
                            "vector": coords(&rec.vector),
                            "order": rec.order.to_string(),
                            "orbit_size": rec.orbit_size,
                            "stabilizer_size": rec.stabilizer_size,
                        })
                    })
                    .collect(),
            };
            ("orbit", out)
        }
        Command::Theta => {
            let a = modulus(c, ring)?;
            let t = theta(&a);
            let row = json!({"modulus": a.to_string(), "theta": exact(&t), "value": big_rational_to_f64(&t)});
            ("theta", vec![row])
        }
        Command::Zeta { s } => {
            let max = required(c.max_norm, "--max-norm")?;
            truncation.zeta_cutoff = Some(max);
            let value = zeta_partial(ring, *s, max)?;
            let closed = match ring {
                RingSpec::PolynomialsOverFq { q } => Some(zeta_polynomial_closed_form(q, *s)),
                RingSpec::Integers => None,
            };
            ("zeta", vec![json!({"s": s, "max_norm": max, "value": value, "closed_form": closed})])
        }
        Command::Mertens { step } => {
            let max = required(c.max_n, "--max-n")?;
            truncation.max_n = Some(max);
            let step = step.unwrap_or((max / 100).max(1));
            ("mertens", rows(mertens_table(ring, max, step)?)?)
        }
        Command::Degree => {
            let sc = scenario(c, ring)?;
            let a = modulus(c, ring)?;
            let interval = degree_of_point(&sc, &a)?;
            let indep = if c.r >= 2 { Some(indep_ratio_bound(&sc, &a)?) } else { None };
            truncation.zeta_cutoff = indep.as_ref().map(|b| b.zeta_cutoff);
            let row = json!({
                "modulus": a.to_string(),
                "r": c.r,
                "index_bound": c.index_bound,
                "degree_lower": exact(&interval.lower),
                "degree_upper": exact(&interval.upper),
                "indep_exact": indep.as_ref().map(|b| exact(&b.exact)),
                "indep_zeta_form": indep.as_ref().map(|b| b.zeta_form),
                "theta": exact(&theta(&a)),
            });
            ("degree", vec![row])
        }
        Command::Bound { degree, constant, prime: p } => {
            let sc = scenario(c, ring)?;
            let d = big(degree)?;
            let (kind, value) = match p {
                Some(p) => ("p-primary", p_primary_bound(&sc, &prime(ring, p)?, &d, *constant)?),
                None => ("torsion", torsion_upper_bound(&sc, &d, *constant)?),
            };
            let row = json!({
                "kind": kind,
                "degree": d.to_string(),
                "constant": constant,
                "exponent": sc.exponent(),
                "value": value.value,
                "ln_value": value.ln_value,
                "small_regime": value.small_regime,
            });
            ("bound", vec![row])
        }
        Command::IsogenyBound { degree, constant } => {
            let sc = scenario(c, ring)?;
            let d = big(degree)?;
            let value = isogeny_degree_bound(&sc, &d, *constant)?;
            let lower = match &c.modulus {
                Some(_) => Some(exact(&isogeny_field_degree_lower(&sc, &modulus(c, ring)?)?)),
                None => None,
            };
            let row = json!({
                "degree": d.to_string(),
                "constant": constant,
                "value": value.value,
                "ln_value": value.ln_value,
                "field_degree_lower": lower,
            });
            ("isogeny-bound", vec![row])
        }
        Command::Tower { prime: p } => {
            let sc = scenario(c, ring)?;
            let max = required(c.max_n, "--max-n")?;
            truncation.max_n = Some(max);
            let out = match p {
                Some(p) => {
                    let n = u32::try_from(max).map_err(|_| usage("--max-n too large for a p-primary tower"))?;
                    rows(p_primary_tower(&sc, &prime(ring, p)?, n)?)?
                }
                None => rows(tower_table(&sc, max)?)?,
            };
            ("tower", out)
        }
        Command::Cyclotomic => {
            let max = required(c.max_n, "--max-n")?;
            truncation.max_n = Some(max);
            let report = cyclotomic_report(max)?;
            summary = Some(json!({
                "measured_constant": report.measured_constant,
                "argmax": report.argmax,
                "argmax_is_primorial": report.argmax_is_primorial,
                "primorial_max": report.primorial_max,
                "convention": report.convention,
            }));
            ("cyclotomic", rows(report.rows)?)
        }
        Command::Simulate { samples, x1, x2 } => {
            seed = Some(c.seed);
            let sc = scenario(c, ring)?;
            let a = modulus(c, ring)?;
            let report = empirical_bound_scan(&sc, &a, *samples, c.seed, budget)?;
            let mut s = json!({
                "group": report.group,
                "exponent": report.exponent,
                "measured_constant": report.measured_constant,
                "argmax": report.argmax,
                "measured_constant_all": report.measured_constant_all,
            });
            if let (Some(x1), Some(x2)) = (x1, x2) {
                let g = FiniteGroupHandle::full_gl(residue_ring(&a)?, c.r, budget)?;
                let (v1, v2) = (vector(x1, c.r, g.ring())?, vector(x2, c.r, g.ring())?);
                let rep = intersection_degree(&g, &v1, &v2)?;
                s["intersection"] = json!({
                    "x1": coords(&v1),
                    "x2": coords(&v2),
                    "degree": rep.degree,
                    "theta": exact(&rep.theta),
                    "ratio": rep.ratio,
                });
            }
            summary = Some(s);
            ("simulate", rows(report.samples)?)
        }
        Command::CheckAll => {
            seed = Some(c.seed);
            truncation.zeta_cutoff = Some(ZETA_CUTOFF);
            let report = run_all(c.seed, budget)?;
            ok = report.all_pass();
            summary = Some(json!({"passed": report.passed, "failed": report.failed}));
            ("check-all", rows(report.records)?)
        }
    };

    let envelope = OutputEnvelope {
        command: name.into(),
        params: serde_json::to_value(cli)?,
        rows,
        summary,
        meta: Meta {
            version: env!("CARGO_PKG_VERSION"),
            seed,
            budgets: Budgets { enumeration: c.budget, closure: DEFAULT_CLOSURE_BUDGET },
            truncation,
        },
    };
    Ok(Outcome { envelope, ok })
}
