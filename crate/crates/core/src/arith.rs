//! θ(a) = ∏_{p|a} (1 - 1/|p|)^{-1}, truncated Euler products for ζ_A(s), and
//! Mertens-type tables, with the numeric guards used throughout.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{prime_norms, FactoredIdeal, RingSpec};

/// Floor substituted for log log x when the true value is tiny or negative.
pub const LOGLOG_FLOOR: f64 = 1e-6;

/// Arguments below e^e have log log ≤ 1; rows there are flagged.
pub const SMALL_REGIME_LIMIT: f64 = 15.154_262_241_479_262;

/// Compensated (Kahan) summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// log log x with the floor applied, and whether x is in the small regime.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GuardedLogLog {
    pub value: f64,
    pub small_regime: bool,
}

pub fn guarded_loglog(x: f64) -> GuardedLogLog {
    let raw = if x > 1.0 { x.ln().ln() } else { f64::NEG_INFINITY };
    GuardedLogLog { value: raw.max(LOGLOG_FLOOR), small_regime: x < SMALL_REGIME_LIMIT }
}

/// Natural log of a big integer, accurate to f64 precision.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map_or(f64::NEG_INFINITY, |v| (v as f64).ln());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Guarded log log of a big integer; `ln_x` is ln of the argument.
pub fn guarded_loglog_ln(ln_x: f64) -> GuardedLogLog {
    let raw = if ln_x > 0.0 { ln_x.ln() } else { f64::NEG_INFINITY };
    GuardedLogLog {
        value: raw.max(LOGLOG_FLOOR),
        small_regime: ln_x < SMALL_REGIME_LIMIT.ln(),
    }
}

pub fn big_rational_to_f64(x: &BigRational) -> f64 {
    // ratio of logs keeps huge numerators and denominators in range
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    if num.bits() < 1000 && den.bits() < 1000 {
        if let (Some(n), Some(d)) = (num.to_f64(), den.to_f64()) {
            return n / d;
        }
    }
    (ln_big(num) - ln_big(den)).exp()
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// θ(a) as an exact rational; depends only on the primes dividing a.
pub fn theta(a: &FactoredIdeal) -> BigRational {
    a.factors()
        .map(|(p, _)| ratio(p.norm(), p.norm() - 1))
        .fold(BigRational::one(), |acc, x| acc * x)
}

/// ∏_{|p| ≤ max_norm} (1 - |p|^{-s})^{-1}, accumulated as a compensated sum
/// of logarithms.
pub fn zeta_partial(ring: RingSpec, s: u32, max_norm: u64) -> Result<f64> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("zeta needs s >= 2, got {s}")));
    }
    if max_norm < 2 {
        return Err(Error::InvalidParameter(format!("max_norm must be >= 2, got {max_norm}")));
    }
    let mut log_sum = KahanSum::default();
    for n in prime_norms(ring, max_norm)? {
        log_sum.add(-(-(n as f64).powi(-(s as i32))).ln_1p());
    }
    Ok(log_sum.value().exp())
}

/// ζ_A(s) in closed form for F_q[T]: 1 / (1 - q^{1-s}).
pub fn zeta_polynomial_closed_form(q: u64, s: u32) -> f64 {
    1.0 / (1.0 - (q as f64).powi(1 - s as i32))
}

/// One cutoff of a Mertens table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MertensRow {
    pub n: u64,
    /// ∏_{|p| ≤ n} (1 - 1/|p|)^{-1}
    pub product: f64,
    pub log_n: f64,
    /// product / log n
    pub ratio: f64,
    /// Σ_{|p| ≤ n} log |p|
    pub lognorm_sum: f64,
}

/// Rows at n = step, 2·step, ... up to max_n (rows with n < 2 are skipped
/// since log n vanishes there).
pub fn mertens_table(ring: RingSpec, max_n: u64, step: u64) -> Result<Vec<MertensRow>> {
    if max_n < 2 {
        return Err(Error::InvalidParameter(format!("max_n must be >= 2, got {max_n}")));
    }
    if step == 0 {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let norms = prime_norms(ring, max_n)?;
    let mut euler = KahanSum::default();
    let mut lognorm = KahanSum::default();
    let mut idx = 0;
    let mut rows = Vec::new();
    let mut n = step;
    while n <= max_n {
        while idx < norms.len() && norms[idx] <= n {
            let norm = norms[idx] as f64;
            euler.add(-(-1.0 / norm).ln_1p());
            lognorm.add(norm.ln());
            idx += 1;
        }
        if n >= 2 {
            let product = euler.value().exp();
            let log_n = (n as f64).ln();
            rows.push(MertensRow { n, product, log_n, ratio: product / log_n, lognorm_sum: lognorm.value() });
        }
        n = match n.checked_add(step) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(rows)
}
