//! Dense polynomials over a prime field F_p.
//!
//! A polynomial is a coefficient vector, constant term first, with no trailing
//! zeros. The zero polynomial is the empty vector.

use std::cmp::Ordering;

pub(crate) fn trim(mut coeffs: Vec<u64>) -> Vec<u64> {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

pub(crate) fn reduce_coeffs(coeffs: &[u64], p: u64) -> Vec<u64> {
    trim(coeffs.iter().map(|c| c % p).collect())
}

/// Degree of a nonzero polynomial; `None` for zero.
pub fn degree(f: &[u64]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(*m.last().unwrap(), p);
    let mut r = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (k, &mk) in m.iter().enumerate() {
            let sub = mul_mod(factor, mk, p);
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Exact quotient `a / m`, assuming `m` divides `a`.
pub fn div_exact(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(*m.last().unwrap(), p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(dm)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        q[shift] = factor;
        for (k, &mk) in m.iter().enumerate() {
            let sub = mul_mod(factor, mk, p);
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "div_exact called on a non-multiple");
    trim(q)
}

pub fn divides(d: &[u64], a: &[u64], p: u64) -> bool {
    rem(a, d, p).is_empty()
}

pub fn make_monic(f: &[u64], p: u64) -> Vec<u64> {
    match f.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = inv_mod(lead, p);
            f.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// All monic polynomials of degree `d`, in lexicographic order of the
/// coefficient vector read constant term first.
pub fn monic_of_degree(d: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        // c_0 is the most significant digit so that ascending idx is lex order.
        for j in (0..d).rev() {
            coeffs[j] = idx % p;
            idx /= p;
        }
        coeffs
    })
}

/// Degree first, then constant-term-first lexicographic.
pub fn canonical_cmp(a: &[u64], b: &[u64]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most half the degree of `f`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|k| monic_of_degree(k, p).all(|g| !divides(&g, f, p)))
}

pub fn format(f: &[u64]) -> String {
    if f.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (k, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "T".to_string(),
            _ => format!("T^{k}"),
        };
        let term = match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        };
        terms.push(term);
    }
    terms.join("+")
}
