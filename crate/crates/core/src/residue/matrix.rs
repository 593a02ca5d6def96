use serde::Serialize;

use super::{Elem, ResidueRing};
use crate::error::{Error, Result};

/// Square matrix over a residue ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matrix {
    r: usize,
    entries: Vec<Elem>,
}

impl Matrix {
    pub fn from_entries(r: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != r * r {
            return Err(Error::DimensionMismatch { expected: r * r, got: entries.len() });
        }
        Ok(Matrix { r, entries })
    }

    pub fn identity(ring: &ResidueRing, r: usize) -> Self {
        let mut entries = vec![0; r * r];
        for i in 0..r {
            entries[i * r + i] = ring.one();
        }
        Matrix { r, entries }
    }

    pub fn scalar(ring: &ResidueRing, r: usize, c: Elem) -> Self {
        let mut m = Self::identity(ring, r);
        for i in 0..r {
            m.entries[i * r + i] = c;
        }
        m
    }

    /// Identity plus `c` in position (i, j), i != j.
    pub fn transvection(ring: &ResidueRing, r: usize, i: usize, j: usize, c: Elem) -> Self {
        let mut m = Self::identity(ring, r);
        m.entries[i * r + j] = c;
        m
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.r + j]
    }

    pub fn mul(&self, ring: &ResidueRing, other: &Matrix) -> Matrix {
        let r = self.r;
        let mut entries = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                let mut acc = 0;
                for k in 0..r {
                    acc = ring.add(acc, ring.mul(self.get(i, k), other.get(k, j)));
                }
                entries[i * r + j] = acc;
            }
        }
        Matrix { r, entries }
    }

    /// Matrix acting on a column vector.
    pub fn apply(&self, ring: &ResidueRing, v: &[Elem]) -> Vec<Elem> {
        apply_raw(ring, self.r, &self.entries, v)
    }

    pub fn det(&self, ring: &ResidueRing) -> Elem {
        det_raw(ring, self.r, &self.entries)
    }

    pub fn is_invertible(&self, ring: &ResidueRing) -> bool {
        ring.is_unit(self.det(ring))
    }

    /// Inverse via the adjugate: A^{-1} = det(A)^{-1} adj(A).
    pub fn inverse(&self, ring: &ResidueRing) -> Result<Matrix> {
        let r = self.r;
        let d_inv = ring.inverse(self.det(ring)).ok_or(Error::NotInvertible)?;
        if r == 1 {
            return Ok(Matrix { r, entries: vec![d_inv] });
        }
        let mut entries = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                let minor = minor_entries(r, &self.entries, i, j);
                let mut c = det_raw(ring, r - 1, &minor);
                if (i + j) % 2 == 1 {
                    c = ring.neg(c);
                }
                // adj(A)[j][i] = cofactor(i, j)
                entries[j * r + i] = ring.mul(d_inv, c);
            }
        }
        Ok(Matrix { r, entries })
    }
}

#[inline]
pub(crate) fn apply_raw(ring: &ResidueRing, r: usize, m: &[Elem], v: &[Elem]) -> Vec<Elem> {
    (0..r)
        .map(|i| {
            (0..r).fold(0, |acc, k| ring.add(acc, ring.mul(m[i * r + k], v[k])))
        })
        .collect()
}

fn minor_entries(r: usize, m: &[Elem], row: usize, col: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity((r - 1) * (r - 1));
    for i in (0..r).filter(|&i| i != row) {
        for j in (0..r).filter(|&j| j != col) {
            out.push(m[i * r + j]);
        }
    }
    out
}

/// Determinant by cofactor expansion, valid over any commutative ring.
pub(crate) fn det_raw(ring: &ResidueRing, r: usize, m: &[Elem]) -> Elem {
    match r {
        0 => ring.one(),
        1 => m[0],
        2 => ring.sub(ring.mul(m[0], m[3]), ring.mul(m[1], m[2])),
        3 => {
            let t0 = ring.mul(m[0], ring.sub(ring.mul(m[4], m[8]), ring.mul(m[5], m[7])));
            let t1 = ring.mul(m[1], ring.sub(ring.mul(m[3], m[8]), ring.mul(m[5], m[6])));
            let t2 = ring.mul(m[2], ring.sub(ring.mul(m[3], m[7]), ring.mul(m[4], m[6])));
            ring.add(ring.sub(t0, t1), t2)
        }
        _ => {
            let mut acc = 0;
            for j in 0..r {
                if m[j] == 0 {
                    continue;
                }
                let term = ring.mul(m[j], det_raw(ring, r - 1, &minor_entries(r, m, 0, j)));
                acc = if j % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
            }
            acc
        }
    }
}
