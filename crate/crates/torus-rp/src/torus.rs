use std::f64::consts::TAU;
use std::fmt;

use crate::error::{Error, Result};

/// Wrap an angle into `[0, 2π)`. The guard after `rem_euclid` catches the
/// rounding case where a tiny negative input lands exactly on `2π`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A point of `T^n`, stored as angle coordinates normalized to `[0, 2π)`.
///
/// Equality is exact equality of the normalized angles; no epsilon is used.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    angles: Vec<f64>,
}

impl TorusPoint {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::invalid("torus point needs dimension >= 1"));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::invalid("torus point angles must be finite"));
        }
        Ok(Self {
            angles: angles.into_iter().map(normalize_angle).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// The point `(θ_1, ..., θ_{n-1}, 2π − θ_n)`, i.e. the last coordinate
    /// reflected. Applying it twice gives back a point with equal angles.
    pub fn conjugate_last(&self) -> TorusPoint {
        let mut angles = self.angles.clone();
        let last = angles.len() - 1;
        angles[last] = normalize_angle(TAU - angles[last]);
        TorusPoint { angles }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a:.6}")?;
        }
        write!(f, ")")
    }
}

/// Integer frequency vector `k ∈ Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(k: Vec<i64>) -> Self {
        MultiIndex(k)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    /// Some component strictly positive and some strictly negative.
    pub fn is_mixed(&self) -> bool {
        self.0.iter().any(|&k| k > 0) && self.0.iter().any(|&k| k < 0)
    }

    /// Every component at least 1.
    pub fn is_a00(&self) -> bool {
        self.0.iter().all(|&k| k >= 1)
    }

    /// Every component non-negative.
    pub fn is_analytic(&self) -> bool {
        self.0.iter().all(|&k| k >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn negated(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&k| -k).collect())
    }

    /// Sign of the last component flipped; bridges the mixed box
    /// `[1,N]^{n-1} x [-N,-1]` and the analytic box `[1,N]^n`.
    pub fn flip_last(&self) -> MultiIndex {
        let mut k = self.0.clone();
        let last = k.len() - 1;
        k[last] = -k[last];
        MultiIndex(k)
    }

    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// `Σ_j k_j θ_j` for a point with matching dimension.
    pub fn dot(&self, angles: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(angles)
            .map(|(&k, &a)| k as f64 * a)
            .sum()
    }

    /// `max_j |k_j|`, the max-norm degree used for all boxes.
    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|k| k.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices with component `j` in `[lo, hi]`, in lexicographic order.
pub fn indices_in_box(dim: usize, lo: i64, hi: i64) -> Vec<MultiIndex> {
    assert!(dim >= 1);
    if lo > hi {
        return Vec::new();
    }
    let width = (hi - lo + 1) as usize;
    let mut out = Vec::with_capacity(width.pow(dim as u32));
    let mut current = vec![lo; dim];
    loop {
        out.push(MultiIndex(current.clone()));
        let mut pos = dim;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < hi {
                current[pos] += 1;
                for c in current.iter_mut().skip(pos + 1) {
                    *c = lo;
                }
                break;
            }
        }
    }
}
