use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::torus::{indices_in_box, MultiIndex, TorusPoint};

/// Classification of an atomic measure, a pure function of its weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureClass {
    /// All weights real and strictly positive (and at least one atom).
    Positive,
    /// All weights real.
    Real,
    /// Some weight has a non-zero imaginary part.
    Complex,
}

/// A finitely supported complex measure on `T^n`: atoms with complex weights.
///
/// Duplicate atom points are permitted; every moment is linear in the atom
/// list, so merging duplicates by summing weights never changes a moment.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    dim: usize,
    atoms: Vec<(TorusPoint, Complex64)>,
}

impl AtomicMeasure {
    pub fn new(dim: usize, atoms: Vec<(TorusPoint, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("measure dimension must be >= 1"));
        }
        for (p, w) in &atoms {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(Error::invalid("atom weights must be finite"));
            }
        }
        Ok(Self { dim, atoms })
    }

    /// Uniform weights `1/m` on the given points; positive with total mass 1.
    pub fn lebesgue_on_points(points: &[TorusPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("point list must be non-empty"));
        }
        let dim = points[0].dim();
        let w = Complex64::new(1.0 / points.len() as f64, 0.0);
        Self::new(dim, points.iter().map(|p| (p.clone(), w)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(TorusPoint, Complex64)] {
        &self.atoms
    }

    pub fn classification(&self) -> MeasureClass {
        if self.atoms.iter().any(|(_, w)| w.im != 0.0) {
            MeasureClass::Complex
        } else if !self.atoms.is_empty() && self.atoms.iter().all(|(_, w)| w.re > 0.0) {
            MeasureClass::Positive
        } else {
            MeasureClass::Real
        }
    }

    pub fn is_real(&self) -> bool {
        self.classification() != MeasureClass::Complex
    }

    pub fn is_positive(&self) -> bool {
        self.classification() == MeasureClass::Positive
    }

    /// `Σ |w|` over atoms; the measure is non-zero iff this is positive.
    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.norm()).sum()
    }

    /// `Σ w` over atoms, i.e. the moment at `k = 0`.
    pub fn total_mass(&self) -> Complex64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> AtomicMeasure {
        AtomicMeasure {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|(p, w)| (p.clone(), w * factor))
                .collect(),
        }
    }

    /// Concatenate atom lists; the linear-combination primitive for measures.
    pub fn sum(&self, other: &AtomicMeasure) -> Result<AtomicMeasure> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Ok(AtomicMeasure {
            dim: self.dim,
            atoms,
        })
    }

    /// Merge duplicate points (exact angle equality) by summing weights.
    pub fn merged(&self) -> AtomicMeasure {
        use std::collections::BTreeMap;
        let mut acc: BTreeMap<Vec<u64>, (TorusPoint, Complex64)> = BTreeMap::new();
        for (p, w) in &self.atoms {
            let key: Vec<u64> = p.angles().iter().map(|a| a.to_bits()).collect();
            acc.entry(key)
                .and_modify(|(_, total)| *total += w)
                .or_insert_with(|| (p.clone(), *w));
        }
        AtomicMeasure {
            dim: self.dim,
            atoms: acc.into_values().collect(),
        }
    }

    /// The moment `M(k) = ∫ z^k dμ = Σ_atoms w · e^{i k·θ}`.
    pub fn moment(&self, k: &MultiIndex) -> Result<Complex64> {
        if k.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: k.dim(),
            });
        }
        Ok(self
            .atoms
            .iter()
            .map(|(p, w)| w * Complex64::from_polar(1.0, k.dot(p.angles())))
            .sum())
    }

    /// Pushforward under `T(z_1, ..., z_n) = (z_1, ..., z_{n-1}, conj(z_n))`:
    /// each atom's last angle is reflected, weights unchanged. Satisfies
    /// `M_{T_*μ}(k_1, ..., k_n) = M_μ(k_1, ..., k_{n-1}, -k_n)` and `T² = Id`.
    pub fn pushforward_t(&self) -> AtomicMeasure {
        AtomicMeasure {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|(p, w)| (p.conjugate_last(), *w))
                .collect(),
        }
    }

    /// Poisson integral `Σ_atoms w · Π_j (1−|z_j|²)/|e^{iθ_j} − z_j|²` at an
    /// interior point of the polydisc. Positive for positive non-zero `μ`.
    pub fn poisson_eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        for zj in z {
            if zj.norm() >= 1.0 {
                return Err(Error::invalid(format!(
                    "poisson evaluation point must satisfy |z_j| < 1, got |{zj}| = {}",
                    zj.norm()
                )));
            }
        }
        let mut out = Complex64::new(0.0, 0.0);
        for (p, w) in &self.atoms {
            let mut kernel = 1.0;
            for (a, zj) in p.angles().iter().zip(z) {
                let zeta = Complex64::from_polar(1.0, *a);
                kernel *= (1.0 - zj.norm_sqr()) / (zeta - zj).norm_sqr();
            }
            out += w * kernel;
        }
        Ok(out)
    }

    /// Max of `|M(k)|` over mixed `k` in the box `max|k_j| <= N`. Defined for
    /// real measures only; the criterion it feeds is stated for those.
    pub fn rp_defect(&self, n_max: u32) -> Result<f64> {
        if !self.is_real() {
            return Err(Error::invalid(
                "rp defect is defined for real measures (all weights real)",
            ));
        }
        if n_max < 1 {
            return Err(Error::invalid("degree bound must be >= 1"));
        }
        let n = n_max as i64;
        let mut worst = 0.0_f64;
        for k in indices_in_box(self.dim, -n, n) {
            if k.is_mixed() {
                worst = worst.max(self.moment(&k)?.norm());
            }
        }
        Ok(worst)
    }

    /// Max of `|M(k)|` over `k ∈ [1, N]^n`; small values certify approximate
    /// annihilation of every analytic monomial with all exponents in `[1, N]`.
    pub fn a00_defect(&self, n_max: u32) -> Result<f64> {
        if n_max < 1 {
            return Err(Error::invalid("degree bound must be >= 1"));
        }
        let mut worst = 0.0_f64;
        for k in indices_in_box(self.dim, 1, n_max as i64) {
            worst = worst.max(self.moment(&k)?.norm());
        }
        Ok(worst)
    }

    /// Defect acceptance at level `(N, tol)`: defect `<= tol · max(1, TV)`.
    pub fn is_rp_candidate(&self, n_max: u32, tol: f64) -> Result<bool> {
        Ok(self.rp_defect(n_max)? <= tol * self.total_variation().max(1.0))
    }
}

/// Default relative tolerance for defect acceptance.
pub const DEFAULT_DEFECT_TOL: f64 = 1e-8;

/// Moments `M(k)` for every `k` with `max_j |k_j| <= N`, stored by index.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    dim: usize,
    degree: u32,
    entries: std::collections::BTreeMap<MultiIndex, Complex64>,
}

impl MomentTable {
    /// Guard against accidental exponential blowups in high dimension.
    const MAX_ENTRIES: usize = 2_000_000;

    pub fn compute(mu: &AtomicMeasure, degree: u32) -> Result<Self> {
        if degree < 1 {
            return Err(Error::invalid("moment table degree must be >= 1"));
        }
        let side = 2 * degree as usize + 1;
        let count = side.checked_pow(mu.dim() as u32).unwrap_or(usize::MAX);
        if count > Self::MAX_ENTRIES {
            return Err(Error::invalid(format!(
                "moment table would hold {count} entries (limit {})",
                Self::MAX_ENTRIES
            )));
        }
        let mut entries = std::collections::BTreeMap::new();
        for k in indices_in_box(mu.dim(), -(degree as i64), degree as i64) {
            let m = mu.moment(&k)?;
            entries.insert(k, m);
        }
        Ok(Self {
            dim: mu.dim(),
            degree,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn get(&self, k: &MultiIndex) -> Option<Complex64> {
        self.entries.get(k).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
