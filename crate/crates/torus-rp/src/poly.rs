use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::torus::{MultiIndex, TorusPoint};

/// A finite trigonometric polynomial `Σ_k c_k z^k` with arbitrary integer
/// frequencies. Coefficient maps are sparse; exact zeros are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TrigPolynomial {
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("polynomial dimension must be >= 1"));
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.dim(),
                });
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::invalid("polynomial coefficients must be finite"));
            }
            if c != Complex64::new(0.0, 0.0) {
                *coeffs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self { dim, coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single term `c · z^k`.
    pub fn monomial(k: MultiIndex, c: Complex64) -> Self {
        let dim = k.dim();
        Self::new(dim, [(k, c)]).expect("monomial term is well-formed")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max_k max_j |k_j|` over stored terms; 0 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().map(|k| k.max_abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, p: &TorusPoint) -> Result<Complex64> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, k.dot(p.angles())))
            .sum())
    }

    /// `∫ f dμ = Σ_k c_k · M(k)`; equals the atom-sum `Σ w·f(p)` exactly in
    /// exact arithmetic.
    pub fn pair_integral(&self, mu: &AtomicMeasure) -> Result<Complex64> {
        if mu.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: mu.dim(),
            });
        }
        let mut out = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            out += c * mu.moment(k)?;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: Complex64) -> TrigPolynomial {
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            let s = c * factor;
            if s != Complex64::new(0.0, 0.0) {
                coeffs.insert(k.clone(), s);
            }
        }
        TrigPolynomial {
            dim: self.dim,
            coeffs,
        }
    }

    /// Multiply by the monomial `z^k`, shifting every frequency by `k`.
    pub fn shifted(&self, k: &MultiIndex) -> Result<TrigPolynomial> {
        if k.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: k.dim(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(idx, c)| (idx.sub(&k.negated()), *c))
            .collect();
        Ok(TrigPolynomial {
            dim: self.dim,
            coeffs,
        })
    }

    /// `Σ_k |Re c_k| + |Im c_k|`, the budget norm used by certificates.
    pub fn l1_split_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.re.abs() + c.im.abs()).sum()
    }
}

/// An analytic polynomial: all frequencies non-negative. The computational
/// stand-in for trigonometric-polynomial members of the polydisc algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticPolynomial(TrigPolynomial);

impl AnalyticPolynomial {
    pub fn new(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Complex64)>,
    ) -> Result<Self> {
        let inner = TrigPolynomial::new(dim, terms)?;
        if let Some(k) = inner.coeffs.keys().find(|k| !k.is_analytic()) {
            return Err(Error::invalid(format!(
                "analytic polynomial cannot carry the negative frequency {k}"
            )));
        }
        Ok(Self(inner))
    }

    /// The monomial `z^k` with unit coefficient; `k` must be analytic.
    pub fn monomial(k: MultiIndex) -> Result<Self> {
        let dim = k.dim();
        Self::new(dim, [(k, Complex64::new(1.0, 0.0))])
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Every stored frequency has all components >= 1.
    pub fn is_a00(&self) -> bool {
        self.0.coeffs.keys().all(|k| k.is_a00())
    }

    /// `max_k max_j k_j` over stored terms; 0 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.degree()
    }

    pub fn eval(&self, p: &TorusPoint) -> Result<Complex64> {
        self.0.eval(p)
    }

    pub fn pair_integral(&self, mu: &AtomicMeasure) -> Result<Complex64> {
        self.0.pair_integral(mu)
    }

    pub fn scaled(&self, factor: Complex64) -> AnalyticPolynomial {
        AnalyticPolynomial(self.0.scaled(factor))
    }

    pub fn l1_split_norm(&self) -> f64 {
        self.0.l1_split_norm()
    }

    pub fn as_trig(&self) -> &TrigPolynomial {
        &self.0
    }

    pub fn into_trig(self) -> TrigPolynomial {
        self.0
    }
}

/// The closed half-plane `{w : Re(e^{−iθ} w) ≥ ε}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub epsilon: f64,
    pub theta: f64,
}

impl HalfPlane {
    pub fn new(epsilon: f64, theta: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::invalid("half-plane requires epsilon > 0"));
        }
        Ok(Self {
            epsilon,
            theta: crate::torus::normalize_angle(theta),
        })
    }

    pub fn contains(&self, w: Complex64) -> bool {
        (Complex64::from_polar(1.0, -self.theta) * w).re >= self.epsilon
    }
}

/// Outcome of checking whether `f` maps a point set into a half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverReport {
    pub epsilon: f64,
    pub theta: f64,
    /// `Re(e^{−iθ} f(p))` per point, in input order.
    pub margins: Vec<f64>,
    pub covered: bool,
    /// Set when the cover holds for an `A_0⃗` polynomial with ε > 0: no
    /// positive measure supported on these points annihilates that space.
    pub conclusion: Option<String>,
}

pub const NO_POSITIVE_ANNIHILATOR_TAG: &str = "no-positive-annihilator-supported-here";

/// Per-point margins `Re(e^{−iθ} f(p))` with the rotation absorbed into the
/// coefficients, so `min_margin(f, S, θ) == min_margin(e^{−iθ}f, S, 0)`
/// holds exactly.
fn rotated_margins(f: &TrigPolynomial, points: &[TorusPoint], theta: f64) -> Result<Vec<f64>> {
    let rotated = f.scaled(Complex64::from_polar(1.0, -theta));
    points
        .iter()
        .map(|p| rotated.eval(p).map(|w| w.re))
        .collect()
}

/// Smallest value of `Re(e^{−iθ} f(p))` over the point set: the largest ε
/// for which the half-plane cover at angle θ holds.
pub fn min_margin(f: &AnalyticPolynomial, points: &[TorusPoint], theta: f64) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::invalid("point set must be non-empty"));
    }
    Ok(rotated_margins(f.as_trig(), points, theta)?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// Check `f(S) ⊂ H_ε^θ` pointwise. Requires `f ∈ A_0⃗`: without that the
/// covered verdict would not carry its annihilator conclusion.
pub fn halfplane_cover_check(
    f: &AnalyticPolynomial,
    points: &[TorusPoint],
    half_plane: &HalfPlane,
) -> Result<CoverReport> {
    if !f.is_a00() {
        return Err(Error::invalid(
            "half-plane cover check requires a polynomial with all exponents >= 1",
        ));
    }
    if points.is_empty() {
        return Err(Error::invalid("point set must be non-empty"));
    }
    let margins = rotated_margins(f.as_trig(), points, half_plane.theta)?;
    let covered = margins.iter().all(|&m| m >= half_plane.epsilon);
    let conclusion = (covered && half_plane.epsilon > 0.0)
        .then(|| NO_POSITIVE_ANNIHILATOR_TAG.to_string());
    Ok(CoverReport {
        epsilon: half_plane.epsilon,
        theta: half_plane.theta,
        margins,
        covered,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{sample_graph_curve, CurveSpec};
    use std::f64::consts::{PI, TAU};

    fn z1z2() -> AnalyticPolynomial {
        AnalyticPolynomial::monomial(MultiIndex::new(vec![1, 1])).unwrap()
    }

    fn point(a: f64, b: f64) -> TorusPoint {
        TorusPoint::new(vec![a, b]).unwrap()
    }

    #[test]
    fn eval_monomials() {
        let f = z1z2();
        assert!((f.eval(&point(0.0, 0.0)).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // z1 z2 collapses on the anti-diagonal
        for j in 0..16 {
            let v = TAU * j as f64 / 16.0;
            let w = f.eval(&point(v, TAU - v)).unwrap();
            assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let g = AnalyticPolynomial::monomial(MultiIndex::new(vec![2, 1])).unwrap();
        let w = g.eval(&point(PI / 2.0, PI)).unwrap();
        assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn analytic_rejects_negative_frequencies() {
        assert!(AnalyticPolynomial::monomial(MultiIndex::new(vec![1, -1])).is_err());
    }

    #[test]
    fn a00_predicate() {
        assert!(z1z2().is_a00());
        let f = AnalyticPolynomial::monomial(MultiIndex::new(vec![1, 0])).unwrap();
        assert!(!f.is_a00());
    }

    #[test]
    fn pair_integral_matches_atom_sum() {
        let anti = sample_graph_curve(&CurveSpec::Negated, 16).unwrap();
        let mu = AtomicMeasure::lebesgue_on_points(&anti).unwrap();
        let f = z1z2();
        let by_moments = f.pair_integral(&mu).unwrap();
        let by_atoms: Complex64 = mu
            .atoms()
            .iter()
            .map(|(p, w)| w * f.eval(p).unwrap())
            .sum();
        assert!((by_moments - by_atoms).norm() < 1e-12);
        assert!((by_moments - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let diag = sample_graph_curve(&CurveSpec::Identity, 8).unwrap();
        let nu = AtomicMeasure::lebesgue_on_points(&diag).unwrap();
        assert!(f.pair_integral(&nu).unwrap().norm() < 1e-13);

        let zero = AtomicMeasure::new(2, vec![]).unwrap();
        assert_eq!(f.pair_integral(&zero).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cover_check_antidiagonal_covered() {
        let pts = sample_graph_curve(&CurveSpec::Negated, 16).unwrap();
        let h = HalfPlane::new(0.9, 0.0).unwrap();
        let report = halfplane_cover_check(&z1z2(), &pts, &h).unwrap();
        assert!(report.covered);
        assert_eq!(
            report.conclusion.as_deref(),
            Some(NO_POSITIVE_ANNIHILATOR_TAG)
        );
        let min = report.margins.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((min - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cover_check_diagonal_not_covered() {
        let pts = sample_graph_curve(&CurveSpec::Identity, 16).unwrap();
        let h = HalfPlane::new(0.1, 0.0).unwrap();
        let report = halfplane_cover_check(&z1z2(), &pts, &h).unwrap();
        assert!(!report.covered);
        assert!(report.conclusion.is_none());
        // at v = π/2 the value is e^{iπ} = −1
        assert!((report.margins[4] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cover_check_arc_band_margin_is_cos_w() {
        // points (v, 2π − v + ω) with ω sampled over [−π/3, π/3] inclusive
        let w = PI / 3.0;
        let mut pts = Vec::new();
        for j in 0..16 {
            let v = TAU * j as f64 / 16.0;
            for l in 0..8 {
                let omega = -w + 2.0 * w * l as f64 / 7.0;
                pts.push(point(v, TAU - v + omega));
            }
        }
        let h = HalfPlane::new(0.49, 0.0).unwrap();
        let report = halfplane_cover_check(&z1z2(), &pts, &h).unwrap();
        assert!(report.covered);
        let min = report.margins.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((min - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cover_check_rejects_non_a00() {
        let f = AnalyticPolynomial::monomial(MultiIndex::new(vec![1, 0])).unwrap();
        let pts = vec![point(0.0, 0.0)];
        let h = HalfPlane::new(0.5, 0.0).unwrap();
        assert!(halfplane_cover_check(&f, &pts, &h).is_err());
    }

    #[test]
    fn min_margin_examples() {
        let anti = sample_graph_curve(&CurveSpec::Negated, 16).unwrap();
        assert!((min_margin(&z1z2(), &anti, 0.0).unwrap() - 1.0).abs() < 1e-12);

        let diag = sample_graph_curve(&CurveSpec::Identity, 16).unwrap();
        assert!((min_margin(&z1z2(), &diag, 0.0).unwrap() + 1.0).abs() < 1e-12);

        let single = vec![point(0.0, 0.0)];
        assert!((min_margin(&z1z2(), &single, PI).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_absorption_is_exact() {
        let f = AnalyticPolynomial::new(
            2,
            [
                (MultiIndex::new(vec![1, 1]), Complex64::new(0.4, -0.2)),
                (MultiIndex::new(vec![2, 3]), Complex64::new(-0.1, 0.7)),
            ],
        )
        .unwrap();
        let pts = sample_graph_curve(&CurveSpec::Perturbed { alpha: 0.3 }, 12).unwrap();
        for theta in [0.3, 1.2, 4.0] {
            let a = min_margin(&f, &pts, theta).unwrap();
            let rotated = f.scaled(Complex64::from_polar(1.0, -theta));
            let b = min_margin(&rotated, &pts, 0.0).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn level_set_specialization() {
        // f ≡ 1 on the anti-diagonal, so the pairing is α·mass with α = 1
        let pts = sample_graph_curve(&CurveSpec::Negated, 16).unwrap();
        let mu = AtomicMeasure::lebesgue_on_points(&pts).unwrap();
        let pairing = z1z2().pair_integral(&mu).unwrap();
        assert!((pairing - mu.total_mass()).norm() < 1e-12);
    }

    #[test]
    fn shifted_multiplies_by_monomial() {
        let f = TrigPolynomial::new(
            2,
            [(MultiIndex::new(vec![1, -2]), Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let g = f.shifted(&MultiIndex::new(vec![1, 1])).unwrap();
        let (k, _) = g.terms().next().unwrap();
        assert_eq!(k, &MultiIndex::new(vec![2, -1]));
    }
}
