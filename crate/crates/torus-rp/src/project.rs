use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::poly::{AnalyticPolynomial, TrigPolynomial};
use crate::simplex::{solve_lp, LinearProgram, LpOutcome, Relation, VarBound};
use crate::torus::{indices_in_box, MultiIndex, TorusPoint};

/// An ordered list of pairwise distinct monomial frequencies spanning the
/// projection target space.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialBasis {
    dim: usize,
    indices: Vec<MultiIndex>,
}

impl MonomialBasis {
    pub fn new(dim: usize, indices: Vec<MultiIndex>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::invalid("monomial basis must be non-empty"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for k in &indices {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.dim(),
                });
            }
            if !seen.insert(k.clone()) {
                return Err(Error::invalid(format!("duplicate basis index {k}")));
            }
        }
        Ok(Self { dim, indices })
    }

    /// All `k ∈ [1, N]^dim`, lexicographic.
    pub fn a00_box(dim: usize, n_max: u32) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::invalid("a00 box needs degree >= 1"));
        }
        Self::new(dim, indices_in_box(dim, 1, n_max as i64))
    }

    /// All `k` with every component in `[k0, N]`: the truncated `S_k` spaces.
    pub fn sk_box(dim: usize, k0: i64, n_max: i64) -> Result<Self> {
        if k0 > n_max {
            return Err(Error::invalid("sk box requires k0 <= N"));
        }
        Self::new(dim, indices_in_box(dim, k0, n_max))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Gram condition above which results are flagged instead of trusted.
pub const ILL_CONDITION_THRESHOLD: f64 = 1e12;

/// Residual level treated as "the target already lies in the span".
pub const VANISHING_RESIDUAL: f64 = 1e-10;

/// Coefficients of an orthogonal projection in `L²(dμ)` plus diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionResult {
    /// Aligned with the basis index order.
    pub coefficients: Vec<(Vec<i64>, f64, f64)>,
    pub residual_norm: f64,
    /// `σ_max/σ_min` of the Gram matrix; `f64::MAX` marks a singular Gram.
    pub gram_condition: f64,
    pub ill_conditioned: bool,
    pub target: String,
}

impl ProjectionResult {
    pub fn coefficient_values(&self) -> Vec<Complex64> {
        self.coefficients
            .iter()
            .map(|(_, re, im)| Complex64::new(*re, *im))
            .collect()
    }
}

fn require_positive(mu: &AtomicMeasure, what: &str) -> Result<()> {
    if !mu.is_positive() {
        return Err(Error::invalid(format!(
            "{what} requires a positive measure with at least one atom"
        )));
    }
    Ok(())
}

/// `⟨f, g⟩ = Σ_atoms w · f(p) · conj(g(p))` for a positive measure.
pub fn l2_inner(f: &TrigPolynomial, g: &TrigPolynomial, mu: &AtomicMeasure) -> Result<Complex64> {
    require_positive(mu, "the weighted inner product")?;
    let mut out = Complex64::new(0.0, 0.0);
    for (p, w) in mu.atoms() {
        out += w * f.eval(p)? * g.eval(p)?.conj();
    }
    Ok(out)
}

/// `‖f‖_{L²(dμ)}`.
pub fn l2_norm(f: &TrigPolynomial, mu: &AtomicMeasure) -> Result<f64> {
    require_positive(mu, "the weighted norm")?;
    let mut total = 0.0;
    for (p, w) in mu.atoms() {
        total += w.re * f.eval(p)?.norm_sqr();
    }
    Ok(total.max(0.0).sqrt())
}

/// Gram matrix of the basis monomials in `L²(dμ)`: entry `(a, b)` equals
/// `moment(μ, k_a − k_b)`. Hermitian positive semidefinite.
pub fn gram_matrix(basis: &MonomialBasis, mu: &AtomicMeasure) -> Result<Vec<Vec<Complex64>>> {
    require_positive(mu, "a Gram matrix")?;
    if basis.dim() != mu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: basis.dim(),
        });
    }
    let idx = basis.indices();
    let mut out = Vec::with_capacity(idx.len());
    for ka in idx {
        let mut row = Vec::with_capacity(idx.len());
        for kb in idx {
            row.push(mu.moment(&ka.sub(kb))?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Solve the (possibly singular) Hermitian system `H c = b` by realification
/// and a singular-value cutoff; returns the minimum-norm solution and the
/// condition estimate `σ_max/σ_min`.
fn solve_normal_equations(
    h: &[Vec<Complex64>],
    b: &[Complex64],
) -> Result<(Vec<Complex64>, f64)> {
    let n = h.len();
    let real = DMatrix::<f64>::from_fn(2 * n, 2 * n, |r, c| {
        let (i, j) = (r % n, c % n);
        match (r >= n, c >= n) {
            (false, false) => h[i][j].re,
            (false, true) => -h[i][j].im,
            (true, false) => h[i][j].im,
            (true, true) => h[i][j].re,
        }
    });
    let rhs = DVector::<f64>::from_fn(2 * n, |r, _| if r < n { b[r].re } else { b[r - n].im });
    let svd = real.svd(true, true);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let sigma_min = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if sigma_max == 0.0 {
        1.0
    } else if sigma_min <= sigma_max * 1e-300 {
        f64::MAX
    } else {
        sigma_max / sigma_min
    };
    let cutoff = if sigma_max == 0.0 { 1e-300 } else { sigma_max * 1e-11 };
    let solution = svd
        .solve(&rhs, cutoff)
        .map_err(|e| Error::Numerical(format!("normal equations solve failed: {e}")))?;
    let coeffs = (0..n)
        .map(|i| Complex64::new(solution[i], solution[i + n]))
        .collect();
    Ok((coeffs, condition))
}

/// Orthogonal projection of a finite trigonometric polynomial onto the span
/// of the basis monomials in `L²(dμ)`. Rank-deficient Grams fall back to the
/// minimum-norm solution; conditions above the threshold only flag the
/// result.
pub fn project(
    target: &TrigPolynomial,
    basis: &MonomialBasis,
    mu: &AtomicMeasure,
) -> Result<ProjectionResult> {
    require_positive(mu, "projection")?;
    if basis.dim() != mu.dim() || target.dim() != mu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            got: if basis.dim() != mu.dim() {
                basis.dim()
            } else {
                target.dim()
            },
        });
    }
    let idx = basis.indices();
    // H[a][b] = <z^{k_b}, z^{k_a}> so that H c = b are the normal equations
    let mut h = vec![vec![Complex64::new(0.0, 0.0); idx.len()]; idx.len()];
    for (a, ka) in idx.iter().enumerate() {
        for (b, kb) in idx.iter().enumerate() {
            h[a][b] = mu.moment(&kb.sub(ka))?;
        }
    }
    let mut rhs = vec![Complex64::new(0.0, 0.0); idx.len()];
    for (a, ka) in idx.iter().enumerate() {
        let basis_fn = TrigPolynomial::monomial(ka.clone(), Complex64::new(1.0, 0.0));
        rhs[a] = l2_inner(target, &basis_fn, mu)?;
    }
    let (coeffs, condition) = solve_normal_equations(&h, &rhs)?;

    let mut residual_sq = 0.0;
    for (p, w) in mu.atoms() {
        let mut projected = Complex64::new(0.0, 0.0);
        for (c, k) in coeffs.iter().zip(idx) {
            projected += c * Complex64::from_polar(1.0, k.dot(p.angles()));
        }
        residual_sq += w.re * (target.eval(p)? - projected).norm_sqr();
    }

    Ok(ProjectionResult {
        coefficients: idx
            .iter()
            .zip(&coeffs)
            .map(|(k, c)| (k.components().to_vec(), c.re, c.im))
            .collect(),
        residual_norm: residual_sq.max(0.0).sqrt(),
        gram_condition: condition,
        ill_conditioned: condition > ILL_CONDITION_THRESHOLD,
        target: format!("{target:?}"),
    })
}

/// Residuals of projecting onto `a00_box(N)` for `N = 1..=n_max`; the
/// sequence is non-increasing because the boxes are nested.
pub fn residual_profile(
    target: &TrigPolynomial,
    mu: &AtomicMeasure,
    n_max: u32,
) -> Result<Vec<(u32, f64)>> {
    if n_max < 1 {
        return Err(Error::invalid("profile needs degree >= 1"));
    }
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let basis = MonomialBasis::a00_box(mu.dim(), n)?;
        let result = project(target, &basis, mu)?;
        out.push((n, result.residual_norm));
    }
    Ok(out)
}

/// Output of the `|f − F|² dμ` construction.
#[derive(Debug, Clone)]
pub struct AnnihilatorResult {
    /// The measure with weights `w_i · |f(p_i) − F(p_i)|²`; the zero measure
    /// when the residual vanishes.
    pub measure: AtomicMeasure,
    /// Set when the projection residual is below `VANISHING_RESIDUAL`: the
    /// target already lies in the truncated span and no annihilator arises.
    pub vanishing_residual: bool,
    pub residual_norm: f64,
    /// `N − deg(f)` when positive: the degree window within which the
    /// construction's orthogonality argument stays inside the box.
    pub certified_degree: Option<u32>,
    /// Measured `a00` defect of the output at each degree up to the window.
    pub defects: Vec<(u32, f64)>,
}

/// Project `f` onto `a00_box(N)` in `L²(dμ)` and form the measure
/// `|f − F|² dμ`. The output's `a00` defects are measured and reported, not
/// assumed: at finite truncation the construction is certified only within
/// the degree window `N − deg(f)`, and the defect table is the evidence.
pub fn generate_annihilator(
    f: &AnalyticPolynomial,
    mu: &AtomicMeasure,
    n_max: u32,
) -> Result<AnnihilatorResult> {
    require_positive(mu, "annihilator generation")?;
    if f.is_zero() {
        return Err(Error::invalid(
            "annihilator generation needs a non-zero target",
        ));
    }
    let basis = MonomialBasis::a00_box(mu.dim(), n_max)?;
    let projection = project(f.as_trig(), &basis, mu)?;
    if projection.residual_norm <= VANISHING_RESIDUAL {
        return Ok(AnnihilatorResult {
            measure: AtomicMeasure::new(mu.dim(), Vec::new())?,
            vanishing_residual: true,
            residual_norm: projection.residual_norm,
            certified_degree: None,
            defects: Vec::new(),
        });
    }

    let coeffs = projection.coefficient_values();
    let idx = basis.indices();
    let atoms: Vec<_> = mu
        .atoms()
        .iter()
        .map(|(p, w)| {
            let mut projected = Complex64::new(0.0, 0.0);
            for (c, k) in coeffs.iter().zip(idx) {
                projected += c * Complex64::from_polar(1.0, k.dot(p.angles()));
            }
            let r = f.eval(p).expect("dimensions already checked") - projected;
            (p.clone(), Complex64::new(w.re * r.norm_sqr(), 0.0))
        })
        .collect();
    let measure = AtomicMeasure::new(mu.dim(), atoms)?;

    let certified = n_max as i64 - f.degree();
    let certified_degree = (certified >= 1).then_some(certified as u32);
    let mut defects = Vec::new();
    if let Some(window) = certified_degree {
        for n in 1..=window {
            defects.push((n, measure.a00_defect(n)?));
        }
    }
    Ok(AnnihilatorResult {
        measure,
        vanishing_residual: false,
        residual_norm: projection.residual_norm,
        certified_degree,
        defects,
    })
}

/// Overestimation factor of the 8-direction modulus linearization.
pub fn octagon_overestimate() -> f64 {
    1.0 / (std::f64::consts::PI / 8.0).cos()
}

/// Chebyshev-type best approximation by the basis span over a point set.
#[derive(Debug, Clone)]
pub struct BestApproxResult {
    /// Optimal value of the linearized program (octagonal modulus bound).
    pub value: f64,
    /// Exact `max_p |target(p) − f(p)|` of the returned approximant; lies in
    /// `[value·cos(π/8), value]`-adjusted bounds around the true minimax.
    pub sup_error: f64,
    pub polynomial: TrigPolynomial,
}

/// Minimize `max_p |target(p) − f(p)|` over the basis span, with the modulus
/// linearized by eight half-plane directions (overestimation at most
/// `1/cos(π/8) ≈ 1.0824`, reported via [`octagon_overestimate`]).
pub fn uniform_best_approx(
    values: &[Complex64],
    points: &[TorusPoint],
    basis: &MonomialBasis,
) -> Result<BestApproxResult> {
    if points.is_empty() {
        return Err(Error::invalid("point set must be non-empty"));
    }
    if values.len() != points.len() {
        return Err(Error::invalid(
            "target values and point set must have equal length",
        ));
    }
    let dim = points[0].dim();
    if points.iter().any(|p| p.dim() != dim) || basis.dim() != dim {
        return Err(Error::invalid("dimensions of points and basis must agree"));
    }

    let idx = basis.indices();
    // variables: [t, (re_b, im_b) per basis index], t >= 0 and coefficients free
    let n_vars = 1 + 2 * idx.len();
    let mut rows = Vec::with_capacity(points.len() * 8);
    let mut rhs = Vec::with_capacity(points.len() * 8);
    for (p, target) in points.iter().zip(values) {
        let basis_values: Vec<Complex64> = idx
            .iter()
            .map(|k| Complex64::from_polar(1.0, k.dot(p.angles())))
            .collect();
        for d in 0..8 {
            let dir = Complex64::from_polar(1.0, -(std::f64::consts::PI / 4.0) * d as f64);
            let mut row = vec![0.0; n_vars];
            row[0] = 1.0;
            for (b, e) in basis_values.iter().enumerate() {
                let rotated = dir * e;
                row[1 + 2 * b] = rotated.re;
                row[2 + 2 * b] = -rotated.im;
            }
            rows.push(row);
            rhs.push((dir * target).re);
        }
    }
    let mut objective = vec![0.0; n_vars];
    objective[0] = -1.0;
    let mut bounds = vec![VarBound::Free; n_vars];
    bounds[0] = VarBound::NonNegative;
    let n_rows = rows.len();
    let lp = LinearProgram {
        objective,
        rows,
        rhs,
        relations: vec![Relation::Ge; n_rows],
        bounds,
    };

    let sol = match solve_lp(&lp)? {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::NumericalFailure { pivots } => {
            return Err(Error::Numerical(format!(
                "best-approximation program exhausted its pivot budget after {pivots} pivots"
            )));
        }
        other => {
            return Err(Error::Numerical(format!(
                "best-approximation program ended unexpectedly: {other:?}"
            )));
        }
    };

    let terms: Vec<_> = idx
        .iter()
        .enumerate()
        .map(|(b, k)| {
            (
                k.clone(),
                Complex64::new(sol.x[1 + 2 * b], sol.x[2 + 2 * b]),
            )
        })
        .collect();
    let polynomial = TrigPolynomial::new(dim, terms)?;
    let mut sup_error = 0.0_f64;
    for (p, target) in points.iter().zip(values) {
        sup_error = sup_error.max((target - polynomial.eval(p)?).norm());
    }
    Ok(BestApproxResult {
        value: sol.x[0],
        sup_error,
        polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{sample_graph_curve, CurveSpec};
    use std::f64::consts::TAU;

    fn uniform_on(curve: &CurveSpec, m: usize) -> AtomicMeasure {
        let pts = sample_graph_curve(curve, m).unwrap();
        AtomicMeasure::lebesgue_on_points(&pts).unwrap()
    }

    fn constant_one() -> TrigPolynomial {
        TrigPolynomial::monomial(MultiIndex::new(vec![0, 0]), Complex64::new(1.0, 0.0))
    }

    #[test]
    fn gram_of_point_mass_on_single_index() {
        let mu = AtomicMeasure::new(
            2,
            vec![(
                TorusPoint::new(vec![0.0, 0.0]).unwrap(),
                Complex64::new(1.0, 0.0),
            )],
        )
        .unwrap();
        let basis = MonomialBasis::a00_box(2, 1).unwrap();
        let g = gram_matrix(&basis, &mu).unwrap();
        assert_eq!(g.len(), 1);
        assert!((g[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gram_entries_are_difference_moments() {
        let mu = uniform_on(&CurveSpec::Negated, 16);
        let basis = MonomialBasis::a00_box(2, 2).unwrap();
        let g = gram_matrix(&basis, &mu).unwrap();
        let idx = basis.indices();
        // entry between (1,2) and (2,1) is moment((-1,1)) = 0 on this grid
        let a = idx.iter().position(|k| k.components() == [1, 2]).unwrap();
        let b = idx.iter().position(|k| k.components() == [2, 1]).unwrap();
        assert!(g[a][b].norm() < 1e-13);
        // Hermitian
        for i in 0..idx.len() {
            for j in 0..idx.len() {
                assert!((g[i][j] - g[j][i].conj()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn gram_rejects_non_positive_measures() {
        let mu = AtomicMeasure::new(2, vec![]).unwrap();
        let basis = MonomialBasis::a00_box(2, 1).unwrap();
        assert!(gram_matrix(&basis, &mu).is_err());
    }

    #[test]
    fn constant_target_is_orthogonal_to_a00_on_diagonal() {
        let mu = uniform_on(&CurveSpec::Identity, 16);
        let basis = MonomialBasis::a00_box(2, 3).unwrap();
        let result = project(&constant_one(), &basis, &mu).unwrap();
        for c in result.coefficient_values() {
            assert!(c.norm() < 1e-10);
        }
        assert!((result.residual_norm - 1.0).abs() < 1e-10);
    }

    #[test]
    fn z1_lies_in_the_span_on_antidiagonal() {
        let mu = uniform_on(&CurveSpec::Negated, 16);
        let basis = MonomialBasis::a00_box(2, 3).unwrap();
        let target =
            TrigPolynomial::monomial(MultiIndex::new(vec![1, 0]), Complex64::new(1.0, 0.0));
        let result = project(&target, &basis, &mu).unwrap();
        assert!(result.residual_norm <= 1e-10);
    }

    #[test]
    fn zero_target_projects_to_zero() {
        let mu = uniform_on(&CurveSpec::Identity, 8);
        let basis = MonomialBasis::a00_box(2, 2).unwrap();
        let result = project(&TrigPolynomial::zero(2), &basis, &mu).unwrap();
        assert!(result.residual_norm < 1e-14);
        for c in result.coefficient_values() {
            assert!(c.norm() < 1e-12);
        }
    }

    #[test]
    fn pythagoras_and_orthogonality_hold() {
        let mu = uniform_on(&CurveSpec::Perturbed { alpha: 0.3 }, 24);
        let basis = MonomialBasis::a00_box(2, 2).unwrap();
        let target = TrigPolynomial::new(
            2,
            [
                (MultiIndex::new(vec![0, 0]), Complex64::new(0.7, 0.0)),
                (MultiIndex::new(vec![3, 0]), Complex64::new(0.0, -0.4)),
                (MultiIndex::new(vec![1, 2]), Complex64::new(0.2, 0.1)),
            ],
        )
        .unwrap();
        let result = project(&target, &basis, &mu).unwrap();
        let projection = TrigPolynomial::new(
            2,
            basis
                .indices()
                .iter()
                .cloned()
                .zip(result.coefficient_values()),
        )
        .unwrap();
        let target_norm = l2_norm(&target, &mu).unwrap();
        let proj_norm = l2_norm(&projection, &mu).unwrap();
        let pythagoras =
            (result.residual_norm.powi(2) + proj_norm.powi(2) - target_norm.powi(2)).abs();
        assert!(pythagoras <= 1e-8 * target_norm.powi(2).max(1e-30));
        // the residual is orthogonal to every basis monomial
        for k in basis.indices() {
            let basis_fn =
                TrigPolynomial::monomial(k.clone(), Complex64::new(1.0, 0.0));
            let t_inner = l2_inner(&target, &basis_fn, &mu).unwrap();
            let p_inner = l2_inner(&projection, &basis_fn, &mu).unwrap();
            assert!((t_inner - p_inner).norm() <= 1e-8 * target_norm.max(1e-30));
        }
    }

    #[test]
    fn staircase_profile_on_antidiagonal() {
        let mu = uniform_on(&CurveSpec::Negated, 16);
        let target =
            TrigPolynomial::monomial(MultiIndex::new(vec![3, 0]), Complex64::new(1.0, 0.0));
        let profile = residual_profile(&target, &mu, 7).unwrap();
        for (n, r) in &profile {
            if *n <= 3 {
                assert!((r - 1.0).abs() < 1e-10, "N={n} residual {r}");
            } else {
                assert!(*r <= 1e-10, "N={n} residual {r}");
            }
        }
    }

    #[test]
    fn constant_profile_on_diagonal_never_drops() {
        let mu = uniform_on(&CurveSpec::Identity, 16);
        let profile = residual_profile(&constant_one(), &mu, 7).unwrap();
        for (_, r) in &profile {
            assert!((r - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn basis_member_has_zero_residual() {
        let mu = uniform_on(&CurveSpec::Perturbed { alpha: 0.4 }, 20);
        let target =
            TrigPolynomial::monomial(MultiIndex::new(vec![1, 1]), Complex64::new(1.0, 0.0));
        for n in 1..=3 {
            let basis = MonomialBasis::a00_box(2, n).unwrap();
            let result = project(&target, &basis, &mu).unwrap();
            assert!(result.residual_norm <= 1e-10);
        }
    }

    #[test]
    fn annihilator_from_diagonal_grid_is_the_measure_itself() {
        let mu = uniform_on(&CurveSpec::Identity, 16);
        let f = AnalyticPolynomial::new(
            2,
            [(MultiIndex::new(vec![0, 0]), Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let result = generate_annihilator(&f, &mu, 3).unwrap();
        assert!(!result.vanishing_residual);
        assert!(result.measure.is_positive());
        assert!((result.measure.total_mass().re - 1.0).abs() < 1e-10);
        assert_eq!(result.certified_degree, Some(3));
        for (_, defect) in &result.defects {
            assert!(*defect <= 1e-12);
        }
    }

    #[test]
    fn annihilator_vanishes_when_target_is_in_span() {
        let mu = uniform_on(&CurveSpec::Negated, 16);
        let f = AnalyticPolynomial::new(
            2,
            [(MultiIndex::new(vec![1, 0]), Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let result = generate_annihilator(&f, &mu, 4).unwrap();
        assert!(result.vanishing_residual);
        assert_eq!(result.measure.total_variation(), 0.0);
    }

    #[test]
    fn single_atom_interpolates_and_vanishes() {
        let mu = AtomicMeasure::new(
            2,
            vec![(
                TorusPoint::new(vec![0.0, 0.0]).unwrap(),
                Complex64::new(1.0, 0.0),
            )],
        )
        .unwrap();
        let f = AnalyticPolynomial::new(
            2,
            [(MultiIndex::new(vec![0, 0]), Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let result = generate_annihilator(&f, &mu, 2).unwrap();
        assert!(result.vanishing_residual);
    }

    #[test]
    fn zero_target_rejected() {
        let mu = uniform_on(&CurveSpec::Identity, 8);
        let f = AnalyticPolynomial::new(2, []).unwrap();
        assert!(generate_annihilator(&f, &mu, 2).is_err());
    }

    #[test]
    fn monomial_multiplication_is_an_isometry() {
        let mu = uniform_on(&CurveSpec::Perturbed { alpha: 0.25 }, 20);
        let g = TrigPolynomial::new(
            2,
            [
                (MultiIndex::new(vec![0, 0]), Complex64::new(0.3, 0.2)),
                (MultiIndex::new(vec![2, -1]), Complex64::new(-0.5, 0.1)),
                (MultiIndex::new(vec![-1, 3]), Complex64::new(0.0, 0.9)),
            ],
        )
        .unwrap();
        let shifted = g.shifted(&MultiIndex::new(vec![1, 1])).unwrap();
        let a = l2_norm(&g, &mu).unwrap();
        let b = l2_norm(&shifted, &mu).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn best_approx_constant_on_diagonal_stays_at_one() {
        let pts = sample_graph_curve(&CurveSpec::Identity, 16).unwrap();
        let values = vec![Complex64::new(1.0, 0.0); 16];
        let basis = MonomialBasis::a00_box(2, 4).unwrap();
        let result = uniform_best_approx(&values, &pts, &basis).unwrap();
        assert!(result.value >= 1.0 - 1e-7, "value {}", result.value);
        assert!(result.sup_error >= 1.0 - 1e-7);
        assert!(result.sup_error <= octagon_overestimate() + 1e-7);
    }

    #[test]
    fn best_approx_representable_target_is_exact() {
        let pts = sample_graph_curve(&CurveSpec::Negated, 16).unwrap();
        let values: Vec<Complex64> = pts
            .iter()
            .map(|p| Complex64::from_polar(1.0, 2.0 * p.angles()[0]))
            .collect();
        let basis = MonomialBasis::a00_box(2, 3).unwrap();
        let result = uniform_best_approx(&values, &pts, &basis).unwrap();
        assert!(result.sup_error <= 1e-8, "sup error {}", result.sup_error);
    }

    #[test]
    fn best_approx_zero_target_returns_zero_polynomial() {
        let pts = sample_graph_curve(&CurveSpec::Identity, 8).unwrap();
        let values = vec![Complex64::new(0.0, 0.0); 8];
        let basis = MonomialBasis::a00_box(2, 2).unwrap();
        let result = uniform_best_approx(&values, &pts, &basis).unwrap();
        assert!(result.value.abs() <= 1e-9);
        assert!(result.sup_error <= 1e-9);
        assert!(result.polynomial.is_zero());
    }
}
