use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::poly::AnalyticPolynomial;
use crate::simplex::{solve_lp, LinearProgram, LpOutcome, Relation, VarBound};
use crate::torus::{indices_in_box, MultiIndex, TorusPoint};

/// Which moment box the positive-measure search constrains.
///
/// `rp` constrains one representative per conjugate pair of mixed indices
/// (first non-zero component positive); real weights force the conjugate
/// half automatically. `a00` constrains the full box `[1, N]^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Framing {
    #[serde(rename = "rp")]
    Rp,
    #[serde(rename = "a00")]
    A00,
}

impl std::fmt::Display for Framing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Framing::Rp => write!(f, "rp"),
            Framing::A00 => write!(f, "a00"),
        }
    }
}

impl std::str::FromStr for Framing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rp" => Ok(Framing::Rp),
            "a00" => Ok(Framing::A00),
            other => Err(Error::invalid(format!("unknown framing `{other}`"))),
        }
    }
}

/// The moment indices constrained by a framing at degree `n_max`, in
/// lexicographic order.
pub fn framing_index_set(dim: usize, n_max: u32, framing: Framing) -> Vec<MultiIndex> {
    let n = n_max as i64;
    match framing {
        Framing::A00 => indices_in_box(dim, 1, n),
        Framing::Rp => indices_in_box(dim, -n, n)
            .into_iter()
            .filter(|k| {
                k.is_mixed()
                    && k.components()
                        .iter()
                        .find(|&&c| c != 0)
                        .is_some_and(|&c| c > 0)
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeasibilityStatus {
    #[serde(rename = "feasible")]
    Feasible,
    #[serde(rename = "infeasible")]
    Infeasible,
    #[serde(rename = "numerical-failure")]
    NumericalFailure,
}

/// Outcome of the primal search for a positive annihilating measure on a
/// fixed grid. A feasible witness is evidence for existence at this
/// truncation only; infeasibility is rigorous for measures supported
/// exactly on the grid points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub framing: Framing,
    pub degree: u32,
    pub grid_points: usize,
    pub status: FeasibilityStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// Max over constrained moments (and the mass row) of the witness error.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    pub pivots: usize,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.status == FeasibilityStatus::Feasible
    }

    /// The witness as a measure on the original points.
    pub fn witness_measure(&self, points: &[TorusPoint]) -> Option<AtomicMeasure> {
        let weights = self.weights.as_ref()?;
        let atoms = points
            .iter()
            .zip(weights)
            .map(|(p, &w)| (p.clone(), Complex64::new(w.max(0.0), 0.0)))
            .collect();
        AtomicMeasure::new(points[0].dim(), atoms).ok()
    }
}

/// Margin below which a dual optimum is treated as "no certificate".
pub const CERTIFICATE_THRESHOLD: f64 = 1e-8;

/// A half-plane polynomial certificate: `Re(f) >= epsilon` on every grid
/// point, with coefficient budget `Σ (|Re c| + |Im c|) <= 1`.
///
/// The polynomial is stored over the analytic box. In `a00` framing it is
/// evaluated at the points themselves; in `rp` framing the stored index box
/// is the mixed box after a sign flip of the last coordinate, so evaluation
/// reflects the last angle first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub framing: Framing,
    pub degree: u32,
    pub polynomial: AnalyticPolynomial,
    pub epsilon: f64,
    /// `Re(f(p))` per grid point, in input order.
    pub margins: Vec<f64>,
}

impl Certificate {
    /// Value of the certificate polynomial at a grid point, in the framing's
    /// evaluation convention.
    pub fn framed_eval(&self, p: &TorusPoint) -> Result<Complex64> {
        match self.framing {
            Framing::A00 => self.polynomial.eval(p),
            Framing::Rp => self.polynomial.eval(&p.conjugate_last()),
        }
    }

    /// `∫ f dμ` against the framing's mixed-monomial form of the polynomial.
    pub fn pair_against(&self, mu: &AtomicMeasure) -> Result<Complex64> {
        match self.framing {
            Framing::A00 => self.polynomial.pair_integral(mu),
            Framing::Rp => self.polynomial.pair_integral(&mu.pushforward_t()),
        }
    }

    pub fn min_margin(&self) -> f64 {
        self.margins.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

fn validate_points(points: &[TorusPoint], n_max: u32) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::invalid("support set must be non-empty"));
    }
    if n_max < 1 {
        return Err(Error::invalid("degree must be >= 1"));
    }
    let dim = points[0].dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(Error::invalid("support points must share one dimension"));
    }
    Ok(dim)
}

/// Decide whether some probability vector `w >= 0` on atoms at the given
/// points has vanishing moments over the framing's index box up to `n_max`.
pub fn primal_positive_annihilator(
    points: &[TorusPoint],
    n_max: u32,
    framing: Framing,
) -> Result<FeasibilityReport> {
    let dim = validate_points(points, n_max)?;
    let index_set = framing_index_set(dim, n_max, framing);
    let m = points.len();

    let mut rows = Vec::with_capacity(1 + 2 * index_set.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    rows.push(vec![1.0; m]);
    rhs.push(1.0);
    for k in &index_set {
        let mut cos_row = Vec::with_capacity(m);
        let mut sin_row = Vec::with_capacity(m);
        for p in points {
            let t = k.dot(p.angles());
            cos_row.push(t.cos());
            sin_row.push(t.sin());
        }
        rows.push(cos_row);
        rhs.push(0.0);
        rows.push(sin_row);
        rhs.push(0.0);
    }
    let n_rows = rows.len();
    let lp = LinearProgram {
        objective: vec![0.0; m],
        rows,
        rhs,
        relations: vec![Relation::Eq; n_rows],
        bounds: vec![VarBound::NonNegative; m],
    };

    let report = match solve_lp(&lp)? {
        LpOutcome::Optimal(sol) => {
            let witness = AtomicMeasure::new(
                dim,
                points
                    .iter()
                    .zip(&sol.x)
                    .map(|(p, &w)| (p.clone(), Complex64::new(w, 0.0)))
                    .collect(),
            )?;
            let mut residual = (witness.total_mass().re - 1.0).abs();
            for k in &index_set {
                residual = residual.max(witness.moment(k)?.norm());
            }
            FeasibilityReport {
                framing,
                degree: n_max,
                grid_points: m,
                status: FeasibilityStatus::Feasible,
                weights: Some(sol.x),
                max_residual: Some(residual),
                pivots: sol.pivots,
            }
        }
        LpOutcome::Infeasible { pivots, .. } => FeasibilityReport {
            framing,
            degree: n_max,
            grid_points: m,
            status: FeasibilityStatus::Infeasible,
            weights: None,
            max_residual: None,
            pivots,
        },
        LpOutcome::Unbounded { pivots } | LpOutcome::NumericalFailure { pivots } => {
            FeasibilityReport {
                framing,
                degree: n_max,
                grid_points: m,
                status: FeasibilityStatus::NumericalFailure,
                weights: None,
                max_residual: None,
                pivots,
            }
        }
    };
    Ok(report)
}

/// Search for a polynomial over the framing's monomial box with
/// `Re(f) >= ε` on every point, maximizing ε under the unit coefficient
/// budget. The rotation angle is absorbed into the coefficients.
///
/// In `rp` framing the certificate is stored over the last-coordinate sign
/// flip of the mixed box, which is an analytic box only for n <= 2; higher
/// dimensions are rejected.
pub fn dual_halfplane_certificate(
    points: &[TorusPoint],
    n_max: u32,
    framing: Framing,
) -> Result<Option<Certificate>> {
    let dim = validate_points(points, n_max)?;
    if framing == Framing::Rp && dim > 2 {
        return Err(Error::invalid(
            "rp-framing certificates are only representable for dimension <= 2",
        ));
    }
    let index_set = framing_index_set(dim, n_max, framing);
    let m = points.len();
    let n_coeff_vars = 4 * index_set.len();
    let n_vars = 1 + n_coeff_vars;

    // variables: [eps, (ar, br, ai, bi) per index]
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for p in points {
        let mut row = vec![0.0; n_vars];
        row[0] = -1.0;
        for (t, k) in index_set.iter().enumerate() {
            let phase = k.dot(p.angles());
            let (c, s) = (phase.cos(), phase.sin());
            let base = 1 + 4 * t;
            row[base] = c;
            row[base + 1] = -c;
            row[base + 2] = -s;
            row[base + 3] = s;
        }
        rows.push(row);
        rhs.push(0.0);
    }
    let mut budget = vec![-1.0; n_vars];
    budget[0] = 0.0;
    rows.push(budget);
    rhs.push(-1.0);

    let mut objective = vec![0.0; n_vars];
    objective[0] = 1.0;
    let n_rows = rows.len();
    let lp = LinearProgram {
        objective,
        rows,
        rhs,
        relations: vec![Relation::Ge; n_rows],
        bounds: vec![VarBound::NonNegative; n_vars],
    };

    let sol = match solve_lp(&lp)? {
        LpOutcome::Optimal(sol) => sol,
        LpOutcome::Infeasible { .. } | LpOutcome::Unbounded { .. } => {
            return Err(Error::Numerical(
                "certificate program is always feasible and bounded".into(),
            ));
        }
        LpOutcome::NumericalFailure { pivots } => {
            return Err(Error::Numerical(format!(
                "certificate search exhausted its pivot budget after {pivots} pivots"
            )));
        }
    };

    let mut terms = Vec::new();
    for (t, k) in index_set.iter().enumerate() {
        let base = 1 + 4 * t;
        let re = sol.x[base] - sol.x[base + 1];
        let im = sol.x[base + 2] - sol.x[base + 3];
        if re.abs() + im.abs() < 1e-14 {
            continue;
        }
        let stored = match framing {
            Framing::A00 => k.clone(),
            Framing::Rp => k.flip_last(),
        };
        terms.push((stored, Complex64::new(re, im)));
    }
    let polynomial = AnalyticPolynomial::new(dim, terms)?;

    let mut margins = Vec::with_capacity(m);
    for p in points {
        let value = match framing {
            Framing::A00 => polynomial.eval(p)?,
            Framing::Rp => polynomial.eval(&p.conjugate_last())?,
        };
        margins.push(value.re);
    }
    let epsilon = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    if epsilon > CERTIFICATE_THRESHOLD {
        Ok(Some(Certificate {
            framing,
            degree: n_max,
            polynomial,
            epsilon,
            margins,
        }))
    } else {
        Ok(None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AuditStatus {
    /// Exactly one of {feasible primal, certificate} held.
    #[serde(rename = "exclusive")]
    Exclusive,
    /// Both or neither held: a Farkas violation worth investigating.
    #[serde(rename = "violation")]
    Violation,
    #[serde(rename = "numerical-failure")]
    NumericalFailure,
}

/// Primal and dual run on identical inputs, with the exclusivity verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditRecord {
    pub framing: Framing,
    pub degree: u32,
    pub grid_points: usize,
    pub primal: FeasibilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub status: AuditStatus,
}

impl AuditRecord {
    pub fn is_exclusive(&self) -> bool {
        self.status == AuditStatus::Exclusive
    }
}

/// Run both sides of the finite Farkas alternative on the same inputs.
/// Solver breakdowns surface as a status, not an error.
pub fn duality_audit(
    points: &[TorusPoint],
    n_max: u32,
    framing: Framing,
) -> Result<AuditRecord> {
    let dim = validate_points(points, n_max)?;
    if framing == Framing::Rp && dim > 2 {
        return Err(Error::invalid(
            "rp-framing audits are only available for dimension <= 2",
        ));
    }
    let primal = primal_positive_annihilator(points, n_max, framing)?;
    let dual = dual_halfplane_certificate(points, n_max, framing);
    let (certificate, dual_failed) = match dual {
        Ok(c) => (c, false),
        Err(Error::Numerical(_)) => (None, true),
        Err(e) => return Err(e),
    };
    let status = if dual_failed || primal.status == FeasibilityStatus::NumericalFailure {
        AuditStatus::NumericalFailure
    } else if primal.is_feasible() != certificate.is_some() {
        AuditStatus::Exclusive
    } else {
        AuditStatus::Violation
    };
    Ok(AuditRecord {
        framing,
        degree: n_max,
        grid_points: points.len(),
        primal,
        certificate,
        status,
    })
}
