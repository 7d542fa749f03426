use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::torus::TorusPoint;

/// Built-in curve families `v ↦ Φ(v, ψ(v))` used to generate support sets.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    /// ψ(v) = v (the diagonal; strictly increasing).
    Identity,
    /// ψ(v) = −v (the anti-diagonal; strictly decreasing).
    Negated,
    /// ψ(v) = slope·v + intercept.
    Affine { slope: f64, intercept: f64 },
    /// ψ(v) = v + α·sin v with |α| < 1 (strictly increasing).
    Perturbed { alpha: f64 },
    /// Monotone piecewise-constant staircase with the given step count.
    Staircase { steps: u32 },
}

impl CurveSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            CurveSpec::Perturbed { alpha } if alpha.abs() >= 1.0 => Err(Error::invalid(
                "perturbed curve requires |alpha| < 1 to stay strictly increasing",
            )),
            CurveSpec::Staircase { steps: 0 } => {
                Err(Error::invalid("staircase curve needs at least one step"))
            }
            CurveSpec::Affine { slope, intercept }
                if !slope.is_finite() || !intercept.is_finite() =>
            {
                Err(Error::invalid("affine curve parameters must be finite"))
            }
            _ => Ok(()),
        }
    }

    /// ψ(v) before reduction mod 2π.
    pub fn psi(&self, v: f64) -> f64 {
        match self {
            CurveSpec::Identity => v,
            CurveSpec::Negated => -v,
            CurveSpec::Affine { slope, intercept } => slope * v + intercept,
            CurveSpec::Perturbed { alpha } => v + alpha * v.sin(),
            CurveSpec::Staircase { steps } => {
                let s = *steps as f64;
                TAU / s * (v * s / TAU).floor()
            }
        }
    }

    /// The point Φ(v, ψ(v)) on `T²`.
    pub fn point(&self, v: f64) -> TorusPoint {
        TorusPoint::new(vec![v, self.psi(v)]).expect("curve parameters are finite")
    }
}

/// `m` samples Φ(v_j, ψ(v_j)) at the equispaced parameters v_j = 2πj/m.
pub fn sample_graph_curve(psi: &CurveSpec, m: usize) -> Result<Vec<TorusPoint>> {
    psi.validate()?;
    if m == 0 {
        return Err(Error::invalid("sample count must be positive"));
    }
    Ok((0..m)
        .map(|j| psi.point(TAU * j as f64 / m as f64))
        .collect())
}

/// Size guard for the Cantor construction (2^depth points).
pub const MAX_CANTOR_DEPTH: u32 = 12;

/// Midpoints of the `2^depth` intervals of the middle-thirds construction on
/// the parameter interval `[0, 2π]`, mapped through the carrier curve.
/// Midpoints rather than endpoints avoid the 0 ≡ 2π aliasing of the covering
/// parameter.
pub fn cantor_points(depth: u32, carrier: &CurveSpec) -> Result<Vec<TorusPoint>> {
    carrier.validate()?;
    if depth > MAX_CANTOR_DEPTH {
        return Err(Error::invalid(format!(
            "cantor depth {depth} exceeds guard {MAX_CANTOR_DEPTH}"
        )));
    }
    let mut intervals = vec![(0.0_f64, TAU)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            let third = (b - a) / 3.0;
            next.push((a, a + third));
            next.push((b - third, b));
        }
        intervals = next;
    }
    Ok(intervals
        .into_iter()
        .map(|(a, b)| carrier.point(0.5 * (a + b)))
        .collect())
}
