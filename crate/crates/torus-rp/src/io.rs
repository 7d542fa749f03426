use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::measure::AtomicMeasure;
use crate::poly::{AnalyticPolynomial, TrigPolynomial};
use crate::torus::{MultiIndex, TorusPoint};

/// JSON shape of a complex number: `{"re": ..., "im": ...}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(c: ComplexJson) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Serialize, Deserialize)]
struct AtomFile {
    angles: Vec<f64>,
    weight: ComplexJson,
}

#[derive(Serialize, Deserialize)]
struct MeasureFile {
    dim: usize,
    atoms: Vec<AtomFile>,
}

impl Serialize for AtomicMeasure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureFile {
            dim: self.dim(),
            atoms: self
                .atoms()
                .iter()
                .map(|(p, w)| AtomFile {
                    angles: p.angles().to_vec(),
                    weight: (*w).into(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AtomicMeasure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = MeasureFile::deserialize(deserializer)?;
        let atoms = file
            .atoms
            .into_iter()
            .map(|a| {
                TorusPoint::new(a.angles)
                    .map(|p| (p, a.weight.into()))
                    .map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        AtomicMeasure::new(file.dim, atoms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PointSetFile {
    dim: usize,
    points: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientFile {
    k: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyFile {
    dim: usize,
    coefficients: Vec<CoefficientFile>,
}

fn poly_file_of(dim: usize, terms: impl Iterator<Item = (MultiIndex, Complex64)>) -> PolyFile {
    PolyFile {
        dim,
        coefficients: terms
            .map(|(k, c)| CoefficientFile {
                k: k.components().to_vec(),
                re: c.re,
                im: c.im,
            })
            .collect(),
    }
}

impl Serialize for TrigPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        poly_file_of(self.dim(), self.terms().map(|(k, c)| (k.clone(), *c))).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrigPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = PolyFile::deserialize(deserializer)?;
        let terms = file
            .coefficients
            .into_iter()
            .map(|c| (MultiIndex::new(c.k), Complex64::new(c.re, c.im)));
        TrigPolynomial::new(file.dim, terms).map_err(D::Error::custom)
    }
}

impl Serialize for AnalyticPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_trig().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AnalyticPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let trig = TrigPolynomial::deserialize(deserializer)?;
        AnalyticPolynomial::new(trig.dim(), trig.terms().map(|(k, c)| (k.clone(), *c)))
            .map_err(D::Error::custom)
    }
}

/// `serde_json` formatter that prints every float with 17 significant
/// digits, enough for a bit-exact f64 round trip.
struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:e}")
    }
}

/// Serialize to JSON with 17-significant-digit floats.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json writes utf-8"))
}

pub fn write_measure(path: &Path, mu: &AtomicMeasure) -> Result<()> {
    std::fs::write(path, to_json_17(mu)?)?;
    Ok(())
}

pub fn read_measure(path: &Path) -> Result<AtomicMeasure> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn points_to_json(points: &[TorusPoint]) -> Result<String> {
    let dim = points.first().map_or(0, |p| p.dim());
    to_json_17(&PointSetFile {
        dim,
        points: points.iter().map(|p| p.angles().to_vec()).collect(),
    })
}

pub fn points_from_json(text: &str) -> Result<Vec<TorusPoint>> {
    let file: PointSetFile = serde_json::from_str(text)?;
    file.points
        .into_iter()
        .map(|angles| {
            if angles.len() != file.dim {
                return Err(crate::error::Error::DimensionMismatch {
                    expected: file.dim,
                    got: angles.len(),
                });
            }
            TorusPoint::new(angles)
        })
        .collect()
}

pub fn write_points(path: &Path, points: &[TorusPoint]) -> Result<()> {
    std::fs::write(path, points_to_json(points)?)?;
    Ok(())
}

pub fn read_points(path: &Path) -> Result<Vec<TorusPoint>> {
    points_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_polynomial(path: &Path, poly: &AnalyticPolynomial) -> Result<()> {
    std::fs::write(path, to_json_17(poly)?)?;
    Ok(())
}

pub fn read_polynomial(path: &Path) -> Result<AnalyticPolynomial> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn read_trig_polynomial(path: &Path) -> Result<TrigPolynomial> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_round_trips_bit_exactly() {
        let mu = AtomicMeasure::new(
            2,
            vec![
                (
                    TorusPoint::new(vec![0.0, std::f64::consts::PI]).unwrap(),
                    Complex64::new(0.5, 0.0),
                ),
                (
                    TorusPoint::new(vec![1.234567890123456, 2.5]).unwrap(),
                    Complex64::new(-0.25, 1.0 / 3.0),
                ),
            ],
        )
        .unwrap();
        let text = to_json_17(&mu).unwrap();
        let back: AtomicMeasure = serde_json::from_str(&text).unwrap();
        assert_eq!(mu, back);
        assert!(text.contains("\"weight\":{\"re\":"));
    }

    #[test]
    fn seventeen_digit_floats_round_trip() {
        for &x in &[std::f64::consts::PI, 1.0 / 3.0, 1e-300, 123456.789] {
            let s = format!("{x:.16e}");
            let y: f64 = s.parse().unwrap();
            assert_eq!(x, y, "{s} did not round trip");
        }
    }

    #[test]
    fn point_set_round_trips() {
        let pts = vec![
            TorusPoint::new(vec![0.1, 0.2]).unwrap(),
            TorusPoint::new(vec![3.0, 4.0]).unwrap(),
        ];
        let text = points_to_json(&pts).unwrap();
        let back = points_from_json(&text).unwrap();
        assert_eq!(pts, back);
    }

    #[test]
    fn point_set_dimension_mismatch_rejected() {
        let text = r#"{"dim": 2, "points": [[0.1]]}"#;
        assert!(points_from_json(text).is_err());
    }

    #[test]
    fn polynomial_matches_documented_shape() {
        let text = r#"{"dim": 2, "coefficients": [{"k": [1,1], "re": 1.0, "im": 0.0}]}"#;
        let poly: AnalyticPolynomial = serde_json::from_str(text).unwrap();
        assert!(poly.is_a00());
        let round = to_json_17(&poly).unwrap();
        let back: AnalyticPolynomial = serde_json::from_str(&round).unwrap();
        assert_eq!(poly, back);
    }

    #[test]
    fn analytic_polynomial_rejects_negative_k_on_read() {
        let text = r#"{"dim": 2, "coefficients": [{"k": [1,-1], "re": 1.0, "im": 0.0}]}"#;
        assert!(serde_json::from_str::<AnalyticPolynomial>(text).is_err());
        // but the general trigonometric form accepts it
        assert!(serde_json::from_str::<TrigPolynomial>(text).is_ok());
    }
}
