//! Projective points, hyperplanes, configurations, and the operations on them:
//! canonical primitive forms, incidence, spanning hyperplanes, general-position
//! validation, projective transformations, and projection from a point.
//!
//! A point of PG(d, ℝ) is a nonzero (d+1)-vector up to nonzero scale. All exact
//! objects are stored in *canonical primitive form*: denominators cleared,
//! integer entries with gcd 1, first nonzero entry positive. Two points (or
//! hyperplanes) are equal iff their canonical forms are identical, which makes
//! deduplication a pure data equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{self, Matrix, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("cannot canonicalize the zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("points are degenerate: they do not span a hyperplane")]
    Degenerate,
    #[error("projective map matrix is singular")]
    SingularMap,
    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("projection identified two points; input violates general position")]
    DuplicateProjection,
    #[error("duplicate point at indices {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },
    #[error("projective dimension must be at least {min}, got {got}")]
    UnsupportedDimension { min: usize, got: usize },
}

/// Canonicalizes a rational vector to its primitive integer form: a positive
/// multiple with integer entries, gcd 1, and positive first nonzero entry.
/// Idempotent and scale-invariant.
pub fn canonicalize(v: &[Rational]) -> Result<Vec<BigInt>, GeometryError> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut content = BigInt::zero();
    for e in &out {
        content = content.gcd(e);
    }
    if content.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    let first_negative = out.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative());
    if first_negative {
        content = -content;
    }
    if !content.is_one() {
        for e in &mut out {
            *e /= &content;
        }
    }
    Ok(out)
}

fn canonicalize_integers(v: &[BigInt]) -> Result<Vec<BigInt>, GeometryError> {
    let mut content = BigInt::zero();
    for e in v {
        content = content.gcd(e);
    }
    if content.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    if v.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
        content = -content;
    }
    Ok(v.iter().map(|e| e / &content).collect())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// A point of PG(d, ℝ) in canonical primitive form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    pub fn new(coords: &[Rational]) -> Result<Self, GeometryError> {
        Ok(Self { coords: canonicalize(coords)? })
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self, GeometryError> {
        let v: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        Ok(Self { coords: canonicalize_integers(&v)? })
    }

    pub(crate) fn from_bigints(coords: &[BigInt]) -> Result<Self, GeometryError> {
        Ok(Self { coords: canonicalize_integers(coords)? })
    }

    /// Canonical homogeneous coordinates (d+1 integers).
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Number of homogeneous coordinates, d+1.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.coords.iter().cloned().map(Rational::from_integer).collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A hyperplane of PG(d, ℝ), stored as canonical primitive coefficients.
/// Equality of canonical forms is the deduplication contract.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<BigInt>,
}

impl Hyperplane {
    pub fn new(coeffs: &[Rational]) -> Result<Self, GeometryError> {
        Ok(Self { coeffs: canonicalize(coeffs)? })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self, GeometryError> {
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Ok(Self { coeffs: canonicalize_integers(&v)? })
    }

    pub(crate) fn from_bigints(coeffs: &[BigInt]) -> Result<Self, GeometryError> {
        Ok(Self { coeffs: canonicalize_integers(coeffs)? })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True iff the exact dot product of coefficients and coordinates is zero.
    pub fn incident(&self, p: &ProjectivePoint) -> Result<bool, GeometryError> {
        if self.coeffs.len() != p.coords.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.coeffs.len(),
                got: p.coords.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (a, b) in self.coeffs.iter().zip(p.coords.iter()) {
            acc += a * b;
        }
        Ok(acc.is_zero())
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The unique hyperplane through d points of PG(d), canonicalized.
/// Fails with [`GeometryError::Degenerate`] when the points have rank < d.
pub fn spanning_hyperplane(points: &[&ProjectivePoint]) -> Result<Hyperplane, GeometryError> {
    let d = points.len();
    assert!(d >= 2, "need at least two points to span a hyperplane");
    for p in points {
        if p.len() != d + 1 {
            return Err(GeometryError::DimensionMismatch { expected: d + 1, got: p.len() });
        }
    }
    let rows: Vec<Vec<BigInt>> = points.iter().map(|p| p.coords.clone()).collect();
    let h = exact_linalg::bigint_cofactor_nullspace(&rows).ok_or(GeometryError::Degenerate)?;
    Hyperplane::from_bigints(&h)
}

/// An ordered set of n distinct points of PG(d, ℝ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    dim: usize,
    points: Vec<ProjectivePoint>,
    label: String,
}

impl Configuration {
    /// Builds a configuration, rejecting wrong-length coordinates and
    /// duplicate points (all statements in this crate assume distinct points).
    pub fn new(
        dim: usize,
        points: Vec<ProjectivePoint>,
        label: impl Into<String>,
    ) -> Result<Self, GeometryError> {
        if dim < 2 {
            return Err(GeometryError::UnsupportedDimension { min: 2, got: dim });
        }
        for p in &points {
            if p.len() != dim + 1 {
                return Err(GeometryError::DimensionMismatch { expected: dim + 1, got: p.len() });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(GeometryError::DuplicatePoint { first: i, second: j });
                }
            }
        }
        Ok(Self { dim, points, label: label.into() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &ProjectivePoint {
        &self.points[index]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Removes one point, preserving the order of the rest.
    pub fn remove_point(&self, index: usize) -> Result<Configuration, GeometryError> {
        if index >= self.points.len() {
            return Err(GeometryError::IndexOutOfRange { index, len: self.points.len() });
        }
        let mut points = self.points.clone();
        points.remove(index);
        Configuration::new(self.dim, points, format!("{} minus point {index}", self.label))
    }

    /// Serializes to the configuration JSON format (rationals as strings).
    pub fn to_json(&self) -> ConfigurationFile {
        ConfigurationFile {
            dim: self.dim,
            label: self.label.clone(),
            backend: None,
            points: self
                .points
                .iter()
                .map(|p| p.coords.iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }
}

/// On-disk form of a configuration: `{"dim": 3, "label": "cube",
/// "points": [["1","1","1","1"], ...]}`. Floating files carry
/// `"backend": "float"` and decimal coordinate strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub dim: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    pub points: Vec<Vec<String>>,
}

impl ConfigurationFile {
    /// Parses, canonicalizes, and validates an exact configuration.
    pub fn into_configuration(self) -> Result<Configuration, String> {
        if self.backend.as_deref().is_some_and(|b| b != "exact") {
            return Err(format!(
                "backend {:?} is not an exact configuration",
                self.backend.unwrap()
            ));
        }
        let mut points = Vec::with_capacity(self.points.len());
        for (i, coords) in self.points.iter().enumerate() {
            let parsed: Result<Vec<Rational>, String> =
                coords.iter().map(|s| parse_rational(s)).collect();
            let parsed = parsed.map_err(|e| format!("point {i}: {e}"))?;
            points.push(ProjectivePoint::new(&parsed).map_err(|e| format!("point {i}: {e}"))?);
        }
        Configuration::new(self.dim, points, self.label).map_err(|e| e.to_string())
    }

    /// Parses a floating configuration (decimal coordinate strings).
    pub fn into_float_points(self) -> Result<(usize, String, Vec<Vec<f64>>), String> {
        let mut points = Vec::with_capacity(self.points.len());
        for (i, coords) in self.points.iter().enumerate() {
            if coords.len() != self.dim + 1 {
                return Err(format!(
                    "point {i}: expected {} coordinates, got {}",
                    self.dim + 1,
                    coords.len()
                ));
            }
            let parsed: Result<Vec<f64>, String> = coords
                .iter()
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("point {i}: invalid coordinate {s:?}: {e}"))
                })
                .collect();
            points.push(parsed?);
        }
        Ok((self.dim, self.label, points))
    }
}

/// Report of the validity checks: does the set span the whole space, and does
/// every d-subset span a hyperplane? On failure `witness` holds an offending
/// subset of point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub full_span: bool,
    pub general_position: bool,
    pub witness: Option<Vec<usize>>,
}

impl GeneralPositionReport {
    pub fn ok(&self) -> bool {
        self.full_span && self.general_position
    }
}

/// Checks that the points span PG(d) and that every d-subset has rank d,
/// examining all C(n,d) subsets exactly.
pub fn validate_general_position(c: &Configuration) -> GeneralPositionReport {
    let d = c.dim;
    let all_rows: Vec<Vec<BigInt>> = c.points.iter().map(|p| p.coords.clone()).collect();
    let full_span = exact_linalg::bigint_rank(&all_rows) == d + 1;
    if c.len() >= d {
        for subset in crate::incidence::subsets(c.len(), d) {
            let rows: Vec<Vec<BigInt>> =
                subset.iter().map(|&i| c.points[i].coords.clone()).collect();
            if exact_linalg::bigint_rank(&rows) < d {
                return GeneralPositionReport {
                    full_span,
                    general_position: false,
                    witness: Some(subset),
                };
            }
        }
    }
    GeneralPositionReport { full_span, general_position: true, witness: None }
}

/// An invertible projective transformation of PG(d, ℝ).
#[derive(Debug, Clone)]
pub struct ProjectiveMap {
    matrix: Matrix,
}

impl ProjectiveMap {
    /// Wraps a (d+1)×(d+1) rational matrix; fails if it is singular.
    pub fn new(matrix: Matrix) -> Result<Self, GeometryError> {
        if matrix.rows() != matrix.cols() {
            return Err(GeometryError::DimensionMismatch {
                expected: matrix.rows(),
                got: matrix.cols(),
            });
        }
        if exact_linalg::rank(&matrix) < matrix.rows() {
            return Err(GeometryError::SingularMap);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, p: &ProjectivePoint) -> Result<ProjectivePoint, GeometryError> {
        if p.len() != self.matrix.cols() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.matrix.cols(),
                got: p.len(),
            });
        }
        let image = self.matrix.mul_vec(&p.to_rationals());
        ProjectivePoint::new(&image)
    }
}

/// Applies a projective transformation to every point, re-canonicalizing.
/// Point order is preserved so indices remain meaningful.
pub fn transform(c: &Configuration, m: &ProjectiveMap) -> Result<Configuration, GeometryError> {
    if m.matrix.cols() != c.dim + 1 {
        return Err(GeometryError::DimensionMismatch { expected: c.dim + 1, got: m.matrix.cols() });
    }
    let points: Result<Vec<ProjectivePoint>, GeometryError> =
        c.points.iter().map(|p| m.apply(p)).collect();
    Configuration::new(c.dim, points?, format!("{} [transformed]", c.label))
}

/// Projects the configuration from the point at `index` into PG(d−1).
///
/// The chart is fixed deterministically: with x the projection center and k
/// the position of x's first nonzero coordinate, every other point y maps to
/// x_k·y − y_k·x (whose k-th coordinate is 0), coordinate k is deleted, and
/// the result is canonicalized. Hyperplanes of the image correspond exactly to
/// hyperplanes of the source through x, so the ordinary count of the image
/// equals the number of ordinary hyperplanes through x.
pub fn project_from_point(c: &Configuration, index: usize) -> Result<Configuration, GeometryError> {
    if c.dim < 3 {
        return Err(GeometryError::UnsupportedDimension { min: 3, got: c.dim });
    }
    if index >= c.len() {
        return Err(GeometryError::IndexOutOfRange { index, len: c.len() });
    }
    let x = &c.points[index];
    let k = x.coords.iter().position(|e| !e.is_zero()).expect("canonical points are nonzero");
    let xk = &x.coords[k];
    let mut points = Vec::with_capacity(c.len() - 1);
    for (i, y) in c.points.iter().enumerate() {
        if i == index {
            continue;
        }
        let yk = &y.coords[k];
        let image: Vec<BigInt> = y
            .coords
            .iter()
            .zip(x.coords.iter())
            .enumerate()
            .filter(|(pos, _)| *pos != k)
            .map(|(_, (yc, xc))| xk * yc - yk * xc)
            .collect();
        let p = ProjectivePoint::from_bigints(&image).map_err(|_| {
            // The image vanishes only if y is proportional to x, which
            // distinctness of configuration points rules out.
            GeometryError::DuplicateProjection
        })?;
        points.push(p);
    }
    match Configuration::new(c.dim - 1, points, format!("{} projected from {index}", c.label)) {
        Ok(cfg) => Ok(cfg),
        Err(GeometryError::DuplicatePoint { .. }) => Err(GeometryError::DuplicateProjection),
        Err(e) => Err(e),
    }
}
