//! Named point-configuration families and their closed-form ordinary counts.
//!
//! Exact families (`cube`, `broken_fano`, `trivial_example`, `dplus3_odd`)
//! produce rational configurations the exact engine can analyze. The polygon
//! (d=2) and prism (d=3) families use trigonometric coordinates, so they come
//! in two backends: floating coordinates for the tolerance engine, and a
//! combinatorial block model listing every hyperplane with more than d points,
//! from which the secant profile follows by counting.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::Rational;
use crate::geometry::{
    project_from_point, Configuration, ConfigurationFile, GeometryError, ProjectivePoint,
};
use crate::incidence::{binom, SecantProfile};

/// Coordinate backend for a constructed family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Exact rational coordinates.
    Exact,
    /// Floating coordinates for the tolerance engine.
    Float,
    /// Combinatorial block model (no coordinates).
    Comb,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
            Backend::Comb => "comb",
        })
    }
}

#[derive(Debug, Error)]
pub enum FamiliesError {
    #[error("family {family} needs n >= {min}, got {n}")]
    UnsupportedSize { family: &'static str, n: usize, min: usize },
    #[error("family {family} needs dimension >= {min}, got {d}")]
    DimensionOutOfRange { family: &'static str, d: usize, min: usize },
    #[error("the d+3 family exists for odd dimension only, got d = {d}")]
    NotOdd { d: usize },
    #[error("expected {expected} alpha parameters, got {got}")]
    AlphasWrongCount { expected: usize, got: usize },
    #[error("alpha parameters must be pairwise distinct and nonzero")]
    AlphasNotDistinct,
    #[error("family {family} does not support the {backend} backend")]
    BackendUnsupported { family: &'static str, backend: Backend },
    #[error("the deletion variant applies to odd n only")]
    VariantNotApplicable,
    #[error("deletion variant {index} out of range (must be < {len})")]
    VariantOutOfRange { index: usize, len: usize },
    #[error("invalid block model: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A configuration with floating coordinates (for irrational families).
#[derive(Debug, Clone, PartialEq)]
pub struct FloatConfiguration {
    pub dim: usize,
    pub label: String,
    pub points: Vec<Vec<f64>>,
}

impl FloatConfiguration {
    /// On-disk form: coordinate strings in scientific notation that parse
    /// back to the identical f64 values.
    pub fn to_file(&self) -> ConfigurationFile {
        ConfigurationFile {
            dim: self.dim,
            label: self.label.clone(),
            backend: Some("float".to_string()),
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|x| format!("{x:.16e}")).collect())
                .collect(),
        }
    }
}

/// A combinatorial hyperplane model: named points plus the list of all
/// hyperplane blocks with more than d points (as sorted index sets). Every
/// d-subset not inside a block spans its own ordinary hyperplane, so the
/// secant profile is determined by counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialModel {
    pub dim: usize,
    pub label: String,
    pub points: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
}

/// On-disk form of a block model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombModelFile {
    pub dim: usize,
    pub label: String,
    pub backend: String,
    pub points: Vec<String>,
    pub blocks: Vec<Vec<usize>>,
}

impl CombModelFile {
    pub fn into_model(self) -> Result<CombinatorialModel, String> {
        if self.backend != "comb" {
            return Err(format!("backend {:?} is not a block model", self.backend));
        }
        let model = CombinatorialModel {
            dim: self.dim,
            label: self.label,
            points: self.points,
            blocks: self.blocks,
        };
        model.validate().map_err(|e| e.to_string())?;
        Ok(model)
    }
}

impl CombinatorialModel {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Checks the block axioms: sizes in [d+1, n−1], strictly sorted indices
    /// in range, distinct point names, no duplicate blocks, and no two blocks
    /// sharing d points (two distinct hyperplanes meet in at most d−1).
    pub fn validate(&self) -> Result<(), FamiliesError> {
        let n = self.n();
        let d = self.dim;
        let fail = |msg: String| Err(FamiliesError::InvalidModel(msg));
        if d < 2 {
            return fail(format!("dimension must be at least 2, got {d}"));
        }
        if n < d + 2 {
            return fail(format!("need at least d+2 = {} points, got {n}", d + 2));
        }
        if self.points.iter().collect::<BTreeSet<_>>().len() != n {
            return fail("point names must be distinct".to_string());
        }
        let mut seen: BTreeSet<&[usize]> = BTreeSet::new();
        for (b, block) in self.blocks.iter().enumerate() {
            if block.len() < d + 1 || block.len() > n - 1 {
                return fail(format!(
                    "block {b} has {} points; expected between {} and {}",
                    block.len(),
                    d + 1,
                    n - 1
                ));
            }
            if !block.windows(2).all(|w| w[0] < w[1]) {
                return fail(format!("block {b} is not strictly sorted"));
            }
            if *block.last().expect("nonempty") >= n {
                return fail(format!("block {b} references point {} >= n", block.last().unwrap()));
            }
            if !seen.insert(block.as_slice()) {
                return fail(format!("block {b} is a duplicate"));
            }
        }
        for (a, left) in self.blocks.iter().enumerate() {
            for right in self.blocks.iter().skip(a + 1) {
                let common = left.iter().filter(|i| right.binary_search(i).is_ok()).count();
                if common >= d {
                    return fail(format!(
                        "two blocks share {common} points; hyperplanes share at most {}",
                        d - 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// The secant profile implied by the blocks: τ_i for i > d counts blocks
    /// of size i, and τ_d = C(n,d) − Σ_b C(|b|,d).
    pub fn profile(&self) -> Result<SecantProfile, FamiliesError> {
        self.validate()?;
        let n = self.n();
        let d = self.dim;
        let mut tau: BTreeMap<usize, u64> = BTreeMap::new();
        let mut covered = BigInt::zero();
        for block in &self.blocks {
            *tau.entry(block.len()).or_insert(0) += 1;
            covered += binom(block.len(), d);
        }
        let ordinary = binom(n, d) - covered;
        if ordinary.is_negative() {
            return Err(FamiliesError::InvalidModel(
                "blocks cover more d-subsets than exist".to_string(),
            ));
        }
        let ordinary = ordinary.to_u64().ok_or_else(|| {
            FamiliesError::InvalidModel("ordinary count overflows u64".to_string())
        })?;
        tau.insert(d, ordinary);
        Ok(SecantProfile::from_tau(n, d, tau))
    }

    pub fn to_file(&self) -> CombModelFile {
        CombModelFile {
            dim: self.dim,
            label: self.label.clone(),
            backend: "comb".to_string(),
            points: self.points.clone(),
            blocks: self.blocks.clone(),
        }
    }
}

/// The ordinary-hyperplane count of a block model.
pub fn combinatorial_ordinary_count(model: &CombinatorialModel) -> Result<u64, FamiliesError> {
    Ok(model.profile()?.ordinary)
}

/// A constructed family instance, in whichever backend was requested.
#[derive(Debug, Clone)]
pub enum Constructed {
    Exact(Configuration),
    Float(FloatConfiguration),
    Comb(CombinatorialModel),
}

impl Constructed {
    pub fn label(&self) -> &str {
        match self {
            Constructed::Exact(c) => c.label(),
            Constructed::Float(f) => &f.label,
            Constructed::Comb(m) => &m.label,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Constructed::Exact(c) => c.len(),
            Constructed::Float(f) => f.points.len(),
            Constructed::Comb(m) => m.n(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Constructed::Exact(c) => c.dim(),
            Constructed::Float(f) => f.dim,
            Constructed::Comb(m) => m.dim,
        }
    }

    /// Pretty JSON in the on-disk format for the backend.
    pub fn to_json_string(&self) -> String {
        let out = match self {
            Constructed::Exact(c) => serde_json::to_string_pretty(&c.to_json()),
            Constructed::Float(f) => serde_json::to_string_pretty(&f.to_file()),
            Constructed::Comb(m) => serde_json::to_string_pretty(&m.to_file()),
        };
        out.expect("serialization cannot fail")
    }
}

/// Converts an exact configuration to floating coordinates.
pub fn to_float(c: &Configuration) -> FloatConfiguration {
    FloatConfiguration {
        dim: c.dim(),
        label: c.label().to_string(),
        points: c
            .points()
            .iter()
            .map(|p| {
                p.coords().iter().map(|x| x.to_f64().expect("coordinate fits in f64")).collect()
            })
            .collect(),
    }
}

/// The unit cube in 3-space: eight vertices, eight ordinary planes, and
/// twelve 4-point planes (six faces and six diagonal planes).
pub fn cube() -> Configuration {
    let mut points = Vec::with_capacity(8);
    for &a in &[1i64, -1] {
        for &b in &[1i64, -1] {
            for &c in &[1i64, -1] {
                points.push(ProjectivePoint::from_integers(&[a, b, c, 1]).expect("nonzero vertex"));
            }
        }
    }
    Configuration::new(3, points, "cube").expect("cube is a valid configuration")
}

/// Seven points in the plane with three ordinary lines: the projection of the
/// cube from one of its vertices (a near-pencil-free planar extreme).
pub fn broken_fano() -> Configuration {
    project_from_point(&cube(), 0)
        .expect("projection from a cube vertex is defined")
        .with_label("broken-fano")
}

/// A cone over a rational normal curve: one apex plus n−1 curve points
/// (0, 1, t, …, t^{d−1}). Every hyperplane through the apex is ordinary
/// (C(n−1, d−1) of them) and the curve spans the single (n−1)-point
/// hyperplane x_0 = 0.
pub fn trivial_example(n: usize, d: usize) -> Result<Configuration, FamiliesError> {
    if d < 2 {
        return Err(FamiliesError::DimensionOutOfRange { family: "trivial", d, min: 2 });
    }
    if n < d + 2 {
        return Err(FamiliesError::UnsupportedSize { family: "trivial", n, min: d + 2 });
    }
    let mut points = Vec::with_capacity(n);
    let mut apex = vec![BigInt::zero(); d + 1];
    apex[0] = BigInt::one();
    points.push(ProjectivePoint::from_bigints(&apex).expect("apex is nonzero"));
    for t in 0..(n - 1) as u64 {
        let t = BigInt::from(t);
        let mut coords = Vec::with_capacity(d + 1);
        coords.push(BigInt::zero());
        let mut power = BigInt::one();
        for _ in 0..d {
            coords.push(power.clone());
            power *= &t;
        }
        points.push(ProjectivePoint::from_bigints(&coords).expect("curve point is nonzero"));
    }
    Ok(Configuration::new(d, points, format!("trivial-{n}-{d}"))?)
}

/// The n = d+3 family for odd d: the d+1 simplex points, the point
/// (1,…,1,0), and (α_1, α_1, …, α_k, α_k, 0, 1) with k = (d−1)/2 distinct
/// nonzero parameters. Its profile is τ_d = (d+3)(d+1)(d−1)/6 and
/// τ_{d+1} = (d+3)/2.
pub fn dplus3_odd(d: usize, alphas: Option<&[Rational]>) -> Result<Configuration, FamiliesError> {
    if d < 3 {
        return Err(FamiliesError::DimensionOutOfRange { family: "dplus3", d, min: 3 });
    }
    if d.is_multiple_of(2) {
        return Err(FamiliesError::NotOdd { d });
    }
    let k = (d - 1) / 2;
    let defaults: Vec<Rational> =
        (1..=k as i64).map(|i| Rational::from_integer(BigInt::from(i))).collect();
    let alphas = alphas.unwrap_or(&defaults);
    if alphas.len() != k {
        return Err(FamiliesError::AlphasWrongCount { expected: k, got: alphas.len() });
    }
    let distinct: BTreeSet<&Rational> = alphas.iter().collect();
    if distinct.len() != k || alphas.iter().any(|a| a.is_zero()) {
        return Err(FamiliesError::AlphasNotDistinct);
    }

    let mut points = Vec::with_capacity(d + 3);
    for i in 0..=d {
        let mut coords = vec![BigInt::zero(); d + 1];
        coords[i] = BigInt::one();
        points.push(ProjectivePoint::from_bigints(&coords).expect("basis point"));
    }
    let mut all_ones = vec![BigInt::one(); d + 1];
    all_ones[d] = BigInt::zero();
    points.push(ProjectivePoint::from_bigints(&all_ones).expect("sum point"));
    let mut v = Vec::with_capacity(d + 1);
    for alpha in alphas {
        v.push(alpha.clone());
        v.push(alpha.clone());
    }
    v.push(Rational::zero());
    v.push(Rational::one());
    points.push(ProjectivePoint::new(&v)?);
    Ok(Configuration::new(d, points, format!("dplus3-{d}"))?)
}

/// Closed-form ordinary-line count of the polygon family X_n (n ≥ 8).
pub fn polygon_formula(n: usize) -> Result<u64, FamiliesError> {
    if n < 8 {
        return Err(FamiliesError::UnsupportedSize { family: "polygon", n, min: 8 });
    }
    let n = n as u64;
    Ok(match n % 4 {
        0 | 2 => n / 2,
        1 => (3 * n - 3) / 4,
        _ => (3 * n - 9) / 4,
    })
}

/// Closed-form ordinary-plane count of the prism family Y_n (n ≥ 8).
pub fn prism_formula(n: usize) -> Result<u64, FamiliesError> {
    if n < 8 {
        return Err(FamiliesError::UnsupportedSize { family: "prism", n, min: 8 });
    }
    let n = n as u64;
    Ok(match n % 4 {
        0 => n * n / 4 - n,
        2 => n * n / 4 - n / 2,
        1 => (3 * n * n - 8 * n + 5) / 8,
        _ => (3 * n * n - 12 * n + 17) / 8,
    })
}

fn vertex_names(prefix: &str, m: usize, skip: Option<usize>) -> Vec<String> {
    (0..m).filter(|&i| Some(i) != skip).map(|i| format!("{prefix}{i}")).collect()
}

/// Sorted pair list {i, j} with i+j ≡ s (mod m), grouped by s.
fn pairs_by_sum(m: usize) -> Vec<Vec<(usize, usize)>> {
    let mut by_sum = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            by_sum[(i + j) % m].push((i, j));
        }
    }
    by_sum
}

/// Removes one point from a block list, reindexing the survivors and keeping
/// only blocks that still have at least `min_size` points.
fn delete_point_from_blocks(
    blocks: &[Vec<usize>],
    deleted: usize,
    min_size: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for block in blocks {
        let reduced: Vec<usize> = block
            .iter()
            .filter(|&&x| x != deleted)
            .map(|&x| if x > deleted { x - 1 } else { x })
            .collect();
        if reduced.len() >= min_size {
            out.push(reduced);
        }
    }
    out
}

/// Blocks of the even configuration X_{2m}: the line at infinity
/// {I_0, …, I_{m−1}} plus one 3-point block {A_i, A_j, I_{(i+j) mod m}} per
/// vertex pair. Points are indexed A_i = i, I_k = m+k.
fn polygon_blocks_even(m: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![(m..2 * m).collect::<Vec<usize>>()];
    for (s, pairs) in pairs_by_sum(m).into_iter().enumerate() {
        for (i, j) in pairs {
            blocks.push(vec![i, j, m + s]);
        }
    }
    blocks
}

/// The polygon family in the plane (d = 2, n ≥ 8).
///
/// Even n = 2m: a regular m-gon plus the m chord directions at infinity.
/// n ≡ 1 (mod 4): the even configuration on 2m = n−1 points plus the center,
/// which lies on the m/2 diameters. n ≡ 3 (mod 4): the even configuration on
/// 2m = n+1 points with one infinity point I_v removed (`variant` picks v,
/// default 0; even v all give the matching closed-form count).
pub fn polygon(
    n: usize,
    backend: Backend,
    variant: Option<usize>,
) -> Result<Constructed, FamiliesError> {
    if n < 8 {
        return Err(FamiliesError::UnsupportedSize { family: "polygon", n, min: 8 });
    }
    if backend == Backend::Exact {
        return Err(FamiliesError::BackendUnsupported { family: "polygon", backend });
    }
    if variant.is_some() && n % 4 != 3 {
        return Err(FamiliesError::VariantNotApplicable);
    }
    let label = format!("polygon-{n}");

    let vertex = |m: usize, i: usize| -> Vec<f64> {
        let theta = 2.0 * PI * i as f64 / m as f64;
        vec![theta.cos(), theta.sin(), 1.0]
    };
    let infinity = |m: usize, k: usize| -> Vec<f64> {
        let theta = PI * k as f64 / m as f64;
        vec![theta.sin(), -theta.cos(), 0.0]
    };

    match n % 4 {
        0 | 2 => {
            let m = n / 2;
            match backend {
                Backend::Comb => Ok(Constructed::Comb(CombinatorialModel {
                    dim: 2,
                    label,
                    points: [vertex_names("A", m, None), vertex_names("I", m, None)].concat(),
                    blocks: polygon_blocks_even(m),
                })),
                Backend::Float => {
                    let points = (0..m)
                        .map(|i| vertex(m, i))
                        .chain((0..m).map(|k| infinity(m, k)))
                        .collect();
                    Ok(Constructed::Float(FloatConfiguration { dim: 2, label, points }))
                }
                Backend::Exact => unreachable!(),
            }
        }
        1 => {
            let m = (n - 1) / 2;
            match backend {
                Backend::Comb => {
                    let mut blocks = vec![(m..2 * m).collect::<Vec<usize>>()];
                    for (s, pairs) in pairs_by_sum(m).into_iter().enumerate() {
                        for (i, j) in pairs {
                            let mut block = vec![i, j, m + s];
                            if j == i + m / 2 {
                                block.push(2 * m); // diameter: gains the center
                            }
                            blocks.push(block);
                        }
                    }
                    let mut points =
                        [vertex_names("A", m, None), vertex_names("I", m, None)].concat();
                    points.push("C".to_string());
                    Ok(Constructed::Comb(CombinatorialModel { dim: 2, label, points, blocks }))
                }
                Backend::Float => {
                    let points = (0..m)
                        .map(|i| vertex(m, i))
                        .chain((0..m).map(|k| infinity(m, k)))
                        .chain(std::iter::once(vec![0.0, 0.0, 1.0]))
                        .collect();
                    Ok(Constructed::Float(FloatConfiguration { dim: 2, label, points }))
                }
                Backend::Exact => unreachable!(),
            }
        }
        _ => {
            let m = n.div_ceil(2);
            let v = variant.unwrap_or(0);
            if v >= m {
                return Err(FamiliesError::VariantOutOfRange { index: v, len: m });
            }
            match backend {
                Backend::Comb => {
                    let blocks = delete_point_from_blocks(&polygon_blocks_even(m), m + v, 3);
                    let points =
                        [vertex_names("A", m, None), vertex_names("I", m, Some(v))].concat();
                    Ok(Constructed::Comb(CombinatorialModel { dim: 2, label, points, blocks }))
                }
                Backend::Float => {
                    let points = (0..m)
                        .map(|i| vertex(m, i))
                        .chain((0..m).filter(|&k| k != v).map(|k| infinity(m, k)))
                        .collect();
                    Ok(Constructed::Float(FloatConfiguration { dim: 2, label, points }))
                }
                Backend::Exact => unreachable!(),
            }
        }
    }
}

/// Blocks of the even prism Y_{2m}: the two ring planes and one 4-point block
/// {T_i, T_j, B_k, B_ℓ} for every pair of chords with i+j ≡ k+ℓ (mod m).
/// Points are indexed T_i = i, B_k = m+k.
fn prism_blocks_even(m: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![(0..m).collect::<Vec<usize>>(), (m..2 * m).collect::<Vec<usize>>()];
    for pairs in pairs_by_sum(m) {
        for &(i, j) in &pairs {
            for &(k, l) in &pairs {
                blocks.push(vec![i, j, m + k, m + l]);
            }
        }
    }
    blocks
}

/// The prism family in 3-space (d = 3, n ≥ 8).
///
/// Even n = 2m: two regular m-gon rings at heights ±1. A plane through two
/// top and two bottom vertices exists exactly when the two chords are
/// parallel, i.e. i+j ≡ k+ℓ (mod m). Odd n: the even configuration on
/// n+1 points with one bottom vertex B_v removed (`variant` picks v, default
/// 0; the count is the same for every v by symmetry).
pub fn prism(
    n: usize,
    backend: Backend,
    variant: Option<usize>,
) -> Result<Constructed, FamiliesError> {
    if n < 8 {
        return Err(FamiliesError::UnsupportedSize { family: "prism", n, min: 8 });
    }
    if backend == Backend::Exact {
        return Err(FamiliesError::BackendUnsupported { family: "prism", backend });
    }
    if variant.is_some() && n.is_multiple_of(2) {
        return Err(FamiliesError::VariantNotApplicable);
    }
    let label = format!("prism-{n}");
    let ring_point = |m: usize, i: usize, z: f64| -> Vec<f64> {
        let theta = 2.0 * PI * i as f64 / m as f64;
        vec![theta.cos(), theta.sin(), z, 1.0]
    };

    if n.is_multiple_of(2) {
        let m = n / 2;
        match backend {
            Backend::Comb => Ok(Constructed::Comb(CombinatorialModel {
                dim: 3,
                label,
                points: [vertex_names("T", m, None), vertex_names("B", m, None)].concat(),
                blocks: prism_blocks_even(m),
            })),
            Backend::Float => {
                let points = (0..m)
                    .map(|i| ring_point(m, i, 1.0))
                    .chain((0..m).map(|i| ring_point(m, i, -1.0)))
                    .collect();
                Ok(Constructed::Float(FloatConfiguration { dim: 3, label, points }))
            }
            Backend::Exact => unreachable!(),
        }
    } else {
        let m = n.div_ceil(2);
        let v = variant.unwrap_or(0);
        if v >= m {
            return Err(FamiliesError::VariantOutOfRange { index: v, len: m });
        }
        match backend {
            Backend::Comb => {
                let blocks = delete_point_from_blocks(&prism_blocks_even(m), m + v, 4);
                let points = [vertex_names("T", m, None), vertex_names("B", m, Some(v))].concat();
                Ok(Constructed::Comb(CombinatorialModel { dim: 3, label, points, blocks }))
            }
            Backend::Float => {
                let points = (0..m)
                    .map(|i| ring_point(m, i, 1.0))
                    .chain((0..m).filter(|&i| i != v).map(|i| ring_point(m, i, -1.0)))
                    .collect();
                Ok(Constructed::Float(FloatConfiguration { dim: 3, label, points }))
            }
            Backend::Exact => unreachable!(),
        }
    }
}
