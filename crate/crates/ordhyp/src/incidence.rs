//! Secant-profile enumeration and the counting-identity checks.
//!
//! A hyperplane is an *i-secant* of a point set S when it contains exactly i
//! points of S; τ_i counts the distinct i-secants and the τ-vector
//! (τ_d, …, τ_{n−1}) is the *secant profile*. An *ordinary* hyperplane is a
//! d-secant. The exact backend enumerates all C(n,d) spanning d-subsets and
//! deduplicates hyperplanes by canonical form; the floating backend does the
//! same with unit-normalized vectors, a conditioning pre-check, and
//! tolerance-based deduplication, for families with irrational coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact_linalg;
use crate::geometry::{
    spanning_hyperplane, validate_general_position, Configuration, GeometryError, Hyperplane,
};

#[derive(Debug, Error)]
pub enum IncidenceError {
    #[error("configuration is not in general position; witness subset {witness:?}")]
    DegenerateConfiguration { witness: Vec<usize> },
    #[error("configuration is contained in a hyperplane")]
    NotFullSpan,
    #[error(
        "ill-conditioned subset {subset:?}: smallest singular value {sigma_min:.3e} <= eps {eps:.3e}"
    )]
    IllConditioned { subset: Vec<usize>, sigma_min: f64, eps: f64 },
    #[error("points {first} and {second} coincide within tolerance")]
    NumericDuplicate { first: usize, second: usize },
    #[error("point {index} is numerically zero")]
    NumericZeroPoint { index: usize },
    #[error("worker count must be at least 1")]
    ZeroThreads,
}

/// Lexicographic k-subsets of {0, …, n−1}.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

/// Binomial coefficient as an exact integer.
pub(crate) fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The secant profile of a configuration: τ_i for d ≤ i ≤ n−1 (zero entries
/// omitted), the ordinary count τ_d, and optionally the deduplicated
/// hyperplane list with incident point indices, sorted lexicographically by
/// canonical coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecantProfile {
    pub n: usize,
    pub d: usize,
    pub tau: BTreeMap<usize, u64>,
    pub ordinary: u64,
    pub hyperplanes: Option<Vec<(Hyperplane, Vec<usize>)>>,
    /// d-subsets that failed to span, recorded (not raised) when validation
    /// was skipped for diagnostic use.
    pub degenerate_subsets: Vec<Vec<usize>>,
}

impl SecantProfile {
    /// τ_i, zero when absent.
    pub fn tau_at(&self, i: usize) -> u64 {
        self.tau.get(&i).copied().unwrap_or(0)
    }

    /// Builds a profile directly from a τ map (for models and bound traces).
    pub fn from_tau(n: usize, d: usize, tau: BTreeMap<usize, u64>) -> Self {
        let tau: BTreeMap<usize, u64> = tau.into_iter().filter(|&(_, v)| v != 0).collect();
        let ordinary = tau.get(&d).copied().unwrap_or(0);
        SecantProfile { n, d, tau, ordinary, hyperplanes: None, degenerate_subsets: Vec::new() }
    }
}

/// Options for [`secant_profile_with`].
#[derive(Debug, Clone)]
pub struct ProfileOptions {
    /// Keep the hyperplane list (with incident point indices) in the result.
    pub with_hyperplanes: bool,
    /// Skip the general-position pre-check; degenerate d-subsets are then
    /// recorded in the profile instead of aborting the run.
    pub skip_validation: bool,
    /// Number of enumeration workers; results are identical for any value.
    pub threads: usize,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self { with_hyperplanes: false, skip_validation: false, threads: 1 }
    }
}

/// Computes the exact secant profile of a validated configuration.
pub fn secant_profile(c: &Configuration) -> Result<SecantProfile, IncidenceError> {
    secant_profile_with(c, &ProfileOptions::default())
}

/// Computes the exact secant profile with explicit options.
pub fn secant_profile_with(
    c: &Configuration,
    opts: &ProfileOptions,
) -> Result<SecantProfile, IncidenceError> {
    if opts.threads == 0 {
        return Err(IncidenceError::ZeroThreads);
    }
    if !opts.skip_validation {
        let report = validate_general_position(c);
        if !report.general_position {
            return Err(IncidenceError::DegenerateConfiguration {
                witness: report.witness.unwrap_or_default(),
            });
        }
        if !report.full_span {
            return Err(IncidenceError::NotFullSpan);
        }
    }
    let d = c.dim();
    let n = c.len();
    let combos: Vec<Vec<usize>> = subsets(n, d).collect();
    let threads = opts.threads.min(combos.len().max(1));

    let mut distinct: BTreeSet<Hyperplane> = BTreeSet::new();
    let mut degenerate: BTreeSet<Vec<usize>> = BTreeSet::new();
    // Workers take disjoint stripes of the subset stream and emit canonical
    // hyperplanes; the merge is a set union keyed by canonical form, so the
    // result is bit-identical for every worker count and schedule.
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(threads);
        for w in 0..threads {
            let combos = &combos;
            handles.push(scope.spawn(move || {
                let mut local: BTreeSet<Hyperplane> = BTreeSet::new();
                let mut local_degen: BTreeSet<Vec<usize>> = BTreeSet::new();
                for subset in combos.iter().skip(w).step_by(threads) {
                    let pts: Vec<_> = subset.iter().map(|&i| c.point(i)).collect();
                    match spanning_hyperplane(&pts) {
                        Ok(h) => {
                            local.insert(h);
                        }
                        Err(GeometryError::Degenerate) => {
                            local_degen.insert(subset.clone());
                        }
                        Err(e) => unreachable!("unexpected spanning error: {e}"),
                    }
                }
                (local, local_degen)
            }));
        }
        for handle in handles {
            let (local, local_degen) = handle.join().expect("profile worker panicked");
            distinct.extend(local);
            degenerate.extend(local_degen);
        }
    });

    let mut tau: BTreeMap<usize, u64> = BTreeMap::new();
    let mut listed = Vec::new();
    for h in distinct {
        let incident: Vec<usize> =
            (0..n).filter(|&i| h.incident(c.point(i)).expect("dimensions match")).collect();
        *tau.entry(incident.len()).or_insert(0) += 1;
        if opts.with_hyperplanes {
            listed.push((h, incident));
        }
    }
    let ordinary = tau.get(&d).copied().unwrap_or(0);
    Ok(SecantProfile {
        n,
        d,
        tau,
        ordinary,
        hyperplanes: opts.with_hyperplanes.then_some(listed),
        degenerate_subsets: degenerate.into_iter().collect(),
    })
}

/// Per-point counts of ordinary hyperplanes (N_x for each x); their sum is
/// d · τ_d since every ordinary hyperplane is counted at its d points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerPointIncidence {
    pub counts: Vec<u64>,
}

/// Computes N_x for every point of the configuration.
pub fn per_point_ordinary(c: &Configuration) -> Result<PerPointIncidence, IncidenceError> {
    let opts = ProfileOptions { with_hyperplanes: true, ..ProfileOptions::default() };
    let profile = secant_profile_with(c, &opts)?;
    Ok(per_point_from_profile(&profile))
}

/// Extracts per-point ordinary counts from a profile that carries hyperplanes.
pub fn per_point_from_profile(profile: &SecantProfile) -> PerPointIncidence {
    let mut counts = vec![0u64; profile.n];
    if let Some(list) = &profile.hyperplanes {
        for (_, incident) in list {
            if incident.len() == profile.d {
                for &i in incident {
                    counts[i] += 1;
                }
            }
        }
    }
    PerPointIncidence { counts }
}

/// Counting identity over d-subsets: Σ_i C(i,d)·τ_i = C(n,d) exactly.
pub fn check_trivcount(p: &SecantProfile) -> bool {
    let mut sum = BigInt::zero();
    for (&i, &count) in &p.tau {
        sum += binom(i, p.d) * BigInt::from(count);
    }
    sum == binom(p.n, p.d)
}

/// Extension inequality over (d+2)-subsets:
/// Σ_{i=1}^{n−d−1} (n−d−i)·C(d+i, i−1)·τ_{d+i} ≤ C(n, d+2).
pub fn check_bettercount(p: &SecantProfile) -> bool {
    let (n, d) = (p.n, p.d);
    let mut sum = BigInt::zero();
    for i in 1..n.saturating_sub(d) {
        let coeff = BigInt::from(n - d - i) * binom(d + i, i - 1);
        sum += coeff * BigInt::from(p.tau_at(d + i));
    }
    sum <= binom(n, d + 2)
}

/// Result of the unique-extension check; `witness` is a violating
/// (d+2)-subset when the check fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntsReport {
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

/// Verifies that every spanning (d+2)-subset T has at most one (d+1)-subset
/// lying in a common hyperplane. A failure indicates an engine bug for
/// general-position input, since two such subsets would force two distinct
/// hyperplanes to share d points.
pub fn check_ints(c: &Configuration) -> IntsReport {
    let d = c.dim();
    let n = c.len();
    for t in subsets(n, d + 2) {
        let rows: Vec<Vec<BigInt>> = t.iter().map(|&i| c.point(i).coords().to_vec()).collect();
        if exact_linalg::bigint_rank(&rows) < d + 1 {
            continue; // T does not span the whole space
        }
        let mut flats = 0;
        for skip in 0..t.len() {
            let minor: Vec<Vec<BigInt>> =
                (0..t.len()).filter(|&r| r != skip).map(|r| rows[r].clone()).collect();
            if exact_linalg::bigint_det(minor).is_zero() {
                flats += 1;
                if flats > 1 {
                    return IntsReport { passed: false, witness: Some(t) };
                }
            }
        }
    }
    IntsReport { passed: true, witness: None }
}

/// Tolerance-based secant profile for floating coordinates.
///
/// Points are unit-normalized (antipodal vectors are the same projective
/// point). Every d-subset must be numerically well conditioned: the smallest
/// singular value of its d×(d+1) stack must exceed `eps`. Hyperplane vectors
/// are unit eigenvectors of the stack's Gram matrix, sign-fixed at the first
/// dominant coordinate, deduplicated on a rounding grid of resolution `eps`
/// with pairwise confirmation inside buckets, and incidence is |h·p| ≤ eps.
pub fn secant_profile_numeric(
    points: &[Vec<f64>],
    eps: f64,
) -> Result<SecantProfile, IncidenceError> {
    let unit = unit_normalize(points, eps)?;
    let n = unit.len();
    let width = unit[0].len();
    let d = width - 1;

    let mut dedup = GridDedup::new(width, eps);
    for subset in subsets(n, d) {
        dedup.insert(subset_normal(&unit, subset, eps)?);
    }

    let mut tau: BTreeMap<usize, u64> = BTreeMap::new();
    for h in dedup.representatives() {
        let incident = unit.iter().filter(|p| residual(h, p) <= eps).count();
        *tau.entry(incident).or_insert(0) += 1;
    }
    let ordinary = tau.get(&d).copied().unwrap_or(0);
    Ok(SecantProfile { n, d, tau, ordinary, hyperplanes: None, degenerate_subsets: Vec::new() })
}

/// Tolerance calibration: over every spanning d-subset and every point,
/// classifies the incidence residual |h·p| (both vectors unit) against `eps`
/// and returns `(largest residual at or below eps, smallest residual above
/// eps)`. A healthy input keeps the first value far below `eps` and the
/// second far above, so the incidence decision has a wide safety margin.
pub fn residual_gap(points: &[Vec<f64>], eps: f64) -> Result<(f64, f64), IncidenceError> {
    let unit = unit_normalize(points, eps)?;
    let n = unit.len();
    let d = unit[0].len() - 1;

    let mut max_below = 0.0f64;
    let mut min_above = f64::INFINITY;
    for subset in subsets(n, d) {
        let h = subset_normal(&unit, subset, eps)?;
        for p in &unit {
            let r = residual(&h, p);
            if r <= eps {
                max_below = max_below.max(r);
            } else {
                min_above = min_above.min(r);
            }
        }
    }
    Ok((max_below, min_above))
}

fn residual(h: &[f64], p: &[f64]) -> f64 {
    h.iter().zip(p.iter()).map(|(a, b)| a * b).sum::<f64>().abs()
}

/// Scales every point to unit Euclidean norm and rejects zero vectors and
/// projective duplicates (same or opposite direction within `eps`).
fn unit_normalize(points: &[Vec<f64>], eps: f64) -> Result<Vec<Vec<f64>>, IncidenceError> {
    assert!(eps > 0.0, "eps must be positive");
    let n = points.len();
    assert!(n > 0, "need at least one point");
    let width = points[0].len();
    assert!(width >= 3, "need at least 3 homogeneous coordinates");
    assert!(points.iter().all(|p| p.len() == width), "ragged coordinates");

    let mut unit: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (i, p) in points.iter().enumerate() {
        let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(IncidenceError::NumericZeroPoint { index: i });
        }
        unit.push(p.iter().map(|x| x / norm).collect());
    }
    for i in 0..n {
        for j in i + 1..n {
            let (mut diff, mut sum) = (0.0f64, 0.0f64);
            for (a, b) in unit[i].iter().zip(&unit[j]) {
                diff = diff.max((a - b).abs());
                sum = sum.max((a + b).abs());
            }
            if diff.min(sum) <= eps {
                return Err(IncidenceError::NumericDuplicate { first: i, second: j });
            }
        }
    }
    Ok(unit)
}

/// Unit normal of the hyperplane through a d-subset of unit points, via the
/// smallest eigenpair of the Gram matrix; errors when the subset is too close
/// to degenerate for the normal to be trustworthy at tolerance `eps`.
fn subset_normal(
    unit: &[Vec<f64>],
    subset: Vec<usize>,
    eps: f64,
) -> Result<Vec<f64>, IncidenceError> {
    let width = unit[0].len();
    let d = width - 1;
    let mut stack = DMatrix::<f64>::zeros(d, width);
    for (r, &i) in subset.iter().enumerate() {
        for c in 0..width {
            stack[(r, c)] = unit[i][c];
        }
    }
    let gram = stack.transpose() * &stack;
    let eigen = nalgebra::SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[a].partial_cmp(&eigen.eigenvalues[b]).expect("eigenvalues are finite")
    });
    let sigma_min = eigen.eigenvalues[order[1]].max(0.0).sqrt();
    if sigma_min <= eps {
        return Err(IncidenceError::IllConditioned { subset, sigma_min, eps });
    }
    let mut h: Vec<f64> = eigen.eigenvectors.column(order[0]).iter().copied().collect();
    fix_sign(&mut h);
    Ok(h)
}

/// Flips the sign so the first coordinate with |h_i| above half the max
/// magnitude is positive (robust against near-zero leading entries).
fn fix_sign(h: &mut [f64]) {
    let max = h.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let lead = h
        .iter()
        .find(|x| x.abs() > 0.5 * max)
        .copied()
        .expect("unit vector has a dominant coordinate");
    if lead < 0.0 {
        for x in h.iter_mut() {
            *x = -*x;
        }
    }
}

/// Rounding-grid deduplication: cell size `eps`, with both orientations and
/// boundary-straddling neighbor cells probed, and exact pairwise confirmation
/// (sup-norm within `eps`) inside buckets.
struct GridDedup {
    width: usize,
    cell: f64,
    confirm: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
    reps: Vec<Vec<f64>>,
}

impl GridDedup {
    fn new(width: usize, eps: f64) -> Self {
        Self { width, cell: eps, confirm: eps, buckets: HashMap::new(), reps: Vec::new() }
    }

    fn candidate_keys(&self, h: &[f64]) -> Vec<Vec<i64>> {
        // Coordinates whose scaled value sits near a cell boundary are
        // ambiguous; enumerate both candidate cells for those (2^k keys, with
        // k almost always 0).
        let band = 0.125f64;
        let mut keys: Vec<Vec<i64>> = vec![Vec::with_capacity(self.width)];
        for &x in h {
            let t = x / self.cell;
            let base = t.round();
            let offset = t - base;
            let mut choices = vec![base as i64];
            if offset.abs() > 0.5 - band {
                choices.push((base + offset.signum()) as i64);
            }
            let mut next = Vec::with_capacity(keys.len() * choices.len());
            for key in &keys {
                for &c in &choices {
                    let mut k = key.clone();
                    k.push(c);
                    next.push(k);
                }
            }
            keys = next;
        }
        keys
    }

    fn matches(&self, h: &[f64], rep: &[f64]) -> bool {
        let mut diff = 0.0f64;
        let mut sum = 0.0f64;
        for (a, b) in h.iter().zip(rep.iter()) {
            diff = diff.max((a - b).abs());
            sum = sum.max((a + b).abs());
        }
        diff <= self.confirm || sum <= self.confirm
    }

    fn insert(&mut self, h: Vec<f64>) {
        let negated: Vec<f64> = h.iter().map(|x| -x).collect();
        for vector in [&h, &negated] {
            for key in self.candidate_keys(vector) {
                if let Some(ids) = self.buckets.get(&key) {
                    for &id in ids {
                        if self.matches(&h, &self.reps[id]) {
                            return;
                        }
                    }
                }
            }
        }
        let id = self.reps.len();
        let base_key: Vec<i64> = h.iter().map(|&x| (x / self.cell).round() as i64).collect();
        self.buckets.entry(base_key).or_default().push(id);
        self.reps.push(h);
    }

    fn representatives(&self) -> &[Vec<f64>] {
        &self.reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{Matrix, Rational};
    use crate::geometry::{project_from_point, transform, ProjectiveMap, ProjectivePoint};
    use num_bigint::BigInt;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn config(dim: usize, pts: &[&[i64]], label: &str) -> Configuration {
        let points: Vec<ProjectivePoint> =
            pts.iter().map(|p| ProjectivePoint::from_integers(p).unwrap()).collect();
        Configuration::new(dim, points, label).unwrap()
    }

    fn cube() -> Configuration {
        let mut pts = Vec::new();
        for &a in &[1i64, -1] {
            for &b in &[1i64, -1] {
                for &c in &[1i64, -1] {
                    pts.push(vec![a, b, c, 1]);
                }
            }
        }
        let rows: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        config(3, &rows, "cube")
    }

    /// Seven points on the twisted cubic: no four coplanar, so every plane is
    /// ordinary and τ_3 = C(7,3) = 35.
    fn twisted_cubic_7() -> Configuration {
        let pts: Vec<Vec<i64>> = (0..7i64).map(|t| vec![1, t, t * t, t * t * t]).collect();
        let rows: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
        config(3, &rows, "twisted-cubic-7")
    }

    #[test]
    fn cube_profile() {
        let p = secant_profile(&cube()).unwrap();
        assert_eq!(p.ordinary, 8);
        assert_eq!(p.tau_at(3), 8);
        assert_eq!(p.tau_at(4), 12);
        assert_eq!(p.tau.len(), 2);
        assert!(check_trivcount(&p));
        assert!(check_bettercount(&p));
    }

    #[test]
    fn cube_minus_vertex_profile() {
        let c = cube().remove_point(0).unwrap();
        let p = secant_profile(&c).unwrap();
        assert_eq!(p.tau_at(3), 11);
        assert_eq!(p.tau_at(4), 6);
        assert_eq!(p.tau_at(5), 0);
        assert_eq!(p.tau_at(6), 0);
        assert!(check_trivcount(&p));
    }

    #[test]
    fn projected_cube_has_three_ordinary_lines() {
        let projected = project_from_point(&cube(), 0).unwrap();
        let p = secant_profile(&projected).unwrap();
        assert_eq!(p.ordinary, 3);
    }

    #[test]
    fn all_ordinary_extreme() {
        let p = secant_profile(&twisted_cubic_7()).unwrap();
        assert_eq!(p.tau_at(3), 35);
        assert_eq!(p.tau.len(), 1);
        assert!(check_trivcount(&p));
    }

    #[test]
    fn trivcount_detects_perturbation() {
        let p = secant_profile(&cube()).unwrap();
        let mut tau = p.tau.clone();
        tau.insert(4, 11);
        let fake = SecantProfile::from_tau(8, 3, tau);
        assert!(!check_trivcount(&fake));
    }

    #[test]
    fn bettercount_examples() {
        // 3·C(4,0)·12 = 36 ≤ C(8,5) = 56.
        assert!(check_bettercount(&secant_profile(&cube()).unwrap()));
        // n=8, d=4: 3·τ_5 ≤ 28 — true at 9, false at 10.
        let mut tau = BTreeMap::new();
        tau.insert(5, 9);
        assert!(check_bettercount(&SecantProfile::from_tau(8, 4, tau.clone())));
        tau.insert(5, 10);
        assert!(!check_bettercount(&SecantProfile::from_tau(8, 4, tau)));
    }

    #[test]
    fn ints_check_passes_on_cube_and_curve() {
        assert_eq!(check_ints(&cube()), IntsReport { passed: true, witness: None });
        assert_eq!(check_ints(&twisted_cubic_7()), IntsReport { passed: true, witness: None });
    }

    #[test]
    fn per_point_cube_counts() {
        let pp = per_point_ordinary(&cube()).unwrap();
        assert_eq!(pp.counts, vec![3; 8]);
        assert_eq!(pp.counts.iter().sum::<u64>(), 3 * 8);
    }

    #[test]
    fn profile_independent_of_worker_count() {
        let c = cube();
        let base = secant_profile_with(
            &c,
            &ProfileOptions { with_hyperplanes: true, ..ProfileOptions::default() },
        )
        .unwrap();
        for threads in [2, 3, 5] {
            let p = secant_profile_with(
                &c,
                &ProfileOptions { with_hyperplanes: true, skip_validation: false, threads },
            )
            .unwrap();
            assert_eq!(base, p);
        }
    }

    #[test]
    fn profile_invariant_under_diagonal_map() {
        let c = cube();
        let rows = vec![
            vec![rat(2), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(1), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(0), rat(1)],
        ];
        let m = ProjectiveMap::new(Matrix::from_rows(&rows)).unwrap();
        let t = transform(&c, &m).unwrap();
        let p0 = secant_profile(&c).unwrap();
        let p1 = secant_profile(&t).unwrap();
        assert_eq!(p0.tau, p1.tau);
    }

    #[test]
    fn degenerate_input_is_rejected_or_recorded() {
        let c = config(
            3,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[1, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 2, 3, 4],
            ],
            "collinear",
        );
        match secant_profile(&c) {
            Err(IncidenceError::DegenerateConfiguration { witness }) => {
                assert_eq!(witness, vec![0, 1, 2]);
            }
            other => panic!("expected degeneracy error, got {other:?}"),
        }
        let p = secant_profile_with(
            &c,
            &ProfileOptions { skip_validation: true, ..ProfileOptions::default() },
        )
        .unwrap();
        assert_eq!(p.degenerate_subsets, vec![vec![0, 1, 2]]);
        assert!(!p.tau.is_empty());
    }

    #[test]
    fn numeric_profile_matches_exact_on_cube() {
        let c = cube();
        let floats: Vec<Vec<f64>> = c
            .points()
            .iter()
            .map(|p| p.coords().iter().map(|x| x.to_string().parse::<f64>().unwrap()).collect())
            .collect();
        let exact = secant_profile(&c).unwrap();
        let numeric = secant_profile_numeric(&floats, 1e-7).unwrap();
        assert_eq!(exact.tau, numeric.tau);
    }

    #[test]
    fn numeric_rejects_antipodal_duplicates() {
        let pts = vec![vec![1.0, 2.0, 3.0], vec![-1.0, -2.0, -3.0], vec![0.0, 1.0, 0.0]];
        assert!(matches!(
            secant_profile_numeric(&pts, 1e-7),
            Err(IncidenceError::NumericDuplicate { first: 0, second: 1 })
        ));
    }

    #[test]
    fn numeric_rejects_ill_conditioned_subsets() {
        // Two directions separated by slightly more than eps, so the
        // duplicate check passes, but the pair's stack has its smallest
        // singular value at angle/√2 < eps.
        let pts = vec![vec![1.0, 0.0, 0.0], vec![1.0, 1.2e-7, 0.0], vec![0.0, 0.0, 1.0]];
        assert!(matches!(
            secant_profile_numeric(&pts, 1e-7),
            Err(IncidenceError::IllConditioned { .. })
        ));
    }
}
