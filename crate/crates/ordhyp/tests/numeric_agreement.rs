//! Agreement between the exact rational engine and the floating-point engine,
//! and calibration of the incidence tolerance on the structured families.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{float_points, random_configuration};
use ordhyp::families::{self, to_float, Backend};
use ordhyp::incidence::{residual_gap, secant_profile, secant_profile_numeric};

const EPS: f64 = 1e-7;

#[test]
fn named_configurations_agree() {
    let mut named = vec![families::cube(), families::broken_fano()];
    for (n, d) in [(6usize, 3usize), (7, 3), (8, 4), (7, 5), (9, 4)] {
        named.push(families::trivial_example(n, d).expect("sizes are in range"));
    }
    named.push(families::dplus3_odd(3, None).expect("valid dimension"));
    for c in &named {
        let exact = secant_profile(c).expect("exact profile");
        let numeric = secant_profile_numeric(&to_float(c).points, EPS)
            .unwrap_or_else(|e| panic!("{}: {e}", c.label()));
        assert_eq!(numeric.tau, exact.tau, "profile mismatch on {}", c.label());
        assert_eq!(numeric.ordinary, exact.ordinary);
    }
}

#[test]
fn random_configurations_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF10A7);
    for case in 0..20 {
        let d = 2 + case % 3;
        let n = 6 + (case / 3) % 4;
        let c = random_configuration(&mut rng, n, d);
        let exact = secant_profile(&c).expect("exact profile");
        let numeric = secant_profile_numeric(&to_float(&c).points, EPS)
            .unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_eq!(numeric.tau, exact.tau, "case {case} (n = {n}, d = {d}): {:?}", c.points());
    }
}

/// The polygon inputs keep every residual at least a factor of ten away from
/// the incidence threshold, on both sides, up to twice the largest tabulated
/// size.
#[test]
fn polygon_residual_gap() {
    for n in [12usize, 20, 39, 40, 79, 80] {
        let pts = float_points(families::polygon(n, Backend::Float, None).expect("valid size"));
        let (below, above) = residual_gap(&pts, EPS).expect("well-conditioned");
        assert!(below <= EPS / 10.0, "n = {n}: incident residual {below:e}");
        assert!(above >= 10.0 * EPS, "n = {n}: non-incident residual {above:e}");
    }
}

#[test]
fn prism_residual_gap() {
    for n in [10usize, 16, 39, 40, 79, 80] {
        let pts = float_points(families::prism(n, Backend::Float, None).expect("valid size"));
        let (below, above) = residual_gap(&pts, EPS).expect("well-conditioned");
        assert!(below <= EPS / 10.0, "n = {n}: incident residual {below:e}");
        assert!(above >= 10.0 * EPS, "n = {n}: non-incident residual {above:e}");
    }
}

/// With residuals this far from the threshold, the profile must be stable
/// across several orders of magnitude of eps.
#[test]
fn profile_stable_across_eps_range() {
    let pts = float_points(families::polygon(12, Backend::Float, None).expect("valid size"));
    for eps in [1e-9, 1e-7, 1e-5, 1e-3] {
        let profile =
            secant_profile_numeric(&pts, eps).unwrap_or_else(|e| panic!("eps = {eps:e}: {e}"));
        assert_eq!(profile.ordinary, 6, "eps = {eps:e}");
    }
}
