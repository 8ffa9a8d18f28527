//! Helpers shared by the integration-test targets: seeded random
//! configurations in general position, random projective maps, and
//! conversions between backends.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ordhyp::exact_linalg::{Matrix, Rational};
use ordhyp::families::Constructed;
use ordhyp::geometry::{
    transform, validate_general_position, Configuration, ProjectiveMap, ProjectivePoint,
};
use ordhyp::incidence::{
    check_bettercount, check_ints, check_trivcount, per_point_from_profile, secant_profile,
    secant_profile_with, ProfileOptions, SecantProfile,
};

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// A random n-point configuration in general position in PG(d), with integer
/// homogeneous coordinates in -9..=9, by rejection sampling.
pub fn random_configuration(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Configuration {
    for _ in 0..10_000 {
        let mut points: Vec<ProjectivePoint> = Vec::with_capacity(n);
        while points.len() < n {
            let coords: Vec<i64> = (0..=d).map(|_| rng.random_range(-9..=9)).collect();
            let Ok(p) = ProjectivePoint::from_integers(&coords) else {
                continue;
            };
            if points.contains(&p) {
                continue;
            }
            points.push(p);
        }
        let Ok(c) = Configuration::new(d, points, "random") else {
            continue;
        };
        if validate_general_position(&c).ok() {
            return c;
        }
    }
    unreachable!("rejection sampling found no general-position configuration")
}

/// A random invertible projective map with integer entries in -5..=5.
pub fn random_map(rng: &mut ChaCha8Rng, d: usize) -> ProjectiveMap {
    loop {
        let rows: Vec<Vec<Rational>> =
            (0..=d).map(|_| (0..=d).map(|_| rat(rng.random_range(-5..=5))).collect()).collect();
        if let Ok(map) = ProjectiveMap::new(Matrix::from_rows(&rows)) {
            return map;
        }
    }
}

/// Runs the five structural checks on one random configuration: the two
/// counting identities, the unique-extension check, the per-point sum, and
/// profile invariance under a random projective map and a point permutation.
pub fn check_random_configuration(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SecantProfile {
    let c = random_configuration(rng, n, d);
    let context = || format!("n = {n}, d = {d}, points {:?}", c.points());
    let opts = ProfileOptions { with_hyperplanes: true, ..ProfileOptions::default() };
    let profile = secant_profile_with(&c, &opts)
        .unwrap_or_else(|e| panic!("profile failed ({}): {e}", context()));
    assert!(check_trivcount(&profile), "d-subset counting identity failed: {}", context());
    assert!(check_bettercount(&profile), "extension inequality failed: {}", context());
    let ints = check_ints(&c);
    assert!(ints.passed, "unique-extension check failed at {:?}: {}", ints.witness, context());
    let counts = per_point_from_profile(&profile).counts;
    assert_eq!(
        counts.iter().sum::<u64>(),
        d as u64 * profile.ordinary,
        "per-point counts must sum to d times the ordinary count: {}",
        context()
    );

    let map = random_map(rng, d);
    let mapped = transform(&c, &map).expect("map is invertible and dimensions agree");
    let mapped_profile = secant_profile(&mapped).expect("mapped configuration stays valid");
    assert_eq!(
        mapped_profile.tau,
        profile.tau,
        "profile changed under a projective map: {}",
        context()
    );

    let mut shuffled = c.points().to_vec();
    shuffled.shuffle(rng);
    let permuted = Configuration::new(d, shuffled, "permuted").expect("permutation keeps validity");
    let permuted_profile = secant_profile(&permuted).expect("permuted configuration stays valid");
    assert_eq!(
        permuted_profile.tau,
        profile.tau,
        "profile changed under a point permutation: {}",
        context()
    );
    profile
}

pub fn float_points(built: Constructed) -> Vec<Vec<f64>> {
    match built {
        Constructed::Float(f) => f.points,
        other => panic!("expected floating coordinates, got {:?} backend", other.label()),
    }
}

pub fn comb_model(built: Constructed) -> ordhyp::families::CombinatorialModel {
    match built {
        Constructed::Comb(m) => m,
        other => panic!("expected a block model, got {:?} backend", other.label()),
    }
}
