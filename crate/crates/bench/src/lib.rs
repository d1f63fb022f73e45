//! Fixed benchmark inputs, shared by the criterion targets.

use corner_core::random::{random_ab, random_assembly_with, trial_rng};
use corner_core::{AntiBlockingBody, OrthantAssembly, Point, Style, VPolytope};
use rand::Rng;

/// Seed for every fixture, so timings compare like with like across runs.
pub const SEED: u64 = 2024;

/// `count` integer points in `[-8, 8]^n`.
pub fn point_cloud(n: usize, count: usize) -> Vec<Point> {
    let mut rng = trial_rng(SEED, 100 + n as u64);
    (0..count)
        .map(|_| Point::from_ints(&(0..n).map(|_| rng.random_range(-8..=8)).collect::<Vec<_>>()))
        .collect()
}

pub fn anti_blocking_pair(n: usize) -> (AntiBlockingBody, AntiBlockingBody) {
    let mut rng = trial_rng(SEED, n as u64);
    (
        random_ab(&mut rng, n).expect("generator"),
        random_ab(&mut rng, n).expect("generator"),
    )
}

pub fn assembly(n: usize, style: Style) -> OrthantAssembly {
    random_assembly_with(&mut trial_rng(SEED, n as u64), n, style).expect("generator")
}

pub fn cross_polytope(n: usize) -> VPolytope {
    let simplex = VPolytope::standard_simplex(n).expect("dimension");
    simplex.join_hull(&simplex.negate()).expect("dimension")
}
