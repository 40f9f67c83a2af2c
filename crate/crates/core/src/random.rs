//! Seeded random configurations and motions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Rational;
use crate::geometry::{Configuration, ProjPoint};
use crate::motion::{compile_flip_script, FlipScript, Point2, PointPath, Trajectory};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from `seed` (splitmix64 finalizer).
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn int_point<R: Rng>(rng: &mut R, range: i64) -> Point2 {
    [
        Rational::from_integer(rng.gen_range(-range..=range).into()),
        Rational::from_integer(rng.gen_range(-range..=range).into()),
    ]
}

fn is_generic(points: &[Point2]) -> bool {
    Configuration::new(
        points
            .iter()
            .map(|p| ProjPoint::affine(p[0].clone(), p[1].clone()))
            .collect(),
    )
    .degeneracy()
    .is_none()
}

/// `n` integer points in `[-range, range]^2`, no three collinear, with
/// distinct x-coordinates.
pub fn random_configuration<R: Rng>(rng: &mut R, n: usize, range: i64) -> Vec<Point2> {
    loop {
        let pts: Vec<Point2> = (0..n).map(|_| int_point(rng, range)).collect();
        let distinct_x = (0..n).all(|i| (i + 1..n).all(|j| pts[i][0] != pts[j][0]));
        if distinct_x && is_generic(&pts) {
            return pts;
        }
    }
}

/// Every point walks through `segments` random integer positions, with
/// common breakpoints `k / segments`.
pub fn random_wiggle<R: Rng>(rng: &mut R, base: &[Point2], segments: usize, range: i64) -> Trajectory {
    let times: Vec<Rational> = (0..=segments)
        .map(|k| Rational::new((k as i64).into(), (segments as i64).into()))
        .collect();
    Trajectory::new(
        base.iter()
            .map(|p| {
                let mut positions = vec![p.clone()];
                positions.extend((0..segments).map(|_| int_point(rng, range)));
                PointPath::new(times.clone(), positions).expect("valid breakpoints")
            })
            .collect(),
    )
}

/// A random motion that compiles, with its script. Gives up after
/// `attempts` non-generic draws.
pub fn random_generic_motion<R: Rng>(
    rng: &mut R,
    n: usize,
    segments: usize,
    range: i64,
    attempts: usize,
) -> Option<(Trajectory, FlipScript)> {
    for _ in 0..attempts {
        let base = random_configuration(rng, n, range);
        let traj = random_wiggle(rng, &base, segments, range);
        if let Ok(script) = compile_flip_script(&traj) {
            return Some((traj, script));
        }
    }
    None
}

/// Random nonzero rationals with small numerators and denominators.
pub fn random_point<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            let mut num = 0i64;
            while num == 0 {
                num = rng.gen_range(-9..=9);
            }
            Rational::new(num.into(), rng.gen_range(1..=7i64).into())
        })
        .collect()
}
