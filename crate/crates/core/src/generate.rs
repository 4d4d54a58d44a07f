//! Seeded point-set generators. All randomness comes from ChaCha8 seeded
//! with the caller's 64-bit seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeomError;
use crate::geom::{convex_hull, orient, Orientation, Point, PointSet};

pub const CIRCLE_RADIUS: f64 = 1_000_000.0;
pub const DEFAULT_BOX: i64 = 10_000;
const MAX_ATTEMPTS: usize = 1000;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` integer points on a circle of radius 10^6, counter-clockwise from the
/// bottom, so that hull order equals index order and point 0 is lowest.
pub fn convex_position(n: usize, seed: u64) -> Result<PointSet, GeomError> {
    if n < 3 {
        return Err(GeomError::TooFewPoints { needed: 3, got: n });
    }
    let mut rng = rng_for(seed);
    let step = std::f64::consts::TAU / n as f64;
    let jitter = step / 8.0;
    for _ in 0..MAX_ATTEMPTS {
        let points: Vec<Point> = (0..n)
            .map(|i| {
                let theta = -std::f64::consts::FRAC_PI_2 + step * i as f64 + rng.gen_range(-jitter..jitter);
                Point::new(
                    (CIRCLE_RADIUS * theta.cos()).round() as i64,
                    (CIRCLE_RADIUS * theta.sin()).round() as i64,
                )
            })
            .collect();
        let Ok(s) = PointSet::new(points) else { continue };
        if convex_hull(&s)? == (0..n).collect::<Vec<_>>() {
            return Ok(s);
        }
    }
    Err(GeomError::GenerationFailed(MAX_ATTEMPTS))
}

/// `n` points drawn uniformly from `[-half_width, half_width]^2`, rejecting
/// any draw that coincides with or is collinear with earlier points.
pub fn random_general_position(n: usize, seed: u64, half_width: i64) -> Result<PointSet, GeomError> {
    let mut rng = rng_for(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0;
    while points.len() < n {
        attempts += 1;
        if attempts > MAX_ATTEMPTS * n.max(1) {
            return Err(GeomError::GenerationFailed(attempts));
        }
        let p = Point::new(
            rng.gen_range(-half_width..=half_width),
            rng.gen_range(-half_width..=half_width),
        );
        let clash = points.iter().enumerate().any(|(i, &a)| {
            a == p
                || points[i + 1..]
                    .iter()
                    .any(|&b| orient(a, b, p) == Orientation::Collinear)
        });
        if !clash {
            points.push(p);
        }
    }
    PointSet::new(points)
}

/// Random general-position set that is not in convex position (for `n >= 4`).
pub fn random_non_convex(n: usize, seed: u64) -> Result<PointSet, GeomError> {
    for attempt in 0..MAX_ATTEMPTS as u64 {
        let s = random_general_position(n, seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt), DEFAULT_BOX)?;
        if !s.is_convex_position() {
            return Ok(s);
        }
    }
    Err(GeomError::GenerationFailed(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_is_deterministic_and_ordered() {
        for n in 3..=30 {
            let a = convex_position(n, 1).unwrap();
            assert_eq!(a, convex_position(n, 1).unwrap());
            assert_eq!(convex_hull(&a).unwrap(), (0..n).collect::<Vec<_>>());
        }
        assert_ne!(convex_position(9, 1).unwrap(), convex_position(9, 2).unwrap());
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_general_position(12, 7, DEFAULT_BOX).unwrap();
        assert_eq!(a, random_general_position(12, 7, DEFAULT_BOX).unwrap());
        assert_eq!(a.len(), 12);
    }

    #[test]
    fn tiny_box_is_reported() {
        // a 3x3 grid holds at most 6 points in general position
        assert!(matches!(
            random_general_position(7, 1, 1),
            Err(GeomError::GenerationFailed(_))
        ));
    }

    #[test]
    fn non_convex_sets() {
        for seed in 0..10 {
            assert!(!random_non_convex(6, seed).unwrap().is_convex_position());
        }
    }
}
