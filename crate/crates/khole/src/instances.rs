//! Structured instances for the suites: a center far below a chain of
//! points bending towards it, which forces the anchored, bad and dubious
//! assignment paths that generic sets rarely reach.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use khole_core::assignment::CenterView;
use khole_core::{Point, PointSet};

/// Redraws until the points are in general position.
fn general(mut draw: impl FnMut() -> Vec<Point>) -> PointSet {
    loop {
        if let Ok(ps) = PointSet::new(draw()) {
            return ps;
        }
    }
}

/// A center (index 0) below `chain` points on a noisy parabola.
pub fn fan(chain: usize, rng: &mut ChaCha8Rng, noise: i64) -> PointSet {
    general(|| {
        let mut pts = vec![Point::new(0, -1_000_000)];
        for i in 0..chain {
            let x = (i as i64 - chain as i64 / 2) * 1000 + rng.random_range(-100..=100);
            pts.push(Point::new(x, x * x / 20_000 + rng.random_range(-noise..=noise)));
        }
        pts
    })
}

/// `centers` points (indices first) on a downward curve below one smooth
/// chain, so that many centers see the same long runs.
pub fn multi_fan(chain: usize, centers: usize, rng: &mut ChaCha8Rng) -> PointSet {
    general(|| {
        let mut pts: Vec<Point> = (0..centers)
            .map(|j| {
                let x = (j as i64 - centers as i64 / 2) * 40_000 + rng.random_range(-500..=500);
                Point::new(x, -1_000_000 - x * x / 100_000)
            })
            .collect();
        for i in 0..chain {
            let x = (i as i64 - chain as i64 / 2) * 1000 + rng.random_range(-100..=100);
            pts.push(Point::new(x, x * x / 20_000));
        }
        pts
    })
}

/// A center below eleven chain points whose middle angle, seen from the
/// center, is reflex.
pub fn reflex_window(rng: &mut ChaCha8Rng) -> PointSet {
    loop {
        let ps = fan(11, rng, 400);
        let all: Vec<usize> = (0..ps.len()).collect();
        let view = CenterView::from_subset(&ps, &all, 0, 0).expect("center on hull");
        if view.is_reflex_at(&ps, 5) {
            return ps;
        }
    }
}
