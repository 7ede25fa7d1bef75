#![allow(dead_code)]

use khole_core::{Point, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Redraws until the points are in general position.
pub fn general(mut draw: impl FnMut() -> Vec<Point>) -> PointSet {
    loop {
        if let Ok(ps) = PointSet::new(draw()) {
            return ps;
        }
    }
}

pub fn uniform(n: usize, seed: u64, range: i64) -> PointSet {
    let mut r = rng(seed);
    general(|| {
        (0..n)
            .map(|_| Point::new(r.random_range(-range..=range), r.random_range(-range..=range)))
            .collect()
    })
}

/// A center (index 0) far below `chain` points that roughly follow a curve
/// bending towards it, perturbed by `noise`.
pub fn fan(chain: usize, seed: u64, noise: i64) -> PointSet {
    let mut r = rng(seed);
    general(|| {
        let mut pts = vec![Point::new(0, -1_000_000)];
        for i in 0..chain {
            let x = (i as i64 - chain as i64 / 2) * 1000 + r.random_range(-100..=100);
            pts.push(Point::new(x, x * x / 20_000 + r.random_range(-noise..=noise)));
        }
        pts
    })
}

/// Number of points of `pts` that are vertices of their convex hull, by
/// testing each against every triangle of the others.
pub fn hull_size(ps: &PointSet, pts: &[usize]) -> usize {
    pts.iter()
        .filter(|&&q| {
            !pts.iter().enumerate().any(|(i, &a)| {
                pts[i + 1..].iter().enumerate().any(|(j, &b)| {
                    pts[i + j + 2..]
                        .iter()
                        .any(|&c| a != q && b != q && c != q && in_triangle(ps[a], ps[b], ps[c], ps[q]))
                })
            })
        })
        .count()
}

pub fn side(a: Point, b: Point, c: Point) -> i64 {
    ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)).signum()
}

pub fn in_triangle(a: Point, b: Point, c: Point, q: Point) -> bool {
    let s = side(a, b, c);
    side(a, b, q) == s && side(b, c, q) == s && side(c, a, q) == s
}

/// `vertices` are in convex position and no other point of `ps` lies inside
/// their hull, by triangle fans over all vertex triples.
pub fn is_hole(ps: &PointSet, vertices: &[usize]) -> bool {
    if hull_size(ps, vertices) != vertices.len() {
        return false;
    }
    (0..ps.len()).filter(|q| !vertices.contains(q)).all(|q| {
        !vertices.iter().enumerate().any(|(i, &a)| {
            vertices[i + 1..].iter().enumerate().any(|(j, &b)| {
                vertices[i + j + 2..]
                    .iter()
                    .any(|&c| in_triangle(ps[a], ps[b], ps[c], ps[q]))
            })
        })
    })
}

pub fn triangle_empty(ps: &PointSet, a: usize, b: usize, c: usize) -> bool {
    (0..ps.len())
        .filter(|q| ![a, b, c].contains(q))
        .all(|q| !in_triangle(ps[a], ps[b], ps[c], ps[q]))
}

/// `centers` points far below a smooth chain bending towards them; the
/// centers come first.
pub fn multi_fan(chain: usize, centers: usize, seed: u64) -> PointSet {
    let mut r = rng(seed);
    general(|| {
        let mut pts: Vec<Point> = (0..centers)
            .map(|j| {
                let x = (j as i64 - centers as i64 / 2) * 40_000 + r.random_range(-500..=500);
                Point::new(x, -1_000_000 - x * x / 100_000)
            })
            .collect();
        for i in 0..chain {
            let x = (i as i64 - chain as i64 / 2) * 1000 + r.random_range(-100..=100);
            pts.push(Point::new(x, x * x / 20_000));
        }
        pts
    })
}
