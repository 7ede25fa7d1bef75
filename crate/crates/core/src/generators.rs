//! Reproducible point-set sources.
//!
//! Randomness comes from `ChaCha8Rng` seeded with `seed_from_u64`, which is
//! portable across platforms and word sizes: a `(kind, n, seed, range)`
//! quadruple always yields the same set.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{cross, hull_indices, line_direction, Point, PointSet, COORD_BOUND};
use crate::{Error, Result};

/// Largest Horton order attempted before reporting overflow outright.
const HORTON_MAX_ORDER: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GenKind {
    Random,
    Convex,
    Horton,
}

/// A full description of a generated set. For Horton sets `n` must be a
/// power of two; `seed` and `range` are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
    pub range: i64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<PointSet> {
        match self.kind {
            GenKind::Random => gen_random(self.n, self.seed, self.range),
            GenKind::Convex => gen_convex(self.n, self.seed, self.range),
            GenKind::Horton => {
                if !self.n.is_power_of_two() {
                    return Err(Error::PreconditionViolated("Horton sets need n a power of two"));
                }
                gen_horton(self.n.trailing_zeros())
            }
        }
    }
}

fn check_range(n: usize, range: i64) -> Result<()> {
    if range > COORD_BOUND {
        return Err(Error::RangeTooLarge { range });
    }
    // range^2 >= 4 n^2
    if range < 0 || (range as u128) < 2 * n as u128 {
        return Err(Error::RangeTooSmall { n, range });
    }
    Ok(())
}

/// `n` points uniform in `[-range, range]^2`, each candidate rejected while
/// it duplicates a point or is collinear with two accepted points.
pub fn gen_random(n: usize, seed: u64, range: i64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    check_range(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    // Directions from each accepted point to the others.
    let mut dirs: Vec<BTreeSet<(i64, i64)>> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    let max_attempts = 1000 * n + 10_000;
    while points.len() < n {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::RangeTooSmall { n, range });
        }
        let c = Point::new(rng.random_range(-range..=range), rng.random_range(-range..=range));
        let blocked = points.iter().zip(&dirs).any(|(&p, seen)| {
            let d = line_direction(p, c);
            d == (0, 0) || seen.contains(&d)
        });
        if blocked {
            continue;
        }
        let mut own = BTreeSet::new();
        for (&p, seen) in points.iter().zip(dirs.iter_mut()) {
            let d = line_direction(p, c);
            seen.insert(d);
            own.insert(d);
        }
        points.push(c);
        dirs.push(own);
    }
    PointSet::new(points)
}

/// `n` points in convex position: jittered angles on a circle of radius
/// `range`, snapped to the lattice, redrawn until the snapped set is in
/// general and convex position. Points are listed counterclockwise.
pub fn gen_convex(n: usize, seed: u64, range: i64) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    check_range(n, range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = range as f64;
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..64 {
        let phase = rng.random::<f64>() * TAU;
        let points: Vec<Point> = (0..n)
            .map(|i| {
                let jitter: f64 = rng.random::<f64>() * 0.5;
                let t = phase + TAU * (i as f64 + jitter) / n as f64;
                Point::new(
                    libm::round(radius * libm::cos(t)) as i64,
                    libm::round(radius * libm::sin(t)) as i64,
                )
            })
            .collect();
        if let Ok(ps) = PointSet::new(points) {
            if hull_indices(&ps, &all).len() == n {
                return Ok(ps);
            }
        }
    }
    Err(Error::RangeTooSmall { n, range })
}

/// Smallest lift `d >= 1` such that the odd copy `(2x + 1, y + d)` lies
/// strictly above every line through two points of the even copy `(2x, y)`
/// and the even copy strictly below every line through two odd points.
fn horton_lift(ys: &[i128]) -> i128 {
    let h = ys.len();
    let mut lift: i128 = 1;
    for i in 0..h {
        for j in i + 1..h {
            let dx = 2 * (j - i) as i128;
            let rise = ys[j] - ys[i];
            for (k, &yk) in ys.iter().enumerate() {
                // Odd point k against the even line (i, j).
                let x = 2 * k as i128 + 1;
                let num = ys[i] * dx + rise * (x - 2 * i as i128) - yk * dx;
                lift = lift.max(num.div_euclid(dx) + 1);
                // Even point k against the odd line (i, j), lifted by d.
                let x = 2 * k as i128;
                let num = yk * dx - (ys[i] * dx + rise * (x - 2 * i as i128 - 1));
                lift = lift.max(num.div_euclid(dx) + 1);
            }
        }
    }
    lift
}

/// The Horton set with `2^m` points and x-coordinates `0..2^m`.
///
/// Built bottom-up: the points with even x form a Horton set, the points
/// with odd x form a copy of it raised by the smallest lift that puts each
/// copy strictly above (resp. below) every line through two points of the
/// other. Such sets have no 7-hole.
pub fn gen_horton(m: u32) -> Result<PointSet> {
    if m > HORTON_MAX_ORDER {
        return Err(Error::CoordinateOverflow { m });
    }
    let mut ys: Vec<i128> = alloc::vec![0];
    for _ in 0..m {
        let lift = horton_lift(&ys);
        let mut next = Vec::with_capacity(2 * ys.len());
        for &y in &ys {
            next.push(y);
            next.push(y + lift);
        }
        if next.iter().any(|&y| y > i128::from(COORD_BOUND)) || next.len() as i128 - 1 > i128::from(COORD_BOUND) {
            return Err(Error::CoordinateOverflow { m });
        }
        ys = next;
    }
    let points: Vec<Point> = ys
        .iter()
        .enumerate()
        .map(|(x, &y)| Point::new(x as i64, y as i64))
        .collect();
    let ps = PointSet::new(points)?;
    debug_assert!(is_horton_set(&ps));
    Ok(ps)
}

/// Points with even x-rank lie strictly below every line through two points
/// of odd rank, and vice versa.
pub fn horton_split_separated(points: &[Point]) -> bool {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let even: Vec<Point> = sorted.iter().copied().step_by(2).collect();
    let odd: Vec<Point> = sorted.iter().copied().skip(1).step_by(2).collect();
    let above_all = |upper: &[Point], lower: &[Point], sign: i64| {
        lower.iter().enumerate().all(|(i, &a)| {
            lower[i + 1..]
                .iter()
                .all(|&b| upper.iter().all(|&q| cross(a, b, q).signum() == sign))
        })
    };
    above_all(&odd, &even, 1) && above_all(&even, &odd, -1)
}

/// Recursive Horton check: the split by x-rank parity is separated and both
/// halves are Horton sets.
pub fn is_horton_set(ps: &PointSet) -> bool {
    fn rec(points: &[Point]) -> bool {
        if points.len() <= 2 {
            return true;
        }
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        let even: Vec<Point> = sorted.iter().copied().step_by(2).collect();
        let odd: Vec<Point> = sorted.iter().copied().skip(1).step_by(2).collect();
        horton_split_separated(&sorted) && rec(&even) && rec(&odd)
    }
    rec(ps.points())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::is_convex_position;

    #[test]
    fn random_is_deterministic_and_general() {
        let a = gen_random(10, 42, 1000).unwrap();
        let b = gen_random(10, 42, 1000).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random(10, 43, 1000).unwrap());
        assert_eq!(gen_random(1, 5, 10).unwrap().len(), 1);
        assert!(matches!(gen_random(10, 1, 19), Err(Error::RangeTooSmall { .. })));
        assert!(matches!(
            gen_random(10, 1, COORD_BOUND + 1),
            Err(Error::RangeTooLarge { .. })
        ));
        assert!(gen_random(40, 1, 80).is_ok());
    }

    #[test]
    fn convex_sets() {
        let ps = gen_convex(10, 7, 10_000).unwrap();
        let all: Vec<usize> = (0..10).collect();
        assert!(is_convex_position(&ps, &all));
        assert_eq!(gen_convex(3, 1, 100).unwrap().len(), 3);
        assert!(gen_convex(2, 1, 100).is_err());
    }

    #[test]
    fn horton_small_orders() {
        assert_eq!(gen_horton(0).unwrap().len(), 1);
        let h4 = gen_horton(2).unwrap();
        assert_eq!(h4.len(), 4);
        assert!(is_horton_set(&h4));
        let h64 = gen_horton(6).unwrap();
        assert_eq!(h64.len(), 64);
        assert!(is_horton_set(&h64));
        assert_eq!(h64, gen_horton(6).unwrap());
        let xs: Vec<i64> = h64.points().iter().map(|p| p.x).collect();
        assert_eq!(xs, (0..64).collect::<Vec<_>>());
    }

    #[test]
    fn horton_overflow() {
        assert_eq!(gen_horton(20), Err(Error::CoordinateOverflow { m: 20 }));
    }

    #[test]
    fn spec_dispatch() {
        let spec = GenSpec {
            kind: GenKind::Horton,
            n: 12,
            seed: 0,
            range: 0,
        };
        assert!(spec.generate().is_err());
        let spec = GenSpec { n: 16, ..spec };
        assert_eq!(spec.generate().unwrap(), gen_horton(4).unwrap());
    }
}
