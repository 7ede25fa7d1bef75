//! Points, exact orientation predicates, hulls, radial orders and
//! emptiness tests.
//!
//! Coordinates are bounded by [`COORD_BOUND`] so that every 2x2 determinant
//! fits in an `i64` with headroom. All sets handled by the rest of the crate
//! are in general position: no duplicates and no three points collinear.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Index;

use crate::{Error, Result};

/// Largest admissible absolute coordinate.
pub const COORD_BOUND: i64 = 1 << 26;

/// A lattice point. The derived order is lexicographic in `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_bounds(self) -> bool {
        self.x.abs() <= COORD_BOUND && self.y.abs() <= COORD_BOUND
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(a - o) x (b - o)`: positive for a left turn `o -> a -> b`.
#[inline]
pub fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
        }
    }
}

/// Orientation of the triangle `a b c`.
pub fn orient(a: Point, b: Point, c: Point) -> Result<Orientation> {
    match cross(a, b, c).cmp(&0) {
        Ordering::Greater => Ok(Orientation::CounterClockwise),
        Ordering::Less => Ok(Orientation::Clockwise),
        Ordering::Equal => Err(Error::CollinearInput),
    }
}

/// Whether the clockwise sweep around `b` from ray `ba` to ray `bc` is
/// less than a half turn.
pub fn angle_lt_pi(a: Point, b: Point, c: Point) -> Result<bool> {
    match cross(b, a, c) {
        0 => Err(Error::CollinearInput),
        d => Ok(d < 0),
    }
}

/// The angle at `b` exceeds a half turn. Inputs must be non-collinear.
#[inline]
pub(crate) fn is_reflex(a: Point, b: Point, c: Point) -> bool {
    cross(b, a, c) > 0
}

/// A general-position failure: the first offending pair or triple found,
/// with indices in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Violation {
    Duplicate(usize, usize),
    Collinear(usize, usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate(i, j) => write!(f, "points {i} and {j} coincide"),
            Violation::Collinear(i, j, k) => write!(f, "points {i}, {j}, {k} are collinear"),
        }
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Primitive direction of `b - a`, with sign fixed so that opposite
/// directions coincide. Two points share a line through `a` iff their
/// directions from `a` are equal.
pub(crate) fn line_direction(a: Point, b: Point) -> (i64, i64) {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    if dx == 0 && dy == 0 {
        return (0, 0);
    }
    let g = gcd(dx, dy);
    let (dx, dy) = (dx / g, dy / g);
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// Checks for duplicate points and collinear triples in `O(n^2 log n)`.
///
/// Reports the lexicographically smallest offending index tuple.
pub fn validate_general_position(points: &[Point]) -> core::result::Result<(), Violation> {
    let n = points.len();
    let mut dirs: Vec<((i64, i64), usize)> = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        for j in i + 1..n {
            let d = line_direction(points[i], points[j]);
            if d == (0, 0) {
                return Err(Violation::Duplicate(i, j));
            }
            dirs.push((d, j));
        }
        dirs.sort_unstable();
        let best = dirs
            .windows(2)
            .filter(|w| w[0].0 == w[1].0)
            .map(|w| (w[0].1, w[1].1))
            .min();
        if let Some((j, k)) = best {
            return Err(Violation::Collinear(i, j, k));
        }
    }
    Ok(())
}

/// An ordered list of points in general position with bounded coordinates.
/// Every other module refers to points by their index here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some((index, &point)) = points.iter().enumerate().find(|(_, p)| !p.in_bounds()) {
            return Err(Error::CoordinateOutOfRange { index, point });
        }
        validate_general_position(&points)?;
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// The sub-configuration on `indices`, re-indexed in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i]).collect(),
        }
    }

    #[inline]
    pub(crate) fn cross(&self, o: usize, a: usize, b: usize) -> i64 {
        cross(self.points[o], self.points[a], self.points[b])
    }

    #[inline]
    pub(crate) fn left_turn(&self, o: usize, a: usize, b: usize) -> bool {
        self.cross(o, a, b) > 0
    }
}

impl Index<usize> for PointSet {
    type Output = Point;

    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

/// Hull of any subset (including sizes 0, 1 and 2) by monotone chain.
///
/// Vertices come out counterclockwise starting at the lexicographically
/// smallest point; a one- or two-point subset is returned sorted.
pub fn hull_indices(ps: &PointSet, subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_unstable_by_key(|&i| ps[i]);
    idx.dedup();
    if idx.len() <= 2 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(idx.len() + 1);
    for &i in &idx {
        while hull.len() >= 2 && !ps.left_turn(hull[hull.len() - 2], hull[hull.len() - 1], i) {
            hull.pop();
        }
        hull.push(i);
    }
    let lower = hull.len() + 1;
    for &i in idx.iter().rev().skip(1) {
        while hull.len() >= lower && !ps.left_turn(hull[hull.len() - 2], hull[hull.len() - 1], i) {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Convex hull of a subset of at least three points, counterclockwise from
/// the lexicographically smallest vertex.
pub fn convex_hull(ps: &PointSet, subset: &[usize]) -> Result<Vec<usize>> {
    if subset.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: subset.len(),
        });
    }
    Ok(hull_indices(ps, subset))
}

/// All points of the subset are hull vertices. Vacuous below three points.
pub fn is_convex_position(ps: &PointSet, subset: &[usize]) -> bool {
    subset.len() < 3 || hull_indices(ps, subset).len() == subset.len()
}

/// Strict containment of `q` in a counterclockwise convex polygon, by a
/// binary search over the fan from the first vertex.
pub fn strictly_inside(ps: &PointSet, polygon: &[usize], q: Point) -> bool {
    let k = polygon.len();
    if k < 3 {
        return false;
    }
    let v0 = ps[polygon[0]];
    if cross(v0, ps[polygon[1]], q) <= 0 || cross(v0, ps[polygon[k - 1]], q) >= 0 {
        return false;
    }
    // Largest fan index `lo` with q left of v0 -> v_lo.
    let (mut lo, mut hi) = (1, k - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if cross(v0, ps[polygon[mid]], q) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    cross(ps[polygon[lo]], ps[polygon[lo + 1]], q) > 0
}

/// No point of `ps` other than the polygon's own vertices lies strictly
/// inside the counterclockwise convex `polygon`.
pub fn polygon_empty(ps: &PointSet, polygon: &[usize]) -> bool {
    polygon_empty_among(ps, polygon, 0..ps.len())
}

/// [`polygon_empty`] restricted to the given candidate points.
pub fn polygon_empty_among<I>(ps: &PointSet, polygon: &[usize], candidates: I) -> bool
where
    I: IntoIterator<Item = usize>,
{
    if polygon.len() < 3 {
        return true;
    }
    let (mut lo, mut hi) = (ps[polygon[0]], ps[polygon[0]]);
    for &v in polygon {
        let p = ps[v];
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    candidates.into_iter().all(|q| {
        let p = ps[q];
        p.x <= lo.x
            || p.x >= hi.x
            || p.y <= lo.y
            || p.y >= hi.y
            || polygon.contains(&q)
            || !strictly_inside(ps, polygon, p)
    })
}

/// Triangle `a b c` (any orientation) contains no candidate strictly inside.
pub(crate) fn triangle_empty_among<I>(ps: &PointSet, a: usize, b: usize, c: usize, candidates: I) -> bool
where
    I: IntoIterator<Item = usize>,
{
    let s = ps.cross(a, b, c).signum();
    candidates.into_iter().all(|q| {
        q == a
            || q == b
            || q == c
            || !(ps.cross(a, b, q).signum() == s && ps.cross(b, c, q).signum() == s && ps.cross(c, a, q).signum() == s)
    })
}

/// Points of a subset sorted clockwise around a center on the subset's hull.
///
/// The first and last elements subtend less than a half turn at the center,
/// and each element lies in the clockwise angular region between any earlier
/// and any later one.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadialOrder {
    pub center: usize,
    pub order: Vec<usize>,
}

impl RadialOrder {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Map from point index to position in the order.
    pub fn positions(&self) -> BTreeMap<usize, usize> {
        self.order.iter().enumerate().map(|(pos, &q)| (q, pos)).collect()
    }
}

/// Radial order of `subset \ {p}` around `p`.
pub fn radial_order(ps: &PointSet, subset: &[usize], p: usize) -> Result<RadialOrder> {
    let mut others: Vec<usize> = subset.iter().copied().filter(|&q| q != p).collect();
    others.sort_unstable();
    others.dedup();
    if others.len() >= 2 {
        let mut with_center = others.clone();
        with_center.push(p);
        if !hull_indices(ps, &with_center).contains(&p) {
            return Err(Error::CenterNotOnHull { center: p });
        }
        // q precedes r when r is clockwise from q; total on a half-plane.
        others.sort_unstable_by(|&q, &r| ps.cross(p, q, r).cmp(&0));
    }
    Ok(RadialOrder {
        center: p,
        order: others,
    })
}
