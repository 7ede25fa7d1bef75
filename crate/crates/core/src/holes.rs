//! k-hole enumeration and counting.
//!
//! Two independent routes compute the same numbers:
//!
//! - [`enumerate_brute`] tests every k-subset for convex position and
//!   emptiness;
//! - the fan dynamic program charges every hole to its lowest vertex
//!   (smallest `(y, x)`), sorts the points above that anchor by angle,
//!   marks which fan triangles are empty, and counts left-turning chains of
//!   empty fan triangles that close back at the anchor.
//!
//! The fan route also drives the enumeration behind [`HoleCatalog`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::geom::{hull_indices, is_convex_position, polygon_empty, PointSet};
use crate::{Error, Result};

/// Largest hole size the counting and catalog routines accept.
pub const MAX_K: usize = 12;

/// Default cap on the number of holes a catalog may hold.
pub const DEFAULT_HOLE_BUDGET: usize = 10_000_000;

pub type HoleId = usize;

/// An empty convex polygon, stored counterclockwise from its
/// lexicographically smallest vertex. The derived order on the vertex list
/// is the canonical hole order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Hole {
    vertices: Vec<usize>,
}

impl Hole {
    /// Canonicalizes a counterclockwise vertex cycle.
    pub fn from_ccw(ps: &PointSet, mut ccw: Vec<usize>) -> Hole {
        if let Some(start) = ccw.iter().position_min_by_key(|&&v| ps[v]) {
            ccw.rotate_left(start);
        }
        Hole { vertices: ccw }
    }

    /// Canonical hole on a vertex set, if that set is a hole of `ps`.
    pub fn from_vertex_set(ps: &PointSet, vertices: &[usize]) -> Option<Hole> {
        let hull = hull_indices(ps, vertices);
        (vertices.len() >= 3 && hull.len() == vertices.len() && polygon_empty(ps, &hull))
            .then_some(Hole { vertices: hull })
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut s = self.vertices.clone();
        s.sort_unstable();
        s
    }

    /// Independent recheck: convex position, emptiness, canonical form.
    pub fn is_valid(&self, ps: &PointSet) -> bool {
        self.k() >= 3
            && is_convex_position(ps, &self.vertices)
            && hull_indices(ps, &self.vertices) == self.vertices
            && polygon_empty(ps, &self.vertices)
    }
}

fn check_k(k: usize) -> Result<()> {
    if (3..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidK { k })
    }
}

/// All k-holes by exhaustive subset testing, in canonical order.
pub fn enumerate_brute(ps: &PointSet, k: usize) -> Result<Vec<Hole>> {
    if k < 3 {
        return Err(Error::InvalidK { k });
    }
    let mut holes: Vec<Hole> = (0..ps.len())
        .combinations(k)
        .filter_map(|subset| Hole::from_vertex_set(ps, &subset))
        .collect();
    holes.sort_unstable();
    Ok(holes)
}

/// Points above one anchor, sorted counterclockwise, with the emptiness of
/// every fan triangle `(anchor, pts[i], pts[j])`, `i < j`.
struct Fan<'a> {
    ps: &'a PointSet,
    anchor: usize,
    pts: Vec<usize>,
    empty: Vec<bool>,
}

impl<'a> Fan<'a> {
    fn new(ps: &'a PointSet, anchor: usize) -> Self {
        let a = ps[anchor];
        let mut pts: Vec<usize> = (0..ps.len()).filter(|&q| (ps[q].y, ps[q].x) > (a.y, a.x)).collect();
        // Angles lie in [0, pi), so the cross sign is a total order.
        pts.sort_unstable_by(|&q, &r| 0.cmp(&ps.cross(anchor, q, r)));
        let m = pts.len();
        let mut empty = vec![false; m * m];
        for i in 0..m {
            if i + 1 >= m {
                break;
            }
            // `last` is the latest j with an empty triangle (anchor, i, j);
            // a later triangle is empty iff `last` is beyond its outer edge.
            let mut last = i + 1;
            empty[i * m + i + 1] = true;
            for j in i + 2..m {
                if ps.cross(pts[i], pts[j], pts[last]) < 0 {
                    empty[i * m + j] = true;
                    last = j;
                }
            }
        }
        Fan { ps, anchor, pts, empty }
    }

    #[inline]
    fn is_empty_edge(&self, i: usize, j: usize) -> bool {
        self.empty[i * self.pts.len() + j]
    }

    #[inline]
    fn left(&self, i: usize, j: usize, l: usize) -> bool {
        self.ps.left_turn(self.pts[i], self.pts[j], self.pts[l])
    }

    #[inline]
    fn closes(&self, i: usize, j: usize) -> bool {
        self.ps.left_turn(self.pts[i], self.pts[j], self.anchor)
    }

    /// `counts[k]` = number of k-holes whose lowest vertex is the anchor,
    /// for `3 <= k <= kmax`.
    fn count(&self, kmax: usize) -> Vec<u64> {
        let m = self.pts.len();
        let width = kmax + 1;
        let mut counts = vec![0u64; width];
        // chains[(i * m + j) * width + len]: chains anchor, .., i, j with `len` vertices.
        let mut chains = vec![0u64; m * m * width];
        for j in 0..m {
            for l in j + 1..m {
                if !self.is_empty_edge(j, l) {
                    continue;
                }
                let out = (j * m + l) * width;
                chains[out + 3] = 1;
                for i in 0..j {
                    if !self.is_empty_edge(i, j) || !self.left(i, j, l) {
                        continue;
                    }
                    let inc = (i * m + j) * width;
                    for len in 3..kmax {
                        chains[out + len + 1] += chains[inc + len];
                    }
                }
                if self.closes(j, l) {
                    for (len, c) in counts.iter_mut().enumerate().skip(3) {
                        *c += chains[out + len];
                    }
                }
            }
        }
        counts
    }

    /// Calls `emit` with each hole charged to this anchor whose size is in
    /// `ks`, as a counterclockwise cycle starting at the anchor.
    fn for_each_hole(&self, ks: &[usize], emit: &mut dyn FnMut(&[usize])) {
        let Some(&kmax) = ks.iter().max() else {
            return;
        };
        let m = self.pts.len();
        let mut cycle = Vec::with_capacity(kmax);
        for i in 0..m {
            for j in i + 1..m {
                if self.is_empty_edge(i, j) {
                    cycle.clear();
                    cycle.extend([self.anchor, self.pts[i], self.pts[j]]);
                    self.extend(i, j, ks, kmax, &mut cycle, emit);
                }
            }
        }
    }

    fn extend(
        &self,
        i: usize,
        j: usize,
        ks: &[usize],
        kmax: usize,
        cycle: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if ks.contains(&cycle.len()) && self.closes(i, j) {
            emit(cycle);
        }
        if cycle.len() == kmax {
            return;
        }
        for l in j + 1..self.pts.len() {
            if self.is_empty_edge(j, l) && self.left(i, j, l) {
                cycle.push(self.pts[l]);
                self.extend(j, l, ks, kmax, cycle, emit);
                cycle.pop();
            }
        }
    }
}

/// Hole counts by size for holes whose lowest vertex is `anchor`;
/// index `k` of the result holds the number of k-holes, `k <= kmax`.
/// Summing over all anchors gives the totals, in any order.
pub fn count_holes_at_anchor(ps: &PointSet, anchor: usize, kmax: usize) -> Result<Vec<u64>> {
    check_k(kmax)?;
    Ok(Fan::new(ps, anchor).count(kmax))
}

/// Number of k-holes by the fan dynamic program.
pub fn count_chain_dp(ps: &PointSet, k: usize) -> Result<u64> {
    Ok(count_holes_up_to(ps, k)?[k])
}

/// `result[k]` = number of k-holes for every `k <= kmax`.
pub fn count_holes_up_to(ps: &PointSet, kmax: usize) -> Result<Vec<u64>> {
    check_k(kmax)?;
    let mut total = vec![0u64; kmax + 1];
    for anchor in 0..ps.len() {
        for (t, c) in total.iter_mut().zip(Fan::new(ps, anchor).count(kmax)) {
            *t += c;
        }
    }
    Ok(total)
}

/// Canonical holes with sizes in `ks` charged to `anchor`.
pub fn holes_at_anchor(ps: &PointSet, anchor: usize, ks: &[usize]) -> Result<Vec<Hole>> {
    for &k in ks {
        check_k(k)?;
    }
    let mut out = Vec::new();
    Fan::new(ps, anchor).for_each_hole(ks, &mut |cycle| {
        out.push(Hole::from_ccw(ps, cycle.to_vec()));
    });
    Ok(out)
}

/// Deduplicated holes of the requested sizes with a vertex-pair index.
///
/// Hole ids are positions in canonical order, so a smaller id is a
/// canonically smaller hole.
#[derive(Clone, Debug, Default)]
pub struct HoleCatalog {
    holes: Vec<Hole>,
    pair_index: BTreeMap<(usize, usize), Vec<HoleId>>,
    by_vertex_set: BTreeMap<Vec<usize>, HoleId>,
    sizes: Vec<usize>,
}

fn pair_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl HoleCatalog {
    /// Sorts, deduplicates and indexes `holes`, which must be every hole of
    /// each size in `sizes`.
    pub fn from_holes(mut holes: Vec<Hole>, sizes: &[usize], budget: usize) -> Result<Self> {
        let mut sizes = sizes.to_vec();
        sizes.sort_unstable();
        sizes.dedup();
        holes.sort_unstable();
        holes.dedup();
        if holes.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut pair_index: BTreeMap<(usize, usize), Vec<HoleId>> = BTreeMap::new();
        let mut by_vertex_set = BTreeMap::new();
        for (id, hole) in holes.iter().enumerate() {
            let sorted = hole.sorted_vertices();
            for (u, v) in sorted.iter().tuple_combinations() {
                pair_index.entry((*u, *v)).or_default().push(id);
            }
            by_vertex_set.insert(sorted, id);
        }
        Ok(HoleCatalog {
            holes,
            pair_index,
            by_vertex_set,
            sizes,
        })
    }

    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }

    pub fn hole(&self, id: HoleId) -> &Hole {
        &self.holes[id]
    }

    pub fn len(&self) -> usize {
        self.holes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.holes.is_empty()
    }

    /// Ids of the catalog holes having both `u` and `v` as vertices, ascending.
    pub fn holes_containing_pair(&self, u: usize, v: usize) -> &[HoleId] {
        self.pair_index.get(&pair_key(u, v)).map_or(&[], Vec::as_slice)
    }

    /// Id of the hole with exactly this vertex set (given in increasing order).
    pub fn find(&self, sorted_vertices: &[usize]) -> Option<HoleId> {
        self.by_vertex_set.get(sorted_vertices).copied()
    }

    pub fn count_of_size(&self, k: usize) -> usize {
        self.holes.iter().filter(|h| h.k() == k).count()
    }

    pub fn contains_size(&self, k: usize) -> bool {
        self.holes.iter().any(|h| h.k() == k)
    }

    /// The catalog lists every hole of size `k`.
    pub fn covers(&self, k: usize) -> bool {
        self.sizes.binary_search(&k).is_ok()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
}

/// Catalog of all holes with sizes in `ks`, capped at [`DEFAULT_HOLE_BUDGET`].
pub fn build_catalog(ps: &PointSet, ks: &[usize]) -> Result<HoleCatalog> {
    build_catalog_with_budget(ps, ks, DEFAULT_HOLE_BUDGET)
}

pub fn build_catalog_with_budget(ps: &PointSet, ks: &[usize], budget: usize) -> Result<HoleCatalog> {
    let mut holes = Vec::new();
    for anchor in 0..ps.len() {
        holes.extend(holes_at_anchor(ps, anchor, ks)?);
        if holes.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
    }
    HoleCatalog::from_holes(holes, ks, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    fn parabola(n: i64) -> PointSet {
        PointSet::from_coords(&(0..n).map(|i| (i, i * i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn convex_position_counts() {
        let ps = parabola(10);
        assert_eq!(enumerate_brute(&ps, 5).unwrap().len(), 252);
        let ps12 = parabola(12);
        assert_eq!(count_chain_dp(&ps12, 5).unwrap(), 792);
        let counts = count_holes_up_to(&ps12, 12).unwrap();
        for (k, &count) in counts.iter().enumerate().skip(3) {
            assert_eq!(u128::from(count), binomial(12, k as u64), "k = {k}");
        }
    }

    #[test]
    fn triangle_with_interior_point() {
        let ps = PointSet::from_coords(&[(0, 0), (8, 0), (0, 8), (1, 1)]).unwrap();
        let holes = enumerate_brute(&ps, 3).unwrap();
        assert_eq!(holes.len(), 3);
        assert!(!holes.iter().any(|h| h.sorted_vertices() == [0, 1, 2]));
        assert_eq!(count_chain_dp(&ps, 3).unwrap(), 3);
        assert_eq!(count_chain_dp(&ps, 4).unwrap(), 0);
    }

    #[test]
    fn invalid_k() {
        let ps = parabola(5);
        assert_eq!(count_chain_dp(&ps, 13), Err(Error::InvalidK { k: 13 }));
        assert_eq!(count_chain_dp(&ps, 2), Err(Error::InvalidK { k: 2 }));
        assert!(build_catalog(&ps, &[2]).is_err());
    }

    #[test]
    fn catalog_pair_index() {
        let ps = parabola(10);
        let cat = build_catalog(&ps, &[5]).unwrap();
        assert_eq!(cat.len(), 252);
        assert_eq!(cat.holes_containing_pair(0, 1).len(), 56);
        assert_eq!(cat.holes_containing_pair(7, 3).len(), 56);
        for h in cat.holes() {
            assert!(h.is_valid(&ps));
        }
        let empty = build_catalog(&ps, &[]).unwrap();
        assert!(empty.is_empty());
        assert!(empty.holes_containing_pair(0, 1).is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let ps = parabola(10);
        assert_eq!(
            build_catalog_with_budget(&ps, &[5], 100).unwrap_err(),
            Error::BudgetExceeded { budget: 100 }
        );
    }

    #[test]
    fn pair_not_in_any_hole() {
        let ps = PointSet::from_coords(&[(0, 0), (8, 0), (0, 8), (1, 1)]).unwrap();
        let cat = build_catalog(&ps, &[4]).unwrap();
        assert!(cat.is_empty());
        assert!(cat.holes_containing_pair(0, 3).is_empty());
    }
}
