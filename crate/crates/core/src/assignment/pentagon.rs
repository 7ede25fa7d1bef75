use alloc::vec::Vec;

use itertools::Itertools;

use crate::geom::{radial_order, triangle_empty_among, PointSet};
use crate::holes::Hole;
use crate::{Error, Result};

const SET_SIZE: usize = 11;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PentagonOutcome {
    /// A 5-hole with the center as a vertex.
    HoleWithP(Hole),
    /// A 5-hole with vertices `a < b` such that the triangle with the center
    /// is empty.
    Anchored { hole: Hole, a: usize, b: usize },
}

impl PentagonOutcome {
    pub fn hole(&self) -> &Hole {
        match self {
            PentagonOutcome::HoleWithP(hole) | PentagonOutcome::Anchored { hole, .. } => hole,
        }
    }
}

/// Smallest 5-hole of `ps` with vertices in `pool`.
fn first_hole(ps: &PointSet, pool: &[usize]) -> Option<Hole> {
    pool.iter()
        .copied()
        .combinations(5)
        .filter_map(|subset| Hole::from_vertex_set(ps, &subset))
        .min()
}

fn anchored(hole: Hole, a: usize, b: usize) -> PentagonOutcome {
    PentagonOutcome::Anchored {
        hole,
        a: a.min(b),
        b: a.max(b),
    }
}

/// For eleven points with `p` on the hull, a 5-hole through `p` or a 5-hole
/// with two vertices spanning an empty triangle with `p`.
///
/// Follows the constructive argument: with no hole through `p`, the ten
/// points `p_1..p_9` (and `p_2..p_10`) contain a hole avoiding `p`; either it
/// has radially adjacent vertices, or the two alternating holes leave some
/// `p p_i p_{i+2}` empty, or the whole radial chain is a 10-hole.
pub fn pentagon_selection(ps: &PointSet, p: usize) -> Result<PentagonOutcome> {
    if ps.len() != SET_SIZE {
        return Err(Error::PreconditionViolated(
            "pentagon selection needs exactly 11 points",
        ));
    }
    if p >= ps.len() {
        return Err(Error::IndexOutOfRange {
            index: p,
            len: ps.len(),
        });
    }
    let all: Vec<usize> = (0..SET_SIZE).collect();
    let order = match radial_order(ps, &all, p) {
        Ok(order) => order.order,
        Err(Error::CenterNotOnHull { .. }) => {
            return Err(Error::PreconditionViolated("center is not on the hull"));
        }
        Err(e) => return Err(e),
    };
    let through_p = order
        .iter()
        .copied()
        .combinations(4)
        .filter_map(|mut subset| {
            subset.push(p);
            Hole::from_vertex_set(ps, &subset)
        })
        .min();
    if let Some(hole) = through_p {
        return Ok(PentagonOutcome::HoleWithP(hole));
    }

    let adjacent_pair = |hole: &Hole| {
        order
            .windows(2)
            .find(|w| hole.contains(w[0]) && hole.contains(w[1]))
            .map(|w| (w[0], w[1]))
    };
    let no_hole = Error::PreconditionViolated("ten points without a 5-hole");
    let h1 = first_hole(ps, &order[..9]).ok_or(no_hole.clone())?;
    if let Some((a, b)) = adjacent_pair(&h1) {
        return Ok(anchored(h1, a, b));
    }
    let h2 = first_hole(ps, &order[1..]).ok_or(no_hole)?;
    if let Some((a, b)) = adjacent_pair(&h2) {
        return Ok(anchored(h2, a, b));
    }
    // h1 = p_1 p_3 .. p_9 and h2 = p_2 p_4 .. p_10.
    for i in 0..8 {
        let (a, mid, b) = (order[i], order[i + 1], order[i + 2]);
        if triangle_empty_among(ps, p, a, b, [mid]) {
            let hole = if h1.contains(a) { h1 } else { h2 };
            return Ok(anchored(hole, a, b));
        }
    }
    // Every p_{i+1} lies in p p_i p_{i+2}: the chain p_1..p_10 is a 10-hole.
    let hole =
        Hole::from_vertex_set(ps, &order[..5]).ok_or(Error::PreconditionViolated("radial chain is not a hole"))?;
    Ok(anchored(hole, order[0], order[1]))
}
