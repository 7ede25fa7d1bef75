//! Assignment of 5-holes to points, one hole per block of ten radially
//! consecutive points.
//!
//! For a center `p` in layer `i < k_mid`, the points of the suffix set
//! `P_i` are ordered radially around `p` (a [`CenterView`]). Every block of
//! ten consecutive positions receives one 5-hole:
//!
//! 1. if some 5-hole of the whole set has `p` and a block member as
//!    vertices, the canonically smallest one (a *vertex* assignment);
//! 2. otherwise a 5-hole spanned by block members with two vertices `a, b`
//!    such that the triangle `p a b` is empty (an *anchored* assignment),
//!    preferring trustworthy over dubious over bad, then canonical order.
//!
//! An anchored assignment is *bad* when its sector (the radial slice from its
//! first to its last vertex) is in convex position and spans a triangle
//! together with `p`; a good one is *dubious* when the hole and `p` span a
//! triangle, and *trustworthy* otherwise. Vertex assignments are trustworthy.

mod ledger;
mod pentagon;
mod select;

use alloc::vec::Vec;

use itertools::Itertools;

use crate::geom::{
    hull_indices, is_convex_position, is_reflex, radial_order, strictly_inside, triangle_empty_among, PointSet,
    RadialOrder,
};
use crate::holes::{Hole, HoleCatalog, HoleId};
use crate::layers::LayerDecomposition;
use crate::{Error, Result};

pub use ledger::{
    assign_center, lemma31_partition, run_assignment, AssignmentLedger, CenterRecord, HoleStats, PartitionClass,
    PartitionReport,
};
pub use pentagon::{pentagon_selection, PentagonOutcome};
pub use select::{find_good_block, max_disjoint_blocks, select_blocks, window_assignments, BlockSelection};

/// Points per block.
pub const BLOCK_LEN: usize = 10;

const HOLE_SIZE: usize = 5;

/// The radial order of a suffix set around one of its hull vertices, with
/// a reverse lookup from point index to radial position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterView {
    pub center: usize,
    pub layer: usize,
    order: RadialOrder,
    positions: Vec<usize>,
}

impl CenterView {
    /// View of `P_i` around `p`, where `i` is the layer of `p`.
    pub fn new(ps: &PointSet, dec: &LayerDecomposition, p: usize) -> Result<Self> {
        let layer = dec.layer_of(p);
        Self::from_subset(ps, &dec.suffix_set(layer)?, p, layer)
    }

    /// View of an arbitrary subset around one of its hull vertices.
    pub fn from_subset(ps: &PointSet, subset: &[usize], p: usize, layer: usize) -> Result<Self> {
        let order = radial_order(ps, subset, p)?;
        let mut positions = alloc::vec![usize::MAX; ps.len()];
        for (pos, &q) in order.order.iter().enumerate() {
            positions[q] = pos;
        }
        Ok(CenterView {
            center: p,
            layer,
            order,
            positions,
        })
    }

    /// Number of radially ordered points, `m`.
    pub fn len(&self) -> usize {
        self.order.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.order.is_empty()
    }

    pub fn points(&self) -> &[usize] {
        &self.order.order
    }

    pub fn radial_order(&self) -> &RadialOrder {
        &self.order
    }

    pub fn point_at(&self, pos: usize) -> usize {
        self.order.order[pos]
    }

    pub fn position(&self, q: usize) -> Option<usize> {
        self.positions.get(q).copied().filter(|&pos| pos != usize::MAX)
    }

    /// The angle at position `pos` between its radial neighbours exceeds a
    /// half turn. False at the two ends.
    pub fn is_reflex_at(&self, ps: &PointSet, pos: usize) -> bool {
        pos > 0
            && pos + 1 < self.len()
            && is_reflex(
                ps[self.point_at(pos - 1)],
                ps[self.point_at(pos)],
                ps[self.point_at(pos + 1)],
            )
    }

    /// Triangle `center a b` contains no point of `P \ {center, a, b}`.
    /// Only points radially strictly between `a` and `b` can lie inside.
    pub fn anchor_triangle_empty(&self, ps: &PointSet, a: usize, b: usize) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(pa), Some(pb)) => {
                let (lo, hi) = (pa.min(pb), pa.max(pb));
                triangle_empty_among(ps, self.center, a, b, self.points()[lo + 1..hi].iter().copied())
            }
            _ => false,
        }
    }
}

/// Ten radially consecutive points around a center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Block {
    pub center: usize,
    pub layer: usize,
    /// Radial position of the first member.
    pub start: usize,
    pub members: [usize; BLOCK_LEN],
}

impl Block {
    pub fn at(view: &CenterView, start: usize) -> Result<Block> {
        if start + BLOCK_LEN > view.len() {
            return Err(Error::IndexOutOfRange {
                index: start + BLOCK_LEN - 1,
                len: view.len(),
            });
        }
        let mut members = [0; BLOCK_LEN];
        members.copy_from_slice(&view.points()[start..start + BLOCK_LEN]);
        Ok(Block {
            center: view.center,
            layer: view.layer,
            start,
            members,
        })
    }

    /// Last radial position covered, inclusive.
    pub fn end(&self) -> usize {
        self.start + BLOCK_LEN - 1
    }

    pub fn overlaps(&self, other: &Block) -> bool {
        self.start <= other.end() && other.start <= self.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AssignmentKind {
    /// The center is a vertex of the hole.
    Vertex,
    /// The hole lies in the block and has two anchors `a, b` with `p a b` empty.
    Anchored,
}

/// Priority order: earlier variants are preferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AssignmentClass {
    GoodTrustworthy,
    GoodDubious,
    Bad,
}

impl AssignmentClass {
    pub fn is_good(self) -> bool {
        self != AssignmentClass::Bad
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Assignment {
    pub center: usize,
    pub block: Block,
    pub hole: HoleId,
    pub kind: AssignmentKind,
    /// Set exactly for anchored assignments, smaller index first.
    pub anchors: Option<(usize, usize)>,
    pub class: AssignmentClass,
}

impl Assignment {
    pub fn is_good(&self) -> bool {
        self.class.is_good()
    }
}

/// A 5-hole inside a block together with its lexicographically smallest
/// admissible anchor pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub hole: HoleId,
    pub anchors: (usize, usize),
}

/// The radial slice of a center's order from the first to the last vertex
/// of a hole, inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub center: usize,
    pub points: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectorPointKind {
    /// Inside the hull of the hole and the center.
    Nearby,
    Away,
}

fn require_five_holes(catalog: &HoleCatalog) -> Result<()> {
    if catalog.covers(HOLE_SIZE) {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("hole catalog does not include 5-holes"))
    }
}

/// Every 5-hole spanned by block members that has an anchor pair, in
/// canonical order, each with its smallest anchor pair.
pub fn candidate_family(
    ps: &PointSet,
    view: &CenterView,
    block: &Block,
    catalog: &HoleCatalog,
) -> Result<Vec<Candidate>> {
    require_five_holes(catalog)?;
    let mut members = block.members;
    members.sort_unstable();
    let mut family: Vec<Candidate> = members
        .iter()
        .copied()
        .combinations(HOLE_SIZE)
        .filter_map(|subset| {
            let hole = catalog.find(&subset)?;
            let anchors = subset
                .iter()
                .tuple_combinations()
                .map(|(&a, &b)| (a, b))
                .find(|&(a, b)| view.anchor_triangle_empty(ps, a, b))?;
            Some(Candidate { hole, anchors })
        })
        .collect();
    family.sort_unstable_by_key(|c| c.hole);
    Ok(family)
}

pub fn sector_of(view: &CenterView, hole: &Hole) -> Result<Sector> {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for &v in hole.vertices() {
        let pos = view
            .position(v)
            .ok_or(Error::PreconditionViolated("hole vertex outside the radial order"))?;
        lo = lo.min(pos);
        hi = hi.max(pos);
    }
    Ok(Sector {
        center: view.center,
        points: view.points()[lo..=hi].to_vec(),
    })
}

/// Class of an anchored assignment of `hole` to `p`.
pub fn classify(ps: &PointSet, p: usize, hole: &Hole, sector: &Sector) -> AssignmentClass {
    let mut with_center = sector.points.clone();
    with_center.push(p);
    if is_convex_position(ps, &sector.points) && hull_indices(ps, &with_center).len() == 3 {
        return AssignmentClass::Bad;
    }
    let mut hole_and_center = hole.vertices().to_vec();
    hole_and_center.push(p);
    if hull_indices(ps, &hole_and_center).len() == 3 {
        AssignmentClass::GoodDubious
    } else {
        AssignmentClass::GoodTrustworthy
    }
}

/// The canonically smallest 5-hole with the center and some block member as
/// vertices.
fn vertex_hole(view: &CenterView, block: &Block, catalog: &HoleCatalog) -> Option<HoleId> {
    block
        .members
        .iter()
        .filter_map(|&b| {
            catalog
                .holes_containing_pair(view.center, b)
                .iter()
                .copied()
                .find(|&id| catalog.hole(id).k() == HOLE_SIZE)
        })
        .min()
}

/// Assigns one 5-hole to the center of `view` for `block`.
pub fn assign_block(ps: &PointSet, view: &CenterView, block: &Block, catalog: &HoleCatalog) -> Result<Assignment> {
    require_five_holes(catalog)?;
    if let Some(hole) = vertex_hole(view, block, catalog) {
        return Ok(Assignment {
            center: view.center,
            block: *block,
            hole,
            kind: AssignmentKind::Vertex,
            anchors: None,
            class: AssignmentClass::GoodTrustworthy,
        });
    }
    let mut best: Option<(AssignmentClass, Candidate)> = None;
    for cand in candidate_family(ps, view, block, catalog)? {
        let hole = catalog.hole(cand.hole);
        let class = classify(ps, view.center, hole, &sector_of(view, hole)?);
        if best.is_none_or(|(c, _)| class < c) {
            best = Some((class, cand));
            if class == AssignmentClass::GoodTrustworthy {
                break;
            }
        }
    }
    let (class, cand) = best.ok_or(Error::NoCandidate {
        center: view.center,
        start: block.start,
    })?;
    Ok(Assignment {
        center: view.center,
        block: *block,
        hole: cand.hole,
        kind: AssignmentKind::Anchored,
        anchors: Some(cand.anchors),
        class,
    })
}

/// Whether a sector point `q` (not a hole vertex) lies inside the hull of
/// the hole and the center.
pub fn sector_point_kind(ps: &PointSet, p: usize, hole: &Hole, q: usize) -> SectorPointKind {
    let mut pts = hole.vertices().to_vec();
    pts.push(p);
    let hull = hull_indices(ps, &pts);
    if strictly_inside(ps, &hull, ps[q]) {
        SectorPointKind::Nearby
    } else {
        SectorPointKind::Away
    }
}

#[cfg(test)]
mod tests;
