use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{select_blocks, Assignment, AssignmentKind, BlockSelection, CenterView};
use crate::geom::{is_convex_position, PointSet};
use crate::holes::{HoleCatalog, HoleId};
use crate::layers::LayerDecomposition;
use crate::{Error, Result};

/// The blocks and assignments of one center.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CenterRecord {
    pub center: usize,
    pub layer: usize,
    pub selection: BlockSelection,
}

impl CenterRecord {
    pub fn assignments(&self) -> &[Assignment] {
        &self.selection.assignments
    }

    /// Number of good assignments, `g_p`.
    pub fn good_count(&self) -> usize {
        self.selection.good_count()
    }

    /// Largest number of blocks assigned the same hole.
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: BTreeMap<HoleId, usize> = BTreeMap::new();
        for a in self.assignments() {
            *counts.entry(a.hole).or_default() += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }

    pub fn distinct_holes(&self) -> BTreeSet<HoleId> {
        self.assignments().iter().map(|a| a.hole).collect()
    }
}

/// Assignments of one center in a layer below `k_mid`.
pub fn assign_center(ps: &PointSet, dec: &LayerDecomposition, catalog: &HoleCatalog, p: usize) -> Result<CenterRecord> {
    if p >= ps.len() {
        return Err(Error::IndexOutOfRange {
            index: p,
            len: ps.len(),
        });
    }
    let layer = dec.layer_of(p);
    if layer >= dec.k_mid() {
        return Err(Error::PreconditionViolated("center lies in a layer without blocks"));
    }
    let view = CenterView::new(ps, dec, p)?;
    Ok(CenterRecord {
        center: p,
        layer,
        selection: select_blocks(ps, &view, catalog)?,
    })
}

/// How often one hole was assigned, and to whom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HoleStats {
    /// Assignments counted with multiplicity.
    pub assignments: usize,
    pub good: usize,
    /// Distinct centers.
    pub centers: usize,
    /// Distinct centers with the hole assigned as a vertex hole.
    pub vertex_centers: usize,
    /// Distinct non-vertex centers per layer.
    pub nonvertex_by_layer: BTreeMap<usize, usize>,
    /// Distinct centers with at least one good assignment of the hole.
    pub good_centers: usize,
}

/// Every assignment of a point set, grouped by center in index order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AssignmentLedger {
    records: Vec<CenterRecord>,
    hole_stats: BTreeMap<HoleId, HoleStats>,
}

impl AssignmentLedger {
    /// Aggregates per-center records, which may arrive in any order.
    pub fn from_records(mut records: Vec<CenterRecord>) -> Self {
        records.sort_unstable_by_key(|r| r.center);
        let mut hole_stats: BTreeMap<HoleId, HoleStats> = BTreeMap::new();
        for record in &records {
            let mut seen: BTreeMap<HoleId, (bool, bool)> = BTreeMap::new();
            for a in record.assignments() {
                let stats = hole_stats.entry(a.hole).or_default();
                stats.assignments += 1;
                stats.good += usize::from(a.is_good());
                let entry = seen.entry(a.hole).or_default();
                entry.0 |= a.kind == AssignmentKind::Vertex;
                entry.1 |= a.is_good();
            }
            for (hole, (vertex, good)) in seen {
                let stats = hole_stats.entry(hole).or_default();
                stats.centers += 1;
                stats.good_centers += usize::from(good);
                if vertex {
                    stats.vertex_centers += 1;
                } else {
                    *stats.nonvertex_by_layer.entry(record.layer).or_default() += 1;
                }
            }
        }
        AssignmentLedger { records, hole_stats }
    }

    pub fn records(&self) -> &[CenterRecord] {
        &self.records
    }

    pub fn record(&self, p: usize) -> Option<&CenterRecord> {
        self.records
            .binary_search_by_key(&p, |r| r.center)
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn assignments(&self) -> impl Iterator<Item = &Assignment> {
        self.records.iter().flat_map(|r| r.assignments())
    }

    pub fn hole_stats(&self) -> &BTreeMap<HoleId, HoleStats> {
        &self.hole_stats
    }

    /// `g_p`, or `None` when `p` receives no blocks.
    pub fn good_count(&self, p: usize) -> Option<usize> {
        self.record(p).map(CenterRecord::good_count)
    }

    pub fn total_assignments(&self) -> usize {
        self.records.iter().map(|r| r.assignments().len()).sum()
    }

    pub fn total_good(&self) -> usize {
        self.records.iter().map(CenterRecord::good_count).sum()
    }

    pub fn distinct_holes(&self) -> usize {
        self.hole_stats.len()
    }

    /// Largest number of times one center received the same hole.
    pub fn max_multiplicity_per_center(&self) -> usize {
        self.records
            .iter()
            .map(CenterRecord::max_multiplicity)
            .max()
            .unwrap_or(0)
    }

    /// Largest number of non-vertex centers of one layer sharing a hole.
    pub fn max_nonvertex_per_layer(&self) -> usize {
        self.hole_stats
            .values()
            .flat_map(|s| s.nonvertex_by_layer.values().copied())
            .max()
            .unwrap_or(0)
    }

    /// Largest number of distinct centers holding a good assignment of one hole.
    pub fn max_good_centers_per_hole(&self) -> usize {
        self.hole_stats.values().map(|s| s.good_centers).max().unwrap_or(0)
    }
}

/// Assigns holes to every block center, sequentially.
pub fn run_assignment(ps: &PointSet, dec: &LayerDecomposition, catalog: &HoleCatalog) -> Result<AssignmentLedger> {
    let records = dec
        .block_centers()
        .into_iter()
        .map(|p| assign_center(ps, dec, catalog, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(AssignmentLedger::from_records(records))
}

/// Non-vertex centers of one hole sharing an anchor pair and a side of the
/// anchor line.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionClass {
    pub anchors: (usize, usize),
    /// Centers lie to the left of the directed line from `anchors.0` to `anchors.1`.
    pub left: bool,
    pub centers: Vec<usize>,
    pub convex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PartitionReport {
    pub hole: HoleId,
    pub classes: Vec<PartitionClass>,
}

impl PartitionReport {
    pub fn all_convex(&self) -> bool {
        self.classes.iter().all(|c| c.convex)
    }
}

/// Splits the non-vertex centers of `hole` by anchor pair and side of the
/// anchor line, and tests each class for convex position.
pub fn lemma31_partition(ps: &PointSet, ledger: &AssignmentLedger, hole: HoleId) -> PartitionReport {
    let mut groups: BTreeMap<((usize, usize), bool), BTreeSet<usize>> = BTreeMap::new();
    for a in ledger.assignments().filter(|a| a.hole == hole) {
        if let Some((u, v)) = a.anchors {
            let left = ps.cross(u, v, a.center) > 0;
            groups.entry(((u, v), left)).or_default().insert(a.center);
        }
    }
    let classes = groups
        .into_iter()
        .map(|((anchors, left), centers)| {
            let centers: Vec<usize> = centers.into_iter().collect();
            let convex = is_convex_position(ps, &centers);
            PartitionClass {
                anchors,
                left,
                centers,
                convex,
            }
        })
        .collect();
    PartitionReport { hole, classes }
}
