//! Convex runs around a center, visible and long 5-holes, and the end-to-end
//! report tying the assignment to the counting bounds.
//!
//! Around a center `p` the radial order `p_1..p_m` is cut into the fewest
//! runs of consecutive points that are each the vertex set of an empty
//! convex polygon. A
//! 5-hole is *visible* from `p` when its vertices lie in one run, and *long*
//! when any two of its vertices are at least ten radial positions apart.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::assignment::{assign_center, AssignmentLedger, CenterRecord, CenterView};
use crate::combinatorics::{binomial, long_five_subsets};
use crate::geom::{hull_indices, is_convex_position, polygon_empty, PointSet};
use crate::holes::{build_catalog, Hole, HoleCatalog};
use crate::layers::{decompose, LayerDecomposition};
use crate::Result;

const HOLE_SIZE: usize = 5;

/// Slack in the run-count bound `#runs <= 100 g_p + 2`.
pub const RUN_FACTOR: u128 = 100;

/// Consecutive radial positions `start..start + len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Run {
    pub start: usize,
    pub len: usize,
    /// Reflex angles at interior positions of the run.
    pub reflex_interior: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvexRunPartition {
    pub center: usize,
    pub runs: Vec<Run>,
    /// Reflex angles anywhere in the radial order.
    pub reflex_angles: usize,
    order: Vec<usize>,
    /// Radial position of each point index, `usize::MAX` when absent.
    position: Vec<usize>,
    /// Run index of each radial position.
    run_at: Vec<usize>,
}

/// The points are the vertices of an empty convex polygon.
pub fn is_empty_convex(ps: &PointSet, points: &[usize]) -> bool {
    points.len() < 3 || (is_convex_position(ps, points) && polygon_empty(ps, &hull_indices(ps, points)))
}

/// Fewest runs of consecutive radial positions that are each the vertex set
/// of an empty convex polygon.
///
/// Sub-runs of a valid run are valid, so extending each run as far as it
/// stays valid is optimal.
pub fn convex_runs(ps: &PointSet, view: &CenterView) -> ConvexRunPartition {
    let m = view.len();
    let order = view.points().to_vec();
    let reflex: Vec<bool> = (0..m).map(|j| view.is_reflex_at(ps, j)).collect();
    let mut runs = Vec::new();
    let mut s = 0;
    while s < m {
        let mut e = s + 1;
        while e < m && is_empty_convex(ps, &order[s..=e]) {
            e += 1;
        }
        let len = e - s;
        let reflex_interior = (s + 1..e.saturating_sub(1)).filter(|&j| reflex[j]).count();
        runs.push(Run {
            start: s,
            len,
            reflex_interior,
        });
        s = e;
    }
    let mut run_at = alloc::vec![0; m];
    for (i, r) in runs.iter().enumerate() {
        run_at[r.start..r.start + r.len].fill(i);
    }
    let position = (0..ps.len()).map(|q| view.position(q).unwrap_or(usize::MAX)).collect();
    ConvexRunPartition {
        center: view.center,
        runs,
        reflex_angles: reflex.iter().filter(|&&r| r).count(),
        order,
        position,
        run_at,
    }
}

impl ConvexRunPartition {
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn run_points(&self, i: usize) -> &[usize] {
        let r = self.runs[i];
        &self.order[r.start..r.start + r.len]
    }

    /// Sorted radial positions of the hole's vertices, if all are present.
    fn positions_of(&self, hole: &Hole) -> Option<Vec<usize>> {
        let mut pos: Vec<usize> = hole
            .vertices()
            .iter()
            .map(|&v| self.position.get(v).copied().filter(|&x| x != usize::MAX))
            .collect::<Option<_>>()?;
        pos.sort_unstable();
        Some(pos)
    }

    pub fn is_visible(&self, hole: &Hole) -> bool {
        self.positions_of(hole)
            .is_some_and(|pos| pos.iter().all(|&x| self.run_at[x] == self.run_at[pos[0]]))
    }

    pub fn is_visible_and_long(&self, hole: &Hole) -> bool {
        self.positions_of(hole).is_some_and(|pos| {
            pos.iter().all(|&x| self.run_at[x] == self.run_at[pos[0]]) && pos.windows(2).all(|w| w[1] - w[0] >= 10)
        })
    }
}

/// 5-holes visible from the center.
pub fn count_visible(runs: &ConvexRunPartition) -> u128 {
    runs.runs.iter().map(|r| binomial(r.len as u64, 5)).sum()
}

/// Visible 5-holes that are also long.
pub fn count_long_visible(runs: &ConvexRunPartition) -> u128 {
    runs.runs.iter().map(|r| u128::from(long_five_subsets(r.len))).sum()
}

/// Centers from which one hole is visible and long, split by their sides of
/// the ten lines through pairs of hole vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Lemma41Report {
    pub hole: Hole,
    pub centers: Vec<usize>,
    /// `(sign vector, members, convex position)`, by sign vector.
    pub classes: Vec<(u16, Vec<usize>, bool)>,
}

impl Lemma41Report {
    pub fn all_convex(&self) -> bool {
        self.classes.iter().all(|c| c.2)
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Every 5-hole that is visible and long from at least one of the centers,
/// in canonical order. Each is five run positions pairwise ten apart.
pub fn visible_long_holes(ps: &PointSet, runs: &[ConvexRunPartition]) -> Vec<Hole> {
    let mut holes = Vec::new();
    for partition in runs {
        for i in 0..partition.run_count() {
            let pts = partition.run_points(i);
            // Shift positions back by 9 per earlier pick: plain 5-subsets of len - 36.
            for picks in (0..pts.len().saturating_sub(36)).combinations(HOLE_SIZE) {
                let subset: Vec<usize> = picks.iter().enumerate().map(|(j, &x)| pts[x + 9 * j]).collect();
                if let Some(hole) = Hole::from_vertex_set(ps, &subset) {
                    holes.push(hole);
                }
            }
        }
    }
    holes.sort_unstable();
    holes.dedup();
    holes
}

pub fn lemma41_check(ps: &PointSet, hole: &Hole, runs: &[ConvexRunPartition]) -> Lemma41Report {
    let centers: Vec<usize> = runs
        .iter()
        .filter(|r| r.is_visible_and_long(hole))
        .map(|r| r.center)
        .collect();
    let mut groups: BTreeMap<u16, Vec<usize>> = BTreeMap::new();
    for &s in &centers {
        let signs = hole
            .vertices()
            .iter()
            .tuple_combinations()
            .enumerate()
            .fold(0u16, |acc, (bit, (&a, &b))| {
                acc | (u16::from(ps.cross(a, b, s) > 0) << bit)
            });
        groups.entry(signs).or_default().push(s);
    }
    let classes = groups
        .into_iter()
        .map(|(signs, members)| {
            let convex = is_convex_position(ps, &members);
            (signs, members, convex)
        })
        .collect();
    Lemma41Report {
        hole: hole.clone(),
        centers,
        classes,
    }
}

/// Assignment and runs of one block center.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CenterAnalysis {
    pub record: CenterRecord,
    pub runs: ConvexRunPartition,
}

pub fn analyze_center(
    ps: &PointSet,
    dec: &LayerDecomposition,
    catalog: &HoleCatalog,
    p: usize,
) -> Result<CenterAnalysis> {
    let record = assign_center(ps, dec, catalog, p)?;
    let view = CenterView::new(ps, dec, p)?;
    Ok(CenterAnalysis {
        record,
        runs: convex_runs(ps, &view),
    })
}

/// `r * C(floor(m / r), 5)`, the fewest 5-subsets inside `r` runs covering `m`.
pub fn jensen_floor(m: usize, r: usize) -> u128 {
    if r == 0 {
        0
    } else {
        r as u128 * binomial((m / r) as u64, 5)
    }
}

/// `100 g * C(floor(m / (100 g)), 5)`; undefined for `g = 0`.
pub fn eq2_value(m: usize, g: usize) -> Option<u128> {
    (g > 0).then(|| {
        let r = RUN_FACTOR * g as u128;
        r * binomial((m as u128 / r) as u64, 5)
    })
}

/// `floor(n^5 / g^4)`; undefined for `g = 0`.
pub fn n5_over_g4(n: usize, g: usize) -> Option<u128> {
    (g > 0).then(|| (n as u128).pow(5) / (g as u128).pow(4))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CenterSummary {
    pub center: usize,
    pub layer: usize,
    pub m: usize,
    pub blocks: usize,
    pub g: usize,
    pub distinct_holes: usize,
    pub runs: usize,
    pub reflex_angles: usize,
    pub visible: u128,
    pub long_visible: u128,
    pub eq2: Option<u128>,
    pub n5_over_g4: Option<u128>,
    /// `#runs <= 100 g + 2`.
    pub runs_within_bound: bool,
    /// `visible >= #runs * C(floor(m / #runs), 5)`.
    pub jensen_holds: bool,
    /// `visible >= eq2`, checked when `floor(m / (100 g)) >= 5`.
    pub eq2_holds: Option<bool>,
}

impl CenterSummary {
    fn new(n: usize, a: &CenterAnalysis) -> Self {
        let sel = &a.record.selection;
        let g = sel.good_count();
        let m = sel.m;
        let runs = a.runs.run_count();
        let visible = count_visible(&a.runs);
        let eq2 = eq2_value(m, g);
        let eq2_holds = eq2
            .filter(|_| m as u128 / (RUN_FACTOR * g as u128) >= 5)
            .map(|bound| visible >= bound);
        CenterSummary {
            center: a.record.center,
            layer: a.record.layer,
            m,
            blocks: sel.block_count(),
            g,
            distinct_holes: a.record.distinct_holes().len(),
            runs,
            reflex_angles: a.runs.reflex_angles,
            visible,
            long_visible: count_long_visible(&a.runs),
            eq2,
            n5_over_g4: n5_over_g4(n, g),
            runs_within_bound: runs as u128 <= RUN_FACTOR * g as u128 + 2,
            jensen_holds: visible >= jensen_floor(m, runs),
            eq2_holds,
        }
    }
}

/// Every counting quantity of the analysis with the inequality verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PipelineReport {
    pub n: usize,
    pub layers: usize,
    pub k_mid: usize,
    pub five_holes: usize,
    pub centers: Vec<CenterSummary>,
    /// `sum g_p`.
    pub total_good: usize,
    pub total_blocks: usize,
    pub distinct_assigned_holes: usize,
    /// Largest `floor(n^5 / g_p^4)` over centers with `g_p > 0`.
    pub eq3_max: Option<u128>,
    /// Sum of `floor(n^5 / g_p^4)` over centers with `g_p > 0`.
    pub eq4_sum: u128,
    /// Centers with `g_p = 0`, left out of the two quantities above.
    pub zero_good_centers: usize,
    pub max_multiplicity_per_center: usize,
    pub max_nonvertex_per_layer: usize,
    pub max_good_centers_per_hole: usize,
    /// Pairs `(H, p)` with `H` visible and long from `p`.
    pub visible_long_pairs: u128,
    pub max_visible_long_centers: usize,
    /// Holes visible and long from at least `ceil(n^(10/11))` centers.
    pub holes_over_threshold: usize,
    pub lemma41_max_classes: usize,
    pub lemma41_all_convex: bool,
    pub verdicts: Verdicts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdicts {
    pub runs_within_bound: bool,
    pub jensen: bool,
    pub eq2: bool,
    /// `D (40 k_mid + 5) >= sum_p ceil(blocks_p / 4)` for `D` distinct 5-holes.
    pub distinct_holes_bound: bool,
    /// `D (40 k_mid + 5) * 160 >= n^2`, checked when `80 | n`.
    pub quadratic_bound: Option<bool>,
    pub multiplicity_at_most_four: bool,
    pub nonvertex_at_most_forty: bool,
    pub lemma41_convex: bool,
}

impl Verdicts {
    pub fn all_hold(&self) -> bool {
        self.runs_within_bound
            && self.jensen
            && self.eq2
            && self.distinct_holes_bound
            && self.quadratic_bound != Some(false)
            && self.multiplicity_at_most_four
            && self.nonvertex_at_most_forty
            && self.lemma41_convex
    }
}

/// `ceil(n^(10/11))`.
pub fn visibility_threshold(n: usize) -> usize {
    libm::ceil(libm::pow(n as f64, 10.0 / 11.0)) as usize
}

impl PipelineReport {
    /// Combines per-center analyses (any order) and per-hole checks.
    pub fn assemble(
        ps: &PointSet,
        dec: &LayerDecomposition,
        catalog: &HoleCatalog,
        mut analyses: Vec<CenterAnalysis>,
        lemma41: &[Lemma41Report],
    ) -> Self {
        analyses.sort_unstable_by_key(|a| a.record.center);
        let n = ps.len();
        let centers: Vec<CenterSummary> = analyses.iter().map(|a| CenterSummary::new(n, a)).collect();
        let ledger = AssignmentLedger::from_records(analyses.into_iter().map(|a| a.record).collect());
        let five_holes = catalog.count_of_size(HOLE_SIZE);
        let k_mid = dec.k_mid();
        let per_hole = 40 * k_mid as u128 + 5;
        let ceil_quarters: u128 = centers.iter().map(|c| c.blocks.div_ceil(4) as u128).sum();
        let threshold = visibility_threshold(n);
        let verdicts = Verdicts {
            runs_within_bound: centers.iter().all(|c| c.runs_within_bound),
            jensen: centers.iter().all(|c| c.jensen_holds),
            eq2: centers.iter().all(|c| c.eq2_holds != Some(false)),
            distinct_holes_bound: five_holes as u128 * per_hole >= ceil_quarters,
            quadratic_bound: (n > 0 && n.is_multiple_of(80))
                .then(|| five_holes as u128 * per_hole * 160 >= (n as u128).pow(2)),
            multiplicity_at_most_four: ledger.max_multiplicity_per_center() <= 4,
            nonvertex_at_most_forty: ledger.max_nonvertex_per_layer() <= 40,
            lemma41_convex: lemma41.iter().all(Lemma41Report::all_convex),
        };
        PipelineReport {
            n,
            layers: dec.len(),
            k_mid,
            five_holes,
            total_good: ledger.total_good(),
            total_blocks: ledger.total_assignments(),
            distinct_assigned_holes: ledger.distinct_holes(),
            eq3_max: centers.iter().filter_map(|c| c.n5_over_g4).max(),
            eq4_sum: centers.iter().filter_map(|c| c.n5_over_g4).sum(),
            zero_good_centers: centers.iter().filter(|c| c.g == 0).count(),
            max_multiplicity_per_center: ledger.max_multiplicity_per_center(),
            max_nonvertex_per_layer: ledger.max_nonvertex_per_layer(),
            max_good_centers_per_hole: ledger.max_good_centers_per_hole(),
            visible_long_pairs: lemma41.iter().map(|r| r.centers.len() as u128).sum(),
            max_visible_long_centers: lemma41.iter().map(|r| r.centers.len()).max().unwrap_or(0),
            holes_over_threshold: lemma41.iter().filter(|r| r.centers.len() >= threshold).count(),
            lemma41_max_classes: lemma41.iter().map(Lemma41Report::class_count).max().unwrap_or(0),
            lemma41_all_convex: verdicts.lemma41_convex,
            centers,
            verdicts,
        }
    }
}

/// Sequential end-to-end analysis.
pub fn pipeline_report(ps: &PointSet) -> Result<PipelineReport> {
    let dec = decompose(ps);
    let catalog = build_catalog(ps, &[HOLE_SIZE])?;
    let analyses = dec
        .block_centers()
        .into_iter()
        .map(|p| analyze_center(ps, &dec, &catalog, p))
        .collect::<Result<Vec<_>>>()?;
    let runs: Vec<ConvexRunPartition> = analyses.iter().map(|a| a.runs.clone()).collect();
    let lemma41: Vec<Lemma41Report> = visible_long_holes(ps, &runs)
        .iter()
        .map(|hole| lemma41_check(ps, hole, &runs))
        .collect();
    Ok(PipelineReport::assemble(ps, &dec, &catalog, analyses, &lemma41))
}
