use alloc::vec::Vec;

use super::{assign_block, Assignment, Block, CenterView, BLOCK_LEN};
use crate::geom::PointSet;
use crate::holes::HoleCatalog;
use crate::{Error, Result};

/// Positions in a good-block search window.
const WINDOW_LEN: usize = BLOCK_LEN + 1;

/// The assignment of every block position `0..=m - 10`, indexed by start.
pub fn window_assignments(ps: &PointSet, view: &CenterView, catalog: &HoleCatalog) -> Result<Vec<Assignment>> {
    let Some(last) = view.len().checked_sub(BLOCK_LEN) else {
        return Ok(Vec::new());
    };
    (0..=last)
        .map(|start| assign_block(ps, view, &Block::at(view, start)?, catalog))
        .collect()
}

/// A good block inside the eleven positions `window_start..window_start + 11`
/// whose middle angle is reflex: the block starting at the window start or
/// the one after it.
pub fn find_good_block(
    ps: &PointSet,
    view: &CenterView,
    window_start: usize,
    catalog: &HoleCatalog,
) -> Result<Assignment> {
    if window_start + WINDOW_LEN > view.len() {
        return Err(Error::IndexOutOfRange {
            index: window_start + WINDOW_LEN - 1,
            len: view.len(),
        });
    }
    if !view.is_reflex_at(ps, window_start + 5) {
        return Err(Error::PreconditionViolated("middle angle of the window is not reflex"));
    }
    for start in [window_start, window_start + 1] {
        let assignment = assign_block(ps, view, &Block::at(view, start)?, catalog)?;
        if assignment.is_good() {
            return Ok(assignment);
        }
    }
    Err(Error::NoGoodBlock {
        center: view.center,
        start: window_start,
    })
}

/// Maximum set of pairwise disjoint blocks among the given starts, chosen
/// greedily by earliest end.
pub fn max_disjoint_blocks(starts: &[usize]) -> Vec<usize> {
    let mut sorted = starts.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut picked: Vec<usize> = Vec::new();
    for s in sorted {
        if picked.last().is_none_or(|&last| s >= last + BLOCK_LEN) {
            picked.push(s);
        }
    }
    picked
}

/// Blocks of one center: a maximum disjoint family of good blocks, with the
/// gaps between them filled by as many further blocks as fit.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlockSelection {
    pub center: usize,
    pub layer: usize,
    /// Size of the radial order, `m`.
    pub m: usize,
    /// Starts of all blocks whose assignment is good.
    pub good_starts: Vec<usize>,
    /// Starts of the chosen disjoint good blocks.
    pub selected_good: Vec<usize>,
    /// Maximal runs `(start, len)` of positions outside the chosen good blocks.
    pub gaps: Vec<(usize, usize)>,
    /// One assignment per final block, ordered by start.
    pub assignments: Vec<Assignment>,
}

impl BlockSelection {
    pub fn block_count(&self) -> usize {
        self.assignments.len()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Block> {
        self.assignments.iter().map(|a| &a.block)
    }

    /// Good assignments among the final blocks, `g_p`.
    pub fn good_count(&self) -> usize {
        self.assignments.iter().filter(|a| a.is_good()).count()
    }

    /// `#blocks >= floor(m / 10) - #gaps`.
    pub fn meets_block_lower_bound(&self) -> bool {
        self.block_count() + self.gaps.len() >= self.m / BLOCK_LEN
    }

    /// Inside every gap `r..=t` with `t - r >= 10`, the angles at positions
    /// `r + 5..=t - 5` are convex.
    pub fn gaps_are_convex(&self, ps: &PointSet, view: &CenterView) -> bool {
        self.gaps.iter().all(|&(r, len)| {
            let t = r + len - 1;
            len <= BLOCK_LEN || (r + 5..=t - 5).all(|j| !view.is_reflex_at(ps, j))
        })
    }
}

fn gaps_between(m: usize, picked: &[usize]) -> Vec<(usize, usize)> {
    let mut gaps = Vec::new();
    let mut cursor = 0;
    for &s in picked {
        if s > cursor {
            gaps.push((cursor, s - cursor));
        }
        cursor = s + BLOCK_LEN;
    }
    if m > cursor {
        gaps.push((cursor, m - cursor));
    }
    gaps
}

pub fn select_blocks(ps: &PointSet, view: &CenterView, catalog: &HoleCatalog) -> Result<BlockSelection> {
    let windows = window_assignments(ps, view, catalog)?;
    let good_starts: Vec<usize> = (0..windows.len()).filter(|&s| windows[s].is_good()).collect();
    let selected_good = max_disjoint_blocks(&good_starts);
    let gaps = gaps_between(view.len(), &selected_good);
    let mut starts = selected_good.clone();
    for &(r, len) in &gaps {
        starts.extend((0..len / BLOCK_LEN).map(|i| r + i * BLOCK_LEN));
    }
    starts.sort_unstable();
    let assignments = starts.iter().map(|&s| windows[s].clone()).collect();
    Ok(BlockSelection {
        center: view.center,
        layer: view.layer,
        m: view.len(),
        good_starts,
        selected_good,
        gaps,
        assignments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_examples() {
        assert_eq!(max_disjoint_blocks(&[]), Vec::<usize>::new());
        assert_eq!(max_disjoint_blocks(&[0, 5, 10, 19, 20]), alloc::vec![0, 10, 20]);
        assert_eq!(max_disjoint_blocks(&[3, 1, 12]), alloc::vec![1, 12]);
    }

    #[test]
    fn gap_layout() {
        assert_eq!(gaps_between(35, &[]), alloc::vec![(0, 35)]);
        assert_eq!(gaps_between(35, &[0, 25]), alloc::vec![(10, 15)]);
        assert_eq!(gaps_between(30, &[5]), alloc::vec![(0, 5), (15, 15)]);
    }
}
