//! Rayon drivers over the sequential per-anchor, per-center and per-hole
//! core routines. Results are merged in index order, so they do not depend
//! on the worker count.

use rayon::prelude::*;

use khole_core::assignment::{assign_center, AssignmentLedger};
use khole_core::holes::{count_holes_at_anchor, holes_at_anchor, DEFAULT_HOLE_BUDGET};
use khole_core::layers::decompose;
use khole_core::visibility::{
    analyze_center, lemma41_check, visible_long_holes, ConvexRunPartition, Lemma41Report, PipelineReport,
};
use khole_core::{HoleCatalog, LayerDecomposition, PointSet, Result};

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// `result[k]` = number of k-holes for every `k <= kmax`.
pub fn count_holes_up_to(ps: &PointSet, kmax: usize) -> Result<Vec<u64>> {
    let per_anchor = (0..ps.len())
        .into_par_iter()
        .map(|a| count_holes_at_anchor(ps, a, kmax))
        .collect::<Result<Vec<_>>>()?;
    let mut total = vec![0u64; kmax + 1];
    for counts in per_anchor {
        for (t, c) in total.iter_mut().zip(counts) {
            *t += c;
        }
    }
    Ok(total)
}

pub fn build_catalog(ps: &PointSet, ks: &[usize]) -> Result<HoleCatalog> {
    let per_anchor = (0..ps.len())
        .into_par_iter()
        .map(|a| holes_at_anchor(ps, a, ks))
        .collect::<Result<Vec<_>>>()?;
    HoleCatalog::from_holes(per_anchor.concat(), ks, DEFAULT_HOLE_BUDGET)
}

pub fn run_assignment(ps: &PointSet, dec: &LayerDecomposition, catalog: &HoleCatalog) -> Result<AssignmentLedger> {
    let records = dec
        .block_centers()
        .into_par_iter()
        .map(|p| assign_center(ps, dec, catalog, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(AssignmentLedger::from_records(records))
}

pub fn pipeline_report(ps: &PointSet) -> Result<PipelineReport> {
    let dec = decompose(ps);
    let catalog = build_catalog(ps, &[5])?;
    let analyses = dec
        .block_centers()
        .into_par_iter()
        .map(|p| analyze_center(ps, &dec, &catalog, p))
        .collect::<Result<Vec<_>>>()?;
    let runs: Vec<ConvexRunPartition> = analyses.iter().map(|a| a.runs.clone()).collect();
    let lemma41: Vec<Lemma41Report> = visible_long_holes(ps, &runs)
        .par_iter()
        .map(|hole| lemma41_check(ps, hole, &runs))
        .collect();
    Ok(PipelineReport::assemble(ps, &dec, &catalog, analyses, &lemma41))
}

#[cfg(test)]
mod tests {
    use super::*;
    use khole_core::generators::gen_random;

    #[test]
    fn parallel_matches_sequential() {
        let ps = gen_random(40, 3, 10_000).unwrap();
        assert_eq!(
            count_holes_up_to(&ps, 6).unwrap(),
            khole_core::holes::count_holes_up_to(&ps, 6).unwrap()
        );
        let catalog = build_catalog(&ps, &[5]).unwrap();
        assert_eq!(
            catalog.holes(),
            khole_core::holes::build_catalog(&ps, &[5]).unwrap().holes()
        );
        let dec = decompose(&ps);
        assert_eq!(
            run_assignment(&ps, &dec, &catalog).unwrap(),
            khole_core::assignment::run_assignment(&ps, &dec, &catalog).unwrap()
        );
        let seq = khole_core::visibility::pipeline_report(&ps).unwrap();
        for threads in [1, 3] {
            assert_eq!(with_threads(Some(threads), || pipeline_report(&ps).unwrap()), seq);
        }
    }
}
