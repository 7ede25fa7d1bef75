mod common;

use itertools::Itertools;
use khole_core::assignment::*;
use khole_core::generators::gen_random;
use khole_core::holes::{build_catalog, enumerate_brute, Hole, HoleCatalog};
use khole_core::layers::{decompose, LayerDecomposition};
use khole_core::{Error, PointSet};
use proptest::prelude::*;

/// Class of an anchored hole recomputed with the triangle oracle.
fn oracle_class(ps: &PointSet, p: usize, hole: &[usize], sector: &[usize]) -> AssignmentClass {
    let with_p = |pts: &[usize]| {
        let mut v = pts.to_vec();
        v.push(p);
        v
    };
    if common::hull_size(ps, sector) == sector.len() && common::hull_size(ps, &with_p(sector)) == 3 {
        AssignmentClass::Bad
    } else if common::hull_size(ps, &with_p(hole)) == 3 {
        AssignmentClass::GoodDubious
    } else {
        AssignmentClass::GoodTrustworthy
    }
}

/// Rechecks one assignment against brute-force recomputation of the rules.
fn check_assignment(ps: &PointSet, view: &CenterView, brute5: &[Hole], catalog: &HoleCatalog, a: &Assignment) {
    let p = view.center;
    let block = &a.block;
    assert_eq!(&block.members[..], &view.points()[block.start..block.start + BLOCK_LEN]);
    for w in block.members.windows(2) {
        assert_eq!(common::side(ps[p], ps[w[0]], ps[w[1]]), -1, "block not clockwise");
    }
    let hole = catalog.hole(a.hole);
    assert_eq!(hole.k(), 5);
    assert!(common::is_hole(ps, hole.vertices()));
    let vertex_oracle = brute5
        .iter()
        .filter(|h| h.contains(p) && block.members.iter().any(|&b| h.contains(b)))
        .min();
    match a.kind {
        AssignmentKind::Vertex => {
            assert_eq!(Some(hole), vertex_oracle);
            assert_eq!(a.class, AssignmentClass::GoodTrustworthy);
            assert_eq!(a.anchors, None);
        }
        AssignmentKind::Anchored => {
            assert_eq!(vertex_oracle, None);
            let (u, v) = a.anchors.unwrap();
            assert!(u < v && hole.contains(u) && hole.contains(v));
            assert!(common::triangle_empty(ps, p, u, v));
            assert!(hole.vertices().iter().all(|x| block.members.contains(x)));
            // Brute candidate family and priority.
            let mut sorted = block.members;
            sorted.sort_unstable();
            let mut best: Option<(AssignmentClass, Vec<usize>)> = None;
            for subset in sorted.iter().copied().combinations(5) {
                if !common::is_hole(ps, &subset) {
                    continue;
                }
                let anchors = subset
                    .iter()
                    .tuple_combinations()
                    .find(|&(&x, &y)| common::triangle_empty(ps, p, x, y));
                let Some((&x, &y)) = anchors else { continue };
                let h = Hole::from_vertex_set(ps, &subset).unwrap();
                let pos: Vec<usize> = subset.iter().map(|&q| view.position(q).unwrap()).collect();
                let (lo, hi) = (*pos.iter().min().unwrap(), *pos.iter().max().unwrap());
                let sector = &view.points()[lo..=hi];
                assert!(sector.len() <= BLOCK_LEN);
                let class = oracle_class(ps, p, &subset, sector);
                if h == *hole {
                    assert_eq!(a.anchors, Some((x, y)));
                    assert_eq!(a.class, class);
                    let near = sector
                        .iter()
                        .filter(|&&q| !h.contains(q))
                        .filter(|&&q| sector_point_kind(ps, p, &h, q) == SectorPointKind::Nearby)
                        .count();
                    assert!(near <= 5);
                }
                let key = (class, h.vertices().to_vec());
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
            let (class, vertices) = best.expect("family is empty");
            assert_eq!(a.class, class);
            assert_eq!(hole.vertices(), &vertices[..]);
        }
    }
}

fn check_center(
    ps: &PointSet,
    dec: &LayerDecomposition,
    catalog: &HoleCatalog,
    brute5: &[Hole],
    record: &CenterRecord,
) {
    let view = CenterView::new(ps, dec, record.center).unwrap();
    let sel = &record.selection;
    for a in &sel.assignments {
        check_assignment(ps, &view, brute5, catalog, a);
    }
    for (x, y) in sel.blocks().collect::<Vec<_>>().into_iter().tuple_combinations() {
        assert!(!x.overlaps(y));
    }
    assert!(sel.meets_block_lower_bound());
    assert!(sel.gaps_are_convex(ps, &view));
    // Every selected good block really is good, and the count is optimal.
    let windows = window_assignments(ps, &view, catalog).unwrap();
    let good: Vec<bool> = windows.iter().map(|a| a.is_good()).collect();
    assert_eq!(sel.selected_good.len(), max_disjoint_oracle(&good));
    assert!(sel.good_count() >= sel.selected_good.len());
    assert!(record.max_multiplicity() <= 4);
    assert!(record.distinct_holes().len() >= sel.block_count().div_ceil(4));
}

/// Largest set of pairwise disjoint good starts, by exhaustive branching.
fn max_disjoint_oracle(good: &[bool]) -> usize {
    fn rec(good: &[bool], from: usize) -> usize {
        let Some(s) = (from..good.len()).find(|&s| good[s]) else {
            return 0;
        };
        rec(good, s + 1).max(1 + rec(good, s + BLOCK_LEN))
    }
    rec(good, 0)
}

fn check_set(ps: &PointSet) {
    let dec = decompose(ps);
    let catalog = build_catalog(ps, &[5]).unwrap();
    let brute5 = enumerate_brute(ps, 5).unwrap();
    let ledger = run_assignment(ps, &dec, &catalog).unwrap();
    assert_eq!(ledger.records().len(), dec.block_centers().len());
    for record in ledger.records() {
        check_center(ps, &dec, &catalog, &brute5, record);
    }
    assert!(ledger.max_nonvertex_per_layer() <= 40);
    for &hole in ledger.hole_stats().keys() {
        let report = lemma31_partition(ps, &ledger, hole);
        assert!(report.classes.len() <= 20);
        assert!(report.all_convex());
    }
    assert_eq!(ledger, run_assignment(ps, &dec, &catalog).unwrap());
}

#[test]
fn random_sets_satisfy_assignment_rules() {
    for seed in 0..3 {
        check_set(&gen_random(30, seed, 10_000).unwrap());
    }
}

#[test]
fn fan_sets_exercise_anchored_assignments() {
    let mut anchored = 0;
    let mut bad = 0;
    for seed in 0..6 {
        for noise in [0, 30, 150] {
            let ps = common::fan(24, seed, noise);
            check_set(&ps);
            let dec = decompose(&ps);
            let catalog = build_catalog(&ps, &[5]).unwrap();
            let ledger = run_assignment(&ps, &dec, &catalog).unwrap();
            anchored += ledger
                .assignments()
                .filter(|a| a.kind == AssignmentKind::Anchored)
                .count();
            bad += ledger.assignments().filter(|a| !a.is_good()).count();
        }
    }
    assert!(anchored > 0 && bad > 0, "anchored {anchored} bad {bad}");
}

#[test]
fn smooth_fan_center_gets_only_bad_blocks() {
    let ps = common::fan(20, 1, 0);
    let dec = decompose(&ps);
    let catalog = build_catalog(&ps, &[5]).unwrap();
    let record = assign_center(&ps, &dec, &catalog, 0).unwrap();
    assert_eq!(record.selection.block_count(), 2);
    assert_eq!(record.good_count(), 0);
    assert!(record.assignments().iter().all(|a| a.kind == AssignmentKind::Anchored));
}

#[test]
fn centers_beyond_the_middle_layers_are_rejected() {
    let ps = gen_random(40, 5, 10_000).unwrap();
    let dec = decompose(&ps);
    let catalog = build_catalog(&ps, &[5]).unwrap();
    let deep = (0..ps.len()).find(|&q| dec.layer_of(q) >= dec.k_mid()).unwrap();
    assert!(matches!(
        assign_center(&ps, &dec, &catalog, deep),
        Err(Error::PreconditionViolated(_))
    ));
}

/// Eleven points with the center far below ten chain points, redrawn until
/// the angle at the middle of the window is reflex.
fn reflex_window(seed: u64) -> (PointSet, CenterView) {
    (0..)
        .map(|i| common::fan(11, seed.wrapping_mul(1000).wrapping_add(i), 400))
        .map(|ps| {
            let all: Vec<usize> = (0..ps.len()).collect();
            let view = CenterView::from_subset(&ps, &all, 0, 0).unwrap();
            (ps, view)
        })
        .find(|(ps, view)| view.is_reflex_at(ps, 5))
        .unwrap()
}

#[test]
fn reflex_windows_contain_a_good_block() {
    let mut anchored = 0;
    for seed in 0..500 {
        let (ps, view) = reflex_window(seed);
        let catalog = build_catalog(&ps, &[5]).unwrap();
        let a = find_good_block(&ps, &view, 0, &catalog).unwrap();
        assert!(a.is_good());
        assert!(a.block.start <= 1);
        anchored += usize::from(a.kind == AssignmentKind::Anchored);
    }
    assert!(anchored > 0);
}

#[test]
fn convex_middle_window_is_rejected() {
    let ps = common::fan(11, 2, 0);
    let all: Vec<usize> = (0..ps.len()).collect();
    let view = CenterView::from_subset(&ps, &all, 0, 0).unwrap();
    let catalog = build_catalog(&ps, &[5]).unwrap();
    assert!(!view.is_reflex_at(&ps, 5));
    assert!(matches!(
        find_good_block(&ps, &view, 0, &catalog),
        Err(Error::PreconditionViolated(_))
    ));
}

fn check_pentagon(ps: &PointSet, p: usize) -> bool {
    let out = pentagon_selection(ps, p).unwrap();
    let hole = out.hole();
    assert_eq!(hole.k(), 5);
    assert!(common::is_hole(ps, hole.vertices()));
    match out {
        PentagonOutcome::HoleWithP(ref h) => {
            assert!(h.contains(p));
            false
        }
        PentagonOutcome::Anchored { ref hole, a, b } => {
            assert!(!hole.contains(p) && hole.contains(a) && hole.contains(b));
            assert!(common::triangle_empty(ps, p, a, b));
            true
        }
    }
}

#[test]
fn pentagon_selection_without_hole_through_center() {
    // With a smooth chain bending towards the center no 5-hole uses it.
    let ps = common::fan(10, 4, 0);
    let brute = enumerate_brute(&ps, 5).unwrap();
    assert!(brute.iter().all(|h| !h.contains(0)));
    assert!(check_pentagon(&ps, 0));
    let mut avoiding = 0;
    for seed in 0..200 {
        let ps = common::fan(10, seed, 300);
        if enumerate_brute(&ps, 5).unwrap().iter().all(|h| !h.contains(0)) {
            avoiding += 1;
            assert!(check_pentagon(&ps, 0));
        }
    }
    assert!(avoiding > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pentagon_selection_outcome_is_verified(seed in any::<u64>(), pick in any::<usize>()) {
        let ps = common::uniform(11, seed, 1000);
        let all: Vec<usize> = (0..11).collect();
        let hull = khole_core::geom::hull_indices(&ps, &all);
        check_pentagon(&ps, hull[pick % hull.len()]);
    }
}
