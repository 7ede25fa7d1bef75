use alloc::vec::Vec;

use super::*;
use crate::holes::build_catalog;
use crate::layers::decompose;

fn set(coords: &[(i64, i64)]) -> PointSet {
    PointSet::from_coords(coords).unwrap()
}

#[test]
fn radial_view_positions() {
    let ps = set(&[(0, 0), (-3, 1), (-1, 2), (1, 2), (3, 1)]);
    let view = CenterView::from_subset(&ps, &[0, 1, 2, 3, 4], 0, 0).unwrap();
    assert_eq!(view.points(), &[1, 2, 3, 4]);
    assert_eq!(view.position(3), Some(2));
    assert_eq!(view.position(0), None);
    // The chain bulges away from the center: interior angles are reflex.
    assert!(view.is_reflex_at(&ps, 1));
    assert!(view.is_reflex_at(&ps, 2));
    assert!(!view.is_reflex_at(&ps, 0));
    assert!(!view.is_reflex_at(&ps, 3));
}

#[test]
fn block_bounds() {
    let pts: Vec<(i64, i64)> = (0..12i64).map(|i| (i, i * i)).collect();
    let ps = set(&pts);
    let all: Vec<usize> = (0..12).collect();
    let view = CenterView::from_subset(&ps, &all, 0, 0).unwrap();
    let b = Block::at(&view, 1).unwrap();
    assert_eq!(b.end(), 10);
    assert_eq!(&b.members[..], &view.points()[1..11]);
    assert!(Block::at(&view, 2).is_err());
    assert!(b.overlaps(&Block::at(&view, 0).unwrap()));
}

#[test]
fn convex_position_gives_vertex_assignments() {
    // Every 5-subset of a convex set is a hole, so the center is always a vertex.
    let pts: Vec<(i64, i64)> = (0..21i64).map(|i| (i, i * i)).collect();
    let ps = set(&pts);
    let dec = decompose(&ps);
    let catalog = build_catalog(&ps, &[5]).unwrap();
    let view = CenterView::new(&ps, &dec, 0).unwrap();
    let a = assign_block(&ps, &view, &Block::at(&view, 0).unwrap(), &catalog).unwrap();
    assert_eq!(a.kind, AssignmentKind::Vertex);
    assert_eq!(a.class, AssignmentClass::GoodTrustworthy);
    assert!(catalog.hole(a.hole).contains(0));
}

#[test]
fn catalog_without_five_holes_is_rejected() {
    let pts: Vec<(i64, i64)> = (0..11i64).map(|i| (i, i * i)).collect();
    let ps = set(&pts);
    let dec = decompose(&ps);
    let catalog = build_catalog(&ps, &[4]).unwrap();
    let view = CenterView::new(&ps, &dec, 0).unwrap();
    assert!(matches!(
        assign_block(&ps, &view, &Block::at(&view, 0).unwrap(), &catalog),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn bad_sector_classification() {
    // Center far below a chain curving towards it, so the sector and the center
    // span a triangle.
    let ps = set(&[(0, -1000), (-50, 10), (-20, 2), (0, 0), (20, 2), (50, 10), (1, -1)]);
    let hole = Hole::from_vertex_set(&ps, &[1, 2, 3, 4, 5]).unwrap();
    let sector = Sector {
        center: 0,
        points: alloc::vec![1, 2, 3, 4, 5],
    };
    assert_eq!(classify(&ps, 0, &hole, &sector), AssignmentClass::Bad);
    // A sector that is not in convex position is never bad.
    let sector = Sector {
        center: 0,
        points: alloc::vec![1, 2, 3, 6, 4, 5],
    };
    assert_eq!(classify(&ps, 0, &hole, &sector), AssignmentClass::GoodDubious);
    assert_eq!(sector_point_kind(&ps, 0, &hole, 6), SectorPointKind::Nearby);
    let far = set(&[(0, -1000), (-50, 10), (-20, 2), (0, 0), (20, 2), (50, 10), (300, 5)]);
    let hole = Hole::from_vertex_set(&far, &[1, 2, 3, 4, 5]).unwrap();
    assert_eq!(sector_point_kind(&far, 0, &hole, 6), SectorPointKind::Away);
}

#[test]
fn pentagon_selection_rejects_bad_input() {
    let pts: Vec<(i64, i64)> = (0..10i64).map(|i| (i, i * i)).collect();
    assert!(matches!(
        pentagon_selection(&set(&pts), 0),
        Err(Error::PreconditionViolated(_))
    ));
    let pts: Vec<(i64, i64)> = (0..11i64).map(|i| (i, i * i)).collect();
    let out = pentagon_selection(&set(&pts), 3).unwrap();
    assert!(matches!(out, PentagonOutcome::HoleWithP(ref h) if h.contains(3)));
}
