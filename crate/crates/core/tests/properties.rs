use downset_core::grid::is_downset;
use downset_core::symmetry::{reflect_point, symmetrize_set};
use downset_core::{DominationOrder, DownSet2D, GridPoint, GridShape, PackedBox, PointSet};
use proptest::prelude::*;

fn shape_and_box() -> impl Strategy<Value = (GridShape, PackedBox, usize, usize)> {
    (2usize..=3)
        .prop_flat_map(|d| prop::collection::vec(1usize..=5, d))
        .prop_flat_map(|lengths| {
            let d = lengths.len();
            let side_cap = *lengths.iter().min().unwrap();
            (Just(lengths), 1..=side_cap, 0..d, 1..d)
        })
        .prop_flat_map(|(lengths, s, c1, shift)| {
            let d = lengths.len();
            let starts: Vec<_> = lengths.iter().map(|&l| 0..=l - s).collect();
            (
                Just(lengths),
                Just(s),
                starts,
                Just(c1),
                Just((c1 + shift) % d),
            )
        })
        .prop_map(|(lengths, s, lo, c1, c2)| {
            let shape = GridShape::new(lengths).unwrap();
            let hi: Vec<usize> = lo.iter().map(|&x| x + s - 1).collect();
            let qbox =
                PackedBox::new(shape.clone(), GridPoint::new(lo), GridPoint::new(hi)).unwrap();
            (shape, qbox, c1, c2)
        })
}

fn subset_of(shape: &GridShape, bits: u64) -> PointSet {
    shape
        .points()
        .enumerate()
        .filter(|(i, _)| bits >> (i % 64) & 1 == 1)
        .map(|(_, p)| p)
        .collect()
}

proptest! {
    #[test]
    fn reflection_is_an_involution((_, qbox, c1, c2) in shape_and_box(), pick in any::<usize>()) {
        let pts: Vec<GridPoint> = qbox.points().collect();
        let f = &pts[pick % pts.len()];
        let g = reflect_point(&qbox, c1, c2, f).unwrap();
        prop_assert!(qbox.contains(&g));
        prop_assert_eq!(g.rank(), f.rank());
        prop_assert_eq!(&reflect_point(&qbox, c1, c2, &g).unwrap(), f);
    }

    #[test]
    fn symmetrization_is_idempotent((shape, qbox, c1, c2) in shape_and_box(), bits in any::<u64>()) {
        let set = subset_of(&shape, bits);
        let once = symmetrize_set(&qbox, &set, c1, c2).unwrap();
        prop_assert_eq!(once.len(), set.len());
        prop_assert_eq!(symmetrize_set(&qbox, &once, c1, c2).unwrap(), once.clone());
        let before: usize = set.iter().map(GridPoint::rank).sum();
        let after: usize = once.iter().map(GridPoint::rank).sum();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn symmetrized_points_below_the_diagonal_are_paired((shape, qbox, c1, c2) in shape_and_box(), bits in any::<u64>()) {
        let image = symmetrize_set(&qbox, &subset_of(&shape, bits), c1, c2).unwrap();
        for f in image.iter().filter(|f| qbox.contains(f)) {
            if qbox.offset(f, c1) < qbox.offset(f, c2) {
                prop_assert!(image.contains(&reflect_point(&qbox, c1, c2, f).unwrap()));
            }
        }
    }

    #[test]
    fn orders_are_total_and_indexed(lengths in prop::collection::vec(1usize..=4, 1..=3), seed in any::<u64>()) {
        let shape = GridShape::new(lengths).unwrap();
        let orders = DominationOrder::all(shape.dim());
        let order = &orders[(seed as usize) % orders.len()];
        let mut seen = vec![false; shape.size()];
        for p in shape.points() {
            let i = order.index_of(&shape, &p);
            prop_assert!(!seen[i]);
            seen[i] = true;
            prop_assert_eq!(order.point_at(&shape, i), p.clone());
        }
        for i in 1..shape.size() {
            let (a, b) = (order.point_at(&shape, i - 1), order.point_at(&shape, i));
            prop_assert_eq!(order.compare(&a, &b), std::cmp::Ordering::Less);
            prop_assert_eq!(order.compare(&b, &a), std::cmp::Ordering::Greater);
        }
        for m in 0..=shape.size() {
            let seg = order.initial_segment(&shape, m).unwrap();
            prop_assert_eq!(seg.len(), m);
            prop_assert!(is_downset(&shape, seg.points()));
        }
    }

    #[test]
    fn profiles_round_trip(l2 in 1usize..=6, raw in prop::collection::vec(0usize..=6, 1..=6)) {
        let shape = GridShape::rect(raw.len(), l2).unwrap();
        let mut profile: Vec<usize> = raw.iter().map(|&h| h.min(l2)).collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        let d = DownSet2D::new(shape.clone(), profile.clone()).unwrap();
        let pts = d.to_points();
        prop_assert_eq!(pts.len(), profile.iter().sum::<usize>());
        let back = DownSet2D::from_points(shape, &pts).unwrap();
        prop_assert_eq!(back.profile(), &profile[..]);
    }
}

#[test]
fn rejects_increasing_profiles() {
    let shape = GridShape::rect(2, 3).unwrap();
    assert!(DownSet2D::new(shape, vec![1, 2]).is_err());
}
