use downset_core::oracle::{optimal_by_size, DownsetFamily, Poset};
use downset_core::triangle::{
    best_segment_weight, diagonal_point, diagonal_rectify, rectification_is_monotone,
    triangle_segment, SegmentArgmax,
};
use downset_core::{GridPoint, OrderKind, RankWeight, TriangleDownSet, TriangleShape};

fn weights(shape: TriangleShape) -> [RankWeight; 3] {
    let r = shape.max_rank();
    [
        RankWeight::standard(r),
        RankWeight::squares(r),
        RankWeight::powers_of_two(r),
    ]
}

fn weigh(w: &RankWeight, a: &TriangleDownSet) -> f64 {
    a.to_points().iter().map(|p| w.at(p.rank())).sum()
}

fn all_downsets(shape: TriangleShape) -> Vec<TriangleDownSet> {
    DownsetFamily::new(Poset::Triangle(shape))
        .unwrap()
        .iter_points()
        .map(|s| TriangleDownSet::from_points(shape, &s).unwrap())
        .collect()
}

#[test]
fn rectification_reaches_the_segment() {
    for ell in 1..=8 {
        let shape = TriangleShape::new(ell).unwrap();
        for a in all_downsets(shape) {
            for kind in OrderKind::BOTH {
                let seq = diagonal_rectify(&a, kind);
                assert!(seq.iter().all(|s| s.len() == a.len()));
                assert_eq!(
                    seq.last().unwrap(),
                    &triangle_segment(shape, kind, a.len()).unwrap(),
                    "R({ell}) {a:?} {kind}"
                );
            }
        }
    }
}

#[test]
fn steps_satisfying_the_condition_never_lose_weight() {
    let mut checked = 0;
    for ell in 1..=8 {
        let shape = TriangleShape::new(ell).unwrap();
        for a in all_downsets(shape) {
            for kind in OrderKind::BOTH {
                let seq = diagonal_rectify(&a, kind);
                for pair in seq.windows(2) {
                    let x = diagonal_point(&pair[0]).unwrap()[0];
                    if kind == OrderKind::Lex {
                        assert!(diagonal_point(&pair[1]).unwrap()[0] <= x);
                    }
                    if rectification_is_monotone(ell, x, kind) {
                        checked += 1;
                        for w in weights(shape) {
                            assert!(
                                weigh(&w, &pair[1]) >= weigh(&w, &pair[0]),
                                "R({ell}) {:?} {kind}",
                                pair[0]
                            );
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn lex_condition_is_sharp_in_r4() {
    let shape = TriangleShape::new(4).unwrap();
    let colex = triangle_segment(shape, OrderKind::Colex, 6).unwrap();
    assert_eq!(diagonal_point(&colex).unwrap(), GridPoint::from([2, 2]));
    assert!(!rectification_is_monotone(4, 2, OrderKind::Lex));
    let seq = diagonal_rectify(&colex, OrderKind::Lex);
    let w = RankWeight::standard(shape.max_rank());
    assert_eq!(weigh(&w, &seq[0]), 12.0);
    assert_eq!(weigh(&w, &seq[1]), 11.0);
}

#[test]
fn best_segment_matches_the_oracle() {
    for ell in 1..=8 {
        let shape = TriangleShape::new(ell).unwrap();
        for w in weights(shape) {
            for opt in optimal_by_size(&Poset::Triangle(shape), &w).unwrap() {
                let (best, arg) = best_segment_weight(shape, &w, opt.size).unwrap();
                assert_eq!(best, opt.max_weight, "R({ell}) m={}", opt.size);
                let lex = weigh(
                    &w,
                    &triangle_segment(shape, OrderKind::Lex, opt.size).unwrap(),
                );
                let colex = weigh(
                    &w,
                    &triangle_segment(shape, OrderKind::Colex, opt.size).unwrap(),
                );
                let expected = match lex.partial_cmp(&colex).unwrap() {
                    std::cmp::Ordering::Equal => SegmentArgmax::Both,
                    std::cmp::Ordering::Greater => SegmentArgmax::Lex,
                    std::cmp::Ordering::Less => SegmentArgmax::Colex,
                };
                assert_eq!(arg, expected);
            }
        }
    }
}
