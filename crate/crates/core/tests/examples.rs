//! Worked examples with known answers.

use downset_core::classify::{lex_segment_is_optimal, nested_solution_orders};
use downset_core::graphs::{delta_sequence, SimpleGraph};
use downset_core::grid::subproduct_at;
use downset_core::symmetry::symmetrize_point;
use downset_core::{GridPoint, GridShape, OrderKind, PackedBox};

#[test]
fn subproducts() {
    let m235 = GridShape::new(vec![2, 3, 5]).unwrap();
    let a = subproduct_at(&m235, &[1, 2], &[0]).unwrap();
    assert_eq!(a.len(), 15);
    assert!(a.iter().all(|p| p[0] == 0));

    let m55 = GridShape::rect(5, 5).unwrap();
    let b = subproduct_at(&m55, &[1], &[2]).unwrap();
    assert_eq!(b, (0..5).map(|y| GridPoint::from([2, y])).collect());

    let m333 = GridShape::new(vec![3, 3, 3]).unwrap();
    let c = subproduct_at(&m333, &[0], &[1, 1]).unwrap();
    assert_eq!(c, (0..3).map(|x| GridPoint::from([x, 1, 1])).collect());
}

#[test]
fn point_symmetrizations_in_a_square() {
    let m55 = GridShape::rect(5, 5).unwrap();
    let q = PackedBox::full(&m55);
    let sym = |x, y| symmetrize_point(&q, 0, 1, &GridPoint::from([x, y])).unwrap();
    assert_eq!(sym(1, 3), GridPoint::from([3, 1]));
    assert_eq!(sym(3, 1), GridPoint::from([3, 1]));
}

#[test]
fn segment_optimality_examples() {
    assert!(lex_segment_is_optimal(3, 5, 7).unwrap());
    assert_eq!(
        nested_solution_orders(4, 4),
        vec![OrderKind::Lex, OrderKind::Colex]
    );
    assert_eq!(nested_solution_orders(3, 5), vec![OrderKind::Lex]);
    assert_eq!(nested_solution_orders(5, 3), vec![OrderKind::Colex]);
}

#[test]
fn delta_sequences() {
    let k4 = delta_sequence(&SimpleGraph::complete(4), &[0, 1, 2, 3]).unwrap();
    assert_eq!(k4.values(), &[0.0, 1.0, 2.0, 3.0]);
    let c4 = delta_sequence(&SimpleGraph::cycle(4).unwrap(), &[0, 1, 2, 3]).unwrap();
    assert_eq!(c4.values(), &[0.0, 1.0, 1.0, 2.0]);
}
