//! Right triangles: the points `(x, y)` with `x <= y < ell`, ordered
//! coordinatewise, with orders, diagonal lattices and classification
//! inherited from the ambient square `M(ell, ell)`.

use alloc::vec::Vec;
use core::fmt;

use crate::classify::{RectClassification, RectKind};
use crate::error::{domain, Error, Result};
use crate::grid::{GridPoint, GridShape, PointSet};
use crate::order::OrderKind;
use crate::symmetry::{symmetrize_set, PackedBox};
use crate::weight::{weight_of, Weighting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleShape {
    ell: usize,
}

impl TriangleShape {
    pub fn new(ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidShape("a triangle needs ell >= 1".into()));
        }
        ell.checked_mul(ell + 1)
            .ok_or_else(|| Error::InvalidShape("point count overflows".into()))?;
        Ok(TriangleShape { ell })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The square `M(ell, ell)` containing the triangle.
    pub fn ambient(&self) -> GridShape {
        GridShape::rect(self.ell, self.ell).expect("ell is positive")
    }

    pub fn size(&self) -> usize {
        self.ell * (self.ell + 1) / 2
    }

    pub fn max_rank(&self) -> usize {
        2 * (self.ell - 1)
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        p.dim() == 2 && p[0] <= p[1] && p[1] < self.ell
    }

    /// Points sorted by `(x, y)`.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.ell).flat_map(move |x| (x..self.ell).map(move |y| GridPoint::from([x, y])))
    }

    pub fn lower_covers(&self, p: &GridPoint) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(2);
        if p[0] > 0 {
            out.push(GridPoint::from([p[0] - 1, p[1]]));
        }
        if p[1] > p[0] {
            out.push(GridPoint::from([p[0], p[1] - 1]));
        }
        out
    }

    pub fn is_downset(&self, set: &PointSet) -> bool {
        set.iter()
            .all(|p| self.contains(p) && self.lower_covers(p).iter().all(|q| set.contains(q)))
    }

    /// Points in the order `kind` restricted from the ambient square.
    pub fn ordered_points(&self, kind: OrderKind) -> Vec<GridPoint> {
        let mut pts: Vec<GridPoint> = self.points().collect();
        if kind == OrderKind::Colex {
            pts.sort_by_key(|p| (p[1], p[0]));
        }
        pts
    }
}

impl fmt::Display for TriangleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})", self.ell)
    }
}

/// A downset of a right triangle stored by column tops: column `x` holds
/// `(x, y)` for `x <= y < tops[x]`, and `tops[x] == 0` means the column is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleDownSet {
    shape: TriangleShape,
    tops: Vec<usize>,
}

impl TriangleDownSet {
    pub fn new(shape: TriangleShape, tops: Vec<usize>) -> Result<Self> {
        let ell = shape.ell;
        if tops.len() != ell {
            return Err(domain!("{} tops given for {shape}", tops.len()));
        }
        for (x, &t) in tops.iter().enumerate() {
            if t != 0 && !(x < t && t <= ell) {
                return Err(domain!(
                    "top {t} of column {x} is outside {{0}} and [{}, {ell}]",
                    x + 1
                ));
            }
            if x > 0 && t > tops[x - 1] {
                return Err(domain!(
                    "tops must be weakly decreasing, but t[{x}] = {t} > t[{}]",
                    x - 1
                ));
            }
        }
        Ok(TriangleDownSet { shape, tops })
    }

    pub fn empty(shape: TriangleShape) -> Self {
        TriangleDownSet {
            shape,
            tops: alloc::vec![0; shape.ell],
        }
    }

    pub fn full(shape: TriangleShape) -> Self {
        TriangleDownSet {
            shape,
            tops: alloc::vec![shape.ell; shape.ell],
        }
    }

    pub fn from_points(shape: TriangleShape, points: &PointSet) -> Result<Self> {
        if !shape.is_downset(points) {
            return Err(domain!("point set is not a downset of {shape}"));
        }
        let mut tops = alloc::vec![0; shape.ell];
        for p in points {
            tops[p[0]] = tops[p[0]].max(p[1] + 1);
        }
        Self::new(shape, tops)
    }

    pub fn shape(&self) -> TriangleShape {
        self.shape
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    pub fn len(&self) -> usize {
        self.tops
            .iter()
            .enumerate()
            .map(|(x, &t)| t.saturating_sub(x))
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tops[0] == 0
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        self.shape.contains(p) && p[1] < self.tops[p[0]]
    }

    pub fn to_points(&self) -> PointSet {
        self.tops
            .iter()
            .enumerate()
            .flat_map(|(x, &t)| (x..t).map(move |y| GridPoint::from([x, y])))
            .collect()
    }
}

/// The first `m` points of the induced order `kind`.
pub fn triangle_segment(
    shape: TriangleShape,
    kind: OrderKind,
    m: usize,
) -> Result<TriangleDownSet> {
    if m > shape.size() {
        return Err(domain!(
            "segment size {m} exceeds {} points of {shape}",
            shape.size()
        ));
    }
    let pts: PointSet = shape.ordered_points(kind).into_iter().take(m).collect();
    TriangleDownSet::from_points(shape, &pts)
}

/// The last diagonal point `(x, x)` of `a`.
pub fn diagonal_point(a: &TriangleDownSet) -> Result<GridPoint> {
    let x = a
        .tops
        .iter()
        .rposition(|&t| t > 0)
        .ok_or_else(|| domain!("the empty set has no diagonal point"))?;
    Ok(GridPoint::from([x, x]))
}

/// The box `{(a, b) : a <= y <= b < ell}` cornered at the diagonal point `(y, y)`.
pub fn diagonal_lattice(shape: TriangleShape, p: &GridPoint) -> Result<PackedBox> {
    if !shape.contains(p) || p[0] != p[1] {
        return Err(domain!("{p} is not a diagonal point of {shape}"));
    }
    let y = p[0];
    PackedBox::new(
        shape.ambient(),
        GridPoint::from([0, y]),
        GridPoint::from([y, shape.ell - 1]),
    )
}

pub fn diagonal_lattice_of(a: &TriangleDownSet) -> Result<PackedBox> {
    diagonal_lattice(a.shape, &diagonal_point(a)?)
}

/// Square boxes of side at least 2 that lie inside the triangle.
pub fn square_boxes(shape: TriangleShape) -> Vec<PackedBox> {
    let ell = shape.ell;
    let mut out = Vec::new();
    for s in 2..=ell {
        for a2 in s - 1..=ell - s {
            for a1 in 0..=a2 + 1 - s {
                let lo = GridPoint::from([a1, a2]);
                let hi = GridPoint::from([a1 + s - 1, a2 + s - 1]);
                out.push(PackedBox::new(shape.ambient(), lo, hi).expect("box lies in the square"));
            }
        }
    }
    out
}

/// Every classification that fits `a`, in reporting priority.
pub fn classify_triangle_all(a: &TriangleDownSet) -> Vec<RectClassification> {
    let shape = a.shape;
    let m = a.len();
    let points = a.to_points();
    let mut out = Vec::new();
    let segments: Vec<(OrderKind, PointSet)> = OrderKind::BOTH
        .iter()
        .map(|&k| {
            (
                k,
                triangle_segment(shape, k, m)
                    .expect("m is in range")
                    .to_points(),
            )
        })
        .collect();
    for (kind, seg) in &segments {
        if *seg == points {
            out.push(RectClassification::plain(RectKind::segment(*kind)));
        }
    }
    for qbox in square_boxes(shape) {
        for (kind, seg) in &segments {
            for coords in [(0, 1), (1, 0)] {
                let image = symmetrize_set(&qbox, seg, coords.0, coords.1).expect("valid box");
                if image == points && image != *seg {
                    out.push(RectClassification::symmetrized(*kind, qbox.clone(), coords));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Classifies a triangle downset; ties go to the earliest of lex segment,
/// colex segment, symmetrized lex, symmetrized colex.
pub fn classify_triangle(a: &TriangleDownSet) -> RectClassification {
    classify_triangle_all(a)
        .into_iter()
        .next()
        .unwrap_or_else(|| RectClassification::plain(RectKind::Unstructured))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentArgmax {
    Lex,
    Colex,
    Both,
}

/// The larger of the two segment weights of size `m`, and which order attains it.
pub fn best_segment_weight<W: Weighting + ?Sized>(
    shape: TriangleShape,
    w: &W,
    m: usize,
) -> Result<(f64, SegmentArgmax)> {
    let lex = weight_of(w, &triangle_segment(shape, OrderKind::Lex, m)?.to_points());
    let colex = weight_of(
        w,
        &triangle_segment(shape, OrderKind::Colex, m)?.to_points(),
    );
    Ok(if w.same(lex, colex) {
        (lex.max(colex), SegmentArgmax::Both)
    } else if lex > colex {
        (lex, SegmentArgmax::Lex)
    } else {
        (colex, SegmentArgmax::Colex)
    })
}

/// Replaces `a ∩ qbox` by the first points of `qbox` in the box-local order.
fn replace_in_box(a: &TriangleDownSet, qbox: &PackedBox, kind: OrderKind) -> PointSet {
    let mut inside: Vec<GridPoint> = qbox.points().collect();
    match kind {
        OrderKind::Lex => inside.sort(),
        OrderKind::Colex => inside.sort_by_key(|p| (p[1], p[0])),
    }
    let mut points = a.to_points();
    let k = points.iter().filter(|p| qbox.contains(p)).count();
    points.retain(|p| !qbox.contains(p));
    points.extend(inside.into_iter().take(k));
    points
}

fn rectify_step(a: &TriangleDownSet, kind: OrderKind) -> Result<Option<TriangleDownSet>> {
    if a.is_empty() {
        return Ok(None);
    }
    let d = diagonal_point(a)?[0];
    let qbox = match kind {
        OrderKind::Lex => diagonal_lattice(a.shape, &GridPoint::from([d, d]))?,
        OrderKind::Colex => {
            if d + 1 == a.shape.ell {
                return Ok(None);
            }
            diagonal_lattice(a.shape, &GridPoint::from([d + 1, d + 1]))?
        }
    };
    let next = TriangleDownSet::from_points(a.shape, &replace_in_box(a, &qbox, kind))?;
    Ok(if next == *a { None } else { Some(next) })
}

/// Repeatedly rewrites `a` inside a diagonal lattice until nothing changes.
///
/// Lex steps use the lattice at the diagonal point and put the lex segment of
/// the box there. Colex steps use the lattice at the first diagonal point
/// outside `a` and put the colex segment there. The first entry is `a`; the
/// last is the initial segment of `kind` of size `|a|`.
pub fn diagonal_rectify(a: &TriangleDownSet, kind: OrderKind) -> Vec<TriangleDownSet> {
    let mut seq = alloc::vec![a.clone()];
    while let Some(next) =
        rectify_step(seq.last().expect("non-empty"), kind).expect("steps stay inside the triangle")
    {
        seq.push(next);
    }
    seq
}

/// Whether a rectification step from a set with diagonal point `(x, x)` is
/// weight-nondecreasing for every rank-increasing, rank-constant weight.
pub fn rectification_is_monotone(ell: usize, x: usize, kind: OrderKind) -> bool {
    match kind {
        OrderKind::Lex => 2 * x < ell,
        OrderKind::Colex => 2 * x + 3 >= ell,
    }
}

/// A packed box observed to carry an optimal symmetrized segment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CatalogueEntry {
    pub m: usize,
    pub base: OrderKind,
    pub qbox: PackedBox,
    pub coords: (usize, usize),
}

/// Every (size, segment, box, coordinates) whose symmetrization is an
/// optimal downset of `R(ell)` under the standard weight, found by search.
pub fn triangle_box_catalogue(ell: usize) -> Result<Vec<CatalogueEntry>> {
    let shape = TriangleShape::new(ell)?;
    let w = crate::weight::RankWeight::standard(shape.max_rank());
    let optima = crate::oracle::optimal_by_size(&crate::oracle::Poset::Triangle(shape), &w)?;
    let mut out = Vec::new();
    for opt in optima {
        for set in &opt.sets {
            let a = TriangleDownSet::from_points(shape, set)?;
            for c in classify_triangle_all(&a) {
                let base = match c.kind {
                    RectKind::SymOfLex => OrderKind::Lex,
                    RectKind::SymOfColex => OrderKind::Colex,
                    _ => continue,
                };
                out.push(CatalogueEntry {
                    m: opt.size,
                    base,
                    qbox: c.qbox.expect("symmetrizations carry a box"),
                    coords: c.coords.expect("symmetrizations carry coordinates"),
                });
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::RankWeight;
    use alloc::vec;

    fn pts(list: &[[usize; 2]]) -> PointSet {
        list.iter().map(|&p| GridPoint::from(p)).collect()
    }

    fn r(ell: usize) -> TriangleShape {
        TriangleShape::new(ell).unwrap()
    }

    fn all_downsets(shape: TriangleShape) -> Vec<TriangleDownSet> {
        let mut out = vec![TriangleDownSet::empty(shape)];
        let mut tops = vec![0usize; shape.ell()];
        fn rec(
            shape: TriangleShape,
            x: usize,
            tops: &mut Vec<usize>,
            out: &mut Vec<TriangleDownSet>,
        ) {
            let bound = if x == 0 { shape.ell() } else { tops[x - 1] };
            for t in x + 1..=bound {
                tops[x] = t;
                out.push(TriangleDownSet::new(shape, tops.clone()).unwrap());
                if x + 1 < shape.ell() {
                    rec(shape, x + 1, tops, out);
                }
                tops[x] = 0;
            }
        }
        rec(shape, 0, &mut tops, &mut out);
        out
    }

    #[test]
    fn shape_basics() {
        assert_eq!(r(4).size(), 10);
        assert_eq!(r(4).points().count(), 10);
        assert!(TriangleShape::new(0).is_err());
        assert!(r(3).contains(&GridPoint::from([1, 2])));
        assert!(!r(3).contains(&GridPoint::from([2, 1])));
    }

    #[test]
    fn tops_validation() {
        assert!(TriangleDownSet::new(r(3), vec![3, 2, 0]).is_ok());
        assert!(TriangleDownSet::new(r(3), vec![3, 1, 0]).is_err());
        assert!(TriangleDownSet::new(r(3), vec![2, 3, 0]).is_err());
        assert!(TriangleDownSet::new(r(3), vec![3, 0, 3]).is_err());
        assert!(TriangleDownSet::from_points(r(3), &pts(&[[0, 1]])).is_err());
    }

    #[test]
    fn downset_count_is_power_of_two() {
        for ell in 1..=7 {
            let all = all_downsets(r(ell));
            assert_eq!(all.len(), 1 << ell);
            for a in &all {
                let p = a.to_points();
                assert!(r(ell).is_downset(&p));
                assert_eq!(&TriangleDownSet::from_points(r(ell), &p).unwrap(), a);
                assert_eq!(a.len(), p.len());
            }
        }
    }

    #[test]
    fn diagonal_point_examples() {
        let a = TriangleDownSet::from_points(r(3), &pts(&[[0, 0]])).unwrap();
        assert_eq!(diagonal_point(&a).unwrap(), GridPoint::from([0, 0]));
        let b = TriangleDownSet::from_points(r(3), &pts(&[[0, 0], [0, 1], [1, 1]])).unwrap();
        assert_eq!(diagonal_point(&b).unwrap(), GridPoint::from([1, 1]));
        assert_eq!(
            diagonal_point(&TriangleDownSet::full(r(5))).unwrap(),
            GridPoint::from([4, 4])
        );
        assert!(diagonal_point(&TriangleDownSet::empty(r(5))).is_err());
    }

    #[test]
    fn diagonal_lattice_examples() {
        let q = diagonal_lattice(r(3), &GridPoint::from([0, 0])).unwrap();
        assert_eq!(
            q.points().collect::<PointSet>(),
            pts(&[[0, 0], [0, 1], [0, 2]])
        );
        let q = diagonal_lattice(r(4), &GridPoint::from([3, 3])).unwrap();
        assert_eq!(
            q.points().collect::<PointSet>(),
            pts(&[[0, 3], [1, 3], [2, 3], [3, 3]])
        );
        for x in 0..10 {
            let q = diagonal_lattice(r(10), &GridPoint::from([x, x])).unwrap();
            assert_eq!(q.size(), (x + 1) * (10 - x));
            assert!(q.points().all(|p| r(10).contains(&p)));
        }
        assert!(diagonal_lattice(r(4), &GridPoint::from([1, 2])).is_err());
    }

    #[test]
    fn classify_examples() {
        let a = TriangleDownSet::from_points(r(3), &pts(&[[0, 0], [0, 1], [0, 2]])).unwrap();
        assert_eq!(classify_triangle(&a).kind, RectKind::LexSegment);
        let b = TriangleDownSet::from_points(r(3), &pts(&[[0, 0], [0, 1], [1, 1]])).unwrap();
        assert_eq!(classify_triangle(&b).kind, RectKind::ColexSegment);
    }

    #[test]
    fn square_boxes_fit() {
        for ell in 1..=6 {
            let shape = r(ell);
            for q in square_boxes(shape) {
                assert_eq!(q.side(0), q.side(1));
                assert!(q.points().all(|p| shape.contains(&p)));
            }
        }
        assert!(square_boxes(r(1)).is_empty());
        assert_eq!(square_boxes(r(3)).len(), 1);
    }

    #[test]
    fn best_segment_examples() {
        let w = RankWeight::standard(4);
        assert_eq!(
            best_segment_weight(r(3), &w, 0).unwrap(),
            (0.0, SegmentArgmax::Both)
        );
        assert_eq!(
            best_segment_weight(r(3), &w, 3).unwrap(),
            (3.0, SegmentArgmax::Both)
        );
        let total = weight_of(&w, &TriangleDownSet::full(r(3)).to_points());
        assert_eq!(
            best_segment_weight(r(3), &w, 6).unwrap(),
            (total, SegmentArgmax::Both)
        );
        assert!(best_segment_weight(r(3), &w, 7).is_err());
    }

    #[test]
    fn rectify_reaches_segments() {
        for ell in 1..=7 {
            let shape = r(ell);
            for a in all_downsets(shape) {
                for kind in OrderKind::BOTH {
                    let seq = diagonal_rectify(&a, kind);
                    assert!(seq.iter().all(|s| s.len() == a.len()));
                    assert_eq!(
                        seq.last().unwrap(),
                        &triangle_segment(shape, kind, a.len()).unwrap()
                    );
                    if kind == OrderKind::Lex && !a.is_empty() {
                        let diag: Vec<usize> =
                            seq.iter().map(|s| diagonal_point(s).unwrap()[0]).collect();
                        assert!(diag.windows(2).all(|d| d[0] >= d[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn catalogue_small() {
        assert!(triangle_box_catalogue(2).unwrap().is_empty());
        let cat = triangle_box_catalogue(5).unwrap();
        assert!(cat.iter().all(|e| e.qbox.side(0) == e.qbox.side(1)));
        assert!(cat.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn rectify_fixed_point() {
        let seg = triangle_segment(r(5), OrderKind::Lex, 7).unwrap();
        assert_eq!(diagonal_rectify(&seg, OrderKind::Lex).len(), 1);
    }

    #[test]
    fn lex_rectify_monotone_at_small_diagonal() {
        let shape = r(6);
        let w = RankWeight::standard(shape.max_rank());
        let mut seen = false;
        for a in all_downsets(shape) {
            if a.is_empty() || diagonal_point(&a).unwrap()[0] != 2 {
                continue;
            }
            seen = true;
            let seq = diagonal_rectify(&a, OrderKind::Lex);
            let ws: Vec<f64> = seq.iter().map(|s| weight_of(&w, &s.to_points())).collect();
            assert!(ws.windows(2).all(|p| p[0] <= p[1]), "{:?}", a.tops());
        }
        assert!(seen);
    }

    #[test]
    fn lex_rectify_can_lose_at_half_diagonal() {
        // colex segment of size 6 in R(4) has diagonal point (2,2) and outweighs lex
        let shape = r(4);
        let w = RankWeight::standard(shape.max_rank());
        let a = triangle_segment(shape, OrderKind::Colex, 6).unwrap();
        assert_eq!(diagonal_point(&a).unwrap()[0], 2);
        let seq = diagonal_rectify(&a, OrderKind::Lex);
        let first = weight_of(&w, &seq[0].to_points());
        let last = weight_of(&w, &seq.last().unwrap().to_points());
        assert_eq!((first, last), (12.0, 11.0));
        assert!(!rectification_is_monotone(4, 2, OrderKind::Lex));
    }
}
