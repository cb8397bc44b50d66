//! Structure of optimal downsets in a product of two chains.
//!
//! Every optimal downset under a rank-constant, rank-increasing weight is an
//! initial segment of lex or colex, or the symmetrization of such a segment
//! about a square packed box. The boxes are determined by the segment:
//!
//! * tail run: the segment ends with a partial line of `p` points along the
//!   minor coordinate; the `p x p` box sitting on that run at the bottom edge.
//! * gap run: the first missing line lacks its top `p` points; the `p x p`
//!   box ending at that gap along the top edge.
//!
//! Each box applies only when `0 < p - 1 <= q`, with `q` the room left along
//! the major coordinate (see [`predicted_packed_box`]).

use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::grid::{is_downset, DownSet2D, GridPoint, GridShape, PointSet};
use crate::order::{segment_2d, OrderKind};
use crate::symmetry::{symmetrize_set, PackedBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RectKind {
    LexSegment,
    ColexSegment,
    SymOfLex,
    SymOfColex,
    Unstructured,
}

impl RectKind {
    pub fn name(self) -> &'static str {
        match self {
            RectKind::LexSegment => "LexSegment",
            RectKind::ColexSegment => "ColexSegment",
            RectKind::SymOfLex => "SymOfLex",
            RectKind::SymOfColex => "SymOfColex",
            RectKind::Unstructured => "Unstructured",
        }
    }

    pub fn segment(kind: OrderKind) -> Self {
        match kind {
            OrderKind::Lex => RectKind::LexSegment,
            OrderKind::Colex => RectKind::ColexSegment,
        }
    }

    pub fn symmetrization(kind: OrderKind) -> Self {
        match kind {
            OrderKind::Lex => RectKind::SymOfLex,
            OrderKind::Colex => RectKind::SymOfColex,
        }
    }
}

/// Result of classifying a downset. `qbox` and `coords` are present exactly
/// for the symmetrization kinds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectClassification {
    pub kind: RectKind,
    pub qbox: Option<PackedBox>,
    pub coords: Option<(usize, usize)>,
}

impl RectClassification {
    pub fn plain(kind: RectKind) -> Self {
        RectClassification {
            kind,
            qbox: None,
            coords: None,
        }
    }

    pub fn symmetrized(base: OrderKind, qbox: PackedBox, coords: (usize, usize)) -> Self {
        RectClassification {
            kind: RectKind::symmetrization(base),
            qbox: Some(qbox),
            coords: Some(coords),
        }
    }

    pub fn is_structured(&self) -> bool {
        self.kind != RectKind::Unstructured
    }
}

/// Which of the two candidate boxes of a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoxVariant {
    /// Box on the partial line holding the last point of the segment.
    TailRun,
    /// Box on the gap above the first point outside the segment.
    GapRun,
}

impl BoxVariant {
    pub const BOTH: [BoxVariant; 2] = [BoxVariant::TailRun, BoxVariant::GapRun];
}

/// Box arithmetic for the gap-run case.
///
/// `Literal` takes the bounds `f(b)+1 ..= l_b-1` and `f(a)-p-1 ..= f(a)`
/// verbatim; the resulting box is never square. `Reconciled` uses
/// `f(b) ..= l_b-1` and `f(a)-p+1 ..= f(a)`, which is the `p x p` box and is
/// the reading certified against exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxReading {
    Literal,
    Reconciled,
}

fn rect_dims(shape: &GridShape) -> Result<(usize, usize)> {
    if shape.dim() != 2 {
        return Err(Error::InvalidShape(alloc::format!(
            "{shape} is not two-dimensional"
        )));
    }
    Ok((shape.len(0), shape.len(1)))
}

/// `(major, minor)` coordinates of an order: lex compares coordinate 0 first.
fn axes(kind: OrderKind) -> (usize, usize) {
    match kind {
        OrderKind::Lex => (0, 1),
        OrderKind::Colex => (1, 0),
    }
}

fn point(major: usize, a: usize, b: usize) -> GridPoint {
    if major == 0 {
        GridPoint::from([a, b])
    } else {
        GridPoint::from([b, a])
    }
}

/// Candidate packed box for symmetrizing the size-`m` segment of `kind`,
/// using the reconciled arithmetic.
pub fn predicted_packed_box(
    shape: &GridShape,
    kind: OrderKind,
    m: usize,
    variant: BoxVariant,
) -> Option<PackedBox> {
    predicted_packed_box_with(shape, kind, m, variant, BoxReading::Reconciled)
}

pub fn predicted_packed_box_with(
    shape: &GridShape,
    kind: OrderKind,
    m: usize,
    variant: BoxVariant,
    reading: BoxReading,
) -> Option<PackedBox> {
    let (l1, l2) = rect_dims(shape).ok()?;
    if m > l1 * l2 {
        return None;
    }
    let order = kind.order(2);
    let segment = segment_2d(shape, kind, m).ok()?.to_points();
    let (a, b) = axes(kind);
    let (la, lb) = (shape.len(a), shape.len(b));
    match variant {
        BoxVariant::TailRun => {
            let f = order.point_at(shape, m.checked_sub(1)?);
            let p = shape
                .points()
                .filter(|g| g[a] == f[a] && segment.contains(g))
                .count();
            let q = shape
                .points()
                .filter(|g| g[b] == 0 && !segment.contains(g))
                .count();
            if !(0 < p - 1 && p - 1 <= q) {
                return None;
            }
            let lo = point(a, f[a], 0);
            let hi = point(a, f[a] + p - 1, f[b]);
            PackedBox::new(shape.clone(), lo, hi).ok()
        }
        BoxVariant::GapRun => {
            if m == l1 * l2 {
                return None;
            }
            let f = order.point_at(shape, m);
            let p = shape
                .points()
                .filter(|g| g[a] == f[a] && !segment.contains(g))
                .count();
            let q = shape
                .points()
                .filter(|g| g[b] == lb - 1 && segment.contains(g))
                .count();
            if !(p >= 2 && p - 1 <= q) {
                return None;
            }
            let (lo_a, lo_b) = match reading {
                BoxReading::Literal => (f[a].checked_sub(p + 1)?, f[b] + 1),
                BoxReading::Reconciled => (f[a].checked_sub(p - 1)?, f[b]),
            };
            if lo_b > lb - 1 || f[a] >= la {
                return None;
            }
            let lo = point(a, lo_a, lo_b);
            let hi = point(a, f[a], lb - 1);
            PackedBox::new(shape.clone(), lo, hi).ok()
        }
    }
}

fn is_square(qbox: &PackedBox) -> bool {
    qbox.side(0) == qbox.side(1)
}

type Symmetrization = (PointSet, PackedBox, (usize, usize));

/// Downsets obtained by symmetrizing the size-`m` segment of `kind` about
/// its predicted boxes, each with the box and coordinates used.
fn predicted_symmetrizations(
    shape: &GridShape,
    kind: OrderKind,
    m: usize,
    reading: BoxReading,
) -> Result<Vec<Symmetrization>> {
    let segment = segment_2d(shape, kind, m)?.to_points();
    let mut out = Vec::new();
    for variant in BoxVariant::BOTH {
        let Some(qbox) = predicted_packed_box_with(shape, kind, m, variant, reading) else {
            continue;
        };
        if !is_square(&qbox) {
            continue;
        }
        for coords in [(0, 1), (1, 0)] {
            let image = symmetrize_set(&qbox, &segment, coords.0, coords.1)?;
            if image != segment && is_downset(shape, &image) {
                out.push((image, qbox.clone(), coords));
            }
        }
    }
    Ok(out)
}

/// Every classification that fits `a`, in reporting priority.
pub fn classify_rect_all(a: &DownSet2D) -> Vec<RectClassification> {
    let shape = a.shape();
    let m = a.len();
    let points = a.to_points();
    let mut out = Vec::new();
    for kind in OrderKind::BOTH {
        if segment_2d(shape, kind, m).is_ok_and(|s| s == *a) {
            out.push(RectClassification::plain(RectKind::segment(kind)));
        }
    }
    for kind in OrderKind::BOTH {
        let syms =
            predicted_symmetrizations(shape, kind, m, BoxReading::Reconciled).unwrap_or_default();
        for (image, qbox, coords) in syms {
            if image == points {
                out.push(RectClassification::symmetrized(kind, qbox, coords));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Classifies a downset of a rectangle; ties go to the earliest of
/// lex segment, colex segment, symmetrized lex, symmetrized colex.
pub fn classify_rect(a: &DownSet2D) -> RectClassification {
    classify_rect_all(a)
        .into_iter()
        .next()
        .unwrap_or_else(|| RectClassification::plain(RectKind::Unstructured))
}

fn check_size(l1: usize, l2: usize, m: usize) -> Result<()> {
    if l1 == 0 || l2 == 0 {
        return Err(Error::InvalidShape(alloc::format!(
            "M({l1},{l2}) has an empty side"
        )));
    }
    if m > l1 * l2 {
        return Err(domain!(
            "size {m} exceeds {} points of M({l1},{l2})",
            l1 * l2
        ));
    }
    Ok(())
}

/// Whether the size-`m` segment of the order on the shorter side's chain is
/// optimal when the rectangle is `short x long` along the order's axes.
fn minority_segment_optimal(short: usize, long: usize, m: usize) -> bool {
    m <= short || m >= short * (long - 1) || (short + 1 == long && m.is_multiple_of(short))
}

/// Closed-form optimality of the colex segment of size `m` in `M(l1, l2)`.
pub fn colex_segment_is_optimal(l1: usize, l2: usize, m: usize) -> Result<bool> {
    check_size(l1, l2, m)?;
    Ok(if l1 == 1 || l2 == 1 || l1 >= l2 {
        true
    } else {
        minority_segment_optimal(l1, l2, m)
    })
}

/// Closed-form optimality of the lex segment of size `m` in `M(l1, l2)`.
pub fn lex_segment_is_optimal(l1: usize, l2: usize, m: usize) -> Result<bool> {
    check_size(l1, l2, m)?;
    Ok(if l1 == 1 || l2 == 1 || l1 <= l2 {
        true
    } else {
        minority_segment_optimal(l2, l1, m)
    })
}

pub fn segment_is_optimal(kind: OrderKind, l1: usize, l2: usize, m: usize) -> Result<bool> {
    match kind {
        OrderKind::Lex => lex_segment_is_optimal(l1, l2, m),
        OrderKind::Colex => colex_segment_is_optimal(l1, l2, m),
    }
}

/// Orders whose initial segments form the nested solutions of `M(l1, l2)`.
pub fn nested_solution_orders(l1: usize, l2: usize) -> Vec<OrderKind> {
    use core::cmp::Ordering::*;
    if l1 == 1 || l2 == 1 {
        return OrderKind::BOTH.to_vec();
    }
    match l1.cmp(&l2) {
        Equal => OrderKind::BOTH.to_vec(),
        Less => alloc::vec![OrderKind::Lex],
        Greater => alloc::vec![OrderKind::Colex],
    }
}

/// All optimal downsets of size `m`, predicted without search: the optimal
/// segments plus their symmetrizations about the predicted boxes.
pub fn predicted_optimal_downsets(shape: &GridShape, m: usize) -> Result<Vec<DownSet2D>> {
    predicted_optimal_downsets_with(shape, m, BoxReading::Reconciled)
}

pub fn predicted_optimal_downsets_with(
    shape: &GridShape,
    m: usize,
    reading: BoxReading,
) -> Result<Vec<DownSet2D>> {
    let (l1, l2) = rect_dims(shape)?;
    check_size(l1, l2, m)?;
    let mut out = Vec::new();
    for kind in OrderKind::BOTH {
        if !segment_is_optimal(kind, l1, l2, m)? {
            continue;
        }
        out.push(segment_2d(shape, kind, m)?);
        for (image, _, _) in predicted_symmetrizations(shape, kind, m, reading)? {
            out.push(DownSet2D::from_points(shape.clone(), &image)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rect(l1: usize, l2: usize) -> GridShape {
        GridShape::rect(l1, l2).unwrap()
    }

    #[test]
    fn classify_examples() {
        let a = DownSet2D::new(rect(3, 5), vec![5, 2, 0]).unwrap();
        assert_eq!(classify_rect(&a).kind, RectKind::LexSegment);

        let lex4 = segment_2d(&rect(3, 3), OrderKind::Lex, 4).unwrap();
        let reflected =
            crate::symmetry::symmetrize_set(&PackedBox::full(&rect(3, 3)), &lex4.to_points(), 0, 1)
                .unwrap();
        let b = DownSet2D::from_points(rect(3, 3), &reflected).unwrap();
        assert_eq!(classify_rect(&b).kind, RectKind::ColexSegment);

        let c = DownSet2D::new(rect(4, 4), vec![3, 2, 2, 1]).unwrap();
        assert_eq!(classify_rect(&c).kind, RectKind::Unstructured);
    }

    #[test]
    fn symmetrization_witness_carries_box() {
        // the 2x2 square in M(3,3) is the lex segment of size 4 folded over
        // the gap-run box
        let sq = DownSet2D::new(rect(3, 3), vec![2, 2, 0]).unwrap();
        let c = classify_rect(&sq);
        assert_eq!(c.kind, RectKind::SymOfLex);
        assert!(c.qbox.is_some() && c.coords.is_some());
    }

    #[test]
    fn predicted_box_edges() {
        let s = rect(4, 7);
        for kind in OrderKind::BOTH {
            for variant in BoxVariant::BOTH {
                assert!(
                    predicted_packed_box(&s, kind, 0, variant).is_none()
                        || variant == BoxVariant::GapRun
                );
                assert!(predicted_packed_box(&s, kind, 28, variant).is_none());
            }
        }
        assert!(predicted_packed_box(&s, OrderKind::Lex, 0, BoxVariant::TailRun).is_none());
    }

    #[test]
    fn tail_run_box_on_lex_segment() {
        // lex segment of size 10 in M(4,7): one full column and (1,0),(1,1),(1,2)
        let s = rect(4, 7);
        let q = predicted_packed_box(&s, OrderKind::Lex, 10, BoxVariant::TailRun).unwrap();
        assert_eq!(q.lo(), &GridPoint::from([1, 0]));
        assert_eq!(q.hi(), &GridPoint::from([3, 2]));
    }

    #[test]
    fn literal_gap_box_is_not_square() {
        let s = rect(3, 3);
        assert!(predicted_packed_box_with(
            &s,
            OrderKind::Lex,
            4,
            BoxVariant::GapRun,
            BoxReading::Literal
        )
        .is_none());
        let s = rect(6, 6);
        // lex segment of size 20: columns 0..2 full, column 3 holds 2 points; gap of 4
        let lit = predicted_packed_box_with(
            &s,
            OrderKind::Lex,
            20,
            BoxVariant::GapRun,
            BoxReading::Literal,
        );
        let rec = predicted_packed_box(&s, OrderKind::Lex, 20, BoxVariant::GapRun);
        assert!(rec.as_ref().is_some_and(is_square));
        assert!(lit.as_ref().is_none_or(|b| !is_square(b)));
    }

    #[test]
    fn exact_criteria_examples() {
        assert!(colex_segment_is_optimal(3, 4, 6).unwrap());
        assert!(!colex_segment_is_optimal(3, 5, 6).unwrap());
        assert!(lex_segment_is_optimal(3, 5, 7).unwrap());
        assert!(!lex_segment_is_optimal(5, 3, 6).unwrap());
        assert!(colex_segment_is_optimal(1, 9, 4).unwrap());
        assert!(lex_segment_is_optimal(4, 4, 7).unwrap());
        assert!(colex_segment_is_optimal(3, 3, 10).is_err());
        assert!(colex_segment_is_optimal(0, 3, 0).is_err());
    }

    #[test]
    fn nested_orders_examples() {
        assert_eq!(
            nested_solution_orders(4, 4),
            vec![OrderKind::Lex, OrderKind::Colex]
        );
        assert_eq!(nested_solution_orders(3, 5), vec![OrderKind::Lex]);
        assert_eq!(nested_solution_orders(5, 3), vec![OrderKind::Colex]);
        assert_eq!(
            nested_solution_orders(1, 5),
            vec![OrderKind::Lex, OrderKind::Colex]
        );
    }

    #[test]
    fn prediction_small_case() {
        let s = rect(3, 3);
        let opt = predicted_optimal_downsets(&s, 4).unwrap();
        let profiles: Vec<&[usize]> = opt.iter().map(|d| d.profile()).collect();
        assert_eq!(
            profiles,
            vec![&[2, 1, 1][..], &[2, 2, 0][..], &[3, 1, 0][..]]
        );
    }
}
