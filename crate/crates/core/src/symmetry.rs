//! Packed boxes, reflections, symmetrizations and the reflect-push move.
//!
//! Reflection arithmetic is done on offsets from the lower corner of the
//! box, so the same code serves full lattices and any packed sub-box.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::grid::{is_downset, GridPoint, GridShape, PointSet};
use crate::weight::{RankWeight, Weighting};

/// An axis-aligned product of chain intervals `lo[i]..=hi[i]` inside a grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedBox {
    shape: GridShape,
    lo: GridPoint,
    hi: GridPoint,
}

impl PackedBox {
    pub fn new(shape: GridShape, lo: GridPoint, hi: GridPoint) -> Result<Self> {
        shape.check(&lo)?;
        shape.check(&hi)?;
        if !lo.le(&hi) {
            return Err(domain!("box corners {lo} and {hi} are not ordered"));
        }
        Ok(PackedBox { shape, lo, hi })
    }

    /// The whole lattice as a box.
    pub fn full(shape: &GridShape) -> Self {
        let lo = GridPoint(alloc::vec![0; shape.dim()]);
        let hi = GridPoint(shape.lengths().iter().map(|l| l - 1).collect());
        PackedBox {
            shape: shape.clone(),
            lo,
            hi,
        }
    }

    /// The box spanned by `points`, if they fill it exactly (the set is packed).
    pub fn enclosing(shape: &GridShape, points: &PointSet) -> Option<Self> {
        let first = points.iter().next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in points {
            if !shape.contains(p) {
                return None;
            }
            for c in 0..shape.dim() {
                lo.0[c] = lo[c].min(p[c]);
                hi.0[c] = hi[c].max(p[c]);
            }
        }
        let qbox = PackedBox {
            shape: shape.clone(),
            lo,
            hi,
        };
        (qbox.size() == points.len()).then_some(qbox)
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn lo(&self) -> &GridPoint {
        &self.lo
    }

    pub fn hi(&self) -> &GridPoint {
        &self.hi
    }

    pub fn side(&self, coord: usize) -> usize {
        self.hi[coord] - self.lo[coord] + 1
    }

    pub fn size(&self) -> usize {
        (0..self.shape.dim()).map(|c| self.side(c)).product()
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        p.dim() == self.shape.dim() && self.lo.le(p) && p.le(&self.hi)
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        let sides: Vec<usize> = (0..self.shape.dim()).map(|c| self.side(c)).collect();
        let local = GridShape::new(sides).expect("box sides are positive");
        let lo = self.lo.clone();
        (0..self.size()).map(move |i| {
            let off = local.point_at(i);
            GridPoint(off.0.iter().zip(&lo.0).map(|(o, l)| o + l).collect())
        })
    }

    /// Offset of `p` from the lower corner along `coord`.
    pub fn offset(&self, p: &GridPoint, coord: usize) -> usize {
        p[coord] - self.lo[coord]
    }

    fn check_pair(&self, c1: usize, c2: usize) -> Result<()> {
        let d = self.shape.dim();
        if c1 >= d || c2 >= d {
            return Err(domain!(
                "coordinates ({c1},{c2}) out of range for dimension {d}"
            ));
        }
        if self.side(c1) != self.side(c2) {
            return Err(domain!(
                "box sides along {c1} and {c2} differ ({} vs {})",
                self.side(c1),
                self.side(c2)
            ));
        }
        Ok(())
    }

    fn swap_offsets(&self, f: &GridPoint, c1: usize, c2: usize) -> GridPoint {
        let (o1, o2) = (self.offset(f, c1), self.offset(f, c2));
        let mut g = f.clone();
        g.0[c1] = self.lo[c1] + o2;
        g.0[c2] = self.lo[c2] + o1;
        g
    }
}

impl fmt::Display for PackedBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.lo, self.hi)
    }
}

/// Whether `points` is a product of intervals, one per coordinate.
pub fn is_packed(shape: &GridShape, points: &PointSet) -> bool {
    PackedBox::enclosing(shape, points).is_some()
}

/// Swaps the box offsets of `f` along `c1` and `c2`.
pub fn reflect_point(qbox: &PackedBox, c1: usize, c2: usize, f: &GridPoint) -> Result<GridPoint> {
    qbox.check_pair(c1, c2)?;
    if !qbox.contains(f) {
        return Err(domain!("point {f} lies outside box {qbox}"));
    }
    Ok(qbox.swap_offsets(f, c1, c2))
}

/// Reflects `f` iff its offset along `c1` is smaller than along `c2`.
pub fn symmetrize_point(
    qbox: &PackedBox,
    c1: usize,
    c2: usize,
    f: &GridPoint,
) -> Result<GridPoint> {
    let g = reflect_point(qbox, c1, c2, f)?;
    if qbox.offset(f, c1) < qbox.offset(f, c2) {
        Ok(g)
    } else {
        Ok(f.clone())
    }
}

/// Symmetrization of `set` about `(c1, c2)` with respect to `qbox`.
/// Points outside the box are left alone.
pub fn symmetrize_set(qbox: &PackedBox, set: &PointSet, c1: usize, c2: usize) -> Result<PointSet> {
    qbox.check_pair(c1, c2)?;
    let (inside, mut out): (PointSet, PointSet) =
        set.iter().cloned().partition(|p| qbox.contains(p));
    for f in &inside {
        let g = qbox.swap_offsets(f, c1, c2);
        if inside.contains(&g) || qbox.offset(f, c1) >= qbox.offset(f, c2) {
            out.insert(f.clone());
        } else {
            out.insert(g);
        }
    }
    Ok(out)
}

/// The data of one reflect-push step: remove `removal` from `downset`,
/// reflect it inside `qbox` about `(c1, c2)`, and push each reflection `r`
/// to `sigma[r]`, a point of `insertion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectPushMove {
    pub shape: GridShape,
    pub downset: PointSet,
    pub qbox: PackedBox,
    pub c1: usize,
    pub c2: usize,
    pub removal: PointSet,
    pub insertion: PointSet,
    pub sigma: BTreeMap<GridPoint, GridPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectPushOutcome {
    pub result: PointSet,
    /// `weight(result) - weight(downset)`, never negative.
    pub delta: f64,
    /// Some reflection is pushed to a strictly heavier point.
    pub strict_gain: bool,
}

fn violated(hypothesis: u8, reason: alloc::string::String) -> Error {
    Error::Precondition { hypothesis, reason }
}

impl ReflectPushMove {
    /// The reflections `R` of the removal set.
    pub fn reflections(&self) -> Result<PointSet> {
        self.removal
            .iter()
            .map(|f| reflect_point(&self.qbox, self.c1, self.c2, f))
            .collect()
    }

    /// Checks the six hypotheses in order and reports the first failure.
    pub fn validate(&self, w: &RankWeight) -> Result<PointSet> {
        let shape = &self.shape;
        w.covers(shape.max_rank())?;
        if !is_downset(shape, &self.downset) {
            return Err(violated(1, "A is not a downset of the lattice".into()));
        }
        if self.qbox.shape() != shape {
            return Err(violated(
                2,
                format!("box {} lives in another lattice", self.qbox),
            ));
        }
        if let Some(f) = self
            .removal
            .iter()
            .find(|f| !self.downset.contains(*f) || !self.qbox.contains(f))
        {
            return Err(violated(
                3,
                format!("removed point {f} is not in A and the box"),
            ));
        }
        let kept: PointSet = self.downset.difference(&self.removal).cloned().collect();
        if !is_downset(shape, &kept) {
            return Err(violated(
                3,
                "A minus the removal set is not a downset".into(),
            ));
        }
        if self.c1 >= shape.dim() || self.c2 >= shape.dim() {
            return Err(violated(
                4,
                format!("coordinates ({}, {}) out of range", self.c1, self.c2),
            ));
        }
        if self.qbox.side(self.c1) != self.qbox.side(self.c2) {
            return Err(violated(4, "box sides along c1 and c2 differ".into()));
        }
        let reflections = self.reflections()?;
        if let Some(p) = self
            .insertion
            .iter()
            .find(|p| !shape.contains(p) || self.downset.contains(*p))
        {
            return Err(violated(
                5,
                format!("inserted point {p} is in A or outside the lattice"),
            ));
        }
        let mut pushed = kept;
        pushed.extend(self.insertion.iter().cloned());
        if !is_downset(shape, &pushed) {
            return Err(violated(5, "the pushed set is not a downset".into()));
        }
        let domain: BTreeSet<&GridPoint> = self.sigma.keys().collect();
        let image: BTreeSet<&GridPoint> = self.sigma.values().collect();
        if domain != reflections.iter().collect::<BTreeSet<_>>() {
            return Err(violated(
                6,
                "sigma is not defined exactly on the reflections".into(),
            ));
        }
        if image.len() != self.sigma.len() || image != self.insertion.iter().collect() {
            return Err(violated(
                6,
                "sigma is not a bijection onto the insertion set".into(),
            ));
        }
        if let Some((r, p)) = self
            .sigma
            .iter()
            .find(|(r, p)| w.point_weight(r) > w.point_weight(p))
        {
            return Err(violated(
                6,
                format!("sigma sends {r} to the lighter point {p}"),
            ));
        }
        Ok(pushed)
    }
}

/// Applies a validated reflect-push move under a rank weight.
pub fn apply_reflect_push(mv: &ReflectPushMove, w: &RankWeight) -> Result<ReflectPushOutcome> {
    let result = mv.validate(w)?;
    // Reflections keep rank, so weight(O) = weight(R) term by term.
    let mut delta = 0.0;
    let mut strict_gain = false;
    for (r, p) in &mv.sigma {
        let gain = w.point_weight(p) - w.point_weight(r);
        strict_gain |= gain > 0.0;
        delta += gain;
    }
    Ok(ReflectPushOutcome {
        result,
        delta,
        strict_gain,
    })
}
