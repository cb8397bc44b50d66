//! Products of finite chains ("grid lattices"), their points and downsets.
//!
//! A shape `(l_1, ..., l_d)` describes the lattice of integer points
//! `0 <= x_i < l_i` ordered coordinatewise. All coordinates are 0-based.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::error::{domain, Error, Result};

/// Side lengths of a product of chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridShape {
    lengths: Vec<usize>,
}

impl GridShape {
    /// Builds a shape; every side must be at least 1 and the point count must fit in `usize`.
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::InvalidShape(
                "a shape needs at least one side".into(),
            ));
        }
        if let Some(i) = lengths.iter().position(|&l| l == 0) {
            return Err(Error::InvalidShape(alloc::format!("side {i} has length 0")));
        }
        if lengths.contains(&usize::MAX) {
            return Err(Error::InvalidShape(
                "unbounded chains are not supported".into(),
            ));
        }
        lengths
            .iter()
            .try_fold(1usize, |acc, &l| acc.checked_mul(l))
            .ok_or_else(|| Error::InvalidShape("point count overflows".into()))?;
        Ok(GridShape { lengths })
    }

    pub fn rect(l1: usize, l2: usize) -> Result<Self> {
        Self::new(alloc::vec![l1, l2])
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn len(&self, coord: usize) -> usize {
        self.lengths[coord]
    }

    /// Number of points, the product of the side lengths.
    pub fn size(&self) -> usize {
        self.lengths.iter().product()
    }

    /// Rank of the top element.
    pub fn max_rank(&self) -> usize {
        self.lengths.iter().map(|l| l - 1).sum()
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        p.dim() == self.dim() && p.0.iter().zip(&self.lengths).all(|(&x, &l)| x < l)
    }

    pub(crate) fn check(&self, p: &GridPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(domain!("point {p} is not in shape {self}"))
        }
    }

    /// Row-major position, first coordinate most significant.
    pub fn linear_index(&self, p: &GridPoint) -> usize {
        p.0.iter()
            .zip(&self.lengths)
            .fold(0, |acc, (&x, &l)| acc * l + x)
    }

    /// Inverse of [`GridShape::linear_index`].
    pub fn point_at(&self, mut index: usize) -> GridPoint {
        let mut coords = alloc::vec![0; self.dim()];
        for (c, &l) in coords.iter_mut().zip(&self.lengths).rev() {
            *c = index % l;
            index /= l;
        }
        GridPoint(coords)
    }

    /// All points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.size()).map(move |i| self.point_at(i))
    }

    pub fn full_set(&self) -> PointSet {
        self.points().collect()
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// An integer point of a grid lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint(pub Vec<usize>);

impl GridPoint {
    pub fn new(coords: Vec<usize>) -> Self {
        GridPoint(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate sum.
    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Coordinatewise comparison: `self <= other` in the lattice order.
    pub fn le(&self, other: &GridPoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub(crate) fn with(&self, coord: usize, value: usize) -> GridPoint {
        let mut q = self.clone();
        q.0[coord] = value;
        q
    }
}

impl Index<usize> for GridPoint {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl<const N: usize> From<[usize; N]> for GridPoint {
    fn from(c: [usize; N]) -> Self {
        GridPoint(c.to_vec())
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Explicit point sets; sorted, so iteration order is canonical.
pub type PointSet = BTreeSet<GridPoint>;

pub fn rank(p: &GridPoint) -> usize {
    p.0.iter().sum()
}

/// Points covered by `p`: decrement exactly one nonzero coordinate.
pub fn lower_shadow(shape: &GridShape, p: &GridPoint) -> PointSet {
    debug_assert!(shape.contains(p));
    (0..p.dim())
        .filter(|&i| p[i] > 0)
        .map(|i| p.with(i, p[i] - 1))
        .collect()
}

/// Points covering `p`.
pub fn upper_shadow(shape: &GridShape, p: &GridPoint) -> PointSet {
    debug_assert!(shape.contains(p));
    (0..p.dim())
        .filter(|&i| p[i] + 1 < shape.len(i))
        .map(|i| p.with(i, p[i] + 1))
        .collect()
}

/// True iff `set` is closed under taking smaller points. Closure under the
/// cover relation is enough because every relation is a chain of covers.
pub fn is_downset(shape: &GridShape, set: &PointSet) -> bool {
    set.iter()
        .all(|p| shape.contains(p) && lower_shadow(shape, p).iter().all(|q| set.contains(q)))
}

/// All points agreeing with `anchor` outside the free coordinates `free`.
///
/// `free` lists 0-based coordinate indices; `anchor` gives the values of the
/// remaining coordinates in increasing coordinate order.
pub fn subproduct_at(shape: &GridShape, free: &[usize], anchor: &[usize]) -> Result<PointSet> {
    let d = shape.dim();
    let mut is_free = alloc::vec![false; d];
    for &c in free {
        if c >= d || is_free[c] {
            return Err(domain!("coordinate set {free:?} is not a subset of 0..{d}"));
        }
        is_free[c] = true;
    }
    let fixed: Vec<usize> = (0..d).filter(|&c| !is_free[c]).collect();
    if fixed.len() != anchor.len() {
        return Err(domain!(
            "anchor has {} coordinates, expected {}",
            anchor.len(),
            fixed.len()
        ));
    }
    for (&c, &x) in fixed.iter().zip(anchor) {
        if x >= shape.len(c) {
            return Err(domain!("anchor coordinate {x} out of range for side {c}"));
        }
    }
    Ok(shape
        .points()
        .filter(|p| fixed.iter().zip(anchor).all(|(&c, &x)| p[c] == x))
        .collect())
}

/// A downset of a two-dimensional grid stored as its Young-diagram profile:
/// column `x` holds the points `(x, y)` with `y < profile[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSet2D {
    shape: GridShape,
    profile: Vec<usize>,
}

impl DownSet2D {
    pub fn new(shape: GridShape, profile: Vec<usize>) -> Result<Self> {
        if shape.dim() != 2 {
            return Err(Error::InvalidShape(alloc::format!(
                "{shape} is not two-dimensional"
            )));
        }
        if profile.len() != shape.len(0) {
            return Err(domain!(
                "profile has {} columns, shape {shape} has {}",
                profile.len(),
                shape.len(0)
            ));
        }
        if profile.iter().any(|&h| h > shape.len(1)) {
            return Err(domain!(
                "profile {profile:?} exceeds column height {}",
                shape.len(1)
            ));
        }
        if profile.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain!("profile {profile:?} is not weakly decreasing"));
        }
        Ok(DownSet2D { shape, profile })
    }

    pub fn empty(shape: GridShape) -> Result<Self> {
        let l1 = shape.len(0);
        Self::new(shape, alloc::vec![0; l1])
    }

    /// Recovers the canonical profile from an explicit point set.
    pub fn from_points(shape: GridShape, points: &PointSet) -> Result<Self> {
        if shape.dim() != 2 {
            return Err(Error::InvalidShape(alloc::format!(
                "{shape} is not two-dimensional"
            )));
        }
        if !is_downset(&shape, points) {
            return Err(domain!("point set is not a downset of {shape}"));
        }
        let mut profile = alloc::vec![0; shape.len(0)];
        for p in points {
            profile[p[0]] = profile[p[0]].max(p[1] + 1);
        }
        Self::new(shape, profile)
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn profile(&self) -> &[usize] {
        &self.profile
    }

    pub fn len(&self) -> usize {
        self.profile.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.profile.first().is_none_or(|&h| h == 0)
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        p.dim() == 2 && p[0] < self.profile.len() && p[1] < self.profile[p[0]]
    }

    pub fn to_points(&self) -> PointSet {
        self.profile
            .iter()
            .enumerate()
            .flat_map(|(x, &h)| (0..h).map(move |y| GridPoint(alloc::vec![x, y])))
            .collect()
    }

    pub fn to_generic(&self) -> DownSetGeneric {
        DownSetGeneric {
            shape: self.shape.clone(),
            points: self.to_points(),
        }
    }
}

/// A downset of an arbitrary grid lattice held as an explicit point set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSetGeneric {
    shape: GridShape,
    points: PointSet,
}

impl DownSetGeneric {
    pub fn new(shape: GridShape, points: PointSet) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !shape.contains(p)) {
            return Err(domain!("point {p} is not in shape {shape}"));
        }
        if !is_downset(&shape, &points) {
            return Err(domain!("point set is not a downset of {shape}"));
        }
        Ok(DownSetGeneric { shape, points })
    }

    pub(crate) fn new_unchecked(shape: GridShape, points: PointSet) -> Self {
        debug_assert!(is_downset(&shape, &points));
        DownSetGeneric { shape, points }
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn into_points(self) -> PointSet {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        self.points.contains(p)
    }

    pub fn to_2d(&self) -> Result<DownSet2D> {
        DownSet2D::from_points(self.shape.clone(), &self.points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set<const N: usize>(pts: &[[usize; N]]) -> PointSet {
        pts.iter().map(|&p| GridPoint::from(p)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&GridPoint::from([0, 0])), 0);
        assert_eq!(rank(&GridPoint::from([3, 1])), 4);
        let cube = GridShape::new(vec![3, 3, 3]).unwrap();
        assert_eq!(rank(&GridPoint::from([2, 2, 2])), cube.max_rank());
    }

    #[test]
    fn shape_rejects_degenerate_sides() {
        assert!(GridShape::new(vec![]).is_err());
        assert!(GridShape::new(vec![3, 0]).is_err());
        assert!(GridShape::new(vec![usize::MAX, 2]).is_err());
    }

    #[test]
    fn downset_examples() {
        let sq = GridShape::rect(2, 2).unwrap();
        assert!(is_downset(&sq, &PointSet::new()));
        assert!(is_downset(&sq, &set(&[[0, 0], [0, 1], [1, 0]])));
        assert!(!is_downset(&sq, &set(&[[1, 1]])));
    }

    #[test]
    fn shadow_examples() {
        let s = GridShape::rect(3, 3).unwrap();
        assert!(lower_shadow(&s, &GridPoint::from([0, 0])).is_empty());
        assert_eq!(
            lower_shadow(&s, &GridPoint::from([1, 2])),
            set(&[[0, 2], [1, 1]])
        );
        assert!(upper_shadow(&s, &GridPoint::from([2, 2])).is_empty());
        assert_eq!(
            upper_shadow(&s, &GridPoint::from([0, 1])),
            set(&[[1, 1], [0, 2]])
        );
    }

    #[test]
    fn subproduct_examples() {
        let sq = GridShape::rect(2, 2).unwrap();
        assert_eq!(
            subproduct_at(&sq, &[1], &[1]).unwrap(),
            set(&[[1, 0], [1, 1]])
        );
        assert_eq!(subproduct_at(&sq, &[0, 1], &[]).unwrap().len(), 4);
        let box3 = GridShape::new(vec![2, 3, 5]).unwrap();
        let face = subproduct_at(&box3, &[1, 2], &[0]).unwrap();
        assert_eq!(face.len(), 15);
        assert!(face.iter().all(|p| p[0] == 0));
        assert!(subproduct_at(&sq, &[1], &[2]).is_err());
        assert!(subproduct_at(&sq, &[2], &[0, 0]).is_err());
    }

    #[test]
    fn profile_validation() {
        let s = GridShape::rect(3, 5).unwrap();
        assert!(DownSet2D::new(s.clone(), vec![5, 2, 0]).is_ok());
        assert!(DownSet2D::new(s.clone(), vec![2, 5, 0]).is_err());
        assert!(DownSet2D::new(s.clone(), vec![6, 0, 0]).is_err());
        assert!(DownSet2D::new(s, vec![1, 1]).is_err());
    }

    #[test]
    fn profile_round_trip() {
        let s = GridShape::rect(3, 5).unwrap();
        let a = DownSet2D::new(s.clone(), vec![5, 2, 0]).unwrap();
        assert_eq!(a.len(), 7);
        let back = DownSet2D::from_points(s, &a.to_points()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn linear_index_inverts() {
        let s = GridShape::new(vec![2, 3, 4]).unwrap();
        for (i, p) in s.points().enumerate() {
            assert_eq!(s.linear_index(&p), i);
        }
    }
}
