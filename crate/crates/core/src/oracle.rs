//! Exhaustive enumeration of downsets and brute-force optimality.
//!
//! Everything here refuses inputs beyond fixed size guards with
//! [`Error::ResourceGuard`] instead of sampling.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::grid::{is_downset, DownSet2D, GridPoint, GridShape, PointSet};
use crate::order::{segment_2d, OrderKind};
use crate::symmetry::{symmetrize_set, PackedBox};
use crate::triangle::TriangleShape;
use crate::weight::Weighting;

/// Most points any enumerated poset may have.
pub const MAX_POINTS: usize = 128;
/// Most points of an enumerated triangle.
pub const MAX_TRIANGLE_POINTS: usize = 40;
/// Longest side of an enumerated three-dimensional grid.
pub const MAX_3D_SIDE: usize = 4;
/// Most downsets of an enumerated rectangle.
pub const MAX_2D_DOWNSETS: u128 = 2_000_000;
/// Most witness chains reported by [`nested_chain_exists`].
pub const WITNESS_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Poset {
    Grid(GridShape),
    Triangle(TriangleShape),
}

impl Poset {
    /// Points in enumeration order, which is a linear extension: row-major
    /// for grids and sorted by `(x, y)` for triangles.
    pub fn points(&self) -> Vec<GridPoint> {
        match self {
            Poset::Grid(s) => s.points().collect(),
            Poset::Triangle(t) => t.points().collect(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Poset::Grid(s) => s.size(),
            Poset::Triangle(t) => t.size(),
        }
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        match self {
            Poset::Grid(s) => s.contains(p),
            Poset::Triangle(t) => t.contains(p),
        }
    }

    pub fn is_downset(&self, set: &PointSet) -> bool {
        match self {
            Poset::Grid(s) => is_downset(s, set),
            Poset::Triangle(t) => t.is_downset(set),
        }
    }

    /// Fails with a resource error when exhaustive enumeration is refused.
    pub fn check_guard(&self) -> Result<()> {
        let n = self.size();
        if n > MAX_POINTS {
            return Err(Error::ResourceGuard(alloc::format!(
                "{self} has {n} points, more than {MAX_POINTS}"
            )));
        }
        match self {
            Poset::Triangle(_) if n > MAX_TRIANGLE_POINTS => Err(Error::ResourceGuard(
                alloc::format!("{self} has {n} points, more than {MAX_TRIANGLE_POINTS}"),
            )),
            Poset::Triangle(_) => Ok(()),
            Poset::Grid(s) => match s.dim() {
                1 => Ok(()),
                2 => {
                    let count = binomial((s.len(0) + s.len(1)) as u128, s.len(0) as u128);
                    if count > MAX_2D_DOWNSETS {
                        Err(Error::ResourceGuard(alloc::format!(
                            "{s} has {count} downsets, more than {MAX_2D_DOWNSETS}"
                        )))
                    } else {
                        Ok(())
                    }
                }
                3 if s.lengths().iter().all(|&l| l <= MAX_3D_SIDE) => Ok(()),
                3 => Err(Error::ResourceGuard(alloc::format!(
                    "{s} has a side longer than {MAX_3D_SIDE}"
                ))),
                d => Err(Error::ResourceGuard(alloc::format!(
                    "{s} has dimension {d}; at most 3 is enumerated"
                ))),
            },
        }
    }

    fn lower_cover_masks(&self, points: &[GridPoint]) -> Vec<u128> {
        let index = |p: &GridPoint| points.binary_search(p);
        points
            .iter()
            .map(|p| {
                let covers: Vec<GridPoint> = match self {
                    Poset::Grid(s) => crate::grid::lower_shadow(s, p).into_iter().collect(),
                    Poset::Triangle(t) => t.lower_covers(p),
                };
                covers
                    .iter()
                    .map(|q| 1u128 << index(q).expect("cover is a point"))
                    .fold(0, |a, b| a | b)
            })
            .collect()
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poset::Grid(s) => s.fmt(f),
            Poset::Triangle(t) => t.fmt(f),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Iterator over the downsets of `M(l1, l2)` as weakly decreasing profiles,
/// starting from the empty set.
#[derive(Debug, Clone)]
pub struct Profiles {
    shape: GridShape,
    next: Option<Vec<usize>>,
}

impl Iterator for Profiles {
    type Item = DownSet2D;

    fn next(&mut self) -> Option<DownSet2D> {
        let current = self.next.take()?;
        let l2 = self.shape.len(1);
        let mut h = current.clone();
        let bump = (0..h.len())
            .rev()
            .find(|&i| h[i] < if i == 0 { l2 } else { h[i - 1] });
        if let Some(i) = bump {
            h[i] += 1;
            h[i + 1..].iter_mut().for_each(|v| *v = 0);
            self.next = Some(h);
        }
        Some(DownSet2D::new(self.shape.clone(), current).expect("odometer keeps profiles valid"))
    }
}

/// Every downset of `M(l1, l2)` exactly once.
pub fn enumerate_downsets_2d(l1: usize, l2: usize) -> Result<Profiles> {
    let shape = GridShape::rect(l1, l2)?;
    Ok(Profiles {
        next: Some(alloc::vec![0; l1]),
        shape,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMethod {
    /// Branch on each point along the linear extension, including it only
    /// when its lower covers are present.
    IncludeExclude,
    /// Stack downsets of the slices `x_1 = const` nested by containment.
    /// Grids only.
    ColumnNesting,
}

/// All downsets of a poset as bit masks over [`Poset::points`].
#[derive(Debug, Clone)]
pub struct DownsetFamily {
    poset: Poset,
    points: Vec<GridPoint>,
    masks: Vec<u128>,
}

impl DownsetFamily {
    pub fn new(poset: Poset) -> Result<Self> {
        let method = match &poset {
            Poset::Grid(s) if s.dim() >= 2 => EnumerationMethod::ColumnNesting,
            _ => EnumerationMethod::IncludeExclude,
        };
        Self::with_method(poset, method)
    }

    pub fn with_method(poset: Poset, method: EnumerationMethod) -> Result<Self> {
        poset.check_guard()?;
        let points = poset.points();
        let masks = match (method, &poset) {
            (EnumerationMethod::IncludeExclude, _) => {
                let covers = poset.lower_cover_masks(&points);
                let mut out = Vec::new();
                include_exclude(&covers, 0, 0, &mut out);
                out
            }
            (EnumerationMethod::ColumnNesting, Poset::Grid(s)) => column_nesting(s.lengths()),
            (EnumerationMethod::ColumnNesting, Poset::Triangle(_)) => {
                return Err(domain!("column nesting applies to grids only"))
            }
        };
        Ok(DownsetFamily {
            poset,
            points,
            masks,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn masks(&self) -> &[u128] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn to_points(&self, mask: u128) -> PointSet {
        bits(mask).map(|i| self.points[i].clone()).collect()
    }

    pub fn mask_of(&self, set: &PointSet) -> Option<u128> {
        set.iter().try_fold(0u128, |acc, p| {
            self.points
                .binary_search(p)
                .ok()
                .map(|i| acc | (1u128 << i))
        })
    }

    pub fn iter_points(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.masks.iter().map(|&m| self.to_points(m))
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn include_exclude(covers: &[u128], i: usize, mask: u128, out: &mut Vec<u128>) {
    if i == covers.len() {
        out.push(mask);
        return;
    }
    include_exclude(covers, i + 1, mask, out);
    if covers[i] & !mask == 0 {
        include_exclude(covers, i + 1, mask | (1u128 << i), out);
    }
}

/// Downsets of the grid with side lengths `lengths`, row-major bit layout.
fn column_nesting(lengths: &[usize]) -> Vec<u128> {
    let (&first, rest) = lengths.split_first().expect("non-empty shape");
    if rest.is_empty() {
        return (0..=first).map(|k| (1u128 << k) - 1).collect();
    }
    let slice = column_nesting(rest);
    let width: usize = rest.iter().product();
    let below: Vec<Vec<usize>> = slice
        .iter()
        .map(|&a| (0..slice.len()).filter(|&j| slice[j] & !a == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize, u128)> = (0..slice.len()).map(|j| (1, j, slice[j])).collect();
    while let Some((depth, j, mask)) = stack.pop() {
        if depth == first {
            out.push(mask);
            continue;
        }
        for &k in &below[j] {
            stack.push((depth + 1, k, mask | (slice[k] << (depth * width))));
        }
    }
    out.sort_unstable();
    out
}

/// Every downset of the poset exactly once.
pub fn enumerate_downsets_poset(poset: &Poset) -> Result<Vec<PointSet>> {
    Ok(DownsetFamily::new(poset.clone())?.iter_points().collect())
}

pub fn enumerate_downsets_poset_with(
    poset: &Poset,
    method: EnumerationMethod,
) -> Result<Vec<PointSet>> {
    Ok(DownsetFamily::with_method(poset.clone(), method)?
        .iter_points()
        .collect())
}

/// Maximum weight among downsets of one size and every downset attaining it,
/// sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub size: usize,
    pub max_weight: f64,
    pub sets: Vec<PointSet>,
}

fn check_weight<W: Weighting + ?Sized>(poset: &Poset, w: &W) -> Result<()> {
    match poset.points().into_iter().find(|p| !w.supports(p)) {
        Some(p) => Err(domain!("the weight does not cover point {p} of {poset}")),
        None => Ok(()),
    }
}

/// Optimal masks per size over an already enumerated family.
pub fn optimal_masks_by_size<W: Weighting + ?Sized>(
    family: &DownsetFamily,
    w: &W,
) -> Result<Vec<(f64, Vec<u128>)>> {
    check_weight(family.poset(), w)?;
    let pw: Vec<f64> = family.points().iter().map(|p| w.point_weight(p)).collect();
    let mut best: Vec<Option<(f64, Vec<u128>)>> = alloc::vec![None; family.points().len() + 1];
    for &mask in family.masks() {
        let size = mask.count_ones() as usize;
        let weight: f64 = bits(mask).map(|i| pw[i]).sum();
        match &mut best[size] {
            slot @ None => *slot = Some((weight, alloc::vec![mask])),
            Some((top, list)) => {
                if w.same(weight, *top) {
                    list.push(mask);
                    *top = top.max(weight);
                } else if weight > *top {
                    *top = weight;
                    list.clear();
                    list.push(mask);
                }
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|b| b.expect("every size has a downset"))
        .collect())
}

/// Optimal downsets of every size `0..=|poset|`.
pub fn optimal_by_size<W: Weighting + ?Sized>(poset: &Poset, w: &W) -> Result<Vec<Optimum>> {
    let family = DownsetFamily::new(poset.clone())?;
    optimal_by_size_in(&family, w)
}

pub fn optimal_by_size_in<W: Weighting + ?Sized>(
    family: &DownsetFamily,
    w: &W,
) -> Result<Vec<Optimum>> {
    Ok(optimal_masks_by_size(family, w)?
        .into_iter()
        .enumerate()
        .map(|(size, (max_weight, masks))| {
            let mut sets: Vec<PointSet> = masks.iter().map(|&m| family.to_points(m)).collect();
            sets.sort();
            Optimum {
                size,
                max_weight,
                sets,
            }
        })
        .collect())
}

/// Optimal downsets of size `m`.
pub fn optimal_downsets<W: Weighting + ?Sized>(poset: &Poset, w: &W, m: usize) -> Result<Optimum> {
    if m > poset.size() {
        return Err(domain!(
            "size {m} exceeds {} points of {poset}",
            poset.size()
        ));
    }
    Ok(optimal_by_size(poset, w)?.swap_remove(m))
}

/// Chains of optimal downsets, one of every size, each containing the last.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedChains {
    pub exists: bool,
    /// Number of full chains, saturating.
    pub chain_count: u128,
    /// Up to [`WITNESS_LIMIT`] full chains, each listed from the empty set up.
    pub witnesses: Vec<Vec<PointSet>>,
    /// Smallest size no chain from the empty set reaches.
    pub obstruction: Option<usize>,
}

pub fn nested_chain_exists<W: Weighting + ?Sized>(poset: &Poset, w: &W) -> Result<NestedChains> {
    let family = DownsetFamily::new(poset.clone())?;
    let layers: Vec<Vec<u128>> = optimal_masks_by_size(&family, w)?
        .into_iter()
        .map(|(_, masks)| masks)
        .collect();
    let mut counts: Vec<Vec<u128>> = alloc::vec![alloc::vec![1; layers[0].len()]];
    let mut obstruction = None;
    for m in 1..layers.len() {
        let prev = &counts[m - 1];
        let row: Vec<u128> = layers[m]
            .iter()
            .map(|&a| {
                layers[m - 1]
                    .iter()
                    .zip(prev)
                    .filter(|(&b, _)| b & !a == 0)
                    .fold(0u128, |acc, (_, &c)| acc.saturating_add(c))
            })
            .collect();
        if obstruction.is_none() && row.iter().all(|&c| c == 0) {
            obstruction = Some(m);
        }
        counts.push(row);
    }
    let chain_count = counts
        .last()
        .expect("at least the empty layer")
        .iter()
        .fold(0u128, |acc, &c| acc.saturating_add(c));

    let mut witnesses = Vec::new();
    let top = layers.len() - 1;
    let mut stack: Vec<Vec<usize>> = (0..layers[top].len())
        .filter(|&i| counts[top][i] > 0)
        .map(|i| alloc::vec![i])
        .collect();
    while let Some(path) = stack.pop() {
        if witnesses.len() == WITNESS_LIMIT {
            break;
        }
        let m = top + 1 - path.len();
        if m == 0 {
            let chain = path
                .iter()
                .rev()
                .enumerate()
                .map(|(k, &i)| family.to_points(layers[k][i]))
                .collect();
            witnesses.push(chain);
            continue;
        }
        let a = layers[m][*path.last().expect("non-empty path")];
        for j in (0..layers[m - 1].len()).rev() {
            if counts[m - 1][j] > 0 && layers[m - 1][j] & !a == 0 {
                let mut next = path.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    witnesses.sort();
    Ok(NestedChains {
        exists: chain_count > 0,
        chain_count,
        witnesses,
        obstruction,
    })
}

/// A symmetrization of a segment about a square box, found by search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymmetrizationWitness {
    pub qbox: PackedBox,
    pub coords: (usize, usize),
    pub image: PointSet,
}

/// Square boxes of side at least 2 inside a rectangle.
pub fn square_boxes_2d(shape: &GridShape) -> Result<Vec<PackedBox>> {
    if shape.dim() != 2 {
        return Err(Error::InvalidShape(alloc::format!(
            "{shape} is not two-dimensional"
        )));
    }
    let (l1, l2) = (shape.len(0), shape.len(1));
    let mut out = Vec::new();
    for s in 2..=l1.min(l2) {
        for a1 in 0..=l1 - s {
            for a2 in 0..=l2 - s {
                out.push(PackedBox::new(
                    shape.clone(),
                    GridPoint::from([a1, a2]),
                    GridPoint::from([a1 + s - 1, a2 + s - 1]),
                )?);
            }
        }
    }
    Ok(out)
}

/// Every symmetrization of the size-`m` segment of `kind` about a square box
/// of the rectangle that is a downset different from the segment.
pub fn exhaustive_symmetrization_witnesses(
    shape: &GridShape,
    kind: OrderKind,
    m: usize,
) -> Result<Vec<SymmetrizationWitness>> {
    let segment = segment_2d(shape, kind, m)?.to_points();
    let mut out = Vec::new();
    for qbox in square_boxes_2d(shape)? {
        for coords in [(0, 1), (1, 0)] {
            let image = symmetrize_set(&qbox, &segment, coords.0, coords.1)?;
            if image != segment && is_downset(shape, &image) {
                out.push(SymmetrizationWitness {
                    qbox: qbox.clone(),
                    coords,
                    image,
                });
            }
        }
    }
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

    fn grid(lengths: &[usize]) -> Poset {
        Poset::Grid(GridShape::new(lengths.to_vec()).unwrap())
    }

    #[test]
    fn profile_enumeration_small() {
        assert_eq!(enumerate_downsets_2d(1, 1).unwrap().count(), 2);
        assert_eq!(enumerate_downsets_2d(2, 2).unwrap().count(), 6);
        let first = enumerate_downsets_2d(3, 4).unwrap().next().unwrap();
        assert!(first.is_empty());
        assert!(enumerate_downsets_2d(0, 3).is_err());
    }

    #[test]
    fn triangle_of_two_has_four_downsets() {
        let t = Poset::Triangle(TriangleShape::new(2).unwrap());
        let all = enumerate_downsets_poset(&t).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.contains(&PointSet::new()));
        assert!(all.contains(&pts(&[[0, 0], [0, 1], [1, 1]])));
        assert!(!all.contains(&pts(&[[0, 0], [1, 1]])));
    }

    #[test]
    fn methods_agree_on_grids() {
        for lengths in [
            vec![3],
            vec![2, 3],
            vec![3, 3],
            vec![2, 2, 2],
            vec![2, 3, 2],
        ] {
            let p = grid(&lengths);
            let mut a =
                enumerate_downsets_poset_with(&p, EnumerationMethod::IncludeExclude).unwrap();
            let mut b =
                enumerate_downsets_poset_with(&p, EnumerationMethod::ColumnNesting).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{lengths:?}");
            assert!(a.iter().all(|s| p.is_downset(s)));
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(
            grid(&[5, 4, 4]).check_guard(),
            Err(Error::ResourceGuard(_))
        ));
        assert!(matches!(
            grid(&[2, 2, 2, 2]).check_guard(),
            Err(Error::ResourceGuard(_))
        ));
        assert!(matches!(
            grid(&[20, 20]).check_guard(),
            Err(Error::ResourceGuard(_))
        ));
        let t9 = Poset::Triangle(TriangleShape::new(9).unwrap());
        assert!(matches!(t9.check_guard(), Err(Error::ResourceGuard(_))));
        assert!(grid(&[4, 4, 4]).check_guard().is_ok());
        let t = Poset::Triangle(TriangleShape::new(2).unwrap());
        assert!(DownsetFamily::with_method(t, EnumerationMethod::ColumnNesting).is_err());
    }

    #[test]
    fn optimum_examples() {
        let w = RankWeight::standard(8);
        let o = optimal_downsets(&grid(&[2, 3]), &w, 3).unwrap();
        assert_eq!(o.max_weight, 3.0);
        assert_eq!(o.sets, vec![pts(&[[0, 0], [0, 1], [0, 2]])]);

        let o = optimal_downsets(&grid(&[3, 3]), &w, 3).unwrap();
        assert_eq!(o.max_weight, 3.0);
        assert_eq!(
            o.sets,
            vec![
                pts(&[[0, 0], [0, 1], [0, 2]]),
                pts(&[[0, 0], [1, 0], [2, 0]])
            ]
        );

        let o = optimal_downsets(&grid(&[3, 3]), &w, 0).unwrap();
        assert_eq!((o.max_weight, o.sets.len()), (0.0, 1));
        assert!(optimal_downsets(&grid(&[3, 3]), &w, 10).is_err());
    }

    #[test]
    fn short_weight_table_is_rejected() {
        assert!(optimal_downsets(&grid(&[3, 3]), &RankWeight::standard(3), 2).is_err());
    }

    #[test]
    fn nested_chain_examples() {
        let w = RankWeight::standard(8);
        let r = nested_chain_exists(&grid(&[3, 5]), &w).unwrap();
        assert!(r.exists);
        assert_eq!(r.chain_count, 1);
        let lex: Vec<PointSet> = (0..=15)
            .map(|m| {
                segment_2d(&GridShape::rect(3, 5).unwrap(), OrderKind::Lex, m)
                    .unwrap()
                    .to_points()
            })
            .collect();
        assert_eq!(r.witnesses, vec![lex]);

        let r = nested_chain_exists(&grid(&[4, 4]), &w).unwrap();
        assert!(r.exists && r.chain_count >= 2 && r.obstruction.is_none());

        let r = nested_chain_exists(&grid(&[1, 6]), &w).unwrap();
        assert_eq!((r.exists, r.chain_count), (true, 1));
    }

    #[test]
    fn chain_obstruction_is_reported() {
        // not rank-increasing: the best pair uses (1,0) but the best triple is a column
        struct Skewed;
        impl Weighting for Skewed {
            fn point_weight(&self, p: &GridPoint) -> f64 {
                match p.coords() {
                    [1, 0] => 5.0,
                    [0, 1] => 1.0,
                    [0, 2] => 10.0,
                    _ => 0.0,
                }
            }
            fn is_exact(&self) -> bool {
                true
            }
        }
        let r = nested_chain_exists(&grid(&[2, 3]), &Skewed).unwrap();
        assert!(!r.exists);
        assert_eq!((r.chain_count, r.obstruction), (0, Some(3)));
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn witnesses_include_the_square() {
        let s = GridShape::rect(3, 3).unwrap();
        let found = exhaustive_symmetrization_witnesses(&s, OrderKind::Lex, 4).unwrap();
        let square = pts(&[[0, 0], [0, 1], [1, 0], [1, 1]]);
        assert!(found.iter().any(|w| w.image == square));
    }
}
