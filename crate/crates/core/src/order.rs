//! Domination orders: total orders on a grid that compare permuted
//! coordinate tuples lexicographically.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{domain, Result};
use crate::grid::{DownSet2D, DownSetGeneric, GridPoint, GridShape, PointSet};

/// The two domination orders of a two-dimensional grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Lex,
    Colex,
}

impl OrderKind {
    pub const BOTH: [OrderKind; 2] = [OrderKind::Lex, OrderKind::Colex];

    pub fn order(self, dim: usize) -> DominationOrder {
        match self {
            OrderKind::Lex => DominationOrder::lex(dim),
            OrderKind::Colex => DominationOrder::colex(dim),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::Colex => "colex",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Order induced by a coordinate priority `pi`: `pi[0]` is compared first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominationOrder {
    pi: Vec<usize>,
}

impl DominationOrder {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let mut seen = alloc::vec![false; pi.len()];
        for &c in &pi {
            if c >= pi.len() || seen[c] {
                return Err(domain!("{pi:?} is not a permutation of 0..{}", pi.len()));
            }
            seen[c] = true;
        }
        if pi.is_empty() {
            return Err(domain!("empty permutation"));
        }
        Ok(DominationOrder { pi })
    }

    pub fn lex(dim: usize) -> Self {
        DominationOrder {
            pi: (0..dim).collect(),
        }
    }

    pub fn colex(dim: usize) -> Self {
        DominationOrder {
            pi: (0..dim).rev().collect(),
        }
    }

    /// All `dim!` domination orders, lex first.
    pub fn all(dim: usize) -> Vec<DominationOrder> {
        let mut out = Vec::new();
        let mut pi: Vec<usize> = (0..dim).collect();
        permutations(&mut pi, 0, &mut out);
        out.sort_by(|a, b| a.pi.cmp(&b.pi));
        out
    }

    pub fn priority(&self) -> &[usize] {
        &self.pi
    }

    pub fn dim(&self) -> usize {
        self.pi.len()
    }

    pub fn kind(&self) -> Option<OrderKind> {
        if *self == Self::lex(self.dim()) {
            Some(OrderKind::Lex)
        } else if *self == Self::colex(self.dim()) {
            Some(OrderKind::Colex)
        } else {
            None
        }
    }

    pub fn compare(&self, a: &GridPoint, b: &GridPoint) -> Ordering {
        self.pi
            .iter()
            .map(|&c| a[c].cmp(&b[c]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// 0-based position of `p`, by a mixed-radix count in priority order.
    pub fn index_of(&self, shape: &GridShape, p: &GridPoint) -> usize {
        self.pi.iter().fold(0, |acc, &c| acc * shape.len(c) + p[c])
    }

    /// The point at position `index`.
    pub fn point_at(&self, shape: &GridShape, mut index: usize) -> GridPoint {
        let mut coords = alloc::vec![0; shape.dim()];
        for &c in self.pi.iter().rev() {
            coords[c] = index % shape.len(c);
            index /= shape.len(c);
        }
        GridPoint(coords)
    }

    /// The first `m` points of the order.
    pub fn initial_segment(&self, shape: &GridShape, m: usize) -> Result<DownSetGeneric> {
        if self.dim() != shape.dim() {
            return Err(domain!(
                "order on {} coordinates used on {shape}",
                self.dim()
            ));
        }
        if m > shape.size() {
            return Err(domain!(
                "segment size {m} exceeds {} points of {shape}",
                shape.size()
            ));
        }
        let points: PointSet = (0..m).map(|i| self.point_at(shape, i)).collect();
        Ok(DownSetGeneric::new_unchecked(shape.clone(), points))
    }
}

fn permutations(pi: &mut Vec<usize>, k: usize, out: &mut Vec<DominationOrder>) {
    if k == pi.len() {
        out.push(DominationOrder { pi: pi.clone() });
        return;
    }
    for i in k..pi.len() {
        pi.swap(k, i);
        permutations(pi, k + 1, out);
        pi.swap(k, i);
    }
}

/// Initial segment of a two-dimensional order, in profile form.
pub fn segment_2d(shape: &GridShape, kind: OrderKind, m: usize) -> Result<DownSet2D> {
    if shape.dim() != 2 {
        return Err(domain!("{shape} is not two-dimensional"));
    }
    let (l1, l2) = (shape.len(0), shape.len(1));
    if m > l1 * l2 {
        return Err(domain!(
            "segment size {m} exceeds {} points of {shape}",
            l1 * l2
        ));
    }
    let profile = match kind {
        OrderKind::Lex => (0..l1).map(|x| m.saturating_sub(x * l2).min(l2)).collect(),
        OrderKind::Colex => {
            let (full_rows, rest) = (m / l1, m % l1);
            (0..l1).map(|x| full_rows + usize::from(x < rest)).collect()
        }
    };
    DownSet2D::new(shape.clone(), profile)
}
