//! Weight functions on grid points.

use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::grid::GridPoint;

/// Relative tolerance for comparing non-integral weight sums.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

/// Largest magnitude below which every integer is exactly representable.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Anything that assigns a real weight to a grid point.
pub trait Weighting {
    fn point_weight(&self, p: &GridPoint) -> f64;

    /// Whether all point weights are integers small enough that sums are exact.
    fn is_exact(&self) -> bool;

    /// Whether `p` is within the domain of the weight.
    fn supports(&self, _p: &GridPoint) -> bool {
        true
    }

    fn set_weight<'a, I>(&self, points: I) -> f64
    where
        I: IntoIterator<Item = &'a GridPoint>,
    {
        points.into_iter().map(|p| self.point_weight(p)).sum()
    }

    fn same(&self, a: f64, b: f64) -> bool {
        same_weight(a, b, self.is_exact())
    }
}

/// Weight equality: exact for integral tables, relative tolerance otherwise.
pub fn same_weight(a: f64, b: f64, exact: bool) -> bool {
    if exact {
        a == b
    } else {
        let scale = 1f64.max(abs(a)).max(abs(b));
        abs(a - b) <= RELATIVE_TOLERANCE * scale
    }
}

fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn is_integral(x: f64) -> bool {
    abs(x) < EXACT_LIMIT && (x as i64) as f64 == x
}

/// A rank-constant, strictly rank-increasing weight: the point `p` weighs
/// `values[rank(p)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankWeight {
    values: Vec<f64>,
    exact: bool,
}

impl RankWeight {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain!("a rank weight needs at least one value"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(domain!("weight {v} is not finite"));
        }
        if let Some(r) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(domain!(
                "weights must be strictly increasing, but w[{r}] = {} >= w[{}] = {}",
                values[r],
                r + 1,
                values[r + 1]
            ));
        }
        let bound = EXACT_LIMIT / 1024.0;
        let exact = values.iter().all(|&v| is_integral(v) && abs(v) < bound);
        Ok(RankWeight { values, exact })
    }

    /// `w_r = r` for ranks `0..=max_rank`.
    pub fn standard(max_rank: usize) -> Self {
        Self::from_fn(max_rank, |r| r as f64)
    }

    /// `w_r = r^2`.
    pub fn squares(max_rank: usize) -> Self {
        Self::from_fn(max_rank, |r| (r * r) as f64)
    }

    /// `w_r = 2^r`.
    pub fn powers_of_two(max_rank: usize) -> Self {
        Self::from_fn(max_rank, |r| (1u64 << r) as f64)
    }

    fn from_fn(max_rank: usize, f: impl Fn(usize) -> f64) -> Self {
        Self::new((0..=max_rank).map(f).collect()).expect("generated weights are increasing")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Highest rank the table covers.
    pub fn max_rank(&self) -> usize {
        self.values.len() - 1
    }

    /// Weight of a point of rank `rank`. Panics if the table is too short.
    pub fn at(&self, rank: usize) -> f64 {
        self.values[rank]
    }

    pub fn covers(&self, max_rank: usize) -> Result<()> {
        if max_rank > self.max_rank() {
            Err(domain!(
                "weight table covers ranks 0..={} but ranks up to {max_rank} occur",
                self.max_rank()
            ))
        } else {
            Ok(())
        }
    }
}

impl Weighting for RankWeight {
    fn point_weight(&self, p: &GridPoint) -> f64 {
        self.at(p.rank())
    }

    fn is_exact(&self) -> bool {
        self.exact
    }

    fn supports(&self, p: &GridPoint) -> bool {
        p.rank() <= self.max_rank()
    }
}

/// Sum of the weights of the points.
pub fn weight_of<'a, W, I>(w: &W, points: I) -> f64
where
    W: Weighting + ?Sized,
    I: IntoIterator<Item = &'a GridPoint>,
{
    points.into_iter().map(|p| w.point_weight(p)).sum()
}
