//! Edge-isoperimetric applications: simple graphs, Cartesian products, the
//! Johnson graph `J(n, 2)` and its triangle coordinates, δ-sequences,
//! push-down set functions and compression.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::grid::{GridPoint, GridShape, PointSet};
use crate::oracle::{DownsetFamily, Poset};
use crate::order::{DominationOrder, OrderKind};
use crate::triangle::{triangle_segment, TriangleShape};
use crate::weight::{same_weight, weight_of, RankWeight, Weighting};

/// Largest `n` accepted by [`ak_bruteforce`].
pub const MAX_AK_BRUTEFORCE_N: usize = 7;
/// Largest ground set accepted by [`is_push_down`].
pub const MAX_PUSH_DOWN_N: usize = 5;
/// Largest ground set of a tabulated [`SetFunction`].
pub const MAX_SET_FUNCTION_N: usize = 16;

pub type Edge = (usize, usize);
pub type VertexSet = BTreeSet<usize>;

/// A loopless graph without multiple edges on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl SimpleGraph {
    /// Edges may be given in either orientation; loops, repeats and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(domain!("loop at vertex {u}"));
            }
            if u >= n || v >= n {
                return Err(domain!("edge ({u},{v}) leaves the vertex set 0..{n}"));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(domain!("edge ({u},{v}) is repeated"));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(domain!("a cycle needs at least 3 vertices"));
        }
        Self::new(n, (0..n).map(|u| (u, (u + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|u| (u - 1, u))).expect("path is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut deg = alloc::vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        match deg.split_first() {
            None => Some(0),
            Some((&k, rest)) => rest.iter().all(|&d| d == k).then_some(k),
        }
    }
}

/// Edges with both ends in `a`.
pub fn induced_edges(g: &SimpleGraph, a: &VertexSet) -> BTreeSet<Edge> {
    g.edges
        .iter()
        .filter(|(u, v)| a.contains(u) && a.contains(v))
        .copied()
        .collect()
}

/// Edges with exactly one end in `a`.
pub fn boundary_edges(g: &SimpleGraph, a: &VertexSet) -> BTreeSet<Edge> {
    g.edges
        .iter()
        .filter(|(u, v)| a.contains(u) != a.contains(v))
        .copied()
        .collect()
}

/// `2|I(A)| + |Θ(A)| = k|A|` on a `k`-regular graph.
pub fn check_regular_identity(g: &SimpleGraph, a: &VertexSet) -> Result<bool> {
    let k = g
        .regular_degree()
        .ok_or_else(|| domain!("graph is not regular"))?;
    if let Some(v) = a.iter().find(|&&v| v >= g.n) {
        return Err(domain!("vertex {v} is not in the graph"));
    }
    Ok(2 * induced_edges(g, a).len() + boundary_edges(g, a).len() == k * a.len())
}

/// `G □ H` on vertices `g * |V_H| + h`.
pub fn cartesian_product(g: &SimpleGraph, h: &SimpleGraph) -> SimpleGraph {
    let nh = h.n;
    let mut edges = Vec::new();
    for gv in 0..g.n {
        for &(a, b) in &h.edges {
            edges.push((gv * nh + a, gv * nh + b));
        }
    }
    for &(a, b) in &g.edges {
        for hv in 0..nh {
            edges.push((a * nh + hv, b * nh + hv));
        }
    }
    SimpleGraph::new(g.n * nh, edges).expect("product of simple graphs is simple")
}

/// The 2-subsets `{a1 < a2}` of `{1..n}` in lexicographic order; vertex `i`
/// of [`johnson_graph`] is the `i`-th pair.
pub fn johnson_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect()
}

/// `J(n, 2)`: 2-subsets of `{1..n}`, adjacent when they share one element.
pub fn johnson_graph(n: usize) -> Result<SimpleGraph> {
    if n < 2 {
        return Err(domain!("J(n,2) needs n >= 2"));
    }
    let pairs = johnson_pairs(n);
    let mut edges = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate().skip(i + 1) {
            let shared = [p.0, p.1]
                .iter()
                .filter(|x| **x == q.0 || **x == q.1)
                .count();
            if shared == 1 {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(pairs.len(), edges)
}

/// The point `(a1 - 1, a2 - 2)` of the triangle `R(n - 1)`.
pub fn sigma_bridge(a1: usize, a2: usize) -> Result<GridPoint> {
    if !(1 <= a1 && a1 < a2) {
        return Err(domain!("{{{a1},{a2}}} is not a pair 1 <= a1 < a2"));
    }
    Ok(GridPoint::from([a1 - 1, a2 - 2]))
}

/// Inverse of [`sigma_bridge`].
pub fn sigma_bridge_inverse(p: &GridPoint) -> Result<(usize, usize)> {
    if p.dim() != 2 || p[0] > p[1] {
        return Err(domain!("{p} is not a triangle point"));
    }
    Ok((p[0] + 1, p[1] + 2))
}

/// Unordered pairs of distinct edges sharing an endpoint.
pub fn adjacent_pairs(g: &SimpleGraph) -> u64 {
    let edges: Vec<&Edge> = g.edges.iter().collect();
    let mut count = 0;
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                count += 1;
            }
        }
    }
    count
}

fn check_edge_count(n: usize, m: usize) -> Result<usize> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(domain!("{m} edges do not fit on {n} vertices"));
    }
    Ok(total)
}

/// Largest number of adjacent edge pairs among graphs with `n` vertices and
/// `m` edges, read off the better segment of `R(n - 1)`.
pub fn ak_optimum(n: usize, m: usize) -> Result<u64> {
    check_edge_count(n, m)?;
    if n < 2 {
        return Ok(0);
    }
    let shape = TriangleShape::new(n - 1)?;
    let w = RankWeight::standard(shape.max_rank());
    let best = OrderKind::BOTH
        .iter()
        .map(|&k| triangle_segment(shape, k, m).map(|s| weight_of(&w, &s.to_points())))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))?;
    Ok(best as u64)
}

/// [`ak_optimum`] by trying every `m`-edge graph on `n` labeled vertices.
pub fn ak_bruteforce(n: usize, m: usize) -> Result<u64> {
    if n > MAX_AK_BRUTEFORCE_N {
        return Err(Error::ResourceGuard(alloc::format!(
            "brute force over graphs on {n} > {MAX_AK_BRUTEFORCE_N} vertices"
        )));
    }
    let total = check_edge_count(n, m)?;
    let all: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut pick: Vec<usize> = (0..m).collect();
    let mut best = 0;
    loop {
        let mut count = 0;
        for (i, &a) in pick.iter().enumerate() {
            let e = all[a];
            for &b in &pick[i + 1..] {
                let f = all[b];
                if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                    count += 1;
                }
            }
        }
        best = best.max(count);
        let Some(i) = (0..m).rev().find(|&i| pick[i] < total - m + i) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..m {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(best)
}

/// Successive gains `δ(1), ..., δ(n)` of a nested family.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSequence {
    values: Vec<f64>,
}

impl DeltaSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(domain!("delta value {v} is not finite"));
        }
        Ok(DeltaSequence { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `c` when the sequence is `0, c, 2c, ...`.
    pub fn linear_step(&self) -> Option<f64> {
        let c = self.values.get(1).copied().unwrap_or(0.0);
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| same_weight(v, c * i as f64, false))
            .then_some(c)
    }
}

/// Induced-edge gains along `order`, a permutation of the vertices.
pub fn delta_sequence(g: &SimpleGraph, order: &[usize]) -> Result<DeltaSequence> {
    let mut seen = alloc::vec![false; g.n];
    if order.len() != g.n
        || order
            .iter()
            .any(|&v| v >= g.n || core::mem::replace(&mut seen[v], true))
    {
        return Err(domain!(
            "order is not a permutation of the {} vertices",
            g.n
        ));
    }
    let mut prefix = VertexSet::new();
    let mut values = Vec::with_capacity(g.n);
    for &v in order {
        let gain = prefix.iter().filter(|&&u| g.has_edge(u, v)).count();
        prefix.insert(v);
        values.push(gain as f64);
    }
    DeltaSequence::new(values)
}

/// `wt(x) = Σ_i δ_i(x_i + 1)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveWeight {
    deltas: Vec<DeltaSequence>,
    exact: bool,
}

impl AdditiveWeight {
    pub fn deltas(&self) -> &[DeltaSequence] {
        &self.deltas
    }
}

impl Weighting for AdditiveWeight {
    fn point_weight(&self, p: &GridPoint) -> f64 {
        self.deltas
            .iter()
            .zip(p.coords())
            .map(|(d, &x)| d.values[x])
            .sum()
    }

    fn is_exact(&self) -> bool {
        self.exact
    }

    fn supports(&self, p: &GridPoint) -> bool {
        p.dim() == self.deltas.len()
            && self
                .deltas
                .iter()
                .zip(p.coords())
                .all(|(d, &x)| x < d.len())
    }
}

/// The additive weight of a product whose factors have the given δ-sequences.
pub fn product_weight_table(shape: &GridShape, deltas: &[DeltaSequence]) -> Result<AdditiveWeight> {
    if deltas.len() != shape.dim() {
        return Err(domain!("{} delta sequences for {shape}", deltas.len()));
    }
    for (i, d) in deltas.iter().enumerate() {
        if d.len() != shape.len(i) {
            return Err(domain!(
                "delta sequence {i} has length {} but side {i} of {shape} is {}",
                d.len(),
                shape.len(i)
            ));
        }
    }
    let exact = deltas
        .iter()
        .flat_map(|d| &d.values)
        .all(|&v| v == (v as i64) as f64 && v.abs() < 1e12);
    Ok(AdditiveWeight {
        deltas: deltas.to_vec(),
        exact,
    })
}

/// A real function on the subsets of `{0..n}`, tabulated by bit mask.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    n: usize,
    table: Vec<f64>,
}

impl SetFunction {
    pub fn new(n: usize, table: Vec<f64>) -> Result<Self> {
        if n > MAX_SET_FUNCTION_N {
            return Err(Error::ResourceGuard(alloc::format!(
                "set function on {n} > {MAX_SET_FUNCTION_N} elements"
            )));
        }
        if table.len() != 1 << n {
            return Err(domain!(
                "{} values given for {} subsets",
                table.len(),
                1usize << n
            ));
        }
        if let Some(v) = table.iter().find(|v| !v.is_finite()) {
            return Err(domain!("value {v} is not finite"));
        }
        Ok(SetFunction { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> f64) -> Result<Self> {
        if n > MAX_SET_FUNCTION_N {
            return Self::new(n, Vec::new());
        }
        Self::new(n, (0..1u32 << n).map(f).collect())
    }

    /// `φ(S) = C(|S|, 2)`, the edge count of a complete graph.
    pub fn clique_edges(n: usize) -> Result<Self> {
        Self::from_fn(n, |s| {
            let k = s.count_ones() as f64;
            k * (k - 1.0) / 2.0
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, mask: u32) -> f64 {
        self.table[mask as usize]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    fn is_integral(&self) -> bool {
        self.table
            .iter()
            .all(|&v| v == (v as i64) as f64 && v.abs() < 1e12)
    }
}

/// `φ^d(A)`: the sum of `φ` over every axis-parallel line of `[n]^d` met with `A`.
pub fn phi_power(phi: &SetFunction, d: usize, a: &PointSet) -> Result<f64> {
    let n = phi.n;
    if d == 0 {
        return Err(domain!("dimension must be positive"));
    }
    let mut lines: BTreeMap<(usize, Vec<usize>), u32> = BTreeMap::new();
    for p in a {
        if p.dim() != d || p.coords().iter().any(|&x| x >= n) {
            return Err(domain!("{p} is not a point of [{n}]^{d}"));
        }
        for axis in 0..d {
            let mut rest = p.coords().to_vec();
            let x = rest.remove(axis);
            *lines.entry((axis, rest)).or_insert(0) |= 1 << x;
        }
    }
    let line_count = (d as u32)
        .checked_mul((n as u32).pow(d as u32 - 1))
        .ok_or_else(|| domain!("too many lines"))?;
    let empty = (line_count - lines.len() as u32) as f64 * phi.value(0);
    Ok(lines.values().map(|&s| phi.value(s)).sum::<f64>() + empty)
}

/// The first property a set function fails on the way to being push-down.
#[derive(Debug, Clone, PartialEq)]
pub enum PushDownViolation {
    /// `φ(∅) != 0`.
    EmptyNonzero(f64),
    /// `φ(A) > φ({0..|A|})`.
    Nestedness { set: u32 },
    /// `φ(A) + φ(B) > φ(A ∪ B) + φ(A ∩ B)`.
    Submodularity { a: u32, b: u32 },
}

/// Checks all three push-down properties exhaustively; `None` means `φ` is push-down.
pub fn is_push_down(phi: &SetFunction) -> Result<Option<PushDownViolation>> {
    if phi.n > MAX_PUSH_DOWN_N {
        return Err(Error::ResourceGuard(alloc::format!(
            "push-down check on {} > {MAX_PUSH_DOWN_N} elements",
            phi.n
        )));
    }
    let exact = phi.is_integral();
    let exceeds = |lhs: f64, rhs: f64| lhs > rhs && !same_weight(lhs, rhs, exact);
    if phi.value(0) != 0.0 {
        return Ok(Some(PushDownViolation::EmptyNonzero(phi.value(0))));
    }
    let subsets = 1u32 << phi.n;
    for s in 0..subsets {
        let initial = (1u32 << s.count_ones()) - 1;
        if exceeds(phi.value(s), phi.value(initial)) {
            return Ok(Some(PushDownViolation::Nestedness { set: s }));
        }
    }
    for a in 0..subsets {
        for b in a..subsets {
            if exceeds(
                phi.value(a) + phi.value(b),
                phi.value(a | b) + phi.value(a & b),
            ) {
                return Ok(Some(PushDownViolation::Submodularity { a, b }));
            }
        }
    }
    Ok(None)
}

/// `δ_φ(i) = φ({0..i}) - φ({0..i-1})` for `i = 1..=n`.
pub fn delta_of_phi(phi: &SetFunction) -> DeltaSequence {
    let values = (1..=phi.n)
        .map(|i| phi.value((1 << i) - 1) - phi.value((1 << (i - 1)) - 1))
        .collect();
    DeltaSequence { values }
}

/// `C_S(A)`: every fiber of `A` along the coordinates `s` becomes the
/// initial segment of `order` of the same size.
pub fn push_down_compress(
    shape: &GridShape,
    a: &PointSet,
    s: &[usize],
    order: &DominationOrder,
) -> Result<PointSet> {
    let mut free = alloc::vec![false; shape.dim()];
    for &c in s {
        if c >= shape.dim() || core::mem::replace(&mut free[c], true) {
            return Err(domain!("{s:?} is not a set of coordinates of {shape}"));
        }
    }
    if order.dim() != s.len() {
        return Err(domain!(
            "order on {} coordinates for a {}-coordinate fiber",
            order.dim(),
            s.len()
        ));
    }
    if let Some(p) = a.iter().find(|p| !shape.contains(p)) {
        return Err(domain!("point {p} is not in {shape}"));
    }
    if s.is_empty() {
        return Ok(a.clone());
    }
    let sub = GridShape::new(s.iter().map(|&c| shape.len(c)).collect())?;
    let mut fibers: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for p in a {
        let anchor: Vec<usize> = (0..shape.dim())
            .filter(|&c| !free[c])
            .map(|c| p[c])
            .collect();
        *fibers.entry(anchor).or_insert(0) += 1;
    }
    let mut out = PointSet::new();
    for (anchor, k) in fibers {
        let mut fixed = anchor.into_iter();
        let template: Vec<usize> = (0..shape.dim())
            .map(|c| {
                if free[c] {
                    0
                } else {
                    fixed.next().expect("anchor length")
                }
            })
            .collect();
        for i in 0..k {
            let q = order.point_at(&sub, i);
            let mut coords = template.clone();
            for (j, &c) in s.iter().enumerate() {
                coords[c] = q[j];
            }
            out.insert(GridPoint(coords));
        }
    }
    Ok(out)
}

/// One size of an optimality comparison between lex segments and the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeCheck {
    pub m: usize,
    pub segment_weight: f64,
    pub oracle_max: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityReport {
    pub rows: Vec<SizeCheck>,
}

impl OptimalityReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

fn lex_report(
    shape: &GridShape,
    value: impl Fn(&PointSet) -> Result<f64>,
    exact: bool,
) -> Result<OptimalityReport> {
    let family = DownsetFamily::new(Poset::Grid(shape.clone()))?;
    let mut best = alloc::vec![f64::NEG_INFINITY; shape.size() + 1];
    for set in family.iter_points() {
        let v = value(&set)?;
        let slot = &mut best[set.len()];
        *slot = slot.max(v);
    }
    let lex = DominationOrder::lex(shape.dim());
    let rows = best
        .into_iter()
        .enumerate()
        .map(|(m, oracle_max)| {
            let segment_weight = value(lex.initial_segment(shape, m)?.points())?;
            Ok(SizeCheck {
                m,
                segment_weight,
                oracle_max,
                agree: same_weight(segment_weight, oracle_max, exact),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OptimalityReport { rows })
}

/// Compares `φ^d` of every lex segment of `[n]^d` with the best downset of its size.
pub fn verify_local_global_with(phi: &SetFunction, d: usize) -> Result<OptimalityReport> {
    let shape = GridShape::new(alloc::vec![phi.n; d])?;
    lex_report(&shape, |a| phi_power(phi, d, a), phi.is_integral())
}

/// [`verify_local_global_with`] for `φ(S) = C(|S|, 2)`.
pub fn verify_local_global(n: usize, d: usize) -> Result<OptimalityReport> {
    verify_local_global_with(&SetFunction::clique_edges(n)?, d)
}

/// Compares lex segments of `K_{dims[0]} □ K_{dims[1]} □ ...` with the best
/// downset of each size under the additive δ weight.
pub fn lindsay_check(dims: &[usize]) -> Result<OptimalityReport> {
    let shape = GridShape::new(dims.to_vec())?;
    let deltas = dims
        .iter()
        .map(|&k| delta_sequence(&SimpleGraph::complete(k), &(0..k).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let w = product_weight_table(&shape, &deltas)?;
    lex_report(&shape, |a| Ok(weight_of(&w, a)), w.is_exact())
}
